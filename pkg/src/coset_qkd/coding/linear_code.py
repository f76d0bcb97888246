"""Binary linear codes described by a parity-check matrix.

Codes are built from a short spec string (see ``make_code``) and serialize to a
header line ``n k d`` followed by one hex-encoded parity row per line.
"""
import itertools
import logging
import math
import re
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Dict, Optional, Tuple

import galois
import numpy as np

from coset_qkd.bounds.entropy import binary_entropy
from coset_qkd.config import Config
from coset_qkd.errors import ResourceError, UnsupportedParametersError, ValidationError
from coset_qkd.rng import as_generator

logger = logging.getLogger(__name__)

GF2 = galois.GF2
MAX_RANK_TRIES = 100

_SPEC_RE = re.compile(r"^\s*(\w+)\s*[:(]\s*([^)]*?)\s*\)?\s*$")


def _bits_to_int(bits) -> int:
    value = 0
    for b in bits:
        value = (value << 1) | int(b)
    return value


def _pack_hex(bits: np.ndarray) -> str:
    return np.packbits(np.asarray(bits, dtype=np.uint8)).tobytes().hex()


def _unpack_hex(text: str, length: int) -> np.ndarray:
    try:
        raw = bytes.fromhex(text.strip())
    except ValueError as e:
        raise ValidationError(f"invalid hex string {text!r}: {e}")
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8))
    if len(bits) < length:
        raise ValidationError(f"hex string {text!r} holds fewer than {length} bits")
    return bits[:length].copy()


def _enumerate_weights(rows: np.ndarray) -> np.ndarray:
    """Hamming weights of every word in the row space of ``rows``."""
    dim = rows.shape[0]
    messages = (np.arange(1 << dim, dtype=np.int64)[:, None] >> np.arange(dim)) & 1
    words = (messages @ rows.astype(np.int64)) % 2
    return words.sum(axis=1)


def _krawtchouk(w: int, j: int, n: int) -> int:
    return sum((-1) ** i * math.comb(j, i) * math.comb(n - j, w - i) for i in range(w + 1))


@dataclass(frozen=True, eq=False)
class LinearCode:
    n: int
    k: int
    parity: np.ndarray = field(repr=False)   # (n-k) x n over GF(2)
    d: Optional[int] = None                  # None when neither computed nor declared
    name: str = ""

    def __post_init__(self):
        if not 1 <= self.k < self.n:
            raise ValidationError(f"need 1 <= k < n, got n={self.n}, k={self.k}")
        parity = np.asarray(self.parity, dtype=np.uint8) % 2
        if parity.shape != (self.n - self.k, self.n):
            raise ValidationError(
                f"parity matrix must be {self.n - self.k}x{self.n}, got {parity.shape}")
        if np.linalg.matrix_rank(GF2(parity)) != self.n - self.k:
            raise ValidationError("parity matrix is not full rank")
        parity.setflags(write=False)
        object.__setattr__(self, "parity", parity)

    @property
    def s(self) -> int:
        """Syndrome length n − k."""
        return self.n - self.k

    @cached_property
    def generator(self) -> np.ndarray:
        """k x n generator matrix whose rows span the kernel of the parity matrix."""
        return np.asarray(GF2(self.parity).null_space(), dtype=np.uint8)

    @cached_property
    def _column_syndromes(self) -> Tuple[int, ...]:
        return tuple(_bits_to_int(self.parity[:, j]) for j in range(self.n))

    @cached_property
    def _syndrome_table(self) -> Dict[int, Tuple[int, ...]]:
        if self.s > Config.SYNDROME_TABLE_MAX_BITS:
            raise UnsupportedParametersError(
                f"syndrome table for n-k={self.s} exceeds {Config.SYNDROME_TABLE_MAX_BITS} bits")
        cols = self._column_syndromes
        table: Dict[int, Tuple[int, ...]] = {0: ()}
        target = 1 << self.s
        for weight in range(1, self.n + 1):
            if len(table) == target:
                break
            for support in itertools.combinations(range(self.n), weight):
                syn = reduce(lambda acc, j: acc ^ cols[j], support, 0)
                if syn not in table:
                    table[syn] = support
            logger.debug(f"{self.name or 'code'}: {len(table)}/{target} syndromes after weight {weight}")
        return table

    def to_spec(self) -> str:
        """Single-line ``parity:n,k:hex`` form accepted by make_code."""
        return f"parity:{self.n},{self.k}:{_pack_hex(self.parity.reshape(-1))}"

    def to_text(self) -> str:
        header = f"{self.n} {self.k} {self.d if self.d is not None else '-'}"
        return "\n".join([header] + [_pack_hex(row) for row in self.parity]) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "LinearCode":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        if not lines:
            raise ValidationError("empty code description")
        header = lines[0].split()
        if len(header) != 3:
            raise ValidationError(f"code header must be 'n k d', got {lines[0]!r}")
        try:
            n, k = int(header[0]), int(header[1])
            d = None if header[2] == "-" else int(header[2])
        except ValueError:
            raise ValidationError(f"code header must be 'n k d', got {lines[0]!r}")
        rows = lines[1:]
        if len(rows) != n - k:
            raise ValidationError(f"expected {n - k} parity rows, got {len(rows)}")
        parity = np.array([_unpack_hex(row, n) for row in rows], dtype=np.uint8)
        return cls(n, k, parity, d, name=f"parity:{n},{k}")


def syndrome(code: LinearCode, word) -> np.ndarray:
    word = np.asarray(word, dtype=np.int64)
    if word.shape != (code.n,):
        raise ValidationError(f"word must have {code.n} bits, got shape {word.shape}")
    return ((code.parity.astype(np.int64) @ word) % 2).astype(np.uint8)


def decode_with_syndrome(code: LinearCode, word, target_syndrome) -> np.ndarray:
    """Closest word to ``word`` whose syndrome is ``target_syndrome``.

    Among minimum-weight corrections the first support in combinations order wins.
    """
    target = np.asarray(target_syndrome, dtype=np.uint8)
    if target.shape != (code.s,):
        raise ValidationError(f"syndrome must have {code.s} bits, got shape {target.shape}")
    current = syndrome(code, word)
    diff = _bits_to_int(current ^ target)
    support = code._syndrome_table[diff]
    corrected = np.asarray(word, dtype=np.uint8).copy()
    corrected[list(support)] ^= 1
    return corrected


def minimum_distance(code: LinearCode) -> Optional[int]:
    """Brute-force minimum distance, or None when enumeration is out of reach."""
    limit = Config.DISTANCE_ENUMERATION_BITS
    short = code.n <= Config.DISTANCE_BRUTE_FORCE_LENGTH
    if code.k <= limit or (short and code.k <= code.s):
        weights = _enumerate_weights(code.generator)
        return int(weights[weights > 0].min())
    if code.s <= limit or short:
        # MacWilliams: weight distribution of C from that of its dual
        dual = np.bincount(_enumerate_weights(code.parity), minlength=code.n + 1)
        for w in range(1, code.n + 1):
            total = sum(int(dual[j]) * _krawtchouk(w, j, code.n) for j in range(code.n + 1))
            if total > 0:
                return w
    return None


def _hamming(args) -> LinearCode:
    n, k = args
    r = n - k
    if n != (1 << r) - 1:
        raise ValidationError(f"no Hamming code with n={n}, k={k}")
    cols = [[(j >> (r - 1 - i)) & 1 for i in range(r)] for j in range(1, n + 1)]
    return LinearCode(n, k, np.array(cols, dtype=np.uint8).T, name=f"hamming:{n},{k}")


def _repetition(args) -> LinearCode:
    (n,) = args
    if n < 2:
        raise ValidationError(f"repetition length must be at least 2, got {n}")
    parity = np.zeros((n - 1, n), dtype=np.uint8)
    parity[:, 0] = 1
    parity[np.arange(n - 1), np.arange(1, n)] = 1
    return LinearCode(n, 1, parity, name=f"repetition:{n}")


def _random(args) -> LinearCode:
    n, k, seed = args
    if not 1 <= k < n:
        raise ValidationError(f"need 1 <= k < n, got n={n}, k={k}")
    rng = as_generator(seed)
    for attempt in range(MAX_RANK_TRIES):
        parity = rng.integers(0, 2, size=(n - k, n), dtype=np.uint8)
        if np.linalg.matrix_rank(GF2(parity)) == n - k:
            code = LinearCode(n, k, parity, name=f"random:{n},{k},{seed}")
            break
        logger.debug(f"random:{n},{k},{seed}: rank-deficient draw {attempt + 1}")
    else:
        raise ResourceError(f"no full-rank parity matrix after {MAX_RANK_TRIES} draws")
    return code


def make_code(spec: str, d: Optional[int] = None) -> LinearCode:
    """Build a code from ``hamming:n,k``, ``repetition:n``, ``random:n,k,seed`` or
    ``parity:n,k:hex``.

    The minimum distance is brute-forced when feasible; otherwise ``d`` is used
    as the declared value.
    """
    match = _SPEC_RE.match(spec)
    if not match:
        raise ValidationError(f"unrecognized code spec {spec!r}")
    kind, arg_text = match.group(1).lower(), match.group(2)

    if kind == "parity":
        dims, _, hex_text = arg_text.partition(":")
        try:
            n, k = (int(v) for v in dims.split(","))
        except ValueError:
            raise ValidationError(f"parity spec must be parity:n,k:hex, got {spec!r}")
        if not 1 <= k < n:
            raise ValidationError(f"need 1 <= k < n, got n={n}, k={k}")
        bits = _unpack_hex(hex_text, (n - k) * n)
        code = LinearCode(n, k, bits.reshape(n - k, n), name=f"parity:{n},{k}")
    else:
        builders = {"hamming": (_hamming, 2), "repetition": (_repetition, 1), "random": (_random, 3)}
        if kind not in builders:
            raise ValidationError(f"unknown code family {kind!r}")
        builder, arity = builders[kind]
        try:
            args = tuple(int(v) for v in arg_text.split(","))
        except ValueError:
            raise ValidationError(f"code arguments must be integers, got {arg_text!r}")
        if len(args) != arity:
            raise ValidationError(f"{kind} takes {arity} argument(s), got {len(args)}")
        code = builder(args)

    if code.d is None:
        computed = minimum_distance(code)
        code = LinearCode(code.n, code.k, code.parity, computed if computed is not None else d, code.name)
    logger.info(f"Built {code.name}: n={code.n} k={code.k} d={code.d}")
    return code


def gv_syndrome_len(block: int, gamma: float) -> int:
    """Syndrome length ⌈block·h(γ)⌉ of a code meeting the Gilbert-Varshamov bound."""
    if block < 0:
        raise ValidationError(f"block must be nonnegative, got {block}")
    if not 0.0 <= gamma <= 0.5:
        raise ValidationError(f"gamma must lie in [0, 1/2], got {gamma}")
    return math.ceil(block * binary_entropy(gamma))
