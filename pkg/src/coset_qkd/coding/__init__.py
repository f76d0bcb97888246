"""Binning, Gray codes, linear codes and Toeplitz hashing."""
from coset_qkd.coding.binning import (
    OUT_OF_RANGE,
    BinConfig,
    bin_index,
    signed_bin_bits,
    signed_bin_index,
    signed_bin_word,
)
from coset_qkd.coding.gray import gray_decode, gray_decode_array, gray_encode, gray_encode_array
from coset_qkd.coding.linear_code import (
    LinearCode,
    decode_with_syndrome,
    gv_syndrome_len,
    make_code,
    minimum_distance,
    syndrome,
)
from coset_qkd.coding.toeplitz import ToeplitzHash, toeplitz_apply, universality_check

__all__ = [
    "OUT_OF_RANGE",
    "BinConfig",
    "LinearCode",
    "ToeplitzHash",
    "bin_index",
    "decode_with_syndrome",
    "gray_decode",
    "gray_decode_array",
    "gray_encode",
    "gray_encode_array",
    "gv_syndrome_len",
    "make_code",
    "minimum_distance",
    "signed_bin_bits",
    "signed_bin_index",
    "signed_bin_word",
    "syndrome",
    "toeplitz_apply",
    "universality_check",
]
