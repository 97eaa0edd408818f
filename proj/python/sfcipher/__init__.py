"""Secure Force block ciphers with avalanche, entropy and histogram tools."""

from ._sfcipher import (
    CONSTANT_VERSION,
    ROUNDS,
    SfError,
    avalanche,
    chi_square_uniform,
    decrypt,
    decrypt_bytes,
    encrypt,
    encrypt_bytes,
    encrypt_image,
    entropy,
    expand_key,
    hamming_distance,
    histogram,
    load_image,
    mean_ratio,
    percent_change,
)

__all__ = [
    "CONSTANT_VERSION",
    "ROUNDS",
    "SfError",
    "avalanche",
    "chi_square_uniform",
    "decrypt",
    "decrypt_bytes",
    "encrypt",
    "encrypt_bytes",
    "encrypt_image",
    "entropy",
    "expand_key",
    "hamming_distance",
    "histogram",
    "load_image",
    "mean_ratio",
    "percent_change",
]
