"""Permutations, integer strings, binary strings and the linear map sigma(s).

An integer string ``s = s_0 .. s_{N-1}`` has entries in ``[0, 2**U - 1]``
with ``U = ceil(log2 N)``. Its binary form concatenates N fields of U bits,
each field little-endian (bit j carries weight 2**j).

Computational-basis convention: global bit ``k`` of the binary string is
bit ``k`` of the basis-state index, so field ``i`` of basis index ``b`` is
``(b >> i*U) & (2**U - 1)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .errors import InputError

__all__ = [
    "bits_per_field",
    "num_qubits",
    "IntegerString",
    "LinearMap",
    "perm_to_integer_string",
    "integer_string_to_bits",
    "bits_to_integer_string",
    "sigma_of",
    "is_permutation_string",
    "basis_index",
    "integer_string_from_index",
    "decode_indices",
    "format_string",
    "parse_string",
]


def bits_per_field(n: int) -> int:
    """U = ceil(log2 N); a single vertex still needs one bit per field."""
    if n < 1:
        raise InputError(f"vertex count must be positive, got {n}")
    return max(1, math.ceil(math.log2(n)))


def num_qubits(n: int) -> int:
    return n * bits_per_field(n)


@dataclass(frozen=True)
class IntegerString:
    entries: Tuple[int, ...]
    n: int

    def __post_init__(self):
        entries = tuple(int(x) for x in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) != self.n:
            raise InputError(f"integer string has length {len(entries)}, expected {self.n}")
        top = self.max_entry
        for x in entries:
            if not 0 <= x <= top:
                raise InputError(f"entry {x} outside [0, {top}]")

    @classmethod
    def of(cls, entries: Sequence[int]) -> "IntegerString":
        return cls(tuple(entries), len(entries))

    @property
    def u(self) -> int:
        return bits_per_field(self.n)

    @property
    def max_entry(self) -> int:
        return 2 ** bits_per_field(self.n) - 1

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return self.n

    def __getitem__(self, i):
        return self.entries[i]

    def __str__(self):
        return format_string(self.entries, self.max_entry)


@dataclass(frozen=True, eq=False)
class LinearMap:
    matrix: np.ndarray
    is_permutation: bool

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.is_permutation == other.is_permutation and bool(
            np.array_equal(self.matrix, other.matrix)
        )


def perm_to_integer_string(perm: Sequence[int]) -> IntegerString:
    n = len(perm)
    if sorted(int(x) for x in perm) != list(range(n)):
        raise InputError(f"{list(perm)} is not a permutation of 0..{n - 1}")
    return IntegerString.of(perm)


def integer_string_to_bits(s: IntegerString) -> Tuple[int, ...]:
    u = s.u
    return tuple((x >> j) & 1 for x in s.entries for j in range(u))


def bits_to_integer_string(bits: Sequence[int], n: int) -> IntegerString:
    u = bits_per_field(n)
    if len(bits) != n * u:
        raise InputError(f"expected {n * u} bits for N={n}, got {len(bits)}")
    if any(b not in (0, 1) for b in bits):
        raise InputError("bits must be 0 or 1")
    return IntegerString(
        tuple(sum(int(bits[i * u + j]) << j for j in range(u)) for i in range(n)), n
    )


def is_permutation_string(s: IntegerString) -> bool:
    return sorted(s.entries) == list(range(s.n))


def sigma_of(s: IntegerString) -> LinearMap:
    """Column j of sigma(s) is e_{s_j}, or zero when s_j > N-1."""
    n = s.n
    m = np.zeros((n, n), dtype=np.int64)
    for j, x in enumerate(s.entries):
        if x < n:
            m[x, j] = 1
    m.setflags(write=False)
    return LinearMap(m, is_permutation_string(s))


def basis_index(s: IntegerString) -> int:
    u = s.u
    return sum(x << (i * u) for i, x in enumerate(s.entries))


def integer_string_from_index(index: int, n: int) -> IntegerString:
    u = bits_per_field(n)
    mask = (1 << u) - 1
    return IntegerString(tuple((index >> (i * u)) & mask for i in range(n)), n)


def decode_indices(indices: np.ndarray, n: int) -> np.ndarray:
    """Vectorised decode: basis indices -> ``(len(indices), n)`` entry array."""
    u = bits_per_field(n)
    idx = np.asarray(indices, dtype=np.int64)
    shifts = np.arange(n, dtype=np.int64) * u
    return ((idx[:, None] >> shifts[None, :]) & ((1 << u) - 1)).astype(np.int64)


def format_string(entries: Sequence[int], max_entry: int = 9) -> str:
    """Concatenated digits when every entry can be one digit, else space separated."""
    if max_entry <= 9:
        return "".join(str(x) for x in entries)
    return " ".join(str(x) for x in entries)


def parse_string(text: str, n: int = None) -> IntegerString:
    text = text.strip()
    if " " in text:
        entries = [int(t) for t in text.split()]
    else:
        entries = [int(c) for c in text]
    if n is not None and len(entries) != n:
        raise InputError(f"string {text!r} has {len(entries)} entries, expected {n}")
    return IntegerString.of(entries)
