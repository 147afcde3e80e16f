"""Cost functions for graph isomorphism (GI) and subgraph isomorphism (SGI).

``C(s) = C1(s) + C2(s) + C3(s)`` where C1 counts out-of-range entries, C2
counts colliding pairs and C3 measures the adjacency mismatch after the
linear map sigma(s) is applied. Scalar functions use exact Python integers;
``cost_table`` evaluates whole blocks of basis states with numpy and is the
engine behind the exhaustive oracle and the problem Hamiltonian.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .encoding import (
    IntegerString,
    bits_per_field,
    decode_indices,
    integer_string_from_index,
    sigma_of,
)
from .errors import CapacityError, InputError
from .graphs import Graph

__all__ = [
    "GIInstance",
    "SGIInstance",
    "GroundSummary",
    "c1",
    "c2",
    "conjugate_adjacency",
    "c3_gi",
    "cost_gi",
    "subset_projector",
    "subgraph_adjacency",
    "c3_sgi",
    "cost_sgi",
    "cost",
    "cost_table",
    "brute_force_ground",
    "sgi_witness",
    "DEFAULT_ENUMERATION_BITS",
    "SATURATION_CAP",
]

DEFAULT_ENUMERATION_BITS = 24
# int64 products in the vectorised SGI path saturate here
SATURATION_CAP = 2 ** 62
NORMS = ("l1", "l2sq")
_CHUNK = 1 << 16


def _matrix_norm(diff: np.ndarray, norm: str) -> int:
    if norm == "l1":
        return int(np.abs(diff).sum())
    if norm == "l2sq":
        return int((diff * diff).sum())
    raise InputError(f"unknown norm {norm!r}; choose from {NORMS}")


@dataclass(frozen=True)
class GIInstance:
    g: Graph
    g_prime: Graph
    norm: str = "l1"

    def __post_init__(self):
        if self.g.order != self.g_prime.order:
            raise InputError(
                f"graphs have orders {self.g.order} and {self.g_prime.order}; "
                "isomorphism is only posed for equal orders"
            )
        if self.norm not in NORMS:
            raise InputError(f"unknown norm {self.norm!r}; choose from {NORMS}")

    @property
    def n(self) -> int:
        return self.g.order

    @property
    def u(self) -> int:
        return bits_per_field(self.n)

    @property
    def m(self) -> int:
        return 2 ** self.u - 1

    @property
    def num_qubits(self) -> int:
        return self.n * self.u


@dataclass(frozen=True)
class SGIInstance:
    g: Graph
    h: Graph
    norm: str = "l1"

    def __post_init__(self):
        if self.h.order > self.g.order:
            raise InputError(
                f"pattern graph has {self.h.order} vertices but host graph only {self.g.order}"
            )
        if self.norm not in NORMS:
            raise InputError(f"unknown norm {self.norm!r}; choose from {NORMS}")

    @property
    def n(self) -> int:
        return self.g.order

    @property
    def u(self) -> int:
        return bits_per_field(self.n)

    @property
    def m(self) -> int:
        return 2 ** self.u - 1

    @property
    def num_qubits(self) -> int:
        return self.n * self.u

    @property
    def subsets(self) -> List[Tuple[int, ...]]:
        return list(itertools.combinations(range(self.g.order), self.h.order))


Instance = Union[GIInstance, SGIInstance]


@dataclass
class GroundSummary:
    min_cost: int
    degeneracy: int
    minimizers: List[IntegerString] = field(default_factory=list)

    @property
    def is_isomorphic(self) -> bool:
        return self.min_cost == 0

    def minimizer_strings(self) -> List[str]:
        return [str(s) for s in self.minimizers]

    def to_json(self) -> dict:
        return {
            "min_cost": self.min_cost,
            "degeneracy": self.degeneracy,
            "minimizers": self.minimizer_strings(),
            "is_isomorphic": self.is_isomorphic,
        }


def c1(s: IntegerString) -> int:
    return sum(1 for x in s.entries if x > s.n - 1)


def c2(s: IntegerString) -> int:
    e = s.entries
    return sum(1 for i in range(len(e)) for j in range(i + 1, len(e)) if e[i] == e[j])


def conjugate_adjacency(s: IntegerString, g: Graph) -> np.ndarray:
    """sigma(s) A sigma(s)^T in exact integer arithmetic."""
    if s.n != g.order:
        raise InputError(f"string length {s.n} does not match graph order {g.order}")
    sig = sigma_of(s).matrix
    return sig @ g.adjacency @ sig.T


def c3_gi(s: IntegerString, inst: GIInstance) -> int:
    return _matrix_norm(conjugate_adjacency(s, inst.g) - inst.g_prime.adjacency, inst.norm)


def cost_gi(s: IntegerString, inst: GIInstance) -> int:
    return c1(s) + c2(s) + c3_gi(s, inst)


def subset_projector(alpha: Sequence[int], n: int) -> np.ndarray:
    """n_sub x N matrix whose row i is the unit row vector at column alpha_i."""
    alpha = [int(a) for a in alpha]
    if len(set(alpha)) != len(alpha):
        raise InputError(f"subset {alpha} has repeated vertices")
    if any(not 0 <= a < n for a in alpha):
        raise InputError(f"subset {alpha} has a vertex outside [0, {n})")
    p = np.zeros((len(alpha), n), dtype=np.int64)
    p[np.arange(len(alpha)), alpha] = 1
    return p


def subgraph_adjacency(s: IntegerString, alpha: Sequence[int], g: Graph) -> np.ndarray:
    p = subset_projector(alpha, g.order)
    return p @ conjugate_adjacency(s, g) @ p.T


def _sgi_factors(s: IntegerString, inst: SGIInstance):
    conj = conjugate_adjacency(s, inst.g)
    target = inst.h.adjacency
    for alpha in inst.subsets:
        idx = np.asarray(alpha)
        yield alpha, _matrix_norm(conj[np.ix_(idx, idx)] - target, inst.norm)


def c3_sgi(s: IntegerString, inst: SGIInstance) -> int:
    """Product of mismatch norms over all vertex subsets, exact and unbounded."""
    prod = 1
    for _, f in _sgi_factors(s, inst):
        if f == 0:
            return 0
        prod *= f
    return prod


def cost_sgi(s: IntegerString, inst: SGIInstance) -> int:
    return c1(s) + c2(s) + c3_sgi(s, inst)


def sgi_witness(s: IntegerString, inst: SGIInstance) -> Optional[Tuple[int, ...]]:
    """First subset (lexicographic) whose relabelled subgraph equals the pattern."""
    for alpha, f in _sgi_factors(s, inst):
        if f == 0:
            return alpha
    return None


def cost(s: IntegerString, inst: Instance) -> int:
    if isinstance(inst, SGIInstance):
        return cost_sgi(s, inst)
    return cost_gi(s, inst)


# -- vectorised evaluation ------------------------------------------------------

def _conjugated_block(entries: np.ndarray, a: np.ndarray) -> np.ndarray:
    """Batch sigma A sigma^T for rows of ``entries`` (shape (B, N)) -> (B, N, N)."""
    b, n = entries.shape
    out = np.zeros((b, n, n), dtype=np.int64)
    flat = out.reshape(-1)
    rows = np.arange(b, dtype=np.int64) * (n * n)
    for i, j in zip(*np.nonzero(a)):
        si, sj = entries[:, i], entries[:, j]
        ok = (si < n) & (sj < n)
        # one increment per row for a fixed (i, j): plain fancy-index add is safe
        flat[rows[ok] + si[ok] * n + sj[ok]] += int(a[i, j])
    return out


def _norm_block(diff: np.ndarray, norm: str) -> np.ndarray:
    axes = tuple(range(1, diff.ndim))
    if norm == "l1":
        return np.abs(diff).sum(axis=axes)
    return (diff * diff).sum(axis=axes)


def _penalties_block(entries: np.ndarray) -> np.ndarray:
    n = entries.shape[1]
    pen = (entries > n - 1).sum(axis=1)
    for i in range(n):
        for j in range(i + 1, n):
            pen += entries[:, i] == entries[:, j]
    return pen.astype(np.int64)


def _saturating_mul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    limit = SATURATION_CAP // np.maximum(y, 1)
    return np.where(y == 0, 0, np.where(x > limit, SATURATION_CAP, x * y))


def cost_table(inst: Instance, indices: np.ndarray) -> np.ndarray:
    """Costs of the basis states ``indices`` as int64.

    GI costs are exact. SGI products saturate at ``SATURATION_CAP``; the
    ordering below the cap, and in particular the zero set, is exact.
    """
    indices = np.asarray(indices, dtype=np.int64)
    n = inst.n
    out = np.empty(len(indices), dtype=np.int64)
    for start in range(0, len(indices), _CHUNK):
        ent = decode_indices(indices[start:start + _CHUNK], n)
        conj = _conjugated_block(ent, inst.g.adjacency)
        pen = _penalties_block(ent)
        if isinstance(inst, GIInstance):
            c3 = _norm_block(conj - inst.g_prime.adjacency[None], inst.norm)
        else:
            target = inst.h.adjacency[None]
            c3 = np.ones(len(ent), dtype=np.int64)
            for alpha in inst.subsets:
                idx = np.asarray(alpha)
                f = _norm_block(conj[:, idx[:, None], idx[None, :]] - target, inst.norm)
                c3 = _saturating_mul(c3, f)
        out[start:start + len(ent)] = np.minimum(pen + c3, SATURATION_CAP)
    return out


def brute_force_ground(inst: Instance, limit_bits: int = DEFAULT_ENUMERATION_BITS) -> GroundSummary:
    """Exhaustive minimum over all 2**(N*U) strings."""
    nbits = inst.num_qubits
    if nbits > limit_bits:
        raise CapacityError(
            f"exhaustive search needs 2**{nbits} strings; limit is 2**{limit_bits}"
        )
    total = 1 << nbits
    best = None
    winners: List[np.ndarray] = []
    step = 1 << 20
    for start in range(0, total, step):
        idx = np.arange(start, min(total, start + step), dtype=np.int64)
        vals = cost_table(inst, idx)
        lo = int(vals.min())
        if best is None or lo < best:
            best, winners = lo, [idx[vals == lo]]
        elif lo == best:
            winners.append(idx[vals == lo])
    hits = np.concatenate(winners)
    strings = [integer_string_from_index(int(b), inst.n) for b in hits]
    if best >= SATURATION_CAP:
        # every state saturated: settle the minimum with exact arithmetic
        exact = [(cost(s, inst), s) for s in strings]
        best = min(c for c, _ in exact)
        strings = [s for c, s in exact if c == best]
    strings.sort(key=lambda s: s.entries)
    return GroundSummary(int(best), len(strings), strings)
