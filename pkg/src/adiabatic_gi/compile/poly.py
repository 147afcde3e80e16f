"""Multilinear polynomials over bits and the symbolic expansion of the GI cost.

A polynomial is a map from monomials (frozensets of variable indices) to
integer coefficients. Variable ``q_k`` is global bit ``k`` of the encoded
string, so field ``i`` occupies ``q_{iU} .. q_{iU+U-1}`` with the least
significant bit first.

Products of many factors are formed on the Boolean hypercube: a multilinear
polynomial is determined by its values on ``{0,1}^n``, so multiplying value
tables pointwise and applying the Moebius transform yields the exact product
coefficients. This is far cheaper than repeated symbolic multiplication.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Union

import numpy as np

from ..cost import GIInstance
from ..encoding import bits_per_field
from ..errors import CapacityError, InputError

__all__ = [
    "MultilinearPolynomial",
    "delta_bit_poly",
    "delta_int_poly",
    "product",
    "CostExpansion",
    "expand_cost",
    "TermStats",
    "structured_term_counts",
    "term_stats",
    "locality_bound",
    "DEFAULT_EXPANSION_MAX_N",
]

Monomial = FrozenSet[int]
DEFAULT_EXPANSION_MAX_N = 5
_DENSE_PRODUCT_MAX_VARS = 22


class MultilinearPolynomial:
    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Iterable[int], int]] = None):
        self.terms: Dict[Monomial, int] = {}
        for mono, c in (terms or {}).items():
            self._add(frozenset(mono), c)

    def _add(self, mono: Monomial, c) -> None:
        if c == 0:
            return
        v = self.terms.get(mono, 0) + c
        if v == 0:
            self.terms.pop(mono, None)
        else:
            self.terms[mono] = v

    @classmethod
    def constant(cls, c) -> "MultilinearPolynomial":
        return cls({(): c})

    @classmethod
    def var(cls, k: int) -> "MultilinearPolynomial":
        return cls({(k,): 1})

    def copy(self) -> "MultilinearPolynomial":
        out = MultilinearPolynomial()
        out.terms = dict(self.terms)
        return out

    def __add__(self, other):
        other = _coerce(other)
        out = self.copy()
        for m, c in other.terms.items():
            out._add(m, c)
        return out

    __radd__ = __add__

    def __neg__(self):
        out = MultilinearPolynomial()
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        out = MultilinearPolynomial()
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out._add(m1 | m2, c1 * c2)
        return out

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, float)):
            other = MultilinearPolynomial.constant(other)
        if not isinstance(other, MultilinearPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        body = " + ".join(
            f"{c}*" + "*".join(f"q{k}" for k in sorted(m)) if m else f"{c}"
            for m, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), sorted(t[0])))
        )
        return f"MultilinearPolynomial({body or '0'})"

    @property
    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    @property
    def num_terms(self) -> int:
        return len(self.terms)

    @property
    def variables(self) -> List[int]:
        return sorted(set().union(*self.terms)) if self.terms else []

    def constant_term(self):
        return self.terms.get(frozenset(), 0)

    def evaluate(self, bits: Union[Sequence[int], Mapping[int, int]]):
        get = bits.__getitem__
        return sum(c for m, c in self.terms.items() if all(get(k) for k in m))

    def evaluate_all(self, num_vars: int) -> np.ndarray:
        """Values at every assignment; entry ``x`` assigns bit ``k`` of ``x`` to ``q_k``."""
        if num_vars > 24:
            raise CapacityError(f"cannot tabulate {num_vars} variables")
        idx = np.arange(1 << num_vars, dtype=np.int64)
        out = np.zeros(1 << num_vars, dtype=np.int64)
        for m, c in self.terms.items():
            mask = sum(1 << k for k in m)
            out += c * ((idx & mask) == mask)
        return out


def _coerce(x) -> MultilinearPolynomial:
    if isinstance(x, MultilinearPolynomial):
        return x
    return MultilinearPolynomial.constant(x)


def _as_poly(x: Union[int, MultilinearPolynomial], is_var: bool) -> MultilinearPolynomial:
    if isinstance(x, MultilinearPolynomial):
        return x
    return MultilinearPolynomial.var(x) if is_var else MultilinearPolynomial.constant(x)


def delta_bit_poly(a, b, a_const: bool = False, b_const: bool = False) -> MultilinearPolynomial:
    """Kronecker delta of two bits, ``(a + b - 1)**2 = 1 - a - b + 2ab``.

    Integer operands are variable indices unless flagged as constants.
    """
    pa = _as_poly(a, not a_const)
    pb = _as_poly(b, not b_const)
    return 1 - pa - pb + 2 * (pa * pb)


def delta_int_poly(field_vars: Sequence[int], k: int) -> MultilinearPolynomial:
    """1 exactly when the little-endian bit field equals ``k``."""
    u = len(field_vars)
    if not 0 <= k < (1 << u):
        raise InputError(f"constant {k} does not fit in {u} bits")
    out = MultilinearPolynomial.constant(1)
    for j, v in enumerate(field_vars):
        bit = (k >> j) & 1
        out = out * (MultilinearPolynomial.var(v) if bit else 1 - MultilinearPolynomial.var(v))
    return out


def _mobius(values: np.ndarray, n: int) -> np.ndarray:
    coef = values.copy()
    for k in range(n):
        view = coef.reshape(-1, 2, 1 << k)
        view[:, 1, :] -= view[:, 0, :]
    return coef


def product(factors: Sequence[MultilinearPolynomial]) -> MultilinearPolynomial:
    """Exact multilinear product of many factors."""
    if not factors:
        return MultilinearPolynomial.constant(1)
    vars_ = sorted(set().union(*(f.variables for f in factors)))
    if len(vars_) > _DENSE_PRODUCT_MAX_VARS:
        out = MultilinearPolynomial.constant(1)
        for f in factors:
            out = out * f
        return out
    local = {v: i for i, v in enumerate(vars_)}
    n = len(vars_)
    acc = np.ones(1 << n, dtype=np.int64)
    for f in factors:
        relabelled = MultilinearPolynomial(
            {frozenset(local[v] for v in m): c for m, c in f.terms.items()}
        )
        acc *= relabelled.evaluate_all(n)
    coef = _mobius(acc, n)
    out = MultilinearPolynomial()
    for mask in np.flatnonzero(coef):
        mono = frozenset(vars_[i] for i in range(n) if (int(mask) >> i) & 1)
        out.terms[mono] = int(coef[mask])
    return out


@dataclass
class CostExpansion:
    n: int
    u: int
    c1: MultilinearPolynomial
    c2: MultilinearPolynomial
    c3: MultilinearPolynomial

    @property
    def num_vars(self) -> int:
        return self.n * self.u

    @property
    def total(self) -> MultilinearPolynomial:
        return self.c1 + self.c2 + self.c3


def _field(i: int, u: int) -> List[int]:
    return [i * u + j for j in range(u)]


def expand_cost(inst: GIInstance, max_n: int = DEFAULT_EXPANSION_MAX_N) -> CostExpansion:
    """Symbolic expansion of ``C1 + C2 + C3`` over the ``N*U`` encoding bits.

    The L1 mismatch uses ``|x - 1| = x - 1 + 2[x = 0]`` for target entries
    equal to one, where ``x`` is the non-negative integer entry of
    ``sigma A sigma^T`` and ``[x = 0]`` is a product of ``1 - delta delta``
    factors, one for each ordered edge.
    """
    if inst.norm != "l1":
        raise InputError("symbolic expansion is implemented for the L1 norm only")
    n, u = inst.n, inst.u
    if n > max_n:
        raise CapacityError(f"symbolic expansion limited to N <= {max_n}, got {n}")
    top = (1 << u) - 1
    fields = [_field(i, u) for i in range(n)]

    c1 = MultilinearPolynomial()
    for i in range(n):
        for alpha in range(n, top + 1):
            c1 = c1 + delta_int_poly(fields[i], alpha)

    c2 = MultilinearPolynomial()
    for i in range(n):
        for j in range(i + 1, n):
            c2 = c2 + product([delta_bit_poly(a, b) for a, b in zip(fields[i], fields[j])])

    eq = {(i, l): delta_int_poly(fields[i], l) for i in range(n) for l in range(n)}
    a = inst.g.adjacency
    ap = inst.g_prime.adjacency
    edges = [(int(i), int(j)) for i, j in zip(*np.nonzero(a))]
    c3 = MultilinearPolynomial()
    for l in range(n):
        for m in range(n):
            hits = [eq[i, l] * eq[j, m] for i, j in edges]
            x = MultilinearPolynomial()
            for h in hits:
                x = x + h
            if ap[l, m] == 0:
                c3 = c3 + x
            else:
                empty = product([1 - h for h in hits])
                c3 = c3 + x - 1 + 2 * empty
    return CostExpansion(n, u, c1, c2, c3)


@dataclass
class TermStats:
    n: int
    num_qubits: int
    t1: int
    t2: int
    t3: int
    num_terms: int
    max_degree: int
    histogram: Dict[int, int]

    @property
    def structured_total(self) -> int:
        return self.t1 + self.t2 + self.t3

    @property
    def ratio(self) -> float:
        return self.structured_total / self.num_qubits ** 2

    def to_json(self) -> dict:
        return {
            "N": self.n,
            "L": self.num_qubits,
            "T1": self.t1,
            "T2": self.t2,
            "T3": self.t3,
            "T_total": self.structured_total,
            "T_over_L2": self.ratio,
            "monomials": self.num_terms,
            "max_degree": self.max_degree,
            "degree_histogram": {str(k): v for k, v in sorted(self.histogram.items())},
        }


def structured_term_counts(n: int) -> tuple:
    """``(T1, T2, T3) = (N(M - N + 1), C(N, 2), N**2)`` before expansion."""
    m = (1 << bits_per_field(n)) - 1
    return n * (m - n + 1), comb(n, 2), n * n


def term_stats(poly: Optional[MultilinearPolynomial], n: int) -> TermStats:
    t1, t2, t3 = structured_term_counts(n)
    hist: Dict[int, int] = {}
    if poly is not None:
        for mono in poly.terms:
            hist[len(mono)] = hist.get(len(mono), 0) + 1
    return TermStats(
        n=n,
        num_qubits=n * bits_per_field(n),
        t1=t1,
        t2=t2,
        t3=t3,
        num_terms=poly.num_terms if poly is not None else 0,
        max_degree=poly.degree if poly is not None else 0,
        histogram=hist,
    )


def locality_bound(n: int) -> dict:
    """Published locality bounds; the C3 bound is vacuous when N is a power of two."""
    u = bits_per_field(n)
    m = (1 << u) - 1
    guard = m - n + 1
    return {
        "c1_c2": 2 * u,
        "c3": 4 * u * guard,
        "c3_degenerate": guard == 0,
    }
