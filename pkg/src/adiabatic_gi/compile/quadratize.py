"""Reduction of a multilinear polynomial to quadratic form with ancilla bits.

A monomial ``c * a1 a2 ... ak`` (k >= 3) is replaced by ``c * a1 * b2``
with the cascade ``b_{k-1} = a_{k-1} a_k`` and ``b_j = a_j b_{j+1}``. Each
ancilla is enforced by ``mu * P(x, y; b)`` with
``P = xy - 2(x + y) b + 3b``, which is 0 when ``b = xy`` and at least 1
otherwise. Ancillas are shared between monomials whose cascades need the
same product.

Penalty weights are per ancilla: ``mu_b = 1 + sum |c|`` over the monomials
whose cascade passes through ``b``. Any ancilla assignment that violates a
constraint can change those monomials by at most that sum, so it always
costs strictly more than the consistent one.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import CapacityError, ContractError, InputError
from .poly import MultilinearPolynomial

__all__ = [
    "penalty",
    "QuadraticProgram",
    "AncillaAllocator",
    "quadratize_term",
    "quadratize",
    "min_over_ancillas",
    "DEFAULT_ANCILLA_BUDGET",
]

DEFAULT_ANCILLA_BUDGET = 100_000


def penalty(x, y, b):
    return x * y - 2 * (x + y) * b + 3 * b


@dataclass
class QuadraticProgram:
    num_original: int
    linear: Dict[int, float] = field(default_factory=dict)
    quadratic: Dict[Tuple[int, int], float] = field(default_factory=dict)
    offset: float = 0
    ancillas: Dict[int, Tuple[int, int]] = field(default_factory=dict)
    mu: Dict[int, float] = field(default_factory=dict)

    @property
    def num_ancillas(self) -> int:
        return len(self.ancillas)

    @property
    def num_vars(self) -> int:
        return self.num_original + self.num_ancillas

    def add_linear(self, i: int, c) -> None:
        if c:
            v = self.linear.get(i, 0) + c
            if v:
                self.linear[i] = v
            else:
                self.linear.pop(i, None)

    def add_quadratic(self, i: int, j: int, c) -> None:
        if i == j:
            self.add_linear(i, c)
            return
        key = (min(i, j), max(i, j))
        if c:
            v = self.quadratic.get(key, 0) + c
            if v:
                self.quadratic[key] = v
            else:
                self.quadratic.pop(key, None)

    def add_monomial(self, mono: Sequence[int], c) -> None:
        mono = tuple(mono)
        if len(mono) == 0:
            self.offset += c
        elif len(mono) == 1:
            self.add_linear(mono[0], c)
        elif len(mono) == 2:
            self.add_quadratic(mono[0], mono[1], c)
        else:
            raise InputError(f"monomial of degree {len(mono)} in a quadratic program")

    def to_poly(self) -> MultilinearPolynomial:
        terms = {(): self.offset}
        out = MultilinearPolynomial(terms)
        for i, c in self.linear.items():
            out = out + MultilinearPolynomial({(i,): c})
        for (i, j), c in self.quadratic.items():
            out = out + MultilinearPolynomial({(i, j): c})
        return out

    @property
    def degree(self) -> int:
        return 2 if self.quadratic else (1 if self.linear else 0)

    def evaluate(self, x: Sequence[int]):
        val = self.offset
        for i, c in self.linear.items():
            val += c * x[i]
        for (i, j), c in self.quadratic.items():
            val += c * x[i] * x[j]
        return val

    def ancilla_violations(self, x: Sequence[int]) -> List[int]:
        return [b for b, (p, q) in self.ancillas.items() if x[b] != x[p] * x[q]]


class AncillaAllocator:
    """Hands out ancilla indices, one per distinct defining pair."""

    def __init__(self, first_index: int, budget: int = DEFAULT_ANCILLA_BUDGET):
        self.next = first_index
        self.budget = budget
        self.by_pair: Dict[Tuple[int, int], int] = {}

    def get(self, x: int, y: int) -> Tuple[int, bool]:
        key = (min(x, y), max(x, y))
        if key in self.by_pair:
            return self.by_pair[key], False
        if len(self.by_pair) >= self.budget:
            raise CapacityError(f"ancilla budget of {self.budget} exhausted")
        b = self.next
        self.next += 1
        self.by_pair[key] = b
        return b, True

    def pair_of(self) -> Dict[int, Tuple[int, int]]:
        return {b: pair for pair, b in self.by_pair.items()}


def _cascade(mono: Sequence[int], alloc: AncillaAllocator) -> Tuple[int, List[int], List[int]]:
    """Returns ``(b2, ancillas used, newly created ancillas)`` for ``a1 .. ak``."""
    a = list(mono)
    k = len(a)
    used, fresh = [], []
    b, new = alloc.get(a[k - 2], a[k - 1])
    used.append(b)
    if new:
        fresh.append(b)
    for j in range(k - 3, 0, -1):
        b, new = alloc.get(a[j], b)
        used.append(b)
        if new:
            fresh.append(b)
    return b, used, fresh


def quadratize_term(
    mono: Sequence[int],
    coef,
    alloc: AncillaAllocator,
    mu,
    qp: Optional[QuadraticProgram] = None,
    num_original: Optional[int] = None,
) -> QuadraticProgram:
    """Add ``coef * prod(mono)`` in quadratic form to ``qp`` (a new one if absent).

    Penalties are attached with the fixed weight ``mu`` for each ancilla this
    call creates.
    """
    mono = sorted(mono)
    if qp is None:
        qp = QuadraticProgram(num_original if num_original is not None else alloc.next)
    if len(mono) <= 2:
        qp.add_monomial(mono, coef)
        return qp
    b2, _, fresh = _cascade(mono, alloc)
    qp.add_quadratic(mono[0], b2, coef)
    pairs = alloc.pair_of()
    for b in fresh:
        x, y = pairs[b]
        qp.ancillas[b] = (x, y)
        qp.mu[b] = mu
        _add_penalty(qp, x, y, b, mu)
    return qp


def _add_penalty(qp: QuadraticProgram, x: int, y: int, b: int, mu) -> None:
    qp.add_quadratic(x, y, mu)
    qp.add_quadratic(x, b, -2 * mu)
    qp.add_quadratic(y, b, -2 * mu)
    qp.add_linear(b, 3 * mu)


def quadratize(
    poly: MultilinearPolynomial,
    num_original: Optional[int] = None,
    mu: Optional[float] = None,
    budget: int = DEFAULT_ANCILLA_BUDGET,
) -> QuadraticProgram:
    """Quadratic program whose minimum over ancillas equals ``poly`` pointwise.

    ``mu=None`` selects the per-ancilla weight described in the module
    docstring; a number forces one weight for every ancilla.
    """
    if num_original is None:
        num_original = max(poly.variables, default=-1) + 1
    if poly.variables and max(poly.variables) >= num_original:
        raise InputError("polynomial uses a variable beyond num_original")
    alloc = AncillaAllocator(num_original, budget)
    qp = QuadraticProgram(num_original)
    weight: Dict[int, float] = {}
    for mono, c in sorted(poly.terms.items(), key=lambda t: (len(t[0]), sorted(t[0]))):
        m = sorted(mono)
        if len(m) <= 2:
            qp.add_monomial(m, c)
            continue
        b2, used, _ = _cascade(m, alloc)
        qp.add_quadratic(m[0], b2, c)
        for b in used:
            weight[b] = weight.get(b, 0) + abs(c)
    for b, (x, y) in sorted(alloc.pair_of().items()):
        w = (1 + weight[b]) if mu is None else mu
        qp.ancillas[b] = (x, y)
        qp.mu[b] = w
        _add_penalty(qp, x, y, b, w)
    return qp


def min_over_ancillas(qp: QuadraticProgram, assignments: Optional[np.ndarray] = None) -> np.ndarray:
    """``min_b Q(a, b)`` for every row ``a`` of ``assignments`` (all 2**n by default).

    Ancilla couplings produced by the cascade form a forest, which is
    minimised exactly by eliminating leaves. Any cyclic remainder of up to
    16 ancillas is brute-forced.
    """
    n = qp.num_original
    if assignments is None:
        if n > 24:
            raise CapacityError(f"cannot enumerate {n} original variables")
        idx = np.arange(1 << n, dtype=np.int64)
        assignments = ((idx[:, None] >> np.arange(n)[None, :]) & 1).astype(np.int64)
    a = np.asarray(assignments, dtype=np.int64)
    rows = a.shape[0]
    float_mode = any(isinstance(v, float) for v in
                     itertools.chain(qp.linear.values(), qp.quadratic.values(), [qp.offset]))
    dt = np.float64 if float_mode else np.int64

    base = np.full(rows, qp.offset, dtype=dt)
    unary: Dict[int, np.ndarray] = {b: np.zeros(rows, dtype=dt) for b in qp.ancillas}
    nbrs: Dict[int, Dict[int, float]] = {b: {} for b in qp.ancillas}
    extra = set()
    for i, c in qp.linear.items():
        if i < n:
            base += c * a[:, i]
        elif i in unary:
            unary[i] += c
        else:
            extra.add(i)
    for (i, j), c in qp.quadratic.items():
        io, jo = i < n, j < n
        if io and jo:
            base += c * a[:, i] * a[:, j]
        elif io and j in unary:
            unary[j] += c * a[:, i]
        elif jo and i in unary:
            unary[i] += c * a[:, j]
        elif i in unary and j in unary:
            nbrs[i][j] = nbrs[i].get(j, 0) + c
            nbrs[j][i] = nbrs[j].get(i, 0) + c
        else:
            extra.add(i if not io else j)
    if extra:
        raise ContractError(f"variables {sorted(extra)} are neither original nor registered ancillas")

    # unary[b] is the extra cost of b = 1 over b = 0
    alive = set(unary)
    stack = [b for b in alive if len(nbrs[b]) <= 1]
    while stack:
        b = stack.pop()
        if b not in alive or len(nbrs[b]) > 1:
            continue
        alive.discard(b)
        if not nbrs[b]:
            base += np.minimum(0, unary[b])
            continue
        (c_, w), = nbrs[b].items()
        # min over b of unary_b * b + w * b * c:  c=0 -> min(0, u); c=1 -> min(0, u + w)
        m0 = np.minimum(0, unary[b])
        m1 = np.minimum(0, unary[b] + w)
        base += m0
        unary[c_] += m1 - m0
        del nbrs[c_][b]
        if len(nbrs[c_]) <= 1:
            stack.append(c_)
    if alive:
        rest = sorted(alive)
        if len(rest) > 16:
            raise CapacityError(f"{len(rest)} ancillas remain in a cyclic core")
        best = None
        for bits in itertools.product((0, 1), repeat=len(rest)):
            val = sum(unary[b] * x for b, x in zip(rest, bits))
            for p, (b, x) in enumerate(zip(rest, bits)):
                for q in range(p + 1, len(rest)):
                    w = nbrs[b].get(rest[q])
                    if w and x and bits[q]:
                        val = val + w
            best = val if best is None else np.minimum(best, val)
        base += best
    return base
