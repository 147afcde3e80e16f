"""Automorphism groups read off the zero-cost ground set of a self-instance."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .cost import GroundSummary
from .encoding import format_string, is_permutation_string, parse_string
from .errors import ContractError, InputError

__all__ = [
    "Permutation",
    "GroupTable",
    "decode_ground_strings",
    "compose",
    "power",
    "inverse",
    "verify_closure",
    "dihedral_relations",
    "check_dihedral",
    "generate_from",
    "match_group",
    "find_generators",
    "group_report",
]


@dataclass(frozen=True, order=True)
class Permutation:
    images: Tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise InputError(f"{imgs} is not a bijection of 0..{len(imgs) - 1}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        return cls(parse_string(text).entries)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.images)

    def is_identity(self) -> bool:
        return self.images == tuple(range(self.n))

    def __getitem__(self, i):
        return self.images[i]

    def __str__(self):
        return format_string(self.images, self.n - 1)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p . q``: apply ``q`` first, then ``p``."""
    if p.n != q.n:
        raise InputError(f"cannot compose permutations of sizes {p.n} and {q.n}")
    return Permutation(tuple(p[qi] for qi in q.images))


def power(p: Permutation, k: int) -> Permutation:
    out = Permutation.identity(p.n)
    for _ in range(k):
        out = compose(p, out)
    return out


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.n
    for i, x in enumerate(p.images):
        inv[x] = i
    return Permutation(tuple(inv))


def decode_ground_strings(summary: GroundSummary) -> List[Permutation]:
    if summary.min_cost != 0:
        raise ContractError(
            f"graphs not isomorphic: ground cost is {summary.min_cost}, not 0"
        )
    out = []
    for s in summary.minimizers:
        if not is_permutation_string(s):
            raise ContractError(f"zero-cost string {s} is not a permutation")
        out.append(Permutation(s.entries))
    return out


@dataclass
class Closure:
    ok: bool
    reason: str = ""
    witness: Tuple[Permutation, ...] = ()

    def __bool__(self):
        return self.ok


def verify_closure(elems: Sequence[Permutation]) -> Closure:
    """Check group axioms; on failure the witness names the offending element(s)."""
    if not elems:
        raise InputError("closure check needs at least one element")
    pool = set(elems)
    n = elems[0].n
    if Permutation.identity(n) not in pool:
        return Closure(False, "identity missing")
    ordered = sorted(pool)
    for p in ordered:
        if inverse(p) not in pool:
            return Closure(False, "inverse missing", (p,))
    for p in ordered:
        for q in ordered:
            if compose(p, q) not in pool:
                return Closure(False, "product missing", (p, q))
    return Closure(True)


def dihedral_relations(alpha: Permutation, beta: Permutation, n: int) -> Dict[str, bool]:
    if alpha.n != beta.n:
        raise InputError("generators act on different vertex sets")
    return {
        "alpha^n=e": power(alpha, n).is_identity(),
        "beta^2=e": compose(beta, beta).is_identity(),
        "alpha.beta=beta.alpha^(n-1)": compose(alpha, beta) == compose(beta, power(alpha, n - 1)),
    }


def check_dihedral(alpha: Permutation, beta: Permutation, n: int) -> bool:
    return all(dihedral_relations(alpha, beta, n).values())


@dataclass
class GroupTable:
    elements: List[Permutation]
    alpha: Optional[Permutation] = None
    beta: Optional[Permutation] = None
    n: Optional[int] = None
    labels: Dict[Permutation, str] = field(default_factory=dict)
    collapsed: bool = False

    @property
    def order(self) -> int:
        return len(self.elements)

    def element_set(self) -> set:
        return set(self.elements)


def generate_from(alpha: Permutation, beta: Permutation, n: int) -> GroupTable:
    """All words ``alpha^i beta^j`` with ``0 <= i < n``, ``j in {0, 1}``."""
    labels: Dict[Permutation, str] = {}
    elems: List[Permutation] = []
    for j in range(2):
        for i in range(n):
            g = compose(power(alpha, i), power(beta, j))
            if g not in labels:
                word = "".join(part for part in (
                    "" if i == 0 else ("α" if i == 1 else f"α^{i}"),
                    "β" if j else "",
                ))
                labels[g] = word or "e"
                elems.append(g)
    return GroupTable(elems, alpha, beta, n, labels, collapsed=len(elems) < 2 * n)


def match_group(decoded: Iterable[Permutation], table: GroupTable) -> bool:
    return set(decoded) == table.element_set()


def _order_of(p: Permutation) -> int:
    k, q = 1, p
    while not q.is_identity():
        q = compose(p, q)
        k += 1
    return k


def find_generators(
    elems: Sequence[Permutation], prefer: Optional[Tuple[Permutation, Permutation]] = None
) -> Optional[Tuple[Permutation, Permutation, int]]:
    """A dihedral generating pair for ``elems``, if the set is a dihedral group.

    A supplied ``prefer`` pair is returned when it generates the set;
    otherwise the lexicographically first valid pair is chosen.
    """
    pool = set(elems)
    if len(pool) % 2:
        return None
    n = len(pool) // 2
    if prefer is not None:
        a, b = prefer
        if check_dihedral(a, b, n) and set(generate_from(a, b, n).elements) == pool:
            return a, b, n
    ordered = sorted(pool)
    for a in ordered:
        if _order_of(a) != n:
            continue
        for b in ordered:
            if check_dihedral(a, b, n) and set(generate_from(a, b, n).elements) == pool:
                return a, b, n
    return None


def group_report(
    elems: Sequence[Permutation], prefer: Optional[Tuple[Permutation, Permutation]] = None
) -> dict:
    found = find_generators(elems, prefer)
    report = {
        "order": len(set(elems)),
        "elements": [str(p) for p in elems],
        "closed": bool(verify_closure(elems)),
        "fixed_vertices": [v for v in range(elems[0].n) if all(p[v] == v for p in elems)],
        "generators": None,
        "relations_checked": None,
        "dihedral_n": None,
    }
    if found:
        a, b, n = found
        report["generators"] = {"alpha": str(a), "beta": str(b)}
        report["relations_checked"] = dihedral_relations(a, b, n)
        report["dihedral_n"] = n
    return report
