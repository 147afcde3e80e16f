"""Chimera hardware graphs.

Qubit ``q = ((r * cols + c) * 2 + u) * half + k`` sits in cell ``(r, c)``,
partition ``u`` (0 = left, 1 = right) at position ``k``. Left-partition
qubits couple to the same position in the cells above and below; right-
partition qubits couple left and right. Indices are 0-based; hardware
diagrams that number qubits from 1 use ``q + 1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Set, Tuple, Union

from ..errors import InputError

__all__ = ["ChimeraGraph", "chimera", "read_disabled", "closed_form_edge_count"]


@dataclass(frozen=True)
class ChimeraGraph:
    rows: int
    cols: int
    half: int = 4
    disabled: FrozenSet[int] = frozenset()
    edges: FrozenSet[Tuple[int, int]] = field(init=False)
    adjacency: Dict[int, FrozenSet[int]] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1 or self.half < 1:
            raise InputError(f"Chimera dimensions must be positive, got {self.rows}x{self.cols}x{self.half}")
        bad = [q for q in self.disabled if not 0 <= q < self.total_qubits]
        if bad:
            raise InputError(f"disabled qubits out of range: {sorted(bad)}")
        object.__setattr__(self, "disabled", frozenset(self.disabled))
        edges = {e for e in self._all_edges() if e[0] not in self.disabled and e[1] not in self.disabled}
        adj: Dict[int, Set[int]] = {q: set() for q in self.qubits}
        for p, q in edges:
            adj[p].add(q)
            adj[q].add(p)
        object.__setattr__(self, "edges", frozenset(edges))
        object.__setattr__(self, "adjacency", {q: frozenset(v) for q, v in adj.items()})

    @property
    def total_qubits(self) -> int:
        return 2 * self.half * self.rows * self.cols

    @property
    def qubits(self) -> List[int]:
        return [q for q in range(self.total_qubits) if q not in self.disabled]

    @property
    def num_qubits(self) -> int:
        return self.total_qubits - len(self.disabled)

    def index(self, r: int, c: int, u: int, k: int) -> int:
        return ((r * self.cols + c) * 2 + u) * self.half + k

    def coords(self, q: int) -> Tuple[int, int, int, int]:
        k = q % self.half
        cell, u = divmod(q // self.half, 2)
        r, c = divmod(cell, self.cols)
        return r, c, u, k

    def degree(self, q: int) -> int:
        return len(self.adjacency[q])

    def has_edge(self, p: int, q: int) -> bool:
        return (min(p, q), max(p, q)) in self.edges

    def _all_edges(self):
        h = self.half
        for r in range(self.rows):
            for c in range(self.cols):
                for k in range(h):
                    for k2 in range(h):
                        a, b = self.index(r, c, 0, k), self.index(r, c, 1, k2)
                        yield (min(a, b), max(a, b))
                    if r + 1 < self.rows:
                        yield (self.index(r, c, 0, k), self.index(r + 1, c, 0, k))
                    if c + 1 < self.cols:
                        yield (self.index(r, c, 1, k), self.index(r, c + 1, 1, k))


def chimera(rows: int = 4, cols: int = 4, half: int = 4, disabled: Iterable[int] = ()) -> ChimeraGraph:
    return ChimeraGraph(rows, cols, half, frozenset(int(q) for q in disabled))


def closed_form_edge_count(rows: int, cols: int, half: int) -> int:
    return rows * cols * half * half + (rows - 1) * cols * half + rows * (cols - 1) * half


def read_disabled(path: Union[str, Path]) -> List[int]:
    """Whitespace separated qubit indices; ``#`` starts a comment."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    out = []
    for line in text.splitlines():
        for tok in line.split("#", 1)[0].split():
            try:
                out.append(int(tok))
            except ValueError:
                raise InputError(f"disabled-qubit list contains {tok!r}") from None
    return out
