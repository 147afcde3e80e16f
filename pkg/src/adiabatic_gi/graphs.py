"""Simple undirected graphs held as symmetric 0/1 adjacency matrices.

Vertices are labelled ``0 .. N-1``. Graph values are immutable: the
adjacency array is marked read-only on construction.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import InputError

__all__ = [
    "Graph",
    "from_edge_list",
    "from_adjacency",
    "degree_sequence",
    "characteristic_polynomial",
    "strongly_regular_params",
    "make_cycle",
    "make_wheel",
    "make_grid",
    "make_path",
    "make_complete",
    "parse_edge_list",
    "read_edge_list",
    "format_edge_list",
]


@dataclass(frozen=True, eq=False)
class Graph:
    adjacency: np.ndarray

    def __post_init__(self):
        a = np.array(self.adjacency, dtype=np.int64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InputError(f"adjacency must be square, got shape {a.shape}")
        if not np.isin(a, (0, 1)).all():
            raise InputError("adjacency entries must be 0 or 1")
        if not (a == a.T).all():
            raise InputError("adjacency must be symmetric")
        if a.shape[0] and np.diag(a).any():
            raise InputError("self-loops are not allowed")
        a.setflags(write=False)
        object.__setattr__(self, "adjacency", a)

    @property
    def order(self) -> int:
        return self.adjacency.shape[0]

    @property
    def edges(self) -> list[Tuple[int, int]]:
        iu, ju = np.nonzero(np.triu(self.adjacency, 1))
        return [(int(i), int(j)) for i, j in zip(iu, ju)]

    @property
    def num_edges(self) -> int:
        return int(self.adjacency.sum()) // 2

    def neighbours(self, v: int) -> list[int]:
        return [int(u) for u in np.nonzero(self.adjacency[v])[0]]

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``i`` renamed to ``perm[i]``."""
        n = self.order
        if sorted(perm) != list(range(n)):
            raise InputError("relabelling must be a permutation of the vertices")
        return from_edge_list(n, [(perm[u], perm[v]) for u, v in self.edges])

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.adjacency.shape == other.adjacency.shape and bool(
            (self.adjacency == other.adjacency).all()
        )

    def __hash__(self):
        return hash((self.order, self.adjacency.tobytes()))

    def __repr__(self):
        return f"Graph(order={self.order}, edges={self.edges})"


def from_edge_list(order: int, edges: Iterable[Tuple[int, int]]) -> Graph:
    if order < 1:
        raise InputError(f"graph order must be positive, got {order}")
    a = np.zeros((order, order), dtype=np.int64)
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < order and 0 <= v < order):
            raise InputError(f"edge ({u}, {v}) has an endpoint outside [0, {order})")
        if u == v:
            raise InputError(f"self-loop at vertex {u}")
        a[u, v] = a[v, u] = 1
    return Graph(a)


def from_adjacency(rows: Sequence[Sequence[int]]) -> Graph:
    return Graph(np.asarray(rows, dtype=np.int64))


def degree_sequence(g: Graph) -> list[int]:
    return sorted((int(d) for d in g.adjacency.sum(axis=1)), reverse=True)


def characteristic_polynomial(g: Graph) -> list[int]:
    """Coefficients of det(xI - A), highest power first.

    Faddeev-LeVerrier recursion in exact Python integers. The division by
    ``k`` is always exact for integer matrices.
    """
    n = g.order
    a = [[int(x) for x in row] for row in g.adjacency]
    coeffs = [1]
    m = [[0] * n for _ in range(n)]
    c = 1
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        am = _matmul(a, m)
        for i in range(n):
            am[i][i] += c
        m = am
        tr = sum(_matmul(a, m)[i][i] for i in range(n))
        if tr % k:
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        c = -tr // k
        coeffs.append(c)
    return coeffs


def _matmul(x, y):
    n = len(x)
    return [[sum(x[i][k] * y[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def format_polynomial(coeffs: Sequence[int], var: str = "x") -> str:
    n = len(coeffs) - 1
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        p = n - i
        mag = abs(c)
        body = var if p == 1 else (f"{var}^{p}" if p else "")
        if body and mag == 1:
            term = body
        else:
            term = f"{mag}{body}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, term))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out


def strongly_regular_params(g: Graph) -> Optional[Tuple[int, int, int, int]]:
    """Return ``(v, k, lambda, mu)`` if ``g`` is strongly regular, else ``None``.

    A missing class of pairs (no adjacent or no non-adjacent pair) puts no
    constraint on its parameter, which is then reported as 0.
    """
    a = g.adjacency
    n = g.order
    deg = a.sum(axis=1)
    if n == 0 or (deg != deg[0]).any():
        return None
    common = a @ a
    iu, ju = np.triu_indices(n, 1)
    adjacent = a[iu, ju] == 1
    lam_vals = set(common[iu, ju][adjacent].tolist())
    mu_vals = set(common[iu, ju][~adjacent].tolist())
    if len(lam_vals) > 1 or len(mu_vals) > 1:
        return None
    lam = lam_vals.pop() if lam_vals else 0
    mu = mu_vals.pop() if mu_vals else 0
    return (n, int(deg[0]), int(lam), int(mu))


def make_cycle(n: int) -> Graph:
    if n < 3:
        raise InputError(f"a cycle needs at least 3 vertices, got {n}")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def make_path(n: int) -> Graph:
    if n < 1:
        raise InputError(f"a path needs at least 1 vertex, got {n}")
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def make_complete(n: int) -> Graph:
    return from_edge_list(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def make_wheel(n: int) -> Graph:
    """Wheel on ``n`` vertices: rim cycle ``0..n-2`` plus hub ``n-1``."""
    if n < 4:
        raise InputError(f"a wheel needs at least 4 vertices, got {n}")
    rim = n - 1
    edges = [(i, (i + 1) % rim) for i in range(rim)]
    edges += [(i, n - 1) for i in range(rim)]
    return from_edge_list(n, edges)


def make_grid(m: int, n: int) -> Graph:
    """Grid graph P_m x P_n.

    Vertex ``(i, j)`` with ``0 <= i < m``, ``0 <= j < n`` gets label
    ``i + m*j``, so rows of length ``m`` are numbered bottom to top. For
    ``make_grid(2, 3)`` this is the labelling 0-1 / 2-3 / 4-5 with rungs
    between consecutive rows.
    """
    if m < 1 or n < 1 or m * n < 2:
        raise InputError(f"grid needs at least 2 vertices, got {m}x{n}")
    edges = []
    for j in range(n):
        for i in range(m):
            v = i + m * j
            if i + 1 < m:
                edges.append((v, v + 1))
            if j + 1 < n:
                edges.append((v, v + m))
    return from_edge_list(m * n, edges)


# -- edge-list text format ----------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse ``N <order>`` followed by ``u v`` lines; ``#`` starts a comment."""
    order = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if order is None:
            if len(fields) != 2 or fields[0] != "N":
                raise InputError(f"line {lineno}: expected 'N <order>', got {raw!r}")
            try:
                order = int(fields[1])
            except ValueError:
                raise InputError(f"line {lineno}: order is not an integer") from None
            continue
        if len(fields) != 2:
            raise InputError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            edges.append((int(fields[0]), int(fields[1])))
        except ValueError:
            raise InputError(f"line {lineno}: vertex labels must be integers") from None
    if order is None:
        raise InputError("missing 'N <order>' header")
    return from_edge_list(order, edges)


def read_edge_list(path: Union[str, Path]) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return parse_edge_list(text)


def format_edge_list(g: Graph, comment: Optional[str] = None) -> str:
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"N {g.order}")
    lines += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"
