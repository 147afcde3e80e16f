"""Plain-text QUBO documents.

Layout::

    QUBO <num_vars> <num_terms>
    # offset <value>
    i i <linear>
    i j <quadratic>        (i < j)

Terms are sorted by ``(i, j)``, zero coefficients are dropped and every
number is printed with six decimals, so exporting a parsed document
reproduces the input byte for byte.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from ..errors import InputError
from .chimera import ChimeraGraph
from .embed import Embedding
from .quadratize import QuadraticProgram

__all__ = ["QuboDocument", "format_qubo", "parse_qubo", "export_qubo", "to_document"]


@dataclass
class QuboDocument:
    num_vars: int
    terms: Dict[Tuple[int, int], float] = field(default_factory=dict)
    offset: float = 0.0

    def add(self, i: int, j: int, c: float) -> None:
        key = (min(i, j), max(i, j))
        self.terms[key] = self.terms.get(key, 0.0) + c

    def pruned(self) -> Dict[Tuple[int, int], float]:
        return {k: v for k, v in sorted(self.terms.items()) if f"{v:.6f}" not in ("0.000000", "-0.000000")}

    def evaluate(self, x) -> float:
        return self.offset + sum(c * x[i] * x[j] for (i, j), c in self.terms.items())


def _num(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def format_qubo(doc: QuboDocument) -> str:
    terms = doc.pruned()
    lines = [f"QUBO {doc.num_vars} {len(terms)}", f"# offset {_num(doc.offset)}"]
    lines += [f"{i} {j} {_num(c)}" for (i, j), c in terms.items()]
    return "\n".join(lines) + "\n"


def parse_qubo(text: str) -> QuboDocument:
    doc = None
    declared = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].split()
            if doc is not None and len(body) == 2 and body[0] == "offset":
                doc.offset = float(body[1])
            continue
        fields = line.split()
        if doc is None:
            if len(fields) != 3 or fields[0] != "QUBO":
                raise InputError(f"line {lineno}: expected 'QUBO <num_vars> <num_terms>'")
            doc = QuboDocument(int(fields[1]))
            declared = int(fields[2])
            continue
        if len(fields) != 3:
            raise InputError(f"line {lineno}: expected 'i j value'")
        i, j, c = int(fields[0]), int(fields[1]), float(fields[2])
        if i > j:
            raise InputError(f"line {lineno}: terms must be written with i <= j")
        if not (0 <= i < doc.num_vars and 0 <= j < doc.num_vars):
            raise InputError(f"line {lineno}: variable index outside [0, {doc.num_vars})")
        if (i, j) in doc.terms:
            raise InputError(f"line {lineno}: duplicate term ({i}, {j})")
        doc.terms[(i, j)] = c
    if doc is None:
        raise InputError("missing QUBO header")
    if declared != len(doc.terms):
        raise InputError(f"header declares {declared} terms, found {len(doc.terms)}")
    return doc


def to_document(
    qp: QuadraticProgram, emb: Optional[Embedding] = None, hw: Optional[ChimeraGraph] = None
) -> QuboDocument:
    """Logical QUBO, or its hardware image when an embedding is supplied.

    On hardware a linear weight is split evenly across its chain, each
    logical coupler sits on its assigned hardware edge, and every chain edge
    carries the penalty ``c * (x + y - 2xy)`` with ``c = |chain_strength|``,
    the 0/1 form of a ferromagnetic coupling of strength ``-c``.
    """
    if emb is None:
        doc = QuboDocument(qp.num_vars, offset=float(qp.offset))
        for i, c in qp.linear.items():
            doc.add(i, i, float(c))
        for (i, j), c in qp.quadratic.items():
            doc.add(i, j, float(c))
        return doc
    if hw is None:
        raise InputError("hardware graph required to export an embedded program")
    doc = QuboDocument(hw.total_qubits, offset=float(qp.offset))
    for v, c in qp.linear.items():
        chain = emb.chains[v]
        for q in chain:
            doc.add(q, q, float(c) / len(chain))
    for (u, v), c in qp.quadratic.items():
        p, q = emb.couplings[(u, v)]
        doc.add(p, q, float(c))
    strength = abs(emb.chain_strength)
    for edges in emb.chain_edges.values():
        for p, q in edges:
            doc.add(p, p, strength)
            doc.add(q, q, strength)
            doc.add(p, q, -2 * strength)
    return doc


def export_qubo(
    qp: QuadraticProgram, emb: Optional[Embedding] = None, hw: Optional[ChimeraGraph] = None
) -> str:
    return format_qubo(to_document(qp, emb, hw))
