"""Greedy minor embedding of a logical coupling graph into Chimera hardware.

Variables are placed in order of decreasing logical degree. A variable
with already-placed neighbours grows a chain from the free qubit that
minimises the summed breadth-first distance to those neighbours' chains,
then adds the shortest free paths back to each of them. Seeded restarts
shuffle ties. The method is incomplete: failing to find an embedding is a
reported outcome, not an error.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from ..errors import InputError
from .chimera import ChimeraGraph

__all__ = [
    "Embedding",
    "EmbedResult",
    "logical_edges",
    "embed_minor",
    "embed_with_chains",
    "verify_embedding",
]

Edge = Tuple[int, int]


@dataclass
class Embedding:
    chains: Dict[int, List[int]]
    chain_strength: float
    couplings: Dict[Edge, Edge] = field(default_factory=dict)
    chain_edges: Dict[int, List[Edge]] = field(default_factory=dict)

    def used_qubits(self) -> Set[int]:
        return {q for c in self.chains.values() for q in c}

    def to_json(self, hw: ChimeraGraph) -> dict:
        used = self.used_qubits()
        return {
            "chains": {str(v): sorted(c) for v, c in sorted(self.chains.items())},
            "chain_strength": -abs(self.chain_strength),
            "unused_qubits": [q for q in hw.qubits if q not in used],
            "couplings": {f"{u}-{v}": list(e) for (u, v), e in sorted(self.couplings.items())},
        }


@dataclass
class EmbedResult:
    found: bool
    embedding: Optional[Embedding]
    reason: str = ""
    attempts: int = 0


def logical_edges(qp) -> Tuple[List[int], List[Edge]]:
    vars_ = sorted(set(qp.linear) | {v for e in qp.quadratic for v in e})
    return vars_, sorted(qp.quadratic)


def _connected(nodes: Sequence[int], hw: ChimeraGraph) -> bool:
    if not nodes:
        return False
    pool = set(nodes)
    seen = {nodes[0]}
    todo = [nodes[0]]
    while todo:
        q = todo.pop()
        for r in hw.adjacency[q]:
            if r in pool and r not in seen:
                seen.add(r)
                todo.append(r)
    return seen == pool


def _spanning_edges(chain: Sequence[int], hw: ChimeraGraph) -> List[Edge]:
    pool = set(chain)
    root = min(chain)
    seen = {root}
    out = []
    todo = deque([root])
    while todo:
        q = todo.popleft()
        for r in sorted(hw.adjacency[q]):
            if r in pool and r not in seen:
                seen.add(r)
                out.append((min(q, r), max(q, r)))
                todo.append(r)
    return out


def verify_embedding(emb: Embedding, edges: Iterable[Edge], hw: ChimeraGraph) -> List[str]:
    """Every broken invariant as a message; an empty list means valid."""
    problems = []
    owner: Dict[int, int] = {}
    for v, chain in emb.chains.items():
        if not chain:
            problems.append(f"variable {v} has an empty chain")
            continue
        for q in chain:
            if q not in hw.adjacency:
                problems.append(f"variable {v} uses unavailable qubit {q}")
            elif q in owner:
                problems.append(f"qubit {q} shared by variables {owner[q]} and {v}")
            else:
                owner[q] = v
        if all(q in hw.adjacency for q in chain) and not _connected(list(chain), hw):
            problems.append(f"chain of variable {v} is not connected")
    for u, v in edges:
        if u not in emb.chains or v not in emb.chains:
            problems.append(f"logical edge ({u}, {v}) has an unembedded endpoint")
            continue
        hw_edge = emb.couplings.get((min(u, v), max(u, v)))
        if hw_edge is None:
            problems.append(f"logical edge ({u}, {v}) has no hardware coupler")
        elif not hw.has_edge(*hw_edge) or {owner.get(hw_edge[0]), owner.get(hw_edge[1])} != {u, v}:
            problems.append(f"coupler {hw_edge} does not join the chains of {u} and {v}")
    return problems


def _assign_couplers(chains, edges, hw) -> Dict[Edge, Edge]:
    out = {}
    for u, v in edges:
        cv = set(chains[v])
        found = None
        for p in sorted(chains[u]):
            for q in sorted(hw.adjacency[p]):
                if q in cv:
                    found = (min(p, q), max(p, q))
                    break
            if found:
                break
        if found:
            out[(min(u, v), max(u, v))] = found
    return out


def embed_with_chains(
    chains: Dict[int, Sequence[int]], edges: Iterable[Edge], hw: ChimeraGraph, chain_strength: float = 1.0
) -> Embedding:
    """Build and verify an embedding from user-supplied chains."""
    edges = [(min(u, v), max(u, v)) for u, v in edges]
    chains = {v: list(c) for v, c in chains.items()}
    emb = Embedding(
        chains,
        chain_strength,
        _assign_couplers(chains, edges, hw),
        {v: _spanning_edges(c, hw) if c else [] for v, c in chains.items()},
    )
    problems = verify_embedding(emb, edges, hw)
    if problems:
        raise InputError("invalid embedding: " + "; ".join(problems))
    return emb


def _bfs_from_chain(chain, free: Set[int], hw) -> Tuple[Dict[int, int], Dict[int, int]]:
    dist, parent = {}, {}
    todo = deque()
    for q in chain:
        for r in hw.adjacency[q]:
            if r in free and r not in dist:
                dist[r] = 1
                parent[r] = -1
                todo.append(r)
    while todo:
        q = todo.popleft()
        for r in hw.adjacency[q]:
            if r in free and r not in dist:
                dist[r] = dist[q] + 1
                parent[r] = q
                todo.append(r)
    return dist, parent


def _attempt(order, nbrs, hw, rng) -> Optional[Dict[int, List[int]]]:
    free = set(hw.qubits)
    chains: Dict[int, List[int]] = {}
    for v in order:
        placed = [u for u in nbrs[v] if u in chains]
        if not placed:
            cand = sorted(free, key=lambda q: (-sum(r in free for r in hw.adjacency[q]), q))
            if not cand:
                return None
            top = [q for q in cand if sum(r in free for r in hw.adjacency[q])
                   == sum(r in free for r in hw.adjacency[cand[0]])]
            root = int(rng.choice(top))
            chains[v] = [root]
            free.discard(root)
            continue
        searches = [_bfs_from_chain(chains[u], free, hw) for u in placed]
        common = set(free)
        for dist, _ in searches:
            common &= dist.keys()
        if not common:
            return None
        score = {q: sum(d[q] for d, _ in searches) for q in common}
        best = min(score.values())
        ties = sorted(q for q, s in score.items() if s == best)
        root = int(rng.choice(ties))
        chain = {root}
        for dist, parent in searches:
            q = root
            while parent[q] != -1:
                q = parent[q]
                chain.add(q)
        chains[v] = sorted(chain)
        free -= chain
    return chains


def embed_minor(
    qp=None,
    hw: ChimeraGraph = None,
    chain_strength: Optional[float] = None,
    seed: int = 0,
    restarts: int = 20,
    edges: Optional[Iterable[Edge]] = None,
    variables: Optional[Iterable[int]] = None,
) -> EmbedResult:
    """Embed a quadratic program (or an explicit logical edge list)."""
    if hw is None:
        raise InputError("a hardware graph is required")
    if qp is not None:
        vars_, edge_list = logical_edges(qp)
    else:
        edge_list = sorted({(min(u, v), max(u, v)) for u, v in (edges or [])})
        vars_ = sorted(set(variables or []) | {x for e in edge_list for x in e})
    if chain_strength is None:
        coeffs = [abs(c) for c in (list(qp.linear.values()) + list(qp.quadratic.values()))] if qp else []
        chain_strength = 1.0 + max(coeffs, default=1.0)
    if len(vars_) > hw.num_qubits:
        return EmbedResult(False, None, f"{len(vars_)} variables but only {hw.num_qubits} qubits")
    nbrs: Dict[int, Set[int]] = {v: set() for v in vars_}
    for u, v in edge_list:
        nbrs[u].add(v)
        nbrs[v].add(u)
    rng = np.random.default_rng(seed)
    for attempt in range(1, restarts + 1):
        keys = rng.random(len(vars_))
        order = [v for _, _, v in sorted(zip([-len(nbrs[v]) for v in vars_], keys, vars_))]
        chains = _attempt(order, nbrs, hw, rng)
        if chains is None:
            continue
        emb = Embedding(
            chains,
            chain_strength,
            _assign_couplers(chains, edge_list, hw),
            {v: _spanning_edges(c, hw) for v, c in chains.items()},
        )
        if not verify_embedding(emb, edge_list, hw):
            return EmbedResult(True, emb, "", attempt)
    return EmbedResult(False, None, f"no embedding found after {restarts} attempts", restarts)
