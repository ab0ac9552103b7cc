"""Comparability graphs and graph-side induced densities.

Connects posets to graphs at finite scale: the comparability functor, its
complement, exact induced-subgraph densities for small patterns, and the
enumeration of poset orientations behind the edge-directing identity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import FormatError, InvariantError, SizeLimit
from .poset import FinitePoset, _bits, transitive_closure

_PATTERN_MAX = 5


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph as symmetric adjacency bitmask rows."""

    n: int
    adj: tuple[int, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "SimpleGraph":
        adj = [0] * n
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise InvariantError(f"bad edge ({i},{j})")
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return cls(n, tuple(adj))

    def has_edge(self, i: int, j: int) -> bool:
        return bool((self.adj[i] >> j) & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [
            (i, j) for i in range(self.n) for j in _bits(self.adj[i]) if i < j
        ]

    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.adj) // 2


def complete_graph(n: int) -> SimpleGraph:
    full = (1 << n) - 1
    return SimpleGraph(n, tuple(full & ~(1 << i) for i in range(n)))


def empty_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, (0,) * n)


def cycle_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def comparability_graph(p: FinitePoset) -> SimpleGraph:
    return SimpleGraph(p.n, tuple(p.succ[i] | p.pred[i] for i in range(p.n)))


def complement_graph(g: SimpleGraph) -> SimpleGraph:
    full = (1 << g.n) - 1
    return SimpleGraph(
        g.n, tuple(full & ~(g.adj[i] | (1 << i)) for i in range(g.n))
    )


def incomparability_graph(p: FinitePoset) -> SimpleGraph:
    return complement_graph(comparability_graph(p))


def _falling(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out


def count_induced_embeddings(f: SimpleGraph, g: SimpleGraph) -> int:
    nf, ng = f.n, g.n
    if nf > ng:
        return 0
    full = (1 << ng) - 1
    order = sorted(range(nf), key=lambda v: -f.adj[v].bit_count())
    image = [0] * nf

    def rec(idx: int, used: int) -> int:
        if idx == nf:
            return 1
        v = order[idx]
        cand = full & ~used
        for k_idx in range(idx):
            u = order[k_idx]
            t = image[u]
            if f.has_edge(u, v):
                cand &= g.adj[t]
            else:
                cand &= ~g.adj[t]
            if not cand:
                return 0
        total = 0
        for j in _bits(cand):
            image[v] = j
            total += rec(idx + 1, used | (1 << j))
        return total

    return rec(0, 0)


def graph_t_ind(f: SimpleGraph, g: SimpleGraph) -> Fraction:
    """Induced-embedding density of pattern f in g, exact."""
    if f.n > _PATTERN_MAX:
        raise SizeLimit(f"pattern size capped at {_PATTERN_MAX}")
    if f.n > g.n:
        return Fraction(0)
    return Fraction(count_induced_embeddings(f, g), _falling(g.n, f.n))


def poset_orientations(f: SimpleGraph) -> list[FinitePoset]:
    """All labelled edge orientations of f that are strict partial orders.

    Orienting must not force a comparability outside f's edge set, so the
    oriented relation has to be transitively closed already.
    """
    out = []
    edges = f.edges()
    for choice in itertools.product((0, 1), repeat=len(edges)):
        masks = [0] * f.n
        for bit, (i, j) in zip(choice, edges):
            if bit:
                masks[i] |= 1 << j
            else:
                masks[j] |= 1 << i
        closed = transitive_closure(masks)
        if closed != masks:
            continue
        if any((closed[i] >> i) & 1 for i in range(f.n)):
            continue
        out.append(FinitePoset.from_succ_masks(masks, validate=False))
    return out


def enumerate_graphs(max_size: int) -> list[SimpleGraph]:
    """One representative per isomorphism class, sizes 1..max_size."""
    if max_size > 6:
        raise SizeLimit("graph enumeration capped at size 6")
    reps: list[SimpleGraph] = []
    for n in range(1, max_size + 1):
        seen: set[tuple[int, ...]] = set()
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        for bits in range(1 << len(pairs)):
            edges = [pairs[k] for k in range(len(pairs)) if (bits >> k) & 1]
            g = SimpleGraph.from_edges(n, edges)
            key = _graph_canonical_key(g)
            if key not in seen:
                seen.add(key)
                reps.append(g)
    return reps


def _graph_canonical_key(g: SimpleGraph) -> tuple[int, ...]:
    best = None
    for perm in itertools.permutations(range(g.n)):
        pos = [0] * g.n
        for new_idx, old_idx in enumerate(perm):
            pos[old_idx] = new_idx
        key = tuple(
            sum(1 << pos[j] for j in _bits(g.adj[old])) for old in perm
        )
        if best is None or key < best:
            best = key
    assert best is not None
    return best


# -- text format --------------------------------------------------------------


def write_graph(g: SimpleGraph) -> str:
    lines = [f"graph {g.n}"]
    for i, j in sorted(g.edges()):
        lines.append(f"{i + 1} {j + 1}")
    return "\n".join(lines) + "\n"


def read_graph(text: str) -> SimpleGraph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("graph"):
        raise FormatError("expected 'graph <n>' header")
    try:
        n = int(lines[0].split()[1])
    except (IndexError, ValueError) as exc:
        raise FormatError("bad graph header") from exc
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise FormatError(f"bad edge line: {ln!r}")
        edges.append((int(parts[0]) - 1, int(parts[1]) - 1))
    return SimpleGraph.from_edges(n, edges)
