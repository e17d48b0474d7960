"""k-uniform hypergraphs, their adjacency tensors and structural predicates.

Vertices are labeled 1..n and edges stored as sorted k-tuples in a frozen
set, so instances are immutable, hashable on demand and safe to share.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    EmptyIndexSet,
    IndexOutOfRange,
    OddOrderForBipartite,
    RemovesAllVertices,
    UnknownEdge,
)
from .tensor import SymmetricTensor

Edge = tuple[int, ...]


@dataclass(frozen=True)
class Hypergraph:
    """k-uniform hypergraph on vertex set [1, n]."""

    k: int
    n: int
    edges: frozenset[Edge]

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    def degree(self, u: int) -> int:
        if not 1 <= u <= self.n:
            raise IndexOutOfRange(f"vertex {u} outside [1, {self.n}]")
        return sum(1 for e in self.edges if u in e)

    def degrees(self) -> np.ndarray:
        d = np.zeros(self.n, dtype=int)
        for e in self.edges:
            for v in e:
                d[v - 1] += 1
        return d

    def adjacent(self, u: int, v: int) -> bool:
        """True when some edge contains both u and v."""
        return any(u in e and v in e for e in self.edges)

    def is_linear(self) -> bool:
        """Every two distinct edges share at most one vertex."""
        edges = self.sorted_edges
        for a in range(len(edges)):
            sa = set(edges[a])
            for b in range(a + 1, len(edges)):
                if len(sa.intersection(edges[b])) > 1:
                    return False
        return True

    def is_connected(self) -> bool:
        parent = list(range(self.n + 1))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for e in self.edges:
            r = find(e[0])
            for v in e[1:]:
                rv = find(v)
                if rv != r:
                    parent[max(r, rv)] = min(r, rv)
                    r = min(r, rv)
        return len({find(i) for i in range(1, self.n + 1)}) <= 1

    def is_regular(self) -> bool:
        d = self.degrees()
        return bool(np.all(d == d[0])) if self.n else True

    def is_odd_bipartite(self) -> bool:
        """Feasibility of a bipartition with odd edge intersections.

        Solved exactly over GF(2): one unknown per vertex (membership in the
        first part), one parity equation per edge.  Uniformity must be even,
        so an odd intersection with one part forces an odd intersection with
        the other.
        """
        if self.k % 2 != 0:
            raise OddOrderForBipartite(
                f"odd-bipartiteness needs even uniformity, got k={self.k}"
            )
        # row = bitmask of vertex columns plus an augmented parity bit
        rows = []
        for e in self.sorted_edges:
            mask = 0
            for v in e:
                mask |= 1 << (v - 1)
            rows.append(mask | (1 << self.n))
        pivot_of_col: dict[int, int] = {}
        for row in rows:
            for col in range(self.n):
                if not row & (1 << col):
                    continue
                if col in pivot_of_col:
                    row ^= pivot_of_col[col]
                else:
                    pivot_of_col[col] = row
                    break
            else:
                if row & (1 << self.n):
                    return False  # reduced to 0 = 1
        return True

    def is_steiner_2(self) -> bool:
        """Every 2-subset of vertices lies in exactly one edge."""
        seen: set[tuple[int, int]] = set()
        for e in self.edges:
            for a in range(self.k):
                for b in range(a + 1, self.k):
                    pair = (e[a], e[b])
                    if pair in seen:
                        return False
                    seen.add(pair)
        return len(seen) == self.n * (self.n - 1) // 2


def build_hypergraph(k: int, n: int, edges: Iterable[Sequence[int]]) -> Hypergraph:
    """Validate edges (k distinct vertices in [1, n]) and deduplicate."""
    if k < 2:
        raise ValueError(f"uniformity must be >= 2, got {k}")
    if n < 1:
        raise ValueError(f"vertex count must be >= 1, got {n}")
    out: set[Edge] = set()
    for e in edges:
        e = tuple(sorted(int(v) for v in e))
        if len(e) != k or len(set(e)) != k:
            raise IndexOutOfRange(f"edge {e} must have exactly {k} distinct vertices")
        for v in e:
            if not 1 <= v <= n:
                raise IndexOutOfRange(f"vertex {v} outside [1, {n}] in edge {e}")
        out.add(e)
    return Hypergraph(k, n, frozenset(out))


def adjacency_tensor(G: Hypergraph) -> SymmetricTensor:
    """Adjacency tensor: value 1/(k-1)! on each edge's index orbit."""
    weight = 1.0 / math.factorial(G.k - 1)
    return SymmetricTensor(G.k, G.n, {e: weight for e in G.edges})


def remove_vertices(G: Hypergraph, I: Iterable[int]) -> tuple[Hypergraph, dict[int, int]]:
    """G - I: drop the vertices in I, every edge meeting I, and relabel.

    Returns the new hypergraph and the old->new map for the kept vertices.
    """
    removed = set(int(v) for v in I)
    if not removed:
        raise EmptyIndexSet("removal set must be nonempty")
    for v in removed:
        if not 1 <= v <= G.n:
            raise IndexOutOfRange(f"vertex {v} outside [1, {G.n}]")
    kept = [v for v in range(1, G.n + 1) if v not in removed]
    if not kept:
        raise RemovesAllVertices("cannot remove every vertex")
    relabel = {old: new for new, old in enumerate(kept, start=1)}
    edges = [
        tuple(relabel[v] for v in e)
        for e in G.edges
        if removed.isdisjoint(e)
    ]
    return Hypergraph(G.k, len(kept), frozenset(edges)), relabel


def remove_edges(G: Hypergraph, F: Iterable[Sequence[int]]) -> Hypergraph:
    """G - F: drop the listed edges, keeping every vertex."""
    drop: set[Edge] = set()
    for e in F:
        e = tuple(sorted(int(v) for v in e))
        if e not in G.edges:
            raise UnknownEdge(f"{e} is not an edge of the hypergraph")
        drop.add(e)
    return Hypergraph(G.k, G.n, G.edges - drop)


def edge_weighted_sums(G: Hypergraph, I: Iterable[int], x) -> dict[int, float]:
    """Sums s_j = sum over edges with |e ∩ I| = j of the product of x over e.

    Returned for j = 2..k; these drive the vertex-removal bounds.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (G.n,):
        raise DimensionMismatch(f"expected a vector of length {G.n}, got {x.shape}")
    members = set(int(v) for v in I)
    for v in members:
        if not 1 <= v <= G.n:
            raise IndexOutOfRange(f"vertex {v} outside [1, {G.n}]")
    sums = {j: 0.0 for j in range(2, G.k + 1)}
    for e in G.edges:
        j = sum(1 for v in e if v in members)
        if j >= 2:
            sums[j] += float(np.prod([x[v - 1] for v in e]))
    return sums


def edge_products(G: Hypergraph, F: Iterable[Sequence[int]], x) -> float:
    """Sum over the listed edges of the product of x over the edge."""
    x = np.asarray(x, dtype=float)
    if x.shape != (G.n,):
        raise DimensionMismatch(f"expected a vector of length {G.n}, got {x.shape}")
    total = 0.0
    for e in F:
        e = tuple(sorted(int(v) for v in e))
        if e not in G.edges:
            raise UnknownEdge(f"{e} is not an edge of the hypergraph")
        total += float(np.prod([x[v - 1] for v in e]))
    return total
