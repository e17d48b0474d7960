"""Reference instances with independently known spectral data.

Small tensors and hypergraphs whose extreme H-eigenvalues, eigenvectors or
bound values are known in closed form or were verified against brute-force
enumeration.  The verification suite and the test corpus build everything
through these constructors.
"""

from __future__ import annotations

import math

import numpy as np

from .hypergraph import Hypergraph, build_hypergraph
from .tensor import SymmetricTensor, build_tensor


def even_mixed_tensor() -> SymmetricTensor:
    """Order-4, dimension-3 tensor with mixed signs; lambda_max = 2.4043."""
    return build_tensor(
        4,
        3,
        [
            ((1, 1, 2, 2), -1.0),
            ((1, 2, 2, 2), 0.5),
            ((2, 2, 2, 3), 1.0),
        ],
    )


def odd_overlap_tensor() -> SymmetricTensor:
    """Order-3, dimension-5 tensor with two support blocks; lambda_max = 0.6894."""
    return build_tensor(
        3,
        5,
        [
            ((1, 1, 2), 1 / 3),
            ((1, 2, 2), 1 / 12),
            ((1, 1, 3), 1 / 6),
            ((2, 2, 3), 1 / 12),
            ((2, 3, 3), 1 / 18),
            ((1, 2, 3), -1 / 12),
            ((4, 4, 5), 1 / 6),
        ],
    )


def odd_nonneg_tensor() -> SymmetricTensor:
    """Order-3, dimension-3 nonnegative tensor; rho = 0.8143."""
    return build_tensor(
        3,
        3,
        [
            ((1, 1, 2), 1 / 3),
            ((1, 2, 2), 1 / 12),
            ((1, 1, 3), 1 / 6),
            ((2, 2, 3), 1 / 12),
            ((2, 3, 3), 1 / 18),
        ],
    )


def equal_row_sum_tensor() -> SymmetricTensor:
    """Weakly irreducible nonnegative tensor with all row sums 1; rho = 1."""
    return build_tensor(
        3,
        3,
        [
            ((1, 1, 2), 1 / 3),
            ((2, 3, 3), 1 / 3),
            ((1, 1, 3), 1 / 6),
            ((2, 2, 3), 1 / 6),
        ],
    )


def even_nonneg_tensor() -> SymmetricTensor:
    """Order-4, dimension-3 nonnegative tensor; lambda_min = -9.9307."""
    return build_tensor(
        4,
        3,
        [
            ((1, 1, 2, 2), 1.0),
            ((1, 2, 2, 2), 3.0),
            ((2, 2, 2, 3), 3.0),
        ],
    )


def hypercycle3(n: int) -> Hypergraph:
    """3-uniform hypercycle on 2n vertices; rho = 2**(2/3)."""
    if n < 2:
        raise ValueError("hypercycle needs n >= 2")
    edges = []
    for i in range(1, n + 1):
        a, b, c = 2 * i - 1, 2 * i, 2 * i + 1
        edges.append((a, b, 1 if c > 2 * n else c))
    return build_hypergraph(3, 2 * n, edges)


def hypercycle3_rho() -> float:
    return 2.0 ** (2.0 / 3.0)


def hypercycle3_perron_vector(n: int) -> np.ndarray:
    """Unit Perron vector of the hypercycle: odd vertices carry the larger value."""
    x = np.empty(2 * n)
    x[0::2] = (2.0 / (3.0 * n)) ** (1.0 / 3.0)
    x[1::2] = (1.0 / (3.0 * n)) ** (1.0 / 3.0)
    return x


def hyperpath3(n: int) -> Hypergraph:
    """3-uniform hyperpath on 2n - 1 vertices (the hypercycle minus its last vertex)."""
    if n < 2:
        raise ValueError("hyperpath needs n >= 2")
    edges = [(2 * i - 1, 2 * i, 2 * i + 1) for i in range(1, n)]
    return build_hypergraph(3, 2 * n - 1, edges)


def hyperpath3_rho(n: int) -> float:
    return 2.0 ** (2.0 / 3.0) * math.cos(math.pi / (n + 1)) ** (2.0 / 3.0)


def single_edge(k: int) -> Hypergraph:
    """k-uniform hypergraph consisting of exactly one edge."""
    return build_hypergraph(k, k, [tuple(range(1, k + 1))])


def complete_graph(n: int) -> Hypergraph:
    """K_n as a 2-uniform hypergraph; rho = n - 1."""
    edges = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    return build_hypergraph(2, n, edges)


def fano_plane() -> Hypergraph:
    """The 7-point projective plane: every vertex pair on exactly one triple."""
    return build_hypergraph(
        3,
        7,
        [
            (1, 2, 3),
            (1, 4, 5),
            (1, 6, 7),
            (2, 4, 6),
            (2, 5, 7),
            (3, 4, 7),
            (3, 5, 6),
        ],
    )


def affine_plane_9() -> Hypergraph:
    """The nine-point affine plane: 12 lines of 3 points, every pair once."""
    def point(a: int, b: int) -> int:
        return 3 * a + b + 1

    lines = []
    for m in range(3):
        for c in range(3):
            lines.append(tuple(point(a, (m * a + c) % 3) for a in range(3)))
    for c in range(3):
        lines.append(tuple(point(c, b) for b in range(3)))
    return build_hypergraph(3, 9, lines)


def four_uniform_three_edges() -> Hypergraph:
    """4-uniform hypergraph on [6] with lambda_min = -2.1908."""
    return build_hypergraph(4, 6, [(1, 2, 3, 4), (3, 4, 5, 6), (1, 3, 4, 5)])


def four_uniform_four_edges() -> Hypergraph:
    """4-uniform hypergraph on [6] with lambda_min = -2.8786."""
    return build_hypergraph(
        4, 6, [(1, 2, 3, 4), (3, 4, 5, 6), (1, 3, 4, 5), (1, 2, 4, 5)]
    )


def odd_bipartite_ring() -> Hypergraph:
    """Connected, 2-regular, odd-bipartite 4-uniform ring on 8 vertices."""
    return build_hypergraph(
        4, 8, [(1, 2, 3, 4), (3, 4, 5, 6), (5, 6, 7, 8), (1, 2, 7, 8)]
    )
