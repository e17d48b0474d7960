"""Sparse symmetric tensors stored as canonical index orbits.

An order-k, dimension-n symmetric tensor keeps one value per orbit, where
an orbit is the set of index tuples equivalent under permutation.  The
canonical representative is the non-decreasing tuple with 1-based entries.
Evaluation routines expand an orbit by counting, in closed form, how many
of its permutations satisfy the constraint at hand (a fixed leading index,
a prefix outside a given index set, ...), so costs scale with the number
of stored orbits rather than with n**k.

Multi-indices and index sets are 1-based throughout the API, matching the
usual mathematical convention; vectors are plain numpy arrays where the
entry for index i sits at position i - 1.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    BadArity,
    ConflictingOrbitValues,
    DimensionMismatch,
    EmptyIndexSet,
    IndexOutOfRange,
    NonFiniteValue,
)

MultiIndex = tuple[int, ...]


def orbit_size(idx: Sequence[int]) -> int:
    """Number of distinct permutations of an index tuple."""
    size = math.factorial(len(idx))
    for c in Counter(idx).values():
        size //= math.factorial(c)
    return size


def _lead_count(order: int, counts: Mapping[int, int], i: int) -> int:
    """Permutations of the orbit that place index i in the first slot."""
    size = math.factorial(order - 1)
    for j, c in counts.items():
        size //= math.factorial(c - 1 if j == i else c)
    return size


def _pair_count(order: int, counts: Mapping[int, int], i: int, j: int) -> int:
    """Permutations of the orbit with i in the first slot and j in the second."""
    need_i = 1 + (1 if i == j else 0)
    if counts.get(i, 0) < need_i or counts.get(j, 0) < 1:
        return 0
    size = math.factorial(order - 2)
    for l, c in counts.items():
        c -= (1 if l == i else 0) + (1 if l == j else 0)
        size //= math.factorial(c)
    return size


@dataclass(frozen=True)
class SymmetricTensor:
    """Symmetric tensor of order k and dimension n, one stored value per orbit.

    Instances are immutable; build them through :func:`build_tensor`, which
    canonicalizes indices, rejects conflicting duplicates and drops zero
    values.  All operations are pure functions of the stored state.
    """

    order: int
    dim: int
    orbits: dict[MultiIndex, float]

    @cached_property
    def _plan(self):
        """Per-orbit evaluation data: (value, size, exponents, leading counts)."""
        rows = []
        for idx, v in self.orbits.items():
            counts = Counter(idx)
            exps = np.zeros(self.dim)
            for j, c in counts.items():
                exps[j - 1] = c
            leads = []
            for j in counts:
                e = exps.copy()
                e[j - 1] -= 1
                leads.append((j - 1, _lead_count(self.order, counts, j), e))
            rows.append((v, orbit_size(idx), exps, leads))
        return rows

    def _check_vector(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise DimensionMismatch(
                f"expected a vector of length {self.dim}, got shape {x.shape}"
            )
        return x

    def entry(self, idx: Sequence[int]) -> float:
        """Entry t_{i1...ik}; zero for orbits that are not stored."""
        key = canonical_index(idx, self.order, self.dim)
        return self.orbits.get(key, 0.0)

    def apply(self, x) -> np.ndarray:
        """The vector T x^{k-1}: entry i sums t_{i,i2..ik} x_{i2}...x_{ik}."""
        x = self._check_vector(x)
        out = np.zeros(self.dim)
        for v, _, _, leads in self._plan:
            for pos, count, exps in leads:
                out[pos] += v * count * np.prod(x**exps)
        return out

    def form(self, x) -> float:
        """The homogeneous polynomial T x^k."""
        x = self._check_vector(x)
        total = 0.0
        for v, size, exps, _ in self._plan:
            total += v * size * np.prod(x**exps)
        return float(total)

    def row_sums(self) -> np.ndarray:
        """Row sums R_i = sum of t_{i,i2..ik} over all completions."""
        return self.apply(np.ones(self.dim))

    def is_zero_diagonal(self) -> bool:
        return all(len(set(idx)) > 1 for idx in self.orbits)

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self.orbits.values())

    def is_weakly_irreducible(self) -> bool:
        """True when no proper index set isolates all nonzero entries.

        For symmetric storage the associated directed graph is symmetric, so
        strong connectivity reduces to connectivity of the undirected graph
        that joins all distinct indices appearing in a common orbit.
        """
        return len(support_components(self)) <= 1

    def scaled(self, c: float) -> "SymmetricTensor":
        """The tensor c*T (zero orbits dropped when c == 0)."""
        if c == 0:
            return SymmetricTensor(self.order, self.dim, {})
        return SymmetricTensor(
            self.order, self.dim, {idx: c * v for idx, v in self.orbits.items()}
        )

    def __neg__(self) -> "SymmetricTensor":
        return self.scaled(-1.0)


def canonical_index(idx: Sequence[int], order: int, dim: int) -> MultiIndex:
    """Validate a multi-index and return its sorted canonical form."""
    idx = tuple(int(i) for i in idx)
    if len(idx) != order:
        raise IndexOutOfRange(f"multi-index {idx} does not have {order} components")
    for i in idx:
        if not 1 <= i <= dim:
            raise IndexOutOfRange(f"index {i} outside [1, {dim}] in {idx}")
    return tuple(sorted(idx))


def build_tensor(
    order: int,
    dim: int,
    entries: Iterable[tuple[Sequence[int], float]],
) -> SymmetricTensor:
    """Build a symmetric tensor from (multi-index, value) pairs.

    Permutation-equivalent indices collapse to one orbit; a fully expanded
    symmetric list is accepted as long as it is self-consistent.  Distinct
    values for the same orbit raise ConflictingOrbitValues, and zero values
    are dropped after consistency checking.
    """
    if order < 2:
        raise ValueError(f"order must be >= 2, got {order}")
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    orbits: dict[MultiIndex, float] = {}
    for idx, value in entries:
        key = canonical_index(idx, order, dim)
        value = float(value)
        if not math.isfinite(value):
            raise NonFiniteValue(f"entry {idx} has non-finite value {value}")
        if key in orbits and orbits[key] != value:
            raise ConflictingOrbitValues(
                f"orbit {key} given both {orbits[key]} and {value}"
            )
        orbits[key] = value
    orbits = {idx: v for idx, v in orbits.items() if v != 0.0}
    return SymmetricTensor(order, dim, orbits)


def _check_index_set(I: Iterable[int], dim: int, proper: bool = False) -> tuple[int, ...]:
    members = tuple(sorted(set(int(i) for i in I)))
    if not members:
        raise EmptyIndexSet("index set must be nonempty")
    for i in members:
        if not 1 <= i <= dim:
            raise IndexOutOfRange(f"index {i} outside [1, {dim}]")
    if proper and len(members) == dim:
        raise EmptyIndexSet("index set must be a proper subset")
    return members


def principal_subtensor(
    T: SymmetricTensor, I: Iterable[int]
) -> tuple[SymmetricTensor, dict[int, int]]:
    """Restriction T[I] on kept indices I, relabeled to 1..|I|.

    Returns the subtensor together with the old->new relabeling map.
    """
    members = _check_index_set(I, T.dim)
    relabel = {old: new for new, old in enumerate(members, start=1)}
    kept = set(members)
    orbits = {
        tuple(relabel[i] for i in idx): v
        for idx, v in T.orbits.items()
        if kept.issuperset(idx)
    }
    return SymmetricTensor(T.order, len(members), orbits), relabel


def embed_restriction(T: SymmetricTensor, I: Iterable[int]) -> SymmetricTensor:
    """Same-dimension restriction T_I: orbits touching [1,n] \\ I are zeroed."""
    members = set(_check_index_set(I, T.dim))
    orbits = {idx: v for idx, v in T.orbits.items() if members.issuperset(idx)}
    return SymmetricTensor(T.order, T.dim, orbits)


def support_components(T: SymmetricTensor) -> list[list[int]]:
    """Connected components of the index-association graph.

    Two indices are associated when they appear in a common orbit.  Isolated
    indices (touched by no off-diagonal orbit) come back as singletons.
    """
    parent = list(range(T.dim + 1))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for idx in T.orbits:
        support = sorted(set(idx))
        for other in support[1:]:
            union(support[0], other)
    groups: dict[int, list[int]] = {}
    for i in range(1, T.dim + 1):
        groups.setdefault(find(i), []).append(i)
    return [sorted(g) for _, g in sorted(groups.items())]


def _prefix_weight(order: int, counts: Mapping[int, int], out_total: int, p: int) -> int:
    """Permutations of an orbit whose first p slots all hold out-of-set indices.

    Positions of the out-of-set indices in a uniformly random arrangement form
    a uniform o-subset of the k slots, which gives the exact count
    size * C(k-p, o-p) / C(k, o).
    """
    if out_total < p:
        return 0
    size = math.factorial(order)
    for c in counts.values():
        size //= math.factorial(c)
    weight = Fraction(
        size * math.comb(order - p, out_total - p), math.comb(order, out_total)
    )
    assert weight.denominator == 1
    return int(weight)


def outside_prefix_sum(
    T: SymmetricTensor, x, outside: Iterable[int], p: int
) -> float:
    """Sum of t * x-products over tuples whose first p indices lie in `outside`.

    The remaining k - p indices range freely; `outside` is a set of indices
    (typically the complement of a kept set I).
    """
    x = T._check_vector(x)
    out = set(outside)
    if p < 0 or p > T.order:
        raise BadArity(f"prefix length {p} outside [0, {T.order}]")
    total = 0.0
    for idx, v in T.orbits.items():
        counts = Counter(idx)
        o = sum(c for j, c in counts.items() if j in out)
        weight = _prefix_weight(T.order, counts, o, p)
        if weight == 0:
            continue
        prod = 1.0
        for j, c in counts.items():
            prod *= x[j - 1] ** c
        total += v * weight * prod
    return total


def inclusion_exclusion_lhs(
    T: SymmetricTensor, x, I: Iterable[int], s: int, m: int
) -> float:
    """Direct side of the prefix identity.

    Sums t * x-products over tuples with the first s indices outside I, the
    next m inside I and the remaining k - s - m free.
    """
    _validate_arity(T, s, m)
    members = set(_check_index_set(I, T.dim, proper=True))
    x = T._check_vector(x)
    k = T.order
    total = 0.0
    for idx, v in T.orbits.items():
        counts = Counter(idx)
        o = sum(c for j, c in counts.items() if j not in members)
        if o < s or (k - o) < m:
            continue
        # first s slots out of I and the next m inside it: the o out-of-I
        # positions must cover the s-prefix and avoid the m-window.
        weight = Fraction(
            orbit_size(idx) * math.comb(k - s - m, o - s), math.comb(k, o)
        )
        assert weight.denominator == 1
        prod = 1.0
        for j, c in counts.items():
            prod *= x[j - 1] ** c
        total += v * int(weight) * prod
    return total


def inclusion_exclusion_rhs(
    T: SymmetricTensor, x, I: Iterable[int], s: int, m: int
) -> float:
    """Alternating side of the prefix identity.

    Binomial-weighted combination of plain outside-prefix sums with prefix
    lengths s..s+m; agrees with :func:`inclusion_exclusion_lhs` for every
    symmetric tensor.
    """
    _validate_arity(T, s, m)
    members = _check_index_set(I, T.dim, proper=True)
    outside = [i for i in range(1, T.dim + 1) if i not in set(members)]
    total = 0.0
    for l in range(m + 1):
        total += (-1) ** l * math.comb(m, l) * outside_prefix_sum(T, x, outside, s + l)
    return total


def _validate_arity(T: SymmetricTensor, s: int, m: int) -> None:
    if s < 1 or m < 1:
        raise BadArity(f"prefix lengths must be positive, got s={s}, m={m}")
    if s + m > T.order:
        raise BadArity(f"s + m = {s + m} exceeds tensor order {T.order}")


def removal_correction(T: SymmetricTensor, x, outside: Iterable[int]) -> float:
    """Alternating mixed-sum correction used by the interlacing bounds.

    Computes sum_{j=1}^{k-1} (-1)^j C(k, j+1) S_{j+1} where S_p is the
    outside-prefix sum with p leading indices outside the kept set.
    """
    k = T.order
    out = tuple(outside)
    total = 0.0
    for j in range(1, k):
        total += (-1) ** j * math.comb(k, j + 1) * outside_prefix_sum(T, x, out, j + 1)
    return total


def complement(I: Iterable[int], dim: int) -> tuple[int, ...]:
    """Indices of [1, dim] not in I."""
    members = set(I)
    return tuple(i for i in range(1, dim + 1) if i not in members)
