"""Perturbation bounds for extreme H-eigenvalues, reported with diagnostics.

Each operation evaluates one theorem-level bound from a problem instance
plus the relevant eigenpair(s) and returns a BoundReport.  Regime or
validity failures (wrong sign pattern, zero mass, non-linear hypergraph,
oversized residual, ...) yield valid=False with a machine-readable reason
instead of raising, so sweeps over many index sets never abort; structural
misuse (unknown edges, out-of-range vertices) still raises.

Index-set conventions follow the underlying inequalities: tensor-level
operations take I as the KEPT index set (the principal subtensor lives on
I), hypergraph removal operations take I as the REMOVED vertex set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import brentq

from .eigensolve import EigenPair, SolverConfig, even_stationary_pairs, hyper_rho, residual_of
from .hypergraph import (
    Hypergraph,
    adjacency_tensor,
    edge_products,
    edge_weighted_sums,
    remove_vertices,
)
from .tensor import (
    SymmetricTensor,
    _check_index_set,
    complement,
    removal_correction,
)

# a caller-provided eigenpair is trusted only up to this relative residual
RESIDUAL_GATE = 1e-6
SLACK_TOL = 1e-8
MASS_EPS = 1e-12


@dataclass
class BoundReport:
    """Outcome of one bound evaluation.

    lower/upper are the tightest valid bounds produced; actual is the
    bounded quantity when the caller supplied or the operation computed
    it; equality_hint collects the theorem's equality-case diagnostics;
    details carries secondary numbers (e.g. both variants of a two-form
    bound) keyed by short names.
    """

    name: str
    lower: float | None = None
    upper: float | None = None
    actual: float | None = None
    slack_lower: float | None = None
    slack_upper: float | None = None
    valid: bool = True
    reason: str = ""
    equality_hint: dict | None = None
    details: dict = field(default_factory=dict)

    def finish(self) -> "BoundReport":
        if self.actual is not None:
            if self.lower is not None:
                self.slack_lower = self.actual - self.lower
            if self.upper is not None:
                self.slack_upper = self.upper - self.actual
        return self

    def to_record(self) -> dict:
        return {
            "name": self.name,
            "lower": self.lower,
            "upper": self.upper,
            "actual": self.actual,
            "slack_lower": self.slack_lower,
            "slack_upper": self.slack_upper,
            "valid": self.valid,
            "reason": self.reason,
            "equality_hint": self.equality_hint,
            "details": self.details,
        }


def _invalid(name: str, reason: str) -> BoundReport:
    return BoundReport(name=name, valid=False, reason=reason)


def _pair_gate(name: str, T: SymmetricTensor, pair: EigenPair) -> BoundReport | None:
    scale = max(1.0, abs(pair.value))
    if residual_of(T, pair.value, pair.vector) > RESIDUAL_GATE * scale:
        return _invalid(name, "NotAnEigenpair")
    return None


def _mass(x: np.ndarray, members: Iterable[int], k: int) -> float:
    # plain k-th powers: identical to |x|^k in every regime the theorems
    # cover (even order, or nonnegative vectors)
    return float(sum(x[i - 1] ** k for i in members))


def subtensor_lmax_bounds(
    T: SymmetricTensor,
    I: Iterable[int],
    pair: EigenPair,
    actual: float | None = None,
) -> BoundReport:
    """Interlacing bounds on lambda_max of the principal subtensor T[I].

    lower: lambda_max(T)(1 - k * outside mass) minus the alternating
    mixed-sum correction; upper: lambda_max(T).  I is the kept index set.
    Outside the supported regime (odd order with mixed signs, or a nonzero
    diagonal) the formula is still evaluated but the report is flagged
    invalid, since the inequality is then not guaranteed.
    """
    name = "subtensor-lmax"
    members = _check_index_set(I, T.dim, proper=True)
    gate = _pair_gate(name, T, pair)
    if gate:
        return gate
    valid, reason = True, ""
    if not T.is_zero_diagonal():
        valid, reason = False, "NotZeroDiagonal"
    elif T.order % 2 != 0 and not (T.is_nonnegative() and np.all(pair.vector > -1e-9)):
        valid, reason = False, "RegimeUnsupported"
    x = pair.vector
    outside = complement(members, T.dim)
    lam = pair.value
    out_mass = _mass(x, outside, T.order)
    lower = lam * (1.0 - T.order * out_mass) - removal_correction(T, x, outside)
    hint = {"support_in_kept": out_mass <= MASS_EPS}
    return BoundReport(
        name=name,
        lower=lower,
        upper=lam,
        actual=actual,
        valid=valid,
        reason=reason,
        equality_hint=hint,
        details={"outside_mass": out_mass},
    ).finish()


def subtensor_rho_ratio_bound(
    T: SymmetricTensor,
    I: Iterable[int],
    pair: EigenPair,
    actual: float | None = None,
) -> BoundReport:
    """Ratio form of the interlacing lower bound for nonnegative tensors.

    Divides the plain lower bound's numerator by the eigenvector mass on
    the kept set; the upper bound rho(T) is strict for weakly irreducible
    tensors.
    """
    name = "subtensor-rho-ratio"
    members = _check_index_set(I, T.dim, proper=True)
    if not T.is_nonnegative():
        return _invalid(name, "RegimeUnsupported")
    if not T.is_zero_diagonal():
        return _invalid(name, "NotZeroDiagonal")
    gate = _pair_gate(name, T, pair)
    if gate:
        return gate
    x = pair.vector
    mass = _mass(x, members, T.order)
    if mass <= MASS_EPS:
        return _invalid(name, "ZeroMassOnI")
    outside = complement(members, T.dim)
    lam = pair.value
    numerator = lam * (1.0 - T.order * _mass(x, outside, T.order)) - removal_correction(
        T, x, outside
    )
    return BoundReport(
        name=name,
        lower=numerator / mass,
        upper=lam,
        actual=actual,
        details={
            "kept_mass": mass,
            "upper_strict": T.is_weakly_irreducible(),
        },
    ).finish()


def vertex_set_removal_bounds(
    G: Hypergraph,
    I: Iterable[int],
    pair: EigenPair,
    actual: float | None = None,
) -> BoundReport:
    """Lower bounds on rho(G - I) from the Perron pair of G; I is REMOVED.

    The plain form uses the removed mass and the edge sums s_j weighted by
    j - 1; the ratio form divides by the kept mass when it is nonzero.
    """
    name = "vertex-set-removal"
    members = _check_index_set(I, G.n, proper=True)
    A = adjacency_tensor(G)
    gate = _pair_gate(name, A, pair)
    if gate:
        return gate
    x = pair.vector
    if np.any(x < -1e-9):
        return _invalid(name, "RegimeUnsupported")
    rho = pair.value
    mass = _mass(x, members, G.k)
    sums = edge_weighted_sums(G, members, x)
    weighted = sum((j - 1) * s for j, s in sums.items())
    base = rho * (1.0 - G.k * mass) + G.k * weighted
    details = {"lower_plain": base, "removed_mass": mass}
    lower = base
    if 1.0 - mass > MASS_EPS:
        ratio = base / (1.0 - mass)
        details["lower_ratio"] = ratio
        lower = max(base, ratio)
    else:
        details["lower_ratio_reason"] = "FullMassOnI"
    return BoundReport(
        name=name,
        lower=lower,
        upper=rho,
        actual=actual,
        details=details,
    ).finish()


def vertex_removal_bounds(
    G: Hypergraph,
    v: int,
    pair: EigenPair,
    actual: float | None = None,
    tol: float = 1e-8,
) -> BoundReport:
    """Single-vertex removal bounds on rho(G - v).

    Specializes the set form to I = {v}; the equality hint tests whether
    the restriction of the Perron vector to the remaining vertices already
    satisfies the eigen-equation of G - v.
    """
    name = "vertex-removal"
    report = vertex_set_removal_bounds(G, [v], pair, actual)
    report.name = name
    if not report.valid:
        return report
    x = pair.vector
    xk = abs(x[v - 1]) ** G.k
    report.details["vertex_mass"] = xk
    if 1.0 - xk <= MASS_EPS:
        return report
    H, relabel = remove_vertices(G, [v])
    y = np.array([x[old - 1] for old in sorted(relabel)])
    hint = {"restriction_is_eigenvector": False}
    ynorm = float(np.sum(np.abs(y) ** G.k))
    if ynorm > MASS_EPS:
        y_unit = y / ynorm ** (1.0 / G.k)
        AH = adjacency_tensor(H)
        lam_y = AH.form(y_unit)
        hint["restriction_is_eigenvector"] = bool(
            residual_of(AH, lam_y, y_unit) <= tol * max(1.0, abs(lam_y))
        )
        hint["restriction_value"] = lam_y
    report.equality_hint = hint
    return report.finish()


def perron_entry_bounds(
    G: Hypergraph, I: Iterable[int], pair: EigenPair
) -> BoundReport:
    """Mass bound on the Perron vector over a vertex set.

    Checks sum_{i in I} x_i^k <= 1/k + (1/rho) * sum_j (j-1) s_j, and for a
    singleton additionally x_v <= (1/k)^(1/k).
    """
    name = "perron-entry"
    members = _check_index_set(I, G.n)
    if not G.is_connected():
        return _invalid(name, "NotConnected")
    A = adjacency_tensor(G)
    gate = _pair_gate(name, A, pair)
    if gate:
        return gate
    rho = pair.value
    if rho <= 0:
        return _invalid(name, "ZeroSpectralRadius")
    x = pair.vector
    mass = _mass(x, members, G.k)
    sums = edge_weighted_sums(G, members, x)
    weighted = sum((j - 1) * s for j, s in sums.items())
    upper = 1.0 / G.k + weighted / rho
    details = {"margin": upper - mass}
    hint = {"tight": upper - mass <= 1e-6}
    if len(members) == 1:
        entry_cap = (1.0 / G.k) ** (1.0 / G.k)
        details["entry"] = float(abs(x[members[0] - 1]))
        details["entry_cap"] = entry_cap
        hint["entry_at_cap"] = abs(details["entry"] - entry_cap) <= 1e-6
    return BoundReport(
        name=name,
        upper=upper,
        actual=mass,
        equality_hint=hint,
        details=details,
    ).finish()


def linear_vertex_removal_bound(
    G: Hypergraph, v: int, rho: float, actual: float | None = None
) -> BoundReport:
    """Degree-based lower bound on rho(G - v) for connected linear hypergraphs.

    lower = rho - (d(v)/rho)^(1/(k-1)); equality requires v adjacent to
    every other vertex and G - v regular, which the hint reports.
    """
    name = "linear-vertex-removal"
    _check_index_set([v], G.n)
    if not G.is_connected():
        return _invalid(name, "NotConnected")
    if not G.is_linear():
        return _invalid(name, "NotLinear")
    if rho <= 0:
        return _invalid(name, "ZeroSpectralRadius")
    d = G.degree(v)
    lower = rho - (d / rho) ** (1.0 / (G.k - 1))
    universal = all(G.adjacent(v, w) for w in range(1, G.n + 1) if w != v)
    H, _ = remove_vertices(G, [v])
    hint = {"vertex_universal": universal, "remainder_regular": H.is_regular()}
    return BoundReport(
        name=name,
        lower=lower,
        upper=rho,
        actual=actual,
        equality_hint=hint,
        details={"degree": d},
    ).finish()


def gamma_bounds(G: Hypergraph, cfg: SolverConfig | None = None) -> BoundReport:
    """The best single-vertex-removal spectral radius and its lower bounds.

    Solves rho(G - v) for every vertex (gamma is the maximum, ties broken
    by the smallest vertex index) and reports gamma >= rho - (delta/rho)^
    (1/(k-1)) >= rho - 1, whose equality cases characterize Steiner
    systems S(2, k, n).
    """
    name = "gamma"
    cfg = cfg or SolverConfig()
    if not G.is_connected():
        return _invalid(name, "NotConnected")
    if not G.is_linear():
        return _invalid(name, "NotLinear")
    rho = hyper_rho(G, cfg).value
    if rho <= 0:
        return _invalid(name, "ZeroSpectralRadius")
    gamma = -math.inf
    argmax = 0
    per_vertex = {}
    for v in range(1, G.n + 1):
        H, _ = remove_vertices(G, [v])
        value = hyper_rho(H, cfg).value
        per_vertex[v] = value
        if value > gamma + 1e-12:
            gamma = value
            argmax = v
    delta = int(np.min(G.degrees()))
    lower_degree = rho - (delta / rho) ** (1.0 / (G.k - 1))
    lower_unit = rho - 1.0
    steiner = G.is_steiner_2()
    hint = {
        "attains_degree_bound": abs(gamma - lower_degree) <= 1e-6,
        "attains_unit_bound": abs(gamma - lower_unit) <= 1e-6,
        "is_steiner_2": steiner,
    }
    return BoundReport(
        name=name,
        lower=max(lower_degree, lower_unit),
        upper=rho,
        actual=gamma,
        equality_hint=hint,
        details={
            "rho": rho,
            "gamma_vertex": argmax,
            "min_degree": delta,
            "lower_degree": lower_degree,
            "lower_unit": lower_unit,
            "per_vertex": per_vertex,
        },
    ).finish()


def edge_removal_rho_bounds(
    G: Hypergraph,
    F: Iterable[Sequence[int]],
    pair_G: EigenPair,
    pair_GF: EigenPair,
) -> BoundReport:
    """Sandwich for rho(G - F) from the Perron pairs of G and G - F."""
    name = "edge-removal"
    F = [tuple(sorted(int(v) for v in e)) for e in F]
    A = adjacency_tensor(G)
    gate = _pair_gate(name, A, pair_G)
    if gate:
        return gate
    rho = pair_G.value
    lower = rho - G.k * edge_products(G, F, pair_G.vector)
    upper = rho - G.k * edge_products(G, F, pair_GF.vector)
    return BoundReport(
        name=name,
        lower=lower,
        upper=upper,
        actual=pair_GF.value,
    ).finish()


def lmin_subtensor_bounds(
    T: SymmetricTensor,
    I: Iterable[int],
    pair: EigenPair,
    actual: float | None = None,
) -> BoundReport:
    """Interlacing bounds on lambda_min of T[I] for even order; I is KEPT.

    upper_plain mirrors the lambda_max bound with the least eigenpair;
    upper_ratio divides its numerator by the kept mass when nonzero; the
    reported upper is the tighter of the two.
    """
    name = "lmin-subtensor"
    members = _check_index_set(I, T.dim, proper=True)
    if T.order % 2 != 0:
        return _invalid(name, "OddOrder")
    if not T.is_zero_diagonal():
        return _invalid(name, "NotZeroDiagonal")
    gate = _pair_gate(name, T, pair)
    if gate:
        return gate
    x = pair.vector
    lam = pair.value
    outside = complement(members, T.dim)
    out_mass = _mass(x, outside, T.order)
    upper_plain = lam * (1.0 - T.order * out_mass) - removal_correction(T, x, outside)
    details = {"upper_plain": upper_plain, "outside_mass": out_mass}
    upper = upper_plain
    kept_mass = _mass(x, members, T.order)
    if kept_mass > MASS_EPS:
        ratio = upper_plain / kept_mass
        details["upper_ratio"] = ratio
        upper = min(upper_plain, ratio)
    else:
        details["upper_ratio_reason"] = "ZeroMassOnI"
    return BoundReport(
        name=name,
        lower=lam,
        upper=upper,
        actual=actual,
        equality_hint={"support_in_kept": out_mass <= MASS_EPS},
        details=details,
    ).finish()


def lmin_vertex_removal_bounds(
    G: Hypergraph,
    I: Iterable[int],
    pair: EigenPair,
    actual: float | None = None,
) -> BoundReport:
    """Bounds on lambda(G - I) from a least eigenpair of G; I is REMOVED.

    upper_plain uses the removed mass and edge sums; upper_ratio divides
    by the kept mass (the mass left on the surviving vertices) when that
    is nonzero.
    """
    name = "lmin-vertex-removal"
    members = _check_index_set(I, G.n, proper=True)
    if G.k % 2 != 0:
        return _invalid(name, "OddOrder")
    A = adjacency_tensor(G)
    gate = _pair_gate(name, A, pair)
    if gate:
        return gate
    x = pair.vector
    lam = pair.value
    mass = _mass(x, members, G.k)
    sums = edge_weighted_sums(G, members, x)
    weighted = sum((j - 1) * s for j, s in sums.items())
    upper_plain = lam * (1.0 - G.k * mass) + G.k * weighted
    details = {"upper_plain": upper_plain, "removed_mass": mass}
    upper = upper_plain
    kept_mass = 1.0 - mass
    if kept_mass > MASS_EPS:
        ratio = upper_plain / kept_mass
        details["upper_ratio"] = ratio
        upper = min(upper_plain, ratio)
    else:
        details["upper_ratio_reason"] = "FullMassOnI"
    return BoundReport(
        name=name,
        lower=lam,
        upper=upper,
        actual=actual,
        details=details,
    ).finish()


def lmin_edge_removal_bounds(
    G: Hypergraph,
    F: Iterable[Sequence[int]],
    pair_G: EigenPair,
    pair_GF: EigenPair,
) -> BoundReport:
    """Sandwich for lambda(G - F) from the least pairs of G and G - F."""
    name = "lmin-edge-removal"
    if G.k % 2 != 0:
        return _invalid(name, "OddOrder")
    F = [tuple(sorted(int(v) for v in e)) for e in F]
    A = adjacency_tensor(G)
    gate = _pair_gate(name, A, pair_G)
    if gate:
        return gate
    lam = pair_G.value
    lower = lam - G.k * edge_products(G, F, pair_GF.vector)
    upper = lam - G.k * edge_products(G, F, pair_G.vector)
    return BoundReport(
        name=name,
        lower=lower,
        upper=upper,
        actual=pair_GF.value,
    ).finish()


def least_vector_entry_bound(
    G: Hypergraph, i: int, pair: EigenPair, tol: float = 1e-6
) -> BoundReport:
    """Degree bound on the i-th entry of a least eigenvector (linear, even k).

    x_i^k <= d_i / (d_i + (k-1) * Lambda) with Lambda = (lambda^k)^(1/(k-1)),
    the only reading that keeps the denominator positive for negative
    lambda.  The hint checks the stated neighbor-value and sign structure.
    """
    name = "least-entry"
    _check_index_set([i], G.n)
    if G.k % 2 != 0:
        return _invalid(name, "OddOrder")
    if not G.is_linear():
        return _invalid(name, "NotLinear")
    if not G.edges:
        return _invalid(name, "NoEdges")
    A = adjacency_tensor(G)
    gate = _pair_gate(name, A, pair)
    if gate:
        return gate
    lam = pair.value
    k = G.k
    big_lambda = (lam**k) ** (1.0 / (k - 1))
    d = G.degree(i)
    upper = d / (d + (k - 1) * big_lambda) if (d + (k - 1) * big_lambda) else 0.0
    x = pair.vector
    actual = float(abs(x[i - 1]) ** k)
    neighbor_ok = True
    if d > 0:
        target = big_lambda * actual / (d * d)
        for w in range(1, G.n + 1):
            if w == i:
                continue
            xw = abs(x[w - 1]) ** k
            if G.adjacent(i, w):
                neighbor_ok &= abs(xw - target) <= tol
            else:
                neighbor_ok &= xw <= tol
    signs = {
        float(np.sign(np.prod([x[w - 1] for w in e if w != i])))
        for e in G.edges
        if i in e
    }
    hint = {
        "neighbor_structure": bool(neighbor_ok),
        "same_sign_products": len(signs) <= 1,
        "tight": abs(actual - upper) <= tol,
    }
    return BoundReport(
        name=name,
        upper=upper,
        actual=actual,
        equality_hint=hint,
        details={"degree": d, "vertex": i},
    ).finish()


def cmax_bounds(G: Hypergraph, cfg: SolverConfig | None = None) -> BoundReport:
    """Bounds on the largest least-eigenvector component c_max.

    upper (linear hypergraphs): ((n-1)/(n-1+(k-1)^2))^(1/k); lower
    (connected odd-bipartite): (-lambda/(k m))^(1/k), attained exactly for
    regular instances.  c_max itself is approximated by the largest entry
    magnitude over the least pairs found across solver restarts, so the
    reported actual is a heuristic.
    """
    name = "cmax"
    cfg = cfg or SolverConfig()
    if G.k % 2 != 0:
        return _invalid(name, "OddOrder")
    if not G.edges:
        return _invalid(name, "NoEdges")
    A = adjacency_tensor(G)
    pairs = even_stationary_pairs(A, "min", cfg)
    lam = pairs[0].value
    least = [p for p in pairs if abs(p.value - lam) <= 1e-8]
    cmax = max(float(np.max(np.abs(p.vector))) for p in least)
    details: dict = {"lambda_min": lam, "stationary_pairs": len(pairs)}
    hint: dict = {"cmax_is_heuristic": True}
    upper = lower = None
    reasons = []
    if G.is_linear():
        upper = ((G.n - 1) / (G.n - 1 + (G.k - 1) ** 2)) ** (1.0 / G.k)
        hint["upper_tight"] = abs(cmax - upper) <= 1e-6
    else:
        reasons.append("NotLinear")
    if G.is_connected():
        try:
            odd_bip = G.is_odd_bipartite()
        except Exception:
            odd_bip = False
        if odd_bip:
            lower = (-lam / (G.k * G.m)) ** (1.0 / G.k)
            hint["lower_tight_iff_regular"] = G.is_regular()
            hint["lower_tight"] = abs(cmax - lower) <= 1e-6
        else:
            reasons.append("NotOddBipartite")
    else:
        reasons.append("NotConnected")
    if upper is None and lower is None:
        return _invalid(name, "; ".join(reasons))
    return BoundReport(
        name=name,
        lower=lower,
        upper=upper,
        actual=cmax,
        reason="; ".join(reasons),
        equality_hint=hint,
        details=details,
    ).finish()


def equality_witness_rho(d: float, r: float, k: int) -> float:
    """Largest root t > r of t (t - r)^(k-1) = d.

    Predicts the spectral radius in the equality configuration of the
    degree-based removal bound (a universal vertex of degree d over an
    r-regular remainder).
    """
    if d <= 0:
        raise ValueError(f"degree must be positive, got {d}")
    if r < 0:
        raise ValueError(f"remainder degree must be nonnegative, got {r}")

    def g(t: float) -> float:
        return t * (t - r) ** (k - 1) - d

    lo = r + 1e-12
    hi = r + max(1.0, d) + 1.0
    while g(hi) < 0:
        hi *= 2.0
    return float(brentq(g, lo, hi, xtol=1e-14, rtol=8.9e-16))
