"""Numeric fixture table for the reference instances.

Every row compares a computed quantity against its independently known
value (closed form, published 4-decimal figure, or a frozen value
recomputed from published data) at a stated tolerance.  Eigenvalue rows
use 1e-3 where the reference is printed to 4 decimals, bound rows 5e-3
because they chain rounded eigenvector entries, and closed-form rows
1e-8.  Boolean checks are encoded as 1.0/0.0 with tolerance 0.5.

One reference figure is knowingly corrected here: the published upper
bound for the four-edge least-eigenvalue edge-removal example (-1.4467)
is not reproducible from the published eigenvector and formula, which
give -2.1344; the table pins the recomputed value and the row name says
so.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from . import bounds, reference
from .eigensolve import (
    EigenPair,
    SolverConfig,
    extreme_h_eigen_even,
    hyper_lambda_min,
    hyper_rho,
    normalize_k,
    residual_of,
    sign_normalized,
    spectral_radius_nonneg,
)
from .hypergraph import adjacency_tensor, remove_edges, remove_vertices
from .oracle import enumerate_h_eigenpairs, verify_closed_forms
from .tensor import principal_subtensor

EIGEN_TOL = 1e-3
BOUND_TOL = 5e-3
EXACT_TOL = 1e-8
FLAG_TOL = 0.5


@dataclass(frozen=True)
class FixtureRow:
    criterion: int
    name: str
    expected: float
    computed: float
    tol: float

    @property
    def deviation(self) -> float:
        return abs(self.computed - self.expected)

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tol

    def to_record(self) -> dict:
        return {
            "criterion": self.criterion,
            "name": self.name,
            "expected": self.expected,
            "computed": self.computed,
            "tol": self.tol,
            "deviation": self.deviation,
            "passed": self.passed,
        }


def _exact_pair(T, value: float, x: np.ndarray, kind: str) -> EigenPair:
    x = normalize_k(np.asarray(x, dtype=float), T.order)
    return EigenPair(value, x, residual_of(T, value, x), kind=kind)


def collect_fixtures(
    cfg: SolverConfig | None = None,
    overrides: Mapping[str, float] | None = None,
) -> list[FixtureRow]:
    """Run every fixture and return its rows.

    `overrides` replaces expected values by row name (used as a negative
    control: a tampered expectation must fail).
    """
    cfg = cfg or SolverConfig()
    rows: list[FixtureRow] = []

    def row(criterion: int, name: str, expected: float, computed: float, tol: float):
        expected = float(expected)
        if overrides and name in overrides:
            expected = float(overrides[name])
        rows.append(FixtureRow(criterion, name, expected, float(computed), tol))

    def flag(criterion: int, name: str, ok: bool):
        row(criterion, name, 1.0, 1.0 if ok else 0.0, FLAG_TOL)

    # --- 1: even mixed-sign tensor, top eigenvalue interlacing -----------
    T1 = reference.even_mixed_tensor()
    p1 = extreme_h_eigen_even(T1, "max", cfg)
    row(1, "even-mixed lambda_max", 2.4043, p1.value, EIGEN_TOL)
    sub1, _ = principal_subtensor(T1, (2, 3))
    p1s = extreme_h_eigen_even(sub1, "max", cfg)
    row(1, "even-mixed subtensor lambda_max", 2.2795, p1s.value, EIGEN_TOL)
    r1 = bounds.subtensor_lmax_bounds(T1, (2, 3), p1, actual=p1s.value)
    row(1, "even-mixed interlacing lower bound", 2.2772, r1.lower, BOUND_TOL)

    # --- 2: odd overlap tensor (oracle supplies the top pair) ------------
    T2 = reference.odd_overlap_tensor()
    o2 = enumerate_h_eigenpairs(T2, certify=False)
    p2 = o2.lambda_max
    row(2, "odd-overlap lambda_max", 0.6894, p2.value, EIGEN_TOL)
    sub2, _ = principal_subtensor(T2, (1, 2, 4))
    p2s = spectral_radius_nonneg(sub2, cfg)
    row(2, "odd-overlap subtensor lambda_max", 0.6387, p2s.value, EIGEN_TOL)
    r2 = bounds.subtensor_lmax_bounds(T2, (1, 2, 4), p2, actual=p2s.value)
    row(2, "odd-overlap interlacing lower bound", 0.6072, r2.lower, BOUND_TOL)

    # --- 3: nonnegative ratio bound ---------------------------------------
    T3 = reference.odd_nonneg_tensor()
    p3 = spectral_radius_nonneg(T3, cfg)
    row(3, "odd-nonneg rho", 0.8143, p3.value, EIGEN_TOL)
    sub3, _ = principal_subtensor(T3, (1, 2))
    p3s = spectral_radius_nonneg(sub3, cfg)
    row(3, "odd-nonneg subtensor rho", 0.6387, p3s.value, EIGEN_TOL)
    r3 = bounds.subtensor_rho_ratio_bound(T3, (1, 2), p3, actual=p3s.value)
    row(3, "odd-nonneg ratio lower bound", 0.6381, r3.lower, BOUND_TOL)
    flag(3, "odd-nonneg ratio bound below actual", r3.lower <= p3s.value + 1e-9)

    # --- 4: equal row sums, exact closed forms ----------------------------
    T4 = reference.equal_row_sum_tensor()
    p4 = spectral_radius_nonneg(T4, cfg)
    row(4, "equal-row-sum rho", 1.0, p4.value, EXACT_TOL)
    uniform = np.full(3, 3.0 ** (-1.0 / 3.0))
    row(
        4,
        "equal-row-sum eigenvector uniform",
        0.0,
        float(np.max(np.abs(sign_normalized(p4.vector) - uniform))),
        1e-6,
    )
    sub4, _ = principal_subtensor(T4, (1, 2))
    o4 = enumerate_h_eigenpairs(sub4)
    row(
        4,
        "equal-row-sum subtensor rho (oracle)",
        4.0 ** (1.0 / 3.0) / 3.0,
        o4.lambda_max.value,
        EXACT_TOL,
    )
    exact4 = _exact_pair(T4, 1.0, np.ones(3), "rho")
    r4 = bounds.subtensor_rho_ratio_bound(T4, (1, 2), exact4, actual=o4.lambda_max.value)
    row(4, "equal-row-sum ratio bound", 0.5, r4.lower, EXACT_TOL)

    # --- 5: hypercycle / hyperpath closed forms ---------------------------
    for r in verify_closed_forms(cfg):
        row(5, r["name"], r["expected"], r["computed"], r["tol"])
    ratios = []
    for n in range(3, 7):
        cycle = reference.hypercycle3(n)
        A = adjacency_tensor(cycle)
        exact = _exact_pair(A, reference.hypercycle3_rho(), reference.hypercycle3_perron_vector(n), "rho")
        rough = bounds.vertex_removal_bounds(cycle, 2 * n, exact)
        bound = rough.details["lower_ratio"]
        row(
            5,
            f"hypercycle removal bound (n={n})",
            (3 * n - 3) / (3 * n - 1) * 2.0 ** (2.0 / 3.0),
            bound,
            EXACT_TOL,
        )
        rho_path = reference.hyperpath3_rho(n)
        flag(5, f"removal bound below hyperpath rho (n={n})", bound <= rho_path)
        ratios.append(rho_path / bound)
    flag(
        5,
        "removal bound ratio approaches 1",
        abs(ratios[-1] - 1.0) < abs(ratios[0] - 1.0)
        and all(b <= a + 1e-12 for a, b in zip(ratios[1:], ratios[2:])),
    )

    # --- 6: least eigenvalue of the even nonnegative tensor ---------------
    T6 = reference.even_nonneg_tensor()
    p6 = extreme_h_eigen_even(T6, "min", cfg)
    row(6, "even-nonneg lambda_min", -9.9307, p6.value, EIGEN_TOL)
    sub6, _ = principal_subtensor(T6, (2, 3))
    p6s = extreme_h_eigen_even(sub6, "min", cfg)
    row(6, "even-nonneg subtensor lambda_min", -6.8385, p6s.value, EIGEN_TOL)
    r6 = bounds.lmin_subtensor_bounds(T6, (2, 3), p6, actual=p6s.value)
    row(6, "even-nonneg least upper bound (plain)", -6.3007, r6.details["upper_plain"], BOUND_TOL)
    row(6, "even-nonneg least upper bound (ratio)", -6.6954, r6.details["upper_ratio"], BOUND_TOL)
    flag(
        6,
        "least interlacing ordering",
        p6.value <= p6s.value <= r6.details["upper_ratio"] <= r6.details["upper_plain"],
    )

    # --- 7: vertex removal for the three-edge 4-uniform hypergraph --------
    G7 = reference.four_uniform_three_edges()
    p7 = hyper_lambda_min(G7, cfg)
    row(7, "three-edge lambda_min", -2.1908, p7.value, EIGEN_TOL)
    stated = normalize_k(
        np.array([-0.9112, 0.7465, 1.0, 1.0, 0.9112, -0.7465]), 4
    )
    dist = min(
        float(np.max(np.abs(p7.vector - stated))),
        float(np.max(np.abs(p7.vector + stated))),
    )
    row(7, "three-edge least eigenvector", 0.0, dist, BOUND_TOL)
    r7 = bounds.lmin_vertex_removal_bounds(G7, (5, 6), p7)
    row(7, "three-edge removal upper bound (plain)", -0.6803, r7.details["upper_plain"], BOUND_TOL)
    row(7, "three-edge removal upper bound (ratio)", -0.9071, r7.details["upper_ratio"], BOUND_TOL)
    H7, _ = remove_vertices(G7, (5, 6))
    p7s = hyper_lambda_min(H7, cfg)
    row(7, "three-edge removed lambda_min", -1.0, p7s.value, EIGEN_TOL)
    flag(7, "vertex removal sandwich", p7.value <= p7s.value <= min(r7.details["upper_plain"], r7.details["upper_ratio"]) + 1e-9)

    # --- 8: edge removal for the four-edge 4-uniform hypergraph -----------
    G8 = reference.four_uniform_four_edges()
    p8 = hyper_lambda_min(G8, cfg)
    row(8, "four-edge lambda_min", -2.8786, p8.value, EIGEN_TOL)
    F8 = [(1, 2, 3, 4)]
    H8 = remove_edges(G8, F8)
    p8s = hyper_lambda_min(H8, cfg)
    row(8, "four-edge removed lambda_min", -2.1908, p8s.value, EIGEN_TOL)
    r8 = bounds.lmin_edge_removal_bounds(G8, F8, p8, p8s)
    row(8, "edge removal lower bound", -2.2587, r8.lower, BOUND_TOL)
    # recomputed from the published eigenvector; the published -1.4467 is
    # not reproducible from the published data (see the decisions ledger)
    row(8, "edge removal upper bound (recomputed; published -1.4467)", -2.1344, r8.upper, BOUND_TOL)
    flag(8, "edge removal sandwich", r8.lower - 1e-9 <= p8s.value <= r8.upper + 1e-9)

    # --- 9: Steiner suite --------------------------------------------------
    fano = reference.fano_plane()
    rho_fano = hyper_rho(fano, cfg)
    row(9, "fano rho", 3.0, rho_fano.value, 1e-6)
    g_fano = bounds.gamma_bounds(fano, cfg)
    row(9, "fano gamma", 2.0, g_fano.actual, 1e-6)
    flag(9, "fano gamma attains rho - 1", g_fano.equality_hint["attains_unit_bound"])
    flag(9, "fano is steiner", g_fano.equality_hint["is_steiner_2"])
    ggv_ok = True
    for v in range(1, fano.n + 1):
        Hv, _ = remove_vertices(fano, [v])
        actual = hyper_rho(Hv, cfg).value
        rep = bounds.linear_vertex_removal_bound(fano, v, rho_fano.value, actual=actual)
        ggv_ok &= abs(actual - rep.lower) <= 1e-6
    flag(9, "fano degree bound tight at every vertex", ggv_ok)
    k5 = reference.complete_graph(5)
    g_k5 = bounds.gamma_bounds(k5, cfg)
    row(9, "complete graph gamma", 3.0, g_k5.actual, 1e-6)
    flag(9, "complete graph attains rho - 1", g_k5.equality_hint["attains_unit_bound"])
    flag(9, "complete graph is steiner", g_k5.equality_hint["is_steiner_2"])
    c6 = reference.hypercycle3(3)
    g_c6 = bounds.gamma_bounds(c6, cfg)
    row(9, "hypercycle gamma", 2.0 ** (1.0 / 3.0), g_c6.actual, 1e-6)
    flag(
        9,
        "hypercycle gamma strictly above rho - 1",
        g_c6.actual > g_c6.details["lower_unit"] + 1e-6
        and not g_c6.equality_hint["attains_unit_bound"],
    )
    flag(9, "hypercycle is not steiner", not g_c6.equality_hint["is_steiner_2"])

    return rows


def all_passed(rows: list[FixtureRow]) -> bool:
    return all(r.passed for r in rows)
