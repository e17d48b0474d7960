"""H-eigenpair computation.

Two solvers cover the regimes where extreme H-eigenvalues are guaranteed
to exist:

* a shifted power iteration with Collatz-Wielandt bracketing for the
  spectral radius of nonnegative tensors, and
* a shifted fixed-point ascent over the unit k-norm sphere for the largest
  and least H-eigenvalues of even-order symmetric tensors.

Both split the tensor into the connected components of its index
association graph first: extreme H-eigenvalues of a block tensor are the
extremes over its blocks, each block is weakly irreducible by
construction, and zero-padding lifts a block eigenpair to the full tensor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import NegativeEntry, NoConvergence, OddOrder
from .hypergraph import Hypergraph, adjacency_tensor
from .tensor import SymmetricTensor, principal_subtensor, support_components

# how many consecutive near-stationary objective values count as a stall
STALL_WINDOW = 50


@dataclass(frozen=True)
class SolverConfig:
    """Iteration controls shared by both solvers.

    shift None selects the automatic policy (1 + max row sum for the
    nonnegative solver, (k-1) * max orbit magnitude * n for the even-order
    solver); a float pins the shift.
    """

    tol: float = 1e-10
    max_iter: int = 100_000
    restarts: int = 16
    seed: int = 0
    shift: float | None = None

    def __post_init__(self) -> None:
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")


@dataclass(frozen=True)
class EigenPair:
    """An H-eigenpair with its residual certificate.

    vector is unit in the k-norm; residual is the max-norm defect of the
    eigen-equation; bracket, when present, is a Collatz-Wielandt enclosure
    of the spectral radius; global_claim records whether extremality is
    guaranteed ('verified') or only the best stationary value found
    ('heuristic').
    """

    value: float
    vector: np.ndarray
    residual: float
    kind: str  # 'max' | 'min' | 'rho' | 'stationary'
    iterations: int = 0
    bracket: tuple[float, float] | None = None
    global_claim: str = "heuristic"


def knorm(x: np.ndarray, k: int) -> float:
    return float(np.sum(np.abs(x) ** k) ** (1.0 / k))


def normalize_k(x: np.ndarray, k: int) -> np.ndarray:
    s = knorm(x, k)
    if s == 0:
        raise ZeroDivisionError("cannot normalize the zero vector")
    return x / s


def sign_normalized(x: np.ndarray) -> np.ndarray:
    """Representative of {x, -x} whose largest-magnitude entry is positive."""
    i = int(np.argmax(np.abs(x)))
    return -x if x[i] < 0 else x


def residual_of(T: SymmetricTensor, value: float, x: np.ndarray) -> float:
    """Max-norm defect of the eigen-equation at (value, x)."""
    return float(np.max(np.abs(T.apply(x) - value * x ** (T.order - 1))))


def _embed(x: np.ndarray, members: list[int], dim: int) -> np.ndarray:
    out = np.zeros(dim)
    for pos, old in enumerate(members):
        out[old - 1] = x[pos]
    return out


def _singleton_pair(T: SymmetricTensor, vertex: int, kind: str) -> tuple[float, np.ndarray]:
    # 1-dimensional block: the diagonal entry is the only H-eigenvalue
    value = T.orbits.get((vertex,) * T.order, 0.0)
    x = np.zeros(T.dim)
    x[vertex - 1] = 1.0
    return value, x


def _nqz(T: SymmetricTensor, cfg: SolverConfig) -> tuple[float, np.ndarray, tuple[float, float], int]:
    """Shifted power iteration on a weakly irreducible nonnegative tensor.

    Starts from the all-ones direction and tracks the Collatz-Wielandt
    ratios, whose nested brackets converge to the spectral radius; the
    shift keeps the iteration monotone and the iterates positive.
    """
    k, n = T.order, T.dim
    alpha = cfg.shift if cfg.shift is not None else 1.0 + float(np.max(T.row_sums()))
    x = normalize_k(np.ones(n), k)
    lo_best, hi_best = -math.inf, math.inf
    value = 0.0
    for it in range(1, cfg.max_iter + 1):
        y = T.apply(x)
        powers = x ** (k - 1)
        ratios = y / powers
        lo_best = max(lo_best, float(np.min(ratios)))
        hi_best = min(hi_best, float(np.max(ratios)))
        value = min(max(T.form(x), lo_best), hi_best)
        scale = max(1.0, abs(value))
        if (
            hi_best - lo_best <= cfg.tol * scale
            and float(np.max(np.abs(y - value * powers))) <= cfg.tol * scale
        ):
            return value, x, (lo_best, hi_best), it
        x = normalize_k((y + alpha * powers) ** (1.0 / (k - 1)), k)
    raise NoConvergence(
        f"Collatz-Wielandt bracket width {hi_best - lo_best:.3e} > tol after "
        f"{cfg.max_iter} iterations"
    )


def spectral_radius_nonneg(T: SymmetricTensor, cfg: SolverConfig | None = None) -> EigenPair:
    """Spectral radius of a nonnegative symmetric tensor with its Perron vector.

    Each support component is solved independently and the maximum taken;
    for a weakly irreducible tensor the returned vector is strictly
    positive.  Perron-Frobenius theory makes the extremality claim exact,
    so global_claim is 'verified'.
    """
    cfg = cfg or SolverConfig()
    if not T.is_nonnegative():
        raise NegativeEntry("spectral_radius_nonneg requires a nonnegative tensor")
    best: tuple[float, np.ndarray, tuple[float, float]] | None = None
    total_iters = 0
    for members in support_components(T):
        if len(members) == 1:
            value, x = _singleton_pair(T, members[0], "rho")
            bracket = (value, value)
        else:
            sub, _ = principal_subtensor(T, members)
            value, x_sub, bracket, iters = _nqz(sub, cfg)
            total_iters += iters
            x = _embed(x_sub, members, T.dim)
        if best is None or value > best[0] + 1e-15:
            best = (value, x, bracket)
    assert best is not None
    value, x, bracket = best
    return EigenPair(
        value=value,
        vector=x,
        residual=residual_of(T, value, x),
        kind="rho",
        iterations=total_iters,
        bracket=bracket,
        global_claim="verified",
    )


def _ss_hopm_start(
    T: SymmetricTensor, x0: np.ndarray, alpha0: float, cfg: SolverConfig
) -> tuple[float, np.ndarray, int] | None:
    """Run one shifted fixed-point ascent of T x^k from x0 (maximization).

    Returns (value, x, iterations) when the iterate settles into a
    stationary point with a small eigen-residual, None otherwise.  Under
    the automatic shift policy the shift doubles whenever the objective
    decreases, which restores monotone ascent without being needlessly
    conservative far from that regime.
    """
    k = T.order
    x = normalize_k(x0.astype(float), k)
    f = T.form(x)
    alpha = alpha0
    adaptive = cfg.shift is None
    stall = 0
    it = 0
    while it < cfg.max_iter:
        it += 1
        y = T.apply(x) + alpha * x ** (k - 1)
        norm = knorm(y, k)
        if norm == 0.0:
            # T x^{k-1} = -alpha x^{k-1}: x is itself an eigenvector
            break
        x_new = normalize_k(np.sign(y) * np.abs(y) ** (1.0 / (k - 1)), k)
        f_new = T.form(x_new)
        if adaptive and f_new < f - 1e-12 * max(1.0, abs(f)):
            alpha *= 2.0
            stall = 0
            if alpha > 1e100:
                return None
            continue
        stall = stall + 1 if abs(f_new - f) <= cfg.tol * max(1.0, abs(f_new)) else 0
        x, f = x_new, f_new
        if stall >= STALL_WINDOW:
            break
    value = T.form(x)
    if residual_of(T, value, x) <= cfg.tol * max(1.0, abs(value)):
        return value, x, it
    return None


def _even_multistart(
    T: SymmetricTensor, cfg: SolverConfig
) -> list[tuple[float, np.ndarray, int]]:
    """All stationary pairs found by the multi-start ascent (maximization)."""
    k, n = T.order, T.dim
    if not T.orbits:
        return [(0.0, _unit_coordinate(n, 0), 0)]
    max_mag = max(abs(v) for v in T.orbits.values())
    alpha0 = cfg.shift if cfg.shift is not None else (k - 1) * max_mag * n
    rng = np.random.default_rng(cfg.seed)
    starts = [np.ones(n)]
    starts.extend(_unit_coordinate(n, i) for i in range(n))
    starts.extend(rng.standard_normal(n) for _ in range(cfg.restarts))
    found = []
    for x0 in starts:
        if knorm(x0, k) == 0:
            continue
        result = _ss_hopm_start(T, x0, alpha0, cfg)
        if result is not None:
            found.append(result)
    if not found:
        raise NoConvergence("no start of the even-order solver converged")
    return found


def _unit_coordinate(n: int, pos: int) -> np.ndarray:
    x = np.zeros(n)
    x[pos] = 1.0
    return x


def _best_of(found: list[tuple[float, np.ndarray, int]]) -> tuple[float, np.ndarray, int]:
    """Deterministic merge: best value, ties by smallest sign-normalized vector."""
    best = None
    for value, x, its in found:
        key = (-value, tuple(np.round(sign_normalized(x), 12)))
        if best is None or key < best[0]:
            best = (key, (value, x, its))
    assert best is not None
    return best[1]


def extreme_h_eigen_even(
    T: SymmetricTensor, which: str, cfg: SolverConfig | None = None
) -> EigenPair:
    """Largest or least H-eigenvalue of an even-order symmetric tensor.

    Multi-start shifted fixed-point ascent over the unit k-norm sphere;
    minimization runs the same ascent on -T.  The result is a certified
    H-eigenpair and a one-sided witness; global extremality is heuristic
    (the oracle module can upgrade small instances).
    """
    cfg = cfg or SolverConfig()
    if which not in ("max", "min"):
        raise ValueError(f"which must be 'max' or 'min', got {which!r}")
    if T.order % 2 != 0:
        raise OddOrder("extreme H-eigenvalues need even order (or nonnegativity)")
    work = -T if which == "min" else T
    best: tuple[float, np.ndarray] | None = None
    total_iters = 0
    for members in support_components(T):
        if len(members) == 1:
            value, x = _singleton_pair(work, members[0], which)
        else:
            sub, _ = principal_subtensor(work, members)
            value, x_sub, its = _best_of(_even_multistart(sub, cfg))
            total_iters += its
            x = _embed(x_sub, members, T.dim)
        if best is None or value > best[0] + 1e-15:
            best = (value, x)
    assert best is not None
    value, x = best
    if which == "min":
        value = -value
    x = sign_normalized(x)
    return EigenPair(
        value=value,
        vector=x,
        residual=residual_of(T, value, x),
        kind=which,
        iterations=total_iters,
        global_claim="heuristic",
    )


def even_stationary_pairs(
    T: SymmetricTensor, which: str, cfg: SolverConfig | None = None
) -> list[EigenPair]:
    """Deduplicated stationary H-eigenpairs seen across all starts.

    Sorted by eigenvalue; used to probe quantities defined over all least
    (or largest) eigenvectors rather than a single one.
    """
    cfg = cfg or SolverConfig()
    if T.order % 2 != 0:
        raise OddOrder("even_stationary_pairs needs even order")
    work = -T if which == "min" else T
    sign = -1.0 if which == "min" else 1.0
    raw: list[tuple[float, np.ndarray]] = []
    for members in support_components(T):
        if len(members) == 1:
            value, x = _singleton_pair(work, members[0], which)
            raw.append((sign * value, x))
        else:
            sub, _ = principal_subtensor(work, members)
            for value, x_sub, _ in _even_multistart(sub, cfg):
                raw.append((sign * value, _embed(x_sub, members, T.dim)))
    pairs: list[EigenPair] = []
    for value, x in sorted(raw, key=lambda t: t[0]):
        x = sign_normalized(x)
        if any(
            abs(p.value - value) <= 1e-8 and np.max(np.abs(p.vector - x)) <= 1e-6
            for p in pairs
        ):
            continue
        pairs.append(
            EigenPair(value, x, residual_of(T, value, x), kind="stationary")
        )
    return pairs


def hyper_rho(G: Hypergraph, cfg: SolverConfig | None = None) -> EigenPair:
    """Spectral radius of a hypergraph via its adjacency tensor.

    Disconnected instances are handled by the component split inside the
    nonnegative solver, matching the block structure of the tensor.
    """
    return spectral_radius_nonneg(adjacency_tensor(G), cfg)


def hyper_lambda_min(G: Hypergraph, cfg: SolverConfig | None = None) -> EigenPair:
    """Least H-eigenvalue of an even-uniformity hypergraph."""
    if G.k % 2 != 0:
        raise OddOrder(f"least H-eigenvalue needs even uniformity, got k={G.k}")
    return extreme_h_eigen_even(adjacency_tensor(G), "min", cfg)
