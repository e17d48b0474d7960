"""Command-line front end.

Commands:
  eig           solve for an extreme H-eigenpair of a tensor or hypergraph
  bound         evaluate one theorem bound (or `all` applicable ones)
  check         structural predicates of the loaded instance
  verify-paper  run the reference fixture table and report pass/fail

Exit codes: 0 success, 1 input/regime error, 2 no convergence.  Vertex and
index arguments are 1-based.  Tensor-level bounds take --keep (the kept
index set of the principal subtensor); hypergraph bounds take --remove
(the removed vertices).  JSON output carries full float precision, text
output 6 significant digits.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import bounds as bd
from .errors import HspecError, NoConvergence, ParseError
from .eigensolve import (
    EigenPair,
    SolverConfig,
    extreme_h_eigen_even,
    hyper_lambda_min,
    hyper_rho,
    spectral_radius_nonneg,
)
from .hypergraph import Hypergraph, adjacency_tensor, remove_edges, remove_vertices
from .io import load_instance
from .oracle import enumerate_h_eigenpairs
from .tensor import SymmetricTensor, principal_subtensor
from .verify import all_passed, collect_fixtures

BOUND_NAMES = [
    "subtensor-lmax",
    "subtensor-rho-ratio",
    "lmin-subtensor",
    "vertex-set-removal",
    "vertex-removal",
    "perron-entry",
    "linear-vertex-removal",
    "gamma",
    "edge-removal",
    "lmin-vertex-removal",
    "lmin-edge-removal",
    "least-entry",
    "cmax",
    "all",
]

CHECK_NAMES = [
    "zero-diagonal",
    "nonnegative",
    "weakly-irreducible",
    "row-sums",
    "linear",
    "connected",
    "regular",
    "odd-bipartite",
    "steiner-2",
    "degrees",
    "all",
]


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def _default_seed() -> int:
    return int(os.environ.get("HSPEC_SEED", "0"))


def _config(args) -> SolverConfig:
    return SolverConfig(
        tol=args.tol,
        max_iter=args.max_iter,
        restarts=args.restarts,
        seed=args.seed,
    )


def _parse_vertex_list(text: str) -> list[int]:
    if not text:
        return []
    return [int(p) for p in text.replace(" ", "").split(",") if p]


def _parse_edge_list(text: str) -> list[tuple[int, ...]]:
    if not text:
        return []
    edges = []
    for chunk in text.split(";"):
        vs = _parse_vertex_list(chunk)
        if vs:
            edges.append(tuple(vs))
    return edges


def _pair_record(pair: EigenPair) -> dict:
    return {
        "lambda": pair.value,
        "vector": [float(v) for v in pair.vector],
        "residual": pair.residual,
        "iterations": pair.iterations,
        "kind": pair.kind,
        "global_claim": pair.global_claim,
        "bracket": list(pair.bracket) if pair.bracket else None,
    }


def _print_pair(pair: EigenPair, as_json: bool) -> None:
    if as_json:
        print(json.dumps(_pair_record(pair), sort_keys=True))
        return
    print(f"lambda       = {_fmt(pair.value)}")
    print("vector       = [" + ", ".join(_fmt(float(v)) for v in pair.vector) + "]")
    print(f"residual     = {_fmt(pair.residual)}")
    print(f"iterations   = {pair.iterations}")
    print(f"kind         = {pair.kind}")
    print(f"global_claim = {pair.global_claim}")
    if pair.bracket:
        print(f"bracket      = [{_fmt(pair.bracket[0])}, {_fmt(pair.bracket[1])}]")


def _tensor_max_pair(T: SymmetricTensor, cfg: SolverConfig) -> EigenPair:
    """Largest H-eigenvalue pair in whatever regime supports it."""
    if T.order % 2 == 0:
        return extreme_h_eigen_even(T, "max", cfg)
    if T.is_nonnegative():
        return spectral_radius_nonneg(T, cfg)
    # odd order with mixed signs: only brute-force enumeration applies
    result = enumerate_h_eigenpairs(T, certify=False)
    return result.lambda_max


def _solve_eig(instance, which: str, cfg: SolverConfig) -> EigenPair:
    if isinstance(instance, Hypergraph):
        if which == "rho":
            return hyper_rho(instance, cfg)
        if which == "max":
            return hyper_rho(instance, cfg)  # adjacency tensors are nonnegative
        return hyper_lambda_min(instance, cfg)
    if which == "rho":
        return spectral_radius_nonneg(instance, cfg)
    if which == "max":
        return _tensor_max_pair(instance, cfg)
    if instance.order % 2 != 0:
        raise HspecError(
            "least H-eigenvalue computation needs even order "
            "(odd-order tensors with mixed signs are not supported)"
        )
    return extreme_h_eigen_even(instance, "min", cfg)


def cmd_eig(args) -> int:
    instance = load_instance(args.input)
    cfg = _config(args)
    pair = _solve_eig(instance, args.which, cfg)
    _print_pair(pair, args.json)
    return 0


def _tensor_bounds(T: SymmetricTensor, name: str, keep: list[int], cfg: SolverConfig):
    reports = []
    if not keep:
        raise HspecError("tensor bounds need --keep with the kept index set")
    sub, _ = principal_subtensor(T, keep)
    if name in ("subtensor-lmax", "all"):
        pair = _tensor_max_pair(T, cfg)
        actual = _tensor_max_pair(sub, cfg).value
        reports.append(bd.subtensor_lmax_bounds(T, keep, pair, actual=actual))
    if name in ("subtensor-rho-ratio", "all") and T.is_nonnegative():
        pair = spectral_radius_nonneg(T, cfg)
        actual = spectral_radius_nonneg(sub, cfg).value
        reports.append(bd.subtensor_rho_ratio_bound(T, keep, pair, actual=actual))
    elif name == "subtensor-rho-ratio":
        reports.append(bd.BoundReport(name=name, valid=False, reason="RegimeUnsupported"))
    if name in ("lmin-subtensor", "all"):
        if T.order % 2 == 0:
            pair = extreme_h_eigen_even(T, "min", cfg)
            actual = extreme_h_eigen_even(sub, "min", cfg).value
            reports.append(bd.lmin_subtensor_bounds(T, keep, pair, actual=actual))
        elif name != "all":
            reports.append(bd.BoundReport(name=name, valid=False, reason="OddOrder"))
    return reports


def _hypergraph_bounds(
    G: Hypergraph, name: str, removed: list[int], edges: list[tuple[int, ...]], cfg: SolverConfig
):
    reports = []
    even = G.k % 2 == 0
    sweep = name == "all"
    needs_remove = {
        "vertex-set-removal",
        "vertex-removal",
        "perron-entry",
        "linear-vertex-removal",
        "lmin-vertex-removal",
        "least-entry",
    }
    if name in needs_remove and not removed:
        raise HspecError(f"bound {name} needs --remove with a vertex list")
    rho_pair = None
    lmin_pair = None

    def rho() -> EigenPair:
        nonlocal rho_pair
        if rho_pair is None:
            rho_pair = hyper_rho(G, cfg)
        return rho_pair

    def lmin() -> EigenPair:
        nonlocal lmin_pair
        if lmin_pair is None:
            lmin_pair = hyper_lambda_min(G, cfg)
        return lmin_pair

    def odd_regime(bound_name: str) -> None:
        if not sweep:
            reports.append(bd.BoundReport(name=bound_name, valid=False, reason="OddOrder"))

    if name in ("vertex-set-removal", "all") and removed:
        actual = _rho_after_removal(G, removed, cfg)
        reports.append(bd.vertex_set_removal_bounds(G, removed, rho(), actual=actual))
    if name in ("vertex-removal", "all") and len(removed) == 1:
        actual = _rho_after_removal(G, removed, cfg)
        reports.append(bd.vertex_removal_bounds(G, removed[0], rho(), actual=actual))
    if name in ("perron-entry", "all") and removed:
        reports.append(bd.perron_entry_bounds(G, removed, rho()))
    if name in ("linear-vertex-removal", "all") and len(removed) == 1:
        actual = _rho_after_removal(G, removed, cfg)
        reports.append(
            bd.linear_vertex_removal_bound(G, removed[0], rho().value, actual=actual)
        )
    if name in ("gamma", "all"):
        reports.append(bd.gamma_bounds(G, cfg))
    if name == "edge-removal" or (sweep and edges):
        H = remove_edges(G, edges)
        reports.append(bd.edge_removal_rho_bounds(G, edges, rho(), hyper_rho(H, cfg)))
    if name in ("lmin-vertex-removal", "all") and removed:
        if even:
            H, _ = remove_vertices(G, removed)
            actual = hyper_lambda_min(H, cfg).value
            reports.append(
                bd.lmin_vertex_removal_bounds(G, removed, lmin(), actual=actual)
            )
        else:
            odd_regime("lmin-vertex-removal")
    if name == "lmin-edge-removal" or (sweep and edges and even):
        if even:
            H = remove_edges(G, edges)
            reports.append(
                bd.lmin_edge_removal_bounds(G, edges, lmin(), hyper_lambda_min(H, cfg))
            )
        else:
            odd_regime("lmin-edge-removal")
    if name in ("least-entry", "all") and len(removed) == 1:
        if even:
            reports.append(bd.least_vector_entry_bound(G, removed[0], lmin()))
        else:
            odd_regime("least-entry")
    if name in ("cmax", "all"):
        if even:
            reports.append(bd.cmax_bounds(G, cfg))
        else:
            odd_regime("cmax")
    return reports


def _rho_after_removal(G: Hypergraph, removed: list[int], cfg: SolverConfig) -> float:
    H, _ = remove_vertices(G, removed)
    return hyper_rho(H, cfg).value


def _print_report(report: bd.BoundReport, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report.to_record(), sort_keys=True, default=_json_default))
        return
    parts = [f"[{report.name}]"]
    for label in ("lower", "upper", "actual", "slack_lower", "slack_upper"):
        value = getattr(report, label)
        if value is not None:
            parts.append(f"{label}={_fmt(value)}")
    parts.append(f"valid={report.valid}")
    if report.reason:
        parts.append(f"reason={report.reason}")
    if report.equality_hint:
        parts.append(f"equality_hint={report.equality_hint}")
    print(" ".join(parts))


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    raise TypeError(f"not JSON serializable: {type(obj)}")


def cmd_bound(args) -> int:
    instance = load_instance(args.input)
    cfg = _config(args)
    keep = _parse_vertex_list(args.keep)
    removed = _parse_vertex_list(args.remove)
    edges = _parse_edge_list(args.edges)
    _validate_arguments(instance, keep, removed, edges)
    if isinstance(instance, SymmetricTensor):
        reports = _tensor_bounds(instance, args.name, keep, cfg)
    else:
        reports = _hypergraph_bounds(instance, args.name, removed, edges, cfg)
    if not reports:
        raise HspecError(
            f"bound {args.name!r} is not applicable to this instance/arguments"
        )
    for report in reports:
        _print_report(report, args.json)
    return 0


def _validate_arguments(instance, keep, removed, edges) -> None:
    n = instance.dim if isinstance(instance, SymmetricTensor) else instance.n
    for v in keep + removed:
        if not 1 <= v <= n:
            raise HspecError(f"vertex/index {v} outside [1, {n}]")
    if edges:
        if isinstance(instance, SymmetricTensor):
            raise HspecError("--edges applies to hypergraph inputs only")
        for e in edges:
            if tuple(sorted(e)) not in instance.edges:
                raise HspecError(f"unknown edge {e}")


def cmd_check(args) -> int:
    instance = load_instance(args.input)
    results: dict[str, object] = {}
    if isinstance(instance, SymmetricTensor):
        table = {
            "zero-diagonal": instance.is_zero_diagonal,
            "nonnegative": instance.is_nonnegative,
            "weakly-irreducible": instance.is_weakly_irreducible,
            "row-sums": lambda: [float(r) for r in instance.row_sums()],
        }
    else:
        table = {
            "linear": instance.is_linear,
            "connected": instance.is_connected,
            "regular": instance.is_regular,
            "odd-bipartite": instance.is_odd_bipartite,
            "steiner-2": instance.is_steiner_2,
            "degrees": lambda: [int(d) for d in instance.degrees()],
        }
    names = list(table) if args.name == "all" else [args.name]
    for name in names:
        if name not in table:
            raise HspecError(f"predicate {name!r} does not apply to this input")
        try:
            results[name] = table[name]()
        except HspecError as exc:
            results[name] = f"error: {exc}"
    if args.json:
        print(json.dumps(results, sort_keys=True, default=_json_default))
    else:
        for name, value in results.items():
            print(f"{name} = {value}")
    return 0


def cmd_verify_paper(args) -> int:
    cfg = _config(args)
    rows = collect_fixtures(cfg)
    if args.json:
        for r in rows:
            print(json.dumps(r.to_record(), sort_keys=True))
    else:
        width = max(len(r.name) for r in rows)
        for r in rows:
            status = "PASS" if r.passed else "FAIL"
            print(
                f"{status}  [{r.criterion}] {r.name:<{width}}  "
                f"expected={_fmt(r.expected)} computed={_fmt(r.computed)} "
                f"deviation={_fmt(r.deviation)} tol={_fmt(r.tol)}"
            )
        total = sum(r.passed for r in rows)
        print(f"{total}/{len(rows)} fixtures passed")
    return 0 if all_passed(rows) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hspec",
        description="H-eigenvalues and perturbation bounds for symmetric tensors "
        "and uniform hypergraphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", required=True, help="tensor or hypergraph file")
        p.add_argument("--tol", type=float, default=1e-10)
        p.add_argument("--max-iter", type=int, default=100_000)
        p.add_argument("--restarts", type=int, default=16)
        p.add_argument("--seed", type=int, default=_default_seed())
        p.add_argument("--json", action="store_true")

    p_eig = sub.add_parser("eig", help="solve for an extreme H-eigenpair")
    p_eig.add_argument("--which", choices=["max", "min", "rho"], required=True)
    add_common(p_eig)
    p_eig.set_defaults(func=cmd_eig)

    p_bound = sub.add_parser("bound", help="evaluate a theorem bound")
    p_bound.add_argument("name", choices=BOUND_NAMES)
    p_bound.add_argument("--keep", default="", help="kept index set (tensor bounds)")
    p_bound.add_argument("--remove", default="", help="removed vertices (hypergraph bounds)")
    p_bound.add_argument("--edges", default="", help="edges like '1,2,3;3,4,5'")
    add_common(p_bound)
    p_bound.set_defaults(func=cmd_bound)

    p_check = sub.add_parser("check", help="structural predicates")
    p_check.add_argument("name", choices=CHECK_NAMES)
    add_common(p_check)
    p_check.set_defaults(func=cmd_check)

    p_verify = sub.add_parser("verify-paper", help="run the reference fixture table")
    add_common(p_verify, needs_input=False)
    p_verify.set_defaults(func=cmd_verify_paper)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NoConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (HspecError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
