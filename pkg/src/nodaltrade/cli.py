"""Command-line entry point exposing every module with exact JSON output.

All numeric payload values render as "p/q" strings; no float ever appears.
Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__, case_study, plane_counts
from .cohomology import load_model
from .errors import NodalTradeError, VerificationError
from .loop_matrix import (
    PairingVector,
    build_loop_matrix,
    eigenspace_decomposition,
    eigenvalues_at,
    find_generic_specialization,
    flavor_specialization,
)
from .node_trade import recover
from .pairings import crossing_number, enumerate_pairings
from .rationals import format_rational, parse_rational
from .stable_graphs import contract_edges, enumerate_splittings, graph_from_json
from .tensor_oracle import BilinearSpace, diagonal_insertion_matrix, invariant_map_rank

DENSE_COEFF_LIMIT = 4096


def jsonable(value):
    """Recursively render Fractions as exact strings and tuples as lists."""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        raise NodalTradeError("a float reached the output layer; refusing to emit it")
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "to_json"):
        return jsonable(value.to_json())
    return str(value)


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
        return
    for line in _table_lines(report, ""):
        print(line)


def _table_lines(value, prefix):
    if isinstance(value, dict):
        for key in sorted(value):
            yield from _table_lines(value[key], f"{prefix}{key}.")
    elif isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            yield f"{prefix[:-1]:40s} {' '.join(str(v) for v in value)}"
        else:
            for i, v in enumerate(value):
                yield from _table_lines(v, f"{prefix}{i}.")
    else:
        yield f"{prefix[:-1]:40s} {value}"


def _matrix_json(entries):
    return [[format_rational(x) for x in row] for row in entries]


# -- subcommand handlers ------------------------------------------------------


def _cmd_pairings(args):
    ps = enumerate_pairings(args.n)
    out = {
        "n": args.n,
        "count": len(ps),
        "pairings": [p.to_json() for p in ps],
    }
    if args.crossings:
        out["crossings"] = [crossing_number(p) for p in ps]
    return out


def _cmd_loopmat(args):
    x = parse_rational(args.x)
    matrix = build_loop_matrix(args.n, x)
    out = {
        "n": args.n,
        "x": format_rational(x),
        "size": matrix.size,
        "matrix": _matrix_json(matrix.entries),
    }
    if args.eigen:
        x0 = find_generic_specialization(args.n)
        blocks = eigenspace_decomposition(args.n, x0)
        values = eigenvalues_at(args.n, x)
        out["eigen"] = {
            "separation_point": x0,
            "blocks": [
                {
                    "partition": lam.to_json(),
                    "eigenvalue": format_rational(values[lam]),
                    "dimension": len(basis),
                    "basis": [v.to_json() for v in basis],
                }
                for lam, basis in blocks.items()
            ],
        }
    return out


def _space(args) -> BilinearSpace:
    return BilinearSpace(args.flavor, args.k)


def _cmd_oracle(args):
    space = _space(args)
    brute = diagonal_insertion_matrix(args.n, space)
    out = {
        "n": args.n,
        "flavor": args.flavor,
        "k": args.k,
        "dim": space.dim,
        "matrix": _matrix_json(brute),
    }
    if args.check_loop_matrix:
        x = flavor_specialization(args.flavor, args.k)
        spec_matrix = build_loop_matrix(args.n, x)
        matches = brute == spec_matrix.entries
        out["loop_matrix"] = _matrix_json(spec_matrix.entries)
        out["specialization"] = format_rational(x)
        out["matches"] = matches
        if not matches:
            raise VerificationError(
                "contraction matrix disagrees with the loop-matrix specialization",
                lhs=brute,
                rhs=spec_matrix.entries,
            )
    if args.rank:
        r, kernel = invariant_map_rank(args.n, space)
        out["rank"] = r
        out["kernel"] = [v.to_json() for v in kernel]
    return out


def _cmd_trade(args):
    space = _space(args)
    with open(args.contractions) as fh:
        raw = json.load(fh)
    if not isinstance(raw, list):
        raise NodalTradeError(
            "contraction data must be a JSON array of rationals, or an array "
            "of such arrays for batch recovery"
        )
    vectors = raw if raw and isinstance(raw[0], list) else [raw]
    results = []
    for vec in vectors:
        data = PairingVector(args.n, tuple(parse_rational(str(x)) for x in vec))
        omega = recover(data, args.n, space, sign=args.sign)
        tensor = omega.tensor
        entry = {
            "coordinates": omega.coordinates.to_json(),
            "tensor": {"dim": tensor.dim, "order": tensor.order},
        }
        if len(tensor.coeffs) <= DENSE_COEFF_LIMIT:
            entry["tensor"]["coeffs"] = [format_rational(c) for c in tensor.coeffs]
        else:
            entry["tensor"]["nonzero"] = {
                str(i): format_rational(c) for i, c in enumerate(tensor.coeffs) if c
            }
        results.append(entry)
    return {
        "n": args.n,
        "flavor": args.flavor,
        "k": args.k,
        "sign": args.sign,
        "recovered": results,
    }


def _cmd_graphs(args):
    if args.contract:
        with open(args.contract) as fh:
            graph = graph_from_json(json.load(fh))
        return {"contracted": contract_edges(graph).to_json()}
    if args.split != "p2-f1-cubic":
        raise NodalTradeError(
            f"unknown split scenario {args.split!r}; bundled: p2-f1-cubic"
        )
    splittings = enumerate_splittings(
        case_study.parent_graph(), case_study.cubic_scenario()
    )
    return {
        "scenario": args.split,
        "count": len(splittings),
        "splittings": [
            {
                "signature": s.signature,
                "matched_legs": s.ell,
                "multiplicity": s.m,
                "aut": s.aut,
                "variants": len(s.variants),
                "side1": s.gamma1.to_json(),
                "side2": s.gamma2.to_json(),
            }
            for s in splittings
        ],
    }


def _cmd_oracle_p2(args):
    if args.nd is not None:
        return {"degree": args.nd, "count": str(plane_counts.kontsevich_nd(args.nd))}
    if args.key is not None:
        value, provenance = plane_counts.lookup_with_provenance(args.key)
        return {"key": args.key, "value": format_rational(value), "provenance": provenance}
    chi, basepoints = args.pencil
    return {
        "chi": chi,
        "basepoints": basepoints,
        "reducible_members": plane_counts.pencil_reducible_count(chi, basepoints),
    }


def _cmd_appendix(args):
    if args.case:
        value, breakdown = case_study.compute_contribution(args.case)
        return {"case": args.case, "value": format_rational(value), "breakdown": jsonable(breakdown)}
    report = case_study.compute_rhs_total()
    demo = case_study.elliptic_demo(1, 0, 0, 1)
    out = {
        "lhs": format_rational(report.lhs),
        "contributions": {k: format_rational(v) for k, v in report.contributions.items()},
        "rhs_total": format_rational(report.rhs_total),
        "agreement": report.agreement,
        "breakdowns": jsonable(report.breakdowns),
        "lhs_breakdown": jsonable(report.lhs_breakdown),
        "elliptic_warmup": jsonable(demo),
    }
    if not report.agreement:
        raise VerificationError(
            "the two evaluation routes disagree", lhs=report.lhs, rhs=report.rhs_total
        )
    return out


def _cmd_models(args):
    ring = load_model(args.name)
    return {
        "name": ring.name,
        "basis": [
            {"label": l, "degree": d} for l, d in zip(ring.labels, ring.degrees)
        ],
        "pairing": _matrix_json(ring.pairing),
    }


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nodaltrade",
        description="exact pairing calculus, loop-matrix spectra, invariant "
        "tensor oracles, and degeneration bookkeeping",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "table"), default="json")
        p.add_argument("--seed", type=int, default=0, help="recorded in the report")

    p = sub.add_parser("pairings", help="enumerate n-pairings")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--crossings", action="store_true")
    common(p)
    p.set_defaults(handler=_cmd_pairings)

    p = sub.add_parser("loopmat", help="the loop matrix and its blocks")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", required=True, help='rational, e.g. "2" or "7/3"')
    p.add_argument("--eigen", action="store_true")
    common(p)
    p.set_defaults(handler=_cmd_loopmat)

    p = sub.add_parser("oracle", help="brute-force diagonal-insertion matrix")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--flavor", choices=("orthogonal", "symplectic"), required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--check-loop-matrix", action="store_true")
    p.add_argument("--rank", action="store_true")
    common(p)
    p.set_defaults(handler=_cmd_oracle)

    p = sub.add_parser("trade", help="recover a tensor from contraction data")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--flavor", choices=("orthogonal", "symplectic"), required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--contractions", required=True, help="JSON file with the data vector")
    p.add_argument("--sign", type=int, choices=(1, -1), default=1)
    common(p)
    p.set_defaults(handler=_cmd_trade)

    p = sub.add_parser("graphs", help="contract graphs or enumerate splittings")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--contract", metavar="FILE")
    group.add_argument("--split", metavar="SCENARIO")
    common(p)
    p.set_defaults(handler=_cmd_graphs)

    p = sub.add_parser("oracle-p2", help="plane-curve counts and the count table")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--nd", type=int, metavar="D")
    group.add_argument("--key", metavar="KEY")
    group.add_argument("--pencil", nargs=2, type=int, metavar=("CHI", "BASEPOINTS"))
    common(p)
    p.set_defaults(handler=_cmd_oracle_p2)

    p = sub.add_parser("appendix", help="the worked example, both routes")
    p.add_argument("--case", choices=case_study.CASE_IDS)
    p.add_argument("--report", choices=("json", "table"), help="alias of --format")
    common(p)
    p.set_defaults(handler=_cmd_appendix)

    p = sub.add_parser("models", help="inspect a bundled cohomology model")
    p.add_argument("--name", required=True)
    common(p)
    p.set_defaults(handler=_cmd_models)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = getattr(args, "report", None) or args.format
    try:
        report = args.handler(args)
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    except NodalTradeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report["seed"] = args.seed
    _emit(report, fmt)
    return 0


if __name__ == "__main__":
    sys.exit(main())
