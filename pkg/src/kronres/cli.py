"""Command-line front end.

Subcommands: info, reduce, resistance, metric, compare, simulate. Node
labels on the command line and in every output are 1-based.

Exit status is 0 on success, 1 on a domain error (reported on stderr as a
JSON object with a category of parse, precondition or numerical) and 2 on a
usage error.
"""

import argparse
import itertools
import json
import os
import sys

import numpy as np

from . import comparisons, graph, kron, montecarlo, resistance
from .exceptions import KronresError, PreconditionError
from .io import format_matrix_csv, graph_to_dict, json_number, matrix_to_json, read_graph

TOL_ENV = "KRONRES_TOL"
LYAPUNOV_MAX_N = 80
COMPARE_METHODS = ("schur", "pinv", "balanced", "lyapunov", "omega", "hitting")


def _labels(text):
    try:
        labels = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integer labels, got {text!r}") from None
    if any(lab < 1 for lab in labels):
        raise argparse.ArgumentTypeError("node labels are 1-based")
    return labels


def _pair(text):
    labels = _labels(text)
    if len(labels) != 2:
        raise argparse.ArgumentTypeError(f"expected two labels a,b, got {text!r}")
    return labels


def _methods(text):
    methods = [m.strip() for m in text.split(",") if m.strip()]
    unknown = sorted(set(methods) - set(COMPARE_METHODS))
    if unknown or not methods:
        raise argparse.ArgumentTypeError(f"unknown methods {unknown}; choose from {', '.join(COMPARE_METHODS)}")
    return methods


def _default_tol():
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return 1e-9
    try:
        return float(raw)
    except ValueError:
        raise PreconditionError(f"{TOL_ENV} must be a number, got {raw!r}") from None


def _node(g, label):
    if not 1 <= label <= g.n:
        raise PreconditionError(f"node label {label} out of range 1..{g.n}")
    return label - 1


def cmd_info(args, g):
    eig = np.linalg.eigvals(graph.loopless_laplacian(g))
    eig = eig[np.lexsort((eig.imag, eig.real))]
    return {
        "n": g.n,
        "edges": len(g.edges()),
        "self_loops": [i + 1 for i in np.flatnonzero(g.self_loops > 0).tolist()],
        "strongly_connected": graph.is_strongly_connected(g),
        "weight_balanced": graph.is_weight_balanced(g, args.tol),
        "laplacian_eigenvalues": [[json_number(z.real), json_number(z.imag)] for z in eig],
    }


def cmd_reduce(args, g):
    alpha = [_node(g, lab) for lab in args.keep]
    q = graph.loopy_laplacian(g)
    result = kron.kron_reduce_iterative(q, alpha) if args.iterative else kron.kron_reduce(q, alpha)
    out = graph_to_dict(result.g_red)
    out["labels"] = [i + 1 for i in result.alpha]
    out["q_red"] = matrix_to_json(result.q_red)
    if args.emit_acc:
        acc = kron.accompanying_matrices(q, alpha)
        out["interior_labels"] = [i + 1 for i in graph.complement(result.alpha, g.n)]
        out["rac"] = matrix_to_json(acc.rac)
        out["lac"] = matrix_to_json(acc.lac)
    return out


def _pair_resistance(g, a, b, method):
    if method == "schur":
        return resistance.resistance_general(g, a, b).to_json()
    if method == "pinv":
        return json_number(resistance.resistance_balanced_pinv(g, a, b))
    return json_number(resistance.resistance_strongly_connected(g, a, b))


def cmd_resistance(args, g):
    if args.all:
        r = resistance.resistance_matrix(g, args.method)
        if args.out and args.out.endswith(".csv"):
            return format_matrix_csv(r)
        return {"method": args.method, "labels": list(range(1, g.n + 1)), "matrix": matrix_to_json(r)}
    a, b = (_node(g, lab) for lab in args.pair)
    return {"method": args.method, "pair": list(args.pair), "resistance": _pair_resistance(g, a, b, args.method)}


def cmd_metric(args, g):
    d = resistance.metric_matrix(g)
    gram = resistance.edm_gram((d**2 + (d**2).T) / 2)
    return {
        "labels": list(range(1, g.n + 1)),
        "d": matrix_to_json(d),
        "gram_eigenvalues": [json_number(v) for v in np.linalg.eigvalsh(gram)],
        "edm": resistance.edm_check((d**2 + (d**2).T) / 2),
    }


def _compare_matrix(g, method):
    if method in ("schur", "pinv", "balanced"):
        return resistance.resistance_matrix(g, method)
    if method == "lyapunov":
        if g.n > LYAPUNOV_MAX_N:
            raise PreconditionError(f"Lyapunov path is capped at n <= {LYAPUNOV_MAX_N}")
        return comparisons.lyapunov_resistance_matrix(g)
    if method == "omega":
        return comparisons.resistance_distance(graph.transition_matrix(g))
    return comparisons.hitting_prob_metric(g)


def cmd_compare(args, g):
    mats = {m: _compare_matrix(g, m) for m in args.methods}
    pairs = []
    for a, b in itertools.permutations(range(g.n), 2):
        row = {"from": a + 1, "to": b + 1}
        row.update({m: json_number(mats[m][a, b]) for m in args.methods})
        pairs.append(row)
    discrepancy = {}
    for m1, m2 in itertools.combinations(args.methods, 2):
        discrepancy[f"{m1}-{m2}"] = json_number(np.abs(mats[m1] - mats[m2]).max(initial=0.0))
    numeric = [v for v in discrepancy.values() if isinstance(v, float)]
    return {
        "methods": args.methods,
        "pairs": pairs,
        "pairwise_discrepancy": discrepancy,
        "max_discrepancy": max(numeric) if numeric else None,
    }


def cmd_simulate(args, g):
    a, b = _node(g, args.source), _node(g, args.target)
    cfg = montecarlo.WalkConfig(trials=args.trials, seed=args.seed, max_steps=args.max_steps)
    est = montecarlo.simulate_escape(g, a, b, cfg)
    return {
        "from": args.source,
        "to": args.target,
        "estimate": json_number(est.p_hat),
        "std_err": json_number(est.std_err),
        "trials": est.trials,
        "truncated": est.truncated,
    }


def build_parser():
    parser = argparse.ArgumentParser(prog="kronres", description="Kron reduction and effective resistance of directed graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--graph", required=True, help="graph file (.json, or .tsv edge list)")
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--tol", type=float, default=None, help=f"structural tolerance (default ${TOL_ENV} or 1e-9)")
        p.set_defaults(func=func)
        return p

    add("info", cmd_info, "summarize a graph")

    p = add("reduce", cmd_reduce, "Kron-reduce onto a boundary set")
    p.add_argument("--keep", type=_labels, required=True, help="comma-separated boundary labels")
    p.add_argument("--iterative", action="store_true", help="eliminate interior nodes one at a time")
    p.add_argument("--emit-acc", action="store_true", help="include accompanying matrices")

    p = add("resistance", cmd_resistance, "effective resistances")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--pair", type=_pair, help="ordered pair a,b")
    which.add_argument("--all", action="store_true", help="all ordered pairs")
    p.add_argument("--method", choices=("schur", "pinv", "balanced"), default="schur")

    add("metric", cmd_metric, "resistance metric and its Euclidean embedding check")

    p = add("compare", cmd_compare, "compare resistance-like quantities")
    p.add_argument("--methods", type=_methods, default=["schur", "pinv"], help=f"subset of {','.join(COMPARE_METHODS)}")

    p = add("simulate", cmd_simulate, "Monte-Carlo escape probability")
    p.add_argument("--from", dest="source", type=int, required=True)
    p.add_argument("--to", dest="target", type=int, required=True)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-steps", type=int, default=1_000_000)
    return parser


def _emit(payload, out):
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _error(exc, category=None):
    info = {"category": category or exc.category, "message": str(exc)}
    nodes = getattr(exc, "nodes", ())
    if nodes:
        info["nodes"] = [i + 1 for i in nodes]
    sys.stderr.write(json.dumps({"error": info}) + "\n")
    return 1


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.tol is None:
            args.tol = _default_tol()
        g = read_graph(args.graph)
        _emit(args.func(args, g), args.out)
    except KronresError as exc:
        return _error(exc)
    except np.linalg.LinAlgError as exc:
        return _error(exc, "numerical")
    except ValueError as exc:
        return _error(exc, "precondition")
    return 0


if __name__ == "__main__":
    sys.exit(main())
