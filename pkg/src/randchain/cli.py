"""Command-line front end.

    randchain dist --q 2 --dims 1,1 --m 0
    randchain asymptotic --dims 1,3,1 --m 1
    randchain counts --q 2 --rank-matrices 2,2,1
    randchain sample --q 3 --dims 2,2,2 --m 1 --trials 10000 --seed 7

Exit status is 0 on success, 1 on a usage error and 2 when an exhaustive
enumeration would exceed its budget.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import asymptotics, betti, qcount, sampler
from .gfq import is_prime

EXIT_USAGE = 1
EXIT_BUDGET = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def _dims(text: str) -> list[int]:
    vals = _int_list(text)
    if any(v < 0 for v in vals):
        raise argparse.ArgumentTypeError(f"dimensions must be non-negative, got {text!r}")
    return vals


def _prime(text: str) -> int:
    try:
        q = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if not is_prime(q):
        raise argparse.ArgumentTypeError(f"{q} is not prime")
    return q


def _primes(text: str) -> list[int]:
    return [_prime(x) for x in text.split(",") if x.strip()]


def _seed(text: str) -> int:
    s = int(text)
    if not 0 <= s < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return s


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="randchain", description="Betti number laws of uniform random chain complexes over F_q.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, q=True, m=True):
        if q:
            sp.add_argument("--q", type=_prime, required=True, help="prime field order")
        sp.add_argument("--dims", type=_dims, required=True, help="n_0,n_1,...,n_M")
        if m:
            sp.add_argument("--m", type=int, required=True, help="degree")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--output", "-o", default="-", help="file path, '-' for stdout")

    common(sub.add_parser("dist", help="exact law of beta_m"))
    common(sub.add_parser("rank-dist", help="exact law of rank(A_m)"))
    mo = sub.add_parser("moments", help="mean, variance and t-th moment of beta_m")
    common(mo)
    mo.add_argument("--t", type=int, default=None)
    common(sub.add_parser("asymptotic", help="q -> infinity predictions"), q=False)

    for name in ("sample", "compare"):
        sp = sub.add_parser(name)
        common(sp)
        sp.add_argument("--trials", type=int, required=True)
        sp.add_argument("--seed", type=_seed, default=None)
        sp.add_argument("--workers", type=int, default=1)
        if name == "compare":
            sp.add_argument("--budget", type=int, default=sampler.DEFAULT_BUDGET)
            sp.add_argument("--require-oracle", action="store_true",
                            help="fail (exit 2) if the enumeration oracle is over budget")

    co = sub.add_parser("counts", help="subspace and matrix counts and P^m_k(r)")
    co.add_argument("--q", type=_prime, required=True)
    co.add_argument("--independent-tuples", type=_int_list, metavar="N,K")
    co.add_argument("--q-binomial", type=_int_list, metavar="N,K")
    co.add_argument("--rank-matrices", type=_int_list, metavar="M,N,R")
    co.add_argument("--pmkr", type=_int_list, metavar="K,R,N_NEXT")
    co.add_argument("--format", choices=("csv", "json"), default="csv")
    co.add_argument("--output", "-o", default="-")

    sw = sub.add_parser("sweep-q", help="P[beta_m = B_m] over a list of primes")
    sw.add_argument("--qs", type=_primes, required=True, help="comma-separated primes")
    common(sw, q=False)
    return p


def _rational_row(key: str, v, w: Fraction) -> dict:
    return {key: v, "numerator": str(w.numerator), "denominator": str(w.denominator), "decimal": float(w)}


def _dist_rows(key: str, d) -> list[dict]:
    return [_rational_row(key, v, w) for v, w in d.items()]


def _check_degree(args, lo: int, hi: int, what: str) -> None:
    if lo <= args.m <= hi:
        return
    msg = f"--m {args.m} out of range {lo}..{hi} for {what}"
    if what == "beta_m" and args.m == hi + 1:
        msg += f" (beta_{args.m} needs n_{args.m + 1}; append it to --dims, e.g. 0)"
    raise UsageError(msg)


def _spec(args) -> betti.ChainSpec:
    return betti.ChainSpec(args.q, tuple(args.dims))


def execute(args) -> dict:
    """Run a parsed command; returns {"command", "params", "rows", "seed"?}."""
    cmd = args.command
    params: dict = {}
    if hasattr(args, "q"):
        params["q"] = args.q
    if hasattr(args, "dims"):
        params["dims"] = list(args.dims)
    if hasattr(args, "m"):
        params["m"] = args.m
    report: dict = {"command": cmd, "params": params, "rows": []}
    M = len(args.dims) - 1 if hasattr(args, "dims") else None

    if cmd == "dist":
        _check_degree(args, 0, M - 1, "beta_m")
        report["rows"] = _dist_rows("b", betti.betti_distribution(_spec(args), args.m))
    elif cmd == "rank-dist":
        _check_degree(args, 1, M, "rank(A_m)")
        report["rows"] = _dist_rows("rank", betti.rank_distribution(_spec(args), args.m))
    elif cmd == "moments":
        _check_degree(args, 0, M - 1, "beta_m")
        d = betti.betti_distribution(_spec(args), args.m)
        rows = [_rational_row("stat", "mean", d.mean()), _rational_row("stat", "variance", d.variance())]
        if args.t is not None:
            if args.t < 0:
                raise UsageError(f"--t must be non-negative, got {args.t}")
            params["t"] = args.t
            rows.append(_rational_row("stat", f"moment_{args.t}", d.moment(args.t)))
        report["rows"] = rows
    elif cmd == "asymptotic":
        _check_degree(args, 0, M - 1, "beta_m")
        r = asymptotics.limit_report(args.dims, args.m)
        report["rows"] = [
            {"quantity": "B_m", "value": r.b_limit},
            {"quantity": "limiting_rank", "value": r.limiting_rank},
            {"quantity": "istar", "value": ",".join(map(str, r.istar))},
        ]
    elif cmd in ("sample", "compare"):
        _check_degree(args, 0, M - 1, "beta_m")
        if args.trials < 1:
            raise UsageError(f"--trials must be positive, got {args.trials}")
        spec = _spec(args)
        params["trials"] = args.trials
        emp = sampler.empirical_betti(spec, args.m, args.trials, seed=args.seed, workers=args.workers)
        report["seed"] = str(emp.seed)
        if cmd == "sample":
            report["rows"] = [
                {"b": v, "count": c, "frequency": c / emp.trials, "seed": str(emp.seed)}
                for v, c in emp.counts.items()
            ]
        else:
            exact = betti.betti_distribution(spec, args.m)
            rows = [{"b": v, "exact": float(exact.prob(v)), "empirical": emp.counts.get(v, 0) / emp.trials}
                    for v in sorted(set(exact) | set(emp.counts))]
            try:
                oracle = sampler.enumerate_betti_oracle(spec, args.m, budget=args.budget)
            except sampler.BudgetExceeded:
                if args.require_oracle:
                    raise
                oracle = None
            for row in rows:
                row["oracle"] = "" if oracle is None else float(oracle.prob(row["b"]))
            report["rows"] = rows
            tv = sampler.tv_distance(emp, exact)
            report["tv_empirical_exact"] = {"numerator": str(tv.numerator), "denominator": str(tv.denominator), "decimal": float(tv)}
            for row in rows:
                row["tv_empirical_exact"] = float(tv)
            if oracle is not None:
                tv_o = sampler.tv_distance(oracle, exact)
                report["tv_oracle_exact"] = {"numerator": str(tv_o.numerator), "denominator": str(tv_o.denominator), "decimal": float(tv_o)}
    elif cmd == "counts":
        rows = []
        q = args.q
        requests = [
            ("independent_tuples", args.independent_tuples, 2, qcount.count_independent_tuples),
            ("q_binomial", args.q_binomial, 2, qcount.q_binomial),
            ("rank_matrices", args.rank_matrices, 3, qcount.count_rank_matrices),
        ]
        for name, vals, arity, fn in requests:
            if vals is None:
                continue
            if len(vals) != arity or any(v < 0 for v in vals):
                raise UsageError(f"--{name.replace('_', '-')} expects {arity} non-negative integers")
            n = fn(*vals, q)
            rows.append({"quantity": name, "args": ",".join(map(str, vals)),
                         "numerator": str(n), "denominator": "1", "decimal": float(n)})
        if args.pmkr is not None:
            if len(args.pmkr) != 3 or any(v < 0 for v in args.pmkr):
                raise UsageError("--pmkr expects 3 non-negative integers K,R,N_NEXT")
            p = qcount.p_m_k_r(*args.pmkr, q)
            rows.append({"quantity": "pmkr", "args": ",".join(map(str, args.pmkr)),
                         "numerator": str(p.numerator), "denominator": str(p.denominator), "decimal": float(p)})
        if not rows:
            raise UsageError("counts needs at least one of --independent-tuples, --q-binomial, --rank-matrices, --pmkr")
        report["rows"] = rows
    elif cmd == "sweep-q":
        _check_degree(args, 0, M - 1, "beta_m")
        params["qs"] = list(args.qs)
        target = asymptotics.b_limit(args.dims, args.m)
        params["B_m"] = target
        rows, prev = [], None
        for q in args.qs:
            p = betti.betti_distribution(betti.ChainSpec(q, tuple(args.dims)), args.m).prob(target)
            row = _rational_row("q", q, p)
            row["monotone"] = prev is None or p > prev
            rows.append(row)
            prev = p
        report["rows"] = rows
        report["monotone"] = all(r["monotone"] for r in rows)
    return report


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    rows = report["rows"]
    buf = io.StringIO()
    if rows:
        fields = list(rows[0])
        for r in rows[1:]:
            fields.extend(k for k in r if k not in fields)
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return buf.getvalue()


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        report = execute(args)
    except UsageError as e:
        print(f"randchain: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except sampler.BudgetExceeded as e:
        print(f"randchain: error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as e:
        print(f"randchain: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    text = render(report, args.format)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
