"""Command-line interface.

Subcommands: sieve, kappa, expsum, wsum, classify, measure, moment,
verify <suite>, sweep <experiment>.  All output is JSON on stdout unless
--out/--format direct a report elsewhere.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import arcs as arcs_mod
from . import arithmetic, expsums, harness, moments
from .smooth import sieve_smooth, truncate


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2))


def _parse_p_list(text: str) -> tuple[float, ...]:
    return tuple(float(x) for x in text.split(","))


def _parse_r_rule(text: str) -> tuple[float | None, float | None]:
    """Either a fixed value like '4' or a rule 'P^0.25' giving R = P^eta."""
    if text.startswith(("P^", "p^")):
        return None, float(text[2:])
    return float(text), None


def _smooth_from_args(args) -> "tuple[int, object]":
    s = sieve_smooth(args.P, args.R)
    if getattr(args, "nu", None):
        s = truncate(s, args.nu)
    return s


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="weyllab")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("sieve", help="enumerate a smooth set")
    p.add_argument("--P", type=float, required=True)
    p.add_argument("--R", type=float, required=True)
    p.add_argument("--nu", type=float, default=None)
    p.add_argument("--count-only", action="store_true")

    p = sub.add_parser("kappa", help="kappa_k(q)^2 exactly and kappa_k(q)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=int, required=True)

    p = sub.add_parser("expsum", help="complete/reduced/convolved sums at a/q")
    p.add_argument("--which", choices=("S", "W", "scriptS"), required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--a", type=int, required=True)

    p = sub.add_parser("wsum", help="smooth Weyl sum g(alpha)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--P", type=float, required=True)
    p.add_argument("--R", type=float, required=True)
    p.add_argument("--nu", type=float, default=None)
    p.add_argument("--alpha", type=float, required=True)

    p = sub.add_parser("classify", help="locate alpha in the level-Q dissection")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--P", type=float, required=True)
    p.add_argument("--Q", type=float, required=True)

    p = sub.add_parser("measure", help="measure of the level-Q arcs")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--P", type=float, required=True)
    p.add_argument("--Q", type=float, required=True)
    p.add_argument("--narrow", action="store_true")

    p = sub.add_parser("moment", help="integral of |g|^u over an arc family")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--P", type=float, required=True)
    p.add_argument("--R", type=float, required=True)
    p.add_argument("--nu", type=float, default=None)
    p.add_argument("--u", type=float, required=True)
    p.add_argument("--arcs", choices=("full", "major", "narrow", "minor"), default="full")
    p.add_argument("--Q", type=float, default=None)
    p.add_argument("--grid-per-arc", type=int, default=64)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=harness.VERIFY_SUITES)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("sweep", help="run a parameter sweep experiment")
    p.add_argument("experiment", choices=harness.SWEEP_EXPERIMENTS)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--u", type=float, default=None)
    p.add_argument("--omega", type=float, default=None)
    p.add_argument("--omega-prime", type=float, default=None)
    p.add_argument("--Q", type=float, default=None)
    p.add_argument("--Q-list", type=str, default=None)
    p.add_argument("--P", type=str, required=True, help="comma-separated P values")
    p.add_argument("--R", type=str, required=True, help="fixed value or 'P^eta'")
    p.add_argument("--delta", type=float, default=1.5)
    p.add_argument("--epsilon", type=float, default=0.01)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--nu", type=float, default=2.0)
    p.add_argument("--variant", choices=("g", "gnu"), default="g")
    p.add_argument("--grid-per-arc", type=int, default=64)
    p.add_argument("--n-samples", type=int, default=1024)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    args = ap.parse_args(argv)

    if args.cmd == "sieve":
        s = _smooth_from_args(args)
        out = {"P": s.P, "R": s.R, "nu": s.nu, "cardinality": len(s)}
        if not args.count_only:
            out["elements"] = list(s.elements)
        _emit(out)

    elif args.cmd == "kappa":
        k2 = arithmetic.kappa_squared(args.k, arithmetic.factorize(args.q))
        _emit({"k": args.k, "q": args.q,
               "kappa_sq": f"{k2.numerator}/{k2.denominator}",
               "kappa_sq_float": float(k2),
               "kappa": float(k2) ** 0.5})

    elif args.cmd == "expsum":
        if args.which == "scriptS":
            val = expsums.script_S(args.k, args.q, args.a)
            _emit({"which": "scriptS", "k": args.k, "q": args.q, "a": args.a,
                   "value": val})
        else:
            fn = expsums.complete_sum_S if args.which == "S" else expsums.reduced_sum_W
            z = fn(args.k, args.q, args.a)
            _emit({"which": args.which, "k": args.k, "q": args.q, "a": args.a,
                   "re": z.real, "im": z.imag, "modulus": abs(z)})

    elif args.cmd == "wsum":
        s = _smooth_from_args(args)
        z = expsums.weyl_sum(args.k, args.alpha, s)
        _emit({"k": args.k, "P": s.P, "R": s.R, "nu": s.nu, "alpha": args.alpha,
               "cardinality": len(s), "re": z.real, "im": z.imag, "modulus": abs(z)})

    elif args.cmd == "classify":
        frac = arcs_mod.classify(args.alpha, args.k, args.P, args.Q)
        out = {"alpha": args.alpha, "k": args.k, "P": args.P, "Q": args.Q,
               "major": frac is not None}
        if frac is not None:
            out["a"], out["q"] = frac.a, frac.q
        _emit(out)

    elif args.cmd == "measure":
        mk = arcs_mod.narrow_arcs if args.narrow else arcs_mod.major_arcs
        iset = mk(args.k, args.P, args.Q)
        m = iset.measure()
        _emit({"k": args.k, "P": args.P, "Q": args.Q,
               "narrow": bool(args.narrow),
               "measure_exact": f"{m.numerator}/{m.denominator}",
               "measure_float": float(m),
               "intervals": len(iset.intervals)})

    elif args.cmd == "moment":
        s = _smooth_from_args(args)
        if args.arcs == "full":
            iset = arcs_mod.IntervalSet.full()
        else:
            if args.Q is None:
                ap.error("--Q is required for major/narrow/minor arcs")
            mk = {"major": arcs_mod.major_arcs, "narrow": arcs_mod.narrow_arcs,
                  "minor": arcs_mod.minor_arcs}[args.arcs]
            iset = mk(args.k, args.P, args.Q)
        res = moments.quad_moment(args.k, s, iset, args.u,
                                  min_samples=args.grid_per_arc)
        _emit({"k": args.k, "P": s.P, "R": s.R, "nu": s.nu, "u": args.u,
               "arcs": args.arcs, "Q": args.Q, "value": res.value,
               "samples": res.samples,
               "estimated_quadrature_error": res.estimated_quadrature_error})

    elif args.cmd == "verify":
        rep = harness.run_verify(args.suite, seed=args.seed)
        if args.out:
            rep.write(args.out, args.format)
        print(rep.to_json() if args.format == "json" else rep.to_csv(), end="")
        print()
        return 0 if rep.all_hold else 1

    elif args.cmd == "sweep":
        R, R_eta = _parse_r_rule(args.R)
        cfg = harness.ExperimentConfig(
            experiment=args.experiment, k=args.k, t=args.t, u=args.u,
            omega=args.omega, omega_prime=args.omega_prime, Q=args.Q,
            Q_list=_parse_p_list(args.Q_list) if args.Q_list else (),
            P_list=_parse_p_list(args.P), R=R, R_eta=R_eta,
            delta=args.delta, epsilon=args.epsilon, c=args.c, nu=args.nu,
            variant=args.variant, grid_per_arc=args.grid_per_arc,
            n_samples=args.n_samples, seed=args.seed)
        rep = harness.run_sweep(cfg)
        if args.out:
            rep.write(args.out, args.format)
        print(rep.to_json() if args.format == "json" else rep.to_csv(), end="")
        print()

    return 0


if __name__ == "__main__":
    sys.exit(main())
