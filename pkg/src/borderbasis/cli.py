"""Command line interface; every subcommand prints one JSON document."""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import List, Optional

from .border_basis import (InadmissibleOrderIdeal, bbasis_classic, bbasis_general, degree_signature,
                           degrevlex_selector, fixed_selector, verify_border_basis)
from .hardness import gen_fnk, k_clique_decide, load_edge_list
from .io import (ParseError, SystemFile, border_basis_json, default_names, load_points, load_preference,
                 load_system, loads_order_ideal, monomial_key, order_ideal_json, vanishing_ideal,
                 VanishingCapExceeded, format_polynomial)
from .optimize import Preference, count_order_ideals, enumerate_order_ideals, min_cut_closure, optimize_preference
from .poly import Universe
from .polytope import build_model, export_lp
from .stable_span import DEFAULT_DEGREE_CAP, DegreeCapExceeded, l_stable_span, terminal_span

SCHEMA = 1


class PreconditionError(Exception):
    pass


def _system(args) -> SystemFile:
    if args.system:
        return load_system(args.system)
    if getattr(args, "points", None):
        pts = load_points(args.points)
        return SystemFile(default_names(pts.n), vanishing_ideal(pts, args.degree_cap))
    raise PreconditionError("an input system is required (--system or --points)")


def _canonical(sys_: SystemFile, args):
    span = terminal_span(sys_.polynomials, sys_.nvars, args.degree_cap)
    return span, span.canonical()


def _preference(args, names, monomials) -> Preference:
    if getattr(args, "pref", None) and getattr(args, "random_pref", None) is not None:
        raise PreconditionError("--pref and --random-pref are mutually exclusive")
    if getattr(args, "pref", None):
        return Preference(load_preference(args.pref, names))
    if getattr(args, "random_pref", None) is not None:
        return Preference.random(monomials, args.random_pref)
    return Preference()


def _pref_json(c: Preference, names) -> dict:
    return {monomial_key(m, names): w for m, w in sorted(c.weights.items())}


def cmd_bbasis(args):
    s = _system(args)
    if args.classic:
        g = bbasis_classic(s.polynomials, degree_cap=args.degree_cap, nvars=s.nvars)
        u = terminal_span(s.polynomials, s.nvars, args.degree_cap).universe
    else:
        span, cf = _canonical(s, args)
        if args.order_ideal:
            sel = fixed_selector(loads_order_ideal(Path(args.order_ideal).read_text(), s.variables))
        elif args.pref or args.random_pref is not None:
            c = _preference(args, s.variables, [m for i in range(cf.d) for m in cf.universe.block(i)])
            sel = lambda cf_: optimize_preference(cf_, c)[0]
        else:
            sel = degrevlex_selector
        g = bbasis_general(s.polynomials, sel, args.degree_cap, s.nvars)
        u = span.universe
    out = border_basis_json(g, s.variables)
    out["verified"] = bool(verify_border_basis(g, s.polynomials, u))
    out["universe_degree"] = u.d
    return out


def cmd_span(args):
    s = _system(args)
    d = args.degree if args.degree is not None else max(p.degree() for p in s.polynomials)
    span = l_stable_span(s.polynomials, Universe(s.nvars, d))
    return {
        "universe_degree": d,
        "dimension": len(span),
        "covers_top_degree": span.covers_top_degree(),
        "polynomials": [format_polynomial(p, s.variables) for p in span.polynomials()],
    }


def cmd_signature(args):
    s = _system(args)
    _, cf = _canonical(s, args)
    sig = degree_signature(cf)
    return {"signature": list(sig), "quotient_dimension": sig.total, "universe_degree": cf.d}


def cmd_enumerate(args):
    s = _system(args)
    _, cf = _canonical(s, args)
    en = enumerate_order_ideals(cf, args.limit, relaxed=args.relaxed)
    ideals = [order_ideal_json(o, s.variables) for o in en]
    return {"count": en.count, "truncated": en.truncated, "relaxed": args.relaxed, "order_ideals": ideals}


def cmd_count(args):
    s = _system(args)
    _, cf = _canonical(s, args)
    res = count_order_ideals(cf, args.time_cap_seconds, args.threads, relaxed=args.relaxed)
    return {"count": res.count, "complete": res.complete, "relaxed": args.relaxed,
            "signature": list(degree_signature(cf))}


def cmd_optimize(args):
    s = _system(args)
    _, cf = _canonical(s, args)
    c = _preference(args, s.variables, [m for i in range(cf.d) for m in cf.universe.block(i)])
    o, score = optimize_preference(cf, c)
    return {"score": score, "order_ideal": order_ideal_json(o, s.variables),
            "preference": _pref_json(c, s.variables)}


def cmd_lp_export(args):
    s = _system(args)
    _, cf = _canonical(s, args)
    model = build_model(cf)
    c = _preference(args, s.variables, model.variables)
    budget = None if args.subset_budget < 0 else args.subset_budget
    text = export_lp(model, c.weights, budget)
    if args.lp_out:
        Path(args.lp_out).write_text(text)
    else:
        sys.stdout.write(text)
    return {"variables": len(model.variables), "lp_file": args.lp_out,
            "relaxation": "RELAXATION" in text}


def cmd_closure(args):
    if args.system:
        s = _system(args)
        _, cf = _canonical(s, args)
        names, u = s.variables, cf.universe
    else:
        if args.nvars is None or args.degree is None:
            raise PreconditionError("closure needs --system or both --nvars and --degree")
        names, u = default_names(args.nvars), Universe(args.nvars, args.degree)
    c = _preference(args, names, list(u))
    o, score = min_cut_closure(u, c)
    return {"score": score, "order_ideal": order_ideal_json(o, names), "universe_degree": u.d}


def cmd_gen_clique(args):
    try:
        polys = gen_fnk(args.n, args.k)
    except ValueError as e:
        raise PreconditionError(str(e)) from None
    s = SystemFile(default_names(args.n), polys)
    if args.sys_out:
        Path(args.sys_out).write_text(s.dumps())
    return {"n": args.n, "k": args.k, "variables": s.variables,
            "polynomials": [format_polynomial(p, s.variables) for p in polys]}


def cmd_clique_decide(args):
    try:
        g = load_edge_list(args.graph)
    except ValueError as e:
        raise ParseError(str(e)) from None
    if not 1 <= args.k <= g.n:
        raise PreconditionError(f"need 1 <= k <= {g.n}")
    res = k_clique_decide(g, args.k)
    return {"clique": res.clique, "score": res.score,
            "vertices": [v + 1 for v in res.vertices()] if res.clique else []}


def cmd_vanish(args):
    pts = load_points(args.points)
    polys = vanishing_ideal(pts, args.degree_cap)
    s = SystemFile(default_names(pts.n), polys)
    if args.sys_out:
        Path(args.sys_out).write_text(s.dumps())
    return {"points": len(pts), "variables": s.variables,
            "polynomials": [format_polynomial(p, s.variables) for p in polys]}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="borderbasis", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, system=True):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        sp.add_argument("--out", help="write the JSON result here instead of stdout")
        sp.add_argument("--degree-cap", type=int, default=DEFAULT_DEGREE_CAP)
        if system:
            g = sp.add_mutually_exclusive_group()
            g.add_argument("--system", help="system file ('vars ...' header, one polynomial per line)")
            g.add_argument("--points", help="point file; its vanishing ideal is used as the system")
        return sp

    def add_pref(sp):
        sp.add_argument("--pref", help="preference JSON: monomial string -> integer")
        sp.add_argument("--random-pref", type=int, metavar="SEED",
                        help="uniform random integer weights in [-10, 10]")

    sp = add("bbasis", cmd_bbasis, "border basis for the degrevlex, a given or an optimal order ideal")
    sp.add_argument("--classic", action="store_true", help="classical algorithm with degrevlex")
    sp.add_argument("--order-ideal", help="JSON list of monomial strings")
    add_pref(sp)
    sp = add("span", cmd_span, "L-stable span in a fixed universe")
    sp.add_argument("--degree", type=int)
    add("signature", cmd_signature, "degree signature of the ideal")
    sp = add("enumerate", cmd_enumerate, "list the admissible degree-compatible order ideals")
    sp.add_argument("--limit", type=int)
    sp.add_argument("--relaxed", action="store_true",
                    help="drop the rank condition (divisibility and sizes only)")
    sp = add("count", cmd_count, "count the admissible degree-compatible order ideals")
    sp.add_argument("--time-cap-seconds", type=float)
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--relaxed", action="store_true",
                    help="drop the rank condition (divisibility and sizes only)")
    sp = add("optimize", cmd_optimize, "maximum-score admissible order ideal")
    add_pref(sp)
    sp = add("lp-export", cmd_lp_export, "order ideal polytope as a CPLEX LP file")
    sp.add_argument("--lp-out", help="LP file path (default: stdout, JSON summary suppressed)")
    sp.add_argument("--subset-budget", type=int, default=50,
                    help="rank rows per degree; negative for all")
    add_pref(sp)
    sp = add("closure", cmd_closure, "unconstrained maximum-weight order ideal by min cut")
    sp.add_argument("--nvars", type=int)
    sp.add_argument("--degree", type=int)
    add_pref(sp)
    sp = add("gen-clique", cmd_gen_clique, "the clique system F_{n,k}", system=False)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--sys-out", help="also write a system file")
    sp = add("clique-decide", cmd_clique_decide, "k-clique test via order ideal optimization", system=False)
    sp.add_argument("--graph", required=True, help="edge list: 'n m' then m lines 'u v' (1-based)")
    sp.add_argument("--k", type=int, required=True)
    sp = add("vanish", cmd_vanish, "generators of the vanishing ideal of a point file", system=False)
    sp.add_argument("--points", required=True)
    sp.add_argument("--sys-out", help="also write a system file")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        result = args.fn(args)
    except (ParseError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except InadmissibleOrderIdeal as e:
        print(f"inadmissible order ideal: {e}", file=sys.stderr)
        return 3
    except (PreconditionError, DegreeCapExceeded, VanishingCapExceeded, ValueError) as e:
        print(f"precondition violated: {e}", file=sys.stderr)
        return 2
    doc = {"schema": SCHEMA, "command": args.command, **result,
           "timings": {"seconds": round(time.perf_counter() - start, 6)}}
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    elif not (args.command == "lp-export" and not args.lp_out):
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
