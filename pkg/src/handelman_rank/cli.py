"""Command line front end.

Graphs are given either as a path to a graph file or as ``family:params``,
for example ``odd_circuit:5`` or ``random:8,0.4,7``.  Exit status is 0 on
success, 1 when a computation fails or a size guard trips, and 2 for usage
and parse errors.
"""
from __future__ import annotations

import argparse
import json
import multiprocessing
import os
import sys
from fractions import Fraction

from . import graphs as gr
from .graphs import WeightedGraph, WeightMode
from .handelman import (INF, HandelmanCertificate, handelman_rank, rank_bounds,
                        stable_set_bound, verify_certificate)
from .hierarchies import kp_rank, ls_operator_bound, sherali_adams_bound, zeta
from .maxcut import maxcut_handelman_bound, maxcut_rank
from .polynomials import stable_set_poly
from .rational_lp import LpSizeError
from .stable_set import (fractional_clique_cover, fractional_stability,
                         maximum_stable_set, max_cut_value)

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ----------------------------------------------------------------------------
# input

def _family_param(s: str):
    for conv in (int, Fraction):
        try:
            v = conv(s)
        except (ValueError, ZeroDivisionError):
            continue
        return float(v) if conv is Fraction else v
    raise UsageError(f"bad family parameter {s!r}")


def load_graph(spec: str, mode: str | None = None, seed: int | None = None) -> WeightedGraph:
    """Read a graph file, or build ``family:params`` from the generators.

    For the random families a missing trailing seed is taken from ``seed``.
    """
    if os.path.exists(spec):
        try:
            g = gr.read_graph(spec)
        except (OSError, UnicodeDecodeError) as exc:
            raise UsageError(f"cannot read {spec}: {exc}") from None
        except ValueError as exc:
            raise UsageError(f"{spec}: {exc}") from None
    elif ":" in spec or spec in gr.FAMILIES:
        family, _, params = spec.partition(":")
        args = [_family_param(p) for p in params.split(",") if p]
        if family in ("random", "random_bipartite") and len(args) == 2:
            args.append(0 if seed is None else seed)
        try:
            g = gr.generate(family, *args, mode=WeightMode.UNIT)
        except (ValueError, TypeError) as exc:
            raise UsageError(f"{spec}: {exc}") from None
    else:
        raise UsageError(f"no such graph file or family: {spec}")
    if mode:
        try:
            g = g.with_weights(g.node_weights, WeightMode(mode.upper()))
        except ValueError as exc:
            raise UsageError(f"--mode {mode}: {exc}") from None
    return g


# ----------------------------------------------------------------------------
# output

def _value(v, approx: bool):
    if v is None:
        return None
    if v == INF:
        return "INF"
    if isinstance(v, Fraction) and approx:
        return f"{v} (~{float(v):.6g})"
    return str(v)


class Emitter:
    def __init__(self, fmt: str, approx: bool, out=None):
        self.fmt, self.approx = fmt, approx
        self.out = out or sys.stdout

    def record(self, fields: dict, text_lines: list[str] | None = None):
        """Print one result; ``text_lines`` overrides the ``key = value`` text form."""
        if self.fmt == "json":
            print(json.dumps({k: self._json(v) for k, v in fields.items()}), file=self.out)
        elif self.fmt == "tsv":
            print("\t".join(fields), file=self.out)
            print("\t".join(self._flat(v) for v in fields.values()), file=self.out)
        else:
            for line in text_lines or [f"{k} = {self._flat(v)}" for k, v in fields.items()]:
                print(line, file=self.out)

    def _flat(self, v) -> str:
        if isinstance(v, (list, tuple)):
            return ",".join(self._flat(x) for x in v)
        if isinstance(v, dict):
            return json.dumps({str(k): self._json(x) for k, x in v.items()})
        r = _value(v, self.approx) if isinstance(v, (Fraction, float)) else v
        return "" if r is None else str(r)

    def _json(self, v):
        if isinstance(v, (Fraction, float)):
            s = "INF" if v == INF else str(v)
            return {"value": s, "approx": float(v)} if self.approx and v != INF else s
        if isinstance(v, (list, tuple)):
            return [self._json(x) for x in v]
        if isinstance(v, dict):
            return {str(k): self._json(x) for k, x in v.items()}
        return v


# ----------------------------------------------------------------------------
# commands

def _need_t(args, minimum: int = 1) -> int:
    if args.t is None:
        raise UsageError(f"{args.command} requires --t")
    if args.t < minimum:
        raise UsageError(f"--t must be at least {minimum}")
    return args.t


def cmd_stab(args, em):
    g = load_graph(args.graph, args.mode, args.seed)
    value, vs = maximum_stable_set(g)
    em.record({"alpha": value, "stable_set": list(vs)})


def cmd_fracstab(args, em):
    em.record({"alpha_star": fractional_stability(load_graph(args.graph, args.mode, args.seed))})


def cmd_cover(args, em):
    t = _need_t(args)
    cover = fractional_clique_cover(load_graph(args.graph, args.mode, args.seed), t)
    if args.format == "json":
        print(json.dumps({"t": t, "rho": str(cover.value), "cover": json.loads(cover.to_json())}))
        return
    lines = [f"rho_{t} = {_value(cover.value, args.approx)}"]
    lines += [f"  {_value(v, False)} * clique {{{','.join(map(str, c))}}}" for c, v in cover.multipliers.items()]
    em.record({"t": t, "rho_t": cover.value}, lines)


def cmd_handelman(args, em):
    t = _need_t(args)
    rep = stable_set_bound(load_graph(args.graph, args.mode, args.seed), t, certificate=False)
    em.record({"t": t, "p_han": rep.value, "seconds": round(rep.seconds, 3)},
              [f"p_han^({t}) = {_value(rep.value, args.approx)}"])


def cmd_rank(args, em):
    g = load_graph(args.graph, args.mode, args.seed)
    r = handelman_rank(g, tmax=args.tmax)
    lines = [f"rank = {r.rank}", f"alpha = {_value(r.alpha, args.approx)}"]
    lines += [f"p_han^({t}) = {_value(v, args.approx)}" for t, v in r.trace.items()]
    em.record({"rank": r.rank, "alpha": r.alpha, "trace": {t: v for t, v in r.trace.items()}}, lines)


def _certificate_doc(cert: HandelmanCertificate, g: WeightedGraph) -> dict:
    doc = json.loads(cert.to_json())
    doc["graph"] = gr.format_graph(g)
    return doc


def cmd_certificate(args, em):
    t = _need_t(args)
    g = load_graph(args.graph, args.mode, args.seed)
    rep = stable_set_bound(g, t)
    if rep.certificate is None:
        raise RuntimeError(f"lambda - p is not in H_{t} for any lambda (bound is INF)")
    if args.format == "json":
        print(json.dumps(_certificate_doc(rep.certificate, g), indent=1))
        return
    lines = [f"lambda = {rep.certificate.lam}", f"t = {t}", "lambda - p ="]
    lines += [f"  + {term}" for term in rep.certificate.product_form()]
    em.record({"lambda": rep.certificate.lam, "t": t}, lines)


def cmd_verify_cert(args, em):
    try:
        with open(args.cert, encoding="utf-8") as fh:
            text = fh.read()
        doc = json.loads(text)
        cert = HandelmanCertificate.from_json(text)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read certificate {args.cert}: {exc}") from None
    if args.graph:
        g = load_graph(args.graph, args.mode, args.seed)
    elif "graph" in doc:
        try:
            g = gr.parse_graph(doc["graph"])
        except ValueError as exc:
            raise UsageError(f"embedded graph: {exc}") from None
    else:
        raise UsageError("certificate has no embedded graph; pass one as the second argument")
    try:
        ok = verify_certificate(cert, stable_set_poly(g))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    em.record({"valid": ok, "lambda": cert.lam, "t": cert.t}, ["VALID" if ok else "INVALID"])
    return EXIT_OK if ok else EXIT_FAILURE


def cmd_bounds(args, em):
    b = rank_bounds(load_graph(args.graph, args.mode, args.seed))
    em.record({"lower": b.lower, "upper1": b.upper1, "upper2": b.upper2},
              [f"lower = {b.lower}", f"upper1 = {b.upper1 if b.upper1 is not None else 'n/a'}",
               f"upper2 = {b.upper2 if b.upper2 is not None else 'n/a'}"])


def cmd_sa(args, em):
    t = _need_t(args)
    rep = sherali_adams_bound(load_graph(args.graph, args.mode, args.seed), t)
    em.record({"t": t, "sa": rep.value}, [f"sa^({t}) = {_value(rep.value, args.approx)}"])


def cmd_ls1(args, em):
    rep = ls_operator_bound(load_graph(args.graph, args.mode, args.seed))
    em.record({"ls1": rep.value}, [f"ls^(1) = {_value(rep.value, args.approx)}"])


def cmd_zeta(args, em):
    if args.t is None or args.t < 0:
        raise UsageError("zeta requires --t >= 0")
    g = load_graph(args.graph, args.mode, args.seed).graph
    v = zeta(g, args.t)
    em.record({"t": args.t, "zeta": v, "kp_rank": kp_rank(g)},
              [f"zeta^({args.t}) = {_value(v, args.approx)}", f"rk_KP = {kp_rank(g)}"])


def cmd_maxcut(args, em):
    t = _need_t(args, 2)
    g = load_graph(args.graph, args.mode, args.seed)
    rep = maxcut_handelman_bound(g, t)
    em.record({"t": t, "bound": rep.value, "mc": max_cut_value(g)},
              [f"maxcut bound^({t}) = {_value(rep.value, args.approx)}",
               f"mc = {_value(max_cut_value(g), args.approx)}"])


def cmd_maxcut_rank(args, em):
    g = load_graph(args.graph, args.mode, args.seed)
    r, trace = maxcut_rank(g)
    lines = [f"maxcut rank = {r}"] + [f"bound^({t}) = {_value(v, args.approx)}" for t, v in trace.items()]
    em.record({"rank": r, "trace": trace}, lines)


# compare ---------------------------------------------------------------------

COMPARE_COLUMNS = ("graph", "t", "alpha", "alpha_star", "rho_t", "p_han_t", "sa_t", "ls1", "zeta_t")


def _compare_cell(job):
    """One (graph, t, column) value; runs in a worker process when --jobs > 1."""
    spec, mode, seed, t, column = job
    g = load_graph(spec, mode, seed)
    if column == "rho_t":
        return fractional_clique_cover(g, t).value
    if column == "p_han_t":
        return stable_set_bound(g, t, certificate=False).value
    if column == "sa_t":
        return sherali_adams_bound(g, t).value
    if column == "zeta_t":
        return zeta(g.graph, t)
    raise ValueError(column)


def cmd_compare(args, em):
    tmax = args.tmax or 3
    rows = []
    for spec in args.graphs:
        g = load_graph(spec, args.mode, args.seed)
        static = {"alpha": maximum_stable_set(g)[0], "alpha_star": fractional_stability(g),
                  "ls1": ls_operator_bound(g).value}
        for t in range(1, min(tmax, g.n) + 1):
            rows.append((spec, t, static))
    jobs = [(spec, args.mode, args.seed, t, col) for spec, t, _ in rows for col in ("rho_t", "p_han_t", "sa_t", "zeta_t")]
    results = _run_jobs(jobs, args.jobs, args.timeout)
    print("\t".join(COMPARE_COLUMNS))
    it = iter(results)
    for spec, t, static in rows:
        cells = {c: next(it) for c in ("rho_t", "p_han_t", "sa_t", "zeta_t")}
        line = [spec, str(t), static["alpha"], static["alpha_star"], cells["rho_t"], cells["p_han_t"],
                cells["sa_t"], static["ls1"], cells["zeta_t"]]
        print("\t".join(c if isinstance(c, str) else _value(c, args.approx) for c in line))


def _run_jobs(jobs, workers: int, timeout: float | None):
    """Results in input order; a cell past ``timeout`` seconds becomes ``TIMEOUT``."""
    if workers <= 1 and timeout is None:
        return [_compare_cell(j) for j in jobs]
    ctx = multiprocessing.get_context("spawn")
    pool = ctx.Pool(max(1, workers))
    try:
        pending = [pool.apply_async(_compare_cell, (j,)) for j in jobs]
        out = []
        for p in pending:
            try:
                out.append(p.get(timeout))
            except multiprocessing.TimeoutError:
                out.append("TIMEOUT")
        return out
    finally:
        pool.terminate()


def cmd_reproduce(args, em):
    from .reproduce import run_criteria
    results = run_criteria(args.only or None, seed=args.seed,
                           report=lambda r: print(r.line(), flush=True))
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} criteria passed")
    return EXIT_OK if passed == len(results) else EXIT_FAILURE


# ----------------------------------------------------------------------------

COMMANDS = {
    "stab": (cmd_stab, "maximum weight stable set"),
    "fracstab": (cmd_fracstab, "fractional stability number"),
    "cover": (cmd_cover, "fractional t-clique cover number (--t)"),
    "handelman": (cmd_handelman, "Handelman bound of order --t"),
    "rank": (cmd_rank, "Handelman rank with the bound trace"),
    "certificate": (cmd_certificate, "Handelman certificate of order --t"),
    "bounds": (cmd_bounds, "closed-form bounds on the rank"),
    "sa": (cmd_sa, "Sherali-Adams style bound of order --t"),
    "ls1": (cmd_ls1, "first Lovasz-Schrijver level"),
    "zeta": (cmd_zeta, "de Klerk-Pasechnik zeta of order --t"),
    "maxcut": (cmd_maxcut, "max-cut Handelman bound of order --t"),
    "maxcut-rank": (cmd_maxcut_rank, "max-cut Handelman rank"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--t", type=int, help="order of the relaxation")
    common.add_argument("--tmax", type=int, help="largest order to try")
    common.add_argument("--mode", type=str.upper, choices=["MIN", "MAX", "UNIT"],
                        help="re-derive edge weights with this mode")
    common.add_argument("--format", choices=["text", "json", "tsv"], default="text")
    common.add_argument("--seed", type=int, default=None, help="seed for random instances")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--approx", action="store_true", help="also show decimal approximations")

    p = argparse.ArgumentParser(prog="handelman-rank", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("graph", help="graph file or family:params")
    s = sub.add_parser("verify-cert", parents=[common], help="check a certificate JSON file")
    s.add_argument("cert")
    s.add_argument("graph", nargs="?", help="graph (defaults to the one embedded in the file)")
    s = sub.add_parser("compare", parents=[common], help="TSV table of all bounds for t = 1..--tmax")
    s.add_argument("graphs", nargs="+")
    s.add_argument("--timeout", type=float, default=None, help="seconds allowed per cell")
    s = sub.add_parser("reproduce-paper", parents=[common], help="run the full reproduction table")
    s.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    if args.command == "reproduce-paper" and args.seed is None:
        from .reproduce import DEFAULT_SEED
        args.seed = DEFAULT_SEED
    em = Emitter(args.format, args.approx)
    handler = {"verify-cert": cmd_verify_cert, "compare": cmd_compare,
               "reproduce-paper": cmd_reproduce}.get(args.command) or COMMANDS[args.command][0]
    try:
        code = handler(args, em)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (LpSizeError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK if code is None else code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
