"""Command-line front end: ``eqschub {mult,table,verify,schur,cache}``."""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence

from . import __version__
from .eqqring import (
    BasisFreenessError, PresentationRing, SchubertExpansion, atomic_write, build_ring,
    eqlr, eqlr_xmodel, pieri_rule, specialize, verify_relations,
)
from .factorial_schur import factorial_schur, generic, identity_suite, make_t, vanishing_table
from .partitions import GrassmannShape, Partition, format_partition, parse_partition, partition_key
from .report import IdentityFailure, Report

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3
ENGINES = ("h", "e", "xmodel")
SUITES = ("identities", "pieri", "engines", "assoc", "all")


class UsageError(ValueError):
    pass


# -- helpers -----------------------------------------------------------------

def _shape(args) -> GrassmannShape:
    try:
        return GrassmannShape(args.p, args.m)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _partition(text: str, shape: GrassmannShape | None = None, rows: int | None = None) -> Partition:
    try:
        lam = parse_partition(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if shape is not None and not shape.contains(lam):
        raise UsageError(f"partition {text!r} does not fit the {shape.p}x{shape.k} rectangle of {shape}")
    if rows is not None and len(lam) > rows:
        raise UsageError(f"partition {text!r} has more than {rows} parts")
    return lam


def cache_dir(args) -> Path | None:
    if getattr(args, "cache_dir", None):
        return Path(args.cache_dir)
    env = os.environ.get("EQSCHUB_CACHE_DIR")
    return Path(env) if env else None


def _ring_for(engine: str, shape: GrassmannShape, bound: int | None, cdir: Path | None) -> PresentationRing:
    model = "h" if engine == "h" else "e"
    try:
        return build_ring(model, shape, bound, cdir)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def compute(engine: str, ring: PresentationRing, lam: Partition, mu: Partition) -> SchubertExpansion:
    if engine == "xmodel":
        return eqlr_xmodel(lam, mu, ring)
    return eqlr(lam, mu, ring)


def _apply_flags(exp: SchubertExpansion, args) -> SchubertExpansion:
    if args.q0:
        exp = specialize(exp, "q0")
    if args.t0:
        exp = specialize(exp, "T0")
    return exp


def _dump(doc) -> str:
    return json.dumps(doc, indent=1, ensure_ascii=False) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        path = Path(out)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            atomic_write(path, text)
        except OSError as exc:
            raise OSError(f"cannot write {path}: {exc.strerror or exc}") from None
    else:
        sys.stdout.write(text)


# -- commands ----------------------------------------------------------------

def cmd_mult(args) -> int:
    shape = _shape(args)
    lam, mu = _partition(args.lam, shape), _partition(args.mu, shape)
    cdir = cache_dir(args)
    ring = _ring_for(args.engine, shape, args.degree_bound, cdir)
    exp = _apply_flags(compute(args.engine, ring, lam, mu), args)
    if cdir is not None:
        ring.save(cdir)
    if args.format == "json":
        doc = {"p": shape.p, "m": shape.m, "engine": args.engine,
               "lambda": format_partition(lam), "mu": format_partition(mu), "terms": exp.to_json()}
        _emit(_dump(doc), args.out)
    else:
        _emit(exp.render() + "\n", args.out)
    return EXIT_OK


def _table_rows(job):
    engine, p, m, bound, lams, basis, q0, t0 = job
    shape = GrassmannShape(p, m)
    ring = build_ring("h" if engine == "h" else "e", shape, bound)
    flags = argparse.Namespace(q0=q0, t0=t0)
    rows = []
    for lam in lams:
        for mu in basis:
            exp = _apply_flags(compute(engine, ring, lam, mu), flags)
            rows.append((format_partition(lam), format_partition(mu), exp.to_json()))
    return rows


def table_document(shape: GrassmannShape, engine: str, q0: bool = False, t0: bool = False,
                   jobs: int = 1, degree_bound: int | None = None,
                   ring: PresentationRing | None = None) -> dict:
    basis = sorted(_ring_for(engine, shape, degree_bound, None).basis if ring is None else ring.basis,
                   key=partition_key)
    entries = []
    if jobs > 1 and ring is None:
        chunks = [basis[i::jobs] for i in range(jobs)]
        work = [(engine, shape.p, shape.m, degree_bound, c, basis, q0, t0) for c in chunks if c]
        with ProcessPoolExecutor(max_workers=len(work)) as pool:
            for rows in pool.map(_table_rows, work):
                entries.extend(rows)
    else:
        ring = _ring_for(engine, shape, degree_bound, None) if ring is None else ring
        flags = argparse.Namespace(q0=q0, t0=t0)
        for lam in basis:
            for mu in basis:
                exp = _apply_flags(compute(engine, ring, lam, mu), flags)
                entries.append((format_partition(lam), format_partition(mu), exp.to_json()))
    order = {format_partition(b): partition_key(b) for b in basis}
    entries.sort(key=lambda e: (order[e[0]], order[e[1]]))
    special = "q0+T0" if q0 and t0 else "q0" if q0 else "T0" if t0 else None
    return {
        "format": "eqschub-table",
        "p": shape.p,
        "m": shape.m,
        "engine": engine,
        "specialization": special,
        "entries": [{"lambda": l, "mu": u, "terms": t} for l, u, t in entries],
        "metadata": {"version": __version__},
    }


def cmd_table(args) -> int:
    shape = _shape(args)
    started = time.perf_counter()
    cdir = cache_dir(args)
    ring = None
    if args.jobs <= 1 or cdir is not None:
        ring = _ring_for(args.engine, shape, args.degree_bound, cdir)
    doc = table_document(shape, args.engine, args.q0, args.t0, args.jobs, args.degree_bound, ring)
    if ring is not None and cdir is not None:
        ring.save(cdir)
    if args.stamp:
        doc["metadata"]["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
        doc["metadata"]["runtime_seconds"] = round(time.perf_counter() - started, 3)
    if args.format == "text":
        lines = [f"[{e['lambda']}] * [{e['mu']}] = {SchubertExpansion.from_json(e['terms']).render()}"
                 for e in doc["entries"]]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(_dump(doc), args.out)
    return EXIT_OK


def suite_identities(shape: GrassmannShape) -> Report:
    rep = Report(f"identities {shape}")
    rep.extend(identity_suite(shape.p, shape.m))
    rep.extend(vanishing_table(shape))
    a = generic()
    for lam in build_ring("e", shape).basis:
        forms = {mode: factorial_schur(lam, a, shape.p, mode) for mode in ("ratio", "jt-h", "jt-e")}
        rep.record("three constructions agree", f"lambda={tuple(lam)}",
                   forms["ratio"] == forms["jt-h"] == forms["jt-e"])
    rep.extend(verify_relations(shape))
    return rep


def suite_pieri(shape: GrassmannShape) -> Report:
    rep = Report(f"pieri {shape}")
    rings = {"h": build_ring("h", shape), "e": build_ring("e", shape)}
    one = Partition((1,))
    for lam in rings["e"].basis:
        want = pieri_rule(lam, shape)
        got = {"h": eqlr(lam, one, rings["h"]), "e": eqlr(lam, one, rings["e"]),
               "xmodel": eqlr_xmodel(lam, one, rings["e"])}
        bad = [k for k, v in got.items() if v != want]
        rep.record("pieri rule", f"{shape}, lambda={tuple(lam)}", not bad,
                   "; ".join(f"{k}: {got[k]} != {want}" for k in bad))
    return rep


def suite_engines(shape: GrassmannShape) -> Report:
    rep = Report(f"engines {shape}")
    rh, re_ = build_ring("h", shape), build_ring("e", shape)
    for lam in re_.basis:
        for mu in re_.basis:
            a, b, c = eqlr(lam, mu, rh), eqlr(lam, mu, re_), eqlr_xmodel(lam, mu, re_)
            rep.record("h = e = xmodel", f"{shape}, lambda={tuple(lam)}, mu={tuple(mu)}",
                       a == b == c, f"h: {a}; e: {b}; xmodel: {c}")
    return rep


def suite_assoc(shape: GrassmannShape, triples: int = 50, seed: int = 0) -> Report:
    rep = Report(f"assoc {shape}")
    ring, other = build_ring("e", shape), build_ring("h", shape)
    basis = ring.basis
    for lam in basis:
        for mu in basis:
            # reversed factors in the other model, bypassing the product cache
            swapped = other.schubert_coords(other.giambelli(mu) * other.giambelli(lam))
            rep.record("commutativity", f"{shape}, lambda={tuple(lam)}, mu={tuple(mu)}",
                       eqlr(lam, mu, ring) == swapped)
    rng = random.Random(seed)
    for _ in range(triples):
        lam, mu, nu = (rng.choice(basis) for _ in range(3))
        left = ring.multiply(eqlr(lam, mu, ring), SchubertExpansion.basis(nu))
        right = ring.multiply(SchubertExpansion.basis(lam), eqlr(mu, nu, ring))
        rep.record("associativity", f"{shape}, ({tuple(lam)}, {tuple(mu)}, {tuple(nu)})",
                   left == right, f"{left} != {right}")
    return rep


def run_suite(name: str, shape: GrassmannShape, triples: int = 50, seed: int = 0) -> Report:
    if name == "identities":
        return suite_identities(shape)
    if name == "pieri":
        return suite_pieri(shape)
    if name == "engines":
        return suite_engines(shape)
    if name == "assoc":
        return suite_assoc(shape, triples, seed)
    if name == "all":
        rep = Report(f"all {shape}")
        for sub in SUITES[:-1]:
            rep.extend(run_suite(sub, shape, triples, seed))
        return rep
    raise UsageError(f"unknown suite {name!r}")


def cmd_verify(args) -> int:
    shape = _shape(args)
    try:
        rep = run_suite(args.suite, shape, args.triples, args.seed)
        summary = rep.summary()
        summary.update({"p": shape.p, "m": shape.m, "suite": args.suite})
        code = EXIT_OK
    except IdentityFailure as exc:
        summary = {"p": shape.p, "m": shape.m, "suite": args.suite, "passed": False,
                   "failure": {"identity": exc.name, "instance": exc.instance, "message": str(exc)}}
        code = EXIT_VERIFY
    if args.format == "json":
        _emit(_dump(summary), args.out)
    elif summary["passed"]:
        _emit(f"PASS {args.suite} {shape}: {summary['checks']} checks\n", args.out)
    else:
        _emit(f"FAIL {args.suite} {shape}: {summary['failure']['message']}\n", args.out)
    return code


def cmd_schur(args) -> int:
    if args.p < 1:
        raise UsageError("p must be positive")
    lam = _partition(args.lam, rows=args.p)
    seq = args.seq
    if seq == "generic":
        a = generic()
    elif seq.startswith("t:"):
        try:
            m = int(seq[2:])
        except ValueError:
            raise UsageError(f"malformed sequence {seq!r}; use generic or t:M") from None
        if m <= args.p:
            raise UsageError(f"t:M needs M > p, got {seq!r}")
        a = make_t(GrassmannShape(args.p, m))
    else:
        raise UsageError(f"malformed sequence {seq!r}; use generic or t:M")
    f = factorial_schur(lam, a, args.p, args.mode)
    if args.format == "json":
        _emit(_dump({"p": args.p, "lambda": format_partition(lam), "mode": args.mode,
                     "sequence": seq, "polynomial": str(f)}), args.out)
    else:
        _emit(f"{f}\n", args.out)
    return EXIT_OK


def cmd_cache(args) -> int:
    cdir = cache_dir(args) or Path("cache")
    if args.action == "build":
        shape = _shape(args)
        for model in ("h", "e") if args.engine == "all" else ("h" if args.engine == "h" else "e",):
            ring = _ring_for(model, shape, args.degree_bound, cdir)
            ring.precompute()
            print(ring.save(cdir))
    elif args.action == "list":
        for path in sorted(cdir.glob("ring_*.json")) if cdir.is_dir() else []:
            doc = json.loads(path.read_text())
            print(f"{path.name}\tversion={doc.get('version')}\tmonomials={len(doc.get('normal_forms', []))}")
    elif args.action == "clear":
        for path in sorted(cdir.glob("ring_*.json")) if cdir.is_dir() else []:
            path.unlink()
            print(f"removed {path}")
    return EXIT_OK


# -- argument parsing --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="eqschub",
                                  description="Equivariant quantum Schubert calculus on Gr(p, m).")
    top.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = top.add_subparsers(dest="command", required=True)

    def common(sp, shape=True, out=True):
        if shape:
            sp.add_argument("--p", type=int, required=True)
            sp.add_argument("--m", type=int, required=True)
        sp.add_argument("--format", choices=("text", "json"), default="text")
        if out:
            sp.add_argument("--out", help="write to this file (atomically) instead of stdout")

    def ring_flags(sp):
        sp.add_argument("--engine", choices=ENGINES, default="e")
        sp.add_argument("--degree-bound", type=int, default=None)
        sp.add_argument("--cache-dir", default=None, help="overrides $EQSCHUB_CACHE_DIR")
        sp.add_argument("--q0", action="store_true", help="keep only the q^0 layer")
        sp.add_argument("--t0", action="store_true", help="set every T_i to zero")

    sp = sub.add_parser("mult", help="expand sigma_lambda o sigma_mu")
    common(sp)
    ring_flags(sp)
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--mu", required=True)
    sp.set_defaults(func=cmd_mult)

    sp = sub.add_parser("table", help="full multiplication table")
    common(sp)
    ring_flags(sp)
    sp.set_defaults(format="json")
    sp.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    sp.add_argument("--stamp", action="store_true", help="record timestamp and runtime in metadata")
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("verify", help="run a verification suite")
    common(sp)
    sp.add_argument("--suite", choices=SUITES, default="all")
    sp.add_argument("--triples", type=int, default=50, help="random associativity triples")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("schur", help="print a factorial Schur polynomial")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--lambda", dest="lam", default="0")
    sp.add_argument("--mode", choices=("ratio", "jt-h", "jt-e"), default="jt-h")
    sp.add_argument("--seq", default="generic", help="generic or t:M")
    common(sp, shape=False)
    sp.set_defaults(func=cmd_schur)

    sp = sub.add_parser("cache", help="build, list or clear normal-form caches")
    sp.add_argument("action", choices=("build", "list", "clear"))
    sp.add_argument("--p", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--engine", choices=("h", "e", "all"), default="all")
    sp.add_argument("--degree-bound", type=int, default=None)
    sp.add_argument("--cache-dir", default=None, help="overrides $EQSCHUB_CACHE_DIR (default ./cache)")
    sp.set_defaults(func=cmd_cache)
    return top


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "cache" and args.action == "build" and (args.p is None or args.m is None):
        parser.error("cache build needs --p and --m")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"eqschub: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"eqschub: error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ArithmeticError, BasisFreenessError, IdentityFailure) as exc:
        print(f"eqschub: internal consistency error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
