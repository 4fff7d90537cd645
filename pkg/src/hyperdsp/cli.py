"""Command line: instance generation, static solving, dynamic replay, benchmarks
and the email-network closeness experiment.

Exit codes: 0 ok, 1 usage, 2 verification mismatch, 3 I/O or unreadable input.
"""

from __future__ import annotations

import argparse
import csv
import logging
import math
import statistics
import sys
import time
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence

from .centrality import distance_profile, most_important_actor
from .core import ChangeEvent, Hypergraph, HypergraphError, read_changes, read_hypergraph, \
    write_changes, write_hypergraph
from .dr_dsp import DRDSP
from .dynamic import DynamicSolver
from .genio import ChangeGenerator, ChangeModelParams, GeneratorError, GeoParams, corner_vertex, \
    emails_to_changes, parse_email_log, random_change_sequence, random_geometric, read_coords, \
    write_coords
from .he_dsp import HEDSP
from .oracle import certify
from .statics import dr_sp, gallo_sssp

log = logging.getLogger("hyperdsp")

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_IO = 0, 1, 2, 3
SOLVERS = {"he": HEDSP, "dr": DRDSP}
RUN_COLUMNS = ["event_id", "kind", "edge", "delta", "elapsed_ns", "scans"]
BENCH_COLUMNS = ["mode", "algo", "seed", "mean_ns_per_event"]


class UsageError(Exception):
    pass


class VerificationError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- replay

def replay(
    solver: DynamicSolver,
    changes: Iterable[ChangeEvent],
    verify_every: int = 0,
) -> Iterator[dict]:
    """Apply ``changes`` one at a time, yielding one run-CSV row per event.

    Only ``solver.apply`` is timed.  With ``verify_every`` = k > 0 the state is
    compared with a from-scratch solve (and certified) after every k-th event;
    a mismatch raises :class:`VerificationError`.
    """
    for i, c in enumerate(changes):
        t0 = time.perf_counter_ns()
        solver.apply(c)
        elapsed = time.perf_counter_ns() - t0
        ctr = solver.counters
        yield {"event_id": i, "kind": c.kind.value, "edge": c.edge, "delta": ctr.delta,
               "elapsed_ns": elapsed, "scans": ctr.scans}
        if verify_every and (i + 1) % verify_every == 0:
            check_state(solver, i)


def check_state(solver: DynamicSolver, event_id: int = -1) -> None:
    ref = dr_sp(solver.h, solver.source)
    if ref.dist != solver.state.dist:
        bad = [v for v, (a, b) in enumerate(zip(ref.dist, solver.state.dist)) if a != b]
        raise VerificationError(f"event {event_id}: distances differ at vertices {bad[:10]}")
    cert = certify(solver.h, solver.state)
    if not cert.ok:
        raise VerificationError(f"event {event_id}: {cert}")


def online_changes(gen: ChangeGenerator, solver: DynamicSolver, count: int) -> Iterator[ChangeEvent]:
    """Draw each change against the solver's current state (needed for targeted mode)."""
    for _ in range(count):
        yield gen.next_change(solver.state)


def bench_instance(
    h: Hypergraph,
    source: int,
    params: ChangeModelParams,
    algos: Sequence[str] = ("he", "dr"),
) -> dict[str, float]:
    """Mean ns per event of each algorithm replaying the same change stream.

    Random-mode streams are drawn up front and shared; targeted streams are
    drawn online (they depend on the evolving shortest hyperpaths).
    """
    pre = random_change_sequence(h, params) if params.mode == "random" else None
    out = {}
    for algo in algos:
        work = h.copy()
        solver = SOLVERS[algo](work, source)
        if pre is not None:
            stream = pre
        else:
            stream = online_changes(ChangeGenerator(params, work), solver, params.length)
        total = sum(row["elapsed_ns"] for row in replay(solver, stream))
        out[algo] = total / params.length if params.length else 0.0
    return out


def bench(
    geo: GeoParams,
    seeds: Sequence[int],
    events: int,
    modes: Sequence[str] = ("random", "targeted"),
    algos: Sequence[str] = ("he", "dr"),
    **change_kw,
) -> list[dict]:
    """One row per (seed, mode, algo); the instance and change stream share the seed."""
    rows = []
    for seed in seeds:
        h, coords = random_geometric(GeoParams(geo.n, geo.a, geo.r, geo.h, seed))
        if not h.n:
            raise UsageError("benchmark needs at least one vertex")
        s = corner_vertex(coords)
        for mode in modes:
            params = ChangeModelParams(length=events, mode=mode, seed=seed, **change_kw)
            for algo, mean in bench_instance(h, s, params, algos).items():
                rows.append({"mode": mode, "algo": algo, "seed": seed, "mean_ns_per_event": mean})
            log.info("seed %d %s done", seed, mode)
    return rows


def summarize(rows: Sequence[dict]) -> list[dict]:
    groups: dict = {}
    for r in rows:
        groups.setdefault((r["mode"], r["algo"]), []).append(r["mean_ns_per_event"])
    return [{"mode": m, "algo": a, "seed": "mean", "mean_ns_per_event": statistics.fmean(v)}
            for (m, a), v in groups.items()]


GNUPLOT = """\
# per-event time by mode and algorithm; data: {csv}
set datafile separator ","
set style data histograms
set style fill solid 0.8
set ylabel "mean ns per event"
set key top left
set xtics ("random" 0, "targeted" 1)
plot "< grep ',mean,' {csv} | grep ',he,'" using 4 title "HE-DSP", \\
     "< grep ',mean,' {csv} | grep ',dr,'" using 4 title "DR-DSP"
"""


# ---------------------------------------------------------------- helpers

def _open_out(path: Optional[str]):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", newline=""), True


def _write_csv(path: Optional[str], columns: Sequence[str], rows: Iterable[dict]) -> None:
    f, close = _open_out(path)
    try:
        w = csv.DictWriter(f, fieldnames=columns, lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow(row)
            if not close:
                f.flush()
    finally:
        if close:
            f.close()


def _load_hypergraph(path: str) -> Hypergraph:
    with open(path) as f:
        return read_hypergraph(f)


def _default_source(args, h: Hypergraph) -> int:
    if args.source is not None:
        if not 0 <= args.source < h.n:
            raise UsageError(f"--source {args.source} outside 0..{h.n - 1}")
        return args.source
    coords = args.coords
    if coords is None:
        guess = Path(args.instance).with_suffix(".xy")
        coords = str(guess) if guess.exists() else None
    if coords is None:
        return 0
    with open(coords) as f:
        xy = read_coords(f)
    if len(xy) != h.n:
        raise HypergraphError(f"{coords}: {len(xy)} coordinates for {h.n} vertices")
    return corner_vertex(xy)


def _parse_verify(text: str) -> int:
    value = text.split("=", 1)[1] if text.startswith("every=") else text
    try:
        k = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected every=K, got {text!r}")
    if k < 1:
        raise argparse.ArgumentTypeError("verification interval must be positive")
    return k


def _change_params(args, length: int) -> ChangeModelParams:
    return ChangeModelParams(length=length, p_insert=args.p_insert, p_delete=args.p_delete,
                             w_min=args.w_min, w_max=args.w_max, mode=args.mode, seed=args.seed)


# ---------------------------------------------------------------- commands

def cmd_generate(args) -> int:
    geo = GeoParams(args.n, args.a, args.r, args.h, args.seed)
    h, coords = random_geometric(geo)
    prefix = Path(args.out)
    if prefix.parent != Path("."):
        prefix.parent.mkdir(parents=True, exist_ok=True)
    with open(f"{prefix}.hg", "w") as f:
        write_hypergraph(h, f)
    with open(f"{prefix}.xy", "w") as f:
        write_coords(coords, f)
    extra = ""
    if args.changes:
        params = ChangeModelParams(length=args.changes, p_insert=args.p_insert, p_delete=args.p_delete,
                                   w_min=args.w_min, w_max=args.w_max, mode="random", seed=args.seed)
        seq = random_change_sequence(h, params) if h.m else []
        with open(f"{prefix}.chg", "w") as f:
            write_changes(seq, f)
        extra = f" changes={len(seq)}"
    total = math.fsum(h.weights)
    print(f"wrote {prefix}.hg n={h.n} edges={h.m} total_weight={total:.6f} phi={h.phi()}{extra}")
    return EXIT_OK


def cmd_sssp(args) -> int:
    h = _load_hypergraph(args.instance)
    s = _default_source(args, h)
    st = gallo_sssp(h, s) if args.algo == "he" else dr_sp(h, s)
    f, close = _open_out(args.out)
    try:
        f.write("\n".join(st.dump()) + ("\n" if h.n else ""))
    finally:
        if close:
            f.close()
    return EXIT_OK


def cmd_run(args) -> int:
    h = _load_hypergraph(args.instance)
    s = _default_source(args, h)
    solver = SOLVERS[args.algo](h, s)
    if args.changes:
        with open(args.changes) as f:
            stream = read_changes(f)
        if args.events is not None:
            stream = stream[:args.events]
    else:
        events = 1000 if args.events is None else args.events
        if events and not h.m:
            raise UsageError("instance has no hyperedges to change")
        gen = ChangeGenerator(_change_params(args, events), h)
        stream = online_changes(gen, solver, events)
    _write_csv(args.out, RUN_COLUMNS, replay(solver, stream, args.verify or 0))
    if args.dump_state:
        with open(args.dump_state, "w") as f:
            f.write("\n".join(solver.state.dump()) + ("\n" if h.n else ""))
    return EXIT_OK


def cmd_bench(args) -> int:
    geo = GeoParams(args.n, args.a, args.r, args.h, 0)
    seeds = args.seed_list if args.seed_list else list(range(args.seed, args.seed + args.repeats))
    rows = bench(geo, seeds, args.events, args.modes, args.algos,
                 p_insert=args.p_insert, p_delete=args.p_delete, w_min=args.w_min, w_max=args.w_max)
    _write_csv(args.out, BENCH_COLUMNS, rows + summarize(rows))
    if args.gnuplot:
        with open(args.gnuplot, "w") as f:
            f.write(GNUPLOT.format(csv=args.out or "bench.csv"))
    return EXIT_OK


def cmd_enron(args) -> int:
    with open(args.log) as f:
        try:
            events, actors = parse_email_log(f, strict=args.strict)
        except HypergraphError:
            raise
        except ValueError as exc:
            raise HypergraphError(f"{args.log}: {exc}") from exc
    h, changes = emails_to_changes(events, alpha=args.alpha)
    final = h.copy()
    for c in changes:
        final.apply(c)
    ranking = most_important_actor(final)
    _write_csv(args.ranking, ["vertex", "total", "reachable", "rank"],
               ({"vertex": actors[r.vertex], "total": r.total, "reachable": r.reachable, "rank": i}
                for i, r in enumerate(ranking, start=1)))

    if args.root is not None:
        if args.root not in actors:
            raise UsageError(f"unknown actor {args.root!r}")
        root: Optional[int] = actors.index(args.root)
    else:
        root = ranking[0].vertex if ranking else None

    if args.timing:
        rows = [] if root is None else replay(SOLVERS[args.algo](h, root), changes)
        _write_csv(args.timing, RUN_COLUMNS, rows)

    if args.roles:
        if root is None:
            raise UsageError("no actor to root the distance profile at")
        ids = {name: v for v, name in enumerate(actors)}
        groups = {}
        with open(args.roles, newline="") as f:
            for row in csv.reader(f):
                if not row or row[0].startswith("#"):
                    continue
                if len(row) != 2:
                    raise HypergraphError(f"{args.roles}: expected actor,label, got {row}")
                name, label = row[0].strip(), row[1].strip()
                if name in ids:
                    groups[ids[name]] = label
                else:
                    log.warning("role for unknown actor %r ignored", name)
        st = dr_sp(final, root)
        prof = distance_profile(st, groups)
        _write_csv(args.profile, ["label", "mean_distance", "count"],
                   ({"label": g.label, "mean_distance": "" if g.mean is None else g.mean, "count": g.count}
                    for g in prof.values()))
    return EXIT_OK


# ---------------------------------------------------------------- parser

def _add_change_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p-insert", type=float, default=0.25)
    p.add_argument("--p-delete", type=float, default=0.25)
    p.add_argument("--w-min", type=float, default=10.0)
    p.add_argument("--w-max", type=float, default=20.0)


def _add_geo_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, default=1000, help="number of nodes")
    p.add_argument("--a", type=float, default=1000.0, help="side of the square")
    p.add_argument("--r", type=float, default=math.sqrt(1000.0), help="circle radius")
    p.add_argument("--h", type=float, default=1.0, help="grid spacing of circle centers")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="hyperdsp", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="random geometric hypergraph (+ optional random changes)")
    _add_geo_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="instance", help="output prefix for .hg/.xy/.chg")
    p.add_argument("--changes", type=int, default=0, help="also pre-draw this many random-mode changes")
    _add_change_flags(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("sssp", help="static shortest hyperpaths, one 'v D P E' line per vertex")
    p.add_argument("instance")
    p.add_argument("--algo", choices=SOLVERS, default="dr")
    p.add_argument("--source", type=int)
    p.add_argument("--coords", help="coordinates file for the default corner source")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sssp)

    p = sub.add_parser("run", help="replay changes with a dynamic algorithm, per-event CSV")
    p.add_argument("instance")
    p.add_argument("--algo", choices=SOLVERS, default="he")
    p.add_argument("--mode", choices=["random", "targeted"], default="random")
    p.add_argument("--events", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--source", type=int)
    p.add_argument("--coords")
    p.add_argument("--changes", help="pre-drawn change file instead of online generation")
    p.add_argument("--verify", type=_parse_verify, metavar="every=K")
    p.add_argument("--dump-state", metavar="PATH")
    p.add_argument("--out")
    _add_change_flags(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("bench", help="mean per-event time per mode and algorithm")
    _add_geo_flags(p)
    p.add_argument("--repeats", type=int, default=20)
    p.add_argument("--seed", type=int, default=0, help="first seed")
    p.add_argument("--seed-list", type=int, nargs="+")
    p.add_argument("--events", type=int, default=10000)
    p.add_argument("--modes", nargs="+", choices=["random", "targeted"], default=["random", "targeted"])
    p.add_argument("--algos", nargs="+", choices=list(SOLVERS), default=list(SOLVERS))
    p.add_argument("--out")
    p.add_argument("--gnuplot", metavar="PATH", help="also write a gnuplot script for the CSV")
    _add_change_flags(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("enron", help="email log -> dynamic hypergraph, closeness ranking")
    p.add_argument("log")
    p.add_argument("--alpha", type=float, default=0.6)
    p.add_argument("--root", help="actor to root the replay and distance profile at")
    p.add_argument("--algo", choices=SOLVERS, default="dr")
    p.add_argument("--roles", help="CSV file of actor,label")
    p.add_argument("--strict", action="store_true", help="fail on malformed log lines")
    p.add_argument("--ranking", help="ranking CSV (default stdout)")
    p.add_argument("--profile", help="distance profile CSV (default stdout)")
    p.add_argument("--timing", help="replay timing CSV")
    p.set_defaults(func=cmd_enron)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (UsageError, GeneratorError) as exc:
        print(f"hyperdsp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationError as exc:
        print(f"hyperdsp: verification failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except ValueError as exc:
        # bad parameters surface as ValueError from the dataclasses; unreadable
        # input as HypergraphError (a ValueError subclass)
        code = EXIT_IO if isinstance(exc, HypergraphError) else EXIT_USAGE
        print(f"hyperdsp: error: {exc}", file=sys.stderr)
        return code
    except OSError as exc:
        print(f"hyperdsp: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
