"""Command-line entry point.

Exit codes: 0 Hamiltonian (or success), 1 non-Hamiltonian (or a negative
answer), 2 refusal or error.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import secrets
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import certify, closure, exact, formats, kernelize, kernels, nashwilliams, pathcover, solver
from .errors import DiracHamError, Refusal
from .generators import MODELS, InstanceSpec, generate
from .graph import check_ham_cycle

logger = logging.getLogger("diracham")

SCHEMA = "diracham.run-report"
SCHEMA_VERSION = 1
BENCH_HEADER = ("instance", "n", "k_count", "k_degree", "strategy", "time", "outcome")

EXIT_HAM, EXIT_NONHAM, EXIT_ERROR = 0, 1, 2


@dataclass
class RunReport:
    outcome: str
    strategy: str | None
    guard: str | None
    n: int
    k_count: int
    k_degree: int
    seed: int
    epsilon: float
    wall_time: float
    cycle: list[int] | None = None
    certificate: dict | None = None
    error: str | None = None
    info: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.outcome == "refused":
            return
        if (self.cycle is None) == (self.certificate is None):
            raise ValueError("a report carries exactly one of cycle and certificate")

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "version": SCHEMA_VERSION,
            "outcome": self.outcome,
            "strategy": self.strategy,
            "guard": self.guard,
            "n": self.n,
            "k_count": self.k_count,
            "k_degree": self.k_degree,
            "seed": self.seed,
            "epsilon": self.epsilon,
            "wall_time": round(self.wall_time, 6),
            "cycle": self.cycle,
            "certificate": self.certificate,
            "error": self.error,
            "info": self.info,
        }

    @property
    def exit_code(self) -> int:
        return {"hamiltonian": EXIT_HAM, "non-hamiltonian": EXIT_NONHAM}.get(self.outcome, EXIT_ERROR)


def _jsonable(d: dict) -> dict:
    return {k: v for k, v in d.items() if isinstance(v, (int, float, str, bool, type(None)))}


def run_solve(g, strategy: str = "auto", seed: int = 0, epsilon: float = pathcover.DEFAULT_EPSILON,
              force: bool = False, exact_verify: bool = False, cap: int = exact.HELD_KARP_CAP,
              k: int | None = None) -> RunReport:
    m = solver.measure(g)
    start = time.perf_counter()
    base = dict(n=m.n, k_count=m.k_count, k_degree=m.k_degree, seed=seed, epsilon=epsilon)
    try:
        choice = solver.choose(m, strategy, cap=cap, force=force)
        out = solver.solve(g, choice, seed=seed, epsilon=epsilon, cap=cap, force=force,
                           exact_verify=exact_verify, k=k)
    except Refusal as exc:
        return RunReport("refused", strategy if strategy != "auto" else None, None,
                         wall_time=time.perf_counter() - start, error=str(exc), **base)
    elapsed = time.perf_counter() - start
    info = _jsonable(out.info)
    if out.hamiltonian:
        cycle = list(check_ham_cycle(g, out.cycle, "reported cycle"))
        return RunReport("hamiltonian", choice.strategy, choice.guard, wall_time=elapsed,
                         cycle=cycle, info=info, **base)
    return RunReport("non-hamiltonian", choice.strategy, choice.guard, wall_time=elapsed,
                     certificate=certify.to_json(out.certificate), info=info, **base)


def _read(args) -> Any:
    return formats.read_graph(args.input, args.format)


def _seed(args) -> int:
    if args.seed is None:
        args.seed = secrets.randbits(63)
    return args.seed


def _set_threads(n: int | None) -> None:
    if not n:
        return
    try:
        import numba
        numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))
    except ImportError:
        pass


def cmd_solve(args) -> int:
    g = _read(args)
    seed = _seed(args)
    rep = run_solve(g, args.strategy, seed, args.epsilon, args.force, args.exact_verify, args.cap, args.k)
    if args.json:
        print(json.dumps(rep.to_json(), indent=2))
    else:
        print(f"outcome: {rep.outcome}")
        print(f"strategy: {rep.strategy} ({rep.guard})")
        print(f"n={rep.n} k_count={rep.k_count} k_degree={rep.k_degree}")
        print(f"seed: {seed}  epsilon: {rep.epsilon}")
        if rep.cycle is not None:
            print("cycle: " + " ".join(map(str, rep.cycle)))
        if rep.certificate is not None:
            print("certificate: " + json.dumps(rep.certificate))
        if rep.error:
            print(f"refused: {rep.error}")
        print(f"time: {rep.wall_time:.3f}s")
    return rep.exit_code


def cmd_kernelize(args) -> int:
    g = _read(args)
    split = kernelize.split_high_low(g)
    if split.S == 0:
        print(json.dumps({"k_count": 0, "note": "every vertex has degree >= n/2; graph is Hamiltonian"}))
        return EXIT_HAM
    closed, log = closure.augment(g, closure.within(split.C))
    res = kernelize.kernelize(closed, split)
    if args.out:
        formats.write_graph(res.graph, args.out, args.out_format)
    if args.sidecar:
        Path(args.sidecar).write_text(res.sidecar_json() + "\n")
    summary = {"n": g.n, "k_count": split.k, "kernel_n": res.graph.n, "log_length": len(log)}
    summary |= res.sidecar()
    print(json.dumps(summary, indent=2))
    return 0


def cmd_pathcover(args) -> int:
    g = _read(args)
    seed = _seed(args)
    plan = pathcover.TrialPlan(args.t, args.epsilon, seed)
    cover = pathcover.cover_with_deficiency(g, args.t, plan)
    out = {"t": args.t, "paths": g.n - args.t, "seed": seed, "epsilon": args.epsilon,
           "trials": plan.trials, "found": cover is not None,
           "cover": cover.to_json() if cover is not None else None}
    print(json.dumps(out, indent=2 if args.json else None))
    return 0 if cover is not None else 1


def cmd_count(args) -> int:
    g = _read(args)
    print(exact.ie_count(g, cap=exact.HELD_KARP_HARD_CAP if args.force else exact.IE_CAP))
    return 0


def cmd_gen(args) -> int:
    seed = _seed(args)
    inst = generate(InstanceSpec(args.model, args.n, args.k, seed, args.planted))
    data = formats.serialize(inst.graph, args.format or (formats.format_for_path(args.out) if args.out else "graph6"))
    if args.out:
        Path(args.out).write_bytes(data)
        print(f"wrote {args.out} (n={args.n}, seed={seed})", file=sys.stderr)
    else:
        sys.stdout.buffer.write(data)
    return 0


def cmd_verify(args) -> int:
    g = _read(args)
    data = json.loads(Path(args.certificate).read_text())
    if isinstance(data, dict) and data.get("schema") == SCHEMA:
        if data.get("certificate") is None:
            raise ValueError(f"report has no certificate to verify (outcome: {data.get('outcome')})")
        data = data["certificate"]
    cert = certify.from_json(data, g)
    res = certify.verify(g, cert, seed=args.seed, exact_verify=args.exact_verify)
    out = {"status": res.status, "detail": res.detail,
           "cover": res.cover.to_json() if res.cover is not None else None}
    print(json.dumps(out, indent=2))
    return 0 if res.supported else 1


def cmd_extend(args) -> int:
    g = _read(args)
    res = nashwilliams.find_cycle_or_indepset(g)
    if isinstance(res, nashwilliams.IndepSet):
        print(json.dumps({"independent_set": res.members()}))
        return 1
    print(json.dumps({"cycle": list(res)}))
    return 0


def _bench_files(corpus: Path) -> list[Path]:
    return sorted(p for p in corpus.iterdir() if p.is_file() and not p.name.startswith("."))


def run_bench(corpus: Path, repeats: int, out, strategy: str = "auto", seed: int = 0,
              force: bool = False) -> int:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(BENCH_HEADER)
    rows = 0
    for path in _bench_files(corpus):
        try:
            g = formats.read_graph(path)
        except (DiracHamError, OSError) as exc:
            logger.warning("skipping %s: %s", path.name, exc)
            continue
        for _ in range(repeats):
            rep = run_solve(g, strategy, seed, force=force)
            writer.writerow((path.name, rep.n, rep.k_count, rep.k_degree, rep.strategy or "",
                             f"{rep.wall_time:.6f}", rep.outcome))
            rows += 1
    return rows


def cmd_bench(args) -> int:
    seed = _seed(args)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            run_bench(Path(args.corpus), args.repeats, fh, args.strategy, seed, args.force)
    else:
        run_bench(Path(args.corpus), args.repeats, sys.stdout, args.strategy, seed, args.force)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="diracham", description="Hamiltonian cycles near Dirac's degree bound")
    p.add_argument("--threads", type=int, default=None, help="thread limit for JIT kernels")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_input(sp):
        sp.add_argument("input", help="graph file")
        sp.add_argument("--format", choices=formats.FORMATS, default=None,
                        help="input format (default: from the file extension)")

    sp = sub.add_parser("solve", help="decide Hamiltonicity")
    graph_input(sp)
    sp.add_argument("--strategy", choices=solver.STRATEGIES, default="auto")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--epsilon", type=float, default=pathcover.DEFAULT_EPSILON)
    sp.add_argument("--force", action="store_true", help="lift size caps up to the hard limit")
    sp.add_argument("--exact-verify", action="store_true", help="exact path cover when |T| <= 20")
    sp.add_argument("--cap", type=int, default=exact.HELD_KARP_CAP)
    sp.add_argument("--k", type=int, default=None, help="claimed degree parameter (checked)")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("kernelize", help="reduce a count-relaxed instance to its kernel")
    graph_input(sp)
    sp.add_argument("--out", default=None, help="write the kernel graph here")
    sp.add_argument("--out-format", choices=formats.FORMATS, default=None)
    sp.add_argument("--sidecar", default=None, help="write the lifting sidecar JSON here")
    sp.set_defaults(func=cmd_kernelize)

    sp = sub.add_parser("pathcover", help="cover by n - t disjoint paths")
    graph_input(sp)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--epsilon", type=float, default=pathcover.DEFAULT_EPSILON)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_pathcover)

    sp = sub.add_parser("count", help="count Hamiltonian cycles")
    graph_input(sp)
    sp.add_argument("--force", action="store_true")
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("gen", help="generate a random instance")
    sp.add_argument("--model", choices=MODELS, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--planted", action="store_true")
    sp.add_argument("--out", default=None)
    sp.add_argument("--format", choices=formats.FORMATS, default=None)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("verify", help="re-check a non-Hamiltonicity certificate")
    graph_input(sp)
    sp.add_argument("certificate", help="certificate JSON (or a solve --json report)")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--exact-verify", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("extend", help="developer: cycle extension or independent set")
    graph_input(sp)
    sp.set_defaults(func=cmd_extend)

    sp = sub.add_parser("bench", help="time solves over a corpus directory")
    sp.add_argument("corpus")
    sp.add_argument("--repeats", type=int, default=1)
    sp.add_argument("--csv", default=None)
    sp.add_argument("--strategy", choices=solver.STRATEGIES, default="auto")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--force", action="store_true")
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    _set_threads(args.threads)
    logger.debug("kernel backend: %s", kernels.BACKEND)
    try:
        return args.func(args)
    except Refusal as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (DiracHamError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
