"""Command line front end.

Every command prints either human-readable text or, with ``--json``, one
JSON record per line carrying a ``schema`` field.  Exit codes: 0 ok,
1 domain error, 2 undecided (depth cap reached), 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .branching import DEFAULT_DEPTH_CAP, induce_chain_to_rouquier, restrict_chain_to_principal
from .complexity import complexity_of
from .errors import DomainError, SymBlockError, Undecided
from .jordan_calculus import run_sweeps
from .partition_core import block_of, check_prime, format_partition, is_p_regular, parse_partition
from .rank_variety import ElemAbelianModule, rational_points, regular_module, trivial_module
from .weight_two import label_of, route_of

SCHEMA_VERSION = 1
EXIT_OK, EXIT_DOMAIN, EXIT_UNDECIDED, EXIT_VERIFY = 0, 1, 2, 3


@dataclass
class Config:
    p: int = 5
    depth_cap: int = DEFAULT_DEPTH_CAP
    output: str = "text"  # text | structured
    sweep_primes: list[int] = field(default_factory=lambda: [3, 5, 7])
    trace: bool = False
    jobs: int = 1

    def __post_init__(self):
        check_prime(self.p)
        if self.depth_cap < 1:
            raise DomainError("depth cap must be at least 1")
        for q in self.sweep_primes:
            check_prime(q)
        if self.output not in ("text", "structured"):
            raise DomainError(f"unknown output mode {self.output!r}")


def _schema(kind: str) -> str:
    return f"symblock.{kind}.v{SCHEMA_VERSION}"


class Emitter:
    def __init__(self, cfg: Config, out=None):
        self.cfg = cfg
        self.out = out or sys.stdout

    def record(self, kind: str, rec: dict, text: str) -> None:
        if self.cfg.output == "structured":
            print(json.dumps({"schema": _schema(kind), **rec}, sort_keys=False), file=self.out)
        else:
            print(text, file=self.out)

    def error(self, exc: Exception) -> None:
        rec = {"error": type(exc).__name__, "message": str(exc)}
        if self.cfg.output == "structured":
            print(json.dumps({"schema": _schema("error"), **rec}), file=self.out)
        else:
            print(f"error: {exc}", file=sys.stderr)


def cmd_core(args, cfg: Config, em: Emitter) -> int:
    lam = parse_partition(args.partition)
    B = block_of(lam, cfg.p)
    rec = {
        "partition": format_partition(lam),
        "p": cfg.p,
        "core": format_partition(B.core),
        "weight": B.weight,
        "regular": is_p_regular(lam, cfg.p),
    }
    em.record("core", rec, f"core {rec['core']}  weight {B.weight}  {cfg.p}-regular {rec['regular']}")
    return EXIT_OK


def cmd_label(args, cfg: Config, em: Emitter) -> int:
    lam = parse_partition(args.partition)
    label = label_of(lam, cfg.p)
    regular = is_p_regular(lam, cfg.p)
    rec = {
        "partition": format_partition(lam),
        "p": cfg.p,
        "block_core": format_partition(label.block.core),
        "a": label.a,
        "b": label.b,
        "eps": label.eps,
        "p_regular": regular,
        "route": route_of(lam, cfg.p).value if regular else None,
    }
    em.record("label", rec, f"{label}  eps {label.eps}  regular {regular}  route {rec['route']}")
    return EXIT_OK


def cmd_chain(args, cfg: Config, em: Emitter) -> int:
    lam = parse_partition(args.partition)
    if args.to == "rouquier":
        chain = induce_chain_to_rouquier(lam, cfg.p, cfg.depth_cap)
    else:
        chain = restrict_chain_to_principal(lam, cfg.p)
    rec = {
        "partition": format_partition(lam),
        "p": cfg.p,
        "direction": "induce" if args.to == "rouquier" else "restrict",
        "found": chain is not None,
        "steps": chain.to_records() if chain is not None else [],
    }
    if chain is None:
        text = "no chain: the walk meets an exceptional step"
    else:
        lines = [f"{len(chain)} steps"]
        for st in rec["steps"]:
            lines.append(f"  n={st['n']} core={st['core']} k={st['k']} r={st['residue']} -> {st['image_partition']}")
        text = "\n".join(lines)
    em.record("chain", rec, text)
    return EXIT_OK


def cmd_complexity(args, cfg: Config, em: Emitter) -> int:
    lam = parse_partition(args.partition)
    res = complexity_of(lam, cfg.p, cfg.depth_cap)
    rec = res.to_record(with_trace=cfg.trace)
    value = str(res.value) if res.exact else f"[{res.lo}, {res.hi}]"
    lines = [f"complexity {value}  ({res.tag})"]
    if cfg.trace:
        for step in res.trace:
            mark = "*" if step.fired else "-"
            lines.append(f"  {mark} {step.rule}" + (f": {step.note}" if step.note else ""))
    em.record("complexity", rec, "\n".join(lines))
    return EXIT_OK


def _load_module(args, cfg: Config) -> ElemAbelianModule:
    if args.fixture == "trivial":
        return trivial_module(cfg.p, args.rank, args.dim)
    if args.fixture == "regular":
        return regular_module(cfg.p, args.rank)
    if args.module is None:
        raise DomainError("give a module file (or '-') or --fixture")
    text = sys.stdin.read() if args.module == "-" else open(args.module).read()
    return ElemAbelianModule.from_json(text)


def cmd_rankvar(args, cfg: Config, em: Emitter) -> int:
    m = _load_module(args, cfg)
    points = sorted(rational_points(m))
    rec = {"p": m.p, "k": m.k, "dim": m.dim, "points": [list(a) for a in points]}
    text = f"{len(points)} non-free rational points" + "".join(f"\n  {a}" for a in points)
    em.record("rankvar", rec, text)
    return EXIT_OK


def cmd_verify(args, cfg: Config, em: Emitter) -> int:
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            batches = list(pool.map(run_sweeps, cfg.sweep_primes))
    else:
        batches = [run_sweeps(q) for q in cfg.sweep_primes]
    ok = True
    for batch in batches:
        for r in batch:
            ok &= r.passed
            rec = {"check": r.check, "p": r.p, "cases": r.cases, "passed": r.passed, "failures": list(r.failures)}
            status = "PASS" if r.passed else "FAIL " + ", ".join(r.failures)
            em.record("verify", rec, f"{r.check:<18} p={r.p:<3} cases={r.cases:<4} {status}")
    return EXIT_OK if ok else EXIT_VERIFY


def _primes(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-p", type=int, default=5, help="the prime (default 5)")
    common.add_argument("--depth-cap", type=int, default=DEFAULT_DEPTH_CAP, help="step bound for chain walks")
    common.add_argument("--json", action="store_true", help="line-delimited JSON output")
    common.add_argument("--trace", action="store_true", help="show the complexity decision cascade")

    parser = argparse.ArgumentParser(prog="symblock", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in (
        ("core", "p-core, p-weight and p-regularity"),
        ("label", "the [a,b] label and eps of a weight-2 partition"),
        ("complexity", "complexity of the simple module D^lambda"),
    ):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("partition", help="comma separated parts, '-' for the empty partition")

    sp = sub.add_parser("chain", parents=[common], help="semisimple chain of [w:k]-pairs")
    sp.add_argument("partition")
    sp.add_argument("--to", choices=("rouquier", "principal"), default="rouquier")

    sp = sub.add_parser("rankvar", parents=[common], help="non-free rational points of a module")
    sp.add_argument("module", nargs="?", help='JSON file {"p": .., "generators": [...]}, or - for stdin')
    sp.add_argument("--fixture", choices=("trivial", "regular"))
    sp.add_argument("--rank", type=int, default=2)
    sp.add_argument("--dim", type=int, default=1)

    sp = sub.add_parser("verify", parents=[common], help="closed forms against brute force")
    sp.add_argument("--primes", type=_primes, default=[3, 5, 7])
    sp.add_argument("--jobs", type=int, default=1)
    return parser


COMMANDS = {
    "core": cmd_core,
    "label": cmd_label,
    "chain": cmd_chain,
    "complexity": cmd_complexity,
    "rankvar": cmd_rankvar,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    output = "structured" if args.json else "text"
    em = Emitter(Config(output=output))
    try:
        cfg = Config(
            p=args.p,
            depth_cap=args.depth_cap,
            output=output,
            sweep_primes=getattr(args, "primes", [3, 5, 7]),
            trace=args.trace,
            jobs=getattr(args, "jobs", 1),
        )
        em = Emitter(cfg)
        return COMMANDS[args.command](args, cfg, em)
    except Undecided as exc:
        em.error(exc)
        return EXIT_UNDECIDED
    except (SymBlockError, OSError, ValueError) as exc:
        em.error(exc)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
