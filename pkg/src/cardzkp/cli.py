"""Command-line entry point: prove, check, solve, simulate, gen, cards.

Exit codes: 0 accept or success, 1 reject (or no solution), 2 usage or format error.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import defaultdict
from pathlib import Path

from .dpp_graph import (
    DppInstance,
    fill_from_paths_graph,
    generate_dpp,
    greedy_coloring,
    parse_graph,
    parse_graph_solution,
    parse_labeling,
    serialize_graph,
    serialize_graph_solution,
    simplify_graph_paths,
)
from .errors import CardZKError
from .numberlink import (
    FillMode,
    Puzzle,
    fill_from_solution,
    generate_covered_puzzle,
    generate_puzzle,
    parse_filling,
    parse_puzzle,
    parse_solution,
    serialize_puzzle,
    serialize_solution,
    simplify_paths,
)
from .oracle import (
    brute_force_dpp,
    brute_force_numberlink,
    compare_distributions,
    local_accept_dkdpp,
    local_accept_numberlink,
    local_accept_ukdpp,
    observations,
    simulate_transcript,
)
from .protocol import RunResult, Variant, card_requirements, run_dkdpp, run_numberlink, run_ukdpp
from .rng import BiasedPermutations, PermutationSource

VARIANTS = [v.value for v in Variant]


class UsageError(CardZKError):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from exc


def is_graph_text(text: str) -> bool:
    for ln in text.splitlines():
        if ln.strip():
            return ln.split()[0] in ("directed", "undirected")
    return False


def load_instance(path: str) -> Puzzle | DppInstance:
    text = _read(path)
    try:
        return parse_graph(text) if is_graph_text(text) else parse_puzzle(text)
    except CardZKError as exc:
        raise type(exc)(f"{path}: {exc}") from exc


def resolve_variant(instance, name: str | None) -> Variant:
    if isinstance(instance, DppInstance):
        default = Variant.DKDPP if instance.directed else Variant.UKDPP
        variant = Variant(name) if name else default
        if variant is not default:
            raise UsageError(f"variant {variant.value} does not fit a "
                             f"{'directed' if instance.directed else 'undirected'} graph")
        return variant
    variant = Variant(name) if name else Variant.GENERAL
    if variant.is_graph:
        raise UsageError(f"variant {variant.value} needs a graph instance")
    return variant


def witness_from_paths(instance, variant: Variant, text: str):
    """Filling or labeling built from a solution file of paths."""
    if isinstance(instance, DppInstance):
        paths = simplify_graph_paths(parse_graph_solution(text), instance)
        return fill_from_paths_graph(instance, paths, greedy_coloring(instance))
    ps = simplify_paths(parse_solution(text), instance)
    return fill_from_solution(instance, ps, FillMode(variant.value))


def witness_from_values(instance, text: str):
    if isinstance(instance, DppInstance):
        return parse_labeling(text)
    return parse_filling(text)


def run_protocol(instance, variant: Variant, witness, randomness, keep_sealed: bool = True) -> RunResult:
    if variant is Variant.UKDPP:
        return run_ukdpp(instance, witness, None, randomness, keep_sealed=keep_sealed)
    if variant is Variant.DKDPP:
        return run_dkdpp(instance, witness, None, randomness, keep_sealed=keep_sealed)
    return run_numberlink(instance, witness, variant, randomness, keep_sealed=keep_sealed)


def local_accept(instance, variant: Variant, witness) -> bool:
    if variant is Variant.UKDPP:
        return local_accept_ukdpp(instance, witness, greedy_coloring(instance))
    if variant is Variant.DKDPP:
        return local_accept_dkdpp(instance, witness, greedy_coloring(instance))
    return local_accept_numberlink(instance, witness, variant)


def _describe(location) -> str:
    if location is None:
        return ""
    if "cell" in location:
        i, j = location["cell"]
        return f" at cell ({i},{j})"
    rnd = f" ({location['round']} round)" if "round" in location else ""
    return f" at vertex {location['vertex']}{rnd}"


# -- subcommands ---------------------------------------------------------------

def cmd_prove(args) -> int:
    instance = load_instance(args.instance)
    variant = resolve_variant(instance, args.variant)
    text = _read(args.solution)
    witness = witness_from_values(instance, text) if args.filling else witness_from_paths(instance, variant, text)
    result = run_protocol(instance, variant, witness, PermutationSource(args.seed),
                          keep_sealed=args.unsafe_reveal_hidden)
    if args.out:
        Path(args.out).write_text(result.transcript.to_jsonl())
        if args.unsafe_reveal_hidden:
            Path(args.out + ".sealed").write_text(result.transcript.sealed_jsonl())
    print(f"{result.decision}{_describe(result.failing)}")
    return 0 if result.accepted else 1


def cmd_check(args) -> int:
    instance = load_instance(args.instance)
    variant = resolve_variant(instance, args.variant)
    witness = witness_from_values(instance, _read(args.filling))
    accepted = local_accept(instance, variant, witness)
    print("accept" if accepted else "reject")
    return 0 if accepted else 1


def _solve(instance, require_cover: bool, override: bool, limit: int = 0):
    if isinstance(instance, DppInstance):
        return brute_force_dpp(instance, require_cover, override=override, limit=limit)
    return brute_force_numberlink(instance, require_cover, override=override, limit=limit)


def _serialize_paths(instance, paths) -> str:
    if isinstance(instance, DppInstance):
        return serialize_graph_solution(paths)
    return serialize_solution(paths)


def cmd_solve(args) -> int:
    instance = load_instance(args.instance)
    sols = _solve(instance, args.require_cover, args.override, args.limit)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for i, ps in enumerate(sols, start=1):
            (out / f"solution-{i}.txt").write_text(_serialize_paths(instance, ps))
    print(f"# {len(sols)} solution(s)")
    for i, ps in enumerate(sols, start=1):
        print(f"# solution {i}")
        sys.stdout.write(_serialize_paths(instance, ps))
    return 0 if sols else 1


def simulate_corpora(instance, variant: Variant, witness, trials: int, seed: int,
                     significance: float, inject_bias: float = 0.0):
    """Real and simulated transcripts plus a per-check comparison report.

    Each check contributes three tests (reveal pair, leading Column 0 mark,
    leading Row 0 mark); the overall verdict applies a Bonferroni correction.
    """
    real, sim = [], []
    by_check = defaultdict(lambda: {"real": defaultdict(list), "sim": defaultdict(list)})
    for t in range(trials):
        if inject_bias:
            rnd = BiasedPermutations(f"{seed}/real/{t}", inject_bias)
        else:
            rnd = PermutationSource(f"{seed}/real/{t}")
        r = run_protocol(instance, variant, witness, rnd, keep_sealed=False)
        s = simulate_transcript(instance, variant, PermutationSource(f"{seed}/sim/{t}"))
        real.append(r.transcript)
        sim.append(s)
        for side, tr in (("real", r.transcript), ("sim", s)):
            for o in observations(tr):
                slot = by_check[o.check][side]
                slot["reveal"].append(o.reveal)
                slot["p"].append(o.revealed_p[:1])
                slot["q"].append(o.revealed_q[0])
    tests = max(1, 3 * len(by_check))
    corrected = significance / tests
    checks = []
    for idx in sorted(by_check):
        entry = {"check": idx}
        for key in ("reveal", "p", "q"):
            cmp = compare_distributions(by_check[idx]["real"][key], by_check[idx]["sim"][key], corrected)
            entry[key] = cmp.as_dict()
        checks.append(entry)
    consistent = all(c[key]["consistent"] for c in checks for key in ("reveal", "p", "q"))
    accepted = sum(1 for tr in real if tr.decision and tr.decision["result"] == "accept")
    report = {
        "trials": trials,
        "significance": significance,
        "corrected_significance": corrected,
        "real_accepted": accepted,
        "consistent": consistent,
        "checks": checks,
    }
    return real, sim, report


def cmd_simulate(args) -> int:
    instance = load_instance(args.instance)
    variant = resolve_variant(instance, args.variant)
    if args.solution:
        witness = witness_from_paths(instance, variant, _read(args.solution))
    else:
        sols = _solve(instance, variant is Variant.WELL_DESIGNED, override=True, limit=1)
        if not sols:
            raise UsageError("instance has no solution, nothing to simulate")
        witness = (fill_from_paths_graph(instance, sols[0], greedy_coloring(instance))
                   if isinstance(instance, DppInstance)
                   else fill_from_solution(instance, sols[0], FillMode(variant.value)))
    real, sim, report = simulate_corpora(instance, variant, witness, args.trials, args.seed,
                                         args.significance, args.inject_bias)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for name, corpus in (("real.jsonl", real), ("simulated.jsonl", sim)):
            with open(out / name, "w") as fh:
                for t, tr in enumerate(corpus):
                    fh.write(json.dumps({"trial": t, "events": tr.events}, sort_keys=True) + "\n")
        (out / "report.json").write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    print(json.dumps({k: report[k] for k in ("trials", "real_accepted", "consistent",
                                              "corrected_significance")}, sort_keys=True))
    return 0 if report["consistent"] else 1


def cmd_gen(args) -> int:
    rng = PermutationSource(args.seed)
    if args.graph:
        if len(args.dims) != 2:
            raise UsageError("gen --graph takes V K")
        inst, paths = generate_dpp(args.dims[0], args.dims[1], args.directed, rng)
        instance_text, solution_text = serialize_graph(inst), serialize_graph_solution(paths)
    else:
        if args.cover:
            if len(args.dims) != 2:
                raise UsageError("gen --cover takes M N")
            puzzle, ps = generate_covered_puzzle(args.dims[0], args.dims[1], rng)
        else:
            if len(args.dims) != 3:
                raise UsageError("gen takes M N K")
            puzzle, ps = generate_puzzle(*args.dims, rng)
        instance_text, solution_text = serialize_puzzle(puzzle), serialize_solution(ps)
    if args.out:
        Path(args.out + ".instance").write_text(instance_text)
        Path(args.out + ".solution").write_text(solution_text)
    else:
        sys.stdout.write(instance_text + "\n" + solution_text)
    return 0


def cmd_cards(args) -> int:
    if args.instance:
        instance = load_instance(args.instance)
        variant = resolve_variant(instance, args.variant)
        if isinstance(instance, DppInstance):
            count = card_requirements(variant, k=instance.k, vertices=instance.n_vertices, d=instance.d)
        else:
            count = card_requirements(variant, m=instance.m, n=instance.n, k=instance.k)
    else:
        if not args.variant:
            raise UsageError("cards needs --variant or an instance file")
        count = card_requirements(args.variant, m=args.m, n=args.n, k=args.k,
                                  vertices=args.vertices, d=args.d)
    print(f"encoding {count.encoding}")
    print(f"marking {count.marking}")
    return 0


# -- argument parsing ----------------------------------------------------------

def _probability(text: str) -> float:
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError("must lie strictly between 0 and 1")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cardzkp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=False):
        p.add_argument("--variant", choices=VARIANTS)
        if seed:
            p.add_argument("--seed", type=_seed, default=0)

    p = sub.add_parser("prove", help="run the card protocol on an instance and its solution")
    p.add_argument("instance")
    p.add_argument("solution", help="solution paths, or a filling/labeling with --filling")
    common(p, seed=True)
    p.add_argument("--filling", action="store_true", help="treat SOLUTION as a filling or labeling")
    p.add_argument("--out", help="transcript path (JSON lines)")
    p.add_argument("--unsafe-reveal-hidden", action="store_true",
                   help="also write the hidden permutations to OUT.sealed")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("check", help="evaluate the acceptance predicate without cards")
    p.add_argument("instance")
    p.add_argument("filling")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="enumerate all solutions by brute force")
    p.add_argument("instance")
    p.add_argument("--require-cover", action="store_true")
    p.add_argument("--override", action="store_true", help="lift the size guard")
    p.add_argument("--limit", type=_nonnegative, default=0)
    p.add_argument("--out", help="directory for solution-N.txt files")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("simulate", help="compare real and simulated transcripts")
    p.add_argument("instance")
    p.add_argument("solution", nargs="?", help="solution paths; solved by brute force if omitted")
    common(p, seed=True)
    p.add_argument("--trials", type=_nonnegative, default=1000)
    p.add_argument("--significance", type=_probability, default=0.001)
    p.add_argument("--out", help="directory for real.jsonl, simulated.jsonl and report.json")
    p.add_argument("--inject-bias", type=float, default=0.0, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("gen", help="generate a solvable instance and its solution")
    p.add_argument("dims", type=int, nargs="+", metavar="N", help="M N K, or V K with --graph")
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--graph", action="store_true")
    p.add_argument("--directed", action="store_true")
    p.add_argument("--cover", action="store_true", help="paths cover every cell (takes M N)")
    p.add_argument("--out", help="prefix for PREFIX.instance and PREFIX.solution")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("cards", help="card requirements of a run")
    p.add_argument("instance", nargs="?")
    p.add_argument("--variant", choices=VARIANTS)
    for name in ("m", "n", "k", "vertices", "d"):
        p.add_argument(f"--{name}", type=_nonnegative, default=0)
    p.set_defaults(func=cmd_cards)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CardZKError as exc:
        print(f"cardzkp: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
