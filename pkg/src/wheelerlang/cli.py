"""Command-line interface.

Check-style commands exit 0 when the property holds, 1 when it fails and 2
on bad input.  Results go to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import os
import sys
import time

from . import __version__
from .automaton import PRE, SUF, Dfa, EmptyLanguage, complement, minimize
from .errors import InternalInconsistency, WheelerError
from .textio import dump_json, export_dot, input_hash, parse_dfa, serialize_dfa, write_text

SENTINEL_NAMES = {SUF: "SUF", PRE: "PRE"}


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def _load(path: str) -> tuple[Dfa, str]:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_dfa(text), text


def _minimized(dfa: Dfa, quiet: bool = False) -> Dfa | EmptyLanguage:
    m = minimize(dfa)
    if not quiet:
        after = 0 if isinstance(m, EmptyLanguage) else m.n
        _err(f"minimized: {dfa.n} -> {after} states")
    return m


def _order(arg: str, alphabet):
    from .order import AlphabetOrder
    return AlphabetOrder.parse(arg, alphabet)


def _word(w) -> str:
    return " ".join(w) if w else "ε"


def _ext(pair) -> list[str]:
    return [SENTINEL_NAMES.get(x, x) for x in pair]


def _named_cycle(dfa: Dfa, cycle) -> list[list[str]]:
    return [[dfa.names[p], dfa.names[q]] for p, q in cycle.nodes]


def uw_certificate(dfa: Dfa, verdict) -> dict:
    return {"pair": [dfa.names[verdict.pair[0]], dfa.names[verdict.pair[1]]],
            "cycle": _named_cycle(dfa, verdict.cycle),
            "cycle_label": list(verdict.cycle.labels),
            "witnesses": [_ext(w) for w in verdict.witnesses],
            "order": list(verdict.violating_order.symbols)}


# ---------------------------------------------------------------------------
# subcommands

def cmd_validate(args) -> int:
    dfa, _ = _load(args.file)
    m = minimize(dfa)
    print(f"states {dfa.n}")
    print(f"edges {dfa.num_edges}")
    print(f"alphabet {' '.join(dfa.alphabet)}")
    print(f"trimmed {str(dfa.is_trimmed).lower()}")
    print(f"complete {str(dfa.is_complete).lower()}")
    print(f"minimal_states {0 if isinstance(m, EmptyLanguage) else m.n}")
    return 0


def cmd_minimize(args) -> int:
    dfa, _ = _load(args.file)
    write_text(args.output, serialize_dfa(_minimized(dfa)))
    return 0


def cmd_complement(args) -> int:
    dfa, _ = _load(args.file)
    comp = complement(dfa)
    after = 0 if isinstance(comp, EmptyLanguage) else comp.n
    _err(f"complement: {dfa.n} -> {after} states")
    write_text(args.output, serialize_dfa(comp))
    return 0


def cmd_wheeler(args) -> int:
    from .order import is_wheeler_language

    dfa, _ = _load(args.file)
    m = _minimized(dfa)
    order = _order(args.order, dfa.alphabet)
    verdict = is_wheeler_language(m, order)
    if verdict:
        print("InWh")
        return 0
    print("NotWh")
    if args.witness:
        v = verdict.violation
        p, q = v.pair
        print(f"pair {m.names[p]} {m.names[q]}")
        print("cycle " + " -> ".join(f"({m.names[x]},{m.names[y]})" for x, y in v.cycle.nodes))
        print(f"cycle_label {_word(v.gamma)}")
        print(f"alpha {_word(v.alpha)}  <  beta {_word(v.beta)}")
        print(f"beta' {_word(v.beta2)}  <  alpha' {_word(v.alpha2)}")
    return 1


def cmd_wheeler_order(args) -> int:
    from .order import automaton_colex_order

    dfa, _ = _load(args.file)
    result = automaton_colex_order(dfa, _order(args.order, dfa.alphabet))
    if result:
        print("Total " + " < ".join(dfa.names[q] for q in result.states))
        return 0
    p, q = result.incomparable
    print(f"Partial {dfa.names[p]} {dfa.names[q]}")
    a, b, b2, a2 = result.witness
    print(f"{_word(a)}  <  {_word(b)}")
    print(f"{_word(b2)}  <  {_word(a2)}")
    return 1


def cmd_axioms(args) -> int:
    from .errors import InputError
    from .order import validate_wheeler_axioms

    dfa, _ = _load(args.file)
    index = {name: i for i, name in enumerate(dfa.names)}
    names = [s.strip() for s in args.state_order.split(",") if s.strip()]
    unknown = [s for s in names if s not in index]
    if unknown:
        raise InputError(f"unknown state(s) in --state-order: {', '.join(unknown)}")
    violation = validate_wheeler_axioms(dfa, [index[s] for s in names],
                                        _order(args.order, dfa.alphabet))
    if violation is None:
        print("Ok")
        return 0
    print(f"Violation {violation}")
    return 1


def cmd_uw(args) -> int:
    from .uw import decide_uw

    dfa, text = _load(args.file)
    m = _minimized(dfa)
    verdict = decide_uw(m, check=False)
    if args.json:
        out = {"uw": verdict.uw, "version": __version__, "input_hash": input_hash(text)}
        if not verdict:
            out["certificate"] = uw_certificate(m, verdict)
        print(dump_json(out), end="")
        return 0 if verdict else 1
    if verdict:
        print("InUW")
        return 0
    print("NotUW")
    print("violating order " + ",".join(verdict.violating_order.symbols))
    if args.witness:
        cert = uw_certificate(m, verdict)
        print(f"pair {' '.join(cert['pair'])}")
        print("cycle " + " -> ".join(f"({p},{q})" for p, q in cert["cycle"]))
        print(f"cycle_label {_word(cert['cycle_label'])}")
        print("witnesses " + "  ".join("(" + ",".join(w) + ")" for w in cert["witnesses"]))
    return 1


def report_json(report, m, text: str, elapsed: float | None) -> dict:
    out = dict(report.verdicts())
    out["version"] = __version__
    out["input_hash"] = input_hash(text)
    if elapsed is not None:
        out["elapsed_seconds"] = elapsed
    certs = {}
    c = report.certificates
    if "uw" in c:
        certs["uw"] = uw_certificate(m, c["uw"])
    if "comp_uw" in c:
        comp = complement(m)
        certs["comp_uw"] = uw_certificate(comp, c["comp_uw"])
    if "slt" in c:
        certs["slt"] = {"cycle": _named_cycle(m, c["slt"].cycle),
                        "cycle_label": list(c["slt"].cycle.labels)}
    if "ew" in c:
        certs["ew"] = {"triple": [m.names[q] for q in c["ew"].triple],
                       "cycle_label": list(c["ew"].gamma)}
    if "rdef" in c:
        certs["rdef"] = {"F": sorted(_word(w) for w in c["rdef"].F),
                         "G": sorted(_word(w) for w in c["rdef"].G)}
    if certs:
        out["certificates"] = certs
    return out


def cmd_classify(args) -> int:
    from .classify import classify

    dfa, text = _load(args.file)
    t0 = time.perf_counter()
    m = _minimized(dfa, quiet=args.json)
    report = classify(m)
    elapsed = time.perf_counter() - t0 if args.timing else None
    if args.json:
        print(dump_json(report_json(report, m, text, elapsed)), end="")
    else:
        for key, value in report.verdicts().items():
            print(f"{key:17s} {str(value).lower()}")
        if elapsed is not None:
            print(f"{'elapsed_seconds':17s} {elapsed:.6f}")
    return 0


def cmd_oracle_uw(args) -> int:
    from .oracle import brute_uw

    dfa, _ = _load(args.file)
    ok = brute_uw(_minimized(dfa))
    print("InUW" if ok else "NotUW")
    return 0 if ok else 1


def cmd_oracle_ew(args) -> int:
    from .oracle import exact_ew_small

    dfa, _ = _load(args.file)
    ok = exact_ew_small(_minimized(dfa))
    print("EW" if ok else "NotEW")
    return 0 if ok else 1


def cmd_gen_ov(args) -> int:
    from .hardness import format_ov, gen_ov

    write_text(args.output, format_ov(gen_ov(args.N, args.d, args.seed, args.mode)))
    return 0


def cmd_ov2dfa(args) -> int:
    from .hardness import ov_to_dfa, parse_ov, verify_reduction

    with open(args.ov_file, encoding="utf-8") as fh:
        inst = parse_ov(fh.read())
    out = ov_to_dfa(inst)
    write_text(args.output, serialize_dfa(out.dfa))
    _err(f"reduction: {out.dfa.n} states, {out.dfa.num_edges} edges")
    if args.verify:
        rep = verify_reduction(out, inst)
        for name in ("minimal", "cycles", "suffixes", "equivalence"):
            _err(f"{name:12s} {'pass' if getattr(rep, name) else 'FAIL'}")
        for line in rep.details:
            _err(line)
        return 0 if rep.ok else 1
    return 0


def _parse_sizes(text: str) -> list[tuple[int, int]]:
    from .errors import InputError

    sizes = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            N, d = item.lower().split("x")
            sizes.append((int(N), int(d)))
        except ValueError:
            raise InputError(f"bad size {item!r}; expected NxD, e.g. 64x16") from None
    if not sizes:
        raise InputError("no sizes given")
    return sizes


def cmd_bench(args) -> int:
    from .hardness import bench, growth_slope, plot_growth, write_csv

    records = bench(_parse_sizes(args.sizes), reps=args.reps, seed=args.seed,
                    mode=args.mode, workers=args.workers, node_budget=args.node_budget)
    write_csv(records, args.output)
    plot_path = args.plot or os.path.splitext(args.output)[0] + ".png"
    plot_growth(records, plot_path)
    for r in records:
        _err(f"N={r.N} d={r.d} n={r.n_states} m={r.m_edges} {r.verdict} "
             f"{r.seconds:.4f}s work/(n*m)={r.work_ratio:.3f}")
    if len(records) >= 2:
        print(f"slope {growth_slope(records):.3f}")
    _err(f"wrote {args.output} and {plot_path}")
    return 0


def cmd_export_dot(args) -> int:
    dfa, _ = _load(args.file)
    nodes, edges = set(), set()
    target = dfa
    if args.highlight_uw:
        from .uw import decide_uw

        target = _minimized(dfa)
        if isinstance(target, EmptyLanguage):
            write_text(args.output, export_dot(target))
            return 0
        verdict = decide_uw(target, check=False)
        if not verdict:
            for (p, q), a, (x, y) in verdict.cycle.edges():
                nodes.update((p, q))
                edges.add((p, a, x))
                edges.add((q, a, y))
    write_text(args.output, export_dot(target, nodes, edges))
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wheelerlang",
        description="Wheeler-related classification of regular languages given as DFAs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, file_arg=True):
        p = sub.add_parser(name, help=help_text, description=help_text)
        if file_arg:
            p.add_argument("file", help="automaton file")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "parse an automaton and print a summary")
    p = add("minimize", cmd_minimize, "write the minimal trimmed automaton")
    p.add_argument("-o", "--output", help="output path (default: stdout)")
    p = add("complement", cmd_complement, "write the minimal automaton of the complement")
    p.add_argument("-o", "--output", help="output path (default: stdout)")
    p = add("wheeler", cmd_wheeler, "is the language Wheeler for a given alphabet order?")
    p.add_argument("--order", required=True, help="comma-separated permutation, e.g. a,d,c,f")
    p.add_argument("--witness", action="store_true", help="print the violating pair and words")
    p = add("wheeler-order", cmd_wheeler_order,
            "co-lex state order of the automaton itself (total or not)")
    p.add_argument("--order", required=True, help="comma-separated alphabet permutation")
    p = add("axioms", cmd_axioms, "check the Wheeler axioms for an explicit state order")
    p.add_argument("--order", required=True, help="comma-separated alphabet permutation")
    p.add_argument("--state-order", required=True, help="comma-separated state names")
    p = add("uw", cmd_uw, "is the language Wheeler for every alphabet order?")
    p.add_argument("--witness", action="store_true",
                   help="print the intertwined pair and its letter witnesses")
    p.add_argument("--json", action="store_true", help="print a JSON report")
    p = add("classify", cmd_classify, "report all class memberships")
    p.add_argument("--json", action="store_true", help="print a JSON report")
    p.add_argument("--timing", action="store_true", help="include elapsed time")
    add("oracle-uw", cmd_oracle_uw, "brute-force sweep over all alphabet orders")
    add("oracle-ew", cmd_oracle_ew, "brute-force: is some alphabet order Wheeler?")
    p = add("gen-ov", cmd_gen_ov, "generate an Orthogonal Vectors instance", file_arg=False)
    p.add_argument("N", type=int, help="vectors per side")
    p.add_argument("d", type=int, help="dimension")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("planted_yes", "planted_no", "random"), default="random",
                   help="force a yes or no answer, or sample uniformly")
    p.add_argument("-o", "--output", help="output path (default: stdout)")
    p = add("ov2dfa", cmd_ov2dfa, "encode an OV instance as an automaton", file_arg=False)
    p.add_argument("ov_file", help="OV instance file")
    p.add_argument("-o", "--output", help="output path (default: stdout)")
    p.add_argument("--verify", action="store_true", help="check the reduction's contract")
    p = add("bench", cmd_bench, "time the UW decider on reduction automata", file_arg=False)
    p.add_argument("--sizes", required=True, help="comma-separated NxD list, e.g. 16x16,32x16")
    p.add_argument("--reps", type=int, default=3, help="timing repetitions; the minimum is kept")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("planted_yes", "planted_no", "random"),
                   default="planted_no")
    p.add_argument("--workers", type=int, default=1, help="worker processes")
    p.add_argument("--node-budget", type=int, default=10**8,
                   help="refuse automata with more state pairs than this")
    p.add_argument("-o", "--output", required=True, help="CSV output path")
    p.add_argument("--plot", help="PNG path (default: next to the CSV)")
    p = add("export-dot", cmd_export_dot, "write the automaton in DOT format")
    p.add_argument("-o", "--output", help="output path (default: stdout)")
    p.add_argument("--highlight-uw", action="store_true",
                   help="minimize and color a cycle that rules out universal Wheelerness")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InternalInconsistency as exc:
        _err(f"internal error: {exc}")
        return 3
    except (WheelerError, OSError) as exc:
        _err(f"error: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
