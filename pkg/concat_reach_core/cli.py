"""Command-line front end

Exit codes: 0 when everything verifies, 1 when a verification fails (count
mismatch, certificate not complete), 2 on usage or input errors.
"""
import argparse
import json
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

from concat_reach_core.analysis import reach_report, shortest_reach_word
from concat_reach_core.certificates import (
    Certificate,
    constraint_graph,
    decide_complete,
    exhaustive_complete,
    parse_certificate,
    synthesize_reach_word,
    validate_construction_set,
    verify_master,
)
from concat_reach_core.certificates.model import not_complete
from concat_reach_core.concat import (
    MODES,
    ConcatMachine,
    PairState,
    bounded_language,
    build_concat_nfa,
    concatenation_oracle,
    initial_pair,
    pair_run,
    render_pair,
)
from concat_reach_core.config import Settings, load_settings
from concat_reach_core.dfa import Dfa, word_text
from concat_reach_core.errors import ConcatReachError
from concat_reach_core.parser import load_dfa
from concat_reach_core.render import describe_dfa, emit
from concat_reach_core.utils import format_state_set, parse_range, parse_state_set
from concat_reach_core.witnesses import SWEEP_COLUMNS, family_names, sweep, verify_family

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class UsageError(ConcatReachError):
    """Invalid command-line input detected after parsing"""


def _out(text: str = ""):
    print(text, file=sys.stdout)


def _err(text: str):
    print(text, file=sys.stderr)


def _dump(document: Any):
    _out(json.dumps(document, indent=2, ensure_ascii=False))


def _status(ok: bool) -> int:
    return EXIT_OK if ok else EXIT_FAILED


def _range(text: str) -> List[int]:
    try:
        return parse_range(text)
    except ValueError as ex:
        raise argparse.ArgumentTypeError(str(ex)) from ex


def _operand(settings: Settings, path: str) -> Dfa:
    d = load_dfa(path)
    if d.n > settings.max_states:
        raise UsageError(f"{d.name} has {d.n} states, more than the configured {settings.max_states}")
    return d


def _machine(args: argparse.Namespace, settings: Settings) -> ConcatMachine:
    a = _operand(settings, args.A)
    b = _operand(settings, args.B)
    machine = ConcatMachine(a, b, mode=getattr(args, "mode", None))
    log.debug("Operand %s", describe_dfa(a))
    log.debug("Operand %s", describe_dfa(b))
    return machine


def _certificate(args: argparse.Namespace, machine: ConcatMachine) -> Certificate:
    with open(args.cert, "r", encoding="utf8") as file:
        return parse_certificate(file.read(), machine.b.n)


def cmd_build_concat(args: argparse.Namespace, settings: Settings) -> int:
    machine = _machine(args, settings)
    for line in emit(machine, args.emit):
        sys.stdout.write(line)
    return EXIT_OK


def cmd_analyze(args: argparse.Namespace, settings: Settings) -> int:
    report = reach_report(_machine(args, settings))
    if args.json:
        _dump(report.to_dict())
        return EXIT_OK
    _out(f"reachable\t{report.reachable_count}")
    _out(f"classes\t{report.class_count}")
    _out(f"mode\t{report.mode}")
    _out(f"bound\t{report.bound if report.bound is not None else '-'}")
    for focus, count in report.by_focus.items():
        _out(f"focus {focus}\t{count}")
    return EXIT_OK


def _verdict_lines(verdict) -> List[str]:
    lines = [
        f"complete\t{'yes' if verdict.complete else 'no'}",
        f"via\t{verdict.via or '-'}",
        f"order\t{' '.join(map(str, verdict.order)) if verdict.order else '-'}",
    ]
    if verdict.cycle:
        lines.append(f"cycle\t{' -> '.join(map(str, verdict.cycle))}")
    if verdict.base_reachable is not None:
        lines.append(f"base word\t{'reaches' if verdict.base_reachable else 'misses'} the base state")
    if verdict.detail:
        lines.append(f"detail\t{verdict.detail}")
    return lines


def _synthesized(machine: ConcatMachine, c: Certificate, order, text: str) -> Dict[str, Any]:
    states = parse_state_set(text, machine.b.n)
    word = synthesize_reach_word(machine, c, order, states)
    return {
        "set": format_state_set(states),
        "word": word_text(word),
        "reaches": render_pair(pair_run(machine, PairState.of(c.focus, c.base), word)),
    }


def cmd_check_cert(args: argparse.Namespace, settings: Settings) -> int:
    machine = _machine(args, settings)
    c = _certificate(args, machine)
    verdict = verify_master(machine, c)
    ok = verdict.holds
    document: Dict[str, Any] = {"verdict": verdict.to_dict()}

    if args.order_oracle:
        oracle = exhaustive_complete(machine, c)
        agrees = (oracle is not None) == verdict.complete
        document["oracle"] = {
            "order": list(oracle) if oracle is not None else None,
            "agrees": agrees,
        }
        ok = ok and agrees

    if args.synthesize:
        if not verdict.complete:
            _err("cannot synthesize: certificate is not complete")
            return EXIT_FAILED
        document["synthesized"] = _synthesized(machine, c, verdict.order, args.synthesize)

    if args.json:
        _dump(document)
        return _status(ok)

    for line in _verdict_lines(verdict):
        _out(line)
    if "oracle" in document:
        oracle = document["oracle"]
        order = " ".join(map(str, oracle["order"])) if oracle["order"] else "-"
        _out(f"oracle order\t{order}")
        _out(f"oracle agrees\t{'yes' if oracle['agrees'] else 'no'}")
    if "synthesized" in document:
        result = document["synthesized"]
        _out(f"word\t{result['word']}")
        _out(f"reaches\t{result['reaches']}")
    if not verdict.complete:
        _err(f"certificate not complete: {verdict.detail}")
    return _status(ok)


def cmd_decide_complete(args: argparse.Namespace, settings: Settings) -> int:
    machine = _machine(args, settings)
    c = _certificate(args, machine)
    validation = validate_construction_set(machine, c)
    if not validation:
        verdict = not_complete("; ".join(validation.diagnostics))
        if args.json:
            _dump({"edges": [], "verdict": verdict.to_dict(),
                   "diagnostics": list(validation.diagnostics)})
        else:
            for line in _verdict_lines(verdict):
                _out(line)
        for message in validation.diagnostics:
            _err(f"invalid construction set: {message}")
        return EXIT_FAILED

    graph = constraint_graph(machine, c)
    verdict = decide_complete(machine, c)
    if args.json:
        _dump({"edges": [list(edge) for edge in graph.edges], "verdict": verdict.to_dict()})
        return _status(verdict.complete)

    for q, p in graph.edges:
        _out(f"{q} before {p}")
    for line in _verdict_lines(verdict):
        _out(line)
    return _status(verdict.complete)


def cmd_synthesize(args: argparse.Namespace, settings: Settings) -> int:
    machine = _machine(args, settings)
    c = _certificate(args, machine)
    verdict = verify_master(machine, c)
    if not verdict.complete:
        _err(f"cannot synthesize: certificate is not complete ({verdict.detail})")
        return EXIT_FAILED

    document = _synthesized(machine, c, verdict.order, args.set)
    if args.bfs:
        target = PairState.of(c.focus, parse_state_set(args.set, machine.b.n))
        shortest = shortest_reach_word(machine, target)
        document["bfs"] = word_text(shortest) if shortest is not None else None
        if c.base_word is not None:
            full = c.base_word + synthesize_reach_word(machine, c, verdict.order, target.states)
            document["from_initial"] = word_text(full)
            document["from_initial_reaches"] = render_pair(
                pair_run(machine, initial_pair(machine), full)
            )

    if args.json:
        _dump(document)
        return EXIT_OK
    for key, value in document.items():
        _out(f"{key}\t{value if value is not None else 'unreachable'}")
    return EXIT_OK


def _family_extras(args: argparse.Namespace) -> Dict[str, Any]:
    extras: Dict[str, Any] = {}
    if args.j is not None:
        extras["j"] = args.j
    if args.t is not None:
        extras["t"] = args.t
    return extras


def cmd_verify_family(args: argparse.Namespace, settings: Settings) -> int:
    report = verify_family(args.name, args.m, args.n, **_family_extras(args))
    problems = report.problems()
    if args.json:
        _dump(report.to_dict())
        return _status(not problems)

    _out(f"family\t{report.name}")
    _out(f"m, n\t{report.m}, {report.n}")
    _out(f"mode\t{report.mode}")
    _out(f"reachable\t{report.reachable}")
    _out(f"formula\t{report.formula}")
    _out(f"classes\t{report.classes}")
    if report.wanted_classes != report.formula:
        _out(f"expected classes\t{report.wanted_classes}")
    _out(f"match\t{report.reachable}/{report.formula} {'yes' if report.bfs_match else 'no'}")
    _out(f"cert-via\t{report.certificate_via or '-'}")
    if report.certificate_note:
        _out(f"cert-detail\t{report.certificate_note}")
    if report.erratum:
        _out(f"erratum\t{report.erratum}")
    _out(f"verified\t{'no' if problems else 'yes'}")
    for problem in problems:
        _err(problem)
    return _status(not problems)


def cmd_sweep(args: argparse.Namespace, settings: Settings) -> int:
    names: Sequence[str] = family_names() if args.all or not args.name else args.name
    workers = args.workers or settings.workers
    reports = list(sweep(names, args.m, args.n, workers=workers))
    ok = all(not report.problems() for report in reports)
    if args.json:
        _dump([report.to_dict() for report in reports])
        return _status(ok)
    _out("\t".join(SWEEP_COLUMNS))
    for report in reports:
        _out("\t".join(report.row()))
    return _status(ok)


def cmd_enumerate(args: argparse.Namespace, settings: Settings) -> int:
    if args.k > settings.max_enumerate:
        raise UsageError(f"k={args.k} exceeds the enumeration limit {settings.max_enumerate}")
    if args.k < 0:
        raise UsageError(f"k must be non-negative, got {args.k}")
    machine = _machine(args, settings)
    languages = {
        "dfa": bounded_language(machine, args.k),
        "nfa": bounded_language(build_concat_nfa(machine.a, machine.b), args.k),
        "direct": concatenation_oracle(machine.a, machine.b, args.k),
    }
    equal = languages["dfa"] == languages["nfa"] == languages["direct"]
    ordered = {key: sorted(words, key=lambda w: (len(w), w)) for key, words in languages.items()}
    if args.json:
        _dump({**ordered, "equal": equal})
        return _status(equal)
    for key, words in ordered.items():
        _out(f"{key}\t{len(words)}\t{' '.join(word_text(w) for w in words)}")
    _out(f"equal\t{'yes' if equal else 'no'}")
    return _status(equal)


COMMANDS: Dict[str, Callable[[argparse.Namespace, Settings], int]] = {
    "build-concat": cmd_build_concat,
    "analyze": cmd_analyze,
    "check-cert": cmd_check_cert,
    "decide-complete": cmd_decide_complete,
    "synthesize": cmd_synthesize,
    "verify-family": cmd_verify_family,
    "sweep": cmd_sweep,
    "enumerate": cmd_enumerate,
}


def _add_operands(parser: argparse.ArgumentParser, mode: bool = True):
    parser.add_argument("--A", required=True, help="DFA file of the left operand (file[:name])")
    parser.add_argument("--B", required=True, help="DFA file of the right operand (file[:name])")
    if mode:
        parser.add_argument(
            "--mode", choices=MODES, default=None,
            help="Override the restricted/unrestricted viewpoint",
        )


def create_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Emit a single JSON document")
    common.add_argument("-v", "--verbose", action="count", default=0, help="More logging")
    common.add_argument("--env-file", default=".env", help="Settings file (defaults to .env)")

    parser = argparse.ArgumentParser(
        prog="concat-reach",
        description="Concatenation DFAs, construction-set certificates and witness families",
    )
    commands = parser.add_subparsers(dest="command", required=True, metavar="command")

    sub = commands.add_parser("build-concat", parents=[common], help="Emit the reachable concatenation DFA")
    _add_operands(sub)
    sub.add_argument("--emit", choices=("text", "dot"), default="text")

    sub = commands.add_parser("analyze", parents=[common], help="Reachable and distinguishable state counts")
    _add_operands(sub)

    sub = commands.add_parser("check-cert", parents=[common], help="Verify a construction-set certificate")
    _add_operands(sub)
    sub.add_argument("--cert", required=True, help="Certificate file")
    sub.add_argument("--order-oracle", action="store_true", help="Cross-check against all orders")
    sub.add_argument("--synthesize", metavar="SET", help="Also synthesize a word for SET, e.g. {1,3}")

    sub = commands.add_parser("decide-complete", parents=[common], help="Constraint graph decision")
    _add_operands(sub)
    sub.add_argument("--cert", required=True, help="Certificate file")

    sub = commands.add_parser("synthesize", parents=[common], help="Reach word for a set")
    _add_operands(sub)
    sub.add_argument("--cert", required=True, help="Certificate file")
    sub.add_argument("--set", required=True, help="Target set, e.g. {1,3}")
    sub.add_argument("--bfs", action="store_true", help="Also print the BFS shortest word")

    sub = commands.add_parser("verify-family", parents=[common], help="Verify one witness family")
    sub.add_argument("--name", required=True, choices=family_names())
    sub.add_argument("--m", type=int, required=True)
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--j", type=int, default=None, help="reg-brsi17: state sent to 1 by t")
    sub.add_argument("--t", default=None, help="reg-brsi17: transformation notation of t")

    sub = commands.add_parser("sweep", parents=[common], help="Verify families over a grid")
    sub.add_argument("--m", type=_range, required=True, help="Range such as 3..6")
    sub.add_argument("--n", type=_range, required=True, help="Range such as 3..6")
    sub.add_argument("--all", action="store_true", help="Every family (default)")
    sub.add_argument("--name", action="append", choices=family_names(), help="Family (repeatable)")
    sub.add_argument("--workers", type=int, default=None, help="Process pool size")

    sub = commands.add_parser("enumerate", parents=[common], help="Three-way bounded language check")
    _add_operands(sub, mode=False)
    sub.add_argument("--k", type=int, required=True, help="Maximum word length")

    return parser


def _configure_logging(verbose: int, settings: Settings):
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, settings.log_level, logging.WARNING)
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s %(message)s",
    )


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and return its exit code"""
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return EXIT_OK if ex.code in (0, None) else EXIT_USAGE

    try:
        settings = load_settings(args.env_file)
    except ConcatReachError as ex:
        _err(f"error: {ex}")
        return EXIT_USAGE
    _configure_logging(args.verbose, settings)

    try:
        return COMMANDS[args.command](args, settings)
    except (ConcatReachError, OSError, ValueError) as ex:
        _err(f"error: {ex}")
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
