"""Command-line front end.

Subcommands:
  check                decide selected relations for one client/server pair
  matrix               pair x relation table over a corpus directory
  verify-propositions  fixed-point and inclusion checks over corpus (+ random) pairs
  dot                  export a composition universe as graphviz

Exit codes: 0 everything holds, 1 some check fails, 2 error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from pathlib import Path

from . import __version__
from .composition import DEFAULT_MAX_PAIRS, Composition, PairState, PairUniverse, to_dot
from .errors import BccError
from .fixpoint import classify
from .generator import SplitMix64, GenConfig, random_contract
from .lang import DEFAULT_MAX_STATES, compile_term, parse
from .lts import merge_graphs
from .propositions import relation_sets, verify_universe
from .relations import ALL_RELATIONS, RelationKind, evaluate

TOOL = f"bcc {__version__}"
ENV_MAX_PAIRS = "BCC_MAX_PAIRS"
HOLD_MARK = "✓"
FAIL_MARK = "✗"

_PAIR_NAME_RE = re.compile(r"^([pq])([0-9]+)$")


def _default_max_pairs() -> int:
    raw = os.environ.get(ENV_MAX_PAIRS)
    if raw is None:
        return DEFAULT_MAX_PAIRS
    try:
        value = int(raw)
    except ValueError:
        raise BccError(f"{ENV_MAX_PAIRS} must be an integer, got {raw!r}")
    if value < 1:
        raise BccError(f"{ENV_MAX_PAIRS} must be positive, got {raw!r}")
    return value


def _requested_kinds(args) -> tuple:
    if getattr(args, "relations", None) and not args.all:
        by_code = {kind.value: kind for kind in RelationKind}
        seen = dict.fromkeys(args.relations)
        return tuple(by_code[code] for code in seen)
    return ALL_RELATIONS


def _parse_file(path: str, cache: dict) -> dict:
    if path not in cache:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise BccError(f"cannot read {path}: {exc.strerror or exc}")
        cache[path] = {d.name: d for d in parse(text)}
    return cache[path]


def _load_contract(path, name, max_states, cache):
    defs = _parse_file(path, cache)
    if name not in defs:
        raise BccError(f"contract {name!r} is not defined in {path}")
    return compile_term(defs[name].term, max_states, name=name)


def _emit(report: dict, as_json: bool, human_lines, timing_ms: float) -> None:
    if as_json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        for line in human_lines:
            print(line)
        print(f"elapsed: {timing_ms:.1f} ms")


def _pair_entry(client_name, server_name, verdicts) -> dict:
    witness = {
        kind.value: [[ps.client, ps.server] for ps in verdict.witness]
        for kind, verdict in verdicts.items()
        if verdict.witness is not None
    }
    return {
        "client": client_name,
        "server": server_name,
        "verdicts": {kind.value: v.holds for kind, v in verdicts.items()},
        "witness": witness,
    }


def _verdict_cells(verdicts) -> str:
    return "  ".join(
        f"{kind.value} {HOLD_MARK if verdicts[kind].holds else FAIL_MARK}"
        for kind in verdicts
    )


def _witness_lines(verdicts) -> list:
    lines = []
    for kind, verdict in verdicts.items():
        if verdict.witness is not None:
            path = " -> ".join(f"{c}‖{s}" for c, s in verdict.witness)
            lines.append(f"  {kind.value} witness: {path}")
    return lines


# -- check ----------------------------------------------------------------


def _cmd_check(args) -> int:
    start = time.perf_counter()
    max_pairs = args.max_pairs or _default_max_pairs()
    cache = {}
    client = _load_contract(args.client_file, args.client_name, args.max_states, cache)
    server = _load_contract(args.server_file, args.server_name, args.max_states, cache)
    kinds = _requested_kinds(args)
    verdicts = evaluate(client, server, kinds, max_pairs=max_pairs)
    elapsed = (time.perf_counter() - start) * 1000

    report = {
        "tool": TOOL,
        "inputs": {
            "client": {"file": args.client_file, "name": args.client_name},
            "server": {"file": args.server_file, "name": args.server_name},
        },
        "pairs": [_pair_entry(args.client_name, args.server_name, verdicts)],
    }
    human = [
        f"{args.client_name} ‖ {args.server_name}:  {_verdict_cells(verdicts)}"
    ] + _witness_lines(verdicts)
    _emit(report, args.json, human, elapsed)
    return 0 if all(v.holds for v in verdicts.values()) else 1


# -- matrix ---------------------------------------------------------------


def _corpus_definitions(corpus_dir: str):
    """All definitions of the .bc files in a directory (names must be
    globally unique) plus pN/qN-convention notes."""
    directory = Path(corpus_dir)
    if not directory.is_dir():
        raise BccError(f"{corpus_dir} is not a directory")
    defs = {}
    origin = {}
    notes = []
    for path in sorted(directory.glob("*.bc")):
        try:
            file_defs = parse(path.read_text())
        except BccError as exc:
            raise BccError(f"{path}: {exc}")
        for d in file_defs:
            if d.name in origin:
                raise BccError(
                    f"{path}: contract {d.name!r} already defined in {origin[d.name]}"
                )
            defs[d.name] = d
            origin[d.name] = str(path)
    for name in defs:
        m = _PAIR_NAME_RE.match(name)
        if not m:
            notes.append(
                f"note: {origin[name]}: contract {name!r} does not follow "
                "the pN/qN pairing convention"
            )
        else:
            partner = ("q" if m.group(1) == "p" else "p") + m.group(2)
            if partner not in defs:
                notes.append(
                    f"note: {origin[name]}: contract {name!r} has no partner "
                    f"{partner!r}"
                )
    numbers = sorted(
        {
            int(m.group(2))
            for name in defs
            if (m := _PAIR_NAME_RE.match(name))
            and f"p{m.group(2)}" in defs
            and f"q{m.group(2)}" in defs
        }
    )
    pair_names = [(f"p{n}", f"q{n}") for n in numbers]
    return defs, pair_names, notes


def _cmd_matrix(args) -> int:
    start = time.perf_counter()
    max_pairs = args.max_pairs or _default_max_pairs()
    defs, pair_names, notes = _corpus_definitions(args.corpus_dir)
    for note in notes:
        print(note, file=sys.stderr)

    entries = []
    human = []
    header = "pair      " + "  ".join(f"{k.value:>3}" for k in ALL_RELATIONS)
    human.append(header)
    all_hold = True
    for client_name, server_name in pair_names:
        client = compile_term(defs[client_name].term, args.max_states, name=client_name)
        server = compile_term(defs[server_name].term, args.max_states, name=server_name)
        verdicts = evaluate(client, server, max_pairs=max_pairs)
        entries.append(_pair_entry(client_name, server_name, verdicts))
        cells = "  ".join(
            f"{(HOLD_MARK if verdicts[k].holds else FAIL_MARK):>3}"
            for k in ALL_RELATIONS
        )
        human.append(f"{client_name + ' ' + chr(0x2016) + ' ' + server_name:<10}{cells}")
        all_hold = all_hold and all(v.holds for v in verdicts.values())
    elapsed = (time.perf_counter() - start) * 1000

    report = {
        "tool": TOOL,
        "inputs": {"corpus": args.corpus_dir},
        "pairs": entries,
    }
    _emit(report, args.json, human, elapsed)
    return 0 if all_hold else 1


# -- verify-propositions ----------------------------------------------------


def _closed_pairs_greedy(composition, roots, max_pairs):
    """BFS closure of the roots in order, dropping any root whose closure
    would push the universe past max_pairs.  Returns (pairs in discovery
    order, kept root pairs, dropped root positions)."""
    discovered = {}
    kept = []
    dropped = []
    for position, root in enumerate(roots):
        if root in discovered:
            kept.append(root)
            continue
        added = []
        if len(discovered) < max_pairs:
            discovered[root] = None
            added.append(root)
        overflow = len(added) == 0
        cursor = 0
        while cursor < len(added) and not overflow:
            ps = added[cursor]
            cursor += 1
            for t in composition.tau_successors(ps):
                if t not in discovered:
                    if len(discovered) >= max_pairs:
                        overflow = True
                        break
                    discovered[t] = None
                    added.append(t)
        if overflow:
            for ps in added:
                del discovered[ps]
            dropped.append(position)
        else:
            kept.append(root)
    return tuple(discovered), tuple(dict.fromkeys(kept)), tuple(dropped)


def _cmd_verify(args) -> int:
    start = time.perf_counter()
    max_pairs = args.max_pairs or _default_max_pairs()
    defs, pair_names, notes = _corpus_definitions(args.corpus_dir)
    for note in notes:
        print(note, file=sys.stderr)

    labels = []
    client_graphs = []
    server_graphs = []
    for client_name, server_name in pair_names:
        labels.append(f"{client_name}‖{server_name}")
        client_graphs.append(
            compile_term(defs[client_name].term, args.max_states, name=client_name)
        )
        server_graphs.append(
            compile_term(defs[server_name].term, args.max_states, name=server_name)
        )
    rng = SplitMix64(args.seed)
    for i in range(args.random):
        labels.append(f"random{i}")
        client_graphs.append(
            compile_term(
                random_contract(GenConfig(seed=rng.next_u64())), args.max_states
            )
        )
        server_graphs.append(
            compile_term(
                random_contract(GenConfig(seed=rng.next_u64())), args.max_states
            )
        )

    if not client_graphs:
        raise BccError(f"no contract pairs found under {args.corpus_dir}")
    merged_client, client_initials = merge_graphs(client_graphs)
    merged_server, server_initials = merge_graphs(server_graphs)
    composition = Composition(merged_client, merged_server)
    roots = [
        PairState(c, s) for c, s in zip(client_initials, server_initials)
    ]
    pairs, kept_roots, dropped = _closed_pairs_greedy(composition, roots, max_pairs)
    if not kept_roots:
        raise BccError("every pair exceeded the universe bound; raise --max-pairs")
    for position in dropped:
        print(
            f"note: dropped pair {labels[position]}: universe bound "
            f"{max_pairs} exceeded",
            file=sys.stderr,
        )
    universe = PairUniverse(composition, pairs, kept_roots)

    sets = relation_sets(universe)
    reports = verify_universe(universe, sets=sets)
    classification = {
        kind.value: {
            "pre": (cls := classify(sets[kind])).is_pre,
            "post": cls.is_post,
            "fix": cls.is_fix,
        }
        for kind in RelationKind
    }
    elapsed = (time.perf_counter() - start) * 1000

    report = {
        "tool": TOOL,
        "inputs": {
            "corpus": args.corpus_dir,
            "random": args.random,
            "seed": args.seed,
        },
        "universe": {
            "pairs": len(universe),
            "roots": len(kept_roots),
            "dropped": [labels[i] for i in dropped],
        },
        "propositions": [
            {
                "name": r.name,
                "ok": r.ok,
                "counterexamples": [[c, s] for c, s in r.counterexamples],
            }
            for r in reports
        ],
        "classification": classification,
    }
    human = [f"universe: {len(universe)} pairs from {len(kept_roots)} roots"]
    for r in reports:
        mark = "ok  " if r.ok else "FAIL"
        extra = ""
        if not r.ok:
            shown = ", ".join(f"{c}‖{s}" for c, s in r.counterexamples[:4])
            extra = f"  ({len(r.counterexamples)} counterexamples: {shown}...)"
        human.append(f"{mark} {r.name}{extra}")
    _emit(report, args.json, human, elapsed)
    return 0 if all(r.ok for r in reports) else 1


# -- dot --------------------------------------------------------------------


def _cmd_dot(args) -> int:
    max_pairs = args.max_pairs or _default_max_pairs()
    cache = {}
    client = _load_contract(args.client_file, args.client_name, args.max_states, cache)
    server = _load_contract(args.server_file, args.server_name, args.max_states, cache)
    composition = Composition(client, server)
    root = PairState(client.initial, server.initial)
    universe = composition.build_universe([root], max_pairs)
    try:
        Path(args.out_path).write_text(to_dot(universe))
    except OSError as exc:
        raise BccError(f"cannot write {args.out_path}: {exc.strerror or exc}")
    return 0


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bcc",
        description="Decide compliance relations between behavioural contracts "
        "and verify their fixed-point structure.",
    )
    parser.add_argument("--version", action="version", version=TOOL)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument(
            "--max-states",
            type=int,
            default=DEFAULT_MAX_STATES,
            help="per-contract compiled state bound",
        )
        sp.add_argument(
            "--max-pairs",
            type=int,
            default=None,
            help=f"universe pair bound (default {DEFAULT_MAX_PAIRS}, "
            f"or ${ENV_MAX_PAIRS})",
        )

    check = sub.add_parser("check", help="decide relations for one pair")
    check.add_argument("client_file")
    check.add_argument("client_name")
    check.add_argument("server_file")
    check.add_argument("server_name")
    check.add_argument(
        "--relation",
        dest="relations",
        action="append",
        choices=[k.value for k in RelationKind],
        help="relation to decide (repeatable; default all)",
    )
    check.add_argument("--all", action="store_true", help="decide all six relations")
    check.add_argument("--json", action="store_true")
    add_common(check)
    check.set_defaults(func=_cmd_check)

    matrix = sub.add_parser(
        "matrix", help="pair x relation table over a corpus directory"
    )
    matrix.add_argument("corpus_dir")
    matrix.add_argument("--json", action="store_true")
    add_common(matrix)
    matrix.set_defaults(func=_cmd_matrix)

    verify = sub.add_parser(
        "verify-propositions",
        help="fixed-point and inclusion checks over corpus (+ random) pairs",
    )
    verify.add_argument("corpus_dir")
    verify.add_argument(
        "--random", type=int, default=0, help="extra random pairs to include"
    )
    verify.add_argument("--seed", type=int, default=0, help="root seed")
    verify.add_argument("--json", action="store_true")
    add_common(verify)
    verify.set_defaults(func=_cmd_verify)

    dot = sub.add_parser("dot", help="export a composition universe as graphviz")
    dot.add_argument("client_file")
    dot.add_argument("client_name")
    dot.add_argument("server_file")
    dot.add_argument("server_name")
    dot.add_argument("out_path")
    add_common(dot)
    dot.set_defaults(func=_cmd_dot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BccError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
