"""``wasync`` command line.

Exit codes: 0 success, 1 property violation (a failing verification),
2 input error, 3 resource cap hit or inconclusive result.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from .automata import Dfa, PartialDfa
from .engines import (
    careful_shortest_word,
    intersection_nonempty,
    is_subset_reachable,
    is_synchronizing,
    max_sync_set,
    max_sync_set_unary,
    rank_of_automaton,
    rank_of_subset,
    shortest_sync_word,
    subset_shortest_sync_word,
)
from .errors import InputError, ResourceError
from .formats import parse_dfa, parse_matrices, serialize_dfa, serialize_matrices
from .gadgets import (
    GadgetBundle,
    build_a_base,
    family_subset_binary,
    family_subset_large_alphabet,
    family_tight_rank,
    gadget_chromatic_rank,
    gadget_chromatic_rank_binary,
    gadget_is_maxsync_binary,
    gadget_is_maxsync_binary_wa,
    gadget_is_maxsync_large_alphabet,
    gadget_layered_subset,
    gadget_maxsync_padding,
    gadget_sat_careful,
    gadget_sat_intersection,
    gadget_sat_matrices,
    gadget_sat_reachability,
    gadget_sat_subset_sync,
)
from .generators import GENERATORS, gen_random_cnf, gen_random_graph
from .harness import CAMPAIGNS, run_campaign
from .instances import parse_dimacs_cnf, parse_dimacs_graph
from .matrices import is_triangular, positive_product_search, transition_matrix

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _load_dfa(path: str):
    return parse_dfa(_read(path))


def _complete(a) -> Dfa:
    if isinstance(a, PartialDfa):
        if not a.is_complete:
            raise InputError("this command needs a complete automaton (the file is partial)")
        return a.to_dfa()
    return a


def _word(a, w) -> str:
    return a.render(w) if w else "(empty)"


def _emit(args, data: dict[str, Any], lines: list[str]) -> None:
    text = json.dumps(data, indent=2, sort_keys=True) + "\n" if args.json else "\n".join(lines) + "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _yes(b: bool) -> str:
    return "yes" if b else "no"


# ------------------------------------------------------------------ queries


def cmd_check(args) -> int:
    a = _complete(_load_dfa(args.file))
    fast = is_synchronizing(a)
    data: dict[str, Any] = {"synchronizing": fast.synchronizing}
    lines = [f"synchronizing: {_yes(fast.synchronizing)}"]
    if fast.synchronizing and not args.no_shortest:
        res = shortest_sync_word(a, cap=args.cap)
        data.update(word=a.render(res.witness), length=res.length, target=a.state_label(res.target))
        lines += [f"word: {_word(a, res.witness)}", f"length: {res.length}", f"target: {a.state_label(res.target)}"]
    _emit(args, data, lines)
    return EXIT_OK


def cmd_subset(args) -> int:
    a = _complete(_load_dfa(args.file))
    s = a.parse_states(args.set)
    res = subset_shortest_sync_word(a, s)
    data: dict[str, Any] = {"set": [a.state_label(q) for q in s], "synchronizing": res.synchronizing}
    lines = [f"set: {a.render_set(s)}", f"synchronizing: {_yes(res.synchronizing)}"]
    if res.synchronizing:
        data.update(word=a.render(res.witness), length=res.length, target=a.state_label(res.target))
        lines += [f"word: {_word(a, res.witness)}", f"length: {res.length}", f"target: {a.state_label(res.target)}"]
    _emit(args, data, lines)
    return EXIT_OK


def cmd_rank(args) -> int:
    a = _complete(_load_dfa(args.file))
    if args.set:
        res = rank_of_subset(a, a.parse_states(args.set))
    else:
        res = rank_of_automaton(a, method="exact" if args.exact else "auto", cap=args.cap)
    data = {"rank": res.rank, "word": a.render(res.witness), "length": len(res.witness),
            "image": [a.state_label(q) for q in res.final_image]}
    lines = [f"rank: {res.rank}", f"word: {_word(a, res.witness)}", f"length: {len(res.witness)}",
             f"image: {a.render_set(res.final_image)}"]
    _emit(args, data, lines)
    return EXIT_OK


def cmd_maxset(args) -> int:
    a = _complete(_load_dfa(args.file))
    if args.mode == "unary":
        res = max_sync_set_unary(a)
    else:
        res = max_sync_set(a, mode=args.mode)
    data = {"size": res.size, "set": [a.state_label(q) for q in res.set], "word": a.render(res.witness),
            "target": a.state_label(res.target), "mode": args.mode}
    lines = [f"size: {res.size}", f"set: {a.render_set(res.set)}", f"word: {_word(a, res.witness)}",
             f"target: {a.state_label(res.target)}"]
    _emit(args, data, lines)
    return EXIT_OK


def cmd_careful(args) -> int:
    a = _load_dfa(args.file)
    res = careful_shortest_word(a, cap=args.cap)
    data: dict[str, Any] = {"carefully_synchronizing": res.synchronizing}
    lines = [f"carefully synchronizing: {_yes(res.synchronizing)}"]
    if res.synchronizing:
        data.update(word=a.render(res.witness), length=res.length, target=a.state_label(res.target))
        lines += [f"word: {_word(a, res.witness)}", f"length: {res.length}", f"target: {a.state_label(res.target)}"]
    _emit(args, data, lines)
    return EXIT_OK


def cmd_reach(args) -> int:
    a = _complete(_load_dfa(args.file))
    target = a.parse_states(args.set)
    res = is_subset_reachable(a, target, cap=args.cap)
    data: dict[str, Any] = {"target": [a.state_label(q) for q in target], "reachable": res.reachable}
    lines = [f"target: {a.render_set(target)}", f"reachable: {_yes(res.reachable)}"]
    if res.reachable:
        data.update(word=a.render(res.witness), length=len(res.witness))
        lines += [f"word: {_word(a, res.witness)}", f"length: {len(res.witness)}"]
    _emit(args, data, lines)
    return EXIT_OK


def cmd_intersect(args) -> int:
    triples = []
    for path, init, accepting in args.acceptor:
        a = _complete(_load_dfa(path))
        triples.append((a, a.state_index(init), a.parse_states(accepting)))
    res = intersection_nonempty(triples)
    first = triples[0][0]
    data: dict[str, Any] = {"nonempty": res.nonempty}
    lines = [f"nonempty: {_yes(res.nonempty)}"]
    if res.nonempty:
        data.update(word=first.render(res.witness), length=len(res.witness))
        lines += [f"word: {_word(first, res.witness)}", f"length: {len(res.witness)}"]
    _emit(args, data, lines)
    return EXIT_OK


# ------------------------------------------------------------------ gadgets


def _need(args, name: str):
    value = getattr(args, name)
    if value is None:
        raise InputError(f"gadget {args.name!r} needs --{name}")
    return value


def _cnf(args):
    return parse_dimacs_cnf(_read(_need(args, "cnf")))


def _graph(args):
    return parse_dimacs_graph(_read(_need(args, "graph")))


def _padding(args):
    a = _complete(_load_dfa(_need(args, "dfa")))
    return gadget_maxsync_padding(a, a.parse_states(_need(args, "set")))


GADGETS = {
    "tight-rank": lambda a: family_tight_rank(_need(a, "n"), _need(a, "r")),
    "subset-binary": lambda a: family_subset_binary(_need(a, "n"), _need(a, "k")),
    "subset-large-alphabet": lambda a: family_subset_large_alphabet(_need(a, "n"), _need(a, "k")),
    "layered-subset": lambda a: gadget_layered_subset(_complete(_load_dfa(_need(a, "dfa")))),
    "maxsync-padding": _padding,
    "is-maxsync": lambda a: gadget_is_maxsync_large_alphabet(_graph(a)),
    "is-maxsync-binary": lambda a: gadget_is_maxsync_binary(_graph(a)),
    "is-maxsync-binary-wa": lambda a: gadget_is_maxsync_binary_wa(_graph(a)),
    "chromatic-rank": lambda a: gadget_chromatic_rank(_graph(a)),
    "chromatic-rank-binary": lambda a: gadget_chromatic_rank_binary(_graph(a)),
    "sat-subset-sync": lambda a: gadget_sat_subset_sync(_cnf(a)),
    "sat-intersection": lambda a: gadget_sat_intersection(_cnf(a)),
    "a-base": lambda a: build_a_base(_cnf(a)),
    "sat-careful": lambda a: gadget_sat_careful(_cnf(a)),
    "sat-reachability": lambda a: gadget_sat_reachability(_cnf(a)),
}


def _bundle_text(b: GadgetBundle) -> str:
    # the sidecar rides along as comment lines, so the output still parses as a DFA
    comment = "".join(f"# {line}\n" for line in b.sidecar_json().splitlines())
    return serialize_dfa(b.automaton) + comment


def cmd_gadget(args) -> int:
    built = GADGETS[args.name](args)
    bundles = built if isinstance(built, list) else [built]
    if args.out:
        for i, b in enumerate(bundles, start=1):
            prefix = args.out if len(bundles) == 1 else f"{args.out}.{i}"
            dfa_path, json_path = b.write(prefix)
            print(f"wrote {dfa_path} and {json_path}")
    else:
        sys.stdout.write("\n".join(_bundle_text(b) for b in bundles))
    return EXIT_OK


def cmd_matrices(args) -> int:
    if (args.file is None) == (args.cnf is None):
        raise InputError("give either a DFA file or --cnf")
    if args.cnf is not None:
        ms = gadget_sat_matrices(parse_dimacs_cnf(_read(args.cnf)))
    else:
        a = _load_dfa(args.file)
        ms = [transition_matrix(a, x) for x in range(a.n_letters)]
    text = serialize_matrices(ms)
    if args.triangular:
        for i, m in enumerate(ms):
            kinds = [o for o in ("upper", "lower") if is_triangular(m, o)]
            text += f"# matrix {i}: {' and '.join(kinds) + ' triangular' if kinds else 'not triangular'}\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_positive(args) -> int:
    ms = parse_matrices(_read(args.file))
    res = positive_product_search(ms, cap=args.cap)
    data: dict[str, Any] = {"status": res.status, "explored": res.explored,
                            "sequence": list(res.sequence) if res.found else None}
    lines = [f"status: {res.status}", f"explored: {res.explored}"]
    if res.found:
        lines.append("sequence: " + " ".join(map(str, res.sequence)))
    _emit(args, data, lines)
    return EXIT_RESOURCE if res.status == "inconclusive" else EXIT_OK


def cmd_gen(args) -> int:
    if args.generator == "graph":
        text = gen_random_graph(args.n, args.seed, args.density).to_dimacs()
    elif args.generator == "cnf":
        text = gen_random_cnf(args.n, args.m, args.seed, args.width).to_dimacs()
    else:
        text = serialize_dfa(GENERATORS[args.generator](args.n, args.k, args.seed))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _param(text: str) -> tuple[str, Any]:
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected KEY=VALUE, got {text!r}")
    try:
        return key, int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"parameter {key!r} needs an integer value") from None


def cmd_verify(args) -> int:
    if args.list or args.campaign is None:
        for c in CAMPAIGNS.values():
            print(f"{c.name:<22} {c.description}")
        return EXIT_OK if args.list else EXIT_INPUT
    report = run_campaign(args.campaign, dict(args.param), seed=args.seed, count=args.count)
    text = report.to_json() if args.json else report.to_table()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(report.to_table().splitlines()[0])
    else:
        sys.stdout.write(text)
    return report.exit_code


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wasync", description="Synchronization of (weakly acyclic) automata.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND", parser_class=_Parser)

    def query(name: str, help_: str, with_set: bool = False, set_required: bool = False, cap: bool = False):
        q = sub.add_parser(name, help=help_)
        q.add_argument("file", help="DFA file, or - for standard input")
        if with_set:
            q.add_argument("--set", required=set_required, help="comma-separated state indices or names")
        if cap:
            q.add_argument("--cap", type=int, default=None, help="maximum state count for whole-automaton search")
        q.add_argument("--json", action="store_true", help="JSON output")
        q.add_argument("--out", help="write output to this file")
        return q

    c = query("check", "synchronizability and a shortest synchronizing word", cap=True)
    c.add_argument("--no-shortest", action="store_true", help="only run the polynomial pair test")
    c.set_defaults(func=cmd_check)
    query("subset", "shortest word synchronizing a state set", True, True).set_defaults(func=cmd_subset)
    r = query("rank", "rank of the automaton or of a state set", True, cap=True)
    r.add_argument("--exact", action="store_true", help="always use exact search")
    r.set_defaults(func=cmd_rank)
    m = query("maxset", "largest synchronizing set")
    m.add_argument("--mode", choices=["exact", "monoid", "witness", "unary"], default="exact")
    m.set_defaults(func=cmd_maxset)
    query("careful", "shortest carefully synchronizing word of a partial DFA", cap=True).set_defaults(func=cmd_careful)
    query("reach", "is a state set the image of Q under some word", True, True, cap=True).set_defaults(func=cmd_reach)

    it = sub.add_parser("intersect", help="common word accepted by several DFAs")
    it.add_argument("--acceptor", nargs=3, action="append", required=True, metavar=("FILE", "INIT", "ACCEPTING"),
                    help="DFA file, initial state, comma-separated accepting states (repeatable)")
    it.add_argument("--json", action="store_true")
    it.add_argument("--out")
    it.set_defaults(func=cmd_intersect)

    g = sub.add_parser("gadget", help="build a family member or reduction gadget")
    g.add_argument("name", choices=sorted(GADGETS))
    g.add_argument("--cnf", help="DIMACS CNF file")
    g.add_argument("--graph", help="DIMACS graph file")
    g.add_argument("--dfa", help="source DFA file")
    g.add_argument("--set", help="state set of the source DFA")
    for flag in ("n", "k", "r"):
        g.add_argument(f"--{flag}", type=int)
    g.add_argument("--out", help="output prefix: writes PREFIX.dfa and PREFIX.json")
    g.set_defaults(func=cmd_gadget)

    mx = sub.add_parser("matrices", help="transition matrices of a DFA, or the matrix gadget of a CNF")
    mx.add_argument("file", nargs="?")
    mx.add_argument("--cnf")
    mx.add_argument("--triangular", action="store_true", help="annotate triangularity")
    mx.add_argument("--out")
    mx.set_defaults(func=cmd_matrices)

    pp = sub.add_parser("positive", help="search for an all-ones product of boolean matrices")
    pp.add_argument("file")
    pp.add_argument("--cap", type=int, default=None, help="semigroup element budget")
    pp.add_argument("--json", action="store_true")
    pp.add_argument("--out")
    pp.set_defaults(func=cmd_positive)

    gn = sub.add_parser("gen", help="seeded random instance")
    gn.add_argument("generator", choices=sorted(GENERATORS) + ["graph", "cnf"])
    gn.add_argument("--n", type=int, required=True, help="states, vertices or variables")
    gn.add_argument("--k", type=int, default=2, help="letters")
    gn.add_argument("--m", type=int, default=4, help="clauses")
    gn.add_argument("--width", type=int, default=3, help="literals per clause")
    gn.add_argument("--density", type=float, default=0.5, help="edge probability")
    gn.add_argument("--seed", type=int, default=0)
    gn.add_argument("--out")
    gn.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="run a verification campaign")
    v.add_argument("campaign", nargs="?", choices=sorted(CAMPAIGNS), metavar="CAMPAIGN")
    v.add_argument("--list", action="store_true", help="list campaigns")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--count", type=int, default=None, help="random instances (default per campaign)")
    v.add_argument("--param", type=_param, action="append", default=[], metavar="KEY=VALUE")
    v.add_argument("--json", action="store_true")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as e:  # --help
        return EXIT_OK if e.code in (0, None) else EXIT_INPUT
    try:
        return args.func(args)
    except InputError as e:
        print(f"wasync: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceError as e:
        print(f"wasync: inconclusive: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except OSError as e:
        print(f"wasync: error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
