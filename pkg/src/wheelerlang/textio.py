"""Line-oriented automaton files, OV instance files, DOT export and JSON helpers.

Automaton file syntax (``%`` starts a comment line)::

    alphabet a b c
    states s q1 q2        % optional: declares states and their order
    initial s
    finals q1 q2
    trans s a q1
"""
from __future__ import annotations

import hashlib
import json
from typing import Iterable

from .automaton import RESERVED_TOKENS, Dfa, EmptyLanguage
from .errors import InputError, ParseError


def parse_dfa(text: str) -> Dfa:
    alphabet: list[str] | None = None
    states: list[str] | None = None
    initial: str | None = None
    finals: list[tuple[int, str]] = []
    transitions: list[tuple[int, str, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        key, *args = line.split()
        if key == "alphabet":
            if alphabet is not None:
                raise ParseError("second alphabet line", lineno)
            for a in args:
                if a in RESERVED_TOKENS:
                    raise ParseError(f"symbol {a!r} is reserved", lineno)
            if len(set(args)) != len(args):
                raise ParseError("duplicate alphabet symbol", lineno)
            alphabet = args
        elif key == "states":
            if states is not None:
                raise ParseError("second states line", lineno)
            if len(set(args)) != len(args):
                raise ParseError("duplicate state name", lineno)
            states = args
        elif key == "initial":
            if initial is not None:
                raise ParseError("second initial line", lineno)
            if len(args) != 1:
                raise ParseError("initial takes exactly one state", lineno)
            initial = args[0]
        elif key == "finals":
            finals.extend((lineno, f) for f in args)
        elif key == "trans":
            if len(args) != 3:
                raise ParseError("trans takes <state> <symbol> <state>", lineno)
            transitions.append((lineno, *args))
        else:
            raise ParseError(f"unknown directive {key!r}", lineno)
    if alphabet is None:
        raise ParseError("missing alphabet line")
    if initial is None:
        raise ParseError("missing initial line")
    declared = set(states) if states is not None else None
    sym = set(alphabet)

    def need_state(name, lineno):
        if declared is not None and name not in declared:
            raise ParseError(f"undeclared state {name!r}", lineno)

    need_state(initial, None)
    seen: dict[tuple[str, str], str] = {}
    for lineno, p, a, q in transitions:
        if a not in sym:
            raise ParseError(f"undeclared symbol {a!r}", lineno)
        need_state(p, lineno)
        need_state(q, lineno)
        if (p, a) in seen and seen[(p, a)] != q:
            raise ParseError(f"nondeterministic: two transitions from {p} on {a}", lineno)
        seen[(p, a)] = q
    for lineno, f in finals:
        need_state(f, lineno)
    try:
        return Dfa.build(alphabet, [(p, a, q) for _, p, a, q in transitions], initial,
                         [f for _, f in finals], states or ())
    except InputError as exc:
        raise ParseError(str(exc)) from None


def serialize_dfa(dfa: Dfa | EmptyLanguage) -> str:
    """Text form with an explicit ``states`` line, so parsing restores ids."""
    if isinstance(dfa, EmptyLanguage):
        lines = ["% empty language", "alphabet " + " ".join(dfa.alphabet),
                 "states dead", "initial dead"]
        return "\n".join(lines) + "\n"
    names = dfa.names
    lines = ["alphabet " + " ".join(dfa.alphabet),
             "states " + " ".join(names),
             f"initial {names[dfa.initial]}"]
    if dfa.finals:
        lines.append("finals " + " ".join(names[q] for q in sorted(dfa.finals)))
    for p, a, q in dfa.edges():
        lines.append(f"trans {names[p]} {dfa.alphabet[a]} {names[q]}")
    return "\n".join(lines) + "\n"


def read_dfa(path: str) -> Dfa:
    with open(path, encoding="utf-8") as fh:
        return parse_dfa(fh.read())


def write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        print(text, end="")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _dot_id(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(dfa: Dfa | EmptyLanguage, highlight_nodes: Iterable[int] = (),
               highlight_edges: Iterable[tuple[int, str, int]] = ()) -> str:
    """DOT digraph; final states are double circles, highlighted parts red."""
    if isinstance(dfa, EmptyLanguage):
        return "digraph dfa {\n  rankdir=LR;\n}\n"
    hot_nodes = set(highlight_nodes)
    hot_edges = set(highlight_edges)
    out = ["digraph dfa {", "  rankdir=LR;", '  __start [shape=point, label=""];']
    for q, name in enumerate(dfa.names):
        attrs = ["shape=doublecircle" if q in dfa.finals else "shape=circle"]
        if q in hot_nodes:
            attrs.append("color=red")
        out.append(f"  {_dot_id(name)} [{', '.join(attrs)}];")
    out.append(f"  __start -> {_dot_id(dfa.names[dfa.initial])};")
    for p, a, q in dfa.edges():
        sym = dfa.alphabet[a]
        attrs = [f"label={_dot_id(sym)}"]
        if (p, sym, q) in hot_edges:
            attrs.append("color=red")
        out.append(f"  {_dot_id(dfa.names[p])} -> {_dot_id(dfa.names[q])} [{', '.join(attrs)}];")
    out.append("}")
    return "\n".join(out) + "\n"


def input_hash(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
