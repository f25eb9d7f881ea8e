import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wheelerlang.automaton import EmptyLanguage, minimize
from wheelerlang.errors import ParseError
from wheelerlang.oracle import RandomDfaSpec, random_dfa
from wheelerlang.textio import dump_json, export_dot, input_hash, parse_dfa, serialize_dfa


@pytest.mark.parametrize("text,line,msg", [
    ("alphabet a\ninitial 0\nfoo 1\n", 3, "unknown directive"),
    ("alphabet a SUF\ninitial 0\n", 1, "reserved"),
    ("alphabet a ⊢\ninitial 0\n", 1, "reserved"),
    ("alphabet a a\ninitial 0\n", 1, "duplicate"),
    ("alphabet a\ninitial 0\ntrans 0 b 1\n", 3, "undeclared symbol"),
    ("alphabet a\nstates 0\ninitial 0\ntrans 0 a 1\n", 4, "undeclared state"),
    ("alphabet a\ninitial 0\ntrans 0 a 1\ntrans 0 a 0\n", 4, "nondeterministic"),
    ("alphabet a\ninitial 0\ntrans 0 a\n", 3, "trans takes"),
    ("alphabet a\ninitial 0 1\n", 2, "exactly one"),
    ("alphabet a\nalphabet b\n", 2, "second alphabet"),
])
def test_parse_errors_carry_line_numbers(text, line, msg):
    with pytest.raises(ParseError, match=msg) as exc:
        parse_dfa(text)
    assert exc.value.line == line


def test_missing_directives():
    with pytest.raises(ParseError, match="missing alphabet"):
        parse_dfa("initial 0\n")
    with pytest.raises(ParseError, match="missing initial"):
        parse_dfa("alphabet a\n")


def test_comments_and_state_order():
    d = parse_dfa("% header\nalphabet a b\nstates y x\n  % indented comment\n"
                  "initial x\nfinals y\ntrans x a y\n")
    assert d.names == ("y", "x") and d.initial == 1


def test_serialize_round_trip(sample):
    again = parse_dfa(serialize_dfa(sample))
    assert again == sample


def test_serialize_empty_language():
    text = serialize_dfa(EmptyLanguage(("a", "b")))
    assert isinstance(minimize(parse_dfa(text)), EmptyLanguage)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 6), st.integers(1, 4))
def test_serialize_round_trip_random(seed, n, k):
    d = random_dfa(RandomDfaSpec(seed, max_states=n, alphabet_size=k))
    assert parse_dfa(serialize_dfa(d)) == d


def test_export_dot(sample):
    dot = export_dot(sample, highlight_nodes=[1], highlight_edges=[(0, "a", 1)])
    assert dot.startswith("digraph dfa {")
    assert '"q1" [shape=doublecircle, color=red];' in dot
    assert '"s" -> "q1" [label="a", color=red];' in dot
    assert '__start -> "s";' in dot
    assert export_dot(EmptyLanguage(("a",))).count("->") == 0


def test_dot_quotes_names():
    d = parse_dfa('alphabet a\ninitial q"1\nfinals q"1\n')
    assert '"q\\"1"' in export_dot(d)


def test_json_and_hash_are_deterministic():
    obj = {"b": 1, "a": [True, None]}
    assert dump_json(obj) == dump_json(dict(reversed(list(obj.items()))))
    assert json.loads(dump_json(obj)) == obj
    assert input_hash("x") == input_hash("x") != input_hash("y")
