import pytest

from wheelerlang.automaton import (EmptyLanguage, accepts, complement, is_prefix_universal,
                                   minimize)
from wheelerlang.classify import (ClassificationReport, check_report, classify,
                                  decomposition_automaton, ew_necessary, is_definite,
                                  is_reverse_definite, is_slt, prefix_intersection_finite,
                                  rdef_decomposition)
from wheelerlang.errors import InternalInconsistency, PreconditionError
from wheelerlang.oracle import (all_orders, brute_uw, equal_label_cycles, exact_ew_small,
                                language_equal, structural_def, structural_rdef)
from wheelerlang.order import is_wheeler_language
from wheelerlang.textio import parse_dfa


def dfa(text):
    return minimize(parse_dfa(text))


FINITE_AB = dfa("alphabet a b\ninitial 0\nfinals 2\ntrans 0 a 1\ntrans 1 b 2\n")
ENDS_IN_A = dfa("alphabet a b\ninitial 0\nfinals 1\n"
                "trans 0 a 1\ntrans 0 b 0\ntrans 1 a 1\ntrans 1 b 0\n")
STARTS_WITH_A = dfa("alphabet a b\ninitial 0\nfinals 1\n"
                    "trans 0 a 1\ntrans 1 a 1\ntrans 1 b 1\n")
ENDS_IN_AB = dfa("alphabet a b\ninitial 0\nfinals 2\ntrans 0 a 1\ntrans 0 b 0\n"
                 "trans 1 a 1\ntrans 1 b 2\ntrans 2 a 1\ntrans 2 b 0\n")
EVEN_AS = dfa("alphabet a b\ninitial 0\nfinals 0\n"
              "trans 0 a 1\ntrans 0 b 0\ntrans 1 a 0\ntrans 1 b 1\n")


@pytest.mark.parametrize("lang,expected", [
    (FINITE_AB, dict(finite=True, slt=True, uw=True, comp_uw=True, definite=True,
                     reverse_definite=True, prefix_universal=False)),
    (ENDS_IN_A, dict(finite=False, uw=True, comp_uw=True, definite=True,
                     reverse_definite=False, prefix_universal=True)),
    (ENDS_IN_AB, dict(finite=False, slt=True, uw=True, definite=True,
                      reverse_definite=False, prefix_universal=True)),
    (STARTS_WITH_A, dict(finite=False, uw=True, comp_uw=True, definite=False,
                         reverse_definite=True, prefix_universal=False)),
    (EVEN_AS, dict(finite=False, slt=False, uw=False, comp_uw=False, definite=False,
                   reverse_definite=False, prefix_universal=True)),
])
def test_classify_known_languages(lang, expected):
    report = classify(lang)
    got = report.verdicts()
    for key, value in expected.items():
        assert got[key] == value, key


def test_classify_fixtures(left, right, ew_chain):
    assert not is_definite(left)
    r = classify(left)
    assert not r.uw and r.comp_uw
    assert "uw" in r.certificates
    assert classify(right).uw
    chain = classify(ew_chain)
    assert not chain.ew_possible and chain.certificates["ew"].triple is not None


def test_empty_language_classification():
    r = classify(EmptyLanguage(("a", "b")))
    assert r.finite and r.definite and r.reverse_definite and r.uw


def test_check_report_catches_contradictions():
    bad = ClassificationReport(finite=False, prefix_universal=False, slt=True, uw=False,
                               comp_uw=True, definite=False, reverse_definite=False,
                               ew_possible=True)
    with pytest.raises(InternalInconsistency):
        check_report(bad)


def test_rdef_decomposition_examples():
    dec = rdef_decomposition(STARTS_WITH_A)
    assert dec.G == {("a",)} and not dec.F
    dec = rdef_decomposition(FINITE_AB)
    assert dec.F == {("a", "b")} and not dec.G
    with pytest.raises(PreconditionError):
        rdef_decomposition(EVEN_AS)


def test_decomposition_automaton():
    d = decomposition_automaton("ab", [("b",)], [("a", "a")])
    assert accepts(d, "b") and accepts(d, "aab") and not accepts(d, "ab")


def test_ew_chain_triple(ew_chain):
    v = ew_necessary(ew_chain)
    assert not v.possible
    assert len(set(v.triple)) == 3
    assert v.gamma and set(v.gamma) == {"a"}
    assert not exact_ew_small(ew_chain)


def test_is_slt_matches_bounded_cycle_search(corpus):
    for m in corpus[:600]:
        bound = m.n * m.n
        found = any(equal_label_cycles(m, p, q, bound)
                    for p in range(m.n) for q in range(m.n) if p != q)
        assert is_slt(m).slt == (not found)


def test_reverse_definite_matches_structure(corpus):
    for m in corpus:
        assert is_reverse_definite(m) == structural_rdef(m)


def test_definite_matches_structure(corpus):
    for m in corpus:
        if m.n <= 6:
            assert is_definite(m) == structural_def(m)


def test_prefix_intersection_infinite_iff_complement_fails(corpus):
    checked = 0
    for m in corpus:
        if is_prefix_universal(m) or not brute_uw(m):
            continue
        checked += 1
        comp = complement(m)
        comp_fails = any(not is_wheeler_language(comp, o) for o in all_orders(m.alphabet))
        assert (not prefix_intersection_finite(m).finite) == comp_fails
    assert checked > 100


def test_prefix_intersection_words_are_common_prefixes():
    r = prefix_intersection_finite(STARTS_WITH_A)
    assert r.finite and r.words == {()}
    assert not prefix_intersection_finite(EVEN_AS).finite


def test_ew_necessary_has_no_false_alarms(corpus):
    for m in corpus:
        if not ew_necessary(m).possible:
            assert not exact_ew_small(m)


def test_rdef_round_trip(corpus):
    for m in corpus:
        if is_reverse_definite(m):
            dec = rdef_decomposition(m)
            f = [w for w in dec.F if accepts(m, w)]
            assert language_equal(decomposition_automaton(m.alphabet, f, dec.G), m)
