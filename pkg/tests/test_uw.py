import random

import pytest

from wheelerlang.automaton import PRE, SUF, EmptyLanguage
from wheelerlang.classify import is_slt
from wheelerlang.errors import InputError, PreconditionError, ResourceBudgetExceeded
from wheelerlang.hardness import gen_ov, ov_to_dfa
from wheelerlang.oracle import brute_uw, exact_p_table
from wheelerlang.order import AlphabetOrder, is_wheeler_language
from wheelerlang.uw import (decide_uw, intertwined, lambda_prime, propagate, seed_quadruples,
                            t_table, uw_graph)


def test_lambda_prime_keeps_smallest_labels(left):
    # minimized numbering of the left automaton: 1, 2, 4, 3
    assert left.names == ("1", "2", "4", "3")
    assert lambda_prime(left) == [(), ("a", "b"), ("a", "b", "c"), ("a", "c")]
    assert lambda_prime(left, 2) == [(), ("a", "b"), ("a", "b"), ("a", "c")]
    with pytest.raises(InputError):
        lambda_prime(left, 0)


def test_seed_quadruples_right(right):
    seeds = seed_quadruples(right)
    assert seeds[:2] == [(0, 1, SUF, SUF), (0, 2, SUF, SUF)]
    assert [s for s in seeds if s[:2] == (1, 2)] == [
        (1, 2, "a", "c"), (1, 2, "b", "a"), (1, 2, "b", "c")]
    assert (1, 0, PRE, PRE) in seeds
    assert all(p != q for p, q, _, _ in seeds)


def test_t_table_right_frozen(right):
    t = t_table(right)
    assert t[(1, 2)] == (("a", "c"), ("b", "a"))
    assert t[(2, 1)] == (("a", "b"), ("c", "a"))
    # 2' is reached by a, a proper suffix of aa, which reaches 3'
    assert exact_p_table(right)[(1, 2)] == {(SUF, SUF), ("a", "c"), ("b", "a"), ("b", "c")}


def test_not_uw_abc_not_uw(left):
    v = decide_uw(left)
    assert not v.uw
    assert len(v.witnesses) == 2 and v.witnesses[0] != v.witnesses[1]
    assert not is_wheeler_language(left, v.violating_order)
    for node in v.cycle.nodes:
        assert intertwined(left, *node)
    # state 3 (index 3) carries a c-self-loop and is intertwined with state 4
    assert left.names[3] == "3" and left.delta[3][2] == 3
    assert len(t_table(left)[(3, 2)]) == 2


def test_complement_uw_abc_uw(right):
    assert decide_uw(right).uw
    assert decide_uw(right, backend="dense").uw


def test_sample_not_uw(sample_min):
    v = decide_uw(sample_min)
    assert not v.uw
    assert set(v.witnesses) == {("a", "c"), ("a", "d")}
    order = v.violating_order
    assert not is_wheeler_language(sample_min, order)
    # the witnesses pin down a < c and d < a
    assert order.less("a", "c") and order.less("d", "a")


def test_two_label_variant_misses_a_violation(gap):
    """Keeping only two in-labels loses the witness (c, a) on pair (2, 3)."""
    assert brute_uw(gap) is False
    assert not is_wheeler_language(gap, AlphabetOrder(("a", "b", "c")))
    assert decide_uw(gap, lambda_width=2).uw
    assert not decide_uw(gap).uw
    assert not decide_uw(gap, backend="dense").uw
    assert len(exact_p_table(gap)[(2, 3)]) >= 2
    assert not t_table(gap, lambda_width=2).intertwined(2, 3)
    assert t_table(gap).intertwined(2, 3)


def test_requires_minimal(sample):
    with pytest.raises(PreconditionError):
        decide_uw(sample)


def test_empty_and_chain_inputs(ew_chain):
    assert decide_uw(EmptyLanguage(("a",))).uw
    assert not decide_uw(ew_chain).uw


def test_node_budget():
    d = ov_to_dfa(gen_ov(6, 4, 0)).dfa
    with pytest.raises(ResourceBudgetExceeded):
        decide_uw(d, node_budget=100)


def test_bad_backend(left):
    with pytest.raises(InputError):
        decide_uw(left, backend="gpu")
    with pytest.raises(InputError):
        intertwined(left, 1, 1)


@pytest.mark.parametrize("discipline", ["fifo", "lifo", "random"])
def test_queue_discipline_independence(corpus, discipline):
    rng = random.Random(7)
    for dfa in corpus[:400]:
        base = t_table(dfa)
        other = propagate(dfa, seed_quadruples(dfa), discipline=discipline, rng=rng)
        assert {pq for pq in base.entries if base.intertwined(*pq)} == \
               {pq for pq in other.entries if other.intertwined(*pq)}


def test_unknown_discipline(left):
    with pytest.raises(InputError):
        propagate(left, seed_quadruples(left), discipline="stack")


def test_backends_agree(corpus):
    for dfa in corpus:
        a = decide_uw(dfa, backend="sparse")
        b = decide_uw(dfa, backend="dense")
        assert a.uw == b.uw


@pytest.mark.parametrize("N,d,seed,mode", [
    (4, 3, 1, "planted_yes"), (5, 4, 2, "planted_no"), (6, 5, 3, "random"), (8, 6, 4, "random"),
])
def test_backends_agree_on_reductions(N, d, seed, mode):
    dfa = ov_to_dfa(gen_ov(N, d, seed, mode)).dfa
    a = decide_uw(dfa, check=False, backend="sparse")
    b = decide_uw(dfa, check=False, backend="dense")
    assert a.uw == b.uw
    for v in (a, b):
        if not v.uw:
            assert not is_wheeler_language(dfa, v.violating_order, check=False)


def test_slt_implies_uw(corpus):
    for dfa in corpus:
        if is_slt(dfa):
            assert decide_uw(dfa).uw


def test_work_bound(corpus):
    c = 0.0
    for dfa in corpus:
        v = decide_uw(dfa)
        m = max(dfa.num_edges, 1)
        c = max(c, v.pushes / (dfa.n * max(dfa.n, m)))
        edges2 = sum(1 for p in range(dfa.n) for q in range(dfa.n) if p != q
                     for a in range(len(dfa.alphabet))
                     if dfa.delta[p][a] >= 0 and dfa.delta[q][a] >= 0)
        assert v.pushes <= 2 * edges2 + len(seed_quadruples(dfa))
    assert c <= 11


def test_uw_graph_nodes_are_intertwined(left):
    t = t_table(left)
    g = uw_graph(left, t)
    assert all(t.intertwined(*pq) for pq in g.nodes)
    assert all(src in g.nodes and dst in g.nodes for src, _, dst in g.edges)
