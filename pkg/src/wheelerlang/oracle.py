"""Slow, independent reference implementations for cross-checking the deciders.

Nothing here is meant for large inputs: every function either sweeps all
alphabet orders, enumerates words, or determinizes, and refuses inputs past a
small guard.
"""
from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .automaton import (PRE, SUF, UNDEFINED, Dfa, EmptyLanguage, complete, cycle_within,
                        incoming_labels, minimize)
from .errors import InputError, ResourceBudgetExceeded, WheelerError
from .order import AlphabetOrder, colex_compare, is_wheeler_language, LT

MAX_SWEEP_ALPHABET = 8
MAX_EW_ALPHABET = 6
MAX_DETERMINIZE_STATES = 12


def all_orders(alphabet: Sequence[str], limit: int = MAX_SWEEP_ALPHABET) -> list[AlphabetOrder]:
    """Every permutation, lexicographic in declaration rank."""
    if len(alphabet) > limit:
        raise ResourceBudgetExceeded(
            f"{len(alphabet)} symbols give too many orders to sweep (limit {limit})")
    return [AlphabetOrder(p) for p in itertools.permutations(alphabet)]


def brute_uw(min_dfa: Dfa | EmptyLanguage) -> bool:
    return all(is_wheeler_language(min_dfa, o) for o in all_orders(min_dfa.alphabet))


def exact_ew_small(min_dfa: Dfa | EmptyLanguage) -> bool:
    orders = all_orders(min_dfa.alphabet, MAX_EW_ALPHABET)
    return any(is_wheeler_language(min_dfa, o) for o in orders)


# ---------------------------------------------------------------------------
# Word-level reconstruction of the less-than relation

def _shortest_words(dfa: Dfa):
    """Shortest word into each state, and shortest word into ``q`` ending in ``a``."""
    access: list = [None] * dfa.n
    access[dfa.initial] = ()
    queue = deque([dfa.initial])
    while queue:
        p = queue.popleft()
        for a, q in enumerate(dfa.delta[p]):
            if q != UNDEFINED and access[q] is None:
                access[q] = access[p] + (dfa.alphabet[a],)
                queue.append(q)
    ending: dict = {}
    for p, row in enumerate(dfa.delta):
        for a, q in enumerate(row):
            if q == UNDEFINED or access[p] is None:
                continue
            w = access[p] + (dfa.alphabet[a],)
            key = (q, dfa.alphabet[a])
            if key not in ending or len(w) < len(ending[key]):
                ending[key] = w
    return access, ending


def _backward_pairs(dfa: Dfa, target: tuple[int, int]) -> dict:
    """All pairs ``(p', q')`` with a word ``γ`` carrying them to ``target``,
    mapped to one such (shortest) ``γ``."""
    preds: list[list[tuple[int, int]]] = [[] for _ in range(dfa.n)]
    for p, row in enumerate(dfa.delta):
        for a, q in enumerate(row):
            if q != UNDEFINED:
                preds[q].append((a, p))
    by_symbol = [[[p for b, p in preds[q] if b == a] for q in range(dfa.n)]
                 for a in range(len(dfa.alphabet))]
    seen = {target: ()}
    queue = deque([target])
    while queue:
        p, q = queue.popleft()
        gamma = seen[(p, q)]
        for a in range(len(dfa.alphabet)):
            for x in by_symbol[a][p]:
                for y in by_symbol[a][q]:
                    if (x, y) not in seen:
                        seen[(x, y)] = (dfa.alphabet[a],) + gamma
                        queue.append((x, y))
    return seen


def lt_witness_candidates(dfa: Dfa) -> dict:
    """For each ordered pair of distinct states, concrete word pairs
    ``(alpha, beta)`` with ``alpha`` reaching ``p`` and ``beta`` reaching
    ``q`` that cover every way ``alpha < beta`` can happen: one pair per
    distinct last differing letters ``(a, b)``, plus one proper-suffix pair."""
    access, ending = _shortest_words(dfa)
    lam = incoming_labels(dfa)
    s = dfa.initial
    nonempty = {}
    for (q, a), w in ending.items():
        if q not in nonempty or len(w) < len(nonempty[q]):
            nonempty[q] = w
    result = {}
    for p in range(dfa.n):
        for q in range(dfa.n):
            if p == q:
                continue
            cands: dict = {}
            for (x, y), gamma in _backward_pairs(dfa, (p, q)).items():
                for a in lam[x]:
                    for b in lam[y]:
                        if a != b and (a, b) not in cands:
                            cands[(a, b)] = (ending[(x, a)] + gamma, ending[(y, b)] + gamma)
                if x == s and y in nonempty and SUF not in cands:
                    cands[SUF] = (gamma, nonempty[y] + gamma)
            for alpha, beta in cands.values():
                if dfa.run(alpha) != p or dfa.run(beta) != q:
                    raise WheelerError("witness word lands in the wrong state")
            result[(p, q)] = list(cands.values())
    return result


def brute_lt(dfa: Dfa, order: AlphabetOrder, candidates: dict | None = None) -> set:
    """Pairs ``(p, q)`` for which some concrete candidate satisfies ``alpha < beta``."""
    if candidates is None:
        candidates = lt_witness_candidates(dfa)
    return {pq for pq, words in candidates.items()
            if any(colex_compare(a, b, order) == LT for a, b in words)}


def enumerate_lt(dfa: Dfa, order: AlphabetOrder, max_len: int, max_words: int = 200_000) -> set:
    """Literal bounded evaluation: all words up to ``max_len``, bucketed by
    landing state; ``LT[p, q]`` iff the smallest word into ``p`` precedes the
    largest word into ``q``."""
    k = len(dfa.alphabet)
    total = sum(k ** i for i in range(max_len + 1))
    if total > max_words:
        raise ResourceBudgetExceeded(f"{total} words exceed the enumeration budget")
    rank = order.rank

    def key(w):  # co-lex order is lexicographic order on reversed rank tuples
        return tuple(rank[a] for a in reversed(w))

    lo: dict = {}
    hi: dict = {}
    frontier = [((), dfa.initial)]
    for _ in range(max_len + 1):
        nxt = []
        for w, q in frontier:
            kw = key(w)
            if q not in lo or kw < lo[q]:
                lo[q] = kw
            if q not in hi or kw > hi[q]:
                hi[q] = kw
            for a, t in enumerate(dfa.delta[q]):
                if t != UNDEFINED:
                    nxt.append((w + (dfa.alphabet[a],), t))
        frontier = nxt
    return {(p, q) for p in lo for q in hi if p != q and lo[p] < hi[q]}


def brute_uw_words(min_dfa: Dfa) -> bool:
    """Universal Wheelerness from word-level witnesses: for each order, look
    for a square-automaton cycle through pairs intertwined by concrete words."""
    cands = lt_witness_candidates(min_dfa)
    for order in all_orders(min_dfa.alphabet):
        lt = brute_lt(min_dfa, order, cands)
        both = {(p, q) for p, q in lt if (q, p) in lt}
        if both and cycle_within(min_dfa, both.__contains__, roots=sorted(both)):
            return False
    return True


def brute_intertwined(min_dfa: Dfa, p: int, q: int, candidates: dict | None = None) -> bool:
    if p == q:
        raise InputError("intertwined needs two distinct states")
    if candidates is None:
        candidates = lt_witness_candidates(min_dfa)
    for order in all_orders(min_dfa.alphabet, MAX_EW_ALPHABET):
        lt = brute_lt(min_dfa, order, {k: candidates[k] for k in ((p, q), (q, p))})
        if len(lt) == 2:
            return True
    return False


def exact_p_table(min_dfa: Dfa, budget: int = 10**7) -> dict:
    """Uncapped witness-pair sets, evaluated pair by pair from the backward
    closure: ``(a, b)`` for in-labels of any pair that some word carries to
    ``(p, q)``, ``⊣``/``⊢`` when the source pairs with another state there."""
    n, k = min_dfa.n, len(min_dfa.alphabet)
    if n**4 * max(k, 1) > budget:
        raise ResourceBudgetExceeded("automaton too large for the exact witness table")
    lam = incoming_labels(min_dfa)
    s = min_dfa.initial
    table = {}
    for p in range(n):
        for q in range(n):
            if p == q:
                continue
            entry = set()
            for x, y in _backward_pairs(min_dfa, (p, q)):
                if x == y:
                    continue
                entry.update((a, b) for a in lam[x] for b in lam[y] if a != b)
                if x == s:
                    entry.add((SUF, SUF))
                if y == s:
                    entry.add((PRE, PRE))
            table[(p, q)] = frozenset(entry)
    return table


# ---------------------------------------------------------------------------
# Random automata

@dataclass(frozen=True)
class RandomDfaSpec:
    seed: int
    max_states: int = 6
    alphabet_size: int = 3
    transition_density: float = 0.6
    final_probability: float = 0.4


def random_dfa(spec: RandomDfaSpec, rng: random.Random | None = None) -> Dfa:
    """Random automaton whose states are all reachable: each state after the
    first hangs off a random earlier state, then further transitions are
    added with probability ``transition_density``."""
    rng = rng or random.Random(spec.seed)
    n = rng.randint(max(1, spec.max_states - 2), spec.max_states)
    k = spec.alphabet_size
    alphabet = tuple("abcdefghijklmnopqrstuvwxyz"[:k])
    rows = [[UNDEFINED] * k for _ in range(n)]
    for q in range(1, n):
        free = [(p, a) for p in range(q) for a in range(k) if rows[p][a] == UNDEFINED]
        if not free:
            break
        p, a = rng.choice(free)
        rows[p][a] = q
    for row in rows:
        for a in range(k):
            if row[a] == UNDEFINED and rng.random() < spec.transition_density:
                row[a] = rng.randrange(n)
    finals = frozenset(q for q in range(n) if rng.random() < spec.final_probability)
    return Dfa(alphabet, tuple(map(tuple, rows)), 0, finals)


def random_minimal_dfa(spec: RandomDfaSpec, attempts: int = 100) -> Dfa:
    """Minimal trimmed automaton of a random non-empty language."""
    if spec.alphabet_size > 26 or spec.alphabet_size < 1:
        raise InputError("alphabet size must be between 1 and 26")
    rng = random.Random(spec.seed)
    for _ in range(attempts):
        m = minimize(random_dfa(spec, rng))
        if not isinstance(m, EmptyLanguage):
            return m
    raise WheelerError(f"no non-empty language after {attempts} attempts (seed {spec.seed})")


# ---------------------------------------------------------------------------
# Structural class tests and equivalence

def structural_rdef(dfa: Dfa | EmptyLanguage) -> bool:
    """Reverse definite iff, in the complete minimal automaton, removing the
    absorbing states leaves an acyclic graph."""
    full = complete(minimize(dfa))
    absorbing = {q for q in range(full.n) if all(t == q for t in full.delta[q])}
    keep = [q for q in range(full.n) if q not in absorbing]

    def succ(p):
        return [(a, q) for a, q in enumerate(full.delta[p]) if q not in absorbing]

    from .graphs import find_cycle
    return find_cycle(keep, succ) is None


def reverse_determinize(dfa: Dfa, limit: int = MAX_DETERMINIZE_STATES) -> Dfa | EmptyLanguage:
    """Subset construction on the reversed automaton."""
    m = minimize(dfa) if isinstance(dfa, Dfa) else dfa
    if isinstance(m, EmptyLanguage):
        return m
    if m.n > limit:
        raise ResourceBudgetExceeded(f"{m.n} states exceed the determinization guard {limit}")
    k = len(m.alphabet)
    back = [[[] for _ in range(m.n)] for _ in range(k)]
    for p, a, q in m.edges():
        back[a][q].append(p)
    start = frozenset(m.finals)
    ids = {start: 0}
    order = [start]
    table = []
    i = 0
    while i < len(order):
        cur = order[i]
        row = []
        for a in range(k):
            nxt = frozenset(p for q in cur for p in back[a][q])
            if nxt not in ids:
                ids[nxt] = len(order)
                order.append(nxt)
            row.append(ids[nxt])
        table.append(tuple(row))
        i += 1
    finals = frozenset(i for i, S in enumerate(order) if m.initial in S)
    return Dfa(m.alphabet, tuple(table), 0, finals)


def structural_def(dfa: Dfa | EmptyLanguage) -> bool:
    """Definite iff the reversed language is reverse definite."""
    return structural_rdef(reverse_determinize(dfa))


def language_equal(d1: Dfa | EmptyLanguage, d2: Dfa | EmptyLanguage) -> bool:
    """Search the product of the completed automata for a pair that disagrees."""
    if tuple(d1.alphabet) != tuple(d2.alphabet):
        raise InputError("language_equal needs identical alphabets")
    c1, c2 = complete(d1), complete(d2)
    start = (c1.initial, c2.initial)
    seen = {start}
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        if (p in c1.finals) != (q in c2.finals):
            return False
        for a in range(len(c1.alphabet)):
            nxt = (c1.delta[p][a], c2.delta[q][a])
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return True


def equal_label_cycles(dfa: Dfa, p: int, q: int, max_len: int) -> bool:
    """Whether some non-empty word of length <= ``max_len`` loops on both states."""
    frontier = {(p, q)}
    for _ in range(max_len):
        nxt = set()
        for x, y in frontier:
            for a in range(len(dfa.alphabet)):
                u, v = dfa.delta[x][a], dfa.delta[y][a]
                if u != UNDEFINED and v != UNDEFINED:
                    nxt.add((u, v))
        if (p, q) in nxt:
            return True
        frontier = nxt
    return False
