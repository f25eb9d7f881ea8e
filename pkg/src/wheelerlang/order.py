"""Everything that depends on one fixed total order of the alphabet.

The central structure is the "less-than" relation between states: ``LT[p, q]``
holds when some word reaching ``p`` is co-lexicographically smaller than some
word reaching ``q``.  A single worklist fixpoint computes it, and it drives
both the automaton-level order ``<=_D`` and the language-level Wheeler test.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .automaton import (PRE, SUF, UNDEFINED, Dfa, EmptyLanguage, check_symbol,
                        cycle_within, incoming_labels, predecessors, require_minimal,
                        useful_states)
from .errors import InputError, InternalInconsistency, PreconditionError
from .graphs import CycleWitness

LT, EQ, GT = -1, 0, 1

Word = tuple[str, ...]
ExtPair = tuple[str, str]
SUF_PAIR: ExtPair = (SUF, SUF)
PRE_PAIR: ExtPair = (PRE, PRE)


@dataclass(frozen=True)
class AlphabetOrder:
    """A permutation of the alphabet; ``symbols[0]`` is the smallest."""

    symbols: tuple[str, ...]
    rank: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(set(self.symbols)) != len(self.symbols):
            raise InputError("alphabet order repeats a symbol")
        object.__setattr__(self, "rank", {a: i for i, a in enumerate(self.symbols)})

    @classmethod
    def canonical(cls, alphabet: Iterable[str]) -> "AlphabetOrder":
        return cls(tuple(alphabet))

    @classmethod
    def parse(cls, text: str, alphabet: Sequence[str]) -> "AlphabetOrder":
        """Parse ``"a,d,c,f"``; the permutation must cover ``alphabet`` exactly."""
        symbols = tuple(t.strip() for t in text.split(",") if t.strip())
        order = cls(symbols)
        if set(symbols) != set(alphabet) or len(symbols) != len(alphabet):
            raise InputError(
                f"order {','.join(symbols)} is not a permutation of {','.join(alphabet)}")
        return order

    def less(self, a: str, b: str) -> bool:
        return self.rank[a] < self.rank[b]

    def __str__(self):
        return ",".join(self.symbols)


def colex_compare(w1: Sequence[str], w2: Sequence[str], order: AlphabetOrder) -> int:
    """Co-lexicographic comparison: a suffix precedes its extensions,
    otherwise the rightmost differing position decides."""
    rank = order.rank
    for a in list(w1) + list(w2):
        if a not in rank:
            raise InputError(f"symbol {a!r} not covered by the order")
    i, j = len(w1) - 1, len(w2) - 1
    while i >= 0 and j >= 0:
        if w1[i] != w2[j]:
            return LT if rank[w1[i]] < rank[w2[j]] else GT
        i -= 1
        j -= 1
    if i < 0 and j < 0:
        return EQ
    return LT if i < 0 else GT


# ---------------------------------------------------------------------------
# Wheeler axioms for an explicit state order

@dataclass(frozen=True)
class AxiomViolation:
    kind: str  # SourceNotMin | SourceHasIncoming | NotInputConsistent | W1 | W2
    edges: tuple = ()
    detail: str = ""

    def __str__(self):
        if self.edges:
            return f"{self.kind}: " + " vs ".join(f"{p}-{a}->{q}" for p, a, q in self.edges)
        return f"{self.kind}: {self.detail}" if self.detail else self.kind


def validate_wheeler_axioms(dfa: Dfa, state_order: Sequence[int],
                            order: AlphabetOrder) -> AxiomViolation | None:
    """Return ``None`` when ``state_order`` makes ``dfa`` a Wheeler DFA."""
    n = dfa.n
    if sorted(state_order) != list(range(n)):
        raise InputError("state order is not a permutation of the states")
    if set(order.symbols) != set(dfa.alphabet):
        raise InputError("alphabet order does not match the automaton's alphabet")
    if len(useful_states(dfa)) != n:
        raise PreconditionError("automaton must be trimmed", kind="NotTrimmed")
    pos = [0] * n
    for i, q in enumerate(state_order):
        pos[q] = i
    names, alpha = dfa.names, dfa.alphabet
    preds = predecessors(dfa)

    def edge(p, a, q):
        return (names[p], alpha[a], names[q])

    s = dfa.initial
    if preds[s]:
        p, a = preds[s][0]
        return AxiomViolation("SourceHasIncoming", (edge(p, a, s),))
    if state_order[0] != s:
        return AxiomViolation("SourceNotMin", detail=f"{names[state_order[0]]} precedes {names[s]}")
    label = [None] * n
    for q in range(n):
        labs = {a for _, a in preds[q]}
        if len(labs) > 1:
            return AxiomViolation("NotInputConsistent",
                                  detail=f"{names[q]} has in-labels "
                                  + ",".join(sorted(alpha[a] for a in labs)))
        if labs:
            label[q] = labs.pop()
    # W1: along the state order, in-label ranks never decrease
    ranked = [q for q in state_order if q != s]
    for u, v in zip(ranked, ranked[1:]):
        if order.rank[alpha[label[v]]] < order.rank[alpha[label[u]]]:
            pv, av = preds[v][0]
            pu, au = preds[u][0]
            return AxiomViolation("W1", (edge(pv, av, v), edge(pu, au, u)))
    # W2: for each symbol, targets are monotone in the sources
    for a in range(len(alpha)):
        srcs = sorted((p for p in range(n) if dfa.delta[p][a] != UNDEFINED), key=pos.__getitem__)
        for p, q in zip(srcs, srcs[1:]):
            tp, tq = dfa.delta[p][a], dfa.delta[q][a]
            if tp != tq and pos[tp] > pos[tq]:
                return AxiomViolation("W2", (edge(p, a, tp), edge(q, a, tq)))
    return None


# ---------------------------------------------------------------------------
# The LT fixpoint

def access_words(dfa: Dfa) -> list[Word | None]:
    """Shortest (then BFS-first) word reaching each state."""
    words: list[Word | None] = [None] * dfa.n
    words[dfa.initial] = ()
    queue = deque([dfa.initial])
    while queue:
        p = queue.popleft()
        for a, q in enumerate(dfa.delta[p]):
            if q != UNDEFINED and words[q] is None:
                words[q] = words[p] + (dfa.alphabet[a],)
                queue.append(q)
    return words


def ending_words(dfa: Dfa, access: list[Word | None]) -> dict[tuple[int, str], Word]:
    """Shortest word reaching ``q`` whose last symbol is ``a``, keyed by ``(q, a)``."""
    best: dict[tuple[int, str], Word] = {}
    for p, a, q in dfa.edges():
        if access[p] is None:
            continue
        w = access[p] + (dfa.alphabet[a],)
        key = (q, dfa.alphabet[a])
        if key not in best or len(w) < len(best[key]):
            best[key] = w
    return best


class LtRelation:
    """``LT[p, q]`` for distinct states, with derivation back-links.

    A back-link is ``("eps",)`` for a pair seeded by the empty word at the
    source, ``("lab", a, b)`` for a pair seeded by in-labels ``a < b``, or
    ``("step", (p0, q0), c)`` for a pair reached from ``(p0, q0)`` on ``c``.
    """

    def __init__(self, dfa: Dfa, order: AlphabetOrder, reasons: dict):
        self.dfa = dfa
        self.order = order
        self.reasons = reasons
        self._access = None
        self._ending = None

    def __getitem__(self, pair: tuple[int, int]) -> bool:
        return pair in self.reasons

    def __contains__(self, pair):
        return pair in self.reasons

    def pairs(self) -> set[tuple[int, int]]:
        return set(self.reasons)

    def intertwined(self, p: int, q: int) -> bool:
        return (p, q) in self.reasons and (q, p) in self.reasons

    def witness(self, p: int, q: int) -> tuple[Word, Word]:
        """Words ``alpha`` reaching ``p`` and ``beta`` reaching ``q`` with ``alpha < beta``."""
        if (p, q) not in self.reasons:
            raise KeyError((p, q))
        if self._access is None:
            self._access = access_words(self.dfa)
            self._ending = ending_words(self.dfa, self._access)
        gamma: list[str] = []
        pair = (p, q)
        reason = self.reasons[pair]
        while reason[0] == "step":
            gamma.append(reason[2])
            pair = reason[1]
            reason = self.reasons[pair]
        gamma.reverse()
        if reason[0] == "eps":
            alpha, beta = (), self._access[pair[1]]
        else:
            _, a, b = reason
            alpha, beta = self._ending[(pair[0], a)], self._ending[(pair[1], b)]
        return alpha + tuple(gamma), beta + tuple(gamma)


def _lt_fixpoint(dfa: Dfa, order: AlphabetOrder) -> LtRelation:
    if set(order.symbols) != set(dfa.alphabet):
        raise InputError("alphabet order does not match the automaton's alphabet")
    n, s = dfa.n, dfa.initial
    rank = [order.rank[a] for a in dfa.alphabet]
    lo: list[int | None] = [None] * n
    hi: list[int | None] = [None] * n
    for _, a, q in dfa.edges():
        if lo[q] is None or rank[a] < rank[lo[q]]:
            lo[q] = a
        if hi[q] is None or rank[a] > rank[hi[q]]:
            hi[q] = a
    reasons: dict = {}
    queue = deque()
    for q in range(n):
        if q != s:
            reasons[(s, q)] = ("eps",)
            queue.append((s, q))
    alpha = dfa.alphabet
    for p in range(n):
        if lo[p] is None:
            continue
        for q in range(n):
            if q == p or hi[q] is None or (p, q) in reasons:
                continue
            if rank[lo[p]] < rank[hi[q]]:
                reasons[(p, q)] = ("lab", alpha[lo[p]], alpha[hi[q]])
                queue.append((p, q))
    delta = dfa.delta
    while queue:
        p, q = queue.popleft()
        rp, rq = delta[p], delta[q]
        for c in range(len(alpha)):
            x, y = rp[c], rq[c]
            if x == UNDEFINED or y == UNDEFINED or x == y or (x, y) in reasons:
                continue
            reasons[(x, y)] = ("step", (p, q), alpha[c])
            queue.append((x, y))
    return LtRelation(dfa, order, reasons)


def lt_relation(min_dfa: Dfa, order: AlphabetOrder) -> LtRelation:
    require_minimal(min_dfa)
    return _lt_fixpoint(min_dfa, order)


# ---------------------------------------------------------------------------
# Language-level decision for a fixed order

@dataclass(frozen=True)
class PumpedCertificate:
    """Words ``x`` (reaching p) and ``y`` (reaching q) both below or both above
    the cycle label ``gamma``, neither having ``gamma`` as a suffix."""

    gamma: Word
    x: Word
    y: Word
    side: str  # "below" | "above"


@dataclass(frozen=True)
class WheelerViolation:
    pair: tuple[int, int]
    cycle: CycleWitness
    alpha: Word   # reaches p
    beta: Word    # reaches q, alpha < beta
    beta2: Word   # reaches q
    alpha2: Word  # reaches p, beta2 < alpha2
    certificate: PumpedCertificate | None = None

    @property
    def gamma(self) -> Word:
        return tuple(self.cycle.labels)


@dataclass(frozen=True)
class WheelerVerdict:
    wheeler: bool
    violation: WheelerViolation | None = None

    def __bool__(self):
        return self.wheeler


def _is_suffix(u: Sequence[str], v: Sequence[str]) -> bool:
    return len(u) <= len(v) and tuple(v[len(v) - len(u):]) == tuple(u)


def pumped_certificate(gamma: Word, alpha: Word, beta: Word, beta2: Word, alpha2: Word,
                       order: AlphabetOrder) -> PumpedCertificate:
    """Pump ``gamma`` past every witness length, then pick two words on the
    same side of it (the case analysis of the cycle characterization)."""
    longest = max(len(alpha), len(beta), len(alpha2), len(beta2))
    g = tuple(gamma) * (longest // len(gamma) + 1)

    def lt(u, v):
        return colex_compare(u, v, order) == LT

    if lt(g, alpha):
        return PumpedCertificate(g, alpha, beta, "above")
    if lt(alpha2, g):
        return PumpedCertificate(g, alpha2, beta2, "below")
    # alpha < g < alpha2 from here on
    if lt(beta, g):
        return PumpedCertificate(g, alpha, beta, "below")
    return PumpedCertificate(g, alpha2, beta, "above")


def is_wheeler_language(min_dfa: Dfa | EmptyLanguage, order: AlphabetOrder,
                        *, check: bool = True) -> WheelerVerdict:
    """Decide whether the language of ``min_dfa`` is Wheeler for ``order``.

    Not Wheeler exactly when the square automaton has a cycle through a pair
    of distinct states that are intertwined under ``order``.
    """
    if isinstance(min_dfa, EmptyLanguage):
        return WheelerVerdict(True)
    if check:
        require_minimal(min_dfa)
    lt = _lt_fixpoint(min_dfa, order)
    if min_dfa.n < 2:
        return WheelerVerdict(True)
    roots = [pq for pq in lt.reasons if lt.intertwined(*pq)]
    cycle = cycle_within(min_dfa, lambda pq: pq[0] != pq[1] and lt.intertwined(*pq),
                         roots=roots)
    if cycle is None:
        return WheelerVerdict(True)
    p, q = cycle.nodes[0]
    alpha, beta = lt.witness(p, q)
    beta2, alpha2 = lt.witness(q, p)
    cert = pumped_certificate(tuple(cycle.labels), alpha, beta, beta2, alpha2, order)
    return WheelerVerdict(False, WheelerViolation((p, q), cycle, alpha, beta, beta2, alpha2, cert))


# ---------------------------------------------------------------------------
# Automaton-level order <=_D

@dataclass(frozen=True)
class ColexOrderResult:
    total: bool
    states: tuple[int, ...] = ()
    incomparable: tuple[int, int] | None = None
    witness: tuple[Word, Word, Word, Word] | None = None

    def __bool__(self):
        return self.total


def automaton_colex_order(dfa: Dfa, order: AlphabetOrder) -> ColexOrderResult:
    """The order ``<=_D``: total (and then the unique Wheeler order) or a
    pair of incomparable states with interleaving witness words."""
    if len(useful_states(dfa)) != dfa.n:
        raise PreconditionError("automaton must be trimmed", kind="NotTrimmed")
    lam = incoming_labels(dfa)
    if lam[dfa.initial]:
        raise PreconditionError("initial state has incoming transitions",
                                kind="SourceHasIncoming")
    for q in range(dfa.n):
        if len(lam[q]) > 1:
            raise PreconditionError(f"state {dfa.names[q]} has several in-labels",
                                    kind="NotInputConsistent")
    lt = _lt_fixpoint(dfa, order)
    n = dfa.n
    for p in range(n):
        for q in range(p + 1, n):
            if lt.intertwined(p, q):
                alpha, beta = lt.witness(p, q)
                beta2, alpha2 = lt.witness(q, p)
                return ColexOrderResult(False, incomparable=(p, q),
                                        witness=(alpha, beta, beta2, alpha2))
            if not (lt[(p, q)] or lt[(q, p)]):
                raise InternalInconsistency(f"states {p}, {q} are not comparable at all")
    # total: position of q = number of states below it
    below = [sum(1 for p in range(n) if p != q and lt[(p, q)]) for q in range(n)]
    return ColexOrderResult(True, tuple(sorted(range(n), key=below.__getitem__)))


# ---------------------------------------------------------------------------
# Violating orders from witness pairs

def _is_letter_pair(pair: ExtPair) -> bool:
    return pair not in (SUF_PAIR, PRE_PAIR)


def build_violating_order(first: ExtPair, second: ExtPair,
                          alphabet: Sequence[str]) -> AlphabetOrder:
    """An order under which two distinct witness pairs interleave p and q.

    ``first`` witnesses "a word into p below a word into q" and ``second`` the
    reverse direction, except that a suffix sentinel always plays the first
    role and a prefix sentinel the second.  Constrained symbols are laid out
    by longest-path layer (ties in declaration order), the rest appended.
    """
    for pair in (first, second):
        if _is_letter_pair(pair):
            if pair[0] == pair[1]:
                raise InputError(f"witness pair {pair} has equal letters")
            for a in pair:
                check_symbol(a)
                if a not in alphabet:
                    raise InputError(f"symbol {a!r} not in alphabet")
        elif pair[0] != pair[1]:
            raise InputError(f"malformed sentinel pair {pair}")
    if first == second:
        raise InputError("witness pairs must be distinct")
    lower, upper = first, second
    if SUF_PAIR == second or PRE_PAIR == first:
        lower, upper = second, first
    constraints: list[tuple[str, str]] = []
    if _is_letter_pair(lower):
        constraints.append((lower[0], lower[1]))
    if _is_letter_pair(upper):
        constraints.append((upper[1], upper[0]))
    decl = {a: i for i, a in enumerate(alphabet)}
    involved = sorted({a for c in constraints for a in c}, key=decl.__getitem__)
    layer = {a: 0 for a in involved}
    for _ in range(len(involved) + 1):
        changed = False
        for lo, hi in constraints:
            if layer[hi] < layer[lo] + 1:
                layer[hi] = layer[lo] + 1
                changed = True
        if not changed:
            break
    else:
        raise InternalInconsistency(f"contradictory order constraints {constraints}")
    head = sorted(involved, key=lambda a: (layer[a], decl[a]))
    tail = [a for a in alphabet if a not in layer]
    result = AlphabetOrder(tuple(head + tail))
    for lo, hi in constraints:
        if not result.less(lo, hi):
            raise InternalInconsistency(f"order {result} violates {lo} < {hi}")
    return result
