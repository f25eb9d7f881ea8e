"""Class membership tests built on the square automaton and the UW decider.

Covers strictly locally testable, definite and reverse definite languages,
finiteness of the common prefixes of a language and its complement, the
three-cycle obstruction to existential Wheelerness, and a combined report
that checks the known inclusions between these classes on every call.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .automaton import (UNDEFINED, Dfa, EmptyLanguage, complement, complete, cycle_within,
                        is_finite_language, is_prefix_universal, isomorphic, minimize,
                        require_minimal, state_successors)
from .errors import InternalInconsistency, PreconditionError, ResourceBudgetExceeded
from .graphs import CycleWitness, cyclic_nodes, find_cycle
from .uw import UwVerdict, decide_uw

Word = tuple[str, ...]
MAX_DECOMPOSITION_WORDS = 100_000


@dataclass(frozen=True)
class SltVerdict:
    slt: bool
    cycle: CycleWitness | None = None

    def __bool__(self):
        return self.slt


def is_slt(min_dfa: Dfa | EmptyLanguage, *, check: bool = True) -> SltVerdict:
    """Strictly locally testable iff no two distinct states carry cycles with
    the same label, i.e. the square automaton has no off-diagonal cycle."""
    if isinstance(min_dfa, EmptyLanguage):
        return SltVerdict(True)
    if check:
        require_minimal(min_dfa)
    cycle = cycle_within(min_dfa)
    return SltVerdict(cycle is None, cycle)


def is_definite(dfa: Dfa | EmptyLanguage) -> bool:
    m = minimize(dfa)
    if is_finite_language(m):
        return True
    return is_prefix_universal(m) and decide_uw(m).uw


def _cofinite(m: Dfa | EmptyLanguage) -> bool:
    return is_finite_language(complement(m))


def is_reverse_definite(dfa: Dfa | EmptyLanguage) -> bool:
    m = minimize(dfa)
    if is_finite_language(m):
        return True
    if len(m.alphabet) == 1 or is_prefix_universal(m):
        return _cofinite(m)
    return decide_uw(m).uw and decide_uw(complement(m)).uw


@dataclass(frozen=True)
class PrefixIntersection:
    """Words that are prefixes of both the language and its complement."""

    finite: bool
    words: frozenset = frozenset()
    cycle: CycleWitness | None = None


def _mixed_states(full: Dfa) -> set[int]:
    """States of a complete automaton that reach both a final and a non-final state."""
    preds: list[list[int]] = [[] for _ in range(full.n)]
    for p, _, q in full.edges():
        preds[q].append(p)

    def coreach(seed):
        seen = set(seed)
        stack = list(seed)
        while stack:
            q = stack.pop()
            for p in preds[q]:
                if p not in seen:
                    seen.add(p)
                    stack.append(p)
        return seen

    finals = [q for q in range(full.n) if q in full.finals]
    others = [q for q in range(full.n) if q not in full.finals]
    return coreach(finals) & coreach(others)


def prefix_intersection_finite(dfa: Dfa | EmptyLanguage) -> PrefixIntersection:
    full = complete(minimize(dfa))
    mixed = _mixed_states(full)
    if full.initial not in mixed:
        return PrefixIntersection(True)
    succ = state_successors(full)
    cycle = find_cycle([full.initial], succ, mixed.__contains__)
    if cycle is not None:
        return PrefixIntersection(False, cycle=cycle)
    words = set()
    stack: list[tuple[int, Word]] = [(full.initial, ())]
    while stack:
        q, w = stack.pop()
        words.add(w)
        if len(words) > MAX_DECOMPOSITION_WORDS:
            raise ResourceBudgetExceeded("too many common prefixes to enumerate")
        for a, t in enumerate(full.delta[q]):
            if t in mixed:
                stack.append((t, w + (full.alphabet[a],)))
    return PrefixIntersection(True, frozenset(words))


@dataclass(frozen=True)
class EwVerdict:
    possible: bool
    triple: tuple[int, int, int] | None = None
    gamma: Word | None = None

    def __bool__(self):
        return self.possible


def ew_necessary(min_dfa: Dfa | EmptyLanguage, *, budget: int = 10**7,
                 check: bool = True) -> EwVerdict:
    """Three distinct states with cycles sharing one label rule out every
    alphabet order.  Searched in the cube automaton over pairwise-distinct
    triples of states that lie on cycles."""
    if isinstance(min_dfa, EmptyLanguage):
        return EwVerdict(True)
    if check:
        require_minimal(min_dfa)
    cyc = sorted(cyclic_nodes(range(min_dfa.n), state_successors(min_dfa)))
    if len(cyc) < 3:
        return EwVerdict(True)
    delta, alphabet = min_dfa.delta, min_dfa.alphabet

    def succ(t):
        p, q, r = t
        out = []
        for a in range(len(alphabet)):
            x, y, z = delta[p][a], delta[q][a], delta[r][a]
            if UNDEFINED not in (x, y, z):
                out.append((alphabet[a], (x, y, z)))
        return out

    def distinct(t):
        return t[0] != t[1] and t[1] != t[2] and t[0] != t[2]

    roots = ((p, q, r) for p in cyc for q in cyc for r in cyc
             if p < q < r)
    try:
        cycle = find_cycle(roots, succ, distinct, budget=budget)
    except ResourceBudgetExceeded as exc:
        raise ResourceBudgetExceeded(
            f"three-cycle search exceeded its node budget of {budget}") from exc
    if cycle is None:
        return EwVerdict(True)
    return EwVerdict(False, cycle.nodes[0], tuple(cycle.labels))


@dataclass(frozen=True)
class RdefDecomposition:
    """The language equals ``(F ∩ L) ∪ G Σ*``."""

    F: frozenset
    G: frozenset


def _accepted_words(m: Dfa) -> set[Word]:
    words = set()
    stack: list[tuple[int, Word]] = [(m.initial, ())]
    while stack:
        q, w = stack.pop()
        if q in m.finals:
            words.add(w)
            if len(words) > MAX_DECOMPOSITION_WORDS:
                raise ResourceBudgetExceeded("finite language too large to list")
        for a, t in enumerate(m.delta[q]):
            if t != UNDEFINED:
                stack.append((t, w + (m.alphabet[a],)))
    return words


def decomposition_automaton(alphabet: Iterable[str], finite_part: Iterable[Word],
                            prefixes: Iterable[Word]) -> Dfa | EmptyLanguage:
    """Automaton for ``finite_part ∪ prefixes Σ*`` (a trie with absorbing
    accepting nodes at the prefixes)."""
    alphabet = tuple(alphabet)
    sym = {a: i for i, a in enumerate(alphabet)}
    nodes: dict[Word, int] = {(): 0}
    rows: list[list[int]] = [[UNDEFINED] * len(alphabet)]
    finals = set()
    absorbing = set()

    def node(w):
        for i in range(1, len(w) + 1):
            if w[:i] not in nodes:
                nodes[w[:i]] = len(rows)
                rows.append([UNDEFINED] * len(alphabet))
                rows[nodes[w[:i - 1]]][sym[w[i - 1]]] = nodes[w[:i]]
        return nodes[w]

    for w in finite_part:
        finals.add(node(w))
    for w in prefixes:
        q = node(w)
        finals.add(q)
        absorbing.add(q)
    for q in absorbing:
        rows[q] = [q] * len(alphabet)
    d = Dfa(alphabet, tuple(map(tuple, rows)), 0, frozenset(finals))
    return minimize(d)


def rdef_decomposition(dfa: Dfa | EmptyLanguage) -> RdefDecomposition:
    m = minimize(dfa)
    if isinstance(m, EmptyLanguage):
        return RdefDecomposition(frozenset(), frozenset())
    if is_finite_language(m):
        result = RdefDecomposition(frozenset(_accepted_words(m)), frozenset())
    elif not is_reverse_definite(m):
        raise PreconditionError("not reverse definite", kind="NotReverseDefinite")
    elif is_prefix_universal(m):
        comp = complement(m)
        rejected = set() if isinstance(comp, EmptyLanguage) else _accepted_words(comp)
        k = 1 + max((len(w) for w in rejected), default=-1)
        count = len(m.alphabet) ** k
        if count > MAX_DECOMPOSITION_WORDS:
            raise ResourceBudgetExceeded(f"decomposition needs {count} prefixes")
        short = _words_up_to(m.alphabet, k - 1)
        result = RdefDecomposition(
            frozenset(w for w in short if w not in rejected),
            frozenset(_words_up_to(m.alphabet, k, exact=True)))
    else:
        common = prefix_intersection_finite(m)
        if not common.finite:
            raise InternalInconsistency("reverse definite language with infinitely many "
                                        "common prefixes")
        full = complete(m)
        universal = [q for q in range(full.n) if q in full.finals
                     and all(t == q for t in full.delta[q])]
        G = set()
        for w in common.words:
            q = full.run(w)
            for a, t in enumerate(full.delta[q]):
                if t in universal:
                    G.add(w + (full.alphabet[a],))
        F = {w for w in common.words if full.run(w) in full.finals}
        result = RdefDecomposition(frozenset(F), frozenset(G))
    rebuilt = decomposition_automaton(m.alphabet, result.F, result.G)
    if not isomorphic(rebuilt, m):
        raise InternalInconsistency("reverse definite decomposition does not rebuild the language")
    return result


def _words_up_to(alphabet, k: int, exact: bool = False) -> list[Word]:
    layer: list[Word] = [()]
    out = [] if exact else [()]
    for _ in range(k):
        layer = [w + (a,) for w in layer for a in alphabet]
        if not exact:
            out.extend(layer)
    return layer if exact else out


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassificationReport:
    finite: bool
    prefix_universal: bool
    slt: bool
    uw: bool
    comp_uw: bool
    definite: bool
    reverse_definite: bool
    ew_possible: bool
    certificates: dict = field(default_factory=dict, compare=False)

    def verdicts(self) -> dict[str, bool]:
        return {k: getattr(self, k) for k in (
            "finite", "prefix_universal", "slt", "uw", "comp_uw", "definite",
            "reverse_definite", "ew_possible")}


def check_report(r: ClassificationReport) -> None:
    """Raise if the verdicts contradict the known class inclusions."""
    problems = []
    if (r.uw and r.comp_uw) != (r.definite or r.reverse_definite):
        problems.append("uw and comp_uw must hold exactly for definite or reverse definite")
    if r.slt and not r.uw:
        problems.append("strictly locally testable but not universally Wheeler")
    if r.prefix_universal and r.uw and not r.comp_uw:
        problems.append("prefix-universal UW language with non-UW complement")
    if r.finite and not (r.definite and r.reverse_definite and r.slt and r.uw):
        problems.append("finite language missing a class")
    if r.uw and not r.ew_possible:
        problems.append("universally but not existentially Wheeler")
    if problems:
        raise InternalInconsistency("; ".join(problems))


def classify(dfa: Dfa | EmptyLanguage, *, ew_budget: int = 10**7) -> ClassificationReport:
    m = minimize(dfa)
    comp = complement(m)
    certs: dict = {}
    finite = is_finite_language(m)
    pu = is_prefix_universal(m)
    slt = is_slt(m, check=False)
    uw: UwVerdict = decide_uw(m, check=False)
    comp_uw: UwVerdict = decide_uw(comp, check=False)
    if not slt:
        certs["slt"] = slt
    if not uw:
        certs["uw"] = uw
    if not comp_uw:
        certs["comp_uw"] = comp_uw
    definite = finite or (uw.uw and pu)
    if finite:
        rdef = True
    elif len(m.alphabet) == 1 or pu:
        rdef = _cofinite(m)
    else:
        rdef = uw.uw and comp_uw.uw
    ew = ew_necessary(m, budget=ew_budget, check=False)
    if not ew:
        certs["ew"] = ew
    if rdef:
        try:
            certs["rdef"] = rdef_decomposition(m)
        except ResourceBudgetExceeded:
            pass
    report = ClassificationReport(finite, pu, slt.slt, uw.uw, comp_uw.uw, definite, rdef,
                                  ew.possible, certs)
    check_report(report)
    return report
