"""Deterministic finite automata and the canonical constructions on them.

States are dense integers ``0..n-1``; the transition table stores, for every
state, one target per alphabet symbol (``-1`` when undefined).  Symbols are
whitespace-free string tokens and the alphabet's declaration order is the
canonical order used for every tie-break in the package.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InputError, PreconditionError
from .graphs import CycleWitness, find_cycle

UNDEFINED = -1

SUF = "⊣"
PRE = "⊢"
RESERVED_TOKENS = frozenset({SUF, PRE, "SUF", "PRE"})


def check_symbol(token: str) -> str:
    if not isinstance(token, str) or not token or any(ch.isspace() for ch in token):
        raise InputError(f"invalid symbol token {token!r}")
    if token in RESERVED_TOKENS:
        raise InputError(f"symbol token {token!r} is reserved")
    return token


@dataclass(frozen=True)
class EmptyLanguage:
    """Stands in for the trimmed automaton of the empty language (no states)."""

    alphabet: tuple[str, ...]


@dataclass(frozen=True)
class Dfa:
    alphabet: tuple[str, ...]
    delta: tuple[tuple[int, ...], ...]
    initial: int
    finals: frozenset[int]
    names: tuple[str, ...] = ()
    minimal: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        n = len(self.delta)
        if n == 0:
            raise InputError("a Dfa needs at least one state (use EmptyLanguage)")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise InputError("duplicate alphabet symbols")
        for a in self.alphabet:
            check_symbol(a)
        if not 0 <= self.initial < n:
            raise InputError("initial state out of range")
        k = len(self.alphabet)
        for row in self.delta:
            if len(row) != k:
                raise InputError("transition row width differs from alphabet size")
            for t in row:
                if not (t == UNDEFINED or 0 <= t < n):
                    raise InputError(f"transition target {t} out of range")
        if any(not 0 <= f < n for f in self.finals):
            raise InputError("final state out of range")
        if not self.names:
            object.__setattr__(self, "names", tuple(str(i) for i in range(n)))
        elif len(self.names) != n or len(set(self.names)) != n:
            raise InputError("state names must be unique, one per state")

    # -- construction -----------------------------------------------------

    @classmethod
    def build(cls, alphabet: Iterable[str], transitions: Iterable[tuple[str, str, str]],
              initial: str, finals: Iterable[str] = (), states: Iterable[str] = ()) -> "Dfa":
        """Build from named states; state ids follow first appearance."""
        alphabet = tuple(alphabet)
        sym = {a: i for i, a in enumerate(alphabet)}
        ids: dict[str, int] = {}

        def sid(name):
            if name not in ids:
                ids[name] = len(ids)
            return ids[name]

        for s in states:
            sid(s)
        sid(initial)
        transitions = list(transitions)
        for p, _, q in transitions:
            sid(p)
            sid(q)
        finals = [sid(f) for f in finals]
        table = [[UNDEFINED] * len(alphabet) for _ in ids]
        for p, a, q in transitions:
            if a not in sym:
                raise InputError(f"symbol {a!r} not in alphabet")
            row = table[ids[p]]
            if row[sym[a]] not in (UNDEFINED, ids[q]):
                raise InputError(f"nondeterministic transition on ({p}, {a})")
            row[sym[a]] = ids[q]
        return cls(alphabet, tuple(map(tuple, table)), ids[initial],
                   frozenset(finals), tuple(ids))

    def with_minimal_flag(self) -> "Dfa":
        return Dfa(self.alphabet, self.delta, self.initial, self.finals, self.names, True)

    # -- basic queries ------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.delta)

    @cached_property
    def num_edges(self) -> int:
        return sum(t != UNDEFINED for row in self.delta for t in row)

    @cached_property
    def sym_index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.alphabet)}

    @cached_property
    def is_complete(self) -> bool:
        return all(t != UNDEFINED for row in self.delta for t in row)

    @cached_property
    def is_trimmed(self) -> bool:
        return len(useful_states(self)) == self.n

    def edges(self) -> Iterable[tuple[int, int, int]]:
        """Yield ``(p, symbol_index, q)`` for every defined transition."""
        for p, row in enumerate(self.delta):
            for a, q in enumerate(row):
                if q != UNDEFINED:
                    yield p, a, q

    def encode(self, word: Sequence[str]) -> list[int]:
        try:
            return [self.sym_index[a] for a in word]
        except KeyError as exc:
            raise InputError(f"symbol {exc.args[0]!r} not in alphabet") from None

    def run(self, word: Sequence[str], start: int | None = None) -> int:
        q = self.initial if start is None else start
        for a in self.encode(word):
            q = self.delta[q][a]
            if q == UNDEFINED:
                return UNDEFINED
        return q

    def __repr__(self):
        return f"Dfa(n={self.n}, m={self.num_edges}, alphabet={list(self.alphabet)})"


Automaton = Dfa | EmptyLanguage


def accepts(dfa: Automaton, word: Sequence[str]) -> bool:
    if isinstance(dfa, EmptyLanguage):
        for a in word:
            if a not in dfa.alphabet:
                raise InputError(f"symbol {a!r} not in alphabet")
        return False
    q = dfa.run(word)
    return q != UNDEFINED and q in dfa.finals


def reachable_states(dfa: Dfa) -> list[int]:
    seen = [False] * dfa.n
    seen[dfa.initial] = True
    order = [dfa.initial]
    queue = deque(order)
    while queue:
        p = queue.popleft()
        for q in dfa.delta[p]:
            if q != UNDEFINED and not seen[q]:
                seen[q] = True
                order.append(q)
                queue.append(q)
    return order


def predecessors(dfa: Dfa) -> list[list[tuple[int, int]]]:
    """``preds[q]`` lists ``(p, symbol_index)`` with ``delta(p, a) == q``."""
    preds: list[list[tuple[int, int]]] = [[] for _ in range(dfa.n)]
    for p, a, q in dfa.edges():
        preds[q].append((p, a))
    return preds


def useful_states(dfa: Dfa) -> set[int]:
    reach = set(reachable_states(dfa))
    preds = predecessors(dfa)
    co = set(f for f in dfa.finals)
    queue = deque(co)
    while queue:
        q = queue.popleft()
        for p, _ in preds[q]:
            if p not in co:
                co.add(p)
                queue.append(p)
    return reach & co


def _restrict(dfa: Dfa, keep: Sequence[int]) -> Dfa:
    new_id = {q: i for i, q in enumerate(keep)}
    table = tuple(tuple(new_id.get(t, UNDEFINED) for t in dfa.delta[q]) for q in keep)
    return Dfa(dfa.alphabet, table, new_id[dfa.initial],
               frozenset(new_id[f] for f in dfa.finals if f in new_id),
               tuple(dfa.names[q] for q in keep))


def trim(dfa: Automaton) -> Automaton:
    """Drop unreachable and dead states, keeping the original relative order."""
    if isinstance(dfa, EmptyLanguage):
        return dfa
    useful = useful_states(dfa)
    if dfa.initial not in useful:
        return EmptyLanguage(dfa.alphabet)
    if len(useful) == dfa.n:
        return dfa
    return _restrict(dfa, sorted(useful))


def _fresh_name(names: Iterable[str], base: str) -> str:
    taken = set(names)
    if base not in taken:
        return base
    i = 1
    while f"{base}_{i}" in taken:
        i += 1
    return f"{base}_{i}"


def complete(dfa: Automaton) -> Dfa:
    """Total version of ``dfa``; adds at most one non-final sink."""
    if isinstance(dfa, EmptyLanguage):
        k = len(dfa.alphabet)
        return Dfa(dfa.alphabet, ((0,) * k,), 0, frozenset(), ("sink",))
    if dfa.is_complete:
        return dfa
    sink = dfa.n
    table = tuple(tuple(sink if t == UNDEFINED else t for t in row) for row in dfa.delta)
    table += ((sink,) * len(dfa.alphabet),)
    return Dfa(dfa.alphabet, table, dfa.initial, dfa.finals,
               dfa.names + (_fresh_name(dfa.names, "sink"),))


def _hopcroft_blocks(dfa: Dfa) -> list[int]:
    """Coarsest language-respecting partition of a complete automaton."""
    n, k = dfa.n, len(dfa.alphabet)
    inv = [[[] for _ in range(n)] for _ in range(k)]
    for p, a, q in dfa.edges():
        inv[a][q].append(p)
    finals = [q for q in range(n) if q in dfa.finals]
    others = [q for q in range(n) if q not in dfa.finals]
    blocks: list[set[int]] = [set(b) for b in (finals, others) if b]
    block_of = [0] * n
    for i, b in enumerate(blocks):
        for q in b:
            block_of[q] = i
    work = set(range(len(blocks))) if len(blocks) == 1 else {
        0 if len(blocks[0]) <= len(blocks[1]) else 1}
    while work:
        splitter = work.pop()
        members = list(blocks[splitter])
        for a in range(k):
            touched: dict[int, set[int]] = {}
            for q in members:
                for p in inv[a][q]:
                    touched.setdefault(block_of[p], set()).add(p)
            for b, hit in touched.items():
                if len(hit) == len(blocks[b]):
                    continue
                rest = blocks[b] - hit
                blocks[b] = hit
                new = len(blocks)
                blocks.append(rest)
                for q in rest:
                    block_of[q] = new
                if b in work:
                    work.add(new)
                else:
                    work.add(b if len(hit) <= len(rest) else new)
    return block_of


def canonical_order(dfa: Dfa) -> list[int]:
    """States in BFS order from the initial state, symbols in declaration order."""
    return reachable_states(dfa)


def canonicalize(dfa: Dfa) -> Dfa:
    """Renumber states breadth-first; unreachable states are dropped."""
    order = canonical_order(dfa)
    if order == list(range(dfa.n)):
        return dfa
    return _restrict(dfa, order)


def minimize(dfa: Automaton) -> Automaton:
    """Minimal trimmed automaton, canonically numbered.

    Partition refinement runs on the completed automaton; the non-final
    absorbing class (if any) is then removed by trimming.  Each minimal state
    is named after the original state reached by its BFS access word.
    """
    if isinstance(dfa, EmptyLanguage):
        return dfa
    full = complete(canonicalize(dfa))
    block_of = _hopcroft_blocks(full)
    # quotient automaton, numbered by BFS over blocks
    start = block_of[full.initial]
    rep = {start: full.initial}
    order = [start]
    queue = deque([full.initial])
    while queue:
        p = queue.popleft()
        for q in full.delta[p]:
            b = block_of[q]
            if b not in rep:
                rep[b] = q
                order.append(b)
                queue.append(q)
    bid = {b: i for i, b in enumerate(order)}
    table = tuple(tuple(bid[block_of[t]] for t in full.delta[rep[b]]) for b in order)
    finals = frozenset(bid[b] for b in order if rep[b] in full.finals)
    quotient = Dfa(full.alphabet, table, 0, finals, tuple(full.names[rep[b]] for b in order))
    trimmed = trim(quotient)
    if isinstance(trimmed, EmptyLanguage):
        return trimmed
    result = canonicalize(trimmed)
    return Dfa(result.alphabet, result.delta, result.initial, result.finals,
               result.names, True)


def complement(dfa: Automaton) -> Automaton:
    """Minimal trimmed automaton of the complement language."""
    full = complete(dfa)
    swapped = Dfa(full.alphabet, full.delta, full.initial,
                  frozenset(range(full.n)) - full.finals, full.names)
    return minimize(swapped)


def is_minimal(dfa: Automaton) -> bool:
    if isinstance(dfa, EmptyLanguage):
        return True
    if dfa.minimal:
        return True
    if not dfa.is_trimmed:
        return False
    m = minimize(dfa)
    return not isinstance(m, EmptyLanguage) and m.n == dfa.n


def require_minimal(dfa: Automaton) -> None:
    if not is_minimal(dfa):
        raise PreconditionError("automaton must be minimal and trimmed (minimize it first)")


def is_finite_language(dfa: Automaton) -> bool:
    t = trim(dfa)
    if isinstance(t, EmptyLanguage):
        return True
    return find_cycle(range(t.n), state_successors(t)) is None


def is_prefix_universal(dfa: Automaton) -> bool:
    """Whether every word over the alphabet is a prefix of an accepted word."""
    m = minimize(dfa)
    if isinstance(m, EmptyLanguage):
        return False
    return m.is_complete


def incoming_labels(dfa: Dfa) -> list[frozenset[str]]:
    labels: list[set[str]] = [set() for _ in range(dfa.n)]
    for _, a, q in dfa.edges():
        labels[q].add(dfa.alphabet[a])
    return [frozenset(s) for s in labels]


def make_input_consistent(dfa: Dfa) -> Dfa:
    """Split every state with several incoming labels into one copy per label.

    If the initial state has incoming edges a fresh source is created, so the
    result has an edge-free source and ``|incoming_labels(q)| == 1`` elsewhere.
    """
    lam = [sorted(dfa.sym_index[a] for a in s) for s in incoming_labels(dfa)]
    if not lam[dfa.initial] and all(len(l) <= 1 for l in lam):
        return dfa
    copies: list[tuple[int, int | None]] = []  # (original state, in-label or None)
    copy_id: dict[tuple[int, int | None], int] = {}
    copies.append((dfa.initial, None))
    copy_id[(dfa.initial, None)] = 0
    for q in range(dfa.n):
        for a in lam[q]:
            copy_id[(q, a)] = len(copies)
            copies.append((q, a))
    table = []
    for q, _ in copies:
        table.append(tuple(UNDEFINED if t == UNDEFINED else copy_id[(t, a)]
                           for a, t in enumerate(dfa.delta[q])))
    names = []
    for q, a in copies:
        if a is None or (len(lam[q]) == 1 and q != dfa.initial):
            names.append(dfa.names[q])
        else:
            names.append(f"{dfa.names[q]}^{dfa.alphabet[a]}")
    finals = frozenset(i for i, (q, _) in enumerate(copies) if q in dfa.finals)
    return trim(Dfa(dfa.alphabet, tuple(table), 0, finals, tuple(names)))


def isomorphic(d1: Automaton, d2: Automaton) -> bool:
    """Identical up to state renaming (compared on canonical BFS numberings)."""
    if isinstance(d1, EmptyLanguage) or isinstance(d2, EmptyLanguage):
        return (isinstance(d1, EmptyLanguage) and isinstance(d2, EmptyLanguage)
                and d1.alphabet == d2.alphabet)
    if d1.alphabet != d2.alphabet or d1.n != d2.n:
        return False
    c1, c2 = canonicalize(d1), canonicalize(d2)
    return c1.n == c2.n and c1.delta == c2.delta and c1.finals == c2.finals


def state_successors(dfa: Dfa):
    delta, alphabet = dfa.delta, dfa.alphabet

    def succ(p):
        return [(alphabet[a], q) for a, q in enumerate(delta[p]) if q != UNDEFINED]
    return succ


def pair_successors(dfa: Dfa):
    """Successor function of the square automaton: ``(p, q) -a-> (δ(p,a), δ(q,a))``."""
    delta, alphabet = dfa.delta, dfa.alphabet
    k = len(alphabet)

    def succ(pair):
        p, q = pair
        rp, rq = delta[p], delta[q]
        out = []
        for a in range(k):
            x, y = rp[a], rq[a]
            if x != UNDEFINED and y != UNDEFINED:
                out.append((alphabet[a], (x, y)))
        return out
    return succ


def off_diagonal_pairs(dfa: Dfa) -> Iterable[tuple[int, int]]:
    n = dfa.n
    return ((p, q) for p in range(n) for q in range(n) if p != q)


def cycle_within(dfa: Dfa, node_filter=None, *, roots=None, budget: int | None = None
                 ) -> CycleWitness | None:
    """Cycle in the square automaton restricted to pairs passing ``node_filter``.

    By default only off-diagonal pairs are considered.
    """
    if node_filter is None:
        def node_filter(pair):
            return pair[0] != pair[1]
    if roots is None:
        roots = off_diagonal_pairs(dfa)
    return find_cycle(roots, pair_successors(dfa), node_filter, budget=budget)
