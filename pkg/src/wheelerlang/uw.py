"""Deciding whether a regular language is Wheeler for every alphabet order.

The decider works on the minimal trimmed automaton.  For every ordered pair of
distinct states it collects at most two distinct "witness pairs": a pair of
in-labels ``(a, b)`` that some equal suffix carries into ``(p, q)``, or a
sentinel recording that ``p`` (``⊣``) or ``q`` (``⊢``) is reached by a proper
suffix of a word reaching the other state.  Two distinct witnesses make the
states intertwined for some order, and the language is universally Wheeler
exactly when the square automaton has no cycle through such pairs.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .automaton import PRE, SUF, UNDEFINED, Dfa, EmptyLanguage, cycle_within, require_minimal
from .errors import InputError, InternalInconsistency, ResourceBudgetExceeded
from .graphs import CycleWitness
from .order import AlphabetOrder, ExtPair, build_violating_order

Quad = tuple[int, int, str, str]

DEFAULT_NODE_BUDGET = 10**8
DENSE_THRESHOLD = 48
DEFAULT_LAMBDA_WIDTH = 3


def lambda_prime(dfa: Dfa, width: int = DEFAULT_LAMBDA_WIDTH) -> list[tuple[str, ...]]:
    """The (at most) ``width`` smallest in-labels of each state, by declaration rank.

    Width 3 is the smallest that is always safe: a pair of states whose kept
    labels overlap, such as ``{a, b}`` against ``{a}``, yields a single
    letter pair although the full label sets ``{a, b, c}`` and ``{a}`` yield
    two.  With three labels kept on one side, any label on the other side
    still leaves two distinct pairs.
    """
    if width < 1:
        raise InputError("lambda width must be positive")
    best: list[list[int]] = [[] for _ in range(dfa.n)]
    for _, a, q in dfa.edges():
        b = best[q]
        if a in b:
            continue
        b.append(a)
        b.sort()
        del b[width:]
    return [tuple(dfa.alphabet[a] for a in b) for b in best]


def seed_quadruples(dfa: Dfa, lp: list[tuple[str, ...]] | None = None) -> list[Quad]:
    """Base cases in canonical order: for each pair ``p != q`` the sentinels
    first, then letter pairs ``a in λ'(p)``, ``b in λ'(q)``, ``a != b``."""
    if lp is None:
        lp = lambda_prime(dfa)
    s = dfa.initial
    seeds: list[Quad] = []
    for p in range(dfa.n):
        for q in range(dfa.n):
            if p == q:
                continue
            if p == s:
                seeds.append((p, q, SUF, SUF))
            if q == s:
                seeds.append((p, q, PRE, PRE))
            for a in lp[p]:
                for b in lp[q]:
                    if a != b:
                        seeds.append((p, q, a, b))
    return seeds


@dataclass
class TTable:
    """Capped witness pairs per ordered off-diagonal pair, plus the work count."""

    entries: dict
    pushes: int

    def __getitem__(self, pair) -> tuple[ExtPair, ...]:
        return self.entries.get(pair, ())

    def intertwined(self, p: int, q: int) -> bool:
        return len(self.entries.get((p, q), ())) >= 2


def propagate(dfa: Dfa, seeds: Iterable[Quad], *, discipline: str = "fifo",
              rng: random.Random | None = None) -> TTable:
    """Worklist propagation capped at two witness pairs per state pair.

    ``discipline`` ("fifo", "lifo" or "random") only changes which entries are
    kept, never whether a pair ends up with two of them.
    """
    if discipline not in ("fifo", "lifo", "random"):
        raise InputError(f"unknown queue discipline {discipline!r}")
    if discipline == "random" and rng is None:
        rng = random.Random(0)
    work = list(seeds) if discipline == "random" else deque(seeds)
    pushes = len(work)
    table: dict = {}
    delta, k = dfa.delta, len(dfa.alphabet)
    while work:
        if discipline == "fifo":
            p, q, a, b = work.popleft()
        elif discipline == "lifo":
            p, q, a, b = work.pop()
        else:
            i = rng.randrange(len(work))
            work[i], work[-1] = work[-1], work[i]
            p, q, a, b = work.pop()
        entry = table.get((p, q), ())
        if len(entry) >= 2 or (a, b) in entry:
            continue
        table[(p, q)] = entry + ((a, b),)
        rp, rq = delta[p], delta[q]
        for c in range(k):
            x, y = rp[c], rq[c]
            if x != UNDEFINED and y != UNDEFINED and x != y:
                work.append((x, y, a, b))
                pushes += 1
    return TTable(table, pushes)


@dataclass(frozen=True)
class UwGraph:
    nodes: frozenset
    edges: tuple  # (source pair, symbol, target pair)


def uw_graph(dfa: Dfa, t: TTable) -> UwGraph:
    nodes = frozenset(pq for pq, e in t.entries.items() if len(e) >= 2)
    edges = []
    for p, q in sorted(nodes):
        for c, a in enumerate(dfa.alphabet):
            x, y = dfa.delta[p][c], dfa.delta[q][c]
            if x != UNDEFINED and y != UNDEFINED and (x, y) in nodes:
                edges.append(((p, q), a, (x, y)))
    return UwGraph(nodes, tuple(edges))


@dataclass(frozen=True)
class UwVerdict:
    """``uw`` is the answer; a negative verdict carries a cycle of intertwined
    pairs, the two witness pairs stored at the first cycle node, and an order
    under which the language fails to be Wheeler."""

    uw: bool
    pair: tuple[int, int] | None = None
    cycle: CycleWitness | None = None
    witnesses: tuple[ExtPair, ExtPair] | None = None
    violating_order: AlphabetOrder | None = None
    pushes: int = 0

    def __bool__(self):
        return self.uw


def _work_bound(dfa: Dfa, width: int) -> int:
    """Seeds (two sentinels plus ``width**2`` letter pairs per state pair) and
    at most two forwarded entries per square-automaton edge."""
    n, m = dfa.n, dfa.num_edges
    return (width * width + 2) * n * n + 2 * n * m


def _check_budget(dfa: Dfa, node_budget: int | None) -> None:
    if node_budget is not None and dfa.n * (dfa.n - 1) > node_budget:
        raise ResourceBudgetExceeded(
            f"{dfa.n} states give {dfa.n * (dfa.n - 1)} state pairs, "
            f"over the node budget of {node_budget}")


def _decide_sparse(dfa: Dfa, width: int, discipline: str = "fifo") -> UwVerdict:
    t = propagate(dfa, seed_quadruples(dfa, lambda_prime(dfa, width)), discipline=discipline)
    if t.pushes > _work_bound(dfa, width):
        raise InternalInconsistency(f"propagation work {t.pushes} over its bound")
    roots = sorted(pq for pq, e in t.entries.items() if len(e) >= 2)
    cycle = cycle_within(dfa, lambda pq: t.intertwined(*pq), roots=roots)
    if cycle is None:
        return UwVerdict(True, pushes=t.pushes)
    pair = cycle.nodes[0]
    first, second = t[pair]
    return UwVerdict(False, pair, cycle, (first, second),
                     build_violating_order(first, second, dfa.alphabet), t.pushes)


def _decode(code: int, ext: tuple[str, ...]) -> ExtPair:
    width = len(ext)
    code -= 1
    return ext[code // width], ext[code % width]


def _decide_dense(dfa: Dfa, width: int) -> UwVerdict:
    import numpy as np

    from ._dense import find_cycle_dense, propagate_dense

    n, k = dfa.n, len(dfa.alphabet)
    delta = np.array(dfa.delta, dtype=np.int32).reshape(n, k)
    lam = np.full((n, width), -1, dtype=np.int32)
    for q, labs in enumerate(lambda_prime(dfa, width)):
        for i, a in enumerate(labs):
            lam[q, i] = dfa.sym_index[a]
    slots, pushes = propagate_dense(delta, dfa.initial, lam, k)
    pushes = int(pushes)
    if pushes > _work_bound(dfa, width):
        raise InternalInconsistency(f"propagation work {pushes} over its bound")
    flat = find_cycle_dense(delta, slots, k)
    if len(flat) == 0:
        return UwVerdict(True, pushes=pushes)
    nodes = tuple(divmod(int(v), n) for v in flat)
    labels = []
    for i, (p, q) in enumerate(nodes):
        nxt = nodes[(i + 1) % len(nodes)]
        for c in range(k):
            if (dfa.delta[p][c], dfa.delta[q][c]) == nxt:
                labels.append(dfa.alphabet[c])
                break
        else:
            raise InternalInconsistency("dense cycle is not a walk of the square automaton")
    pair = nodes[0]
    ext = dfa.alphabet + (SUF, PRE)
    first, second = (_decode(int(c), ext) for c in slots[pair[0] * n + pair[1]])
    return UwVerdict(False, pair, CycleWitness(nodes, tuple(labels)), (first, second),
                     build_violating_order(first, second, dfa.alphabet), pushes)


def decide_uw(min_dfa: Dfa | EmptyLanguage, *, check: bool = True, backend: str = "auto",
              node_budget: int | None = DEFAULT_NODE_BUDGET,
              lambda_width: int = DEFAULT_LAMBDA_WIDTH) -> UwVerdict:
    """Decide universal Wheelerness of the language of a minimal trimmed DFA.

    ``backend`` is "sparse" (pure Python worklist), "dense" (compiled table)
    or "auto" (dense from ``DENSE_THRESHOLD`` states on).  Set ``check=False``
    to skip the minimality check on inputs known to be minimal.
    ``lambda_width=2`` reproduces the two-label variant, which can miss
    intertwined pairs (see ``lambda_prime``).
    """
    if isinstance(min_dfa, EmptyLanguage):
        return UwVerdict(True)
    if check:
        require_minimal(min_dfa)
    if backend not in ("auto", "sparse", "dense"):
        raise InputError(f"unknown backend {backend!r}")
    _check_budget(min_dfa, node_budget)
    if min_dfa.n < 2:
        return UwVerdict(True)
    k = len(min_dfa.alphabet)
    dense_ok = (k + 2) ** 2 < 2**15 and 2 * min_dfa.n**2 < 2**31
    if backend == "dense" and not dense_ok:
        raise ResourceBudgetExceeded("alphabet or state count too large for the dense table")
    if backend == "dense" or (backend == "auto" and dense_ok and min_dfa.n >= DENSE_THRESHOLD):
        return _decide_dense(min_dfa, lambda_width)
    return _decide_sparse(min_dfa, lambda_width)


def t_table(min_dfa: Dfa, discipline: str = "fifo",
            lambda_width: int = DEFAULT_LAMBDA_WIDTH) -> TTable:
    lp = lambda_prime(min_dfa, lambda_width)
    return propagate(min_dfa, seed_quadruples(min_dfa, lp), discipline=discipline)


def intertwined(min_dfa: Dfa, p: int, q: int, table: TTable | None = None) -> bool:
    """Whether some alphabet order makes ``p`` and ``q`` intertwined."""
    if p == q:
        raise InputError("intertwined needs two distinct states")
    if not (0 <= p < min_dfa.n and 0 <= q < min_dfa.n):
        raise InputError("state out of range")
    if table is None:
        table = t_table(min_dfa)
    return table.intertwined(p, q)
