"""Orthogonal Vectors instances, their encoding as automata, and a timing harness.

The encoding gives every vector its own cycle over ``{#, 0, 1}``.  A cycle of
the A side spells the words compatible with ``a_i`` (a 1 only where ``a_i``
has a 0) followed by the index of ``i``; a cycle of the B side spells ``b_j``
followed by free index bits.  Two distinct states then carry cycles with a
common label exactly when they are ``â_i`` and ``b̂_j`` (up to rotation) with
``a_i · b_j = 0``.  Entry paths reach ``â_i`` by words ending in ``000`` and
``110`` and ``b̂_j`` by a word ending in ``010``; since ``010`` sorts between
the other two under either order of ``0`` and ``1``, an orthogonal pair is
intertwined under every alphabet order.
"""
from __future__ import annotations

import csv
import math
import random
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .automaton import UNDEFINED, Dfa, isomorphic, minimize, pair_successors, state_successors
from .errors import InputError, WheelerError
from .graphs import cyclic_nodes, strongly_connected_components
from .uw import decide_uw

ALPHABET = ("#", "0", "1")
MODES = ("planted_yes", "planted_no", "random")


@dataclass(frozen=True)
class OvInstance:
    N: int
    d: int
    A: tuple[tuple[int, ...], ...]
    B: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.N < 1 or self.d < 1:
            raise InputError("N and d must be positive")
        for rows in (self.A, self.B):
            if len(rows) != self.N or any(len(r) != self.d for r in rows):
                raise InputError("each side needs N rows of d bits")
            if any(x not in (0, 1) for r in rows for x in r):
                raise InputError("vector entries must be 0 or 1")


def gen_ov(N: int, d: int, seed: int = 0, mode: str = "random") -> OvInstance:
    if mode not in MODES:
        raise InputError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")
    if N < 1 or d < 1:
        raise InputError("N and d must be positive")
    rng = random.Random(seed)
    A = [[rng.randrange(2) for _ in range(d)] for _ in range(N)]
    B = [[rng.randrange(2) for _ in range(d)] for _ in range(N)]
    if mode == "planted_yes":
        i, j = rng.randrange(N), rng.randrange(N)
        B[j] = [1 - x for x in A[i]]
    elif mode == "planted_no":
        c = rng.randrange(d)
        for row in A + B:
            row[c] = 1
    return OvInstance(N, d, tuple(map(tuple, A)), tuple(map(tuple, B)))


def solve_ov_brute(inst: OvInstance) -> bool:
    return any(not any(x & y for x, y in zip(a, b)) for a in inst.A for b in inst.B)


def orthogonal_pairs(inst: OvInstance) -> set[tuple[int, int]]:
    return {(i, j) for i, a in enumerate(inst.A) for j, b in enumerate(inst.B)
            if not any(x & y for x, y in zip(a, b))}


def parse_ov(text: str) -> OvInstance:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("%")]
    if not lines or len(lines[0]) != 2:
        raise InputError("first line must be 'N d'")
    try:
        N, d = int(lines[0][0]), int(lines[0][1])
    except ValueError:
        raise InputError("first line must be 'N d'") from None
    rows = []
    for ln in lines[1:]:
        bits = "".join(ln)
        if any(ch not in "01" for ch in bits):
            raise InputError(f"bad vector row {bits!r}")
        rows.append(tuple(int(ch) for ch in bits))
    if len(rows) != 2 * N:
        raise InputError(f"expected {2 * N} vector rows, found {len(rows)}")
    return OvInstance(N, d, tuple(rows[:N]), tuple(rows[N:]))


def format_ov(inst: OvInstance) -> str:
    rows = [f"{inst.N} {inst.d}"]
    rows += ["".join(map(str, r)) for r in inst.A + inst.B]
    return "\n".join(rows) + "\n"


# ---------------------------------------------------------------------------
# Reduction

@dataclass(frozen=True)
class ReductionOutput:
    dfa: Dfa
    a_nodes: tuple[int, ...]
    b_nodes: tuple[int, ...]


def size_target(N: int, d: int) -> int:
    return N * (d + math.ceil(math.log2(N)) + 1)


def _bits(x: int, width: int) -> str:
    return format(x, f"0{width}b") if width else ""


def ov_to_dfa(inst: OvInstance, *, size_factor: int = 8, slack: int = 64) -> ReductionOutput:
    """Build the reduction automaton directly (it is already minimal)."""
    N, d = inst.N, inst.d
    L = max(1, math.ceil(math.log2(N)))
    seen: dict[tuple[int, ...], int] = {}
    dup = []
    for b in inst.B:
        dup.append(seen.get(b, 0))
        seen[b] = dup[-1] + 1
    LB = math.ceil(math.log2(max(seen.values()))) if max(seen.values()) > 1 else 0
    period = d + L + LB + 1

    names: dict[str, int] = {}
    rows: list[list[int]] = []
    sym = {"#": 0, "0": 1, "1": 2}

    def state(name):
        if name not in names:
            names[name] = len(rows)
            rows.append([UNDEFINED, UNDEFINED, UNDEFINED])
        return names[name]

    def edge(p, symbols, q):
        for a in symbols:
            rows[p][sym[a]] = q

    s = state("s")
    a_nodes, b_nodes = [], []
    for side, vectors in (("A", inst.A), ("B", inst.B)):
        root = state(f"{side}:")
        edge(s, "0" if side == "A" else "1", root)
        for i, vec in enumerate(vectors):
            idx = _bits(i, L)
            for t in range(L):  # index tree
                edge(state(f"{side}:{idx[:t]}"), idx[t], state(f"{side}:{idx[:t + 1]}"))
            leaf = state(f"{side}:{idx}")
            cyc = [state(f"{side}{i}.{t}") for t in range(period)]
            if side == "A":
                x0, x1, y = state(f"x{i}"), state(f"x'{i}"), state(f"y{i}")
                edge(leaf, "0", x0)
                edge(leaf, "1", x1)
                edge(x0, "0", y)
                edge(x1, "1", y)
                edge(y, "0", cyc[0])
                labels = (["01" if bit == 0 else "0" for bit in vec] + list(idx)
                          + ["01"] * LB)
                a_nodes.append(cyc[0])
            else:
                u, v = state(f"u{i}"), state(f"v{i}")
                edge(leaf, "0", u)
                edge(u, "1", v)
                edge(v, "0", cyc[0])
                labels = ([str(bit) for bit in vec] + ["01"] * L + list(_bits(dup[i], LB)))
                b_nodes.append(cyc[0])
            for t, lab in enumerate(labels):
                edge(cyc[t], lab, cyc[t + 1])
            edge(cyc[-1], "#", cyc[0])
    finals = frozenset(a_nodes + b_nodes)
    inv = {v: k for k, v in names.items()}
    dfa = Dfa(ALPHABET, tuple(map(tuple, rows)), s, finals,
              tuple(inv[q] for q in range(len(rows))), minimal=True)
    budget = size_factor * size_target(N, d) + slack
    if dfa.n > budget or dfa.num_edges > budget:
        raise WheelerError(f"reduction has {dfa.n} states / {dfa.num_edges} edges, "
                           f"over the size budget {budget}")
    return ReductionOutput(dfa, tuple(a_nodes), tuple(b_nodes))


# ---------------------------------------------------------------------------
# Verification of the reduction's contract

@dataclass
class ReductionReport:
    minimal: bool
    cycles: bool
    suffixes: bool
    equivalence: bool
    details: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.minimal and self.cycles and self.suffixes and self.equivalence


def cyclic_offdiagonal_pairs(dfa: Dfa) -> list[list[tuple[int, int]]]:
    """Non-trivial strongly connected components of the square automaton
    restricted to off-diagonal pairs.  Only pairs of states that lie on
    cycles can lie on a cycle of pairs."""
    succ = pair_successors(dfa)
    cyc = cyclic_nodes(range(dfa.n), state_successors(dfa))

    def off(pair):
        return [(a, t) for a, t in succ(pair) if t[0] != t[1] and t[0] in cyc and t[1] in cyc]

    nodes = [(p, q) for p in sorted(cyc) for q in sorted(cyc) if p != q]
    comps = strongly_connected_components(nodes, off)
    out = []
    for comp in comps:
        if len(comp) > 1 or any(t == comp[0] for _, t in off(comp[0])):
            out.append(comp)
    return out


def suffix_reachable(dfa: Dfa, width: int = 3) -> dict[int, set[str]]:
    """For each state, the last ``width`` symbols of the words reaching it
    (shorter words contribute their whole spelling)."""
    start = (dfa.initial, "")
    seen = {start}
    queue = deque([start])
    while queue:
        q, tail = queue.popleft()
        for a, t in enumerate(dfa.delta[q]):
            if t == UNDEFINED:
                continue
            nxt = (t, (tail + dfa.alphabet[a])[-width:])
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    out: dict[int, set[str]] = {}
    for q, tail in seen:
        out.setdefault(q, set()).add(tail)
    return out


def verify_reduction(out: ReductionOutput, inst: OvInstance) -> ReductionReport:
    dfa = out.dfa
    details = []
    minimal = isomorphic(minimize(dfa), dfa)
    if not minimal:
        details.append("automaton is not minimal")
    # designated pairs joined by equally labelled cycles
    comps = cyclic_offdiagonal_pairs(dfa)
    a_set, b_set = set(out.a_nodes), set(out.b_nodes)
    expected = set()
    for i, j in orthogonal_pairs(inst):
        expected.add((out.a_nodes[i], out.b_nodes[j]))
        expected.add((out.b_nodes[j], out.a_nodes[i]))
    designated = a_set | b_set
    found = set()
    cycles = True
    for comp in comps:
        members = set(comp)
        hits = {pq for pq in members if pq[0] in designated and pq[1] in designated}
        found |= hits
        if not hits & expected:
            cycles = False
            details.append(f"cycle component without an orthogonal designated pair: {comp[0]}")
    if found != expected:
        cycles = False
        details.append(f"designated pairs on cycles {sorted(found ^ expected)[:4]} "
                       "disagree with the orthogonal pairs")
    tails = suffix_reachable(dfa)
    suffixes = (all({"000", "110"} <= tails.get(q, set()) for q in out.a_nodes)
                and all("010" in tails.get(q, set()) for q in out.b_nodes))
    if not suffixes:
        details.append("a designated node lacks an entry suffix")
    verdict = decide_uw(dfa, check=False)
    equivalence = (not verdict.uw) == solve_ov_brute(inst)
    if not equivalence:
        details.append(f"decide_uw says uw={verdict.uw} but OV answer is {solve_ov_brute(inst)}")
    return ReductionReport(minimal, cycles, suffixes, equivalence, details)


# ---------------------------------------------------------------------------
# Benchmark

CSV_COLUMNS = ("N", "d", "seed", "n_states", "m_edges", "verdict", "seconds")


@dataclass(frozen=True)
class BenchRecord:
    N: int
    d: int
    seed: int
    n_states: int
    m_edges: int
    verdict: str
    seconds: float
    pushes: int

    @property
    def work_ratio(self) -> float:
        return self.pushes / (self.n_states * self.m_edges)

    def row(self) -> list:
        return [self.N, self.d, self.seed, self.n_states, self.m_edges, self.verdict,
                f"{self.seconds:.6f}"]


def _warm_up() -> None:
    small = ov_to_dfa(gen_ov(4, 2, 0, "planted_yes")).dfa
    decide_uw(small, check=False, backend="dense")


def _bench_one(args) -> BenchRecord:
    N, d, seed, reps, mode, node_budget = args
    _warm_up()
    dfa = ov_to_dfa(gen_ov(N, d, seed, mode)).dfa
    best = math.inf
    verdict = None
    for _ in range(reps):
        t0 = time.perf_counter()
        verdict = decide_uw(dfa, check=False, backend="dense", node_budget=node_budget)
        best = min(best, time.perf_counter() - t0)
    return BenchRecord(N, d, seed, dfa.n, dfa.num_edges, "InUW" if verdict.uw else "NotUW",
                       best, verdict.pushes)


def bench(sizes: Sequence[tuple[int, int]], reps: int = 3, seed: int = 0,
          mode: str = "planted_no", workers: int = 1,
          node_budget: int | None = 10**8) -> list[BenchRecord]:
    """Time ``decide_uw`` on reduction automata, minimum over ``reps`` runs."""
    if reps < 1:
        raise InputError("reps must be positive")
    jobs = [(N, d, seed, reps, mode, node_budget) for N, d in sizes]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_bench_one, jobs))
    return [_bench_one(job) for job in jobs]


def growth_slope(records: Sequence[BenchRecord]) -> float:
    """Least-squares slope of log(seconds) against log(m_edges)."""
    import numpy as np

    if len(records) < 2:
        raise InputError("need at least two sizes to fit a slope")
    x = np.log([r.m_edges for r in records])
    y = np.log([r.seconds for r in records])
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def write_csv(records: Sequence[BenchRecord], path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for r in records:
            writer.writerow(r.row())


def plot_growth(records: Sequence[BenchRecord], path: str) -> None:
    """Log-log plot of time against edge count with the fitted line."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    import numpy as np

    m = np.array([r.m_edges for r in records], dtype=float)
    t = np.array([r.seconds for r in records])
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.loglog(m, t, "o", label="decide_uw")
    if len(records) >= 2:
        slope, icept = np.polyfit(np.log(m), np.log(t), 1)
        xs = np.linspace(m.min(), m.max(), 50)
        ax.loglog(xs, np.exp(icept) * xs**slope, "-", label=f"fit, slope {slope:.2f}")
    ax.set_xlabel("edges m")
    ax.set_ylabel("seconds (min over reps)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
