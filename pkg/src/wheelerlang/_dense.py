"""Compiled kernel for the capped witness-pair propagation on large automata.

Pairs ``(p, q)`` are flattened to ``p * n + q``.  Each pair owns two int16
slots holding encoded extended-symbol pairs (0 = empty).  Seeds are emitted in
the canonical order and each accepted store is propagated depth-first before
the next seed; only the ">= 2 entries" predicate matters downstream and it does
not depend on the processing order.
"""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _store(slots, pair, code):
    s0 = slots[pair, 0]
    if s0 == 0:
        slots[pair, 0] = code
        return 0
    if s0 == code or slots[pair, 1] != 0:
        return -1
    slots[pair, 1] = code
    return 1


@njit(cache=True)
def _drain(delta, slots, events, top, n, k):
    pushes = 0
    while top > 0:
        top -= 1
        ev = events[top]
        pair = ev >> 1
        code = slots[pair, ev & 1]
        p = pair // n
        q = pair - p * n
        for c in range(k):
            x = delta[p, c]
            y = delta[q, c]
            if x < 0 or y < 0 or x == y:
                continue
            pushes += 1
            nxt = x * n + y
            slot = _store(slots, nxt, code)
            if slot >= 0:
                events[top] = nxt * 2 + slot
                top += 1
    return pushes


@njit(cache=True)
def propagate_dense(delta, initial, lam, k):
    """Fill the two-slot table.  ``lam[q]`` holds the kept in-label indices
    of ``q`` (-1 padded).  Returns ``(slots, pushes)``."""
    n = delta.shape[0]
    width = k + 2
    suf = k
    pre = k + 1
    slots = np.zeros((n * n, 2), dtype=np.int16)
    events = np.empty(2 * n * n, dtype=np.int32)
    pushes = 0
    s = initial
    width_lam = lam.shape[1]
    codes = np.empty(2 + width_lam * width_lam, dtype=np.int64)
    for p in range(n):
        for q in range(n):
            if p == q:
                continue
            pair = p * n + q
            nc = 0
            if p == s:
                codes[nc] = suf * width + suf + 1
                nc += 1
            if q == s:
                codes[nc] = pre * width + pre + 1
                nc += 1
            for i in range(width_lam):
                a = lam[p, i]
                if a < 0:
                    continue
                for j in range(width_lam):
                    b = lam[q, j]
                    if b < 0 or a == b:
                        continue
                    codes[nc] = a * width + b + 1
                    nc += 1
            for i in range(nc):
                pushes += 1
                slot = _store(slots, pair, codes[i])
                if slot >= 0:
                    events[0] = pair * 2 + slot
                    pushes += _drain(delta, slots, events, 1, n, k)
    return slots, pushes


@njit(cache=True)
def find_cycle_dense(delta, slots, k):
    """Cycle among pairs with both slots filled; returns the cycle's flattened
    pair indices (empty array when acyclic)."""
    n = delta.shape[0]
    total = n * n
    color = np.zeros(total, dtype=np.int8)
    nextc = np.zeros(total, dtype=np.int32)
    stack = np.empty(total, dtype=np.int32)
    for root in range(total):
        if color[root] != 0 or slots[root, 1] == 0:
            continue
        top = 0
        stack[top] = root
        top += 1
        color[root] = 1
        while top > 0:
            node = stack[top - 1]
            p = node // n
            q = node - p * n
            advanced = False
            while nextc[node] < k:
                c = nextc[node]
                nextc[node] += 1
                x = delta[p, c]
                y = delta[q, c]
                if x < 0 or y < 0 or x == y:
                    continue
                nxt = x * n + y
                if slots[nxt, 1] == 0:
                    continue
                if color[nxt] == 1:
                    start = top - 1
                    while stack[start] != nxt:
                        start -= 1
                    return stack[start:top].copy()
                if color[nxt] == 0:
                    color[nxt] = 1
                    stack[top] = nxt
                    top += 1
                    advanced = True
                    break
            if not advanced:
                color[node] = 2
                top -= 1
    return np.empty(0, dtype=np.int32)
