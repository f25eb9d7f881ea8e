"""Iterative graph utilities over implicit digraphs.

Graphs are described by a ``successors`` callable returning ``(label, node)``
pairs, so product automata never need to be materialized.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Iterator

Node = Hashable
Successors = Callable[[Node], Iterable[tuple[object, Node]]]


@dataclass(frozen=True)
class CycleWitness:
    """A closed walk ``nodes[0] -labels[0]-> nodes[1] ... -labels[-1]-> nodes[0]``."""

    nodes: tuple
    labels: tuple

    def __len__(self):
        return len(self.nodes)

    def edges(self) -> Iterator[tuple[Node, object, Node]]:
        k = len(self.nodes)
        for i in range(k):
            yield self.nodes[i], self.labels[i], self.nodes[(i + 1) % k]


def find_cycle(roots: Iterable[Node], successors: Successors,
               node_filter: Callable[[Node], bool] | None = None,
               budget: int | None = None) -> CycleWitness | None:
    """Return a directed cycle inside the subgraph induced by ``node_filter``.

    Depth-first search with an explicit stack; gray nodes are those on the
    current path, so a gray successor closes a cycle.  ``budget`` caps the
    number of distinct nodes visited.
    """
    from .errors import ResourceBudgetExceeded

    keep = node_filter or (lambda _: True)
    color: dict = {}  # 1 = on stack, 2 = finished
    for root in roots:
        if root in color or not keep(root):
            continue
        color[root] = 1
        path = [root]
        path_labels: list = []
        iters = [iter(successors(root))]
        while iters:
            advanced = False
            for label, nxt in iters[-1]:
                if not keep(nxt):
                    continue
                c = color.get(nxt)
                if c == 1:
                    start = path.index(nxt)
                    return CycleWitness(tuple(path[start:]),
                                        tuple(path_labels[start:]) + (label,))
                if c is None:
                    color[nxt] = 1
                    if budget is not None and len(color) > budget:
                        raise ResourceBudgetExceeded(
                            f"cycle search visited more than {budget} nodes")
                    path.append(nxt)
                    path_labels.append(label)
                    iters.append(iter(successors(nxt)))
                    advanced = True
                    break
            if not advanced:
                color[path.pop()] = 2
                iters.pop()
                if path_labels:
                    path_labels.pop()
    return None


def strongly_connected_components(nodes: Iterable[Node],
                                  successors: Successors) -> list[list[Node]]:
    """Iterative Tarjan; components are returned in reverse topological order."""
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    out: list[list[Node]] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter([n for _, n in successors(root)]))]
        while work:
            v, it = work[-1]
            pushed = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter([n for _, n in successors(w)])))
                    pushed = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if pushed:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def cyclic_nodes(nodes: Iterable[Node], successors: Successors) -> set:
    """Nodes lying on at least one directed cycle."""
    nodes = list(nodes)
    result = set()
    for comp in strongly_connected_components(nodes, successors):
        if len(comp) > 1:
            result.update(comp)
        else:
            v = comp[0]
            if any(w == v for _, w in successors(v)):
                result.add(v)
    return result
