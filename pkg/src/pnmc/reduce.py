"""Minimization modulo strong and branching bisimulation."""

from __future__ import annotations

from collections import defaultdict, deque

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .core import Lts, TAU_LABEL


class Partition:
    """Block id per state plus explicit member lists; blocks are disjoint and cover every state."""

    def __init__(self, n: int):
        self.block = [0] * n
        self.members: list[list[int]] = [list(range(n))]

    def split(self, x: int, part: set[int]) -> int:
        """Move ``part`` (a proper subset of block ``x``) into a new block."""
        y = len(self.members)
        self.members.append(sorted(part))
        self.members[x] = [s for s in self.members[x] if s not in part]
        block = self.block
        for s in part:
            block[s] = y
        return y

    def __len__(self) -> int:
        return len(self.members)


def _preds(lts: Lts, skip_tau_loops: bool = False):
    pred: list[list[tuple[int, int]]] = [[] for _ in range(lts.num_states)]
    tau = lts.labels.index(TAU_LABEL) if TAU_LABEL in lts.labels else -1
    for s, a, t in zip(lts.src.tolist(), lts.lab.tolist(), lts.dst.tolist()):
        if skip_tau_loops and a == tau and s == t:
            continue
        pred[t].append((a, s))
    return pred, tau


def strong_partition(lts: Lts) -> list[int]:
    """Coarsest strong bisimulation, as a block id per state.

    Splitter refinement: every block created is queued once as a splitter;
    the partition is stable against each block that ever existed, hence
    against the final one.
    """
    n = lts.num_states
    pred, _ = _preds(lts)
    part = Partition(n)
    work = deque([0])
    queued = {0}
    while work:
        c = work.popleft()
        queued.discard(c)
        by_label: dict[int, set[int]] = defaultdict(set)
        for t in part.members[c]:
            for a, s in pred[t]:
                by_label[a].add(s)
        for a in sorted(by_label):
            touched: dict[int, set[int]] = defaultdict(set)
            for s in by_label[a]:
                touched[part.block[s]].add(s)
            for x in sorted(touched):
                inside = touched[x]
                if len(inside) < len(part.members[x]):
                    y = part.split(x, inside)
                    for b in (x, y):
                        if b not in queued:
                            queued.add(b)
                            work.append(b)
    return list(part.block)


def _tau_sccs(lts: Lts, tau: int) -> np.ndarray:
    n = lts.num_states
    if tau < 0:
        return np.arange(n)
    mask = lts.lab == tau
    g = csr_matrix((np.ones(int(mask.sum()), dtype=np.int8), (lts.src[mask], lts.dst[mask])), shape=(n, n))
    _, comp = connected_components(g, directed=True, connection="strong")
    return comp


def branching_partition(lts: Lts) -> list[int]:
    """Coarsest branching bisimulation, as a block id per state.

    Internal self-loops are dropped and internal cycles collapsed first, so
    inert internal paths inside a block are acyclic.  A block ``X`` is split
    by ``(a, C)`` into the states that reach, by inert internal steps inside
    ``X``, an ``a``-step into ``C`` (internal steps from ``C`` into ``C``
    excluded), and the rest.
    """
    n = lts.num_states
    tau = lts.labels.index(TAU_LABEL) if TAU_LABEL in lts.labels else -1
    comp = _tau_sccs(lts, tau)
    m = int(comp.max()) + 1 if n else 0
    src = comp[lts.src].tolist()
    dst = comp[lts.dst].tolist()
    lab = lts.lab.tolist()
    edges = {(s, a, t) for s, a, t in zip(src, lab, dst) if not (a == tau and s == t)}
    pred: list[list[tuple[int, int]]] = [[] for _ in range(m)]
    succ: list[list[int]] = [[] for _ in range(m)]
    tau_pred: list[list[int]] = [[] for _ in range(m)]
    for s, a, t in sorted(edges):
        pred[t].append((a, s))
        succ[s].append(t)
        if a == tau:
            tau_pred[t].append(s)

    part = Partition(m)
    block = part.block
    work = deque([0])
    queued = {0}

    def push(b):
        if b not in queued:
            queued.add(b)
            work.append(b)

    while work:
        c = work.popleft()
        queued.discard(c)
        by_label: dict[int, set[int]] = defaultdict(set)
        for t in part.members[c]:
            for a, s in pred[t]:
                if a == tau and block[s] == c:
                    continue
                by_label[a].add(s)
        split_done = False
        for a in sorted(by_label):
            touched: dict[int, list[int]] = defaultdict(list)
            for s in by_label[a]:
                touched[block[s]].append(s)
            for x in sorted(touched):
                pos = set(touched[x])
                stack = list(pos)
                while stack:
                    s = stack.pop()
                    for p in tau_pred[s]:
                        if block[p] == x and p not in pos:
                            pos.add(p)
                            stack.append(p)
                if len(pos) == len(part.members[x]):
                    continue
                y = part.split(x, pos)
                push(x)
                push(y)
                for b in (x, y):
                    for s in part.members[b]:
                        for t in succ[s]:
                            push(block[t])
                split_done = True
                break
            if split_done:
                break
        if split_done:
            push(c)
    return [block[k] for k in comp.tolist()]


def quotient(lts: Lts, blocks: list[int], drop_inert: bool) -> Lts:
    """Reachable quotient; block of state 0 becomes state 0, others by BFS discovery."""
    labels = lts.labels
    tau = labels.index(TAU_LABEL) if TAU_LABEL in labels else -1
    edges: dict[int, set[tuple[int, int]]] = defaultdict(set)
    first: dict[int, int] = {}
    for s in range(lts.num_states):
        first.setdefault(blocks[s], s)
    for s, a, t in zip(lts.src.tolist(), lts.lab.tolist(), lts.dst.tolist()):
        bs, bt = blocks[s], blocks[t]
        if drop_inert and a == tau and bs == bt:
            continue
        edges[bs].add((a, bt))
    ordered = {b: sorted(es, key=lambda e: (labels[e[0]], first[e[1]])) for b, es in edges.items()}
    number = {blocks[0]: 0}
    order = [blocks[0]]
    i = 0
    while i < len(order):
        for _, bt in ordered.get(order[i], ()):
            if bt not in number:
                number[bt] = len(order)
                order.append(bt)
        i += 1
    triples = []
    for b in order:
        out = sorted(((labels[a], number[bt]) for a, bt in ordered.get(b, ())))
        triples.extend((number[b], l, d) for l, d in out)
    return Lts.from_triples(len(order), triples)


def minimize_strong(lts: Lts) -> Lts:
    return quotient(lts, strong_partition(lts), drop_inert=False)


def minimize_branching(lts: Lts) -> Lts:
    return quotient(lts, branching_partition(lts), drop_inert=True)


def disjoint_union(a: Lts, b: Lts) -> tuple[Lts, int]:
    """Both LTSs side by side; returns the union and the offset of ``b``'s states."""
    off = a.num_states
    triples = list(a.triples()) + [(s + off, l, d + off) for s, l, d in b.triples()]
    return Lts.from_triples(a.num_states + b.num_states, triples), off


def strongly_bisimilar(a: Lts, b: Lts) -> bool:
    u, off = disjoint_union(a, b)
    blocks = strong_partition(u)
    return blocks[0] == blocks[off]


def branching_bisimilar(a: Lts, b: Lts) -> bool:
    u, off = disjoint_union(a, b)
    blocks = branching_partition(u)
    return blocks[0] == blocks[off]
