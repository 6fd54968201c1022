"""Slow, obviously-correct reference implementations used only by the tests.

None of these share code with the package beyond its data types.
"""

from __future__ import annotations

import itertools
from collections import deque

import networkx as nx

from pnmc.core import BinOp, Broadcast, Collect, Idle, Index, IndexRange, Lit, Not, Single, Var

TAU = "i"


# ---------------------------------------------------------------- graphs


def to_graph(lts):
    g = nx.MultiDiGraph()
    g.add_nodes_from(range(lts.num_states))
    g.nodes[0]["init"] = True
    for s, l, d in lts.triples():
        g.add_edge(s, d, label=l)
    return g


def isomorphic(a, b) -> bool:
    if (a.num_states, a.num_transitions) != (b.num_states, b.num_transitions):
        return False
    return nx.is_isomorphic(
        to_graph(a),
        to_graph(b),
        node_match=lambda x, y: x.get("init", False) == y.get("init", False),
        edge_match=lambda x, y: sorted(e["label"] for e in x.values()) == sorted(e["label"] for e in y.values()),
    )


def reachable(n, triples, start=0):
    out = {}
    for s, l, d in triples:
        out.setdefault(s, []).append(d)
    seen = {start}
    q = deque([start])
    while q:
        s = q.popleft()
        for d in out.get(s, []):
            if d not in seen:
                seen.add(d)
                q.append(d)
    return seen


# ---------------------------------------------------------------- product


def naive_product(children, vectors):
    """Enumerate the whole tuple space, keep what is reachable from the initial tuple.

    Returns ``(tuples, edges)`` with tuples as Python tuples and edges as
    ``(src tuple, label, dst tuple)``.
    """
    moves = []
    for ch in children:
        m = {}
        for s, l, d in ch.triples():
            m.setdefault((s, l), set()).add(d)
        moves.append(m)
    edges = set()
    for tup in itertools.product(*(range(c.num_states) for c in children)):
        for gv in vectors:
            options = []
            for c, cell in enumerate(gv.cells):
                if cell is None:
                    options.append([tup[c]])
                else:
                    options.append(sorted(moves[c].get((tup[c], cell), ())))
            for nxt in itertools.product(*options):
                edges.add((tup, gv.label, nxt))
    start = tuple(0 for _ in children)
    succ = {}
    for s, l, d in edges:
        succ.setdefault(s, []).append(d)
    seen = {start}
    q = deque([start])
    while q:
        s = q.popleft()
        for d in succ.get(s, []):
            if d not in seen:
                seen.add(d)
                q.append(d)
    return seen, {e for e in edges if e[0] in seen}


# ---------------------------------------------------------------- bisimulations


def naive_strong_blocks(lts):
    """Signature refinement until the number of blocks is stable."""
    n = lts.num_states
    out = [[] for _ in range(n)]
    for s, l, d in lts.triples():
        out[s].append((l, d))
    block = [0] * n
    while True:
        sig = [(block[s], frozenset((l, block[d]) for l, d in out[s])) for s in range(n)]
        ids = {}
        new = [ids.setdefault(x, len(ids)) for x in sig]
        if len(ids) == len(set(block)):
            return new
        block = new


def naive_branching_relation(lts):
    """Greatest branching bisimulation on ``lts``, as a set of state pairs.

    A pair (s, t) survives while every s -a-> s' is matched: either a is
    internal and s' R t, or t does internal steps through states related
    to s, reaching t2 -a-> t' with s R t2 and s' R t'.  Same from t's side.
    """
    n = lts.num_states
    out = [[] for _ in range(n)]
    for s, l, d in lts.triples():
        out[s].append((l, d))
    rel = {(s, t) for s in range(n) for t in range(n)}

    def transfer(s, t):
        reach = None
        for a, s2 in out[s]:
            if a == TAU and (s2, t) in rel:
                continue
            if reach is None:
                reach = {t}
                stack = [t]
                while stack:
                    x = stack.pop()
                    for l, y in out[x]:
                        if l == TAU and y not in reach and (s, y) in rel:
                            reach.add(y)
                            stack.append(y)
            if not any(l == a and (s2, t2) in rel for t1 in reach for l, t2 in out[t1]):
                return False
        return True

    changed = True
    while changed:
        changed = False
        for s, t in sorted(rel):
            if s < t and not (transfer(s, t) and transfer(t, s)):
                rel.discard((s, t))
                rel.discard((t, s))
                changed = True
    return rel


def same_partition(a, b) -> bool:
    """Two block assignments induce the same equivalence."""
    if len(a) != len(b):
        return False
    fwd, bwd = {}, {}
    for x, y in zip(a, b):
        if fwd.setdefault(x, y) != y or bwd.setdefault(y, x) != x:
            return False
    return True


def relation_blocks(n, rel):
    block = [-1] * n
    k = 0
    for s in range(n):
        if block[s] < 0:
            for t in range(n):
                if (s, t) in rel:
                    block[t] = k
            k += 1
    return block


# ---------------------------------------------------------------- vectors


def _eval(e, env):
    if isinstance(e, Lit):
        return e.value
    if isinstance(e, Var):
        return env[e.name]
    if isinstance(e, Index):
        return env[e.array][_eval(e.index, env)]
    if isinstance(e, Not):
        return not _eval(e.operand, env)
    a, b = _eval(e.left, env), _eval(e.right, env)
    return {
        "+": lambda: a + b, "-": lambda: a - b, "=": lambda: a == b, "!=": lambda: a != b,
        "<": lambda: a < b, "<=": lambda: a <= b, ">": lambda: a > b, ">=": lambda: a >= b,
        "and": lambda: a and b, "or": lambda: a or b,
    }[e.op]()


def _text(v):
    if v is True:
        return "true"
    if v is False:
        return "false"
    return str(v)


def _label(action, env):
    if action.is_tau:
        return TAU
    target = f"{action.family}[{_text(_eval(action.index, env))}]." if action.family else ""
    args = ",".join(_text(_eval(a, env)) for a in action.args)
    return f"{action.direction.value}{target}{action.label}({args})"


def _values(dom, env):
    if isinstance(dom, IndexRange):
        return list(range(_eval(dom.lo, env), _eval(dom.hi, env) + 1))
    return list(dom.values())


def brute_force_vectors(net, inst):
    """Ground vectors of every vector of ``net`` as a set of ``(label, cells)``.

    Slots are listed hole by hole; an indexed hole unfolds over its domain.
    """
    env0 = {p.name: inst[p.name] for p in net.params}
    slots = []
    for h in net.holes:
        if h.index is None:
            slots.append((h.name, None))
        else:
            slots.extend((h.name, j) for j in _values(h.index, env0))
    out = set()
    for v in net.vectors:
        names = [b.name for b in v.binders]
        doms = [_values(b.domain, env0) for b in v.binders]
        co = [e for e in v.entries if isinstance(e, Collect)]
        for e in co:
            names.append(e.var)
            doms.append(_values(e.range, env0))
        for combo in itertools.product(*doms):
            env = dict(env0, **dict(zip(names, combo)))
            cells = {}
            for e in v.entries:
                if isinstance(e, Idle):
                    continue
                if isinstance(e, Single):
                    key = (e.hole, None if e.index is None else _eval(e.index, env))
                    cells[key] = _label(e.action, env)
                elif isinstance(e, Collect):
                    cells[(e.hole, env[e.var])] = _label(e.action, env)
                elif isinstance(e, Broadcast):
                    for j in _values(e.range, env):
                        cells[(e.hole, j)] = _label(e.action, dict(env, **{e.var: j}))
            out.add((_label(v.global_action, env), tuple(cells.get(s) for s in slots)))
    return out
