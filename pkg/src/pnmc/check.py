"""Deadlock, reachability, safety and inevitability checks with witness traces."""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .core import LabelPattern, Lts, parse_label


@dataclass(frozen=True)
class DeadlockFree:
    def describe(self) -> str:
        return "deadlock_free"


@dataclass(frozen=True)
class Reachable:
    pattern: LabelPattern

    def describe(self) -> str:
        return f'reachable "{self.pattern.text}"'


@dataclass(frozen=True)
class Never:
    pattern: LabelPattern

    def describe(self) -> str:
        return f'never "{self.pattern.text}"'


@dataclass(frozen=True)
class Inevitably:
    """After any ``after`` step, every maximal path performs one of ``goals``."""

    after: LabelPattern
    goals: tuple[LabelPattern, ...]

    def __post_init__(self):
        if not self.goals:
            raise ValueError("inevitability needs at least one goal")

    def describe(self) -> str:
        goals = " or ".join(f'"{g.text}"' for g in self.goals)
        return f'after "{self.after.text}" eventually {goals}'


Property = Union[DeadlockFree, Reachable, Never, Inevitably]


@dataclass(frozen=True)
class Trace:
    """Path from state 0 as ``(src, label, dst)`` steps.

    For an infinite counterexample, ``loop_start`` is the index of the step
    where the repeated cycle begins; the cycle closes at the last step.
    """

    steps: tuple[tuple[int, str, int], ...]
    loop_start: int | None = None

    @property
    def labels(self) -> list[str]:
        return [l for _, l, _ in self.steps]

    def aut_lines(self) -> list[str]:
        lines = [f'({s}, "{l}", {d})' for s, l, d in self.steps]
        if self.loop_start is not None:
            lines.append(f"loop {self.loop_start}")
        return lines

    def describe(self) -> str:
        if not self.steps:
            return "(empty trace at state 0)"
        parts = ["0"]
        for k, (_, l, d) in enumerate(self.steps):
            mark = " [loop]" if self.loop_start == k else ""
            parts.append(f"--{l}-->{mark} {d}")
        return " ".join(parts)


@dataclass(frozen=True)
class Result:
    holds: bool
    trace: Trace | None = None


def replays(lts: Lts, trace: Trace) -> bool:
    """True when every step of ``trace`` is a transition of ``lts`` from state 0."""
    edges = set(lts.triples())
    at = 0
    for s, l, d in trace.steps:
        if s != at or (s, l, d) not in edges:
            return False
        at = d
    if trace.loop_start is not None:
        if not trace.steps or not 0 <= trace.loop_start < len(trace.steps):
            return False
        if trace.steps[trace.loop_start][0] != at:
            return False
    return True


# --------------------------------------------------------------------------
# search helpers


def _bfs_tree(lts: Lts, start: int = 0, allowed=None):
    """BFS parents ``state -> (transition index, predecessor)``; ties go to the smallest index."""
    out = lts.out()
    parent: dict[int, tuple[int, int] | None] = {start: None}
    order = [start]
    q = deque([start])
    while q:
        s = q.popleft()
        for k, _, d in out[s]:
            if allowed is not None and not allowed(k, d):
                continue
            if d not in parent:
                parent[d] = (k, s)
                order.append(d)
                q.append(d)
    return parent, order


def _path(lts: Lts, parent, target: int) -> list[tuple[int, str, int]]:
    steps = []
    labels = lts.labels
    while parent[target] is not None:
        k, p = parent[target]
        steps.append((p, labels[int(lts.lab[k])], target))
        target = p
    steps.reverse()
    return steps


def _matching(lts: Lts, patterns: Sequence[LabelPattern]) -> set[int]:
    return {i for i, l in enumerate(lts.labels) if any(p.matches(l) for p in patterns)}


# --------------------------------------------------------------------------
# checks


def check_deadlock(lts: Lts) -> Result:
    """Deadlock freedom; a counterexample ends in a state without successors."""
    parent, order = _bfs_tree(lts)
    out = lts.out()
    for s in order:
        if not out[s]:
            return Result(False, Trace(tuple(_path(lts, parent, s))))
    return Result(True)


def check_reachable(lts: Lts, pattern: LabelPattern) -> Result:
    """Some reachable transition matches; the witness is shortest and ends with it."""
    hits = _matching(lts, [pattern])
    if not hits:
        return Result(False)
    parent, order = _bfs_tree(lts)
    out = lts.out()
    labels = lts.labels
    for s in order:
        for k, l, d in out[s]:
            if l in hits:
                return Result(True, Trace(tuple(_path(lts, parent, s) + [(s, labels[l], d)])))
    return Result(False)


def check_never(lts: Lts, pattern: LabelPattern) -> Result:
    r = check_reachable(lts, pattern)
    return Result(not r.holds, r.trace)


def check_inevitably(lts: Lts, after: LabelPattern, goals: Sequence[LabelPattern]) -> Result:
    """Every maximal path leaving an ``after`` step performs a goal step.

    Maximal paths are infinite or end in a deadlock; internal cycles count
    as escaping the goal.  Counterexamples are a path to a goal-free
    deadlock or a goal-free lasso.
    """
    trig = _matching(lts, [after])
    if not trig:
        return Result(True)
    goal = _matching(lts, goals)
    n = lts.num_states
    lab = lts.lab
    keep = ~np.isin(lab, sorted(goal)) if goal else np.ones(len(lab), dtype=bool)
    out = lts.out()

    # seeds: deadlocks and states on a goal-free cycle
    src, dst = lts.src[keep], lts.dst[keep]
    g = csr_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n))
    _, comp = connected_components(g, directed=True, connection="strong")
    sizes = np.bincount(comp, minlength=comp.max() + 1 if n else 0)
    cyclic = sizes[comp] > 1
    cyclic[src[src == dst]] = True
    deadlock = np.array([not out[s] for s in range(n)], dtype=bool)
    bad = cyclic | deadlock
    pred: list[list[int]] = [[] for _ in range(n)]
    for s, d in zip(src.tolist(), dst.tolist()):
        pred[d].append(s)
    stack = np.flatnonzero(bad).tolist()
    while stack:
        d = stack.pop()
        for s in pred[d]:
            if not bad[s]:
                bad[s] = True
                stack.append(s)

    parent, order = _bfs_tree(lts)
    labels = lts.labels
    for s in order:
        for k, l, d in out[s]:
            if l in trig and bad[d]:
                prefix = _path(lts, parent, s) + [(s, labels[l], d)]
                suffix, loop = _escape(lts, d, keep, bad, cyclic, deadlock, comp)
                loop_start = None if loop is None else len(prefix) + loop
                return Result(False, Trace(tuple(prefix + suffix), loop_start))
    return Result(True)


def _escape(lts, start, keep, bad, cyclic, deadlock, comp):
    # goal-free path from a bad state to a deadlock or around a cycle
    ok = lambda k, d: bool(keep[k]) and bool(bad[d])
    parent, order = _bfs_tree(lts, start, ok)
    target = next(s for s in order if deadlock[s] or cyclic[s])
    steps = _path(lts, parent, target)
    if deadlock[target]:
        return steps, None
    c = comp[target]
    out = lts.out()
    # shortest goal-free cycle back to target inside its component
    par: dict[int, tuple[int, int] | None] = {}
    q = deque()
    labels = lts.labels
    for k, l, d in out[target]:
        if keep[k] and comp[d] == c and d not in par:
            par[d] = (k, target)
            q.append(d)
    while target not in par:
        s = q.popleft()
        for k, l, d in out[s]:
            if keep[k] and comp[d] == c and d not in par:
                par[d] = (k, s)
                q.append(d)
    cycle = []
    node = target
    while True:
        k, p = par[node]
        cycle.append((p, labels[int(lts.lab[k])], node))
        node = p
        if node == target:
            break
    cycle.reverse()
    return steps + cycle, len(steps)


def check(lts: Lts, prop: Property) -> Result:
    if isinstance(prop, DeadlockFree):
        return check_deadlock(lts)
    if isinstance(prop, Reachable):
        return check_reachable(lts, prop.pattern)
    if isinstance(prop, Never):
        return check_never(lts, prop.pattern)
    if isinstance(prop, Inevitably):
        return check_inevitably(lts, prop.after, prop.goals)
    raise TypeError(f"unknown property {prop!r}")


# --------------------------------------------------------------------------
# parameterized properties


def label_signatures(labels: Iterable[str]) -> dict[tuple[str, str, str | None], list[list[str]]]:
    """Per-position argument values for each label shape ``(glyph, name, family)``.

    Values are kept in first-seen order, so declared domain order survives
    when ``labels`` come from expanded vectors.
    """
    sig: dict[tuple, list[list[str]]] = {}
    for text in labels:
        try:
            g = parse_label(text)
        except ValueError:
            continue
        if g.direction == "tau":
            continue
        key = (g.direction, g.label, g.family, len(g.args))
        cols = sig.setdefault(key, [[] for _ in g.args])
        for col, v in zip(cols, g.args):
            if v not in col:
                col.append(v)
    return sig


def _pattern_instances(p: LabelPattern, signatures) -> list[tuple[LabelPattern, dict[int, str]]]:
    if p.wildcards == 0 or p.text == "*":
        return [(p, {})]
    parsed = _split(p.text)
    if parsed is None:
        return [(p, {})]
    glyph, family, index, name, args = parsed
    if args is None:
        return [(p, {})]
    key = (glyph, name, family, len(args))
    cols = signatures.get(key)
    if cols is None:
        return [(p, {})]
    slots = [k for k, a in enumerate(args) if a == "*"]
    out = []
    for combo in itertools.product(*(cols[k] for k in slots)):
        vals = list(args)
        for k, v in zip(slots, combo):
            vals[k] = v
        prefix = f"{family}[{index}]." if family is not None else ""
        text = f"{glyph}{prefix}{name}({','.join(vals)})"
        out.append((LabelPattern(text), dict(zip(slots, combo))))
    return out


def _split(text: str):
    m = re.match(r"^([!?]?)(?:([A-Za-z_]\w*)\[([^\]]+)\]\.)?([A-Za-z_]\w*)(?:\(([^)]*)\))?$", text)
    if not m:
        return None
    args = None if m[5] is None else (m[5].split(",") if m[5] else [])
    return m[1], m[2], m[3], m[4], args


def expand_property_instances(prop: Property, signatures) -> list[tuple[str, Property]]:
    """One ground property per valuation of the argument wildcards.

    ``signatures`` is the output of :func:`label_signatures`.  Only the
    main pattern (``reachable``/``never`` pattern, ``after`` trigger) is
    expanded; goal sets keep their wildcards.  Returns ``(tag, property)``
    pairs, the tag being the grounded pattern text or ``-``.
    """
    if isinstance(prop, DeadlockFree):
        return [("-", prop)]
    main = prop.after if isinstance(prop, Inevitably) else prop.pattern
    insts = _pattern_instances(main, signatures)
    if len(insts) == 1 and insts[0][0] is main:
        return [("-", prop)]
    out = []
    for pat, _ in insts:
        if isinstance(prop, Inevitably):
            out.append((pat.text, Inevitably(pat, prop.goals)))
        else:
            out.append((pat.text, type(prop)(pat)))
    return out
