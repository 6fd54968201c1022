"""Synchronisation product of ground LTSs under ground vectors, and hiding.

The exploration kernel is compiled from ``_explore.pyx`` when available;
``PNMC_PURE_PYTHON=1`` forces the pure-Python kernel.
"""

from __future__ import annotations

import itertools
import logging
import os
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence, Union

import numpy as np

from ..core import LabelPattern, Lts, TAU_LABEL, WellFormednessError, matches_any
from ..expand import GroundVector, StateExplosion, default_state_cap
from . import _explore_py

log = logging.getLogger(__name__)

try:
    if os.environ.get("PNMC_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _explore as _explore_ext
except ImportError:  # pragma: no cover - depends on the build
    _explore_ext = None

KERNEL = "compiled" if _explore_ext is not None else "python"


@dataclass
class Leaf:
    name: str
    lts: Lts


@dataclass
class Composition:
    """One level of a model: children, ground vectors, observed sort.

    ``observed`` of ``None`` keeps every label visible.
    """

    name: str
    children: list[Union["Composition", Leaf]]
    vectors: list[GroundVector]
    observed: Sequence[LabelPattern] | None = None
    slot_names: list[str] = field(default_factory=list)

    def __post_init__(self):
        for v in self.vectors:
            if len(v.cells) != len(self.children):
                raise WellFormednessError(
                    f"{self.name}: vector {v.label} has {len(v.cells)} cells for {len(self.children)} children"
                )


Node = Union[Composition, Leaf]


def _prepare(children: Sequence[Lts], vectors: Sequence[GroundVector]):
    k = len(children)
    off_parts, ol_parts, od_parts, base = [], [], [], []
    pos = 0
    label_ids = []
    for ch in children:
        n = ch.num_states
        order = np.lexsort((np.arange(len(ch.src)), ch.lab, ch.src))
        counts = np.bincount(ch.src, minlength=n) if len(ch.src) else np.zeros(n, dtype=np.int64)
        offsets = np.concatenate(([0], np.cumsum(counts))) + pos
        base.append(sum(len(o) for o in off_parts))
        off_parts.append(offsets)
        ol_parts.append(ch.lab[order])
        od_parts.append(ch.dst[order])
        pos += len(ch.src)
        label_ids.append({l: i for i, l in enumerate(ch.labels)})

    out_labels: dict[str, int] = {}
    vglab, voff, cchild, clab = [], [0], [], []
    pivots: list[list[list[int]]] = [[[] for _ in ch.labels] for ch in children]
    for gv in vectors:
        cells = []
        for c, cell in enumerate(gv.cells):
            if cell is None:
                continue
            lid = label_ids[c].get(cell)
            if lid is None:
                break  # the child never shows this label
            cells.append((c, lid))
        else:
            if not cells:
                raise WellFormednessError(f"vector {gv.label} has no participating child")
            v = len(vglab)
            vglab.append(out_labels.setdefault(gv.label, len(out_labels)))
            for c, lid in cells:
                cchild.append(c)
                clab.append(lid)
            voff.append(len(cchild))
            pivots[cells[0][0]][cells[0][1]].append(v)

    poff, pvec, pbase = [0], [], []
    for per_child in pivots:
        pbase.append(len(poff) - 1)
        for vs in per_child:
            pvec.extend(vs)
            poff.append(len(pvec))

    radix, acc = [], 1
    for ch in children:
        radix.append(acc)
        acc *= ch.num_states
    arr = lambda x: np.ascontiguousarray(np.asarray(x, dtype=np.int64).reshape(-1))
    args = (
        arr(np.concatenate(off_parts) if off_parts else []),
        arr(np.concatenate(ol_parts) if ol_parts else []),
        arr(np.concatenate(od_parts) if od_parts else []),
        arr(base),
        k,
        arr(np.zeros(k)),
        arr(vglab),
        arr(voff),
        arr(cchild),
        arr(clab),
        arr(poff),
        arr(pvec),
        arr(pbase),
    )
    return args, radix, acc, list(out_labels)


def explore(children: Sequence[Lts], vectors: Sequence[GroundVector], cap: int | None = None, kernel: str | None = None):
    """Run the product exploration; returns ``(states, Lts)``.

    ``states`` is an ``(n, k)`` array of child-state tuples, row ``r`` being
    product state ``r``.
    """
    if not children:
        raise WellFormednessError("a product needs at least one child")
    cap = default_state_cap() if cap is None else cap
    args, radix, space, labels = _prepare(children, vectors)
    kernel = kernel or KERNEL
    if kernel == "compiled" and (_explore_ext is None or space >= 2**63):
        if _explore_ext is not None:
            log.info("product space too large for 64-bit keys; using the Python kernel")
        kernel = "python"
    if kernel == "compiled":
        res = _explore_ext.explore(*args, np.asarray(radix, dtype=np.uint64), cap)
    else:
        res = _explore_py.explore(*args, radix, cap)
    if res is None:
        raise StateExplosion(cap)
    states, src, lab, dst = res
    states = np.asarray(states, dtype=np.int64).reshape(-1, len(children))
    return states, Lts(len(states), src, lab, dst, labels)


def synch_product(children: Sequence[Lts], vectors: Sequence[GroundVector], cap: int | None = None) -> Lts:
    """Reachable part of the synchronised product (strict vector semantics)."""
    return explore(children, vectors, cap)[1]


def hide(lts: Lts, observed: Sequence[LabelPattern | str] | None) -> Lts:
    """Rename every label outside ``observed`` to the internal action."""
    if observed is None:
        return lts
    pats = [p if isinstance(p, LabelPattern) else LabelPattern(p) for p in observed]
    table: dict[str, int] = {}
    remap = []
    for l in lts.labels:
        new = l if l == TAU_LABEL or matches_any(l, pats) else TAU_LABEL
        remap.append(table.setdefault(new, len(table)))
    remap_arr = np.asarray(remap, dtype=np.int64)
    lab = remap_arr[lts.lab] if len(lts.lab) else lts.lab
    return Lts(lts.num_states, lts.src, lab, lts.dst, list(table))


# --------------------------------------------------------------------------
# hierarchies


@dataclass
class LevelStats:
    name: str
    states: int
    transitions: int
    min_states: int
    min_transitions: int
    seconds: float


def _minimizer(mode: str | None) -> Callable[[Lts], Lts] | None:
    if mode in (None, "none"):
        return None
    from .. import reduce

    if mode == "strong":
        return reduce.minimize_strong
    if mode == "branching":
        return reduce.minimize_branching
    raise ValueError(f"unknown minimization mode {mode!r}")


def compose_hierarchy(
    node: Node,
    minimize: str | None = None,
    cap: int | None = None,
    stats: list[LevelStats] | None = None,
) -> Lts:
    """Bottom-up product, hide, and optional minimization at every level.

    Shared subtrees are composed once.  When ``stats`` is a list, one entry
    per composed level is appended to it.
    """
    mini = _minimizer(minimize)
    memo: dict[int, Lts] = {}

    def go(n: Node) -> Lts:
        if id(n) in memo:
            return memo[id(n)]
        if isinstance(n, Leaf):
            out = mini(n.lts) if mini else n.lts
        else:
            kids = [go(c) for c in n.children]
            t0 = time.perf_counter()
            raw = hide(synch_product(kids, n.vectors, cap), n.observed)
            out = mini(raw) if mini else raw
            if stats is not None:
                stats.append(
                    LevelStats(n.name, raw.num_states, raw.num_transitions, out.num_states, out.num_transitions,
                               time.perf_counter() - t0)
                )
        memo[id(n)] = out
        return out

    return go(node)


def flatten(node: Node) -> Composition:
    """Equivalent one-level composition whose children are all leaves.

    A parent cell naming label ``a`` for a sub-composition is replaced by
    every child vector whose label, after the child's own hiding, is ``a``.
    """
    if isinstance(node, Leaf):
        return Composition(node.name, [node], [], None, [node.name])
    parts = []
    for c in node.children:
        if isinstance(c, Leaf):
            parts.append(None)
        else:
            parts.append(flatten(c))
    leaves: list[Leaf] = []
    names: list[str] = []
    widths = []
    for slot, c, sub in zip(node.slot_names or [c.name for c in node.children], node.children, parts):
        if sub is None:
            leaves.append(c)
            names.append(slot)
            widths.append(1)
        else:
            leaves.extend(sub.children)
            names.extend(f"{slot}.{s}" for s in sub.slot_names)
            widths.append(len(sub.children))

    by_label: list[dict[str, list[tuple]] | None] = []
    for c, sub in zip(node.children, parts):
        if sub is None:
            by_label.append(None)
            continue
        table: dict[str, list[tuple]] = {}
        obs = c.observed
        for gv in sub.vectors:
            l = gv.label
            if obs is not None and l != TAU_LABEL and not matches_any(l, obs):
                l = TAU_LABEL
            table.setdefault(l, []).append(gv.cells)
        by_label.append(table)

    vectors: list[GroundVector] = []
    seen = set()
    for gv in node.vectors:
        options = []
        for cell, width, table in zip(gv.cells, widths, by_label):
            if cell is None:
                options.append([(None,) * width])
            elif table is None:
                options.append([(cell,)])
            else:
                options.append(table.get(cell, []))
        for combo in itertools.product(*options):
            flat = GroundVector(gv.label, tuple(x for part in combo for x in part))
            if flat not in seen:
                seen.add(flat)
                vectors.append(flat)
    return Composition(node.name, leaves, vectors, node.observed, names)


def compose_flat(node: Node, cap: int | None = None) -> Lts:
    """Single product over all leaves, hidden to the root's sort."""
    if isinstance(node, Leaf):
        return node.lts
    flat = flatten(node)
    return hide(synch_product([l.lts for l in flat.children], flat.vectors, cap), flat.observed)
