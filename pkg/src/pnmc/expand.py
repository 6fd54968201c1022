"""Instantiation of parameterized objects into ground ones."""

from __future__ import annotations

import itertools
import os
from collections import deque
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Mapping, Sequence

from .core import (
    Action,
    Broadcast,
    Collect,
    DataDomain,
    Idle,
    LabelPattern,
    Lts,
    ModelError,
    Param,
    PLts,
    PNet,
    RangeViolation,
    Single,
    SortError,
    SyncVector,
    TAU_LABEL,
    WellFormednessError,
    compile_expr,
    eval_expr,
    format_value,
    ground_label,
    matches_any,
    resolve_domain,
    sort_of,
)

if TYPE_CHECKING:
    from .dsl import ModelFile
    from .product import Composition

DEFAULT_STATE_CAP = 10**7


class InstantiationError(ModelError):
    pass


class StateExplosion(ModelError):
    def __init__(self, limit: int):
        super().__init__(f"state space exceeds the cap of {limit} states")
        self.limit = limit


class EmptyRange(ModelError):
    pass


class MixedVector(ModelError):
    pass


def default_state_cap() -> int:
    raw = os.environ.get("PNMC_STATE_CAP")
    return int(raw) if raw else DEFAULT_STATE_CAP


def bind_params(params: Sequence[Param], inst: Mapping[str, Any], owner: str) -> dict[str, Any]:
    """Pick ``params`` out of ``inst``, checking each value against its domain."""
    env: dict[str, Any] = {}
    for p in params:
        if p.name not in inst:
            raise InstantiationError(f"{owner}: no value for parameter {p.name}")
        try:
            dom = resolve_domain(p.domain, env)
        except (ModelError, KeyError) as exc:
            raise InstantiationError(f"{owner}: cannot resolve the domain of {p.name}: {exc}") from None
        if inst[p.name] not in dom:
            raise InstantiationError(f"{owner}: {p.name}={format_value(inst[p.name])} is outside {dom.name}")
        env[p.name] = inst[p.name]
    return env


# --------------------------------------------------------------------------
# pLTS -> LTS


def instantiate_plts(p: PLts, inst: Mapping[str, Any], cap: int | None = None) -> Lts:
    """Ground LTS of the configurations reachable from ``p``'s initial one."""
    return explore_plts(p, inst, cap)[0]


def explore_plts(p: PLts, inst: Mapping[str, Any], cap: int | None = None):
    """Like :func:`instantiate_plts`, also returning each state's configuration.

    Configuration ``k`` is ``(control state name, {variable: value})``;
    arrays are tuples.
    """
    cap = default_state_cap() if cap is None else cap
    params = bind_params(p.params, inst, p.name)
    doms: dict[str, DataDomain] = {prm.name: resolve_domain(prm.domain, params) for prm in p.params}
    var_names = [v.name for v in p.vars]
    slot = {n: k for k, n in enumerate(var_names)}
    sizes: dict[str, int] = {}
    for v in p.vars:
        doms[v.name] = resolve_domain(v.domain, params)
        if v.is_array:
            n = eval_expr(v.size, params)
            if type(n) is not int or n < 1:
                raise InstantiationError(f"{p.name}: array {v.name} needs a positive size, got {n!r}")
            sizes[v.name] = n

    values = []
    for v in p.vars:
        d = doms[v.name].default
        values.append(tuple([d] * sizes[v.name]) if v.is_array else d)
    init_env = dict(params)
    init_env.update(zip(var_names, values))
    if p.init_values:
        init = [
            (slot[a.target], compile_expr(a.value, doms), compile_expr(a.index, doms) if a.index is not None else None)
            for a in p.init_values
        ]
        values = _update(p, init, init_env, tuple(values), var_names, doms, sizes)
    values = tuple(values)

    state_idx = {s: k for k, s in enumerate(p.states)}
    by_src: list[list] = [[] for _ in p.states]
    for t in p.transitions:
        local = dict(doms)
        inputs = []
        for b in t.inputs:
            d = resolve_domain(b.domain, params)
            local[b.name] = d
            inputs.append((b.name, d.values()))
        guard = compile_expr(t.guard, local) if t.guard is not None else None
        label = _compile_action(t.action, local)
        assigns = [
            (slot[a.target], compile_expr(a.value, local), compile_expr(a.index, local) if a.index is not None else None)
            for a in t.assigns
        ]
        by_src[state_idx[t.src]].append((inputs, guard, label, assigns, state_idx[t.dst]))

    start = (state_idx[p.initial], tuple(values))
    index = {start: 0}
    queue = deque([start])
    triples: list[tuple[int, str, int]] = []
    seen_edges: set[tuple[int, str, int]] = set()
    while queue:
        conf = queue.popleft()
        src_id = index[conf]
        ctrl, vals = conf
        env = dict(params)
        env.update(zip(var_names, vals))
        for inputs, guard, label, assigns, dst in by_src[ctrl]:
            names = [n for n, _ in inputs]
            for combo in itertools.product(*(vs for _, vs in inputs)):
                local_env = env
                if names:
                    local_env = dict(env)
                    local_env.update(zip(names, combo))
                if guard is not None and guard(local_env) is not True:
                    continue
                text = label(local_env)
                new_vals = _update(p, assigns, local_env, vals, var_names, doms, sizes) if assigns else vals
                nxt = (dst, new_vals)
                nid = index.get(nxt)
                if nid is None:
                    if len(index) >= cap:
                        raise StateExplosion(cap)
                    nid = index[nxt] = len(index)
                    queue.append(nxt)
                edge = (src_id, text, nid)
                if edge not in seen_edges:
                    seen_edges.add(edge)
                    triples.append(edge)
    configs = [None] * len(index)
    for (ctrl, vals), k in index.items():
        configs[k] = (p.states[ctrl], dict(zip(var_names, vals)))
    return Lts.from_triples(len(index), triples), configs


def _compile_action(action: Action, domains):
    if action.is_tau:
        return lambda env: TAU_LABEL
    glyph = action.direction.value
    name = action.label
    args = [compile_expr(a, domains) for a in action.args]
    if action.family is not None:
        fam = action.family
        idx = compile_expr(action.index, domains)
        return lambda env: (
            f"{glyph}{fam}[{format_value(idx(env))}].{name}(" + ",".join(format_value(f(env)) for f in args) + ")"
        )
    return lambda env: f"{glyph}{name}(" + ",".join(format_value(f(env)) for f in args) + ")"


def _update(p, assigns, env, vals, var_names, doms, sizes):
    # simultaneous assignment: every right-hand side sees the old valuation
    staged = []
    for k, value, index in assigns:
        v = value(env)
        i = index(env) if index is not None else None
        staged.append((k, v, i))
    out = list(vals)
    for k, v, i in staged:
        name = var_names[k]
        if v not in doms[name]:
            raise RangeViolation(f"{p.name}: {name} := {format_value(v)} leaves {doms[name].name}")
        if i is None:
            if name in sizes:
                raise WellFormednessError(f"{p.name}: whole-array assignment to {name}")
            out[k] = v
        else:
            if name not in sizes:
                raise WellFormednessError(f"{p.name}: {name} is not an array")
            if type(i) is not int or not 0 <= i < sizes[name]:
                raise RangeViolation(f"{p.name}: index {i!r} out of bounds for {name}[{sizes[name]}]")
            cell = list(out[k])
            cell[i] = v
            out[k] = tuple(cell)
    return tuple(out)


# --------------------------------------------------------------------------
# holes and vectors


@dataclass(frozen=True)
class Slot:
    hole: str
    index: Any = None

    def __str__(self) -> str:
        return self.hole if self.index is None else f"{self.hole}[{format_value(self.index)}]"


@dataclass(frozen=True)
class GroundVector:
    label: str
    cells: tuple[str | None, ...]  # None is the idle cell '*'

    def __str__(self) -> str:
        cells = ", ".join("*" if c is None else c for c in self.cells)
        return f"<{self.label}, {cells}>"


def render_vector(gv: GroundVector, slots: Sequence[Slot], qualify: Sequence[str] = (), bare_nullary: bool = False) -> str:
    """Display form naming the member each cell belongs to.

    Cells of slots whose hole is in ``qualify`` are written
    ``?services[0].Q(..)``; other cells keep the child's own label.
    ``bare_nullary`` drops the ``()`` of an argument-free global label.
    """
    label = gv.label[:-2] if bare_nullary and gv.label.endswith("()") else gv.label
    cells = []
    for slot, cell in zip(slots, gv.cells):
        if cell is None:
            cells.append("*")
        elif slot.hole in qualify and cell != TAU_LABEL:
            glyph = cell[0] if cell[0] in "!?" else ""
            cells.append(f"{glyph}{slot}.{cell[len(glyph):]}")
        else:
            cells.append(cell)
    return "<" + ", ".join([label] + cells) + ">"


def hole_domain(net: PNet, hole_name: str, env: Mapping[str, Any]) -> DataDomain | None:
    h = net.hole(hole_name)
    if h.index is None:
        return None
    try:
        return resolve_domain(h.index, env)
    except RangeViolation as exc:
        raise EmptyRange(f"net {net.name}: hole {hole_name} has an empty index domain") from exc


def expand_holes(net: PNet, inst: Mapping[str, Any]) -> list[Slot]:
    """Flat slot list: indexed holes unfold in index order, declaration order kept."""
    env = bind_params(net.params, inst, net.name)
    slots: list[Slot] = []
    for h in net.holes:
        dom = hole_domain(net, h.name, env)
        if dom is None:
            slots.append(Slot(h.name))
        else:
            slots.extend(Slot(h.name, v) for v in dom.values())
    return slots


def _entry_kinds(v: SyncVector) -> tuple[bool, bool]:
    return any(isinstance(e, Broadcast) for e in v.entries), any(isinstance(e, Collect) for e in v.entries)


def expand_vector(v: SyncVector, net: PNet, inst: Mapping[str, Any]) -> list[GroundVector]:
    """All ground vectors denoted by ``v`` under ``inst``, in enumeration order."""
    has_bc, has_co = _entry_kinds(v)
    if has_bc and has_co:
        raise MixedVector(f"net {net.name}: vector {v.global_action.label} mixes BC and CO entries")
    env0 = bind_params(net.params, inst, net.name)
    slots = expand_holes(net, inst)
    position = {(s.hole, s.index): k for k, s in enumerate(slots)}
    patterns = {h.name: h.patterns for h in net.holes}
    domains: dict[str, DataDomain] = {}
    for p in net.params:
        domains[p.name] = resolve_domain(p.domain, env0)

    binder_names, binder_values = [], []
    for b in v.binders:
        d = _resolve_nonempty(b.domain, env0, f"net {net.name}: binder {b.name}")
        domains[b.name] = d
        binder_names.append(b.name)
        binder_values.append(d.values())
    for e in v.entries:
        if isinstance(e, Collect):
            d = _member_range(net, e, env0)
            domains[e.var] = d
            binder_names.append(e.var)
            binder_values.append(d.values())

    bc_ranges = {}
    for e in v.entries:
        if isinstance(e, Broadcast):
            bc_ranges[e.hole] = _member_range(net, e, env0)

    out: list[GroundVector] = []
    seen: set[GroundVector] = set()
    for combo in itertools.product(*binder_values):
        env = dict(env0)
        env.update(zip(binder_names, combo))
        cells: list[str | None] = [None] * len(slots)
        for e in v.entries:
            if isinstance(e, Idle):
                continue
            if isinstance(e, Single):
                idx = eval_expr(e.index, env, domains) if e.index is not None else None
                _place(cells, position, net, e.hole, idx, ground_label(e.action, env, domains), patterns)
            elif isinstance(e, Collect):
                _place(cells, position, net, e.hole, env[e.var], ground_label(e.action, env, domains), patterns)
            else:
                for j in bc_ranges[e.hole].values():
                    local = dict(env)
                    local[e.var] = j
                    _place(cells, position, net, e.hole, j, ground_label(e.action, local, domains), patterns)
        gv = GroundVector(ground_label(v.global_action, env, domains), tuple(cells))
        if gv not in seen:
            seen.add(gv)
            out.append(gv)
    return out


def expand_broadcast(v: SyncVector, net: PNet, inst: Mapping[str, Any]) -> list[GroundVector]:
    if not _entry_kinds(v)[0]:
        raise WellFormednessError("vector has no BC entry")
    return expand_vector(v, net, inst)


def expand_collect(v: SyncVector, net: PNet, inst: Mapping[str, Any]) -> list[GroundVector]:
    if not _entry_kinds(v)[1]:
        raise WellFormednessError("vector has no CO entry")
    return expand_vector(v, net, inst)


def expand_net_vectors(net: PNet, inst: Mapping[str, Any]) -> list[GroundVector]:
    out: list[GroundVector] = []
    seen: set[GroundVector] = set()
    for v in net.vectors:
        for gv in expand_vector(v, net, inst):
            if gv not in seen:
                seen.add(gv)
                out.append(gv)
    return out


def _resolve_nonempty(ref, env, what) -> DataDomain:
    try:
        return resolve_domain(ref, env)
    except RangeViolation as exc:
        raise EmptyRange(f"{what}: empty range") from exc


def _member_range(net: PNet, e, env) -> DataDomain:
    kind = "BC" if isinstance(e, Broadcast) else "CO"
    d = _resolve_nonempty(e.range, env, f"net {net.name}: {kind} over {e.hole}")
    family = hole_domain(net, e.hole, env)
    if any(x not in family for x in d.values()):
        raise RangeViolation(f"net {net.name}: {kind} range {d.name} exceeds the family {e.hole} ({family.name})")
    return d


def _place(cells, position, net, hole, idx, label, patterns):
    key = (hole, idx)
    if key not in position:
        raise RangeViolation(f"net {net.name}: no member {hole}[{format_value(idx)}]")
    if label != TAU_LABEL and not matches_any(label, patterns[hole]):
        raise SortError(f"net {net.name}: {label} is outside the sort of hole {hole}")
    cells[position[key]] = label


# --------------------------------------------------------------------------
# whole models


def visible_labels(net: PNet, vectors: Sequence[GroundVector]) -> set[str]:
    """Labels a net's product can show once hidden to its own sort."""
    pats = net.sort_patterns
    return {gv.label if matches_any(gv.label, pats) else TAU_LABEL for gv in vectors}


def find_root(model: "ModelFile", root: str | None = None) -> PNet:
    nets = {n.name: n for n in model.pnets}
    if root is not None:
        if root not in nets:
            raise InstantiationError(f"no net named {root}")
        return nets[root]
    used = {f.filler for f in model.fills}
    roots = [n for n in model.pnets if n.name not in used]
    if len(roots) != 1:
        raise InstantiationError(f"cannot pick a root net among {[n.name for n in roots]}; use --net")
    return roots[0]


def build_system(
    model: "ModelFile", inst: Mapping[str, Any], root: str | None = None, cap: int | None = None
) -> "Composition":
    """Composition tree for ``root`` with every hole filled and instantiated.

    A filler used by several slots is instantiated once and shared.
    """
    from .product import Composition, Leaf

    plts = {p.name: p for p in model.plts}
    nets = {n.name: n for n in model.pnets}
    fills = {(f.net, f.hole): f.filler for f in model.fills}
    cache: dict[str, Any] = {}

    def build_filler(name: str):
        if name in cache:
            return cache[name]
        if name in plts:
            node = Leaf(name, instantiate_plts(plts[name], inst, cap))
        else:
            node = build_net(nets[name])
        cache[name] = node
        return node

    def build_net(net: PNet) -> Composition:
        slots = expand_holes(net, inst)
        vectors = expand_net_vectors(net, inst)
        children = []
        for h in net.holes:
            filler = fills.get((net.name, h.name))
            if filler is None:
                raise InstantiationError(f"net {net.name}: hole {h.name} is not filled")
            _check_fill(net, h, filler, plts, nets, inst)
        for s in slots:
            children.append(build_filler(fills[(net.name, s.hole)]))
        return Composition(net.name, children, vectors, net.sort_patterns, [str(s) for s in slots])

    return build_net(find_root(model, root))


def _check_fill(net: PNet, hole, filler: str, plts, nets, inst) -> None:
    if filler in plts:
        labels = sort_of(plts[filler], bind_params(plts[filler].params, inst, filler))
    elif filler in nets:
        labels = visible_labels(nets[filler], expand_net_vectors(nets[filler], inst))
    else:
        raise InstantiationError(f"net {net.name}: filler {filler} of hole {hole.name} is undefined")
    pats: Sequence[LabelPattern] = hole.patterns
    outside = sorted(l for l in labels if l != TAU_LABEL and not matches_any(l, pats))
    if outside:
        raise SortError(f"net {net.name}: filler {filler} of hole {hole.name} exceeds its sort: {', '.join(outside)}")
