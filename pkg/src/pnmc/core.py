"""Domain types for parameterized networks of labelled transition systems.

Everything here is immutable once built.  Values are plain Python objects:
``int`` for range domains, ``bool`` for the boolean domain and ``str`` for
enumeration literals; array variables hold tuples.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Mapping, Sequence, Union

import numpy as np

TAU_LABEL = "i"


class ModelError(Exception):
    """Base class for every modelling error raised by the toolkit."""


class UnboundVariable(ModelError):
    def __init__(self, name: str):
        super().__init__(f"unbound variable {name!r}")
        self.name = name


class RangeViolation(ModelError):
    pass


class WellFormednessError(ModelError):
    pass


class SortError(ModelError):
    pass


# --------------------------------------------------------------------------
# data domains


@dataclass(frozen=True)
class DataDomain:
    """A finite, non-empty set of values.

    ``kind`` is one of ``"range"``, ``"enum"`` or ``"bool"``.
    """

    name: str
    kind: str
    lo: int = 0
    hi: int = 0
    literals: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind == "range":
            if self.lo > self.hi:
                raise WellFormednessError(f"domain {self.name}: empty range {self.lo}..{self.hi}")
        elif self.kind == "enum":
            if not self.literals:
                raise WellFormednessError(f"domain {self.name}: empty enumeration")
            if len(set(self.literals)) != len(self.literals):
                raise WellFormednessError(f"domain {self.name}: duplicate literal")
        elif self.kind != "bool":
            raise WellFormednessError(f"unknown domain kind {self.kind!r}")

    @classmethod
    def range(cls, lo: int, hi: int, name: str | None = None) -> "DataDomain":
        return cls(name or f"{lo}..{hi}", "range", lo=lo, hi=hi)

    @classmethod
    def enum(cls, name: str, literals: Iterable[str]) -> "DataDomain":
        return cls(name, "enum", literals=tuple(literals))

    @classmethod
    def boolean(cls) -> "DataDomain":
        return cls("bool", "bool")

    def values(self) -> tuple:
        if self.kind == "range":
            return tuple(range(self.lo, self.hi + 1))
        if self.kind == "enum":
            return self.literals
        return (False, True)

    @property
    def default(self):
        return self.values()[0]

    def __len__(self) -> int:
        return len(self.values())

    def __contains__(self, value) -> bool:
        if self.kind == "range":
            return type(value) is int and self.lo <= value <= self.hi
        if self.kind == "enum":
            return isinstance(value, str) and value in self.literals
        return type(value) is bool


BOOL = DataDomain.boolean()


@dataclass(frozen=True)
class IndexRange:
    """A range whose bounds are expressions over parameters, e.g. ``0..G-1``."""

    lo: "Expr"
    hi: "Expr"


DomainRef = Union[DataDomain, IndexRange]


def resolve_domain(ref: DomainRef, env: Mapping[str, Any]) -> DataDomain:
    if isinstance(ref, DataDomain):
        return ref
    lo = eval_expr(ref.lo, env)
    hi = eval_expr(ref.hi, env)
    if type(lo) is not int or type(hi) is not int:
        raise WellFormednessError("range bounds must be integers")
    if lo > hi:
        raise RangeViolation(f"empty range {lo}..{hi}")
    return DataDomain.range(lo, hi)


# --------------------------------------------------------------------------
# expressions


class Expr:
    __slots__ = ()


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class Lit(Expr):
    value: Any


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Not(Expr):
    operand: Expr


@dataclass(frozen=True)
class Index(Expr):
    array: str
    index: Expr


ARITH_OPS = ("+", "-")
COMPARE_OPS = ("=", "!=", "<", "<=", ">", ">=")
BOOL_OPS = ("and", "or")


def free_vars(e: Expr | None) -> set[str]:
    if e is None or isinstance(e, Lit):
        return set()
    if isinstance(e, Var):
        return {e.name}
    if isinstance(e, BinOp):
        return free_vars(e.left) | free_vars(e.right)
    if isinstance(e, Not):
        return free_vars(e.operand)
    if isinstance(e, Index):
        return {e.array} | free_vars(e.index)
    raise TypeError(f"not an expression: {e!r}")


def substitute(e: Expr, values: Mapping[str, Any]) -> Expr:
    """Replace variables bound in ``values`` by literals."""
    if isinstance(e, Var):
        return Lit(values[e.name]) if e.name in values else e
    if isinstance(e, BinOp):
        return BinOp(e.op, substitute(e.left, values), substitute(e.right, values))
    if isinstance(e, Not):
        return Not(substitute(e.operand, values))
    if isinstance(e, Index):
        return Index(e.array, substitute(e.index, values))
    return e


def _static_domain(e: Expr, domains: Mapping[str, DataDomain]) -> DataDomain | None:
    # domain an arithmetic result must stay inside
    if isinstance(e, Var):
        return domains.get(e.name)
    if isinstance(e, Index):
        return domains.get(e.array)
    if isinstance(e, BinOp) and e.op in ARITH_OPS:
        a = _static_domain(e.left, domains)
        b = _static_domain(e.right, domains)
        ranges = [d for d in (a, b) if d is not None and d.kind == "range"]
        if not ranges:
            return None
        return DataDomain.range(min(d.lo for d in ranges), max(d.hi for d in ranges))
    return None


def compile_expr(
    e: Expr, domains: Mapping[str, DataDomain] | None = None
) -> Callable[[Mapping[str, Any]], Any]:
    """Turn ``e`` into a closure over a valuation.

    ``domains`` maps variable names (array names map to their element domain)
    to declared domains; arithmetic results are checked against them.
    """
    domains = domains or {}

    def go(e: Expr):
        if isinstance(e, Lit):
            v = e.value
            return lambda env: v
        if isinstance(e, Var):
            name = e.name

            def var(env):
                try:
                    return env[name]
                except KeyError:
                    raise UnboundVariable(name) from None

            return var
        if isinstance(e, Not):
            f = go(e.operand)

            def neg(env):
                v = f(env)
                if type(v) is not bool:
                    raise WellFormednessError(f"'not' applied to non-boolean {v!r}")
                return not v

            return neg
        if isinstance(e, Index):
            name = e.array
            fi = go(e.index)

            def read(env):
                try:
                    arr = env[name]
                except KeyError:
                    raise UnboundVariable(name) from None
                i = fi(env)
                if type(i) is not int or not 0 <= i < len(arr):
                    raise RangeViolation(f"index {i!r} out of bounds for {name}[{len(arr)}]")
                return arr[i]

            return read
        if isinstance(e, BinOp):
            fl, fr = go(e.left), go(e.right)
            op = e.op
            if op in ARITH_OPS:
                dom = _static_domain(e, domains)
                sign = 1 if op == "+" else -1

                def arith(env):
                    a, b = fl(env), fr(env)
                    if type(a) is not int or type(b) is not int:
                        raise WellFormednessError(f"arithmetic on non-integers {a!r} {op} {b!r}")
                    r = a + sign * b
                    if dom is not None and r not in dom:
                        raise RangeViolation(f"{a} {op} {b} = {r} leaves {dom.name}")
                    return r

                return arith
            if op == "and":
                return lambda env: _as_bool(fl(env)) and _as_bool(fr(env))
            if op == "or":
                return lambda env: _as_bool(fl(env)) or _as_bool(fr(env))
            if op == "=":
                return lambda env: _same(fl(env), fr(env))
            if op == "!=":
                return lambda env: not _same(fl(env), fr(env))
            cmp = {
                "<": lambda a, b: a < b,
                "<=": lambda a, b: a <= b,
                ">": lambda a, b: a > b,
                ">=": lambda a, b: a >= b,
            }[op]

            def compare(env):
                a, b = fl(env), fr(env)
                if type(a) is not int or type(b) is not int:
                    raise WellFormednessError(f"ordering on non-integers {a!r} {op} {b!r}")
                return cmp(a, b)

            return compare
        raise TypeError(f"not an expression: {e!r}")

    return go(e)


def _as_bool(v) -> bool:
    if type(v) is not bool:
        raise WellFormednessError(f"expected a boolean, got {v!r}")
    return v


def _same(a, b) -> bool:
    # keep True distinct from 1
    return type(a) is type(b) and a == b


def eval_expr(e: Expr, env: Mapping[str, Any], domains: Mapping[str, DataDomain] | None = None):
    return compile_expr(e, domains)(env)


def format_value(v) -> str:
    if type(v) is bool:
        return "true" if v else "false"
    return str(v)


# --------------------------------------------------------------------------
# actions and labels


class Direction(enum.Enum):
    EMIT = "!"
    RECEIVE = "?"
    INTERNAL = ""
    TAU = "tau"


@dataclass(frozen=True)
class Action:
    direction: Direction
    label: str = ""
    args: tuple[Expr, ...] = ()
    family: str | None = None
    index: Expr | None = None

    def __post_init__(self):
        if self.direction is Direction.TAU and (self.args or self.family or self.label):
            raise WellFormednessError("tau carries no target, label or arguments")
        if (self.family is None) != (self.index is None):
            raise WellFormednessError("a target needs both a family and an index")

    @classmethod
    def tau(cls) -> "Action":
        return cls(Direction.TAU)

    @property
    def is_tau(self) -> bool:
        return self.direction is Direction.TAU

    def free_vars(self) -> set[str]:
        out = free_vars(self.index)
        for a in self.args:
            out |= free_vars(a)
        return out


def ground_label(action: Action, env: Mapping[str, Any], domains=None) -> str:
    """Canonical text of ``action`` under ``env``, e.g. ``!Participant[1].Q_Suggest(D1)``."""
    if action.is_tau:
        return TAU_LABEL
    parts = [action.direction.value]
    if action.family is not None:
        parts.append(f"{action.family}[{format_value(eval_expr(action.index, env, domains))}].")
    parts.append(action.label)
    parts.append("(" + ",".join(format_value(eval_expr(a, env, domains)) for a in action.args) + ")")
    return "".join(parts)


@dataclass(frozen=True)
class GroundLabel:
    direction: str
    label: str
    args: tuple[str, ...] = ()
    family: str | None = None
    index: str | None = None

    def __str__(self) -> str:
        if self.direction == "tau":
            return TAU_LABEL
        target = f"{self.family}[{self.index}]." if self.family is not None else ""
        return f"{self.direction}{target}{self.label}({','.join(self.args)})"


_IDENT = r"[A-Za-z_][A-Za-z0-9_]*"
_VALUE = r"-?[A-Za-z0-9_]+"
_LABEL_RE = re.compile(
    rf"^(?P<dir>[!?]?)(?:(?P<fam>{_IDENT})\[(?P<idx>{_VALUE})\]\.)?(?P<name>{_IDENT})"
    rf"\((?P<args>(?:{_VALUE}(?:,{_VALUE})*)?)\)$"
)


def parse_label(text: str) -> GroundLabel:
    if text == TAU_LABEL:
        return GroundLabel("tau", "")
    m = _LABEL_RE.match(text)
    if not m:
        raise ValueError(f"not a ground label: {text!r}")
    args = tuple(m["args"].split(",")) if m["args"] else ()
    return GroundLabel(m["dir"], m["name"], args, m["fam"], m["idx"])


class LabelPattern:
    """Ground-label pattern with ``*`` wildcards.

    ``*`` may stand for one argument or for a family index; a bare name such
    as ``Error`` matches any argument list; ``*`` alone matches every label.
    """

    __slots__ = ("text", "_re", "wildcards")

    def __init__(self, text: str):
        self.text = text.strip()
        if self.text == "*":
            self._re = re.compile(r".*")
            self.wildcards = 0
            return
        if self.text == TAU_LABEL:
            self._re = re.compile(re.escape(TAU_LABEL) + "$")
            self.wildcards = 0
            return
        m = re.match(
            rf"^(?P<dir>[!?]?)(?:(?P<fam>{_IDENT})\[(?P<idx>\*|{_VALUE})\]\.)?(?P<name>{_IDENT})"
            rf"(?:\((?P<args>(?:(?:\*|{_VALUE})(?:,(?:\*|{_VALUE}))*)?)\))?$",
            self.text,
        )
        if not m:
            raise ValueError(f"bad label pattern: {text!r}")
        rx = [re.escape(m["dir"])]
        n = 0
        if m["fam"]:
            idx = m["idx"]
            rx.append(re.escape(m["fam"]) + r"\[")
            if idx == "*":
                rx.append(r"[^\]]+")
                n += 1
            else:
                rx.append(re.escape(idx))
            rx.append(r"\]\.")
        rx.append(re.escape(m["name"]))
        if m["args"] is None:
            rx.append(r"(?:\(.*\))?")
        else:
            cells = m["args"].split(",") if m["args"] else []
            parts = []
            for c in cells:
                if c == "*":
                    parts.append(r"[^,()]+")
                    n += 1
                else:
                    parts.append(re.escape(c))
            rx.append(r"\(" + ",".join(parts) + r"\)")
        self._re = re.compile("".join(rx) + "$")
        self.wildcards = n

    def matches(self, label: str) -> bool:
        return self._re.match(label) is not None

    def __repr__(self) -> str:
        return f"LabelPattern({self.text!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, LabelPattern) and other.text == self.text

    def __hash__(self) -> int:
        return hash(self.text)


def matches_any(label: str, patterns: Sequence[LabelPattern]) -> bool:
    return any(p.matches(label) for p in patterns)


# --------------------------------------------------------------------------
# parameterized LTS


@dataclass(frozen=True)
class Param:
    name: str
    domain: DomainRef


@dataclass(frozen=True)
class VarDecl:
    name: str
    domain: DomainRef
    size: Expr | None = None  # arrays only

    @property
    def is_array(self) -> bool:
        return self.size is not None


@dataclass(frozen=True)
class Assign:
    target: str
    value: Expr
    index: Expr | None = None


@dataclass(frozen=True)
class Transition:
    src: str
    dst: str
    action: Action
    guard: Expr | None = None
    assigns: tuple[Assign, ...] = ()
    inputs: tuple[Param, ...] = ()  # variables bound by the action (receptions)


@dataclass(frozen=True)
class PLts:
    name: str
    params: tuple[Param, ...]
    vars: tuple[VarDecl, ...]
    states: tuple[str, ...]
    initial: str
    transitions: tuple[Transition, ...]
    init_values: tuple[Assign, ...] = ()

    def __post_init__(self):
        states = set(self.states)
        if len(states) != len(self.states):
            raise WellFormednessError(f"{self.name}: duplicate state")
        if self.initial not in states:
            raise WellFormednessError(f"{self.name}: initial state {self.initial!r} undeclared")
        names = [p.name for p in self.params] + [v.name for v in self.vars]
        if len(set(names)) != len(names):
            raise WellFormednessError(f"{self.name}: duplicate parameter or variable name")
        scope = set(names)
        var_names = {v.name for v in self.vars}
        for a in self.init_values:
            if a.target not in var_names:
                raise WellFormednessError(f"{self.name}: init assigns undeclared {a.target!r}")
            _check_fv(self.name, free_vars(a.value), {p.name for p in self.params})
        for t in self.transitions:
            if t.src not in states or t.dst not in states:
                raise WellFormednessError(f"{self.name}: transition {t.src}->{t.dst} uses an undeclared state")
            local = scope | {p.name for p in t.inputs}
            _check_fv(self.name, t.action.free_vars(), local)
            _check_fv(self.name, free_vars(t.guard), local)
            for a in t.assigns:
                if a.target not in var_names:
                    raise WellFormednessError(f"{self.name}: assignment to undeclared {a.target!r}")
                _check_fv(self.name, free_vars(a.value) | free_vars(a.index), local)

    @property
    def param_names(self) -> tuple[str, ...]:
        return tuple(p.name for p in self.params)


def _check_fv(owner: str, used: set[str], scope: set[str]) -> None:
    missing = used - scope
    if missing:
        raise WellFormednessError(f"{owner}: undeclared variable(s) {sorted(missing)}")


def sort_of(p: PLts, inst: Mapping[str, Any]) -> set[str]:
    """Every ground label ``p`` may exhibit under ``inst``.

    Syntactic over-approximation: each transition's action is grounded under
    every valuation of the variables it mentions, guards ignored.
    """
    env = {name: inst[name] for name in p.param_names}
    domains = _var_domains(p, env)
    sizes = {v.name: eval_expr(v.size, env) for v in p.vars if v.is_array}
    out: set[str] = set()
    for t in p.transitions:
        local = dict(domains)
        for b in t.inputs:
            local[b.name] = resolve_domain(b.domain, env)
        names = sorted(t.action.free_vars() - set(env))
        choices = []
        for n in names:
            d = local[n].values()
            if n in sizes:
                d = tuple(itertools.product(d, repeat=sizes[n]))
            choices.append(d)
        for combo in itertools.product(*choices):
            full = dict(env)
            full.update(zip(names, combo))
            try:
                out.add(ground_label(t.action, full, local))
            except (RangeViolation, WellFormednessError):
                continue
    return out


def _var_domains(p: PLts, env: Mapping[str, Any]) -> dict[str, DataDomain]:
    doms = {prm.name: resolve_domain(prm.domain, env) for prm in p.params}
    for v in p.vars:
        doms[v.name] = resolve_domain(v.domain, env)
    return doms


# --------------------------------------------------------------------------
# pNets


@dataclass(frozen=True)
class Hole:
    name: str
    sort: tuple[str, ...]
    index: DomainRef | None = None

    @property
    def patterns(self) -> tuple[LabelPattern, ...]:
        return tuple(LabelPattern(s) for s in self.sort)


@dataclass(frozen=True)
class Single:
    hole: str
    action: Action
    index: Expr | None = None


@dataclass(frozen=True)
class Broadcast:
    hole: str
    var: str
    range: DomainRef
    action: Action


@dataclass(frozen=True)
class Collect:
    hole: str
    var: str
    range: DomainRef
    action: Action


@dataclass(frozen=True)
class Idle:
    hole: str


VectorEntry = Union[Single, Broadcast, Collect, Idle]


@dataclass(frozen=True)
class SyncVector:
    global_action: Action
    entries: tuple[VectorEntry, ...]
    binders: tuple[Param, ...] = ()

    def __post_init__(self):
        holes = [e.hole for e in self.entries]
        if len(set(holes)) != len(holes):
            raise WellFormednessError(f"vector {self.global_action.label or 'tau'}: two entries for one hole")


@dataclass(frozen=True)
class PNet:
    name: str
    params: tuple[Param, ...]
    global_sort: tuple[str, ...]
    holes: tuple[Hole, ...]
    vectors: tuple[SyncVector, ...]

    def __post_init__(self):
        names = [h.name for h in self.holes]
        if len(set(names)) != len(names):
            raise WellFormednessError(f"net {self.name}: duplicate hole")
        by_name = {h.name: h for h in self.holes}
        params = {p.name for p in self.params}
        for v in self.vectors:
            bound = params | {b.name for b in v.binders}
            for e in v.entries:
                hole = by_name.get(e.hole)
                if hole is None:
                    raise WellFormednessError(f"net {self.name}: vector uses unknown hole {e.hole!r}")
                if isinstance(e, Idle):
                    continue
                if isinstance(e, (Broadcast, Collect)):
                    if hole.index is None:
                        raise WellFormednessError(f"net {self.name}: BC/CO over unindexed hole {e.hole}")
                    bound = bound | {e.var}
                _check_sort_shape(self.name, hole, e.action)
            scope = set(bound)
            for e in v.entries:
                if isinstance(e, Idle):
                    continue
                local = scope
                _check_fv(f"net {self.name}", e.action.free_vars(), local)
                if isinstance(e, Single):
                    if (e.index is None) != (by_name[e.hole].index is None):
                        raise WellFormednessError(f"net {self.name}: index mismatch on hole {e.hole}")
                    _check_fv(f"net {self.name}", free_vars(e.index), local)
            _check_fv(f"net {self.name}", v.global_action.free_vars(), scope)

    @property
    def sort_patterns(self) -> tuple[LabelPattern, ...]:
        return tuple(LabelPattern(s) for s in self.global_sort)

    def hole(self, name: str) -> Hole:
        for h in self.holes:
            if h.name == name:
                return h
        raise KeyError(name)


def symbolic_label(action: Action) -> str:
    """Shape of ``action`` with non-literal arguments replaced by ``*``."""
    if action.is_tau:
        return TAU_LABEL

    def cell(e):
        return format_value(e.value) if isinstance(e, Lit) else "*"

    target = f"{action.family}[{cell(action.index)}]." if action.family else ""
    return f"{action.direction.value}{target}{action.label}({','.join(cell(a) for a in action.args)})"


def _pattern_covers(pattern: str, shape: str) -> bool:
    # both are patterns; a '*' in the shape must meet a '*' in the pattern
    if pattern == "*":
        return True
    ps, ss = _split_pattern(pattern), _split_pattern(shape)
    if ps is None or ss is None:
        return False
    (pd, pf, pi, pn, pa), (sd, sf, si, sn, sa) = ps, ss
    if (pd, pf, pn) != (sd, sf, sn):
        return False
    if pf is not None and pi != "*" and pi != si:
        return False
    if pa is None:
        return True
    if sa is None or len(pa) != len(sa):
        return False
    return all(p == "*" or p == s for p, s in zip(pa, sa))


def _split_pattern(text: str):
    m = re.match(
        rf"^(?P<dir>[!?]?)(?:(?P<fam>{_IDENT})\[(?P<idx>[^\]]+)\]\.)?(?P<name>{_IDENT})(?:\((?P<args>[^)]*)\))?$",
        text,
    )
    if not m:
        return None
    args = None if m["args"] is None else (tuple(m["args"].split(",")) if m["args"] else ())
    return m["dir"], m["fam"], m["idx"], m["name"], args


def _check_sort_shape(net: str, hole: Hole, action: Action) -> None:
    if action.is_tau:
        return
    shape = symbolic_label(action)
    if not any(_pattern_covers(p, shape) for p in hole.sort):
        raise SortError(f"net {net}: action {shape} is outside the sort of hole {hole.name}")


# --------------------------------------------------------------------------
# ground LTS


class Lts:
    """Finite ground LTS with dense states ``0..n-1``; state 0 is initial.

    Transitions are stored column-wise (``src``, ``lab``, ``dst``), labels
    are interned in ``labels``.
    """

    __slots__ = ("num_states", "src", "lab", "dst", "labels", "_out")

    def __init__(self, num_states: int, src, lab, dst, labels: Sequence[str]):
        self.num_states = max(int(num_states), 1)
        self.src = _frozen_array(src)
        self.lab = _frozen_array(lab)
        self.dst = _frozen_array(dst)
        self.labels = tuple(labels)
        self._out = None
        if not (len(self.src) == len(self.lab) == len(self.dst)):
            raise WellFormednessError("transition columns differ in length")
        if len(self.src) and (
            self.src.max() >= self.num_states
            or self.dst.max() >= self.num_states
            or self.src.min() < 0
            or self.dst.min() < 0
        ):
            raise WellFormednessError("transition endpoint out of range")
        if len(self.lab) and (self.lab.min() < 0 or self.lab.max() >= len(self.labels)):
            raise WellFormednessError("label index out of range")

    @classmethod
    def from_triples(cls, num_states: int, triples: Iterable[tuple[int, str, int]]) -> "Lts":
        table: dict[str, int] = {}
        src, lab, dst = [], [], []
        for s, l, d in triples:
            src.append(s)
            lab.append(table.setdefault(l, len(table)))
            dst.append(d)
        return cls(num_states, src, lab, dst, list(table))

    @property
    def num_transitions(self) -> int:
        return len(self.src)

    def triples(self) -> Iterator[tuple[int, str, int]]:
        labels = self.labels
        for s, l, d in zip(self.src.tolist(), self.lab.tolist(), self.dst.tolist()):
            yield s, labels[l], d

    def out(self) -> list[list[tuple[int, int, int]]]:
        """Per-state outgoing ``(transition index, label id, dst)``, in index order."""
        if self._out is None:
            out: list[list] = [[] for _ in range(self.num_states)]
            for k, (s, l, d) in enumerate(zip(self.src.tolist(), self.lab.tolist(), self.dst.tolist())):
                out[s].append((k, l, d))
            self._out = out
        return self._out

    def label_set(self) -> set[str]:
        used = set(np.unique(self.lab).tolist()) if len(self.lab) else set()
        return {self.labels[i] for i in used}

    def __eq__(self, other) -> bool:
        if not isinstance(other, Lts):
            return NotImplemented
        return self.num_states == other.num_states and list(self.triples()) == list(other.triples())

    def __repr__(self) -> str:
        return f"Lts(states={self.num_states}, transitions={self.num_transitions})"


def _frozen_array(x) -> np.ndarray:
    a = np.array(x, dtype=np.int64).reshape(-1)
    a.setflags(write=False)
    return a
