"""Generators for group-communication building blocks and the meeting scheduler.

The meeting model has four levels::

    System          = Initiator || ParticipantGroup
    Initiator       = InitBody || ProxySuggest || ProxyValidate
    ParticipantGroup = Participant[0..G-1]
    Participant     = Queue || ParticipantBody || MethodSuggest || MethodValidate || MethodCancel

Requests travel by broadcast vectors, replies by collection vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .core import (
    BOOL,
    Action,
    Assign,
    BinOp,
    Broadcast,
    Collect,
    DataDomain,
    Direction,
    DomainRef,
    Expr,
    Hole,
    Index,
    IndexRange,
    Lit,
    Not,
    Param,
    PLts,
    PNet,
    Single,
    SyncVector,
    Transition,
    Var,
    VarDecl,
)
from .dsl import Fill, ModelFile, make_range

PRIMITIVES = ("waitAll", "waitN", "waitAndGetTheNth")


# small constructors keep the generators readable
def _v(name: str) -> Var:
    return Var(name)


def _l(value) -> Lit:
    return Lit(value)


def _op(op: str, a: Expr, b: Expr) -> BinOp:
    return BinOp(op, a, b)


def emit(label: str, *args: Expr) -> Action:
    return Action(Direction.EMIT, label, tuple(args))


def receive(label: str, *args: Expr) -> Action:
    return Action(Direction.RECEIVE, label, tuple(args))


def internal(label: str, *args: Expr) -> Action:
    return Action(Direction.INTERNAL, label, tuple(args))


def _index_range(size: Expr) -> DomainRef:
    """``0 .. size-1``, concrete when ``size`` is a literal."""
    if isinstance(size, Lit):
        return make_range(Lit(0), Lit(size.value - 1))
    return IndexRange(Lit(0), _op("-", size, Lit(1)))


def _bound(size: int | str) -> Expr:
    return Lit(size) if isinstance(size, int) else Var(size)


# --------------------------------------------------------------------------
# queue


@dataclass(frozen=True)
class RequestKind:
    label: str  # Suggest gives ?Q_Suggest(..) and !Serve_Suggest(..)
    args: tuple[DataDomain, ...] = ()


@dataclass(frozen=True)
class QueueSpec:
    """Bounded FIFO of requests.

    ``capacity`` is a literal bound or the name of a parameter whose
    domain is ``1..max_capacity``; the buffer array is ``max_capacity`` long.
    """

    capacity: int | str
    kinds: tuple[RequestKind, ...]
    max_capacity: int | None = None

    def __post_init__(self):
        if isinstance(self.capacity, int) and self.capacity < 1:
            raise ValueError("queue capacity must be at least 1")
        if isinstance(self.capacity, str) and (self.max_capacity is None or self.max_capacity < 1):
            raise ValueError("a symbolic capacity needs max_capacity >= 1")
        if not self.kinds:
            raise ValueError("a queue needs at least one request kind")

    @property
    def size(self) -> int:
        return self.capacity if isinstance(self.capacity, int) else self.max_capacity


def request_codes(kinds: Sequence[RequestKind]) -> list[tuple[RequestKind, tuple]]:
    """Ground requests in code order; code ``k+1`` is the ``k``-th entry, 0 marks an empty cell."""
    import itertools

    out = []
    for kind in kinds:
        for combo in itertools.product(*(d.values() for d in kind.args)):
            out.append((kind, combo))
    return out


def make_queue(q: QueueSpec, name: str = "Queue") -> PLts:
    """FIFO request buffer that reports ``!Error()`` and halts on overflow."""
    size = q.size
    cap = _bound(q.capacity)
    ground = request_codes(q.kinds)
    codes = DataDomain.range(0, len(ground))
    params = (Param(q.capacity, DataDomain.range(1, q.max_capacity)),) if isinstance(q.capacity, str) else ()
    buf, length = _v("buf"), _v("len")
    shift = tuple(Assign("buf", Index("buf", _l(k + 1)), _l(k)) for k in range(size - 1))
    shift += (Assign("buf", _l(0), _l(size - 1)), Assign("len", _op("-", length, _l(1))))
    trans = []
    for code, (kind, combo) in enumerate(ground, start=1):
        args = tuple(_l(v) for v in combo)
        trans.append(
            Transition(
                "ready", "ready", receive(f"Q_{kind.label}", *args), _op("<", length, cap),
                (Assign("buf", _l(code), length), Assign("len", _op("+", length, _l(1)))),
            )
        )
        trans.append(Transition("ready", "overflow", receive(f"Q_{kind.label}", *args), _op("=", length, cap)))
    for code, (kind, combo) in enumerate(ground, start=1):
        args = tuple(_l(v) for v in combo)
        guard = _op("and", _op(">", length, _l(0)), _op("=", Index("buf", _l(0)), _l(code)))
        trans.append(Transition("ready", "ready", emit(f"Serve_{kind.label}", *args), guard, shift))
    trans.append(Transition("overflow", "halted", emit("Error")))
    return PLts(
        name,
        params,
        (VarDecl("buf", codes, _l(size)), VarDecl("len", DataDomain.range(0, size))),
        ("ready", "overflow", "halted"),
        "ready",
        tuple(trans),
    )


# --------------------------------------------------------------------------
# group proxy


@dataclass(frozen=True)
class ProxySpec:
    """Table of futures for one group call.

    ``group`` is a literal size or a parameter name ranging over
    ``1..max_group``.  ``result`` of ``None`` models a call without result.
    """

    group: int | str
    result: DataDomain | None = BOOL
    primitives: tuple[str, ...] = PRIMITIVES
    max_group: int | None = None

    def __post_init__(self):
        if isinstance(self.group, int) and self.group < 1:
            raise ValueError("group size must be at least 1")
        if isinstance(self.group, str) and (self.max_group is None or self.max_group < 1):
            raise ValueError("a symbolic group size needs max_group >= 1")
        unknown = set(self.primitives) - set(PRIMITIVES)
        if unknown:
            raise ValueError(f"unknown primitives {sorted(unknown)}")
        if "waitAndGetTheNth" in self.primitives and self.result is None:
            raise ValueError("waitAndGetTheNth needs a result domain")

    @property
    def size(self) -> int:
        return self.group if isinstance(self.group, int) else self.max_group


def make_proxy(p: ProxySpec, name: str = "Proxy") -> PLts:
    """Futures table: ``?R`` fills cell ``i`` once, ``?reset()`` empties it for the next call."""
    size = p.size
    g = _bound(p.group)
    params = (Param(p.group, DataDomain.range(1, p.max_group)),) if isinstance(p.group, str) else ()
    idx = _index_range(g)
    got, n = _v("got"), _v("N")
    vars_ = [VarDecl("got", BOOL, _l(size))]
    if p.result is not None:
        vars_.append(VarDecl("res", p.result, _l(size)))
    vars_.append(VarDecl("N", DataDomain.range(0, size)))

    fresh = _op("and", _op("<", _v("i"), g), Not(Index("got", _v("i"))))
    fill = [Assign("got", _l(True), _v("i")), Assign("N", _op("+", n, _l(1)))]
    if p.result is not None:
        fill.insert(1, Assign("res", _v("v"), _v("i")))
        arrival = receive("R", _v("i"), _v("v"))
        inputs = (Param("i", idx), Param("v", p.result))
    else:
        arrival = receive("R", _v("i"))
        inputs = (Param("i", idx),)
    trans = [Transition("table", "table", arrival, fresh, tuple(fill), inputs)]
    if "waitAll" in p.primitives:
        trans.append(Transition("table", "table", emit("waitAll"), _op("=", n, g)))
    if "waitN" in p.primitives:
        counts = IndexRange(Lit(1), g) if not isinstance(g, Lit) else make_range(Lit(1), g)
        trans.append(Transition("table", "table", emit("waitN", _v("k")), _op(">=", n, _v("k")), (),
                                (Param("k", counts),)))
    if "waitAndGetTheNth" in p.primitives:
        ready = _op("and", Index("got", _v("i")), _op("=", Index("res", _v("i")), _v("v")))
        trans.append(Transition("table", "table", emit("getNth", _v("i"), _v("v")), ready, (),
                                (Param("i", idx), Param("v", p.result))))
    clear = [Assign("got", _l(False), _l(k)) for k in range(size)]
    if p.result is not None:
        clear += [Assign("res", _l(p.result.default), _l(k)) for k in range(size)]
    clear.append(Assign("N", _l(0)))
    trans.append(Transition("table", "table", receive("reset"), None, tuple(clear)))
    return PLts(name, params, tuple(vars_), ("table",), "table", tuple(trans))


# --------------------------------------------------------------------------
# server side


def make_serve_body(kinds: Sequence[RequestKind], name: str = "ParticipantBody") -> PLts:
    """Serve loop: take the queue head, run its method, wait for the method to return."""
    trans = []
    states = ["idle"]
    for kind in kinds:
        busy = f"in_{kind.label}"
        states.append(busy)
        binders = tuple(Param(f"a{k}", d) for k, d in enumerate(kind.args))
        trans.append(Transition("idle", busy, receive(f"Serve_{kind.label}", *(_v(b.name) for b in binders)),
                                inputs=binders))
        trans.append(Transition(busy, "idle", receive(f"Ret_{kind.label}")))
    return PLts(name, (), (), tuple(states), "idle", tuple(trans))


def make_method(name: str, reply: str | None = None, reply_domain: DataDomain | None = None) -> PLts:
    """Method body: ``?Call()``, an optional reply, then ``!Ret()``.

    A reply with a domain chooses its value freely, abstracting the
    method's computation.
    """
    trans = [Transition("wait", "run", receive("Call"))]
    states = ["wait", "run"]
    if reply is None:
        trans.append(Transition("run", "wait", emit("Ret")))
    else:
        states.append("replied")
        if reply_domain is None:
            trans.append(Transition("run", "replied", emit(reply)))
        else:
            trans.append(Transition("run", "replied", emit(reply, _v("r")), inputs=(Param("r", reply_domain),)))
        trans.append(Transition("replied", "wait", emit("Ret")))
    return PLts(name, (), (), tuple(states), "wait", tuple(trans))


# --------------------------------------------------------------------------
# client side


def make_initiator_body(group: str, max_group: int, data: DataDomain, name: str = "InitBody") -> PLts:
    """Suggest to all, read every answer in order, then validate (and wait) or cancel."""
    g = _v(group)
    k, ok = _v("k"), _v("ok")
    restart = (Assign("k", _l(0)), Assign("ok", _l(True)))
    trans = (
        Transition("start", "collect", emit("Q_Suggest", _v("d")), inputs=(Param("d", data),)),
        Transition("collect", "collect", receive("getNth", k, _v("v")), _op("<", k, g),
                   (Assign("ok", _op("and", ok, _v("v"))), Assign("k", _op("+", k, _l(1)))),
                   (Param("v", BOOL),)),
        Transition("collect", "decide", emit("T_CollateResults", ok), _op("=", k, g)),
        Transition("decide", "validated", emit("Q_Validate"), ok, restart),
        Transition("decide", "start", emit("Q_Cancel"), Not(ok), restart),
        Transition("validated", "start", receive("waitAll")),
    )
    return PLts(
        name,
        (Param(group, DataDomain.range(1, max_group)),),
        (VarDecl("k", DataDomain.range(0, max_group)), VarDecl("ok", BOOL)),
        ("start", "collect", "decide", "validated"),
        "start",
        trans,
        (Assign("ok", _l(True)),),
    )


# --------------------------------------------------------------------------
# the meeting scheduler


INITIATOR_SORT = ("Q_Suggest(*)", "Q_Validate()", "Q_Cancel()", "R_Suggest(*,*)", "R_Validate(*)",
                  "T_CollateResults(*)")
PARTICIPANT_SORT = ("Q_Suggest(*)", "Q_Validate()", "Q_Cancel()", "R_Suggest(*)", "R_Validate()", "Error()")
GROUP_SORT = ("Q_Suggest(*)", "Q_Validate()", "Q_Cancel()", "R_Suggest(*,*)", "R_Validate(*)", "Error()")
SYSTEM_SORT = ("Q_Suggest(*)", "Q_Validate()", "Q_Cancel()", "R_Suggest(*,*)", "Error()", "T_CollateResults(*)")


def _sv(glob: Action, *entries, binders: Sequence[Param] = ()) -> SyncVector:
    return SyncVector(glob, tuple(entries), tuple(binders))


def _hole_sort(p: PLts) -> tuple[str, ...]:
    """Patterns covering every action of ``p``, arguments wildcarded."""
    out = []
    for t in p.transitions:
        a = t.action
        if a.is_tau:
            continue
        pat = f"{a.direction.value}{a.label}({','.join('*' for _ in a.args)})"
        if pat not in out:
            out.append(pat)
    return tuple(out)


def make_meeting_model(G: int = 3, cap: int = 2, data: Sequence[str] = ("D1", "D2")) -> ModelFile:
    """Complete meeting-scheduler model.

    ``G`` and ``cap`` are the largest group size and queue capacity the
    model supports; instances choose ``G`` in ``1..G`` and ``cap`` in
    ``1..cap``.
    """
    if G < 1 or cap < 1:
        raise ValueError("G and cap must be at least 1")
    dom = DataDomain.enum("Data", data)
    gdom = DataDomain.range(1, G)
    gp = Param("G", gdom)
    members = IndexRange(Lit(0), _op("-", _v("G"), _l(1)))

    kinds = (RequestKind("Suggest", (dom,)), RequestKind("Validate"), RequestKind("Cancel"))
    queue = make_queue(QueueSpec("cap", kinds, cap))
    pbody = make_serve_body(kinds)
    msug = make_method("MethodSuggest", "R_Suggest", BOOL)
    mval = make_method("MethodValidate", "R_Validate")
    mcan = make_method("MethodCancel")
    ibody = make_initiator_body("G", G, dom)
    psug = make_proxy(ProxySpec("G", BOOL, ("waitAll", "waitN", "waitAndGetTheNth"), G), "ProxySuggest")
    pval = make_proxy(ProxySpec("G", None, ("waitAll", "waitN"), G), "ProxyValidate")

    d, b, i, k = _v("d"), _v("b"), _v("i"), _v("k")
    tau = Action.tau()

    initiator = PNet(
        "Initiator",
        (gp,),
        INITIATOR_SORT,
        (Hole("body", _hole_sort(ibody)), Hole("psug", _hole_sort(psug)), Hole("pval", _hole_sort(pval))),
        (
            _sv(internal("Q_Suggest", d), Single("body", emit("Q_Suggest", d)), Single("psug", receive("reset")),
                binders=[Param("d", dom)]),
            _sv(internal("R_Suggest", i, b), Single("psug", receive("R", i, b)),
                binders=[Param("i", members), Param("b", BOOL)]),
            _sv(internal("GetNth", i, b), Single("body", receive("getNth", i, b)),
                Single("psug", emit("getNth", i, b)), binders=[Param("i", members), Param("b", BOOL)]),
            _sv(internal("T_CollateResults", b), Single("body", emit("T_CollateResults", b)),
                binders=[Param("b", BOOL)]),
            _sv(internal("Q_Validate"), Single("body", emit("Q_Validate")), Single("pval", receive("reset"))),
            _sv(internal("R_Validate", i), Single("pval", receive("R", i)), binders=[Param("i", members)]),
            _sv(internal("WaitAll"), Single("body", receive("waitAll")), Single("pval", emit("waitAll"))),
            _sv(internal("Q_Cancel"), Single("body", emit("Q_Cancel"))),
        ),
    )

    participant = PNet(
        "Participant",
        (),
        PARTICIPANT_SORT,
        (
            Hole("queue", _hole_sort(queue)),
            Hole("body", _hole_sort(pbody)),
            Hole("msug", _hole_sort(msug)),
            Hole("mval", _hole_sort(mval)),
            Hole("mcan", _hole_sort(mcan)),
        ),
        (
            _sv(internal("Q_Suggest", d), Single("queue", receive("Q_Suggest", d)), binders=[Param("d", dom)]),
            _sv(internal("Q_Validate"), Single("queue", receive("Q_Validate"))),
            _sv(internal("Q_Cancel"), Single("queue", receive("Q_Cancel"))),
            _sv(internal("Error"), Single("queue", emit("Error"))),
            _sv(internal("Serve_Suggest", d), Single("queue", emit("Serve_Suggest", d)),
                Single("body", receive("Serve_Suggest", d)), Single("msug", receive("Call")),
                binders=[Param("d", dom)]),
            _sv(internal("R_Suggest", b), Single("msug", emit("R_Suggest", b)), binders=[Param("b", BOOL)]),
            _sv(internal("Ret_Suggest"), Single("body", receive("Ret_Suggest")), Single("msug", emit("Ret"))),
            _sv(internal("Serve_Validate"), Single("queue", emit("Serve_Validate")),
                Single("body", receive("Serve_Validate")), Single("mval", receive("Call"))),
            _sv(internal("R_Validate"), Single("mval", emit("R_Validate"))),
            _sv(internal("Ret_Validate"), Single("body", receive("Ret_Validate")), Single("mval", emit("Ret"))),
            _sv(internal("Serve_Cancel"), Single("queue", emit("Serve_Cancel")),
                Single("body", receive("Serve_Cancel")), Single("mcan", receive("Call"))),
            _sv(internal("Ret_Cancel"), Single("body", receive("Ret_Cancel")), Single("mcan", emit("Ret"))),
        ),
    )

    group = PNet(
        "ParticipantGroup",
        (gp,),
        GROUP_SORT,
        (Hole("part", PARTICIPANT_SORT, members),),
        (
            _sv(internal("Q_Suggest", d), Broadcast("part", "k", members, internal("Q_Suggest", d)),
                binders=[Param("d", dom)]),
            _sv(internal("Q_Validate"), Broadcast("part", "k", members, internal("Q_Validate"))),
            _sv(internal("Q_Cancel"), Broadcast("part", "k", members, internal("Q_Cancel"))),
            _sv(internal("R_Suggest", k, b), Collect("part", "k", members, internal("R_Suggest", b)),
                binders=[Param("b", BOOL)]),
            _sv(internal("R_Validate", k), Collect("part", "k", members, internal("R_Validate"))),
            _sv(internal("Error"), Collect("part", "k", members, internal("Error"))),
            _sv(tau, Collect("part", "k", members, tau)),
        ),
    )

    system = PNet(
        "System",
        (gp,),
        SYSTEM_SORT,
        (Hole("init", INITIATOR_SORT), Hole("group", GROUP_SORT)),
        (
            _sv(internal("Q_Suggest", d), Single("init", internal("Q_Suggest", d)),
                Single("group", internal("Q_Suggest", d)), binders=[Param("d", dom)]),
            _sv(internal("Q_Validate"), Single("init", internal("Q_Validate")),
                Single("group", internal("Q_Validate"))),
            _sv(internal("Q_Cancel"), Single("init", internal("Q_Cancel")), Single("group", internal("Q_Cancel"))),
            _sv(internal("R_Suggest", i, b), Single("init", internal("R_Suggest", i, b)),
                Single("group", internal("R_Suggest", i, b)), binders=[Param("i", members), Param("b", BOOL)]),
            _sv(internal("R_Validate", i), Single("init", internal("R_Validate", i)),
                Single("group", internal("R_Validate", i)), binders=[Param("i", members)]),
            _sv(internal("Error"), Single("group", internal("Error"))),
            _sv(internal("T_CollateResults", b), Single("init", internal("T_CollateResults", b)),
                binders=[Param("b", BOOL)]),
            _sv(tau, Single("init", tau)),
            _sv(tau, Single("group", tau)),
        ),
    )

    fills = (
        Fill("Initiator", "body", ibody.name),
        Fill("Initiator", "psug", psug.name),
        Fill("Initiator", "pval", pval.name),
        Fill("Participant", "queue", queue.name),
        Fill("Participant", "body", pbody.name),
        Fill("Participant", "msug", msug.name),
        Fill("Participant", "mval", mval.name),
        Fill("Participant", "mcan", mcan.name),
        Fill("ParticipantGroup", "part", participant.name),
        Fill("System", "init", initiator.name),
        Fill("System", "group", group.name),
    )
    return ModelFile(
        (dom,),
        (ibody, psug, pval, queue, pbody, msug, mval, mcan),
        (initiator, participant, group, system),
        fills,
    )


def meeting_instance(G: int = 3, cap: int = 2) -> dict[str, int]:
    return {"G": G, "cap": cap}
