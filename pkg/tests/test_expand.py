import re

import pytest

from pnmc.core import (
    BOOL,
    Action,
    Assign,
    BinOp,
    DataDomain,
    Direction,
    Lit,
    PLts,
    RangeViolation,
    Transition,
    Var,
    VarDecl,
    sort_of,
)
from pnmc.dsl import parse_model
from pnmc.expand import (
    EmptyRange,
    MixedVector,
    StateExplosion,
    bind_params,
    InstantiationError,
    expand_broadcast,
    expand_collect,
    expand_holes,
    expand_net_vectors,
    expand_vector,
    explore_plts,
    instantiate_plts,
    render_vector,
)
from pnmc.grouplib import ProxySpec, QueueSpec, RequestKind, make_meeting_model, make_proxy, make_queue

import oracles

# The two-member example: a client, a family of services and one more service.
SERVICES = """
domain Date = { date }
domain Val = { val }
net Demo {
  param n : 1..2
  sort { Q_suggest(), R_suggest(*) }
  hole client : { !Q_suggest(*), ?R_suggest(*,*) }
  hole services[0..n-1] : { ?Q_suggest(*), !R_suggest(*) }
  hole service : { ?Q_suggest(*) }
  vector Q_suggest() = < client.!Q_suggest(d), BC i : 0..n-1 . services[i].?Q_suggest(d), service.?Q_suggest(d) > with d : Date
  vector R_suggest(v) = < client.?R_suggest(i, v), CO i : 0..n-1 . services[i].!R_suggest(v) > with v : Val
}
"""

BC_SHOWN = "< Q_suggest, !Q_suggest(date), ?services[0].Q_suggest(date),?services[1].Q_suggest(date), ?service.Q_suggest(date)>"
CO_SHOWN = [
    "< R_suggest(val), ?R_suggest(0,val), !services[0].R_suggest(val), *>",
    "< R_suggest(val), ?R_suggest(1,val), *, !services[1].R_suggest(val)>",
]


def _squash(text):
    return re.sub(r"\s+", "", text)


def _demo():
    return parse_model(SERVICES).pnets[0]


def _rendered(net, inst, vec):
    slots = expand_holes(net, inst)
    return [render_vector(gv, slots, ("services", "service"), bare_nullary=True) for gv in expand_vector(vec, net, inst)]


def test_broadcast_shown_expansion():
    net = _demo()
    (text,) = _rendered(net, {"n": 2}, net.vectors[0])
    assert _squash(text) == _squash(BC_SHOWN)
    # the last cell is the extra, unindexed service
    gv = expand_broadcast(net.vectors[0], net, {"n": 2})[0]
    assert gv.cells == ("!Q_suggest(date)", "?Q_suggest(date)", "?Q_suggest(date)", "?Q_suggest(date)")


def test_collect_shown_expansion():
    # the collect example involves only the client and the services family
    net = parse_model(SERVICES.replace("  hole service : { ?Q_suggest(*) }\n", "").replace(", service.?Q_suggest(d)", "")).pnets[0]
    rendered = [_squash(t) for t in _rendered(net, {"n": 2}, net.vectors[1])]
    assert rendered == [_squash(t) for t in CO_SHOWN]


def test_singleton_ranges():
    net = _demo()
    (bc,) = expand_broadcast(net.vectors[0], net, {"n": 1})
    assert sum(c is not None for c in bc.cells[1:2]) == 1
    (co,) = expand_collect(net.vectors[1], net, {"n": 1})
    assert None not in co.cells[:2]


FAMILY = """
domain Data = { D1, D2 }
net F {
  param G : 1..3
  sort { Q(*), R(*,*) }
  hole init : { !Q(*), ?R(*,*) }
  hole part[0..G-1] : { ?Q(*), !R(*) }
  vector Q(d) = < init.!Q(d), BC k : 0..G-1 . part[k].?Q(d) > with d : Data
  vector R(k, b) = < init.?R(k, b), CO k : 0..G-1 . part[k].!R(b) > with b : bool
}
"""


def test_broadcast_counts_against_nested_loops():
    net = parse_model(FAMILY).pnets[0]
    got = expand_broadcast(net.vectors[0], net, {"G": 3})
    expected = set()
    for d in ("D1", "D2"):
        expected.add((f"Q({d})", (f"!Q({d})",) + tuple(f"?Q({d})" for _ in range(3))))
    assert {(g.label, g.cells) for g in got} == expected


def test_collect_counts():
    net = parse_model(FAMILY).pnets[0]
    got = expand_collect(net.vectors[1], net, {"G": 3})
    assert len(got) == 3 * 2
    for gv in got:
        assert sum(c is not None for c in gv.cells[1:]) == 1


def test_expand_holes():
    model = make_meeting_model(3, 2)
    system = model.net_named("System")
    group = model.net_named("ParticipantGroup")
    assert [str(s) for s in expand_holes(group, {"G": 3})] == ["part[0]", "part[1]", "part[2]"]
    assert [str(s) for s in expand_holes(group, {"G": 1})] == ["part[0]"]
    assert [str(s) for s in expand_holes(system, {"G": 3})] == ["init", "group"]
    two = parse_model("net T { hole a[0..1] : { x() } hole b[0..1] : { x() } }").pnets[0]
    assert [str(s) for s in expand_holes(two, {})] == ["a[0]", "a[1]", "b[0]", "b[1]"]


def test_empty_and_mixed():
    net = parse_model(FAMILY.replace("param G : 1..3", "param G : 0..3")).pnets[0]
    with pytest.raises(EmptyRange):
        expand_vector(net.vectors[0], net, {"G": 0})
    mixed = parse_model(
        "net M { hole p[0..1] : { a() } hole q[0..1] : { b() }\n"
        " vector x() = < BC i : 0..1 . p[i].a(), CO j : 0..1 . q[j].b() > }"
    ).pnets[0]
    with pytest.raises(MixedVector):
        expand_vector(mixed.vectors[0], mixed, {})


@pytest.mark.parametrize("G", [1, 2, 3])
@pytest.mark.parametrize("data", [("D1",), ("D1", "D2")])
def test_grouplib_vectors_match_brute_force(G, data):
    model = make_meeting_model(3, 2, data)
    for net in model.pnets:
        inst = {p.name: G for p in net.params}
        got = {(g.label, g.cells) for g in expand_net_vectors(net, inst)}
        assert got == oracles.brute_force_vectors(net, inst), net.name


@pytest.mark.parametrize("G", [1, 2, 3])
def test_expansion_cardinalities(G):
    group = make_meeting_model(3, 2).net_named("ParticipantGroup")
    for v in group.vectors:
        bind = 1
        for b in v.binders:
            bind *= len(b.domain.values())
        n = len(expand_vector(v, group, {"G": G}))
        is_co = any(type(e).__name__ == "Collect" for e in v.entries)
        assert n == (bind * G if is_co else bind)


def test_cells_lie_in_filler_sorts():
    model = make_meeting_model(3, 2)
    inst = {"G": 3, "cap": 2}
    plts = {p.name: p for p in model.plts}
    fills = {(f.net, f.hole): f.filler for f in model.fills}
    for net in model.pnets:
        slots = expand_holes(net, inst)
        vectors = expand_net_vectors(net, inst)
        for k, slot in enumerate(slots):
            filler = fills[(net.name, slot.hole)]
            if filler not in plts:
                continue
            p = plts[filler]
            labels = sort_of(p, bind_params(p.params, inst, p.name))
            for gv in vectors:
                assert gv.cells[k] is None or gv.cells[k] in labels


def _counter():
    n = Var("n")
    return PLts(
        "C", (), (VarDecl("n", DataDomain.range(0, 1)),), ("s",), "s",
        (Transition("s", "s", Action(Direction.INTERNAL, "a"), BinOp("=", n, Lit(0)), (Assign("n", Lit(1)),)),),
    )


def test_instantiate_hand_example():
    l = instantiate_plts(_counter(), {})
    assert (l.num_states, l.num_transitions) == (2, 1)


def test_instantiate_errors():
    with pytest.raises(StateExplosion):
        instantiate_plts(_counter(), {}, cap=1)
    bad = PLts("B", (), (VarDecl("n", DataDomain.range(0, 1)),), ("s",), "s",
               (Transition("s", "s", Action.tau(), None, (Assign("n", BinOp("+", Var("n"), Lit(1))),)),))
    with pytest.raises(RangeViolation):
        instantiate_plts(bad, {})
    with pytest.raises(InstantiationError):
        instantiate_plts(make_queue(QueueSpec("cap", (RequestKind("A"),), 2)), {})
    with pytest.raises(InstantiationError):
        instantiate_plts(make_queue(QueueSpec("cap", (RequestKind("A"),), 2)), {"cap": 3})


def test_only_reachable_states():
    model = make_meeting_model(3, 2)
    for p in model.plts:
        inst = {k: v for k, v in {"G": 3, "cap": 2}.items() if k in p.param_names}
        l = instantiate_plts(p, inst)
        assert oracles.reachable(l.num_states, l.triples()) == set(range(l.num_states)), p.name


def test_full_queue_errors_on_enqueue():
    q = make_queue(QueueSpec(1, (RequestKind("A"),)))
    l, confs = explore_plts(q, {})
    out = l.out()
    full = [s for s, (ctrl, v) in enumerate(confs) if ctrl == "ready" and v["len"] == 1]
    assert full
    for s in full:
        nexts = [d for _, lab, d in out[s] if l.labels[lab] == "?Q_A()"]
        assert nexts and all(any(l.labels[x] == "!Error()" for _, x, _ in out[d]) for d in nexts)


def test_proxy_wait_all_exactly_when_complete():
    l, confs = explore_plts(make_proxy(ProxySpec(2)), {})
    out = l.out()
    for s, (_, v) in enumerate(confs):
        has = any(l.labels[lab] == "!waitAll()" for _, lab, _ in out[s])
        assert has == all(v["got"])
