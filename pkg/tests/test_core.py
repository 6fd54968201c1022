import pytest
from hypothesis import given, strategies as st

from pnmc.core import (
    BOOL,
    Action,
    Assign,
    BinOp,
    DataDomain,
    Direction,
    Index,
    IndexRange,
    LabelPattern,
    Lit,
    Lts,
    Not,
    Param,
    PLts,
    RangeViolation,
    Transition,
    UnboundVariable,
    Var,
    VarDecl,
    WellFormednessError,
    eval_expr,
    ground_label,
    parse_label,
    resolve_domain,
    sort_of,
)
from pnmc.expand import instantiate_plts
from pnmc.grouplib import (
    QueueSpec,
    RequestKind,
    ProxySpec,
    make_meeting_model,
    make_method,
    make_proxy,
    make_queue,
    make_serve_body,
)

X02 = DataDomain.range(0, 2)


def test_domains():
    assert DataDomain.enum("Data", ["D1", "D2"]).values() == ("D1", "D2")
    assert BOOL.values() == (False, True)
    assert X02.values() == (0, 1, 2)
    assert True not in X02 and 1 in X02
    with pytest.raises(WellFormednessError):
        DataDomain.range(2, 1)
    with pytest.raises(WellFormednessError):
        DataDomain.enum("E", [])


def test_resolve_symbolic_range():
    r = IndexRange(Lit(0), BinOp("-", Var("G"), Lit(1)))
    assert resolve_domain(r, {"G": 3}).values() == (0, 1, 2)
    with pytest.raises(RangeViolation):
        resolve_domain(r, {"G": 0})


def test_eval_examples():
    assert eval_expr(BinOp("=", BinOp("+", Var("x"), Lit(1)), Lit(2)), {"x": 1}) is True
    assert eval_expr(Not(Var("b")), {"b": False}) is True
    assert eval_expr(Index("a", Var("i")), {"a": (5, 6), "i": 1}) == 6
    with pytest.raises(UnboundVariable):
        eval_expr(Var("y"), {})


def test_range_exit_only_at_top():
    e = BinOp("+", Var("x"), Lit(1))
    out = {}
    for x in X02.values():
        try:
            out[x] = eval_expr(e, {"x": x}, {"x": X02})
        except RangeViolation:
            out[x] = "exit"
    assert out == {0: 1, 1: 2, 2: "exit"}


@given(st.integers(0, 2), st.integers(0, 2))
def test_eval_deterministic(x, y):
    e = BinOp("or", BinOp("<", Var("x"), Var("y")), BinOp("=", Var("x"), Var("y")))
    env = {"x": x, "y": y}
    assert eval_expr(e, env) == eval_expr(e, dict(env)) == (x <= y)


def test_ground_labels():
    assert ground_label(Action(Direction.RECEIVE, "Q_Cancel"), {}) == "?Q_Cancel()"
    a = Action(Direction.EMIT, "Q_Suggest", (Var("d"),), "Participant", Var("i"))
    assert ground_label(a, {"i": 1, "d": "D1"}) == "!Participant[1].Q_Suggest(D1)"
    assert ground_label(Action.tau(), {}) == "i"
    assert ground_label(Action(Direction.INTERNAL, "T", (Lit(False),)), {}) == "T(false)"


_name = st.from_regex(r"[A-Z][a-z_]{0,5}", fullmatch=True)
_value = st.one_of(st.integers(-3, 9).map(str), st.sampled_from(["true", "false", "D1", "D2"]))


@given(st.sampled_from(["!", "?", ""]), st.one_of(st.none(), st.tuples(_name, _value)), _name,
       st.lists(_value, max_size=3))
def test_label_round_trip(glyph, target, name, args):
    prefix = f"{target[0]}[{target[1]}]." if target else ""
    text = f"{glyph}{prefix}{name}({','.join(args)})"
    assert str(parse_label(text)) == text


def test_label_patterns():
    assert LabelPattern("R_Suggest(*,*)").matches("R_Suggest(0,true)")
    assert not LabelPattern("R_Suggest(*,*)").matches("R_Suggest(true)")
    assert LabelPattern("Error").matches("Error()")
    assert LabelPattern("*").matches("anything")
    assert LabelPattern("!P[*].Q(D1)").matches("!P[2].Q(D1)")
    assert not LabelPattern("Q_Suggest(*)").matches("?Q_Suggest(D1)")
    assert LabelPattern("R(*,*)").wildcards == 2
    with pytest.raises(ValueError):
        LabelPattern("bad label(")


def test_plts_well_formedness():
    with pytest.raises(WellFormednessError):
        PLts("P", (), (), ("s",), "t", ())
    with pytest.raises(WellFormednessError):
        PLts("P", (), (), ("s",), "s", (Transition("s", "s", Action(Direction.EMIT, "a", (Var("x"),))),))
    with pytest.raises(WellFormednessError):
        PLts("P", (), (), ("s",), "s", (Transition("s", "s", Action.tau(), None, (Assign("x", Lit(1)),)),))


def test_sort_of_examples():
    one = PLts("P", (), (), ("s",), "s", (Transition("s", "s", Action(Direction.RECEIVE, "Q_Cancel")),))
    assert sort_of(one, {}) == {"?Q_Cancel()"}
    assert sort_of(PLts("E", (), (), ("s",), "s", ()), {}) == set()
    model = make_meeting_model(3, 2)
    queue = next(p for p in model.plts if p.name == "Queue")
    assert {"?Q_Suggest(D1)", "?Q_Suggest(D2)"} <= sort_of(queue, {"cap": 2})


def _components():
    data = DataDomain.enum("Data", ["D1", "D2"])
    kinds = (RequestKind("Suggest", (data,)), RequestKind("Cancel"))
    yield make_queue(QueueSpec(1, kinds)), {}
    yield make_queue(QueueSpec("cap", kinds, 2)), {"cap": 2}
    yield make_proxy(ProxySpec(2)), {}
    yield make_proxy(ProxySpec("G", None, ("waitAll", "waitN"), 3)), {"G": 2}
    yield make_serve_body(kinds), {}
    yield make_method("M", "R", BOOL), {}
    model = make_meeting_model(2, 2)
    for p in model.plts:
        params = {"G": 2, "cap": 1}
        yield p, {k: v for k, v in params.items() if k in p.param_names}


def test_sort_of_covers_instantiation():
    for p, inst in _components():
        assert instantiate_plts(p, inst).label_set() <= sort_of(p, inst), p.name


def test_lts_basics():
    empty = Lts.from_triples(1, [])
    assert (empty.num_states, empty.num_transitions) == (1, 0)
    l = Lts.from_triples(2, [(0, "a", 1)])
    assert list(l.triples()) == [(0, "a", 1)]
    with pytest.raises(WellFormednessError):
        Lts.from_triples(1, [(0, "a", 1)])
