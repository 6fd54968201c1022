from hypothesis import given, strategies as st

from pnmc.expand import GroundVector
from pnmc.product import synch_product
from pnmc.reduce import (
    branching_bisimilar,
    branching_partition,
    minimize_branching,
    minimize_strong,
    strong_partition,
    strongly_bisimilar,
)

import oracles
from conftest import lts, random_lts


def test_inert_tau_is_removed():
    with_tau = lts(4, (0, "a", 1), (1, "i", 2), (2, "b", 3))
    plain = lts(3, (0, "a", 1), (1, "b", 2))
    assert branching_bisimilar(with_tau, plain)
    assert not strongly_bisimilar(with_tau, plain)
    m = minimize_branching(with_tau)
    assert list(m.triples()) == [(0, "a", 1), (1, "b", 2)]


def test_non_inert_tau_is_kept():
    # a.(i.b + c) against a.(b + c): the internal step discards c
    left = lts(5, (0, "a", 1), (1, "i", 2), (1, "c", 3), (2, "b", 4))
    right = lts(4, (0, "a", 1), (1, "b", 2), (1, "c", 3))
    assert not branching_bisimilar(left, right)
    # only the two end states merge
    m = minimize_branching(left)
    assert (m.num_states, m.num_transitions) == (4, 4)
    assert "i" in m.labels


def test_tau_cycle_collapses():
    l = lts(3, (0, "i", 1), (1, "i", 0), (1, "a", 2))
    m = minimize_branching(l)
    assert (m.num_states, list(m.triples())) == (2, [(0, "a", 1)])


def test_strong_merges_equal_futures():
    l = lts(5, (0, "a", 1), (0, "a", 2), (1, "b", 3), (2, "b", 4))
    assert list(minimize_strong(l).triples()) == [(0, "a", 1), (1, "b", 2)]


def test_single_state():
    l = lts(1)
    assert minimize_strong(l).num_states == 1
    assert minimize_branching(lts(1, (0, "i", 0))).num_transitions == 0


@given(random_lts())
def test_strong_matches_oracle(l):
    assert oracles.same_partition(strong_partition(l), oracles.naive_strong_blocks(l))


@given(random_lts(max_states=7))
def test_branching_matches_oracle(l):
    rel = oracles.naive_branching_relation(l)
    assert oracles.same_partition(branching_partition(l), oracles.relation_blocks(l.num_states, rel))


@given(random_lts())
def test_minimization_shrinks_and_is_idempotent(l):
    reach = len(oracles.reachable(l.num_states, l.triples()))
    s = minimize_strong(l)
    b = minimize_branching(l)
    assert s.num_states <= reach and b.num_states <= s.num_states
    assert oracles.isomorphic(minimize_strong(s), s)
    assert oracles.isomorphic(minimize_branching(b), b)
    assert strongly_bisimilar(l, s)
    assert branching_bisimilar(l, b)


@given(random_lts(max_states=5), random_lts(max_states=5), st.data())
def test_branching_is_a_congruence_for_products(x, y, data):
    cells = st.sampled_from([None, "a", "b"])
    vectors = [GroundVector("i", ("i", None)), GroundVector("i", (None, "i"))]
    for _ in range(data.draw(st.integers(1, 4))):
        row = (data.draw(cells), data.draw(cells))
        if row != (None, None):
            vectors.append(GroundVector(data.draw(st.sampled_from(["u", "v", "i"])), row))
    raw = synch_product([x, y], vectors)
    reduced = synch_product([minimize_branching(x), minimize_branching(y)], vectors)
    assert branching_bisimilar(raw, reduced)
