import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hardimec import (
    Admg,
    InterventionPair,
    InterventionSet,
    ancestors,
    format_admg,
    mutilate,
    parse_admg,
    parse_targets,
    partition_relative,
    relative_nonancestors,
    validate_admg,
)
from hardimec.errors import (
    CyclicDirectedPartError,
    IndexOutOfRangeError,
    ParseError,
    SelfLoopError,
    UnknownNodeError,
    UnknownTargetError,
)
from hardimec.graph import format_targets

from bruteforce import ancestors_of, edge_list, powerset
from conftest import admgs


def test_d1_is_valid(d1):
    assert validate_admg(d1) is None


def test_two_cycle_rejected_with_witness():
    with pytest.raises(CyclicDirectedPartError) as err:
        Admg("XY", [("X", "Y"), ("Y", "X")])
    assert set(err.value.cycle) == {"X", "Y"}
    g = Admg("XY", [("X", "Y"), ("Y", "X")], check=False)
    with pytest.raises(CyclicDirectedPartError):
        validate_admg(g)


def test_self_loops_rejected():
    with pytest.raises(SelfLoopError):
        Admg("X", [("X", "X")])
    with pytest.raises(SelfLoopError):
        Admg("X", bidirected=[("X", "X")])


def test_empty_graph_valid():
    validate_admg(Admg("ABC"))


def test_unknown_node_in_edge():
    with pytest.raises(UnknownNodeError):
        Admg("AB", [("A", "C")])


def test_ancestors_examples(d1):
    assert ancestors(d1, {"Y"}) == {"X", "Z", "Y"}
    assert ancestors(mutilate(d1, over={"Z"}), {"Y"}) == {"Z", "Y"}
    assert ancestors(d1, set()) == frozenset()
    with pytest.raises(UnknownNodeError):
        ancestors(d1, {"Q"})


def test_mutilate_examples(d1):
    over = mutilate(d1, over={"Z"})
    assert over == Admg("XZY", [("Z", "Y")])
    under = mutilate(d1, under={"Z"})
    assert under == Admg("XZY", [("X", "Z")], [("Z", "Y")])
    assert mutilate(d1) == d1
    with pytest.raises(UnknownNodeError):
        mutilate(d1, over={"Q"})


def test_relative_nonancestors_examples(d1):
    assert relative_nonancestors(d1, {"X", "Z"}, set(), set()) == {"X", "Z"}
    assert relative_nonancestors(d1, {"Z"}, {"Y"}, set()) == frozenset()
    chain = parse_admg("A -> B\nB -> C")
    assert relative_nonancestors(chain, {"A", "B"}, {"B"}, set()) == frozenset()
    # cutting into B frees A
    assert relative_nonancestors(chain, {"A", "B"}, {"B"}, {"B"}) == {"A"}


def test_partition_examples():
    p = InterventionPair(frozenset("X"), frozenset("Z"))
    assert partition_relative(p, {"Z"}) == (set(), {"Z"}, {"X"}, {"X"}, set())
    same = InterventionPair(frozenset("X"), frozenset("X"))
    assert all(s == set() for s in partition_relative(same, {"X", "Y"}))
    p = InterventionPair(frozenset("XZ"), frozenset("ZY"))
    assert p.k == {"X", "Y"}
    w_i, w_j, r, _, _ = partition_relative(p, {"X", "Y"})
    assert (w_i, w_j, r) == ({"X"}, {"Y"}, set())


def test_partition_exhaustive_membership_oracle():
    nodes = "ABCD"
    subsets = [frozenset(s) for s in powerset(nodes)]
    for i, j, w in itertools.product(subsets, subsets, subsets):
        p = InterventionPair(i, j)
        w_i, w_j, r, r_i, r_j = partition_relative(p, w)
        for v in nodes:
            in_i, in_j, in_w = v in i, v in j, v in w
            assert (v in w_i) == (in_i and not in_j and in_w)
            assert (v in w_j) == (in_j and not in_i and in_w)
            assert (v in r) == (in_i != in_j and not in_w)
            assert (v in r_i) == (in_i and not in_j and not in_w)
            assert (v in r_j) == (in_j and not in_i and not in_w)
        assert w_i | r_i == p.k_i and w_j | r_j == p.k_j
        assert not (p.k_i & p.k_j) and p.k_i <= i and p.k_j <= j


def test_intervention_set_basics():
    iset = parse_targets("{};{Z};{X,Y}")
    assert iset.target(1) == frozenset() and iset.target(3) == {"X", "Y"}
    assert list(iset.domains()) == [1, 2, 3]
    assert iset.nodes == {"X", "Y", "Z"}
    with pytest.raises(IndexOutOfRangeError):
        iset.target(4)
    with pytest.raises(ValueError):
        InterventionSet([{"X"}, {"X"}])
    with pytest.raises(UnknownTargetError):
        iset.check(Admg("XY"))
    assert format_targets(iset, order=["X", "Y", "Z"]) == "{};{Z};{X,Y}"


def test_text_roundtrip_is_byte_identical(d2):
    text = format_admg(d2)
    assert text == "node X\nnode Z\nnode Y\nX -> Z\nX -> Y\nZ -> Y\nZ <-> Y\n"
    assert format_admg(parse_admg(text)) == text


def test_parser_comments_and_reverse_arrows():
    g = parse_admg("# header\nnode W\nY <- X  # trailing\nX <-> W\n")
    assert g == Admg("WYX", [("X", "Y")], [("X", "W")])
    with pytest.raises(ParseError) as err:
        parse_admg("X => Y")
    assert err.value.line == 1


def test_graph_is_immutable(d1):
    with pytest.raises(AttributeError):
        d1.nodes = ()
    assert hash(d1) == hash(parse_admg("X -> Z\nZ -> Y\nY <-> Z"))


@settings(max_examples=150, deadline=None)
@given(admgs(max_nodes=5), st.data())
def test_mutilate_idempotent_and_no_arrowheads(g, data):
    over = data.draw(st.frozensets(st.sampled_from(g.nodes)))
    under = data.draw(st.frozensets(st.sampled_from(g.nodes)))
    m = mutilate(g, over, under)
    assert mutilate(m, over, under) == m
    for a, b, ma, mb in edge_list(m):
        if a in over:
            assert ma.value != ">"
        if b in over:
            assert mb.value != ">"
    assert all(a not in under for a, _ in m.directed)


@settings(max_examples=150, deadline=None)
@given(admgs(max_nodes=5), st.data())
def test_ancestors_match_closure_and_are_monotone(g, data):
    s = data.draw(st.frozensets(st.sampled_from(g.nodes)))
    t = data.draw(st.frozensets(st.sampled_from(g.nodes)))
    an = ancestors(g, s)
    assert an == ancestors_of(list(g.nodes), edge_list(g), s)
    assert an <= ancestors(g, s | t)
    assert ancestors(g, an) == an
