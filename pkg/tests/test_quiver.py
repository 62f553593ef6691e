import pytest
from hypothesis import given, settings

from conftest import acyclic_quivers, disjoint_pair, ex1, ex2, ex_quiver, parallel_pair
from oracles import all_paths_brute, automorphisms_brute
from quiverlie.errors import CycleFound, DanglingEndpoint, DuplicateIdentifier, EmptyQuiver, LengthOne, NotComposable
from quiverlie.quiver import (
    Arrow,
    ArrowPermutation,
    Quiver,
    apply_automorphism,
    automorphism_generators,
    automorphism_group_order,
    automorphisms,
    check_reduction,
    close_group,
    enumerate_paths,
    is_automorphism,
    partition,
    quiver_length,
    reduced_quiver,
    restrict_to_reduced,
    starting_set,
    swap_automorphism,
    validate,
)


def test_validate_ex_quiver():
    validate(ex_quiver())


def test_loop_is_a_cycle():
    q = Quiver.from_arrows([("a", "v1", "v1")])
    with pytest.raises(CycleFound) as exc:
        validate(q)
    assert exc.value.cycle == ("a",)


def test_two_cycle_witness():
    q = Quiver.from_arrows([("a", "v1", "v2"), ("b", "v2", "v1")])
    with pytest.raises(CycleFound) as exc:
        validate(q)
    assert exc.value.cycle == ("a", "b")


def test_cycle_witness_is_a_closed_path():
    q = Quiver.from_arrows(
        [("x", "u", "v1"), ("a", "v1", "v2"), ("b", "v2", "v3"), ("c", "v3", "v1"), ("d", "v3", "w")]
    )
    with pytest.raises(CycleFound) as exc:
        validate(q)
    cyc = exc.value.cycle
    assert q.is_path(cyc) and q.source(cyc) == q.target(cyc)
    assert sorted(cyc) == ["a", "b", "c"]


def test_structural_errors():
    with pytest.raises(DuplicateIdentifier):
        Quiver.from_arrows([("a", "v1", "v2"), ("a", "v2", "v3")])
    with pytest.raises(DanglingEndpoint):
        Quiver(("v1",), (Arrow("a", "v1", "v2"),))
    with pytest.raises(DuplicateIdentifier):
        Quiver(("v1", "v1"), ())


def test_empty_quiver_is_valid():
    q = Quiver((), ())
    validate(q)
    assert enumerate_paths(q) == []
    with pytest.raises(EmptyQuiver):
        quiver_length(q)


def test_paths_ex_quiver():
    paths = enumerate_paths(ex_quiver())
    assert ["".join(p) for p in paths] == ["a", "b", "c", "d", "e", "ab", "be", "ce", "de", "abe"]


def test_paths_ex2():
    assert {"".join(p) for p in enumerate_paths(ex2())} == {
        "a", "b", "c", "d", "ac", "bc", "cd", "acd", "bcd"
    }


def test_disjoint_arrows_have_no_compositions():
    assert enumerate_paths(disjoint_pair()) == [("a",), ("b",)]


@pytest.mark.parametrize("q, m", [(ex1(), 2), (ex_quiver(), 3), (disjoint_pair(), 1), (ex2(), 3)])
def test_quiver_length(q, m):
    assert quiver_length(q) == m


@settings(max_examples=60, deadline=None)
@given(acyclic_quivers(max_arrows=6))
def test_paths_match_brute_force(q):
    paths = enumerate_paths(q)
    assert set(paths) == all_paths_brute(q)
    assert len(paths) == len(set(paths))
    # canonical order: length, then arrow declaration index
    keys = [(len(p), [q.arrow_index[a] for a in p]) for p in paths]
    assert keys == sorted(keys)
    for p in paths:
        assert len(set(p)) == len(p)


def test_starting_sets():
    assert starting_set(ex1()) == ("a",)
    assert starting_set(ex_quiver()) == ("a",)
    one = Quiver.from_arrows([("a", "v1", "v2")])
    assert starting_set(one) == ("a",)


def test_starting_set_by_brute_force():
    # S = arrows a with some x such that a·x is a path of maximal length
    for q in (ex1(), ex2(), ex_quiver()):
        paths = all_paths_brute(q)
        m = max(map(len, paths))
        expect = {a.name for a in q.arrows if any(p[0] == a.name and len(p) == m for p in paths)}
        assert set(starting_set(q)) == expect


def test_reduced_ex1():
    qp = reduced_quiver(ex1())
    assert [a.name for a in qp.arrows] == ["b", "a.b"]
    assert [qp.word(p) for p in enumerate_paths(qp)] == [("b",), ("a", "b")]
    assert quiver_length(qp) == 1


def test_reduced_ex_quiver():
    q = ex_quiver()
    qp = reduced_quiver(q)
    assert {a.word for a in qp.arrows} == {("b",), ("c",), ("d",), ("e",), ("a", "b")}
    assert len(enumerate_paths(qp)) == 9


def test_length_one_cannot_reduce():
    with pytest.raises(LengthOne):
        reduced_quiver(disjoint_pair())


@settings(max_examples=80, deadline=None)
@given(acyclic_quivers())
def test_reduction_properties(q):
    m = quiver_length(q)
    if m < 2:
        return
    qp = reduced_quiver(q, check=False)
    check_reduction(q, qp)
    S = starting_set(q)
    words = sorted(q.word(p) for p in enumerate_paths(q))
    assert words == sorted([(a,) for a in S] + [qp.word(p) for p in enumerate_paths(qp)])
    assert quiver_length(qp) == m - 1


def _joined(paths):
    return {"".join(p) for p in paths}


def test_partition_ex1():
    part = partition(ex1())
    assert part.target_vertices == ("v2",)
    (b,) = part.blocks
    assert _joined(b.starting) == {"a"}
    assert _joined(b.p1) == {"b"}
    assert _joined(b.p2) == {"ab"}
    assert part.p0 == ()


def test_partition_ex_quiver():
    part = partition(ex_quiver())
    (b,) = part.blocks
    assert b.vertex == "v2"
    assert _joined(b.starting) == {"a"}
    assert _joined(b.p1) == {"b", "be"}
    assert _joined(b.p2) == {"ab", "abe"}
    assert _joined(part.p0) == {"c", "d", "e", "ce", "de"}


@settings(max_examples=80, deadline=None)
@given(acyclic_quivers())
def test_partition_properties(q):
    if quiver_length(q) < 2:
        return
    part = partition(q)
    S = part.starting_set
    ab = q.arrow_by_name
    # starting arrows never compose with each other
    for a in S:
        for b in S:
            assert ab[a].target != ab[b].source
    pieces = [(a,) for a in S] + list(part.p1) + list(part.p2) + list(part.p0)
    assert sorted(pieces) == sorted(enumerate_paths(q))
    for blk in part.blocks:
        for x in blk.p2:
            assert (x[0],) in blk.starting and x[1:] in blk.p1


def test_automorphisms_ex1():
    assert [str(f) for f in automorphisms(ex1())] == ["id"]


def test_automorphisms_ex_quiver():
    auts = automorphisms(ex_quiver())
    assert [str(f) for f in auts] == ["id", "(c d)"]
    assert len(automorphisms_brute(ex_quiver())) == 2


def test_parallel_arrows():
    assert len(automorphisms(parallel_pair())) == 2


def test_empty_quiver_automorphisms():
    assert [str(f) for f in automorphisms(Quiver((), ()))] == ["id"]


@settings(max_examples=50, deadline=None)
@given(acyclic_quivers(max_arrows=6))
def test_automorphisms_match_brute_force(q):
    found = {tuple(sorted(f.mapping.items())) for f in automorphisms(q)}
    brute = {tuple(sorted(f.items())) for f in automorphisms_brute(q)}
    assert found == brute
    assert automorphism_group_order(q) == len(brute)


@settings(max_examples=50, deadline=None)
@given(acyclic_quivers(max_arrows=7))
def test_automorphisms_form_a_group(q):
    auts = set(automorphisms(q, limit=5040))
    assert ArrowPermutation.identity(q) in auts
    assert len(auts) == automorphism_group_order(q)
    assert close_group(q, automorphism_generators(q)) == auts
    if len(auts) > 120:
        return  # pairwise closure is quadratic; generators cover the rest
    for f in auts:
        assert f.inverse() in auts
        for g in auts:
            assert f.compose(g) in auts


@settings(max_examples=60, deadline=None)
@given(acyclic_quivers())
def test_automorphisms_preserve_reduction(q):
    if quiver_length(q) < 2:
        return
    S = set(starting_set(q))
    qp = reduced_quiver(q)
    qp_words = {qp.word(p) for p in enumerate_paths(qp)}
    for f in automorphism_generators(q):
        assert {f(a) for a in S} == S
        assert {q.word(apply_automorphism(f, p)) for p in enumerate_paths(q) if len(p) > 1 or p[0] not in S} == qp_words
        assert is_automorphism(qp, restrict_to_reduced(q, qp, f))
        for p in enumerate_paths(q):
            assert len(apply_automorphism(f, p)) == len(p)


def test_apply_automorphism():
    q = ex_quiver()
    swap = ArrowPermutation.from_dict(q, {"c": "d", "d": "c"})
    assert apply_automorphism(swap, ("c", "e")) == ("d", "e")
    assert apply_automorphism(swap, ("a", "b", "e")) == ("a", "b", "e")
    ident = ArrowPermutation.identity(q)
    for p in enumerate_paths(q):
        assert apply_automorphism(ident, p) == p


def test_swap_automorphism_ex1():
    q = ex1()
    qp = reduced_quiver(q)
    f = swap_automorphism(qp, q.arrow_by_name["a"], ("b",))
    assert f("b") == "a.b" and f("a.b") == "b"
    assert is_automorphism(qp, f)
    assert f.compose(f).is_identity


def test_swap_automorphism_ex_quiver():
    q = ex_quiver()
    qp = reduced_quiver(q)
    f = swap_automorphism(qp, q.arrow_by_name["a"], ("b", "e"))
    assert f("b") == "a.b" and f("a.b") == "b"
    assert qp.word(apply_automorphism(f, ("b", "e"))) == ("a", "b", "e")
    assert is_automorphism(qp, f)


def test_swap_automorphism_rejects_non_composable():
    q = ex_quiver()
    qp = reduced_quiver(q)
    with pytest.raises(NotComposable):
        swap_automorphism(qp, q.arrow_by_name["a"], ("c",))


@settings(max_examples=60, deadline=None)
@given(acyclic_quivers())
def test_swap_automorphisms_on_random_quivers(q):
    if quiver_length(q) < 2:
        return
    qp = reduced_quiver(q)
    for a in starting_set(q):
        arrow = q.arrow_by_name[a]
        for x in enumerate_paths(qp):
            if qp.source(x) != arrow.target:
                continue
            f = swap_automorphism(qp, arrow, x)
            assert is_automorphism(qp, f)
            assert f.compose(f).is_identity
            assert qp.word(apply_automorphism(f, x)) == arrow.word + qp.word(x)


def test_cycle_notation():
    q = Quiver.from_arrows([("a", "v1", "v2"), ("b", "v1", "v2"), ("c", "v1", "v2")])
    f = ArrowPermutation.from_dict(q, {"a": "b", "b": "c", "c": "a"})
    assert str(f) == "(a b c)"
    assert f.compose(f.inverse()).is_identity
    assert automorphism_group_order(q) == 6
