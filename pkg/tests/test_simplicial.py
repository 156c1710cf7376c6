import itertools
import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stratkit import errors
from stratkit.simplicial import (
    SMap,
    SSet,
    Term,
    boundary,
    colimit,
    degeneracy,
    enumerate_maps,
    horn,
    identity_map,
    pair_normal,
    product,
    pushout,
    standard,
    sub_inclusion,
    term_from_monotone,
    vertex_tuple,
    word_compose,
    word_insert,
)


# --- word algebra ---------------------------------------------------

@given(st.lists(st.integers(0, 8), max_size=6))
@settings(max_examples=200, deadline=None)
def test_word_compose_normalizes(letters):
    w = ()
    for a in letters:
        w = word_insert(w, a)
    assert all(x > y for x, y in zip(w, w[1:]))
    assert word_compose(w, ()) == w
    assert word_compose((), w) == w


@given(
    st.lists(st.integers(0, 6), max_size=4),
    st.lists(st.integers(0, 6), max_size=4),
    st.lists(st.integers(0, 6), max_size=4),
)
@settings(max_examples=200, deadline=None)
def test_word_compose_associative(a, b, c):
    wa, wb, wc = (tuple(sorted(set(x), reverse=True)) for x in (a, b, c))
    assert word_compose(word_compose(wa, wb), wc) == word_compose(
        wa, word_compose(wb, wc)
    )


# --- face/degeneracy rewriting --------------------------------------

def vertex_sset():
    return SSet({0: ["v"]}, {})


def edge_sset():
    # one edge with two distinct endpoints
    return SSet({0: ["x", "y"], 1: ["e"]}, {"e": [Term("y"), Term("x")]})


def test_face_of_degenerate_vertex():
    X = vertex_sset()
    t = degeneracy(Term("v"), 0)
    assert X.face(t, 1) == Term("v")
    assert X.face(t, 0) == Term("v")


def test_stored_face():
    X = edge_sset()
    assert X.face(Term("e"), 0) == Term("y")
    assert X.face(Term("e"), 1) == Term("x")


def test_face_of_s1_on_edge():
    X = edge_sset()
    t = degeneracy(Term("e"), 1)  # s_1 e
    assert X.face(t, 1) == Term("e")
    assert X.face(t, 2) == Term("e")
    assert X.face(t, 0) == Term("y", (0,))  # d_0 s_1 e = s_0 d_0 e


def test_degeneracy_normalization():
    t = degeneracy(degeneracy(Term("v"), 0), 0)  # s_0 s_0 v = s_1 s_0 v
    assert t == Term("v", (1, 0))
    g = degeneracy(Term("g"), 2)
    assert g == Term("g", (2,))


def test_di_si_identity():
    X = edge_sset()
    for t in X.terms(2):
        for i in range(3):
            assert X.face(degeneracy(t, i), i) == t


def simplicial_identity_suite(X, rng, n_samples=1000):
    """Randomized checks of all five simplicial identity families."""
    top = X.dim() + 3
    pool = []
    for n in range(top + 1):
        pool.extend((n, t) for t in X.terms(n))
    for _ in range(n_samples):
        n, t = pool[rng.randrange(len(pool))]
        if n >= 2:
            j = rng.randrange(n + 1)
            i = rng.randrange(j) if j else 0
            if i < j:
                assert X.face(X.face(t, j), i) == X.face(X.face(t, i), j - 1)
        i = rng.randrange(n + 1)
        j = rng.randrange(n + 1)
        si_sj = degeneracy(degeneracy(t, j), i if i <= j else i)
        if i <= j:
            assert si_sj == degeneracy(degeneracy(t, i), j + 1)
        if n >= 1:
            j = rng.randrange(n)
            # d_i s_j cases
            for i in range(n + 1):
                lhs = X.face(degeneracy(t, j), i)
                if i < j:
                    assert lhs == degeneracy(X.face(t, i), j - 1)
                elif i in (j, j + 1):
                    assert lhs == t
                else:
                    assert lhs == degeneracy(X.face(t, i - 1), j)


def test_simplicial_identities_randomized():
    rng = random.Random(7)
    for X in (standard(3), edge_sset(), horn(2, 1)):
        simplicial_identity_suite(X, rng)


def test_ez_normalization_idempotent():
    # inserting the letters of a normal word reproduces it
    rng = random.Random(3)
    X = standard(2)
    for n in range(5):
        for t in X.terms(n):
            w = ()
            for a in reversed(t.word):
                w = word_insert(w, a)
            assert w == t.word


# --- standard cells --------------------------------------------------

def test_standard_counts():
    X = standard(0)
    assert X.gen_count() == 1
    Y = standard(2)
    assert [len(Y.gens(d)) for d in range(3)] == [3, 3, 1]


def test_boundary_horn():
    B = boundary(2)
    assert [len(B.gens(d)) for d in range(2)] == [3, 3]
    assert B.dim() == 1
    H = horn(2, 1)
    assert [len(H.gens(d)) for d in range(2)] == [3, 2]
    assert boundary(0).is_empty()


def test_term_count_matches_enumeration():
    X = standard(2)
    for n in range(6):
        assert len(X.terms(n)) == X.term_count(n)


# --- products ---------------------------------------------------------

def test_product_shuffle_counts():
    for m, n in itertools.product(range(4), repeat=2):
        P = product(standard(m), standard(n)).sset
        assert len(P.gens(m + n)) == comb(m + n, m)


def test_product_with_point():
    X = edge_sset()
    P = product(X, standard(0)).sset
    for d in range(2):
        assert len(P.gens(d)) == len(X.gens(d))


def test_delta1_squared():
    P = product(standard(1), standard(1)).sset
    assert len(P.gens(2)) == 2
    assert len(P.gens(1)) == 5
    assert len(P.gens(0)) == 4


def test_product_projections_valid():
    pr = product(standard(1), standard(2))
    pr.proj1._validate()
    pr.proj2._validate()
    pr.sset._validate()


def test_pair_normal_roundtrip():
    X, Y = standard(1), standard(1)
    P = product(X, Y)
    for n in range(3):
        for tx in X.terms(n):
            for ty in Y.terms(n):
                t = pair_normal(X, Y, tx, ty)
                # expanding the normal form recovers the pair componentwise
                gx, gy = t.gen
                cx = Term(gx.gen, word_compose(t.word, gx.word))
                cy = Term(gy.gen, word_compose(t.word, gy.word))
                assert (cx, cy) == (tx, ty)


# --- map enumeration --------------------------------------------------

def test_yoneda():
    Y = edge_sset()
    for n in range(3):
        maps = enumerate_maps(standard(n), Y)
        assert len(maps) == len(Y.terms(n))


def test_boundary1_maps():
    maps = enumerate_maps(boundary(1), standard(1))
    assert len(maps) == 4


def test_enumerate_with_constraints():
    maps = enumerate_maps(
        boundary(1), standard(1), constraints={(0,): Term((0,))}
    )
    assert len(maps) == 2
    with pytest.raises(errors.InconsistentConstraint):
        enumerate_maps(boundary(1), standard(1), constraints={(5,): Term((0,))})


def test_map_composition_and_identity():
    X = standard(1)
    i = identity_map(X)
    maps = enumerate_maps(X, X)
    for f in maps:
        assert f.then(i) == f
        assert i.then(f) == f


def test_empty_source_has_one_map():
    assert len(enumerate_maps(boundary(0), standard(2))) == 1


# --- colimits ----------------------------------------------------------

def colimit_classes_oracle(objects, values, arrows, n):
    """Fixed-point closure of degree-n identifications (independent oracle)."""
    items = [(o, t) for o in objects for t in values[o].terms(n)]
    classes = {it: {it} for it in items}
    changed = True
    while changed:
        changed = False
        for (a, b, f) in arrows:
            for t in values[a].terms(n):
                x, y = (a, t), (b, f.apply(t))
                if classes[x] is not classes[y]:
                    merged = classes[x] | classes[y]
                    for it in merged:
                        classes[it] = merged
                    changed = True
    return {frozenset(c) for c in classes.values()}


def test_pushout_two_points():
    e = boundary(0)
    pt = standard(0)
    f = SMap(e, pt, {}, check=False)
    col = pushout(f, f)
    assert len(col.sset.gens(0)) == 2


def test_pushout_glue_endpoints():
    # collapse both endpoints of an interval to a single vertex
    b = boundary(1)
    pt = standard(0)
    to_pt = SMap(b, pt, {(0,): Term((0,)), (1,): Term((0,))})
    incl = sub_inclusion(b, standard(1))
    col = pushout(incl, to_pt)
    assert len(col.sset.gens(0)) == 1
    assert len(col.sset.gens(1)) == 1
    col.sset._validate()
    for leg in col.legs.values():
        leg._validate()


def test_colimit_matches_naive_closure():
    b = boundary(1)
    pt = standard(0)
    objects = ("A", "X", "Y")
    values = {"A": b, "X": standard(1), "Y": pt}
    arrows = [
        ("A", "X", sub_inclusion(b, standard(1))),
        ("A", "Y", SMap(b, pt, {(0,): Term((0,)), (1,): Term((0,))})),
    ]
    col = colimit(objects, values, arrows)
    top = max(values[o].dim() for o in objects)
    for n in range(top + 1):
        oracle = colimit_classes_oracle(objects, values, arrows, n)
        mine = {}
        for i, it in enumerate(col.items[n]):
            mine.setdefault(col.labels[n][i], set()).add(it)
        assert {frozenset(c) for c in mine.values()} == oracle


def test_colimit_connected_constant():
    # three objects in a row, all the same point, both arrows identities
    pt = standard(0)
    ident = identity_map(pt)
    col = colimit(("a", "b", "c"), {o: pt for o in "abc"},
                  [("a", "b", ident), ("b", "c", ident)])
    assert len(col.sset.gens(0)) == 1


def test_colimit_degenerate_class_handling():
    # collapsing an edge onto a vertex makes its class degenerate
    seg = standard(1)
    pt = standard(0)
    collapse = SMap(
        seg, pt,
        {(0,): Term((0,)), (1,): Term((0,)), (0, 1): Term((0,), (0,))},
    )
    incl_b = sub_inclusion(boundary(1), seg)
    to_pt = SMap(boundary(1), pt, {(0,): Term((0,)), (1,): Term((0,))})
    col = colimit(
        ("A", "X", "Y"),
        {"A": seg, "X": pt, "Y": seg},
        [("A", "X", collapse), ("A", "Y", identity_map(seg))],
    )
    # the edge is identified with a degenerate simplex: only one vertex left
    assert len(col.sset.gens(0)) == 1
    assert len(col.sset.gens(1) or ()) == 0


def test_vertex_tuple_and_monotone_roundtrip():
    X = standard(3)
    for n in range(4):
        for t in X.terms(n):
            assert term_from_monotone(vertex_tuple(X, t)) == t
