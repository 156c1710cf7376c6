import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stratkit import errors
from stratkit.posets import (
    Poset,
    PosetMap,
    chain_inclusions,
    chains,
    cone,
    from_relations,
    image_chain,
    subchains,
)


def closure_oracle(elements, pairs):
    """Naive reflexive-transitive closure by saturation."""
    rel = {(e, e) for e in elements} | set(pairs)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), list(rel)):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return rel


def chains_oracle(elements, leq):
    """DFS chain enumeration against a raw relation set."""
    out = []

    def extend(chain):
        out.append(tuple(chain))
        for e in elements:
            if e != chain[-1] and (chain[-1], e) in leq:
                extend(chain + [e])

    for e in elements:
        extend([e])
    return out


def example_114_poset():
    # 7 elements; relations a_i < b_{i-1}, a_i < b_{i+1} (mod 3), b_j < c
    elements = ["a1", "a2", "a3", "b1", "b2", "b3", "c"]
    pairs = []
    for i in (1, 2, 3):
        lo = (i - 2) % 3 + 1  # i-1 in 1..3
        hi = i % 3 + 1  # i+1 in 1..3
        pairs.append((f"a{i}", f"b{lo}"))
        pairs.append((f"a{i}", f"b{hi}"))
    for j in (1, 2, 3):
        pairs.append((f"b{j}", "c"))
    return elements, pairs


def test_two_chain():
    P = from_relations([0, 1], [(0, 1)])
    assert P.leq(0, 1) and not P.leq(1, 0)
    assert chains(P) == [(0,), (0, 1), (1,)]


def test_from_relations_errors():
    with pytest.raises(errors.DuplicateElement):
        from_relations([0, 0], [])
    with pytest.raises(errors.UnknownElement):
        from_relations([0], [(0, 1)])
    with pytest.raises(errors.CycleDetected):
        from_relations([0, 1, 2], [(0, 1), (1, 2), (2, 0)])


def test_example_114_closure():
    elements, pairs = example_114_poset()
    P = from_relations(elements, pairs)
    oracle = closure_oracle(elements, pairs)
    for a in elements:
        for b in elements:
            assert P.leq(a, b) == ((a, b) in oracle)
    # transitivity added a_i < c
    for i in (1, 2, 3):
        assert P.leq(f"a{i}", "c")


def test_remark_a3_poset():
    P = from_relations(
        ["a", "b", "c", "d"], [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")]
    )
    assert len(P.elements) == 4
    assert len(P.relation_pairs()) == 4


def test_example_114_chain_census():
    elements, pairs = example_114_poset()
    P = from_relations(elements, pairs)
    cs = chains(P)
    oracle = chains_oracle(
        elements, {(a, b) for a in elements for b in elements if P.leq(a, b)}
    )
    assert sorted(cs) == sorted(oracle)
    assert len(cs) == 25
    by_len = {}
    for c in cs:
        by_len[len(c)] = by_len.get(len(c), 0) + 1
    assert by_len == {1: 7, 2: 12, 3: 6}


def test_antichain_chains():
    P = from_relations(list(range(5)), [])
    assert len(chains(P)) == 5


def test_chains_deterministic_and_closed():
    elements, pairs = example_114_poset()
    P = from_relations(elements, pairs)
    cs = chains(P)
    assert len(set(cs)) == len(cs)
    cset = set(cs)
    for c in cs:
        for sub in subchains(c):
            assert sub in cset
    assert cs == chains(from_relations(elements, pairs))


def test_chain_inclusions_small():
    P = from_relations([0, 1], [(0, 1)])
    incl = chain_inclusions(P)
    into_top = [pair for pair in incl if pair[1] == (0, 1)]
    assert len(into_top) == 3  # {0}, {1}, and the identity
    P1 = from_relations(["x"], [])
    assert chain_inclusions(P1) == [(("x",), ("x",))]


def test_chain_inclusions_three_chain():
    P = from_relations([0, 1, 2], [(0, 1), (1, 2)])
    incl = chain_inclusions(P)
    into_top = [pair for pair in incl if pair[1] == (0, 1, 2)]
    assert len(into_top) == 2 ** 3 - 1


def test_chain_inclusions_category_axioms():
    elements, pairs = example_114_poset()
    P = from_relations(elements, pairs)
    incl = set(chain_inclusions(P))
    for c in chains(P):
        assert (c, c) in incl
    for (a, b) in incl:
        for (c, d) in incl:
            if b == c:
                assert (a, d) in incl


def test_cone():
    with pytest.raises(errors.IdentifierClash):
        cone(from_relations(["-inf"], []))
    c0 = cone(from_relations([], []))
    assert len(c0.elements) == 1
    c2 = cone(from_relations([0, 1], [(0, 1)]))
    assert len(chains(c2)) == 7  # 3-element total order


@given(st.integers(1, 5), st.data())
@settings(max_examples=30, deadline=None)
def test_cone_chain_count_identity(n, data):
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            if data.draw(st.booleans()):
                pairs.append((i, j))
    try:
        P = from_relations(list(range(n)), pairs)
    except errors.CycleDetected:
        return
    assert len(chains(cone(P))) == 2 * len(chains(P)) + 1


def test_image_chain():
    P = from_relations(["p", "q"], [("p", "q")])
    assert image_chain(P, ("p", "p", "q")) == ("p", "q")
    assert image_chain(P, ("p", "q")) == ("p", "q")
    assert image_chain(P, ("p", "p", "p")) == ("p",)
    with pytest.raises(errors.NotMonotone):
        image_chain(P, ("q", "p"))


def test_poset_map():
    P = from_relations([0, 1], [(0, 1)])
    Q = from_relations(["x"], [])
    f = PosetMap(P, Q, {0: "x", 1: "x"})
    assert f(0) == "x"
    assert not f.is_isomorphism()
    with pytest.raises(errors.NotMonotone):
        PosetMap(P, from_relations(["x", "y"], []), {0: "x", 1: "y"})
