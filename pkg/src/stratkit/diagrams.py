"""Diagrams of simplicial sets over the chain category of a poset.

Contains the chain-indexed diagram category, the constant-on-subchains
diagrams and their pair-category tensor, degree-wise diagram colimits,
cell-complex diagrams, finite Set-valued diagrams with union-find
colimits, and the almost-filtered condition that certifies when the
canonical maps into such a colimit are injective.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from ._kernels import UnionFind
from .errors import (
    BudgetExceeded,
    InvalidAttachment,
    NotAFunctor,
)
from .filtered import (
    FilteredMap,
    FilteredSSet,
    Tensor,
    delta_inclusion,
    delta_phi,
    filtered_identity,
    tensor,
    tensor_map,
)
from .posets import Poset, chain_inclusions, chains, subchains
from .simplicial import (
    DEFAULT_BUDGET,
    EMPTY,
    Colimit,
    SMap,
    SSet,
    Term,
    boundary,
    colimit,
    colimit_induced,
    enumerate_maps,
    identity_map,
    pushout,
    standard,
    sub_inclusion,
)


def _is_subchain(sub: tuple, sup: tuple) -> bool:
    return set(sub) <= set(sup)


class Diagram:
    """A contravariant functor from chain inclusions to simplicial sets.

    ``restrictions[(sub, sup)]`` is the map values[sup] -> values[sub]
    for every subchain pair, identities included.
    """

    def __init__(self, base: Poset, values: dict, restrictions: dict, check=True):
        self.base = base
        self.values = dict(values)
        self.restrictions = dict(restrictions)
        if check:
            self.validate()

    def validate(self):
        pairs = chain_inclusions(self.base)
        for c in chains(self.base):
            if c not in self.values:
                raise NotAFunctor(f"no value at chain {c!r}")
        for (sub, sup) in pairs:
            r = self.restrictions.get((sub, sup))
            if r is None:
                raise NotAFunctor(f"no restriction for {sub!r} in {sup!r}")
            if sub == sup:
                if any(r.images[g] != Term(g) for g in r.source.dims):
                    raise NotAFunctor(f"identity restriction at {sub!r} is not trivial")
        for (sub, sup) in pairs:
            for (mid, top) in pairs:
                if mid == sup and _is_subchain(sub, mid):
                    lhs = self.restrictions[(sub, top)]
                    rhs = self.restrictions[(mid, top)].then(
                        self.restrictions[(sub, mid)]
                    )
                    if lhs.images != rhs.images:
                        raise NotAFunctor(
                            f"restrictions do not compose along {sub!r} in {mid!r} in {top!r}"
                        )

    def value(self, c: tuple) -> SSet:
        return self.values[c]

    def max_dim(self) -> int:
        return max((v.dim() for v in self.values.values()), default=-1)


def constant_diagram(base: Poset, K: SSet, phi0: tuple) -> Diagram:
    """K on the subchains of phi0, empty elsewhere, identity restrictions."""
    values = {}
    for c in chains(base):
        values[c] = K if _is_subchain(c, phi0) else EMPTY
    restrictions = {}
    for (sub, sup) in chain_inclusions(base):
        src, tgt = values[sup], values[sub]
        if src is K and tgt is K:
            restrictions[(sub, sup)] = identity_map(K)
        else:
            restrictions[(sub, sup)] = SMap(src, tgt, {} if src is EMPTY else None, check=False) \
                if src is EMPTY else None
    # src empty is the only non-K case with a map to define
    for key, r in list(restrictions.items()):
        if r is None:
            raise NotAFunctor("constant diagram restriction fell outside cases")
    return Diagram(base, values, restrictions, check=False)


# -- the pair category and the tensor with chains ----------------------


@dataclass
class PairCategory:
    """Pairs (chain, subchain) ordered by reverse inclusion in the first
    coordinate and inclusion in the second."""

    base: Poset
    objects: tuple

    def leq(self, a: tuple, b: tuple) -> bool:
        (phi1, psi1), (phi2, psi2) = a, b
        return _is_subchain(phi2, phi1) and _is_subchain(psi1, psi2)

    def covers(self) -> list[tuple]:
        out = []
        for a in self.objects:
            for b in self.objects:
                if a != b and self.leq(a, b):
                    if not any(
                        c != a and c != b and self.leq(a, c) and self.leq(c, b)
                        for c in self.objects
                    ):
                        out.append((a, b))
        return out


def pair_category(P: Poset) -> PairCategory:
    objs = []
    for phi in chains(P):
        for psi in subchains(phi):
            objs.append((phi, psi))
    return PairCategory(P, tuple(objs))


@dataclass
class PairFunctor:
    """The functor (chain, subchain) -> F(chain) (x) standard simplex."""

    diagram: Diagram
    category: PairCategory
    values: dict  # (phi, psi) -> Tensor

    def arrow(self, a: tuple, b: tuple) -> FilteredMap:
        (phi1, psi1), (phi2, psi2) = a, b
        f = self.diagram.restrictions[(phi2, phi1)]
        g = delta_inclusion(self.category.base, psi1, psi2)
        g = FilteredMap(
            self.values[a].space and delta_phi(self.category.base, psi1),
            delta_phi(self.category.base, psi2),
            g.map,
            check=False,
        )
        return tensor_map(self.values[a], self.values[b], f, g)

    def arrow_apply_pair(self, a: tuple, b: tuple, tx: Term, ty: Term):
        """Componentwise action on a (value simplex, chain simplex) pair."""
        (phi1, psi1), (phi2, psi2) = a, b
        f = self.diagram.restrictions[(phi2, phi1)]
        g = delta_inclusion(self.category.base, psi1, psi2)
        return f.apply(tx), g.map.apply(ty)


def pair_tensor(F: Diagram) -> PairFunctor:
    C = pair_category(F.base)
    values = {
        (phi, psi): tensor(F.values[phi], delta_phi(F.base, psi))
        for (phi, psi) in C.objects
    }
    return PairFunctor(F, C, values)


@dataclass
class DiagramColimit:
    space: FilteredSSet
    legs: dict  # (phi, psi) -> FilteredMap
    colimit: Colimit
    functor: PairFunctor


def diagram_colimit(F: Diagram, budget: int = DEFAULT_BUDGET) -> DiagramColimit:
    """Degree-wise union-find colimit of the pair tensor of F."""
    pf = pair_tensor(F)
    C = pf.category
    arrows = [(a, b, pf.arrow(a, b).map) for (a, b) in C.covers()]
    col = colimit(
        C.objects,
        {o: pf.values[o].body for o in C.objects},
        arrows,
        budget=budget,
    )
    phi = {}
    for g in col.sset.dims:
        n, c = g
        o, t = col.items[n][c]
        phi[g] = pf.values[o].space.phi_term(t)
    space = FilteredSSet(F.base, col.sset, phi, check=False)
    legs = {
        o: FilteredMap(pf.values[o].space, space, col.legs[o], check=False)
        for o in C.objects
    }
    return DiagramColimit(space, legs, col, pf)


# -- cell complexes ----------------------------------------------------


def cell_complex(base: Poset, cells: Sequence[tuple]) -> Diagram:
    """Iterated pushouts of constant boundary/standard-cell diagrams.

    ``cells`` lists (dimension, chain, attach) triples; ``attach`` is an
    SMap boundary(n) -> current value at the chain (None allowed when
    n = 0, where the boundary is empty).
    """
    cs = chains(base)
    incl_pairs = chain_inclusions(base)
    values: dict = {c: EMPTY for c in cs}
    restrictions: dict = {
        (sub, sup): SMap(EMPTY, EMPTY, {}, check=False) for (sub, sup) in incl_pairs
    }
    for idx, (n, phi_c, attach) in enumerate(cells):
        if phi_c not in values:
            raise InvalidAttachment(f"cell {idx}: unknown chain {phi_c!r}")
        bd, top = boundary(n), standard(n)
        if attach is None:
            attach = SMap(bd, values[phi_c], {}, check=False)
        if isinstance(attach, dict):
            attach = SMap(bd, values[phi_c], attach, check=False)
        if attach.source.dims != bd.dims:
            raise InvalidAttachment(f"cell {idx}: attaching map has wrong source")
        if attach.target is not values[phi_c]:
            if attach.target.dims != values[phi_c].dims:
                raise InvalidAttachment(
                    f"cell {idx}: attaching map targets a stale complex"
                )
        try:
            SMap(bd, values[phi_c], attach.images)
        except NotAFunctor as exc:
            raise InvalidAttachment(f"cell {idx}: {exc}") from exc
        incl = sub_inclusion(bd, top)
        cols: dict = {}
        new_values: dict = {}
        leg_old: dict = {}
        leg_cell: dict = {}
        for c in cs:
            if _is_subchain(c, phi_c):
                att_c = SMap(
                    bd,
                    values[c],
                    {g: restrictions[(c, phi_c)].apply(attach.images[g]) for g in bd.dims},
                    check=False,
                )
                col = colimit(
                    ("A", "X", "Y"),
                    {"A": bd, "X": top, "Y": values[c]},
                    [("A", "X", incl), ("A", "Y", att_c)],
                )
                cols[c] = col
                new_values[c] = col.sset
                leg_old[c] = col.legs["Y"]
                leg_cell[c] = col.legs["X"]
            else:
                new_values[c] = values[c]
                leg_old[c] = identity_map(values[c])
        new_restrictions: dict = {}
        for (sub, sup) in incl_pairs:
            old = restrictions[(sub, sup)]
            if _is_subchain(sup, phi_c):
                cocone = {
                    "A": incl.then(leg_cell[sub]),
                    "X": leg_cell[sub],
                    "Y": old.then(leg_old[sub]),
                }
                new_restrictions[(sub, sup)] = colimit_induced(
                    cols[sup], new_values[sub], cocone
                )
            elif _is_subchain(sub, phi_c):
                new_restrictions[(sub, sup)] = old.then(leg_old[sub])
            else:
                new_restrictions[(sub, sup)] = old
        values = new_values
        restrictions = new_restrictions
    return Diagram(base, values, restrictions, check=True)


# -- Set-valued diagrams ------------------------------------------------


class SetDiagram:
    """A covariant functor from a finite poset shape to finite sets.

    Elements are coded as integers internally; ``labels`` keeps the
    user-facing names.  Arrow functions are stored for every comparable
    pair of objects.
    """

    def __init__(
        self,
        objects: Sequence,
        leq_pairs: Iterable[tuple],
        values: dict,
        arrows: dict,
        check: bool = True,
    ):
        self.objects = tuple(objects)
        self._oidx = {o: i for i, o in enumerate(self.objects)}
        n = len(self.objects)
        rel = {(i, i) for i in range(n)}
        for (a, b) in leq_pairs:
            rel.add((self._oidx[a], self._oidx[b]))
        # transitive closure of the shape order
        changed = True
        while changed:
            changed = False
            for (i, j) in list(rel):
                for (k, l) in list(rel):
                    if j == k and (i, l) not in rel:
                        rel.add((i, l))
                        changed = True
        self.leq_idx = frozenset(rel)
        self.labels = {o: tuple(values[o]) for o in self.objects}
        self.sizes = [len(self.labels[o]) for o in self.objects]
        self._eidx = {
            o: {e: k for k, e in enumerate(self.labels[o])} for o in self.objects
        }
        self.arrows: dict = {}
        for (a, b), func in arrows.items():
            i, j = self._oidx[a], self._oidx[b]
            if (i, j) not in self.leq_idx:
                raise NotAFunctor(f"arrow {a!r} -> {b!r} without a relation")
            table = tuple(self._eidx[b][func[e]] for e in self.labels[a])
            self.arrows[(i, j)] = table
        for (i, j) in self.leq_idx:
            if i == j:
                self.arrows[(i, j)] = tuple(range(self.sizes[i]))
            elif (i, j) not in self.arrows:
                raise NotAFunctor(
                    f"missing arrow {self.objects[i]!r} -> {self.objects[j]!r}"
                )
        if check:
            self.validate()

    def validate(self):
        for (i, j) in self.leq_idx:
            for (k, l) in self.leq_idx:
                if j == k and (i, l) in self.leq_idx:
                    via = tuple(
                        self.arrows[(j, l)][x] for x in self.arrows[(i, j)]
                    )
                    if via != self.arrows[(i, l)]:
                        raise NotAFunctor(
                            f"arrows do not compose along "
                            f"{self.objects[i]!r} -> {self.objects[j]!r} -> {self.objects[l]!r}"
                        )

    def leq(self, a, b) -> bool:
        return (self._oidx[a], self._oidx[b]) in self.leq_idx

    def value(self, a) -> tuple:
        return self.labels[a]

    def apply(self, a, b, x):
        i, j = self._oidx[a], self._oidx[b]
        return self.labels[b][self.arrows[(i, j)][self._eidx[a][x]]]

    def all_mono(self) -> bool:
        return all(
            len(set(t)) == len(t) for t in self.arrows.values()
        )

    def total_elements(self) -> int:
        return sum(self.sizes)


@dataclass
class SetColimit:
    classes: int
    label_of: dict  # (object, element) -> class id
    class_members: dict  # class id -> tuple of (object, element)


def set_colimit(G: SetDiagram) -> SetColimit:
    """Union-find coequalizer over the disjoint union of all values."""
    offsets = []
    total = 0
    for s in G.sizes:
        offsets.append(total)
        total += s
    uf = UnionFind(total)
    for (i, j), table in G.arrows.items():
        if i == j:
            continue
        oi, oj = offsets[i], offsets[j]
        for x, y in enumerate(table):
            uf.union(oi + x, oj + y)
    labels = uf.labels()
    label_of = {}
    members: dict = {}
    for i, o in enumerate(G.objects):
        for k, e in enumerate(G.labels[o]):
            lab = labels[offsets[i] + k]
            label_of[(o, e)] = lab
            members.setdefault(lab, []).append((o, e))
    return SetColimit(
        len(members), label_of, {k: tuple(v) for k, v in members.items()}
    )


def injects_into_colimit(G: SetDiagram, d) -> bool:
    """Whether the canonical map from the value at d into the colimit is injective."""
    col = set_colimit(G)
    labs = [col.label_of[(d, e)] for e in G.labels[d]]
    return len(set(labs)) == len(labs)


# -- the almost-filtered condition ---------------------------------------


@dataclass
class AlmostFilteredReport:
    verdict: bool
    witness: dict | None
    conditional: bool
    bound: int

    def __bool__(self):
        return self.verdict


def default_zigzag_bound(G: SetDiagram) -> int:
    # any colimit identification is realized by an alternating zigzag
    # visiting each element at most once, plus at most two padding
    # entries to reach the canonical shape
    return G.total_elements() + 2


def almost_filtered(
    G: SetDiagram,
    bound: int | None = None,
    state_budget: int = 2_000_000,
) -> AlmostFilteredReport:
    """Exhaustive check of the two zigzag-closure conditions.

    Condition one ranges over all spans d1 <= d, d2 and d3 <= d2, d with
    matching elements and asks for an object e with d1, d3 <= e and
    e <= d, d2.  Condition two ranges over closed zigzags of length at
    most ``bound`` (number of entries) and asks for a single compatible
    element over some e receiving the whole interior of the zigzag.
    The first violation in canonical order is returned as the witness.
    """
    complete_bound = default_zigzag_bound(G)
    if bound is None:
        bound = complete_bound
    if bound < 1:
        raise NotAFunctor("bound must be at least 1")
    conditional = bound < complete_bound

    witness = _condition_one(G)
    if witness is not None:
        return AlmostFilteredReport(False, witness, False, bound)
    witness = _condition_two(G, bound, state_budget)
    if witness is not None:
        return AlmostFilteredReport(False, witness, False, bound)
    return AlmostFilteredReport(True, None, conditional, bound)


def _condition_one(G: SetDiagram) -> dict | None:
    n = len(G.objects)
    leq = G.leq_idx
    up = [frozenset(j for j in range(n) if (i, j) in leq) for i in range(n)]
    down = [frozenset(j for j in range(n) if (j, i) in leq) for i in range(n)]
    # preimage tables per arrow for the element search
    for d in range(n):
        for d1 in sorted(down[d]):
            for d2 in sorted(up[d1]):
                for d3 in sorted(down[d2] & down[d]):
                    if up[d1] & up[d3] & down[d] & down[d2]:
                        continue
                    # the shape has no closing object; look for elements
                    t_1d = G.arrows[(d1, d)]
                    t_12 = G.arrows[(d1, d2)]
                    t_32 = G.arrows[(d3, d2)]
                    t_3d = G.arrows[(d3, d)]
                    for x1 in range(G.sizes[d1]):
                        x = t_1d[x1]
                        x2 = t_12[x1]
                        for x3 in range(G.sizes[d3]):
                            if t_32[x3] != x2:
                                continue
                            y = t_3d[x3]
                            o = G.objects
                            lab = G.labels
                            return {
                                "condition": 1,
                                "d": o[d],
                                "d1": o[d1],
                                "d2": o[d2],
                                "d3": o[d3],
                                "x": lab[o[d]][x],
                                "x1": lab[o[d1]][x1],
                                "x2": lab[o[d2]][x2],
                                "x3": lab[o[d3]][x3],
                                "y": lab[o[d]][y],
                            }
    return None


def _condition_two(G: SetDiagram, bound: int, state_budget: int) -> dict | None:
    if bound < 7:
        return None
    max_steps = (bound - 1) // 2
    n = len(G.objects)
    leq = G.leq_idx
    up_objs = [tuple(j for j in range(n) if (i, j) in leq) for i in range(n)]
    offsets = []
    total = 0
    for s in G.sizes:
        offsets.append(total)
        total += s
    obj_of = []
    for i, s in enumerate(G.sizes):
        obj_of.extend([i] * s)
    # up[p][j]: the image pair of p in object j (None when unrelated)
    up_img: list[dict] = [dict() for _ in range(total)]
    for i in range(n):
        oi = offsets[i]
        for j in up_objs[i]:
            table = G.arrows[(i, j)]
            oj = offsets[j]
            for x in range(G.sizes[i]):
                up_img[oi + x][j] = oj + table[x]
    down: list[list] = [[] for _ in range(total)]
    for p in range(total):
        for j, q in up_img[p].items():
            if q != p or obj_of[p] != j:
                down[q].append(p)
        # p is below itself in its own object
    for p in range(total):
        if p not in down[p]:
            down[p].append(p)
    for p in range(total):
        down[p] = sorted(set(down[p]))

    comps = UnionFind(total)
    for p in range(total):
        for q in up_img[p].values():
            comps.union(p, q)
    comp_label = comps.labels()
    comp_members: dict = {}
    for p in range(total):
        comp_members.setdefault(comp_label[p], []).append(p)

    def cover(p: int) -> frozenset:
        out = set()
        for r in down[p]:
            out.update(up_img[r].values())
        return frozenset(out)

    for comp_id in sorted(comp_members):
        members = comp_members[comp_id]
        covers = {p: cover(p) for p in members}
        # cheap pass: one candidate compatible with the whole component
        common = None
        for p in members:
            common = covers[p] if common is None else common & covers[p]
            if not common:
                break
        if common:
            continue
        hit = _zigzag_search(
            G, members, covers, up_img, down, obj_of, max_steps, state_budget
        )
        if hit is not None:
            return hit
    return None


def _zigzag_search(
    G, members, covers, up_img, down, obj_of, max_steps, state_budget
):
    """Exact search for a closed zigzag whose interior admits no common
    candidate; states carry the shrinking set of viable candidates."""
    explored = 0
    for d0 in sorted({obj_of[p] for p in members}):
        start_pairs = [p for p in members if obj_of[p] == d0]
        # frontier states: (current even pair, viable set); parents for witnesses
        seen: dict = {}
        frontier = []
        parents = {}
        for q1 in members:
            p0 = up_img[q1].get(d0)
            if p0 is None:
                continue
            for j, p1 in sorted(up_img[q1].items()):
                state = (p1, covers[q1])
                key = (p1, state[1])
                if key in seen:
                    continue
                seen[key] = 1
                frontier.append((p1, state[1], 1))
                parents[(p1, state[1], 1)] = (None, p0, q1)
        while frontier:
            new_frontier = []
            for (p, W, steps) in frontier:
                if steps >= 3 and obj_of[p] == d0 and not W:
                    return _reconstruct(G, parents, (p, W, steps), obj_of)
                if steps == max_steps:
                    continue
                Wp = W & covers[p]
                for q in down[p]:
                    Wq = Wp & covers[q]
                    for j, p2 in sorted(up_img[q].items()):
                        key = (p2, Wq)
                        if key in seen:
                            continue
                        seen[key] = 1
                        explored += 1
                        if explored > state_budget:
                            raise BudgetExceeded(
                                "zigzag search exceeded the state budget"
                            )
                        st = (p2, Wq, steps + 1)
                        parents[st] = ((p, W, steps), None, q)
                        new_frontier.append(st)
            frontier = new_frontier
    return None


def _reconstruct(G, parents, state, obj_of):
    offsets = []
    total = 0
    for s in G.sizes:
        offsets.append(total)
        total += s

    def describe(p):
        i = obj_of[p]
        return (G.objects[i], G.labels[G.objects[i]][p - offsets[i]])

    entries = [describe(state[0])]
    cur = state
    while cur in parents:
        prev, p0, q = parents[cur]
        entries.append(describe(q))
        if prev is None:
            entries.append(describe(p0))
            break
        entries.append(describe(prev[0]))
        cur = prev
    entries.reverse()
    return {
        "condition": 2,
        "objects": [e[0] for e in entries],
        "elements": [e[1] for e in entries],
    }


# -- forgetting to Set ---------------------------------------------------


def forgetful_diagram(F: Diagram, degree_bound: int | None = None) -> SetDiagram:
    """All simplices of each value through a degree bound, arrows induced."""
    if degree_bound is None:
        longest = max((len(c) for c in chains(F.base)), default=1)
        degree_bound = (longest - 1) + max(F.max_dim(), 0) + 1
    objs = chains(F.base)
    values = {
        c: tuple((n, t) for n in range(degree_bound + 1) for t in F.values[c].terms(n))
        for c in objs
    }
    leq_pairs = []
    arrows = {}
    for (sub, sup) in chain_inclusions(F.base):
        # contravariant: the shape arrow goes sup -> sub
        if sub == sup:
            continue
        leq_pairs.append((sup, sub))
        r = F.restrictions[(sub, sup)]
        arrows[(sup, sub)] = {
            (n, t): (n, r.apply(t)) for (n, t) in values[sup]
        }
    return SetDiagram(objs, leq_pairs, values, arrows)


def forgetful_pair(pf: PairFunctor, degree_bound: int | None = None) -> SetDiagram:
    """Forgetful functor of the pair tensor; elements are component pairs."""
    C = pf.category
    if degree_bound is None:
        longest = max((len(c) for c in chains(C.base)), default=1)
        degree_bound = (longest - 1) + max(pf.diagram.max_dim(), 0) + 1
    values = {}
    for (phi, psi) in C.objects:
        K = pf.diagram.values[phi]
        D = delta_phi(C.base, psi).body
        row = []
        for nn in range(degree_bound + 1):
            for tx in K.terms(nn):
                for ty in D.terms(nn):
                    row.append((nn, tx, ty))
        values[(phi, psi)] = tuple(row)
    leq_pairs = []
    arrows = {}
    for a in C.objects:
        for b in C.objects:
            if a == b or not C.leq(a, b):
                continue
            leq_pairs.append((a, b))
            (phi1, psi1), (phi2, psi2) = a, b
            r = pf.diagram.restrictions[(phi2, phi1)]
            incl = delta_inclusion(C.base, psi1, psi2)
            arrows[(a, b)] = {
                (nn, tx, ty): (nn, r.apply(tx), incl.map.apply(ty))
                for (nn, tx, ty) in values[a]
            }
    return SetDiagram(C.objects, leq_pairs, values, arrows, check=False)


def forgetful(F, degree_bound: int | None = None) -> SetDiagram:
    if isinstance(F, Diagram):
        return forgetful_diagram(F, degree_bound)
    if isinstance(F, PairFunctor):
        return forgetful_pair(F, degree_bound)
    raise NotAFunctor(f"cannot forget {type(F).__name__}")
