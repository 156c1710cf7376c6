"""Filtered simplicial sets over the nerve of a poset.

A filtration is stored only on generators, as the weakly increasing
tuple of poset elements carried by the structure map to the nerve;
values on degenerate simplices are computed by duplicating entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import (
    BaseMismatch,
    BijectionFailure,
    PhiNotMonotone,
    PhiNotSimplicial,
    SquareDoesNotCommute,
)
from .posets import Poset, PosetMap, chains, identity_poset_map, is_weakly_increasing
from .simplicial import (
    DEFAULT_BUDGET,
    SMap,
    SSet,
    Term,
    Product,
    identity_map,
    iter_maps,
    pair_normal,
    product,
    product_map,
    simplex_map,
    standard,
    term_from_monotone,
    word_compose,
    word_insert,
)


def _dup(tup: tuple, j: int) -> tuple:
    return tup[: j + 1] + (tup[j],) + tup[j + 1:]


def _del(tup: tuple, i: int) -> tuple:
    return tup[:i] + tup[i + 1:]


class FilteredSSet:
    """A finite simplicial set together with a simplicial map to a nerve."""

    __slots__ = ("base", "body", "phi", "_phi_cache")

    def __init__(self, base: Poset, body: SSet, phi: dict, check: bool = True):
        self.base = base
        self.body = body
        self.phi = dict(phi)
        self._phi_cache: dict = {}
        if check:
            self.validate()

    def phi_term(self, t: Term) -> tuple:
        """Filtration tuple of an arbitrary simplex."""
        cached = self._phi_cache.get(t)
        if cached is not None:
            return cached
        tup = self.phi[t.gen]
        for j in reversed(t.word):
            tup = _dup(tup, j)
        self._phi_cache[t] = tup
        return tup

    def validate(self):
        for g, d in self.body.dims.items():
            tup = self.phi.get(g)
            if tup is None or len(tup) != d + 1:
                raise PhiNotSimplicial(f"phi of {g!r} has wrong length")
            if not is_weakly_increasing(self.base, tup):
                raise PhiNotMonotone(f"phi of {g!r} is not weakly increasing")
        for g, d in self.body.dims.items():
            if d == 0:
                continue
            tup = self.phi[g]
            for i in range(d + 1):
                if self.phi_term(self.body.face(Term(g), i)) != _del(tup, i):
                    raise PhiNotSimplicial(f"phi not simplicial at d_{i} {g!r}")

    def is_empty(self) -> bool:
        return self.body.is_empty()

    def __repr__(self):
        return f"FilteredSSet({self.body!r} over {len(self.base)} elements)"


class FilteredMap:
    """A map of filtered simplicial sets over a poset map (identity if None)."""

    __slots__ = ("source", "target", "map", "over")

    def __init__(
        self,
        source: FilteredSSet,
        target: FilteredSSet,
        smap: SMap,
        over: PosetMap | None = None,
        check: bool = True,
    ):
        self.source = source
        self.target = target
        self.map = smap
        self.over = over
        if check:
            self.validate()

    def validate(self):
        if self.over is None and self.source.base != self.target.base:
            raise BaseMismatch("filtered map needs a poset map between bases")
        for g in self.source.body.dims:
            want = self.source.phi[g]
            if self.over is not None:
                want = self.over.apply_tuple(want)
            if self.target.phi_term(self.map.images[g]) != want:
                raise SquareDoesNotCommute(f"filtration square fails at {g!r}")

    def apply(self, t: Term) -> Term:
        return self.map.apply(t)

    def then(self, other: "FilteredMap") -> "FilteredMap":
        if self.over is None and other.over is None:
            over = None
        else:
            a = self.over or identity_poset_map(self.source.base)
            b = other.over or identity_poset_map(other.source.base)
            over = PosetMap(
                a.source, b.target, {e: b(a(e)) for e in a.source.elements}
            )
        return FilteredMap(
            self.source, other.target, self.map.then(other.map), over, check=False
        )

    def __eq__(self, other):
        return (
            isinstance(other, FilteredMap)
            and self.map == other.map
            and (self.over.assignment if self.over else None)
            == (other.over.assignment if other.over else None)
        )

    def __hash__(self):
        return hash(self.map)

    def __repr__(self):
        return f"FilteredMap({self.map!r})"


def filtered_identity(X: FilteredSSet) -> FilteredMap:
    return FilteredMap(X, X, identity_map(X.body), check=False)


def delta_phi(base: Poset, tup: Sequence) -> FilteredSSet:
    """The standard simplex filtered by a weakly increasing tuple."""
    tup = tuple(tup)
    if not is_weakly_increasing(base, tup):
        raise PhiNotMonotone(f"{tup!r} is not weakly increasing")
    n = len(tup) - 1
    body = standard(n)
    phi = {g: tuple(tup[v] for v in g) for g in body.dims}
    return FilteredSSet(base, body, phi, check=False)


def nerve_filtered(P: Poset) -> FilteredSSet:
    """The nerve of P over itself: generators are chains, phi is the identity."""
    cs = chains(P)
    gens: dict[int, list] = {}
    faces = {}
    for c in cs:
        gens.setdefault(len(c) - 1, []).append(c)
        if len(c) > 1:
            faces[c] = [Term(_del(c, i)) for i in range(len(c))]
    body = SSet(gens, faces, check=False)
    return FilteredSSet(P, body, {c: c for c in cs}, check=False)


def delta_inclusion(base: Poset, sub: tuple, sup: tuple) -> FilteredMap:
    """Inclusion of standard filtered simplices along a subchain."""
    positions = []
    j = 0
    for p in sub:
        while j < len(sup) and sup[j] != p:
            j += 1
        positions.append(j)
        j += 1
    if len(positions) != len(sub):
        raise BaseMismatch(f"{sub!r} is not a subtuple of {sup!r}")
    src = delta_phi(base, sub)
    tgt = delta_phi(base, sup)
    smap = simplex_map(src.body, tgt.body, lambda v: positions[v])
    return FilteredMap(src, tgt, smap, check=False)


# -- tensor ----------------------------------------------------------


@dataclass
class Tensor:
    """K (x) X: the product body filtered through the X projection."""

    space: FilteredSSet
    product: Product

    @property
    def body(self) -> SSet:
        return self.space.body


def tensor(K: SSet, X: FilteredSSet, budget: int = DEFAULT_BUDGET) -> Tensor:
    pr = product(K, X.body, budget=budget)
    phi = {g: X.phi_term(g[1]) for g in pr.sset.dims}
    return Tensor(FilteredSSet(X.base, pr.sset, phi, check=False), pr)


def tensor_map(src: Tensor, tgt: Tensor, f: SMap, g: FilteredMap) -> FilteredMap:
    """The tensor bifunctor on a pair of maps (f on the plain factor)."""
    smap = product_map(src.product, tgt.product, f, g.map)
    return FilteredMap(src.space, tgt.space, smap, g.over, check=False)


# -- filtered map enumeration ----------------------------------------


def iter_filtered_maps(X: FilteredSSet, Y: FilteredSSet) -> Iterator[FilteredMap]:
    if X.base != Y.base:
        raise BaseMismatch("enumeration needs a common base poset")

    def candidates_ok(g, c):
        return Y.phi_term(c) == X.phi[g]

    for smap in iter_maps(X.body, Y.body, candidate_filter=candidates_ok):
        yield FilteredMap(X, Y, smap, check=False)


def enumerate_filtered_maps(X: FilteredSSet, Y: FilteredSSet) -> list[FilteredMap]:
    return list(iter_filtered_maps(X, Y))


# -- base change ------------------------------------------------------


def pushforward(alpha: PosetMap, X: FilteredSSet) -> FilteredSSet:
    """Relabel the filtration along a poset map (same body)."""
    if X.base != alpha.source:
        raise BaseMismatch("pushforward needs X based at the map source")
    phi = {g: alpha.apply_tuple(t) for g, t in X.phi.items()}
    return FilteredSSet(alpha.target, X.body, phi, check=False)


def _mixed_normal(Y: SSet, ty: Term, tup: tuple) -> Term:
    """EZ normal form of a (body simplex, lifted tuple) fiber-product pair."""
    dirs_y = set(ty.word)
    dirs_t = {j for j in range(len(tup) - 1) if tup[j] == tup[j + 1]}
    common = dirs_y & dirs_t
    if not common:
        return Term((ty, tup))
    j = max(common)
    inner = _mixed_normal(Y, Y.face(ty, j), _del(tup, j))
    return Term(inner.gen, word_insert(inner.word, j))


def pullback(alpha: PosetMap, Y: FilteredSSet, budget: int = DEFAULT_BUDGET) -> FilteredSSet:
    """Degree-wise fiber product of Y with the nerve of the map source.

    Simplices are pairs (simplex of Y, weakly increasing tuple over the
    source) whose images agree over the target nerve.
    """
    if Y.base != alpha.target:
        raise BaseMismatch("pullback needs Y based at the map target")
    P = alpha.source
    fibers: dict = {q: [] for q in alpha.target.elements}
    for p in P.elements:
        fibers[alpha(p)].append(p)
    longest = max((len(c) for c in chains(P)), default=0)
    N = Y.body.dim() + max(longest - 1, 0)
    gens: dict[int, list] = {}
    count = 0
    for n in range(N + 1):
        row = []
        for ty in Y.body.terms(n):
            target_tup = Y.phi_term(ty)
            for tup in _lift_tuples(P, fibers, target_tup):
                dirs_t = {
                    j for j in range(len(tup) - 1) if tup[j] == tup[j + 1]
                }
                if not set(ty.word) & dirs_t:
                    row.append((ty, tup))
        count += len(row)
        if count > budget:
            from .errors import BudgetExceeded

            raise BudgetExceeded(f"pullback exceeds {budget} generators")
        if row:
            gens[n] = row
    faces = {}
    for n, row in gens.items():
        if n == 0:
            continue
        for (ty, tup) in row:
            faces[(ty, tup)] = [
                _mixed_normal(Y.body, Y.body.face(ty, i), _del(tup, i))
                for i in range(n + 1)
            ]
    body = SSet(gens, faces, check=False)
    phi = {g: g[1] for g in body.dims}
    return FilteredSSet(P, body, phi, check=False)


def _lift_tuples(P: Poset, fibers: dict, target_tup: tuple) -> Iterator[tuple]:
    """Weakly increasing tuples over P mapping entrywise onto the target tuple."""
    n = len(target_tup)

    def extend(prefix: tuple) -> Iterator[tuple]:
        i = len(prefix)
        if i == n:
            yield prefix
            return
        for p in fibers.get(target_tup[i], ()):
            if not prefix or P.leq(prefix[-1], p):
                yield from extend(prefix + (p,))

    yield from extend(())


def pullback_projection(alpha: PosetMap, Y: FilteredSSet, pb: FilteredSSet) -> FilteredMap:
    """The projection from the fiber product back to Y, over alpha."""
    smap = SMap(pb.body, Y.body, {g: g[0] for g in pb.body.dims}, check=False)
    return FilteredMap(pb, Y, smap, alpha, check=False)


@dataclass
class Factorization:
    """The two factorizations of a stratified map through base change."""

    left: FilteredMap  # X -> alpha^*(Y), over the source poset
    right: FilteredMap  # alpha_*(X) -> Y, over the target poset
    pushed: FilteredSSet  # alpha_*(X)
    pulled: FilteredSSet  # alpha^*(Y)


def stratified_map(
    X: FilteredSSet, Y: FilteredSSet, smap: SMap, alpha: PosetMap
) -> FilteredMap:
    return FilteredMap(X, Y, smap, alpha)


def factorize(f: FilteredMap) -> Factorization:
    """Split a stratified map into a filtered map over each base."""
    alpha = f.over or identity_poset_map(f.source.base)
    X, Y = f.source, f.target
    pushed = pushforward(alpha, X)
    pulled = pullback(alpha, Y)
    right = FilteredMap(pushed, Y, f.map, check=False)
    left_images = {
        g: _mixed_normal(Y.body, f.map.images[g], X.phi[g])
        for g in X.body.dims
    }
    left_smap = SMap(X.body, pulled.body, left_images, check=False)
    left = FilteredMap(X, pulled, left_smap, check=False)
    return Factorization(left, right, pushed, pulled)


def unit_map(alpha: PosetMap, X: FilteredSSet) -> FilteredMap:
    """X -> alpha^* alpha_* X."""
    f = FilteredMap(X, pushforward(alpha, X), identity_map(X.body), alpha, check=False)
    return factorize(f).left


def counit_map(alpha: PosetMap, Y: FilteredSSet) -> FilteredMap:
    """alpha_* alpha^* Y -> Y (over the identity of the target)."""
    pb = pullback(alpha, Y)
    pushed = pushforward(alpha, pb)
    smap = SMap(pushed.body, Y.body, {g: g[0] for g in pushed.body.dims}, check=False)
    return FilteredMap(pushed, Y, smap, check=False)


def transpose_right(alpha: PosetMap, X: FilteredSSet, Y: FilteredSSet, h: FilteredMap) -> FilteredMap:
    """Hom(alpha_* X, Y) -> Hom(X, alpha^* Y) along the adjunction."""
    strat = FilteredMap(X, Y, h.map, alpha, check=False)
    return factorize(strat).left


def transpose_left(alpha: PosetMap, X: FilteredSSet, Y: FilteredSSet, k: FilteredMap) -> FilteredMap:
    """Hom(X, alpha^* Y) -> Hom(alpha_* X, Y) along the adjunction."""
    pushed = pushforward(alpha, X)
    imgs = {}
    for g in X.body.dims:
        t = k.map.images[g]
        ty = t.gen[0]  # project the fiber-product pair back to Y
        imgs[g] = Term(ty.gen, word_compose(t.word, ty.word))
    smap = SMap(pushed.body, Y.body, imgs, check=False)
    return FilteredMap(pushed, Y, smap, check=False)


def adjunction_check(alpha: PosetMap, X: FilteredSSet, Y: FilteredSSet) -> dict:
    """Verify the hom-set bijection Hom(alpha_* X, Y) = Hom(X, alpha^* Y)."""
    if X.base != alpha.source:
        raise BaseMismatch("X must live over the map source")
    if Y.base != alpha.target:
        raise BaseMismatch("Y must live over the map target")
    pushed = pushforward(alpha, X)
    pulled = pullback(alpha, Y)
    homs_right = enumerate_filtered_maps(pushed, Y)
    homs_left = enumerate_filtered_maps(X, pulled)
    if len(homs_right) != len(homs_left):
        raise BijectionFailure(
            f"|Hom(a_*X, Y)| = {len(homs_right)} != {len(homs_left)} = |Hom(X, a^*Y)|"
        )
    seen = set()
    for h in homs_right:
        k = transpose_right(alpha, X, Y, h)
        if k not in homs_left:
            raise BijectionFailure("transpose leaves the hom-set")
        back = transpose_left(alpha, X, Y, k)
        if back.map != h.map:
            raise BijectionFailure("adjunction round-trip is not the identity")
        seen.add(k)
    if len(seen) != len(homs_right):
        raise BijectionFailure("transpose is not injective")
    return {"right": len(homs_right), "left": len(homs_left)}
