"""Finite simplicial sets in Eilenberg-Zilber normal form.

Every simplex is written uniquely as a strictly decreasing word of
degeneracy operators applied to a non-degenerate generator:
``Term(g, (2, 0))`` stands for ``s_2 s_0 g`` and has degree
``dim(g) + 2``.  Faces and degeneracies of arbitrary terms are computed
by rewriting with the simplicial identities

    d_i s_j = s_{j-1} d_i   (i < j)
    d_i s_j = id            (i = j or i = j+1)
    d_i s_j = s_j d_{i-1}   (i > j+1)
    s_i s_j = s_{j+1} s_i   (i <= j)

so equality of simplices is literal equality of normalized terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Callable, Hashable, Iterable, Iterator, NamedTuple, Sequence

from .errors import (
    BudgetExceeded,
    InconsistentConstraint,
    IndexOutOfRange,
    NotAFunctor,
)

GenId = Hashable
Word = tuple  # strictly decreasing degeneracy indices, outermost first

DEFAULT_BUDGET = 10**6


class Term(NamedTuple):
    """A simplex in EZ normal form: a degeneracy word applied to a generator."""

    gen: GenId
    word: Word = ()


def word_insert(word: Word, a: int) -> Word:
    """Normalize s_a composed outside a strictly decreasing word."""
    out = []
    i = 0
    while i < len(word) and a <= word[i]:
        out.append(word[i] + 1)
        i += 1
    out.append(a)
    out.extend(word[i:])
    return tuple(out)


def word_compose(outer: Word, inner: Word) -> Word:
    """Normalize the composite s_outer s_inner."""
    w = inner
    for a in reversed(outer):
        w = word_insert(w, a)
    return w


def degeneracy(t: Term, i: int) -> Term:
    """s_i applied to a term (target degree must admit index i)."""
    if i < 0:
        raise IndexOutOfRange(f"s_{i}")
    return Term(t.gen, word_insert(t.word, i))


class SSet:
    """A finite simplicial set presented by generators and face terms.

    ``generators`` maps each dimension to an ordered tuple of generator
    ids; ``faces`` maps each generator of dimension n >= 1 to its n+1
    faces d_0 .. d_n, each a Term over lower generators.
    """

    __slots__ = ("generators", "faces", "dims", "_terms_cache", "_dim")

    def __init__(self, generators: dict, faces: dict, check: bool = True):
        gens: dict[int, tuple] = {}
        for d, gs in generators.items():
            gs = tuple(gs)
            if gs:
                gens[int(d)] = gs
        dims: dict[GenId, int] = {}
        for d, gs in gens.items():
            for g in gs:
                if g in dims:
                    raise NotAFunctor(f"generator {g!r} declared twice")
                dims[g] = d
        self.generators = gens
        self.dims = dims
        self.faces = {g: tuple(fs) for g, fs in faces.items()}
        self._terms_cache: dict[int, tuple] = {}
        self._dim = max(gens) if gens else -1
        if check:
            self._validate()

    # -- structure --------------------------------------------------

    def _validate(self):
        for g, d in self.dims.items():
            if d == 0:
                continue
            fs = self.faces.get(g)
            if fs is None or len(fs) != d + 1:
                raise NotAFunctor(f"generator {g!r} needs {d + 1} faces")
            for t in fs:
                if t.gen not in self.dims:
                    raise NotAFunctor(f"face of {g!r} hits unknown {t.gen!r}")
                if self.degree(t) != d - 1:
                    raise NotAFunctor(f"face of {g!r} has wrong degree")
        # simplicial identity d_i d_j = d_{j-1} d_i for i < j
        for g, d in self.dims.items():
            if d < 2:
                continue
            top = Term(g)
            for j in range(d + 1):
                for i in range(j):
                    if self.face(self.face(top, j), i) != self.face(
                        self.face(top, i), j - 1
                    ):
                        raise NotAFunctor(f"d_{i} d_{j} failure at {g!r}")

    def degree(self, t: Term) -> int:
        return self.dims[t.gen] + len(t.word)

    def dim(self) -> int:
        """Largest dimension with a non-degenerate simplex (-1 if empty)."""
        return self._dim

    def is_empty(self) -> bool:
        return self._dim < 0

    def gens(self, d: int) -> tuple:
        return self.generators.get(d, ())

    def all_gens(self) -> Iterator[GenId]:
        for d in sorted(self.generators):
            yield from self.generators[d]

    def gen_count(self) -> int:
        return len(self.dims)

    # -- face computation --------------------------------------------

    def face(self, t: Term, i: int) -> Term:
        g, w = t
        deg = self.dims[g] + len(w)
        if deg < 1 or not 0 <= i <= deg:
            raise IndexOutOfRange(f"d_{i} on degree {deg}")
        out: list[int] = []
        for pos, j in enumerate(w):
            if i < j:
                out.append(j - 1)
            elif i == j or i == j + 1:
                return Term(g, word_compose(tuple(out), w[pos + 1:]))
            else:
                out.append(j)
                i -= 1
        base = self.faces[g][i]
        return Term(base.gen, word_compose(tuple(out), base.word))

    def boundary_terms(self, t: Term) -> list[Term]:
        return [self.face(t, i) for i in range(self.degree(t) + 1)]

    def terms(self, n: int) -> tuple:
        """All degree-n simplices, degenerate ones included, in canonical order."""
        if n < 0:
            return ()
        cached = self._terms_cache.get(n)
        if cached is not None:
            return cached
        out = []
        for d in sorted(self.generators):
            if d > n:
                break
            k = n - d
            for g in self.generators[d]:
                if k == 0:
                    out.append(Term(g))
                else:
                    for comb in combinations(range(n), k):
                        out.append(Term(g, tuple(reversed(comb))))
        res = tuple(out)
        self._terms_cache[n] = res
        return res

    def term_count(self, n: int) -> int:
        from math import comb

        return sum(
            comb(n, n - d) * len(gs)
            for d, gs in self.generators.items()
            if d <= n
        )

    def __repr__(self):
        sizes = {d: len(gs) for d, gs in sorted(self.generators.items())}
        return f"SSet({sizes})"


EMPTY = SSet({}, {})


class SMap:
    """A simplicial map, stored as generator images (terms of the target)."""

    __slots__ = ("source", "target", "images", "_key")

    def __init__(self, source: SSet, target: SSet, images: dict, check: bool = True):
        self.source = source
        self.target = target
        self.images = dict(images)
        self._key = None
        if check:
            self._validate()

    def _validate(self):
        for g, d in self.source.dims.items():
            t = self.images.get(g)
            if t is None:
                raise NotAFunctor(f"no image for generator {g!r}")
            if t.gen not in self.target.dims:
                raise NotAFunctor(f"image of {g!r} hits unknown {t.gen!r}")
            if self.target.degree(t) != d:
                raise NotAFunctor(f"image of {g!r} has wrong degree")
        for g, d in self.source.dims.items():
            if d == 0:
                continue
            top = Term(g)
            for i in range(d + 1):
                if self.apply(self.source.face(top, i)) != self.target.face(
                    self.images[g], i
                ):
                    raise NotAFunctor(f"map does not commute with d_{i} at {g!r}")

    def apply(self, t: Term) -> Term:
        img = self.images[t.gen]
        return Term(img.gen, word_compose(t.word, img.word))

    def then(self, other: "SMap") -> "SMap":
        """Composite: self followed by other."""
        return SMap(
            self.source,
            other.target,
            {g: other.apply(t) for g, t in self.images.items()},
            check=False,
        )

    def key(self):
        if self._key is None:
            self._key = tuple(
                (g, self.images[g]) for g in self.source.all_gens()
            )
        return self._key

    def is_mono(self) -> bool:
        """Injective in every degree: non-degenerate images, no collisions."""
        seen = set()
        for g in self.source.dims:
            t = self.images[g]
            if t.word or t in seen:
                return False
            seen.add(t)
        return True

    def is_iso(self) -> bool:
        if not self.is_mono():
            return False
        return self.source.gen_count() == self.target.gen_count()

    def __eq__(self, other):
        return isinstance(other, SMap) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"SMap({len(self.images)} generators)"


def identity_map(X: SSet) -> SMap:
    return SMap(X, X, {g: Term(g) for g in X.dims}, check=False)


# -- standard cells -------------------------------------------------


def _subset_faces(S: tuple) -> list[Term]:
    return [Term(S[:i] + S[i + 1:]) for i in range(len(S))]


def standard(n: int) -> SSet:
    """The standard n-simplex; generators are vertex subsets of {0..n}."""
    if n < 0:
        raise IndexOutOfRange(f"standard({n})")
    gens: dict[int, list] = {d: [] for d in range(n + 1)}
    faces = {}
    for d in range(n + 1):
        for S in combinations(range(n + 1), d + 1):
            gens[d].append(S)
            if d >= 1:
                faces[S] = _subset_faces(S)
    return SSet(gens, faces, check=False)


def boundary(n: int) -> SSet:
    """The boundary of the standard n-simplex; empty for n = 0."""
    if n < 0:
        raise IndexOutOfRange(f"boundary({n})")
    if n == 0:
        return EMPTY
    full = standard(n)
    gens = {d: gs for d, gs in full.generators.items() if d < n}
    faces = {g: full.faces[g] for gs in gens.values() for g in gs if g in full.faces}
    return SSet(gens, faces, check=False)


def horn(n: int, k: int) -> SSet:
    """The horn with the top cell and the k-th codimension-1 face removed."""
    if n < 1 or not 0 <= k <= n:
        raise IndexOutOfRange(f"horn({n}, {k})")
    full = standard(n)
    omitted = tuple(v for v in range(n + 1) if v != k)
    gens = {
        d: tuple(g for g in gs if g != omitted)
        for d, gs in full.generators.items()
        if d < n
    }
    faces = {
        g: full.faces[g]
        for gs in gens.values()
        for g in gs
        if g in full.faces
    }
    return SSet(gens, faces, check=False)


def sub_inclusion(A: SSet, X: SSet) -> SMap:
    """Inclusion of a generator-subcomplex (ids shared with X)."""
    return SMap(A, X, {g: Term(g) for g in A.dims}, check=False)


def vertex_tuple(X: SSet, t: Term) -> tuple:
    """Vertex sequence of a term over a complex whose generators are vertex tuples."""
    tup = t.gen
    for j in reversed(t.word):
        tup = tup[: j + 1] + (tup[j],) + tup[j + 1:]
    return tup


def term_from_monotone(tup: Sequence) -> Term:
    """EZ normal form of a weakly increasing vertex tuple over a nerve-like complex.

    The generator is the tuple of distinct entries; the word lists the
    repeat positions in decreasing order.
    """
    support = []
    word = []
    for i, v in enumerate(tup):
        if support and support[-1] == v:
            word.append(i - 1)
        else:
            support.append(v)
    return Term(tuple(support), tuple(reversed(word)))


def simplex_map(source: SSet, target: SSet, vmap: Callable) -> SMap:
    """Simplicial map between vertex-tuple complexes induced by a monotone vertex map."""
    images = {}
    for g in source.dims:
        images[g] = term_from_monotone(tuple(vmap(v) for v in g))
    return SMap(source, target, images, check=False)


# -- products -------------------------------------------------------


@dataclass
class Product:
    sset: SSet
    proj1: SMap
    proj2: SMap


def pair_normal(X: SSet, Y: SSet, tx: Term, ty: Term) -> Term:
    """EZ normal form of a product simplex given its two component terms."""
    common = set(tx.word) & set(ty.word)
    if not common:
        return Term((tx, ty))
    j = max(common)
    inner = pair_normal(X, Y, X.face(tx, j), Y.face(ty, j))
    return Term(inner.gen, word_insert(inner.word, j))


def product(X: SSet, Y: SSet, budget: int = DEFAULT_BUDGET) -> Product:
    """Product simplicial set; generators are joint-nondegenerate term pairs."""
    if X.is_empty() or Y.is_empty():
        p = EMPTY
        return Product(p, SMap(p, X, {}, check=False), SMap(p, Y, {}, check=False))
    N = X.dim() + Y.dim()
    gens: dict[int, list] = {}
    total = 0
    for n in range(N + 1):
        row = []
        for tx in X.terms(n):
            wx = set(tx.word)
            for ty in Y.terms(n):
                if not wx & set(ty.word):
                    row.append((tx, ty))
        total += len(row)
        if total > budget:
            raise BudgetExceeded(f"product exceeds {budget} generators")
        if row:
            gens[n] = row
    faces = {}
    for n, row in gens.items():
        if n == 0:
            continue
        for (tx, ty) in row:
            faces[(tx, ty)] = [
                pair_normal(X, Y, X.face(tx, i), Y.face(ty, i))
                for i in range(n + 1)
            ]
    P = SSet(gens, faces, check=False)
    pr1 = SMap(P, X, {g: g[0] for g in P.dims}, check=False)
    pr2 = SMap(P, Y, {g: g[1] for g in P.dims}, check=False)
    return Product(P, pr1, pr2)


def product_map(
    P_src: Product, P_tgt: Product, f: SMap, g: SMap
) -> SMap:
    """The map f x g between product complexes."""
    images = {}
    for (tx, ty) in P_src.sset.dims:
        images[(tx, ty)] = pair_normal(
            f.target, g.target, f.apply(tx), g.apply(ty)
        )
    return SMap(P_src.sset, P_tgt.sset, images, check=False)


# -- map enumeration ------------------------------------------------


def iter_maps(
    X: SSet,
    Y: SSet,
    constraints: dict | None = None,
    candidate_filter: Callable | None = None,
) -> Iterator[SMap]:
    """All simplicial maps X -> Y extending ``constraints``.

    Backtracking over generators by increasing dimension with
    face-compatibility pruning; deterministic order.
    """
    constraints = dict(constraints or {})
    for g, t in constraints.items():
        if g not in X.dims:
            raise InconsistentConstraint(f"unknown generator {g!r}")
        if t.gen not in Y.dims or Y.degree(t) != X.dims[g]:
            raise InconsistentConstraint(f"bad image for {g!r}")
    order = [g for d in sorted(X.generators) for g in X.generators[d]]
    images: dict = {}

    def apply(t: Term) -> Term:
        img = images[t.gen]
        return Term(img.gen, word_compose(t.word, img.word))

    def extend(k: int) -> Iterator[SMap]:
        if k == len(order):
            yield SMap(X, Y, dict(images), check=False)
            return
        g = order[k]
        d = X.dims[g]
        if d >= 1:
            want = [apply(X.face(Term(g), i)) for i in range(d + 1)]
        else:
            want = None
        if g in constraints:
            cands: Iterable[Term] = (constraints[g],)
        else:
            cands = Y.terms(d)
        for c in cands:
            if candidate_filter is not None and not candidate_filter(g, c):
                continue
            if want is not None and any(
                Y.face(c, i) != want[i] for i in range(d + 1)
            ):
                continue
            images[g] = c
            yield from extend(k + 1)
            del images[g]

    return extend(0)


def enumerate_maps(
    X: SSet,
    Y: SSet,
    constraints: dict | None = None,
    candidate_filter: Callable | None = None,
) -> list[SMap]:
    return list(iter_maps(X, Y, constraints, candidate_filter))


# -- colimits -------------------------------------------------------


@dataclass
class Colimit:
    """Degree-wise colimit of a finite diagram of simplicial sets."""

    sset: SSet
    legs: dict  # object -> SMap value(object) -> sset
    objects: tuple
    values: dict
    items: dict  # degree -> tuple of (obj, term), canonical order
    labels: dict  # degree -> tuple of class labels (min item index)

    def class_of(self, n: int, obj, t: Term):
        row = self.items[n]
        return self.labels[n][row.index((obj, t))]


def colimit(
    objects: Sequence,
    values: dict,
    arrows: Iterable[tuple],
    budget: int = DEFAULT_BUDGET,
) -> Colimit:
    """Union-find coequalizer of a finite SSet-valued diagram.

    ``arrows`` are triples (source object, target object, SMap).  Classes
    are computed degree-wise on all simplices through the top
    non-degenerate dimension, then renormalized to EZ form.
    """
    from ._kernels import UnionFind

    objects = tuple(objects)
    arrows = list(arrows)
    for (a, b, f) in arrows:
        if a not in values or b not in values:
            raise NotAFunctor(f"arrow {a!r} -> {b!r} off the declared objects")
    N = max((values[o].dim() for o in objects), default=-1)
    if N < 0:
        e = EMPTY
        return Colimit(
            e,
            {o: SMap(values[o], e, {}, check=False) for o in objects},
            objects,
            dict(values),
            {},
            {},
        )

    items: dict[int, list] = {}
    pos: dict[int, dict] = {}
    labels: dict[int, list] = {}
    total = 0
    for n in range(N + 1):
        row = []
        for o in objects:
            for t in values[o].terms(n):
                row.append((o, t))
        total += len(row)
        if total > budget:
            raise BudgetExceeded(f"colimit exceeds {budget} simplices")
        items[n] = row
        pos[n] = {it: i for i, it in enumerate(row)}
        uf = UnionFind(len(row))
        for (a, b, f) in arrows:
            for t in values[a].terms(n):
                uf.union(pos[n][(a, t)], pos[n][(b, f.apply(t))])
        labels[n] = uf.labels()

    def cls(n: int, obj, t: Term) -> int:
        return labels[n][pos[n][(obj, t)]]

    def face_cls(n: int, c: int, i: int) -> int:
        o, t = items[n][c]
        return cls(n - 1, o, values[o].face(t, i))

    def deg_cls(n: int, c: int, j: int) -> int:
        o, t = items[n][c]
        return cls(n + 1, o, degeneracy(t, j))

    # a class is degenerate in direction j iff s_j d_j fixes it
    nondeg: dict[int, list] = {}
    dirs: dict[tuple, list] = {}
    for n in range(N + 1):
        keep = []
        for c in sorted(set(labels[n])):
            ds = [
                j
                for j in range(n)
                if deg_cls(n - 1, face_cls(n, c, j), j) == c
            ]
            dirs[(n, c)] = ds
            if not ds:
                keep.append(c)
        nondeg[n] = keep

    def normal_form(n: int, c: int) -> Term:
        ds = dirs[(n, c)]
        if not ds:
            return Term((n, c))
        j = max(ds)
        inner = normal_form(n - 1, face_cls(n, c, j))
        return Term(inner.gen, word_insert(inner.word, j))

    gens = {n: [(n, c) for c in cs] for n, cs in nondeg.items() if cs}
    faces = {}
    for n, cs in nondeg.items():
        if n == 0:
            continue
        for c in cs:
            faces[(n, c)] = [
                normal_form(n - 1, face_cls(n, c, i)) for i in range(n + 1)
            ]
    result = SSet(gens, faces, check=False)
    legs = {}
    for o in objects:
        imgs = {g: normal_form(d, cls(d, o, Term(g))) for g, d in values[o].dims.items()}
        legs[o] = SMap(values[o], result, imgs, check=False)
    return Colimit(
        result,
        legs,
        objects,
        dict(values),
        {n: tuple(row) for n, row in items.items()},
        {n: tuple(labels[n]) for n in items},
    )


def pushout(f: SMap, g: SMap, budget: int = DEFAULT_BUDGET) -> Colimit:
    """Pushout of X <- A -> Y; objects are labelled 'A', 'X', 'Y'."""
    if f.source is not g.source:
        if f.source.dims != g.source.dims:
            raise NotAFunctor("pushout legs must share their source")
    return colimit(
        ("A", "X", "Y"),
        {"A": f.source, "X": f.target, "Y": g.target},
        [("A", "X", f), ("A", "Y", g)],
        budget=budget,
    )


def colimit_induced(col: Colimit, target: SSet, cocone: dict) -> SMap:
    """Map out of a colimit determined by a cocone of maps into ``target``.

    Class labels are minimal item indices, so ``items[n][c]`` is the
    canonical representative of class ``c``.
    """
    images = {}
    for g in col.sset.dims:
        n, c = g
        o, t = col.items[n][c]
        images[g] = cocone[o].apply(t)
    return SMap(col.sset, target, images, check=False)
