"""Finite posets, order-preserving maps, and chain enumeration.

A chain is a strictly increasing tuple of elements; the chains of a poset
are exactly the non-degenerate simplices of its nerve.  Element order is
the order in which elements were declared, and every enumeration here is
lexicographic with respect to that order, so downstream reports are
reproducible byte-for-byte.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Sequence

from .errors import (
    CycleDetected,
    DuplicateElement,
    IdentifierClash,
    NotMonotone,
    UnknownElement,
)

Element = Hashable
Chain = tuple  # strictly increasing tuple of elements


class Poset:
    """A finite poset with a precomputed order relation.

    ``elements`` fixes the canonical iteration order; ``pairs`` may be any
    generating set of relations, the reflexive-transitive closure is taken
    here.  Instances are immutable and hashable.
    """

    __slots__ = ("elements", "_index", "_leq", "_chains", "_hash")

    def __init__(self, elements: Sequence[Element], pairs: Iterable[tuple] = ()):
        elements = tuple(elements)
        seen = set()
        for e in elements:
            if e in seen:
                raise DuplicateElement(f"duplicate element {e!r}")
            seen.add(e)
        index = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        below: list[set[int]] = [set() for _ in range(n)]  # up[i] = {j : i <= j}
        for i in range(n):
            below[i].add(i)
        adj: list[set[int]] = [set() for _ in range(n)]
        for (a, b) in pairs:
            if a not in index:
                raise UnknownElement(f"unknown element {a!r}")
            if b not in index:
                raise UnknownElement(f"unknown element {b!r}")
            adj[index[a]].add(index[b])
        # transitive closure by saturation (desk-scale posets only)
        up = below
        changed = True
        while changed:
            changed = False
            for i in range(n):
                new = set()
                for j in up[i]:
                    new |= adj[j]
                grown = new - up[i]
                if grown:
                    up[i] |= grown
                    changed = True
                    for j in grown:
                        up[i] |= up[j]
        for i in range(n):
            for j in up[i]:
                if i != j and i in up[j]:
                    raise CycleDetected(
                        f"{elements[i]!r} <= {elements[j]!r} <= {elements[i]!r}"
                    )
        self.elements = elements
        self._index = index
        self._leq = tuple(frozenset(s) for s in up)
        self._chains = None
        self._hash = None

    def __len__(self):
        return len(self.elements)

    def index(self, e: Element) -> int:
        try:
            return self._index[e]
        except KeyError:
            raise UnknownElement(f"unknown element {e!r}") from None

    def leq(self, a: Element, b: Element) -> bool:
        return self.index(b) in self._leq[self.index(a)]

    def up_set(self, a: Element) -> tuple:
        return tuple(self.elements[j] for j in sorted(self._leq[self.index(a)]))

    def relation_pairs(self) -> list[tuple]:
        """All pairs (a, b) with a <= b and a != b, in canonical order."""
        out = []
        for i, a in enumerate(self.elements):
            for j in sorted(self._leq[i]):
                if j != i:
                    out.append((a, self.elements[j]))
        return out

    def cover_pairs(self) -> list[tuple]:
        """Covering relations a < b with nothing strictly between."""
        out = []
        for a, b in self.relation_pairs():
            i, j = self.index(a), self.index(b)
            if not any(
                k != i and k != j and k in self._leq[i] and j in self._leq[k]
                for k in range(len(self.elements))
            ):
                out.append((a, b))
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Poset)
            and self.elements == other.elements
            and self._leq == other._leq
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.elements, self._leq))
        return self._hash

    def __repr__(self):
        return f"Poset({list(self.elements)!r}, {self.relation_pairs()!r})"


def from_relations(elements: Sequence[Element], pairs: Iterable[tuple]) -> Poset:
    return Poset(elements, pairs)


def chains(P: Poset) -> list[Chain]:
    """All chains (strictly increasing tuples) of P, every length >= 1.

    Deterministic: lexicographic in the canonical element order.
    """
    if P._chains is not None:
        return list(P._chains)
    n = len(P.elements)
    out: list[Chain] = []

    # lexicographic DFS over index sequences
    def extend(prefix: list[int]):
        out.append(tuple(P.elements[i] for i in prefix))
        last = prefix[-1]
        for j in range(n):
            if j != last and j in P._leq[last]:
                extend(prefix + [j])

    for i in range(n):
        extend([i])
    P._chains = tuple(out)
    return out


def subchains(chain: Chain) -> list[Chain]:
    """All nonempty subchains, shortest-lex order matching chains()."""
    n = len(chain)
    out = []

    # match the lexicographic DFS order used by chains()
    def dfs(prefix: tuple, last: int):
        out.append(prefix)
        for j in range(last + 1, n):
            dfs(prefix + (chain[j],), j)

    for i in range(n):
        dfs((chain[i],), i)
    return out


def is_subchain(sub: Chain, sup: Chain) -> bool:
    return set(sub) <= set(sup)


def chain_inclusions(P: Poset) -> list[tuple[Chain, Chain]]:
    """All pairs (psi, phi) with psi a subchain of phi.

    This is the full morphism set of the posetal chain-inclusion category,
    identities included.
    """
    out = []
    for phi in chains(P):
        for psi in subchains(phi):
            out.append((psi, phi))
    return out


def cone(P: Poset, apex: Element = "-inf") -> Poset:
    """Adjoin a new bottom element below everything."""
    if apex in P._index:
        raise IdentifierClash(f"apex identifier {apex!r} already present")
    pairs = [(apex, e) for e in P.elements] + P.relation_pairs()
    return Poset((apex,) + P.elements, pairs)


def image_chain(P: Poset, phi: Sequence[Element]) -> Chain:
    """Underlying chain of a weakly increasing tuple."""
    for a, b in zip(phi, phi[1:]):
        if not P.leq(a, b):
            raise NotMonotone(f"{a!r} !<= {b!r}")
    out = []
    for p in phi:
        if not out or out[-1] != p:
            out.append(p)
    return tuple(out)


def is_weakly_increasing(P: Poset, phi: Sequence[Element]) -> bool:
    return all(P.leq(a, b) for a, b in zip(phi, phi[1:]))


class PosetMap:
    """An order-preserving map between posets."""

    __slots__ = ("source", "target", "assignment")

    def __init__(self, source: Poset, target: Poset, assignment: dict):
        for e in source.elements:
            if e not in assignment:
                raise UnknownElement(f"no image for {e!r}")
            if assignment[e] not in target._index:
                raise UnknownElement(f"image {assignment[e]!r} not in target")
        for a, b in source.relation_pairs():
            if not target.leq(assignment[a], assignment[b]):
                raise NotMonotone(
                    f"{a!r} <= {b!r} but {assignment[a]!r} !<= {assignment[b]!r}"
                )
        self.source = source
        self.target = target
        self.assignment = dict(assignment)

    def __call__(self, e: Element) -> Element:
        return self.assignment[e]

    def apply_tuple(self, tup: Sequence[Element]) -> tuple:
        return tuple(self.assignment[e] for e in tup)

    def is_isomorphism(self) -> bool:
        if len(self.source) != len(self.target):
            return False
        if len(set(self.assignment.values())) != len(self.target):
            return False
        inv = {v: k for k, v in self.assignment.items()}
        return all(
            self.source.leq(inv[a], inv[b])
            for a, b in self.target.relation_pairs()
        )

    def inverse(self) -> "PosetMap":
        if not self.is_isomorphism():
            raise NotMonotone("map is not an isomorphism")
        inv = {v: k for k, v in self.assignment.items()}
        return PosetMap(self.target, self.source, inv)

    def __eq__(self, other):
        return (
            isinstance(other, PosetMap)
            and self.source == other.source
            and self.target == other.target
            and self.assignment == other.assignment
        )

    def __repr__(self):
        return f"PosetMap({self.assignment!r})"


def identity_poset_map(P: Poset) -> PosetMap:
    return PosetMap(P, P, {e: e for e in P.elements})
