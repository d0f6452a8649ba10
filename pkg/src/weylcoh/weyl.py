"""Weyl groups as finite groups of integer matrices on the root lattice.

Matrices act on column vectors in the basis of simple roots; column ``j`` of
a matrix is the image of the ``j``-th basis vector.  Group elements are held
internally as flat row-major tuples, which double as hash keys and give the
lexicographic order used to pick canonical representatives.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .diagrams import (
    DiagramCollection,
    FoldedDiagram,
    NodePermutation,
    OrbitKind,
    as_collection,
    gram_matrix,
    permutation_matrix,
)
from .linalg import IntMatrix, char_poly, rational_root_multiplicity

DEFAULT_MAX_ORDER = 2_000_000

Key = tuple  # flat row-major tuple of ints


class OrderBoundError(OverflowError):
    """The requested group is larger than the configured bound."""


def default_max_order() -> int:
    env = os.environ.get("WEYLCOH_MAX_ORDER")
    return int(env) if env else DEFAULT_MAX_ORDER


def classical_order(letter: str, n: int) -> int:
    letter = letter.upper()
    if letter == "A":
        return math.factorial(n + 1)
    if letter in "BC":
        return 2 ** n * math.factorial(n)
    if letter == "D":
        return 2 ** (n - 1) * math.factorial(n)
    fixed = {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600, ("F", 4): 1152, ("G", 2): 12}
    try:
        return fixed[letter, n]
    except KeyError:
        raise ValueError(f"no Weyl group of type {letter}{n}") from None


def collection_order(c: DiagramCollection | str) -> int:
    c = as_collection(c)
    return math.prod(classical_order(d.letter, d.rank) for d in c.components)


# -- raw tuple arithmetic ----------------------------------------------------

def _mul(a: Key, b: Key, n: int) -> Key:
    bcols = [b[j::n] for j in range(n)]
    return tuple(
        sum(x * y for x, y in zip(a[i * n:(i + 1) * n], col))
        for i in range(n) for col in bcols
    )


def _identity(n: int) -> Key:
    return tuple(1 if i == j else 0 for i in range(n) for j in range(n))


def _transpose(a: Key, n: int) -> Key:
    return tuple(a[i * n + j] for j in range(n) for i in range(n))


def _permute(a: Key, images: Sequence[int], n: int) -> Key:
    """``C a C^{-1}`` for the permutation matrix ``C`` with ``C e_j = e_{images[j]}``."""
    out = [0] * (n * n)
    for i in range(n):
        pi = images[i] * n
        row = a[i * n:(i + 1) * n]
        for j in range(n):
            out[pi + images[j]] = row[j]
    return tuple(out)


def reflection_rows(gram: IntMatrix, multiplicities: Sequence[int]) -> list[tuple[int, ...]]:
    """Row ``i`` of each simple reflection (all other rows are the identity)."""
    n = gram.rows
    out = []
    for i in range(n):
        m = multiplicities[i]
        row = []
        for j in range(n):
            q, r = divmod(gram[i, j], m)
            if r:
                raise ArithmeticError(
                    f"pairing {gram[i, j]} not divisible by multiplicity {m} at node {i + 1}"
                )
            row.append((1 if i == j else 0) + q)
        out.append(tuple(row))
    return out


def _reflection_key(i: int, row: Sequence[int], n: int) -> Key:
    ident = list(_identity(n))
    ident[i * n:(i + 1) * n] = row
    return tuple(ident)


def closure(generators: Sequence[Key], n: int, max_order: int | None = None) -> list[Key]:
    """Breadth-first closure of a finite matrix group, identity first."""
    ident = _identity(n)
    elements = [ident]
    seen = {ident}
    i = 0
    while i < len(elements):
        x = elements[i]
        i += 1
        for g in generators:
            y = _mul(g, x, n)
            if y not in seen:
                seen.add(y)
                elements.append(y)
                if max_order is not None and len(elements) > max_order:
                    raise OrderBoundError(f"group order exceeds bound {max_order}")
    return elements


# -- the group ---------------------------------------------------------------

class WeylGroup:
    """The full element set of a Weyl group, generated by breadth-first search.

    Use :func:`generate_weyl` for diagram collections and
    :meth:`from_gram` for an arbitrary lattice given by Gram matrix and node
    multiplicities (e.g. a folded diagram).
    """

    def __init__(self, gram: IntMatrix, multiplicities: Sequence[int],
                 collection: DiagramCollection | None = None,
                 max_order: int | None = None):
        self.gram = gram
        self.multiplicities = tuple(multiplicities)
        self.collection = collection
        self.dim = n = gram.rows
        self._rows = reflection_rows(gram, self.multiplicities)
        self._gen_keys = [_reflection_key(i, r, n) for i, r in enumerate(self._rows)]
        # left multiplication by s_i only rewrites row i
        self._left = [
            [(k, c - (1 if k == i else 0)) for k, c in enumerate(r) if c - (1 if k == i else 0)]
            for i, r in enumerate(self._rows)
        ]
        ident = _identity(n)
        keys = [ident]
        index = {ident: 0}
        pos = 0
        while pos < len(keys):
            x = keys[pos]
            pos += 1
            for i in range(n):
                y = self._left_mul(i, x)
                if y not in index:
                    index[y] = len(keys)
                    keys.append(y)
                    if max_order is not None and len(keys) > max_order:
                        raise OrderBoundError(f"Weyl group order exceeds bound {max_order}")
        self._keys = keys
        self._index = index

    @classmethod
    def from_gram(cls, gram: IntMatrix, multiplicities: Sequence[int] | None = None,
                  max_order: int | None = None) -> "WeylGroup":
        if multiplicities is None:
            multiplicities = []
            for i in range(gram.rows):
                q, r = divmod(-gram[i, i], 2)
                if r or q <= 0:
                    raise ValueError(f"diagonal entry {gram[i, i]} is not -2n for a positive n")
                multiplicities.append(q)
        return cls(gram, multiplicities, max_order=max_order)

    def _left_mul(self, i: int, x: Key) -> Key:
        n = self.dim
        row = list(x[i * n:(i + 1) * n])
        for k, c in self._left[i]:
            xk = x[k * n:(k + 1) * n]
            for j in range(n):
                row[j] += c * xk[j]
        return x[:i * n] + tuple(row) + x[(i + 1) * n:]

    # container protocol
    def __len__(self) -> int:
        return len(self._keys)

    @property
    def order(self) -> int:
        return len(self._keys)

    def __contains__(self, m) -> bool:
        return self.key_of(m) in self._index

    def __iter__(self) -> Iterator[IntMatrix]:
        n = self.dim
        return (IntMatrix(n, n, k) for k in self._keys)

    def key_of(self, m) -> Key:
        if isinstance(m, IntMatrix):
            return m.entries
        return tuple(m)

    def index_of(self, m) -> int:
        return self._index[self.key_of(m)]

    def element(self, i: int) -> IntMatrix:
        return IntMatrix(self.dim, self.dim, self._keys[i])

    @property
    def keys(self) -> list[Key]:
        return self._keys

    @property
    def generators(self) -> list[IntMatrix]:
        return [IntMatrix(self.dim, self.dim, k) for k in self._gen_keys]

    @property
    def generator_keys(self) -> list[Key]:
        return list(self._gen_keys)

    @property
    def identity_key(self) -> Key:
        return self._keys[0]

    def mul(self, a: Key, b: Key) -> Key:
        return _mul(a, b, self.dim)

    def inverse(self, a: Key) -> Key:
        # a^{-1} = a^{order - 1}; element orders are tiny
        prev, cur = self.identity_key, a
        while cur != self.identity_key:
            prev, cur = cur, _mul(cur, a, self.dim)
        return prev

    def conjugate_by_generator(self, i: int, x: Key) -> Key:
        s = self._gen_keys[i]
        return _mul(self._left_mul(i, x), s, self.dim)

    def __repr__(self):
        label = self.collection.label if self.collection is not None else f"rank {self.dim}"
        return f"WeylGroup({label}, order={self.order})"


def reflection(c: DiagramCollection | str, node: int) -> IntMatrix:
    """Matrix of the simple reflection at ``node`` (0-based global index)."""
    c = as_collection(c)
    if not 0 <= node < c.rank:
        raise IndexError(f"node {node} out of range for {c.label}")
    rows = reflection_rows(gram_matrix(c), c.multiplicities)
    return IntMatrix(c.rank, c.rank, _reflection_key(node, rows[node], c.rank))


def generate_weyl(c: DiagramCollection | str, max_order: int | None = None) -> WeylGroup:
    """Enumerate the Weyl group of a diagram collection.

    Refuses up front when the classical order exceeds ``max_order``.
    """
    c = as_collection(c)
    bound = default_max_order() if max_order is None else max_order
    expected = collection_order(c)
    if expected > bound:
        raise OrderBoundError(
            f"|W({c.label})| = {expected} exceeds the bound {bound}; raise --max-order to proceed"
        )
    w = WeylGroup(gram_matrix(c), c.multiplicities, collection=c, max_order=bound)
    if w.order != expected:
        raise ArithmeticError(f"generated {w.order} elements for {c.label}, expected {expected}")
    return w


def contains_minus_identity(w: WeylGroup) -> bool:
    n = w.dim
    return tuple(-1 if i == j else 0 for i in range(n) for j in range(n)) in w._index


def preserves_gram(w: WeylGroup, key: Key) -> bool:
    n = w.dim
    a = w.gram.entries
    return _mul(_mul(_transpose(key, n), a, n), key, n) == a


# -- conjugacy ---------------------------------------------------------------

def conjugacy_class(w: WeylGroup, x: Key | IntMatrix) -> list[Key]:
    """Conjugacy class of ``x``, by orbit expansion under the simple reflections."""
    x = w.key_of(x)
    orbit = [x]
    seen = {x}
    i = 0
    while i < len(orbit):
        y = orbit[i]
        i += 1
        for g in range(w.dim):
            z = w.conjugate_by_generator(g, y)
            if z not in seen:
                seen.add(z)
                orbit.append(z)
    return orbit


def minus_one_multiplicity(m: IntMatrix) -> int:
    return rational_root_multiplicity(char_poly(m), -1)


@dataclass(frozen=True)
class InvolutionClass:
    representative: IntMatrix
    class_size: int
    minus_one_multiplicity: int


def involutions(w: WeylGroup) -> list[Key]:
    ident = w.identity_key
    return [k for k in w.keys if k != ident and w.mul(k, k) == ident]


def involution_classes(w: WeylGroup) -> list[InvolutionClass]:
    """All conjugacy classes of elements of order two."""
    remaining = set(involutions(w))
    out = []
    for k in w.keys:
        if k not in remaining:
            continue
        cls = conjugacy_class(w, k)
        remaining.difference_update(cls)
        rep = IntMatrix(w.dim, w.dim, min(cls))
        out.append(InvolutionClass(rep, len(cls), minus_one_multiplicity(rep)))
    out.sort(key=lambda c: (c.minus_one_multiplicity, c.class_size, c.representative.entries))
    return out


# -- folding -----------------------------------------------------------------

def _product(keys: Iterable[Key], n: int) -> Key:
    acc = _identity(n)
    for k in keys:
        acc = _mul(acc, k, n)
    return acc


def folding_embed(parent: WeylGroup, subgroup: Sequence[NodePermutation],
                  folded: FoldedDiagram) -> list[IntMatrix]:
    """Images in ``parent`` of the simple reflections of the folded diagram.

    Orthogonal orbits map to the product of their reflections; paired orbits
    to the product of ``s_a s_b s_a`` over the pairs.
    """
    n = parent.dim
    if folded.parent.rank != n:
        raise ValueError("folded diagram does not come from this Weyl group")
    s = parent.generator_keys
    images = []
    for orbit, kind, pairs in zip(folded.orbits, folded.kinds, folded.pairs):
        if kind is OrbitKind.ORTHOGONAL:
            key = _product((s[i] for i in orbit), n)
        else:
            key = _product((x for a, b in pairs for x in (s[a], s[b], s[a])), n)
        images.append(key)
    for g in subgroup:
        for key in images:
            if _permute(key, g.images, n) != key:
                raise ValueError(f"folding image is not invariant under {g}")
    return [IntMatrix(n, n, k) for k in images]


def fixed_subgroup(parent: WeylGroup, subgroup: Sequence[NodePermutation]) -> list[Key]:
    """Elements ``w`` with ``C w C^{-1} = w`` for every ``C`` in the subgroup."""
    n = parent.dim
    perms = [g.images for g in subgroup if not g.is_identity()]
    return [k for k in parent.keys if all(_permute(k, p, n) == k for p in perms)]


@dataclass(frozen=True)
class FoldingReport:
    fixed_order: int
    image_order: int
    quotient_type: str | None
    quotient_order: int | None
    abstract_order: int
    images_invariant: bool
    images_in_fixed: bool

    @property
    def isomorphism(self) -> bool:
        orders = {self.fixed_order, self.image_order, self.abstract_order}
        if self.quotient_order is not None:
            orders.add(self.quotient_order)
        return len(orders) == 1 and self.images_invariant and self.images_in_fixed


def verify_folding_iso(parent: WeylGroup, subgroup: Sequence[NodePermutation],
                       folded: FoldedDiagram, max_order: int | None = None) -> FoldingReport:
    """Compare the fixed subgroup with the subgroup generated by folding images.

    The abstract Weyl group of the folded Gram matrix is generated as well;
    since the folding map is onto the group generated by the images, equal
    orders make it bijective.
    """
    n = parent.dim
    bound = default_max_order() if max_order is None else max_order
    images = [m.entries for m in folding_embed(parent, subgroup, folded)]
    fixed = fixed_subgroup(parent, subgroup)
    generated = closure(images, n, max_order=bound)
    invariant = all(_permute(k, g.images, n) == k for g in subgroup for k in images)
    fixed_set = set(fixed)
    abstract = WeylGroup.from_gram(folded.gram, max_order=bound)
    qtype = folded.classified_type
    qorder = collection_order(qtype) if qtype else None
    return FoldingReport(
        fixed_order=len(fixed),
        image_order=len(generated),
        quotient_type=qtype,
        quotient_order=qorder,
        abstract_order=abstract.order,
        images_invariant=invariant,
        images_in_fixed=all(k in fixed_set for k in generated),
    )


def permutation_key(c: DiagramCollection, p: NodePermutation) -> Key:
    return permutation_matrix(c, p).entries
