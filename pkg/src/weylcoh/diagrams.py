"""Dynkin diagrams with node multiplicities, their Gram matrices and automorphisms.

Node orderings are fixed as follows (1-based, as printed by the CLI)::

    A_n   1 - 2 - ... - n

    B_n   1 - 2 - ... - (n-1) = n        multiplicities (1, ..., 1, 2)
    C_n   1 = 2 = ... = (n-1) - n        multiplicities (2, ..., 2, 1)

    D_n   1 - 2 - ... - (n-2) - (n-1)
                          |
                          n

    E_n           2                       (n = 6, 7, 8)
                  |
          1 - 3 - 4 - 5 - 6 [- 7 [- 8]]

    F_4   1 - 2 - 3 - 4                  multiplicities (1, 1, 2, 2)
    G_2   1 - 2                          multiplicities (1, 3)

The pairing uses the geometric (negative definite) sign convention:
``E_i.E_i = -2 n_i``, ``E_i.E_j = max(n_i, n_j)`` on an edge and ``0``
otherwise.  The non-simply-laced multiplicities above are the ones produced
by folding ``D_{n+1}``, ``A_{2n-1}``, ``E_6`` and ``D_4`` respectively, so
every orbit-sum lattice of an ADE folding is again one of these diagrams.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Sequence

from .linalg import IntMatrix, RatMatrix, mat_inverse, mat_mul, permutation_matrix_from_images

TYPE_LETTERS = "ABCDEFG"
_TOKEN = re.compile(r"^\s*([A-Ga-g])\s*(\d+)\s*$")


class DiagramSpecError(ValueError):
    """Raised for malformed diagram or permutation text."""


class NotAnAutomorphismError(ValueError):
    pass


class FoldingError(ValueError):
    pass


@dataclass(frozen=True)
class DynkinDiagram:
    """One connected Dynkin diagram; nodes are 0-based internally."""

    letter: str
    rank: int
    multiplicities: tuple[int, ...]
    edges: frozenset[frozenset[int]]

    @property
    def label(self) -> str:
        return f"{self.letter}{self.rank}"

    @property
    def is_simply_laced(self) -> bool:
        return self.letter in "ADE"

    def adjacent(self, i: int, j: int) -> bool:
        return frozenset((i, j)) in self.edges

    def neighbours(self, i: int) -> list[int]:
        return sorted(j for e in self.edges if i in e for j in e if j != i)


def _chain(n: int) -> set[frozenset[int]]:
    return {frozenset((i, i + 1)) for i in range(n - 1)}


def _check_rank(letter: str, n: int):
    ok = {
        "A": n >= 1,
        "B": n >= 2,
        "C": n >= 2,
        "D": n >= 4,
        "E": n in (6, 7, 8),
        "F": n == 4,
        "G": n == 2,
    }[letter]
    if not ok:
        raise DiagramSpecError(f"invalid rank {n} for type {letter}")


def dynkin_diagram(letter: str, n: int) -> DynkinDiagram:
    letter = letter.upper()
    if letter not in TYPE_LETTERS:
        raise DiagramSpecError(f"unknown Dynkin type {letter!r}")
    _check_rank(letter, n)
    mult = [1] * n
    if letter in "ABCFG":
        edges = _chain(n)
    elif letter == "D":
        edges = _chain(n - 1) | {frozenset((n - 3, n - 1))}
    else:
        # Bourbaki: 1-3-4-5-..., 2 attached to 4
        edges = {frozenset((0, 2)), frozenset((1, 3))} | {frozenset((i, i + 1)) for i in range(2, n - 1)}
    if letter == "B":
        mult[-1] = 2
    elif letter == "C":
        mult = [2] * (n - 1) + [1]
    elif letter == "F":
        mult = [1, 1, 2, 2]
    elif letter == "G":
        mult = [1, 3]
    return DynkinDiagram(letter, n, tuple(mult), frozenset(edges))


@dataclass(frozen=True)
class DiagramCollection:
    """Disjoint union of Dynkin diagrams with contiguous global node indices."""

    components: tuple[DynkinDiagram, ...]

    @property
    def rank(self) -> int:
        return sum(d.rank for d in self.components)

    @property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for d in self.components:
            out.append(acc)
            acc += d.rank
        return tuple(out)

    @property
    def label(self) -> str:
        return "+".join(d.label for d in self.components)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(m for d in self.components for m in d.multiplicities)

    @property
    def edges(self) -> frozenset[frozenset[int]]:
        out = set()
        for d, off in zip(self.components, self.offsets):
            out |= {frozenset(i + off for i in e) for e in d.edges}
        return frozenset(out)

    def locate(self, node: int) -> tuple[int, int]:
        """Map a global 0-based node to ``(component index, local node)``."""
        for k, (d, off) in enumerate(zip(self.components, self.offsets)):
            if off <= node < off + d.rank:
                return k, node - off
        raise IndexError(node)

    def __str__(self):
        return self.label


def parse_diagram_spec(text: str) -> DiagramCollection:
    """Parse ``"D4"``, ``"A3+A1+A1"`` and the like."""
    if not text or not text.strip():
        raise DiagramSpecError("empty diagram spec")
    comps = []
    for token in text.split("+"):
        m = _TOKEN.match(token)
        if not m:
            raise DiagramSpecError(f"cannot parse diagram token {token!r}")
        comps.append(dynkin_diagram(m.group(1), int(m.group(2))))
    return DiagramCollection(tuple(comps))


def as_collection(c: DiagramCollection | DynkinDiagram | str) -> DiagramCollection:
    if isinstance(c, str):
        return parse_diagram_spec(c)
    if isinstance(c, DynkinDiagram):
        return DiagramCollection((c,))
    return c


def gram_matrix(c: DiagramCollection | DynkinDiagram | str) -> IntMatrix:
    """Negative-definite intersection matrix of the root lattice."""
    c = as_collection(c)
    n = c.rank
    mult = c.multiplicities
    entries = [0] * (n * n)
    for i in range(n):
        entries[i * n + i] = -2 * mult[i]
    for e in c.edges:
        i, j = sorted(e)
        entries[i * n + j] = entries[j * n + i] = max(mult[i], mult[j])
    return IntMatrix(n, n, entries)


# -- permutations -----------------------------------------------------------

@dataclass(frozen=True, order=True)
class NodePermutation:
    """Permutation of global nodes; ``images[j]`` is the image of node ``j`` (0-based)."""

    images: tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> "NodePermutation":
        return cls(tuple(range(n)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, j: int) -> int:
        return self.images[j]

    def __mul__(self, other: "NodePermutation") -> "NodePermutation":
        # (p * q)(j) = p(q(j))
        return NodePermutation(tuple(self.images[k] for k in other.images))

    def inverse(self) -> "NodePermutation":
        inv = [0] * len(self.images)
        for j, i in enumerate(self.images):
            inv[i] = j
        return NodePermutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for j, i in enumerate(self.images))

    def order(self) -> int:
        k, p = 1, self
        while not p.is_identity():
            p, k = p * self, k + 1
        return k

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(len(self.images)):
            if start in seen:
                continue
            cyc, j = [], start
            while j not in seen:
                seen.add(j)
                cyc.append(j)
                j = self.images[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(j + 1) for j in c) + ")" for c in cyc)


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int) -> NodePermutation:
    """Parse disjoint-cycle notation on 1-based nodes, e.g. ``"(1 3 4)"``, ``"()"``."""
    stripped = text.strip()
    if not stripped:
        raise DiagramSpecError("empty permutation")
    if _CYCLE.sub("", stripped).strip():
        raise DiagramSpecError(f"cannot parse permutation {text!r}")
    images = list(range(degree))
    used: set[int] = set()
    for body in _CYCLE.findall(stripped):
        parts = body.replace(",", " ").split()
        try:
            nodes = [int(x) - 1 for x in parts]
        except ValueError:
            raise DiagramSpecError(f"non-integer node in {text!r}") from None
        for j in nodes:
            if not 0 <= j < degree:
                raise DiagramSpecError(f"node {j + 1} out of range 1..{degree}")
            if j in used:
                raise DiagramSpecError(f"cycles in {text!r} are not disjoint")
            used.add(j)
        for a, b in zip(nodes, nodes[1:] + nodes[:1]):
            images[a] = b
    return NodePermutation(tuple(images))


def is_automorphism(c: DiagramCollection, p: NodePermutation) -> bool:
    if p.degree != c.rank:
        return False
    mult = c.multiplicities
    if any(mult[p(j)] != mult[j] for j in range(c.rank)):
        return False
    edges = c.edges
    return {frozenset(p(i) for i in e) for e in edges} == edges


def diagram_automorphisms(c: DiagramCollection | str) -> list[NodePermutation]:
    """All node permutations preserving edges and multiplicities, sorted, identity first."""
    c = as_collection(c)
    n = c.rank
    mult = c.multiplicities
    adj = [set() for _ in range(n)]
    for e in c.edges:
        i, j = tuple(e)
        adj[i].add(j)
        adj[j].add(i)
    found: list[NodePermutation] = []
    images = [-1] * n
    used = [False] * n

    def extend(k: int):
        if k == n:
            found.append(NodePermutation(tuple(images)))
            return
        for t in range(n):
            if used[t] or mult[t] != mult[k] or len(adj[t]) != len(adj[k]):
                continue
            if any((images[j] in adj[t]) != (j in adj[k]) for j in range(k)):
                continue
            images[k], used[t] = t, True
            extend(k + 1)
            images[k], used[t] = -1, False

    extend(0)
    return sorted(found)


def permutation_matrix(c: DiagramCollection, p: NodePermutation) -> IntMatrix:
    """Matrix ``C`` with column ``j`` equal to the basis vector of ``p(j)``."""
    c = as_collection(c)
    if not is_automorphism(c, p):
        raise NotAnAutomorphismError(f"{p} is not an automorphism of {c.label}")
    return permutation_matrix_from_images(p.images)


def generate_permutation_group(gens: Iterable[NodePermutation], degree: int,
                               max_order: int | None = None) -> list[NodePermutation]:
    """Closure of ``gens`` under composition, in breadth-first order from the identity."""
    gens = [g for g in gens if not g.is_identity()]
    ident = NodePermutation.identity(degree)
    elements = [ident]
    seen = {ident}
    i = 0
    while i < len(elements):
        x = elements[i]
        i += 1
        for g in gens:
            y = g * x
            if y not in seen:
                seen.add(y)
                elements.append(y)
                if max_order is not None and len(elements) > max_order:
                    raise OverflowError(f"permutation group exceeds bound {max_order}")
    return elements


# -- integrality of (C - I) A^-1 ---------------------------------------------

@dataclass(frozen=True)
class IntegralityReport:
    diagram: str
    permutation: str
    matrix: RatMatrix
    all_integral: bool
    witness: tuple[int, int, Fraction] | None
    non_integral_entries: tuple[tuple[int, int, Fraction], ...] = field(default=())


def dynkaut_integrality(d: DynkinDiagram | DiagramCollection | str,
                        p: NodePermutation) -> IntegralityReport:
    """Compute ``(C - I) A^{-1}`` for an automorphism of an ADE diagram.

    The witness is the first non-integral entry in row-major order; positions
    are 1-based.
    """
    c = as_collection(d)
    if len(c.components) != 1:
        raise ValueError("expected a single connected diagram")
    if not c.components[0].is_simply_laced:
        raise ValueError(f"{c.label} is not of ADE type")
    a = gram_matrix(c)
    cm = permutation_matrix(c, p)
    m = (cm - IntMatrix.identity(c.rank)) @ mat_inverse(a)
    bad = tuple(
        (i + 1, j + 1, m[i, j])
        for i in range(m.rows) for j in range(m.cols)
        if m[i, j].denominator != 1
    )
    return IntegralityReport(
        diagram=c.label,
        permutation=str(p),
        matrix=m,
        all_integral=not bad,
        witness=bad[0] if bad else None,
        non_integral_entries=bad,
    )


# -- folding ----------------------------------------------------------------

class OrbitKind(str, Enum):
    ORTHOGONAL = "orthogonal"
    PAIRED = "paired"


@dataclass(frozen=True)
class FoldedDiagram:
    parent: DiagramCollection
    orbits: tuple[tuple[int, ...], ...]
    kinds: tuple[OrbitKind, ...]
    pairs: tuple[tuple[tuple[int, int], ...], ...]
    basis: IntMatrix
    gram: IntMatrix
    classified_type: str | None

    @property
    def rank(self) -> int:
        return len(self.orbits)

    def basis_vector(self, k: int) -> tuple[int, ...]:
        return self.basis.column(k)


def _orbits(n: int, group: Sequence[NodePermutation]) -> list[tuple[int, ...]]:
    seen, out = set(), []
    for j in range(n):
        if j in seen:
            continue
        orb = sorted({g(j) for g in group} | {j})
        seen.update(orb)
        out.append(tuple(orb))
    return out


def _classify_orbit(orbit: Sequence[int], a: IntMatrix):
    off = [(i, j, a[i, j]) for x, i in enumerate(orbit) for j in orbit[x + 1:] if a[i, j] != 0]
    if not off:
        return OrbitKind.ORTHOGONAL, ()
    partner: dict[int, int] = {}
    for i, j, v in off:
        if v != 1 or i in partner or j in partner:
            raise FoldingError(f"orbit {[k + 1 for k in orbit]} is neither orthogonal nor paired")
        partner[i], partner[j] = j, i
    if len(partner) != len(orbit):
        raise FoldingError(f"orbit {[k + 1 for k in orbit]} is neither orthogonal nor paired")
    pairs = tuple(sorted((i, j) for i, j in partner.items() if i < j))
    return OrbitKind.PAIRED, pairs


def fold(c: DiagramCollection | str, subgroup: Sequence[NodePermutation]) -> FoldedDiagram:
    """Quotient of ``c`` by a group of automorphisms, as an orbit-sum lattice."""
    c = as_collection(c)
    n = c.rank
    group = list(subgroup) or [NodePermutation.identity(n)]
    for g in group:
        if not is_automorphism(c, g):
            raise NotAnAutomorphismError(f"{g} is not an automorphism of {c.label}")
    gset = set(group)
    if any(g * h not in gset for g in group for h in group):
        raise FoldingError("subgroup is not closed under composition")
    a = gram_matrix(c)
    orbits = _orbits(n, group)
    kinds, pairs = [], []
    for orb in orbits:
        kind, pr = _classify_orbit(orb, a)
        kinds.append(kind)
        pairs.append(pr)
    k = len(orbits)
    basis = IntMatrix(n, k, [1 if i in orbits[col] else 0 for i in range(n) for col in range(k)])
    gram = mat_mul(mat_mul(basis.T, a), basis)
    return FoldedDiagram(
        parent=c,
        orbits=tuple(orbits),
        kinds=tuple(kinds),
        pairs=tuple(pairs),
        basis=basis,
        gram=gram,
        classified_type=classify_gram(gram),
    )


# -- recognising a Gram matrix ----------------------------------------------

def _components_of_gram(g: IntMatrix) -> list[list[int]]:
    n = g.rows
    seen, comps = set(), []
    for s in range(n):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j not in seen and g[i, j] != 0:
                    seen.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def _candidate_types(rank: int) -> list[DynkinDiagram]:
    out = []
    # C before B: B_2 and C_2 coincide and the A_{2n} quotient is reported as C_n
    for letter in "ACBDEFG":
        try:
            out.append(dynkin_diagram(letter, rank))
        except DiagramSpecError:
            pass
    return out


def _isomorphic(g: IntMatrix, h: IntMatrix) -> bool:
    n = g.rows
    if n != h.rows:
        return False
    if sorted(g[i, i] for i in range(n)) != sorted(h[i, i] for i in range(n)):
        return False
    images = [-1] * n
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        for t in range(n):
            if used[t] or h[t, t] != g[k, k]:
                continue
            if any(h[images[j], t] != g[j, k] for j in range(k)):
                continue
            images[k], used[t] = t, True
            if extend(k + 1):
                return True
            images[k], used[t] = -1, False
        return False

    return extend(0)


def _principal(g: IntMatrix, idx: Sequence[int]) -> IntMatrix:
    return IntMatrix(len(idx), len(idx), [g[i, j] for i in idx for j in idx])


def _primitive(g: IntMatrix) -> IntMatrix:
    k = math.gcd(*g.entries) or 1
    return IntMatrix(g.rows, g.cols, [e // k for e in g.entries])


def classify_gram(g: IntMatrix) -> str | None:
    """Name the diagram collection whose Gram matrix is ``g`` up to reordering, if any.

    Each component is compared up to a positive integer scale, so orbit sums of
    length two in a disjoint union still classify.
    """
    labels = []
    for comp in _components_of_gram(g):
        sub = _primitive(_principal(g, comp))
        for d in _candidate_types(len(comp)):
            if _isomorphic(sub, _primitive(gram_matrix(d))):
                labels.append(d.label)
                break
        else:
            return None
    return "+".join(labels)


def brute_force_automorphisms(c: DiagramCollection | str) -> list[NodePermutation]:
    """Reference enumeration over all ``n!`` permutations (small ranks only)."""
    c = as_collection(c)
    return sorted(
        p for p in (NodePermutation(t) for t in permutations(range(c.rank)))
        if is_automorphism(c, p)
    )
