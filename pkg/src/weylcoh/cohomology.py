"""Non-abelian H^1 of a finite group of diagram automorphisms acting on a Weyl group.

A group ``G`` of node permutations acts on the root lattice by permutation
matrices ``C_s`` and on the Weyl group by ``w -> C_s w C_s^{-1}``.  A 1-cocycle
is a map ``a: G -> W`` with ``a(st) = a(s) * s(a(t))``; equivalently
``s -> a(s) C_s`` is a homomorphism ``G -> W x| G``, which is how cocycles are
enumerated here.  Two cocycles are cohomologous when
``a'(s) = b^{-1} a(s) s(b)`` for some ``b`` in ``W``.

Triviality in ``H^1(G, GL(Lambda_Q))`` is decided by comparing characters of
the twisted and untwisted representations.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .diagrams import (
    DiagramCollection,
    NodePermutation,
    NotAnAutomorphismError,
    as_collection,
    generate_permutation_group,
    is_automorphism,
    parse_permutation,
)
from .linalg import IntMatrix
from .weyl import Key, WeylGroup, _identity, _mul, _permute, _transpose, generate_weyl

DEFAULT_MAX_GROUP = 48


class InvalidCocycleError(ValueError):
    pass


def default_max_group() -> int:
    env = os.environ.get("WEYLCOH_MAX_GROUP")
    return int(env) if env else DEFAULT_MAX_GROUP


class GroupAction:
    """A finite group of diagram automorphisms together with its Weyl group."""

    def __init__(self, collection: DiagramCollection, weyl: WeylGroup,
                 generators: Sequence[NodePermutation], max_group: int | None = None):
        n = collection.rank
        bound = default_max_group() if max_group is None else max_group
        for g in generators:
            if not is_automorphism(collection, g):
                raise NotAnAutomorphismError(f"{g} is not an automorphism of {collection.label}")
        self.collection = collection
        self.weyl = weyl
        self.dim = n
        self.generators = [g for g in generators if not g.is_identity()]
        self.elements = generate_permutation_group(self.generators, n, max_order=bound)
        self.index = {g: i for i, g in enumerate(self.elements)}
        self.table = [[self.index[g * h] for h in self.elements] for g in self.elements]
        self.generator_indices = [self.index[g] for g in self.generators]
        self.matrix_keys = [_perm_key(g.images, n) for g in self.elements]
        self._check()

    def _check(self):
        n = self.dim
        a = self.weyl.gram.entries
        for k in self.matrix_keys:
            if _mul(_mul(_transpose(k, n), a, n), k, n) != a:
                raise ValueError("permutation matrix does not preserve the Gram matrix")
        for g in self.generators:
            for s in self.weyl.generator_keys:
                if _permute(s, g.images, n) not in self.weyl:
                    raise ValueError(f"{g} does not normalise the Weyl group")

    @property
    def order(self) -> int:
        return len(self.elements)

    def matrix(self, sigma: NodePermutation | int) -> IntMatrix:
        i = sigma if isinstance(sigma, int) else self.index[sigma]
        return IntMatrix(self.dim, self.dim, self.matrix_keys[i])

    def act(self, sigma: int, w: Key) -> Key:
        """``sigma(w) = C_sigma w C_sigma^{-1}``."""
        return _permute(w, self.elements[sigma].images, self.dim)

    def conjugacy_classes(self) -> list[list[int]]:
        seen, out = set(), []
        inv = [self.index[g.inverse()] for g in self.elements]
        for x in range(self.order):
            if x in seen:
                continue
            cls = sorted({self.table[self.table[g][x]][inv[g]] for g in range(self.order)})
            seen.update(cls)
            out.append(cls)
        return out

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators) or "()"
        return f"GroupAction({self.collection.label}, <{gens}>, order={self.order})"


def _perm_key(images: Sequence[int], n: int) -> Key:
    out = [0] * (n * n)
    for j, i in enumerate(images):
        out[i * n + j] = 1
    return tuple(out)


def build_action(c: DiagramCollection | str, w: WeylGroup | None = None,
                 gens: Iterable[NodePermutation | str] = (),
                 max_group: int | None = None, max_order: int | None = None) -> GroupAction:
    c = as_collection(c)
    if w is None:
        w = generate_weyl(c, max_order=max_order)
    perms = [parse_permutation(g, c.rank) if isinstance(g, str) else g for g in gens]
    return GroupAction(c, w, perms, max_group=max_group)


@dataclass(frozen=True)
class Cocycle:
    """Values ``a(s)`` for every ``s`` in ``action.elements`` (same order)."""

    action: GroupAction = field(compare=False, repr=False)
    values: tuple[Key, ...]

    def __call__(self, sigma: NodePermutation | int) -> IntMatrix:
        i = sigma if isinstance(sigma, int) else self.action.index[sigma]
        n = self.action.dim
        return IntMatrix(n, n, self.values[i])

    @property
    def generator_values(self) -> tuple[Key, ...]:
        return tuple(self.values[i] for i in self.action.generator_indices)

    def twisted(self, i: int) -> Key:
        """``a(s) C_s``, the twisted action of the ``i``-th group element."""
        return _mul(self.values[i], self.action.matrix_keys[i], self.action.dim)

    def is_trivial(self) -> bool:
        ident = _identity(self.action.dim)
        return all(v == ident for v in self.values)


def is_cocycle(a: GroupAction, values: Sequence[Key]) -> bool:
    n = a.dim
    if values[0] != _identity(n):
        return False
    for s in range(a.order):
        for t in range(a.order):
            lhs = values[a.table[s][t]]
            rhs = _mul(values[s], a.act(s, values[t]), n)
            if lhs != rhs:
                return False
    return True


def _extend_hom(a: GroupAction, images: dict[int, Key]) -> dict[int, Key] | None:
    """Extend generator images to the subgroup they generate; ``None`` on conflict."""
    n = a.dim
    phi = {0: _identity(n)}
    queue = [0]
    pos = 0
    while pos < len(queue):
        h = queue[pos]
        pos += 1
        for gi, x in images.items():
            target = a.table[gi][h]
            val = _mul(x, phi[h], n)
            if target in phi:
                if phi[target] != val:
                    return None
            else:
                phi[target] = val
                queue.append(target)
    return phi


def _from_hom(a: GroupAction, phi: dict[int, Key]) -> Cocycle:
    n = a.dim
    values = tuple(
        _mul(phi[i], _transpose(a.matrix_keys[i], n), n) for i in range(a.order)
    )
    return Cocycle(a, values)


def _sort_key(c: Cocycle):
    return c.generator_values


def cyclic_cocycles(a: GroupAction) -> list[Cocycle]:
    """Cocycles of a cyclic group ``<g>`` of order ``m``: ``w`` with ``(w C_g)^m = 1``."""
    if len(a.generators) > 1:
        raise ValueError("action is not given by a single generator")
    if not a.generators:
        return [Cocycle(a, (_identity(a.dim),))]
    n = a.dim
    gi = a.generator_indices[0]
    cg = a.matrix_keys[gi]
    m = a.order
    ident = _identity(n)
    out = []
    for w in a.weyl.keys:
        x = _mul(w, cg, n)
        p = x
        for _ in range(m - 1):
            p = _mul(p, x, n)
        if p == ident:
            phi = _extend_hom(a, {gi: x})
            out.append(_from_hom(a, phi))
    return sorted(out, key=_sort_key)


def enumerate_cocycles(a: GroupAction, method: str = "auto") -> list[Cocycle]:
    """All 1-cocycles ``G -> W``, sorted by their values on the generators.

    ``method`` is ``"cyclic"``, ``"general"`` or ``"auto"`` (cyclic scan
    for one generator, depth-first search otherwise).
    """
    if method == "auto":
        method = "cyclic" if len(a.generators) <= 1 else "general"
    if method == "cyclic":
        return cyclic_cocycles(a)
    if method != "general":
        raise ValueError(f"unknown method {method!r}")
    n = a.dim
    gens = a.generator_indices
    keys = a.weyl.keys
    out: list[Cocycle] = []

    def search(k: int, images: dict[int, Key]):
        if k == len(gens):
            phi = _extend_hom(a, images)
            if phi is not None and len(phi) == a.order:
                out.append(_from_hom(a, phi))
            return
        gi = gens[k]
        cg = a.matrix_keys[gi]
        for w in keys:
            trial = dict(images)
            trial[gi] = _mul(w, cg, n)
            if _extend_hom(a, trial) is not None:
                search(k + 1, trial)

    search(0, {})
    return sorted(out, key=_sort_key)


@dataclass(frozen=True)
class CohomologyClassSet:
    representatives: tuple[Cocycle, ...]
    orbit_sizes: tuple[int, ...]
    trivial_index: int

    @property
    def class_count(self) -> int:
        return len(self.representatives)


def twisted_conjugate(a: GroupAction, cocycle: Cocycle, b: Key) -> Cocycle:
    """The cocycle ``s -> b^{-1} a(s) s(b)``."""
    n = a.dim
    binv = a.weyl.inverse(b)
    values = tuple(
        _mul(_mul(binv, cocycle.values[s], n), a.act(s, b), n) for s in range(a.order)
    )
    return Cocycle(a, values)


def h1_classes(a: GroupAction, cocycles: Sequence[Cocycle] | None = None) -> CohomologyClassSet:
    """Partition cocycles into twisted-conjugacy orbits.

    Each orbit is represented by its member with lexicographically smallest
    values on the generators; classes are listed in representative order.
    """
    if cocycles is None:
        cocycles = enumerate_cocycles(a)
    n = a.dim
    gens = a.generator_indices
    by_key = {c.generator_values: c for c in cocycles}
    w = a.weyl
    remaining = set(by_key)
    ident_key = tuple(_identity(n) for _ in gens)
    classes = []
    for start in sorted(by_key):
        if start not in remaining:
            continue
        # work with twisted values a(g) C_g, on which b acts by plain conjugation
        tw = tuple(_mul(v, a.matrix_keys[g], n) for v, g in zip(start, gens))
        orbit = {tw}
        frontier = [tw]
        while frontier:
            nxt = []
            for x in frontier:
                for s in range(w.dim):
                    y = tuple(w.conjugate_by_generator(s, v) for v in x)
                    if y not in orbit:
                        orbit.add(y)
                        nxt.append(y)
            frontier = nxt
        members = {
            tuple(_mul(v, _transpose(a.matrix_keys[g], n), n) for v, g in zip(x, gens))
            for x in orbit
        }
        missing = members - set(by_key)
        if missing:
            raise ValueError("cocycle list is not closed under twisted conjugation")
        remaining -= members
        classes.append((min(members), len(members), ident_key in members))
    reps = tuple(by_key[k] for k, _, _ in classes)
    sizes = tuple(s for _, s, _ in classes)
    trivial = next(i for i, (_, _, t) in enumerate(classes) if t)
    return CohomologyClassSet(reps, sizes, trivial)


def is_cohomologous(a: GroupAction, x: Cocycle, y: Cocycle) -> bool:
    """Whether ``y(s) = b^{-1} x(s) s(b)`` for some ``b`` in ``W`` (checked on generators)."""
    n = a.dim
    gens = a.generator_indices
    tx = [_mul(x.values[g], a.matrix_keys[g], n) for g in gens]
    ty = tuple(_mul(y.values[g], a.matrix_keys[g], n) for g in gens)
    for b in a.weyl.keys:
        binv = a.weyl.inverse(b)
        if tuple(_mul(_mul(binv, v, n), b, n) for v in tx) == ty:
            return True
    return False


# -- characters ---------------------------------------------------------------

@dataclass(frozen=True)
class CharacterTable:
    action: GroupAction = field(compare=False, repr=False)
    values: tuple[int, ...]

    def __getitem__(self, sigma: NodePermutation | int) -> int:
        i = sigma if isinstance(sigma, int) else self.action.index[sigma]
        return self.values[i]

    def as_dict(self) -> dict[str, int]:
        return {str(g): v for g, v in zip(self.action.elements, self.values)}


def _validate(a: GroupAction, cocycle: Cocycle):
    if cocycle.action is not a or not is_cocycle(a, cocycle.values):
        raise InvalidCocycleError("not a cocycle for this action")


def twist_character(a: GroupAction, cocycle: Cocycle | None = None) -> CharacterTable:
    """Character ``s -> trace(a(s) C_s)`` of the twisted lattice representation."""
    n = a.dim
    if cocycle is None:
        values = tuple(sum(k[i * n + i] for i in range(n)) for k in a.matrix_keys)
    else:
        _validate(a, cocycle)
        values = tuple(
            sum(t[i * n + i] for i in range(n))
            for t in (cocycle.twisted(s) for s in range(a.order))
        )
    for cls in a.conjugacy_classes():
        if len({values[i] for i in cls}) != 1:
            raise ArithmeticError("character is not a class function")
    return CharacterTable(a, values)


def is_trivial_in_GL(a: GroupAction, cocycle: Cocycle) -> bool:
    """Whether the twisted representation is isomorphic to the untwisted one over Q."""
    return twist_character(a, cocycle).values == twist_character(a).values


@dataclass(frozen=True)
class KernelReport:
    diagram: str
    action: tuple[str, ...]
    group_order: int
    weyl_order: int
    cocycle_count: int
    classes: CohomologyClassSet
    kernel: tuple[int, ...]

    @property
    def class_count(self) -> int:
        return self.classes.class_count

    @property
    def trivial_kernel(self) -> bool:
        return self.kernel == (self.classes.trivial_index,)

    @property
    def kernel_representatives(self) -> list[Cocycle]:
        return [self.classes.representatives[i] for i in self.kernel]


def h1_kernel(a: GroupAction) -> KernelReport:
    """Classes of ``H^1(G, W)`` that die in ``H^1(G, GL(Lambda_Q))``."""
    cocycles = enumerate_cocycles(a)
    classes = h1_classes(a, cocycles)
    kernel = tuple(i for i, c in enumerate(classes.representatives) if is_trivial_in_GL(a, c))
    return KernelReport(
        diagram=a.collection.label,
        action=tuple(str(g) for g in a.generators) or ("()",),
        group_order=a.order,
        weyl_order=a.weyl.order,
        cocycle_count=len(cocycles),
        classes=classes,
        kernel=kernel,
    )
