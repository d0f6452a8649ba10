import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weylcoh.cohomology import (
    Cocycle,
    InvalidCocycleError,
    build_action,
    enumerate_cocycles,
    h1_classes,
    h1_kernel,
    is_cocycle,
    is_cohomologous,
    is_trivial_in_GL,
    twist_character,
    twisted_conjugate,
)
from weylcoh.diagrams import NotAnAutomorphismError, parse_permutation
from weylcoh.linalg import IntMatrix
from weylcoh.weyl import _mul

from conftest import G_ROT, W_REF

CASES = [
    ("A2", ["(1 2)"]),
    ("A3", ["(1 3)"]),
    ("D4", ["(1 3 4)"]),
    ("D4", ["(3 4)"]),
    ("A1+A1", ["(1 2)"]),
    ("A2+A2", ["(1 3)(2 4)"]),
    ("A2+A2", ["(1 2)", "(1 3)(2 4)"]),
    ("D4", ["(1 3 4)", "(3 4)"]),
]


@pytest.fixture(scope="module")
def action_cache(weyl_cache):
    cache = {}

    def get(spec, gens):
        key = (spec, tuple(gens))
        if key not in cache:
            a = build_action(spec, weyl_cache(spec), gens)
            cache[key] = (a, enumerate_cocycles(a))
        return cache[key]

    return get


# -- actions ---------------------------------------------------------------------

def test_build_action_d4_rotation(weyl_cache):
    a = build_action("D4", weyl_cache("D4"), ["(1 3 4)"])
    assert a.order == 3
    assert a.matrix(parse_permutation("(1 3 4)", 4)) == G_ROT


def test_build_action_drops_identity(weyl_cache):
    a = build_action("A2", weyl_cache("A2"), ["()"])
    assert a.order == 1 and a.generators == []


def test_build_action_rejects_non_automorphism(weyl_cache):
    with pytest.raises(NotAnAutomorphismError):
        build_action("A3", weyl_cache("A3"), ["(1 2)"])


def test_build_action_group_bound(weyl_cache):
    with pytest.raises(OverflowError):
        build_action("D4", weyl_cache("D4"), ["(1 3 4)", "(3 4)"], max_group=4)


def test_action_preserves_weyl(weyl_cache):
    a = build_action("D4", weyl_cache("D4"), ["(1 3 4)", "(3 4)"])
    for s in range(a.order):
        assert all(a.act(s, k) in a.weyl for k in a.weyl.keys[:40])


# -- cocycle enumeration ------------------------------------------------------

@pytest.mark.parametrize("spec,gens,count", [
    ("A2", ["(1 2)"], 4),
    ("A3", ["(1 3)"], 10),
    ("D4", ["(1 3 4)"], 24),
    ("D4", ["(3 4)"], 32),
    ("A1+A1", ["(1 2)"], 2),
    ("A2+A2", ["(1 3)(2 4)"], 6),
    ("A2+A2", ["(1 2)", "(1 3)(2 4)"], 60),
    ("D4", ["(1 3 4)", "(3 4)"], 224),
])
def test_cocycle_counts(spec, gens, count, action_cache):
    _, cocycles = action_cache(spec, gens)
    assert len(cocycles) == count


def test_trivial_group_has_one_cocycle(weyl_cache):
    a = build_action("A3", weyl_cache("A3"), [])
    (c,) = enumerate_cocycles(a)
    assert c.is_trivial()
    assert h1_kernel(a).trivial_kernel


@pytest.mark.parametrize("spec,gens", [c for c in CASES if len(c[1]) == 1])
def test_cyclic_and_general_agree(spec, gens, action_cache):
    a, cocycles = action_cache(spec, gens)
    assert enumerate_cocycles(a, method="general") == cocycles


def test_unknown_method(action_cache):
    a, _ = action_cache("A2", ["(1 2)"])
    with pytest.raises(ValueError):
        enumerate_cocycles(a, method="nope")


@pytest.mark.parametrize("spec,gens", CASES)
def test_cocycle_identity_exhaustive(spec, gens, action_cache):
    a, cocycles = action_cache(spec, gens)
    n = a.dim
    for c in cocycles:
        for s in range(a.order):
            for t in range(a.order):
                assert c.values[a.table[s][t]] == _mul(c.values[s], a.act(s, c.values[t]), n)
        assert all(v in a.weyl for v in c.values)


@pytest.mark.parametrize("spec,gens", CASES)
def test_twisted_action_is_homomorphism(spec, gens, action_cache):
    a, cocycles = action_cache(spec, gens)
    n = a.dim
    for c in cocycles:
        for s in range(a.order):
            for t in range(a.order):
                assert c.twisted(a.table[s][t]) == _mul(c.twisted(s), c.twisted(t), n)


def test_non_cocycle_rejected(action_cache):
    a, cocycles = action_cache("D4", ["(1 3 4)"])
    bogus = Cocycle(a, (cocycles[0].values[0], W_REF.entries, W_REF.entries))
    assert not is_cocycle(a, bogus.values)
    with pytest.raises(InvalidCocycleError):
        twist_character(a, bogus)


# -- classes -------------------------------------------------------------------

@pytest.mark.parametrize("spec,gens,sizes", [
    ("A2", ["(1 2)"], None),
    ("A3", ["(1 3)"], (6, 3, 1)),
    ("D4", ["(1 3 4)"], (16, 8)),
])
def test_class_orbit_sizes(spec, gens, sizes, action_cache):
    a, cocycles = action_cache(spec, gens)
    classes = h1_classes(a, cocycles)
    if sizes is not None:
        assert classes.orbit_sizes == sizes
    assert sum(classes.orbit_sizes) == len(cocycles)
    triv = next(c for c in cocycles if c.is_trivial())
    assert is_cohomologous(a, classes.representatives[classes.trivial_index], triv)


@pytest.mark.parametrize("spec,gens,count", [
    ("A2", ["(1 2)"], 2), ("A3", ["(1 3)"], 3), ("D4", ["(1 3 4)"], 2), ("D4", ["(3 4)"], 3),
    ("A1+A1", ["(1 2)"], 1), ("A2+A2", ["(1 3)(2 4)"], 1), ("A2+A2", ["(1 2)", "(1 3)(2 4)"], 4),
    ("D4", ["(1 3 4)", "(3 4)"], 5),
])
def test_class_counts(spec, gens, count, action_cache):
    a, cocycles = action_cache(spec, gens)
    assert h1_classes(a, cocycles).class_count == count


@pytest.mark.parametrize("spec,gens", CASES)
def test_orbit_sizes_sum_and_representatives_distinct(spec, gens, action_cache):
    a, cocycles = action_cache(spec, gens)
    classes = h1_classes(a, cocycles)
    assert sum(classes.orbit_sizes) == len(cocycles)
    reps = classes.representatives
    if len(cocycles) <= 60:
        for i in range(len(reps)):
            for j in range(i + 1, len(reps)):
                assert not is_cohomologous(a, reps[i], reps[j])


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_twisting_preserves_cocycles_and_characters(weyl_cache, data):
    spec, gens = data.draw(st.sampled_from(CASES[:6]))
    a = build_action(spec, weyl_cache(spec), gens)
    cocycles = enumerate_cocycles(a)
    c = data.draw(st.sampled_from(cocycles))
    b = data.draw(st.sampled_from(a.weyl.keys))
    t = twisted_conjugate(a, c, b)
    assert is_cocycle(a, t.values)
    assert t in cocycles
    assert is_cohomologous(a, c, t)
    assert twist_character(a, t) == twist_character(a, c)


def test_reference_representative_class(action_cache):
    a, cocycles = action_cache("D4", ["(1 3 4)"])
    classes = h1_classes(a, cocycles)
    target = next(c for c in cocycles if c.generator_values == (W_REF.entries,))
    nontrivial = 1 - classes.trivial_index
    assert is_cohomologous(a, classes.representatives[nontrivial], target)
    assert not is_cohomologous(a, classes.representatives[classes.trivial_index], target)


# -- characters and kernel ----------------------------------------------------

def test_twist_character_d4(action_cache):
    a, cocycles = action_cache("D4", ["(1 3 4)"])
    g = parse_permutation("(1 3 4)", 4)
    assert twist_character(a)[g] == 1
    target = next(c for c in cocycles if c.generator_values == (W_REF.entries,))
    chi = twist_character(a, target)
    assert chi[g] == -2
    assert chi[0] == 4
    assert not is_trivial_in_GL(a, target)
    assert chi.as_dict() == {"()": 4, "(1 3 4)": -2, "(1 4 3)": -2}


def test_trivial_cocycle_is_trivial_in_gl(action_cache):
    a, cocycles = action_cache("A3", ["(1 3)"])
    triv = next(c for c in cocycles if c.is_trivial())
    assert is_trivial_in_GL(a, triv)


@pytest.mark.parametrize("spec,gens", CASES)
def test_kernel_trivial(spec, gens, weyl_cache):
    rep = h1_kernel(build_action(spec, weyl_cache(spec), gens))
    assert rep.trivial_kernel
    assert len(rep.kernel_representatives) == 1


def test_kernel_report_fields(weyl_cache):
    rep = h1_kernel(build_action("D4", weyl_cache("D4"), ["(1 3 4)"]))
    assert (rep.diagram, rep.action, rep.group_order, rep.weyl_order) == ("D4", ("(1 3 4)",), 3, 192)
    assert rep.cocycle_count == 24 and rep.class_count == 2


def test_cocycle_call(action_cache):
    a, cocycles = action_cache("A2", ["(1 2)"])
    c = cocycles[0]
    assert c(0) == IntMatrix.identity(2)
    assert c(parse_permutation("(1 2)", 2)) == IntMatrix(2, 2, c.generator_values[0])
