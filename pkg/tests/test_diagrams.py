from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weylcoh.diagrams import (
    DiagramSpecError,
    FoldingError,
    NodePermutation,
    NotAnAutomorphismError,
    OrbitKind,
    brute_force_automorphisms,
    classify_gram,
    diagram_automorphisms,
    dynkaut_integrality,
    fold,
    generate_permutation_group,
    gram_matrix,
    parse_diagram_spec,
    parse_permutation,
    permutation_matrix,
)
from weylcoh.linalg import IntMatrix, determinant, mat_inverse, mat_mul

from conftest import G_ROT

ALL_SMALL = ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5", "D6",
             "E6", "E7", "E8", "F4", "G2", "A2+A2", "A1+A1", "A3+A1+A1", "D4+A2", "B2+C3"]


# -- parsing --------------------------------------------------------------------

def test_parse_a1():
    c = parse_diagram_spec("A1")
    assert c.rank == 1 and c.multiplicities == (1,)


def test_parse_d4_usual_ordering():
    c = parse_diagram_spec("D4")
    d = c.components[0]
    assert d.neighbours(1) == [0, 2, 3]
    assert d.neighbours(0) == [1] and d.neighbours(2) == [1] and d.neighbours(3) == [1]


def test_parse_disjoint_union():
    c = parse_diagram_spec("A2+A2")
    assert len(c.components) == 2
    assert c.offsets == (0, 2)
    assert c.locate(2) == (1, 0)
    assert c.label == "A2+A2"


@pytest.mark.parametrize("bad", ["", "A0", "B1", "C1", "D3", "E5", "E9", "F3", "G3", "H2", "A", "A2+", "A2 A3"])
def test_parse_rejects(bad):
    with pytest.raises(DiagramSpecError):
        parse_diagram_spec(bad)


def test_parse_dn_fork():
    d = parse_diagram_spec("D6").components[0]
    assert d.neighbours(3) == [2, 4, 5]


# -- Gram matrices ------------------------------------------------------------

def test_gram_a1():
    assert gram_matrix("A1") == IntMatrix.from_rows([[-2]])


def test_gram_a2():
    assert gram_matrix("A2") == IntMatrix.from_rows([[-2, 1], [1, -2]])


def test_gram_d4():
    assert gram_matrix("D4") == IntMatrix.from_rows(
        [[-2, 1, 0, 0], [1, -2, 1, 1], [0, 1, -2, 0], [0, 1, 0, -2]])


def test_gram_non_simply_laced_uses_max_rule():
    assert gram_matrix("G2") == IntMatrix.from_rows([[-2, 3], [3, -6]])
    assert gram_matrix("B3") == IntMatrix.from_rows([[-2, 1, 0], [1, -2, 2], [0, 2, -4]])
    assert gram_matrix("C3") == IntMatrix.from_rows([[-4, 2, 0], [2, -4, 2], [0, 2, -2]])


def test_gram_disjoint_union_block_diagonal():
    g = gram_matrix("A2+A1")
    assert g == IntMatrix.from_rows([[-2, 1, 0], [1, -2, 0], [0, 0, -2]])


def _negative_definite(g: IntMatrix) -> bool:
    for k in range(1, g.rows + 1):
        minor = IntMatrix(k, k, [g[i, j] for i in range(k) for j in range(k)])
        d = determinant(minor)
        if d == 0 or (d > 0) != (k % 2 == 0):
            return False
    return True


specs = st.lists(
    st.sampled_from(["A1", "A2", "A3", "A4", "B2", "B3", "C2", "C3", "D4", "D5", "E6", "F4", "G2", "E8"]),
    min_size=1, max_size=3,
).map("+".join).filter(lambda s: parse_diagram_spec(s).rank <= 10)


@given(specs)
def test_gram_symmetric_negative_definite(spec):
    g = gram_matrix(spec)
    assert g == g.T
    assert _negative_definite(g)


# -- automorphisms ------------------------------------------------------------

@pytest.mark.parametrize("spec,order", [
    ("A1", 1), ("A2", 2), ("A3", 2), ("A7", 2), ("D4", 6), ("D5", 2), ("D6", 2), ("D8", 2),
    ("E6", 2), ("E7", 1), ("E8", 1), ("A2+A2", 8), ("B3", 1), ("C4", 1), ("F4", 1), ("G2", 1),
    ("A1+A1", 2), ("A1+A1+A1", 6),
])
def test_automorphism_group_orders(spec, order):
    assert len(diagram_automorphisms(spec)) == order


@pytest.mark.parametrize("spec", ["A4", "D4", "D5", "A2+A2", "A1+A1+A2", "B3", "E6"])
def test_automorphisms_match_brute_force(spec):
    assert diagram_automorphisms(spec) == brute_force_automorphisms(spec)


@pytest.mark.parametrize("spec", ALL_SMALL)
def test_automorphisms_form_group_and_preserve_gram(spec):
    c = parse_diagram_spec(spec)
    auts = diagram_automorphisms(c)
    aset = set(auts)
    assert auts[0].is_identity()
    assert all(p * q in aset for p in auts for q in auts)
    assert all(p.inverse() in aset for p in auts)
    a = gram_matrix(c)
    for p in auts:
        cm = permutation_matrix(c, p)
        assert mat_mul(mat_mul(cm.T, a), cm) == a


def test_d4_has_rotation():
    auts = diagram_automorphisms("D4")
    assert parse_permutation("(1 3 4)", 4) in auts


# -- permutations ---------------------------------------------------------------

def test_parse_permutation_roundtrip():
    p = parse_permutation("(1 4)(2 3)", 4)
    assert p.images == (3, 2, 1, 0)
    assert str(p) == "(1 4)(2 3)"
    assert str(parse_permutation("()", 3)) == "()"
    assert parse_permutation("()", 3).is_identity()


@pytest.mark.parametrize("bad", ["(1 5)", "(1 2)(2 3)", "1 2", "(a b)", "", "(1 2"])
def test_parse_permutation_rejects(bad):
    with pytest.raises(DiagramSpecError):
        parse_permutation(bad, 4)


def test_permutation_matrix_identity():
    c = parse_diagram_spec("D4")
    assert permutation_matrix(c, NodePermutation.identity(4)) == IntMatrix.identity(4)


def test_permutation_matrix_d4_rotation_is_reference_g():
    c = parse_diagram_spec("D4")
    assert permutation_matrix(c, parse_permutation("(1 3 4)", 4)) == G_ROT


def test_permutation_matrix_a2_flip():
    c = parse_diagram_spec("A2")
    assert permutation_matrix(c, parse_permutation("(1 2)", 2)) == IntMatrix.from_rows([[0, 1], [1, 0]])


def test_permutation_matrix_rejects_non_automorphism():
    c = parse_diagram_spec("A3")
    with pytest.raises(NotAnAutomorphismError):
        permutation_matrix(c, parse_permutation("(1 2)", 3))


def test_composition_matches_matrix_product():
    c = parse_diagram_spec("D4")
    p = parse_permutation("(1 3 4)", 4)
    q = parse_permutation("(3 4)", 4)
    assert permutation_matrix(c, p * q) == mat_mul(permutation_matrix(c, p), permutation_matrix(c, q))


# -- integrality --------------------------------------------------------------

def test_integrality_a3_flip_witness_entry():
    p = parse_permutation("(1 3)", 3)
    rep = dynkaut_integrality(parse_diagram_spec("A3"), p)
    assert not rep.all_integral
    assert rep.witness == (1, 1, Fraction(1, 2))
    inv = mat_inverse(gram_matrix("A3"))
    assert rep.matrix[0, 0] == inv[2, 0] - inv[0, 0]


@pytest.mark.parametrize("n", range(5, 9))
def test_integrality_dn_flip_witness_entry(n):
    p = parse_permutation(f"({n - 1} {n})", n)
    rep = dynkaut_integrality(f"D{n}", p)
    assert not rep.all_integral
    assert rep.matrix[n - 1, n - 1] == Fraction(1, 2)
    assert (n, n, Fraction(1, 2)) in rep.non_integral_entries


@pytest.mark.parametrize("spec", ["A1", "A4", "D4", "E6", "E8"])
def test_integrality_identity_is_zero(spec):
    c = parse_diagram_spec(spec)
    rep = dynkaut_integrality(c, NodePermutation.identity(c.rank))
    assert rep.all_integral and rep.witness is None
    assert all(e == 0 for e in rep.matrix.entries)


def test_integrality_rejects_non_ade():
    with pytest.raises(ValueError):
        dynkaut_integrality("B3", NodePermutation.identity(3))


# -- folding ------------------------------------------------------------------

def test_fold_identity_subgroup():
    f = fold("D4", [NodePermutation.identity(4)])
    assert f.orbits == ((0,), (1,), (2,), (3,))
    assert f.gram == gram_matrix("D4")
    assert f.classified_type == "D4"


def test_fold_a4_flip_has_paired_orbit():
    group = generate_permutation_group([parse_permutation("(1 4)(2 3)", 4)], 4)
    f = fold("A4", group)
    assert f.orbits == ((0, 3), (1, 2))
    assert f.kinds == (OrbitKind.ORTHOGONAL, OrbitKind.PAIRED)
    assert f.pairs[1] == ((1, 2),)
    assert f.classified_type == "C2"


def test_fold_a3_flip():
    group = generate_permutation_group([parse_permutation("(1 3)", 3)], 3)
    f = fold("A3", group)
    assert f.orbits == ((0, 2), (1,))
    assert f.kinds == (OrbitKind.ORTHOGONAL, OrbitKind.ORTHOGONAL)
    # orbit sums: (E1+E3)^2 = -4, (E1+E3).E2 = 2, E2^2 = -2
    assert f.gram == IntMatrix.from_rows([[-4, 2], [2, -2]])
    assert _negative_definite(f.gram)


@pytest.mark.parametrize("spec,gens,label", [
    ("D4", ["(1 3 4)"], "G2"),
    ("D4", ["(1 3 4)", "(3 4)"], "G2"),
    ("D4", ["(3 4)"], "B3"),
    ("D5", ["(4 5)"], "B4"),
    ("A5", ["(1 5)(2 4)"], "C3"),
    ("A6", ["(1 6)(2 5)(3 4)"], "C3"),
    ("E6", ["(1 6)(3 5)"], "F4"),
    ("A2+A2", ["(1 3)(2 4)"], "A2"),
])
def test_fold_classification(spec, gens, label):
    c = parse_diagram_spec(spec)
    group = generate_permutation_group([parse_permutation(g, c.rank) for g in gens], c.rank)
    assert fold(c, group).classified_type == label


@pytest.mark.parametrize("spec", ["D4", "A5", "A6", "E6", "A2+A2", "D5", "A1+A1+A1"])
def test_fold_basis_invariant_under_every_automorphism_subgroup(spec):
    c = parse_diagram_spec(spec)
    auts = diagram_automorphisms(c)
    for p in auts:
        group = generate_permutation_group([p], c.rank)
        f = fold(c, group)
        for g in group:
            cm = permutation_matrix(c, g)
            assert mat_mul(cm, f.basis) == f.basis
        assert mat_mul(mat_mul(f.basis.T, gram_matrix(c)), f.basis) == f.gram
        assert _negative_definite(f.gram)


def test_fold_rejects_non_closed_subgroup():
    with pytest.raises(FoldingError):
        fold("D4", [NodePermutation.identity(4), parse_permutation("(1 3 4)", 4)])


def test_classify_unknown_gram():
    assert classify_gram(IntMatrix.from_rows([[-2, 1], [1, -4]])) is None
