"""Step-by-step rerun of the D4 / Z3 brute-force kernel computation.

The reflection, rotation and representative matrices below are fixed
reference data; every other number is recomputed.  The Weyl group is built
here by a plain right-multiplication loop, independently of
:func:`weylcoh.weyl.generate_weyl`, and the two element sets are compared.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .cohomology import build_action, h1_kernel
from .diagrams import parse_diagram_spec, parse_permutation, permutation_matrix
from .linalg import IntMatrix, Polynomial, char_poly, rational_root_multiplicity
from .suites import match_reference
from .weyl import generate_weyl, reflection

REFERENCE_REFLECTIONS = (
    ((-1, 1, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)),
    ((1, 0, 0, 0), (1, -1, 1, 1), (0, 0, 1, 0), (0, 0, 0, 1)),
    ((1, 0, 0, 0), (0, 1, 0, 0), (0, 1, -1, 0), (0, 0, 0, 1)),
    ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 1, 0, -1)),
)
REFERENCE_ROTATION = ((0, 0, 0, 1), (0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 1, 0))
REFERENCE_REPRESENTATIVE = ((-1, 0, 0, 0), (-1, 0, 1, -1), (-1, 1, 0, -1), (-1, 0, 1, 0))
EXPECTED_ORDER = 192


@dataclass
class AppendixReport:
    weyl_order: int
    cocycle_count: int
    class_count: int
    kernel_upper_bound: int
    trivial_kernel: bool
    representative_match: str | None
    representatives: list[IntMatrix]
    char_poly_g: Polynomial
    char_poly_wg: Polynomial
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def _weyl_by_right_multiplication(s: list[IntMatrix]) -> list[IntMatrix]:
    elements = [IntMatrix.identity(4)]
    seen = set(elements)
    grew = True
    while grew:
        grew = False
        for si in s:
            for w in list(elements):
                y = w @ si
                if y not in seen:
                    seen.add(y)
                    elements.append(y)
                    grew = True
    return elements


def reproduce_appendix_a() -> AppendixReport:
    c = parse_diagram_spec("D4")
    checks: dict[str, bool] = {}
    ident = IntMatrix.identity(4)

    s = [reflection(c, i) for i in range(4)]
    checks["reflections_match_reference"] = s == [IntMatrix.from_rows(m) for m in REFERENCE_REFLECTIONS]

    W = _weyl_by_right_multiplication(s)
    Wset = set(W)
    weyl = generate_weyl(c)
    inverse_pairs = [(IntMatrix(4, 4, weyl.inverse(k)), IntMatrix(4, 4, k)) for k in weyl.keys]
    checks["weyl_order_192"] = len(W) == EXPECTED_ORDER == weyl.order
    checks["weyl_sets_agree"] = Wset == set(weyl)
    checks["weyl_is_group"] = (
        ident in Wset
        and all(w @ si in Wset for si in s for w in W)
        and all(w_inv in Wset for w_inv, _ in inverse_pairs)
    )

    g = IntMatrix.from_rows(REFERENCE_ROTATION)
    checks["rotation_matches_reference"] = g == permutation_matrix(c, parse_permutation("(1 3 4)", 4))
    g_inv = g.T

    cocycle = [w for w in W if (w @ g) ** 3 == ident]

    cohom: list[IntMatrix] = []
    for w in cocycle:
        wg = w @ g
        if not any(r_inv @ wg @ r @ g_inv in cohom for r_inv, r in inverse_pairs):
            cohom.append(w)
    checks["one_is_eigenvalue_of_g"] = rational_root_multiplicity(char_poly(g), 1) >= 1
    kernel = [w for w in cohom if rational_root_multiplicity(char_poly(w @ g), 1) >= 1]

    a = build_action(c, weyl, ["(1 3 4)"])
    report = h1_kernel(a)
    checks["class_count_2"] = len(cohom) == 2 == report.class_count
    checks["cocycle_counts_agree"] = len(cocycle) == report.cocycle_count
    checks["kernel_trivial"] = len(kernel) == 1 and report.trivial_kernel

    label, idx = match_reference(a, report, REFERENCE_REPRESENTATIVE)
    checks["reference_representative_nontrivial_class"] = (
        idx is not None and idx != report.classes.trivial_index
    )
    w = IntMatrix.from_rows(REFERENCE_REPRESENTATIVE)
    cp_wg = char_poly(w @ g)
    cyclotomic = Polynomial([1, 1, 1]) ** 2
    checks["wg_char_poly_is_cyclotomic_squared"] = cp_wg == cyclotomic
    checks["wg_has_no_eigenvalue_1"] = rational_root_multiplicity(cp_wg, 1) == 0

    return AppendixReport(
        weyl_order=len(W),
        cocycle_count=len(cocycle),
        class_count=len(cohom),
        kernel_upper_bound=len(kernel),
        trivial_kernel=report.trivial_kernel,
        representative_match=label,
        representatives=[m for m in cohom if m != ident],
        char_poly_g=char_poly(g),
        char_poly_wg=cp_wg,
        checks=checks,
    )
