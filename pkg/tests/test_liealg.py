import numpy as np
import pytest

from equigeodesic.errors import IncompatibleElementsError, InvalidDimensionError
from equigeodesic.liealg import (
    LieBasis,
    MatrixElement,
    bilinear_form,
    build_so_basis,
    build_sp_basis,
    build_u_basis,
    commutator,
    sphere_sp_basis,
    validate_bracket_lemma,
)


def _entry(basis, a, b):
    return basis.structure_sparse().get((basis.index(a), basis.index(b)), [])


def test_so3_bracket_xi12_xi23():
    so3 = build_so_basis(3)
    assert _entry(so3, "xi(1,2)", "xi(2,3)") == [(so3.index("xi(1,3)"), 1.0)]


def test_so4_disjoint_indices_commute():
    so4 = build_so_basis(4)
    assert _entry(so4, "xi(1,2)", "xi(3,4)") == []


def test_so_gram_is_two():
    assert np.allclose(np.diag(build_so_basis(3).gram), 2.0)


def test_so_basis_order_and_size():
    so5 = build_so_basis(5)
    assert len(so5) == 10
    assert so5.labels[:4] == ("xi(1,2)", "xi(1,3)", "xi(1,4)", "xi(1,5)")


def test_dimensions():
    assert len(build_u_basis(3)) == 9
    assert len(build_sp_basis(2)) == 10
    assert len(build_sp_basis(3)) == 21


def test_u_gram_values():
    u2 = build_u_basis(2)
    gram = dict(zip(u2.labels, np.diag(u2.gram)))
    # f(1,1) = 2i E11 has -tr(f^2) = 4; off-diagonal elements have 2
    assert gram["e(1,2)"] == pytest.approx(2.0)
    assert gram["f(1,2)"] == pytest.approx(2.0)
    assert gram["f(1,1)"] == pytest.approx(4.0)


def test_invalid_dimensions():
    with pytest.raises(InvalidDimensionError):
        build_so_basis(1)
    with pytest.raises(InvalidDimensionError):
        build_u_basis(0)
    with pytest.raises(InvalidDimensionError):
        build_sp_basis(0)


def test_element_invariants_rejected():
    with pytest.raises(Exception):
        MatrixElement(np.array([[0.0, 1.0], [1.0, 0.0]]), np.zeros((2, 2)), "so")
    with pytest.raises(Exception):
        MatrixElement(np.zeros((2, 2)), np.array([[1.0, 0.0], [0.0, 0.0]]), "so")


def test_commutator_incompatible():
    x = build_so_basis(3).elements[0]
    y = build_so_basis(4).elements[0]
    with pytest.raises(IncompatibleElementsError):
        commutator(x, y)
    with pytest.raises(IncompatibleElementsError):
        commutator(x, build_u_basis(3).elements[0])


def test_commutator_matches_matrices():
    u3 = build_u_basis(3)
    x, y = u3.element("e(1,2)"), u3.element("f(2,3)")
    z = commutator(x, y)
    assert np.allclose(z.matrix, x.matrix @ y.matrix - y.matrix @ x.matrix)


def test_bilinear_form_scale():
    so3 = build_so_basis(3)
    x = so3.elements[0]
    assert bilinear_form(x, x, scale=3.0) == pytest.approx(6.0)


def test_coordinates_roundtrip():
    sp2 = build_sp_basis(2)
    c = np.arange(len(sp2), dtype=float) - 3.0
    assert np.allclose(sp2.coordinates(sp2.expand(c)), c)


def test_form_scale_leaves_structure_constants():
    so4 = build_so_basis(4)
    scaled = LieBasis(so4.elements, so4.labels, form_scale=2.5)
    assert np.allclose(scaled.structure, so4.structure)
    assert np.allclose(scaled.gram, 2.5 * so4.gram)


@pytest.mark.parametrize("builder,n", [(build_so_basis, 5), (build_u_basis, 3), (build_sp_basis, 2)])
def test_algebra_residuals(builder, n):
    basis = builder(n)
    assert basis.antisymmetry_residual() <= 1e-12
    assert basis.jacobi_residual() <= 1e-12
    assert basis.ad_invariance_residual() <= 1e-12
    assert basis.closure_residual() <= 1e-12


def test_so_lemma_all_match():
    rep = validate_bracket_lemma(build_so_basis(6), "so-lemma")
    assert rep.passed and len(rep.checks) > 0


def test_sp_lemma_all_match():
    rep = validate_bracket_lemma(build_sp_basis(3), "sp-lemma")
    assert rep.passed


@pytest.mark.parametrize("n", [1, 2])
def test_sphere_sp_lemma_all_match(n):
    rep = validate_bracket_lemma(sphere_sp_basis(n), "sphere-sp-lemma")
    assert rep.passed


def test_u_lemma_lists_repeated_index_mismatches():
    rep = validate_bracket_lemma(build_u_basis(3), "u-lemma")
    assert not rep.passed
    assert rep.mismatches
    assert all(c.repeated_index for c in rep.mismatches)
    assert any("matrix commutators are authoritative" in n for n in rep.notes)


def test_u_lemma_specific_discrepancy():
    u3 = build_u_basis(3)
    z = commutator(u3.element("f(1,2)"), u3.element("e(1,2)"))
    # direct arithmetic gives -f11 + f22; the tabulated rule predicts -f11 - f22
    assert z.allclose(u3.element("f(2,2)") - u3.element("f(1,1)"))
    rep = validate_bracket_lemma(u3, "u-lemma")
    assert any(c.lhs.startswith("[f(1,2), e(1,2)]") for c in rep.mismatches)


def test_lemma_requires_matching_basis():
    with pytest.raises(IncompatibleElementsError):
        validate_bracket_lemma(build_u_basis(3), "so-lemma")
    with pytest.raises(InvalidDimensionError):
        validate_bracket_lemma(build_so_basis(3), "no-such-lemma")


def test_report_serialises():
    rep = validate_bracket_lemma(build_so_basis(4), "so-lemma")
    d = rep.to_dict()
    assert d["passed"] is True and len(d["checks"]) == len(rep.checks)
