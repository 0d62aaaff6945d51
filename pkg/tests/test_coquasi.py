from __future__ import annotations

import pytest

from corpus import SMALL_GROUPS, non_bicharacter_tables
from rmx.bicharacter import FunctionTable, cyclic_bicharacter, enumerate_all, from_table, is_bicharacter_table
from rmx.cyclotomic import CycNumber, root_of_unity
from rmx.errors import NotBicharacterError, NotInvertibleError, SpecMismatchError
from rmx.groups import GroupSpec
from rmx.hopf import GROUP, HopfElement
from rmx.coquasi import (
    BilinearForm,
    antipode_relations_check,
    convolution,
    convolution_inverse,
    epsilon_form,
    form_from_tensor,
    is_cotriangular,
    tensor_from_form,
    verify_coquasi,
)
from rmx.rmatrix import r_from_bicharacter, r_from_function, verify_urm

Z2, Z4 = GroupSpec((2,)), GroupSpec((4,))
MIXED_GROUPS = [(1,), (2,), (3,), (4,), (2, 2), (5,), (6,)]


def mixed_corpus(orders):
    spec = GroupSpec(orders)
    good = [BilinearForm.from_bicharacter(s) for s in enumerate_all(spec)]
    bad = [BilinearForm.from_table(t) for t in non_bicharacter_tables(orders)]
    return good + bad


def test_convolution_examples():
    spec = GroupSpec((4, 2))
    sigmas = list(enumerate_all(spec))[:6]
    eps = epsilon_form(spec)
    for s in sigmas:
        psi = BilinearForm.from_bicharacter(s)
        assert convolution(psi, eps) == psi == convolution(eps, psi)
    s, t = sigmas[3], sigmas[5]
    product = convolution(BilinearForm.from_bicharacter(s), BilinearForm.from_bicharacter(t))
    assert product.table == (s * t).table()
    zero = BilinearForm.constant(spec, 0)
    assert convolution(zero, BilinearForm.from_bicharacter(s)).table == FunctionTable.constant(spec, 0)


def test_convolution_rejects_other_groups():
    with pytest.raises(SpecMismatchError):
        convolution(epsilon_form(Z2), epsilon_form(Z4))


@pytest.mark.parametrize("orders", SMALL_GROUPS)
def test_convolution_is_pointwise(orders):
    forms = mixed_corpus(orders)[:12]
    for psi in forms:
        for phi in forms[::3]:
            assert convolution(psi, phi).table == psi.table * phi.table


def test_convolution_inverse_examples():
    assert convolution_inverse(epsilon_form(Z4)) == epsilon_form(Z4)
    for s in enumerate_all(GroupSpec((2, 2))):
        assert convolution_inverse(BilinearForm.from_bicharacter(s)).table == s.inverse().table()
    one = CycNumber.one(2)
    table = FunctionTable(Z2, ((one, one), (one, CycNumber.zero(2))), 2)
    with pytest.raises(NotInvertibleError) as info:
        convolution_inverse(BilinearForm.from_table(table))
    assert info.value.witness == (Z2.element(1), Z2.element(1))


def test_bilinear_extension():
    s = cyclic_bicharacter(4, 1)
    rho = BilinearForm.from_bicharacter(s)
    g1, g2 = Z4.element(1), Z4.element(2)
    x = HopfElement.from_terms({g1: 2, g2: root_of_unity(4, 1)})
    y = HopfElement.basis(g1)
    assert rho(x, y) == 2 * s(g1, g1) + root_of_unity(4, 1) * s(g2, g1)
    assert rho(g1, g2) == s(g1, g2)
    with pytest.raises(SpecMismatchError):
        rho(HopfElement.basis(Z4.character(1)), y)


# -- the coquasitriangular axioms -------------------------------------------


def test_verify_examples():
    for s in enumerate_all(GroupSpec((4, 2))):
        assert verify_coquasi(BilinearForm.from_bicharacter(s)).passed
    assert verify_coquasi(epsilon_form(Z4)).passed
    names = [c.name for c in verify_coquasi(epsilon_form(Z2)).checks]
    assert names == ["convolution_invertible", "comm", "rho3", "rho4", "rhounit"]


def test_non_bicharacter_fails_rho3_or_rho4():
    for t in non_bicharacter_tables((4,)):
        report = verify_coquasi(BilinearForm.from_table(t))
        assert not report.passed
        assert report["convolution_invertible"].passed
        assert not (report["rho3"].passed and report["rho4"].passed)


def test_zero_entry_fails_invertibility():
    one = CycNumber.one(2)
    table = FunctionTable(Z2, ((one, one), (one, CycNumber.zero(2))), 2)
    report = verify_coquasi(BilinearForm.from_table(table))
    assert not report["convolution_invertible"].passed


@pytest.mark.parametrize("orders", MIXED_GROUPS)
def test_verify_agrees_with_bicharacter_test(orders):
    for rho in mixed_corpus(orders):
        passed = verify_coquasi(rho).passed
        assert passed == is_bicharacter_table(rho.table)
        if passed:
            from_table(rho.table)
        else:
            with pytest.raises(NotBicharacterError):
                from_table(rho.table)


def test_cotriangular_examples():
    assert is_cotriangular(BilinearForm.from_bicharacter(cyclic_bicharacter(2, 1)))
    assert not is_cotriangular(BilinearForm.from_bicharacter(cyclic_bicharacter(4, 1)))
    assert is_cotriangular(epsilon_form(Z4))
    with pytest.raises(ValueError):
        is_cotriangular(BilinearForm.from_table(non_bicharacter_tables((2,))[0]))


@pytest.mark.parametrize("orders", SMALL_GROUPS)
def test_cotriangular_iff_commutation_factor(orders):
    for s in enumerate_all(GroupSpec(orders)):
        assert is_cotriangular(BilinearForm.from_bicharacter(s)) == s.is_commutation_factor()


@pytest.mark.parametrize("orders", SMALL_GROUPS)
def test_antipode_relations(orders):
    for s in enumerate_all(GroupSpec(orders)):
        report = antipode_relations_check(BilinearForm.from_bicharacter(s))
        assert report.passed, str(report)


# -- duality with the R-matrix side -------------------------------------------


def test_form_tensor_round_trip():
    spec = GroupSpec((4, 2))
    for s in enumerate_all(spec):
        rho = BilinearForm.from_bicharacter(s)
        R = r_from_bicharacter(s)
        assert form_from_tensor(R) == rho
        assert tensor_from_form(rho) == R


@pytest.mark.parametrize("orders", [(1,), (2,), (3,), (4,), (2, 2)])
def test_duality_bridge(orders):
    for rho in mixed_corpus(orders):
        R = r_from_function(rho.table)
        assert form_from_tensor(R).table == rho.table
        assert verify_urm(R).passed == verify_coquasi(rho).passed


def test_forms_take_group_side_arguments():
    rho = epsilon_form(Z2)
    assert rho(HopfElement.unit(Z2, GROUP), HopfElement.unit(Z2, GROUP)) == 1
