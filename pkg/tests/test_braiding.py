from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from corpus import SMALL_GROUPS, TINY_GROUPS
from rmx.bicharacter import Bicharacter, cyclic_bicharacter, enumerate_all
from rmx.braiding import (
    Comodule,
    GradedMap,
    GradedSpace,
    Module,
    braid_from_coquasi,
    braid_from_r,
    braid_graded,
    comodule_delta,
    comodule_from_grading,
    flip,
    grading_from_comodule,
    grading_from_module,
    is_comodule,
    is_comodule_morphism,
    is_module,
    is_module_morphism,
    is_symmetric_braiding,
    iter_small_spaces,
    module_action,
    module_from_grading,
    parse_dims,
    verify_category_axioms,
)
from rmx.coquasi import BilinearForm, epsilon_form
from rmx.cyclotomic import CycNumber, root_of_unity
from rmx.errors import ParseError, SpecMismatchError
from rmx.groups import GroupSpec
from rmx.hopf import Tensor2
from rmx.rmatrix import r_from_bicharacter

Z2, Z4 = GroupSpec((2,)), GroupSpec((4,))


def random_space(spec: GroupSpec, rng: random.Random, max_dim: int = 2) -> GradedSpace:
    return GradedSpace.from_dims(spec, {g: rng.randint(0, max_dim) for g in spec.elements()})


def random_degree_map(V: GradedSpace, W: GradedSpace, rng: random.Random) -> GradedMap:
    """A random degree-preserving map ``V -> W``."""
    e = V.spec.exponent
    entries = {}
    for c in range(V.dim):
        for r in range(W.dim):
            if W.basis_degrees[r] == V.basis_degrees[c] and rng.random() < 0.7:
                entries[(r, c)] = root_of_unity(e, rng.randrange(e)) * rng.randint(-3, 3)
    return GradedMap(V, W, entries, e)


# -- graded spaces -----------------------------------------------------------


def test_graded_space_basics():
    g = GroupSpec((4, 2))
    V = GradedSpace.from_dims(g, {g.element(1, 0): 2, g.element(0, 1): 1, g.element(3, 1): 0})
    assert V.dim == 3
    assert V.dims == {g.element(0, 1): 1, g.element(1, 0): 2}
    assert V.basis_labels() == [(g.element(0, 1), 0), (g.element(1, 0), 0), (g.element(1, 0), 1)]
    assert str(V) == "0.1:1,1.0:2"
    assert V.to_json() == {"dims": {"0.1": 1, "1.0": 2}}
    assert GradedSpace.from_json(V.to_json(), g) == V
    assert parse_dims(g, "1.0:2, 0.1:1") == V
    assert parse_dims(g, "") == GradedSpace.zero(g)


@pytest.mark.parametrize("text", ["1.0", "1.0:x", "1.0:-1", "9:1", "1.0:1,1.0:2"])
def test_parse_dims_errors(text):
    with pytest.raises(ParseError):
        parse_dims(GroupSpec((4, 2)), text)


def test_tensor_grading_is_degree_additive():
    V = GradedSpace.from_dims(Z4, {Z4.element(1): 1, Z4.element(2): 1})
    W = GradedSpace.from_dims(Z4, {Z4.element(3): 2})
    VW = V.tensor(W)
    assert [VW.degree(i) for i in range(VW.dim)] == [Z4.element(k) for k in (0, 0, 1, 1)]


# -- module and comodule pictures ---------------------------------------------


def test_module_action_examples():
    V = GradedSpace.from_dims(Z2, {Z2.element(0): 1, Z2.element(1): 1})
    assert module_action(Z2.trivial_character(), V) == GradedMap.identity(V)
    assert module_action(Z2.character(1), V).rows() == [[1, 0], [0, -1]]
    g = GroupSpec((4, 2))
    W = GradedSpace.regular(g)
    for chi in g.characters():
        for psi in g.characters():
            assert module_action(chi * psi, W) == module_action(chi, W) @ module_action(psi, W)
    with pytest.raises(SpecMismatchError):
        module_action(Z4.character(1), V)


def test_comodule_examples():
    g = Z4.element(3)
    V = GradedSpace.from_dims(Z4, {g: 3})
    C = comodule_delta(V)
    assert all(C.delta(i) == [(i, g, 1)] for i in range(3))
    assert is_comodule(C)


def test_non_homogeneous_structures_are_rejected():
    one = CycNumber.one(2)
    # chi acts by swapping two basis vectors: a module, but not diagonal in this basis
    swap = {(0, 1): one, (1, 0): one}
    M = Module(Z2, 2, ({(0, 0): one, (1, 1): one}, swap))
    assert is_module(M)
    with pytest.raises(ValueError):
        grading_from_module(M)
    C = Comodule(Z2, 1, (((0, 0, one), (0, 1, one)),))
    assert not is_comodule(C)
    with pytest.raises(ValueError):
        grading_from_comodule(C)


@pytest.mark.parametrize("orders", SMALL_GROUPS)
def test_dictionaries_round_trip(orders):
    spec = GroupSpec(orders)
    rng = random.Random(f"dict-{orders}")
    for _ in range(15):
        V = random_space(spec, rng)
        M = module_from_grading(V)
        assert is_module(M)
        assert grading_from_module(M) == V
        C = comodule_from_grading(V)
        assert is_comodule(C)
        assert grading_from_comodule(C) == V


@pytest.mark.parametrize("orders", [(2,), (4,), (2, 2), (3,)])
def test_dictionaries_preserve_morphisms(orders):
    spec = GroupSpec(orders)
    rng = random.Random(f"mor-{orders}")
    for _ in range(10):
        V, W = random_space(spec, rng), random_space(spec, rng)
        f = random_degree_map(V, W, rng)
        assert f.is_degree_preserving()
        MV, MW = module_from_grading(V), module_from_grading(W)
        CV, CW = comodule_from_grading(V), comodule_from_grading(W)
        assert is_module_morphism(f, MV, MW)
        assert is_comodule_morphism(f, CV, CW)
        # a map that mixes degrees is neither
        mixed = [(r, c) for r in range(W.dim) for c in range(V.dim) if W.basis_degrees[r] != V.basis_degrees[c]]
        if mixed:
            bad = f + GradedMap(V, W, {mixed[0]: 1})
            assert not bad.is_degree_preserving()
            assert not is_module_morphism(bad, MV, MW)
            assert not is_comodule_morphism(bad, CV, CW)


# -- braidings -------------------------------------------------------------


def test_braiding_examples():
    g = GroupSpec((4, 2))
    V, W = GradedSpace.regular(g), GradedSpace.from_dims(g, {g.element(1, 1): 2})
    assert braid_graded(Bicharacter.trivial(g), V, W) == flip(V, W)
    odd = GradedSpace.from_dims(Z2, {Z2.element(1): 1})
    sigma1 = cyclic_bicharacter(2, 1)
    assert braid_graded(sigma1, odd, odd).rows() == [[-1]]
    assert braid_from_r(r_from_bicharacter(sigma1), odd, odd).rows() == [[-1]]
    zero = GradedSpace.zero(Z2)
    assert braid_graded(sigma1, zero, odd).rows() == []
    assert braid_from_r(Tensor2.unit(g), V, W) == flip(V, W)
    assert braid_from_coquasi(epsilon_form(g), V, W) == flip(V, W)


def test_flip_convention():
    V = GradedSpace.from_dims(Z4, {Z4.element(0): 1, Z4.element(1): 1})
    W = GradedSpace.from_dims(Z4, {Z4.element(2): 3})
    F = flip(V, W)
    # v_i (x) w_j sits at i * dim W + j and goes to w_j (x) v_i at j * dim V + i
    assert F.entry(2 * 2 + 1, 1 * 3 + 2) == 1
    assert flip(W, V) @ F == GradedMap.identity(V.tensor(W))


@pytest.mark.parametrize("orders", TINY_GROUPS)
def test_three_braidings_agree(orders):
    spec = GroupSpec(orders)
    rng = random.Random(f"triple-{orders}")
    pairs = [(GradedSpace.regular(spec, 2), GradedSpace.regular(spec, 2))]
    pairs += [(random_space(spec, rng), random_space(spec, rng)) for _ in range(3)]
    for sigma in enumerate_all(spec):
        R = r_from_bicharacter(sigma)
        rho = BilinearForm.from_bicharacter(sigma)
        for V, W in pairs:
            psi = braid_graded(sigma, V, W)
            assert psi == braid_from_r(R, V, W)
            assert psi == braid_from_coquasi(rho, V, W)


@pytest.mark.parametrize("orders", [(2,), (4,), (2, 2), (3,)])
def test_naturality(orders):
    spec = GroupSpec(orders)
    rng = random.Random(f"nat-{orders}")
    sigmas = list(enumerate_all(spec))
    for _ in range(8):
        sigma = rng.choice(sigmas)
        V, V2, W, W2 = (random_space(spec, rng) for _ in range(4))
        f, g = random_degree_map(V, V2, rng), random_degree_map(W, W2, rng)
        assert g.tensor(f) @ braid_graded(sigma, V, W) == braid_graded(sigma, V2, W2) @ f.tensor(g)


def test_category_axioms_on_z4():
    spaces = list(iter_small_spaces(Z4))
    rng = random.Random(5)
    for sigma in enumerate_all(Z4):
        for _ in range(6):
            V, W, U = (rng.choice(spaces) for _ in range(3))
            assert verify_category_axioms(sigma, V, W, U).passed
        R = GradedSpace.from_dims(Z4, {x: 2 for x in Z4.elements()})
        assert verify_category_axioms(sigma, R, R, GradedSpace.regular(Z4)).passed


def test_symmetry_tracks_commutation_factors():
    V = GradedSpace.regular(Z4)
    sigma1 = cyclic_bicharacter(4, 1)
    report = verify_category_axioms(sigma1, V, V, V)
    assert report.passed
    assert "symmetric=false" in report["symmetry"].detail
    assert not is_symmetric_braiding(sigma1, V, V)
    sigma2 = cyclic_bicharacter(4, 2)
    assert "symmetric=true" in verify_category_axioms(sigma2, V, V, V)["symmetry"].detail
    trivial = Bicharacter.trivial(Z4)
    assert is_symmetric_braiding(trivial, V, V)


@pytest.mark.parametrize("orders", TINY_GROUPS)
def test_hexagons_and_symmetry_for_all_bicharacters(orders):
    spec = GroupSpec(orders)
    V = GradedSpace.regular(spec)
    for sigma in enumerate_all(spec):
        report = verify_category_axioms(sigma, V, V, V)
        assert report.passed, str(report)
        assert is_symmetric_braiding(sigma, V, V) == sigma.is_commutation_factor()


@given(st.sampled_from(TINY_GROUPS), st.integers(0, 10**6))
def test_braiding_is_invertible(orders, seed):
    spec = GroupSpec(orders)
    rng = random.Random(seed)
    sigma = rng.choice(list(enumerate_all(spec)))
    V, W = random_space(spec, rng), random_space(spec, rng)
    psi = braid_graded(sigma, V, W)
    inverse = braid_graded(sigma.inverse().transpose(), W, V)
    assert inverse @ psi == GradedMap.identity(V.tensor(W))
