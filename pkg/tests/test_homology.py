import random

import numpy as np
import pytest

from helpers import VALID_FIXTURES, alg_of
from homcalc import homology, linalg, operad
from homcalc.algebra import SymmetricStructure, find_symmetric_structure
from homcalc.errors import DegreeError, RegularityError
from homcalc.homology import Hochschild
from homcalc.verify import random_chain, random_cochain

# exact dimensions; the untwisted rows are the classical values in characteristic 0
COHOMOLOGY = {
    "dual_numbers": {0: 2, 1: 1, 2: 1, 3: 1},
    "dual_numbers_twist_2": {0: 1, 1: 1, 2: 0, 3: 0},
    "k_x_k": {0: 2, 1: 0, 2: 0, 3: 0},
    "k_x_k_swap": {0: 1, 1: 0, 2: 0, 3: 0},
    "ground_field": {0: 1, 1: 0, 2: 0, 3: 0},
}
DUAL_COHOMOLOGY = {
    "dual_numbers": {0: 2, 1: 1, 2: 1, 3: 1},
    "dual_numbers_twist_2": {0: 1, 1: 0, 2: 0, 3: 0},
}
HOMOLOGY = {
    "dual_numbers": {0: 2, 1: 1, 2: 1, 3: 1, 4: 1},
    "k_x_k": {0: 2, 1: 0, 2: 0, 3: 0, 4: 0},
    "ground_field": {0: 1, 1: 0, 2: 0, 3: 0, 4: 0},
}

_HH = {}


def hh_of(name):
    if name not in _HH:
        _HH[name] = Hochschild(alg_of(name), 3, 4)
    return _HH[name]


@pytest.mark.parametrize("name", sorted(COHOMOLOGY))
def test_cohomology_dims(name):
    assert hh_of(name).cohomology_dims() == COHOMOLOGY[name]


@pytest.mark.parametrize("name", sorted(DUAL_COHOMOLOGY))
def test_dual_cohomology_dims(name):
    assert hh_of(name).cohomology_dims(dual=True) == DUAL_COHOMOLOGY[name]


@pytest.mark.parametrize("name", sorted(HOMOLOGY))
def test_homology_dims(name):
    assert hh_of(name).homology_dims() == HOMOLOGY[name]


@pytest.mark.parametrize("name", ["dual_numbers", "dual_numbers_twist_minus1", "k_x_k_swap"])
def test_normalized_complexes_compute_the_same(name):
    hh = hh_of(name)
    assert hh.homology_dims(normalized=True) == hh.homology_dims()
    for p in range(0, 4):
        assert hh.cohomology(p, normalized=True).dim == hh.cohomology(p).dim


def test_non_regular_degree_zero_is_refused():
    hh = Hochschild(alg_of("dual_numbers_nilpotent_twist"), 3, 3)
    with pytest.raises(RegularityError):
        hh.cohomology(0)
    assert set(hh.cohomology_dims()) == {1, 2, 3}


def test_caps():
    hh = hh_of("dual_numbers")
    with pytest.raises(DegreeError):
        hh.cohomology(4)
    with pytest.raises(DegreeError):
        hh.homology(5)
    with pytest.raises(ValueError):
        Hochschild(alg_of("dual_numbers"), 0, 3)


@pytest.mark.parametrize("name", ["dual_numbers", "dual_numbers_twist_2"])
def test_representatives_are_cocycles_and_independent(name):
    hh = hh_of(name)
    for p in range(0, 3):
        space = hh.cohomology(p)
        for f in homology.class_basis(hh, p):
            assert operad.delta_alpha(f).is_zero()
        stacked = space.boundary_basis + space.representatives
        assert linalg.rank(linalg.column_matrix(stacked, space.ambient_dim)) == len(stacked)


def test_coboundaries_are_zero_classes():
    hh = hh_of("dual_numbers_twist_half")
    r = random.Random(0)
    for p in range(1, 4):
        c = homology.random_coboundary(hh, p, r)
        assert hh.cohomology(p).is_boundary(c.vector)


def test_induced_operations_ignore_representatives():
    hh = hh_of("dual_numbers")
    r = random.Random(1)
    # each call raises if a coboundary perturbation moves the class
    f = g = homology.class_basis(hh, 1)[0]
    homology.induced_cup(hh, f, g, perturbations=10, rng=r)
    homology.induced_bracket(hh, f, g, perturbations=10, rng=r)
    x = homology.homology_basis(hh, 2)[0]
    homology.induced_cap(hh, f, x, perturbations=5, rng=r)
    homology.induced_lie(hh, f, x, perturbations=5, rng=r)


def test_B_star_degree_zero():
    alg = alg_of("dual_numbers")
    with pytest.raises(DegreeError):
        homology.B_star(operad.zero(alg, 0, dual=True))


def test_pairing_matches_functional_form():
    alg = alg_of("dual_numbers_twist_2")
    m = random_cochain(alg, 2, seed=1, dual=True)
    x = random_chain(alg, 2, seed=2)
    # m(a_1, a_2)(a_0) summed against the coefficients of x
    expect = sum(m.coeffs[i1, i2, i0] * c for (i0, i1, i2), c in np.ndenumerate(x.coeffs))
    assert homology.pair(m, x) == expect


class TestSymmetricBV:
    def setup_method(self):
        self.hh = hh_of("dual_numbers")
        self.sym = find_symmetric_structure(self.hh.alg)

    def test_transported_isomorphism(self):
        report = homology.transported_isomorphism(self.hh, self.sym.theta)
        assert all(v["invertible"] for v in report.values())

    def test_delta_squares_to_zero(self):
        bv = homology.bv_generator_symmetric(self.hh, self.sym)
        assert bv.route == "symmetric"
        assert bv.squares_to_zero()
        assert sorted(bv.delta) == [1, 2, 3]

    def test_delta_rank_does_not_depend_on_theta(self):
        a = homology.bv_generator_symmetric(self.hh, self.sym)
        b = homology.bv_generator_symmetric(
            self.hh, SymmetricStructure(linalg.matrix([[0, 1], [1, 0]])))
        for p in a.delta:
            assert linalg.rank(a.delta[p]) == linalg.rank(b.delta[p])


def test_symmetric_swap_twist_has_a_generator():
    hh = hh_of("k_x_k_swap")
    sym = find_symmetric_structure(hh.alg)
    assert sym is not None
    bv = homology.bv_generator_symmetric(hh, sym)
    assert bv.squares_to_zero()


@pytest.mark.parametrize("name", VALID_FIXTURES)
def test_dimensions_are_deterministic(name):
    a = Hochschild(alg_of(name), 2, 2)
    b = Hochschild(alg_of(name), 2, 2)
    lo = a._lowest_cochain_degree()
    for p in range(lo, 3):
        ra, rb = a.cohomology(p).representatives, b.cohomology(p).representatives
        assert [list(v) for v in ra] == [list(v) for v in rb]
