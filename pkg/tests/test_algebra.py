from fractions import Fraction

import numpy as np
import pytest

from helpers import MUTANTS, VALID_FIXTURES, alg_of
from homcalc import linalg
from homcalc.algebra import (HomAlgebra, alpha_inverse, dual_bimodule, find_symmetric_structure,
                             is_symmetric_structure, regular_bimodule, validate,
                             validate_bimodule, yau_twist)
from homcalc.errors import RegularityError

TWISTS = ["dual_numbers_twist_2", "dual_numbers_twist_half", "dual_numbers_twist_minus1",
          "k_x_k_swap"]
REGULAR_UNITAL = [n for n in VALID_FIXTURES if n != "dual_numbers_nilpotent_twist"]


@pytest.mark.parametrize("name", VALID_FIXTURES)
def test_fixtures_validate(name):
    assert validate(alg_of(name)).passed


def test_broken_associativity_has_witness():
    rep = validate(alg_of("mutant_broken_associativity"))
    assert not rep.passed
    c = rep["hom_associativity"]
    assert not c.passed and c.witness["lhs"] != c.witness["rhs"]


def test_broken_multiplicativity_has_witness():
    rep = validate(alg_of("mutant_broken_multiplicativity"))
    assert rep["hom_associativity"].passed
    assert not rep["multiplicativity"].passed


def test_mutants_listed():
    assert set(MUTANTS) == {"mutant_bad_theta", "mutant_broken_associativity",
                            "mutant_broken_multiplicativity"}


def test_regularity_is_informational():
    alg = alg_of("dual_numbers_nilpotent_twist")
    rep = validate(alg)
    assert rep.passed
    assert not rep["regular"].passed and not rep["regular"].required
    assert rep.to_json()["checks"][-1].get("informational") is True
    with pytest.raises(RegularityError):
        alg.alpha_power(-1)


def test_yau_twist_matches_fixture():
    base = alg_of("dual_numbers")
    tw = yau_twist(base, linalg.matrix([[1, 0], [0, 2]]))
    fx = alg_of("dual_numbers_twist_2")
    assert (tw.mu == fx.mu).all() and (tw.alpha == fx.alpha).all()
    assert list(tw.unit) == list(fx.unit)


def test_yau_twist_rejects_non_morphism():
    with pytest.raises(ValueError):
        yau_twist(alg_of("dual_numbers"), linalg.matrix([[1, 1], [0, 1]]))


def test_constructor_shape_errors():
    with pytest.raises(ValueError):
        HomAlgebra(linalg.zeros(2, 2, 3), linalg.identity(2))
    with pytest.raises(ValueError):
        HomAlgebra(linalg.zeros(2, 2, 2), linalg.identity(3))


@pytest.mark.parametrize("name", REGULAR_UNITAL)
def test_alpha_powers(name):
    alg = alg_of(name)
    assert (alg.alpha_power(2).dot(alg.alpha_power(-2)) == linalg.identity(alg.dim)).all()
    assert (alpha_inverse(alg).dot(alg.alpha) == linalg.identity(alg.dim)).all()


@pytest.mark.parametrize("name", REGULAR_UNITAL)
def test_regular_bimodule(name):
    assert validate_bimodule(regular_bimodule(alg_of(name))).passed


@pytest.mark.parametrize("name", REGULAR_UNITAL)
def test_dual_bimodule_axioms(name):
    assert validate_bimodule(dual_bimodule(alg_of(name))).passed


@pytest.mark.parametrize("name", ["dual_numbers", "k_x_k", "ground_field"])
def test_dual_bimodule_classical_when_untwisted(name):
    alg = alg_of(name)
    a, b = dual_bimodule(alg), dual_bimodule(alg, literal=True)
    assert (a.left == b.left).all() and (a.right == b.right).all()
    # (a.theta)(c) = theta(c a)
    n = alg.dim
    for i in range(n):
        for j in range(n):
            theta = alg.basis(j)
            moved = a.act_left(alg.basis(i), theta)
            for c in range(n):
                assert moved[c] == theta.dot(alg.mul(alg.basis(c), alg.basis(i)))


def test_literal_dual_action_fails_on_a_twist():
    rep = validate_bimodule(dual_bimodule(alg_of("dual_numbers_twist_2"), literal=True))
    assert not rep.passed


def test_symmetric_structures():
    alg = alg_of("dual_numbers")
    sym = find_symmetric_structure(alg)
    assert sym is not None and is_symmetric_structure(alg, sym.theta)
    assert is_symmetric_structure(alg, linalg.matrix([[0, 1], [1, 0]]))
    assert not is_symmetric_structure(alg, linalg.matrix([[0, 1], [1, 1]]))
    assert find_symmetric_structure(alg_of("dual_numbers_twist_2")) is None
    swap = alg_of("k_x_k_swap")
    assert is_symmetric_structure(swap, linalg.identity(2))


def test_symmetric_search_needs_regular_unital():
    with pytest.raises(RegularityError):
        find_symmetric_structure(alg_of("dual_numbers_nilpotent_twist"))


def test_structure_constants_are_fractions():
    alg = alg_of("dual_numbers_twist_half")
    assert all(isinstance(x, Fraction) for x in alg.mu.flat)
    assert alg.alpha[1, 1] == Fraction(1, 2)
    assert isinstance(alg.mu, np.ndarray) and alg.mu.dtype == object
