import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from helpers import VALID_FIXTURES, alg_of
from homcalc import linalg, operad
from homcalc.errors import DegreeError, RegularityError
from homcalc.operad import bracket, comp, cup
from homcalc.verify import operad_composition_rhs, random_cochain

ALGS = {n: alg_of(n) for n in VALID_FIXTURES}
TWISTED = ["dual_numbers_twist_2", "dual_numbers_twist_minus1", "k_x_k_swap",
           "dual_numbers_nilpotent_twist"]


def lowest(alg):
    return 0 if alg.is_regular and alg.is_unital else 1


@st.composite
def composable(draw):
    """(f, i, g, j, h) with (f o_i g) o_j h defined and every degree <= 3."""
    alg = ALGS[draw(st.sampled_from(sorted(ALGS)))]
    lo = lowest(alg)
    p, q, r = draw(st.tuples(st.integers(1, 3), st.integers(lo, 3), st.integers(lo, 3)))
    assume(p + q - 1 >= 1 and p + q + r - 2 <= 3)
    i = draw(st.integers(1, p))
    j = draw(st.integers(1, p + q - 1))
    seed = draw(st.integers(0, 10 ** 6))
    f, g, h = (random_cochain(alg, d, seed="%d/%d" % (seed, k)) for k, d in enumerate((p, q, r)))
    return f, i, g, j, h


@settings(max_examples=80, deadline=None)
@given(composable())
def test_three_case_composition_law(case):
    f, i, g, j, h = case
    assert comp(comp(f, i, g), j, h) == operad_composition_rhs(f, i, g, j, h)


def test_composition_law_needs_shifted_index():
    """For j < i the outer index is i + |h| - 1; using i + |f| - 1 breaks the law."""
    alg = ALGS["dual_numbers_twist_2"]
    f, g, h = (random_cochain(alg, d, seed=s) for s, d in enumerate((3, 1, 2)))
    i, j = 2, 1
    good = comp(comp(f, j, h), i + h.degree - 1, g)
    bad = comp(comp(f, j, h), i + f.degree - 1, g)
    lhs = comp(comp(f, i, g), j, h)
    assert lhs == good and lhs != bad


@pytest.mark.parametrize("name", sorted(ALGS))
def test_mu_is_associative_in_the_operad(name):
    mu = operad.mu_cochain(ALGS[name])
    assert comp(mu, 1, mu) == comp(mu, 2, mu)


@pytest.mark.parametrize("name", sorted(ALGS))
def test_identity_is_a_two_sided_unit(name):
    alg = ALGS[name]
    one = operad.identity_cochain(alg)
    for p in range(1, 4):
        f = random_cochain(alg, p, seed=p)
        assert comp(one, 1, f) == f
        assert all(comp(f, i, one) == f for i in range(1, p + 1))


@pytest.mark.parametrize("name", TWISTED)
def test_compositions_stay_equivariant(name):
    alg = ALGS[name]
    for p, q in [(1, 1), (2, 1), (1, 2), (2, 2)]:
        f, g = random_cochain(alg, p, seed=p), random_cochain(alg, q, seed=10 + q)
        for i in range(1, p + 1):
            assert operad.is_equivariant(comp(f, i, g))


@pytest.mark.parametrize("name", sorted(ALGS))
def test_coboundaries(name):
    alg = ALGS[name]
    for p in range(lowest(alg), 3):
        f = random_cochain(alg, p, seed=p)
        assert operad.delta_pi(f) == operad.coboundary_sign(p) * operad.delta_alpha(f)
        assert operad.delta_pi(operad.delta_pi(f)).is_zero()


@pytest.mark.parametrize("name", ["dual_numbers_twist_2", "k_x_k_swap"])
def test_dual_coefficient_coboundary_squares_to_zero(name):
    alg = ALGS[name]
    for p in range(0, 3):
        m = random_cochain(alg, p, seed=p, dual=True)
        assert operad.delta_alpha(operad.delta_alpha(m)).is_zero()


def test_bracket_graded_antisymmetry():
    alg = ALGS["dual_numbers"]
    for p, q in [(1, 1), (1, 2), (2, 2), (2, 1), (0, 2)]:
        f, g = random_cochain(alg, p, seed=p), random_cochain(alg, q, seed=5 + q)
        sign = (-1) ** ((p - 1) * (q - 1))
        assert bracket(f, g) == -sign * bracket(g, f)


def test_cup_is_mu_composite():
    alg = ALGS["dual_numbers_twist_half"]
    f, g = random_cochain(alg, 1, seed=1), random_cochain(alg, 2, seed=2)
    assert cup(f, g).degree == 3
    a = [alg.basis(k) for k in (1, 0, 1)]
    # (f cup g)(a1, a2, a3) = g(a1, a2) . f(a3) after the alpha^{q-1} shift on f's input
    want = alg.mul(g(a[0], a[1]), f(alg.alpha.dot(a[2])))
    assert list(cup(f, g)(*a)) == list(want)


def test_degree_errors():
    alg = ALGS["dual_numbers"]
    f = random_cochain(alg, 1)
    with pytest.raises(DegreeError):
        comp(f, 2, f)
    with pytest.raises(DegreeError):
        bracket(random_cochain(alg, 0), random_cochain(alg, 0, seed=1))
    with pytest.raises(DegreeError):
        operad.cochain_space_basis(alg, -1)


def test_degree_zero_needs_regular_unital():
    alg = ALGS["dual_numbers_nilpotent_twist"]
    with pytest.raises(RegularityError):
        operad.cochain_space_basis(alg, 0)
    with pytest.raises(RegularityError):
        operad.unit_cochain(alg)


def test_unit_law():
    for name, alg in ALGS.items():
        if alg.is_regular and alg.is_unital:
            assert operad.operad_unit_law(alg), name


def test_equivariant_basis_dimensions():
    # x -> 2x: f(x^a) has weight 2^a, so only weight-matching entries survive
    alg = ALGS["dual_numbers_twist_2"]
    assert len(operad.cochain_space_basis(alg, 1)) == 2
    assert len(operad.cochain_space_basis(ALGS["dual_numbers"], 2)) == 8
    for f in operad.cochain_space_basis(alg, 2):
        assert operad.is_equivariant(f)


def test_random_cochain_is_deterministic():
    alg = ALGS["k_x_k_swap"]
    a = random_cochain(alg, 2, seed=42)
    b = random_cochain(alg, 2, seed=42)
    assert a == b and operad.is_equivariant(a)
    assert linalg.is_zero(random_cochain(alg, 2, seed=42).coeffs - a.coeffs)
