"""Small shared helpers for the tests."""

import random
from fractions import Fraction
from itertools import product

import numpy as np

import classical

from homcalc import chains, linalg, operad
from homcalc.chains import Chain
from homcalc.operad import Cochain
from homcalc.specfile import fixture_names, load_fixture

VALID_FIXTURES = [n for n in fixture_names() if not n.startswith("mutant_")]
MUTANTS = [n for n in fixture_names() if n.startswith("mutant_")]

# criterion number -> summary line, printed at the end of the session
ACCEPTANCE = {}


def alg_of(name):
    return load_fixture(name).algebra


def random_tensor(rng, shape, bound=3):
    t = linalg.zeros(*shape)
    for idx in np.ndindex(*shape):
        t[idx] = Fraction(rng.randint(-bound, bound))
    return t


def any_cochain(alg, p, rng, bound=3):
    """A random multilinear map, equivariant or not."""
    return Cochain(alg, random_tensor(rng, (alg.dim,) * (p + 1), bound))


def any_chain(alg, n, rng, bound=3):
    return Chain(alg, random_tensor(rng, (alg.dim,) * (n + 1), bound))


def cochain_to_dict(f):
    n, p = f.alg.dim, f.degree
    return {idx: [f.coeffs[idx + (k,)] for k in range(n)] for idx in product(range(n), repeat=p)}


def chain_to_dict(x):
    return {idx: c for idx, c in np.ndenumerate(x.coeffs) if c != 0}


def rng(seed=0):
    return random.Random(seed)


def classical_algebra(alg):
    n = alg.dim
    table = {(i, j): [alg.mu[i, j, k] for k in range(n)] for i in range(n) for j in range(n)}
    return classical.Assoc(n, table, unit=list(alg.unit))


def as_cochain(alg, d, p):
    c = Cochain(alg, operad.zero(alg, p).coeffs)
    for idx, v in d.items():
        for k, x in enumerate(v):
            c.coeffs[idx + (k,)] = x
    return c


def as_chain(alg, d, n):
    x = chains.zero_chain(alg, n)
    for idx, c in d.items():
        x.coeffs[idx] = c
    return x
