"""
Finite-dimensional multiplicative hom-associative algebras over Q.

Conventions used throughout the package:

* ``mu[i, j, k]`` is the coefficient of ``e_k`` in ``e_i . e_j``;
* ``alpha`` acts on column vectors, so column ``j`` is ``alpha(e_j)``;
* a bimodule action tensor ``left[i, j, k]`` is the coefficient of ``m_k``
  in ``e_i . m_j``, and ``right[j, i, k]`` that of ``m_k`` in ``m_j . e_i``.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional

import numpy as np

from homcalc import linalg
from homcalc.errors import RegularityError


@dataclass
class Check:
    name: str
    passed: bool
    witness: Optional[dict] = None
    required: bool = True

    def to_json(self):
        d = {"name": self.name, "passed": self.passed}
        if not self.required:
            d["informational"] = True
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class ValidationReport:
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        """All axioms hold; informational checks (regularity) do not count."""
        return all(c.passed for c in self.checks if c.required)

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self):
        return {"passed": self.passed, "checks": [c.to_json() for c in self.checks]}


def _vec_json(v):
    return [linalg.qstr(x) for x in v]


class HomAlgebra:
    """The triple (A, mu, alpha), optionally with a unit."""

    def __init__(self, mu, alpha, unit=None, labels=None, name=""):
        mu = np.asarray(mu, dtype=object)
        n = mu.shape[0]
        if n < 1 or mu.shape != (n, n, n):
            raise ValueError("structure constants must have shape (n, n, n), n >= 1")
        alpha = np.asarray(alpha, dtype=object)
        if alpha.shape != (n, n):
            raise ValueError("twisting map must be %d x %d" % (n, n))
        self.dim = n
        self.mu = _fractions(mu)
        self.alpha = _fractions(alpha)
        self.unit = None if unit is None else _fractions(np.asarray(unit, dtype=object))
        if self.unit is not None and self.unit.shape != (n,):
            raise ValueError("unit must have length %d" % n)
        self.labels = list(labels) if labels else ["e%d" % i for i in range(n)]
        self.name = name
        self._powers = {0: linalg.identity(n), 1: self.alpha}
        self._inverse = None
        self._regular = linalg.rank(self.alpha) == n
        self.alpha_is_identity = _equal(self.alpha, linalg.identity(n))

    def __repr__(self):
        return "HomAlgebra(%r, dim=%d)" % (self.name, self.dim)

    @property
    def is_regular(self):
        return self._regular

    @property
    def is_unital(self):
        return self.unit is not None

    def require_regular(self, what="this operation"):
        if not self._regular:
            raise RegularityError("%s needs an invertible twisting map" % what)

    def require_regular_unital(self, what="this operation"):
        self.require_regular(what)
        if self.unit is None:
            raise RegularityError("%s needs a unital algebra" % what)

    def alpha_power(self, k):
        """alpha^k as a matrix; negative k needs regularity."""
        if k not in self._powers:
            if k < 0:
                self.require_regular("alpha^%d" % k)
                base = alpha_inverse(self)
                prev = self.alpha_power(k + 1)
            else:
                base = self.alpha
                prev = self.alpha_power(k - 1)
            self._powers[k] = base.dot(prev)
        return self._powers[k]

    def alpha_power_is_identity(self, k):
        return k == 0 or self.alpha_is_identity

    def mul(self, a, b):
        """Product of two coordinate vectors."""
        return np.tensordot(np.tensordot(a, self.mu, axes=([0], [0])), b, axes=([0], [0]))

    def basis(self, i):
        v = linalg.zeros(self.dim)
        v[i] = Fraction(1)
        return v

    def left_matrix(self, a):
        """Matrix of x -> a.x."""
        return np.tensordot(a, self.mu, axes=([0], [0])).T

    def right_matrix(self, a):
        """Matrix of x -> x.a."""
        return np.tensordot(self.mu, a, axes=([1], [0])).T


def _fractions(a):
    out = np.empty(a.shape, dtype=object)
    for idx in np.ndindex(a.shape):
        out[idx] = linalg.q(a[idx])
    return out


def _equal(a, b):
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def alpha_inverse(alg):
    """Exact inverse of the twisting map."""
    if alg._inverse is None:
        if not alg.is_regular:
            raise RegularityError("twisting map of %r is singular" % alg.name)
        n = alg.dim
        cols = [linalg.solve(alg.alpha, alg.basis(j)) for j in range(n)]
        alg._inverse = linalg.column_matrix(cols, n)
    return alg._inverse


def validate(alg):
    """Check hom-associativity, multiplicativity, unit axioms and regularity."""
    n = alg.dim
    e = [alg.basis(i) for i in range(n)]
    al = [alg.alpha.dot(v) for v in e]
    report = ValidationReport()

    witness = None
    for i, j, k in product(range(n), repeat=3):
        lhs = alg.mul(alg.mul(e[i], e[j]), al[k])
        rhs = alg.mul(al[i], alg.mul(e[j], e[k]))
        if not _equal(lhs, rhs):
            witness = {"triple": [alg.labels[i], alg.labels[j], alg.labels[k]],
                       "lhs": _vec_json(lhs), "rhs": _vec_json(rhs)}
            break
    report.checks.append(Check("hom_associativity", witness is None, witness))

    witness = None
    for i, j in product(range(n), repeat=2):
        lhs = alg.alpha.dot(alg.mul(e[i], e[j]))
        rhs = alg.mul(al[i], al[j])
        if not _equal(lhs, rhs):
            witness = {"pair": [alg.labels[i], alg.labels[j]],
                       "lhs": _vec_json(lhs), "rhs": _vec_json(rhs)}
            break
    report.checks.append(Check("multiplicativity", witness is None, witness))

    if alg.unit is not None:
        one = alg.unit
        witness = None
        if not _equal(alg.alpha.dot(one), one):
            witness = {"alpha(1)": _vec_json(alg.alpha.dot(one))}
        else:
            for i in range(n):
                for side, val in (("a.1", alg.mul(e[i], one)), ("1.a", alg.mul(one, e[i]))):
                    if not _equal(val, al[i]):
                        witness = {"element": alg.labels[i], "product": side,
                                   "value": _vec_json(val), "alpha(a)": _vec_json(al[i])}
                        break
                if witness:
                    break
        report.checks.append(Check("unit", witness is None, witness))

    report.checks.append(Check("regular", alg.is_regular,
                               None if alg.is_regular else {"rank": linalg.rank(alg.alpha)},
                               required=False))
    return report


def is_valid(alg):
    """Every axiom holds (regularity is reported but not required)."""
    return validate(alg).passed


def yau_twist(assoc, hom, name=None):
    """The hom-associative algebra (A, hom . mu, hom) of an associative algebra."""
    hom = np.asarray(hom, dtype=object)
    hom = _fractions(hom)
    n = assoc.dim
    if not assoc.alpha_is_identity:
        raise ValueError("yau_twist expects an associative algebra (alpha = id)")
    if not is_valid(assoc):
        raise ValueError("input algebra is not associative")
    for i, j in product(range(n), repeat=2):
        lhs = hom.dot(assoc.mul(assoc.basis(i), assoc.basis(j)))
        rhs = assoc.mul(hom[:, i], hom[:, j])
        if not _equal(lhs, rhs):
            raise ValueError("map is not an algebra morphism at pair (%s, %s)"
                             % (assoc.labels[i], assoc.labels[j]))
    mu = np.tensordot(assoc.mu, hom, axes=([2], [1]))
    unit = None
    if assoc.unit is not None and _equal(hom.dot(assoc.unit), assoc.unit):
        unit = assoc.unit
    return HomAlgebra(mu, hom, unit=unit, labels=assoc.labels,
                      name=name or "%s_twisted" % assoc.name)


class Bimodule:
    def __init__(self, alg, beta, left, right, name=""):
        self.alg = alg
        self.beta = beta
        self.left = left
        self.right = right
        self.dim = beta.shape[0]
        self.name = name

    def act_left(self, a, m):
        return np.tensordot(np.tensordot(a, self.left, axes=([0], [0])), m, axes=([0], [0]))

    def act_right(self, m, a):
        return np.tensordot(np.tensordot(m, self.right, axes=([0], [0])), a, axes=([0], [0]))


def regular_bimodule(alg):
    """A over itself, with beta = alpha and both actions given by mu."""
    return Bimodule(alg, alg.alpha, alg.mu, alg.mu, name="A")


def dual_bimodule(alg, literal=False):
    """A* over A with map (alpha^-1)*.

    Actions: (a.theta)(c) = theta(alpha^-2(c . alpha(a))) and
    (theta.a)(c) = theta(alpha^-2(alpha(a) . c)).  For alpha = id these are the
    classical (a.theta)(c) = theta(c.a), (theta.a)(c) = theta(a.c).  With
    ``literal=True`` the actions theta(alpha^-1(c.a)), theta(alpha^-1(a.c))
    are used instead; those satisfy the bimodule axioms only when alpha = id.
    """
    ainv = alpha_inverse(alg)
    beta = ainv.T.copy()
    if literal:
        # twisted[x, y, j]: coefficient of e_j in alpha^-1(e_x . e_y)
        twisted = np.tensordot(alg.mu, ainv, axes=([2], [1]))
        left = np.transpose(twisted, (1, 2, 0))   # left[i, j, b] = twisted[b, i, j]
        right = np.transpose(twisted, (2, 0, 1))  # right[j, i, b] = twisted[i, b, j]
        return Bimodule(alg, beta, left.copy(), right.copy(), name="A* (literal)")
    a2 = alg.alpha_power(-2)
    # cl[c, i, j]: coefficient of e_j in alpha^-2(e_c . alpha(e_i))
    cl = np.tensordot(np.tensordot(alg.mu, alg.alpha, axes=([1], [0])), a2, axes=([1], [1]))
    # cr[i, c, j]: coefficient of e_j in alpha^-2(alpha(e_i) . e_c)
    cr = np.tensordot(np.tensordot(alg.alpha, alg.mu, axes=([0], [0])), a2, axes=([2], [1]))
    left = np.transpose(cl, (1, 2, 0))   # left[i, j, c] = cl[c, i, j]
    right = np.transpose(cr, (2, 0, 1))  # right[j, i, c] = cr[i, c, j]
    return Bimodule(alg, beta, left.copy(), right.copy(), name="A*")


def validate_bimodule(mod):
    alg = mod.alg
    n, d = alg.dim, mod.dim
    es = [alg.basis(i) for i in range(n)]
    ms = []
    for j in range(d):
        v = linalg.zeros(d)
        v[j] = Fraction(1)
        ms.append(v)
    al = alg.alpha
    report = ValidationReport()
    conditions = {
        "beta(am) = alpha(a)beta(m)":
            lambda a, b, m: (mod.beta.dot(mod.act_left(a, m)),
                             mod.act_left(al.dot(a), mod.beta.dot(m))),
        "beta(ma) = beta(m)alpha(a)":
            lambda a, b, m: (mod.beta.dot(mod.act_right(m, a)),
                             mod.act_right(mod.beta.dot(m), al.dot(a))),
        "(ab)beta(m) = alpha(a)(bm)":
            lambda a, b, m: (mod.act_left(alg.mul(a, b), mod.beta.dot(m)),
                             mod.act_left(al.dot(a), mod.act_left(b, m))),
        "(am)alpha(b) = alpha(a)(mb)":
            lambda a, b, m: (mod.act_right(mod.act_left(a, m), al.dot(b)),
                             mod.act_left(al.dot(a), mod.act_right(m, b))),
        "(ma)alpha(b) = beta(m)(ab)":
            lambda a, b, m: (mod.act_right(mod.act_right(m, a), al.dot(b)),
                             mod.act_right(mod.beta.dot(m), alg.mul(a, b))),
    }
    for name, cond in conditions.items():
        witness = None
        for i, j, k in product(range(n), range(n), range(d)):
            lhs, rhs = cond(es[i], es[j], ms[k])
            if not _equal(lhs, rhs):
                witness = {"a": i, "b": j, "m": k,
                           "lhs": _vec_json(lhs), "rhs": _vec_json(rhs)}
                break
        report.checks.append(Check(name, witness is None, witness))
    return report


@dataclass
class SymmetricStructure:
    """An isomorphism Theta: A -> A*; column j holds Theta(e_j) in the dual basis."""
    theta: np.ndarray


def symmetric_constraints(alg):
    """Rows of the linear system whose solutions are bimodule maps A -> A*.

    Unknowns are the entries of theta in row-major order.
    """
    n = alg.dim
    dual = dual_bimodule(alg)
    eye = linalg.identity(n)
    blocks = []
    # theta . alpha = beta* . theta
    blocks.append(np.kron(eye, alg.alpha.T) - np.kron(dual.beta, eye))
    for i in range(n):
        a = alg.basis(i)
        la = alg.left_matrix(a)
        ra = alg.right_matrix(a)
        dla = np.tensordot(a, dual.left, axes=([0], [0])).T
        dra = np.tensordot(dual.right, a, axes=([1], [0])).T
        blocks.append(np.kron(eye, la.T) - np.kron(dla, eye))
        blocks.append(np.kron(eye, ra.T) - np.kron(dra, eye))
    return np.vstack(blocks)


def is_symmetric_structure(alg, theta):
    theta = np.asarray(theta, dtype=object)
    if linalg.rank(theta) != alg.dim:
        return False
    return linalg.is_zero(symmetric_constraints(alg).dot(theta.reshape(-1)))


def find_symmetric_structure(alg, tries=200, seed=0):
    """An invertible bimodule map A -> A*, or None.

    Tries the kernel basis first, then seeded random small-integer
    combinations; invertibility is Zariski-open so this finds one whenever
    the solution space contains one, with overwhelming probability.
    """
    alg.require_regular_unital("a symmetric structure")
    n = alg.dim
    sols = linalg.kernel_basis(symmetric_constraints(alg))
    if not sols:
        return None
    candidates = [v.reshape(n, n) for v in sols]
    rng = random.Random(seed)
    for _ in range(tries):
        combo = sum((Fraction(rng.randint(-3, 3)) * v for v in sols), linalg.zeros(n * n))
        candidates.append(combo.reshape(n, n))
    for c in candidates:
        if linalg.rank(c) == n:
            return SymmetricStructure(c.copy())
    return None
