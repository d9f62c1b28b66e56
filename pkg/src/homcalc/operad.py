"""
Hochschild cochains of a hom-associative algebra as an operad with
multiplication.

A degree-p cochain is stored as a tensor of shape ``(n,)*p + (n,)``:
``coeffs[i1, ..., ip, k]`` is the coefficient of ``e_k`` in
``f(e_i1, ..., e_ip)`` (output index last, inputs in lexicographic order).
Degree 0 cochains are plain vectors.  With ``dual=True`` the output index
refers to the dual basis of A*.
"""

import numpy as np

from homcalc import linalg
from homcalc.algebra import dual_bimodule, regular_bimodule
from homcalc.errors import DegreeError


class Cochain:
    __slots__ = ("alg", "coeffs", "dual")

    def __init__(self, alg, coeffs, dual=False):
        coeffs = np.asarray(coeffs, dtype=object)
        if coeffs.shape != (alg.dim,) * coeffs.ndim or coeffs.ndim < 1:
            raise ValueError("bad cochain shape %r for dim %d" % (coeffs.shape, alg.dim))
        self.alg = alg
        self.coeffs = coeffs
        self.dual = dual

    @property
    def degree(self):
        return self.coeffs.ndim - 1

    @property
    def vector(self):
        return self.coeffs.reshape(-1)

    def __repr__(self):
        return "Cochain(degree=%d%s)" % (self.degree, ", dual" if self.dual else "")

    def _like(self, coeffs):
        return Cochain(self.alg, coeffs, self.dual)

    def _check(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        if other.alg is not self.alg or other.dual != self.dual or other.degree != self.degree:
            raise ValueError("incompatible cochains")

    def __add__(self, other):
        self._check(other)
        return self._like(self.coeffs + other.coeffs)

    def __sub__(self, other):
        self._check(other)
        return self._like(self.coeffs - other.coeffs)

    def __neg__(self):
        return self._like(-self.coeffs)

    def __rmul__(self, c):
        return self._like(c * self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (other.alg is self.alg and other.dual == self.dual
                and other.coeffs.shape == self.coeffs.shape
                and all(x == y for x, y in zip(self.coeffs.flat, other.coeffs.flat)))

    __hash__ = None

    def is_zero(self):
        return linalg.is_zero(self.coeffs)

    def __call__(self, *args):
        """Evaluate on coordinate vectors."""
        if len(args) != self.degree:
            raise DegreeError("expected %d arguments" % self.degree)
        t = self.coeffs
        for a in args:
            t = np.tensordot(a, t, axes=([0], [0]))
        return t


def from_vector(alg, p, v, dual=False):
    return Cochain(alg, np.asarray(v, dtype=object).reshape((alg.dim,) * (p + 1)), dual)


def zero(alg, p, dual=False):
    return Cochain(alg, linalg.zeros(*((alg.dim,) * (p + 1))), dual)


def identity_cochain(alg):
    """The operadic unit id_A in degree 1."""
    return Cochain(alg, linalg.identity(alg.dim))


def mu_cochain(alg):
    """The multiplication as a degree-2 cochain."""
    return Cochain(alg, alg.mu.copy())


def unit_cochain(alg):
    """The unit 1 as an element of O(0); needs a regular unital algebra."""
    alg.require_regular_unital("the degree-0 unit cochain")
    return Cochain(alg, alg.unit.copy())


def precompose_slot(t, m, axis):
    """Replace input ``axis`` of tensor ``t`` by its precomposition with matrix ``m``."""
    return linalg.act_on_axis(t, m, axis, 0)


def postcompose(t, m):
    """Apply ``m`` to the last (output) index."""
    return np.tensordot(t, m, axes=([t.ndim - 1], [1]))


def precompose_all(t, m, axes):
    for ax in axes:
        t = precompose_slot(t, m, ax)
    return t


def output_map(f):
    """The twisting map acting on the coefficient module of ``f``."""
    if f.dual:
        return dual_bimodule(f.alg).beta
    return f.alg.alpha


def is_equivariant(f):
    """beta . f == f . alpha^{(x)p}, exactly."""
    alg = f.alg
    if f.degree == 0:
        return linalg.is_zero(output_map(f).dot(f.coeffs) - f.coeffs)
    lhs = postcompose(f.coeffs, output_map(f))
    rhs = precompose_all(f.coeffs, alg.alpha, range(f.degree))
    return linalg.is_zero(lhs - rhs)


def comp(f, i, g):
    """Partial composition f o_i g.

    (f o_i g)(a_1..) = f(alpha^{q-1} a_1, .., g(a_i, .., a_{i+q-1}), .., alpha^{q-1} a_{p+q-1});
    a degree-0 ``g`` inserts a fixed element and needs alpha^{-1}.
    """
    alg = f.alg
    p, q = f.degree, g.degree
    if g.dual:
        raise ValueError("cannot insert a dual cochain")
    if not 1 <= i <= p:
        raise DegreeError("insertion index %d out of range for degree %d" % (i, p))
    if q == 0:
        alg.require_regular_unital("composition with a degree-0 cochain")
    others = [s for s in range(p) if s != i - 1]
    t = f.coeffs
    if not alg.alpha_power_is_identity(q - 1):
        t = precompose_all(t, alg.alpha_power(q - 1), others)
    t = np.tensordot(t, g.coeffs, axes=([i - 1], [q]))
    # axes now: f inputs before i (i-1), f inputs after i (p-i), output, g inputs (q)
    order = (list(range(i - 1)) + list(range(p, p + q))
             + list(range(i - 1, p - 1)) + [p - 1])
    return f._like(np.transpose(t, order))


def bracket(f, g):
    """The degree -1 bracket built from partial compositions."""
    p, q = f.degree, g.degree
    if p + q - 1 < 0:
        raise DegreeError("bracket of two degree-0 cochains lands in degree -1")
    out = zero(f.alg, p + q - 1, f.dual)
    for i in range(1, p + 1):
        out = out + (-1) ** ((q - 1) * (i - 1)) * comp(f, i, g)
    s = -(-1) ** ((p - 1) * (q - 1))
    for i in range(1, q + 1):
        out = out + s * (-1) ** ((p - 1) * (i - 1)) * comp(g, i, f)
    return out


def cup(f, g):
    """f cup g = (mu o_2 f) o_1 g."""
    mu = mu_cochain(f.alg)
    return comp(comp(mu, 2, f), 1, g)


def delta_pi(f):
    """The operadic differential [mu, f]."""
    return bracket(mu_cochain(f.alg), f)


def coboundary_sign(p):
    """delta_pi(f) == coboundary_sign(p) * delta_alpha(f) for f of degree p."""
    return -1 if p % 2 == 0 else 1


def coefficient_module(alg, dual):
    return dual_bimodule(alg) if dual else regular_bimodule(alg)


def delta_alpha(f):
    """The Hochschild coboundary with alpha^{n-1} weights, coefficients in A or A*."""
    alg = f.alg
    n = f.degree
    if n == 0 or f.dual:
        alg.require_regular_unital("the degree-0 or A*-coefficient coboundary")
    mod = coefficient_module(alg, f.dual)
    ap = alg.alpha_power(n - 1)
    F = f.coeffs
    # alpha^{n-1}(a_1) . f(a_2, ..)
    lal = np.tensordot(ap, mod.left, axes=([0], [0]))          # [a1, m, k]
    t1 = np.moveaxis(np.tensordot(lal, F, axes=([1], [n])), 1, -1)
    # f(a_1, .., a_n) . alpha^{n-1}(a_{n+1})
    ral = np.transpose(np.tensordot(mod.right, ap, axes=([1], [0])), (0, 2, 1))  # [m, a, k]
    t2 = np.tensordot(F, ral, axes=([n], [0]))
    out = t1 + (-1) ** (n + 1) * t2
    mu = mu_cochain(alg)
    for i in range(1, n + 1):
        out = out + (-1) ** i * comp(f, i, mu).coeffs
    return f._like(out)


def equivariance_matrix(alg, p, dual=False):
    """Matrix whose kernel is the space of equivariant degree-p cochains."""
    n = alg.dim
    beta = dual_bimodule(alg).beta if dual else alg.alpha
    at = np.ones((1, 1), dtype=object)
    for _ in range(p):
        at = np.kron(at, alg.alpha.T)
    return np.kron(linalg.identity(n ** p), beta) - np.kron(at, linalg.identity(n))


def cochain_space_basis(alg, p, dual=False):
    """Basis of C^p_alpha(A) (or C^p_alpha(A, A*)), deterministic order."""
    if p < 0:
        raise DegreeError("negative cochain degree")
    if p == 0 or dual:
        alg.require_regular_unital("degree-0 or A*-coefficient cochains")
    n = alg.dim
    size = n ** (p + 1)
    if alg.alpha_is_identity:
        vecs = [linalg._unit(size, j) for j in range(size)]
    else:
        vecs = linalg.kernel_basis(equivariance_matrix(alg, p, dual))
    return [from_vector(alg, p, v, dual) for v in vecs]


def is_normalized(f):
    """f vanishes whenever some argument is the unit."""
    one = f.alg.unit
    for s in range(f.degree):
        if not linalg.is_zero(np.tensordot(f.coeffs, one, axes=([s], [0]))):
            return False
    return True


def normalized_cochain_basis(alg, p):
    """Basis of the equivariant cochains vanishing when any argument is 1."""
    if p == 0:
        return cochain_space_basis(alg, 0)
    basis = cochain_space_basis(alg, p)
    if not basis:
        return []
    n = alg.dim
    one = alg.unit
    rows = []
    for f in basis:
        parts = [np.tensordot(f.coeffs, one, axes=([s], [0])).reshape(-1) for s in range(p)]
        rows.append(np.concatenate(parts))
    m = linalg.column_matrix(rows, p * n ** p)
    out = []
    for c in linalg.kernel_basis(m):
        v = sum((c[j] * basis[j].coeffs for j in range(len(basis)) if c[j] != 0),
                linalg.zeros(*((n,) * (p + 1))))
        out.append(Cochain(alg, v))
    return out


def operad_unit_law(alg):
    """mu o_1 1 and mu o_2 1 both equal id_A (regular unital case)."""
    mu = mu_cochain(alg)
    e = unit_cochain(alg)
    ident = identity_cochain(alg)
    return comp(mu, 1, e) == ident and comp(mu, 2, e) == ident

