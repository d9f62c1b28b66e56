"""
Hochschild chains M(n) = A (x) A^{(x)n} as a cyclic comp module over the
cochain operad, with the boundary b, cap product, Lie derivative, Connes
operator and the Cartan homotopy S_f.

A chain of degree n is a tensor of shape ``(dim,)*(n+1)``; slot 0 holds a_0.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from homcalc import linalg
from homcalc.errors import DegreeError, InternalConsistencyError, RegularityError
from homcalc.operad import comp, mu_cochain, unit_cochain


class Chain:
    __slots__ = ("alg", "coeffs")

    def __init__(self, alg, coeffs):
        coeffs = np.asarray(coeffs, dtype=object)
        if coeffs.ndim < 1 or coeffs.shape != (alg.dim,) * coeffs.ndim:
            raise ValueError("bad chain shape %r for dim %d" % (coeffs.shape, alg.dim))
        self.alg = alg
        self.coeffs = coeffs

    @property
    def degree(self):
        return self.coeffs.ndim - 1

    @property
    def vector(self):
        return self.coeffs.reshape(-1)

    def __repr__(self):
        return "Chain(degree=%d)" % self.degree

    def _check(self, other):
        if other.alg is not self.alg or other.degree != self.degree:
            raise ValueError("incompatible chains: degrees %d and %d"
                             % (self.degree, other.degree))

    def __add__(self, other):
        self._check(other)
        return Chain(self.alg, self.coeffs + other.coeffs)

    def __sub__(self, other):
        self._check(other)
        return Chain(self.alg, self.coeffs - other.coeffs)

    def __neg__(self):
        return Chain(self.alg, -self.coeffs)

    def __rmul__(self, c):
        return Chain(self.alg, c * self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return (other.alg is self.alg and other.coeffs.shape == self.coeffs.shape
                and all(x == y for x, y in zip(self.coeffs.flat, other.coeffs.flat)))

    __hash__ = None

    def is_zero(self):
        return linalg.is_zero(self.coeffs)


def zero_chain(alg, n):
    return Chain(alg, linalg.zeros(*((alg.dim,) * (n + 1))))


def from_vector(alg, n, v):
    return Chain(alg, np.asarray(v, dtype=object).reshape((alg.dim,) * (n + 1)))


def elementary(alg, *vectors):
    """The chain v_0 (x) v_1 ... (x) v_n from coordinate vectors."""
    t = np.asarray(vectors[0], dtype=object)
    for v in vectors[1:]:
        t = np.multiply.outer(t, np.asarray(v, dtype=object))
    return Chain(alg, t)


def apply_slot(t, m, axis):
    return linalg.act_on_axis(t, m, axis, 1)


def apply_slots(alg, t, k, axes):
    """alpha^k on each listed slot."""
    if alg.alpha_power_is_identity(k):
        return t
    m = alg.alpha_power(k)
    for ax in axes:
        t = apply_slot(t, m, ax)
    return t


def _insert(f, i, x):
    alg = x.alg
    p, n = f.degree, x.degree
    if p == 0:
        alg.require_regular_unital("insertion of a degree-0 cochain")
    others = [s for s in range(n + 1) if not i <= s < i + p]
    t = apply_slots(alg, x.coeffs, p - 1, others)
    if p == 0:
        t = np.multiply.outer(t, f.coeffs)
    else:
        t = np.tensordot(t, f.coeffs, axes=(list(range(i, i + p)), list(range(p))))
    return Chain(alg, np.moveaxis(t, -1, i))


def bullet(f, i, x):
    """f bullet_i x for 1 <= i <= n-p+1 (a degree-0 f inserts an element)."""
    p, n = f.degree, x.degree
    if p > n or not 1 <= i <= n - p + 1:
        raise DegreeError("bullet_%d undefined for cochain degree %d on chain degree %d"
                          % (i, p, n))
    return _insert(f, i, x)


def bullet0(f, x):
    """f bullet_0 x = f(a_0, .., a_{p-1}) (x) alpha^{p-1}(a_p) ..."""
    if f.degree > x.degree + 1:
        raise DegreeError("bullet_0 undefined for cochain degree %d on chain degree %d"
                          % (f.degree, x.degree))
    return _insert(f, 0, x)


def cyclic_t(x, k=1):
    """t^k, where t(a_0 (x) .. a_n) = a_n (x) a_0 .. a_{n-1}; identity in degree 0."""
    t = x.coeffs
    for _ in range(k % (x.degree + 1)):
        t = np.moveaxis(t, -1, 0)
    return Chain(x.alg, t)


def boundary_b(x):
    """The simplicial boundary assembled from the comp-module maps."""
    n = x.degree
    if n < 1:
        raise DegreeError("boundary needs chain degree >= 1")
    mu = mu_cochain(x.alg)
    out = bullet0(mu, x)
    for i in range(1, n):
        out = out + (-1) ** i * bullet(mu, i, x)
    return out + (-1) ** n * bullet0(mu, cyclic_t(x))


def _terms(x):
    """Nonzero coefficients of x with the basis index tuples."""
    for idx in np.ndindex(x.coeffs.shape):
        c = x.coeffs[idx]
        if c != 0:
            yield c, idx


def _accumulate(alg, n, pieces):
    out = linalg.zeros(*((alg.dim,) * (n + 1)))
    for c, vecs in pieces:
        t = np.asarray(vecs[0], dtype=object)
        for v in vecs[1:]:
            t = np.multiply.outer(t, v)
        out = out + c * t
    return Chain(alg, out)


def d_alpha(x):
    """The Hochschild boundary written out term by term on elementary tensors."""
    alg = x.alg
    n = x.degree
    if n < 1:
        raise DegreeError("boundary needs chain degree >= 1")
    al = alg.alpha
    e = [alg.basis(i) for i in range(alg.dim)]
    pieces = []
    for c, idx in _terms(x):
        a = [e[j] for j in idx]
        pieces.append((c, [alg.mul(a[0], a[1])] + [al.dot(v) for v in a[2:]]))
        for i in range(1, n):
            vecs = ([al.dot(v) for v in a[:i]] + [alg.mul(a[i], a[i + 1])]
                    + [al.dot(v) for v in a[i + 2:]])
            pieces.append(((-1) ** i * c, vecs))
        pieces.append(((-1) ** n * c, [alg.mul(a[n], a[0])] + [al.dot(v) for v in a[1:n]]))
    return _accumulate(alg, n - 1, pieces)


def cap(f, x):
    """i_f x = (mu o_2 f) bullet_0 x."""
    if f.degree > x.degree:
        raise DegreeError("cap of degree %d on chain degree %d" % (f.degree, x.degree))
    return bullet0(comp(mu_cochain(x.alg), 2, f), x)


def _eval(f, args):
    t = f.coeffs
    for a in args:
        t = np.tensordot(a, t, axes=([0], [0]))
    return t


def cap_explicit(f, x):
    """alpha^{p-1}(a_0).f(a_1..a_p) (x) alpha^p(a_{p+1}) .. alpha^p(a_n), term by term."""
    alg = x.alg
    p, n = f.degree, x.degree
    if p > n:
        raise DegreeError("cap of degree %d on chain degree %d" % (p, n))
    ap1, ap = alg.alpha_power(p - 1), alg.alpha_power(p)
    e = [alg.basis(i) for i in range(alg.dim)]
    pieces = []
    for c, idx in _terms(x):
        a = [e[j] for j in idx]
        head = alg.mul(ap1.dot(a[0]), _eval(f, a[1:p + 1]))
        pieces.append((c, [head] + [ap.dot(v) for v in a[p + 1:]]))
    return _accumulate(alg, n - p, pieces)


def lie(f, x):
    """The Lie derivative L_f built from bullet_i, bullet_0 and t."""
    p, n = f.degree, x.degree
    if p > n + 1:
        raise DegreeError("Lie derivative of degree %d on chain degree %d" % (p, n))
    if p == n + 1:
        out = zero_chain(x.alg, 0)
        for i in range(n + 1):
            out = out + (-1) ** (i * n) * bullet0(f, cyclic_t(x, i))
        return (-1) ** (p - 1) * out
    out = zero_chain(x.alg, n - p + 1)
    for i in range(1, n - p + 2):
        out = out + (-1) ** ((p - 1) * (i - 1)) * bullet(f, i, x)
    for i in range(1, p + 1):
        out = out + (-1) ** (n * (i - 1) + p - 1) * bullet0(f, cyclic_t(x, i - 1))
    return out


def lie_explicit(f, x):
    """L_f for p < n+1 written with explicit index rotation, term by term."""
    alg = x.alg
    p, n = f.degree, x.degree
    if p >= n + 1:
        raise DegreeError("explicit Lie derivative needs p < n+1")
    ap = alg.alpha_power(p - 1)
    e = [alg.basis(i) for i in range(alg.dim)]
    pieces = []
    for c, idx in _terms(x):
        a = [e[j] for j in idx]
        tw = [ap.dot(v) for v in a]
        for i in range(1, n - p + 2):
            vecs = tw[:i] + [_eval(f, a[i:i + p])] + tw[i + p:]
            pieces.append(((-1) ** ((p - 1) * (i - 1)) * c, vecs))
        # i-th rotation feeds f the p slots starting at a_{n-i+2} (indices mod n+1)
        for i in range(1, p + 1):
            start = (n - i + 2) % (n + 1)
            slots = [(start + s) % (n + 1) for s in range(n + 1)]
            vecs = [_eval(f, [a[s] for s in slots[:p]])] + [tw[s] for s in slots[p:]]
            pieces.append(((-1) ** (n * (i - 1) + p - 1) * c, vecs))
    return _accumulate(alg, n - p + 1, pieces)


def connes_B(x):
    """B = sum_i (-1)^{in} (id - t) t (e bullet_{n+1} t^i x)."""
    alg = x.alg
    alg.require_regular_unital("the Connes operator")
    n = x.degree
    e = unit_cochain(alg)
    out = zero_chain(alg, n + 1)
    for i in range(n + 1):
        y = cyclic_t(bullet(e, n + 1, cyclic_t(x, i)))
        out = out + (-1) ** (i * n) * (y - cyclic_t(y))
    return out


def homotopy_S(f, x):
    """The Cartan homotopy S_f; zero for p > n."""
    alg = x.alg
    alg.require_regular_unital("the Cartan homotopy")
    p, n = f.degree, x.degree
    if n - p + 2 < 0:
        raise DegreeError("S_f lands in negative degree")
    if p > n:
        return zero_chain(alg, n - p + 2)
    e = unit_cochain(alg)
    out = zero_chain(alg, n - p + 2)
    for j in range(1, n - p + 2):
        y = cyclic_t(x, j - 1)
        for i in range(j, n - p + 2):
            sign = (-1) ** (n * (j - 1) + (p - 1) * (i - 1))
            out = out + sign * bullet0(e, bullet(f, i, y))
    return out


def basis_chains(alg, n):
    size = alg.dim ** (n + 1)
    for j in range(size):
        v = linalg.zeros(size)
        v[j] = Fraction(1)
        yield from_vector(alg, n, v)


def operator_matrix(alg, n, op, target_degree):
    """Matrix of a linear chain operator from degree n to ``target_degree``."""
    cols = [op(x).vector for x in basis_chains(alg, n)]
    return linalg.column_matrix(cols, alg.dim ** (target_degree + 1))


@dataclass
class NormalizedQuotient:
    """M(n) modulo the degenerate subspace D(n) spanned by tensors with 1 in a slot >= 1."""
    degree: int
    degenerate: list
    representatives: list
    annihilator: np.ndarray

    def contains_degenerate(self, v):
        v = np.asarray(v, dtype=object).reshape(-1)
        if len(self.annihilator) == 0:
            return True
        return linalg.is_zero(self.annihilator.dot(v))


def _degenerate_space(alg, n):
    cache = alg.__dict__.setdefault("_degenerate_cache", {})
    if n not in cache:
        alg_unit = alg.unit
        if alg_unit is None:
            raise RegularityError("the normalized complex needs a unit")
        size = alg.dim ** (n + 1)
        e = [alg.basis(i) for i in range(alg.dim)]
        spanning = []
        for s in range(1, n + 1):
            for idx in product(range(alg.dim), repeat=n):
                vecs = [e[j] for j in idx]
                vecs.insert(s, alg_unit)
                spanning.append(elementary(alg, *vecs).vector)
        degenerate = linalg.span_basis(spanning, size)
        if degenerate:
            ann = linalg.kernel_basis(linalg.column_matrix(degenerate, size).T)
        else:
            ann = [linalg._unit(size, j) for j in range(size)]
        annihilator = (np.array([list(v) for v in ann], dtype=object).reshape(len(ann), size))
        standard = [linalg._unit(size, j) for j in range(size)]
        reps = linalg.quotient_representatives(degenerate, standard, size)
        cache[n] = NormalizedQuotient(n, degenerate, reps, annihilator)
    return cache[n]


def normalized_quotient(alg, n):
    """D(n) and complement representatives, after checking b and B preserve D."""
    nq = _degenerate_space(alg, n)
    if n >= 1:
        lower = _degenerate_space(alg, n - 1)
        for v in nq.degenerate:
            w = boundary_b(from_vector(alg, n, v))
            if not lower.contains_degenerate(w.vector):
                raise InternalConsistencyError("b does not preserve degenerate chains",
                                               witness=[linalg.qstr(c) for c in v])
    if alg.is_regular:
        upper = _degenerate_space(alg, n + 1)
        for v in nq.degenerate:
            w = connes_B(from_vector(alg, n, v))
            if not upper.contains_degenerate(w.vector):
                raise InternalConsistencyError("B does not preserve degenerate chains",
                                               witness=[linalg.qstr(c) for c in v])
    return nq


def equal_mod_degenerate(x, y):
    """x == y in the normalized quotient."""
    x._check(y)
    return _degenerate_space(x.alg, x.degree).contains_degenerate((x - y).vector)
