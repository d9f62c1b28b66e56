"""
Classical Hochschild and Connes operations for an associative algebra,
written from scratch on plain Python containers (no numpy, no homcalc).

Vectors are lists of Fractions.  A p-cochain is a dict mapping each input
index tuple (length p) to its output vector.  An n-chain is a dict mapping
index tuples (length n+1) to coefficients; missing keys are zero.

Conventions (those of the package at alpha = id):

* coboundary  (df)(a1..a_{p+1}) = a1 f(a2..) + sum_i (-1)^i f(.., a_i a_{i+1}, ..)
                                  + (-1)^{p+1} f(a1..ap) a_{p+1}
* cup         (f u g)(a1..a_{p+q}) = g(a1..aq) . f(a_{q+1}..)
* bracket     Gerstenhaber, [f, g] = f o g - (-1)^{(p-1)(q-1)} g o f
* b           the Hochschild boundary with the wrap-around term a_n a_0
* cap         i_f(a0..an) = a0 f(a1..ap) (x) a_{p+1} .. a_n
* Lie         the Rinehart formula for L_f
* Connes      B = sum_j (-1)^{nj} (1 - t)(1 (x) a_j .. a_n (x) a_0 .. a_{j-1})
"""

from fractions import Fraction
from itertools import product


class Assoc:
    def __init__(self, dim, table, unit=None):
        """``table[(i, j)]`` is the product e_i e_j as a list of coefficients."""
        self.dim = dim
        self.table = {k: [Fraction(x) for x in v] for k, v in table.items()}
        self.unit = None if unit is None else [Fraction(x) for x in unit]

    def zero(self):
        return [Fraction(0)] * self.dim

    def basis(self, i):
        v = self.zero()
        v[i] = Fraction(1)
        return v

    def mul(self, u, v):
        out = self.zero()
        for i, a in enumerate(u):
            if a == 0:
                continue
            for j, b in enumerate(v):
                if b == 0:
                    continue
                for k, c in enumerate(self.table.get((i, j), ())):
                    out[k] += a * b * c
        return out


def add(u, v, s=1):
    return [a + s * b for a, b in zip(u, v)]


def scale(c, u):
    return [c * a for a in u]


# -- cochains ------------------------------------------------------------------


def evaluate(A, f, p, args):
    """f on arbitrary vectors, by multilinearity."""
    out = A.zero()
    for idx in product(range(A.dim), repeat=p):
        c = Fraction(1)
        for a, i in zip(args, idx):
            c *= a[i]
            if c == 0:
                break
        if c != 0:
            out = add(out, scale(c, f[idx]))
    return out


def coboundary(A, f, p):
    e = [A.basis(i) for i in range(A.dim)]
    out = {}
    for idx in product(range(A.dim), repeat=p + 1):
        a = [e[i] for i in idx]
        v = A.mul(a[0], evaluate(A, f, p, a[1:]))
        for i in range(1, p + 1):
            args = a[:i - 1] + [A.mul(a[i - 1], a[i])] + a[i + 1:]
            v = add(v, evaluate(A, f, p, args), (-1) ** i)
        v = add(v, A.mul(evaluate(A, f, p, a[:p]), a[p]), (-1) ** (p + 1))
        out[idx] = v
    return out


def insert(A, f, p, i, g, q):
    """f o_i g: g fills the i-th argument of f (1-based)."""
    e = [A.basis(k) for k in range(A.dim)]
    out = {}
    for idx in product(range(A.dim), repeat=p + q - 1):
        a = [e[k] for k in idx]
        inner = evaluate(A, g, q, a[i - 1:i - 1 + q])
        out[idx] = evaluate(A, f, p, a[:i - 1] + [inner] + a[i - 1 + q:])
    return out


def _combine(A, n, terms):
    out = {idx: A.zero() for idx in product(range(A.dim), repeat=n)}
    for c, h in terms:
        for idx in out:
            out[idx] = add(out[idx], h[idx], c)
    return out


def gerstenhaber_bracket(A, f, p, g, q):
    terms = [((-1) ** ((q - 1) * (i - 1)), insert(A, f, p, i, g, q)) for i in range(1, p + 1)]
    s = -(-1) ** ((p - 1) * (q - 1))
    terms += [(s * (-1) ** ((p - 1) * (i - 1)), insert(A, g, q, i, f, p))
              for i in range(1, q + 1)]
    return _combine(A, p + q - 1, terms)


def cup(A, f, p, g, q):
    e = [A.basis(k) for k in range(A.dim)]
    out = {}
    for idx in product(range(A.dim), repeat=p + q):
        a = [e[k] for k in idx]
        out[idx] = A.mul(evaluate(A, g, q, a[:q]), evaluate(A, f, p, a[q:]))
    return out


# -- chains --------------------------------------------------------------------


def _accumulate(A, out, c, vectors):
    """out += c * v_0 (x) v_1 (x) ... expanded in the basis."""
    supports = [[(i, x) for i, x in enumerate(v) if x != 0] for v in vectors]
    for choice in product(*supports):
        coef = c
        for _, x in choice:
            coef *= x
        key = tuple(i for i, _ in choice)
        out[key] = out.get(key, Fraction(0)) + coef


def _clean(x):
    return {k: v for k, v in x.items() if v != 0}


def hochschild_b(A, x, n):
    e = [A.basis(k) for k in range(A.dim)]
    out = {}
    for idx, c in x.items():
        a = [e[k] for k in idx]
        for i in range(n):
            _accumulate(A, out, (-1) ** i * c, a[:i] + [A.mul(a[i], a[i + 1])] + a[i + 2:])
        _accumulate(A, out, (-1) ** n * c, [A.mul(a[n], a[0])] + a[1:n])
    return _clean(out)


def cap(A, f, p, x, n):
    e = [A.basis(k) for k in range(A.dim)]
    out = {}
    for idx, c in x.items():
        a = [e[k] for k in idx]
        _accumulate(A, out, c, [A.mul(a[0], evaluate(A, f, p, a[1:p + 1]))] + a[p + 1:])
    return _clean(out)


def lie(A, f, p, x, n):
    e = [A.basis(k) for k in range(A.dim)]
    out = {}
    for idx, c in x.items():
        a = [e[k] for k in idx]
        for i in range(1, n - p + 2):
            vecs = a[:i] + [evaluate(A, f, p, a[i:i + p])] + a[i + p:]
            _accumulate(A, out, (-1) ** ((p - 1) * (i - 1)) * c, vecs)
        for i in range(1, p + 1):
            # f eats a_{n-i+2}, .., a_n, a_0, .., a_{p-i}
            order = [(n - i + 2 + s) % (n + 1) for s in range(n + 1)]
            vecs = [evaluate(A, f, p, [a[k] for k in order[:p]])] + [a[k] for k in order[p:]]
            _accumulate(A, out, (-1) ** (n * (i - 1) + p - 1) * c, vecs)
    return _clean(out)


def connes_B(A, x, n):
    e = [A.basis(k) for k in range(A.dim)]
    one = A.unit
    out = {}
    for idx, c in x.items():
        a = [e[k] for k in idx]
        for j in range(n + 1):
            rotated = a[j:] + a[:j]
            sign = (-1) ** (n * j) * c
            _accumulate(A, out, sign, [one] + rotated)
            # minus the cyclic rotation of the same tensor
            _accumulate(A, out, -sign, [rotated[-1], one] + rotated[:-1])
    return _clean(out)


def connes_B_normalized(A, x, n):
    """The usual B on the normalized complex (no (1 - t) factor)."""
    e = [A.basis(k) for k in range(A.dim)]
    out = {}
    for idx, c in x.items():
        a = [e[k] for k in idx]
        for j in range(n + 1):
            _accumulate(A, out, (-1) ** (n * j) * c, [A.unit] + a[j:] + a[:j])
    return _clean(out)
