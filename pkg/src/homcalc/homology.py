"""
Exact Hochschild cohomology H^p_alpha(A), H^p_alpha(A, A*) and homology
H_n^alpha(A), induced operations on classes, and the BV generators.

All spaces live in full tensor coordinates (``dim**(p+1)`` entries) so that
cochain and chain vectors can be tested directly.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from homcalc import chains, linalg, operad
from homcalc.algebra import dual_bimodule
from homcalc.chains import Chain
from homcalc.errors import (DegreeError, HypothesisNotSatisfied,
                            InternalConsistencyError, RegularityError)
from homcalc.operad import Cochain


@dataclass
class SubquotientSpace:
    """cycles / boundaries in one degree, with chosen class representatives."""
    kind: str
    degree: int
    ambient_dim: int
    cycle_basis: list
    boundary_basis: list
    representatives: list
    _reducer: linalg.Reducer = field(default=None, repr=False)

    def __post_init__(self):
        if self._reducer is None:
            self._reducer = linalg.Reducer(self.boundary_basis + self.representatives,
                                           self.ambient_dim)

    @property
    def dim(self):
        return len(self.representatives)

    def is_cycle(self, v):
        return self._reducer.contains(v)

    def is_boundary(self, v):
        c = self.coords(v)
        return all(x == 0 for x in c)

    def coords(self, v):
        """Coordinates of the class of ``v`` in the representative basis."""
        v = np.asarray(v, dtype=object).reshape(-1)
        c = self._reducer.coords(v)
        if c is None:
            raise InternalConsistencyError(
                "%s element of degree %d is not a cycle" % (self.kind, self.degree),
                witness=[linalg.qstr(x) for x in v])
        return c[len(self.boundary_basis):]

    def from_coords(self, c):
        out = linalg.zeros(self.ambient_dim)
        for x, r in zip(c, self.representatives):
            if x != 0:
                out = out + x * r
        return out

    def to_json(self, representatives=True):
        d = {"degree": self.degree, "dim": self.dim,
             "cycles": len(self.cycle_basis), "boundaries": len(self.boundary_basis)}
        if representatives:
            d["representatives"] = [[linalg.qstr(x) for x in r] for r in self.representatives]
        return d


def _subquotient(kind, degree, size, cycles, boundaries):
    cycles = linalg.span_basis(cycles, size) if cycles else []
    boundaries = linalg.span_basis(boundaries, size) if boundaries else []
    if len(boundaries) > len(cycles):
        raise InternalConsistencyError("%s: more boundaries than cycles in degree %d"
                                       % (kind, degree))
    try:
        reps = linalg.quotient_representatives(boundaries, cycles, size)
    except ValueError:
        raise InternalConsistencyError("%s: boundaries are not cycles in degree %d"
                                       % (kind, degree)) from None
    return SubquotientSpace(kind, degree, size, cycles, boundaries, reps)


def _kernel_in_basis(basis_vectors, images, image_size, size):
    """Vectors of span(basis) whose images vanish."""
    if not basis_vectors:
        return []
    m = linalg.column_matrix(images, image_size)
    out = []
    for c in linalg.kernel_basis(m):
        v = linalg.zeros(size)
        for x, b in zip(c, basis_vectors):
            if x != 0:
                v = v + x * b
        out.append(v)
    return out


class Hochschild:
    """Lazily computed (co)homology of one algebra up to degree caps."""

    def __init__(self, alg, max_degree=3, max_chain_degree=4):
        if max_degree < 1 or max_chain_degree < 1:
            raise ValueError("degree caps must be >= 1")
        self.alg = alg
        self.max_degree = max_degree
        self.max_chain_degree = max_chain_degree
        self._cache = {}

    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    # -- cochains ---------------------------------------------------------

    def cochain_basis(self, p, dual=False, normalized=False):
        def build():
            if normalized:
                if dual:
                    raise ValueError("normalized A*-cochains are not used")
                return operad.normalized_cochain_basis(self.alg, p)
            return operad.cochain_space_basis(self.alg, p, dual)
        return self._memo(("cbasis", p, dual, normalized), build)

    def _lowest_cochain_degree(self):
        return 0 if self.alg.is_regular and self.alg.is_unital else 1

    def cohomology(self, p, dual=False, normalized=False):
        """H^p_alpha(A) (or with A* coefficients) in full tensor coordinates."""
        if p > self.max_degree:
            raise DegreeError("degree %d exceeds the cap %d" % (p, self.max_degree))
        if p < self._lowest_cochain_degree() or (dual and p < 0):
            raise RegularityError("degree-%d cochains need a regular unital algebra" % p)
        return self._memo(("H", p, dual, normalized),
                          lambda: self._cohomology(p, dual, normalized))

    def _cohomology(self, p, dual, normalized):
        alg = self.alg
        n = alg.dim
        size = n ** (p + 1)
        basis = self.cochain_basis(p, dual, normalized)
        images = [operad.delta_alpha(f).vector for f in basis]
        cycles = _kernel_in_basis([f.vector for f in basis], images, n ** (p + 2), size)
        if p - 1 >= self._lowest_cochain_degree():
            lower = self.cochain_basis(p - 1, dual, normalized)
            boundaries = [operad.delta_alpha(f).vector for f in lower]
        else:
            boundaries = []
        kind = "H^*(A,A*)" if dual else "H^*(A)"
        return _subquotient(kind, p, size, cycles, boundaries)

    def cohomology_dims(self, dual=False):
        lo = self._lowest_cochain_degree()
        return {p: self.cohomology(p, dual).dim for p in range(lo, self.max_degree + 1)}

    def delta_matrix(self, p, dual=False):
        """delta_alpha on C^p in the equivariant basis, as full-coordinate columns."""
        n = self.alg.dim
        basis = self.cochain_basis(p, dual)
        return linalg.column_matrix([operad.delta_alpha(f).vector for f in basis],
                                    n ** (p + 2))

    # -- chains -----------------------------------------------------------

    def boundary_matrix(self, n):
        return self._memo(("bmat", n), lambda: chains.operator_matrix(
            self.alg, n, chains.boundary_b, n - 1))

    def connes_matrix(self, n):
        return self._memo(("Bmat", n), lambda: chains.operator_matrix(
            self.alg, n, chains.connes_B, n + 1))

    def homology(self, n, normalized=False):
        """H_n^alpha(A); with ``normalized`` the quotient by degenerate chains."""
        if n < 0:
            raise DegreeError("negative chain degree")
        if n > self.max_chain_degree:
            raise DegreeError("degree %d exceeds the cap %d" % (n, self.max_chain_degree))
        return self._memo(("Hn", n, normalized), lambda: self._homology(n, normalized))

    def _homology(self, n, normalized):
        alg = self.alg
        size = alg.dim ** (n + 1)
        standard = [linalg._unit(size, j) for j in range(size)]
        if n == 0:
            cycles = standard
        else:
            bm = self.boundary_matrix(n)
            if normalized:
                ann = chains.normalized_quotient(alg, n - 1).annihilator
                bm = ann.dot(bm) if len(ann) else linalg.zeros(0, size)
            cycles = linalg.kernel_basis(bm) if len(bm) else standard
        upper = self.boundary_matrix(n + 1)
        boundaries = [upper[:, j] for j in range(upper.shape[1])]
        if normalized:
            boundaries = boundaries + list(chains.normalized_quotient(alg, n).degenerate)
        kind = "normalized H_*(A)" if normalized else "H_*(A)"
        return _subquotient(kind, n, size, cycles, boundaries)

    def homology_dims(self, normalized=False):
        return {n: self.homology(n, normalized).dim for n in range(self.max_chain_degree + 1)}


# -- classes and induced operations ------------------------------------------


@dataclass
class CohomologyClass:
    degree: int
    representative: Cochain
    space: SubquotientSpace

    def coords(self):
        return self.space.coords(self.representative.vector)


@dataclass
class HomologyClass:
    degree: int
    representative: Chain
    space: SubquotientSpace

    def coords(self):
        return self.space.coords(self.representative.vector)


def cohomology_class(hh, f):
    space = hh.cohomology(f.degree, f.dual)
    space.coords(f.vector)
    return CohomologyClass(f.degree, f, space)


def homology_class(hh, x, normalized=False):
    space = hh.homology(x.degree, normalized)
    space.coords(x.vector)
    return HomologyClass(x.degree, x, space)


def class_basis(hh, p, dual=False, normalized=False):
    """Cocycle representatives of a basis of H^p, as cochains."""
    space = hh.cohomology(p, dual, normalized)
    return [operad.from_vector(hh.alg, p, r, dual) for r in space.representatives]


def homology_basis(hh, n, normalized=False):
    space = hh.homology(n, normalized)
    return [chains.from_vector(hh.alg, n, r) for r in space.representatives]


def random_coboundary(hh, p, rng, dual=False):
    """delta of a random cochain of degree p-1 (zero if there is none)."""
    if p - 1 < hh._lowest_cochain_degree():
        return operad.zero(hh.alg, p, dual)
    basis = hh.cochain_basis(p - 1, dual)
    f = operad.zero(hh.alg, p - 1, dual)
    for b in basis:
        f = f + Fraction(rng.randint(-3, 3)) * b
    return operad.delta_alpha(f)


def random_chain_boundary(hh, n, rng):
    """b of a random chain of degree n+1, through the cached boundary matrix."""
    size = hh.alg.dim ** (n + 2)
    v = linalg.vector([rng.randint(-3, 3) for _ in range(size)])
    return chains.from_vector(hh.alg, n, hh.boundary_matrix(n + 1).dot(v))


def _induced(hh, op, operands, target, perturbations, rng):
    """Class of op(*operands), checked against coboundary perturbations."""
    value = op(*operands)
    coords = target.coords(value.vector)
    rng = rng or random.Random(0)
    for _ in range(perturbations):
        k = rng.randrange(len(operands))
        moved = list(operands)
        f = moved[k]
        moved[k] = f + random_coboundary(hh, f.degree, rng, f.dual)
        other = target.coords(op(*moved).vector)
        if any(a != b for a, b in zip(coords, other)):
            raise InternalConsistencyError(
                "induced operation depends on the representative",
                witness={"operand": k, "degree": f.degree})
    return coords


def induced_cup(hh, f, g, perturbations=0, rng=None):
    target = hh.cohomology(f.degree + g.degree)
    for h in (f, g):
        hh.cohomology(h.degree).coords(h.vector)
    return _induced(hh, operad.cup, [f, g], target, perturbations, rng)


def induced_bracket(hh, f, g, perturbations=0, rng=None):
    target = hh.cohomology(f.degree + g.degree - 1)
    for h in (f, g):
        hh.cohomology(h.degree).coords(h.vector)
    return _induced(hh, operad.bracket, [f, g], target, perturbations, rng)


def induced_chain_op(hh, op, f, x, target_degree, perturbations=0, rng=None,
                     normalized=False):
    """Class of op(f, x) in homology, checked against perturbing f and x."""
    hh.cohomology(f.degree).coords(f.vector)
    hh.homology(x.degree, normalized).coords(x.vector)
    target = hh.homology(target_degree, normalized)
    coords = target.coords(op(f, x).vector)
    rng = rng or random.Random(0)
    for _ in range(perturbations):
        f2 = f + random_coboundary(hh, f.degree, rng)
        x2 = x + random_chain_boundary(hh, x.degree, rng)
        if normalized:
            # keep f normalized: perturb by the coboundary of a normalized cochain
            f2 = f + _normalized_coboundary(hh, f.degree, rng)
        other = target.coords(op(f2, x2).vector)
        if any(a != b for a, b in zip(coords, other)):
            raise InternalConsistencyError("induced chain operation depends on representatives")
    return coords


def _normalized_coboundary(hh, p, rng):
    if p - 1 < hh._lowest_cochain_degree():
        return operad.zero(hh.alg, p)
    g = operad.zero(hh.alg, p - 1)
    for b in hh.cochain_basis(p - 1, normalized=True):
        g = g + Fraction(rng.randint(-3, 3)) * b
    return operad.delta_alpha(g)


def induced_cap(hh, f, x, **kw):
    return induced_chain_op(hh, chains.cap, f, x, x.degree - f.degree, **kw)


def induced_lie(hh, f, x, **kw):
    return induced_chain_op(hh, chains.lie, f, x, x.degree - f.degree + 1, **kw)


def induced_B(hh, x, perturbations=0, rng=None):
    """Class of Bx in normalized homology (B is a differential only modulo degenerates)."""
    hh.alg.require_regular_unital("the induced Connes operator")
    target = hh.homology(x.degree + 1, normalized=True)
    hh.homology(x.degree, normalized=True).coords(x.vector)
    coords = target.coords(chains.connes_B(x).vector)
    rng = rng or random.Random(0)
    for _ in range(perturbations):
        x2 = x + random_chain_boundary(hh, x.degree, rng)
        if any(a != b for a, b in zip(coords, target.coords(chains.connes_B(x2).vector))):
            raise InternalConsistencyError("induced B depends on the representative")
    return coords


# -- A* coefficients and BV ---------------------------------------------------


def dot_product(f, m):
    """(f.m)(a_1..a_{p+r}) = f(a_1..a_p) . m(a_{p+1}..a_{p+r}), left action on A*."""
    if f.dual or not m.dual:
        raise ValueError("dot_product takes an A-cochain and an A*-cochain")
    left = dual_bimodule(f.alg).left  # [o, j, k]
    t = np.tensordot(f.coeffs, left, axes=([f.degree], [0]))      # [a.., j, k]
    t = np.tensordot(t, m.coeffs, axes=([f.degree], [m.degree]))  # [a.., k, b..]
    t = np.moveaxis(t, f.degree, -1)
    return Cochain(f.alg, t, dual=True)


def as_functional(m):
    """A*-cochain of degree r as a functional on M(r): x -> m(a_1..a_r)(a_0)."""
    return np.moveaxis(m.coeffs, -1, 0)


def from_functional(alg, t):
    return Cochain(alg, np.moveaxis(np.asarray(t, dtype=object), 0, -1), dual=True)


def pair(m, x):
    """m(x) for an A*-cochain and a chain of the same degree."""
    if m.degree != x.degree:
        raise DegreeError("pairing needs equal degrees")
    return sum((a * b for a, b in zip(as_functional(m).flat, x.coeffs.flat)), Fraction(0))


def B_star(m, hh=None):
    """B*(m) = (-1)^{|m|} m o B : C^{r}(A, A*) -> C^{r-1}(A, A*); zero in degree 0."""
    alg = m.alg
    alg.require_regular_unital("B*")
    r = m.degree
    if r == 0:
        raise DegreeError("B* of a degree-0 class lands in degree -1")
    bm = hh.connes_matrix(r - 1) if hh is not None else chains.operator_matrix(
        alg, r - 1, chains.connes_B, r)
    psi = bm.T.dot(as_functional(m).reshape(-1))
    psi = (-1) ** r * psi
    return from_functional(alg, psi.reshape((alg.dim,) * r))


def _coords_matrix(space, vectors):
    return linalg.column_matrix([space.coords(v) for v in vectors], space.dim)


def _invert_square(m):
    n = m.shape[0]
    if m.shape != (n, n) or linalg.rank(m) != n:
        return None
    cols = [linalg.solve(m, linalg._unit(n, j)) for j in range(n)]
    return linalg.column_matrix(cols, n)


@dataclass
class BVGenerator:
    """Delta as exact matrices in class coordinates: delta[p] maps H^p -> H^{p-1}."""
    delta: dict
    hh: Hochschild
    route: str
    details: dict = field(default_factory=dict)

    def apply(self, p, coords):
        if p == 0 or p not in self.delta:
            return None
        return self.delta[p].dot(np.asarray(coords, dtype=object))

    def squares_to_zero(self):
        for p in self.delta:
            if p - 1 in self.delta and p - 1 >= 1:
                if not linalg.is_zero(self.delta[p - 1].dot(self.delta[p])):
                    return False
        return True

    def to_json(self):
        return {"route": self.route,
                "delta": {str(p): [[linalg.qstr(x) for x in row] for row in m.tolist()]
                          for p, m in sorted(self.delta.items())},
                "details": self.details}


def transported_isomorphism(hh, theta):
    """Per-degree matrices of H^p(A) -> H^p(A, A*), f -> Theta o f; all must be invertible."""
    alg = hh.alg
    theta = np.asarray(theta, dtype=object)
    report = {}
    for p in range(0, hh.max_degree + 1):
        src = hh.cohomology(p)
        dst = hh.cohomology(p, dual=True)
        imgs = [operad.postcompose(operad.from_vector(alg, p, r).coeffs, theta).reshape(-1)
                for r in src.representatives]
        m = _coords_matrix(dst, imgs)
        ok = src.dim == dst.dim and linalg.rank(m) == src.dim
        report[p] = {"matrix": [[linalg.qstr(x) for x in row] for row in m.tolist()],
                     "invertible": ok, "dims": [src.dim, dst.dim]}
        if not ok:
            raise InternalConsistencyError("Theta does not induce an isomorphism in degree %d" % p,
                                           witness=report[p])
    return report


def _B_star_or_zero(m, hh):
    if m.degree == 0:
        return None
    return B_star(m, hh)


def bv_generator_from_dual_class(hh, m):
    """Delta with (Delta f).m = B*(f.m) for a dual class m with B*(m) = 0."""
    alg = hh.alg
    alg.require_regular_unital("the BV construction from a dual class")
    d = m.degree
    hh.cohomology(d, dual=True).coords(m.vector)
    bm = _B_star_or_zero(m, hh)
    if bm is not None and not hh.cohomology(d - 1, dual=True).is_boundary(bm.vector):
        raise HypothesisNotSatisfied("B*(m) is not zero in cohomology")
    top = hh.max_degree - d
    if top < 0:
        raise DegreeError("dual class degree %d above the degree cap" % d)
    iso = {}
    for p in range(0, top + 1):
        src = hh.cohomology(p)
        dst = hh.cohomology(p + d, dual=True)
        imgs = [dot_product(operad.from_vector(alg, p, r), m).vector for r in src.representatives]
        mat = _coords_matrix(dst, imgs)
        inv = _invert_square(mat)
        if inv is None:
            raise HypothesisNotSatisfied("f -> f.m is not an isomorphism in degree %d" % p)
        iso[p] = (mat, inv)
    delta = {}
    for p in range(1, top + 1):
        src = hh.cohomology(p)
        dst = hh.cohomology(p + d - 1, dual=True)
        cols = []
        for r in src.representatives:
            y = B_star(dot_product(operad.from_vector(alg, p, r), m), hh)
            cols.append(iso[p - 1][1].dot(dst.coords(y.vector)))
        delta[p] = linalg.column_matrix(cols, hh.cohomology(p - 1).dim)
    return BVGenerator(delta, hh, "dual_class",
                       {"degree": d, "m": [linalg.qstr(x) for x in m.coeffs.flat]})


def bv_generator_symmetric(hh, sym):
    """Delta = B* transported along f -> f . [Theta(1)]."""
    alg = hh.alg
    alg.require_regular_unital("the symmetric BV construction")
    if sym is None:
        raise HypothesisNotSatisfied("no symmetric structure")
    theta = np.asarray(sym.theta, dtype=object)
    m0 = Cochain(alg, theta.dot(alg.unit), dual=True)
    if not operad.delta_alpha(m0).is_zero():
        raise HypothesisNotSatisfied("Theta(1) is not a 0-cocycle")
    bv = bv_generator_from_dual_class(hh, m0)
    bv.route = "symmetric"
    return bv


def bv_generator_from_homology_class(hh, c):
    """Delta with i_{Delta f} c = B(i_f c) for a homology class c of degree d."""
    alg = hh.alg
    alg.require_regular_unital("the BV construction from a homology class")
    d = c.degree
    if d + 1 > hh.max_chain_degree:
        raise DegreeError("class degree %d too high for the chain cap" % d)
    if not all(x == 0 for x in hh.homology(d + 1, normalized=True).coords(
            chains.connes_B(c).vector)):
        raise HypothesisNotSatisfied("B(c) is not zero in homology")
    iso = {}
    for p in range(0, hh.max_degree + 1):
        src = hh.cohomology(p)
        if p > d:
            if src.dim:
                raise HypothesisNotSatisfied(
                    "H^%d is nonzero but i_f c would land in negative degree" % p)
            iso[p] = (linalg.zeros(0, 0), linalg.zeros(0, 0))
            continue
        dst = hh.homology(d - p, normalized=True)
        imgs = [chains.cap(operad.from_vector(alg, p, r), c).vector
                for r in src.representatives]
        m = _coords_matrix(dst, imgs)
        inv = _invert_square(m)
        if inv is None:
            raise HypothesisNotSatisfied("f -> i_f c is not an isomorphism in degree %d" % p)
        iso[p] = (m, inv)
    delta = {}
    for p in range(1, min(d, hh.max_degree) + 1):
        src = hh.cohomology(p)
        dst = hh.homology(d - p + 1, normalized=True)
        cols = []
        for r in src.representatives:
            y = chains.connes_B(chains.cap(operad.from_vector(alg, p, r), c))
            cols.append(iso[p - 1][1].dot(dst.coords(y.vector)))
        delta[p] = linalg.column_matrix(cols, hh.cohomology(p - 1).dim)
    for p in range(d + 1, hh.max_degree + 1):
        delta[p] = linalg.zeros(hh.cohomology(p - 1).dim, 0)
    return BVGenerator(delta, hh, "homology_class", {"degree": d})


def search_homology_classes(hh, d, tries=20, seed=0):
    """Candidate classes c in H_d for which the BV construction succeeds."""
    basis = homology_basis(hh, d)
    rng = random.Random(seed)
    candidates = list(basis)
    for _ in range(tries):
        x = chains.zero_chain(hh.alg, d)
        for b in basis:
            x = x + Fraction(rng.randint(-3, 3)) * b
        candidates.append(x)
    found = []
    for x in candidates:
        if x.is_zero():
            continue
        try:
            found.append((x, bv_generator_from_homology_class(hh, x)))
        except HypothesisNotSatisfied:
            continue
    return found
