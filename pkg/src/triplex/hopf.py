"""H-bialgebra structure on the truncated enveloping algebra.

Comultiplication is computed by lifting to the free algebra, where it
is the multiplicative extension of a -> a(x)1 + 1(x)a on trees, and
reducing both legs.  That is only sound because the defining relators
are coideal elements; ``check_coideal`` certifies this for the
generator-level relator families and is run once per algebra before the
first comultiplication.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct

from .exactlin import ONE, ZERO, SparseVector, echelonize, kernel
from .envelope import Element
from .freealg import UNIT, graft, is_leaf, tree_degree


class TensorElement:
    """Sparse two-leg tensor with normal-form monomial coordinates."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs):
        self.algebra = algebra
        self.coeffs = {k: Fraction(a) for k, a in coeffs.items() if a}

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, a in other.coeffs.items():
            s = out.get(k, ZERO) + a
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return TensorElement(self.algebra, out)

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, a):
        a = Fraction(a)
        if not a:
            return TensorElement(self.algebra, {})
        return TensorElement(self.algebra, {k: a * c for k, c in self.coeffs.items()})

    def __mul__(self, other):
        """Componentwise (legwise) product of tensors."""
        if not isinstance(other, TensorElement):
            return NotImplemented
        alg = self.algebra
        out = TensorElement(alg, {})
        for (l1, r1), a in self.coeffs.items():
            for (l2, r2), b in other.coeffs.items():
                left = alg.monomial(l1) * alg.monomial(l2)
                right = alg.monomial(r1) * alg.monomial(r2)
                out = out + (a * b) * _outer(left, right)
        return out

    def swap(self):
        return TensorElement(self.algebra,
                             {(r, l): a for (l, r), a in self.coeffs.items()})

    def apply_counit_left(self):
        """(eps (x) Id) of the tensor, as an Element."""
        alg = self.algebra
        unit = (0,) * alg.d
        out = alg.zero()
        for (l, r), a in self.coeffs.items():
            if l == unit:
                out = out + a * alg.monomial(r)
        return out

    def apply_counit_right(self):
        alg = self.algebra
        unit = (0,) * alg.d
        out = alg.zero()
        for (l, r), a in self.coeffs.items():
            if r == unit:
                out = out + a * alg.monomial(l)
        return out

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.algebra is other.algebra and self.coeffs == other.coeffs

    def __repr__(self):
        return f"TensorElement({len(self.coeffs)} terms)"


def _outer(x, y):
    out = {}
    for vl, a in x.coeffs.items():
        for vr, b in y.coeffs.items():
            out[(vl, vr)] = out.get((vl, vr), ZERO) + a * b
    return TensorElement(x.algebra, out)


def counit(x):
    """Coefficient of the empty monomial; a multiplicative morphism."""
    return x.counit()


def _split_tree(t, legs):
    """Expansion of a tree under the ``legs``-fold free comultiplication.

    Returns a dict mapping leg-tuples of trees to integer multiplicities;
    a leaf goes to the sum over positions, the unit to all-unit legs, and
    a pair multiplies (grafts) the expansions legwise.
    """
    if t == UNIT:
        return {(UNIT,) * legs: 1}
    if is_leaf(t):
        out = {}
        for pos in range(legs):
            key = tuple(t if i == pos else UNIT for i in range(legs))
            out[key] = out.get(key, 0) + 1
        return out
    left = _split_tree(t[0], legs)
    right = _split_tree(t[1], legs)
    out = {}
    for k1, m1 in left.items():
        for k2, m2 in right.items():
            key = tuple(graft(a, b) for a, b in zip(k1, k2))
            out[key] = out.get(key, 0) + m1 * m2
    return out


def _splits_cache(alg, legs):
    attr = f"_hopf_splits_{legs}"
    cache = getattr(alg, attr, None)
    if cache is None:
        cache = {}
        setattr(alg, attr, cache)
    return cache


def _split_monomial(alg, exps, legs):
    """Reduced legs of the iterated comultiplication of a basis monomial."""
    cache = _splits_cache(alg, legs)
    hit = cache.get(exps)
    if hit is None:
        from .freealg import tree_key
        tree = alg.rep_tree[exps]
        terms = []
        splits = _split_tree(tree, legs)
        for key in sorted(splits, key=lambda legs_: tuple(tree_key(t) for t in legs_)):
            terms.append((tuple(alg.reduce_tree(t) for t in key),
                          Fraction(splits[key])))
        cache[exps] = hit = terms
    return hit


def comult(x):
    """Algebra morphism with Delta(a) = a(x)1 + 1(x)a on generators."""
    alg = x.algebra
    check_coideal(alg)
    out = TensorElement(alg, {})
    for exps, a in x.coeffs.items():
        for (lred, rred), mult in _split_monomial(alg, exps, 2):
            out = out + (a * mult) * _outer(lred, rred)
    return out


def comult3(x):
    """Left-nested iterated comultiplication (Delta (x) Id) Delta."""
    alg = x.algebra
    check_coideal(alg)
    out = {}
    for exps, a in x.coeffs.items():
        for (t1, t2, t3), mult in _split_monomial(alg, exps, 3):
            c = a * mult
            for v1, a1 in t1.coeffs.items():
                for v2, a2 in t2.coeffs.items():
                    for v3, a3 in t3.coeffs.items():
                        key = (v1, v2, v3)
                        s = out.get(key, ZERO) + c * a1 * a2 * a3
                        if s:
                            out[key] = s
                        else:
                            out.pop(key, None)
    return out


def s_map(x):
    """The order-2 automorphism induced by a -> -a: (-1)^degree on monomials."""
    return Element(x.algebra, {v: a if sum(v) % 2 == 0 else -a
                               for v, a in x.coeffs.items()})


def left_div(x, y):
    """x \\ y = S(x) y."""
    return s_map(x) * y


def right_div(y, x):
    """y / x = sum S(x_(3)) ((x_(1) y) S(x_(2)))."""
    alg = y.algebra
    out = alg.zero()
    for (v1, v2, v3), a in comult3(x).items():
        x1, x2, x3 = alg.monomial(v1), alg.monomial(v2), alg.monomial(v3)
        out = out + a * (s_map(x3) * ((x1 * y) * s_map(x2)))
    return out


def check_coideal(alg):
    """Certify Delta descends to the quotient: the generator-level relator
    families reduce to zero legwise after free comultiplication."""
    if getattr(alg, "_hopf_coideal_ok", False):
        return
    d = alg.d

    def free_delta_reduced_is_zero(rel):
        acc = {}
        for t, c in rel.items():
            for (lt, rt), mult in _split_tree(t, 2).items():
                lred = alg.reduce_tree(lt)
                rred = alg.reduce_tree(rt)
                for vl, a in lred.coeffs.items():
                    for vr, b in rred.coeffs.items():
                        key = (vl, vr)
                        s = acc.get(key, ZERO) + c * mult * a * b
                        if s:
                            acc[key] = s
                        else:
                            acc.pop(key, None)
        return not acc

    rels = []
    for i in range(d):
        for j in range(i + 1, d):
            rels.append({(i, j): ONE, (j, i): -ONE})
    for a in range(d):
        for m1 in range(d):
            for m2 in range(d):
                r = {}
                for t, c in ((graft(graft(a, m1), m2), ONE),
                             (graft(a, graft(m1, m2)), -ONE),
                             (graft(graft(m1, a), m2), ONE),
                             (graft(m1, graft(a, m2)), -ONE)):
                    r[t] = r.get(t, ZERO) + c
                rels.append(r)
    for i, j, k in iproduct(range(d), repeat=3):
        r = {}
        for t, c in ((graft(i, graft(j, k)), ONE), (graft(j, graft(i, k)), -ONE)):
            r[t] = r.get(t, ZERO) + c
        for l, c in enumerate(alg.system.basis_product(i, j, k)):
            if c:
                r[l] = r.get(l, ZERO) - c
        rels.append(r)
    for rel in rels:
        if not free_delta_reduced_is_zero(rel):
            raise RuntimeError("a defining relator is not a coideal element")
    alg._hopf_coideal_ok = True


@dataclass
class CoalgebraReport:
    ok: bool
    failures: list = field(default_factory=list)


def check_coalgebra(alg, degree):
    """Coassociativity, cocommutativity, counit laws and multiplicativity."""
    failures = []
    monomials = [v for v in alg.exponents if sum(v) <= degree]
    for v in monomials:
        x = alg.monomial(v)
        dx = comult(x)
        # coassociativity: (Delta (x) Id) Delta == (Id (x) Delta) Delta
        lhs = comult3(x)
        rhs = {}
        for (l, r), a in dx.coeffs.items():
            for (rl, rr), b in comult(alg.monomial(r)).coeffs.items():
                key = (l, rl, rr)
                s = rhs.get(key, ZERO) + a * b
                if s:
                    rhs[key] = s
                else:
                    rhs.pop(key, None)
        if lhs != rhs:
            failures.append(("coassociativity", v))
        if dx.swap() != dx:
            failures.append(("cocommutativity", v))
        if dx.apply_counit_left() != x or dx.apply_counit_right() != x:
            failures.append(("counit law", v))
    for v in monomials:
        for w in monomials:
            if sum(v) + sum(w) > alg.cap:
                continue
            x, y = alg.monomial(v), alg.monomial(w)
            if comult(x * y) != comult(x) * comult(y):
                failures.append(("multiplicativity", v, w))
    return CoalgebraReport(not failures, failures)


@dataclass
class DivisionReport:
    ok: bool
    failures: list = field(default_factory=list)


def check_divisions(alg, x, y):
    """The four left/right division identities, exactly."""
    target = counit(x) * y
    failures = []
    dx = comult(x)
    lhs1 = alg.zero()
    lhs2 = alg.zero()
    for (v1, v2), a in dx.coeffs.items():
        x1, x2 = alg.monomial(v1), alg.monomial(v2)
        lhs1 = lhs1 + a * left_div(x1, x2 * y)
        lhs2 = lhs2 + a * (x1 * left_div(x2, y))
    if lhs1 != target:
        failures.append("sum x1 \\ (x2 y) != eps(x) y")
    if lhs2 != target:
        failures.append("sum x1 (x2 \\ y) != eps(x) y")
    lhs3 = alg.zero()
    lhs4 = alg.zero()
    for (v1, v2), a in dx.coeffs.items():
        x1, x2 = alg.monomial(v1), alg.monomial(v2)
        lhs3 = lhs3 + a * right_div(y * x1, x2)
        lhs4 = lhs4 + a * (right_div(y, x1) * x2)
    if lhs3 != target:
        failures.append("sum (y x1) / x2 != eps(x) y")
    if lhs4 != target:
        failures.append("sum (y / x1) x2 != eps(x) y")
    return DivisionReport(not failures, failures)


def check_weak_assoc(alg, x, y, z):
    """sum x1 (y (x2 z)) == sum (x1 (y x2)) z."""
    lhs = alg.zero()
    rhs = alg.zero()
    for (v1, v2), a in comult(x).coeffs.items():
        x1, x2 = alg.monomial(v1), alg.monomial(v2)
        lhs = lhs + a * (x1 * (y * (x2 * z)))
        rhs = rhs + a * ((x1 * (y * x2)) * z)
    return lhs == rhs


def primitives(alg, degree):
    """Solution space of Delta(x) = x(x)1 + 1(x)x inside filtration(degree)."""
    check_coideal(alg)
    unit = (0,) * alg.d
    monomials = [v for v in alg.exponents if sum(v) <= degree]
    pair_index = {}

    def flat(pairs):
        coords = {}
        for (l, r), a in pairs.items():
            key = pair_index.setdefault((l, r), len(pair_index))
            coords[key] = a
        return coords

    images = []
    for v in monomials:
        x = alg.monomial(v)
        dx = comult(x)
        defect = (dx - TensorElement(alg, {(v, unit): ONE})
                  - TensorElement(alg, {(unit, v): ONE}))
        images.append(flat(defect.coeffs))
    ambient = max(len(pair_index), 1)
    vecs = [SparseVector(c, ambient) for c in images]
    ker = kernel(vecs, len(monomials), ambient)
    rows = []
    for r in ker.rows:
        coords = {alg.exp_index[monomials[c]]: a for c, a in r.coords.items()}
        rows.append(SparseVector(coords, alg.nf_size))
    return echelonize(rows, alg.nf_size)
