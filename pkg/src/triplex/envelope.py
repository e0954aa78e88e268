"""Degree-truncated universal enveloping algebra of a Lie triple system.

Built as a quotient of the free unital nonassociative algebra by the
span of the defining relators, closed into a two-sided ideal within the
degree budget.  The quotient is certified a posteriori: the dimension at
every filtration level must match the symmetric-algebra count, and the
normal-form representatives (exponent-vector monomials) must survive as
non-pivot columns; otherwise the build aborts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from math import comb

from .exactlin import ONE, ZERO, Echelon, SparseVector, Subspace, echelonize
from .freealg import (UNIT, DegreeBudgetExceeded, FreeElement, MonomialTable,
                      fmul, graft, power_tree, tree_degree, tree_key)
from .lts import check_axioms, unit_vector


class PBWCertificateFailure(RuntimeError):
    pass


def exponent_vectors(d, cap):
    """All exponent vectors with |k| <= cap, sorted by (degree, lex)."""
    out = []

    def rec(prefix, remaining):
        if len(prefix) == d:
            out.append(tuple(prefix))
            return
        for k in range(remaining + 1):
            rec(prefix + [k], remaining - k)

    by_degree = []
    rec([], cap)
    for n in range(cap + 1):
        stratum = sorted(v for v in out if sum(v) == n)
        by_degree.extend(stratum)
    return by_degree


def representative_tree(exps):
    """b1^k1 * (b2^k2 * (... * bd^kd)); powers left-nested, blocks right-nested."""
    t = UNIT
    for g in range(len(exps) - 1, -1, -1):
        if exps[g]:
            t = graft(power_tree(g, exps[g]), t)
    return t


class EnvelopingAlgebra:
    """U(T) truncated at total degree ``cap``, with certified normal forms."""

    def __init__(self, system, cap, max_monomials=200_000):
        report = check_axioms(system)
        if not report.ok:
            raise PBWCertificateFailure(
                f"input is not a Lie triple system: {report}")
        if cap < 1:
            raise ValueError("cap must be >= 1")
        self.system = system
        self.cap = cap
        self.d = system.dim
        self.table = MonomialTable(self.d, cap, max_monomials)

        self.exponents = exponent_vectors(self.d, cap)
        self.exp_index = {v: i for i, v in enumerate(self.exponents)}
        self.nf_size = len(self.exponents)
        self.rep_tree = {v: representative_tree(v) for v in self.exponents}
        rep_set = set(self.rep_tree.values())
        self.tree_exp = {t: v for v, t in self.rep_tree.items()}

        # elimination order: higher degree first; within a degree the
        # representative monomials come last so pivots avoid them
        order = sorted(self.table.trees,
                       key=lambda t: (-tree_degree(t), t in rep_set, tree_key(t)))
        self._elim_of_tree = {t: i for i, t in enumerate(order)}
        self._tree_of_elim = order

        self._ech = Echelon()
        self._build_relation_span()
        self._certify()
        self._reduce_cache = {}
        self._verify_power_bracketings()

    # -- construction -------------------------------------------------------

    def _to_elim(self, coeffs):
        return {self._elim_of_tree[t]: a for t, a in coeffs.items()}

    def _from_elim(self, row):
        return {self._tree_of_elim[c]: a for c, a in row.items()}

    def _relators(self):
        d, N = self.d, self.cap
        sys = self.system
        rels = []
        # commuting generator images
        for i in range(d):
            for j in range(i + 1, d):
                rels.append({(i, j): ONE, (j, i): -ONE})
        # generalized left alternative nucleus on monomial arguments:
        # (a,m1,m2) + (m1,a,m2) = (a m1)m2 - a(m1 m2) + (m1 a)m2 - m1(a m2)
        for a in range(d):
            for n1 in range(1, N - 1):
                for n2 in range(1, N - n1):
                    for m1 in self.table.degree_slice(n1):
                        for m2 in self.table.degree_slice(n2):
                            r = {}
                            for t, c in ((graft(graft(a, m1), m2), ONE),
                                         (graft(a, graft(m1, m2)), -ONE),
                                         (graft(graft(m1, a), m2), ONE),
                                         (graft(m1, graft(a, m2)), -ONE)):
                                r[t] = r.get(t, ZERO) + c
                            rels.append({t: c for t, c in r.items() if c})
        # triple coherence: a(bc) - b(ac) = [a,b,c] in the quotient
        for i, j, k in iproduct(range(d), repeat=3):
            r = {}
            for t, c in ((graft(i, graft(j, k)), ONE), (graft(j, graft(i, k)), -ONE)):
                r[t] = r.get(t, ZERO) + c
            for l, c in enumerate(sys.basis_product(i, j, k)):
                if c:
                    r[l] = r.get(l, ZERO) - c
            rels.append({t: c for t, c in r.items() if c})
        return rels

    def _build_relation_span(self):
        N = self.cap
        work = []
        for rel in self._relators():
            row = self._ech.insert(self._to_elim(rel))
            if row is not None:
                work.append(self._from_elim(row))
        # two-sided ideal closure: multiply by every monomial on both
        # sides within the degree budget, lowest degrees first
        while work:
            work.sort(key=lambda r: max(tree_degree(t) for t in r))
            new = []
            for row in work:
                top = max(tree_degree(t) for t in row)
                for n in range(1, N - top + 1):
                    for m in self.table.degree_slice(n):
                        for prod in (self._mul_row(row, m, left=False),
                                     self._mul_row(row, m, left=True)):
                            added = self._ech.insert(self._to_elim(prod))
                            if added is not None:
                                new.append(self._from_elim(added))
            work = new

    @staticmethod
    def _mul_row(row, m, left):
        out = {}
        for t, a in row.items():
            p = graft(m, t) if left else graft(t, m)
            s = out.get(p, ZERO) + a
            if s:
                out[p] = s
            else:
                out.pop(p, None)
        return out

    def _certify(self):
        N, d = self.cap, self.d
        rep_elims = {self._elim_of_tree[t] for t in self.tree_exp}
        pivot_degree = {}
        for p in self._ech.pivots():
            if p in rep_elims:
                t = self._tree_of_elim[p]
                raise PBWCertificateFailure(
                    f"pivot fell on normal-form representative {t!r}")
            pivot_degree[p] = tree_degree(self._tree_of_elim[p])
        counts = [0] * (N + 1)
        for p, deg in pivot_degree.items():
            counts[deg] += 1
        self.relspan_degree_dims = []
        self.degree_dims = []
        running = 0
        for n in range(N + 1):
            running += counts[n]
            rel_dim = running
            free_dim = self.table.cumulative_count(n)
            quot = free_dim - rel_dim
            expected = comb(d + n, n)
            if quot != expected:
                raise PBWCertificateFailure(
                    f"quotient dimension {quot} at filtration level {n} does "
                    f"not match the symmetric-algebra count {expected}")
            self.relspan_degree_dims.append(rel_dim)
            self.degree_dims.append(quot)
        self.relspan_dim = self._ech.dim

    def _verify_power_bracketings(self):
        from .freealg import _trees
        for g in range(self.d):
            for n in range(2, min(4, self.cap) + 1):
                target = self.reduce_tree(power_tree(g, n))
                for shape in _trees(1, n):
                    t = _relabel(shape, g)
                    if self.reduce_tree(t) != target:
                        raise PBWCertificateFailure(
                            f"power of generator {g} depends on bracketing at n={n}")

    # -- normal forms -------------------------------------------------------

    def reduce_tree(self, t):
        """Normal form of a single monomial tree, cached."""
        cached = self._reduce_cache.get(t)
        if cached is None:
            if tree_degree(t) > self.cap:
                raise DegreeBudgetExceeded(
                    f"monomial degree {tree_degree(t)} exceeds cap {self.cap}")
            residue = self._ech.reduce({self._elim_of_tree[t]: ONE})
            cached = Element(self, {self.tree_exp[self._tree_of_elim[c]]: a
                                    for c, a in residue.items()})
            self._reduce_cache[t] = cached
        return cached

    def reduce(self, x):
        """Linear extension of tree reduction to a FreeElement."""
        out = Element(self, {})
        for t, a in x.coeffs.items():
            out = out + a * self.reduce_tree(t)
        return out

    def zero(self):
        return Element(self, {})

    def one(self):
        return Element(self, {(0,) * self.d: ONE})

    def generator(self, g):
        return Element(self, {tuple(1 if i == g else 0 for i in range(self.d)): ONE})

    def inject(self, v):
        """iota: a T-coordinate vector as a degree-1 element."""
        out = {}
        for i, a in enumerate(v):
            if a:
                out[tuple(1 if j == i else 0 for j in range(self.d))] = a
        return Element(self, out)

    def power(self, g, n):
        """g^n as a normal-form monomial (bracketing independent)."""
        if n > self.cap:
            raise DegreeBudgetExceeded(f"power {n} exceeds cap {self.cap}")
        return Element(self, {tuple(n if i == g else 0 for i in range(self.d)): ONE})

    def monomial(self, exps):
        if sum(exps) > self.cap:
            raise DegreeBudgetExceeded(f"monomial degree {sum(exps)} exceeds cap")
        return Element(self, {tuple(exps): ONE})

    def nf_vector(self, x):
        """Element coordinates as a SparseVector over the normal-form basis."""
        return SparseVector({self.exp_index[v]: a for v, a in x.coeffs.items()},
                            self.nf_size)

    def from_nf_vector(self, v):
        return Element(self, {self.exponents[c]: a for c, a in v.coords.items()})

    def filtration(self, k):
        """Span of normal-form monomials of total degree <= k."""
        if k < 0:
            return echelonize([], self.nf_size)
        # exponent vectors are enumerated in degree order, so the first
        # ``count`` indices are exactly the degree <= k monomials
        count = sum(1 for v in self.exponents if sum(v) <= k)
        return echelonize([SparseVector.unit(i, self.nf_size) for i in range(count)],
                          self.nf_size)

    # -- products and operators --------------------------------------------

    def mul(self, x, y):
        if x.degree() + y.degree() > self.cap:
            raise DegreeBudgetExceeded(
                f"product degree {x.degree()}+{y.degree()} exceeds cap {self.cap}")
        out = Element(self, {})
        for vx, a in x.coeffs.items():
            tx = self.rep_tree[vx]
            for vy, b in y.coeffs.items():
                out = out + (a * b) * self.reduce_tree(graft(tx, self.rep_tree[vy]))
        return out

    def associator(self, x, y, z):
        return (x * y) * z - x * (y * z)

    def left_mult_operator(self, x, domain_degree=None):
        """Columns of y -> x*y over normal-form monomials of bounded degree.

        Returns a dict mapping each domain exponent vector to an Element.
        """
        if domain_degree is None:
            domain_degree = self.cap - x.degree()
        if x.degree() + domain_degree > self.cap:
            raise DegreeBudgetExceeded("left multiplication domain exceeds cap")
        return {v: x * self.monomial(v)
                for v in self.exponents if sum(v) <= domain_degree}

    def d_operator(self, a, b):
        """D_{a,b} = [L_a, L_b] acting on elements: z -> a(bz) - b(az)."""
        def apply(z):
            return a * (b * z) - b * (a * z)
        return apply

    # -- identity checks ----------------------------------------------------

    def check_jordan(self, a, x):
        """L_{ax+xa} == L_a L_x + L_x L_a on the safe filtration window."""
        k = self.cap - x.degree() - a.degree()
        if k < 0:
            raise DegreeBudgetExceeded("no domain left for the operator identity")
        lhs_mult = a * x + x * a
        for v in self.exponents:
            if sum(v) > k:
                continue
            y = self.monomial(v)
            if lhs_mult * y != a * (x * y) + x * (a * y):
                return False
        return True

    def check_d_derivation(self, ai, bi, x, y):
        """D_{a,b}(xy) == D_{a,b}(x) y + x D_{a,b}(y), plus agreement on T."""
        a, b = self.generator(ai), self.generator(bi)
        if x.degree() + y.degree() + 2 > self.cap:
            raise DegreeBudgetExceeded("derivation check exceeds the degree budget")
        D = self.d_operator(a, b)
        if D(x * y) != D(x) * y + x * D(y):
            return False
        d = self.d
        dmat = self.system.d_op(unit_vector(d, ai), unit_vector(d, bi))
        for g in range(d):
            if D(self.generator(g)) != self.inject(dmat(unit_vector(d, g))):
                return False
        return True

    def check_lemma_derivation(self, c, a, b, n):
        """(c^n,a,b) - n c^{n-1} (c,a,b) lies in filtration(n-2)."""
        if n + 2 > self.cap:
            raise DegreeBudgetExceeded("lemma check exceeds the degree budget")
        ca, cb, cc = self.generator(a), self.generator(b), self.generator(c)
        lhs = self.associator(self.power(c, n), ca, cb)
        if n == 0:
            residue = lhs
        else:
            residue = lhs - Fraction(n) * (self.power(c, n - 1)
                                           * self.associator(cc, ca, cb))
        return self.filtration(n - 2).member(self.nf_vector(residue))

    def check_assoc_expansion(self, c, a, b, n):
        """Full associator expansion:
        (c^n,a,b) == n/2 c^{n-1} [a,c,b] - 1/2 sum_i (c^i, D_{a,c}(c^{n-1-i}), b).
        """
        if n + 2 > self.cap:
            raise DegreeBudgetExceeded("expansion check exceeds the degree budget")
        d = self.d
        ea, eb, ec = self.generator(a), self.generator(b), self.generator(c)
        lhs = self.associator(self.power(c, n), ea, eb)
        rhs = self.zero()
        if n >= 1:
            bracket = self.system.basis_product(a, c, b)
            rhs = Fraction(n, 2) * (self.power(c, n - 1) * self.inject(bracket))
        D = self.d_operator(ea, ec)
        for i in range(0, n - 1):
            mid = D(self.power(c, n - 1 - i))
            rhs = rhs - Fraction(1, 2) * self.associator(self.power(c, i), mid, eb)
        return lhs == rhs

    def s2_identity_suite(self, n_max):
        """The closed-form S2 identities, exactly, for n <= n_max.

        Requires the base system to be S2 in the (e, f) basis with
        [e,f,e] = 2e and [e,f,f] = -2f.
        """
        if self.d != 2:
            raise ValueError("this suite needs the two-dimensional system S2")
        if (self.system.basis_product(0, 1, 0) != (Fraction(2), ZERO)
                or self.system.basis_product(0, 1, 1) != (ZERO, Fraction(-2))):
            raise ValueError("base system is not S2 in the expected basis")
        if n_max + 3 > self.cap:
            raise DegreeBudgetExceeded("S2 suite exceeds the degree budget")
        e, f = self.generator(0), self.generator(1)
        results = []
        for n in range(n_max + 1):
            en = self.power(0, n)
            prop_lhs = self.associator(en, f, f) * e
            prop_rhs = Fraction(n) * (en * f)
            if n >= 1:
                prop_rhs = prop_rhs - Fraction(n * (n - 1)) * self.power(0, n - 1)
            eigen_lhs = Fraction(-2) * self.associator(en, f, e)
            eigen_rhs = Fraction(2 * n) * en
            results.append((n, prop_lhs == prop_rhs, eigen_lhs == eigen_rhs))
        return results

    def filtration_preservation_check(self, a, b):
        """x -> -2(x,a,b) maps every filtration level into itself."""
        ea, eb = self.generator(a), self.generator(b)
        for k in range(self.cap - 1):
            filt = self.filtration(k)
            for v in self.exponents:
                if sum(v) > k:
                    continue
                img = Fraction(-2) * self.associator(self.monomial(v), ea, eb)
                if not filt.member(self.nf_vector(img)):
                    return False
        return True

    # -- ideals --------------------------------------------------------------

    def augmentation_ideal(self):
        """Span of all normal-form monomials of degree >= 1 (= ker of counit)."""
        rows = [SparseVector.unit(i, self.nf_size)
                for i, v in enumerate(self.exponents) if sum(v) >= 1]
        return echelonize(rows, self.nf_size)

    def right_ideal_closure(self, gens):
        """Fixpoint of span(gens) under right multiplication by monomials."""
        if not gens:
            raise ValueError("right_ideal_closure needs at least one generator")
        N = self.cap
        # elimination order with higher degrees first, so rows with pivot
        # degree <= k span exactly the intersection with filtration(k)
        order = sorted(range(self.nf_size),
                       key=lambda i: (-sum(self.exponents[i]), self.exponents[i]))
        elim_of_nf = {nf: e for e, nf in enumerate(order)}
        ech = Echelon()
        work = []
        for g in gens:
            row = ech.insert({elim_of_nf[self.exp_index[v]]: a
                              for v, a in g.coeffs.items()})
            if row is not None:
                work.append(Element(self, {self.exponents[order[c]]: a
                                           for c, a in row.items()}))
        while work:
            new = []
            for v in work:
                top = v.degree()
                for n in range(1, N - top + 1):
                    for exps in self.exponents:
                        if sum(exps) != n:
                            continue
                        prod = v * self.monomial(exps)
                        row = ech.insert({elim_of_nf[self.exp_index[w]]: a
                                          for w, a in prod.coeffs.items()})
                        if row is not None:
                            new.append(Element(self, {self.exponents[order[c]]: a
                                                      for c, a in row.items()}))
            work = new

        subspace = echelonize(
            [SparseVector({order[c]: a for c, a in row.items()}, self.nf_size)
             for row in ech.rref_rows()], self.nf_size)
        per_degree = []
        for k in range(N + 1):
            per_degree.append(sum(1 for p in ech.pivots()
                                  if sum(self.exponents[order[p]]) <= k))
        contains_one = subspace.member(
            SparseVector.unit(self.exp_index[(0,) * self.d], self.nf_size))
        t_rows = [SparseVector.unit(self.exp_index[v], self.nf_size)
                  for v in self.exponents if sum(v) == 1]
        t_span = echelonize(t_rows, self.nf_size)
        meets_t = subspace.intersection_dim(t_span)
        safe = N - max(g.degree() for g in gens)
        stabilization = None
        for n0 in range(safe + 1):
            if all(subspace.member(SparseVector.unit(self.exp_index[v], self.nf_size))
                   for v in self.exponents if n0 <= sum(v) <= safe):
                stabilization = n0
                break
        return IdealClosure(subspace, per_degree, contains_one, meets_t,
                            stabilization, safe)


def _relabel(shape, g):
    """Replace every leaf of a tree shape by generator g."""
    if isinstance(shape, int):
        return g
    return (_relabel(shape[0], g), _relabel(shape[1], g))


@dataclass
class IdealClosure:
    subspace: Subspace
    per_degree_dims: list
    contains_one: bool
    meets_t_dim: int
    stabilization_degree: int | None
    safe_window: int


class Element:
    """An element of a truncated enveloping algebra in normal-form coordinates.

    Keys are exponent vectors (k_1, ..., k_d) for the representative
    monomial b1^k1 (b2^k2 (...)).
    """

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs):
        self.algebra = algebra
        self.coeffs = {v: Fraction(a) for v, a in coeffs.items() if a}

    def degree(self):
        return max((sum(v) for v in self.coeffs), default=0)

    def is_zero(self):
        return not self.coeffs

    def counit(self):
        return self.coeffs.get((0,) * self.algebra.d, ZERO)

    def lift(self):
        """Representative in the free algebra (sum of representative trees)."""
        return FreeElement({self.algebra.rep_tree[v]: a for v, a in self.coeffs.items()})

    def terms(self):
        return sorted(self.coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def __add__(self, other):
        out = dict(self.coeffs)
        for v, a in other.coeffs.items():
            s = out.get(v, ZERO) + a
            if s:
                out[v] = s
            else:
                out.pop(v, None)
        return Element(self.algebra, out)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __rmul__(self, a):
        a = Fraction(a)
        if not a:
            return Element(self.algebra, {})
        return Element(self.algebra, {v: a * c for v, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.algebra.mul(self, other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra is other.algebra and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def format(self):
        names = self.algebra.system.basis_names
        if not self.coeffs:
            return "0"
        parts = []
        for v, a in self.terms():
            factors = [f"{names[i]}^{k}" if k > 1 else names[i]
                       for i, k in enumerate(v) if k]
            body = "*".join(factors) if factors else "1"
            if factors and abs(a) != 1:
                body = f"{abs(a)}*{body}"
            elif not factors:
                body = str(abs(a))
            parts.append((a < 0, body))
        neg, body = parts[0]
        out = ("-" if neg else "") + body
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return f"<{self.format()}>"


def build(system, cap, max_monomials=200_000):
    """Construct the degree-truncated enveloping algebra of a triple system."""
    return EnvelopingAlgebra(system, cap, max_monomials)
