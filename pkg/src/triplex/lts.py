"""Lie triple systems, their operators, standard embedding and Killing form.

A triple system is given by structure constants for the trilinear
product on a chosen basis; everything else (inner derivations, the
standard embedding Lie algebra, the Killing form, Lie/associative
closures of the right-slot operators) is derived by exact linear
algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct

from .exactlin import (ONE, ZERO, Echelon, SparseVector, Subspace, echelonize,
                       mat_bracket, mat_flatten, mat_identity, mat_mul,
                       mat_trace, mat_unflatten, mat_vec, mat_zero)


class InvalidStructure(ValueError):
    """Structure constants fail a claimed algebraic property."""


def _vec(d, coords=None):
    out = [ZERO] * d
    for i, a in (coords or {}).items():
        out[i] = a
    return tuple(out)


def unit_vector(d, i):
    return tuple(ONE if j == i else ZERO for j in range(d))


def _add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _scale(s, x):
    return tuple(s * a for a in x)


def _is_zero(x):
    return all(not a for a in x)


@dataclass(frozen=True)
class Operator:
    """A linear operator on T-coordinates."""
    matrix: tuple
    kind: str = "generic"

    def __call__(self, x):
        return mat_vec(self.matrix, x)


class TripleSystem:
    """Basis-indexed structure constants of a trilinear product over Q."""

    def __init__(self, dim, basis_names, constants):
        self.dim = dim
        self.basis_names = tuple(basis_names)
        if len(self.basis_names) != dim:
            raise InvalidStructure("one basis name per dimension required")
        self.constants = {}  # (i,j,k) -> tuple of length dim
        for (i, j, k), v in constants.items():
            for idx in (i, j, k):
                if not 0 <= idx < dim:
                    raise InvalidStructure(f"index {idx} out of range for dim {dim}")
            vec = _vec(dim, v) if isinstance(v, dict) else tuple(v)
            if not _is_zero(vec):
                self.constants[(i, j, k)] = vec

    @classmethod
    def from_entries(cls, dim, basis_names, entries):
        """Build from a list of ((i,j,k), {index: Fraction}) pairs.

        Unlisted triples are zero.  Duplicate triples are an error; no
        symmetry completion is performed.
        """
        constants = {}
        for (i, j, k), coords in entries:
            if (i, j, k) in constants:
                raise InvalidStructure(f"duplicate entry for triple ({i},{j},{k})")
            constants[(i, j, k)] = dict(coords)
        return cls(dim, basis_names, constants)

    def basis_product(self, i, j, k):
        return self.constants.get((i, j, k), _vec(self.dim))

    def triple_product(self, x, y, z):
        """Trilinear extension of the structure constants."""
        d = self.dim
        if len(x) != d or len(y) != d or len(z) != d:
            raise InvalidStructure("coordinate length mismatch")
        out = [ZERO] * d
        for (i, j, k), vec in self.constants.items():
            c = x[i] * y[j] * z[k]
            if c:
                for l, a in enumerate(vec):
                    if a:
                        out[l] += c * a
        return tuple(out)

    def r_op(self, a, b):
        """Matrix of x -> [x, a, b]."""
        d = self.dim
        cols = [self.triple_product(unit_vector(d, i), a, b) for i in range(d)]
        return Operator(tuple(tuple(cols[i][k] for i in range(d)) for k in range(d)),
                        kind="R")

    def d_op(self, a, b):
        """Matrix of x -> [a, b, x]."""
        d = self.dim
        cols = [self.triple_product(a, b, unit_vector(d, i)) for i in range(d)]
        return Operator(tuple(tuple(cols[i][k] for i in range(d)) for k in range(d)),
                        kind="D")


@dataclass
class AxiomVerdict:
    ok: bool
    counterexample: tuple | None = None


@dataclass
class AxiomReport:
    alternating: AxiomVerdict
    cyclic: AxiomVerdict
    derivation: AxiomVerdict

    @property
    def ok(self):
        return self.alternating.ok and self.cyclic.ok and self.derivation.ok


def check_axioms(t):
    """Verify the three defining identities on all basis combinations."""
    d = t.dim
    e = lambda i: unit_vector(d, i)

    alt = AxiomVerdict(True)
    for i, j in iproduct(range(d), repeat=2):
        if not _is_zero(t.triple_product(e(i), e(i), e(j))):
            alt = AxiomVerdict(False, ("[x,x,y] != 0", i, i, j))
            break
    if alt.ok:
        # linearization: [x,y,z] + [y,x,z] = 0 on all basis triples
        for i, j, k in iproduct(range(d), repeat=3):
            v = _add(t.basis_product(i, j, k), t.basis_product(j, i, k))
            if not _is_zero(v):
                alt = AxiomVerdict(False, ("[x,y,z]+[y,x,z] != 0", i, j, k))
                break

    cyc = AxiomVerdict(True)
    for i, j, k in iproduct(range(d), repeat=3):
        v = _add(_add(t.basis_product(i, j, k), t.basis_product(j, k, i)),
                 t.basis_product(k, i, j))
        if not _is_zero(v):
            cyc = AxiomVerdict(False, ("cyclic sum != 0", i, j, k))
            break

    der = AxiomVerdict(True)
    for a, b in iproduct(range(d), repeat=2):
        D = t.d_op(e(a), e(b))
        for x, y, z in iproduct(range(d), repeat=3):
            lhs = D(t.basis_product(x, y, z))
            rhs = _add(_add(t.triple_product(D(e(x)), e(y), e(z)),
                            t.triple_product(e(x), D(e(y)), e(z))),
                       t.triple_product(e(x), e(y), D(e(z))))
            if lhs != rhs:
                der = AxiomVerdict(False, ("derivation identity fails", a, b, x, y, z))
                break
        if not der.ok:
            break

    return AxiomReport(alt, cyc, der)


class LieAlgebra:
    """Structure constants of a Lie bracket on a chosen basis."""

    def __init__(self, dim, basis_names, brackets):
        self.dim = dim
        self.basis_names = tuple(basis_names)
        if len(self.basis_names) != dim:
            raise InvalidStructure("one basis name per dimension required")
        self.brackets = {}  # (i,j) -> tuple
        for (i, j), v in brackets.items():
            for idx in (i, j):
                if not 0 <= idx < dim:
                    raise InvalidStructure(f"index {idx} out of range for dim {dim}")
            vec = _vec(dim, v) if isinstance(v, dict) else tuple(v)
            if not _is_zero(vec):
                self.brackets[(i, j)] = vec

    @classmethod
    def from_entries(cls, dim, basis_names, entries):
        brackets = {}
        for (i, j), coords in entries:
            if (i, j) in brackets:
                raise InvalidStructure(f"duplicate entry for pair ({i},{j})")
            brackets[(i, j)] = dict(coords)
        return cls(dim, basis_names, brackets)

    def basis_bracket(self, i, j):
        return self.brackets.get((i, j), _vec(self.dim))

    def bracket(self, x, y):
        d = self.dim
        out = [ZERO] * d
        for (i, j), vec in self.brackets.items():
            c = x[i] * y[j]
            if c:
                for l, a in enumerate(vec):
                    if a:
                        out[l] += c * a
        return tuple(out)

    def validate(self):
        """Raise InvalidStructure unless antisymmetry and Jacobi hold."""
        d = self.dim
        for i in range(d):
            if not _is_zero(self.basis_bracket(i, i)):
                raise InvalidStructure(f"[b{i},b{i}] != 0")
            for j in range(d):
                if not _is_zero(_add(self.basis_bracket(i, j), self.basis_bracket(j, i))):
                    raise InvalidStructure(f"[b{i},b{j}] + [b{j},b{i}] != 0")
        e = lambda i: unit_vector(d, i)
        for i, j, k in iproduct(range(d), repeat=3):
            s = _add(_add(self.bracket(e(i), self.basis_bracket(j, k)),
                          self.bracket(e(j), self.basis_bracket(k, i))),
                     self.bracket(e(k), self.basis_bracket(i, j)))
            if not _is_zero(s):
                raise InvalidStructure(f"Jacobi fails on basis triple ({i},{j},{k})")

    def ad(self, i):
        d = self.dim
        cols = [self.basis_bracket(i, j) for j in range(d)]
        return tuple(tuple(cols[j][k] for j in range(d)) for k in range(d))

    def killing(self):
        d = self.dim
        ads = [self.ad(i) for i in range(d)]
        return tuple(tuple(mat_trace(mat_mul(ads[i], ads[j])) for j in range(d))
                     for i in range(d))


def lts_from_lie(l):
    """The triple system [x,y,z] = [[x,y],z] of a Lie algebra."""
    l.validate()
    d = l.dim
    e = lambda i: unit_vector(d, i)
    constants = {}
    for i, j, k in iproduct(range(d), repeat=3):
        v = l.bracket(l.basis_bracket(i, j), e(k))
        if not _is_zero(v):
            constants[(i, j, k)] = v
    return TripleSystem(d, l.basis_names, constants)


def lts_from_involution(l, s):
    """Restrict [[x,y],z] to the -1 eigenspace of an involutive automorphism."""
    l.validate()
    d = l.dim
    m = s.matrix
    if mat_mul(m, m) != mat_identity(d):
        raise InvalidStructure("map is not an involution (square != identity)")
    e = lambda i: unit_vector(d, i)
    for i, j in iproduct(range(d), repeat=2):
        if mat_vec(m, l.basis_bracket(i, j)) != l.bracket(mat_vec(m, e(i)), mat_vec(m, e(j))):
            raise InvalidStructure("map is not a Lie algebra automorphism")
    # -1 eigenspace = kernel of (s + Id)
    from .exactlin import kernel
    splus = tuple(tuple(m[a][b] + (ONE if a == b else ZERO) for b in range(d))
                  for a in range(d))
    images = [SparseVector.from_dense(mat_vec(splus, e(i))) for i in range(d)]
    ker = kernel(images, d, d)
    basis = [tuple(r.to_dense()) for r in ker.rows]
    k = len(basis)
    span = echelonize(ker.rows, d)
    constants = {}
    for i, j, kk in iproduct(range(k), repeat=3):
        v = l.bracket(l.bracket(basis[i], basis[j]), basis[kk])
        coords = span.coordinates(SparseVector.from_dense(v))
        if coords is None:
            raise InvalidStructure("eigenspace is not closed under [[x,y],z]")
        vec = tuple(coords)
        if not _is_zero(vec):
            constants[(i, j, kk)] = vec
    names = tuple(f"t{i}" for i in range(k))
    return TripleSystem(k, names, constants)


def inner_derivations(t):
    """Echelonized span of all D_{b_i,b_j}, verified closed and derivations.

    Returns (Subspace over flattened d*d matrices, list of basis matrices).
    """
    d = t.dim
    e = lambda i: unit_vector(d, i)
    gens = [t.d_op(e(i), e(j)).matrix for i in range(d) for j in range(d)]
    space = echelonize([mat_flatten(g) for g in gens], d * d)
    basis = [mat_unflatten(r, d) for r in space.rows]
    for a in basis:
        for b in basis:
            if not space.member(mat_flatten(mat_bracket(a, b))):
                raise InvalidStructure("inner derivations are not bracket-closed")
    for D in basis:
        for x, y, z in iproduct(range(d), repeat=3):
            lhs = mat_vec(D, t.basis_product(x, y, z))
            rhs = _add(_add(t.triple_product(mat_vec(D, e(x)), e(y), e(z)),
                            t.triple_product(e(x), mat_vec(D, e(y)), e(z))),
                       t.triple_product(e(x), e(y), mat_vec(D, e(z))))
            if lhs != rhs:
                raise InvalidStructure("an inner derivation fails the derivation identity")
    return space, basis


@dataclass
class StandardEmbedding:
    """L(T) = InnDer(T) (+) T with its involution and Killing form."""
    lie: LieAlgebra
    inn_dim: int
    t_dim: int
    inn_basis: list            # matrices on T spanning InnDer(T), echelon basis
    sigma: Operator            # diagonal +-1 on L(T)
    killing: tuple             # trace form of the adjoint representation
    killing_t: tuple           # restriction of the Killing form to the T block

    @property
    def dim(self):
        return self.lie.dim


def standard_embedding(t):
    """Build L(T), validate Jacobi, and compute sigma and the Killing form."""
    d = t.dim
    e = lambda i: unit_vector(d, i)
    inn_space, inn_basis = inner_derivations(t)
    m = len(inn_basis)
    n = m + d

    def inn_coords(matrix):
        coords = inn_space.coordinates(mat_flatten(matrix))
        if coords is None:
            raise InvalidStructure("bracket leaves the inner derivation span")
        return coords

    brackets = {}

    def put(i, j, vec):
        if not _is_zero(vec):
            brackets[(i, j)] = vec

    for p in range(m):
        for q in range(m):
            c = inn_coords(mat_bracket(inn_basis[p], inn_basis[q]))
            put(p, q, tuple(c) + _vec(d))
    for p in range(m):
        for i in range(d):
            v = mat_vec(inn_basis[p], e(i))
            put(p, m + i, _vec(m) + v)
            put(m + i, p, _vec(m) + _scale(-ONE, v))
    for i in range(d):
        for j in range(d):
            c = inn_coords(t.d_op(e(i), e(j)).matrix)
            put(m + i, m + j, tuple(c) + _vec(d))

    names = tuple(f"D{p}" for p in range(m)) + t.basis_names
    lie = LieAlgebra(n, names, brackets)
    try:
        lie.validate()
    except InvalidStructure as exc:
        raise InvalidStructure(f"standard embedding is not a Lie algebra: {exc}")

    sigma_m = tuple(tuple((ONE if i < m else -ONE) if i == j else ZERO
                          for j in range(n)) for i in range(n))
    sigma = Operator(sigma_m, kind="sigma")
    killing = lie.killing()

    # sigma is an involutive automorphism preserving K; InnDer and T are
    # orthogonal under K
    assert mat_mul(sigma_m, sigma_m) == mat_identity(n)
    for i, j in iproduct(range(n), repeat=2):
        lhs = mat_vec(sigma_m, lie.basis_bracket(i, j))
        rhs = lie.bracket(mat_vec(sigma_m, unit_vector(n, i)),
                          mat_vec(sigma_m, unit_vector(n, j)))
        if lhs != rhs:
            raise InvalidStructure("sigma does not preserve the bracket")
    for p in range(m):
        for i in range(d):
            if killing[p][m + i]:
                raise InvalidStructure("InnDer(T) and T are not K-orthogonal")

    killing_t = tuple(tuple(killing[m + i][m + j] for j in range(d)) for i in range(d))
    return StandardEmbedding(lie, m, d, inn_basis, sigma, killing, killing_t)


@dataclass
class TraceIdentityReport:
    ok: bool
    failures: list = field(default_factory=list)


def trace_identity_check(t, emb=None):
    """2 tr(R_{b_i,b_j}) equals the Killing form K(b_i,b_j), all pairs."""
    emb = emb or standard_embedding(t)
    d = t.dim
    e = lambda i: unit_vector(d, i)
    failures = []
    for i, j in iproduct(range(d), repeat=2):
        lhs = 2 * mat_trace(t.r_op(e(i), e(j)).matrix)
        rhs = emb.killing_t[i][j]
        if lhs != rhs:
            failures.append((i, j, lhs, rhs))
    return TraceIdentityReport(not failures, failures)


def lie_closure(gens):
    """Smallest bracket-closed subspace of matrices containing ``gens``.

    Returns (Subspace over flattened matrices, list of echelon basis
    matrices).  Deterministic fixpoint: bracket every basis pair, insert,
    repeat until the dimension stabilizes.
    """
    if not gens:
        raise InvalidStructure("lie_closure needs at least one generator")
    n = len(gens[0])
    for g in gens:
        if len(g) != n or len(g[0]) != n:
            raise InvalidStructure("lie_closure needs equal-size square matrices")
    ech = Echelon()
    basis = []
    work = []
    for g in gens:
        row = ech.insert(mat_flatten(g).coords)
        if row is not None:
            mrow = mat_unflatten(SparseVector(row, n * n), n)
            basis.append(mrow)
            work.append(mrow)
    while work:
        new = []
        for a in work:
            for b in basis:
                for c in (mat_bracket(a, b), mat_bracket(b, a)):
                    row = ech.insert(mat_flatten(c).coords)
                    if row is not None:
                        mrow = mat_unflatten(SparseVector(row, n * n), n)
                        basis.append(mrow)
                        new.append(mrow)
        work = new
    space = echelonize([mat_flatten(b) for b in basis], n * n)
    return space, [mat_unflatten(r, n) for r in space.rows]


def r_generators(t):
    d = t.dim
    e = lambda i: unit_vector(d, i)
    return [t.r_op(e(i), e(j)).matrix for i in range(d) for j in range(d)]


def endo_theorem_check(t):
    """True iff the Lie closure of all R_{b_i,b_j} is the full End(T)."""
    gens = r_generators(t)
    if all(g == mat_zero(t.dim) for g in gens):
        return False
    space, _ = lie_closure(gens)
    return space.dim == t.dim * t.dim


def associative_envelope(gens):
    """Span-closure of ``gens`` under the matrix product (no unit adjoined)."""
    n = len(gens[0])
    ech = Echelon()
    basis = []
    work = []
    for g in gens:
        row = ech.insert(mat_flatten(g).coords)
        if row is not None:
            mrow = mat_unflatten(SparseVector(row, n * n), n)
            basis.append(mrow)
            work.append(mrow)
    while work:
        new = []
        for a in work:
            for b in basis:
                for c in (mat_mul(a, b), mat_mul(b, a)):
                    row = ech.insert(mat_flatten(c).coords)
                    if row is not None:
                        mrow = mat_unflatten(SparseVector(row, n * n), n)
                        basis.append(mrow)
                        new.append(mrow)
        work = new
    space = echelonize([mat_flatten(b) for b in basis], n * n)
    return space, [mat_unflatten(r, n) for r in space.rows]


@dataclass
class SimplicityReport:
    verdict: str               # "simple" | "not_simple" | "inconclusive"
    envelope_dim: int
    triple_nonzero: bool
    witness: Subspace | None = None


def simplicity_certificate(t):
    """Burnside-style simplicity certificate over Q.

    Ideals of T are exactly the subspaces invariant under all R_{b,c};
    a full associative envelope of those operators plus [T,T,T] != 0
    certifies simplicity.  A proper envelope alone is inconclusive
    unless an explicit invariant-subspace witness is found.
    """
    d = t.dim
    gens = r_generators(t)
    triple_nonzero = any(not _is_zero(v) for v in t.constants.values())
    if not triple_nonzero:
        return SimplicityReport("not_simple", 0, False,
                                witness=echelonize([SparseVector.unit(0, d)], d)
                                if d else None)
    env_space, env_basis = associative_envelope(gens)
    if env_space.dim == d * d:
        return SimplicityReport("simple", env_space.dim, True)
    # witness search: R-stable subspace generated by a single basis vector
    for i in range(d):
        ech = Echelon()
        vecs = [unit_vector(d, i)]
        ech.insert(SparseVector.from_dense(vecs[0]).coords)
        work = list(vecs)
        while work:
            new = []
            for v in work:
                for g in gens:
                    w = mat_vec(g, v)
                    if ech.insert(SparseVector.from_dense(w).coords) is not None:
                        new.append(w)
            work = new
        if 0 < ech.dim < d:
            witness = echelonize(
                [SparseVector(r, d) for r in ech.rref_rows()], d)
            return SimplicityReport("not_simple", env_space.dim, True, witness)
    return SimplicityReport("inconclusive", env_space.dim, True)


def tau_map(emb, x, y):
    """The rank <= 1 operator z -> K(y,z) x on T."""
    d = emb.t_dim
    ky = mat_vec(emb.killing_t, y)
    return Operator(tuple(tuple(x[i] * ky[j] for j in range(d)) for i in range(d)),
                    kind="tau")


def lambda_map(emb, x, y):
    a, b = tau_map(emb, x, y).matrix, tau_map(emb, y, x).matrix
    return Operator(tuple(tuple(p - q for p, q in zip(ra, rb))
                          for ra, rb in zip(a, b)), kind="lambda")


def is_k_skew(emb, m):
    d = emb.t_dim
    kt = emb.killing_t
    mt = tuple(zip(*m))
    lhs = mat_mul(mt, kt)
    rhs = mat_mul(kt, m)
    return all(lhs[i][j] + rhs[i][j] == 0 for i in range(d) for j in range(d))


def tau_commutator_check(emb, dmat, x, y):
    """[d, tau_{x,y}] == tau_{d(x),y} + tau_{x,d(y)} for K-skew d."""
    if not is_k_skew(emb, dmat):
        raise InvalidStructure("operator is not skew with respect to the Killing form")
    lhs = mat_bracket(dmat, tau_map(emb, x, y).matrix)
    rhs_a = tau_map(emb, mat_vec(dmat, x), y).matrix
    rhs_b = tau_map(emb, x, mat_vec(dmat, y)).matrix
    rhs = tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(rhs_a, rhs_b))
    return lhs == rhs
