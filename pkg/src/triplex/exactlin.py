"""Exact rational scalars and deterministic sparse linear algebra.

Scalars are ``fractions.Fraction`` (always lowest terms, positive
denominator, no rounding ever).  Vectors are sparse maps from column
index to scalar.  Subspaces are kept in reduced row-echelon form with
the lowest-index elimination convention, so every subspace has one
canonical representation and all downstream normal forms are
bit-reproducible.
"""

from __future__ import annotations

import heapq
from fractions import Fraction

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionMismatch(ValueError):
    pass


def _clean(coords):
    return {c: a for c, a in coords.items() if a}


class SparseVector:
    """Immutable sparse vector over Q."""

    __slots__ = ("coords", "dimension", "_hash")

    def __init__(self, coords, dimension):
        coords = {c: Fraction(a) for c, a in coords.items() if a}
        for c in coords:
            if not 0 <= c < dimension:
                raise DimensionMismatch(f"index {c} out of range for dimension {dimension}")
        self.coords = coords
        self.dimension = dimension
        self._hash = None

    @classmethod
    def unit(cls, index, dimension):
        return cls({index: ONE}, dimension)

    @classmethod
    def zero(cls, dimension):
        return cls({}, dimension)

    @classmethod
    def from_dense(cls, values):
        return cls({i: a for i, a in enumerate(values) if a}, len(values))

    def get(self, c):
        return self.coords.get(c, ZERO)

    def items(self):
        return sorted(self.coords.items())

    def is_zero(self):
        return not self.coords

    def support(self):
        return sorted(self.coords)

    def to_dense(self):
        out = [ZERO] * self.dimension
        for c, a in self.coords.items():
            out[c] = a
        return out

    def _check(self, other):
        if self.dimension != other.dimension:
            raise DimensionMismatch(
                f"dimension mismatch: {self.dimension} vs {other.dimension}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coords)
        for c, a in other.coords.items():
            s = out.get(c, ZERO) + a
            if s:
                out[c] = s
            else:
                out.pop(c, None)
        return SparseVector(out, self.dimension)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return SparseVector({c: -a for c, a in self.coords.items()}, self.dimension)

    def scale(self, a):
        a = Fraction(a)
        if not a:
            return SparseVector({}, self.dimension)
        return SparseVector({c: a * v for c, v in self.coords.items()}, self.dimension)

    def __rmul__(self, a):
        return self.scale(a)

    def __eq__(self, other):
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self.dimension == other.dimension and self.coords == other.coords

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dimension, tuple(sorted(self.coords.items()))))
        return self._hash

    def __repr__(self):
        return f"SparseVector({dict(sorted(self.coords.items()))}, dim={self.dimension})"


class Echelon:
    """Incremental row-echelon accumulator over plain dicts.

    Columns are integers; elimination always happens on the lowest
    nonzero column, so callers that want a custom elimination priority
    remap their columns before inserting.  Rows are forward-reduced
    only; call ``rref_rows`` for the fully reduced canonical basis.
    """

    def __init__(self):
        self.rows = {}  # pivot column -> {column: Fraction}, pivot entry == 1

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, vec):
        """Unique residue of ``vec`` (a dict) modulo the current span.

        The residue is supported on non-pivot columns only and does not
        depend on the insertion history, only on the span.
        """
        work = {c: a for c, a in vec.items() if a}
        heap = list(work)
        heapq.heapify(heap)
        seen = set()
        out = {}
        while heap:
            c = heapq.heappop(heap)
            if c in seen:
                continue
            seen.add(c)
            a = work.pop(c, ZERO)
            if not a:
                continue
            row = self.rows.get(c)
            if row is None:
                out[c] = a
                continue
            for c2, b in row.items():
                if c2 == c:
                    continue
                nb = work.get(c2, ZERO) - a * b
                if nb:
                    work[c2] = nb
                    if c2 not in seen:
                        heapq.heappush(heap, c2)
                else:
                    work.pop(c2, None)
        return out

    def insert(self, vec):
        """Add ``vec`` to the span; returns the normalized new row or None."""
        r = self.reduce(vec)
        if not r:
            return None
        p = min(r)
        inv = ONE / r[p]
        row = {c: a * inv for c, a in r.items()}
        self.rows[p] = row
        return row

    def contains(self, vec):
        return not self.reduce(vec)

    def pivots(self):
        return sorted(self.rows)

    def rref_rows(self):
        """Fully back-substituted rows, sorted by pivot (canonical)."""
        rows = {p: dict(r) for p, r in self.rows.items()}
        for p in sorted(rows, reverse=True):
            prow = rows[p]
            for q, row in rows.items():
                if q >= p or p not in row:
                    continue
                a = row.pop(p)
                for c, b in prow.items():
                    if c == p:
                        continue
                    nb = row.get(c, ZERO) - a * b
                    if nb:
                        row[c] = nb
                    else:
                        row.pop(c, None)
        return [rows[p] for p in sorted(rows)]


class Subspace:
    """A subspace of Q^n held as a canonical reduced row-echelon basis."""

    __slots__ = ("rows", "pivots", "ambient")

    def __init__(self, rows, pivots, ambient):
        self.rows = rows          # list of SparseVector, RREF, pivot entries 1
        self.pivots = pivots      # strictly increasing column indices
        self.ambient = ambient

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, v):
        """Residue of v modulo the subspace (zero iff v is a member)."""
        if v.dimension != self.ambient:
            raise DimensionMismatch(
                f"vector dimension {v.dimension} != ambient {self.ambient}")
        work = dict(v.coords)
        for p, row in zip(self.pivots, self.rows):
            a = work.get(p)
            if not a:
                continue
            for c, b in row.coords.items():
                nb = work.get(c, ZERO) - a * b
                if nb:
                    work[c] = nb
                else:
                    work.pop(c, None)
        return SparseVector(work, self.ambient)

    def member(self, v):
        return self.reduce(v).is_zero()

    def coordinates(self, v):
        """Coordinates of v in the RREF basis, or None if v is outside."""
        coeffs = [v.get(p) for p in self.pivots]
        if not self.reduce(v).is_zero():
            return None
        return coeffs

    def sum(self, other):
        if self.ambient != other.ambient:
            raise DimensionMismatch("ambient mismatch in subspace sum")
        return echelonize(self.rows + other.rows, self.ambient)

    def intersection_dim(self, other):
        return self.dim + other.dim - self.sum(other).dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient == other.ambient and self.pivots == other.pivots
                and self.rows == other.rows)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def echelonize(vectors, ambient=None):
    """Canonical reduced row-echelon basis of the span of ``vectors``."""
    vectors = list(vectors)
    if ambient is None:
        if not vectors:
            raise DimensionMismatch("empty input needs an explicit ambient dimension")
        ambient = vectors[0].dimension
    ech = Echelon()
    for v in vectors:
        if v.dimension != ambient:
            raise DimensionMismatch(
                f"vector dimension {v.dimension} != ambient {ambient}")
        ech.insert(v.coords)
    rows = [SparseVector(r, ambient) for r in ech.rref_rows()]
    return Subspace(rows, ech.pivots(), ambient)


def member(v, s):
    return s.member(v)


def kernel(images, domain_dim, ambient):
    """Kernel of the linear map sending unit i to ``images[i]``.

    ``images`` is a list of SparseVector in Q^ambient of length
    ``domain_dim``.  Returns a Subspace of Q^domain_dim.
    """
    if len(images) != domain_dim:
        raise DimensionMismatch("one image per domain basis vector required")
    ech = Echelon()
    # image columns first so rows supported purely on the tail block
    # span exactly the relations among the images
    for i, v in enumerate(images):
        if v.dimension != ambient:
            raise DimensionMismatch("image dimension mismatch")
        row = {c: a for c, a in v.coords.items()}
        row[ambient + i] = ONE
        ech.insert(row)
    combos = []
    for row in ech.rref_rows():
        if all(c >= ambient for c in row):
            combos.append(SparseVector({c - ambient: a for c, a in row.items()},
                                       domain_dim))
    return echelonize(combos, domain_dim)


# ---------------------------------------------------------------------------
# dense matrices (dimensions here are tiny: operators on T or on L(T))

def mat(rows):
    return tuple(tuple(Fraction(a) for a in r) for r in rows)


def mat_zero(n, m=None):
    m = n if m is None else m
    return tuple(tuple(ZERO for _ in range(m)) for _ in range(n))


def mat_identity(n):
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(s, a):
    s = Fraction(s)
    return tuple(tuple(s * x for x in r) for r in a)


def mat_mul(a, b):
    if len(a[0]) != len(b):
        raise DimensionMismatch("matrix size mismatch in product")
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(ra, cb)) for cb in bt) for ra in a)


def mat_bracket(a, b):
    """Commutator AB - BA, exactly."""
    if len(a) != len(a[0]) or len(b) != len(b[0]) or len(a) != len(b):
        raise DimensionMismatch("mat_bracket needs equal square matrices")
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def mat_trace(a):
    return sum((a[i][i] for i in range(len(a))), ZERO)


def mat_transpose(a):
    return tuple(zip(*a))


def mat_vec(a, v):
    if len(a[0]) != len(v):
        raise DimensionMismatch("matrix/vector size mismatch")
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def mat_flatten(a):
    """Row-major flattening into a SparseVector of length n*m."""
    n, m = len(a), len(a[0])
    coords = {}
    for i, row in enumerate(a):
        for j, x in enumerate(row):
            if x:
                coords[i * m + j] = x
    return SparseVector(coords, n * m)


def mat_unflatten(v, n, m=None):
    m = n if m is None else m
    out = [[ZERO] * m for _ in range(n)]
    for c, a in v.coords.items():
        out[c // m][c % m] = a
    return tuple(tuple(r) for r in out)


def parse_rational(text):
    """Parse "p" or "p/q" with q > 0; raises ValueError otherwise."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        p, q = int(num), int(den)
        if q <= 0:
            raise ValueError(f"denominator must be positive in {text!r}")
        return Fraction(p, q)
    return Fraction(int(text))
