"""Free unital nonassociative algebra on d generators, truncated by degree.

Monomials are binary trees: a leaf is a generator index, an internal
node is an ordered pair of subtrees, and the empty product 1 is the
empty tuple.  Structural equality of trees is the monomial identity;
there are Catalan(n-1) * d^n monomials of degree n.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from .exactlin import ONE, ZERO

UNIT = ()


class DegreeBudgetExceeded(ValueError):
    pass


class SizeGuardExceeded(ValueError):
    pass


class ExprSyntaxError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def leaf(i):
    return i


def is_leaf(t):
    return isinstance(t, int)


def tree_degree(t):
    if t == UNIT:
        return 0
    if is_leaf(t):
        return 1
    return tree_degree(t[0]) + tree_degree(t[1])


def graft(t1, t2):
    """Tree product; the empty product is the unit."""
    if t1 == UNIT:
        return t2
    if t2 == UNIT:
        return t1
    return (t1, t2)


def tree_key(t):
    """Flat integer tuple giving a total order on trees (lex on shape+leaves)."""
    if t == UNIT:
        return ()
    if is_leaf(t):
        return (0, t)
    return (1,) + tree_key(t[0]) + tree_key(t[1])


def power_tree(g, n):
    """Left-nested power ((g*g)*g)*... of a single generator."""
    if n == 0:
        return UNIT
    t = g
    for _ in range(n - 1):
        t = (t, g)
    return t


@lru_cache(maxsize=None)
def _trees(d, n):
    """All monomial trees of degree n on d generators, sorted by tree_key."""
    if n == 0:
        return (UNIT,)
    if n == 1:
        return tuple(range(d))
    out = []
    for i in range(1, n):
        for l in _trees(d, i):
            for r in _trees(d, n - i):
                out.append((l, r))
    out.sort(key=tree_key)
    return tuple(out)


class MonomialTable:
    """Degree-stratified bijection between trees of degree <= N and indices.

    Index order refines degree order: the unit gets index 0, then all
    degree-1 monomials in canonical order, and so on.
    """

    def __init__(self, d, cap, max_monomials=200_000):
        if d < 1:
            raise ValueError("need at least one generator")
        if cap < 0:
            raise ValueError("cap must be >= 0")
        self.d = d
        self.cap = cap
        trees = []
        self.degree_start = []  # degree -> first index of that degree
        for n in range(cap + 1):
            self.degree_start.append(len(trees))
            stratum = _trees(d, n)
            if len(trees) + len(stratum) > max_monomials:
                raise SizeGuardExceeded(
                    f"free monomial table for d={d}, N={cap} exceeds the "
                    f"guard of {max_monomials} monomials")
            trees.extend(stratum)
        self.trees = trees
        self.index = {t: i for i, t in enumerate(trees)}
        self.size = len(trees)

    def degree_count(self, n):
        if n < 0:
            return 0
        hi = self.degree_start[n + 1] if n + 1 <= self.cap else self.size
        return hi - self.degree_start[n]

    def cumulative_count(self, n):
        if n < 0:
            return 0
        return self.degree_start[n + 1] if n + 1 <= self.cap else self.size

    def degree_slice(self, n):
        lo = self.degree_start[n]
        return self.trees[lo:lo + self.degree_count(n)]


class FreeElement:
    """Sparse rational linear combination of tree monomials."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {t: Fraction(a) for t, a in (coeffs or {}).items() if a}

    @classmethod
    def unit(cls):
        return cls({UNIT: ONE})

    @classmethod
    def generator(cls, i):
        return cls({i: ONE})

    @classmethod
    def monomial(cls, t, a=ONE):
        return cls({t: a})

    def is_zero(self):
        return not self.coeffs

    def max_degree(self):
        return max((tree_degree(t) for t in self.coeffs), default=0)

    def terms(self):
        return sorted(self.coeffs.items(), key=lambda kv: (tree_degree(kv[0]), tree_key(kv[0])))

    def __add__(self, other):
        out = dict(self.coeffs)
        for t, a in other.coeffs.items():
            s = out.get(t, ZERO) + a
            if s:
                out[t] = s
            else:
                out.pop(t, None)
        return FreeElement(out)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __rmul__(self, a):
        a = Fraction(a)
        if not a:
            return FreeElement()
        return FreeElement({t: a * v for t, v in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, FreeElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items(), key=lambda kv: tree_key(kv[0]))))

    def __repr__(self):
        return f"FreeElement({self.coeffs})"


def fmul(x, y, cap=None):
    """Free (bilinear) product of two elements; grafts trees pairwise."""
    out = {}
    for t1, a in x.coeffs.items():
        for t2, b in y.coeffs.items():
            t = graft(t1, t2)
            if cap is not None and tree_degree(t) > cap:
                raise DegreeBudgetExceeded(
                    f"product monomial of degree {tree_degree(t)} exceeds cap {cap}")
            s = out.get(t, ZERO) + a * b
            if s:
                out[t] = s
            else:
                out.pop(t, None)
    return FreeElement(out)


# ---------------------------------------------------------------------------
# expression grammar
#
#   expr     := term (("+"|"-") term)*
#   term     := [rational "*"] factor | rational
#   factor   := primary ["*" primary]          (binary only; more needs parens)
#   primary  := generator ["^" nat] | "(" expr ")" | "1"
#   rational := integer ["/" positive-integer]
#
# Unparenthesized products of three or more factors are rejected:
# "a*b*c" has no meaning in a nonassociative algebra.

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*^()/]))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos)
            break
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        else:
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, basis_names):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.gen_index = {name: k for k, name in enumerate(basis_names)}

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.next()
        if kind != "op" or val != op:
            raise ExprSyntaxError(f"expected {op!r}", pos)

    def parse(self):
        x = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"trailing input {val!r}", pos)
        return x

    def expr(self):
        kind, val, _ = self.peek()
        sign = ONE
        if kind == "op" and val in "+-":
            self.next()
            sign = -ONE if val == "-" else ONE
        x = sign * self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                t = self.term()
                x = x + t if val == "+" else x - t
            else:
                return x

    def rational(self):
        kind, val, pos = self.next()
        assert kind == "int"
        num = int(val)
        kind2, val2, _ = self.peek()
        if kind2 == "op" and val2 == "/":
            self.next()
            kind3, val3, pos3 = self.next()
            if kind3 != "int":
                raise ExprSyntaxError("expected denominator", pos3)
            den = int(val3)
            if den == 0:
                raise ExprSyntaxError("zero denominator", pos3)
            return Fraction(num, den)
        return Fraction(num)

    def term(self):
        kind, val, _ = self.peek()
        if kind == "int" and val != "1":
            coeff = self.rational()
            kind2, val2, _ = self.peek()
            if kind2 == "op" and val2 == "*":
                self.next()
                return coeff * self.factor()
            return coeff * FreeElement.unit()
        if kind == "int":  # "1": unit unless it is a coefficient "1*..." or "1/2..."
            save = self.i
            coeff = self.rational()
            kind2, val2, _ = self.peek()
            if kind2 == "op" and val2 == "*":
                self.next()
                return coeff * self.factor()
            if coeff != 1:
                return coeff * FreeElement.unit()
            self.i = save
            self.next()
            return FreeElement.unit()
        return self.factor()

    def factor(self):
        x = self.primary()
        kind, val, _ = self.peek()
        if kind == "op" and val == "*":
            self.next()
            y = self.primary()
            x = fmul(x, y)
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                raise ExprSyntaxError(
                    "ambiguous nonassociative product: parenthesize products "
                    "of three or more factors", pos)
        return x

    def primary(self):
        kind, val, pos = self.next()
        if kind == "name":
            if val not in self.gen_index:
                raise ExprSyntaxError(f"unknown generator {val!r}", pos)
            g = self.gen_index[val]
            kind2, val2, _ = self.peek()
            if kind2 == "op" and val2 == "^":
                self.next()
                kind3, val3, pos3 = self.next()
                if kind3 != "int":
                    raise ExprSyntaxError("expected exponent", pos3)
                return FreeElement.monomial(power_tree(g, int(val3)))
            return FreeElement.generator(g)
        if kind == "op" and val == "(":
            x = self.expr()
            self.expect_op(")")
            kind2, val2, pos2 = self.peek()
            if kind2 == "op" and val2 == "^":
                raise ExprSyntaxError("power of a non-generator", pos2)
            return x
        if kind == "int" and val == "1":
            return FreeElement.unit()
        raise ExprSyntaxError(f"unexpected token {val!r}", pos)


def parse(text, basis_names):
    """Parse an expression into a FreeElement over the given generators."""
    return _Parser(text, basis_names).parse()


def format_tree(t, basis_names):
    if t == UNIT:
        return "1"
    if is_leaf(t):
        return basis_names[t]
    return f"({format_tree(t[0], basis_names)}*{format_tree(t[1], basis_names)})"


def format_element(x, basis_names):
    """Canonical text form; ``parse(format_element(x)) == x``."""
    if x.is_zero():
        return "0"
    parts = []
    for t, a in x.terms():
        if t == UNIT:
            body = str(abs(a))
        elif abs(a) == 1:
            body = format_tree(t, basis_names)
        else:
            body = f"{abs(a)}*{format_tree(t, basis_names)}"
        parts.append((a < 0, body))
    neg, body = parts[0]
    out = ("-" if neg else "") + body
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out
