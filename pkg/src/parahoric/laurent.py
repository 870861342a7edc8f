"""Exact Laurent-polynomial arithmetic.

Everything downstream computes over Z[v, v^-1] (with q = v^2) or over small
multivariate Laurent rings Q[v^)(, s_1^)(, ..., s_n^)(].  Coefficients are
Python ints or Fractions, never floats, so all identities are checked exactly.

Three classes:

  Laurent      one variable v; the coefficient ring of Hecke elements.
  LaurentFrac  Laurent / Laurent, denominators restricted to v-polynomials
               (they only arise from Poincare-polynomial normalizations).
  MLaurent     several variables (v first, then character coordinates).
"""

from __future__ import annotations

from fractions import Fraction


def _cnorm(x):
    """Collapse Fractions with denominator 1 to plain ints."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


class Laurent:
    """Univariate Laurent polynomial in v with exact rational coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, x in coeffs.items():
                if x:
                    c[int(e)] = _cnorm(x)
        self.c = c

    # constructors ---------------------------------------------------------

    @staticmethod
    def zero():
        return Laurent()

    @staticmethod
    def one():
        return Laurent({0: 1})

    @staticmethod
    def term(coeff, exp=0):
        return Laurent({exp: coeff})

    @staticmethod
    def q_power(k):
        """q^k = v^(2k)."""
        return Laurent({2 * k: 1})

    # predicates -----------------------------------------------------------

    def is_zero(self):
        return not self.c

    def is_one(self):
        return self.c == {0: 1}

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Laurent({0: other})
        return isinstance(other, Laurent) and self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        c = dict(self.c)
        for e, x in other.c.items():
            y = c.get(e, 0) + x
            if y:
                c[e] = _cnorm(y)
            else:
                c.pop(e, None)
        out = Laurent()
        out.c = c
        return out

    def __neg__(self):
        out = Laurent()
        out.c = {e: -x for e, x in self.c.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Laurent()
            out = Laurent()
            out.c = {e: _cnorm(x * other) for e, x in self.c.items()}
            return out
        c = {}
        for e1, x1 in self.c.items():
            for e2, x2 in other.c.items():
                e = e1 + e2
                y = c.get(e, 0) + x1 * x2
                if y:
                    c[e] = y
                else:
                    c.pop(e, None)
        out = Laurent()
        out.c = {e: _cnorm(x) for e, x in c.items() if x}
        return out

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by v^k."""
        out = Laurent()
        out.c = {e + k: x for e, x in self.c.items()}
        return out

    def __pow__(self, n):
        out = Laurent.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # structure ------------------------------------------------------------

    def min_exp(self):
        return min(self.c) if self.c else 0

    def max_exp(self):
        return max(self.c) if self.c else 0

    def evaluate(self, v0):
        """Exact evaluation at a rational v0."""
        v0 = Fraction(v0)
        return sum((Fraction(x) * v0 ** e for e, x in self.c.items()), Fraction(0))

    def divexact(self, other):
        """Return self/other when the division is exact in Q[v, v^-1], else None."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.is_zero():
            return Laurent()
        # shift both to honest polynomials
        sh_self, sh_other = self.min_exp(), other.min_exp()
        a = {e - sh_self: Fraction(x) for e, x in self.c.items()}
        b = {e - sh_other: Fraction(x) for e, x in other.c.items()}
        db = max(b)
        lead_b = b[db]
        quo = {}
        while a:
            da = max(a)
            if da < db:
                return None
            f = a[da] / lead_b
            quo[da - db] = f
            for e, x in b.items():
                y = a.get(e + da - db, Fraction(0)) - f * x
                if y:
                    a[e + da - db] = y
                else:
                    a.pop(e + da - db, None)
        out = Laurent({e + sh_self - sh_other: x for e, x in quo.items()})
        return out

    def serialize(self):
        """Canonical text form 'c0:e0,c1:e1,...' with exponents ascending."""
        return ",".join("%s:%d" % (c, e) for e, c in sorted(self.c.items()))

    @staticmethod
    def deserialize(text):
        if not text:
            return Laurent()
        c = {}
        for item in text.split(","):
            cs, es = item.split(":")
            c[int(es)] = Fraction(cs)
        return Laurent(c)

    def __repr__(self):
        if not self.c:
            return "0"
        parts = []
        for e, x in sorted(self.c.items()):
            if e == 0:
                parts.append("%s" % x)
            elif e == 1:
                parts.append("%s*v" % x)
            else:
                parts.append("%s*v^%d" % (x, e))
        return " + ".join(parts)


# spec-facing alias: the scalar ring of Hecke coefficients
LaurentScalar = Laurent


def laurent_gcd(a: Laurent, b: Laurent) -> Laurent:
    """Monic gcd in Q[v] of the polynomial parts (v-power factors dropped)."""
    fa = {e - a.min_exp(): Fraction(x) for e, x in a.c.items()}
    fb = {e - b.min_exp(): Fraction(x) for e, x in b.c.items()}

    def degree(p):
        return max(p) if p else -1

    while fb:
        # fa mod fb
        da, db = degree(fa), degree(fb)
        lead_b = fb[db]
        while fa and degree(fa) >= db:
            da = degree(fa)
            f = fa[da] / lead_b
            for e, x in fb.items():
                y = fa.get(e + da - db, Fraction(0)) - f * x
                if y:
                    fa[e + da - db] = y
                else:
                    fa.pop(e + da - db, None)
        fa, fb = fb, fa
    if not fa:
        return Laurent.one()
    lead = fa[degree(fa)]
    return Laurent({e: x / lead for e, x in fa.items()})


class LaurentFrac:
    """Quotient num/den of Laurent polynomials, den a nonzero v-polynomial.

    Denominators only enter through division by Poincare polynomials P_J(q),
    so a common-denominator representation with univariate gcd reduction is
    enough.  Normal form: den has min_exp 0 and leading coefficient 1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Laurent, den: Laurent | None = None):
        if den is None or den.is_one():
            self.num, self.den = num, Laurent.one()
            return
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = Laurent(), Laurent.one()
            return
        # strip the v-unit part of den into num
        k = den.min_exp()
        if k:
            den = den.shift(-k)
            num = num.shift(-k)
        g = laurent_gcd(num, den)
        if not g.is_one():
            num = num.divexact(g)
            den = den.divexact(g)
        lead = den.c[den.max_exp()]
        if lead != 1:
            inv = Fraction(1, 1) / Fraction(lead)
            num = num * inv
            den = den * inv
        self.num, self.den = num, den

    @staticmethod
    def from_laurent(x: Laurent):
        return LaurentFrac(x)

    def is_zero(self):
        return self.num.is_zero()

    def is_laurent(self):
        return self.den.is_one()

    def as_laurent(self):
        if not self.den.is_one():
            raise ValueError("nontrivial denominator %r" % self.den)
        return self.num

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, Laurent):
            other = LaurentFrac(other)
        if isinstance(other, int):
            other = LaurentFrac(Laurent({0: other}))
        if not isinstance(other, LaurentFrac):
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    def __add__(self, other):
        if isinstance(other, Laurent):
            other = LaurentFrac(other)
        return LaurentFrac(self.num * other.den + other.num * self.den,
                           self.den * other.den)

    def __neg__(self):
        out = LaurentFrac(Laurent.one())
        out.num, out.den = -self.num, self.den
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentFrac(self.num * other, self.den)
        if isinstance(other, Laurent):
            other = LaurentFrac(other)
        return LaurentFrac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Laurent):
            other = LaurentFrac(other)
        if other.is_zero():
            raise ZeroDivisionError
        return LaurentFrac(self.num * other.den, self.den * other.num)

    def evaluate(self, v0):
        return self.num.evaluate(v0) / self.den.evaluate(v0)

    def __repr__(self):
        if self.den.is_one():
            return repr(self.num)
        return "(%r)/(%r)" % (self.num, self.den)


class MLaurent:
    """Multivariate Laurent polynomial; variable 0 is v, the rest are
    character coordinates.  Exponent keys are integer tuples."""

    __slots__ = ("n", "c")

    def __init__(self, nvars, coeffs=None):
        self.n = nvars
        c = {}
        if coeffs:
            for e, x in coeffs.items():
                if x:
                    c[tuple(e)] = _cnorm(x)
        self.c = c

    @staticmethod
    def zero(n):
        return MLaurent(n)

    @staticmethod
    def one(n):
        return MLaurent(n, {(0,) * n: 1})

    @staticmethod
    def monomial(n, exps, coeff=1):
        return MLaurent(n, {tuple(exps): coeff})

    @staticmethod
    def from_laurent(x: Laurent, n):
        return MLaurent(n, {(e,) + (0,) * (n - 1): v for e, v in x.c.items()})

    def is_zero(self):
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        return isinstance(other, MLaurent) and self.n == other.n and self.c == other.c

    def __hash__(self):
        return hash((self.n, frozenset(self.c.items())))

    def __add__(self, other):
        c = dict(self.c)
        for e, x in other.c.items():
            y = c.get(e, 0) + x
            if y:
                c[e] = _cnorm(y)
            else:
                c.pop(e, None)
        out = MLaurent(self.n)
        out.c = c
        return out

    def __neg__(self):
        out = MLaurent(self.n)
        out.c = {e: -x for e, x in self.c.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MLaurent(self.n)
            out = MLaurent(self.n)
            out.c = {e: _cnorm(x * other) for e, x in self.c.items()}
            return out
        c = {}
        for e1, x1 in self.c.items():
            for e2, x2 in other.c.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                y = c.get(e, 0) + x1 * x2
                if y:
                    c[e] = y
                else:
                    c.pop(e, None)
        out = MLaurent(self.n)
        out.c = {e: _cnorm(x) for e, x in c.items() if x}
        return out

    __rmul__ = __mul__

    def evaluate(self, values):
        """Exact evaluation; values is one Fraction per variable."""
        values = [Fraction(v) for v in values]
        total = Fraction(0)
        for e, x in self.c.items():
            term = Fraction(x)
            for val, k in zip(values, e):
                term *= val ** k
            total += term
        return total

    def evaluate_complex(self, values):
        total = 0j
        for e, x in self.c.items():
            term = complex(x)
            for val, k in zip(values, e):
                term *= val ** k
            total += term
        return total

    def min_exps(self):
        lo = [0] * self.n
        for i in range(self.n):
            lo[i] = min(e[i] for e in self.c) if self.c else 0
        return tuple(lo)

    def divexact(self, other):
        """self/other when exact in the Laurent ring, else None."""
        if other.is_zero():
            raise ZeroDivisionError
        if self.is_zero():
            return MLaurent(self.n)
        lo_a, lo_b = self.min_exps(), other.min_exps()
        a = {tuple(x - y for x, y in zip(e, lo_a)): Fraction(v) for e, v in self.c.items()}
        b = {tuple(x - y for x, y in zip(e, lo_b)): Fraction(v) for e, v in other.c.items()}
        lead_b = max(b)  # lex order
        quo = {}
        while a:
            lead_a = max(a)
            diff = tuple(x - y for x, y in zip(lead_a, lead_b))
            if any(d < 0 for d in diff):
                return None
            f = a[lead_a] / b[lead_b]
            quo[diff] = f
            for e, x in b.items():
                t = tuple(u + d for u, d in zip(e, diff))
                y = a.get(t, Fraction(0)) - f * x
                if y:
                    a[t] = y
                else:
                    a.pop(t, None)
        out = MLaurent(self.n, {tuple(e + la - lb for e, la, lb in zip(q, lo_a, lo_b)): x
                                for q, x in quo.items()})
        return out

    def serialize(self):
        items = sorted(self.c.items())
        return ",".join("%s:%s" % (x, ".".join(map(str, e))) for e, x in items)

    def __repr__(self):
        if not self.c:
            return "0"
        names = ["v"] + ["s%d" % i for i in range(1, self.n)]
        parts = []
        for e, x in sorted(self.c.items()):
            mono = "*".join("%s^%d" % (names[i], k) for i, k in enumerate(e) if k)
            parts.append("%s%s" % (x, "*" + mono if mono else ""))
        return " + ".join(parts)
