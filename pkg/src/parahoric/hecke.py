"""Iwahori-Hecke algebra of the extended affine Weyl group, over exact
Laurent coefficients, with the Bernstein elements and the center.

Normalizations fixed here once and for all:

  * q_s = v^(2 e_s) with e_s = 1 for every generator by default; unequal
    parameter functions are accepted but must be constant on conjugation
    classes of affine generators.
  * theta_lam = v^(L2 - L1) T_{t_{lam1}} T_{t_{lam2}}^{-1} for any
    decomposition lam = lam1 - lam2 into dominant pieces, L_i the parameter
    weight of a reduced word of t_{lam_i} (the plain length for equal
    parameters).  Well-definedness is a tested invariant.
  * z_mu has T-realization sum_{lam in W mu} theta_lam, right-convolved with
    the parahoric indicator; vol(Iwahori) = 1, i.e. no division on the way in.
"""

from __future__ import annotations

import os
from fractions import Fraction

from .affine import (
    AffineContext,
    ExtAffineWeylElement,
    ParahoricType,
    affine_context,
    parahoric_members,
)
from .intlinalg import vec_add
from .kernels import run_chain
from .laurent import Laurent, LaurentFrac, laurent_gcd
from .rootdata import BasedRootDatum, weyl_elements, weyl_orbit


def _laurent_lcm(a: Laurent, b: Laurent) -> Laurent:
    g = laurent_gcd(a, b)
    return a.divexact(g) * b


class HeckeAlgebra:
    """Context object: datum, affine combinatorics, parameters, memo tables."""

    def __init__(self, datum: BasedRootDatum, params=None):
        self.datum = datum
        self.ctx: AffineContext = affine_context(datum)
        self.ball = self.ctx.ball
        n = self.ctx.ngens
        if params is None:
            params = (1,) * n
        params = tuple(int(e) for e in params)
        if len(params) != n or any(e < 1 for e in params):
            raise ValueError("need one positive exponent per affine generator")
        self._check_params_constant_on_classes(params)
        self.params = params
        self.shifts = tuple(2 * e for e in params)
        self._theta_memo = {}
        self._ttrans_memo = {}
        self._dominants = []
        self._dominant_bound = 0

    def _check_params_constant_on_classes(self, params):
        ctx = self.ctx
        n = ctx.ngens
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a, b):
            parent[find(a)] = find(b)

        # odd braid bond => conjugate generators
        for a in range(n):
            for b in range(a + 1, n):
                prod = ctx.mul(ctx.gen_elems[a], ctx.gen_elems[b])
                x = ctx.identity
                order = None
                for k in range(1, 9):
                    x = ctx.mul(x, prod)
                    if x == ctx.identity:
                        order = k
                        break
                if order is not None and order % 2 == 1:
                    union(a, b)
        # Omega conjugation permutes S_aff
        og = ctx.omega_group()
        for _, _, om in og.generators:
            perm = og.action_on_generators(om)
            for a in range(n):
                union(a, perm[a])
        for a in range(n):
            if params[a] != params[find(a)]:
                raise ValueError("parameters must be constant on conjugation "
                                 "classes of affine generators")

    # basic elements ---------------------------------------------------------

    def element(self, x: ExtAffineWeylElement, coeff=None) -> "HeckeElement":
        i = self.ball.id_of(x)
        c = LaurentFrac(Laurent.one()) if coeff is None else _as_frac(coeff)
        return HeckeElement(self, {i: c})

    def one(self):
        return self.element(self.ctx.identity)

    def zero(self):
        return HeckeElement(self, {})

    def T(self, trans, w=0):
        return self.element(ExtAffineWeylElement(trans, w))

    def word_weight(self, word):
        """Sum of parameter exponents along a generator word."""
        return sum(self.params[g] for g in word)

    # dominant decomposition ---------------------------------------------------

    def _extend_dominants(self, bound):
        if bound <= self._dominant_bound:
            return
        d = self.datum
        box = range(-bound, bound + 1)
        items = []

        def rec(prefix):
            if len(prefix) == d.rank:
                v = tuple(prefix)
                if d.is_dominant(v):
                    t = self.ctx.translation(v)
                    items.append((self.ctx.length(t), v))
                return
            for c in box:
                rec(prefix + [c])

        rec([])
        items = sorted(set(items))
        self._dominants = items
        self._dominant_bound = bound

    def dominant_pair(self, lam):
        """lam = lam1 - lam2 with both dominant and lam2 of minimal
        translation length (deterministic tie-break by coordinates)."""
        lam = tuple(lam)
        d = self.datum
        bound = max(4, 2 * max((abs(t) for t in lam), default=1))
        while True:
            self._extend_dominants(bound)
            for _, lam2 in self._dominants:
                lam1 = vec_add(lam, lam2)
                if d.is_dominant(lam1):
                    return lam1, lam2
            bound *= 2
            if bound > 4096:
                raise AssertionError("no dominant decomposition found for %r" % (lam,))


def _as_frac(c):
    if isinstance(c, LaurentFrac):
        return c
    if isinstance(c, Laurent):
        return LaurentFrac(c)
    if isinstance(c, (int, Fraction)):
        return LaurentFrac(Laurent.term(c))
    raise TypeError("bad coefficient %r" % (c,))


class HeckeElement:
    """Finitely supported T-basis expansion with LaurentFrac coefficients."""

    __slots__ = ("alg", "coeffs")

    def __init__(self, alg: HeckeAlgebra, coeffs):
        self.alg = alg
        self.coeffs = {i: c for i, c in coeffs.items() if not c.is_zero()}

    # ring structure -----------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            s = out.get(i)
            out[i] = c if s is None else s + c
        return HeckeElement(self.alg, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = _as_frac(c) if not isinstance(c, (int, Fraction)) else c
        return HeckeElement(self.alg, {i: x * c for i, x in self.coeffs.items()})

    def shift(self, k):
        """Multiply by the unit v^k."""
        return self.scale(LaurentFrac(Laurent.term(1, k)))

    def __eq__(self, other):
        if not isinstance(other, HeckeElement) or other.alg is not self.alg:
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        zero = LaurentFrac(Laurent.zero())
        return all(self.coeffs.get(k, zero) == other.coeffs.get(k, zero)
                   for k in keys)

    def is_zero(self):
        return not self.coeffs

    def _check(self, other):
        if other.alg is not self.alg:
            raise ValueError("elements of different Hecke algebras "
                             "(or mismatched parameter functions)")

    # views ---------------------------------------------------------------------

    def support(self):
        ball = self.alg.ball
        return tuple(sorted((ball.elems[i] for i in self.coeffs)))

    def coeff(self, x: ExtAffineWeylElement) -> LaurentFrac:
        i = self.alg.ball.index.get(x)
        if i is None or i not in self.coeffs:
            return LaurentFrac(Laurent.zero())
        return self.coeffs[i]

    def __repr__(self):
        ball = self.alg.ball
        parts = []
        for i in sorted(self.coeffs):
            parts.append("(%r)*T[%r]" % (self.coeffs[i], ball.elems[i]))
        return " + ".join(parts) if parts else "0"

    def serialize(self):
        """Canonical text form, id-independent: sorted by element."""
        ball = self.alg.ball
        items = sorted((ball.elems[i], c) for i, c in self.coeffs.items())
        out = []
        for x, c in items:
            if not c.is_laurent():
                raise ValueError("cannot serialize with nontrivial denominator")
            out.append("%s.%s=%s" % (",".join(map(str, x.trans)), x.w,
                                     c.as_laurent().serialize()))
        return " ".join(out)

    # integer-support plumbing ----------------------------------------------------

    def _cleared(self):
        """(support {id: {exp: int}}, scale) with coefficients made integral."""
        den = Laurent.one()
        for c in self.coeffs.values():
            den = _laurent_lcm(den, c.den)
        polys = {}
        lcm_int = 1
        for i, c in self.coeffs.items():
            p = c.num * den.divexact(c.den)
            polys[i] = p
            for x in p.c.values():
                if isinstance(x, Fraction):
                    lcm_int = lcm_int * x.denominator // _gcd(lcm_int, x.denominator)
        support = {}
        for i, p in polys.items():
            row = {}
            for e, x in p.c.items():
                v = x * lcm_int
                row[e] = int(v)
            support[i] = row
        scale = LaurentFrac(Laurent.term(Fraction(1, lcm_int)), den)
        return support, scale

    @staticmethod
    def _from_support(alg, support, scale=None):
        coeffs = {}
        for i, row in support.items():
            c = LaurentFrac(Laurent(row))
            if scale is not None:
                c = c * scale
            coeffs[i] = c
        return HeckeElement(alg, coeffs)

    # chain multiplications --------------------------------------------------------

    def _omega_permute(self, support, om, side):
        if om == self.alg.ctx.identity:
            return support
        mapping = self.alg.ball.omega_map(om, list(support), side)
        return {mapping[i]: row for i, row in support.items()}

    def rmul_element(self, x: ExtAffineWeylElement):
        """self * T_x."""
        word, om = self.alg.ctx.reduced_word(x)
        support, scale = self._cleared()
        support = run_chain(self.alg.ball, support,
                            [(g, False) for g in word], self.alg.shifts, "right")
        support = self._omega_permute(support, om, "right")
        return self._from_support(self.alg, support, scale)

    def rmul_element_inverse(self, x: ExtAffineWeylElement):
        """self * T_x^{-1}."""
        word, om = self.alg.ctx.reduced_word(x)
        support, scale = self._cleared()
        support = self._omega_permute(support, self.alg.ctx.inv(om), "right")
        support = run_chain(self.alg.ball, support,
                            [(g, True) for g in reversed(word)],
                            self.alg.shifts, "right")
        return self._from_support(self.alg, support, scale)

    def lmul_element(self, x: ExtAffineWeylElement):
        """T_x * self."""
        word, om = self.alg.ctx.reduced_word(x)
        support, scale = self._cleared()
        support = self._omega_permute(support, om, "left")
        support = run_chain(self.alg.ball, support,
                            [(g, False) for g in reversed(word)],
                            self.alg.shifts, "left")
        return self._from_support(self.alg, support, scale)

    def rmul_gen(self, g, inverse=False):
        support, scale = self._cleared()
        support = run_chain(self.alg.ball, support, [(g, inverse)],
                            self.alg.shifts, "right")
        return self._from_support(self.alg, support, scale)

    def lmul_gen(self, g, inverse=False):
        support, scale = self._cleared()
        support = run_chain(self.alg.ball, support, [(g, inverse)],
                            self.alg.shifts, "left")
        return self._from_support(self.alg, support, scale)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def multiply(a: HeckeElement, b: HeckeElement, cache=None) -> HeckeElement:
    """Convolution product a * b (bilinear extension of the T-relations)."""
    a._check(b)
    alg = a.alg
    if cache is not None:
        mono = _as_monomials(a, b)
        if mono is not None:
            return cache.product(*mono)
    out = alg.zero()
    ball = alg.ball
    for i in sorted(b.coeffs):
        term = a.rmul_element(ball.elems[i]).scale(b.coeffs[i])
        out = out + term
    return out


def _as_monomials(a, b):
    if len(a.coeffs) == 1 and len(b.coeffs) == 1:
        (ia, ca), = a.coeffs.items()
        (ib, cb), = b.coeffs.items()
        one = LaurentFrac(Laurent.one())
        if ca == one and cb == one:
            ball = a.alg.ball
            return ball.elems[ia], ball.elems[ib]
    return None


def theta_element(alg: HeckeAlgebra, lam) -> HeckeElement:
    """Bernstein element theta_lam; independent of the dominant decomposition."""
    lam = tuple(lam)
    out = alg._theta_memo.get(lam)
    if out is not None:
        return out
    lam1, lam2 = alg.dominant_pair(lam)
    out = _theta_from_pair(alg, lam1, lam2)
    alg._theta_memo[lam] = out
    return out


def _theta_from_pair(alg, lam1, lam2):
    t1 = translation_expansion(alg, lam1)
    ctx = alg.ctx
    t2 = ctx.translation(lam2)
    word1, _ = ctx.reduced_word(ctx.translation(lam1))
    word2, _ = ctx.reduced_word(t2)
    h = t1.rmul_element_inverse(t2)
    return h.shift(alg.word_weight(word2) - alg.word_weight(word1))


def translation_expansion(alg: HeckeAlgebra, lam) -> HeckeElement:
    """T_{t_lam} for dominant lam (memoized)."""
    lam = tuple(lam)
    h = alg._ttrans_memo.get(lam)
    if h is None:
        if not alg.datum.is_dominant(lam):
            raise ValueError("translation_expansion needs a dominant vector")
        h = alg.one().rmul_element(alg.ctx.translation(lam))
        alg._ttrans_memo[lam] = h
    return h


def indicator_J(alg: HeckeAlgebra, J: ParahoricType) -> HeckeElement:
    """The sum of T_w over the finite parahoric subgroup W~_J."""
    coeffs = {}
    one = LaurentFrac(Laurent.one())
    for x in parahoric_members(alg.ctx, J):
        coeffs[alg.ball.id_of(x)] = one
    return HeckeElement(alg, coeffs)


def poincare_polynomial(alg: HeckeAlgebra, J: ParahoricType) -> Laurent:
    """P_J(q) = sum over W~_J of q^(parameter weight)."""
    out = Laurent.zero()
    for x in parahoric_members(alg.ctx, J):
        word, _ = alg.ctx.reduced_word(x)
        out = out + Laurent.term(1, 2 * alg.word_weight(word))
    return out


def commutes_with_generators(h: HeckeElement) -> bool:
    """Exact commutation with every T_s (s in S_aff) and with the realized
    length-zero units T_omega."""
    alg = h.alg
    for g in range(alg.ctx.ngens):
        if not h.rmul_gen(g) == h.lmul_gen(g):
            return False
    og = alg.ctx.omega_group()
    for _, _, om in og.generators:
        support, scale = h._cleared()
        right = h._omega_permute(support, om, "right")
        left = h._omega_permute(support, om, "left")
        if HeckeElement._from_support(alg, right, scale) != \
           HeckeElement._from_support(alg, left, scale):
            return False
    return True


def is_central(h: HeckeElement, theta_lattice_check=True) -> bool:
    """Commutation with all affine generators, Omega units, and (optionally)
    the Bernstein elements of the +-basis vectors of the lattice."""
    if not commutes_with_generators(h):
        return False
    if theta_lattice_check:
        alg = h.alg
        n = alg.datum.rank
        for k in range(n):
            e = tuple(1 if i == k else 0 for i in range(n))
            for lam in (e, tuple(-t for t in e)):
                th = theta_element(alg, lam)
                if multiply(h, th) != multiply(th, h):
                    return False
    return True


class CentralElement:
    """W-invariant finitely supported function on the cocharacter lattice,
    with cached Hecke realizations per parahoric."""

    def __init__(self, datum: BasedRootDatum, fn, levi=None):
        self.datum = datum
        self.levi = None if levi is None else tuple(sorted(levi))
        self.fn = {tuple(k): v for k, v in fn.items()
                   if not (v.is_zero() if isinstance(v, Laurent) else v == 0)}
        self._validate()
        self._hecke = {}

    def _mats(self):
        W = weyl_elements(self.datum)
        if self.levi is None:
            gens = range(self.datum.nsimple)
        else:
            gens = self.levi
        return [self.datum.reflection_matrix(i) for i in gens]

    def _validate(self):
        from .intlinalg import mat_vec
        for m in self._mats():
            for lam, c in self.fn.items():
                img = tuple(mat_vec(m, lam))
                other = self.fn.get(img)
                if other is None or other != c:
                    raise ValueError("function is not Weyl invariant "
                                     "(fails at %r)" % (lam,))

    def support(self):
        return tuple(sorted(self.fn))

    def coeff(self, lam):
        return self.fn.get(tuple(lam), Laurent.zero())

    def __eq__(self, other):
        return isinstance(other, CentralElement) and self.fn == other.fn

    def __repr__(self):
        return "CentralElement(%s)" % (
            ", ".join("%r: %r" % (k, v) for k, v in sorted(self.fn.items())))

    def hecke(self, alg: HeckeAlgebra, J: ParahoricType) -> HeckeElement:
        """The realization (sum of theta_lam weighted by fn) * indicator_J."""
        if alg.datum != self.datum:
            raise ValueError("central element belongs to a different datum")
        key = (id(alg), frozenset(J.gens))
        h = self._hecke.get(key)
        if h is None:
            acc = alg.zero()
            for lam in sorted(self.fn):
                acc = acc + theta_element(alg, lam).scale(_as_frac(self.fn[lam]))
            if J.gens:
                acc = multiply(acc, indicator_J(alg, J))
            self._hecke[key] = h = acc
        return h


def orbit_sum(datum: BasedRootDatum, mu) -> CentralElement:
    """The W-orbit indicator function of mu."""
    orbit = weyl_orbit(datum, mu)
    return CentralElement(datum, {lam: Laurent.one() for lam in orbit})


def bernstein_function(alg: HeckeAlgebra, mu, J: ParahoricType) -> CentralElement:
    """z_mu at level J: the central element with orbit-sum preimage; its
    Hecke realization is cached and certified central on demand."""
    z = orbit_sum(alg.datum, mu)
    z.hecke(alg, J)
    return z


def to_parahoric(z: CentralElement, alg: HeckeAlgebra, J: ParahoricType) -> HeckeElement:
    """z * indicator_J (vol(Iwahori) = 1 normalization; no division)."""
    return z.hecke(alg, J)


def change_parahoric(alg: HeckeAlgebra, h: HeckeElement,
                     J1: ParahoricType, J2: ParahoricType) -> HeckeElement:
    """Push a J1-level element to level J2 >= J1: right convolution with the
    J2-indicator in the vol(J1) = 1 normalization (divide one P_J1(q))."""
    if not J1.gens <= J2.gens:
        raise ValueError("change_parahoric needs J1 contained in J2")
    out = multiply(h, indicator_J(alg, J2))
    pj1 = poincare_polynomial(alg, J1)
    inv = LaurentFrac(Laurent.one(), pj1)
    return out.scale(inv)


def bi_invariant(alg: HeckeAlgebra, h: HeckeElement, J: ParahoricType) -> bool:
    """T_s-absorption on both sides for s in J: T_s h = q_s h = h T_s."""
    for g in J.gens:
        qs = LaurentFrac(Laurent.term(1, alg.shifts[g]))
        if h.lmul_gen(g) != h.scale(qs):
            return False
        if h.rmul_gen(g) != h.scale(qs):
            return False
    return True


# structure-constant cache -------------------------------------------------------


class StructureCache:
    """Persistent cache of T_x * T_y products, line-delimited text records.

    Record: type|params|cutoff|xkey|ykey <TAB> serialized T-expansion.
    Entries with a stale cutoff stay valid (products do not depend on it).
    """

    def __init__(self, alg: HeckeAlgebra, directory, cutoff=8):
        self.alg = alg
        self.directory = directory
        self.cutoff = cutoff
        self.path = os.path.join(directory, "structure_cache.txt")
        self._mem = None

    def _tag(self):
        return "%s|e%s" % (self.alg.datum.label,
                           "-".join(map(str, self.alg.params)))

    def _elem_key(self, x: ExtAffineWeylElement):
        word, om = self.alg.ctx.reduced_word(x)
        return "%s@%s" % (".".join(map(str, word)) or "e",
                          ",".join(map(str, om.trans)))

    def _load(self):
        if self._mem is None:
            self._mem = {}
            if os.path.exists(self.path):
                with open(self.path, "r", encoding="utf-8") as fh:
                    for line in fh:
                        line = line.rstrip("\n")
                        if not line:
                            continue
                        key, val = line.split("\t", 1)
                        parts = key.split("|")
                        # drop the cutoff field; stale cutoffs remain valid
                        self._mem["|".join(parts[:2] + parts[3:])] = val
        return self._mem

    def _key(self, x, y, with_cutoff):
        base = [self._tag().split("|")[0], self._tag().split("|")[1]]
        if with_cutoff:
            base.append(str(self.cutoff))
        base += [self._elem_key(x), self._elem_key(y)]
        return "|".join(base)

    def product(self, x, y) -> HeckeElement:
        mem = self._load()
        k = self._key(x, y, with_cutoff=False)
        val = mem.get(k)
        if val is not None:
            return self._deserialize(val)
        h = self.alg.element(x).rmul_element(y)
        ser = h.serialize()
        mem[k] = ser
        os.makedirs(self.directory, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write("%s\t%s\n" % (self._key(x, y, with_cutoff=True), ser))
        return h

    def _deserialize(self, text) -> HeckeElement:
        coeffs = {}
        for item in text.split(" "):
            if not item:
                continue
            head, ser = item.split("=", 1)
            trans_s, w_s = head.rsplit(".", 1)
            x = ExtAffineWeylElement(tuple(int(t) for t in trans_s.split(",")),
                                     int(w_s))
            coeffs[self.alg.ball.id_of(x)] = LaurentFrac(Laurent.deserialize(ser))
        return HeckeElement(self.alg, coeffs)

    def warm(self, bound=None):
        """Precompute monomial products T_x T_y with len(x)+len(y) <= bound."""
        bound = min(bound if bound is not None else self.cutoff, 6)
        ctx = self.alg.ctx
        elems = _ball_elements_up_to(ctx, bound)
        count = 0
        for x in elems:
            lx = ctx.length(x)
            for y in elems:
                if lx + ctx.length(y) <= bound:
                    self.product(x, y)
                    count += 1
        return count

    def stat(self):
        mem = self._load()
        return {"entries": len(mem), "path": self.path}

    def clear(self):
        self._mem = {}
        if os.path.exists(self.path):
            os.remove(self.path)


def _ball_elements_up_to(ctx: AffineContext, bound):
    """All W~ elements of length <= bound in the W_aff * (torsion Omega) span."""
    seen = {ctx.identity}
    og = ctx.omega_group()
    for _, d, om in og.generators:
        if d > 0:
            seen.add(om)
    frontier = list(seen)
    while frontier:
        new = []
        for x in frontier:
            for g in range(ctx.ngens):
                for y in (ctx.mul(x, ctx.gen_elems[g]), ctx.mul(ctx.gen_elems[g], x)):
                    if y not in seen and ctx.length(y) <= bound:
                        seen.add(y)
                        new.append(y)
        frontier = new
    return sorted(seen, key=ctx.canonical_key)
