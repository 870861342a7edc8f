"""Extended affine Weyl group W~ = X x| W: length, Bruhat order, Omega,
parahoric subgroups, coset tables, Iwasawa-cell labels, facet tests.

Elements are pairs (translation, finite index) under the product law
(l, w)(m, v) = (l + w m, w v).  Length is the Iwahori-Matsumoto closed form

    len(t_l w) = sum_{a > 0, w^{-1} a > 0} |<a, l>|
               + sum_{a > 0, w^{-1} a < 0} |<a, l> - 1|,

cross-checked elsewhere against geodesic distance in the generator graph.
"""

from __future__ import annotations

import functools
from array import array
from dataclasses import dataclass
from fractions import Fraction

from .intlinalg import dot, int_solve, mat_vec, vec_add, smith_normal_form
from .rootdata import (
    BasedRootDatum,
    DiagramAutomorphism,
    WeylGroup,
    highest_root,
    positive_roots,
    root_in_simple_basis,
    weyl_elements,
)


class ExtAffineWeylElement(tuple):
    """Pair (translation tuple, finite Weyl index).  Plain tuple subclass so
    elements hash and sort cheaply; all structure lives in AffineContext."""

    __slots__ = ()

    def __new__(cls, trans, w):
        return tuple.__new__(cls, (tuple(trans), int(w)))

    @property
    def trans(self):
        return self[0]

    @property
    def w(self):
        return self[1]

    def __repr__(self):
        return "t%r.w%d" % (list(self[0]), self[1])


class AffineContext:
    """All affine-Weyl combinatorics of one datum."""

    def __init__(self, datum: BasedRootDatum):
        self.datum = datum
        self.W: WeylGroup = weyl_elements(datum)
        self.pos = positive_roots(datum)
        self.hroot = highest_root(datum)
        self.hcoroot = self._coroot_of(self.hroot)
        self.ngens = datum.nsimple + 1  # generator 0 is the affine one
        zero = (0,) * datum.rank
        self.identity = ExtAffineWeylElement(zero, 0)
        # generator elements: s_0 = t_{hcoroot} s_{hroot}, s_i finite
        hidx = self._reflection_index(self.hroot, self.hcoroot)
        self.gen_elems = [ExtAffineWeylElement(self.hcoroot, hidx)]
        for i in range(datum.nsimple):
            si = self.W.index[datum.reflection_matrix(i)]
            self.gen_elems.append(ExtAffineWeylElement(zero, si))
        # vector parts of the simple affine roots a_0 = (-hroot, 1), a_i = (alpha_i, 0)
        self.affroot_vec = [tuple(-t for t in self.hroot)] + list(datum.simple_roots)
        self.affroot_const = [1] + [0] * datum.nsimple
        # per finite element: which positive roots are sent negative by w^{-1}
        self._neg = []
        for x in self.W.elements():
            row = []
            for a in self.pos:
                wa = tuple(sum(a[i] * self.W.mats[x][i][j] for i in range(datum.rank))
                           for j in range(datum.rank))  # a o w
                row.append(self._is_negative_root(wa))
            self._neg.append(tuple(row))
        # sign of w(beta) for each finite w and covector beta cache
        self._covector_sign_cache = {}
        self._bruhat_memo = {}
        self._omega = None
        self._omega_norm = {}
        self.ball = Ball(self)

    # root helpers ----------------------------------------------------------

    def _coroot_of(self, cov):
        """Coroot of a root: transport alpha_i^ by any w with w(alpha_i) = cov."""
        d = self.datum
        for x in self.W.elements():
            for i in range(d.nsimple):
                if self.W.act_covector(x, d.simple_roots[i]) == cov:
                    return self.W.act(x, d.simple_coroots[i])
        raise ValueError("not a root: %r" % (cov,))

    def _reflection_index(self, cov, covec):
        d = self.datum
        n = d.rank
        mat = tuple(
            tuple((1 if k == j else 0) - cov[j] * covec[k] for j in range(n))
            for k in range(n)
        )
        return self.W.index[mat]

    def _is_negative_root(self, cov):
        c = root_in_simple_basis(self.datum, cov)
        if c is None:
            raise ValueError("covector %r is not a root" % (cov,))
        if all(t >= 0 for t in c):
            return False
        if all(t <= 0 for t in c):
            return True
        raise ValueError("covector %r is not a root" % (cov,))

    def finite_sends_negative(self, w, cov):
        """True iff w(cov) is a negative root, for a root covector cov."""
        key = (w, cov)
        out = self._covector_sign_cache.get(key)
        if out is None:
            out = self._is_negative_root(self.W.act_covector(w, cov))
            self._covector_sign_cache[key] = out
        return out

    # group law --------------------------------------------------------------

    def mul(self, x: ExtAffineWeylElement, y: ExtAffineWeylElement):
        return ExtAffineWeylElement(
            vec_add(x.trans, self.W.act(x.w, y.trans)), self.W.mul(x.w, y.w)
        )

    def inv(self, x: ExtAffineWeylElement):
        wi = self.W.inv[x.w]
        return ExtAffineWeylElement(
            tuple(-t for t in self.W.act(wi, x.trans)), wi
        )

    def translation(self, lam):
        return ExtAffineWeylElement(lam, 0)

    def from_finite(self, w):
        return ExtAffineWeylElement((0,) * self.datum.rank, w)

    def mul_gen(self, x, g, side="right"):
        s = self.gen_elems[g]
        return self.mul(x, s) if side == "right" else self.mul(s, x)

    # length and words --------------------------------------------------------

    def length(self, x: ExtAffineWeylElement) -> int:
        lam, w = x.trans, x.w
        total = 0
        neg = self._neg[w]
        for k, a in enumerate(self.pos):
            p = dot(a, lam)
            total += abs(p - 1) if neg[k] else abs(p)
        return total

    def reduced_word(self, x):
        """ShortLex-minimal decomposition x = s_{i1} ... s_{ik} * omega.
        Returns (word tuple, omega element of length 0)."""
        word = []
        lx = self.length(x)
        while lx > 0:
            for g in range(self.ngens):
                y = self.mul(self.gen_elems[g], x)
                ly = self.length(y)
                if ly < lx:
                    word.append(g)
                    x, lx = y, ly
                    break
            else:
                raise AssertionError("no descent found; length formula broken")
        return tuple(word), x

    def canonical_key(self, x):
        """Sort key: (length, ShortLex word, omega translation)."""
        word, om = self.reduced_word(x)
        return (self.length(x), word, om.trans)

    def in_affine_weyl(self, x):
        """True iff x lies in W_aff, i.e. its translation is in the coroot lattice."""
        cor = self.datum.simple_coroots
        m = tuple(tuple(cor[j][i] for j in range(len(cor)))
                  for i in range(self.datum.rank))
        return int_solve(m, x.trans) is not None

    # Bruhat order -------------------------------------------------------------

    def bruhat_leq(self, x, y) -> bool:
        """Bruhat order on W~; elements of different W_aff-cosets are
        incomparable (returns False)."""
        if self.omega_class(x) != self.omega_class(y):
            return False
        return self._bruhat(x, y)

    def _bruhat(self, x, y):
        if x == y:
            return True
        lx, ly = self.length(x), self.length(y)
        if lx > ly:
            return False
        if ly == 0:
            return x == y
        key = (x, y)
        out = self._bruhat_memo.get(key)
        if out is not None:
            return out
        for g in range(self.ngens):
            sy = self.mul(self.gen_elems[g], y)
            if self.length(sy) < ly:
                sx = self.mul(self.gen_elems[g], x)
                if self.length(sx) < lx:
                    out = self._bruhat(sx, sy)
                else:
                    out = self._bruhat(x, sy)
                break
        self._bruhat_memo[key] = out
        return out

    # Omega ---------------------------------------------------------------------

    def omega_class(self, x):
        """Canonical label of the W_aff-coset of x (image of the translation
        lattice class in X/Q^vee; the finite part is absorbed)."""
        og = self.omega_group()
        return og.class_of(x.trans)

    def omega_group(self):
        if self._omega is None:
            self._omega = OmegaGroup(self)
        return self._omega

    def omega_normal_form(self, x):
        """The unique length-0 element in W_aff * x."""
        out = self._omega_norm.get(x)
        if out is None:
            y = x
            ly = self.length(y)
            while ly > 0:
                for g in range(self.ngens):
                    z = self.mul(self.gen_elems[g], y)
                    lz = self.length(z)
                    if lz < ly:
                        y, ly = z, lz
                        break
                else:
                    raise AssertionError("no descent; length formula broken")
            out = y
            self._omega_norm[x] = out
        return out

    # affine action ---------------------------------------------------------------

    def act_point(self, x, point):
        lam, w = x.trans, x.w
        img = mat_vec(self.W.mats[w], tuple(Fraction(t) for t in point))
        return tuple(a + b for a, b in zip(img, lam))

    def interior_point(self):
        """A rational interior point of the base alcove."""
        xi = (0,) * self.datum.rank
        for a in self.pos:
            xi = vec_add(xi, self._coroot_of(a))
        c = Fraction(1, dot(self.hroot, xi) + 1)
        return tuple(Fraction(t) * c for t in xi)

    def affine_root_positive(self, vec_part, const):
        p0 = self.interior_point()
        val = dot(vec_part, p0) + const
        if val == 0:
            raise AssertionError("affine root vanishes on the alcove interior")
        return val > 0


def affine_context(datum: BasedRootDatum) -> AffineContext:
    return _affine_context_cache(datum)


@functools.lru_cache(maxsize=None)
def _affine_context_cache(datum):
    return AffineContext(datum)


class OmegaGroup:
    """Omega = X/Q^vee, realized by length-0 elements of W~.

    invariants: the SNF invariant factors of Q^vee inside X (0 means an
    infinite cyclic factor, as for GL_n-style lattices).  Torsion classes are
    fully enumerated; free factors are realized through their +-1 generators.
    """

    def __init__(self, ctx: AffineContext):
        self.ctx = ctx
        d = ctx.datum
        cor = d.simple_coroots
        m = tuple(tuple(cor[j][i] for j in range(len(cor))) for i in range(d.rank))
        u, dd, v = smith_normal_form(m)
        self._u = u
        ncols = len(cor)
        divisors = []
        for i in range(d.rank):
            di = dd[i][i] if i < min(d.rank, ncols) else 0
            divisors.append(di)
        self.invariants = tuple(divisors)
        self.is_finite = all(di != 0 for di in divisors)
        # generator translations: columns of U^{-1} for nontrivial factors
        from .intlinalg import frac_inv
        uinv = frac_inv(u)
        self.generators = []
        for i, di in enumerate(divisors):
            if di == 1:
                continue
            g = tuple(int(uinv[j][i]) for j in range(d.rank))
            om = ctx.omega_normal_form(ctx.translation(g))
            self.generators.append((i, di, om))
        # enumerate all elements when finite (Omega is abelian)
        self.elements = None
        if self.is_finite:
            seen = {ctx.identity}
            frontier = [ctx.identity]
            while frontier:
                new = []
                for x in frontier:
                    for _, _, om in self.generators:
                        y = ctx.mul(x, om)
                        if y not in seen:
                            seen.add(y)
                            new.append(y)
                frontier = new
            self.elements = sorted(seen, key=lambda e: (e.trans, e.w))
            for e in self.elements:
                if ctx.length(e) != 0:
                    raise AssertionError("Omega element of positive length")

    @property
    def order(self):
        if not self.is_finite:
            return None
        out = 1
        for di in self.invariants:
            if di > 1:
                out *= di
        return out

    def class_of(self, lam):
        """Canonical coordinates of lam in X/Q^vee."""
        ul = mat_vec(self._u, lam)
        out = []
        for i, di in enumerate(self.invariants):
            out.append(ul[i] % di if di > 0 else ul[i])
        return tuple(out)

    def action_on_generators(self, om):
        """Conjugation permutation of S_aff induced by a length-0 element."""
        ctx = self.ctx
        omi = ctx.inv(om)
        perm = []
        for g in range(ctx.ngens):
            y = ctx.mul(ctx.mul(om, ctx.gen_elems[g]), omi)
            if y not in ctx.gen_elems:
                raise AssertionError("Omega conjugation leaves S_aff")
            perm.append(ctx.gen_elems.index(y))
        return tuple(perm)


def omega_group(datum: BasedRootDatum) -> OmegaGroup:
    """Omega = X/Q^vee with length-0 realizations and its action on S_aff."""
    return affine_context(datum).omega_group()


class Ball:
    """Open-ended id table for W~ elements with lazy generator-neighbor arrays.

    ids are dense ints; nbr_right[g][i] / nbr_left[g][i] give the id of
    x s_g / s_g x, with -1 meaning not yet materialized.  The Hecke kernels
    operate on these arrays directly.
    """

    def __init__(self, ctx: AffineContext):
        self.ctx = ctx
        self.elems = []
        self.index = {}
        self.length = array("q")
        self.nbr_right = [array("q") for _ in range(ctx.ngens)]
        self.nbr_left = [array("q") for _ in range(ctx.ngens)]
        self.id_of(ctx.identity)

    def id_of(self, x: ExtAffineWeylElement) -> int:
        i = self.index.get(x)
        if i is None:
            i = len(self.elems)
            self.elems.append(x)
            self.index[x] = i
            self.length.append(self.ctx.length(x))
            for g in range(self.ctx.ngens):
                self.nbr_right[g].append(-1)
                self.nbr_left[g].append(-1)
        return i

    def right(self, i, g):
        j = self.nbr_right[g][i]
        if j < 0:
            j = self.id_of(self.ctx.mul(self.elems[i], self.ctx.gen_elems[g]))
            self.nbr_right[g][i] = j
        return j

    def left(self, i, g):
        j = self.nbr_left[g][i]
        if j < 0:
            j = self.id_of(self.ctx.mul(self.ctx.gen_elems[g], self.elems[i]))
            self.nbr_left[g][i] = j
        return j

    def close_chain(self, ids, word, side="right"):
        """Materialize neighbor entries along a generator word starting from
        the given id set; returns nothing, tables are ready afterwards."""
        step = self.right if side == "right" else self.left
        current = set(ids)
        for g in word:
            nxt = set()
            for i in current:
                nxt.add(step(i, g))
            current |= nxt

    def omega_map(self, om: ExtAffineWeylElement, ids, side="right"):
        """id -> id map for multiplication by a length-0 element."""
        ctx = self.ctx
        out = {}
        for i in ids:
            y = ctx.mul(self.elems[i], om) if side == "right" else ctx.mul(om, self.elems[i])
            out[i] = self.id_of(y)
        return out


@dataclass(frozen=True)
class ParahoricType:
    """A parahoric: a proper subset of the simple affine generators {0..n}."""

    gens: frozenset

    @staticmethod
    def iwahori():
        return ParahoricType(frozenset())

    @staticmethod
    def hyperspecial(datum: BasedRootDatum):
        """The finite-Weyl parahoric at the origin (all finite generators)."""
        return ParahoricType(frozenset(range(1, datum.nsimple + 1)))

    def validate(self, ctx: AffineContext):
        if not self.gens <= set(range(ctx.ngens)):
            raise ValueError("generator index out of range")
        if self.gens == set(range(ctx.ngens)):
            raise ValueError("parahoric generator set must be proper")


_PARAHORIC_CAP = 50000


@functools.lru_cache(maxsize=None)
def _parahoric_members(datum: BasedRootDatum, gens: frozenset):
    ctx = affine_context(datum)
    ParahoricType(gens).validate(ctx)
    seen = {ctx.identity}
    frontier = [ctx.identity]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = ctx.mul(x, ctx.gen_elems[g])
                if y not in seen:
                    if len(seen) >= _PARAHORIC_CAP:
                        raise ValueError("parahoric subgroup is not finite")
                    seen.add(y)
                    new.append(y)
        frontier = new
    members = sorted(seen, key=ctx.canonical_key)
    for x in members:
        if not ctx.in_affine_weyl(x):
            raise AssertionError("parahoric member outside W_aff")
    return tuple(members)


def parahoric_members(ctx: AffineContext, J: ParahoricType):
    """All elements of W~_J sorted by (length, word)."""
    return _parahoric_members(ctx.datum, J.gens)


@dataclass(frozen=True)
class CosetTable:
    kind: str
    representatives: tuple
    count: int
    theta_fixed: tuple = ()


def min_coset_reps(datum: BasedRootDatum, levi_simples) -> tuple:
    """(W_M \\ W)_min: finite elements sending every alpha in Delta_M to a
    positive root under w^{-1}."""
    W = weyl_elements(datum)
    ctx = affine_context(datum)
    out = []
    for x in W.elements():
        ok = True
        for i in levi_simples:
            # w^{-1} alpha_i = alpha_i o w
            cov = tuple(sum(datum.simple_roots[i][k] * W.mats[x][k][j]
                            for k in range(datum.rank)) for j in range(datum.rank))
            if ctx._is_negative_root(cov):
                ok = False
                break
        if ok:
            out.append(x)
    return tuple(sorted(out, key=lambda x: (W.length[x], W.word(x))))


def finite_projection(ctx: AffineContext, J: ParahoricType):
    """W-bar_J: the finite parts of W~_J."""
    return tuple(sorted({x.w for x in parahoric_members(ctx, J)}))


def _double_cosets(W: WeylGroup, levi_simples, right_group):
    """Partition of W into W_M (left) x right_group (right) double cosets."""
    left_gens = list(levi_simples)
    assigned = [None] * W.size
    cosets = []
    for x in W.elements():
        if assigned[x] is not None:
            continue
        cid = len(cosets)
        block = {x}
        frontier = [x]
        while frontier:
            new = []
            for y in frontier:
                for i in left_gens:
                    z = W.lmul[y][i]
                    if z not in block:
                        block.add(z)
                        new.append(z)
                for r in right_group:
                    z = W.mul(y, r)
                    if z not in block:
                        block.add(z)
                        new.append(z)
            frontier = new
        for y in block:
            assigned[y] = cid
        cosets.append(sorted(block, key=lambda y: (W.length[y], W.word(y))))
    return cosets, assigned


def pgj_representatives(datum: BasedRootDatum, levi_simples, J: ParahoricType) -> CosetTable:
    """One representative per W_M \\ W / W-bar_J double coset, each minimal in
    its W_M-coset (ShortLex tie-break)."""
    ctx = affine_context(datum)
    W = ctx.W
    wbar = finite_projection(ctx, J)
    mins = set(min_coset_reps(datum, levi_simples))
    cosets, _ = _double_cosets(W, levi_simples, wbar)
    reps = []
    for block in cosets:
        cands = [y for y in block if y in mins]
        if not cands:
            raise AssertionError("double coset without W_M-minimal element")
        reps.append(min(cands, key=lambda y: (W.length[y], W.word(y))))
    reps.sort(key=lambda y: (W.length[y], W.word(y)))
    return CosetTable("double", tuple(reps), len(cosets))


def theta_on_finite(datum: BasedRootDatum, theta: DiagramAutomorphism):
    """The induced map w -> theta w theta^{-1} on finite Weyl indices."""
    from .intlinalg import mat_mul
    W = weyl_elements(datum)
    tinv = theta.power(theta.order - 1)
    out = []
    for x in W.elements():
        out.append(W.index[mat_mul(theta.matrix, mat_mul(W.mats[x], tinv))])
    return tuple(out)


def theta_fixed_reps(datum: BasedRootDatum, levi_simples, J: ParahoricType,
                     theta: DiagramAutomorphism) -> CosetTable:
    """Representatives with theta-fixed ones exactly matching theta-stable
    double cosets; raises if some theta-stable coset has no theta-fixed
    W_M-minimal element."""
    perm = theta.simple_permutation
    if {perm[i] for i in levi_simples} != set(levi_simples):
        raise ValueError("Levi subset is not theta-stable")
    ctx = affine_context(datum)
    gen_perm = affine_generator_permutation(datum, theta)
    if {gen_perm[g] for g in J.gens} != set(J.gens):
        raise ValueError("parahoric is not theta-stable")
    W = ctx.W
    tmap = theta_on_finite(datum, theta)
    wbar = finite_projection(ctx, J)
    mins = set(min_coset_reps(datum, levi_simples))
    cosets, assigned = _double_cosets(W, levi_simples, wbar)
    reps = []
    fixed_flags = []
    for block in cosets:
        stable = assigned[tmap[block[0]]] == assigned[block[0]]
        cands = [y for y in block if y in mins]
        if stable:
            fixed_cands = [y for y in cands if tmap[y] == y]
            if not fixed_cands:
                raise AssertionError(
                    "theta-stable double coset with no theta-fixed minimal "
                    "representative (coset of %r)" % block[0])
            rep = min(fixed_cands, key=lambda y: (W.length[y], W.word(y)))
        else:
            rep = min(cands, key=lambda y: (W.length[y], W.word(y)))
        reps.append(rep)
        fixed_flags.append(stable)
    order = sorted(range(len(reps)), key=lambda k: (W.length[reps[k]], W.word(reps[k])))
    reps = tuple(reps[k] for k in order)
    fixed_flags = tuple(fixed_flags[k] for k in order)
    # the theta-fixed representatives must be exactly the stable-coset ones
    for rep, flag in zip(reps, fixed_flags):
        if (tmap[rep] == rep) != flag:
            raise AssertionError("theta-fixed representative in unstable coset")
    return CosetTable("double", reps, len(reps), fixed_flags)


def affine_generator_permutation(datum: BasedRootDatum, theta: DiagramAutomorphism):
    """theta's conjugation action on the simple affine generators."""
    ctx = affine_context(datum)
    out = []
    for g in range(ctx.ngens):
        x = ctx.gen_elems[g]
        img = ExtAffineWeylElement(
            theta.apply(x.trans),
            theta_on_finite(datum, theta)[x.w],
        )
        if img not in ctx.gen_elems:
            raise ValueError("theta does not permute the affine generators")
        out.append(ctx.gen_elems.index(img))
    return tuple(out)


def apply_theta_affine(ctx: AffineContext, theta: DiagramAutomorphism,
                       x: ExtAffineWeylElement):
    tmap = theta_on_finite(ctx.datum, theta)
    return ExtAffineWeylElement(theta.apply(x.trans), tmap[x.w])


def iwasawa_cell(ctx_or_datum, x: ExtAffineWeylElement, J: ParahoricType):
    """Canonical label of x W~_J: the minimal-length member, ShortLex
    tie-broken.  Two elements lie in the same U-cell model iff labels agree."""
    ctx = ctx_or_datum if isinstance(ctx_or_datum, AffineContext) \
        else affine_context(ctx_or_datum)
    best = None
    best_key = None
    for j in parahoric_members(ctx, J):
        y = ctx.mul(x, j)
        key = ctx.canonical_key(y)
        if best_key is None or key < best_key:
            best, best_key = y, key
    return best


def iwasawa_cell_match(ctx: AffineContext, nu, lam, tau, tau0, w, J: ParahoricType,
                       theta: DiagramAutomorphism):
    """Compare the cells of t_{-lam} tau0 w and t_nu tau theta(w) in W~/W~_J.

    Returns (cells_equal, theta_fixes_w, tau_equal, lam_is_minus_nu); the
    vanishing statement asserts cells_equal implies the three conditions.
    """
    tw = theta_on_finite(ctx.datum, theta)[w]
    x1 = ctx.mul(ctx.translation(tuple(-t for t in lam)),
                 ctx.from_finite(ctx.W.mul(tau0, w)))
    x2 = ctx.mul(ctx.translation(tuple(nu)),
                 ctx.from_finite(ctx.W.mul(tau, tw)))
    equal = iwasawa_cell(ctx, x1, J) == iwasawa_cell(ctx, x2, J)
    conds = (tw == w, tau == tau0, tuple(lam) == tuple(-t for t in nu))
    if equal and not all(conds):
        raise AssertionError(
            "cell equality without the vanishing trichotomy: "
            "nu=%r lam=%r tau=%r tau0=%r w=%r" % (nu, lam, tau, tau0, w))
    return (equal,) + conds


# alcove points -----------------------------------------------------------------


@dataclass(frozen=True)
class AlcovePoint:
    coords: tuple

    @staticmethod
    def from_rationals(vals):
        return AlcovePoint(tuple(Fraction(v) for v in vals))


def base_alcove_membership(datum: BasedRootDatum, point: AlcovePoint):
    """(in closure, in interior) of the base alcove."""
    ctx = affine_context(datum)
    closure = True
    interior = True
    for a in positive_roots(datum):
        v = dot(a, point.coords)
        if v < 0:
            closure = False
        if v <= 0:
            interior = False
    v = dot(ctx.hroot, point.coords)
    if v > 1:
        closure = False
    if v >= 1:
        interior = False
    return closure, interior


def fixes_facet(ctx: AffineContext, x: ExtAffineWeylElement, point: AlcovePoint) -> bool:
    """Whether the affine action of x fixes the given point."""
    return ctx.act_point(x, point.coords) == tuple(Fraction(t) for t in point.coords)


def fundamental_coweight_point(datum: BasedRootDatum, i: int, scale=1):
    """The rational point scale * omega_i^vee (pairing delta_ij with alpha_j)."""
    from .intlinalg import frac_solve
    n = datum.nsimple
    target = tuple(Fraction(scale) if j == i else Fraction(0) for j in range(n))
    rows = [list(datum.simple_roots[j]) for j in range(n)]
    if n < datum.rank:
        # pin the central directions to zero to make the solution unique
        from .intlinalg import int_kernel_basis
        roots_mat = tuple(tuple(r) for r in rows)
        for z in int_kernel_basis(roots_mat):
            rows.append(list(z))
            target = target + (Fraction(0),)
    sol = frac_solve(tuple(tuple(r) for r in rows), target)
    if sol is None:
        raise ValueError("no such coweight point")
    return AlcovePoint(tuple(sol))


def coset_table_to_text(ctx: AffineContext, table: CosetTable):
    """Line-delimited export: translation vector + finite-part word."""
    lines = []
    for k, rep in enumerate(table.representatives):
        if isinstance(rep, ExtAffineWeylElement):
            trans, w = rep.trans, rep.w
        else:
            trans, w = (0,) * ctx.datum.rank, rep
        word = ".".join(str(i + 1) for i in ctx.W.word(w))
        mark = ""
        if table.theta_fixed:
            mark = "\tfixed" if table.theta_fixed[k] else "\tmoved"
        lines.append("%s\t%s%s" % (",".join(map(str, trans)), word or "e", mark))
    return "\n".join(lines) + "\n"
