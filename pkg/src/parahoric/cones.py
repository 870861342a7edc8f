"""Harish-Chandra projections, acute/obtuse cone functions, the alternating
cone identity, chamber decompositions, compact-trace functionals, the twisted
fixed-point evaluator at torus points, and unitary-part checks.

A ConeContext packages one based system: possibly the folded (relative) data
of a BaseChangeContext, in which case all cone tests are evaluated on the
theta-fixed space after applying the norm.  Standard parabolics are named by
their Levi subset S of simple indices; Delta_P is the complement of S.
All arithmetic is exact (Fractions); cone membership is strict everywhere,
with the empty condition (P = G) counting as 1 even at the origin.
"""

from __future__ import annotations

import cmath
import functools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .basechange import BaseChangeContext
from .intlinalg import (
    dot,
    frac_solve,
    int_kernel_basis,
    mat_vec,
    smith_normal_form,
)
from .laurent import MLaurent
from .rootdata import BasedRootDatum, weyl_elements
from .spectral import UnramifiedCharacter, two_rho_pairing


class ConeContext:
    """Simple roots/coroots with the rational reflection action they span."""

    def __init__(self, dim, simple_roots, simple_coroots, label=""):
        self.dim = dim
        self.simple_roots = tuple(tuple(a) for a in simple_roots)
        self.simple_coroots = tuple(tuple(c) for c in simple_coroots)
        self.nsimple = len(self.simple_roots)
        self.label = label
        roots_mat = tuple(self.simple_roots)
        self.center_basis = tuple(int_kernel_basis(roots_mat)) if self.nsimple \
            else tuple(int_kernel_basis(((0,) * dim,)))
        self._wm_cache = {}
        self._that_mat = None

    @staticmethod
    def from_datum(datum: BasedRootDatum):
        return ConeContext(datum.rank, datum.simple_roots, datum.simple_coroots,
                           datum.label)

    @staticmethod
    def from_relative(bc: BaseChangeContext):
        rel = bc.relative
        return ConeContext(rel.rank, rel.restricted_simples, rel.folded_coroots,
                           bc.datum.label + "-folded")

    def reflection(self, i):
        a = self.simple_roots[i]
        c = self.simple_coroots[i]
        norm = Fraction(2, dot(a, c))
        return tuple(
            tuple((1 if k == j else 0) - norm * a[j] * c[k] for j in range(self.dim))
            for k in range(self.dim)
        )

    def levi_group(self, levi):
        """All matrices of the parabolic subgroup W_S (cached)."""
        key = tuple(sorted(levi))
        out = self._wm_cache.get(key)
        if out is None:
            gens = [self.reflection(i) for i in key]
            ident = tuple(tuple(Fraction(1) if i == j else Fraction(0)
                                for j in range(self.dim)) for i in range(self.dim))
            seen = {ident}
            frontier = [ident]
            from .intlinalg import mat_mul
            while frontier:
                new = []
                for m in frontier:
                    for g in gens:
                        y = mat_mul(m, g)
                        y = tuple(tuple(Fraction(t) for t in row) for row in y)
                        if y not in seen:
                            seen.add(y)
                            new.append(y)
                frontier = new
            out = tuple(sorted(seen))
            self._wm_cache[key] = out
        return out


def h_map(ctx: ConeContext, lam, levi):
    """Projection onto the Levi direction space: the W_M-average of lam."""
    key = ("proj", tuple(sorted(levi)))
    proj = ctx._wm_cache.get(key)
    if proj is None:
        group = ctx.levi_group(levi)
        n = len(group)
        proj = tuple(
            tuple(sum(m[i][j] for m in group) / n for j in range(ctx.dim))
            for i in range(ctx.dim)
        )
        ctx._wm_cache[key] = proj
    return tuple(mat_vec(proj, lam))


def tau(ctx: ConeContext, levi, H):
    """Acute cone: alpha(H) > 0 for every simple alpha outside the Levi."""
    return 1 if all(dot(ctx.simple_roots[j], H) > 0
                    for j in range(ctx.nsimple) if j not in levi) else 0


def _coroot_coordinates(ctx: ConeContext, H):
    """Solve H = sum c_j alpha_j^ modulo the central directions."""
    if ctx._that_mat is None:
        cols = [list(c) for c in ctx.simple_coroots] + \
            [list(z) for z in ctx.center_basis]
        if not cols:
            ctx._that_mat = ()
        else:
            m = tuple(tuple(Fraction(cols[j][i]) for j in range(len(cols)))
                      for i in range(ctx.dim))
            # precompute solution rows on the standard basis
            rows = []
            for k in range(ctx.dim):
                e = tuple(1 if i == k else 0 for i in range(ctx.dim))
                sol = frac_solve(m, e)
                if sol is None:
                    raise ValueError("coroots + center do not span the space")
                rows.append(sol[: ctx.nsimple])
            ctx._that_mat = tuple(rows)
    if not ctx._that_mat:
        return ()
    rows = ctx._that_mat
    return tuple(sum(rows[k][j] * H[k] for k in range(ctx.dim))
                 for j in range(ctx.nsimple))


def tau_hat(ctx: ConeContext, levi, H):
    """Obtuse cone: every coroot coordinate outside the Levi is positive."""
    c = _coroot_coordinates(ctx, H)
    return 1 if all(c[j] > 0 for j in range(ctx.nsimple) if j not in levi) else 0


def arthur_sum(ctx: ConeContext, levi_q, H):
    """sum over parabolics P containing Q of (-1)^{#Delta_P}
    tau_hat^G_P(H) tau^P_Q(H); equals 1 exactly when Q = G.

    The natural domain of the summands is the Levi direction space of Q (the
    source always feeds them values of the Levi Harish-Chandra map), so a
    general input is first projected there by W_{M_Q}-averaging."""
    levi_q = tuple(sorted(levi_q))
    H = h_map(ctx, H, levi_q)
    rest = [j for j in range(ctx.nsimple) if j not in levi_q]
    total = 0
    for mask in range(1 << len(rest)):
        extra = [rest[k] for k in range(len(rest)) if mask >> k & 1]
        levi_p = tuple(sorted(list(levi_q) + extra))
        ndp = ctx.nsimple - len(levi_p)
        th = tau_hat(ctx, levi_p, H)
        if not th:
            continue
        tq = 1 if all(dot(ctx.simple_roots[j], H) > 0 for j in extra) else 0
        if not tq:
            continue
        total += (-1) ** ndp
    return total


class ConeCalculus:
    """Cone functions composed with the norm of a base-change context."""

    def __init__(self, bc: BaseChangeContext):
        self.bc = bc
        self.fold = ConeContext.from_relative(bc)
        self.datum = bc.datum
        self.W = weyl_elements(bc.datum)

    def theta_stable_levis(self):
        perm = self.bc.theta.simple_permutation
        # folded simple index o corresponds to a theta-orbit of source simples
        return list(range(self.fold.nsimple))

    def chi_N(self, lam, levi):
        H = h_map(self.fold, self.bc.norm_fixed(lam), levi)
        return tau(self.fold, levi, H)

    def chi_hat_N(self, lam, levi):
        H = h_map(self.fold, self.bc.norm_fixed(lam), levi)
        return tau_hat(self.fold, levi, H)

    def eigenvalue_criterion(self, lam, levi):
        """Direct membership test: strict contraction on every root direction
        outside the Levi, i.e. <alpha, N lam> > 0 for alpha in Delta_P."""
        nl = self.bc.norm_cochar(lam)
        orbit_of = _orbit_index_map(self.bc)
        ok = True
        for j, a in enumerate(self.datum.simple_roots):
            if orbit_of[j] in levi:
                continue
            if dot(a, nl) <= 0:
                ok = False
        return 1 if ok else 0


def levi_singular_lattice(calc: ConeCalculus, levi):
    """Z-basis of the lattice vectors whose norm kills every Levi root
    direction (the locus where the compactness equivalence is stated)."""
    bc = calc.bc
    orbit_of = _orbit_index_map(bc)
    rows = []
    for j, a in enumerate(bc.datum.simple_roots):
        if orbit_of[j] in levi:
            rows.append(tuple(dot(a, col) for col in zip(*bc.norm_matrix)))
    if not rows:
        n = bc.datum.rank
        return [tuple(1 if i == k else 0 for i in range(n)) for k in range(n)]
    return int_kernel_basis(tuple(rows))


@functools.lru_cache(maxsize=None)
def _orbit_index_map_cached(datum, perm):
    orbits = []
    seen = set()
    for i in range(datum.nsimple):
        if i in seen:
            continue
        orb = [i]
        seen.add(i)
        j = perm[i]
        while j != i:
            orb.append(j)
            seen.add(j)
            j = perm[j]
        orbits.append(tuple(orb))
    out = {}
    for k, orb in enumerate(orbits):
        for i in orb:
            out[i] = k
    return out


def _orbit_index_map(bc: BaseChangeContext):
    return _orbit_index_map_cached(bc.datum, bc.theta.simple_permutation)


# chamber decomposition ---------------------------------------------------------


@dataclass(frozen=True)
class Chamber:
    index: int
    sign_vector: tuple
    representative: tuple
    rays: tuple


def _primitive(cov):
    g = 0
    for t in cov:
        g = math.gcd(g, t.numerator if isinstance(t, Fraction) else t)
    den = 1
    for t in cov:
        if isinstance(t, Fraction):
            den = den * t.denominator // math.gcd(den, t.denominator)
    ints = [int(t * den) for t in cov]
    g = 0
    for t in ints:
        g = math.gcd(g, abs(t))
    if g == 0:
        return None
    ints = [t // g for t in ints]
    for t in ints:
        if t:
            if t < 0:
                ints = [-u for u in ints]
            break
    return tuple(ints)


def chamber_hyperplanes(calc: ConeCalculus):
    """Primitive covectors of: all source root hyperplanes, and every
    W-conjugate of every obtuse-cone wall pulled back through the norm and
    the Levi projection."""
    bc = calc.bc
    datum = bc.datum
    from .rootdata import positive_roots
    covs = set()
    for a in positive_roots(datum):
        p = _primitive(tuple(Fraction(t) for t in a))
        if p:
            covs.add(p)
    W = calc.W
    nf = calc.fold.nsimple
    basis = [tuple(1 if i == k else 0 for i in range(datum.rank))
             for k in range(datum.rank)]
    for levi_size in range(nf):
        for levi in _subsets(range(nf), levi_size):
            for j in range(nf):
                if j in levi:
                    continue
                for w in W.elements():
                    vals = []
                    for e in basis:
                        lam = W.act(w, e)
                        H = h_map(calc.fold, bc.norm_fixed(lam), levi)
                        vals.append(_coroot_coordinates(calc.fold, H)[j])
                    p = _primitive(tuple(vals))
                    if p:
                        covs.add(p)
    return sorted(covs)


def _subsets(items, size):
    items = list(items)
    if size == 0:
        yield ()
        return
    for k in range(len(items)):
        for rest in _subsets(items[k + 1:], size - 1):
            yield (items[k],) + rest


def _primitive_ray(ray):
    x, y = ray
    g = math.gcd(abs(int(x)), abs(int(y)))
    return (int(x) // g, int(y) // g)


def _ray_sort_key(ray):
    """Exact angular order on primitive integer rays, from the +x axis."""
    x, y = ray
    if y == 0:
        return (0, Fraction(0)) if x > 0 else (2, Fraction(0))
    if y > 0:
        return (1, Fraction(-x, y))
    return (3, Fraction(-x, y))


def chamber_decomposition(calc: ConeCalculus, samples=0, seed=0):
    """Chambers of the source space minus the hyperplane collection.

    Exact for rank <= 2 (angular sweep); rank 3 uses a seeded sampling
    certificate (chambers discovered through sign vectors).
    """
    covs = chamber_hyperplanes(calc)
    dim = calc.datum.rank

    def signs(point):
        return tuple(1 if dot(c, point) > 0 else (-1 if dot(c, point) < 0 else 0)
                     for c in covs)

    if dim == 1:
        reps = [(Fraction(1),), (Fraction(-1),)]
        return [Chamber(i, signs(p), p, (p,)) for i, p in enumerate(reps)], covs
    if dim == 2:
        rays = set()
        for a, b in covs:
            rays.add(_primitive_ray((b, -a)))
            rays.add(_primitive_ray((-b, a)))
        rays = sorted(rays, key=_ray_sort_key)
        if not rays:
            p = (Fraction(1), Fraction(0))
            return [Chamber(0, signs(p), p, ())], covs
        chambers = []
        n = len(rays)
        for k in range(n):
            r1, r2 = rays[k], rays[(k + 1) % n]
            rep = (r1[0] + r2[0], r1[1] + r2[1])
            sv = signs(rep)
            if 0 in sv:
                raise AssertionError("chamber representative lies on a wall")
            chambers.append(Chamber(len(chambers), sv, rep, (r1, r2)))
        seen = {}
        for ch in chambers:
            if ch.sign_vector in seen:
                raise AssertionError("duplicate chamber sign vector")
            seen[ch.sign_vector] = ch
        return chambers, covs
    # sampled certificate
    rng = random.Random(seed)
    found = {}
    for _ in range(max(samples, 2000)):
        p = tuple(Fraction(rng.randint(-40, 40)) for _ in range(dim))
        sv = signs(p)
        if 0 in sv:
            continue
        if sv not in found:
            found[sv] = Chamber(len(found), sv, p, ())
    return list(found.values()), covs


def chamber_point(chamber: Chamber, rng, dim):
    """A random rational point in the (open) chamber: positive combination of
    its boundary rays, or a jitter of the representative."""
    if chamber.rays and len(chamber.rays) == 2:
        a = Fraction(rng.randint(1, 60), rng.randint(1, 7))
        b = Fraction(rng.randint(1, 60), rng.randint(1, 7))
        r1, r2 = chamber.rays
        return tuple(a * x + b * y for x, y in zip(r1, r2))
    return tuple(t * Fraction(rng.randint(1, 50)) for t in chamber.representative)


def chamber_constancy_check(calc: ConeCalculus, chamber: Chamber, covs,
                            samples=100, seed=0):
    """chi_hat_N(w .) is constant on the chamber for every parabolic and
    every w; returns (ok, witness)."""
    rng = random.Random(seed)
    W = calc.W
    nf = calc.fold.nsimple
    levis = [levi for size in range(nf + 1) for levi in _subsets(range(nf), size)]
    base = None
    pts = [chamber.representative]
    for _ in range(samples - 1):
        p = chamber_point(chamber, rng, calc.datum.rank)
        sv = tuple(1 if dot(c, p) > 0 else (-1 if dot(c, p) < 0 else 0)
                   for c in covs)
        if sv != chamber.sign_vector:
            continue
        pts.append(p)
    for p in pts:
        lamp = tuple(p)
        pattern = tuple(
            tuple(calc.chi_hat_N(W.act(w, _integerize(lamp)), levi)
                  for w in W.elements())
            for levi in levis
        )
        if base is None:
            base = pattern
        elif pattern != base:
            return False, (chamber.index, lamp)
    return True, None


def _integerize(p):
    den = 1
    for t in p:
        if isinstance(t, Fraction):
            den = den * t.denominator // math.gcd(den, t.denominator)
    return tuple(int(t * den) for t in p)


def wprime_set(calc: ConeCalculus, levi, chamber: Chamber, covs,
               checks=20, seed=0):
    """W'(P): the Weyl elements w with chi_hat_N(w mu) = 1 for mu in the
    chamber; verified independent of the sample point."""
    W = calc.W
    rng = random.Random(seed)
    mu = _integerize(chamber.representative)
    base = frozenset(w for w in W.elements() if calc.chi_hat_N(W.act(w, mu), levi))
    for _ in range(checks):
        p = chamber_point(chamber, rng, calc.datum.rank)
        sv = tuple(1 if dot(c, p) > 0 else (-1 if dot(c, p) < 0 else 0)
                   for c in covs)
        if sv != chamber.sign_vector:
            continue
        mu2 = _integerize(p)
        other = frozenset(w for w in W.elements()
                          if calc.chi_hat_N(W.act(w, mu2), levi))
        if other != base:
            raise AssertionError("W'(P) depends on the sample point in chamber %d"
                                 % chamber.index)
    return base


def chamber_table_csv(calc: ConeCalculus, chambers, covs):
    """CSV export: chamber id, representative, sign vector, W'(P) sets."""
    import itertools as _it
    nf = calc.fold.nsimple
    levis = [levi for size in range(nf + 1)
             for levi in _it.combinations(range(nf), size)]
    head = ["chamber", "representative", "signs"]
    head += ["wprime_levi=%s" % ("".join(map(str, levi)) or "B") for levi in levis]
    lines = [",".join(head)]
    for ch in chambers:
        row = [str(ch.index),
               " ".join(str(t) for t in ch.representative),
               "".join("+" if s > 0 else "-" for s in ch.sign_vector)]
        for levi in levis:
            ws = wprime_set(calc, levi, ch, covs, checks=0)
            row.append(" ".join(str(w) for w in sorted(ws)))
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class CompactTraceFunctional:
    """Orbit functional mu -> sum over the orbit of chi_hat-weighted twisted
    character values."""

    calc: ConeCalculus
    levi: tuple
    xi: UnramifiedCharacter
    eta: int  # finite Weyl index

    def evaluate(self, mu):
        from .rootdata import weyl_orbit
        W = self.calc.W
        eta_inv = W.inv[self.eta]
        n = self.xi.nvars
        total = MLaurent.zero(n)
        for lam in sorted(weyl_orbit(self.calc.datum, mu)):
            if not self.calc.chi_hat_N(lam, self.levi):
                continue
            # (^eta xi)(lam) = xi(eta^{-1} lam)
            total = total + self.xi.value(W.act(eta_inv, lam))
        return total


def compact_trace_scalar(calc: ConeCalculus, levi, xi: UnramifiedCharacter,
                         phi, eta=0):
    """The chi_hat-weighted scalar of a central element: the sum over the
    support of its invariant-ring preimage of chi_hat_N(nu) (^eta xi)(nu)
    coeff(nu).  For an orbit sum this is the orbit functional."""
    W = calc.W
    eta_inv = W.inv[eta]
    n = xi.nvars
    total = MLaurent.zero(n)
    for nu, coeff in sorted(phi.fn.items()):
        if not calc.chi_hat_N(nu, levi):
            continue
        cl = MLaurent(n, {(e,) + (0,) * (n - 1): c for e, c in coeff.c.items()})
        total = total + cl * xi.value(W.act(eta_inv, nu))
    return total


# twisted fixed-point evaluator ---------------------------------------------------


def theta_regular(bc: BaseChangeContext, nu):
    from .rootdata import positive_roots
    nl = bc.norm_cochar(nu)
    return all(dot(a, nl) != 0 for a in positive_roots(bc.datum))


def fixed_point_indices(bc: BaseChangeContext):
    """Fixed points of the twisted action on the flag-variety model: the
    Weyl elements with theta(w) = w, found by brute force."""
    from .affine import theta_on_finite
    tmap = theta_on_finite(bc.datum, bc.theta)
    W = weyl_elements(bc.datum)
    return tuple(w for w in W.elements() if tmap[w] == w)


def atiyah_bott_trace(bc: BaseChangeContext, xi: UnramifiedCharacter, nu):
    """Twisted character value of the unramified principal series at the
    torus point of nu: a sum over the theta-fixed Weyl group of monomial
    numerators divided by explicit q-power denominators.

    Requires nu theta-regular: <alpha, N nu> != 0 for every root."""
    if not theta_regular(bc, nu):
        raise ValueError("nu is not theta-regular; denominators undetermined")
    if xi.mode != "symbolic":
        raise ValueError("symbolic characters only")
    datum = bc.datum
    W = weyl_elements(datum)
    fixed = fixed_point_indices(bc)
    if len(fixed) != len(bc.relative.relative_weyl):
        raise AssertionError("fixed-point count differs from |W^theta|")
    from .rootdata import positive_roots
    n = xi.nvars
    nl = bc.norm_cochar(nu)
    total = MLaurent.zero(n)
    for w in fixed:
        wi = W.inv[w]
        arg = W.act(wi, nu)
        # numerator (delta^(1/2) xi)(w^{-1} nu) = q^{-<rho, w^{-1} nu>} xi(...)
        shift = -two_rho_pairing(datum, arg)
        num = xi.value(arg) * MLaurent.monomial(n, (shift,) + (0,) * (n - 1))
        # denominator: product over theta-orbits of negative-at-w roots
        negs = [W.act_covector(w, tuple(-t for t in b)) for b in positive_roots(datum)]
        seen = set()
        dshift = 0
        for g in negs:
            if g in seen:
                continue
            orb = {g}
            h = bc.theta.apply_covector(g)
            while h not in orb:
                orb.add(h)
                h = bc.theta.apply_covector(h)
            seen |= orb
            # all orbit members must be negative-at-w (theta(w) = w)
            for t in orb:
                if t not in negs:
                    raise AssertionError("theta does not permute the tangent roots")
            pair = dot(g, nl)
            dshift += max(0, -pair)
        total = total + num * MLaurent.monomial(n, (-2 * dshift,) + (0,) * (n - 1))
    return total


def denominator_one_count(bc: BaseChangeContext, nu):
    """How many fixed points contribute denominator exactly 1."""
    datum = bc.datum
    W = weyl_elements(datum)
    from .rootdata import positive_roots
    nl = bc.norm_cochar(nu)
    count = 0
    for w in fixed_point_indices(bc):
        negs = [W.act_covector(w, tuple(-t for t in b)) for b in positive_roots(datum)]
        seen = set()
        dshift = 0
        for g in negs:
            if g in seen:
                continue
            orb = {g}
            h = bc.theta.apply_covector(g)
            while h not in orb:
                orb.add(h)
                h = bc.theta.apply_covector(h)
            seen |= orb
            dshift += max(0, -dot(g, nl))
        if dshift == 0:
            count += 1
    return count


# unitary part ----------------------------------------------------------------------


def theta_fixed_numeric_character(bc: BaseChangeContext, rng, qval=9.0):
    """A random numeric character fixed by theta, built on the coinvariant
    lattice: free factors get a random modulus and phase, torsion factors a
    random root of unity."""
    n = bc.datum.rank
    ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    m = tuple(tuple(bc.theta.matrix[i][j] - ident[i][j] for j in range(n))
              for i in range(n))
    u, d, v = smith_normal_form(m)
    divisors = [d[i][i] if i < n else 0 for i in range(n)]
    vals = []
    for di in divisors:
        if di == 0:
            mod = math.exp(rng.uniform(-1.0, 1.0))
            phase = rng.uniform(0.0, 2.0 * math.pi)
            vals.append(mod * cmath.exp(1j * phase))
        elif di == 1:
            vals.append(1.0 + 0j)
        else:
            k = rng.randrange(di)
            vals.append(cmath.exp(2j * math.pi * k / di))
    coords = []
    for i in range(n):
        e = tuple(1 if j == i else 0 for j in range(n))
        cls = mat_vec(u, e)
        val = complex(1)
        for c, x in zip(cls, vals):
            val *= x ** c
        coords.append(val)
    return UnramifiedCharacter(tuple(coords), "numeric", math.sqrt(qval))


def norm_kernel_basis(bc: BaseChangeContext):
    return int_kernel_basis(bc.norm_matrix)


def unitary_part_invariance(bc: BaseChangeContext, xi: UnramifiedCharacter, nu,
                            tol=1e-10):
    """For theta-fixed numeric xi and N nu = 0: |xi(nu)| = 1 within tol."""
    if xi.mode != "numeric":
        raise ValueError("numeric characters only")
    if any(bc.norm_cochar(nu)):
        raise ValueError("nu must have norm zero")
    val = xi.value(nu)
    return abs(abs(val) - 1.0) <= tol
