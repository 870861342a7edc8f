"""Based root data with a diagram automorphism, finite Weyl groups, folding.

A datum fixes an integral basis of the cocharacter lattice once and for all;
roots are stored as integer covectors and coroots as integer vectors, so the
canonical pairing is a literal dot product and nothing downstream ever has to
guess a coordinate convention.

Supported Cartan types (rank <= 3): A1 A2 A3 B2 C2 B3 C3 G2, each over the
coroot lattice ("-sc", default) or the coweight lattice ("-ad"), plus the
extended lattices GL2, GL3.  SL2 and PGL2 are aliases for A1-sc and A1-ad.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .intlinalg import (
    covec_mat,
    dot,
    frac_inv,
    identity_matrix,
    int_kernel_basis,
    int_solve,
    mat_mul,
    mat_vec,
    vec_add,
)

# Cartan matrices, C[i][j] = <alpha_i, alpha_j_coroot>
_CARTAN = {
    "A1": ((2,),),
    "A2": ((2, -1), (-1, 2)),
    "A3": ((2, -1, 0), (-1, 2, -1), (0, -1, 2)),
    "B2": ((2, -2), (-1, 2)),
    "C2": ((2, -1), (-2, 2)),
    "B3": ((2, -1, 0), (-1, 2, -2), (0, -1, 2)),
    "C3": ((2, -1, 0), (-1, 2, -1), (0, -2, 2)),
    "G2": ((2, -1), (-3, 2)),
}

_WEYL_CAP = 1024


@dataclass(frozen=True)
class BasedRootDatum:
    """Root datum in a fixed lattice basis; immutable and hashable."""

    label: str
    rank: int
    simple_roots: tuple      # covectors
    simple_coroots: tuple    # vectors
    cartan_label: str

    def __post_init__(self):
        n = len(self.simple_roots)
        if len(self.simple_coroots) != n:
            raise ValueError("root/coroot count mismatch")
        want = _CARTAN[self.cartan_label]
        for i, a in enumerate(self.simple_roots):
            for j, bv in enumerate(self.simple_coroots):
                p = dot(a, bv)
                if i == j and p != 2:
                    raise ValueError("<alpha_%d, alpha_%d^> = %d != 2" % (i, i, p))
                if p != want[i][j]:
                    raise ValueError("Cartan entry (%d,%d) is %d, expected %d"
                                     % (i, j, p, want[i][j]))

    @property
    def nsimple(self):
        return len(self.simple_roots)

    def pairing(self, root, vec):
        return dot(root, vec)

    def is_dominant(self, vec):
        return all(dot(a, vec) >= 0 for a in self.simple_roots)

    def reflection_matrix(self, i):
        """Matrix of s_i acting on the lattice: x -> x - <alpha_i, x> alpha_i^."""
        a = self.simple_roots[i]
        av = self.simple_coroots[i]
        n = self.rank
        return tuple(
            tuple((1 if k == j else 0) - a[j] * av[k] for j in range(n))
            for k in range(n)
        )


def build_root_datum(type_tag: str) -> BasedRootDatum:
    """Construct a supported datum from a type tag like 'C2', 'A2-ad', 'GL3'."""
    tag = type_tag.strip()
    alias = {"SL2": "A1-sc", "PGL2": "A1-ad"}
    tag = alias.get(tag, tag)
    if tag.upper().startswith("GL"):
        try:
            n = int(tag[2:])
        except ValueError:
            raise ValueError("unsupported type tag %r" % type_tag) from None
        if n not in (2, 3):
            raise ValueError("unsupported type tag %r (GL rank must be 2 or 3)" % type_tag)
        roots = []
        coroots = []
        for i in range(n - 1):
            v = [0] * n
            v[i], v[i + 1] = 1, -1
            roots.append(tuple(v))
            coroots.append(tuple(v))
        return BasedRootDatum("GL%d" % n, n, tuple(roots), tuple(coroots),
                              "A%d" % (n - 1))
    if "-" in tag:
        base, variant = tag.split("-", 1)
    else:
        base, variant = tag, "sc"
    base = base.upper()
    if base not in _CARTAN or variant not in ("sc", "ad"):
        raise ValueError("unsupported type tag %r" % type_tag)
    cartan = _CARTAN[base]
    n = len(cartan)
    if variant == "sc":
        # basis = simple coroots; alpha_i covector is row i of the Cartan matrix
        roots = tuple(tuple(cartan[i][j] for j in range(n)) for i in range(n))
        coroots = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    else:
        # basis = fundamental coweights; alpha_j^ is column j of the Cartan matrix
        roots = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        coroots = tuple(tuple(cartan[i][j] for i in range(n)) for j in range(n))
    label = base if variant == "sc" else "%s-%s" % (base, variant)
    return BasedRootDatum(label, n, roots, coroots, base)


class WeylGroup:
    """Finite Weyl group of a datum, fully enumerated.

    Elements are indexed 0..N-1; index 0 is the identity.  For each element we
    keep its lattice matrix, its length, a ShortLex-minimal reduced word, and
    multiplication tables by the simple generators on both sides.
    """

    def __init__(self, datum: BasedRootDatum):
        self.datum = datum
        n = datum.nsimple
        gens = [datum.reflection_matrix(i) for i in range(n)]
        ident = identity_matrix(datum.rank)
        mats = [ident]
        index = {ident: 0}
        length = [0]
        rmul = []
        frontier = [0]
        while frontier:
            new_frontier = []
            for x in frontier:
                while len(rmul) <= x:
                    rmul.append([None] * n)
                for i in range(n):
                    y = mat_mul(mats[x], gens[i])
                    j = index.get(y)
                    if j is None:
                        j = len(mats)
                        if j > _WEYL_CAP:
                            raise ValueError("reflection group is not finite "
                                             "(cap %d exceeded)" % _WEYL_CAP)
                        mats.append(y)
                        index[y] = j
                        length.append(length[x] + 1)
                        new_frontier.append(j)
                    rmul[x][i] = j
            frontier = new_frontier
        while len(rmul) < len(mats):
            rmul.append([None] * n)
        N = len(mats)
        for x in range(N):
            for i in range(n):
                if rmul[x][i] is None:
                    rmul[x][i] = index[mat_mul(mats[x], gens[i])]
        # lmul[x][i] = s_i * x
        lmul = [[index[mat_mul(gens[i], mats[x])] for i in range(n)] for x in range(N)]

        self.n = n
        self.mats = mats
        self.index = index
        self.length = length
        self.rmul = rmul
        self.lmul = lmul
        self.size = N
        self.inv = [self._inverse(x) for x in range(N)]
        self._words = [None] * N
        self._words[0] = ()

    def _inverse(self, x):
        w = []
        y = x
        while self.length[y] > 0:
            for i in range(self.n):
                if self.length[self.rmul[y][i]] < self.length[y]:
                    w.append(i)
                    y = self.rmul[y][i]
                    break
        # x * s_{i1} ... s_{ik} = e, so x^{-1} = s_{i1} ... s_{ik}
        z = 0
        for i in w:
            z = self.rmul[z][i]
        return z

    def word(self, x):
        """ShortLex-minimal reduced word of element x."""
        if self._words[x] is None:
            w = []
            y = x
            while self.length[y] > 0:
                for i in range(self.n):
                    if self.length[self.lmul[y][i]] < self.length[y]:
                        w.append(i)
                        y = self.lmul[y][i]
                        break
            self._words[x] = tuple(w)
        return self._words[x]

    def act(self, x, vec):
        return mat_vec(self.mats[x], vec)

    def act_covector(self, x, cov):
        """w(alpha) = alpha o w^{-1}."""
        return covec_mat(cov, self.mats[self.inv[x]])

    def mul(self, x, y):
        z = x
        for i in self.word(y):
            z = self.rmul[z][i]
        return z

    def longest(self):
        return max(range(self.size), key=lambda x: self.length[x])

    def elements(self):
        return range(self.size)


@functools.lru_cache(maxsize=None)
def weyl_elements(datum: BasedRootDatum) -> WeylGroup:
    """The complete finite Weyl group with reduced words and lengths."""
    return WeylGroup(datum)


@functools.lru_cache(maxsize=None)
def positive_roots(datum: BasedRootDatum):
    """All positive roots as covectors, in height order."""
    W = weyl_elements(datum)
    seen = set()
    for x in W.elements():
        for a in datum.simple_roots:
            seen.add(W.act_covector(x, a))
    pos = []
    for cov in seen:
        c = root_in_simple_basis(datum, cov)
        if c is not None and all(t >= 0 for t in c):
            pos.append((sum(c), cov))
    pos.sort()
    return tuple(cov for _, cov in pos)


@functools.lru_cache(maxsize=None)
def _simple_expansion_matrix(datum: BasedRootDatum):
    # row vector of pairings <beta, alpha_j^> equals c . Cartan, solve for c
    n = datum.nsimple
    cmat = tuple(tuple(dot(datum.simple_roots[i], datum.simple_coroots[j])
                       for j in range(n)) for i in range(n))
    return frac_inv(cmat)


def root_in_simple_basis(datum: BasedRootDatum, cov):
    """Coefficients of a root covector in the simple-root basis (Fractions),
    or None if the covector is not in their span."""
    n = datum.nsimple
    pair = tuple(dot(cov, datum.simple_coroots[j]) for j in range(n))
    cinv = _simple_expansion_matrix(datum)
    c = tuple(sum(Fraction(pair[i]) * cinv[i][j] for i in range(n)) for j in range(n))
    # verify (the span check matters for GL-style lattices)
    recon = [Fraction(0)] * datum.rank
    for coef, a in zip(c, datum.simple_roots):
        recon = [r + coef * t for r, t in zip(recon, a)]
    if tuple(recon) != tuple(Fraction(x) for x in cov):
        return None
    return c


@functools.lru_cache(maxsize=None)
def highest_root(datum: BasedRootDatum):
    """The highest root: the dominant root of maximal height."""
    best = None
    for cov in positive_roots(datum):
        if all(dot(cov, bv) >= 0 for bv in datum.simple_coroots):
            h = sum(root_in_simple_basis(datum, cov))
            if best is None or h > best[0]:
                best = (h, cov)
    return best[1]


def weyl_order_by_degrees(datum: BasedRootDatum) -> int:
    """|W| via the product of degrees, read off from the height partition of
    the positive roots.  Independent of the group enumeration."""
    heights = {}
    for cov in positive_roots(datum):
        h = int(sum(root_in_simple_basis(datum, cov)))
        heights[h] = heights.get(h, 0) + 1
    if not heights:
        return 1
    # exponents are the conjugate of the partition (root count per height)
    maxcnt = max(heights.values())
    exps = [sum(1 for cnt in heights.values() if cnt >= k)
            for k in range(1, maxcnt + 1)]
    order = 1
    for m in exps:
        order *= m + 1
    return order


def weyl_orbit(datum: BasedRootDatum, lam) -> frozenset:
    """The full W-orbit of a lattice vector; contains exactly one dominant
    member (checked)."""
    lam = tuple(lam)
    seen = {lam}
    frontier = [lam]
    n = datum.nsimple
    while frontier:
        new = []
        for v in frontier:
            for i in range(n):
                p = dot(datum.simple_roots[i], v)
                w = tuple(a - p * b for a, b in zip(v, datum.simple_coroots[i]))
                if w not in seen:
                    seen.add(w)
                    new.append(w)
        frontier = new
    dominant = [v for v in seen if datum.is_dominant(v)]
    if len(dominant) != 1:
        raise AssertionError("orbit of %r has %d dominant members" % (lam, len(dominant)))
    return frozenset(seen)


def dominant_representative(datum: BasedRootDatum, lam):
    lam = tuple(lam)
    while not datum.is_dominant(lam):
        for i, a in enumerate(datum.simple_roots):
            p = dot(a, lam)
            if p < 0:
                lam = tuple(x - p * b for x, b in zip(lam, datum.simple_coroots[i]))
                break
    return lam


@dataclass(frozen=True)
class DiagramAutomorphism:
    """Lattice automorphism permuting the simple (co)roots."""

    datum: BasedRootDatum
    matrix: tuple
    order: int
    extension_degree: int

    def __post_init__(self):
        d = self.datum
        # theta permutes the simple coroots
        perm = []
        for bv in d.simple_coroots:
            img = mat_vec(self.matrix, bv)
            if img not in d.simple_coroots:
                raise ValueError("automorphism does not permute simple coroots")
            perm.append(d.simple_coroots.index(img))
        if sorted(perm) != list(range(d.nsimple)):
            raise ValueError("automorphism is not a permutation of simple coroots")
        # dual action permutes the simple roots by the inverse permutation
        perm_inv = [perm.index(i) for i in range(d.nsimple)]
        for i, a in enumerate(d.simple_roots):
            if covec_mat(a, self.matrix) != d.simple_roots[perm_inv[i]]:
                raise ValueError("automorphism does not permute simple roots dually")
        m = identity_matrix(d.rank)
        for _ in range(self.order):
            m = mat_mul(self.matrix, m)
        if m != identity_matrix(d.rank):
            raise ValueError("theta^order != identity")
        if self.extension_degree % self.order:
            raise ValueError("order must divide the extension degree")
        object.__setattr__(self, "_perm", tuple(perm))

    @property
    def simple_permutation(self):
        return self._perm

    def apply(self, vec):
        return mat_vec(self.matrix, vec)

    def apply_covector(self, cov):
        """theta(alpha) = alpha o theta^{-1}, the dual action on covectors."""
        return covec_mat(cov, self.power(self.order - 1))

    def power(self, k):
        m = identity_matrix(len(self.matrix))
        for _ in range(k % self.order):
            m = mat_mul(self.matrix, m)
        return m


def identity_automorphism(datum: BasedRootDatum, r: int = 1) -> DiagramAutomorphism:
    return DiagramAutomorphism(datum, identity_matrix(datum.rank), 1, r)


def flip_automorphism(datum: BasedRootDatum, r: int | None = None) -> DiagramAutomorphism:
    """The order-2 diagram flip of a type-A datum (identity on A1)."""
    if datum.cartan_label not in ("A1", "A2", "A3"):
        raise ValueError("flip is only defined for type A data")
    n = datum.nsimple
    if datum.label.startswith("GL"):
        size = datum.rank
        mat = tuple(tuple(-1 if j == size - 1 - i else 0 for j in range(size))
                    for i in range(size))
    else:
        mat = tuple(tuple(1 if j == n - 1 - i else 0 for j in range(n))
                    for i in range(n))
    order = 1 if n == 1 else 2
    if datum.label.startswith("GL"):
        order = 2
    if r is None:
        r = order
    return DiagramAutomorphism(datum, mat, order, r)


def automorphism_from_permutation(datum: BasedRootDatum, perm, r: int) -> DiagramAutomorphism:
    """Automorphism sending alpha_i^ to alpha_{perm[i]}^ (sc/ad lattices only)."""
    perm = tuple(perm)
    n = datum.nsimple
    if sorted(perm) != list(range(n)):
        raise ValueError("not a permutation of simple indices")
    if datum.rank != n:
        raise ValueError("explicit permutations need a sc or ad lattice")
    cols = [None] * n
    for i in range(n):
        cols[i] = datum.simple_coroots[perm[i]]
    # theta(e_i) in the sc basis is the perm[i]-th coroot; in the ad basis the
    # same permutation matrix works on the coweight basis.
    if datum.simple_coroots == tuple(tuple(1 if i == j else 0 for j in range(n))
                                     for i in range(n)):
        mat = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    else:
        mat = tuple(tuple(1 if perm[j] == i else 0 for j in range(n)) for i in range(n))
    order = 1
    p = perm
    ident = tuple(range(n))
    while p != ident:
        p = tuple(perm[i] for i in p)
        order += 1
    return DiagramAutomorphism(datum, mat, order, r)


@dataclass(frozen=True)
class RelativeDatum:
    """Folded (relative) data: the theta-fixed sublattice, the theta-fixed
    Weyl group acting on it, and the nonzero restrictions of roots."""

    ambient: BasedRootDatum
    theta: DiagramAutomorphism
    fixed_basis: tuple           # Z-basis of X^theta, ambient coordinates
    relative_weyl: tuple         # element indices in weyl_elements(ambient)
    relative_mats: tuple         # matrices on fixed-basis coordinates
    restricted_roots: tuple      # deduped nonzero restrictions, fixed coords
    restricted_simples: tuple    # one restriction per theta-orbit of simples
    folded_coroots: tuple        # theta-orbit sums of simple coroots, fixed coords

    @property
    def rank(self):
        return len(self.fixed_basis)


def fold(datum: BasedRootDatum, theta: DiagramAutomorphism) -> RelativeDatum:
    """Relative datum of (datum, theta): W^theta by brute-force commutation,
    the fixed lattice, and folded root directions."""
    if theta.datum != datum:
        raise ValueError("theta belongs to a different datum")
    W = weyl_elements(datum)
    tmat = theta.matrix
    rel = tuple(x for x in W.elements()
                if mat_mul(tmat, W.mats[x]) == mat_mul(W.mats[x], tmat))
    # fixed sublattice
    n = datum.rank
    m = tuple(tuple(tmat[i][j] - (1 if i == j else 0) for j in range(n))
              for i in range(n))
    basis = tuple(int_kernel_basis(m))
    bmat = tuple(tuple(basis[j][i] for j in range(len(basis))) for i in range(n))
    # relative Weyl acts on the fixed lattice; express in the fixed basis
    rel_mats = []
    for x in rel:
        cols = []
        for b in basis:
            sol = int_solve(bmat, W.act(x, b))
            if sol is None:
                raise AssertionError("W^theta does not stabilize the fixed lattice")
            cols.append(sol)
        rel_mats.append(tuple(tuple(cols[j][i] for j in range(len(basis)))
                              for i in range(len(basis))))
    # faithfulness
    if len(set(rel_mats)) != len(rel):
        raise AssertionError("relative Weyl group does not act faithfully")
    # generation check: the minimal-length reflections of W^theta are the
    # longest elements of the subsystems spanned by theta-orbits of simple
    # reflections; together they must generate the whole fixed group.
    perm0 = theta.simple_permutation
    orbit_gens = []
    seen0 = set()
    for i in range(datum.nsimple):
        if i in seen0:
            continue
        orb = {i}
        j = perm0[i]
        while j != i:
            orb.add(j)
            j = perm0[j]
        seen0 |= orb
        sub = {0}
        frontier = [0]
        while frontier:
            new = []
            for x in frontier:
                for k in orb:
                    y = W.rmul[x][k]
                    if y not in sub:
                        sub.add(y)
                        new.append(y)
            frontier = new
        w_long = max(sub, key=lambda x: W.length[x])
        if w_long not in rel:
            raise AssertionError("orbit longest element is not theta-fixed")
        orbit_gens.append(w_long)
    span = {0}
    frontier = [0]
    while frontier:
        new = []
        for x in frontier:
            for g in orbit_gens:
                y = W.mul(x, g)
                if y not in span:
                    span.add(y)
                    new.append(y)
        frontier = new
    if span != set(rel):
        raise AssertionError("folded generators do not generate W^theta")
    # restrictions of roots
    restrict = lambda cov: tuple(dot(cov, b) for b in basis)
    restricted = []
    for cov in positive_roots(datum):
        rc = restrict(cov)
        if any(rc) and rc not in restricted:
            restricted.append(rc)
        nc = tuple(-t for t in rc)
        if any(nc) and nc not in restricted:
            restricted.append(nc)
    # theta-orbits of simple indices
    perm = theta.simple_permutation
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
    rsimples = tuple(restrict(datum.simple_roots[orb[0]]) for orb in orbits)
    fcoroots = []
    for orb in orbits:
        s = (0,) * datum.rank
        for i in orb:
            s = vec_add(s, datum.simple_coroots[i])
        sol = int_solve(bmat, s)
        if sol is None:
            raise AssertionError("orbit sum of coroots is not theta-fixed")
        fcoroots.append(tuple(sol))
    return RelativeDatum(datum, theta, basis, rel, tuple(rel_mats),
                         tuple(restricted), rsimples, tuple(fcoroots))


def load_datum_config(text: str):
    """Parse a plain-text description:

        type = A2
        theta = flip          # or identity, or perm:1,0
        r = 2

    Returns (datum, theta, r)."""
    fields = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError("bad config line %r" % line)
        k, v = line.split("=", 1)
        fields[k.strip().lower()] = v.strip()
    if "type" not in fields:
        raise ValueError("config missing 'type'")
    datum = build_root_datum(fields["type"])
    r = int(fields.get("r", "1"))
    spec = fields.get("theta", "identity")
    if spec == "identity":
        theta = identity_automorphism(datum, r)
    elif spec == "flip":
        theta = flip_automorphism(datum, r)
    elif spec.startswith("perm:"):
        perm = [int(t) for t in spec[5:].split(",")]
        theta = automorphism_from_permutation(datum, perm, r)
    else:
        raise ValueError("unknown theta %r" % spec)
    return datum, theta, r
