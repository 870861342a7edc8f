"""Unramified characters, the finite principal-series model, central scalars,
J-fixed dimensions, Fourier transforms, and the constant-term map on the
invariant-ring side.

Conventions (uniform across the package):

  * delta^(1/2) at a translation lam is q^(-<rho, lam>), rho the half-sum of
    positive roots.
  * the scalar of a central element z on the chi-model is
    ch_chi(z) = sum over supp coeff(lam) * chi(-lam); the model tensors
    through the inverse character so the computed action IS this scalar.
  * symbolic mode is authoritative; characters are unit (monomial)
    coordinates in the variables (v, s_1, ..., s_n).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .affine import ParahoricType
from .hecke import CentralElement, HeckeAlgebra, HeckeElement
from .intlinalg import dot, frac_rank, mat_vec
from .laurent import Laurent, MLaurent
from .rootdata import (
    BasedRootDatum,
    positive_roots,
    weyl_elements,
)


class IntegrityError(AssertionError):
    """A structural theorem failed on concrete data (non-scalar action...)."""


@dataclass(frozen=True)
class UnramifiedCharacter:
    """Point of the dual torus.

    coords: one value per lattice basis vector; in symbolic mode each is a
    unit (single-term) MLaurent in the shared variables (v, s_1..s_n), in
    numeric mode a nonzero complex number with v specialized to sqrt(q).
    """

    coords: tuple
    mode: str = "symbolic"
    vval: float = 0.0  # numeric mode only: the positive value of v

    def __post_init__(self):
        if self.mode == "symbolic":
            for c in self.coords:
                if not isinstance(c, MLaurent) or len(c.c) != 1:
                    raise ValueError("symbolic coordinates must be unit monomials")
        elif self.mode == "numeric":
            for c in self.coords:
                if not c:
                    raise ValueError("numeric coordinates must be nonzero")
            if not self.vval > 0:
                raise ValueError("numeric mode needs a positive v value")
        else:
            raise ValueError("mode must be symbolic or numeric")

    @property
    def rank(self):
        return len(self.coords)

    @property
    def nvars(self):
        if self.mode != "symbolic":
            raise ValueError("nvars is a symbolic-mode notion")
        return len(next(iter(self.coords[0].c)))

    def value(self, lam):
        """chi(lam) = product of coords^lam_i."""
        if self.mode == "numeric":
            out = complex(1)
            for c, k in zip(self.coords, lam):
                out *= c ** k
            return out
        n = len(next(iter(self.coords[0].c)))
        exps = [0] * n
        coeff = Fraction(1)
        for c, k in zip(self.coords, lam):
            (e, x), = c.c.items()
            for t in range(n):
                exps[t] += e[t] * k
            coeff *= Fraction(x) ** k
        return MLaurent(n, {tuple(exps): coeff})

    def twist(self, mats, w):
        """^w chi: lam -> chi(w^{-1} lam); mats[w] is the matrix of w."""
        from .intlinalg import frac_inv
        minv = frac_inv(mats[w])
        coords = []
        for i in range(self.rank):
            e = tuple(1 if j == i else 0 for j in range(self.rank))
            pre = tuple(int(t) for t in mat_vec(minv, e))
            coords.append(self.value(pre))
        return UnramifiedCharacter(tuple(coords), self.mode, self.vval)


def symbolic_character(rank: int) -> UnramifiedCharacter:
    """The generic character: coordinate i is the variable s_i (variable 0
    is reserved for v)."""
    n = rank + 1
    coords = tuple(
        MLaurent.monomial(n, tuple(1 if j == i + 1 else 0 for j in range(n)))
        for i in range(rank)
    )
    return UnramifiedCharacter(coords)


def parse_character(spec: str, rank: int) -> UnramifiedCharacter:
    """Parse 's1=..., s2=..., v=...' with rational values ('3/2'), complex
    values ('1.5+0.5j', forces numeric mode), or 'sym' (default)."""
    fields = {}
    for item in spec.split(","):
        item = item.strip()
        if not item:
            continue
        k, v = item.split("=", 1)
        fields[k.strip()] = v.strip()
    numeric = any(("j" in v or "." in v) and v != "sym" for v in fields.values())
    if numeric:
        vval = float(fields.get("v", "1.0"))
        coords = []
        for i in range(rank):
            raw = fields.get("s%d" % (i + 1), "1")
            coords.append(complex(raw))
        return UnramifiedCharacter(tuple(coords), "numeric", vval)
    n = rank + 1
    coords = []
    for i in range(rank):
        raw = fields.get("s%d" % (i + 1), "sym")
        if raw == "sym":
            coords.append(MLaurent.monomial(
                n, tuple(1 if j == i + 1 else 0 for j in range(n))))
        else:
            coords.append(MLaurent(n, {(0,) * n: Fraction(raw)}))
    return UnramifiedCharacter(tuple(coords))


def character_table_csv(chi: UnramifiedCharacter, lams):
    lines = ["lambda,value"]
    for lam in lams:
        v = chi.value(lam)
        lines.append("%s,%s" % (" ".join(map(str, lam)),
                                v.serialize() if isinstance(v, MLaurent) else v))
    return "\n".join(lines) + "\n"


def two_rho_pairing(datum: BasedRootDatum, lam):
    """<2 rho, lam> = sum over positive roots of <beta, lam>."""
    return sum(dot(b, lam) for b in positive_roots(datum))


class PrincipalSeriesModel:
    """chi tensor (over the lattice algebra) of the Iwahori-Hecke module with
    basis indexed by the finite Weyl group.

    The right action of a generator T_g on the basis vector u_w is computed
    from the cell rules of the universal unramified principal series: with
    x = w s_g = (nu, u) and beta_g the vector part of the affine root of g,

      u_w T_g = red(nu, u)                         if w(beta_g) < 0
      u_w T_g = q red(nu, u) + (q - 1) u_w         if w(beta_g) > 0

    where red(nu, u) = chi(-nu) q^(<rho, nu>) u_u folds the translation
    through the tensor (inverse-character convention).
    """

    def __init__(self, alg: HeckeAlgebra, chi: UnramifiedCharacter):
        if alg.params != (1,) * alg.ctx.ngens:
            raise ValueError("the principal-series model assumes equal parameters")
        if chi.mode != "symbolic":
            raise ValueError("the model is built in symbolic mode")
        if chi.rank != alg.datum.rank:
            raise ValueError("character rank does not match the datum")
        self.alg = alg
        self.chi = chi
        self.W = weyl_elements(alg.datum)
        self.dim = self.W.size
        self.nvars = alg.datum.rank + 1
        self._gen_rows = [self._generator_rows(g) for g in range(alg.ctx.ngens)]
        self._act_memo = {}

    # model internals ------------------------------------------------------------

    def _reduce_scalar(self, nu):
        """chi(-nu) * q^(<rho, nu>) as an MLaurent."""
        val = self.chi.value(tuple(-t for t in nu))
        shift = two_rho_pairing(self.alg.datum, nu)
        return val * MLaurent.monomial(self.nvars,
                                       (shift,) + (0,) * (self.nvars - 1))

    def _generator_rows(self, g):
        """Sparse rows of the right action of T_g on the u_w basis."""
        ctx = self.alg.ctx
        W = self.W
        rows = []
        beta = ctx.affroot_vec[g]
        one = MLaurent.one(self.nvars)
        q = MLaurent.monomial(self.nvars, (2,) + (0,) * (self.nvars - 1))
        qm1 = q - one
        for w in range(W.size):
            x = ctx.mul(ctx.from_finite(w), ctx.gen_elems[g])
            nu, u = x.trans, x.w
            fold = ctx.finite_sends_negative(w, beta)
            target = self._reduce_scalar(nu)
            if fold:
                rows.append({u: target})
            else:
                rows.append({u: q * target, w: qm1})
        return rows

    def _omega_row(self, w, om):
        ctx = self.alg.ctx
        x = ctx.mul(ctx.from_finite(w), om)
        return {x.w: self._reduce_scalar(x.trans)}

    def _apply_gen(self, mat, g):
        rows = self._gen_rows[g]
        out = []
        for row in mat:
            acc = {}
            for col, coeff in row.items():
                for tgt, fac in rows[col].items():
                    cur = acc.get(tgt)
                    val = coeff * fac
                    acc[tgt] = val if cur is None else cur + val
            out.append({k: v for k, v in acc.items() if not v.is_zero()})
        return out

    def _apply_omega(self, mat, om):
        out = []
        for row in mat:
            acc = {}
            for col, coeff in row.items():
                for tgt, fac in self._omega_row(col, om).items():
                    cur = acc.get(tgt)
                    val = coeff * fac
                    acc[tgt] = val if cur is None else cur + val
            out.append(acc)
        return out

    def _matrix_of_element(self, i):
        """Matrix of T_x for the ball id i, as sparse rows."""
        mat = self._act_memo.get(i)
        if mat is not None:
            return mat
        ctx = self.alg.ctx
        x = self.alg.ball.elems[i]
        word, om = ctx.reduced_word(x)
        mat = [{w: MLaurent.one(self.nvars)} for w in range(self.dim)]
        for g in word:
            mat = self._apply_gen(mat, g)
        if om != ctx.identity:
            mat = self._apply_omega(mat, om)
        self._act_memo[i] = mat
        return mat


def act(model: PrincipalSeriesModel, h: HeckeElement):
    """Matrix of the right action of h on the model.

    Returns (rows, den): rows is a dense |W| x |W| list of MLaurent entries
    and den a univariate Laurent denominator (from parahoric normalizations).
    """
    if h.alg is not model.alg:
        raise ValueError("element and model live over different algebras")
    support, scale = h._cleared()
    nvars = model.nvars
    dim = model.dim
    dense = [[MLaurent.zero(nvars) for _ in range(dim)] for _ in range(dim)]
    for i in sorted(support):
        mat = model._matrix_of_element(i)
        poly = MLaurent(nvars, {(e,) + (0,) * (nvars - 1): c
                                for e, c in support[i].items()})
        for r in range(dim):
            for col, val in mat[r].items():
                dense[r][col] = dense[r][col] + poly * val
    # scale = num/den with num a pure v-unit times rational
    num = scale.num
    den = scale.den
    numm = MLaurent(nvars, {(e,) + (0,) * (nvars - 1): c for e, c in num.c.items()})
    dense = [[x * numm for x in row] for row in dense]
    return dense, den


def central_scalar(z: CentralElement, chi: UnramifiedCharacter,
                   alg: HeckeAlgebra, J: ParahoricType):
    """The scalar by which z acts on the J-fixed model vectors, computed from
    the action matrices and certified scalar; IntegrityError otherwise.

    Returns an MLaurent (symbolic mode).
    """
    model = _model_for(alg, chi)
    hz = z.hecke(alg, J)
    he = _indicator(alg, J)
    mz, dz = act(model, hz)
    me, de = act(model, he)
    pivot = None
    for r in range(model.dim):
        for c in range(model.dim):
            if not me[r][c].is_zero():
                pivot = (r, c)
                break
        if pivot:
            break
    if pivot is None:
        raise IntegrityError("indicator acts by zero")
    r, c = pivot
    dzm = MLaurent.from_laurent(dz, model.nvars)
    dem = MLaurent.from_laurent(de, model.nvars)
    s = (mz[r][c] * dem).divexact(me[r][c] * dzm)
    if s is None:
        raise IntegrityError("action is not scalar on the J-fixed subspace")
    for rr in range(model.dim):
        for cc in range(model.dim):
            if mz[rr][cc] * dem != s * (me[rr][cc] * dzm):
                raise IntegrityError(
                    "non-scalar action of a central element at entry (%d,%d)"
                    % (rr, cc))
    return s


def closed_form_scalar(z: CentralElement, chi: UnramifiedCharacter):
    """sum over supp of coeff(lam) chi(-lam): the orbit-sum formula."""
    if chi.mode != "symbolic":
        total = 0j
        for lam, coeff in z.fn.items():
            cval = sum(complex(x) * chi.vval ** e for e, x in coeff.c.items())
            total += cval * chi.value(tuple(-t for t in lam))
        return total
    n = chi.nvars
    total = MLaurent.zero(n)
    for lam, coeff in z.fn.items():
        mono = chi.value(tuple(-t for t in lam))
        cl = MLaurent(n, {(e,) + (0,) * (n - 1): c for e, c in coeff.c.items()})
        total = total + cl * mono
    return total


_model_cache = {}
_indicator_cache = {}


def _model_for(alg, chi):
    key = (id(alg), chi)
    m = _model_cache.get(key)
    if m is None:
        m = PrincipalSeriesModel(alg, chi)
        _model_cache[key] = m
    return m


def _indicator(alg, J):
    from .hecke import indicator_J
    key = (id(alg), frozenset(J.gens))
    h = _indicator_cache.get(key)
    if h is None:
        h = indicator_J(alg, J)
        _indicator_cache[key] = h
    return h


def jfixed_dimension(datum: BasedRootDatum, J: ParahoricType, levi=(),
                     alg=None, verify_rank=False, seed=0):
    """|W_M \\ W / W-bar_J|; for the Borel (levi = ()) this is the dimension
    of the J-fixed subspace of the model, optionally certified by an exact
    rank computation at a random character specialization."""
    from .affine import pgj_representatives
    table = pgj_representatives(datum, tuple(levi), J)
    count = table.count
    if verify_rank:
        if levi:
            raise ValueError("rank verification is a Borel-side check")
        if alg is None:
            alg = HeckeAlgebra(datum)
        chi = symbolic_character(datum.rank)
        model = _model_for(alg, chi)
        me, _ = act(model, _indicator(alg, J))
        rng = random.Random(seed)
        for attempt in range(4):
            vals = [Fraction(rng.randint(2, 40), rng.randint(1, 7)) for _ in
                    range(model.nvars)]
            rows = [[me[r][c].evaluate(vals) for c in range(model.dim)]
                    for r in range(model.dim)]
            rank = frac_rank(rows)
            if rank == count:
                return count
        raise IntegrityError("J-fixed rank %d does not match coset count %d"
                             % (rank, count))
    return count


def fourier_transform(z: CentralElement, chi: UnramifiedCharacter,
                      alg: HeckeAlgebra, J: ParahoricType):
    """The trace of z on the full unramified principal series at chi:
    central scalar times the J-fixed dimension."""
    s = central_scalar(z, chi, alg, J)
    d = jfixed_dimension(alg.datum, J)
    return s * d


def constant_term_spectral(z: CentralElement, levi) -> CentralElement:
    """The same invariant function read as a W_M-invariant: the inclusion of
    invariant rings; the lattice function does not change."""
    levi = tuple(sorted(levi))
    if z.levi is not None and not set(levi) <= set(z.levi):
        raise ValueError("constant term must go down to a smaller Levi")
    return CentralElement(z.datum, dict(z.fn), levi=levi)
