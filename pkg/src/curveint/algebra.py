"""Polynomial algebra: gcd, subresultant remainder sequences, resultants,
discriminants, squarefree decomposition, and the coordinate changes used to
put curve pairs in general position.

Resultant convention
--------------------
``resultant(f, g, x)`` equals the determinant of the Sylvester matrix built
with f's coefficient rows first (deg g rows of f above deg f rows of g,
coefficients in descending powers of x).  The subresultant remainder
sequence is the production algorithm; the determinant is kept as a test
oracle only.  ``discriminant(f, x)`` is
``(-1)^(m(m-1)/2) * resultant(f, f_x, x) / lc_x(f)`` with m = deg_x f.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (GeneralPositionError, InvalidDegreeError,
                     InvalidInputError, UnsupportedExtensionError)
from .fields import QQ, ExtensionField, PrimeField, pth_root_scalar
from .poly import MultiPoly


# --------------------------------------------------------------------- gcd

def _normalize(f: MultiPoly) -> MultiPoly:
    """Scale so the graded-lex leading coefficient is 1."""
    if f.is_zero():
        return f
    return f.scale(1 / f.leading_coefficient())


def content_in(f: MultiPoly, name: str) -> MultiPoly:
    """gcd of the coefficients of f viewed as a polynomial in ``name``."""
    coeffs = [c for c in f.coeffs_in(name) if not c.is_zero()]
    if not coeffs:
        return f.clone({})
    g = coeffs[0]
    for c in coeffs[1:]:
        g = gcd(g, c)
        if g.is_constant():
            break
    return _normalize(g)


def primitive_part_in(f: MultiPoly, name: str) -> MultiPoly:
    c = content_in(f, name)
    if c.is_zero():
        return f
    return f.exact_divide(c)


def pseudo_divmod(f: MultiPoly, g: MultiPoly, name: str):
    """(q, r) with lc_g^(df-dg+1) * f = q*g + r and deg_name r < deg_name g."""
    df, dg = f.degree_in(name), g.degree_in(name)
    if dg < 0:
        raise ZeroDivisionError("pseudo-division by zero")
    if df < dg:
        return f.clone({}), f
    lead = g.leading_coeff_in(name)
    q = f.clone({})
    r = f
    e = df - dg + 1
    xvar = MultiPoly.var(f.field, f.vars, name)
    while not r.is_zero() and r.degree_in(name) >= dg:
        dr = r.degree_in(name)
        t = r.leading_coeff_in(name) * xvar ** (dr - dg)
        q = q * lead + t
        r = r * lead - t * g
        e -= 1
    scale = lead ** e
    return q * scale, r * scale


def pseudo_rem(f, g, name):
    return pseudo_divmod(f, g, name)[1]


def _involved(f: MultiPoly, g: MultiPoly):
    return [v for v in f.vars if f.involves(v) or g.involves(v)]


def _univar_gcd(f: MultiPoly, g: MultiPoly, name: str) -> MultiPoly:
    """Monic Euclid on dense coefficient lists (single-variable inputs)."""
    field = f.field

    def to_list(p):
        d = p.degree_in(name)
        out = [field.zero] * (d + 1)
        i = p.vars.index(name)
        for e, c in p.terms.items():
            out[e[i]] = out[e[i]] + c
        return out

    def trim(ls):
        while ls and not ls[-1]:
            ls.pop()
        return ls

    a, b = trim(to_list(f)), trim(to_list(g))
    while b:
        inv = 1 / b[-1]
        bm = [c * inv for c in b]
        r = a[:]
        for k in range(len(r) - 1, len(bm) - 2, -1):
            c = r[k]
            if c:
                off = k - (len(bm) - 1)
                for i2, cb in enumerate(bm):
                    r[off + i2] = r[off + i2] - c * cb
        a, b = b, trim(r[:len(bm) - 1])
    lead = a[-1]
    i = f.vars.index(name)
    terms = {}
    for k, c in enumerate(a):
        if c:
            key = [0] * len(f.vars)
            key[i] = k
            terms[tuple(key)] = c / lead
    return MultiPoly(field, f.vars, terms)


def gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Multivariate gcd over a field, normalized to leading coefficient 1.

    Single-variable pairs take a dense monic-Euclid path; otherwise a
    recursive primitive pseudo-remainder sequence with content splitting.
    """
    if f.is_zero():
        return _normalize(g)
    if g.is_zero():
        return _normalize(f)
    if f.is_constant() or g.is_constant():
        return MultiPoly.const(f.field, f.vars, 1)
    involved = _involved(f, g)
    if len(involved) == 1:
        return _univar_gcd(f, g, involved[0])
    name = involved[0]
    if not f.involves(name):
        return gcd(f, content_in(g, name))
    if not g.involves(name):
        return gcd(content_in(f, name), g)
    cf, cg = content_in(f, name), content_in(g, name)
    c = gcd(cf, cg)
    a, b = f.exact_divide(cf), g.exact_divide(cg)
    if a.degree_in(name) < b.degree_in(name):
        a, b = b, a
    while True:
        r = pseudo_rem(a, b, name)
        if r.is_zero():
            return _normalize(c * primitive_part_in(b, name))
        if r.degree_in(name) == 0:
            return _normalize(c)
        a, b = b, primitive_part_in(r, name)


# ------------------------------------------------------- subresultant PRS

def subresultant_prs(f: MultiPoly, g: MultiPoly, name: str):
    """The subresultant polynomial remainder sequence of (f, g) in ``name``.

    Returns the list [f, g, r_1, r_2, ...] ending with the last nonzero
    remainder.  Exact divisions keep coefficient growth polynomial.
    """
    if f.degree_in(name) < g.degree_in(name):
        f, g = g, f
    seq = [f, g]
    a, b = f, g
    one = MultiPoly.const(f.field, f.vars, 1)
    gg, h = one, one
    while True:
        delta = a.degree_in(name) - b.degree_in(name)
        r = pseudo_rem(a, b, name)
        if r.is_zero():
            return seq
        r = r.exact_divide(gg * h ** delta)
        seq.append(r)
        a, b = b, r
        gg = a.leading_coeff_in(name)
        if delta >= 1:
            h = (gg ** delta).exact_divide(h ** (delta - 1))
        if b.degree_in(name) == 0:
            return seq


def resultant(f: MultiPoly, g: MultiPoly, name: str) -> MultiPoly:
    """Res_name(f, g) as a polynomial in the remaining variables.

    Follows the classical subresultant algorithm with content extraction;
    agrees exactly with the Sylvester determinant (f's rows first).
    """
    if f.is_zero() and g.is_zero():
        raise InvalidInputError("resultant of two zero polynomials")
    if not f.involves(name) and not g.involves(name):
        raise InvalidInputError(f"neither input involves {name}")
    if f.is_zero() or g.is_zero():
        return f.clone({})
    sign = 1
    if f.degree_in(name) < g.degree_in(name):
        if (f.degree_in(name) * g.degree_in(name)) % 2 == 1:
            sign = -sign
        f, g = g, f
    if g.degree_in(name) == 0:
        c = g.coeff_of(name, 0)
        res = c ** f.degree_in(name)
        return res if sign > 0 else -res
    ca, cb = content_in(f, name), content_in(g, name)
    a, b = f.exact_divide(ca), g.exact_divide(cb)
    t = ca ** b.degree_in(name) * cb ** a.degree_in(name)
    one = MultiPoly.const(f.field, f.vars, 1)
    gg, h = one, one
    s = 1
    while True:
        da, db = a.degree_in(name), b.degree_in(name)
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            s = -s
        r = pseudo_rem(a, b, name)
        if r.is_zero():
            return f.clone({})  # positive-degree common factor
        a, b = b, r.exact_divide(gg * h ** delta)
        gg = a.leading_coeff_in(name)
        if delta >= 1:
            h = (gg ** delta).exact_divide(h ** (delta - 1))
        if b.degree_in(name) == 0:
            da = a.degree_in(name)
            bc = b.coeff_of(name, 0)
            h = (bc ** da).exact_divide(h ** (da - 1)) if da >= 1 else one
            res = t * h
            if s * sign < 0:
                res = -res
            return res


def discriminant(f: MultiPoly, name: str) -> MultiPoly:
    m = f.degree_in(name)
    if m < 1:
        raise InvalidInputError(f"input is constant in {name}")
    res = resultant(f, f.derivative(name), name)
    res = res.exact_divide(f.leading_coeff_in(name))
    if (m * (m - 1) // 2) % 2 == 1:
        res = -res
    return res


# ------------------------------------------------------ squarefree factors

class SquarefreeDecomposition:
    """Pairwise-coprime squarefree factors with multiplicities and a
    constant content; the product reconstructs the input exactly."""

    def __init__(self, factors, content):
        self.factors = list(factors)
        self.content = content

    def reconstruct(self, like: MultiPoly) -> MultiPoly:
        out = MultiPoly.const(like.field, like.vars, self.content)
        for fac, mult in self.factors:
            out = out * fac ** mult
        return out

    def reduced_product(self, like: MultiPoly) -> MultiPoly:
        out = MultiPoly.const(like.field, like.vars, 1)
        for fac, _ in self.factors:
            out = out * fac
        return out

    def is_reduced(self):
        return all(m == 1 for _, m in self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __repr__(self):
        inner = ", ".join(f"({fac}, {m})" for fac, m in self.factors)
        return f"SquarefreeDecomposition([{inner}], content={self.content})"


def _pth_root_poly(f: MultiPoly) -> MultiPoly:
    p = f.field.characteristic
    out = {}
    for exps, c in f.terms.items():
        if any(e % p for e in exps):
            raise InvalidInputError("not a p-th power")
        key = tuple(e // p for e in exps)
        out[key] = pth_root_scalar(c, f.field)
    return f.clone(out)


def _sqf_recurse(f: MultiPoly):
    """Multiplicity map {factor: mult} for a nonconstant f, any characteristic."""
    p = f.field.characteristic
    partials = [f.derivative(v) for v in f.vars if f.involves(v)]
    if p > 0 and all(d.is_zero() for d in partials):
        root = _pth_root_poly(f)
        if root.is_constant():
            return {}
        return {fac: p * m for fac, m in _sqf_recurse(root).items()}
    g = f
    for d in partials:
        if not d.is_zero():
            g = gcd(g, d)
        if g.is_constant():
            break
    if g.is_constant():
        return {_normalize(f): 1}
    w = _normalize(f).exact_divide(g)  # product of factors with p-coprime mult
    result = {}
    leftover = w
    for fac, m in _sqf_recurse(g).items():
        c = gcd(fac, leftover)
        if c.is_constant():
            result[fac] = result.get(fac, 0) + m
        else:
            rest = fac.exact_divide(c)
            if not rest.is_constant():
                result[_normalize(rest)] = result.get(_normalize(rest), 0) + m
            cn = _normalize(c)
            result[cn] = result.get(cn, 0) + m + 1
            leftover = leftover.exact_divide(c)
    if not leftover.is_constant():
        ln = _normalize(leftover)
        result[ln] = result.get(ln, 0) + 1
    return result


def squarefree_decompose(f: MultiPoly) -> SquarefreeDecomposition:
    if f.is_zero():
        raise InvalidInputError("squarefree decomposition of zero")
    if f.is_constant():
        return SquarefreeDecomposition([], f.constant_value())
    factors = sorted(_sqf_recurse(f).items(),
                     key=lambda it: (it[1], it[0].total_degree(), str(it[0])))
    prod = MultiPoly.const(f.field, f.vars, 1)
    for fac, m in factors:
        prod = prod * fac ** m
    content = f.exact_divide(prod)
    if not content.is_constant():
        raise InvalidInputError("squarefree decomposition failed to reconstruct")
    return SquarefreeDecomposition(factors, content.constant_value())


# ------------------------------------------------- univariate factorization

def factor_univariate(f: MultiPoly, name: str):
    """Irreducible factorization of a univariate polynomial over Q or F_p.

    Returns (constant, [(factor, multiplicity), ...]) with monic factors in
    a deterministic order.  Backed by sympy; everything is converted through
    exact integer/rational data, never floats.
    """
    import sympy

    for v in f.vars:
        if v != name and f.involves(v):
            raise InvalidInputError("input is not univariate")
    x = sympy.Symbol(name)
    field = f.field
    if field == QQ:
        expr = sum(sympy.Rational(c.numerator, c.denominator) * x ** e[f.vars.index(name)]
                   for e, c in f.terms.items())
        const, facs = sympy.Poly(expr, x, domain="QQ").factor_list()
        const = Fraction(const.p, const.q)
    elif isinstance(field, PrimeField):
        expr = sum(int(c.val) * x ** e[f.vars.index(name)] for e, c in f.terms.items())
        const, facs = sympy.Poly(expr, x, domain=sympy.GF(field.p)).factor_list()
        const = int(const) % field.p
    else:
        raise UnsupportedExtensionError(
            "univariate factorization only over Q or F_p")
    out = []
    for poly, mult in facs:
        coeffs = poly.all_coeffs()[::-1]  # ascending
        terms = {}
        for k, c in enumerate(coeffs):
            if field == QQ:
                val = Fraction(sympy.Rational(c).p, sympy.Rational(c).q)
            else:
                val = int(c) % field.p
            key = tuple(k if v == name else 0 for v in f.vars)
            terms[key] = field.of(val)
        fac = MultiPoly(field, f.vars, terms)
        lead = fac.leading_coeff_in(name).constant_value()
        if lead != field.one:
            const = const * (lead ** mult if field == QQ else int((lead ** mult).val))
            fac = fac.scale(1 / lead)
        out.append((fac, int(mult)))
    out.sort(key=lambda it: (it[0].degree_in(name), str(it[0])))
    return field.of(const), out


def roots_univariate(f: MultiPoly, name: str):
    """Roots in the ground field with multiplicities, plus the nonlinear
    irreducible factors: (roots, clusters)."""
    const, facs = factor_univariate(f, name)
    roots, clusters = [], []
    for fac, mult in facs:
        if fac.degree_in(name) == 1:
            c0 = fac.coeff_of(name, 0).constant_value()
            c1 = fac.coeff_of(name, 1).constant_value()
            roots.append((-c0 / c1, mult))
        else:
            clusters.append((fac, mult))
    return roots, clusters


# ----------------------------------------------------- coordinate changes

def lift_to_field(f: MultiPoly, new_field) -> MultiPoly:
    """Embed a polynomial over the base field into an extension."""
    if f.field == new_field:
        return f
    if isinstance(new_field, ExtensionField) and new_field.base == f.field:
        return f.map_coefficients(new_field, new_field.embed)
    raise UnsupportedExtensionError(
        f"cannot lift coefficients from {f.field!r} to {new_field!r}")


def translate_to_origin(f: MultiPoly, point) -> MultiPoly:
    """f(x + p_x, y + p_y): vanishes at the origin iff f vanishes at p.

    The point may live in a one-step extension of f's field, in which case
    the result is over that extension.
    """
    px, py = point
    field = f.field
    for c in (px, py):
        if field.is_element(c) or isinstance(c, (int, Fraction)):
            continue
        cf = getattr(c, "field", None)
        if isinstance(cf, ExtensionField) and (cf.base == f.field or cf == f.field):
            field = cf
        else:
            raise UnsupportedExtensionError(
                "translation point not representable over the polynomial's "
                "field or a one-step extension of it")
    g = lift_to_field(f, field) if field != f.field else f
    xv, yv = g.vars[0], g.vars[1]
    x = MultiPoly.var(g.field, g.vars, xv)
    y = MultiPoly.var(g.field, g.vars, yv)
    cx = MultiPoly.const(g.field, g.vars, field.of(px))
    cy = MultiPoly.const(g.field, g.vars, field.of(py))
    return g.compose({xv: x + cx, yv: y + cy})


def apply_shear(f: MultiPoly, lam, mu) -> MultiPoly:
    """Rewrite f in the coordinates (x' = x, y' = lam*x + mu*y).

    Substitutes y -> (y - lam*x)/mu, so the new polynomial vanishes on the
    image of the old zero set.  The origin is fixed.
    """
    field = f.field
    lam, mu = field.of(lam), field.of(mu)
    if not mu:
        raise InvalidInputError("shear requires mu != 0")
    xv, yv = f.vars[0], f.vars[1]
    x = MultiPoly.var(field, f.vars, xv)
    y = MultiPoly.var(field, f.vars, yv)
    repl = (y - x.scale(lam)).scale(1 / mu)
    return f.compose({yv: repl})


AFFINE_VARS = ("x", "y")
PROJECTIVE_VARS = ("X", "Y", "Z")


def homogenize(f: MultiPoly, degree: int) -> MultiPoly:
    """Affine f(x, y) to the homogeneous form of the given total degree.

    Term x^i y^j becomes X^i Y^j Z^(degree-i-j)."""
    if f.total_degree() > degree:
        raise InvalidDegreeError(
            f"total degree {f.total_degree()} exceeds target {degree}")
    out = {}
    for (i, j), c in f.terms.items():
        out[(i, j, degree - i - j)] = c
    return MultiPoly(f.field, PROJECTIVE_VARS, out)


def dehomogenize(F: MultiPoly, chart: str) -> MultiPoly:
    """Restrict a homogeneous form to an affine chart (one of X, Y, Z = 1).

    The two remaining coordinates keep their projective order and are
    renamed to lowercase."""
    if chart not in PROJECTIVE_VARS:
        raise InvalidInputError(f"unknown chart {chart!r}")
    i = PROJECTIVE_VARS.index(chart)
    keep = [k for k in range(3) if k != i]
    out = {}
    zero = F.field.zero
    for exps, c in F.terms.items():
        key = tuple(exps[k] for k in keep)
        s = out.get(key, zero) + c
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    names = tuple(PROJECTIVE_VARS[k].lower() for k in keep)
    return MultiPoly(F.field, names, out)


def is_homogeneous(F: MultiPoly) -> bool:
    if F.is_zero():
        return True
    degs = {sum(e) for e in F.terms}
    return len(degs) == 1


def _regular_in_x(f: MultiPoly) -> bool:
    """f(x, 0) not identically zero."""
    yv = f.vars[1]
    return not f.subs_values({yv: f.field.zero}).is_zero()


def _strongly_regular_in_x(f: MultiPoly) -> bool:
    """deg_x f equals the total degree and the top coefficient is constant."""
    xv = f.vars[0]
    return (f.degree_in(xv) == f.total_degree()
            and f.leading_coeff_in(xv).is_constant())


def _shear_candidates(field, bound):
    yield field.zero, field.one  # identity first
    p = field.characteristic
    limit = bound if p == 0 else min(bound, p - 1)
    for size in range(1, 2 * limit + 1):
        for lam_i in range(-limit, limit + 1):
            for mu_i in range(1, limit + 1):
                if abs(lam_i) + mu_i != size or (lam_i, mu_i) == (0, 1):
                    continue
                yield field.of(lam_i), field.of(mu_i)


def shear_to_general_position(f: MultiPoly, g: MultiPoly, mode: str = "basic",
                              bound: int = 20):
    """Find (lam, mu) putting the pair in general position; returns
    (sheared f, sheared g, lam, mu).

    mode "basic": the first image is regular in x; the second is regular in
    x or free of x entirely (so a transverse pair like (x, y) stays put).
    mode "resultant": both top x-coefficients are nonzero constants (degree
    in x equals total degree) and the origin is the only common zero on the
    line y = 0, so the order of the resultant in y reads off the local
    multiplicity.
    """
    if f.is_zero() or g.is_zero():
        raise InvalidInputError("shear of a zero polynomial")
    tried = []
    xv, yv = f.vars[0], f.vars[1]
    for lam, mu in _shear_candidates(f.field, bound):
        fs = apply_shear(f, lam, mu)
        gs = apply_shear(g, lam, mu)
        if not _regular_in_x(fs):
            tried.append((lam, mu))
            continue
        if gs.degree_in(xv) > 0 and not _regular_in_x(gs):
            tried.append((lam, mu))
            continue
        if mode == "resultant":
            if not (_strongly_regular_in_x(fs) and _strongly_regular_in_x(gs)):
                tried.append((lam, mu))
                continue
            f0 = fs.subs_values({yv: f.field.zero})
            g0 = gs.subs_values({yv: f.field.zero})
            common = gcd(f0, g0)
            # every common zero on y = 0 must sit at the origin, i.e. the
            # gcd of the two restrictions is a pure power of x
            if len(common.terms) > 1:
                tried.append((lam, mu))
                continue
        return fs, gs, lam, mu
    raise GeneralPositionError(
        f"no shear with |lam|,|mu| <= {bound} put the pair in general position",
        tried=tried)
