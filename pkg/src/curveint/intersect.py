"""Intersection multiplicities of plane projective curves, three ways.

* ``mult_length``: dimension of the local quotient ring at the origin,
  by exact linear algebra on truncations, stabilized in the cutoff.
* ``mult_resultant_order``: order of vanishing of the x-eliminant at the
  origin's fiber (the pair must be in resultant general position).
* ``mult_deformation``: certified infinitesimal solution count from the
  deformation engine.

``bezout_sum`` enumerates every intersection point of two curves across
all three charts (rational points, conjugate points over F_p, exact
clusters over Q), runs the three engines at each, demands exact agreement,
and checks the weighted total against the product of the degrees.
"""

from __future__ import annotations

from dataclasses import dataclass
from .algebra import (PROJECTIVE_VARS, dehomogenize, gcd, is_homogeneous,
                      lift_to_field, resultant, roots_univariate,
                      shear_to_general_position, squarefree_decompose,
                      translate_to_origin)
from .deformation import deformation_count
from .errors import (BudgetError, GeneralPositionError,
                     InfiniteMultiplicityError, InvalidInputError,
                     NotRegularError, SharedComponentError,
                     VerificationFailureError)
from .fields import ExtensionField
from .poly import MultiPoly


# ----------------------------------------------------------------- curves

class Curve:
    """A plane projective curve: homogeneous nonzero form in X, Y, Z."""

    def __init__(self, form: MultiPoly, degree: int = None):
        if form.is_zero():
            raise InvalidInputError("curve form must be nonzero")
        if tuple(form.vars) != PROJECTIVE_VARS:
            form = form.rename_vars(PROJECTIVE_VARS) if len(form.vars) == 3 \
                else form
        if not is_homogeneous(form):
            raise InvalidInputError("curve form must be homogeneous")
        d = form.total_degree()
        if degree is not None and degree != d:
            raise InvalidInputError(f"declared degree {degree} != {d}")
        self.form = form
        self.degree = d
        self.field = form.field
        self._decomposition = None

    @property
    def decomposition(self):
        if self._decomposition is None:
            self._decomposition = squarefree_decompose(self.form)
        return self._decomposition

    @property
    def reduced(self) -> bool:
        return self.decomposition.is_reduced()

    def affine(self, chart: str = "Z") -> MultiPoly:
        return dehomogenize(self.form, chart)

    def components(self):
        """(reduced factor, multiplicity) pairs of the defining form."""
        return list(self.decomposition)

    def __str__(self):
        return str(self.form)

    def __repr__(self):
        return f"Curve({self.form}, degree={self.degree})"


class ProjectivePoint:
    """Normalized homogeneous coordinates; the first nonzero one is 1."""

    def __init__(self, coords, field):
        coords = [field.of(c) for c in coords]
        if all(not c for c in coords):
            raise InvalidInputError("all projective coordinates vanish")
        pivot = next(c for c in coords if c)
        self.coords = tuple(c / pivot for c in coords)
        self.field = field

    @property
    def chart(self) -> str:
        # the standard chart this point is finite in
        if self.coords[2]:
            return "Z"
        if self.coords[1]:
            return "Y"
        return "X"

    def affine_pair(self):
        """The two affine coordinates in this point's chart."""
        X, Y, Z = self.coords
        if self.chart == "Z":
            return (X / Z, Y / Z)
        if self.chart == "Y":
            return (X / Y, Z / Y)
        return (Y / X, Z / X)

    def __eq__(self, other):
        return (isinstance(other, ProjectivePoint)
                and self.coords == other.coords)

    def __hash__(self):
        return hash(self.coords)

    def __str__(self):
        return "[" + ":".join(str(c) for c in self.coords) + "]"

    def __repr__(self):
        return f"ProjectivePoint({self})"


@dataclass
class PointCluster:
    """A Galois orbit of intersection points over Q, carried exactly.

    ``minpoly`` is an irreducible factor of the (sheared) eliminant; the
    orbit has ``degree`` conjugate points, each of local multiplicity the
    engines compute at the materialized representative.  The cluster
    contributes degree * multiplicity to the Bezout total.
    """
    minpoly: MultiPoly
    degree: int
    chart: str
    shear: tuple
    representative: ProjectivePoint = None

    def __str__(self):
        return (f"cluster[deg {self.degree}, chart {self.chart}, "
                f"minpoly {self.minpoly}]")


@dataclass
class MultiplicityReport:
    point: object
    mult_length: int
    mult_resultant: int
    mult_deformation: int
    transversal: bool
    shear: tuple
    seed: int
    precision: object
    weight: int = 1
    conjugates: int = 1

    @property
    def agreed(self) -> bool:
        return self.mult_length == self.mult_resultant == self.mult_deformation

    @property
    def multiplicity(self) -> int:
        return self.mult_length

    def to_dict(self):
        lam, mu = self.shear
        return {
            "point": str(self.point),
            "mult_length": self.mult_length,
            "mult_resultant": self.mult_resultant,
            "mult_deformation": self.mult_deformation,
            "transversal": self.transversal,
            "shear": [str(lam), str(mu)],
            "weight": self.weight,
        }


# ------------------------------------------------------------ the engines

def _origin_checks(f: MultiPoly, g: MultiPoly):
    field = f.field
    xv, yv = f.vars[0], f.vars[1]
    origin = {xv: field.zero, yv: field.zero}
    if f.subs_values(origin).constant_value() or \
            g.subs_values(origin).constant_value():
        raise InvalidInputError("both curves must vanish at the origin")
    d = gcd(f, g)
    if not d.is_constant():
        if not d.subs_values(origin).constant_value():
            raise InfiniteMultiplicityError(
                "curves share a component through the origin")
        raise SharedComponentError("curves share a component")


def mult_length(f: MultiPoly, g: MultiPoly, cutoff_cap: int = None) -> int:
    """Dimension over the base field of the local ring at the origin modulo
    (f, g): the stabilized dimension of polynomials of degree < N modulo
    (f, g, all monomials of degree >= N)."""
    _origin_checks(f, g)
    field = f.field
    d = max(1, f.total_degree())
    e = max(1, g.total_degree())
    if cutoff_cap is None:
        cutoff_cap = 2 * d * e + 4
    prev = None
    for N in range(1, cutoff_cap + 1):
        cur = _local_dim(f, g, N)
        if prev is not None and cur == prev:
            return cur
        prev = cur
    raise BudgetError(f"local dimension did not stabilize below N={cutoff_cap}")


def _local_dim(f: MultiPoly, g: MultiPoly, N: int) -> int:
    field = f.field
    monos = [(i, j) for i in range(N) for j in range(N) if i + j < N]
    index = {m: k for k, m in enumerate(monos)}
    rows = []
    for h in (f, g):
        items = list(h.terms.items())
        for a in range(N):
            for b in range(N - a):
                row = [field.zero] * len(monos)
                nonzero = False
                for (i, j), c in items:
                    i2, j2 = i + a, j + b
                    if i2 + j2 < N:
                        k = index[(i2, j2)]
                        row[k] = row[k] + c
                        nonzero = True
                if nonzero:
                    rows.append(row)
    return len(monos) - _rank(rows, field)


def _rank(rows, field) -> int:
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    col = 0
    r = 0
    while r < len(rows) and col < ncols:
        piv = None
        for i in range(r, len(rows)):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            col += 1
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        for i in range(r + 1, len(rows)):
            if rows[i][col]:
                factor = rows[i][col] * inv
                rows[i] = [ci - factor * cr
                           for ci, cr in zip(rows[i], rows[r])]
        rank += 1
        r += 1
        col += 1
    return rank


def mult_resultant_order(f: MultiPoly, g: MultiPoly) -> int:
    """ord_y Res_x(f, g) for a pair in resultant general position (regular
    in x, constant top x-coefficients, origin the only common zero on the
    line y = 0); equals the local intersection multiplicity there."""
    _origin_checks(f, g)
    field = f.field
    xv, yv = f.vars[0], f.vars[1]
    if f.subs_values({yv: field.zero}).is_zero():
        raise NotRegularError(
            "first input vanishes on the x-axis; shear to general position")
    if g.degree_in(xv) > 0 and g.subs_values({yv: field.zero}).is_zero():
        raise NotRegularError(
            "second input vanishes on the x-axis; shear to general position")
    R = resultant(f, g, xv)
    if R.is_zero():
        raise SharedComponentError("identically vanishing resultant")
    yi = R.vars.index(yv)
    return min(e[yi] for e in R.terms)


def mult_deformation(f: MultiPoly, g: MultiPoly, seed: int = 0,
                     prec=None, mode: str = "both",
                     max_retries: int = 8) -> int:
    """Certified infinitesimal solution count at the origin (see the
    deformation engine); "left"/"right" count distinct one-sided nearby
    points."""
    return deformation_count(f, g, seed=seed, prec=prec, mode=mode,
                             max_retries=max_retries).count


def transversality_check(f: MultiPoly, g: MultiPoly) -> bool:
    """True iff both curves are nonsingular at the origin and meet with
    independent tangents (nonzero Jacobian determinant)."""
    field = f.field
    xv, yv = f.vars[0], f.vars[1]
    origin = {xv: field.zero, yv: field.zero}
    if f.subs_values(origin).constant_value() or \
            g.subs_values(origin).constant_value():
        raise InvalidInputError("both curves must vanish at the origin")
    fx = f.derivative(xv).subs_values(origin).constant_value()
    fy = f.derivative(yv).subs_values(origin).constant_value()
    gx = g.derivative(xv).subs_values(origin).constant_value()
    gy = g.derivative(yv).subs_values(origin).constant_value()
    if (not fx and not fy) or (not gx and not gy):
        return False
    return bool(fx * gy - fy * gx)


# ------------------------------------------------------ point enumeration

def _squarefree_part_univar(h: MultiPoly) -> MultiPoly:
    return squarefree_decompose(h).reduced_product(h)


def _solve_fiber(f: MultiPoly, g: MultiPoly, xv: str, yv: str, yval, field):
    """The unique common x over a given y value, or None when the fiber
    holds several distinct common zeros (the shear must be retried)."""
    f0 = f.subs_values({yv: yval})
    g0 = g.subs_values({yv: yval})
    h = gcd(f0, g0)
    if h.is_constant():
        return None
    sf = _squarefree_part_univar(h)
    if sf.degree_in(xv) != 1:
        return None
    c1 = sf.coeff_of(xv, 1).constant_value()
    c0 = sf.coeff_of(xv, 0).constant_value()
    return -c0 / c1


def intersection_points(C1: Curve, C2: Curve, shear_bound: int = 20):
    """Every common point of two curves, each exactly once.

    Affine points come from the Z chart after a joint shear that gives
    distinct points distinct y-coordinates; points at infinity from the
    Z = 0 line.  Over Q, irrational orbits are returned as PointCluster;
    over F_p every conjugate point is materialized.
    """
    if C1.field != C2.field:
        raise InvalidInputError("curves over different fields")
    field = C1.field
    common = gcd(C1.form, C2.form)
    if not common.is_constant():
        raise SharedComponentError("curves share a component")
    points, clusters = _affine_points(C1, C2, shear_bound)
    inf_points, inf_clusters = _infinity_points(C1, C2)
    return points + inf_points, clusters + inf_clusters


def _affine_points(C1: Curve, C2: Curve, shear_bound: int):
    field = C1.field
    f = C1.affine("Z")
    g = C2.affine("Z")
    if f.is_constant() or g.is_constant():
        return [], []  # a curve with no affine part in this chart
    xv, yv = f.vars[0], f.vars[1]
    last_exc = None
    tried_shears = 0
    from .algebra import apply_shear, _shear_candidates, _strongly_regular_in_x
    for lam, mu in _shear_candidates(field, shear_bound):
        fs = apply_shear(f, lam, mu)
        gs = apply_shear(g, lam, mu)
        if not (_strongly_regular_in_x(fs) and _strongly_regular_in_x(gs)):
            continue
        tried_shears += 1
        R = resultant(fs, gs, xv)
        if R.is_zero():
            raise SharedComponentError("identically vanishing eliminant")
        if not R.involves(yv):
            return [], []  # no affine intersections
        points, clusters = [], []
        ok = True
        rational_roots, factor_clusters = roots_univariate(R, yv)
        for y0, mult in rational_roots:
            x0 = _solve_fiber(fs, gs, xv, yv, y0, field)
            if x0 is None:
                ok = False
                break
            xo, yo = _unshear(x0, y0, lam, mu)
            points.append(ProjectivePoint((xo, yo, field.one), field))
        if not ok:
            continue
        for minpoly, mult in factor_clusters:
            k = minpoly.degree_in(yv)
            ext = ExtensionField(field, [minpoly.coeff_of(yv, n).constant_value()
                                         for n in range(k + 1)], gen_name="r")
            fe = lift_to_field(fs, ext)
            ge = lift_to_field(gs, ext)
            x0 = _solve_fiber(fe, ge, xv, yv, ext.gen, ext)
            if x0 is None:
                ok = False
                break
            xo, yo = _unshear(x0, ext.gen, ext.of(lam), ext.of(mu))
            rep = ProjectivePoint((xo, yo, ext.one), ext)
            if field.characteristic:
                points.extend(_frobenius_orbit(rep, ext, k))
            else:
                clusters.append(PointCluster(minpoly, k, "Z",
                                             (lam, mu), rep))
        if ok:
            return points, clusters
        last_exc = GeneralPositionError(
            "a fiber held two distinct common zeros", tried=[(lam, mu)])
    if last_exc is not None:
        raise last_exc
    raise GeneralPositionError(
        f"no shear with bound {shear_bound} separated the affine points")


def _unshear(x0, y0, lam, mu):
    """Sheared-frame coordinates back to the original affine frame."""
    return x0, (y0 - lam * x0) / mu


def _frobenius_orbit(rep: ProjectivePoint, ext: ExtensionField, k: int):
    p = ext.characteristic
    out = []
    seen = set()
    X, Y, Z = rep.coords
    for i in range(k):
        q = p ** i
        pt = ProjectivePoint((X ** q, Y ** q, Z ** q), ext)
        if pt not in seen:
            seen.add(pt)
            out.append(pt)
    return out


def _infinity_points(C1: Curve, C2: Curve):
    field = C1.field
    B1 = C1.form.subs_values({"Z": field.zero})
    B2 = C2.form.subs_values({"Z": field.zero})
    if B1.is_zero() and B2.is_zero():
        raise SharedComponentError("both curves contain the infinity line")
    points, clusters = [], []
    # [1:0:0] lies on a curve iff its X^d coefficient vanishes
    def through_100(B, C):
        return not B.coeff_of("X", C.degree).constant_value()
    if (B1.is_zero() or through_100(B1, C1)) and \
            (B2.is_zero() or through_100(B2, C2)):
        points.append(ProjectivePoint((field.one, field.zero, field.zero),
                                      field))
    # remaining infinity points are [x:1:0]
    b1 = B1.subs_values({"Y": field.one}) if not B1.is_zero() else None
    b2 = B2.subs_values({"Y": field.one}) if not B2.is_zero() else None
    if b1 is None:
        h = b2
    elif b2 is None:
        h = b1
    else:
        h = gcd(b1, b2)
    if h is None or h.is_constant():
        return points, clusters
    rational_roots, factor_clusters = roots_univariate(h, "X")
    for x0, mult in rational_roots:
        points.append(ProjectivePoint((x0, field.one, field.zero), field))
    for minpoly, mult in factor_clusters:
        k = minpoly.degree_in("X")
        ext = ExtensionField(field, [minpoly.coeff_of("X", n).constant_value()
                                     for n in range(k + 1)], gen_name="r")
        rep = ProjectivePoint((ext.gen, ext.one, ext.zero), ext)
        if field.characteristic:
            points.extend(_frobenius_orbit(rep, ext, k))
        else:
            clusters.append(PointCluster(minpoly, k, "Y", (0, 1), rep))
    return points, clusters


# --------------------------------------------------------------- reports

def _local_pair_at(C1: Curve, C2: Curve, point: ProjectivePoint):
    """Translate both curves into the point's chart with the point at the
    affine origin.  The chart coordinates are renamed to (x, y) so every
    engine sees the standard frame."""
    chart = point.chart
    f = dehomogenize(C1.form, chart).rename_vars(("x", "y"))
    g = dehomogenize(C2.form, chart).rename_vars(("x", "y"))
    px, py = point.affine_pair()
    return translate_to_origin(f, (px, py)), translate_to_origin(g, (px, py))


def multiplicities_at(C1: Curve, C2: Curve, point: ProjectivePoint,
                      seed: int = 0, prec=None,
                      max_retries: int = 8) -> MultiplicityReport:
    """All three engines at one point, with exact agreement enforced."""
    f0, g0 = _local_pair_at(C1, C2, point)
    m_len = mult_length(f0, g0)
    fs, gs, lam, mu = shear_to_general_position(f0, g0, mode="resultant")
    m_res = mult_resultant_order(fs, gs)
    outcome = deformation_count(f0, g0, seed=seed, prec=prec,
                                max_retries=max_retries)
    trans = transversality_check(f0, g0)
    report = MultiplicityReport(
        point=point, mult_length=m_len, mult_resultant=m_res,
        mult_deformation=outcome.count, transversal=trans,
        shear=(lam, mu), seed=outcome.seed_used,
        precision=outcome.precision)
    if not report.agreed:
        raise VerificationFailureError(
            f"engine disagreement at {point}: length={m_len} "
            f"resultant={m_res} deformation={outcome.count}", report=report)
    if trans and report.multiplicity != 1:
        raise VerificationFailureError(
            f"transverse point with multiplicity != 1 at {point}",
            report=report)
    return report


@dataclass
class BezoutResult:
    total: int
    expected: int
    reports: list

    @property
    def verified(self) -> bool:
        return self.total == self.expected


def bezout_sum(C1: Curve, C2: Curve, seed: int = 0, prec=None,
               max_retries: int = 8) -> BezoutResult:
    """Sum the local multiplicities over every intersection point and check
    the total against degree(C1) * degree(C2)."""
    points, clusters = intersection_points(C1, C2)
    reports = []
    seen_orbits = {}
    for pt in sorted(points, key=lambda p: (p.chart, str(p))):
        orbit_key = _orbit_key(pt)
        if orbit_key in seen_orbits:
            base = seen_orbits[orbit_key]
            reports.append(MultiplicityReport(
                point=pt, mult_length=base.mult_length,
                mult_resultant=base.mult_resultant,
                mult_deformation=base.mult_deformation,
                transversal=base.transversal, shear=base.shear,
                seed=base.seed, precision=base.precision,
                conjugates=base.conjugates))
            continue
        rep = multiplicities_at(C1, C2, pt, seed=seed, prec=prec,
                                max_retries=max_retries)
        seen_orbits[orbit_key] = rep
        reports.append(rep)
    for cl in sorted(clusters, key=lambda c: (c.chart, str(c.minpoly))):
        rep = multiplicities_at(C1, C2, cl.representative, seed=seed,
                                prec=prec, max_retries=max_retries)
        rep.point = cl
        rep.weight = cl.degree * rep.multiplicity
        reports.append(rep)
    total = 0
    for rep in reports:
        if isinstance(rep.point, PointCluster):
            total += rep.weight
        else:
            total += rep.multiplicity
            rep.weight = rep.multiplicity
    expected = C1.degree * C2.degree
    result = BezoutResult(total, expected, reports)
    if total != expected:
        raise VerificationFailureError(
            f"Bezout total {total} != {expected}", report=result)
    return result


def _orbit_key(pt: ProjectivePoint):
    """Conjugate points over F_p share multiplicities; key their orbit."""
    if isinstance(pt.field, ExtensionField) and pt.field.characteristic:
        p = pt.field.characteristic
        k = pt.field.degree
        images = []
        X, Y, Z = pt.coords
        for i in range(k):
            q = p ** i
            images.append(ProjectivePoint((X ** q, Y ** q, Z ** q),
                                          pt.field))
        return frozenset(ppt.coords for ppt in images)
    return pt.coords


# ------------------------------------------------------------ bilinearity

def bilinearity_expand(C1: Curve, C2: Curve, point: ProjectivePoint,
                       seed: int = 0):
    """(total, table): the weighted sum of pairwise component
    multiplicities sum(n_i * e_j * I(G_i, H_j, p)) with each I computed on
    the reduced factors by the length engine."""
    chart = point.chart
    px, py = point.affine_pair()
    table = []
    total = 0
    for Gi, ni in C1.components():
        gi = dehomogenize(Gi, chart).rename_vars(("x", "y"))
        gi0 = translate_to_origin(gi, (px, py))
        for Hj, ej in C2.components():
            hj = dehomogenize(Hj, chart).rename_vars(("x", "y"))
            hj0 = translate_to_origin(hj, (px, py))
            origin = {gi0.vars[0]: point.field.zero,
                      gi0.vars[1]: point.field.zero}
            if gi0.subs_values(origin).constant_value() or \
                    hj0.subs_values(origin).constant_value():
                continue  # this component pair misses the point
            m = mult_length(gi0, hj0)
            table.append((ni, ej, m))
            total += ni * ej * m
    return total, table
