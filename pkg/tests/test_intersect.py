import pytest

from curveint.algebra import apply_shear, homogenize, shear_to_general_position
from curveint.errors import (InfiniteMultiplicityError, NotRegularError,
                             SharedComponentError)
from curveint.fields import QQ, ExtensionField, PrimeField
from curveint.intersect import (Curve, PointCluster, ProjectivePoint,
                                bezout_sum, bilinearity_expand,
                                intersection_points, mult_deformation,
                                mult_length, mult_resultant_order,
                                multiplicities_at, transversality_check)
from curveint.poly import MultiPoly

from oracles import local_dim_oracle

V = ("x", "y")
P3 = ("X", "Y", "Z")


def xy(field=QQ):
    return (MultiPoly.var(field, V, "x"), MultiPoly.var(field, V, "y"))


def curve(f, d=None):
    return Curve(homogenize(f, d if d is not None else f.total_degree()))


# ------------------------------------------------------------- mult_length

def test_length_transverse_lines():
    x, y = xy()
    assert mult_length(x, y) == 1


def test_length_cusp_against_axes():
    x, y = xy()
    assert mult_length(x * x - y ** 3, y) == 2
    assert mult_length(x * x - y ** 3, x) == 3


def test_length_matches_independent_oracle():
    x, y = xy()
    for f, g in [(x * x - y, x * x - 2 * y),
                 ((y - x * x) ** 2, x),
                 (x * y, x - y),
                 (x ** 3 - y ** 3, x + y)]:
        assert mult_length(f, g) == local_dim_oracle(f, g)


def test_length_shared_component_through_origin():
    x, y = xy()
    with pytest.raises(InfiniteMultiplicityError):
        mult_length(x * y, x * (x + y))


# ---------------------------------------------------- mult_resultant_order

def test_resultant_order_conic_pair():
    x, y = xy()
    assert mult_resultant_order(x * x - y, x * x - 2 * y) == 2


def test_resultant_order_transverse():
    x, y = xy()
    assert mult_resultant_order(x, y) == 1


def test_resultant_order_requires_regularity():
    x, y = xy()
    with pytest.raises(NotRegularError):
        mult_resultant_order(y, y - x)


def test_resultant_order_after_shear_matches_length():
    x, y = xy()
    f, g = x * x - y ** 3, y - x
    fs, gs, lam, mu = shear_to_general_position(f, g, mode="resultant")
    assert mult_resultant_order(fs, gs) == mult_length(f, g) == 2


# --------------------------------------------------------- transversality

def test_transversality_examples():
    x, y = xy()
    assert transversality_check(x, y) is True
    assert transversality_check(y - x * x, y) is False  # tangent
    assert transversality_check(x * x - y ** 3, x) is False  # singular


def test_transversality_implies_unit_multiplicity():
    x, y = xy()
    pairs = [(x, y), (x + y, x - y), (y - x * x, x + y),
             (x + 2 * y + y * y, y + x * x)]
    for f, g in pairs:
        if transversality_check(f, g):
            assert mult_length(f, g) == 1
            assert mult_deformation(f, g, seed=5) == 1


# ------------------------------------------------------------ shear effect

def test_shear_preserves_all_three_multiplicities():
    x, y = xy()
    f, g = x * x - y ** 3, y - x
    lam, mu = QQ.of(2), QQ.of(1)
    fsh, gsh = apply_shear(f, lam, mu), apply_shear(g, lam, mu)
    assert mult_length(f, g) == mult_length(fsh, gsh)
    assert mult_deformation(f, g, seed=7) == mult_deformation(fsh, gsh, seed=7)
    fs1, gs1, *_ = shear_to_general_position(f, g, mode="resultant")
    fs2, gs2, *_ = shear_to_general_position(fsh, gsh, mode="resultant")
    assert mult_resultant_order(fs1, gs1) == mult_resultant_order(fs2, gs2)


def test_shear_invariance_across_corpus_pairs():
    from curveint.cli import parse_field, parse_poly
    from curveint.corpus import affine_instances
    lam, mu = 3, 2
    for name, ftext, gtext, fieldname in affine_instances():
        field, _ = parse_field(fieldname)
        f = parse_poly(ftext, field, V)
        g = parse_poly(gtext, field, V)
        fsh = apply_shear(f, field.of(lam), field.of(mu))
        gsh = apply_shear(g, field.of(lam), field.of(mu))
        assert mult_length(f, g) == mult_length(fsh, gsh), name


# ------------------------------------------------------------------ points

def test_points_two_lines():
    CX = Curve(MultiPoly.var(QQ, P3, "X"))
    CY = Curve(MultiPoly.var(QQ, P3, "Y"))
    pts, cls = intersection_points(CX, CY)
    assert [str(p) for p in pts] == ["[0:0:1]"] and not cls


def test_points_cusp_vs_infinity_line():
    x, y = xy()
    cusp = curve(x * x - y ** 3)
    CY = Curve(MultiPoly.var(QQ, P3, "Y"))
    pts, cls = intersection_points(cusp, CY)
    assert sorted(str(p) for p in pts) == ["[0:0:1]", "[1:0:0]"]
    assert not cls


def test_points_conic_vs_far_line_cluster():
    x, y = xy()
    conic = curve(x * x + y * y - 1)
    line = curve(x - 3)
    pts, cls = intersection_points(conic, line)
    assert not pts and len(cls) == 1
    cl = cls[0]
    assert cl.degree == 2
    yv = cl.minpoly.vars[1]
    assert cl.minpoly == MultiPoly.var(QQ, cl.minpoly.vars, yv) ** 2 + 8


def test_points_shared_component_rejected():
    x, y = xy()
    a = curve(x * y, 2)
    b = curve(x * (x + y), 2)
    with pytest.raises(SharedComponentError):
        intersection_points(a, b)


def test_points_fp_conjugates_materialized():
    F = PrimeField(7)
    x, y = xy(F)
    conic = Curve(homogenize(x * x + y * y - 1, 2))
    line = Curve(homogenize(x - 3, 1))
    pts, cls = intersection_points(conic, line)
    assert not cls and len(pts) == 2
    assert all(isinstance(p.field, ExtensionField) for p in pts)


# ------------------------------------------------------------------ bezout

def test_bezout_two_lines():
    CX = Curve(MultiPoly.var(QQ, P3, "X"))
    CY = Curve(MultiPoly.var(QQ, P3, "Y"))
    res = bezout_sum(CX, CY, seed=1)
    assert res.total == res.expected == 1


def test_bezout_cusp_vs_infinity_line():
    x, y = xy()
    res = bezout_sum(curve(x * x - y ** 3),
                     Curve(MultiPoly.var(QQ, P3, "Y")), seed=1)
    assert res.total == res.expected == 3
    weights = {str(r.point): r.weight for r in res.reports}
    assert weights == {"[0:0:1]": 2, "[1:0:0]": 1}


def test_bezout_double_line():
    x, y = xy()
    res = bezout_sum(curve((x - y) ** 2), curve(x), seed=1)
    assert res.total == res.expected == 2
    assert len(res.reports) == 1 and res.reports[0].weight == 2


def test_bezout_cluster_weighting():
    x, y = xy()
    res = bezout_sum(curve(x * x + y * y - 1), curve(x - 3), seed=1)
    assert res.total == res.expected == 2
    rep = res.reports[0]
    assert isinstance(rep.point, PointCluster)
    assert rep.weight == 2 and rep.multiplicity == 1


def test_bezout_fp_total():
    F = PrimeField(101)
    x, y = xy(F)
    res = bezout_sum(Curve(homogenize(x * x - y ** 3, 3)),
                     Curve(homogenize(y - x, 1)), seed=1)
    assert res.total == res.expected == 3


# ------------------------------------------------------------- bilinearity

def test_bilinearity_double_parabola():
    x, y = xy()
    C1 = curve((y - x * x) ** 2)
    C2 = curve(x)
    origin = ProjectivePoint((0, 0, 1), QQ)
    total, table = bilinearity_expand(C1, C2, origin)
    assert total == 2
    assert table == [(2, 1, 1)]
    assert total == mult_length((y - x * x) ** 2, x)


def test_bilinearity_mixed_components():
    x, y = xy()
    C1 = curve(x * x * y, 3)
    C2 = curve(x + y)
    origin = ProjectivePoint((0, 0, 1), QQ)
    total, table = bilinearity_expand(C1, C2, origin)
    assert total == 3
    assert sorted(table) == [(1, 1, 1), (2, 1, 1)]
    assert total == mult_length(x * x * y, x + y)


def test_bilinearity_reduced_equals_length():
    x, y = xy()
    C1 = curve(x * x - y ** 3)
    C2 = curve(y - x)
    origin = ProjectivePoint((0, 0, 1), QQ)
    total, _ = bilinearity_expand(C1, C2, origin)
    assert total == mult_length(x * x - y ** 3, y - x)


# ------------------------------------------------------------- per-point

def test_multiplicities_at_detects_agreement():
    x, y = xy()
    C1 = curve(x * x - y ** 3)
    C2 = curve(y - x)
    rep = multiplicities_at(C1, C2, ProjectivePoint((0, 0, 1), QQ), seed=2)
    assert rep.agreed and rep.multiplicity == 2
    rep1 = multiplicities_at(C1, C2, ProjectivePoint((1, 1, 1), QQ), seed=2)
    assert rep1.agreed and rep1.multiplicity == 1 and rep1.transversal
