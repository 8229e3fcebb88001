import pytest

from curveint.deformation import (deform_polynomial, deformation_count,
                                  derived_seed, random_direction,
                                  two_scale_analysis)
from curveint.errors import InfiniteMultiplicityError, InvalidInputError
from curveint.fields import QQ, PrimeField
from curveint.poly import MultiPoly

V = ("x", "y")


def xy(field=QQ):
    return (MultiPoly.var(field, V, "x"), MultiPoly.var(field, V, "y"))


CLASSICAL = [
    ("transverse lines", lambda x, y: (x, y), 1),
    ("tangent conics", lambda x, y: (x * x - y, x * x - 2 * y), 2),
    ("cusp vs horizontal", lambda x, y: (x * x - y ** 3, y), 2),
    ("cusp vs vertical", lambda x, y: (x * x - y ** 3, x), 3),
    ("double parabola vs line", lambda x, y: ((y - x * x) ** 2, x), 2),
    ("nonreduced vs transverse", lambda x, y: (x * x * y, x + y), 3),
]


@pytest.mark.parametrize("label,make,expected", CLASSICAL)
def test_classical_counts(label, make, expected):
    x, y = xy()
    f, g = make(x, y)
    assert deformation_count(f, g, seed=42).count == expected


def test_seed_invariance():
    x, y = xy()
    f, g = x * x - y ** 3, y - x
    counts = {deformation_count(f, g, seed=s).count for s in (0, 1, 7, 123)}
    assert counts == {2}


def test_precision_invariance():
    # doubled precision, same count
    x, y = xy()
    f, g = x * x - y, x * x - 2 * y
    base = deformation_count(f, g, seed=4)
    doubled = deformation_count(f, g, seed=4, prec=2 * base.precision)
    assert base.count == doubled.count


def test_counts_over_prime_fields():
    for p in (7, 101):
        F = PrimeField(p)
        x, y = xy(F)
        assert deformation_count(x * x - y ** 3, y, seed=3).count == 2
        assert deformation_count(x * x - y, x * x - 2 * y, seed=3).count == 2


def test_shared_component_through_origin():
    x, y = xy()
    with pytest.raises(InfiniteMultiplicityError):
        deformation_count(x * (y - x), x * (y + x), seed=1)


def test_both_must_vanish_at_origin():
    x, y = xy()
    with pytest.raises(InvalidInputError):
        deformation_count(x + 1, y, seed=1)


def test_deform_polynomial_structure():
    x, y = xy()
    rng_dir = MultiPoly.const(QQ, V, 1)
    out = deform_polynomial(x * x - y, rng_dir)
    assert out.vars == ("x", "y", "t")
    assert out.subs_values({"t": QQ.zero}).drop_vars(["t"]) == x * x - y


def test_zero_direction_rejected():
    x, y = xy()
    with pytest.raises(InvalidInputError):
        deform_polynomial(x, MultiPoly.zero(QQ, V))


def test_one_sided_counts_are_cardinalities():
    x, y = xy()
    # deforming the doubled curve splits it: two distinct nearby points
    assert deformation_count((y - x * x) ** 2, x, seed=3, mode="left").count == 2
    # deforming only the line leaves one (doubly covered) nearby point
    assert deformation_count((y - x * x) ** 2, x, seed=3, mode="right").count == 1


def test_two_scale_group_structure():
    x, y = xy()
    a = two_scale_analysis(x * x - y, x * x - 2 * y, seed=5, coarse_side="left")
    assert sum(k * m for k, m in a.groups) == 2
    assert a.groups == [(2, 1)]  # two conjugate coarse points, simple fine
    b = two_scale_analysis((y - x * x) ** 2, x, seed=5, coarse_side="right")
    assert b.groups == [(1, 2)]  # one coarse point of fine multiplicity 2


def test_derived_seed_deterministic():
    assert derived_seed(42, 3) == derived_seed(42, 3)
    assert derived_seed(42, 3) != derived_seed(42, 4)


def test_random_direction_full_family():
    import random as _r
    rng = _r.Random(0)
    d = random_direction(rng, QQ, 2)
    assert d.total_degree() <= 2
    assert not d.is_zero()
