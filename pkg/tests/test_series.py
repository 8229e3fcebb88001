import pytest
from fractions import Fraction

from curveint.errors import (InvalidInputError, NotAUnitError,
                             NotSpecializableError)
from curveint.fields import QQ, PrimeField
from curveint.poly import MultiPoly
from curveint.series import (INF, TruncatedSeries, eval_poly_at_series,
                             rescale_exponents, series_invert,
                             shift_exponents)


def t_var(prec=INF):
    return TruncatedSeries.variable(QQ).truncate(prec)


def one(prec=INF):
    return TruncatedSeries.constant(QQ, 1).truncate(prec)


def test_invert_identity():
    assert series_invert(one()) == one()


def test_invert_geometric():
    s = (one() + t_var()).truncate(3)
    inv = series_invert(s)
    assert inv.coeff_at(0) == 1
    assert inv.coeff_at(1) == -1
    assert inv.coeff_at(2) == 1
    assert inv.prec == 3


def test_invert_two_plus_t():
    s = (TruncatedSeries.constant(QQ, 2) + t_var()).truncate(2)
    inv = series_invert(s)
    assert inv.coeff_at(0) == Fraction(1, 2)
    assert inv.coeff_at(1) == Fraction(-1, 4)
    prod = s * inv
    assert prod.coeff_at(0) == 1 and prod.coeff_at(1) == 0


def test_invert_requires_unit():
    with pytest.raises(NotAUnitError):
        series_invert(t_var(4))
    with pytest.raises(NotAUnitError):
        series_invert(TruncatedSeries.zero(QQ, 3))


def test_precision_never_inflated_by_multiplication():
    a = t_var(3)          # t + O(t^3)
    b = t_var(5)          # t + O(t^5)
    p = a * b             # t^2 + O(t^4): min(3+1, 5+1)
    assert p.prec == 4
    assert p.coeff_at(2) == 1


def test_zero_to_precision_valuation_is_none():
    z = TruncatedSeries.zero(QQ, 5)
    assert z.is_zero_to_precision()
    assert z.valuation() is None


def test_coefficient_beyond_precision_rejected():
    s = t_var(3)
    with pytest.raises(InvalidInputError):
        s.coeff_at(3)


def test_division_with_valuation_shift():
    num = shift_exponents(one(4), 1)      # t + O(t^5)
    den = (t_var() * t_var()).truncate(6)  # t^2 + O(t^6)
    q = num / den
    assert q.valuation() == -1


def test_ramified_square():
    r = TruncatedSeries.from_terms(QQ, [(Fraction(1, 2), 1)], prec=3)
    sq = r * r
    assert sq.valuation() == 1
    assert sq.coeff_at(1) == 1


def test_rescale_and_shift_exponents():
    s = t_var(4)
    d = rescale_exponents(s, 2)   # series in t^(1/2)
    assert d.valuation() == Fraction(1, 2)
    u = shift_exponents(d, Fraction(1, 2))
    assert u.valuation() == 1


def test_specialize_constant_term():
    s = one() + t_var(5).truncate(5) * Fraction(1, 2)
    assert s.specialize() == 1


def test_specialize_negative_valuation_rejected():
    s = shift_exponents(one(3), -1)
    with pytest.raises(NotSpecializableError):
        s.specialize()


def test_agrees_with():
    a = one(6) + t_var(6)
    b = one(6) + t_var(6) + shift_exponents(one(6), 3).truncate(6)
    assert a.agrees_with(b, 3)
    assert not a.agrees_with(b, 4)


def test_eval_poly_at_series():
    V = ("x", "y")
    x = MultiPoly.var(QQ, V, "x")
    y = MultiPoly.var(QQ, V, "y")
    f = x * x - y
    r = TruncatedSeries.from_terms(QQ, [(Fraction(1, 2), 1)], prec=4)
    val = eval_poly_at_series(f, {"x": r, "y": t_var(4)})
    assert val.is_zero_to_precision()


def test_fp_series():
    F = PrimeField(7)
    s = (TruncatedSeries.constant(F, 3)
         + TruncatedSeries.variable(F)).truncate(3)
    inv = series_invert(s)
    assert (s * inv).coeff_at(0) == 1
    assert (s * inv).coeff_at(1) == 0


def test_printable_form():
    s = one(3) + t_var(3) * Fraction(1, 2)
    assert str(s) == "1 + 1/2*t + O(t^3)"
    r = TruncatedSeries.from_terms(QQ, [(Fraction(1, 2), 1)], prec=2)
    assert str(r) == "t^(1/2) + O(t^2)"
    assert str(TruncatedSeries.zero(QQ, 2)) == "O(t^2)"
