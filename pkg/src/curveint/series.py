"""Truncated power series in one infinitesimal parameter.

A series holds coefficients indexed by exponents k/r (ramification index r)
strictly below its precision, the first unknown exponent.  Exponents may be
negative (quotients of series produce them); a series with all known
coefficients zero is only "zero to precision" and its valuation is reported
as None, never as a number.  Constants and polynomials embed with infinite
precision.

All values are immutable; operations return fresh series and never claim
coefficients at or beyond the stated precision.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import InvalidInputError, NotAUnitError, NotSpecializableError
from .poly import MultiPoly

INF = math.inf


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


class TruncatedSeries:
    __slots__ = ("field", "ram", "coeffs", "prec", "varname")

    def __init__(self, field, coeffs, prec, ram=1, varname="t"):
        self.field = field
        self.ram = int(ram)
        if self.ram < 1:
            raise InvalidInputError("ramification index must be >= 1")
        self.prec = prec if prec == INF else Fraction(prec)
        clean = {}
        for k, c in coeffs.items():
            c = field.of(c)
            if c and Fraction(k, self.ram) < self.prec:
                clean[int(k)] = c
        self.coeffs = clean
        self.varname = varname

    # ------------------------------------------------------------- builders
    @classmethod
    def constant(cls, field, value, prec=INF, varname="t"):
        return cls(field, {0: field.of(value)}, prec, 1, varname)

    @classmethod
    def zero(cls, field, prec=INF, varname="t"):
        return cls(field, {}, prec, 1, varname)

    @classmethod
    def variable(cls, field, prec=INF, varname="t"):
        return cls(field, {1: field.one}, prec, 1, varname)

    @classmethod
    def from_terms(cls, field, terms, prec=INF, varname="t"):
        """terms: iterable of (exponent, coefficient) with Fraction exponents."""
        ram = 1
        items = [(Fraction(e), c) for e, c in terms]
        for e, _ in items:
            ram = _lcm(ram, e.denominator)
        coeffs = {}
        for e, c in items:
            k = int(e * ram)
            coeffs[k] = coeffs.get(k, field.zero) + field.of(c)
        return cls(field, coeffs, prec, ram, varname)

    # ------------------------------------------------------------ structure
    def with_ram(self, new_ram: int) -> "TruncatedSeries":
        if new_ram == self.ram:
            return self
        if new_ram % self.ram:
            raise InvalidInputError("new ramification must be a multiple")
        q = new_ram // self.ram
        return TruncatedSeries(self.field, {k * q: c for k, c in self.coeffs.items()},
                               self.prec, new_ram, self.varname)

    def reduce_ram(self) -> "TruncatedSeries":
        """Smallest ramification index representing the same exponents."""
        if not self.coeffs:
            return TruncatedSeries(self.field, {}, self.prec, 1, self.varname)
        g = self.ram
        for k in self.coeffs:
            g = math.gcd(g, abs(k))
            if g == 1:
                return self
        return TruncatedSeries(self.field, {k // g: c for k, c in self.coeffs.items()},
                               self.prec, self.ram // g, self.varname)

    def valuation(self):
        """Least exponent with a nonzero coefficient, or None if the series
        is zero to its precision."""
        if not self.coeffs:
            return None
        return Fraction(min(self.coeffs), self.ram)

    def effective_valuation(self):
        v = self.valuation()
        return self.prec if v is None else v

    def is_zero_to_precision(self):
        return not self.coeffs

    def is_unit(self):
        v = self.valuation()
        return v == 0

    def coeff_at(self, exponent) -> object:
        e = Fraction(exponent)
        if e >= self.prec:
            raise InvalidInputError("coefficient beyond stated precision")
        k = e * self.ram
        if k.denominator != 1:
            return self.field.zero
        return self.coeffs.get(int(k), self.field.zero)

    def constant_term(self):
        return self.coeff_at(0) if self.prec > 0 else self.field.zero

    def truncate(self, new_prec) -> "TruncatedSeries":
        new_prec = new_prec if new_prec == INF else Fraction(new_prec)
        if new_prec >= self.prec:
            return self
        return TruncatedSeries(self.field, self.coeffs, new_prec, self.ram,
                               self.varname)

    # ----------------------------------------------------------- arithmetic
    def _align(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(self.field, other, INF, self.varname)
        r = _lcm(self.ram, other.ram)
        return self.with_ram(r), other.with_ram(r)

    def __add__(self, other):
        a, b = self._align(other)
        prec = min(a.prec, b.prec)
        out = dict(a.coeffs)
        for k, c in b.coeffs.items():
            s = out.get(k, self.field.zero) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return TruncatedSeries(self.field, out, prec, a.ram, self.varname)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.field, {k: -c for k, c in self.coeffs.items()},
                               self.prec, self.ram, self.varname)

    def __sub__(self, other):
        a, b = self._align(other)
        return a + (-b)

    def __rsub__(self, other):
        a, b = self._align(other)
        return b + (-a)

    def __mul__(self, other):
        a, b = self._align(other)
        va = a.effective_valuation()
        vb = b.effective_valuation()
        prec = min(a.prec + vb, b.prec + va) if (a.prec != INF or b.prec != INF) else INF
        out = {}
        zero = self.field.zero
        bound = INF if prec == INF else prec * a.ram
        for k1, c1 in a.coeffs.items():
            for k2, c2 in b.coeffs.items():
                k = k1 + k2
                if bound != INF and k >= bound:
                    continue
                s = out.get(k, zero) + c1 * c2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return TruncatedSeries(self.field, out, prec, a.ram, self.varname)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            inv = TruncatedSeries.constant(self.field, 1, INF, self.varname) / self
            return inv ** (-n)
        result = TruncatedSeries.constant(self.field, 1, INF, self.varname)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def invert_unit(self) -> "TruncatedSeries":
        """Inverse of a valuation-zero series, to the same precision."""
        v = self.valuation()
        if v is None or v != 0:
            raise NotAUnitError("series is not a unit (valuation != 0)")
        if self.prec == INF and len(self.coeffs) == 1:
            return TruncatedSeries(self.field, {0: 1 / self.coeffs[0]}, INF,
                                   1, self.varname)
        if self.prec == INF:
            raise InvalidInputError(
                "cannot invert a non-monomial exact series; truncate first")
        c0 = self.coeffs[0]
        inv0 = 1 / c0
        bound = int(math.ceil(self.prec * self.ram))
        out = {0: inv0}
        zero = self.field.zero
        for k in range(1, bound):
            acc = zero
            for j, cj in self.coeffs.items():
                if 0 < j <= k and (k - j) in out:
                    acc = acc + cj * out[k - j]
            val = -inv0 * acc
            if val:
                out[k] = val
        return TruncatedSeries(self.field, out, self.prec, self.ram, self.varname)

    def __truediv__(self, other):
        a, b = self._align(other)
        vb = b.valuation()
        if vb is None:
            raise ZeroDivisionError("division by a series that is zero to precision")
        if vb == 0:
            return a * b.invert_unit()
        unit_part = _shift_exponents(b, -vb)
        return _shift_exponents(a * unit_part.invert_unit(), -vb)

    def __rtruediv__(self, other):
        a, b = self._align(other)
        return b / a

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            a, b = self._align(other)
            return a.coeffs == b.coeffs and a.prec == b.prec
        return NotImplemented

    def __hash__(self):
        return hash((self.ram, self.prec, frozenset(self.coeffs.items())))

    # -------------------------------------------------------------- queries
    def agrees_with(self, other, below) -> bool:
        """Coefficientwise equality at all exponents < ``below``."""
        a, b = self._align(other)
        below = Fraction(below)
        if min(a.prec, b.prec) < below:
            raise InvalidInputError("comparison range exceeds precision")
        keys = set(a.coeffs) | set(b.coeffs)
        zero = self.field.zero
        for k in keys:
            if Fraction(k, a.ram) < below:
                if a.coeffs.get(k, zero) != b.coeffs.get(k, zero):
                    return False
        return True

    def specialize(self):
        """Constant term; the image with the infinitesimal set to zero."""
        v = self.valuation()
        if v is not None and v < 0:
            raise NotSpecializableError(
                "negative valuation: no standard part exists")
        if self.prec <= 0:
            raise NotSpecializableError("precision too small to read t=0")
        return self.constant_term()

    # ------------------------------------------------------------- printing
    def __str__(self):
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            e = Fraction(k, self.ram)
            cs = str(c)
            if ("+" in cs[1:]) or ("-" in cs[1:]) or ("*" in cs):
                cs = f"({cs})"
            if e == 0:
                parts.append(cs)
            else:
                es = str(e) if e.denominator == 1 else f"({e})"
                body = f"{self.varname}^{es}" if e != 1 else self.varname
                if cs == "1":
                    parts.append(body)
                elif cs == "-1":
                    parts.append("-" + body)
                else:
                    parts.append(f"{cs}*{body}")
        if self.prec != INF:
            p = self.prec
            ps = str(p) if p.denominator == 1 else f"({p})"
            parts.append(f"O({self.varname}^{ps})")
        if not parts:
            return "0"
        text = parts[0]
        for piece in parts[1:]:
            if piece.startswith("-"):
                text += " - " + piece[1:]
            else:
                text += " + " + piece
        return text

    def __repr__(self):
        return f"TruncatedSeries({self})"


def _shift_exponents(s: TruncatedSeries, delta) -> TruncatedSeries:
    delta = Fraction(delta)
    r = _lcm(s.ram, delta.denominator)
    s2 = s.with_ram(r)
    d = int(delta * r)
    return TruncatedSeries(s.field, {k + d: c for k, c in s2.coeffs.items()},
                           s2.prec + delta if s2.prec != INF else INF, r, s.varname)


def shift_exponents(s: TruncatedSeries, delta) -> TruncatedSeries:
    """Multiply by t^delta (delta may be a negative Fraction)."""
    return _shift_exponents(s, delta)


def rescale_exponents(s: TruncatedSeries, b: int) -> TruncatedSeries:
    """Reinterpret a series in s as a series in t with s = t^(1/b)."""
    return TruncatedSeries(s.field, dict(s.coeffs),
                           s.prec / b if s.prec != INF else INF,
                           s.ram * b, s.varname)


def eval_poly_at_series(f: MultiPoly, assignment: dict) -> TruncatedSeries:
    """Evaluate a polynomial with every variable bound to a series or scalar."""
    field = f.field
    varname = "t"
    series_args = {}
    for v in f.vars:
        val = assignment[v]
        if not isinstance(val, TruncatedSeries):
            val = TruncatedSeries.constant(field, val)
        series_args[v] = val
        if val.coeffs or val.prec != INF:
            varname = val.varname
    total = TruncatedSeries.zero(field, INF, varname)
    powers = {v: {0: TruncatedSeries.constant(field, 1, INF, varname)}
              for v in f.vars}
    for exps, c in f.terms.items():
        term = TruncatedSeries.constant(field, c, INF, varname)
        for v, e in zip(f.vars, exps):
            if not e:
                continue
            cache = powers[v]
            if e not in cache:
                q = max(cache)
                acc = cache[q]
                while q < e:
                    acc = acc * series_args[v]
                    q += 1
                    cache[q] = acc
            term = term * cache[e]
        total = total + term
    return total


def series_invert(u: TruncatedSeries) -> TruncatedSeries:
    """Inverse of a unit series; u * result == 1 to u's precision."""
    return u.invert_unit()
