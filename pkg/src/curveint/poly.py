"""Sparse multivariate polynomials over an exact field.

Terms live in a dict from exponent tuples to nonzero coefficients; the
zero polynomial has an empty term map.  Values are immutable once built;
every operation returns a fresh polynomial.  Printing uses graded
lexicographic order on the declared variable list.
"""

from __future__ import annotations

from .errors import InvalidInputError
from .fields import Field


class MultiPoly:
    __slots__ = ("field", "vars", "terms", "_hash")

    def __init__(self, field: Field, variables, terms=None):
        self.field = field
        self.vars = tuple(variables)
        clean = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != len(self.vars):
                    raise InvalidInputError("exponent vector length mismatch")
                c = field.of(c)
                if c:
                    clean[tuple(int(e) for e in exps)] = c
        self.terms = clean
        self._hash = None

    # ---------------------------------------------------------------- build
    @classmethod
    def zero(cls, field, variables):
        return cls(field, variables, {})

    @classmethod
    def const(cls, field, variables, value):
        variables = tuple(variables)
        return cls(field, variables, {(0,) * len(variables): field.of(value)})

    @classmethod
    def var(cls, field, variables, name, power=1):
        variables = tuple(variables)
        exps = [0] * len(variables)
        exps[variables.index(name)] = power
        return cls(field, variables, {tuple(exps): field.one})

    def clone(self, terms):
        return MultiPoly(self.field, self.vars, terms)

    # ------------------------------------------------------------ structure
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def constant_value(self):
        zero_key = (0,) * len(self.vars)
        return self.terms.get(zero_key, self.field.zero)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name):
        if not self.terms:
            return -1
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def coeff_of(self, name, power):
        """Coefficient of name**power, as a polynomial in the same variables."""
        i = self.vars.index(name)
        out = {}
        for exps, c in self.terms.items():
            if exps[i] == power:
                key = exps[:i] + (0,) + exps[i + 1:]
                out[key] = out.get(key, self.field.zero) + c
        return self.clone(out)

    def coeffs_in(self, name):
        """Dense ascending coefficient list with respect to one variable."""
        d = self.degree_in(name)
        return [self.coeff_of(name, k) for k in range(d + 1)]

    def leading_coeff_in(self, name):
        d = self.degree_in(name)
        if d < 0:
            return self.clone({})
        return self.coeff_of(name, d)

    def involves(self, name):
        return self.degree_in(name) > 0

    def leading_term_key(self):
        """Graded-lex maximal exponent vector."""
        return max(self.terms, key=lambda e: (sum(e), e))

    def leading_coefficient(self):
        if not self.terms:
            return self.field.zero
        return self.terms[self.leading_term_key()]

    # ------------------------------------------------------------ arithmetic
    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise InvalidInputError("variable lists differ")
            return other
        return MultiPoly.const(self.field, self.vars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        zero = self.field.zero
        for exps, c in other.terms.items():
            s = out.get(exps, zero) + c
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return self.clone(out)

    __radd__ = __add__

    def __neg__(self):
        return self.clone({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = self.field.of(other)
            if not c:
                return self.clone({})
            return self.clone({e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        out = {}
        zero = self.field.zero
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(key, zero) + c1 * c2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return self.clone(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise InvalidInputError("negative polynomial power")
        result = MultiPoly.const(self.field, self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c):
        c = self.field.of(c)
        if not c:
            return self.clone({})
        return self.clone({e: v * c for e, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, int):
            return self.is_constant() and self.constant_value() == self.field.of(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # ------------------------------------------------------------- calculus
    def derivative(self, name):
        i = self.vars.index(name)
        out = {}
        for exps, c in self.terms.items():
            e = exps[i]
            if e == 0:
                continue
            nc = c * e
            if not nc:
                continue  # exponent divisible by the characteristic
            key = exps[:i] + (e - 1,) + exps[i + 1:]
            out[key] = out.get(key, self.field.zero) + nc
        return self.clone(out)

    # ----------------------------------------------------------- evaluation
    def evaluate(self, assignment):
        """Substitute field elements for every variable; returns an element."""
        vals = [self.field.of(assignment[v]) for v in self.vars]
        total = self.field.zero
        for exps, c in self.terms.items():
            term = c
            for v, e in zip(vals, exps):
                if e:
                    term = term * v ** e
            total = total + term
        return total

    def subs_values(self, assignment):
        """Substitute field elements for a subset of variables."""
        idx = {self.vars.index(v): self.field.of(val) for v, val in assignment.items()}
        out = {}
        zero = self.field.zero
        for exps, c in self.terms.items():
            term = c
            for i, val in idx.items():
                e = exps[i]
                if e:
                    term = term * val ** e
            if not term:
                continue
            key = tuple(0 if i in idx else e for i, e in enumerate(exps))
            s = out.get(key, zero) + term
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return self.clone(out)

    def compose(self, substitution):
        """Substitute polynomials (same field/vars) for some variables."""
        subs = {}
        for v, p in substitution.items():
            if not isinstance(p, MultiPoly):
                p = MultiPoly.const(self.field, self.vars, p)
            subs[self.vars.index(v)] = p
        one = MultiPoly.const(self.field, self.vars, 1)
        # cache powers per substituted variable
        powers = {i: {0: one} for i in subs}
        result = MultiPoly.zero(self.field, self.vars)
        for exps, c in self.terms.items():
            term = MultiPoly.const(self.field, self.vars, c)
            key = []
            for i, e in enumerate(exps):
                if i in subs:
                    cache = powers[i]
                    if e not in cache:
                        q = max(cache)
                        acc = cache[q]
                        while q < e:
                            acc = acc * subs[i]
                            q += 1
                            cache[q] = acc
                    term = term * cache[e]
                    key.append(0)
                else:
                    key.append(e)
            mono = MultiPoly(self.field, self.vars, {tuple(key): self.field.one})
            result = result + term * mono
        return result

    # -------------------------------------------------------- recoordinate
    def map_coefficients(self, new_field, fn):
        return MultiPoly(new_field, self.vars,
                         {e: fn(c) for e, c in self.terms.items()})

    def rename_vars(self, new_variables):
        if len(new_variables) != len(self.vars):
            raise InvalidInputError("variable count mismatch")
        return MultiPoly(self.field, new_variables, dict(self.terms))

    def extend_vars(self, new_variables):
        """Re-express in a superset variable list (new vars get exponent 0)."""
        new_variables = tuple(new_variables)
        positions = [new_variables.index(v) for v in self.vars]
        out = {}
        for exps, c in self.terms.items():
            key = [0] * len(new_variables)
            for pos, e in zip(positions, exps):
                key[pos] = e
            out[tuple(key)] = c
        return MultiPoly(self.field, new_variables, out)

    def drop_vars(self, names):
        """Remove variables the polynomial does not involve."""
        drop = set(names)
        for n in drop:
            if self.degree_in(n) > 0:
                raise InvalidInputError(f"polynomial involves {n}")
        keep = [i for i, v in enumerate(self.vars) if v not in drop]
        return MultiPoly(self.field, tuple(self.vars[i] for i in keep),
                         {tuple(e[i] for i in keep): c for e, c in self.terms.items()})

    # -------------------------------------------------------------- division
    def exact_divide(self, divisor: "MultiPoly"):
        """Quotient self / divisor; raises if the division is not exact."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return self.clone({})
        rem = dict(self.terms)
        out = {}
        dkey = divisor.leading_term_key()
        dc = divisor.terms[dkey]
        zero = self.field.zero
        while rem:
            rkey = max(rem, key=lambda e: (sum(e), e))
            qkey = tuple(a - b for a, b in zip(rkey, dkey))
            if any(q < 0 for q in qkey):
                raise InvalidInputError("division is not exact")
            qc = rem[rkey] / dc
            out[qkey] = qc
            for e2, c2 in divisor.terms.items():
                key = tuple(a + b for a, b in zip(qkey, e2))
                s = rem.get(key, zero) - qc * c2
                if s:
                    rem[key] = s
                else:
                    rem.pop(key, None)
        return self.clone(out)

    # -------------------------------------------------------------- printing
    def _fmt_coeff(self, c):
        s = str(c)
        if "/" in s or s.startswith("-"):
            return s, False
        return s, False

    def __str__(self):
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda e: (sum(e), e), reverse=True)
        parts = []
        for exps in keys:
            c = self.terms[exps]
            factors = []
            for v, e in zip(self.vars, exps):
                if e == 1:
                    factors.append(v)
                elif e > 1:
                    factors.append(f"{v}^{e}")
            cs = str(c)
            if not factors:
                body = cs
            elif cs == "1":
                body = "*".join(factors)
            elif cs == "-1":
                body = "-" + "*".join(factors)
            else:
                if ("+" in cs[1:]) or ("-" in cs[1:]) or (" " in cs):
                    cs = f"({cs})"
                body = cs + "*" + "*".join(factors)
            parts.append(body)
        text = parts[0]
        for p in parts[1:]:
            if p.startswith("-"):
                text += " - " + p[1:]
            else:
                text += " + " + p
        return text

    def __repr__(self):
        return f"MultiPoly({self})"
