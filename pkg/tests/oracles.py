"""Independent oracles used by the test suite.

These deliberately avoid the production code paths: the resultant oracle
builds the Sylvester matrix (f's rows first, descending coefficients) and
evaluates the determinant by fraction-free (Bareiss) elimination; the
local-dimension oracle does naive monomial enumeration.
"""

from curveint.poly import MultiPoly


def sylvester_matrix(f: MultiPoly, g: MultiPoly, name: str):
    m, n = f.degree_in(name), g.degree_in(name)
    fc = [f.coeff_of(name, m - k) for k in range(m + 1)]  # descending
    gc = [g.coeff_of(name, n - k) for k in range(n + 1)]
    size = m + n
    zero = f.clone({})
    rows = []
    for i in range(n):
        rows.append([zero] * i + fc + [zero] * (size - i - m - 1))
    for i in range(m):
        rows.append([zero] * i + gc + [zero] * (size - i - n - 1))
    return rows


def bareiss_determinant(rows):
    """Exact determinant of a square matrix of MultiPoly entries."""
    n = len(rows)
    if n == 0:
        first = None
        raise ValueError("empty matrix has determinant 1 by convention")
    a = [row[:] for row in rows]
    field = a[0][0].field
    varset = a[0][0].vars
    one = MultiPoly.const(field, varset, 1)
    sign = 1
    prev = one
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return MultiPoly.zero(field, varset)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num.exact_divide(prev)
            a[i][k] = MultiPoly.zero(field, varset)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def sylvester_resultant(f: MultiPoly, g: MultiPoly, name: str) -> MultiPoly:
    m, n = f.degree_in(name), g.degree_in(name)
    if m + n == 0:
        return MultiPoly.const(f.field, f.vars, 1)
    return bareiss_determinant(sylvester_matrix(f, g, name))


def random_poly(rng, field, variables, max_degree, coeff_range=9,
                force_origin=False):
    """Dense-ish random polynomial with small integer coefficients."""
    terms = {}
    nvars = len(variables)
    from itertools import product
    for exps in product(range(max_degree + 1), repeat=nvars):
        if sum(exps) > max_degree:
            continue
        if force_origin and sum(exps) == 0:
            continue
        c = rng.randint(-coeff_range, coeff_range)
        if c:
            terms[exps] = field.of(c)
    return MultiPoly(field, variables, terms)


def local_dim_oracle(f: MultiPoly, g: MultiPoly, cap: int = 24):
    """Brute-force dimension of k[x,y]/((f,g) + m^N), stabilized in N.

    Independent of the production linear algebra: builds the full multiple
    matrix and row-reduces over the fraction field with naive pivoting.
    """
    field = f.field
    xv, yv = f.vars[0], f.vars[1]

    def dim_at(N):
        monos = [(i, j) for i in range(N) for j in range(N) if i + j < N]
        index = {m: k for k, m in enumerate(monos)}
        rows = []
        for h in (f, g):
            for a in range(N):
                for b in range(N - a):
                    row = [field.zero] * len(monos)
                    seen = False
                    for (i, j), c in h.terms.items():
                        i2, j2 = i + a, j + b
                        if i2 + j2 < N:
                            row[index[(i2, j2)]] = row[index[(i2, j2)]] + c
                            seen = True
                    if seen:
                        rows.append(row)
        rank = 0
        ncols = len(monos)
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
            pv = rows[r][col]
            for i in range(r + 1, len(rows)):
                if rows[i][col]:
                    factor = rows[i][col] / pv
                    rows[i] = [ci - factor * cr for ci, cr in zip(rows[i], rows[r])]
            rank += 1
            r += 1
            col += 1
        return len(monos) - rank

    prev = dim_at(1)
    for N in range(2, cap + 1):
        cur = dim_at(N)
        if cur == prev:
            return cur
        prev = cur
    raise RuntimeError("oracle did not stabilize")
