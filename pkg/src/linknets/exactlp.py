"""A tiny exact simplex solver over the rationals.

Solves max c.x subject to A_ub x <= b_ub, A_eq x = b_eq, x >= 0 with
Fraction arithmetic and Bland's rule, so there are no tolerances and no
cycling.  Problem sizes here are tiny (tens of rows), which is all the
polytope-intersection queries need.
"""

from __future__ import annotations

from fractions import Fraction

INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
OPTIMAL = "optimal"


def maximize(c, a_ub=(), b_ub=(), a_eq=(), b_eq=()):
    """Returns (status, value, point) with exact rational entries."""
    n = len(c)
    rows = []
    rhs = []
    kinds = []
    for row, b in zip(a_ub, b_ub):
        rows.append([Fraction(x) for x in row])
        rhs.append(Fraction(b))
        kinds.append("ub")
    for row, b in zip(a_eq, b_eq):
        rows.append([Fraction(x) for x in row])
        rhs.append(Fraction(b))
        kinds.append("eq")
    m = len(rows)
    # Normalize to nonnegative right-hand sides.
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]
            if kinds[i] == "ub":
                kinds[i] = "lb"  # becomes >=, needs surplus + artificial
    n_slack = sum(1 for k in kinds if k == "ub")
    n_surplus = sum(1 for k in kinds if k == "lb")
    n_art = sum(1 for k in kinds if k in ("eq", "lb"))
    width = n + n_slack + n_surplus + n_art
    tab = [[Fraction(0)] * width for _ in range(m)]
    basis = [None] * m
    si = n
    ui = n + n_slack
    ai = n + n_slack + n_surplus
    art_cols = []
    for i in range(m):
        for j in range(n):
            tab[i][j] = rows[i][j]
        if kinds[i] == "ub":
            tab[i][si] = Fraction(1)
            basis[i] = si
            si += 1
        elif kinds[i] == "lb":
            tab[i][ui] = Fraction(-1)
            ui += 1
            tab[i][ai] = Fraction(1)
            basis[i] = ai
            art_cols.append(ai)
            ai += 1
        else:
            tab[i][ai] = Fraction(1)
            basis[i] = ai
            art_cols.append(ai)
            ai += 1

    def pivot(tab, rhs, basis, row, col):
        piv = tab[row][col]
        tab[row] = [x / piv for x in tab[row]]
        rhs[row] /= piv
        for r in range(len(tab)):
            if r != row and tab[r][col] != 0:
                f = tab[r][col]
                tab[r] = [x - f * y for x, y in zip(tab[r], tab[row])]
                rhs[r] -= f * rhs[row]
        basis[row] = col

    def run(tab, rhs, basis, obj, allowed):
        # obj holds reduced costs for a maximization; Bland's rule.
        while True:
            col = None
            for j in allowed:
                if obj[j] > 0:
                    col = j
                    break
            if col is None:
                return OPTIMAL
            row = None
            best = None
            for i in range(len(tab)):
                if tab[i][col] > 0:
                    ratio = rhs[i] / tab[i][col]
                    if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[row]
                    ):
                        best = ratio
                        row = i
            if row is None:
                return UNBOUNDED
            pivot(tab, rhs, basis, row, col)
            f = obj[col]
            obj[:] = [x - f * y for x, y in zip(obj, tab[row])]

    # Phase 1: drive artificials to zero.
    if art_cols:
        obj = [Fraction(0)] * width
        for j in art_cols:
            obj[j] = Fraction(-1)
        # reduced costs w.r.t. the starting basis: c + sum of basic-artificial
        # rows, which zeroes the basic artificial columns
        for i, b in enumerate(basis):
            if b in art_cols:
                obj = [x + y for x, y in zip(obj, tab[i])]
        allowed = [j for j in range(width) if j not in art_cols]
        run(tab, rhs, basis, obj, allowed)
        total = sum(rhs[i] for i, b in enumerate(basis) if b in art_cols)
        if total != 0:
            return INFEASIBLE, None, None
        # pivot remaining artificials out of the basis when possible
        for i, b in enumerate(basis):
            if b in art_cols:
                for j in allowed:
                    if tab[i][j] != 0:
                        pivot(tab, rhs, basis, i, j)
                        break

    # Phase 2.
    obj = [Fraction(0)] * width
    for j in range(n):
        obj[j] = Fraction(c[j])
    for i, b in enumerate(basis):
        if obj[b] != 0:
            f = obj[b]
            obj = [x - f * y for x, y in zip(obj, tab[i])]
            # rhs contribution tracked separately below
    allowed = [j for j in range(width) if j not in art_cols]
    status = run(tab, rhs, basis, obj, allowed)
    if status == UNBOUNDED:
        return UNBOUNDED, None, None
    point = [Fraction(0)] * n
    for i, b in enumerate(basis):
        if b < n:
            point[b] = rhs[i]
    value = sum(Fraction(c[j]) * point[j] for j in range(n))
    return OPTIMAL, value, tuple(point)
