"""Exact bounded-variable primal simplex over rationals.

Solves  max c.x  subject to  A x <= b,  l <= x <= u  with all data given
as Fractions (or ints).  Bland's rule on both the entering and leaving
choices guarantees termination; everything is exact, so optima compare
reliably across runs and platforms.

The problem sizes here are tiny (a hypergraph vertex per row, an edge per
column), so a dense tableau is the simplest correct choice.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

import numpy as np

_ZERO = Fraction(0)
_ONE = Fraction(1)

_LOWER = 0
_UPPER = 1


def solve_box_lp(
    c: Sequence[Fraction],
    rows: Sequence[Sequence[int]],
    b: Sequence[Fraction],
    lower: Sequence[Fraction],
    upper: Sequence[Fraction],
) -> Optional[tuple[Fraction, list[Fraction]]]:
    """Maximise c.x with A x <= b and lower <= x <= upper, exactly.

    ``rows[i]`` lists the column indices with coefficient 1 in row i (the
    incidence structure of a hypergraph).  Returns (optimal value, x) or
    None when the box itself is infeasible (some row violated with every
    variable at its lower bound).  Requires lower <= upper.
    """
    n = len(c)
    m = len(rows)
    nm = n + m
    c = [Fraction(v) for v in c] + [_ZERO] * m
    lo = [Fraction(v) for v in lower] + [_ZERO] * m
    hi = [Fraction(v) for v in upper] + [None] * m  # None = unbounded slack

    # tableau rows over all n+m columns; slack j has identity column
    tab = [[_ZERO] * nm for _ in range(m)]
    for i, row in enumerate(rows):
        for j in row:
            tab[i][j] = _ONE
        tab[i][n + i] = _ONE
    basis = list(range(n, nm))
    nonbasic_status = {j: _LOWER for j in range(n)}

    # basic (slack) values with structurals at lower bounds
    xb = []
    for i, bi in enumerate(b):
        s = Fraction(bi)
        for j in rows[i]:
            s -= lo[j]
        if s < 0:
            return None
        xb.append(s)

    def value_of(j: int) -> Fraction:
        return lo[j] if nonbasic_status[j] == _LOWER else hi[j]

    while True:
        # reduced costs via basic cost combination
        cb = [c[basis[i]] for i in range(m)]
        entering = -1
        direction = 0
        for j in range(nm):
            if j not in nonbasic_status:
                continue
            zj = c[j]
            for i in range(m):
                if cb[i] and tab[i][j]:
                    zj -= cb[i] * tab[i][j]
            if nonbasic_status[j] == _LOWER and zj > 0:
                entering, direction = j, 1
                break
            if nonbasic_status[j] == _UPPER and zj < 0:
                entering, direction = j, -1
                break
        if entering < 0:
            xs = [_ZERO] * nm
            for j, st in nonbasic_status.items():
                xs[j] = value_of(j)
            for i in range(m):
                xs[basis[i]] = xb[i]
            val = sum((c[j] * xs[j] for j in range(n)), _ZERO)
            return val, xs[:n]

        # ratio test: entering moves by t >= 0 in `direction`
        limit = None  # (t, leaving_row or -1 for bound flip)
        if hi[entering] is not None:
            limit = (hi[entering] - lo[entering], -1)
        for i in range(m):
            coef = tab[i][entering] * direction
            if coef > 0:
                room = xb[i] - lo[basis[i]]
                t = room / coef
            elif coef < 0:
                if hi[basis[i]] is None:
                    continue
                room = hi[basis[i]] - xb[i]
                t = room / (-coef)
            else:
                continue
            if limit is None or t < limit[0] or (
                t == limit[0] and limit[1] >= 0 and basis[i] < basis[limit[1]]
            ):
                limit = (t, i)
        if limit is None:
            raise ArithmeticError("unbounded LP; not expected for box problems")
        t, leave = limit

        if t > 0:
            for i in range(m):
                if tab[i][entering]:
                    xb[i] -= direction * t * tab[i][entering]
        if leave < 0:
            # bound flip: the entering variable crosses its whole range
            nonbasic_status[entering] = _UPPER if direction == 1 else _LOWER
            continue

        leaving = basis[leave]
        # leaving variable parks at the bound it just hit
        coef = tab[leave][entering] * direction
        nonbasic_status[leaving] = _LOWER if coef > 0 else _UPPER
        del nonbasic_status[entering]
        basis[leave] = entering

        piv = tab[leave][entering]
        inv = 1 / piv
        prow = [v * inv for v in tab[leave]]
        tab[leave] = prow
        start = lo[entering] if direction == 1 else hi[entering]
        xb[leave] = start + direction * t
        for i in range(m):
            if i == leave:
                continue
            f = tab[i][entering]
            if f:
                row = tab[i]
                tab[i] = [a - f * p for a, p in zip(row, prow)]


def _float_box_lp(c, rows, b, lower, upper, max_iter=600):
    """Float mirror of solve_box_lp; returns (basis, statuses) or None.

    Only the final basis and nonbasic bound statuses are trusted; the exact
    certifier recomputes everything rationally.  The numpy tableau keeps
    the pivot sequence deterministic across platforms (IEEE arithmetic).
    """
    tol = 1e-9
    n = len(c)
    m = len(rows)
    nm = n + m
    cf = np.zeros(nm)
    cf[:n] = [float(v) for v in c]
    lof = np.zeros(nm)
    lof[:n] = [float(v) for v in lower]
    hif = np.full(nm, np.inf)
    hif[:n] = [float(v) for v in upper]
    tab = np.zeros((m, nm))
    for i, row in enumerate(rows):
        tab[i, row] = 1.0
        tab[i, n + i] = 1.0
    basis = list(range(n, nm))
    at_upper = np.zeros(nm, dtype=bool)
    is_basic = np.zeros(nm, dtype=bool)
    is_basic[n:] = True
    xb = np.empty(m)
    for i, bi in enumerate(b):
        s = float(bi)
        for j in rows[i]:
            s -= lof[j]
        if s < -tol:
            return None
        xb[i] = s
    for _ in range(max_iter):
        cb = cf[basis]
        z = cf - cb @ tab
        eligible = ~is_basic & (
            (~at_upper & (z > tol)) | (at_upper & (z < -tol))
        )
        cand = np.flatnonzero(eligible)
        if len(cand) == 0:
            status = {
                j: (_UPPER if at_upper[j] else _LOWER)
                for j in range(nm)
                if not is_basic[j]
            }
            return basis, status
        entering = int(cand[0])  # Bland: least index
        direction = -1 if at_upper[entering] else 1
        col = tab[:, entering] * direction
        limit_t = hif[entering] - lof[entering]
        leave = -1
        for i in range(m):
            coef = col[i]
            if coef > tol:
                t = (xb[i] - lof[basis[i]]) / coef
            elif coef < -tol:
                if hif[basis[i]] == np.inf:
                    continue
                t = (hif[basis[i]] - xb[i]) / (-coef)
            else:
                continue
            if t < limit_t - tol or (
                t < limit_t + tol and leave >= 0 and basis[i] < basis[leave]
            ):
                limit_t, leave = t, i
        t = max(limit_t, 0.0)
        if t == np.inf:
            return None
        if t > 0:
            xb -= t * col
        if leave < 0:
            at_upper[entering] = direction == 1
            continue
        leaving = basis[leave]
        at_upper[leaving] = col[leave] < 0
        is_basic[leaving] = False
        is_basic[entering] = True
        basis[leave] = entering
        prow = tab[leave] / tab[leave, entering]
        tab[leave] = prow
        start = hif[entering] if direction == -1 else lof[entering]
        xb[leave] = start + direction * t
        factors = tab[:, entering].copy()
        factors[leave] = 0.0
        tab -= np.outer(factors, prow)
    return None


def _int_solve(mat: list[list[int]], rhs: list[int]):
    """Solve an integer m x m system exactly; returns (nums, den) with
    x_i = nums[i]/den, or None when singular.  Fraction-free Bareiss
    forward elimination followed by exact back-substitution."""
    m = len(mat)
    a = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    sign = 1
    prev = 1
    for col in range(m):
        piv = -1
        for r in range(col, m):
            if a[r][col]:
                piv = r
                break
        if piv < 0:
            return None
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        pv = a[col][col]
        # Bareiss update applies to every lower row, arc zero or not
        for r in range(col + 1, m):
            arc = a[r][col]
            row_r = a[r]
            row_c = a[col]
            for j in range(col + 1, m + 1):
                row_r[j] = (pv * row_r[j] - arc * row_c[j]) // prev
            row_r[col] = 0
        prev = pv
    den = a[m - 1][m - 1]
    if den == 0:
        return None
    nums = [0] * m
    nums[m - 1] = a[m - 1][m]
    for i in range(m - 2, -1, -1):
        s = a[i][m] * den
        for j in range(i + 1, m):
            s -= a[i][j] * nums[j]
        q, r = divmod(s, a[i][i])
        if r:
            # exact division must hold row-wise; fall back to rationals
            x = Fraction(s, a[i][i])
            if x.denominator != 1:
                nums[i] = x  # handled by caller via Fraction path
                continue
            q = x.numerator
        nums[i] = q
    return nums, den


def _certify_basis(c, rows, b, lower, upper, basis, status):
    """Exact optimality check of a proposed basis; returns (value, x) or None.

    All data is scaled to integers, the basic system is solved exactly, and
    box feasibility plus the signs of every reduced cost are verified with
    integer arithmetic.
    """
    n = len(c)
    m = len(rows)
    lo = [Fraction(v) for v in lower] + [_ZERO] * m
    hi = [Fraction(v) for v in upper] + [None] * m
    cs = [Fraction(v) for v in c] + [_ZERO] * m
    scale = 1
    for v in list(lo[:n]) + [h for h in hi[:n] if h is not None] + list(cs[:n]) + [Fraction(x) for x in b]:
        scale = scale * v.denominator // gcd(scale, v.denominator)
    nonbasic = [j for j in range(n + m) if j not in set(basis)]
    if set(status) != set(nonbasic):
        return None

    row_sets = [set(r) for r in rows]

    def int_column(j):
        col = [0] * m
        if j < n:
            for i in range(m):
                if j in row_sets[i]:
                    col[i] = 1
        else:
            col[j - n] = 1
        return col

    # scaled rhs minus nonbasic contributions (integers)
    rhs = [int(Fraction(bi) * scale) for bi in b]
    xvals: dict[int, Fraction] = {}
    for j in nonbasic:
        xj = lo[j] if status[j] == _LOWER else hi[j]
        if xj is None:
            return None
        xvals[j] = xj
        if xj:
            sx = int(xj * scale)
            if j < n:
                for i in range(m):
                    if j in row_sets[i]:
                        rhs[i] -= sx
            else:
                rhs[j - n] -= sx
    bmat = [[0] * m for _ in range(m)]
    for jj, j in enumerate(basis):
        col = int_column(j)
        for i in range(m):
            bmat[i][jj] = col[i]
    solved = _int_solve(bmat, rhs)
    if solved is None:
        return None
    nums, den = solved
    if any(isinstance(v, Fraction) for v in nums):
        return None
    if den < 0:
        nums = [-v for v in nums]
        den = -den
    # basic values: x_basis[i] = nums[i] / (den * scale)
    dscale = den * scale
    for i, j in enumerate(basis):
        v = nums[i]
        lo_s = lo[j] * dscale
        if v < lo_s:
            return None
        if hi[j] is not None and v > hi[j] * dscale:
            return None
        xvals[j] = Fraction(v, dscale)
    # dual: solve B^T y = cB (scaled by `scale`)
    bt = [[bmat[i][jj] for i in range(m)] for jj in range(m)]
    cb = [int(cs[j] * scale) for j in basis]
    solved = _int_solve(bt, cb)
    if solved is None:
        return None
    ynums, yden = solved
    if any(isinstance(v, Fraction) for v in ynums):
        return None
    if yden < 0:
        ynums = [-v for v in ynums]
        yden = -yden
    # reduced costs: z_j = c_j - y . A_j, sign-checked via integers
    for j in nonbasic:
        acc = int(cs[j] * scale) * yden
        if j < n:
            for i in range(m):
                if j in row_sets[i]:
                    acc -= ynums[i]
        else:
            acc -= ynums[j - n]
        if status[j] == _LOWER and acc > 0:
            return None
        if status[j] == _UPPER and acc < 0:
            return None
    val = sum((cs[j] * xvals[j] for j in range(n) if xvals.get(j)), _ZERO)
    return val, [xvals.get(j, _ZERO) for j in range(n)]


def solve_box_lp_fast(c, rows, b, lower, upper):
    """Exact box-LP optimum via a float pivot run plus rational
    certification, falling back to the pure exact simplex."""
    # exact infeasibility test at the lower bounds
    for i, bi in enumerate(b):
        s = Fraction(bi)
        for j in rows[i]:
            s -= Fraction(lower[j])
        if s < 0:
            return None
    guess = _float_box_lp(c, rows, b, lower, upper)
    if guess is not None:
        certified = _certify_basis(c, rows, b, lower, upper, guess[0], guess[1])
        if certified is not None:
            return certified
    return solve_box_lp(c, rows, b, lower, upper)
