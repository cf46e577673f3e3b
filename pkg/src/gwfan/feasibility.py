"""Exact rational feasibility of small linear systems via Fourier-Motzkin.

Systems are integer-coefficient: a list of equalities sum(c*x) + b = 0 and a
list of inequalities sum(c*x) + b >= 0 (or > 0 when flagged strict).
Equalities are eliminated first by pivoting; the remaining variables are
projected out one at a time, combining each positive/negative coefficient
pair.  All arithmetic stays in Python ints (rows are rescaled by gcd), so
the answer is exact over the rationals.
"""

from __future__ import annotations

from math import gcd


def _normalize(coeffs, const):
    g = 0
    for c in coeffs:
        g = gcd(g, c)
    g = gcd(g, const)
    if g > 1:
        coeffs = tuple(c // g for c in coeffs)
        const //= g
    return coeffs, const


def feasible(nvars, equalities, inequalities):
    """Decide whether the mixed system has a rational solution.

    equalities:   iterable of (coeffs, const)
    inequalities: iterable of (coeffs, const, strict)
    """
    eqs = [(list(c), int(b)) for c, b in equalities]
    ineqs = [[list(c), int(b), bool(s)] for c, b, s in inequalities]

    # eliminate equalities by exact pivoting
    for idx in range(len(eqs)):
        coeffs, const = eqs[idx]
        nz = [k for k in range(nvars) if coeffs[k]]
        if not nz:
            if const:
                return False
            continue
        k = min(nz, key=lambda j: abs(coeffs[j]))
        p = coeffs[k]
        ap, sp = abs(p), (1 if p > 0 else -1)

        def eliminate(row_coeffs, row_const):
            c = row_coeffs[k]
            if not c:
                return row_coeffs, row_const
            f = -c * sp
            new_coeffs = [ap * a + f * b for a, b in zip(row_coeffs, coeffs)]
            return new_coeffs, ap * row_const + f * const

        for j in range(idx + 1, len(eqs)):
            eqs[j] = list(eliminate(*eqs[j]))
        for row in ineqs:
            row[0], row[1] = eliminate(row[0], row[1])

    # Fourier-Motzkin on the inequalities
    rows = {}
    for coeffs, const, strict in ineqs:
        cs, b = _normalize(tuple(coeffs), const)
        key = (cs, b)
        rows[key] = rows.get(key, False) or strict
    while True:
        pending = {}
        occupied = {}
        for (cs, b), strict in rows.items():
            if any(cs):
                pending[(cs, b)] = strict
                for k, c in enumerate(cs):
                    if c:
                        pos, neg = occupied.get(k, (0, 0))
                        occupied[k] = (pos + (c > 0), neg + (c < 0))
            else:
                if b < 0 or (strict and b == 0):
                    return False
        if not pending:
            return True
        k = min(occupied, key=lambda j: occupied[j][0] * occupied[j][1])
        pos, neg, keep = [], [], {}
        for (cs, b), strict in pending.items():
            if cs[k] > 0:
                pos.append((cs, b, strict))
            elif cs[k] < 0:
                neg.append((cs, b, strict))
            else:
                keep[(cs, b)] = keep.get((cs, b), False) or strict
        for cs1, b1, s1 in pos:
            p = cs1[k]
            for cs2, b2, s2 in neg:
                q = -cs2[k]
                cs = tuple(q * a + p * b for a, b in zip(cs1, cs2))
                key = _normalize(cs, q * b1 + p * b2)
                strict = s1 or s2
                keep[key] = keep.get(key, False) or strict
        rows = keep


def cone_meets_displaced_cone(sigma_rays, v, tau_rays, strict=False):
    """Feasibility of (sigma + v) intersect tau, exactly over Q.

    sigma_rays, tau_rays: lists of LatticeVector generators (may be empty
    for the zero cone).  For quotient vectors an unconstrained multiple of
    (1,...,1) is added instead of canonicalizing mid-system.  With strict
    the relative interiors are intersected instead.
    """
    quotient = v.quotient
    length = len(v.coords)
    na, nb = len(sigma_rays), len(tau_rays)
    nvars = na + nb + (1 if quotient else 0)
    eqs = []
    for i in range(length):
        coeffs = (
            [r.coords[i] for r in sigma_rays]
            + [-r.coords[i] for r in tau_rays]
            + ([1] if quotient else [])
        )
        eqs.append((coeffs, v.coords[i]))
    ineqs = []
    for t in range(na + nb):
        coeffs = [0] * nvars
        coeffs[t] = 1
        ineqs.append((coeffs, 0, strict))
    return feasible(nvars, eqs, ineqs)
