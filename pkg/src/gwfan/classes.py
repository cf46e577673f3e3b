"""Matroid characteristic-class weights and their identity verifiers.

The dual motivic Chern weight assigns (-1-y)^len(F) times the product of
reduced characteristic polynomials of the interval minors, evaluated at -y;
it is certified as a Grothendieck weight by the matroidal balancing check.
CSM values are signed products of Crapo beta invariants, certified by
Minkowski codimension-one balancing.  Tautological weights route every
evaluation through the subset rank generating expansion, so no rational
function ever appears.
"""

from __future__ import annotations

from dataclasses import dataclass

from .braid import enumerate_flags
from .fan import braid_fan, default_generic_vector, product_engine
from .lattice import LatticeVector
from .matroid import MatroidAxiomError, flags_of_flats, successive_minor_eval
from .poly import Polynomial
from .util import NonGenericVector
from .weights import Weight, _cone_values

Y = Polynomial.variable("y")
T = Polynomial.variable("t")
V = Polynomial.variable("v")


@dataclass
class IdentityReport:
    identity: str
    matroid: str
    lhs: Polynomial
    rhs: Polynomial

    @property
    def difference(self):
        return self.lhs - self.rhs

    @property
    def passed(self):
        return self.difference.is_zero()

    def to_json(self):
        return {
            "identity": self.identity,
            "matroid": self.matroid,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "difference": str(self.difference),
            "pass": self.passed,
        }


def _reduced_char_at_minus_y(minor):
    return minor.reduced_char_poly().substitute({"t": -Y})


def mcy_dual_weight(m):
    """Dual motivic Chern weight on the matroidal fan, values in Z[y]."""
    if not m.is_loopless():
        raise MatroidAxiomError("dual motivic Chern weight requires looplessness")
    values = {}
    for f in flags_of_flats(m):
        prod = successive_minor_eval(_reduced_char_at_minus_y, m, f)
        values[f] = (-1 - Y) ** f.length * prod
    return Weight(("matroid", m), values)


def csm_values(m, k):
    """CSM Minkowski weight in degree k: flag -> (-1)^(r-1-k) * beta product,
    on the length-k flags of flats."""
    r = m.rank
    if not m.is_loopless():
        raise MatroidAxiomError("CSM weights require looplessness")
    if not 0 <= k <= r - 1:
        raise ValueError(f"degree k={k} outside [0, {r - 1}]")
    sign = (-1) ** (r - 1 - k)
    out = {}
    for f in flags_of_flats(m):
        if f.length != k:
            continue
        prod = successive_minor_eval(lambda minor: minor.beta(), m, f)
        out[f] = sign * prod.constant_value()
    return out


def csm_minkowski_balanced(m, k):
    """Check the degree-k CSM weight against codimension-one balancing on
    the matroidal fan."""
    from .fan import matroidal_fan, minkowski_balancing_check

    fan = matroidal_fan(m)
    vals = csm_values(m, k)
    cone_vals = {fan.index_of_label(f): v for f, v in vals.items()}
    top = max(f.length for f in flags_of_flats(m))
    return minkowski_balancing_check(fan, cone_vals, top - k)


def _rank_gen(minor):
    return minor.rank_gen_poly()


def _indep(minor):
    return minor.independence_poly()


def _loop_power(minor):
    return (1 + V) ** minor.loop_count()


def taut_weight(m):
    """Weight of the full tautological exterior-power generating class:
    flag -> product over interval minors of sum_A u^rk(A) v^(|A|-rk(A))."""
    values = {
        f: successive_minor_eval(_rank_gen, m, f) for f in enumerate_flags(m.n)
    }
    return Weight(("braid", m.n), values)


def sub_weight(m):
    """Weight of the tautological subbundle class: independence polynomials."""
    values = {f: successive_minor_eval(_indep, m, f) for f in enumerate_flags(m.n)}
    return Weight(("braid", m.n), values)


def quot_weight(m):
    """Weight of the tautological quotient class: (1+v)^loops per minor."""
    values = {
        f: successive_minor_eval(_loop_power, m, f) for f in enumerate_flags(m.n)
    }
    return Weight(("braid", m.n), values)


def verify_tutte_identity(m, w=None):
    """Rank generating polynomial vs the displacement double sum over flag
    pairs with trivially-meeting cones."""
    if not m.is_loopless():
        raise MatroidAxiomError("the identity is stated for loopless matroids")
    n = m.n
    if w is None:
        w = default_generic_vector(n)
    elif not isinstance(w, LatticeVector):
        w = LatticeVector(w, quotient=True)
    fan = braid_fan(n)
    engine = product_engine(fan, w)
    sub = _cone_values(fan, sub_weight(m))
    quot = _cone_values(fan, quot_weight(m))
    zero_cone = fan.index_of_label(enumerate_flags(n)[0])
    rhs = engine.value(sub, quot, zero_cone)
    lhs = m.rank_gen_poly()
    return IdentityReport("tutte-identity", m.name or f"n={n}", lhs, rhs)


def pointed_convolution_check(m, i):
    """Reduced characteristic polynomial as a signed convolution of beta
    invariants of flats through i with contractions."""
    if not m.is_loopless():
        raise MatroidAxiomError("requires a loopless matroid")
    if not 1 <= i <= m.n:
        raise ValueError(f"element {i} outside the ground set")
    bi = 1 << (i - 1)
    lhs = m.reduced_char_poly()
    rhs = Polynomial.constant(0, ("t",))
    for flat in m.flats():
        if not flat & bi:
            continue
        restr = m.restrict(flat)
        sign = (-1) ** (m.rank_of(flat) - 1)
        rhs = rhs + sign * restr.beta() * m.contract(flat).char_poly()
    return IdentityReport("pointed-convolution", m.name or f"n={m.n}", lhs, rhs)


def psi_formula_check(m, i):
    """Alternating sum of characteristic products over flags of flats all
    containing i equals (-1)^(r-1) beta (t-1)."""
    if not m.is_loopless():
        raise MatroidAxiomError("requires a loopless matroid")
    bi = 1 << (i - 1)
    lhs = Polynomial.constant(0, ("t",))
    for f in flags_of_flats(m):
        if all(s & bi for s in f.sets):
            lhs = lhs + (-1) ** f.length * successive_minor_eval(
                lambda minor: minor.char_poly(), m, f
            )
    rhs = (-1) ** (m.rank - 1) * m.beta() * (T - 1)
    return IdentityReport("psi-formula", m.name or f"n={m.n}", lhs, rhs)


def _aij_sum(m, i, j):
    bi, bj = 1 << (i - 1), 1 << (j - 1)
    total = Polynomial.constant(0, ("t",))
    for f in flags_of_flats(m):
        if f.length == 0:
            continue
        if all((s & bi) and not (s & bj) for s in f.sets):
            total = total + (-1) ** f.length * successive_minor_eval(
                lambda minor: minor.char_poly(), m, f
            )
    return total


def aij_symmetry_check(m, i, j):
    """The signed flag sums through (i, not j) and (j, not i) coincide."""
    if i == j:
        raise ValueError("needs two distinct elements")
    lhs = _aij_sum(m, i, j)
    rhs = _aij_sum(m, j, i)
    return IdentityReport("aij-symmetry", m.name or f"n={m.n}", lhs, rhs)
