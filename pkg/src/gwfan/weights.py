"""Polynomial-valued weights on braid and matroidal fans.

A Weight assigns a polynomial to every flag of its domain: all flags of
subsets for the braid fan on [n], or all flags of nonempty proper flats for
a loopless matroid.  The K-balancing conditions are Z-linear in the values,
so polynomial-valued weights are certified by the same alternating-sum
relations checked coefficientwise.
"""

from __future__ import annotations

from . import fan as fan_mod
from .braid import Flag, enumerate_flags, is_ij_neutral, strict_refinements_ij
from .fan import Report, braid_fan, default_generic_vector, product_engine
from .lattice import LatticeVector
from .matroid import Matroid, flags_of_flats
from .poly import Polynomial
from .util import NonGenericVector


class Weight:
    """Map from the flags of a domain to polynomials.

    domain: ("braid", n) or ("matroid", Matroid); missing flags are a hard
    error, never an implicit zero.
    """

    __slots__ = ("domain", "values", "ring", "flags")

    def __init__(self, domain, values):
        kind = domain[0]
        if kind == "braid":
            flags = tuple(enumerate_flags(domain[1]))
        elif kind == "matroid":
            flags = tuple(flags_of_flats(domain[1]))
        else:
            raise ValueError(f"unknown weight domain {domain!r}")
        vals = {}
        ring = set()
        for f in flags:
            if f not in values:
                raise KeyError(f"weight missing value at {f!r}")
            p = Polynomial.coerce(values[f])
            vals[f] = p
            ring.update(nm for nm in p.names if any(e[p.names.index(nm)] for e in p.terms))
        if len(values) != len(flags):
            extra = set(values) - set(flags)
            raise KeyError(f"weight defined on flags outside its domain: {extra}")
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "ring", tuple(sorted(ring)))
        object.__setattr__(self, "flags", flags)

    def __setattr__(self, name, value):
        raise AttributeError("Weight is immutable")

    @property
    def n(self):
        return self.domain[1] if self.domain[0] == "braid" else self.domain[1].n

    def __getitem__(self, flag):
        return self.values[flag]

    def __eq__(self, other):
        if not isinstance(other, Weight):
            return NotImplemented
        if self.domain[0] != other.domain[0] or self.flags != other.flags:
            return False
        return all(self.values[f] == other.values[f] for f in self.flags)

    def map_values(self, fn):
        return Weight(self.domain, {f: fn(v) for f, v in self.values.items()})

    @classmethod
    def constant_one(cls, domain):
        flags = (
            enumerate_flags(domain[1])
            if domain[0] == "braid"
            else flags_of_flats(domain[1])
        )
        return cls(domain, {f: 1 for f in flags})

    @classmethod
    def indicator(cls, domain, flag):
        flags = (
            enumerate_flags(domain[1])
            if domain[0] == "braid"
            else flags_of_flats(domain[1])
        )
        return cls(domain, {f: (1 if f == flag else 0) for f in flags})

    def to_json(self):
        if self.domain[0] == "braid":
            dom = {"braid": self.domain[1]}
        else:
            dom = {"matroid": self.domain[1].to_json()}
        return {
            "domain": dom,
            "values": [
                {"flag": f.to_json(), "value": str(self.values[f])}
                for f in sorted(self.flags, key=Flag.sort_key)
            ],
        }

    @classmethod
    def from_json(cls, data):
        dom = data["domain"]
        if "braid" in dom:
            n = dom["braid"]
            domain = ("braid", n)
        else:
            m = Matroid.from_json(dom["matroid"])
            domain = ("matroid", m)
            n = m.n
        values = {
            Flag.from_json(n, row["flag"]): Polynomial.parse(row["value"])
            for row in data["values"]
        }
        return cls(domain, values)


def _alternating_residual(g, gflag, i, j, allowed):
    lhs = Polynomial.constant(0)
    for f in strict_refinements_ij(gflag, i, j, allowed):
        lhs = lhs + (-1) ** f.length * g[f]
    for f in strict_refinements_ij(gflag, j, i, allowed):
        lhs = lhs - (-1) ** f.length * g[f]
    return lhs


def balance_check_braid(g):
    """K-balancing on the braid fan: for every unordered pair i != j and
    every {i,j}-neutral flag, the signed refinement sums must agree."""
    if g.domain[0] != "braid":
        raise ValueError("weight is not on a braid fan")
    n = g.domain[1]
    failures = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for gflag in g.flags:
                if not is_ij_neutral(gflag, i, j):
                    continue
                res = _alternating_residual(g, gflag, i, j, None)
                if not res.is_zero():
                    failures.append(
                        {
                            "pair": [i, j],
                            "neutral_flag": gflag.to_json(),
                            "residual": str(res),
                        }
                    )
    return Report("balance-braid", not failures, failures)


def balance_check_matroid(m, g):
    """K-balancing on the matroidal fan: refinements range over flats only."""
    if g.domain[0] != "matroid" or g.domain[1] != m:
        raise ValueError("weight is not on the matroidal fan of this matroid")
    flats = set(m.proper_nonempty_flats())
    failures = []
    for i in range(1, m.n + 1):
        for j in range(i + 1, m.n + 1):
            for gflag in g.flags:
                if not is_ij_neutral(gflag, i, j):
                    continue
                res = _alternating_residual(g, gflag, i, j, flats)
                if not res.is_zero():
                    failures.append(
                        {
                            "pair": [i, j],
                            "neutral_flag": gflag.to_json(),
                            "residual": str(res),
                        }
                    )
    return Report("balance-matroid", not failures, failures)


def zero_extend(m, g):
    """Push a matroidal weight to the braid fan by zero on non-flat flags."""
    if g.domain[0] != "matroid" or g.domain[1] != m:
        raise ValueError("weight is not on the matroidal fan of this matroid")
    values = {}
    flat_values = dict(g.values)
    for f in enumerate_flags(m.n):
        values[f] = flat_values.get(f, Polynomial.constant(0))
    return Weight(("braid", m.n), values)


def _cone_values(fan, g):
    return {fan.index_of_label(f): g[f] for f in g.flags}


def product(g1, g2, v=None):
    """Fan displacement product of two braid weights.

    v defaults to (2, 4, ..., 2^n) and is validated for genericity.
    """
    if g1.domain[0] != "braid" or g2.domain[0] != "braid":
        raise ValueError("product needs two braid-fan weights")
    n = g1.domain[1]
    if g2.domain[1] != n:
        raise ValueError("weights live on different braid fans")
    if v is None:
        v = default_generic_vector(n)
    elif not isinstance(v, LatticeVector):
        v = LatticeVector(v, quotient=True)
    fan = braid_fan(n)
    if not fan_mod.is_generic(fan, v):
        raise NonGenericVector(f"{list(v.coords)} is not generic for the braid fan")
    engine = product_engine(fan, v)
    c1, c2 = _cone_values(fan, g1), _cone_values(fan, g2)
    values = {
        fan.labels[gi]: engine.value(c1, c2, gi) for gi in range(len(fan.cones))
    }
    return Weight(("braid", n), values)


def product_value(g1, g2, gamma, v=None):
    """Single product-rule evaluation at one flag."""
    n = g1.domain[1]
    if v is None:
        v = default_generic_vector(n)
    elif not isinstance(v, LatticeVector):
        v = LatticeVector(v, quotient=True)
    fan = braid_fan(n)
    engine = product_engine(fan, v)
    return engine.value(
        _cone_values(fan, g1), _cone_values(fan, g2), fan.index_of_label(gamma)
    )


def weight_of_polytope(p):
    """Braid weight of a generalized permutohedron: per-flag face lattice counts."""
    values = {}
    for f in enumerate_flags(p.n):
        values[f] = p.face_points(f)
    return Weight(("braid", p.n), values)


def weight_delta_closed_form(n, i_mask):
    """Closed-form weight of the simplex Delta_I (no lattice enumeration)."""
    from .polytopes import delta_face_count_closed_form

    values = {
        f: delta_face_count_closed_form(n, i_mask, f) for f in enumerate_flags(n)
    }
    return Weight(("braid", n), values)
