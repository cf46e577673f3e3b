"""Loopless matroids with exact invariants.

A matroid on ground set [n] is stored as a full rank table indexed by
subset bitmask (2^n ints).  Construction validates the rank axioms
exhaustively (normalization, unit increase, local submodularity) and
reports the violated inequality with witness subsets.  Minors materialize
fresh rank tables and are memoized per instance, so successive-minor
products over flags reuse interval values.
"""

from __future__ import annotations

import re

from .braid import Flag, elements_of, full_mask, mask_of, subset_key
from .poly import Polynomial
from .util import HARD_NCAP

T = Polynomial.variable("t")
X = Polynomial.variable("x")
Y = Polynomial.variable("y")
U = Polynomial.variable("u")
V = Polynomial.variable("v")


class MatroidAxiomError(ValueError):
    """A candidate rank table violates a matroid axiom."""


class Matroid:
    __slots__ = ("n", "rank_table", "name", "_cache")

    def __init__(self, n, rank_table, name="", validate=True):
        if n < 0 or n > HARD_NCAP:
            raise ValueError(f"ground-set size {n} outside [0, {HARD_NCAP}]")
        rank_table = tuple(int(r) for r in rank_table)
        if len(rank_table) != 1 << n:
            raise ValueError(f"rank table must have 2^{n} entries")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rank_table", rank_table)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "_cache", {})
        if validate:
            self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("Matroid is immutable")

    def _validate(self):
        r = self.rank_table
        n = self.n
        if r[0] != 0:
            raise MatroidAxiomError(f"rank(empty) = {r[0]}, expected 0")
        for s in range(1 << n):
            for e in range(n):
                be = 1 << e
                if s & be:
                    continue
                d = r[s | be] - r[s]
                if d < 0 or d > 1:
                    raise MatroidAxiomError(
                        f"unit increase fails: rank({elements_of(s | be)}) - "
                        f"rank({elements_of(s)}) = {d}"
                    )
                for f in range(e + 1, n):
                    bf = 1 << f
                    if s & bf:
                        continue
                    lhs = r[s | be] + r[s | bf]
                    rhs = r[s | be | bf] + r[s]
                    if lhs < rhs:
                        raise MatroidAxiomError(
                            "submodularity fails: "
                            f"rank({elements_of(s | be)}) + rank({elements_of(s | bf)})"
                            f" = {lhs} < {rhs} = "
                            f"rank({elements_of(s | be | bf)}) + rank({elements_of(s)})"
                        )

    # ---- constructors ----------------------------------------------------

    @classmethod
    def from_rank_table(cls, n, table, name=""):
        return cls(n, table, name)

    @classmethod
    def from_bases(cls, n, bases, name=""):
        base_masks = [mask_of(b) for b in bases]
        if not base_masks:
            raise MatroidAxiomError("basis list is empty")
        if any(b >> n for b in base_masks):
            raise ValueError(f"basis element outside the ground set [1, {n}]")
        sizes = {m.bit_count() for m in base_masks}
        if len(sizes) != 1:
            raise MatroidAxiomError(f"bases have mixed sizes {sorted(sizes)}")
        table = [max((s & b).bit_count() for b in base_masks) for s in range(1 << n)]
        m = cls(n, table, name)
        r = table[-1]
        derived = {s for s in range(1 << n) if s.bit_count() == r and table[s] == r}
        if derived != set(base_masks):
            raise MatroidAxiomError(
                "basis list is not exchange-consistent with its own span"
            )
        return m

    @classmethod
    def uniform(cls, r, n):
        if not 0 <= r <= n:
            raise ValueError(f"uniform matroid needs 0 <= r <= n, got {r}, {n}")
        table = [min(s.bit_count(), r) for s in range(1 << n)]
        return cls(n, table, f"U({r},{n})", validate=False)

    @classmethod
    def from_graph(cls, edges, name=""):
        """Cycle matroid of a multigraph; ground set = edge indices 1..m."""
        edges = [tuple(e) for e in edges]
        n = len(edges)
        if n > HARD_NCAP:
            raise ValueError(f"too many edges ({n} > {HARD_NCAP})")
        verts = sorted({v for e in edges for v in e})
        vid = {v: i for i, v in enumerate(verts)}
        table = []
        for s in range(1 << n):
            parent = list(range(len(verts)))

            def find(a):
                while parent[a] != a:
                    parent[a] = parent[parent[a]]
                    a = parent[a]
                return a

            rank = 0
            for i in range(n):
                if s & (1 << i):
                    a, b = find(vid[edges[i][0]]), find(vid[edges[i][1]])
                    if a != b:
                        parent[a] = b
                        rank += 1
            table.append(rank)
        return cls(n, table, name or "graphic", validate=False)

    @classmethod
    def catalog(cls, key):
        key = key.strip().lower()
        if key in _CATALOG:
            return _CATALOG[key]()
        m = re.fullmatch(r"u(\d)(\d)", key)
        if m:
            return cls.uniform(int(m.group(1)), int(m.group(2)))
        raise KeyError(f"unknown catalog matroid {key!r}")

    @classmethod
    def from_json(cls, data):
        if "uniform" in data:
            r, n = data["uniform"]
            return cls.uniform(r, n)
        if "catalog" in data:
            return cls.catalog(data["catalog"])
        if "graph" in data:
            return cls.from_graph(data["graph"])
        if "rank" in data:
            return cls(data["n"], data["rank"], data.get("name", ""))
        if "bases" in data:
            return cls.from_bases(data["n"], data["bases"], data.get("name", ""))
        raise ValueError("matroid JSON needs uniform/catalog/graph/rank/bases")

    def to_json(self):
        return {"n": self.n, "rank": list(self.rank_table), "name": self.name}

    # ---- basic queries -----------------------------------------------------

    @property
    def full(self):
        return full_mask(self.n)

    @property
    def rank(self):
        return self.rank_table[-1] if self.n else 0

    def rank_of(self, mask):
        return self.rank_table[mask]

    def closure(self, mask):
        r = self.rank_table[mask]
        out = mask
        for e in range(self.n):
            be = 1 << e
            if not (mask & be) and self.rank_table[mask | be] == r:
                out |= be
        return out

    def is_flat(self, mask):
        return self.closure(mask) == mask

    def flats(self):
        if "flats" not in self._cache:
            self._cache["flats"] = tuple(
                sorted(
                    (s for s in range(1 << self.n) if self.is_flat(s)),
                    key=subset_key,
                )
            )
        return self._cache["flats"]

    def proper_nonempty_flats(self):
        return tuple(f for f in self.flats() if 0 < f < self.full)

    def loops(self):
        return [e for e in range(1, self.n + 1) if self.rank_table[1 << (e - 1)] == 0]

    def loop_count(self):
        return len(self.loops())

    def is_loopless(self):
        return not self.loops()

    def bases(self):
        r = self.rank
        return [
            s
            for s in range(1 << self.n)
            if s.bit_count() == r and self.rank_table[s] == r
        ]

    # ---- minors -------------------------------------------------------------

    def minor(self, lower, upper):
        """(M | upper) / lower, ground set re-indexed to 1..|upper - lower|."""
        if lower & ~upper:
            raise ValueError("minor needs lower subset of upper")
        key = ("minor", lower, upper)
        if key in self._cache:
            return self._cache[key]
        free = [i for i in range(self.n) if (upper >> i) & 1 and not (lower >> i) & 1]
        k = len(free)
        base = self.rank_table[lower]
        table = []
        for s in range(1 << k):
            orig = lower
            for j in range(k):
                if s & (1 << j):
                    orig |= 1 << free[j]
            table.append(self.rank_table[orig] - base)
        m = Matroid(k, table, validate=False)
        self._cache[key] = m
        return m

    def restrict(self, mask):
        return self.minor(0, mask)

    def contract(self, mask):
        return self.minor(mask, self.full)

    def delete(self, e):
        return self.restrict(self.full & ~(1 << (e - 1)))

    # ---- invariants -----------------------------------------------------------

    def char_poly(self):
        """Characteristic polynomial via the rank-nullity subset expansion."""
        if "char" not in self._cache:
            r = self.rank
            coeffs = {}
            for s in range(1 << self.n):
                e = r - self.rank_table[s]
                coeffs[e] = coeffs.get(e, 0) + (-1) ** s.bit_count()
            self._cache["char"] = Polynomial(("t",), {(e,): c for e, c in coeffs.items()})
        return self._cache["char"]

    def char_poly_via_flats(self):
        """Independent route: Mobius function over the lattice of flats."""
        if not self.is_loopless():
            raise MatroidAxiomError("Mobius route requires a loopless matroid")
        flats = self.flats()
        mobius = {}
        for f in flats:
            mobius[f] = 1 if f == 0 else -sum(
                mobius[g] for g in flats if g != f and (g & f) == g
            )
        r = self.rank
        out = Polynomial.constant(0, ("t",))
        for f in flats:
            out = out + mobius[f] * T ** (r - self.rank_table[f])
        return out

    def reduced_char_poly(self):
        if "rchar" not in self._cache:
            if not self.is_loopless():
                raise MatroidAxiomError(
                    "reduced characteristic polynomial requires looplessness"
                )
            self._cache["rchar"] = self.char_poly().exact_divide(T - 1)
        return self._cache["rchar"]

    def beta(self):
        """Crapo beta invariant (-1)^(r-1) * reduced_char(1)."""
        rc = self.reduced_char_poly()
        return (-1) ** (self.rank - 1) * rc.evaluate({"t": 1})

    def tutte_poly(self):
        if "tutte" not in self._cache:
            r = self.rank
            xm, ym = X - 1, Y - 1
            xp = [Polynomial.constant(1, ("x", "y"))]
            yp = [Polynomial.constant(1, ("x", "y"))]
            for _ in range(self.n):
                xp.append(xp[-1] * xm)
                yp.append(yp[-1] * ym)
            out = Polynomial.constant(0, ("x", "y"))
            for s in range(1 << self.n):
                rs = self.rank_table[s]
                out = out + xp[r - rs] * yp[s.bit_count() - rs]
            self._cache["tutte"] = out
        return self._cache["tutte"]

    def independence_poly(self):
        if "indep" not in self._cache:
            coeffs = {}
            for s in range(1 << self.n):
                k = s.bit_count()
                if self.rank_table[s] == k:
                    coeffs[k] = coeffs.get(k, 0) + 1
            self._cache["indep"] = Polynomial(("u",), {(e,): c for e, c in coeffs.items()})
        return self._cache["indep"]

    def rank_gen_poly(self):
        """Subset expansion sum_A u^rank(A) v^(|A|-rank(A)); equals
        u^r T(1 + 1/u, 1 + v) cleared of denominators."""
        if "rankgen" not in self._cache:
            coeffs = {}
            for s in range(1 << self.n):
                rs = self.rank_table[s]
                e = (rs, s.bit_count() - rs)
                coeffs[e] = coeffs.get(e, 0) + 1
            self._cache["rankgen"] = Polynomial(("u", "v"), coeffs)
        return self._cache["rankgen"]

    def __eq__(self, other):
        return (
            isinstance(other, Matroid)
            and self.n == other.n
            and self.rank_table == other.rank_table
        )

    def __hash__(self):
        return hash((self.n, self.rank_table))

    def __repr__(self):
        label = self.name or f"matroid(n={self.n}, r={self.rank})"
        return f"<{label}>"


def _fano_bases():
    lines = [(1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6)]
    from itertools import combinations

    return [b for b in combinations(range(1, 8), 3) if b not in lines], lines


def _make_fano():
    bases, _ = _fano_bases()
    return Matroid.from_bases(7, bases, "fano")


def _make_nonfano():
    bases, lines = _fano_bases()
    return Matroid.from_bases(7, bases + [lines[-1]], "nonfano")


def _make_vamos():
    from itertools import combinations

    planes = {
        frozenset({1, 2, 3, 4}),
        frozenset({1, 2, 5, 6}),
        frozenset({1, 2, 7, 8}),
        frozenset({3, 4, 5, 6}),
        frozenset({3, 4, 7, 8}),
    }
    bases = [b for b in combinations(range(1, 9), 4) if frozenset(b) not in planes]
    return Matroid.from_bases(8, bases, "vamos")


def _make_k4():
    return Matroid.from_graph(
        [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)], "graphic(K4)"
    )


_CATALOG = {
    "fano": _make_fano,
    "nonfano": _make_nonfano,
    "vamos": _make_vamos,
    "k4": _make_k4,
}


def successive_minor_eval(phi, m, flag):
    """Product of phi over the interval minors of a flag.

    phi maps a matroid to a Polynomial or int; the empty flag yields
    phi(m) itself.
    """
    if flag.n != m.n:
        raise ValueError("flag ground set does not match matroid")
    bounds = (0,) + flag.sets + (m.full,)
    out = Polynomial.constant(1)
    for lo, hi in zip(bounds, bounds[1:]):
        out = out * Polynomial.coerce(phi(m.minor(lo, hi)))
    return out


def flags_of_flats(m):
    """All chains of nonempty proper flats, empty flag included."""
    if not m.is_loopless():
        raise MatroidAxiomError("flags of flats require a loopless matroid")
    flats = list(m.proper_nonempty_flats())
    out = []

    def extend(chain, start):
        out.append(Flag(m.n, tuple(chain)))
        for idx in range(start, len(flats)):
            f = flats[idx]
            if chain and (f & chain[-1]) != chain[-1]:
                continue
            if chain and f == chain[-1]:
                continue
            chain.append(f)
            extend(chain, idx + 1)
            chain.pop()

    extend([], 0)
    out.sort(key=Flag.sort_key)
    return out


def all_loopless_matroids(n):
    """Every loopless matroid on [n] (distinct rank tables), by basis search."""
    from itertools import combinations

    found = []
    seen = set()
    for r in range(1, n + 1):
        subsets = list(combinations(range(1, n + 1), r))
        for pick in range(1, 1 << len(subsets)):
            bases = [subsets[i] for i in range(len(subsets)) if pick & (1 << i)]
            covered = set().union(*map(set, bases))
            if len(covered) != n:
                continue
            try:
                m = Matroid.from_bases(n, bases)
            except MatroidAxiomError:
                continue
            if m.rank_table not in seen:
                seen.add(m.rank_table)
                found.append(m)
    return found
