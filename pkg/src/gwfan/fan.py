"""General fans in a lattice of rank d, with the machinery that certifies
Grothendieck weights on them.

Cones are identified with their ray-index sets (all fans here are
simplicial), so the face relation is subset inclusion and the cone list is
closed under subsets.  A fan built in the quotient lattice Z^n / Z*(1,..,1)
(the braid fan and its matroidal subfans) carries quotient LatticeVector
rays; exact linear algebra sees their reduced Z^(n-1) coordinates, while
polyhedral feasibility keeps full-length coordinates and an unconstrained
multiple of (1,...,1).

Provides: strong-unimodularity certification, star/product/subfan
constructions, the K-balancing relation generator and checker, Minkowski
codimension-one balancing, exact displaced-cone feasibility, genericity
tests, and the fan displacement product rule.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .braid import Flag, enumerate_flags, proper_nonempty_subsets, subset_key
from .feasibility import cone_meets_displaced_cone
from .lattice import (
    LatticeVector,
    det_bareiss,
    kernel_basis,
    rank_of,
    smith_normal_form,
)
from .matroid import flags_of_flats
from .poly import Polynomial
from .util import DEFAULT_NCAP, NonGenericVector


@dataclass
class Report:
    check: str
    passed: bool
    failures: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def to_json(self):
        out = {"check": self.check, "pass": self.passed, "failures": self.failures}
        out.update(self.extra)
        return out


@dataclass(frozen=True)
class BalancingRelation:
    """Signed incidence vector of one K-balancing relation.

    coefficients[sigma] is (-1)^dim(sigma) when the new rays of sigma over
    tau all pair +1 with q, and the negative of that when they pair -1.
    """

    q: LatticeVector
    tau: int
    coefficients: tuple  # tuple of (cone index, +-1 coefficient with sign folded in)

    def residual(self, values):
        total = Polynomial.constant(0)
        for idx, c in self.coefficients:
            total = total + c * Polynomial.coerce(values[idx])
        return total


class NonAdmissibleDirection(ValueError):
    """A direction pairs outside {-1, 0, 1} with some ray."""


class Fan:
    def __init__(self, rank, rays, cones, complete=False, labels=None, kind=None):
        rays = tuple(rays)
        cones = tuple(frozenset(c) for c in cones)
        for r in rays:
            if r.dim != rank:
                raise ValueError(f"ray {r} does not live in rank {rank}")
            if r.is_zero() or not r.is_primitive():
                raise ValueError(f"ray {r} is not primitive")
        if len(set(rays)) != len(rays):
            raise ValueError("duplicate rays")
        cone_set = set(cones)
        if len(cone_set) != len(cones):
            raise ValueError("duplicate cones")
        if frozenset() not in cone_set:
            raise ValueError("the zero cone must be listed")
        for i in range(len(rays)):
            if frozenset({i}) not in cone_set:
                raise ValueError(f"singleton cone of ray {i} must be listed")
        for c in cones:
            if any(i < 0 or i >= len(rays) for i in c):
                raise ValueError("cone refers to a missing ray")
            for i in c:
                if c - {i} not in cone_set:
                    raise ValueError("cone list is not face-closed")
        order = sorted(range(len(cones)), key=lambda i: (len(cones[i]), sorted(cones[i])))
        cones = tuple(cones[i] for i in order)
        if labels is not None:
            labels = tuple(labels[i] for i in order)
        self.rank = rank
        self.rays = rays
        self.cones = cones
        self.complete = complete
        self.labels = labels
        self.kind = kind
        self._red = tuple(r.reduced() for r in rays)
        self._masks = tuple(sum(1 << i for i in c) for c in cones)
        self._dims = tuple(len(c) for c in cones)
        self._index = {c: i for i, c in enumerate(cones)}
        self._label_index = (
            {lab: i for i, lab in enumerate(labels)} if labels is not None else None
        )
        self._sups = {}
        self._det_memo = {}
        self._engines = {}

    # ---- lookups -----------------------------------------------------------

    def cone_index(self, rayset):
        return self._index[frozenset(rayset)]

    def index_of_label(self, label):
        if self._label_index is None:
            raise ValueError("fan has no cone labels")
        return self._label_index[label]

    def cone_label(self, idx):
        if self.labels is not None:
            lab = self.labels[idx]
            return lab.to_json() if isinstance(lab, Flag) else lab
        return sorted(self.cones[idx])

    def dim_of(self, idx):
        return self._dims[idx]

    def maximal_cones(self):
        masks = self._masks
        out = []
        for i, m in enumerate(masks):
            if not any(j != i and (m & masks[j]) == m for j in range(len(masks))):
                out.append(i)
        return out

    def supersets(self, idx):
        if idx not in self._sups:
            m = self._masks[idx]
            self._sups[idx] = tuple(
                j for j, mj in enumerate(self._masks) if (mj & m) == m
            )
        return self._sups[idx]

    def ray_matrix(self, idxs):
        return [list(self._red[i]) for i in idxs]

    def to_json(self):
        return {
            "rank": self.rank,
            "rays": [list(r.reduced()) for r in self.rays],
            "cones": [sorted(c) for c in self.cones],
            "complete": self.complete,
        }


def fan_from_json(data):
    rank = data["rank"]
    rays = [LatticeVector(r) for r in data["rays"]]
    return Fan(rank, rays, [frozenset(c) for c in data["cones"]], bool(data.get("complete")))


# ---- constructors -------------------------------------------------------------

_braid_cache = {}


def braid_fan(n, cap=DEFAULT_NCAP):
    """Normal fan of the permutohedron, cones labeled by flags of subsets."""
    key = n
    if key in _braid_cache:
        return _braid_cache[key]
    subsets = proper_nonempty_subsets(n)
    ray_of = {s: i for i, s in enumerate(subsets)}
    rays = [LatticeVector.e_subset(n, s) for s in subsets]
    flags = enumerate_flags(n, cap=cap)
    cones = [frozenset(ray_of[s] for s in f.sets) for f in flags]
    fan = Fan(n - 1, rays, cones, complete=True, labels=flags, kind=("braid", n))
    _braid_cache[key] = fan
    return fan


def matroidal_fan(m):
    """Subfan of the braid fan with cones labeled by flags of flats."""
    flats = list(m.proper_nonempty_flats())
    ray_of = {s: i for i, s in enumerate(flats)}
    rays = [LatticeVector.e_subset(m.n, s) for s in flats]
    flags = flags_of_flats(m)
    cones = [frozenset(ray_of[s] for s in f.sets) for f in flags]
    boolean = len(flats) == (1 << m.n) - 2
    return Fan(
        m.n - 1,
        rays,
        cones,
        complete=boolean,
        labels=flags,
        kind=("matroid", m.name or f"n={m.n}"),
    )


def projective_fan(d):
    """Fan of d-dimensional projective space."""
    rays = [
        LatticeVector(tuple(1 if j == i else 0 for j in range(d))) for i in range(d)
    ]
    rays.append(LatticeVector((-1,) * d))
    cones = []
    for mask in range(1 << (d + 1)):
        if mask != (1 << (d + 1)) - 1:
            cones.append(frozenset(i for i in range(d + 1) if mask & (1 << i)))
    return Fan(d, rays, cones, complete=True, kind=("projective", d))


def product_fan(a, b):
    """Direct product, formed in reduced coordinates."""
    da, db = a.rank, b.rank
    rays = [LatticeVector(tuple(r) + (0,) * db) for r in a._red]
    rays += [LatticeVector((0,) * da + tuple(r)) for r in b._red]
    cones = []
    for ca in a.cones:
        for cb in b.cones:
            cones.append(frozenset(ca) | frozenset(i + len(a.rays) for i in cb))
    return Fan(
        da + db,
        rays,
        cones,
        complete=a.complete and b.complete,
        kind=("product", a.kind, b.kind),
    )


def star_fan(fan, sigma):
    """Star of a cone: image fan in the quotient by the span of sigma."""
    if isinstance(sigma, (frozenset, set, list, tuple)):
        sigma = fan.cone_index(sigma)
    srays = sorted(fan.cones[sigma])
    k = len(srays)
    d = fan.rank
    if k:
        proj = kernel_basis(fan.ray_matrix(srays))
    else:
        proj = kernel_basis([[0] * d]) if d else []
    new_rank = d - k

    def image(ray_idx):
        u = fan._red[ray_idx]
        return LatticeVector(
            tuple(sum(m[i] * u[i] for i in range(d)) for m in proj)
        ).primitive()

    ray_index = {}
    star_rays = []
    star_cones = set()
    labels = {}
    for idx in fan.supersets(sigma):
        members = []
        for i in sorted(fan.cones[idx] - fan.cones[sigma]):
            img = image(i)
            if img not in ray_index:
                ray_index[img] = len(star_rays)
                star_rays.append(img)
            members.append(ray_index[img])
        cone = frozenset(members)
        star_cones.add(cone)
        labels.setdefault(cone, fan.cone_label(idx))
    cones = sorted(star_cones, key=lambda c: (len(c), sorted(c)))
    return Fan(
        new_rank,
        star_rays,
        cones,
        complete=fan.complete,
        labels=[labels[c] for c in cones],
        kind=("star", fan.kind),
    )


def subfan(fan, cone_indices):
    """Restriction to a face-closed subset of the cone list."""
    chosen = sorted(set(cone_indices))
    chosen_set = {fan.cones[i] for i in chosen}
    for i in chosen:
        for r in fan.cones[i]:
            if fan.cones[i] - {r} not in chosen_set:
                raise ValueError("subfan selection is not face-closed")
    used = sorted({r for i in chosen for r in fan.cones[i]})
    remap = {r: j for j, r in enumerate(used)}
    rays = [fan.rays[r] for r in used]
    cones = [frozenset(remap[r] for r in fan.cones[i]) for i in chosen]
    labels = [fan.cone_label(i) for i in chosen] if fan.labels is not None else None
    return Fan(fan.rank, rays, cones, complete=False, labels=labels, kind=("subfan", fan.kind))


# ---- strong unimodularity ------------------------------------------------------


def check_unimodular(fan):
    """Every maximal cone generated by part of a Z-basis (SNF all ones).

    Faces of unimodular cones are unimodular, so maximal cones suffice.
    """
    failures = []
    for idx in fan.maximal_cones():
        idxs = sorted(fan.cones[idx])
        if not idxs:
            continue
        factors, rank = smith_normal_form(fan.ray_matrix(idxs))
        if rank != len(idxs) or any(f != 1 for f in factors):
            failures.append(
                {
                    "cone": fan.cone_label(idx),
                    "invariant_factors": factors,
                    "rank": rank,
                }
            )
    return Report("unimodular", not failures, failures)


def _pair_index(fan, union_rays):
    key = sum(1 << i for i in union_rays)
    if key in fan._det_memo:
        return fan._det_memo[key]
    val = abs(det_bareiss(fan.ray_matrix(sorted(union_rays))))
    fan._det_memo[key] = val
    return val


def check_index_condition(fan):
    """Index of N_sigma + N_tau in N is 1 or infinite, for all cone pairs.

    The scan is reduced to pairs of disjoint-ray cones with complementary
    dimensions: any pair whose ray span has full rank contains such a
    sub-pair (choose a basis among the combined rays and split it), and
    its index divides the sub-pair's, so the reduced scan accepts and
    rejects exactly the same fans.
    """
    d = fan.rank
    by_dim = {}
    for i, dim in enumerate(fan._dims):
        by_dim.setdefault(dim, []).append(i)
    failures = []
    seen_unions = set()
    for da in sorted(by_dim):
        db = d - da
        if db < da or db not in by_dim:
            continue
        for si in by_dim[da]:
            smask = fan._masks[si]
            for ti in by_dim[db]:
                if db == da and ti < si:
                    continue
                if smask & fan._masks[ti]:
                    continue
                union = smask | fan._masks[ti]
                if union in seen_unions:
                    continue
                seen_unions.add(union)
                idx = _pair_index(fan, fan.cones[si] | fan.cones[ti])
                if idx > 1:
                    failures.append(
                        {
                            "pair": [fan.cone_label(si), fan.cone_label(ti)],
                            "index": idx,
                        }
                    )
    return Report("index-condition", not failures, failures)


def check_strongly_unimodular(fan):
    uni = check_unimodular(fan)
    idx = check_index_condition(fan)
    return Report(
        "strongly-unimodular",
        uni.passed and idx.passed,
        uni.failures + idx.failures,
        {"unimodular": uni.passed, "index_condition": idx.passed},
    )


# ---- K-balancing ---------------------------------------------------------------


def pq_nq(fan, q):
    """Partition ray indices by the pairing with q into (+1, -1, 0) classes."""
    pos, neg, neutral = [], [], []
    for i, r in enumerate(fan.rays):
        val = q.dot(r)
        if val == 1:
            pos.append(i)
        elif val == -1:
            neg.append(i)
        elif val == 0:
            neutral.append(i)
        else:
            raise NonAdmissibleDirection(
                f"direction pairs to {val} with ray {r}; admissible pairings are -1, 0, 1"
            )
    return pos, neg, neutral


def balancing_relations(fan, directions):
    """One relation per (direction q, q-neutral cone tau); empties omitted."""
    out = []
    for q in directions:
        pos, neg, _ = pq_nq(fan, q)
        pmask = sum(1 << i for i in pos)
        nmask = sum(1 << i for i in neg)
        for ti, tmask in enumerate(fan._masks):
            if tmask & (pmask | nmask):
                continue  # tau is not q-neutral
            coeffs = []
            for si in fan.supersets(ti):
                if si == ti:
                    continue
                new = fan._masks[si] & ~tmask
                sign = (-1) ** fan._dims[si]
                if (new & ~pmask) == 0:
                    coeffs.append((si, sign))
                elif (new & ~nmask) == 0:
                    coeffs.append((si, -sign))
            if coeffs:
                out.append(BalancingRelation(q, ti, tuple(coeffs)))
    return out


def basis_property_check(fan, directions):
    """For every cone tau, the directions orthogonal to tau span the full
    integer annihilator lattice of tau (rank d - dim tau, all SNF factors 1)."""
    d = fan.rank
    reduced = [list(q.reduced()) for q in directions]
    for ti in range(len(fan.cones)):
        rays = [fan.rays[i] for i in sorted(fan.cones[ti])]
        orth = [
            reduced[k]
            for k, q in enumerate(directions)
            if all(q.dot(r) == 0 for r in rays)
        ]
        want = d - fan._dims[ti]
        if want == 0:
            continue
        if not orth:
            return False
        factors, rank = smith_normal_form(orth)
        if rank != want or any(f != 1 for f in factors):
            return False
    return True


def check_k_balancing(fan, values, directions, require_basis=True):
    """Evaluate every balancing relation on a cone-indexed weight map.

    values: dict cone index -> int | Polynomial, defined on every cone.
    """
    for i in range(len(fan.cones)):
        if i not in values:
            raise KeyError(f"weight missing cone {fan.cone_label(i)}")
    if require_basis and not basis_property_check(fan, directions):
        raise ValueError(
            "direction set does not span the annihilator of every cone; "
            "the balancing check would be incomplete"
        )
    failures = []
    for rel in balancing_relations(fan, directions):
        res = rel.residual(values)
        if not res.is_zero():
            failures.append(
                {
                    "relation": {
                        "q": list(rel.q.coords),
                        "tau": fan.cone_label(rel.tau),
                    },
                    "residual": str(res),
                }
            )
    return Report("k-balancing", not failures, failures)


def minkowski_balancing_check(fan, values, k):
    """Codimension-one balancing of a Minkowski weight.

    values must cover all cones of dimension p = (top dimension) - k; the
    signed sums are checked along every cone of dimension p - 1, in every
    direction of an integral basis of its annihilator lattice.
    """
    top = max(fan._dims)
    p = top - k
    if p < 1:
        return Report("minkowski-balancing", True, [], {"dimension": p})
    level = [i for i, dim in enumerate(fan._dims) if dim == p]
    for i in level:
        if i not in values:
            raise KeyError(f"weight missing cone {fan.cone_label(i)}")
    failures = []
    d = fan.rank
    for ti, dim in enumerate(fan._dims):
        if dim != p - 1:
            continue
        rays = sorted(fan.cones[ti])
        basis = kernel_basis(fan.ray_matrix(rays) if rays else [[0] * d])
        for m in basis:
            total = Polynomial.constant(0)
            for si in fan.supersets(ti):
                if fan._dims[si] != p:
                    continue
                (new_ray,) = fan.cones[si] - fan.cones[ti]
                u = fan._red[new_ray]
                pairing = sum(a * b for a, b in zip(m, u))
                total = total + pairing * Polynomial.coerce(values[si])
            if not total.is_zero():
                failures.append(
                    {
                        "tau": fan.cone_label(ti),
                        "direction": list(m),
                        "residual": str(total),
                    }
                )
    return Report("minkowski-balancing", not failures, failures)


# ---- displacement, genericity, product rule -------------------------------------


def displaced_intersection_nonempty(fan, sigma, v, tau, strict=False):
    """Exact feasibility of (sigma + v) intersect tau."""
    srays = [fan.rays[i] for i in sorted(fan.cones[sigma])]
    trays = [fan.rays[i] for i in sorted(fan.cones[tau])]
    return cone_meets_displaced_cone(srays, v, trays, strict=strict)


def is_generic(fan, v):
    """Displacement genericity: every nonempty displaced intersection is
    interior-to-interior and transverse (ray spans jointly full rank)."""
    if fan.kind and fan.kind[0] == "braid":
        diffs = set()
        for a in range(len(v.coords)):
            for b in range(len(v.coords)):
                if a != b:
                    diff = v.coords[a] - v.coords[b]
                    if diff in diffs:
                        return False
                    diffs.add(diff)
        return True
    d = fan.rank
    ncones = len(fan.cones)
    for si in range(ncones):
        for ti in range(ncones):
            if not displaced_intersection_nonempty(fan, si, v, ti):
                continue
            if not displaced_intersection_nonempty(fan, si, v, ti, strict=True):
                return False
            rays = sorted(fan.cones[si] | fan.cones[ti])
            rank = rank_of(fan.ray_matrix(rays)) if rays else 0
            if rank != d:
                return False
    return True


def default_generic_vector(n):
    """The displacement vector with coordinates 2^i, generic for braid fans."""
    return LatticeVector(tuple(1 << i for i in range(1, n + 1)), quotient=True)


class ProductEngine:
    """Caches displaced-intersection feasibility and per-cone pair buckets
    for one (fan, v); the product rule is then a bucket sum."""

    def __init__(self, fan, v, check=True):
        if not fan.complete:
            raise ValueError("product rule requires a complete fan")
        if check and not is_generic(fan, v):
            raise NonGenericVector(f"{list(v.coords)} is not generic for this fan")
        self.fan = fan
        self.v = v
        self._feasible = {}
        self._buckets = {}

    def feasible(self, si, ti):
        key = (si, ti)
        if key not in self._feasible:
            self._feasible[key] = displaced_intersection_nonempty(
                self.fan, si, self.v, ti
            )
        return self._feasible[key]

    def bucket(self, gamma):
        """Signed cone pairs (sigma, tau) whose product-rule terms land on
        gamma: both contain gamma, their common face is gamma (this is the
        bounded-mod-span condition), and the displaced cones meet."""
        if gamma in self._buckets:
            return self._buckets[gamma]
        fan = self.fan
        gmask = fan._masks[gamma]
        gdim = fan._dims[gamma]
        sups = fan.supersets(gamma)
        pairs = []
        for si in sups:
            smask = fan._masks[si]
            for ti in sups:
                if (smask & fan._masks[ti]) != gmask:
                    continue
                if self.feasible(si, ti):
                    sign = (-1) ** ((fan._dims[si] + fan._dims[ti] - fan.rank + gdim) % 2)
                    pairs.append((si, ti, sign))
        self._buckets[gamma] = pairs
        return pairs

    def value(self, g1, g2, gamma):
        total = Polynomial.constant(0)
        for si, ti, sign in self.bucket(gamma):
            total = total + sign * (
                Polynomial.coerce(g1[si]) * Polynomial.coerce(g2[ti])
            )
        return total


def product_engine(fan, v):
    key = v.coords
    if key not in fan._engines:
        fan._engines[key] = ProductEngine(fan, v)
    return fan._engines[key]


def product_rule(fan, g1, g2, v, gamma):
    """Fan displacement product of two cone-indexed weights, evaluated at
    the cone gamma (an index)."""
    return product_engine(fan, v).value(g1, g2, gamma)
