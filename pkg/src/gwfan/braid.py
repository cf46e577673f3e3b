"""Flags of nonempty proper subsets of [n]: the cone combinatorics of the
permutohedral (braid) fan.

Subsets of the 1-based ground set [n] are plain int bitmasks (bit i-1 marks
element i).  The canonical total order on subsets is (popcount, numeric
value); flags are strictly increasing chains stored smallest set first, and
the empty flag stands for the zero cone.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import LatticeVector
from .util import CapExceeded, DEFAULT_NCAP, HARD_NCAP


def full_mask(n):
    return (1 << n) - 1


def mask_of(elements):
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def elements_of(mask):
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def subset_key(mask):
    return (mask.bit_count(), mask)


def proper_nonempty_subsets(n):
    return sorted(range(1, full_mask(n)), key=subset_key)


@dataclass(frozen=True)
class Flag:
    """Strictly increasing chain of nonempty proper subsets of [n]."""

    n: int
    sets: tuple

    def __post_init__(self):
        full = full_mask(self.n)
        prev = 0
        for s in self.sets:
            if s <= 0 or s >= full:
                raise ValueError(f"flag member {s} is not a nonempty proper subset")
            if prev and ((prev & s) != prev or s == prev):
                raise ValueError("flag members must form a strictly increasing chain")
            prev = s

    @property
    def length(self):
        return len(self.sets)

    def refines(self, other):
        """True when every member of other also belongs to this flag."""
        if self.n != other.n:
            raise ValueError("flags on different ground sets")
        mine = set(self.sets)
        return all(s in mine for s in other.sets)

    def common(self, other):
        shared = set(self.sets) & set(other.sets)
        return Flag(self.n, tuple(sorted(shared, key=subset_key)))

    def sort_key(self):
        return (len(self.sets), tuple(subset_key(s) for s in self.sets))

    def to_json(self):
        return [elements_of(s) for s in self.sets]

    @classmethod
    def from_json(cls, n, data):
        return cls(n, tuple(mask_of(part) for part in data))

    @classmethod
    def of(cls, n, *parts):
        return cls(n, tuple(mask_of(p) for p in parts))

    def __repr__(self):
        inner = ", ".join("{" + ",".join(map(str, elements_of(s))) + "}" for s in self.sets)
        return f"Flag[{inner}]" if self.sets else "Flag[]"


def enumerate_flags(n, cap=DEFAULT_NCAP):
    """All flags on [n], empty flag included, in canonical order."""
    if n < 2:
        raise ValueError("ground set must have at least 2 elements")
    cap = min(cap if cap else DEFAULT_NCAP, HARD_NCAP)
    if n > cap:
        raise CapExceeded(f"flag enumeration for n={n} exceeds cap {cap}")
    full = full_mask(n)
    out = []

    def extend(chain):
        out.append(Flag(n, tuple(chain)))
        prev = chain[-1] if chain else 0
        start = prev + 1 if chain else 1
        for s in range(start, full):
            if (s & prev) == prev:
                chain.append(s)
                extend(chain)
                chain.pop()

    extend([])
    out.sort(key=Flag.sort_key)
    return out


def chain_count(n):
    """Independent count of flags by DP over the subset lattice."""
    full = full_mask(n)
    memo = {}

    def above(s):
        if s in memo:
            return memo[s]
        total = 1
        for t in range(s + 1, full):
            if (t & s) == s:
                total += above(t)
        memo[s] = total
        return total

    return 1 + sum(above(s) for s in range(1, full))


def cone_rays(flag):
    """Quotient lattice generators e_S of the cone of a flag, in chain order."""
    return [LatticeVector.e_subset(flag.n, s) for s in flag.sets]


def is_ij_neutral(flag, i, j):
    """Every member contains both of i, j or neither."""
    if i == j or not (1 <= i <= flag.n and 1 <= j <= flag.n):
        raise ValueError(f"need distinct elements of [n], got {i}, {j}")
    bi, bj = 1 << (i - 1), 1 << (j - 1)
    for s in flag.sets:
        if bool(s & bi) != bool(s & bj):
            return False
    return True


def neutral_gap(flag, i, j):
    """Index of the unique chain gap across which both i and j enter."""
    bi = 1 << (i - 1)
    k = 0
    while k < len(flag.sets) and not (flag.sets[k] & bi):
        k += 1
    return k


def _chains(candidates):
    """All nonempty chains among the candidate masks."""
    cands = sorted(candidates, key=subset_key)
    chains = []

    def extend(prefix, start):
        for idx in range(start, len(cands)):
            s = cands[idx]
            if prefix and (s & prefix[-1]) != prefix[-1]:
                continue
            prefix.append(s)
            chains.append(tuple(prefix))
            extend(prefix, idx + 1)
            prefix.pop()

    extend([], 0)
    return chains


def strict_refinements_ij(flag, i, j, allowed=None):
    """Flags refining `flag` whose every new set contains i but not j.

    The chain condition forces all new sets into the single gap of the
    {i,j}-neutral flag where both elements enter; the candidates there form
    the interval between gap-bottom + {i} and gap-top - {j}.  `allowed`
    restricts the candidate sets (e.g. to the flats of a matroid).
    """
    if not is_ij_neutral(flag, i, j):
        raise ValueError(f"flag is not {{{i},{j}}}-neutral")
    n = flag.n
    bi, bj = 1 << (i - 1), 1 << (j - 1)
    k = neutral_gap(flag, i, j)
    low = flag.sets[k - 1] if k else 0
    high = flag.sets[k] if k < len(flag.sets) else full_mask(n)
    base = low | bi
    free = high & ~base & ~bj
    candidates = []
    sub = free
    while True:
        candidates.append(base | sub)
        if sub == 0:
            break
        sub = (sub - 1) & free
    if allowed is not None:
        candidates = [c for c in candidates if c in allowed]
    prefix = flag.sets[:k]
    suffix = flag.sets[k:]
    out = [Flag(n, prefix + chain + suffix) for chain in _chains(candidates)]
    out.sort(key=Flag.sort_key)
    return out
