"""Generalized permutohedra as integral submodular support data.

A polytope P is stored by its support values z(S) = h_P(e_S) on every
nonempty subset S of [n] (z on the full set is the affine level).  The
polytope is { x : sum_{i in S} x_i <= z(S), sum x_i = z([n]) }.  Lattice
point counts run over the integer bounding box implied by the singleton
and co-singleton constraints; exact arithmetic throughout.
"""

from __future__ import annotations

from .braid import Flag, elements_of, full_mask, mask_of


class GenPermutohedron:
    __slots__ = ("n", "z")

    def __init__(self, n, z, validate=True):
        full = full_mask(n)
        z = {int(s): int(v) for s, v in z.items()}
        if set(z) != set(range(1, full + 1)):
            raise ValueError("support data must cover every nonempty subset")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "z", z)
        if validate:
            self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("GenPermutohedron is immutable")

    def _validate(self):
        z = dict(self.z)
        z[0] = 0
        full = full_mask(self.n)
        for a in range(full + 1):
            for b in range(a + 1, full + 1):
                if z[a] + z[b] < z[a | b] + z[a & b]:
                    raise ValueError(
                        "support data is not submodular: "
                        f"z({elements_of(a)}) + z({elements_of(b)}) < "
                        f"z({elements_of(a | b)}) + z({elements_of(a & b)})"
                    )

    @classmethod
    def delta(cls, n, i_mask):
        """Simplex conv{e_i - e_i0 : i in I} with i0 = min(I), as support data."""
        if isinstance(i_mask, (list, tuple, set, frozenset)):
            i_mask = mask_of(i_mask)
        if i_mask <= 0 or i_mask > full_mask(n):
            raise ValueError("index set must be a nonempty subset of [n]")
        b0 = i_mask & -i_mask  # lowest element of I
        z = {}
        for s in range(1, full_mask(n) + 1):
            z[s] = (1 if s & i_mask else 0) - (1 if s & b0 else 0)
        return cls(n, z, validate=False)

    def minkowski(self, other):
        if self.n != other.n:
            raise ValueError("Minkowski sum needs matching ground sets")
        return GenPermutohedron(
            self.n, {s: self.z[s] + other.z[s] for s in self.z}, validate=False
        )

    @property
    def level(self):
        return self.z[full_mask(self.n)]

    def face_points(self, flag=None):
        """Number of lattice points of face_F(P); the whole of P for F empty."""
        n = self.n
        full = full_mask(n)
        tight = set(flag.sets) if flag is not None else set()
        if flag is not None and flag.n != n:
            raise ValueError("flag ground set does not match polytope")
        level = self.level
        lows = [level - self.z[full & ~(1 << i)] for i in range(n)]
        highs = [self.z[1 << i] for i in range(n)]
        if any(lo > hi for lo, hi in zip(lows, highs)):
            return 0
        subsets = [s for s in range(1, full)]
        count = 0

        def scan(i, point, total):
            nonlocal count
            if i == n:
                if total != level:
                    return
                for s in subsets:
                    val = sum(point[j] for j in range(n) if s & (1 << j))
                    if val > self.z[s] or (s in tight and val != self.z[s]):
                        return
                count += 1
                return
            rest_lo = sum(lows[i + 1 :])
            rest_hi = sum(highs[i + 1 :])
            for x in range(lows[i], highs[i] + 1):
                if total + x + rest_hi < level or total + x + rest_lo > level:
                    continue
                point.append(x)
                scan(i + 1, point, total + x)
                point.pop()

        scan(0, [], 0)
        return count

    def lattice_points(self):
        return self.face_points(None)

    def to_json(self):
        return {
            "n": self.n,
            "z": {
                ",".join(map(str, elements_of(s))): v
                for s, v in sorted(self.z.items())
            },
        }

    @classmethod
    def from_json(cls, data):
        n = data["n"]
        z = {
            mask_of(int(tok) for tok in key.split(",")): v
            for key, v in data["z"].items()
        }
        return cls(n, z)


def delta_face_count_closed_form(n, i_mask, flag):
    """Count of face_F(Delta_I) lattice points without enumeration:
    |I intersect F_t| at the first chain member that meets I."""
    for s in flag.sets:
        if s & i_mask:
            return (s & i_mask).bit_count()
    return i_mask.bit_count()
