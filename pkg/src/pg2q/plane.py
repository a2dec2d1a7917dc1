"""The incidence structure PG(2,q): points, lines, joins, meets, point sets.

Points and lines are normalized homogeneous triples (first nonzero coordinate
scaled to 1) addressed by a dense index in [0, q^2+q+1).  Enumeration order:
<(1,y,z)> by (y,z) code-lexicographic, then <(0,1,z)> by z, then <(0,0,1)>.
A line with dual triple (a,b,c) gets the index of the point (a,b,c).
"""

from __future__ import annotations

import json
from functools import lru_cache

import numpy as np

from .gfq import GF, FieldSpec, field_new


class IdenticalPoints(ValueError):
    pass


class IdenticalLines(ValueError):
    pass


class Plane:
    """Full incidence tables for PG(2,q); immutable after construction."""

    def __init__(self, gf: GF):
        self.gf = gf
        q = gf.q
        self.q = q
        self.n = q * q + q + 1
        coords = []
        for y in range(q):
            for z in range(q):
                coords.append((1, y, z))
        for z in range(q):
            coords.append((0, 1, z))
        coords.append((0, 0, 1))
        self.coords: list[tuple[int, int, int]] = coords
        self._index = {c: i for i, c in enumerate(coords)}
        inc = self._incidence_matrix()
        # rows: lines, cols: points (same index space on both sides)
        self.points_on_line = [tuple(np.flatnonzero(inc[l]).tolist()) for l in range(self.n)]
        self.lines_through_point = [tuple(np.flatnonzero(inc[:, p]).tolist()) for p in range(self.n)]
        self.line_masks = [0] * self.n
        for l, pts in enumerate(self.points_on_line):
            m = 0
            for p in pts:
                m |= 1 << p
            self.line_masks[l] = m
        self._inc = inc

    def _incidence_matrix(self) -> np.ndarray:
        gf = self.gf
        pts = np.array(self.coords, dtype=np.int64)
        if gf.h == 1:
            dots = (pts @ pts.T) % gf.p
        else:
            mul, add = gf.mul_table, gf.add_table
            t = mul[pts[:, None, 0], pts[None, :, 0]]
            t = add[t, mul[pts[:, None, 1], pts[None, :, 1]]]
            dots = add[t, mul[pts[:, None, 2], pts[None, :, 2]]]
        return dots == 0

    # -- coordinates ---------------------------------------------------------

    def normalize(self, v) -> tuple[int, int, int]:
        gf = self.gf
        v = tuple(int(c) % gf.q if gf.h == 1 else int(c) for c in v)
        for c in v:
            if c:
                if c == 1:
                    return v
                inv = gf.inv(c)
                return tuple(gf.mul(inv, x) for x in v)
        raise ValueError("zero vector has no projective class")

    def index_of(self, v) -> int:
        return self._index[self.normalize(v)]

    def point_coords(self, i: int) -> tuple[int, int, int]:
        return self.coords[i]

    line_coords = point_coords

    def incident(self, p: int, l: int) -> bool:
        return bool(self._inc[l, p])

    def _cross(self, a, b):
        gf = self.gf
        return (
            gf.sub(gf.mul(a[1], b[2]), gf.mul(a[2], b[1])),
            gf.sub(gf.mul(a[2], b[0]), gf.mul(a[0], b[2])),
            gf.sub(gf.mul(a[0], b[1]), gf.mul(a[1], b[0])),
        )

    def line_through(self, p: int, r: int) -> int:
        if p == r:
            raise IdenticalPoints(f"point {p} repeated")
        return self._index[self.normalize(self._cross(self.coords[p], self.coords[r]))]

    def meet(self, l: int, m: int) -> int:
        if l == m:
            raise IdenticalLines(f"line {l} repeated")
        return self._index[self.normalize(self._cross(self.coords[l], self.coords[m]))]

    def apply_matrix(self, mat, p: int) -> int:
        """Image of a point index under a 3x3 matrix (row-major codes)."""
        from .linalg import mat_vec

        return self._index[self.normalize(mat_vec(mat, self.coords[p], self.gf))]

    def apply_matrix_to_line(self, mat, l: int) -> int:
        """Image of a line under a point map x -> Mx: duals map by (M^-1)^T."""
        from .linalg import mat_inverse, mat_transpose, mat_vec

        mt = mat_transpose(mat_inverse(mat, self.gf))
        return self._index[self.normalize(mat_vec(mt, self.coords[l], self.gf))]


@lru_cache(maxsize=None)
def plane_for(p: int, h: int = 1, modulus=None) -> Plane:
    return Plane(field_new(p, h, modulus))


def plane_for_order(q: int) -> Plane:
    from .gfq import field_for_order

    gf = field_for_order(q)
    return plane_for(gf.p, gf.h)


class PointSet:
    """Mutable set of point indices with per-line intersection counts.

    Counts are maintained incrementally on add/remove; `recomputed_counts`
    rebuilds them from scratch for verification.
    """

    def __init__(self, plane: Plane, members=()):
        self.plane = plane
        self.members: set[int] = set()
        self.per_line = [0] * plane.n
        self.mask = 0
        for p in members:
            self.add(p)

    def add(self, p: int) -> None:
        if p in self.members:
            return
        self.members.add(p)
        self.mask |= 1 << p
        for l in self.plane.lines_through_point[p]:
            self.per_line[l] += 1

    def remove(self, p: int) -> None:
        if p not in self.members:
            raise KeyError(p)
        self.members.remove(p)
        self.mask &= ~(1 << p)
        for l in self.plane.lines_through_point[p]:
            self.per_line[l] -= 1

    def __contains__(self, p: int) -> bool:
        return p in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def copy(self) -> "PointSet":
        out = PointSet.__new__(PointSet)
        out.plane = self.plane
        out.members = set(self.members)
        out.per_line = list(self.per_line)
        out.mask = self.mask
        return out

    def recomputed_counts(self) -> list[int]:
        return [bin(self.mask & m).count("1") for m in self.plane.line_masks]

    def sorted_tuple(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "field": self.plane.gf.spec.to_json(),
            "points": [list(self.plane.coords[p]) for p in sorted(self.members)],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PointSet":
        spec = FieldSpec.from_json(obj["field"])
        plane = plane_for(spec.p, spec.h, spec.modulus)
        return cls(plane, (plane.index_of(v) for v in obj["points"]))

    def dump(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def load(cls, text: str) -> "PointSet":
        return cls.from_json(json.loads(text))
