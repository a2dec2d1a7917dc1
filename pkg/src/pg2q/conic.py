"""Conic machinery: point/line classification against an irreducible conic,
tangent structure, censuses, and arc tests.

A conic is a ternary quadratic form given by six coefficients
(xx, yy, zz, xy, xz, yz); the canonical one is y^2 - xz.  Classification
assumes q odd (no conic theory attempted in characteristic 2).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property

from .gfq import GF, QuadChar
from .linalg import mat_mul, mat_transpose
from .plane import Plane, PointSet


class DegenerateConic(ValueError):
    pass


class TooFewPoints(ValueError):
    pass


class LineClass(Enum):
    TANGENT = 1
    SECANT = 2
    EXTERNAL = 0


class PointClass(Enum):
    ON_CONIC = 1
    EXTERIOR = 2
    INTERIOR = 0


@dataclass(frozen=True)
class Conic:
    """Irreducible conic on a plane of odd order."""

    plane: Plane
    coeffs: tuple[int, int, int, int, int, int]  # xx, yy, zz, xy, xz, yz

    def __post_init__(self):
        if self.plane.q % 2 == 0:
            raise DegenerateConic("conic classification requires odd q")
        pts = self.points
        if len(pts) != self.plane.q + 1:
            raise DegenerateConic(f"form has {len(pts)} rational points, expected q+1")
        mask = self.point_mask
        for lm in self.plane.line_masks:
            if lm & mask == lm:
                raise DegenerateConic("form vanishes on a full line")

    def evaluate(self, v) -> int:
        gf = self.plane.gf
        x, y, z = v
        xx, yy, zz, xy, xz, yz = self.coeffs
        acc = gf.mul(xx, gf.mul(x, x))
        acc = gf.add(acc, gf.mul(yy, gf.mul(y, y)))
        acc = gf.add(acc, gf.mul(zz, gf.mul(z, z)))
        acc = gf.add(acc, gf.mul(xy, gf.mul(x, y)))
        acc = gf.add(acc, gf.mul(xz, gf.mul(x, z)))
        acc = gf.add(acc, gf.mul(yz, gf.mul(y, z)))
        return acc

    @cached_property
    def points(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.plane.coords) if self.evaluate(c) == 0)

    @cached_property
    def point_mask(self) -> int:
        m = 0
        for p in self.points:
            m |= 1 << p
        return m

    @cached_property
    def line_intersections(self) -> list[int]:
        mask = self.point_mask
        return [bin(lm & mask).count("1") for lm in self.plane.line_masks]

    @cached_property
    def tangent_lines(self) -> tuple[int, ...]:
        return tuple(l for l, c in enumerate(self.line_intersections) if c == 1)

    def classify_line(self, l: int) -> LineClass:
        c = self.line_intersections[l]
        if c == 1:
            return LineClass.TANGENT
        return LineClass.SECANT if c == 2 else LineClass.EXTERNAL

    @cached_property
    def _tangent_counts(self) -> list[int]:
        counts = [0] * self.plane.n
        for l in self.tangent_lines:
            for p in self.plane.points_on_line[l]:
                counts[p] += 1
        return counts

    def classify_point(self, p: int) -> PointClass:
        c = self._tangent_counts[p]
        if c == 1:
            return PointClass.ON_CONIC
        return PointClass.EXTERIOR if c == 2 else PointClass.INTERIOR

    def line_census(self) -> tuple[int, int, int]:
        """(tangent, secant, external) line counts."""
        li = self.line_intersections
        t = sum(1 for c in li if c == 1)
        s = sum(1 for c in li if c == 2)
        return t, s, self.plane.n - t - s

    def point_census(self) -> tuple[int, int, int]:
        """(on-conic, exterior, interior) point counts."""
        tc = self._tangent_counts
        on = sum(1 for c in tc if c == 1)
        ext = sum(1 for c in tc if c == 2)
        return on, ext, self.plane.n - on - ext

    def transform(self, mat) -> "Conic":
        """Conic with point set mapped by x -> Mx (substitute x -> M^-1 x)."""
        from .linalg import mat_inverse

        gf = self.plane.gf
        a = self._sym_matrix()
        minv = mat_inverse(mat, gf)
        b = mat_mul(mat_transpose(minv), mat_mul(a, minv, gf), gf)
        two = gf.add(1, 1)
        return Conic(
            self.plane,
            (b[0], b[4], b[8], gf.mul(two, b[1]), gf.mul(two, b[2]), gf.mul(two, b[5])),
        )

    def _sym_matrix(self):
        gf = self.plane.gf
        xx, yy, zz, xy, xz, yz = self.coeffs
        i2 = gf.inv(gf.add(1, 1))
        hxy, hxz, hyz = gf.mul(i2, xy), gf.mul(i2, xz), gf.mul(i2, yz)
        return (xx, hxy, hxz, hxy, yy, hyz, hxz, hyz, zz)

    def to_json(self) -> dict:
        return {"field": self.plane.gf.spec.to_json(), "coeffs": list(self.coeffs)}


def canonical_conic(plane: Plane) -> Conic:
    """The conic y^2 = xz: points <(1,t,t^2)> for t in GF(q) plus <(0,0,1)>."""
    neg1 = plane.gf.neg(1)
    return Conic(plane, (0, 1, 0, 0, neg1, 0))


def conic_points(conic: Conic) -> PointSet:
    return PointSet(conic.plane, conic.points)


def interior_point_indices(conic: Conic) -> list[int]:
    return [p for p in range(conic.plane.n) if conic.classify_point(p) is PointClass.INTERIOR]


def exterior_point_indices(conic: Conic) -> list[int]:
    return [p for p in range(conic.plane.n) if conic.classify_point(p) is PointClass.EXTERIOR]


def discriminant_point_class(conic_line_a: int, xi: int, gf: GF) -> PointClass:
    """Classify <(1,xi,a)> on the external line z = ax of the canonical conic
    by the sign of xi^2 - a (square: exterior, non-square: interior)."""
    d = gf.sub(gf.mul(xi, xi), conic_line_a)
    ch = gf.quad_char(d)
    if ch is QuadChar.ZERO:
        return PointClass.ON_CONIC
    return PointClass.EXTERIOR if ch is QuadChar.SQUARE else PointClass.INTERIOR


# -- arcs ----------------------------------------------------------------------


def is_arc(plane: Plane, indices) -> bool:
    """No line carries three of the given points."""
    pts = list(indices)
    m = 0
    for p in pts:
        m |= 1 << p
    return all(bin(lm & m).count("1") <= 2 for lm in plane.line_masks)


def is_dual_arc(plane: Plane, line_indices) -> bool:
    """No three of the given lines are concurrent."""
    lines = list(line_indices)
    through = [0] * plane.n
    for l in lines:
        for p in plane.points_on_line[l]:
            through[p] += 1
    return max(through) <= 2


def fit_quadratic_form(plane: Plane, coord_triples) -> tuple[int, ...] | None:
    """Six coefficients of a form vanishing on the given triples, or None if
    only the zero form does or the solution is not unique up to scale."""
    from .linalg import nullspace

    gf = plane.gf
    rows = []
    for x, y, z in coord_triples:
        rows.append(
            [
                gf.mul(x, x),
                gf.mul(y, y),
                gf.mul(z, z),
                gf.mul(x, y),
                gf.mul(x, z),
                gf.mul(y, z),
            ]
        )
    basis = nullspace(rows, gf, ncols=6)
    if len(basis) != 1:
        return None
    return tuple(basis[0])


def arc_is_conic_check(plane: Plane, indices) -> bool:
    """Fit a form through five of the points and test the rest against it."""
    pts = sorted(indices)
    if len(pts) < 5:
        raise TooFewPoints("need at least 5 points to fit a conic")
    coords = [plane.coords[p] for p in pts]
    form = fit_quadratic_form(plane, coords[:5])
    if form is None:
        return False
    probe = Conic.__new__(Conic)  # skip validation: only evaluate is needed
    object.__setattr__(probe, "plane", plane)
    object.__setattr__(probe, "coeffs", form)
    return all(probe.evaluate(c) == 0 for c in coords)
