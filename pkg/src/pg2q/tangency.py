"""Analysis of arbitrary point sets: intersection spectra, tangent-freeness,
determined directions, and completions of affine sets to sets without tangents.
"""

from __future__ import annotations

from dataclasses import dataclass

from .plane import PointSet


class PointsOnInfinity(ValueError):
    pass


class WrongSize(ValueError):
    pass


class SizeMismatch(ValueError):
    pass


class TooManyDirections(ValueError):
    def __init__(self, count, limit):
        super().__init__(f"{count} determined directions, need fewer than {limit}")
        self.count = count
        self.limit = limit


@dataclass(frozen=True)
class Spectrum:
    """x_i = number of lines meeting the set in exactly i points."""

    q: int
    size: int
    counts: tuple[int, ...]  # index i in [0, q+1]

    def __getitem__(self, i: int) -> int:
        return self.counts[i] if 0 <= i < len(self.counts) else 0

    def check_identities(self) -> bool:
        n_lines = self.q * self.q + self.q + 1
        s0 = sum(self.counts)
        s1 = sum(i * x for i, x in enumerate(self.counts))
        s2 = sum(i * (i - 1) * x for i, x in enumerate(self.counts))
        return (
            s0 == n_lines
            and s1 == self.size * (self.q + 1)
            and s2 == self.size * (self.size - 1)
        )

    def max_secant(self) -> int:
        return max((i for i, x in enumerate(self.counts) if x and i), default=0)

    def __str__(self) -> str:
        return " ".join(f"{i}:{x}" for i, x in enumerate(self.counts) if x)


def spectrum(s: PointSet) -> Spectrum:
    counts = [0] * (s.plane.q + 2)
    for c in s.per_line:
        counts[c] += 1
    return Spectrum(s.plane.q, len(s), tuple(counts))


def is_tangent_free(s: PointSet) -> bool:
    """No line meets the set in exactly one point (the empty set passes
    vacuously; report non-emptiness separately)."""
    return all(c != 1 for c in s.per_line)


def tangent_lines_of(s: PointSet) -> list[int]:
    return [l for l, c in enumerate(s.per_line) if c == 1]


def spectrum_solutions(n: int, q: int, max_i: int) -> list[tuple[int, ...]]:
    """All non-negative integer vectors (x_0, x_2, ..., x_max_i) with x_1 = 0
    satisfying the three line-count identities for an n-point set in PG(2,q).

    x_3 and x_2 are eliminated from the second and third identities, then the
    remaining free variables x_4..x_max_i are swept over their bounded ranges.
    """
    n_lines = q * q + q + 1
    s1 = n * (q + 1)
    s2 = n * (n - 1)
    out = []

    def rec(i, tail, t1, t2):
        # t1, t2: contributions of the already-chosen x_i, i >= 4
        if i == 3:
            num3 = (s2 - t2) - (s1 - t1)
            if num3 < 0 or num3 % 3:
                return
            x3 = num3 // 3
            num2 = s1 - t1 - 3 * x3
            if num2 < 0 or num2 % 2:
                return
            x2 = num2 // 2
            x0 = n_lines - x2 - x3 - sum(tail)
            if x0 >= 0:
                out.append((x0, x2, x3) + tail)
            return
        bound = min((s1 - t1) // i, (s2 - t2) // (i * (i - 1)))
        for xi in range(bound + 1):
            rec(i - 1, (xi,) + tail, t1 + i * xi, t2 + i * (i - 1) * xi)

    if n == 0:
        return [(n_lines,) + (0,) * max(0, max_i - 1)]
    if max_i < 2:
        return []
    if max_i == 2:
        # only x_0 and x_2 free
        if s1 % 2 == 0 and s2 == s1:
            return [(n_lines - s1 // 2, s1 // 2)]
        return []
    rec(max_i, (), 0, 0)
    return sorted(out)


@dataclass(frozen=True)
class DirectionSet:
    line_at_infinity: int
    determined: frozenset[int]
    non_determined: frozenset[int]


def determined_directions(affine: PointSet, linf: int) -> DirectionSet:
    """A point D on the infinite line is determined iff some line through D
    carries at least two points of the affine set."""
    plane = affine.plane
    if affine.per_line[linf] > 0:
        raise PointsOnInfinity("affine set meets the chosen infinite line")
    det, non = set(), set()
    for d in plane.points_on_line[linf]:
        if any(affine.per_line[l] >= 2 for l in plane.lines_through_point[d] if l != linf):
            det.add(d)
        else:
            non.add(d)
    return DirectionSet(linf, frozenset(det), frozenset(non))


def slope_directions(affine: PointSet, linf: int) -> frozenset[int]:
    """Cross-check: directions as joins of affine pairs met with the line."""
    plane = affine.plane
    pts = sorted(affine.members)
    out = set()
    for i, a in enumerate(pts):
        for b in pts[i + 1 :]:
            out.add(plane.meet(plane.line_through(a, b), linf))
    return frozenset(out)


def redei_completion(affine: PointSet, linf: int) -> PointSet:
    """Affine q-set plus its non-determined directions; a set without tangents
    whenever fewer than (q+3)/2 directions are determined."""
    plane = affine.plane
    q = plane.q
    if plane.gf.p == 2:
        raise WrongSize("completion requires odd characteristic")
    if len(affine) != q:
        raise WrongSize(f"affine part has {len(affine)} points, need q={q}")
    ds = determined_directions(affine, linf)
    limit = (q + 3) // 2
    if len(ds.determined) >= limit:
        raise TooManyDirections(len(ds.determined), limit)
    out = affine.copy()
    for d in ds.non_determined:
        out.add(d)
    assert is_tangent_free(out), "completion must be tangent-free"
    return out


def redei_converse_check(s: PointSet, linf: int) -> bool:
    """For a tangent-free set of size q+k with k points on the chosen line,
    those k points must be exactly the non-determined directions of the rest."""
    plane = s.plane
    q = plane.q
    on_line = {p for p in s.members if plane.incident(p, linf)}
    if len(s) != q + len(on_line):
        raise SizeMismatch(f"|S|={len(s)} but |S on line|={len(on_line)}, need |S|=q+k")
    if not is_tangent_free(s):
        raise SizeMismatch("input set has a tangent")
    affine = PointSet(plane, s.members - on_line)
    ds = determined_directions(affine, linf)
    return frozenset(on_line) == ds.non_determined


def one_mod_p_check(affine: PointSet, linf: int) -> bool:
    """Every line meets the affine set together with its determined directions
    in 1 mod p points (holds when fewer than (q+3)/2 directions determined)."""
    plane = affine.plane
    p = plane.gf.p
    ds = determined_directions(affine, linf)
    full = affine.copy()
    for d in ds.determined:
        full.add(d)
    return all(c % p == 1 for c in full.per_line)


@dataclass(frozen=True)
class SecantBoundReport:
    p: int
    sizes: tuple[int, ...]
    heavy_sets_found: int
    all_heavy_trivial: bool
    max_secant_by_size: dict
    nodes: int


def is_trivial_set(s: PointSet) -> bool:
    """Two full lines minus their intersection point."""
    plane = s.plane
    q = plane.q
    if len(s) != 2 * q:
        return False
    heavy = [l for l, c in enumerate(s.per_line) if c == q]
    if len(heavy) != 2:
        return False
    z = plane.meet(heavy[0], heavy[1])
    want = (plane.line_masks[heavy[0]] | plane.line_masks[heavy[1]]) & ~(1 << z)
    return s.mask == want


def secant_bound_check(p: int) -> SecantBoundReport:
    """Exhaustively confirm, for prime p, that every tangent-free set of size
    at most 2p having a line with >= |S|/2 - (p-1)/4 of its points is trivial.

    The heavy line is pinned to line 0 (the collineation group is transitive
    on lines); completions are enumerated by the exact-size repair search.
    """
    from .plane import plane_for
    from .search import _enumerate_with_state

    plane = plane_for(p, 1)
    q = plane.q
    l0 = 0
    pts0 = plane.points_on_line[l0]
    heavy_found = 0
    all_trivial = True
    max_sec: dict[int, int] = {}
    nodes = 0
    sizes = tuple(range(q + 2, 2 * q + 1))
    from itertools import combinations

    for s_total in sizes:
        # smallest x with x >= s/2 - (p-1)/4
        xmin = -((-(2 * s_total - p + 1)) // 4)
        for x in range(max(xmin, 2), q + 2):
            if x > s_total:
                break
            for subset in combinations(pts0, x):
                excluded = set(pts0) - set(subset)
                found, cnt = _enumerate_with_state(plane, s_total, list(subset), excluded)
                nodes += cnt
                for members in found:
                    ps = PointSet(plane, members)
                    heavy_found += 1
                    sp = spectrum(ps)
                    max_sec[s_total] = max(max_sec.get(s_total, 0), sp.max_secant())
                    if not is_trivial_set(ps):
                        all_trivial = False
    return SecantBoundReport(p, sizes, heavy_found, all_trivial, max_sec, nodes)
