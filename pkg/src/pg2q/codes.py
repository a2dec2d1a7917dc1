"""The coding-theory layer: incidence matrix over F_p, dual-code membership,
codeword supports, and the peeling (iterative erasure) decoder whose fixpoints
are the stopping sets of the plane's LDPC code.

Convention: rows of the incidence matrix are lines, columns are points.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

import numpy as np

from .gfq import GF, field_for_order
from .linalg import nullspace
from .plane import Plane, PointSet, plane_for_order
from .tangency import is_tangent_free


class NotCodeword(ValueError):
    pass


class IncidenceCode:
    """Incidence matrix of PG(2,q) as a parity-check structure over F_p."""

    def __init__(self, plane: Plane):
        self.plane = plane
        self.p = plane.gf.p
        self.A = np.zeros((plane.n, plane.n), dtype=np.int64)
        for l, pts in enumerate(plane.points_on_line):
            self.A[l, list(pts)] = 1
        self._null_basis = None

    def is_dual_codeword(self, v) -> bool:
        """Every line sum must vanish mod p."""
        v = np.asarray(v, dtype=np.int64) % self.p
        if v.shape != (self.plane.n,):
            raise ValueError(f"vector length must be {self.plane.n}")
        return bool(np.all(self.A @ v % self.p == 0))

    def support(self, v) -> frozenset[int]:
        v = np.asarray(v, dtype=np.int64) % self.p
        return frozenset(int(i) for i in np.flatnonzero(v))

    def support_tangency(self, v) -> bool:
        """Verdict of the tangency module on the support of a dual codeword."""
        if not self.is_dual_codeword(v):
            raise NotCodeword("line sums do not vanish")
        s = PointSet(self.plane, self.support(v))
        return is_tangent_free(s)

    def nullspace_basis(self) -> list[np.ndarray]:
        """Basis of the dual code (right nullspace of the incidence matrix)."""
        if self._null_basis is None:
            gfp = field_for_order(self.p)
            rows = [list(r) for r in self.A]
            self._null_basis = [np.array(b, dtype=np.int64) for b in nullspace(rows, gfp)]
        return self._null_basis

    def random_dual_codewords(self, count: int, rng: random.Random) -> list[np.ndarray]:
        basis = self.nullspace_basis()
        out = []
        for _ in range(count):
            v = np.zeros(self.plane.n, dtype=np.int64)
            for b in basis:
                c = rng.randrange(self.p)
                if c:
                    v = (v + c * b) % self.p
            out.append(v)
        return out

    def dual_codeword_on_support(self, members, exhaustive_cap: int = 10**7):
        """A dual codeword with support exactly the given point set, if any.

        Works in the nullspace of the lines-by-members submatrix.  When the
        nullspace has at most `exhaustive_cap` vectors the search is
        exhaustive and the answer exact; otherwise a randomized search is used
        and `exact` comes back False.

        Returns (vector over all points or None, exact).
        """
        cols = sorted(members)
        if not cols:
            return None, True
        gfp = field_for_order(self.p)
        rows = [[int(self.A[l, c]) for c in cols] for l in range(self.plane.n)]
        basis = nullspace(rows, gfp, ncols=len(cols))
        dim = len(basis)
        if dim == 0:
            return None, True
        if self.p**dim <= exhaustive_cap:
            for coeffs in product(range(self.p), repeat=dim):
                if not any(coeffs):
                    continue
                w = [0] * len(cols)
                for c, b in zip(coeffs, basis):
                    if c:
                        for i, bi in enumerate(b):
                            w[i] = (w[i] + c * bi) % self.p
                if all(w):
                    v = np.zeros(self.plane.n, dtype=np.int64)
                    v[cols] = w
                    assert self.is_dual_codeword(v)
                    return v, True
            return None, True
        rng = random.Random(0xC0DE)
        for _ in range(200000):
            w = [0] * len(cols)
            for b in basis:
                c = rng.randrange(self.p)
                if c:
                    for i, bi in enumerate(b):
                        w[i] = (w[i] + c * bi) % self.p
            if all(w):
                v = np.zeros(self.plane.n, dtype=np.int64)
                v[cols] = w
                assert self.is_dual_codeword(v)
                return v, False
        return None, False


_CODES: dict[tuple, IncidenceCode] = {}


def incidence_code(q: int) -> IncidenceCode:
    plane = plane_for_order(q)
    key = plane.gf.spec
    if key not in _CODES:
        _CODES[key] = IncidenceCode(plane)
    return _CODES[key]


def trivial_signing(q: int) -> np.ndarray:
    """+1 on the first line minus the meet, -1 on the second: weight 2q."""
    plane = plane_for_order(q)
    l1, l2 = 0, 1
    z = plane.meet(l1, l2)
    v = np.zeros(plane.n, dtype=np.int64)
    p = plane.gf.p
    for pt in plane.points_on_line[l1]:
        v[pt] = 1
    for pt in plane.points_on_line[l2]:
        v[pt] = p - 1
    v[z] = 0
    return v


def hyperoval(q: int = 4) -> PointSet:
    """Conic plus nucleus over an even-order field: a (q+2)-arc."""
    plane = plane_for_order(q)
    if q % 2:
        raise ValueError("hyperovals exist only for even q")
    gf = plane.gf
    pts = [plane.index_of((1, t, gf.mul(t, t))) for t in range(q)]
    pts.append(plane.index_of((0, 0, 1)))
    pts.append(plane.index_of((0, 1, 0)))  # nucleus of y^2 = xz
    out = PointSet(plane, pts)
    assert len(out) == q + 2 and all(c <= 2 for c in out.per_line)
    return out


def peel_decode(q: int, erased, rng: random.Random | None = None) -> frozenset[int]:
    """Repeatedly delete an erased point lying on a line with exactly one
    erased point; the fixpoint is the unique maximal stopping subset.

    The processing order is immaterial (peeling is confluent); pass an rng to
    randomize it for confluence tests.
    """
    plane = plane_for_order(q)
    erased = set(erased)
    counts = [0] * plane.n
    for pt in erased:
        for l in plane.lines_through_point[pt]:
            counts[l] += 1
    changed = True
    while changed:
        changed = False
        lines = [l for l, c in enumerate(counts) if c == 1]
        if rng is not None:
            rng.shuffle(lines)
        for l in lines:
            if counts[l] != 1:
                continue
            victim = next(pt for pt in plane.points_on_line[l] if pt in erased)
            erased.remove(victim)
            for m in plane.lines_through_point[victim]:
                counts[m] -= 1
            changed = True
    return frozenset(erased)


def batch_peel_fixpoint(q: int, erased) -> frozenset[int]:
    """Oracle: recompute from scratch each round, removing every point on any
    currently singleton line simultaneously, until stable."""
    plane = plane_for_order(q)
    cur = set(erased)
    while True:
        mask = 0
        for pt in cur:
            mask |= 1 << pt
        doomed = set()
        for lm in plane.line_masks:
            inter = lm & mask
            if inter and inter & (inter - 1) == 0:
                doomed.add(inter.bit_length() - 1)
        if not doomed:
            return frozenset(cur)
        cur -= doomed


@dataclass(frozen=True)
class StoppingEquivalenceReport:
    q: int
    cases: int
    ok: bool


def stopping_equivalence_check(q: int, samples: int = 300, rng: random.Random | None = None) -> StoppingEquivalenceReport:
    """Peeling makes no progress exactly on tangent-free (stopping) sets.

    Exhaustive over all 6-subsets for q=3; random subsets plus the known
    stopping sets for larger q.
    """
    from itertools import combinations

    plane = plane_for_order(q)
    rng = rng or random.Random(q * 7919)
    cases = 0
    ok = True

    def fixed(sub):
        return peel_decode(q, sub) == frozenset(sub)

    def check(sub):
        nonlocal cases, ok
        cases += 1
        ps = PointSet(plane, sub)
        if fixed(sub) != is_tangent_free(ps):
            ok = False

    if q == 3:
        for sub in combinations(range(plane.n), 6):
            check(sub)
    for _ in range(samples):
        size = rng.randrange(1, plane.n)
        check(rng.sample(range(plane.n), size))
    return StoppingEquivalenceReport(q, cases, ok)
