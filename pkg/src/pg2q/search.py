"""Exact searches for minimum tangent-free sets, exhaustive enumeration at a
fixed size, and classification up to PGL(3,q).

The core is a repair DFS: while the partial set has a tangent line, every
completion must pick up another point of that line, so we branch over its
available points (accumulating exclusions across siblings, which makes the
enumeration duplicate-free).  Pruning uses the sqrt lower bound on u_q plus a
greedy matching of tangent lines with pairwise disjoint candidate pools.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass

import numpy as np

from .gfq import field_for_order
from .plane import Plane, PointSet, plane_for_order
from .tangency import is_tangent_free


class CapTooSmall(ValueError):
    pass


class Infeasible(ValueError):
    pass


class TooLarge(ValueError):
    pass


class GroupTooLarge(ValueError):
    pass


def lower_bound(q: int) -> int:
    """Proven floor on the size of a non-empty tangent-free set: q+2 for even
    q (sharp, hyperovals), else the smallest integer m >= q + sqrt(2q)/4 + 2
    (integer-exact comparison, no floating point)."""
    if q % 2 == 0:
        return q + 2
    m = q + 2
    while not 16 * (m - q - 2) ** 2 >= 2 * q:
        m += 1
    return m


# -- repair DFS ------------------------------------------------------------------


class _Searcher:
    """One DFS instance over a fixed plane; reusable across targets."""

    def __init__(self, plane: Plane):
        self.plane = plane
        self.line_masks = plane.line_masks
        self.point_lines = plane.lines_through_point
        self.all_points_mask = (1 << plane.n) - 1
        self.counts = [0] * plane.n
        self.tangents: set[int] = set()
        self.partial: list[int] = []
        self.partial_mask = 0
        self.nodes = 0
        self.deadline = None

    def _add(self, p):
        self.partial.append(p)
        self.partial_mask |= 1 << p
        counts, tang = self.counts, self.tangents
        for l in self.point_lines[p]:
            c = counts[l]
            counts[l] = c + 1
            if c == 0:
                tang.add(l)
            elif c == 1:
                tang.discard(l)

    def _remove(self):
        p = self.partial.pop()
        self.partial_mask &= ~(1 << p)
        counts, tang = self.counts, self.tangents
        for l in self.point_lines[p]:
            c = counts[l]
            counts[l] = c - 1
            if c == 1:
                tang.discard(l)
            elif c == 2:
                tang.add(l)

    def _scan_tangents(self, free):
        """One pass over the current tangent lines.

        Returns (dead, bound, branch_line, branch_avail): `bound` is the
        larger of a greedy matching of avail-disjoint tangents and the largest
        tangent pencil through a single member (each new point can repair at
        most one tangent per pencil); the branch line has the fewest available
        points (ties to the smallest index).
        """
        used = 0
        k = 0
        pencil: dict[int, int] = {}
        max_pencil = 0
        best_line = -1
        best_avail = 0
        best_cnt = None
        for l in sorted(self.tangents):
            lm = self.line_masks[l]
            avail = lm & free
            if avail == 0:
                return True, 0, -1, 0
            if avail & used == 0:
                k += 1
                used |= avail
            base = (lm & self.partial_mask).bit_length() - 1
            c = pencil.get(base, 0) + 1
            pencil[base] = c
            if c > max_pencil:
                max_pencil = c
            cnt = bin(avail).count("1")
            if best_cnt is None or cnt < best_cnt:
                best_cnt = cnt
                best_line = l
                best_avail = avail
        return False, max(k, max_pencil), best_line, best_avail

    def run(self, n_target: int, excluded_mask: int, exact_size: bool, collect, seed=()):
        """DFS all tangent-free supersets of the seed avoiding excluded points.

        exact_size: enumerate every tangent-free set of size exactly n_target
        (collect returns None); otherwise stop at the first tangent-free set
        found (collect returns True to stop the search).
        """
        for p in seed:
            self._add(p)
        try:
            return self._dfs(n_target, excluded_mask, exact_size, collect)
        finally:
            for _ in seed:
                self._remove()

    def _dfs(self, n_target, excluded_mask, exact_size, collect):
        self.nodes += 1
        if self.deadline is not None and self.nodes % 4096 == 0 and time.monotonic() > self.deadline:
            raise TimeoutError
        size = len(self.partial)
        free = self.all_points_mask & ~self.partial_mask & ~excluded_mask
        if not self.tangents:
            if not exact_size:
                if size > 0 and collect(tuple(self.partial)):
                    return True
                return False
            if size == n_target:
                collect(tuple(self.partial))
                return False
            # grow: branch over every remaining point, excluding tried ones
            if size + bin(free).count("1") < n_target:
                return False
            ex = excluded_mask
            avail = free
            while avail:
                bit = avail & -avail
                avail ^= bit
                self._add(bit.bit_length() - 1)
                stop = self._dfs(n_target, ex, exact_size, collect)
                self._remove()
                if stop:
                    return True
                ex |= bit
            return False
        dead, bound, line, avail = self._scan_tangents(free)
        if dead or size + bound > n_target:
            return False
        if exact_size and size + bin(free).count("1") < n_target:
            return False
        ex = excluded_mask
        while avail:
            bit = avail & -avail
            avail ^= bit
            self._add(bit.bit_length() - 1)
            stop = self._dfs(n_target, ex, exact_size, collect)
            self._remove()
            if stop:
                return True
            ex |= bit
        return False


def _enumerate_with_state(plane: Plane, n_target: int, seed_members, excluded):
    """All tangent-free sets of size n_target containing the seed and avoiding
    the excluded points.  Returns (list of sorted tuples, node count)."""
    out: list[tuple[int, ...]] = []
    ex_mask = 0
    for p in excluded:
        ex_mask |= 1 << p
    s = _Searcher(plane)
    s.run(n_target, ex_mask, True, lambda t: out.append(tuple(sorted(t))), seed=seed_members)
    return sorted(set(out)), s.nodes


def enumerate_tangent_free(q: int, n: int) -> list[tuple[int, ...]]:
    """Complete duplicate-free list of tangent-free n-sets in PG(2,q)."""
    if n < 1:
        raise Infeasible("need n >= 1")
    plane = plane_for_order(q)
    if n > plane.n:
        raise Infeasible(f"n={n} exceeds the number of points")
    s = _Searcher(plane)
    out: list[tuple[int, ...]] = []
    s.run(n, 0, True, lambda t: out.append(tuple(sorted(t))))
    result = sorted(set(out))
    assert len(result) == len(out), "duplicate generation"
    return result


_FAST_CTX: dict[int, object] = {}


def _fast_context(plane):
    from . import _fastsearch

    if not _fastsearch.HAVE_NUMBA:
        return None
    q = plane.q
    if q not in _FAST_CTX:
        _FAST_CTX[q] = _fastsearch.FastContext(plane)
    return _FAST_CTX[q]


def seed_triples(plane) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
    """One collinear triple and one triangle, both containing points {0, 1}.

    Any non-empty tangent-free set has at least q+2 >= 4 points, hence a
    collinear triple or a triangle of its own, and the collineation group is
    transitive on each kind: searching supersets of these two seeds is
    exhaustive up to projective equivalence.
    """
    l01 = plane.line_through(0, 1)
    third_on = min(set(plane.points_on_line[l01]) - {0, 1})
    third_off = next(p for p in range(plane.n) if not plane.incident(p, l01))
    return (0, 1, third_on), (0, 1, third_off)


def _exists_one_seed(plane, n, seed, deadline=None, force_python=False):
    if not force_python:
        ctx = _fast_context(plane)
        if ctx is not None:
            return ctx.exists(n, seeds=seed, deadline=deadline)
    s = _Searcher(plane)
    s.deadline = deadline
    box = []
    s.run(n, 0, False, lambda t: box.append(tuple(sorted(t))) or True, seed=seed)
    return (box[0] if box else None), s.nodes


def _exists_serial(plane, n, deadline=None, force_python=False):
    """Tangent-free set of size <= n, searched over both seed triples."""
    total = 0
    for seed in seed_triples(plane):
        wit, nodes = _exists_one_seed(plane, n, seed, deadline, force_python)
        total += nodes
        if wit is not None:
            return wit, total
    return None, total


def _frontier_jobs(plane, n, min_jobs, seed):
    """Expand a seeded root into independent (partial, excluded) subtrees."""
    jobs = []

    def expand(members, ex_mask, depth):
        st = _Searcher(plane)
        for p in members:
            st._add(p)
        free = st.all_points_mask & ~st.partial_mask & ~ex_mask
        if depth == 0 or not st.tangents:
            jobs.append((members, ex_mask))
            return
        dead, bound, line, avail = st._scan_tangents(free)
        if dead or len(members) + bound > n:
            return
        ex = ex_mask
        while avail:
            bit = avail & -avail
            avail ^= bit
            expand(members + (bit.bit_length() - 1,), ex, depth - 1)
            ex |= bit

    depth = 1
    while True:
        jobs.clear()
        expand(seed, 0, depth)
        if len(jobs) >= min_jobs or depth >= 6:
            return jobs
        depth += 1


_WORKER_PLANE = {}


def _run_job(args):
    q, n, members, ex_mask, deadline = args
    plane = _WORKER_PLANE.get(q)
    if plane is None:
        plane = plane_for_order(q)
        _WORKER_PLANE[q] = plane
    ctx = _fast_context(plane)
    if ctx is not None:
        excluded = [p for p in range(plane.n) if (ex_mask >> p) & 1]
        return ctx.exists(n, seeds=members, excluded=excluded, deadline=deadline)
    s = _Searcher(plane)
    s.deadline = deadline
    box = []
    s.run(n, ex_mask, False, lambda t: box.append(tuple(sorted(t))) or True, seed=members)
    return (box[0] if box else None), s.nodes


def _exists_parallel(plane, q, n, workers, deadline=None):
    import multiprocessing as mp

    jobs = []
    for seed in seed_triples(plane):
        jobs.extend(_frontier_jobs(plane, n, 3 * workers, seed))
    if len(jobs) <= 1:
        return _exists_serial(plane, n, deadline)
    ctx = _fast_context(plane)
    if ctx is not None:
        # warm the JIT cache in the parent so forked workers inherit it
        ctx.exists(3, seeds=(0, 1))
    mpctx = mp.get_context("fork")
    with mpctx.Pool(workers) as pool:
        results = pool.map(_run_job, [(q, n, m, e, deadline) for m, e in jobs])
    nodes = sum(r[1] for r in results)
    # first finding job in deterministic job order, matching the serial scan
    witness = next((r[0] for r in results if r[0] is not None), None)
    return witness, nodes


@dataclass
class SearchResult:
    q: int
    cap: int
    found: bool
    u: int | None
    witness: tuple[int, ...] | None
    nodes: int
    exhausted_below: int  # all sizes < this value are refuted
    wall_time: float
    status: str = "ok"  # ok | not_found | budget_exceeded
    witness_source: str = ""


def known_witnesses(q: int) -> dict[int, tuple[int, ...]]:
    """Verified tangent-free sets from the explicit constructions, by size."""
    from . import constructions as cons

    plane = plane_for_order(q)
    out: dict[int, tuple[int, ...]] = {}

    def keep(name, ps):
        if ps is None:
            return
        assert is_tangent_free(ps) and len(ps) > 0
        out.setdefault(len(ps), ps.sorted_tuple())

    keep("trivial", cons.trivial(q))
    if q % 2:
        gf = field_for_order(q)
        if q > 5:
            valid = cons.find_valid_a(q)
            if valid:
                keep("two_conics", cons.two_conics(q, valid[0]))
        if q >= 5:
            from .conic import canonical_conic

            con = canonical_conic(plane)
            keep("interior", cons.interior_points(con))
        if gf.h >= 2 and gf.p > 2:
            keep("trace_graph", cons.trace_graph(q)[0])
            keep("frobenius_graph", cons.frobenius_graph(q)[0])
        if q % 4 == 3 and 7 <= q <= 13:
            # conic plus a no-3-collinear exterior clique, when one exists
            from .conic import canonical_conic
            from .exterior import exterior_clique_search

            con = canonical_conic(plane)
            for clique in exterior_clique_search(q, no_three_collinear=True):
                union = PointSet(plane, set(con.points) | set(clique.members))
                if is_tangent_free(union):
                    keep("conic_plus_exterior", union)
                    break
    return out


def min_tangent_free(q: int, size_cap: int | None = None, workers: int | None = None,
                     budget_s: float | None = None, extra_witnesses: dict | None = None) -> SearchResult:
    """Exact minimum size of a non-empty tangent-free set in PG(2,q).

    Iterative deepening from the sqrt lower bound: each size is exhausted by
    the repair DFS before moving up, so on success every smaller size carries
    a computational refutation.  Construction witnesses short-circuit the
    final level; they are re-verified before being trusted.
    """
    t0 = time.monotonic()
    if size_cap is None:
        size_cap = 2 * q
    if workers is None:
        workers = os.cpu_count() or 1
    plane = plane_for_order(q)
    bound = lower_bound(q)
    if size_cap < bound:
        raise CapTooSmall(f"cap {size_cap} below the proven lower bound {bound}")
    witnesses = dict(known_witnesses(q))
    if extra_witnesses:
        for m, w in extra_witnesses.items():
            ps = PointSet(plane, w)
            assert is_tangent_free(ps) and len(ps) == m
            witnesses.setdefault(m, tuple(sorted(w)))
    nodes = 0
    deadline = None if budget_s is None else t0 + budget_s

    def best_witness():
        best = min((m for m in witnesses if m <= size_cap), default=None)
        return witnesses[best] if best is not None else None

    for n in range(bound, size_cap + 1):
        if n in witnesses:
            w = witnesses[n]
            assert is_tangent_free(PointSet(plane, w))
            return SearchResult(q, size_cap, True, n, w, nodes, n,
                                time.monotonic() - t0, "ok", "construction")
        try:
            if workers > 1 and n - 2 >= 6:
                wit, cnt = _exists_parallel(plane, q, n, workers, deadline)
            else:
                wit, cnt = _exists_serial(plane, n, deadline)
        except TimeoutError:
            return SearchResult(q, size_cap, False, None, best_witness(),
                                nodes, n, time.monotonic() - t0, "budget_exceeded")
        nodes += cnt
        if wit is not None:
            ps = PointSet(plane, wit)
            assert is_tangent_free(ps) and len(ps) == n
            return SearchResult(q, size_cap, True, n, wit, nodes, n,
                                time.monotonic() - t0, "ok", "search")
        if deadline is not None and time.monotonic() > deadline:
            return SearchResult(q, size_cap, False, None, best_witness(),
                                nodes, n + 1, time.monotonic() - t0, "budget_exceeded")
    return SearchResult(q, size_cap, False, None, None, nodes, size_cap + 1,
                        time.monotonic() - t0, "not_found")


def u_extended(q: int, budget_s: float = 3600.0, workers: int | None = None) -> SearchResult:
    """Long-running exact u_q for q in {9, 11}; reports the verified bound and
    the best witness found if the time budget runs out."""
    if q not in (9, 11):
        raise ValueError("extended search is intended for q in {9, 11}")
    return min_tangent_free(q, size_cap=2 * q, workers=workers, budget_s=budget_s)


def brute_force_min(q: int) -> int:
    """Independent oracle: direct subset enumeration, feasible only for q=3."""
    from itertools import combinations

    if q != 3:
        raise TooLarge("brute force enumeration is only run for q=3")
    plane = plane_for_order(q)
    masks = plane.line_masks
    for n in range(1, plane.n + 1):
        for comb in combinations(range(plane.n), n):
            m = 0
            for p in comb:
                m |= 1 << p
            if all(bin(lm & m).count("1") != 1 for lm in masks):
                return n
    raise AssertionError("unreachable")


# -- PGL(3,q) --------------------------------------------------------------------


class PGLGroup:
    """The projective linear group acting as permutations of point indices."""

    def __init__(self, plane: Plane):
        self.plane = plane
        q = plane.q
        self.q = q
        self.order = q**3 * (q**3 - 1) * (q**2 - 1)
        self._elements = None

    def generators(self) -> list[tuple[int, ...]]:
        gf = self.plane.gf
        g = gf.generator if gf.q > 2 else 1
        mats = [
            (1, 1, 0, 0, 1, 0, 0, 0, 1),
            (1, 0, 0, 1, 1, 0, 0, 0, 1),
            (0, 0, 1, 1, 0, 0, 0, 1, 0),
            (g, 0, 0, 0, 1, 0, 0, 0, 1),
        ]
        perms = []
        for m in mats:
            perms.append(tuple(self.plane.apply_matrix(m, p) for p in range(self.plane.n)))
        return perms

    def elements(self) -> np.ndarray:
        """All group elements as point permutations, rows of an array.

        Full enumeration is kept to prime q <= 5 (as used by the PG(2,5)
        classification); the orbit algorithm covers everything else.
        """
        if self.q > 5 or self.plane.gf.h != 1:
            raise GroupTooLarge(f"full enumeration not supported for q={self.q}")
        if self._elements is None:
            self._elements = _pgl_elements_prime(self.plane)
        return self._elements

    def orbit(self, members) -> list[tuple[int, ...]]:
        """PGL orbit of a point set, as sorted index tuples."""
        try:
            els = self.elements()
        except GroupTooLarge:
            return self._orbit_bfs(members)
        imgs = np.sort(els[:, sorted(members)], axis=1)
        uniq = np.unique(imgs, axis=0)
        return [tuple(int(x) for x in row) for row in uniq]

    def _orbit_bfs(self, members) -> list[tuple[int, ...]]:
        gens = self.generators()
        start = tuple(sorted(members))
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for s in frontier:
                for g in gens:
                    img = tuple(sorted(g[p] for p in s))
                    if img not in seen:
                        seen.add(img)
                        nxt.append(img)
            frontier = nxt
        return sorted(seen)


def _pgl_elements_prime(plane: Plane) -> np.ndarray:
    """Every element of PGL(3,p), p prime, as a point permutation.

    A class representative is an invertible matrix with projectively
    normalized columns and the first column scale pinned: columns are three
    non-collinear point representatives, the last two rescaled by arbitrary
    nonzero factors.
    """
    q = plane.q
    n = plane.n
    pts = np.array(plane.coords, dtype=np.int64)
    # ordered non-collinear triples of point indices
    triples = []
    for i in range(n):
        for j in range(n):
            if j == i:
                continue
            lm = plane.line_masks[plane.line_through(i, j)]
            ks = [k for k in range(n) if not (lm >> k) & 1]
            for k in ks:
                triples.append((i, j, k))
    triples = np.array(triples, dtype=np.int64)
    scal = [(b, c) for b in range(1, q) for c in range(1, q)]
    scal = np.array(scal, dtype=np.int64)
    mats = np.empty((len(triples), len(scal), 3, 3), dtype=np.int64)
    cols = pts[triples]  # (T, 3, 3): cols[t, j] is column j as a row vector
    mats[:, :, :, 0] = cols[:, None, 0, :]
    mats[:, :, :, 1] = (cols[:, None, 1, :] * scal[None, :, 0, None]) % q
    mats[:, :, :, 2] = (cols[:, None, 2, :] * scal[None, :, 1, None]) % q
    mats = mats.reshape(-1, 3, 3)
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        inv[a] = pow(a, q - 2, q)
    out = np.empty((mats.shape[0], n), dtype=np.int32)
    chunk = 65536
    for lo in range(0, mats.shape[0], chunk):
        m = mats[lo : lo + chunk]
        img = np.einsum("mrc,pc->mpr", m, pts) % q
        x, y, z = img[..., 0], img[..., 1], img[..., 2]
        lead = np.where(x != 0, x, np.where(y != 0, y, z))
        f = inv[lead]
        xs, ys, zs = (x * f) % q, (y * f) % q, (z * f) % q
        idx = np.where(xs == 1, ys * q + zs, np.where(ys == 1, q * q + zs, q * q + q))
        out[lo : lo + chunk] = idx
    uniq = np.unique(out, axis=0)
    group = PGLGroup(plane)
    if uniq.shape[0] != group.order:
        raise AssertionError(f"PGL enumeration produced {uniq.shape[0]} != {group.order}")
    return uniq


_GROUPS: dict[int, PGLGroup] = {}


def pgl_group(q: int) -> PGLGroup:
    if q not in _GROUPS:
        _GROUPS[q] = PGLGroup(plane_for_order(q))
    return _GROUPS[q]


@dataclass(frozen=True)
class OrbitRep:
    canonical: tuple[int, ...]
    class_size: int
    stabilizer_order: int
    member_count: int  # how many of the classified input sets fall here


def classify_up_to_pgl(q: int, sets) -> list[OrbitRep]:
    """Partition the given point-index sets into PGL(3,q) orbits."""
    group = pgl_group(q)
    normalized = [tuple(sorted(s)) for s in sets]
    unassigned = set(normalized)
    reps = []
    for s in sorted(set(normalized)):
        if s not in unassigned:
            continue
        orbit = group.orbit(s)
        orbit_set = set(orbit)
        hit = [t for t in unassigned if t in orbit_set]
        for t in hit:
            unassigned.discard(t)
        if group.order % len(orbit):
            raise AssertionError("orbit size does not divide the group order")
        counted = sum(1 for t in normalized if t in orbit_set)
        reps.append(OrbitRep(orbit[0], len(orbit), group.order // len(orbit), counted))
    return sorted(reps, key=lambda r: r.canonical)
