"""JIT-compiled core of the tangent-repair search.

Same branching scheme as the pure-Python `_Searcher` (the reference
implementation for cross-checks): branch on a tangent line with the fewest
available points, accumulate sibling exclusions, prune with the larger of a
greedy disjoint-tangent matching and the largest tangent pencil through a
single member.  Numba is optional; callers fall back to the Python searcher
when it is unavailable.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit, objmode

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


_STATUS_REFUTED = 0
_STATUS_FOUND = 1
_STATUS_TIMEOUT = 2


if HAVE_NUMBA:
    import time as _time

    @njit(cache=True)
    def _exists_kernel(LP, PL, n_points, n_lines, n_target, seeds, excluded0, deadline, witness_out):
        """Find any tangent-free superset of the seeds of size <= n_target.

        Returns (status, nodes): 0 refuted, 1 found (witness and its size in
        witness_out), 2 deadline hit.
        """
        deg = LP.shape[1]  # q + 1
        counts = np.zeros(n_lines, dtype=np.int32)
        in_set = np.zeros(n_points, dtype=np.uint8)
        excluded = np.zeros(n_points, dtype=np.uint8)
        for i in range(n_points):
            excluded[i] = excluded0[i]
        partial = np.empty(n_target + 2, dtype=np.int32)
        size = 0

        # current tangent lines as a swap-removable list
        tang_list = np.empty(n_lines, dtype=np.int32)
        tang_pos = np.full(n_lines, -1, dtype=np.int32)
        n_tang = 0

        max_d = n_target + 2
        f_avail = np.empty((max_d, deg), dtype=np.int32)
        f_alen = np.zeros(max_d, dtype=np.int32)
        f_apos = np.zeros(max_d, dtype=np.int32)
        f_curx = np.zeros(max_d, dtype=np.int32)
        f_exstart = np.zeros(max_d, dtype=np.int32)
        journal = np.empty(max_d * deg + 8, dtype=np.int32)
        ex_top = 0

        stamp = np.zeros(n_points, dtype=np.int64)
        base_stamp = np.zeros(n_points, dtype=np.int64)
        base_cnt = np.zeros(n_points, dtype=np.int32)
        node_id = 0

        for si in range(seeds.shape[0]):
            x = seeds[si]
            in_set[x] = 1
            partial[size] = x
            size += 1
            for j in range(deg):
                l = PL[x, j]
                c = counts[l]
                counts[l] = c + 1
                if c == 0:
                    tang_pos[l] = n_tang
                    tang_list[n_tang] = l
                    n_tang += 1
                elif c == 1:
                    i = tang_pos[l]
                    last = tang_list[n_tang - 1]
                    tang_list[i] = last
                    tang_pos[last] = i
                    tang_pos[l] = -1
                    n_tang -= 1

        nodes = 0
        d = 0
        mode = 0  # 0 ENTER, 1 NEXT, 2 EXIT
        status = _STATUS_REFUTED
        while d >= 0:
            if mode == 0:
                nodes += 1
                if nodes % 4194304 == 0 and deadline > 0.0:
                    with objmode(now="float64"):
                        now = _time.monotonic()
                    if now > deadline:
                        status = _STATUS_TIMEOUT
                        break
                if n_tang == 0:
                    for i in range(size):
                        witness_out[i] = partial[i]
                    witness_out[witness_out.shape[0] - 1] = size
                    status = _STATUS_FOUND
                    break
                node_id += 1
                k_match = 0
                max_pencil = 0
                best_line = -1
                best_alen = 1 << 30
                dead = False
                for ti in range(n_tang):
                    l = tang_list[ti]
                    alen = 0
                    overlap = False
                    base = -1
                    for j in range(deg):
                        pt = LP[l, j]
                        if in_set[pt] == 1:
                            base = pt
                        elif excluded[pt] == 0:
                            alen += 1
                            if stamp[pt] == node_id:
                                overlap = True
                    if alen == 0:
                        dead = True
                        break
                    if not overlap:
                        k_match += 1
                        for j in range(deg):
                            pt = LP[l, j]
                            if in_set[pt] == 0 and excluded[pt] == 0:
                                stamp[pt] = node_id
                    if base_stamp[base] == node_id:
                        base_cnt[base] += 1
                    else:
                        base_stamp[base] = node_id
                        base_cnt[base] = 1
                    if base_cnt[base] > max_pencil:
                        max_pencil = base_cnt[base]
                    if alen < best_alen or (alen == best_alen and l < best_line):
                        best_alen = alen
                        best_line = l
                bound = k_match if k_match > max_pencil else max_pencil
                if dead or size + bound > n_target:
                    mode = 2
                    continue
                alen = 0
                for j in range(deg):
                    pt = LP[best_line, j]
                    if in_set[pt] == 0 and excluded[pt] == 0:
                        f_avail[d, alen] = pt
                        alen += 1
                f_alen[d] = alen
                f_apos[d] = 0
                f_exstart[d] = ex_top
                mode = 1
            elif mode == 1:
                if f_apos[d] < f_alen[d]:
                    x = f_avail[d, f_apos[d]]
                    f_apos[d] += 1
                    f_curx[d] = x
                    in_set[x] = 1
                    partial[size] = x
                    size += 1
                    for j in range(deg):
                        l = PL[x, j]
                        c = counts[l]
                        counts[l] = c + 1
                        if c == 0:
                            tang_pos[l] = n_tang
                            tang_list[n_tang] = l
                            n_tang += 1
                        elif c == 1:
                            i = tang_pos[l]
                            last = tang_list[n_tang - 1]
                            tang_list[i] = last
                            tang_pos[last] = i
                            tang_pos[l] = -1
                            n_tang -= 1
                    d += 1
                    mode = 0
                else:
                    mode = 2
            else:  # EXIT frame d
                while ex_top > f_exstart[d]:
                    ex_top -= 1
                    excluded[journal[ex_top]] = 0
                d -= 1
                if d >= 0:
                    x = f_curx[d]
                    size -= 1
                    in_set[x] = 0
                    for j in range(deg):
                        l = PL[x, j]
                        c = counts[l]
                        counts[l] = c - 1
                        if c == 1:
                            i = tang_pos[l]
                            last = tang_list[n_tang - 1]
                            tang_list[i] = last
                            tang_pos[last] = i
                            tang_pos[l] = -1
                            n_tang -= 1
                        elif c == 2:
                            tang_pos[l] = n_tang
                            tang_list[n_tang] = l
                            n_tang += 1
                    excluded[x] = 1
                    journal[ex_top] = x
                    ex_top += 1
                    mode = 1
        return status, nodes


class FastContext:
    """Per-plane arrays handed to the kernel."""

    def __init__(self, plane):
        self.plane = plane
        self.LP = np.array(plane.points_on_line, dtype=np.int32)
        self.PL = np.array(plane.lines_through_point, dtype=np.int32)

    def exists(self, n_target, seeds=(0, 1), excluded=(), deadline=None):
        """(witness tuple or None, nodes); raises TimeoutError on deadline."""
        n = self.plane.n
        ex0 = np.zeros(n, dtype=np.uint8)
        for p in excluded:
            ex0[p] = 1
        witness_out = np.full(n_target + 3, -1, dtype=np.int32)
        status, nodes = _exists_kernel(
            self.LP,
            self.PL,
            n,
            n,
            n_target,
            np.array(seeds, dtype=np.int32),
            ex0,
            -1.0 if deadline is None else float(deadline),
            witness_out,
        )
        if status == _STATUS_TIMEOUT:
            raise TimeoutError
        if status == _STATUS_FOUND:
            sz = int(witness_out[-1])
            return tuple(sorted(int(x) for x in witness_out[:sz])), int(nodes)
        return None, int(nodes)
