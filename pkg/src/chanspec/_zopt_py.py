"""Pure-Python feasibility-search kernel.

Reference implementation of the witness search behind ``z_feasibility``: it
maximizes, over candidate singular triples and translation vectors, the joint
margin of every necessary CP inequality.  The compiled extension
``chanspec._zopt`` implements the identical algorithm; this module is the
fallback selected at import time when the extension is unavailable.

The search space is reduced before anything numerical happens:

* the full-product majorization constraint pins ``s3 = prod(m) / (s1 * s2)``,
  so the triple has two free coordinates;
* the quartic condition is linear in the squared direction cosines of the
  translation, so its maximum over directions is attained on a coordinate
  axis; the three axes are searched exactly;
* the quartic condition is convex in the squared translation norm, which is
  therefore gridded on ``[0, kbound]``.

Grid search over ``(s1, s2, K)`` plus seeded random candidates, followed by
Nelder-Mead refinement from the best point.  Fully deterministic for a fixed
seed.
"""

import math

_MASK64 = (1 << 64) - 1
_INVALID = -1e30
_CEPS = 1e-12


def _lcg_next(state):
    return (state * 6364136223846793005 + 1442695040888963407) & _MASK64


def _lcg_uniform(state):
    state = _lcg_next(state)
    return state, (state >> 11) * (1.0 / 9007199254740992.0)


def _objective(s1, s2, kk, m1, m2, m3, pi, det_sign, kbound):
    """Joint margin min(FA branch, quartic branch) at a candidate witness.

    Returns (margin, axis); axis is the translation direction index or -1
    when the candidate violates the majorization polytope.
    """
    if s1 < m1 - _CEPS or s2 < 0.0 or s2 > s1 + _CEPS:
        return _INVALID, -1
    if s1 + s2 < m1 + m2 - _CEPS:
        return _INVALID, -1
    prod12 = s1 * s2
    if prod12 < m1 * m2 - _CEPS:
        return _INVALID, -1
    if prod12 > 0.0:
        s3 = pi / prod12
    elif pi > 0.0:
        return _INVALID, -1
    else:
        s3 = 0.0
    if s3 > s2 + _CEPS:
        return _INVALID, -1
    if s1 + s2 + s3 < m1 + m2 + m3 - _CEPS:
        return _INVALID, -1
    # the squared norm gets no negative slack: the -2K term would otherwise
    # reward unphysical K < 0 proposals from the simplex search
    if kk < 0.0 or kk > kbound + _CEPS:
        return _INVALID, -1

    total = s1 + s2 + s3
    s_min = s3 if s3 < s2 else s2  # ordering slop: s3 may sit just above s2
    if det_sign > 0.0:
        fa = 1.0 - total + 2.0 * s_min
    elif det_sign < 0.0:
        fa = 1.0 - total
    else:
        fa = 1.0 - total + 2.0 * s_min  # branches agree up to the min term

    q = (
        (1.0 + s1 + s2 + s3)
        * (1.0 + s1 - s2 - s3)
        * (1.0 - s1 + s2 - s3)
        * (1.0 - s1 - s2 + s3)
    )
    sum_sq = s1 * s1 + s2 * s2 + s3 * s3
    base = kk * kk - 2.0 * kk + 2.0 * kk * sum_sq + q
    best_z = _INVALID
    best_axis = 0
    for axis, s_axis in enumerate((s1, s2, s3)):
        zval = base - 4.0 * kk * s_axis * s_axis
        if det_sign <= 0.0:
            # negative branch; at zero determinant both branches coincide and
            # the larger margin (the one including the product term) is kept
            zval += 16.0 * pi
        if zval > best_z:
            best_z = zval
            best_axis = axis
    margin = fa if fa < best_z else best_z
    return margin, best_axis


def optimize_margin(m1, m2, m3, det_sign, kbound, grid_n, n_random, refine_iters, seed):
    """Maximize the joint necessary-condition margin over admissible witnesses.

    Parameters are the decreasing eigenvalue moduli, the determinant sign
    (+1/0/-1), the squared-translation-norm cap, the per-axis grid resolution,
    the number of seeded random candidates, the Nelder-Mead iteration budget
    and the seed.  Returns ``(margin, s1, s2, s3, k1, k2, k3)``.
    """
    pi = m1 * m2 * m3
    lo1 = m1
    hi1 = m1 if m1 > 1.0 else 1.0

    def clipped_objective(s1, s2, kk):
        return _objective(s1, s2, kk, m1, m2, m3, pi, det_sign, kbound)

    # The moduli themselves are always an admissible witness and maximize the
    # FA margin over the polytope; seed the search with them.
    best_margin, best_axis = clipped_objective(m1, m2, 0.0)
    best = (m1, m2, 0.0)

    def consider(s1, s2, kk):
        nonlocal best_margin, best_axis, best
        margin, axis = clipped_objective(s1, s2, kk)
        if margin > best_margin or (
            margin == best_margin and (s1, s2, kk) < best
        ):
            best_margin, best_axis, best = margin, axis, (s1, s2, kk)

    consider(m1, m2, kbound)

    n_k = grid_n if kbound > 0.0 else 1
    for i in range(grid_n):
        s1 = lo1 + (hi1 - lo1) * i / (grid_n - 1) if grid_n > 1 else lo1
        lo2 = m1 + m2 - s1
        if s1 > 0.0:
            cap = m1 * m2 / s1
            if cap > lo2:
                lo2 = cap
            root = math.sqrt(pi / s1) if pi > 0.0 else 0.0
            if root > lo2:
                lo2 = root
        if lo2 < 0.0:
            lo2 = 0.0
        if lo2 > s1:
            continue
        for j in range(grid_n):
            s2 = lo2 + (s1 - lo2) * j / (grid_n - 1) if grid_n > 1 else lo2
            for t in range(n_k):
                kk = kbound * t / (n_k - 1) if n_k > 1 else 0.0
                consider(s1, s2, kk)

    state = (seed ^ 0x9E3779B97F4A7C15) & _MASK64
    for _ in range(n_random):
        state, u1 = _lcg_uniform(state)
        state, u2 = _lcg_uniform(state)
        state, u3 = _lcg_uniform(state)
        s1 = lo1 + (hi1 - lo1) * u1
        s2 = s1 * u2
        kk = kbound * u3
        consider(s1, s2, kk)

    # Nelder-Mead refinement (maximization) from the best candidate.
    if refine_iters > 0:
        state, ju1 = _lcg_uniform(state)
        state, ju2 = _lcg_uniform(state)
        state, ju3 = _lcg_uniform(state)
        h1 = (0.05 * (hi1 - lo1) + 1e-4) * (0.9 + 0.2 * ju1)
        h2 = (0.05 * max(best[0], 1e-2)) * (0.9 + 0.2 * ju2)
        h3 = (0.05 * kbound + 1e-4) * (0.9 + 0.2 * ju3)
        simplex = [
            list(best),
            [best[0] + h1, best[1], best[2]],
            [best[0], best[1] + h2, best[2]],
            [best[0], best[1], best[2] + h3],
        ]
        values = [clipped_objective(*p)[0] for p in simplex]
        for _ in range(refine_iters):
            order = sorted(range(4), key=lambda idx: values[idx], reverse=True)
            simplex = [simplex[idx] for idx in order]
            values = [values[idx] for idx in order]
            if values[0] - values[3] < 1e-15 and values[0] > _INVALID / 2:
                break
            centroid = [
                (simplex[0][c] + simplex[1][c] + simplex[2][c]) / 3.0 for c in range(3)
            ]
            worst = simplex[3]
            reflected = [centroid[c] + (centroid[c] - worst[c]) for c in range(3)]
            f_reflected = clipped_objective(*reflected)[0]
            if f_reflected > values[0]:
                expanded = [centroid[c] + 2.0 * (centroid[c] - worst[c]) for c in range(3)]
                f_expanded = clipped_objective(*expanded)[0]
                if f_expanded > f_reflected:
                    simplex[3], values[3] = expanded, f_expanded
                else:
                    simplex[3], values[3] = reflected, f_reflected
            elif f_reflected > values[2]:
                simplex[3], values[3] = reflected, f_reflected
            else:
                contracted = [centroid[c] + 0.5 * (worst[c] - centroid[c]) for c in range(3)]
                f_contracted = clipped_objective(*contracted)[0]
                if f_contracted > values[3]:
                    simplex[3], values[3] = contracted, f_contracted
                else:
                    for v in range(1, 4):
                        simplex[v] = [
                            simplex[0][c] + 0.5 * (simplex[v][c] - simplex[0][c])
                            for c in range(3)
                        ]
                        values[v] = clipped_objective(*simplex[v])[0]
        for point, value in zip(simplex, values):
            if value > best_margin or (
                value == best_margin and tuple(point) < best
            ):
                margin, axis = clipped_objective(*point)
                best_margin, best_axis, best = margin, axis, tuple(point)

    s1, s2, kk = best
    prod12 = s1 * s2
    s3 = pi / prod12 if prod12 > 0.0 else 0.0
    k_vec = [0.0, 0.0, 0.0]
    if best_axis >= 0 and kk > 0.0:
        k_vec[best_axis] = math.sqrt(kk)
    return best_margin, s1, s2, s3, k_vec[0], k_vec[1], k_vec[2]
