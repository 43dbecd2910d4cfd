# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled feasibility-search kernel.

Same algorithm as chanspec._zopt_py (grid + seeded random candidates +
Nelder-Mead over the majorization polytope); see that module for the
derivation.  Kept free of the NumPy C API so the extension builds anywhere a
C compiler exists.
"""

from libc.math cimport sqrt

cdef double _INVALID = -1e30
cdef double _CEPS = 1e-12


cdef unsigned long long _lcg_next(unsigned long long state) nogil:
    return state * 6364136223846793005ULL + 1442695040888963407ULL


cdef double _lcg_to_uniform(unsigned long long state) nogil:
    return (state >> 11) * (1.0 / 9007199254740992.0)


cdef double _objective(double s1, double s2, double kk,
                       double m1, double m2, double m3, double pi,
                       double det_sign, double kbound, int *axis_out) nogil:
    cdef double prod12, s3, total, fa, q, sum_sq, base, best_z, zval, s_axis, margin, s_min
    cdef int axis

    axis_out[0] = -1
    if s1 < m1 - _CEPS or s2 < 0.0 or s2 > s1 + _CEPS:
        return _INVALID
    if s1 + s2 < m1 + m2 - _CEPS:
        return _INVALID
    prod12 = s1 * s2
    if prod12 < m1 * m2 - _CEPS:
        return _INVALID
    if prod12 > 0.0:
        s3 = pi / prod12
    elif pi > 0.0:
        return _INVALID
    else:
        s3 = 0.0
    if s3 > s2 + _CEPS:
        return _INVALID
    if s1 + s2 + s3 < m1 + m2 + m3 - _CEPS:
        return _INVALID
    if kk < 0.0 or kk > kbound + _CEPS:
        return _INVALID

    total = s1 + s2 + s3
    s_min = s3 if s3 < s2 else s2
    if det_sign > 0.0:
        fa = 1.0 - total + 2.0 * s_min
    elif det_sign < 0.0:
        fa = 1.0 - total
    else:
        fa = 1.0 - total + 2.0 * s_min

    q = ((1.0 + s1 + s2 + s3) * (1.0 + s1 - s2 - s3)
         * (1.0 - s1 + s2 - s3) * (1.0 - s1 - s2 + s3))
    sum_sq = s1 * s1 + s2 * s2 + s3 * s3
    base = kk * kk - 2.0 * kk + 2.0 * kk * sum_sq + q
    best_z = _INVALID
    axis_out[0] = 0
    for axis in range(3):
        if axis == 0:
            s_axis = s1
        elif axis == 1:
            s_axis = s2
        else:
            s_axis = s3
        zval = base - 4.0 * kk * s_axis * s_axis
        if det_sign <= 0.0:
            zval += 16.0 * pi
        if zval > best_z:
            best_z = zval
            axis_out[0] = axis
    margin = fa if fa < best_z else best_z
    return margin


def optimize_margin(double m1, double m2, double m3, double det_sign,
                    double kbound, int grid_n, int n_random, int refine_iters,
                    unsigned long long seed):
    """Compiled twin of :func:`chanspec._zopt_py.optimize_margin`."""
    cdef double pi = m1 * m2 * m3
    cdef double lo1 = m1
    cdef double hi1 = m1 if m1 > 1.0 else 1.0
    cdef double best_margin, margin, s1, s2, kk, lo2, cap, root, u1, u2, u3
    cdef double b0, b1, b2
    cdef int best_axis, axis, i, j, t, n_k, it, v, c
    cdef unsigned long long state

    best_margin = _objective(m1, m2, 0.0, m1, m2, m3, pi, det_sign, kbound, &best_axis)
    b0, b1, b2 = m1, m2, 0.0

    margin = _objective(m1, m2, kbound, m1, m2, m3, pi, det_sign, kbound, &axis)
    if margin > best_margin or (margin == best_margin and
                                (m1, m2, kbound) < (b0, b1, b2)):
        best_margin, best_axis = margin, axis
        b0, b1, b2 = m1, m2, kbound

    n_k = grid_n if kbound > 0.0 else 1
    for i in range(grid_n):
        s1 = lo1 + (hi1 - lo1) * i / (grid_n - 1) if grid_n > 1 else lo1
        lo2 = m1 + m2 - s1
        if s1 > 0.0:
            cap = m1 * m2 / s1
            if cap > lo2:
                lo2 = cap
            root = sqrt(pi / s1) if pi > 0.0 else 0.0
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
                margin = _objective(s1, s2, kk, m1, m2, m3, pi, det_sign, kbound, &axis)
                if margin > best_margin or (margin == best_margin and
                                            (s1, s2, kk) < (b0, b1, b2)):
                    best_margin, best_axis = margin, axis
                    b0, b1, b2 = s1, s2, kk

    state = seed ^ 0x9E3779B97F4A7C15ULL
    for i in range(n_random):
        state = _lcg_next(state)
        u1 = _lcg_to_uniform(state)
        state = _lcg_next(state)
        u2 = _lcg_to_uniform(state)
        state = _lcg_next(state)
        u3 = _lcg_to_uniform(state)
        s1 = lo1 + (hi1 - lo1) * u1
        s2 = s1 * u2
        kk = kbound * u3
        margin = _objective(s1, s2, kk, m1, m2, m3, pi, det_sign, kbound, &axis)
        if margin > best_margin or (margin == best_margin and
                                    (s1, s2, kk) < (b0, b1, b2)):
            best_margin, best_axis = margin, axis
            b0, b1, b2 = s1, s2, kk

    cdef double simplex[4][3]
    cdef double values[4]
    cdef double centroid[3]
    cdef double trial[3]
    cdef double f_trial, f_second, h1, h2, h3, swap
    cdef int order_pass, idx

    if refine_iters > 0:
        state = _lcg_next(state)
        u1 = _lcg_to_uniform(state)
        state = _lcg_next(state)
        u2 = _lcg_to_uniform(state)
        state = _lcg_next(state)
        u3 = _lcg_to_uniform(state)
        h1 = (0.05 * (hi1 - lo1) + 1e-4) * (0.9 + 0.2 * u1)
        h2 = (0.05 * (b0 if b0 > 1e-2 else 1e-2)) * (0.9 + 0.2 * u2)
        h3 = (0.05 * kbound + 1e-4) * (0.9 + 0.2 * u3)
        simplex[0][0], simplex[0][1], simplex[0][2] = b0, b1, b2
        simplex[1][0], simplex[1][1], simplex[1][2] = b0 + h1, b1, b2
        simplex[2][0], simplex[2][1], simplex[2][2] = b0, b1 + h2, b2
        simplex[3][0], simplex[3][1], simplex[3][2] = b0, b1, b2 + h3
        for v in range(4):
            values[v] = _objective(simplex[v][0], simplex[v][1], simplex[v][2],
                                   m1, m2, m3, pi, det_sign, kbound, &axis)
        for it in range(refine_iters):
            # insertion sort, descending by value
            for order_pass in range(1, 4):
                for idx in range(order_pass, 0, -1):
                    if values[idx] > values[idx - 1]:
                        swap = values[idx]
                        values[idx] = values[idx - 1]
                        values[idx - 1] = swap
                        for c in range(3):
                            swap = simplex[idx][c]
                            simplex[idx][c] = simplex[idx - 1][c]
                            simplex[idx - 1][c] = swap
            if values[0] - values[3] < 1e-15 and values[0] > _INVALID / 2:
                break
            for c in range(3):
                centroid[c] = (simplex[0][c] + simplex[1][c] + simplex[2][c]) / 3.0
            for c in range(3):
                trial[c] = centroid[c] + (centroid[c] - simplex[3][c])
            f_trial = _objective(trial[0], trial[1], trial[2],
                                 m1, m2, m3, pi, det_sign, kbound, &axis)
            if f_trial > values[0]:
                for c in range(3):
                    centroid[c] = centroid[c] + 2.0 * (centroid[c] - simplex[3][c])
                f_second = _objective(centroid[0], centroid[1], centroid[2],
                                      m1, m2, m3, pi, det_sign, kbound, &axis)
                if f_second > f_trial:
                    for c in range(3):
                        simplex[3][c] = centroid[c]
                    values[3] = f_second
                else:
                    for c in range(3):
                        simplex[3][c] = trial[c]
                    values[3] = f_trial
            elif f_trial > values[2]:
                for c in range(3):
                    simplex[3][c] = trial[c]
                values[3] = f_trial
            else:
                for c in range(3):
                    trial[c] = centroid[c] + 0.5 * (simplex[3][c] - centroid[c])
                f_trial = _objective(trial[0], trial[1], trial[2],
                                     m1, m2, m3, pi, det_sign, kbound, &axis)
                if f_trial > values[3]:
                    for c in range(3):
                        simplex[3][c] = trial[c]
                    values[3] = f_trial
                else:
                    for v in range(1, 4):
                        for c in range(3):
                            simplex[v][c] = simplex[0][c] + 0.5 * (simplex[v][c] - simplex[0][c])
                        values[v] = _objective(simplex[v][0], simplex[v][1], simplex[v][2],
                                               m1, m2, m3, pi, det_sign, kbound, &axis)
        for v in range(4):
            if values[v] > best_margin or (
                values[v] == best_margin
                and (simplex[v][0], simplex[v][1], simplex[v][2]) < (b0, b1, b2)
            ):
                margin = _objective(simplex[v][0], simplex[v][1], simplex[v][2],
                                    m1, m2, m3, pi, det_sign, kbound, &axis)
                best_margin, best_axis = margin, axis
                b0, b1, b2 = simplex[v][0], simplex[v][1], simplex[v][2]

    cdef double prod12 = b0 * b1
    cdef double s3 = pi / prod12 if prod12 > 0.0 else 0.0
    cdef double k1 = 0.0, k2 = 0.0, k3 = 0.0
    if best_axis >= 0 and b2 > 0.0:
        if best_axis == 0:
            k1 = sqrt(b2)
        elif best_axis == 1:
            k2 = sqrt(b2)
        else:
            k3 = sqrt(b2)
    return best_margin, b0, b1, s3, k1, k2, k3
