# cython: language_level=3
"""Compiled hot kernels: depth-first word scans over 2x2 matrix products
and the extremal-norm grid sweep.

Must stay result-compatible with `_kernels_py` (same enumeration order,
same closed forms, first-wins tie-breaking); the test suite asserts parity.
Norm kind codes: 0=INF, 1=ONE, 2=TWO.
"""

import numpy as np

from libc.math cimport atan2, fabs, floor, sqrt

cdef double TWO_PI = 6.283185307179586476925286766559


cdef inline double _opnorm_2x2(double a, double b, double c, double d, int kind) nogil:
    cdef double r0, r1, f2, det, disc
    if kind == 1:  # ONE: max column abs sum
        r0 = fabs(a) + fabs(c)
        r1 = fabs(b) + fabs(d)
        return r0 if r0 > r1 else r1
    if kind == 0:  # INF: max row abs sum
        r0 = fabs(a) + fabs(b)
        r1 = fabs(c) + fabs(d)
        return r0 if r0 > r1 else r1
    # TWO: largest singular value, closed form
    f2 = a * a + b * b + c * c + d * d
    det = a * d - b * c
    disc = f2 * f2 - 4.0 * det * det
    if disc < 0.0:
        disc = 0.0
    return sqrt(0.5 * (f2 + sqrt(disc)))


cdef inline double _sr_2x2(double a, double b, double c, double d) nogil:
    cdef double tr = a + d
    cdef double det = a * d - b * c
    cdef double disc = tr * tr - 4.0 * det
    if disc >= 0.0:
        return 0.5 * (fabs(tr) + sqrt(disc))
    if det < 0.0:
        det = 0.0
    return sqrt(det)


def depth_scan_2x2(double[:, :, ::1] base, int depth, int kind):
    """Per-depth extrema over all words of 2x2 factors from ``base``.

    Returns (max_norms, max_srs, argmax_idx) arrays of length ``depth``;
    ``argmax_idx[k-1]`` is the lexicographic index of the first length-k
    word attaining the largest spectral radius.
    """
    cdef int m = base.shape[0]
    if m < 1 or depth < 1:
        raise ValueError("need at least one matrix and depth >= 1")

    max_norms_arr = np.zeros(depth)
    max_srs_arr = np.zeros(depth)
    argmax_arr = np.zeros(depth, dtype=np.int64)
    cdef double[::1] max_norms = max_norms_arr
    cdef double[::1] max_srs = max_srs_arr
    cdef long long[::1] argmax_idx = argmax_arr

    # DFS over the m-ary word tree; prods[l] is the product of the current
    # length-l prefix, counts[l] the number of length-l words visited so far.
    prods_arr = np.zeros((depth + 1, 2, 2))
    digits_arr = np.zeros(depth, dtype=np.int64)
    counts_arr = np.zeros(depth + 1, dtype=np.int64)
    cdef double[:, :, ::1] prods = prods_arr
    cdef long long[::1] digits = digits_arr
    cdef long long[::1] counts = counts_arr

    cdef int level = 1
    cdef int j, parent
    cdef double pa, pb, pc, pd, a, b, c, d, nrm, sr

    prods[0, 0, 0] = 1.0
    prods[0, 0, 1] = 0.0
    prods[0, 1, 0] = 0.0
    prods[0, 1, 1] = 1.0
    digits[0] = 0

    with nogil:
        while True:
            # multiply prefix product by the factor selected at this level
            parent = level - 1
            j = <int> digits[parent]
            pa = prods[parent, 0, 0]
            pb = prods[parent, 0, 1]
            pc = prods[parent, 1, 0]
            pd = prods[parent, 1, 1]
            a = pa * base[j, 0, 0] + pb * base[j, 1, 0]
            b = pa * base[j, 0, 1] + pb * base[j, 1, 1]
            c = pc * base[j, 0, 0] + pd * base[j, 1, 0]
            d = pc * base[j, 0, 1] + pd * base[j, 1, 1]
            prods[level, 0, 0] = a
            prods[level, 0, 1] = b
            prods[level, 1, 0] = c
            prods[level, 1, 1] = d

            nrm = _opnorm_2x2(a, b, c, d, kind)
            if nrm > max_norms[level - 1]:
                max_norms[level - 1] = nrm
            sr = _sr_2x2(a, b, c, d)
            if counts[level] == 0 or sr > max_srs[level - 1]:
                max_srs[level - 1] = sr
                argmax_idx[level - 1] = counts[level]
            counts[level] += 1

            if level < depth:
                digits[level] = 0
                level += 1
                continue
            # backtrack to the deepest level with an unexhausted digit
            while level >= 1 and digits[level - 1] == m - 1:
                level -= 1
            if level == 0:
                break
            digits[level - 1] += 1

    return max_norms_arr, max_srs_arr, argmax_arr


def barabanov_sweep(double[:, :, ::1] mats, double[:, ::1] xs,
                    double[::1] h, int kind):
    """One application of the extremal-norm operator on a uniform angle
    grid; mirrors `_kernels_py.barabanov_sweep`."""
    cdef int m = mats.shape[0]
    cdef int g = h.shape[0]
    out_arr = np.zeros(g)
    cdef double[::1] out = out_arr
    cdef double step = TWO_PI / g
    cdef int i, t, i0, i1
    cdef double x0, x1, y0, y1, ny, ang, pos, frac, hv, val

    with nogil:
        for i in range(g):
            x0 = xs[i, 0]
            x1 = xs[i, 1]
            for t in range(m):
                y0 = mats[t, 0, 0] * x0 + mats[t, 0, 1] * x1
                y1 = mats[t, 1, 0] * x0 + mats[t, 1, 1] * x1
                if kind == 1:
                    ny = fabs(y0) + fabs(y1)
                elif kind == 0:
                    ny = fabs(y0) if fabs(y0) > fabs(y1) else fabs(y1)
                else:
                    ny = sqrt(y0 * y0 + y1 * y1)
                ang = atan2(y1, y0)
                if ang < 0.0:
                    ang += TWO_PI
                pos = ang / step
                i0 = <int> floor(pos)
                frac = pos - floor(pos)
                if i0 >= g:
                    i0 -= g
                i1 = i0 + 1
                if i1 >= g:
                    i1 -= g
                hv = h[i0] * (1.0 - frac) + h[i1] * frac
                val = ny * hv
                if val > out[i]:
                    out[i] = val
    return out_arr
