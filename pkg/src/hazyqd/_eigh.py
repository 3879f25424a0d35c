"""Dense Hermitian eigenvalue kernels (numba).

Two independent routes: Householder reduction to a real symmetric
tridiagonal matrix followed by implicit-shift QL, and cyclic Jacobi
rotations. Both return eigenvalues only.
"""

import numpy as np
from numba import njit

MAX_QL_ITER = 60
MAX_JACOBI_SWEEPS = 100


@njit(cache=True)
def _tridiagonalize(a):
    """Reduce Hermitian ``a`` (overwritten) to tridiagonal form.

    Returns the real diagonal and the moduli of the sub-diagonal; the
    complex phases of the sub-diagonal are removable by a diagonal unitary
    and do not affect the spectrum.
    """
    n = a.shape[0]
    d = np.empty(n)
    e = np.zeros(n)
    for k in range(n - 2):
        m = n - k - 1
        # scale the column first: squaring entries near 1e-160 underflows
        scale = 0.0
        for i in range(m):
            scale = max(scale, abs(a[k + 1 + i, k]))
        if scale == 0.0:
            e[k] = 0.0
            continue
        v = np.empty(m, dtype=np.complex128)
        norm2 = 0.0
        for i in range(m):
            v[i] = a[k + 1 + i, k] / scale
            norm2 += v[i].real * v[i].real + v[i].imag * v[i].imag
        vnorm = np.sqrt(norm2)
        alpha = scale * vnorm
        x0 = v[0]
        ax0 = abs(x0)
        phase = x0 / ax0 if ax0 > 0.0 else 1.0 + 0.0j
        v[0] += phase * vnorm
        vv = 0.0
        for i in range(m):
            vv += v[i].real * v[i].real + v[i].imag * v[i].imag
        beta = 2.0 / vv
        # p = beta * A22 v
        p = np.zeros(m, dtype=np.complex128)
        for i in range(m):
            s = 0.0j
            for j in range(m):
                s += a[k + 1 + i, k + 1 + j] * v[j]
            p[i] = beta * s
        kk = 0.0j
        for i in range(m):
            kk += np.conj(v[i]) * p[i]
        kk *= 0.5 * beta
        for i in range(m):
            p[i] -= kk * v[i]
        for i in range(m):
            for j in range(m):
                a[k + 1 + i, k + 1 + j] -= p[i] * np.conj(v[j]) + v[i] * np.conj(p[j])
        e[k] = alpha
    if n >= 2:
        e[n - 2] = abs(a[n - 1, n - 2])
    for i in range(n):
        d[i] = a[i, i].real
    return d, e


@njit(cache=True)
def _tql(d, e):
    """Implicit-shift QL on a symmetric tridiagonal matrix.

    ``e[i]`` couples ``d[i]`` and ``d[i+1]``; ``e[n-1]`` must be zero.
    Couplings below eps * ||T|| count as converged, so eigenvalues carry
    absolute (not relative) accuracy, as with LAPACK.
    Returns False if an eigenvalue fails to converge.
    """
    n = d.shape[0]
    eps = np.finfo(np.float64).eps
    # absolute floor: graded matrices otherwise stall on negligible couplings
    anorm = 0.0
    for i in range(n):
        anorm = max(anorm, abs(d[i]) + abs(e[i]) + (abs(e[i - 1]) if i else 0.0))
    floor = eps * anorm
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * dd or abs(e[m]) <= floor:
                    break
                m += 1
            if m == l:
                break
            if it == MAX_QL_ITER:
                return False
            it += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = np.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + (r if g >= 0.0 else -r))
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = False
            i = m - 1
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = np.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return True


@njit(cache=True)
def householder_ql(a):
    d, e = _tridiagonalize(a)
    e[d.shape[0] - 1] = 0.0
    ok = _tql(d, e)
    return d, ok


@njit(cache=True)
def jacobi(a, tol):
    """Cyclic complex Jacobi; returns (eigenvalues, converged)."""
    n = a.shape[0]
    for sweep in range(MAX_JACOBI_SWEEPS):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += abs(a[p, q]) ** 2
        if off <= tol * tol:
            return np.array([a[i, i].real for i in range(n)]), True
        for p in range(n):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                # rotate the phase out of a[p, q] so the pair is real symmetric
                ph = apq / mag
                for i in range(n):
                    a[i, q] *= np.conj(ph)
                for i in range(n):
                    a[q, i] *= ph
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                for i in range(n):
                    aip = a[i, p]
                    aiq = a[i, q]
                    a[i, p] = c * aip - s * aiq
                    a[i, q] = s * aip + c * aiq
                for i in range(n):
                    api = a[p, i]
                    aqi = a[q, i]
                    a[p, i] = c * api - s * aqi
                    a[q, i] = s * api + c * aqi
                a[p, q] = 0.0
                a[q, p] = 0.0
    return np.array([a[i, i].real for i in range(n)]), False
