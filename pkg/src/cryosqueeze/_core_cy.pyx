# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``_core_py``: Pade/scaling-squaring ``expm`` on BLAS
zgemm/zgesv, and a tight-loop trapezoidal LTI stepper.

Same algorithms and coefficient tables as the pure backend; only the inner
loops differ.  Selected automatically by ``cryosqueeze.kernels`` when this
module is importable.
"""
import numpy as np

cimport numpy as cnp
from libc.math cimport ceil, log2
from scipy.linalg.cython_blas cimport zgemm
from scipy.linalg.cython_lapack cimport zgesv

cnp.import_array()

ctypedef double complex zdouble

_PADE_B = {
    3: (120.0, 60.0, 12.0, 1.0),
    5: (30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0),
    7: (17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0),
    9: (17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
        2162160.0, 110880.0, 3960.0, 90.0, 1.0),
    13: (64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
         1187353796428800.0, 129060195264000.0, 10559470521600.0,
         670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
         960960.0, 16380.0, 182.0, 1.0),
}

_THETA = (
    (3, 1.495585217958292e-2),
    (5, 2.539398330063230e-1),
    (7, 9.504178996162932e-1),
    (9, 2.097847961257068),
    (13, 5.371920351148152),
)


cdef void _mm(zdouble[::1, :] a, zdouble[::1, :] b, zdouble[::1, :] out) noexcept:
    """out = a @ b for square Fortran-ordered complex matrices."""
    cdef int n = a.shape[0]
    cdef zdouble alpha = 1.0, beta = 0.0
    zgemm(b"N", b"N", &n, &n, &n, &alpha, &a[0, 0], &n, &b[0, 0], &n, &beta, &out[0, 0], &n)


def _solve(lhs, rhs):
    """Solve lhs @ x = rhs (both square, complex) via LAPACK zgesv."""
    cdef cnp.ndarray[zdouble, ndim=2] a = np.asfortranarray(lhs, dtype=np.complex128)
    cdef cnp.ndarray[zdouble, ndim=2] b = np.asfortranarray(rhs, dtype=np.complex128)
    cdef int n = a.shape[0]
    cdef int nrhs = b.shape[1]
    cdef int info = 0
    cdef cnp.ndarray[int, ndim=1] ipiv = np.empty(n, dtype=np.intc)
    zgesv(&n, &nrhs, &a[0, 0], &n, &ipiv[0], &b[0, 0], &n, &info)
    if info != 0:
        raise OverflowError("Pade denominator is singular")
    return b


def expm(a):
    """Matrix exponential; same contract as the pure backend."""
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expm expects a square matrix")
    a = np.asfortranarray(a, dtype=np.complex128)
    if not np.all(np.isfinite(a)):
        raise ValueError("expm input has non-finite entries")
    cdef int n = a.shape[0]
    if n == 0:
        return a
    cdef double norm = float(np.max(np.sum(np.abs(a), axis=0)))
    cdef int squarings = 0
    cdef int order = 13
    for m, theta in _THETA:
        if norm <= theta:
            order = m
            break
    else:
        squarings = max(0, <int>ceil(log2(norm / _THETA[4][1])))
        a = a * (0.5 ** squarings)
        a = np.asfortranarray(a)

    b = _PADE_B[order]
    ident = np.asfortranarray(np.eye(n, dtype=np.complex128))
    a2 = np.asfortranarray(np.empty((n, n), dtype=np.complex128))
    _mm(a, a, a2)
    if order == 3:
        u_poly = b[3] * a2 + b[1] * ident
        v = b[2] * a2 + b[0] * ident
    elif order == 5:
        a4 = np.asfortranarray(np.empty((n, n), dtype=np.complex128))
        _mm(a2, a2, a4)
        u_poly = b[5] * a4 + b[3] * a2 + b[1] * ident
        v = b[4] * a4 + b[2] * a2 + b[0] * ident
    elif order == 7:
        a4 = np.asfortranarray(np.empty((n, n), dtype=np.complex128))
        _mm(a2, a2, a4)
        a6 = np.asfortranarray(np.empty((n, n), dtype=np.complex128))
        _mm(a4, a2, a6)
        u_poly = b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident
        v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident
    elif order == 9:
        a4 = np.asfortranarray(np.empty((n, n), dtype=np.complex128))
        _mm(a2, a2, a4)
        a6 = np.asfortranarray(np.empty((n, n), dtype=np.complex128))
        _mm(a4, a2, a6)
        a8 = np.asfortranarray(np.empty((n, n), dtype=np.complex128))
        _mm(a6, a2, a8)
        u_poly = b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident
        v = b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident
    else:
        a4 = np.asfortranarray(np.empty((n, n), dtype=np.complex128))
        _mm(a2, a2, a4)
        a6 = np.asfortranarray(np.empty((n, n), dtype=np.complex128))
        _mm(a4, a2, a6)
        w_in = np.asfortranarray(b[13] * a6 + b[11] * a4 + b[9] * a2)
        w = np.asfortranarray(np.empty((n, n), dtype=np.complex128))
        _mm(a6, w_in, w)
        u_poly = w + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident
        v_in = np.asfortranarray(b[12] * a6 + b[10] * a4 + b[8] * a2)
        v_hi = np.asfortranarray(np.empty((n, n), dtype=np.complex128))
        _mm(a6, v_in, v_hi)
        v = v_hi + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident

    u = np.asfortranarray(np.empty((n, n), dtype=np.complex128))
    _mm(a, np.asfortranarray(u_poly), u)
    r = _solve(v - u, v + u)
    cdef int k
    cdef cnp.ndarray[zdouble, ndim=2, mode="fortran"] rsq
    for k in range(squarings):
        rsq = np.asfortranarray(np.empty((n, n), dtype=np.complex128))
        _mm(r, r, rsq)
        r = rsq
    if not np.all(np.isfinite(r)):
        raise OverflowError("expm result overflowed double precision")
    return np.ascontiguousarray(r)


def trapezoid_lti(a, b, c, double d, double dt, int nsteps):
    """Unit-step trapezoidal integration; same contract as the pure backend."""
    a = np.asarray(a, dtype=np.float64)
    cdef int n = a.shape[0]
    ident = np.eye(n)
    lhs = ident - 0.5 * dt * a
    cdef cnp.ndarray[double, ndim=2, mode="c"] step_mat = \
        np.ascontiguousarray(np.linalg.solve(lhs, ident + 0.5 * dt * a))
    cdef cnp.ndarray[double, ndim=1] step_vec = \
        np.ascontiguousarray(np.linalg.solve(lhs, dt * np.asarray(b, dtype=np.float64)))
    cdef cnp.ndarray[double, ndim=1] cvec = np.ascontiguousarray(c, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] x = np.zeros(n)
    cdef cnp.ndarray[double, ndim=1] xn = np.zeros(n)
    cdef cnp.ndarray[double, ndim=1] y = np.empty(nsteps + 1)
    cdef int i, j, k
    cdef double acc, yk
    y[0] = d
    for k in range(1, nsteps + 1):
        for i in range(n):
            acc = step_vec[i]
            for j in range(n):
                acc += step_mat[i, j] * x[j]
            xn[i] = acc
        yk = d
        for i in range(n):
            x[i] = xn[i]
            yk += cvec[i] * x[i]
        y[k] = yk
    return y
