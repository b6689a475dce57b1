# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels mirroring _kernels_py.

``apply_kraus_single`` runs the two-sided 2x2 Kraus update with plain bit
loops.  ``pair_singular_values`` avoids the dense n x n singular value
problem per generator pair: with U the four affected columns of the
Hermitian root S, A = U K U^T shares its nonzero singular values with the
4 x 4 matrix R K R^T, where R is the triangular factor of U.  Each pair
therefore costs one n x 4 QR plus one 4 x 4 SVD.
"""

import numpy as np

cimport numpy as cnp
from scipy.linalg.cython_lapack cimport zgeqrf, zgesvd

cnp.import_array()


def apply_kraus_single(const double complex[:, ::1] rho,
                       const double complex[:, :, ::1] kraus,
                       Py_ssize_t shift):
    cdef Py_ssize_t d = rho.shape[0]
    cdef Py_ssize_t n_ops = kraus.shape[0]
    out_arr = np.zeros((d, d), dtype=np.complex128)
    tmp_arr = np.empty((d, d), dtype=np.complex128)
    cdef double complex[:, ::1] out = out_arr
    cdef double complex[:, ::1] tmp = tmp_arr
    cdef Py_ssize_t bit = (<Py_ssize_t>1) << shift
    cdef Py_ssize_t k, x, y, x1, y1
    cdef double complex k00, k01, k10, k11
    cdef double complex c00, c01, c10, c11
    cdef double complex t0, t1

    with nogil:
        for k in range(n_ops):
            k00 = kraus[k, 0, 0]; k01 = kraus[k, 0, 1]
            k10 = kraus[k, 1, 0]; k11 = kraus[k, 1, 1]
            c00 = k00.conjugate(); c01 = k01.conjugate()
            c10 = k10.conjugate(); c11 = k11.conjugate()
            # tmp = K rho (rows mixed in pairs differing at `bit`)
            for x in range(d):
                if x & bit:
                    continue
                x1 = x | bit
                for y in range(d):
                    t0 = rho[x, y]; t1 = rho[x1, y]
                    tmp[x, y] = k00 * t0 + k01 * t1
                    tmp[x1, y] = k10 * t0 + k11 * t1
            # out += tmp K^dagger (columns mixed in pairs)
            for x in range(d):
                for y in range(d):
                    if y & bit:
                        continue
                    y1 = y | bit
                    t0 = tmp[x, y]; t1 = tmp[x, y1]
                    out[x, y] = out[x, y] + t0 * c00 + t1 * c01
                    out[x, y1] = out[x, y1] + t0 * c10 + t1 * c11
    return out_arr


def pair_singular_values(const double complex[:, ::1] sqrt_rho,
                         const long long[:, ::1] cols):
    cdef Py_ssize_t d = sqrt_rho.shape[0]
    cdef Py_ssize_t n_pairs = cols.shape[0]
    out_arr = np.empty((n_pairs, 4), dtype=np.float64)
    cdef double[:, ::1] out = out_arr

    # LAPACK scratch, reused across pairs
    cdef int m = <int>d, four = 4, lda = <int>d, ldb = 4, one = 1, info = 0
    cdef int lwork_qr = 4 * 64, lwork_svd = 128
    u_arr = np.empty(d * 4, dtype=np.complex128)
    qwork_arr = np.empty(lwork_qr, dtype=np.complex128)
    swork_arr = np.empty(lwork_svd, dtype=np.complex128)
    rwork_arr = np.empty(20, dtype=np.float64)
    cdef double complex[::1] u = u_arr
    cdef double complex[::1] qwork = qwork_arr
    cdef double complex[::1] swork = swork_arr
    cdef double[::1] rwork = rwork_arr
    cdef double complex tau[4]
    cdef double complex r[4][4]
    cdef double complex b[16]
    cdef double complex zdum
    cdef double s[4]
    cdef char jobn = b'N'
    cdef Py_ssize_t i, j, row, col_a, col_b
    cdef bint failed = False

    with nogil:
        for i in range(n_pairs):
            # gather the four columns of S into Fortran order
            for j in range(4):
                col_a = <Py_ssize_t>cols[i, j]
                for row in range(d):
                    u[j * d + row] = sqrt_rho[row, col_a]
            zgeqrf(&m, &four, &u[0], &lda, &tau[0], &qwork[0], &lwork_qr, &info)
            if info != 0:
                failed = True
                break
            for row in range(4):
                for j in range(4):
                    r[row][j] = u[j * d + row] if row <= j else 0.0
            # b = R K R^T with K = antidiag(+1, -1, -1, +1), column-major
            for row in range(4):
                for j in range(4):
                    b[j * 4 + row] = (r[row][0] * r[j][3] - r[row][1] * r[j][2]
                                      - r[row][2] * r[j][1] + r[row][3] * r[j][0])
            zgesvd(&jobn, &jobn, &four, &four, &b[0], &ldb, &s[0],
                   &zdum, &one, &zdum, &one, &swork[0], &lwork_svd,
                   &rwork[0], &info)
            if info != 0:
                failed = True
                break
            out[i, 0] = s[0]; out[i, 1] = s[1]; out[i, 2] = s[2]; out[i, 3] = s[3]
    if failed:
        raise ArithmeticError(f"LAPACK failed with info={info} on pair {i}")
    return out_arr
