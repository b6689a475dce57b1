"""Numpy implementations of the two performance-critical kernels.

The compiled module ``_kernels_cy`` exposes the same callables; ``_backend``
selects whichever is importable.
"""

import numpy as np

# The generator product L1 (x) L2 has four nonzero entries (+1, -1, -1, +1)
# at the row/column pairs (a,d), (b,c), (c,b), (d,a); gathering the four
# affected columns u_a..u_d of the Hermitian root S reduces
# A = S (L1 (x) L2) S* to the contraction U K U^T below.
_K4 = np.array(
    [[0, 0, 0, 1],
     [0, 0, -1, 0],
     [0, -1, 0, 0],
     [1, 0, 0, 0]],
    dtype=np.float64,
)


def apply_kraus_single(rho, kraus, shift):
    """Apply sum_k K_k rho K_k^dag with 2x2 ops acting on bit ``shift``.

    Parameters
    ----------
    rho : (d, d) complex ndarray
    kraus : (n_ops, 2, 2) complex ndarray
    shift : int
        Bit position of the target qubit (0 = least significant).
    """
    d = rho.shape[0]
    hi = d >> (shift + 1)
    lo = 1 << shift
    r6 = rho.reshape(hi, 2, lo, hi, 2, lo)
    out = np.einsum("kab,hbljdm,kcd->haljcm", kraus, r6, kraus.conj(), optimize=True)
    return np.ascontiguousarray(out.reshape(d, d))


def pair_singular_values(sqrt_rho, cols):
    """Leading four singular values of A = S M S* for each generator pair.

    Parameters
    ----------
    sqrt_rho : (d, d) complex ndarray
        Hermitian square root S of the (permuted) density matrix.
    cols : (n_pairs, 4) integer ndarray
        Basis indices (a, b, c, d) touched by each generator product M.

    Returns
    -------
    (n_pairs, 4) float ndarray, rows sorted in decreasing order.
    """
    n_pairs = cols.shape[0]
    out = np.empty((n_pairs, 4))
    for i in range(n_pairs):
        u = sqrt_rho[:, cols[i]]
        a = u @ _K4 @ u.T
        out[i] = np.linalg.svd(a, compute_uv=False)[:4]
    return out
