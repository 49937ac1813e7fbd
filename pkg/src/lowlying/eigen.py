"""Dense nonsymmetric eigenvalues: Householder Hessenberg reduction and shifted QR."""

from __future__ import annotations

import numpy as np


class ConvergenceError(ArithmeticError):
    pass


def hessenberg(A: np.ndarray) -> np.ndarray:
    """Upper Hessenberg matrix unitarily similar to A."""
    H = np.array(A, dtype=complex)
    n = H.shape[0]
    for k in range(n - 2):
        x = H[k + 1 :, k].copy()
        alpha = np.linalg.norm(x)
        if alpha == 0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x
        v[0] += phase * alpha
        v /= np.linalg.norm(v)
        H[k + 1 :, k:] -= 2.0 * np.outer(v, v.conj() @ H[k + 1 :, k:])
        H[:, k + 1 :] -= 2.0 * np.outer(H[:, k + 1 :] @ v, v.conj())
        H[k + 2 :, k] = 0.0
    return H


def _givens(a: complex, b: complex) -> tuple[float, complex, float]:
    r = np.hypot(abs(a), abs(b))
    if r == 0:
        return 1.0, 0j, 0.0
    c = abs(a) / r
    s = (a / abs(a) if a != 0 else 1.0) * np.conj(b) / r
    return c, s, r


def eigvals_qr(A: np.ndarray, tol: float = 1e-14, max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a square matrix by complex single-shift QR with Wilkinson shifts."""
    H = hessenberg(A)
    n = H.shape[0]
    out = np.zeros(n, dtype=complex)
    hi = n - 1
    sweeps = 0
    scale = max(np.abs(H).max(), 1e-300)
    while hi >= 0:
        if hi == 0:
            out[0] = H[0, 0]
            break
        # look for a negligible subdiagonal
        lo = hi
        while lo > 0 and abs(H[lo, lo - 1]) > tol * (abs(H[lo, lo]) + abs(H[lo - 1, lo - 1]) + tol * scale):
            lo -= 1
        if lo == hi:
            out[hi] = H[hi, hi]
            hi -= 1
            sweeps = 0
            continue
        if lo > 0:
            H[lo, lo - 1] = 0.0
        sweeps += 1
        if sweeps > max_sweeps * (hi - lo + 1):
            raise ConvergenceError("QR iteration did not converge")
        a, b, c, d = H[hi - 1, hi - 1], H[hi - 1, hi], H[hi, hi - 1], H[hi, hi]
        tr, det = a + d, a * d - b * c
        disc = np.sqrt(tr * tr / 4 - det)
        mu1, mu2 = tr / 2 + disc, tr / 2 - disc
        mu = mu1 if abs(mu1 - d) < abs(mu2 - d) else mu2
        if sweeps % 11 == 0:
            mu = mu + abs(H[hi, hi - 1])  # exceptional shift
        blk = slice(lo, hi + 1)
        H[blk, blk] -= mu * np.eye(hi - lo + 1)
        rots = []
        for k in range(lo, hi):
            cs, sn, _ = _givens(H[k, k], H[k + 1, k])
            rots.append((cs, sn))
            G = np.array([[cs, sn], [-np.conj(sn), cs]])
            H[k : k + 2, k:] = G @ H[k : k + 2, k:]
        for idx, k in enumerate(range(lo, hi)):
            cs, sn = rots[idx]
            G = np.array([[cs, sn], [-np.conj(sn), cs]])
            H[: hi + 1, k : k + 2] = H[: hi + 1, k : k + 2] @ G.conj().T
        H[blk, blk] += mu * np.eye(hi - lo + 1)
    return out
