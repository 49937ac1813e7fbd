"""Classical compact groups: density kernels, closed-form predictions, Haar Monte Carlo."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .eigen import eigvals_qr
from .testfns import TestFunctionPair, plancherel_product_at_0, weighted_abs_integral


class SymmetryGroup(enum.Enum):
    U = "U"
    USp = "USp"
    O = "O"
    SOeven = "SOeven"
    SOodd = "SOodd"

    @classmethod
    def parse(cls, name: str | "SymmetryGroup") -> "SymmetryGroup":
        if isinstance(name, cls):
            return name
        for g in cls:
            if g.value.lower() == str(name).strip().lower():
                return g
        raise ValueError(f"unknown group {name!r}; expected one of {[g.value for g in cls]}")


ORTHOGONAL = (SymmetryGroup.SOeven, SymmetryGroup.O, SymmetryGroup.SOodd)
_C2 = {SymmetryGroup.SOeven: 0.0, SymmetryGroup.O: 0.5, SymmetryGroup.SOodd: 1.0}


class SupportError(ValueError):
    """Test-function support outside the range where a closed form is valid."""


# ---------------------------------------------------------------- kernels


def _K(y):
    y = np.asarray(y, dtype=float)
    return np.sinc(y)


def _K_eps(x, y, eps: int):
    return _K(np.subtract(x, y)) + eps * _K(np.add(x, y))


def kernel_W1(group: SymmetryGroup | str, x) -> np.ndarray:
    """Absolutely continuous part of the 1-level density (see W1_atom for point masses)."""
    group = SymmetryGroup.parse(group)
    x = np.asarray(x, dtype=float)
    if group is SymmetryGroup.U:
        return np.ones_like(x)
    if group is SymmetryGroup.SOeven:
        return 1.0 + _K(2 * x)
    if group in (SymmetryGroup.USp, SymmetryGroup.SOodd):
        return 1.0 - _K(2 * x)
    return np.ones_like(x)  # O: half of SOeven plus half of SOodd


def W1_atom(group: SymmetryGroup | str) -> float:
    """Mass of the delta at x = 0 in W1."""
    group = SymmetryGroup.parse(group)
    return {SymmetryGroup.SOodd: 1.0, SymmetryGroup.O: 0.5}.get(group, 0.0)


def kernel_W2(group: SymmetryGroup | str, x1, x2) -> np.ndarray:
    """Absolutely continuous part of det[K_eps(x_i, x_j)] for n = 2."""
    group = SymmetryGroup.parse(group)
    if group is SymmetryGroup.O:
        return 0.5 * (kernel_W2(SymmetryGroup.SOeven, x1, x2) + kernel_W2(SymmetryGroup.SOodd, x1, x2))
    if group is SymmetryGroup.U:
        k11 = k22 = 1.0
        k12 = _K(np.subtract(x1, x2))
        return k11 * k22 - k12 * k12
    eps = 1 if group is SymmetryGroup.SOeven else -1
    return _K_eps(x1, x1, eps) * _K_eps(x2, x2, eps) - _K_eps(x1, x2, eps) ** 2


def W2_atom(group: SymmetryGroup | str, x_other) -> np.ndarray:
    """Weight multiplying delta(x_k) in W2, as a function of the remaining variable."""
    group = SymmetryGroup.parse(group)
    w = W1_atom(group)
    return w * _K_eps(x_other, x_other, -1) if w else np.zeros_like(np.asarray(x_other, dtype=float))


# ---------------------------------------------------------------- predictions


def predicted_1level(group: SymmetryGroup | str, F: TestFunctionPair) -> float:
    """int ghat(u) W1hat(u) du for supp ghat inside (-1, 1)."""
    group = SymmetryGroup.parse(group)
    if F.support >= 1:
        raise SupportError("1-level table needs supp(ghat) inside (-1, 1)")
    if group is SymmetryGroup.U:
        return F.ghat0
    if group is SymmetryGroup.USp:
        return F.ghat0 - 0.5 * F.g0
    return F.ghat0 + 0.5 * F.g0


def predicted_2level(group: SymmetryGroup | str, F1: TestFunctionPair, F2: TestFunctionPair) -> float:
    """Orthogonal 2-level density for supp ghat1 + supp ghat2 < 1."""
    group = SymmetryGroup.parse(group)
    if group not in ORTHOGONAL:
        raise ValueError("2-level closed form is provided for SOeven, O and SOodd")
    if F1.support + F2.support >= 1:
        raise SupportError("2-level formula needs sigma1 + sigma2 < 1")
    a = F1.ghat0 + 0.5 * F1.g0
    b = F2.ghat0 + 0.5 * F2.g0
    return (
        a * b
        + 2 * weighted_abs_integral(F1, F2)
        - 2 * plancherel_product_at_0(F1, F2)
        - F1.g0 * F2.g0
        + _C2[group] * F1.g0 * F2.g0
    )


# ---------------------------------------------------------------- sampling


@dataclass(frozen=True)
class EigenangleSample:
    """Eigenangles in (-pi, pi] and zeros scaled to mean spacing one near 1."""

    group: SymmetryGroup
    N: int
    angles: np.ndarray
    normalized: np.ndarray


def density_scale(group: SymmetryGroup, N: int) -> int:
    """Mean eigenangle density near 1, times 2 pi.

    This is the size of the sine kernel in the exact finite-N correlation
    functions: N for U(N), 2N + 1 for USp(2N), 2N - 1 for SO(2N) and 2N for
    SO(2N + 1). O(2N) mixes the two orthogonal cases and has no single scale.
    """
    scales = {
        SymmetryGroup.U: N,
        SymmetryGroup.USp: 2 * N + 1,
        SymmetryGroup.SOeven: 2 * N - 1,
        SymmetryGroup.SOodd: 2 * N,
    }
    if group is SymmetryGroup.O:
        raise ValueError("O(2N) is a mixture; use the scale of the sampled component")
    return scales[group]


def _haar_unitary(n: int, size: int, rng: np.random.Generator) -> np.ndarray:
    Z = (rng.standard_normal((size, n, n)) + 1j * rng.standard_normal((size, n, n))) / math.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diagonal(R, axis1=1, axis2=2)
    return Q * (d / np.abs(d))[:, None, :]


def _haar_special_orthogonal(n: int, size: int, rng: np.random.Generator) -> np.ndarray:
    Z = rng.standard_normal((size, n, n))
    Q, R = np.linalg.qr(Z)
    Q = Q * np.sign(np.diagonal(R, axis1=1, axis2=2))[:, None, :]
    neg = np.linalg.det(Q) < 0
    Q[neg, :, 0] *= -1
    return Q


def _symplectic_J(N: int) -> np.ndarray:
    I = np.eye(N)
    Z = np.zeros((N, N))
    return np.block([[Z, I], [-I, Z]])


def _haar_symplectic(N: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """Quaternionic Gram-Schmidt: each new column u brings its partner -J conj(u).

    Columns u_1..u_N, -J conj(u_1)..-J conj(u_N) give the block form
    [[A, B], [-conj(B), conj(A)]] of a unitary symplectic matrix.
    """
    J = _symplectic_J(N)
    Q = np.zeros((size, 2 * N, 2 * N), dtype=complex)
    for i in range(N):
        v = (rng.standard_normal((size, 2 * N)) + 1j * rng.standard_normal((size, 2 * N))) / math.sqrt(2)
        if i:
            B = np.concatenate([Q[:, :, :i], Q[:, :, N : N + i]], axis=2)
            Bh = np.conj(np.swapaxes(B, 1, 2))
            for _ in range(2):
                v = v - (B @ (Bh @ v[:, :, None]))[:, :, 0]
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        Q[:, :, i] = v
        Q[:, :, N + i] = -(v.conj() @ J.T)
    return Q


def _angles_from(M: np.ndarray, solver: str) -> np.ndarray:
    if solver == "lapack":
        ev = np.linalg.eigvals(M)
    elif solver == "qr":
        ev = np.array([eigvals_qr(m) for m in M])
    else:
        raise ValueError(f"unknown eigensolver {solver!r}")
    dev = np.max(np.abs(np.abs(ev) - 1.0))
    if dev > 1e-8:
        raise ArithmeticError(f"eigenvalues off the unit circle by {dev:.2e}")
    return np.angle(ev)


def sample_haar_batch(
    group: SymmetryGroup | str,
    N: int,
    size: int,
    rng: np.random.Generator,
    solver: str = "lapack",
) -> np.ndarray:
    """Eigenangles of `size` Haar samples, shape (size, matrix dimension); O rows may be ragged, so O is excluded."""
    group = SymmetryGroup.parse(group)
    if not 1 <= N <= 100:
        raise ValueError("N must lie in [1, 100]")
    if group is SymmetryGroup.U:
        M = _haar_unitary(N, size, rng)
    elif group is SymmetryGroup.SOeven:
        M = _haar_special_orthogonal(2 * N, size, rng)
    elif group is SymmetryGroup.SOodd:
        M = _haar_special_orthogonal(2 * N + 1, size, rng)
    elif group is SymmetryGroup.USp:
        M = _haar_symplectic(N, size, rng)
    else:
        raise ValueError("O is sampled as a mixture; use sample_haar or empirical_nlevel")
    return _angles_from(M, solver)


def sample_haar(group: SymmetryGroup | str, N: int, rng: np.random.Generator, solver: str = "lapack") -> EigenangleSample:
    """One Haar sample. O(2N) is modelled as SO(2N) or SO(2N+1) with probability 1/2 each."""
    group = SymmetryGroup.parse(group)
    actual = group
    if group is SymmetryGroup.O:
        actual = SymmetryGroup.SOeven if rng.random() < 0.5 else SymmetryGroup.SOodd
    angles = sample_haar_batch(actual, N, 1, rng, solver)[0]
    scale = density_scale(actual, N)
    return EigenangleSample(group, N, angles, angles * scale / (2 * math.pi))


# ---------------------------------------------------------------- statistics


@dataclass(frozen=True)
class MCEstimate:
    mean: float
    stderr: float
    samples: int

    def within(self, target: float, nsigma: float = 3.0) -> bool:
        return abs(self.mean - target) <= nsigma * self.stderr


def periodized(F: TestFunctionPair, scale: int):
    """theta -> sum_m g(scale (theta / 2 pi + m)) as a finite cosine sum."""
    n = np.arange(1, int(math.ceil(F.support * scale)) + 1)
    coeff = np.asarray(F.ghat(n / scale), dtype=float)
    keep = coeff != 0
    n, coeff = n[keep], coeff[keep]

    def P(theta: np.ndarray) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        return (F.ghat0 + 2.0 * np.cos(theta[..., None] * n) @ coeff) / scale

    return P


def _test_values(F: TestFunctionPair, angles: np.ndarray, scale: int, periodize: bool) -> np.ndarray:
    if periodize:
        return periodized(F, scale)(angles)
    return np.asarray(F.g(angles * scale / (2 * math.pi)), dtype=float)


def _statistics(
    group: SymmetryGroup,
    angles: np.ndarray,
    scale: int,
    F1: TestFunctionPair,
    F2: TestFunctionPair | None,
    periodize: bool,
    central: bool,
) -> np.ndarray:
    v1 = _test_values(F1, angles, scale, periodize)
    A = v1.sum(axis=-1)
    if F2 is None:
        return A
    v2 = _test_values(F2, angles, scale, periodize)
    B = v2.sum(axis=-1)
    # sum over j1 != +-j2: drop j1 = j2 and j1 = -j2 (the same pairs for U)
    diag = (v1 * v2).sum(axis=-1)
    if group is SymmetryGroup.U:
        return A * B - diag
    out = A * B - 2 * diag
    if central:
        # the zero at the centre is its own mirror and was removed twice
        c1 = _test_values(F1, np.zeros(1), scale, periodize)[0]
        c2 = _test_values(F2, np.zeros(1), scale, periodize)[0]
        out = out + c1 * c2
    return out


def iter_multi_statistics(
    group: SymmetryGroup | str,
    N: int,
    num_samples: int,
    specs: Sequence[tuple[TestFunctionPair, TestFunctionPair | None]],
    rng: np.random.Generator,
    periodize: bool = True,
    batch: int = 250,
    solver: str = "lapack",
) -> Iterator[np.ndarray]:
    """Batches of shape (len(specs), batch): each (F1, F2) spec evaluated on the same samples.

    F2 None gives the 1-level statistic, otherwise the 2-level one.
    """
    group = SymmetryGroup.parse(group)
    done = 0
    while done < num_samples:
        size = min(batch, num_samples - done)
        if group is SymmetryGroup.O:
            odd = rng.random(size) < 0.5
            stats = np.empty((len(specs), size))
            for sub, is_odd in ((SymmetryGroup.SOeven, False), (SymmetryGroup.SOodd, True)):
                idx = np.flatnonzero(odd == is_odd)
                if len(idx):
                    ang = sample_haar_batch(sub, N, len(idx), rng, solver)
                    scale = density_scale(sub, N)
                    for i, (F1, F2) in enumerate(specs):
                        stats[i, idx] = _statistics(sub, ang, scale, F1, F2, periodize, is_odd)
        else:
            ang = sample_haar_batch(group, N, size, rng, solver)
            scale = density_scale(group, N)
            central = group is SymmetryGroup.SOodd
            stats = np.array([_statistics(group, ang, scale, F1, F2, periodize, central) for F1, F2 in specs])
        done += size
        yield stats


def iter_statistics(
    group: SymmetryGroup | str,
    N: int,
    num_samples: int,
    F1: TestFunctionPair,
    F2: TestFunctionPair | None,
    rng: np.random.Generator,
    periodize: bool = True,
    batch: int = 250,
    solver: str = "lapack",
) -> Iterator[np.ndarray]:
    """Per-sample 1-level (F2 None) or 2-level statistics in batches."""
    for stats in iter_multi_statistics(group, N, num_samples, [(F1, F2)], rng, periodize, batch, solver):
        yield stats[0]


def _estimate(vals: np.ndarray) -> MCEstimate:
    se = float(vals.std(ddof=1) / math.sqrt(len(vals))) if len(vals) > 1 else math.inf
    return MCEstimate(float(vals.mean()), se, len(vals))


def empirical_levels(
    group: SymmetryGroup | str,
    N: int,
    num_samples: int,
    specs: Sequence[tuple[TestFunctionPair, TestFunctionPair | None]],
    rng: np.random.Generator,
    periodize: bool = True,
    solver: str = "lapack",
) -> list[MCEstimate]:
    """Monte Carlo estimates for several statistics sharing one stream of Haar samples."""
    vals = np.concatenate(list(iter_multi_statistics(group, N, num_samples, specs, rng, periodize, solver=solver)), axis=1)
    return [_estimate(v) for v in vals]


def empirical_nlevel(
    group: SymmetryGroup | str,
    N: int,
    num_samples: int,
    F: TestFunctionPair | tuple[TestFunctionPair, TestFunctionPair],
    n: int,
    rng: np.random.Generator,
    periodize: bool = True,
    solver: str = "lapack",
) -> MCEstimate:
    """Monte Carlo mean of the n-level statistic with its standard error."""
    if n == 1:
        F1, F2 = (F, None) if isinstance(F, TestFunctionPair) else (F[0], None)
    elif n == 2:
        F1, F2 = (F, F) if isinstance(F, TestFunctionPair) else F
    else:
        raise ValueError("n must be 1 or 2")
    return empirical_levels(group, N, num_samples, [(F1, F2)], rng, periodize, solver)[0]
