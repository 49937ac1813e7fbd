"""Level-1 holomorphic Hecke eigenforms from exact q-expansions.

The cusp space S_k is spanned by Delta^j E4^a E6^b (j = 1..d). After
row reduction the basis is q^j + O(q^{d+1}), so the first d coefficients
of a form are its coordinates and Hecke matrices are exact integer
matrices. Eigenvectors are found in high precision and applied to the
basis in fixed point, which keeps the final coefficients exact up to a
single rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Sequence

import flint
import mpmath
import numpy as np

from .primes import primes_upto

ZETA2 = math.pi**2 / 6

# fixed-point scale for eigenvector coordinates
_FIX_BITS = 256
_DPS = 90


class PrecisionError(ValueError):
    """A coefficient beyond the stored precision was requested."""


class ClusteredSpectrumError(ArithmeticError):
    """Hecke eigenvalues too close to split eigen-systems reliably."""


def dim_Sk(k: int) -> int:
    if k % 2 or k < 4:
        raise ValueError(f"weight must be even and at least 4, got {k}")
    return k // 12 - 1 if k % 12 == 2 else k // 12


# ---------------------------------------------------------------- q-series


@lru_cache(maxsize=4)
def _eisenstein(N: int) -> tuple[flint.fmpz_poly, flint.fmpz_poly]:
    """E4 and E6 to O(q^{N+1})."""
    s3 = [0] * (N + 1)
    s5 = [0] * (N + 1)
    for d in range(1, N + 1):
        d3, d5 = d**3, d**5
        for m in range(d, N + 1, d):
            s3[m] += d3
            s5[m] += d5
    e4 = [1] + [240 * s for s in s3[1:]]
    e6 = [1] + [-504 * s for s in s5[1:]]
    return flint.fmpz_poly(e4), flint.fmpz_poly(e6)


@lru_cache(maxsize=4)
def _delta(N: int) -> flint.fmpz_poly:
    e4, e6 = _eisenstein(N)
    n = N + 1
    num = e4.mul_low(e4, n).mul_low(e4, n) - e6.mul_low(e6, n)
    return flint.fmpz_poly([c // 1728 for c in num.coeffs()])


@lru_cache(maxsize=64)
def _delta_power(N: int, j: int) -> flint.fmpz_poly:
    if j == 1:
        return _delta(N)
    return _delta_power(N, j - 1).mul_low(_delta(N), N + 1)


@lru_cache(maxsize=24)
def _eisenstein_monomial(w: int, N: int) -> flint.fmpz_poly:
    """E4^a E6^b of weight w (w = 0 or w >= 4)."""
    e4, e6 = _eisenstein(N)
    b = 0 if w % 4 == 0 else 1
    a = (w - 6 * b) // 4
    out = flint.fmpz_poly([1])
    if a:
        out = e4.pow_trunc(a, N + 1)
    if b:
        out = out.mul_low(e6, N + 1)
    return out


# ---------------------------------------------------------------- spaces


@dataclass
class CuspSpace:
    """S_k with an echelon basis q^j + O(q^{d+1}) known to O(q^{precision+1})."""

    weight: int
    dimension: int
    precision: int
    basis: tuple[flint.fmpz_poly, ...]
    _coeffs: list[list[int]] = field(default_factory=list, repr=False)
    _hecke: dict[int, flint.fmpz_mat] = field(default_factory=dict, repr=False)

    def coefficient(self, j: int, n: int) -> int:
        """a(n) of the j-th basis form (0-based j)."""
        if n > self.precision:
            raise PrecisionError(f"coefficient {n} beyond precision {self.precision}")
        if not self._coeffs:
            self._coeffs = [_padded(b, self.precision) for b in self.basis]
        return self._coeffs[j][n]

    def hecke_matrix(self, p: int) -> flint.fmpz_mat:
        """T_p on the coordinate basis; column j is the image of basis form j."""
        if p in self._hecke:
            return self._hecke[p]
        d, k = self.dimension, self.weight
        if d * p > self.precision:
            raise PrecisionError(f"T_{p} needs precision {d * p}, have {self.precision}")
        pk = p ** (k - 1)
        rows = []
        for n in range(1, d + 1):
            row = []
            for j in range(d):
                v = self.coefficient(j, n * p)
                if n % p == 0:
                    v += pk * self.coefficient(j, n // p)
                row.append(v)
            rows.append(row)
        mat = flint.fmpz_mat(rows) if d else flint.fmpz_mat(0, 0)
        self._hecke[p] = mat
        return mat


def _padded(f: flint.fmpz_poly, N: int) -> list[int]:
    c = [int(x) for x in f.coeffs()]
    return c + [0] * (N + 1 - len(c))


def build_space(k: int, N_max: int) -> CuspSpace:
    """Echelon basis of S_k to precision N_max, exact integer coefficients."""
    d = dim_Sk(k)
    if N_max < max(d, 2):
        raise PrecisionError(f"precision {N_max} below dimension {d}")
    forms = []
    for j in range(1, d + 1):
        w = k - 12 * j
        forms.append(_delta_power(N_max, j).mul_low(_eisenstein_monomial(w, N_max), N_max + 1))
    coeffs = [_padded(f, N_max) for f in forms]
    # clear the pivots above each leading q^j
    for j in range(d - 2, -1, -1):
        for i in range(j + 1, d):
            c = coeffs[j][i + 1]
            if c:
                forms[j] = forms[j] - c * forms[i]
                coeffs[j] = _padded(forms[j], N_max)
    return CuspSpace(k, d, N_max, tuple(forms), coeffs)


# ---------------------------------------------------------------- eigenforms


@dataclass(frozen=True)
class Sym2Value:
    """L(1, sym^2 f) from an Euler product with its last-decade drift."""

    value: float
    P: int
    drift: float

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class HeckeEigenform:
    """Normalized eigenform: lambdas[n] = a_f(n) / n^{(k-1)/2} for n <= N."""

    weight: int
    index: int
    lambdas: np.ndarray
    L1sym2: float
    harmonic_weight: float
    hecke_eigenvalue_2: int | float = 0

    @property
    def precision(self) -> int:
        return len(self.lambdas) - 1

    def lam(self, n: int) -> float:
        if n < 1:
            raise ValueError("n must be positive")
        if n > self.precision:
            raise PrecisionError(f"lambda_f({n}) beyond precision {self.precision}")
        return float(self.lambdas[n])

    def lam_prime_power(self, p: int, nu: int) -> float:
        """lambda_f(p^nu), using the Hecke recursion beyond stored precision."""
        if nu < 0:
            return 0.0
        if p**nu <= self.precision:
            return float(self.lambdas[p**nu])
        a, b = 1.0, self.lam(p)
        for _ in range(nu - 1):
            a, b = b, self.lam(p) * b - a
        return b


def _eigen_systems(space: CuspSpace) -> list[tuple[mpmath.mpf, list[mpmath.mpf]]]:
    """Eigenvalues of T_2 and eigenvectors normalized with a(1) = 1, ascending."""
    d = space.dimension
    T = space.hecke_matrix(2)
    if d == 1:
        return [(mpmath.mpf(int(T[0, 0])), [mpmath.mpf(1)])]
    with mpmath.workdps(_DPS):
        charpoly = [int(c) for c in T.charpoly().coeffs()][::-1]
        roots = sorted(mpmath.re(r) for r in mpmath.polyroots(charpoly, maxsteps=400, extraprec=4 * _DPS))
        scale = max(abs(r) for r in roots)
        gaps = [(b - a) / scale for a, b in zip(roots[:-1], roots[1:])]
        if min(gaps) < 1e-8:
            raise ClusteredSpectrumError(f"T_2 eigenvalues on S_{space.weight} closer than 1e-8")
        M = mpmath.matrix([[int(T[i, j]) for j in range(d)] for i in range(d)])
        out = []
        for lam in roots:
            A = M - lam * mpmath.eye(d)
            rhs = -A[:, 0]
            sub = A[:, 1:]
            w, _ = mpmath.qr_solve(sub, rhs)
            v = [mpmath.mpf(1)] + [w[i] for i in range(d - 1)]
            vec = mpmath.matrix(v)
            resid = mpmath.norm(M * vec - lam * vec) / (mpmath.norm(vec) * max(1, scale))
            if resid > 1e-10:
                raise ClusteredSpectrumError(f"eigenvector residual {mpmath.nstr(resid, 3)} on S_{space.weight}")
            out.append((lam, v))
        return out


def eigenforms(space: CuspSpace, euler_cutoff: int | None = None) -> list[HeckeEigenform]:
    """Hecke eigenforms of the space, sorted by lambda_f(2)."""
    k, N = space.weight, space.precision
    half = k - 1  # exponent of n in n^{(k-1)/2}, doubled
    out = []
    for idx, (ev, vec) in enumerate(_eigen_systems(space)):
        if space.dimension == 1:
            combo = space.basis[0]
            shift = 0
        else:
            with mpmath.workdps(_DPS):
                fixed = [int(mpmath.nint(c * mpmath.mpf(2) ** _FIX_BITS)) for c in vec]
            combo = flint.fmpz_poly([0])
            for c, b in zip(fixed, space.basis):
                combo = combo + c * b
            shift = _FIX_BITS
        a = _padded(combo, N)
        lambdas = np.empty(N + 1)
        lambdas[0] = 0.0
        denom_pow = half // 2
        for n in range(1, N + 1):
            val = a[n] / ((1 << shift) * n**denom_pow) if a[n] else 0.0
            lambdas[n] = val / math.sqrt(n) if half % 2 else val
        lambdas.setflags(write=False)
        tmp = HeckeEigenform(k, idx, lambdas, 1.0, 1.0)
        P = min(euler_cutoff or N, N)
        L = sym2_L_at_1(tmp, P) if P >= 100 else None
        Lval = L.value if L is not None else math.nan
        out.append(
            HeckeEigenform(
                weight=k,
                index=idx,
                lambdas=lambdas,
                L1sym2=Lval,
                harmonic_weight=ZETA2 / Lval,
                hecke_eigenvalue_2=int(ev) if space.dimension == 1 else float(ev),
            )
        )
    return out


@lru_cache(maxsize=128)
def hecke_family(k: int, N_max: int = 10**5) -> tuple[HeckeEigenform, ...]:
    """All eigenforms of weight k with lambda_f(n) for n <= N_max."""
    return tuple(eigenforms(build_space(k, N_max)))


# ---------------------------------------------------------------- checks


def multiplicativity_defect(f: HeckeEigenform, M: int) -> float:
    """max |lambda(m) lambda(n) - sum_{d | (m,n)} lambda(mn/d^2)| over m, n <= M, mn <= N."""
    N = f.precision
    if M > N:
        raise PrecisionError(f"M={M} exceeds stored precision {N}")
    lam = f.lambdas
    worst = 0.0
    for m in range(1, M + 1):
        for n in range(m, min(M, N // m) + 1):
            g = math.gcd(m, n)
            rhs = sum(lam[m * n // (d * d)] for d in range(1, g + 1) if g % d == 0)
            worst = max(worst, abs(lam[m] * lam[n] - rhs))
    return worst


def check_multiplicativity(f: HeckeEigenform, M: int, tol: float = 1e-10) -> bool:
    return multiplicativity_defect(f, M) <= tol


def sym2_L_at_1(f: HeckeEigenform, P: int) -> Sym2Value:
    """L(1, sym^2 f) as the Euler product over p <= P.

    Each local factor is [(1 - alpha^2/p)(1 - 1/p)(1 - alpha^-2/p)]^-1 written
    with A = lambda_f(p)^2 - 1 = alpha^2 + 1 + alpha^-2 - 1.
    """
    if P < 100:
        raise ValueError("Euler product cutoff below 100 is too short to be meaningful")
    if P > f.precision:
        raise PrecisionError(f"need lambda_f(p) for p <= {P}, have {f.precision}")
    p = primes_upto(P).astype(float)
    lam = f.lambdas[p.astype(np.int64)]
    A = lam * lam - 1.0
    logs = -np.log1p(-A / p + A / p**2 - 1.0 / p**3)
    partial = np.cumsum(logs)
    full = float(np.exp(partial[-1]))
    cut = np.searchsorted(p, P / 10, side="right")
    earlier = float(np.exp(partial[cut - 1]))
    return Sym2Value(value=full, P=int(P), drift=abs(full - earlier))


def sym2_dirichlet_partial(f: HeckeEigenform, N: int) -> float:
    """zeta(2) sum_{n <= N} lambda_f(n^2) / n, a slowly converging cross-check."""
    n = np.arange(1, math.isqrt(min(N * N, f.precision)) + 1)
    n = n[n <= N]
    return ZETA2 * float(np.sum(f.lambdas[n * n] / n))


def petersson_delta(
    k: int,
    m: int,
    n: int,
    forms: Sequence[HeckeEigenform],
    normalization: str = "harmonic",
) -> float:
    """Diagonal symbol Delta_k(m, n) = sum_f w_f lambda_f(m) lambda_f(n) / L(1, sym^2 f).

    ``harmonic`` uses w_f = 12 zeta(2) / (k - 1), the Petersson weight, so that
    Delta_k(m, n) = delta(m, n) + (Kloosterman-Bessel terms). ``dimension``
    uses w_f = zeta(2) / |H_k|.
    """
    if not forms:
        raise PrecisionError(f"no eigenforms supplied for weight {k}")
    if normalization == "harmonic":
        w = 12 * ZETA2 / (k - 1)
    elif normalization == "dimension":
        w = ZETA2 / len(forms)
    else:
        raise ValueError(f"unknown normalization {normalization!r}")
    return w * sum(f.lam(m) * f.lam(n) / f.L1sym2 for f in forms)


def harmonic_weight_average(forms: Sequence[HeckeEigenform]) -> float:
    """(1/|H_k|) sum_f zeta(2) / L(1, sym^2 f)."""
    return sum(f.harmonic_weight for f in forms) / len(forms)


# ---------------------------------------------------------------- cache files


def write_cache(path: str | Path, f: HeckeEigenform, primes: Sequence[int] | None = None) -> None:
    """Plain-text cache of lambda_f(p): header then lines ``k p lambda``."""
    if primes is None:
        primes = primes_upto(f.precision)
    d = f.index
    lines = [f"weight {f.weight} dimension {dim_Sk(f.weight)} form-index {d}"]
    lines += [f"{f.weight} {int(p)} {f.lam(int(p)):.15g}" for p in primes]
    Path(path).write_text("\n".join(lines) + "\n")


def read_cache(path: str | Path) -> tuple[dict[str, int], dict[int, float]]:
    text = Path(path).read_text().splitlines()
    if not text:
        raise ValueError(f"{path}: empty cache file")
    parts = text[0].split()
    if len(parts) != 6 or parts[0::2] != ["weight", "dimension", "form-index"]:
        raise ValueError(f"{path}: malformed header {text[0]!r}")
    header = {"weight": int(parts[1]), "dimension": int(parts[3]), "form-index": int(parts[5])}
    table = {}
    for lineno, line in enumerate(text[1:], start=2):
        fields = line.split()
        if len(fields) != 3 or int(fields[0]) != header["weight"]:
            raise ValueError(f"{path}:{lineno}: malformed line {line!r}")
        table[int(fields[1])] = float(fields[2])
    return header, table
