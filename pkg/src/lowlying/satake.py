"""Satake parameters and Dirichlet coefficients of the four families."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np


class MissingDataError(KeyError):
    """A needed Hecke eigenvalue is not available."""


class FamilyTag(enum.Enum):
    F = "F"
    SYM2F = "SYM2F"
    PHI_X_F = "PHI_X_F"
    PHI_X_SYM2F = "PHI_X_SYM2F"

    @property
    def degree(self) -> int:
        return {"F": 2, "SYM2F": 3, "PHI_X_F": 4, "PHI_X_SYM2F": 6}[self.value]

    @property
    def uses_phi(self) -> bool:
        return self in (FamilyTag.PHI_X_F, FamilyTag.PHI_X_SYM2F)

    @classmethod
    def parse(cls, name: str | "FamilyTag") -> "FamilyTag":
        if isinstance(name, cls):
            return name
        key = str(name).strip().upper().replace("-", "_")
        key = {"PHI_F": "PHI_X_F", "PHI_SYM2F": "PHI_X_SYM2F"}.get(key, key)
        try:
            return cls[key]
        except KeyError:
            raise ValueError(f"unknown family {name!r}; expected one of {[t.name for t in cls]}") from None


@dataclass(frozen=True)
class LocalParameters:
    family: FamilyTag
    prime: int
    params: tuple[complex, ...]


def alpha_from_lambda(lf_p: float) -> complex:
    """alpha on the unit circle with alpha + 1/alpha = lf_p and Im alpha >= 0."""
    if abs(lf_p) > 2 + 1e-9:
        raise ValueError(f"|lambda_f(p)| = {abs(lf_p)} exceeds 2")
    c = min(1.0, max(-1.0, lf_p / 2))
    theta = math.acos(c)
    return complex(math.cos(theta), math.sin(theta))


def beta_from_lambda(lphi_p: float) -> complex:
    """beta with beta + 1/beta = lphi_p; real with |beta| > 1 when |lphi_p| > 2."""
    if abs(lphi_p) <= 2:
        return alpha_from_lambda(lphi_p)
    root = math.sqrt(lphi_p * lphi_p - 4)
    return complex((lphi_p + math.copysign(root, lphi_p)) / 2, 0.0)


def local_params(family: FamilyTag | str, alpha: complex, beta: complex | None, p: int) -> LocalParameters:
    family = FamilyTag.parse(family)
    a, ai = alpha, 1 / alpha
    if family is FamilyTag.F:
        params = (a, ai)
    elif family is FamilyTag.SYM2F:
        params = (a * a, 1 + 0j, ai * ai)
    else:
        if beta is None:
            raise ValueError(f"{family.name} needs a Satake parameter for phi")
        b, bi = beta, 1 / beta
        if family is FamilyTag.PHI_X_F:
            params = (a * b, a * bi, ai * b, ai * bi)
        else:
            params = (a * a * b, a * a * bi, b, bi, ai * ai * b, ai * ai * bi)
    return LocalParameters(family, int(p), tuple(complex(x) for x in params))


def a_coeff_powersum(lp: LocalParameters, nu: int) -> float:
    """sum_j delta_j^nu."""
    s = sum(x**nu for x in lp.params)
    scale = max(1.0, sum(abs(x) ** nu for x in lp.params))
    if abs(s.imag) > 1e-10 * scale:
        raise ArithmeticError(f"power sum has imaginary part {s.imag}")
    return float(s.real)


def _at(seq: Sequence[float], j: int, what: str) -> float:
    if j < 0:
        return 0.0
    if j >= len(seq):
        raise MissingDataError(f"{what}(p^{j}) not supplied")
    return float(seq[j])


def a_coeff_closed(family: FamilyTag | str, lf: Sequence[float], lphi: Sequence[float] | None, nu: int) -> float:
    """Closed form of a(p^nu) from lf[j] = lambda_f(p^j) and lphi[j] = lambda_phi(p^j).

    Uses alpha^n + alpha^-n = lambda(p^n) - lambda(p^{n-2}) and
    alpha^{2n} + 1 + alpha^{-2n} = lambda_f(p^{2n}) - lambda_f(p^{2n-2}) + 1.
    """
    family = FamilyTag.parse(family)
    if nu < 1:
        raise ValueError("nu must be at least 1")

    def f_pow(n: int) -> float:
        return _at(lf, n, "lambda_f") - _at(lf, n - 2, "lambda_f")

    def sym2_pow(n: int) -> float:
        return _at(lf, 2 * n, "lambda_f") - _at(lf, 2 * n - 2, "lambda_f") + 1.0

    def phi_pow(n: int) -> float:
        if lphi is None:
            raise MissingDataError("lambda_phi values not supplied")
        return _at(lphi, n, "lambda_phi") - _at(lphi, n - 2, "lambda_phi")

    if family is FamilyTag.F:
        return f_pow(nu)
    if family is FamilyTag.SYM2F:
        return sym2_pow(nu)
    if family is FamilyTag.PHI_X_F:
        return phi_pow(nu) * f_pow(nu)
    return sym2_pow(nu) * phi_pow(nu)


def b_coeff(family: FamilyTag | str, lf: Sequence[float], lphi: Sequence[float] | None, nu: int) -> float:
    """b(p) = a(p), b(p^2) = a(p^2) + 1."""
    if nu not in (1, 2):
        raise ValueError("b_coeff is defined for nu = 1, 2")
    return a_coeff_closed(family, lf, lphi, nu) + (1.0 if nu == 2 else 0.0)


def chebyshev_table(lam_p: float, top: int) -> list[float]:
    """[lambda(p^0), ..., lambda(p^top)] from lambda(p) by the Hecke recursion."""
    out = [1.0, float(lam_p)]
    for _ in range(top - 1):
        out.append(lam_p * out[-1] - out[-2])
    return out[: top + 1]


# ---------------------------------------------------------------- Dirichlet coefficients


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _mobius(n: int) -> int:
    fac = _factor(n)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def sym2_coeff(r: int, lam_f: Callable[[int], float]) -> float:
    """lambda_{sym^2 f}(r, 1) = sum_{s^2 t = r} lambda_f(t^2)."""
    total = 0.0
    s = 1
    while s * s <= r:
        if r % (s * s) == 0:
            t = r // (s * s)
            total += lam_f(t * t)
        s += 1
    return total


def sym2_coeff_pair(m1: int, m2: int, lam_f: Callable[[int], float]) -> float:
    """GL(3) coefficient a_F(m1, m2) = sum_{d | (m1, m2)} mu(d) A(m1/d, 1) A(m2/d, 1)."""
    g = math.gcd(m1, m2)
    return sum(
        _mobius(d) * sym2_coeff(m1 // d, lam_f) * sym2_coeff(m2 // d, lam_f) for d in _divisors(g) if _mobius(d)
    )


def dirichlet_coeff_phi_sym2(
    m: int,
    lam_f: Callable[[int], float],
    lam_phi: Callable[[int], float],
) -> float:
    """Coefficient of m^{-s} in L(s, phi x sym^2 f).

    Computed as sum_{m1 m2^2 = m} lambda_phi(m1) a_F(m1, m2), the standard
    GL(2) x GL(3) Rankin-Selberg expansion.
    """
    if m < 1:
        raise ValueError("m must be positive")
    total = 0.0
    m2 = 1
    while m2 * m2 <= m:
        if m % (m2 * m2) == 0:
            m1 = m // (m2 * m2)
            total += lam_phi(m1) * sym2_coeff_pair(m1, m2, lam_f)
        m2 += 1
    return total


def complete_homogeneous(params: Sequence[complex], nu: int) -> complex:
    """h_nu(params): coefficient of X^nu in prod_j (1 - params_j X)^-1."""
    h = np.zeros(nu + 1, dtype=complex)
    h[0] = 1.0
    for x in params:
        for n in range(1, nu + 1):
            h[n] += x * h[n - 1]
    return complex(h[nu])


def log_derivative_coeffs(params: Sequence[complex], nu_max: int) -> list[complex]:
    """Coefficients c_nu of X^nu in X d/dX log prod_j (1 - params_j X)^-1.

    Computed from the Euler factor's series by Newton's identities, so it
    is independent of the power sums it should reproduce.
    """
    h = [complete_homogeneous(params, n) for n in range(nu_max + 1)]
    c: list[complex] = [0j]
    for n in range(1, nu_max + 1):
        c.append(n * h[n] - sum(c[j] * h[n - j] for j in range(1, n)))
    return c


# ---------------------------------------------------------------- diagnostic


def second_moment_diagnostic(family: FamilyTag | str, forms: Sequence, P: int) -> float:
    """Weighted family average of the diagonal part of a(p^2), averaged over p <= P.

    The lambda_phi(p^2) term of the phi families is dropped since it
    averages out over p on its own; what remains depends only on lambda_f
    and its harmonic average tends to -1 (orthogonal), +1 (symplectic)
    or 0 (unitary).
    """
    from .primes import primes_upto

    family = FamilyTag.parse(family)
    if P < 2 or not forms:
        raise ValueError("second moment needs P >= 2 and at least one form")
    primes = primes_upto(P)
    weights = np.array([1.0 / f.L1sym2 for f in forms])
    weights /= weights.sum()
    phi_sq = [1.0, 0.0, -1.0]  # lambda_phi(p^0), lambda_phi(p), lambda_phi(p^2) with the p^2 term dropped
    total = 0.0
    for p in primes:
        vals = []
        for f in forms:
            lf = [f.lam_prime_power(int(p), j) for j in range(5)]
            vals.append(a_coeff_closed(family, lf, phi_sq, 2))
        total += float(np.dot(weights, vals))
    return total / len(primes)


def two_route_defect(
    family: FamilyTag | str,
    rng: np.random.Generator,
    draws: int = 200,
    nus: Sequence[int] = (1, 2, 3),
    p: int = 2,
) -> float:
    """Largest |power sum - closed form| over random Satake parameters.

    alpha is uniform on the upper unit semicircle; lambda_phi(p) is drawn
    from [-2 p^{7/64}, 2 p^{7/64}], so non-tempered beta are exercised.
    """
    family = FamilyTag.parse(family)
    bound = 2 * p ** (7 / 64)
    worst = 0.0
    for _ in range(draws):
        lf_p = 2 * math.cos(rng.uniform(0.0, math.pi))
        lphi_p = rng.uniform(-bound, bound)
        alpha = alpha_from_lambda(lf_p)
        beta = beta_from_lambda(lphi_p) if family.uses_phi else None
        lp = local_params(family, alpha, beta, p)
        for nu in nus:
            lf = chebyshev_table(lf_p, 2 * nu)
            lphi = chebyshev_table(lphi_p, nu) if family.uses_phi else None
            worst = max(worst, abs(a_coeff_powersum(lp, nu) - a_coeff_closed(family, lf, lphi, nu)))
    return worst
