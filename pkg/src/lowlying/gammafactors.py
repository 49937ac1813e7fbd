"""Archimedean data: gamma factors, their explicit-formula term, root numbers."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import integrate, special

from .satake import FamilyTag
from .testfns import QuadratureError, TestFunctionPair

EULER_GAMMA = 0.57721566490153286061

# B_{2n} / (2n) for the Stirling series of psi
_STIRLING = (
    1.0 / 12,
    -1.0 / 120,
    1.0 / 252,
    -1.0 / 240,
    1.0 / 132,
    -691.0 / 32760,
    1.0 / 12,
    -3617.0 / 8160,
)


def digamma(x):
    """psi(x) = Gamma'(x)/Gamma(x) for real or complex x (scalar or array).

    Shifts up to Re x >= 10 by psi(x) = psi(x + 1) - 1/x, then sums an
    8-term Stirling series. Re x < 0 goes through the reflection formula.
    """
    z = np.asarray(x, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z).copy()
    near_int = np.abs(z - np.round(z.real)) < 1e-15
    if np.any(near_int & (z.real <= 0)):
        raise ValueError("digamma has poles at non-positive integers")
    reflect = z.real < 0
    w = np.where(reflect, 1.0 - z, z)
    acc = np.zeros_like(w)
    while True:
        low = w.real < 10
        if not low.any():
            break
        acc -= np.where(low, 1.0 / w, 0.0)
        w = np.where(low, w + 1, w)
    inv2 = 1.0 / (w * w)
    series = np.zeros_like(w)
    for c in reversed(_STIRLING):
        series = (series + c) * inv2
    out = np.log(w) - 0.5 / w - series + acc
    if reflect.any():
        zr = z[reflect]
        out[reflect] = out[reflect] - np.pi / np.tan(np.pi * zr)
    if np.isrealobj(x) or (np.ndim(x) == 0 and isinstance(x, (int, float))):
        out = out.real
    return out[0] if scalar else out


def gamma_R_log_derivative(s):
    """Gamma_R'/Gamma_R(s) with Gamma_R(s) = pi^{-s/2} Gamma(s/2)."""
    return -0.5 * math.log(math.pi) + 0.5 * digamma(np.asarray(s, dtype=complex) / 2)


# ---------------------------------------------------------------- parameters


@dataclass(frozen=True)
class ArchimedeanParams:
    """Shifts mu_j with L_infty(s) = prod_j Gamma_R(s + mu_j)."""

    family: FamilyTag
    k: int
    t_phi: float
    mu: tuple[complex, ...]

    def shifted(self) -> tuple[complex, ...]:
        """The numbers 1/2 + mu_j, i.e. the Gamma_R arguments at the centre."""
        return tuple(m + 0.5 for m in self.mu)


def _check_weight(k: int) -> None:
    if k % 2:
        raise ValueError(f"weight must be even, got {k}")


def mu_params(family: FamilyTag | str, k: int, t_phi: float) -> ArchimedeanParams:
    family = FamilyTag.parse(family)
    _check_weight(k)
    it = 1j * t_phi
    if family is FamilyTag.PHI_X_SYM2F:
        base = (k - 1, k, 1)
    elif family is FamilyTag.PHI_X_F:
        base = ((k - 1) / 2, (k + 1) / 2)
    else:
        raise ValueError(f"archimedean parameters are provided for the phi families, not {family.name}")
    mu = tuple(complex(b) + s * it for b in base for s in (1, -1))
    return ArchimedeanParams(family, k, float(t_phi), mu)


def conductor_log(family: FamilyTag | str, k: int) -> float:
    """log R with R = k^4 for both phi families."""
    FamilyTag.parse(family)
    if k < 12:
        raise ValueError("weight must be at least 12")
    return 4.0 * math.log(k)


def gamma_term_A(
    params: ArchimedeanParams,
    F: TestFunctionPair,
    R: float,
    method: str = "fourier",
) -> float:
    """A / log R for the explicit formula.

    A = int sum_j [G(mu_j + 1/2 + 2 pi i x / log R) + G(conj mu_j + 1/2 + ...)] g(x) dx
    with G = Gamma_R'/Gamma_R. ``fourier`` integrates the digamma integral
    representation against ghat on its finite support; ``direct`` integrates
    in x with the series digamma and is kept as an independent route.
    """
    log_r = math.log(R)
    mus = list(params.mu) + [m.conjugate() for m in params.mu]
    if method == "fourier":
        total = sum(_term_fourier(m, F, log_r) for m in mus)
    elif method == "direct":
        total = _direct(mus, F, log_r)
    else:
        raise ValueError(f"unknown method {method!r}")
    return total / log_r


def _term_fourier(mu: complex, F: TestFunctionPair, log_r: float) -> float:
    """int G(mu + 1/2 + 2 pi i x / log R) g(x) dx via psi(z) = int_0^inf (e^-t/t - e^-zt/(1-e^-t)) dt.

    With z = z0 + i c x, z0 = (mu + 1/2)/2 and c = pi / log R, the x-integral
    of e^{-i c x t} g(x) is ghat(c t / 2 pi), which vanishes for t > T = 2 sigma log R.
    """
    z0 = (mu + 0.5) / 2
    c = math.pi / log_r
    T = 2 * math.pi * F.support / c
    g0 = F.ghat0

    def integrand(t: float) -> float:
        gh = float(F.ghat(c * t / (2 * math.pi)))
        if t < 1e-6:
            # leading terms of the expansion at t = 0
            return (g0 - gh) / t + g0 * (z0.real - 1.5) if t > 0 else g0 * (z0.real - 1.5)
        val = g0 * math.exp(-t) / t - gh * np.exp(-z0 * t) / (-math.expm1(-t))
        return float(np.real(val))

    scale = 1.0 / max(abs(z0), 1.0)
    breaks = sorted({x for x in (scale, 10 * scale, 50 * scale) if x < T})
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        head, err = integrate.quad(integrand, 0.0, T, points=breaks or None, limit=400, epsabs=1e-12, epsrel=1e-12)
    if err > 1e-8:
        raise QuadratureError(f"gamma-term quadrature error estimate {err:.2e}")
    tail = g0 * special.exp1(T)
    psi_part = head + tail
    return -0.5 * math.log(math.pi) * g0 + 0.5 * psi_part


def _direct(mus: Sequence[complex], F: TestFunctionPair, log_r: float, X: float | None = None) -> float:
    """Same integral in x-space: Gauss-Legendre panels on [0, X] plus a c/x^2 tail model."""
    if X is None:
        X = 4000.0 / F.support
    width = 0.25 / F.support
    nodes, weights = np.polynomial.legendre.leggauss(10)
    edges = np.arange(0.0, X + width / 2, width)
    a = edges[:-1]
    x = (a + width / 2)[:, None] + 0.5 * width * nodes[None, :]
    w = 0.5 * width * weights
    gx = np.asarray(F.g(x), dtype=float)
    r = 2 * math.pi * x / log_r
    kernel = np.zeros_like(x)
    for m in mus:
        z = m + 0.5 + 1j * r
        # x and -x folded together; the mu list is conjugation-closed
        kernel += (gamma_R_log_derivative(z) + gamma_R_log_derivative(np.conj(z))).real
    head = float(np.sum(kernel * gx * w))
    tail_mask = a >= 0.9 * X
    c2 = float(np.sum((gx * x * x)[tail_mask] * w)) / (X - a[tail_mask][0])
    # kernel grows like (n/2) log x; int_X^inf (k_X + (n/2) log(x/X)) c2/x^2 dx
    k_end = float(np.mean(kernel[-1]))
    tail = c2 * (k_end + 0.5 * len(mus)) / X
    return head + tail


# ---------------------------------------------------------------- Weil group


@dataclass(frozen=True)
class WeilRep:
    """Summands (label, sign): label '+', '-' or a positive integer l; sign of i t."""

    summands: tuple[tuple[str | int, int], ...]
    t_phi: float = 0.0

    def is_self_dual(self) -> bool:
        flipped = sorted((str(l), -s) for l, s in self.summands)
        return flipped == sorted((str(l), s) for l, s in self.summands)


def weil_rep(family: FamilyTag | str, k: int, t_phi: float = 0.0) -> WeilRep:
    """Archimedean Weil-group representation of phi x sym^2 f or phi x f.

    f at infinity is rho_(k-1); sym^2 rho_(k-1) = rho_(-) + rho_(2k-2); phi is
    rho_(+, it) + rho_(+, -it), and twisting by it shifts each label.
    """
    family = FamilyTag.parse(family)
    _check_weight(k)
    if family is FamilyTag.PHI_X_SYM2F:
        labels: list[str | int] = ["-", 2 * k - 2]
    elif family is FamilyTag.PHI_X_F:
        labels = [k - 1]
    else:
        raise ValueError(f"Weil representation is provided for the phi families, not {family.name}")
    return WeilRep(tuple((l, s) for l in labels for s in (1, -1)), t_phi)


@dataclass(frozen=True)
class GammaFactor:
    """Gamma_R(s + shift + sign i t)."""

    shift: float
    sign: int


def gamma_factor_list(rep: WeilRep) -> list[GammaFactor]:
    """Gamma_R factors: (+) -> Gamma_R(s), (-) -> Gamma_R(s+1), (l) -> Gamma_C(s + l/2) = Gamma_R(s + l/2) Gamma_R(s + l/2 + 1)."""
    out = []
    for label, sign in rep.summands:
        if label == "+":
            out.append(GammaFactor(0.0, sign))
        elif label == "-":
            out.append(GammaFactor(1.0, sign))
        else:
            out.append(GammaFactor(label / 2, sign))
            out.append(GammaFactor(label / 2 + 1, sign))
    return sorted(out, key=lambda g: (g.shift, -g.sign))


def gamma_factor_log_derivative(factors: Sequence[GammaFactor], s: complex, t_phi: float) -> complex:
    """d/ds log prod Gamma_R(s + shift + sign i t)."""
    return complex(sum(gamma_R_log_derivative(s + g.shift + g.sign * 1j * t_phi) for g in factors))


def _local_epsilon_exponent(label: str | int) -> int:
    """Exponent e with epsilon = i^e: (+) -> 0, (-) -> 1, (l) -> l + 1."""
    if label == "+":
        return 0
    if label == "-":
        return 1
    return int(label) + 1


def root_number(family: FamilyTag | str, k: int) -> int:
    """Global root number as the product of archimedean local epsilons (finite places give 1)."""
    rep = weil_rep(family, k)
    e = sum(_local_epsilon_exponent(l) for l, _ in rep.summands) % 4
    value = (1, 1j, -1, -1j)[e]
    if value not in (1, -1):
        raise ArithmeticError(f"root number i^{e} is not real")
    return int(value.real)
