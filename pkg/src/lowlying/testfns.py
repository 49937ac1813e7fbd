"""Even test functions g whose Fourier transforms are compactly supported."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import integrate, special

ArrayFn = Callable[[np.ndarray], np.ndarray]


class QuadratureError(RuntimeError):
    """Adaptive quadrature did not reach the requested accuracy."""


@dataclass(frozen=True)
class TestFunctionPair:
    """g and its transform ghat(u) = int g(x) e^{-2 pi i x u} dx.

    ghat vanishes outside [-support, support]. When ghat is a piecewise
    polynomial, ``knots`` lists its breakpoints and ``degree`` its maximal
    degree, which lets integrals against it be done exactly.
    """

    __test__ = False

    support: float
    g: ArrayFn
    ghat: ArrayFn
    g0: float
    ghat0: float
    knots: tuple[float, ...] = ()
    degree: int | None = None
    name: str = ""


def _sinc(x: np.ndarray) -> np.ndarray:
    """sin(pi x) / (pi x) with a series near 0."""
    y = np.pi * np.asarray(x, dtype=float)
    small = np.abs(y) < 1e-4
    safe = np.where(small, 1.0, y)
    y2 = y * y
    return np.where(small, 1.0 - y2 / 6.0 + y2 * y2 / 120.0, np.sin(safe) / safe)


def fejer_pair(sigma: float) -> TestFunctionPair:
    """ghat(u) = (1 - |u|/sigma)_+ and g(x) = sigma sinc^2(sigma x)."""
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    sigma = float(sigma)

    def g(x):
        return sigma * _sinc(sigma * np.asarray(x, dtype=float)) ** 2

    def ghat(u):
        return np.maximum(0.0, 1.0 - np.abs(np.asarray(u, dtype=float)) / sigma)

    return TestFunctionPair(
        support=sigma,
        g=g,
        ghat=ghat,
        g0=sigma,
        ghat0=1.0,
        knots=(-sigma, 0.0, sigma),
        degree=1,
        name=f"fejer({sigma:g})",
    )


def zero_pair(sigma: float = 1.0) -> TestFunctionPair:
    def zero(x):
        return np.zeros_like(np.asarray(x, dtype=float))

    return TestFunctionPair(sigma, zero, zero, 0.0, 0.0, (-sigma, sigma), 0, "zero")


def _gauss_nodes(degree: int) -> tuple[np.ndarray, np.ndarray]:
    m = max(1, degree // 2 + 1)
    return np.polynomial.legendre.leggauss(m)


def _segments(lo: float, hi: float, knots: Sequence[float]) -> list[tuple[float, float]]:
    pts = sorted({lo, hi, *[k for k in knots if lo < k < hi]})
    return [(a, b) for a, b in zip(pts[:-1], pts[1:]) if b > a]


def _integrate(fn: ArrayFn, lo: float, hi: float, knots: Sequence[float], degree: int | None) -> float:
    """int_lo^hi fn, exact when fn is a polynomial of the given degree between knots."""
    if hi <= lo:
        return 0.0
    if degree is not None:
        x, w = _gauss_nodes(degree)
        total = 0.0
        for a, b in _segments(lo, hi, knots):
            mid, half = 0.5 * (a + b), 0.5 * (b - a)
            total += half * float(np.dot(w, fn(mid + half * x)))
        return total
    val, err = integrate.quad(
        lambda t: float(fn(np.asarray(t))), lo, hi, points=[k for k in knots if lo < k < hi] or None, limit=200
    )
    if err > 1e-9 * max(1.0, abs(val)):
        raise QuadratureError(f"quadrature error estimate {err:.2e}")
    return float(val)


def _joint(F1: TestFunctionPair, F2: TestFunctionPair, extra: int):
    s = min(F1.support, F2.support)
    knots = tuple(sorted(set(F1.knots) | set(F2.knots)))
    degree = None if F1.degree is None or F2.degree is None else F1.degree + F2.degree + extra
    return s, knots, degree


def plancherel_product_at_0(F1: TestFunctionPair, F2: TestFunctionPair) -> float:
    """int ghat1 ghat2 du, which equals int g1 g2 dx."""
    s, knots, degree = _joint(F1, F2, 0)
    return _integrate(lambda u: F1.ghat(u) * F2.ghat(u), -s, s, knots, degree)


def weighted_abs_integral(F1: TestFunctionPair, F2: TestFunctionPair) -> float:
    """int |u| ghat1(u) ghat2(u) du."""
    s, knots, degree = _joint(F1, F2, 1)
    knots = tuple(k for k in knots if k >= 0)
    return 2.0 * _integrate(lambda u: u * F1.ghat(u) * F2.ghat(u), 0.0, s, knots, degree)


def abs_moment(F: TestFunctionPair) -> float:
    """int |u| ghat(u) du."""
    deg = None if F.degree is None else F.degree + 1
    knots = tuple(k for k in F.knots if k >= 0)
    return 2.0 * _integrate(lambda u: u * F.ghat(u), 0.0, F.support, knots, deg)


def ghat_integral(F: TestFunctionPair) -> float:
    """int ghat(u) du, which equals g(0)."""
    return _integrate(F.ghat, -F.support, F.support, F.knots, F.degree)


def product_pair(F1: TestFunctionPair, F2: TestFunctionPair) -> TestFunctionPair:
    """The pair of g1 g2, whose transform is the convolution ghat1 * ghat2."""
    if F1.degree is None or F2.degree is None:
        raise ValueError("product_pair needs piecewise-polynomial transforms")
    s1, s2 = F1.support, F2.support
    k1 = np.asarray(F1.knots, dtype=float)
    k2 = np.asarray(F2.knots, dtype=float)
    x, w = _gauss_nodes(F1.degree + F2.degree)

    def ghat(u):
        u = np.asarray(u, dtype=float)
        flat = np.atleast_1d(u).ravel()
        # breakpoints in v of ghat1(v) ghat2(u - v), clipped to supp ghat1
        pts = np.concatenate([np.broadcast_to(k1, (flat.size, k1.size)), flat[:, None] - k2[None, :]], axis=1)
        pts = np.sort(np.clip(pts, -s1, s1), axis=1)
        a, b = pts[:, :-1], pts[:, 1:]
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        v = mid[..., None] + half[..., None] * x
        vals = F1.ghat(v) * F2.ghat(flat[:, None, None] - v)
        out = np.sum(half * np.tensordot(vals, w, axes=([2], [0])), axis=1)
        out[np.abs(flat) >= s1 + s2] = 0.0
        return out.reshape(u.shape)

    def g(x_):
        return F1.g(x_) * F2.g(x_)

    knots = tuple(sorted({float(a + b) for a in F1.knots for b in F2.knots}))
    return TestFunctionPair(
        support=s1 + s2,
        g=g,
        ghat=ghat,
        g0=F1.g0 * F2.g0,
        ghat0=float(ghat(0.0)),
        knots=knots,
        degree=F1.degree + F2.degree + 1,
        name=f"{F1.name}*{F2.name}",
    )


def _near_zero_transform(F: TestFunctionPair, y: float, X: float = 2e4, width: float = 0.25) -> float:
    """int_0^inf g(x) cos(2 pi x y) dx for small y.

    The head [0, X] uses composite Gauss-Legendre. The tail models g as
    c / x^2 on average, with c fitted over the last stretch of the head.
    """
    nodes, weights = np.polynomial.legendre.leggauss(12)
    edges = np.arange(0.0, X + width / 2, width)
    a, b = edges[:-1], edges[1:]
    x = 0.5 * (a + b)[:, None] + 0.5 * width * nodes[None, :]
    w = 0.5 * width * weights
    gx = np.asarray(F.g(x), dtype=float)
    omega = 2 * math.pi * y
    head = float(np.sum(gx * np.cos(omega * x) * w))
    tail_mask = a >= 0.9 * X
    c = float(np.sum((gx * x * x)[tail_mask] * w)) / (X - a[tail_mask][0])
    if omega == 0:
        tail = c / X
    else:
        si, _ = special.sici(omega * X)
        tail = c * (math.cos(omega * X) / X - omega * (math.pi / 2 - si))
    return head + tail


def fourier_transform(F: TestFunctionPair, y: float, tol: float = 1e-7) -> float:
    """int g(x) e^{-2 pi i x y} dx, computed as 2 int_0^inf g(x) cos(2 pi x y) dx."""
    y = abs(float(y))
    if y < 0.05:
        val = _near_zero_transform(F, y)
    else:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            val, err = integrate.quad(
                lambda t: float(F.g(np.asarray(t))), 0, np.inf, weight="cos", wvar=2 * math.pi * y, limlst=200
            )
        if err > tol:
            raise QuadratureError(f"Fourier quadrature at y={y} has error estimate {err:.2e}")
    if not np.isfinite(val):
        raise QuadratureError(f"non-finite Fourier quadrature at y={y}")
    return 2.0 * val


def verify_pair(F: TestFunctionPair, grid: Sequence[float], tol: float = 1e-5) -> bool:
    """Check ghat against a quadrature transform of g on a grid."""
    grid = list(grid)
    if not grid:
        raise ValueError("grid must be nonempty")
    for y in grid:
        ft = fourier_transform(F, y, tol=0.1 * tol)
        if abs(ft - float(F.ghat(y))) >= tol:
            return False
    return True
