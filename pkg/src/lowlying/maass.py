"""The fixed even Hecke-Maass form phi: data loading and Hecke extension."""

from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .primes import primes_upto
from .satake import MissingDataError

KIM_SARNAK = 7 / 64
FIRST_EVEN_T = 13.7797513519

_HEADER = re.compile(r"^maass\s+t=(?P<t>[-+0-9.eE]+)\s+parity=(?P<parity>\S+)\s*$")


class MaassParseError(ValueError):
    """Malformed Maass data file."""


class KimSarnakWarning(UserWarning):
    """Loaded lambda_phi(p) exceeds 2 p^{7/64}."""


@dataclass(frozen=True)
class MaassForm:
    t_phi: float
    parity: str
    primes: np.ndarray
    values: np.ndarray
    provenance: str = "file"

    def __post_init__(self):
        if self.parity != "even":
            raise ValueError("phi must be even")
        if len(self.primes) == 0:
            raise ValueError("empty prime table")

    @property
    def max_prime(self) -> int:
        return int(self.primes[-1])

    def lam_p(self, p: int) -> float:
        i = int(np.searchsorted(self.primes, p))
        if i >= len(self.primes) or self.primes[i] != p:
            raise MissingDataError(f"lambda_phi({p}) not in table")
        return float(self.values[i])

    def lam(self, n: int) -> float:
        """lambda_phi(n) by multiplicativity."""
        if n < 1:
            raise ValueError("n must be positive")
        out = 1.0
        m = n
        p = 2
        while p * p <= m:
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                out *= lambda_phi_power(self, p, e)
            p += 1 if p == 2 else 2
        if m > 1:
            out *= self.lam_p(m)
        return out


def lambda_phi_power(phi: MaassForm, p: int, nu: int) -> float:
    """lambda_phi(p^nu) from lambda(p^{n+1}) = lambda(p) lambda(p^n) - lambda(p^{n-1})."""
    if nu < 0:
        raise ValueError("nu must be non-negative")
    if nu == 0:
        return 1.0
    lp = phi.lam_p(p)
    a, b = 1.0, lp
    for _ in range(nu - 1):
        a, b = b, lp * b - a
    return b


def parse_maass(text: str, source: str = "<string>") -> MaassForm:
    header = None
    provenance = "file"
    primes: list[int] = []
    values: list[float] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = re.match(r"#\s*provenance:\s*(\S+)", line)
            if m:
                provenance = m.group(1)
            continue
        if header is None:
            m = _HEADER.match(line)
            if not m:
                raise MaassParseError(f"{source}:{lineno}: expected 'maass t=<t> parity=even', got {line!r}")
            if m.group("parity") != "even":
                raise MaassParseError(f"{source}:{lineno}: parity {m.group('parity')!r} rejected; phi must be even")
            header = float(m.group("t"))
            continue
        fields = line.split()
        try:
            p, val = int(fields[0]), float(fields[1])
            if len(fields) != 2:
                raise ValueError
        except (ValueError, IndexError):
            raise MaassParseError(f"{source}:{lineno}: malformed line {line!r}") from None
        if primes and p <= primes[-1]:
            raise MaassParseError(f"{source}:{lineno}: primes must be ascending")
        primes.append(p)
        values.append(val)
    if header is None:
        raise MaassParseError(f"{source}: missing header")
    if not primes:
        raise MaassParseError(f"{source}: no prime data")
    ps = np.array(primes, dtype=np.int64)
    if not np.isin(ps, primes_upto(ps[-1])).all():
        raise MaassParseError(f"{source}: non-prime index {ps[~np.isin(ps, primes_upto(ps[-1]))][0]}")
    vals = np.array(values)
    bad = np.abs(vals) > 2 * ps.astype(float) ** KIM_SARNAK + 1e-9
    if bad.any():
        warnings.warn(f"{source}: |lambda_phi(p)| > 2 p^(7/64) at p = {ps[bad].tolist()}", KimSarnakWarning)
    return MaassForm(header, "even", ps, vals, provenance)


def load_maass(path: str | Path) -> MaassForm:
    path = Path(path)
    return parse_maass(path.read_text(encoding="utf-8"), str(path))


def bundled_maass() -> MaassForm:
    """The sample file shipped with the package (synthetic; see its header)."""
    ref = resources.files("lowlying") / "data" / "maass_sample.txt"
    return parse_maass(ref.read_text(encoding="utf-8"), "maass_sample.txt")


def synthetic_maass(seed: int, P: int, t: float = FIRST_EVEN_T) -> MaassForm:
    """lambda_phi(p) = 2 cos theta_p with theta_p uniform on [0, pi].

    Not automorphic; it only drives the pipeline and statements that do not
    depend on automorphy.
    """
    if P < 2:
        raise ValueError("P must be at least 2")
    ps = primes_upto(P).copy()
    theta = np.random.default_rng(seed).uniform(0.0, math.pi, size=len(ps))
    return MaassForm(float(t), "even", ps, 2 * np.cos(theta), "synthetic")


def format_maass(phi: MaassForm) -> str:
    lines = [f"# provenance: {phi.provenance}", f"maass t={phi.t_phi!r} parity={phi.parity}"]
    lines += [f"{int(p)} {v:.15g}" for p, v in zip(phi.primes, phi.values)]
    return "\n".join(lines) + "\n"


def multiplicative_table(phi: MaassForm, X: int) -> np.ndarray:
    """lambda_phi(n) for 0 <= n <= X (entry 0 unused)."""
    if X < 1:
        raise ValueError("X must be positive")
    if X >= 2 and phi.max_prime < int(primes_upto(X)[-1]):
        raise MissingDataError(f"need lambda_phi(p) for all p <= {X}; table stops at {phi.max_prime}")
    lam = np.zeros(X + 1)
    lam[1] = 1.0
    spf = np.zeros(X + 1, dtype=np.int64)
    for p in primes_upto(X)[::-1]:
        spf[p::p] = p
    for n in range(2, X + 1):
        p = int(spf[n])
        m, e = n, 0
        while m % p == 0:
            m //= p
            e += 1
        lam[n] = lam[m] * lambda_phi_power(phi, p, e)
    return lam


def ramanujan_average_check(phi: MaassForm, X: int) -> float:
    """(1/X) sum_{n <= X} lambda_phi(n)^2."""
    lam = multiplicative_table(phi, X)
    return float(np.sum(lam[1:] ** 2) / X)
