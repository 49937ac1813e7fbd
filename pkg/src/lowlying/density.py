"""1- and 2-level densities of the phi x f and phi x sym^2 f families at finite weight."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .gammafactors import conductor_log, gamma_term_A, mu_params
from .hecke import HeckeEigenform, ZETA2
from .maass import KIM_SARNAK, MaassForm, lambda_phi_power
from .primes import primes_upto
from .rmt import ORTHOGONAL, SymmetryGroup, predicted_1level, predicted_2level
from .satake import FamilyTag, MissingDataError, a_coeff_closed
from .testfns import TestFunctionPair, product_pair

# support beyond which the phi x sym^2 f analysis is not claimed
SUPPORT_THRESHOLD = {FamilyTag.PHI_X_SYM2F: 5 / 24, FamilyTag.PHI_X_F: 1.0}

NORMALIZATIONS = ("normalized", "harmonic", "dimension")


def family_weights(forms: Sequence[HeckeEigenform], k: int, normalization: str = "normalized") -> np.ndarray:
    """Per-form weights.

    ``normalized``: proportional to 1/L(1, sym^2 f) and summing to 1.
    ``harmonic``: 12 zeta(2) / ((k - 1) L(1, sym^2 f)), the Petersson weights.
    ``dimension``: zeta(2) / (|H_k| L(1, sym^2 f)).
    """
    inv = np.array([1.0 / f.L1sym2 for f in forms])
    if not np.all(np.isfinite(inv)):
        raise MissingDataError("L(1, sym^2 f) not available for every form")
    if normalization == "normalized":
        return inv / inv.sum()
    if normalization == "harmonic":
        return 12 * ZETA2 / (k - 1) * inv
    if normalization == "dimension":
        return ZETA2 / len(forms) * inv
    raise ValueError(f"unknown normalization {normalization!r}; expected one of {NORMALIZATIONS}")


# ---------------------------------------------------------------- verdicts


@dataclass(frozen=True)
class Verdict:
    groups: tuple[SymmetryGroup, ...]
    label: str
    margin: float


def classify_symmetry(report: "FamilyDensityReport", tie_tol: float = 1e-12) -> Verdict:
    """Group(s) whose prediction is closest to the computed total.

    Groups with equal predictions are reported together; the three
    orthogonal groups at the 1-level are the usual case.
    """
    dist = {g: abs(report.total - p) for g, p in report.predictions.items()}
    best = min(dist.values())
    winners = tuple(g for g in report.predictions if dist[g] <= best + tie_tol)
    others = [d for g, d in dist.items() if g not in winners]
    margin = (min(others) - best) if others else math.inf
    if set(winners) == set(ORTHOGONAL) and len(winners) == 3:
        label = "orthogonal-tie"
    else:
        label = "+".join(g.value for g in winners)
    return Verdict(winners, label, margin)


# ---------------------------------------------------------------- reports


@dataclass
class FamilyDensityReport:
    family: FamilyTag
    k: int
    R: float
    level: int
    test_functions: tuple[str, ...]
    normalization: str
    weight_mass: float
    gamma_term: float
    nu1_term: float = 0.0
    nu2_term: float = 0.0
    nu_ge3_term: float = 0.0
    nu_ge3_bound: float = 0.0
    total: float = 0.0
    breakdown: dict[str, float] = field(default_factory=dict)
    predictions: dict[SymmetryGroup, float] = field(default_factory=dict)
    target: SymmetryGroup | None = None
    verdict: Verdict | None = None

    @property
    def arithmetic_part(self) -> float:
        """total minus the gamma-factor term."""
        return self.total - self.gamma_term

    @property
    def residual(self) -> float:
        """Distance from the total to the prediction of the expected group."""
        if self.target is None:
            return math.nan
        return abs(self.total - self.predictions[self.target])

    def rows(self, sigma: float) -> list[tuple]:
        """(family, k, sigma, term, value, residual_bound) rows for CSV output."""
        out = [
            ("gamma_term", self.gamma_term, math.nan),
            ("nu1_term", self.nu1_term, math.nan),
            ("nu2_term", self.nu2_term, math.nan),
            ("nu_ge3_term", self.nu_ge3_term, self.nu_ge3_bound),
        ]
        out += [(k, v, math.nan) for k, v in sorted(self.breakdown.items())]
        out += [(f"prediction_{g.value}", p, math.nan) for g, p in self.predictions.items()]
        out.append(("total", self.total, self.residual))
        return [(self.family.name, self.k, sigma, name, value, bound) for name, value, bound in out]


# ---------------------------------------------------------------- local data


def _require_phi(phi: MaassForm, top: float) -> None:
    need = primes_upto(top)
    if len(need) and phi.max_prime < need[-1]:
        raise MissingDataError(f"lambda_phi(p) needed up to p = {int(need[-1])}; data stop at {phi.max_prime}")


def _lf_table(f: HeckeEigenform, p: int, top: int) -> list[float]:
    return [f.lam_prime_power(p, j) for j in range(top + 1)]


def _lphi_table(phi: MaassForm, p: int, top: int) -> list[float]:
    return [lambda_phi_power(phi, p, j) for j in range(top + 1)]


def _coefficients(
    family: FamilyTag, forms: Sequence[HeckeEigenform], phi: MaassForm, p: int, nu: int
) -> np.ndarray:
    """a(p^nu) for each form."""
    top = 2 * nu if family is FamilyTag.PHI_X_SYM2F else nu
    lphi = _lphi_table(phi, p, nu)
    return np.array([a_coeff_closed(family, _lf_table(f, p, top), lphi, nu) for f in forms])


def _nu2_split(family: FamilyTag, forms: Sequence[HeckeEigenform], phi: MaassForm, p: int) -> dict[str, np.ndarray]:
    """a(p^2) expanded into phi-part times f-part; the f-part 1 pieces are diagonal."""
    lphi2 = lambda_phi_power(phi, p, 2)
    ones = np.ones(len(forms))
    if family is FamilyTag.PHI_X_SYM2F:
        # (lambda_phi(p^2) - 1)(lambda_f(p^4) - lambda_f(p^2) + 1)
        fpart = np.array([f.lam_prime_power(p, 4) - f.lam_prime_power(p, 2) for f in forms])
        return {
            "diag_phi": lphi2 * ones,
            "diag_one": -ones,
            "offdiag": (lphi2 - 1.0) * fpart,
        }
    # (lambda_phi(p^2) - 1)(lambda_f(p^2) - 1)
    fpart = np.array([f.lam_prime_power(p, 2) for f in forms])
    return {
        "diag_phi": -lphi2 * ones,
        "diag_one": ones,
        "offdiag": (lphi2 - 1.0) * fpart,
    }


def _check_family(family: FamilyTag | str) -> FamilyTag:
    family = FamilyTag.parse(family)
    if not family.uses_phi:
        raise ValueError("densities are implemented for the PHI_X_F and PHI_X_SYM2F families")
    return family


@dataclass(frozen=True)
class _PrimeSums:
    """Per-form prime sums s^nu = sum_p ghat(nu log p / log R) a(p^nu) log p / (p^{nu/2} log R)."""

    nu1: np.ndarray
    nu2: np.ndarray
    nu_ge3: np.ndarray
    nu2_parts: dict[str, np.ndarray]
    ge3_bound: float


def _prime_sums(
    family: FamilyTag, forms: Sequence[HeckeEigenform], phi: MaassForm, F: TestFunctionPair, log_r: float
) -> _PrimeSums:
    n = len(forms)
    cutoff = math.exp(F.support * log_r)
    _require_phi(phi, cutoff)
    nu1 = np.zeros(n)
    nu2 = np.zeros(n)
    ge3 = np.zeros(n)
    parts = {"diag_phi": np.zeros(n), "diag_one": np.zeros(n), "offdiag": np.zeros(n)}
    bound = 0.0
    gmax = float(np.max(np.abs(F.ghat(np.linspace(-F.support, F.support, 2001)))))
    theta = KIM_SARNAK
    for p in primes_upto(cutoff):
        p = int(p)
        lp = math.log(p)
        nu = 1
        while nu * lp < F.support * log_r:
            gh = float(F.ghat(nu * lp / log_r))
            w = gh * lp / (p ** (nu / 2) * log_r)
            if gh != 0.0:
                a = _coefficients(family, forms, phi, p, nu)
                if nu == 1:
                    nu1 += w * a
                elif nu == 2:
                    nu2 += w * a
                    for key, val in _nu2_split(family, forms, phi, p).items():
                        parts[key] += w * val
                else:
                    ge3 += w * a
                    bound += family.degree * p ** (nu * (theta - 0.5)) * lp / log_r * gmax
            nu += 1
    return _PrimeSums(nu1, nu2, ge3, parts, bound)


def lambda_phi_p2_sum(phi: MaassForm, F: TestFunctionPair, R: float) -> float:
    """-2 sum_p lambda_phi(p^2) log p / (p log R) ghat(2 log p / log R)."""
    log_r = math.log(R)
    cutoff = math.exp(F.support * log_r / 2)
    _require_phi(phi, cutoff)
    total = 0.0
    for p in primes_upto(cutoff):
        p = int(p)
        lp = math.log(p)
        total += lambda_phi_power(phi, p, 2) * lp / (p * log_r) * float(F.ghat(2 * lp / log_r))
    return 0.0 - 2.0 * total


def _gamma_over_logR(family: FamilyTag, k: int, phi: MaassForm, F: TestFunctionPair, R: float) -> float:
    return gamma_term_A(mu_params(family, k, phi.t_phi), F, R)


def d1_family(
    family: FamilyTag | str,
    k: int,
    F: TestFunctionPair,
    forms: Sequence[HeckeEigenform],
    phi: MaassForm,
    normalization: str = "normalized",
) -> FamilyDensityReport:
    """Weighted 1-level density of the family from the explicit formula with R = k^4."""
    family = _check_family(family)
    log_r = conductor_log(family, k)
    R = math.exp(log_r)
    w = family_weights(forms, k, normalization)
    mass = float(w.sum())
    gamma = mass * _gamma_over_logR(family, k, phi, F, R)
    sums = _prime_sums(family, forms, phi, F, log_r)
    nu1 = float(w @ sums.nu1)
    nu2 = float(w @ sums.nu2)
    rem = 0.0 - 2.0 * float(w @ sums.nu_ge3)
    total = gamma - 2.0 * (nu1 + nu2) + rem
    breakdown = {f"nu2_{key}": float(w @ val) for key, val in sums.nu2_parts.items()}
    # contributions to the total, -2 x each piece
    breakdown.update({f"contrib_nu2_{key}": 0.0 - 2.0 * float(w @ val) for key, val in sums.nu2_parts.items()})
    report = FamilyDensityReport(
        family=family,
        k=k,
        R=R,
        level=1,
        test_functions=(F.name,),
        normalization=normalization,
        weight_mass=mass,
        gamma_term=gamma,
        nu1_term=nu1,
        nu2_term=nu2,
        nu_ge3_term=rem,
        nu_ge3_bound=2.0 * mass * sums.ge3_bound,
        total=total,
        breakdown=breakdown,
    )
    # closed forms with ghat(0) replaced by the finite-k gamma term
    report.predictions = {
        g: gamma + mass * (predicted_1level(g, F) - F.ghat0) for g in SymmetryGroup
    }
    report.target = SymmetryGroup.USp if family is FamilyTag.PHI_X_F else SymmetryGroup.SOeven
    report.verdict = classify_symmetry(report)
    return report


def _h_sum(F: TestFunctionPair, log_r: float) -> float:
    """2 sum_p log p / (p log R) ghat(2 log p / log R), the shift from b(p^2) = a(p^2) + 1."""
    ps = primes_upto(math.exp(F.support * log_r / 2)).astype(float)
    if len(ps) == 0:
        return 0.0
    lp = np.log(ps)
    return float(np.sum(2.0 * lp / (ps * log_r) * F.ghat(2 * lp / log_r)))


def _c_vectors(
    family: FamilyTag, forms: Sequence[HeckeEigenform], phi: MaassForm, F: TestFunctionPair, log_r: float
) -> dict[int, tuple[np.ndarray, np.ndarray]]:
    """For nu = 1, 2: primes and an array c[f, p] = b_f(p^nu) log p / (p^{nu/2} log R) ghat(nu log p / log R)."""
    out = {}
    for nu in (1, 2):
        ps = primes_upto(math.exp(F.support * log_r / nu))
        ps = np.array([p for p in ps if F.ghat(nu * math.log(int(p)) / log_r) != 0], dtype=np.int64)
        c = np.zeros((len(forms), len(ps)))
        for j, p in enumerate(ps):
            p = int(p)
            lp = math.log(p)
            scale = float(F.ghat(nu * lp / log_r)) * lp / (p ** (nu / 2) * log_r)
            b = _coefficients(family, forms, phi, p, nu) + (1.0 if nu == 2 else 0.0)
            c[:, j] = scale * b
        out[nu] = (ps, c)
    return out


def d2_family(
    family: FamilyTag | str,
    k: int,
    F1: TestFunctionPair,
    F2: TestFunctionPair,
    forms: Sequence[HeckeEigenform],
    phi: MaassForm,
    normalization: str = "normalized",
) -> FamilyDensityReport:
    """Weighted 2-level density: avg_f S1(f) S2(f) - 2 D1(g1 g2), with S_i the explicit-formula sums.

    Zeros come in pairs gamma, -gamma, so the sum over j1 != +-j2 equals the
    product of the two full sums minus twice the diagonal sum of g1 g2.
    """
    family = _check_family(family)
    if F1.support + F2.support >= 1:
        raise ValueError("2-level density needs sigma1 + sigma2 < 1")
    log_r = conductor_log(family, k)
    R = math.exp(log_r)
    w = family_weights(forms, k, normalization)
    mass = float(w.sum())

    consts = []
    sums = []
    cvecs = []
    for F in (F1, F2):
        consts.append((_gamma_over_logR(family, k, phi, F, R), _h_sum(F, log_r)))
        sums.append(_prime_sums(family, forms, phi, F, log_r))
        cvecs.append(_c_vectors(family, forms, phi, F, log_r))

    K = [g + H for g, H in consts]
    # S_i(f) = K_i - 2 (sb1 + sb2) - 2 s_ge3, with sb the b-coefficient sums
    sb = [{nu: cv[nu][1].sum(axis=1) for nu in (1, 2)} for cv in cvecs]
    S = [K[i] - 2 * (sb[i][1] + sb[i][2]) - 2 * sums[i].nu_ge3 for i in range(2)]
    product_avg = float(w @ (S[0] * S[1]))

    breakdown: dict[str, float] = {
        "K1": K[0],
        "K2": K[1],
        "H1": consts[0][1],
        "H2": consts[1][1],
        "constant_product": mass * K[0] * K[1],
        "linear_terms": float(w @ (-2 * K[0] * (sb[1][1] + sb[1][2]) - 2 * K[1] * (sb[0][1] + sb[0][2]))),
    }
    mixed_total = 0.0
    for n1 in (1, 2):
        for n2 in (1, 2):
            p1, c1 = cvecs[0][n1]
            p2, c2 = cvecs[1][n2]
            full = 4.0 * float(w @ (c1.sum(axis=1) * c2.sum(axis=1)))
            common, i1, i2 = np.intersect1d(p1, p2, return_indices=True)
            diag = 4.0 * float(w @ np.sum(c1[:, i1] * c2[:, i2], axis=1))
            breakdown[f"T{n1}{n2}_diag"] = diag
            breakdown[f"T{n1}{n2}_offdiag"] = full - diag
            mixed_total += full
    # the "1" part of avg b(p)^2 ~ 1 + lambda_phi(p^2): 4 sum_p (log p / log R)^2 / p ghat1 ghat2
    ps = primes_upto(math.exp(min(F1.support, F2.support) * log_r))
    u = np.log(ps.astype(float)) / log_r
    breakdown["T11_diag_one"] = mass * float(np.sum(4 * u * u / ps * F1.ghat(u) * F2.ghat(u)))
    ge3_terms = float(w @ (S[0] * S[1])) - (breakdown["constant_product"] + breakdown["linear_terms"] + mixed_total)
    breakdown["nu_ge3_cross"] = ge3_terms

    G = product_pair(F1, F2)
    d1_prod = d1_family(family, k, G, forms, phi, normalization)
    breakdown["D1_product"] = d1_prod.total
    total = product_avg - 2.0 * d1_prod.total

    report = FamilyDensityReport(
        family=family,
        k=k,
        R=R,
        level=2,
        test_functions=(F1.name, F2.name),
        normalization=normalization,
        weight_mass=mass,
        gamma_term=mass * consts[0][0] * consts[1][0] - 2.0 * d1_prod.gamma_term,
        nu1_term=breakdown["T11_diag"] + breakdown["T11_offdiag"],
        nu2_term=sum(breakdown[f"T{a}{b}_{d}"] for a, b in ((1, 2), (2, 1), (2, 2)) for d in ("diag", "offdiag")),
        nu_ge3_term=ge3_terms,
        nu_ge3_bound=d1_prod.nu_ge3_bound,
        total=total,
        breakdown=breakdown,
    )
    # closed forms with ghat_i(0) and (g1 g2)^(0) replaced by their finite-k gamma terms
    g1, g2, g12 = consts[0][0], consts[1][0], d1_prod.gamma_term / mass
    preds = {}
    for grp in ORTHOGONAL:
        closed = predicted_2level(grp, F1, F2)
        shift = (
            (g1 + 0.5 * F1.g0) * (g2 + 0.5 * F2.g0)
            - (F1.ghat0 + 0.5 * F1.g0) * (F2.ghat0 + 0.5 * F2.g0)
            - 2.0 * (g12 - G.ghat0)
        )
        preds[grp] = mass * (closed + shift)
    report.predictions = preds
    report.target = SymmetryGroup.SOeven
    report.verdict = classify_symmetry(report)
    return report


def ranking(report: FamilyDensityReport) -> list[SymmetryGroup]:
    """Groups sorted by distance to the computed total."""
    return sorted(report.predictions, key=lambda g: abs(report.total - report.predictions[g]))


def excluded_pair_sum(zeros: Sequence[float], F1: TestFunctionPair, F2: TestFunctionPair) -> float:
    """Literal sum over j1 != +-j2 of g1(x_j1) g2(x_j2).

    ``zeros`` holds the positive ordinates x_1, x_2, ...; the full set is
    {x_j, x_{-j} = -x_j}.
    """
    if any(x <= 0 for x in zeros):
        raise ValueError("zeros must be positive; the mirror images are added here")
    xs = [(j, s * float(x)) for j, x in enumerate(zeros, start=1) for s in (1, -1)]
    total = 0.0
    for j1, x1 in xs:
        for j2, x2 in xs:
            if j1 != j2:  # labels j and -j share |label|, so this drops j1 = +-j2
                total += float(F1.g(x1)) * float(F2.g(x2))
    return total


def paired_product_form(zeros: Sequence[float], F1: TestFunctionPair, F2: TestFunctionPair) -> float:
    """The same sum as (sum g1)(sum g2) - 2 sum g1 g2 over the full symmetric set."""
    x = np.concatenate([np.asarray(zeros, dtype=float), -np.asarray(zeros, dtype=float)])
    v1, v2 = F1.g(x), F2.g(x)
    return float(v1.sum() * v2.sum() - 2.0 * np.sum(v1 * v2))
