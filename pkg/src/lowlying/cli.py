"""Batch command-line front end writing deterministic CSV reports."""

from __future__ import annotations

import argparse
import csv
import dataclasses
import hashlib
import io
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import __version__
from .density import NORMALIZATIONS, SUPPORT_THRESHOLD, d1_family, d2_family
from .gammafactors import conductor_log, gamma_term_A, mu_params, root_number
from .hecke import (
    PrecisionError,
    check_multiplicativity,
    dim_Sk,
    hecke_family,
    petersson_delta,
)
from .maass import FIRST_EVEN_T, MaassForm, MaassParseError, bundled_maass, load_maass, synthetic_maass
from .primes import linear_target, prime_sum_linear, prime_sum_quadratic, quadratic_target
from .rmt import SymmetryGroup, empirical_nlevel, predicted_1level, predicted_2level
from .satake import FamilyTag, MissingDataError, two_route_defect
from .testfns import fejer_pair

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_CHECK = 0, 1, 2, 3
DATA_ENV = "LOWLYING_DATA"
COMMANDS = ("rmt", "family", "checks", "prime-sums", "gamma", "root-number")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- configuration


def parse_weights(text: str) -> tuple[int, ...]:
    """'12,16' or '12..24' (even weights with nonzero cusp space)."""
    out: list[int] = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = (int(x) for x in part.split("..", 1))
            out += [k for k in range(lo + lo % 2, hi + 1, 2) if dim_Sk(k) > 0]
        else:
            out.append(int(part))
    return tuple(out)


def _parse_list(text: str, conv: Callable = str) -> tuple:
    return tuple(conv(x.strip()) for x in str(text).split(",") if x.strip())


@dataclass(frozen=True)
class RunConfig:
    command: str = "checks"
    family: str = "PHI_X_SYM2F"
    weights: tuple[int, ...] = (12,)
    test_function: str = "fejer"
    sigma: float = 0.125
    sigma2: float = 0.25
    two_level: bool = False
    normalization: str = "normalized"
    maass: str = ""
    synthetic_seed: int = -1
    hecke_precision: int = 2000
    groups: tuple[str, ...] = ()
    N: int = 40
    samples: int = 10000
    levels: tuple[int, ...] = (1,)
    seed: int = 0
    R: tuple[float, ...] = (1e3, 1e4, 1e5, 1e6)
    output: str = "-"

    def validate(self) -> "RunConfig":
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        FamilyTag.parse(self.family)
        if self.test_function != "fejer":
            raise UsageError("only the Fejer test function is provided")
        if not 0 < self.sigma < 1 or not 0 < self.sigma2 < 1:
            raise UsageError("sigma must lie in (0, 1)")
        if not self.weights or any(k < 12 or k % 2 for k in self.weights):
            raise UsageError("weights must be even and at least 12")
        if self.normalization not in NORMALIZATIONS:
            raise UsageError(f"normalization must be one of {NORMALIZATIONS}")
        if not 100 <= self.hecke_precision <= 10**6:
            raise UsageError("hecke_precision must lie in [100, 10^6]")
        if not 1 <= self.N <= 200:
            raise UsageError("N must lie in [1, 200]")
        if self.samples < 2:
            raise UsageError("samples must be at least 2")
        if any(level not in (1, 2) for level in self.levels):
            raise UsageError("levels must be 1 or 2")
        if any(r <= 1 for r in self.R):
            raise UsageError("R values must exceed 1")
        for g in self.groups:
            SymmetryGroup.parse(g)
        return self

    def to_text(self) -> str:
        lines = []
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if isinstance(v, tuple):
                v = ",".join(repr(x) if isinstance(x, float) else str(x) for x in v)
            elif isinstance(v, float):
                v = repr(v)
            lines.append(f"{f.name}={v}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RunConfig":
        values = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"config line {lineno}: expected key=value")
            key, val = (s.strip() for s in line.split("=", 1))
            values[key] = val
        return cls().updated(values)

    def updated(self, values: dict[str, object]) -> "RunConfig":
        kinds = {f.name: f for f in dataclasses.fields(self)}
        changes = {}
        for key, val in values.items():
            if val is None:
                continue
            if key not in kinds:
                raise UsageError(f"unknown config key {key!r}")
            changes[key] = _coerce(key, val)
        return dataclasses.replace(self, **changes)

    def digest(self) -> str:
        """Hash of everything except the output destination."""
        text = dataclasses.replace(self, output="-").to_text()
        return hashlib.sha256(text.encode()).hexdigest()[:16]


def _coerce(key: str, val: object):
    if not isinstance(val, str):
        return val
    try:
        if key == "weights":
            return parse_weights(val)
        if key in ("groups",):
            return _parse_list(val)
        if key == "levels":
            return _parse_list(val, int)
        if key == "R":
            return _parse_list(val, float)
        if key in ("sigma", "sigma2"):
            return float(val)
        if key in ("synthetic_seed", "hecke_precision", "N", "samples", "seed"):
            return int(val)
        if key == "two_level":
            if val.lower() not in ("true", "false", "1", "0"):
                raise ValueError(val)
            return val.lower() in ("true", "1")
    except ValueError:
        raise UsageError(f"bad value for {key}: {val!r}") from None
    return val


# ---------------------------------------------------------------- output


def _fmt(v) -> str:
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return "nan" if math.isnan(v) else repr(v)
    if isinstance(v, np.integer):
        return str(int(v))
    return str(v)


def render_csv(header: Sequence[str], rows: Sequence[Sequence], config: RunConfig) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    buf.write(f"# version={__version__}\n# config_hash={config.digest()}\n")
    return buf.getvalue()


def _emit(text: str, config: RunConfig) -> None:
    if config.output in ("", "-"):
        sys.stdout.write(text)
    else:
        Path(config.output).write_text(text)


# ---------------------------------------------------------------- data


def resolve_maass(config: RunConfig) -> MaassForm:
    if config.synthetic_seed >= 0:
        return synthetic_maass(config.synthetic_seed, 10**4, FIRST_EVEN_T)
    if not config.maass:
        return bundled_maass()
    path = Path(config.maass)
    if not path.is_absolute() and not path.exists() and os.environ.get(DATA_ENV):
        path = Path(os.environ[DATA_ENV]) / path
    return load_maass(path)


# ---------------------------------------------------------------- commands


def cmd_rmt(config: RunConfig) -> int:
    if not config.groups:
        raise UsageError("rmt needs --group")
    F = fejer_pair(config.sigma)
    F2 = fejer_pair(config.sigma2)
    seeds = np.random.SeedSequence(config.seed).spawn(len(config.groups) * len(config.levels))
    rows = []
    i = 0
    for name in config.groups:
        g = SymmetryGroup.parse(name)
        for level in config.levels:
            rng = np.random.default_rng(seeds[i])
            i += 1
            if level == 1:
                est = empirical_nlevel(g, config.N, config.samples, F, 1, rng)
                pred = predicted_1level(g, F)
            else:
                est = empirical_nlevel(g, config.N, config.samples, F2, 2, rng)
                pred = predicted_2level(g, F2, F2)
            rows.append((g.value, config.N, est.samples, f"{level}-level", est.mean, pred, est.stderr))
    header = ("group", "N", "samples", "statistic", "empirical", "predicted", "stderr")
    _emit(render_csv(header, rows, config), config)
    return EXIT_OK


def cmd_family(config: RunConfig) -> int:
    family = FamilyTag.parse(config.family)
    phi = resolve_maass(config)
    F = fejer_pair(config.sigma)
    rows = []
    for k in config.weights:
        forms = hecke_family(k, config.hecke_precision)
        if config.two_level:
            report = d2_family(family, k, F, F, forms, phi, config.normalization)
        else:
            report = d1_family(family, k, F, forms, phi, config.normalization)
        for row in report.rows(config.sigma):
            rows.append(row + ("",))
        flag = "support-above-threshold" if config.sigma >= SUPPORT_THRESHOLD[family] else ""
        rows.append((family.name, k, config.sigma, "verdict", report.verdict.margin, math.nan, report.verdict.label + (f";{flag}" if flag else "")))
    header = ("family", "k", "sigma", "term", "value", "residual_bound", "label")
    _emit(render_csv(header, rows, config), config)
    return EXIT_OK


def cmd_prime_sums(config: RunConfig) -> int:
    F = fejer_pair(config.sigma)
    rows = []
    for R in config.R:
        lin = float(prime_sum_linear(F, 1, R))
        quad = float(prime_sum_quadratic(F, R))
        rows.append((R, "linear", lin, linear_target(F, 1), lin - linear_target(F, 1), 2 / math.log(R)))
        rows.append((R, "quadratic", quad, quadratic_target(F), quad - quadratic_target(F), 2 / math.log(R)))
    header = ("R", "sum", "value", "target", "residual", "bound")
    _emit(render_csv(header, rows, config), config)
    return EXIT_OK


def cmd_gamma(config: RunConfig) -> int:
    family = FamilyTag.parse(config.family)
    phi = resolve_maass(config)
    F = fejer_pair(config.sigma)
    rows = []
    for k in config.weights:
        R = math.exp(conductor_log(family, k))
        g = gamma_term_A(mu_params(family, k, phi.t_phi), F, R)
        scaled = (g / F.ghat0 - 1) * math.log(k)
        rows.append((family.name, k, config.sigma, g, F.ghat0, scaled))
    header = ("family", "k", "sigma", "gamma_term", "ghat0", "relative_error_times_log_k")
    _emit(render_csv(header, rows, config), config)
    return EXIT_OK


def cmd_root_number(config: RunConfig) -> int:
    family = FamilyTag.parse(config.family)
    rows = [(family.name, k, root_number(family, k)) for k in config.weights]
    _emit(render_csv(("family", "k", "root_number"), rows, config), config)
    return EXIT_OK


def run_checks(config: RunConfig) -> list[tuple[str, bool, str]]:
    """(name, passed, detail) for the quick self-checks."""
    results = []
    rng = np.random.default_rng(config.seed)
    worst = max(two_route_defect(f, rng) for f in FamilyTag)
    results.append(("satake-two-route", worst <= 1e-10, f"max defect {worst:.2e}"))

    tau2 = hecke_family(12, 2500)[0].lam(2) * 2 ** 5.5
    results.append(("tau(2)", round(tau2) == -24 and abs(tau2 + 24) < 1e-9, f"{tau2:.12g}"))

    mult_ok, pet_ok = True, True
    pet_detail = []
    for k in config.weights:
        forms = hecke_family(k, config.hecke_precision)
        mult_ok &= all(check_multiplicativity(f, 50) for f in forms)
        dev = abs(petersson_delta(k, 1, 1, forms) - 1)
        pet_ok &= dev <= 5 / k
        pet_detail.append(f"k={k}:{dev:.2g}")
    results.append(("hecke-multiplicativity", bool(mult_ok), f"weights {config.weights[0]}..{config.weights[-1]}"))
    results.append(("petersson-diagonal-5/k", bool(pet_ok), " ".join(pet_detail)))

    phi = resolve_maass(config)
    F = fejer_pair(0.5)
    scaled = []
    for k in (12, 50, 200, 800):
        R = float(k) ** 4
        g = gamma_term_A(mu_params(FamilyTag.PHI_X_SYM2F, k, phi.t_phi), F, R)
        scaled.append(abs(g / F.ghat0 - 1) * math.log(k))
    results.append(("gamma-asymptotics", max(scaled) <= 1.5, f"max {max(scaled):.3f} (bound 1.5)"))

    signs = {root_number(f, k) for f in (FamilyTag.PHI_X_F, FamilyTag.PHI_X_SYM2F) for k in range(12, 401, 2)}
    results.append(("root-numbers", signs == {1}, f"values {sorted(signs)}"))
    return results


def cmd_checks(config: RunConfig) -> int:
    results = run_checks(config)
    rows = [(name, "PASS" if ok else "FAIL", detail) for name, ok, detail in results]
    _emit(render_csv(("check", "status", "detail"), rows, config), config)
    return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_CHECK


HANDLERS = {
    "rmt": cmd_rmt,
    "family": cmd_family,
    "checks": cmd_checks,
    "prime-sums": cmd_prime_sums,
    "gamma": cmd_gamma,
    "root-number": cmd_root_number,
}


# ---------------------------------------------------------------- argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lowlying", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--config", help="key=value file; flags override it")
        p.add_argument("--out", dest="output", help="output path, '-' for stdout")
        p.add_argument("--seed", type=int)

    p = sub.add_parser("rmt", help="Monte Carlo vs closed-form n-level densities")
    common(p)
    p.add_argument("--group", dest="groups", action="append", help="U, USp, O, SOeven, SOodd (repeatable)")
    p.add_argument("--N", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--sigma", type=float)
    p.add_argument("--sigma2", type=float, help="support for the 2-level statistic")
    p.add_argument("--levels", help="comma list of 1, 2")

    p = sub.add_parser("family", help="weighted family densities")
    common(p)
    p.add_argument("--tag", dest="family")
    p.add_argument("--k", dest="weights", help="'12,16' or '12..24'")
    p.add_argument("--sigma", type=float)
    p.add_argument("--maass")
    p.add_argument("--synthetic-seed", dest="synthetic_seed", type=int)
    p.add_argument("--two-level", dest="two_level", action="store_const", const=True)
    p.add_argument("--normalization", choices=NORMALIZATIONS)
    p.add_argument("--hecke-precision", dest="hecke_precision", type=int)

    p = sub.add_parser("checks", help="quick self-checks; exit 3 on failure")
    common(p)
    p.add_argument("--weights")
    p.add_argument("--maass")
    p.add_argument("--hecke-precision", dest="hecke_precision", type=int)

    p = sub.add_parser("prime-sums", help="prime sums against their limits")
    common(p)
    p.add_argument("--sigma", type=float)
    p.add_argument("--R", help="comma list")

    p = sub.add_parser("gamma", help="gamma-factor term with R = k^4")
    common(p)
    p.add_argument("--tag", dest="family")
    p.add_argument("--k", dest="weights")
    p.add_argument("--sigma", type=float)
    p.add_argument("--maass")

    p = sub.add_parser("root-number", help="root numbers from archimedean data")
    common(p)
    p.add_argument("--tag", dest="family")
    p.add_argument("--k", dest="weights")
    return parser


_COMMAND_DEFAULTS = {
    "checks": {"weights": (12, 16, 18, 20, 22, 24), "hecke_precision": 2500},
    "gamma": {"weights": (12, 50, 200, 800), "sigma": 0.5},
    "root-number": {"weights": tuple(range(12, 401, 2))},
    "prime-sums": {"sigma": 0.5},
    "rmt": {"sigma": 0.5},
}


def make_config(argv: Sequence[str]) -> RunConfig:
    args = vars(build_parser().parse_args(list(argv)))
    command = args.pop("command")
    config = RunConfig(command=command).updated(_COMMAND_DEFAULTS.get(command, {}))
    path = args.pop("config", None)
    if path:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read config {path}: {exc}") from None
        config = config.updated({k: v for k, v in RunConfig.from_text(text).__dict__.items() if _in_file(text, k)})
        config = dataclasses.replace(config, command=command)
    if args.get("groups"):
        args["groups"] = tuple(g for item in args["groups"] for g in _parse_list(item))
    return config.updated(args).validate()


def _in_file(text: str, key: str) -> bool:
    return any(line.split("=", 1)[0].strip() == key for line in text.splitlines() if "=" in line)


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        config = make_config(argv)
        return HANDLERS[config.command](config)
    except UsageError as exc:
        print(f"lowlying: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MissingDataError, PrecisionError, MaassParseError, OSError) as exc:
        print(f"lowlying: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"lowlying: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
