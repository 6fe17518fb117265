"""Trial orchestration and reports behind the command line."""
from __future__ import annotations

import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

from .duality import (
    CHECKERS,
    DualityCase,
    IndexSubset,
    Regime,
    classify_level,
    corollary_unity,
    a_sum,
    b_sum,
    level_window,
)
from .fields import ParameterPoint, parse_field, sample_parameter_point
from .grassmann import GrassmannCase, verify_level_correspondence
from .qseries import PoleError
from .residue import (
    MAX_NUMERIC_DEGREE,
    ContourConfig,
    IntegrandSpec,
    assemble_E,
    assemble_F,
    complex_point,
    contour_integral_numeric,
    default_rho,
    relative_error,
)

SEED_MASK = 2**64 - 1
RESAMPLE_LIMIT = 8

REPORT_SCHEMA = {
    "type": "object",
    "required": ["case", "field", "seed", "trials", "passed", "failures", "elapsed_ms"],
    "properties": {
        "case": {
            "type": "object",
            "required": ["n", "r", "d", "l", "regime"],
            "properties": {
                "n": {"type": "integer", "minimum": 0},
                "r": {"type": "integer", "minimum": 0},
                "d": {"type": "integer", "minimum": 0},
                "l": {"type": "integer"},
                "regime": {
                    "enum": ["interior", "upper_boundary", "lower_boundary", "out_of_range"]
                },
            },
        },
        "field": {"type": "string"},
        "seed": {"type": "integer", "minimum": 0, "maximum": SEED_MASK},
        "trials": {"type": "integer", "minimum": 1},
        "passed": {"type": "integer", "minimum": 0},
        "failures": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["point", "lhs", "rhs"],
                "properties": {
                    "point": {
                        "type": "object",
                        "required": ["q", "x"],
                        "properties": {
                            "q": {"type": "string"},
                            "x": {"type": "array", "items": {"type": "string"}},
                        },
                    },
                    "lhs": {"type": "string"},
                    "rhs": {"type": "string"},
                },
            },
        },
        "elapsed_ms": {"type": "number", "minimum": 0},
    },
}

SWEEP_SCHEMA = {"type": "array", "items": REPORT_SCHEMA}


class InvalidInput(ValueError):
    """Configuration the checkers cannot run (maps to exit code 2)."""


@dataclass
class RunConfig:
    command: str = "verify"
    n: int = 3
    r: int = 1
    d: int = 1
    l: int = 0
    n_max: int = 5
    d_max: int = 3
    all_levels: bool = True
    trials: int = 10
    field: str = "fp61"
    seed: int = 0
    jobs: int = 1
    json: Optional[str] = None
    timing: bool = True
    numeric: bool = False
    grid: int = 512

    def validate(self):
        if self.trials < 1:
            raise InvalidInput("trials must be >= 1")
        if self.jobs < 1:
            raise InvalidInput("jobs must be >= 1")
        if not 0 <= self.seed <= SEED_MASK:
            raise InvalidInput("seed must be an unsigned 64-bit integer")
        if self.d < 0 or self.d_max < 0:
            raise InvalidInput("degrees must be non-negative")
        if self.n_max < 2:
            raise InvalidInput("n_max must be >= 2")
        try:
            parse_field(self.field)
        except ValueError as exc:
            raise InvalidInput(str(exc)) from None


@dataclass
class VerificationReport:
    case: dict
    field: str
    seed: int
    trials: int
    passed: int = 0
    failures: list = field(default_factory=list)
    elapsed_ms: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.passed == self.trials

    def to_dict(self) -> dict:
        out = asdict(self)
        extra = out.pop("extra")
        out.update(extra)
        return out

    def summary(self) -> str:
        c = self.case
        status = "PASS" if self.ok else "FAIL"
        return (
            f"{status} n={c['n']} r={c['r']} d={c['d']} l={c['l']} [{c['regime']}] "
            f"{self.passed}/{self.trials} on {self.field}"
        )


def trial_seed(seed: int, t: int, attempt: int = 0) -> int:
    return (seed + t + (attempt << 32)) & SEED_MASK


def _witness(point: ParameterPoint, lhs, rhs, **more) -> dict:
    fmt = point.field.format
    w = {"point": point.format(), "lhs": _fmt(fmt, lhs), "rhs": _fmt(fmt, rhs)}
    w.update(more)
    return w


def _fmt(fmt, v) -> str:
    return v if isinstance(v, str) else fmt(v)


def _run_trials(cfg: RunConfig, case: dict, n: int, d: int, check: Callable) -> VerificationReport:
    """Sample ``cfg.trials`` points and apply ``check(point) -> list[(ok, lhs, rhs, extra)]``."""
    F = parse_field(cfg.field)
    start = time.perf_counter()
    report = VerificationReport(case=case, field=F.name, seed=cfg.seed, trials=cfg.trials)
    for t in range(cfg.trials):
        for attempt in range(RESAMPLE_LIMIT):
            point = sample_parameter_point(n, d + n, trial_seed(cfg.seed, t, attempt), F)
            try:
                outcomes = check(point)
                break
            except PoleError as exc:
                # guard miss: resample
                last_error = exc
        else:
            msg = f"pole: {last_error}"
            report.failures.append(_witness(point, msg, msg))
            continue
        bad = [o for o in outcomes if not o[0]]
        if bad:
            for _, lhs, rhs, more in bad:
                report.failures.append(_witness(point, lhs, rhs, **more))
        else:
            report.passed += 1
    report.elapsed_ms = (time.perf_counter() - start) * 1000 if cfg.timing else 0.0
    return report


def _case_dict(n, r, d, l) -> dict:
    return {"n": n, "r": r, "d": d, "l": l, "regime": classify_level(n, r, l).value}


def _check_shape(n: int, r: int):
    if n < 2 or not 0 < r < n:
        raise InvalidInput(f"need n >= 2 and 0 < r < n, got n={n}, r={r}")


def _require_in_range(n, r, l):
    if classify_level(n, r, l) is Regime.OUT_OF_RANGE:
        raise InvalidInput(
            f"level l={l} is out of range for n={n}, r={r}; valid window is {level_window(n, r)}"
        )


def run_verify(cfg: RunConfig) -> VerificationReport:
    """Duality check at one (n, r, d, l), dispatched by level regime."""
    n, r, d, l = cfg.n, cfg.r, cfg.d, cfg.l
    _check_shape(n, r)
    _require_in_range(n, r, l)
    checker = CHECKERS[classify_level(n, r, l)]

    def check(point):
        v = checker(DualityCase.build(point, IndexSubset.first(n, r), d, l))
        return [(v.passed, v.lhs, v.rhs, {})]

    return _run_trials(cfg, _case_dict(n, r, d, l), n, d, check)


def run_ifunction(cfg: RunConfig) -> VerificationReport:
    """Level correspondence of restricted I-functions at every fixed point."""
    n, r, d, l = cfg.n, cfg.r, cfg.d, cfg.l
    _check_shape(n, r)
    _require_in_range(n, r, l)

    def check(point):
        vs = verify_level_correspondence(GrassmannCase.build(point, r, d, l))
        return [(v.passed, v.lhs, v.rhs, {"fixed_point": v.label}) for v in vs]

    return _run_trials(cfg, _case_dict(n, r, d, l), n, d, check)


def run_unity(cfg: RunConfig) -> VerificationReport:
    d = cfg.d

    def check(point):
        v = corollary_unity(point, d)
        return [(v.passed, v.lhs, v.rhs, {})]

    return _run_trials(cfg, _case_dict(3, 2, d, 0), 3, d, check)


def numeric_point(n: int, seed: int) -> ParameterPoint:
    """A deterministic complex point inside the contour window."""
    rng = random.Random(seed)
    q = rng.uniform(0.2, 0.4)
    xs = [rng.uniform(0.8, 1.2) * complex(math.cos(a), math.sin(a))
          for a in (rng.uniform(0, 2 * math.pi) for _ in range(n))]
    return complex_point(q, xs)


def run_residue(cfg: RunConfig) -> VerificationReport:
    """Residue assembly against A_d / B_d, optionally against contour quadrature."""
    n, r, d, l = cfg.n, cfg.r, cfg.d, cfg.l
    _check_shape(n, r)
    if cfg.numeric:
        if d > MAX_NUMERIC_DEGREE:
            raise InvalidInput(f"--numeric supports d <= {MAX_NUMERIC_DEGREE}, got d={d}")
        if l < 1 - r:
            raise InvalidInput(f"--numeric needs l >= 1 - r = {1 - r} (no pole at w = 0)")
        try:
            ContourConfig(1.0, cfg.grid)
        except ValueError as exc:
            raise InvalidInput(str(exc)) from None
    interior = classify_level(n, r, l) is Regime.INTERIOR
    sign = -1 if d % 2 else 1

    def check(point):
        spec = IntegrandSpec(point, r, d, l)
        E, F = assemble_E(spec), assemble_F(spec)
        A = a_sum(point, range(1, r + 1), d, l)
        B = b_sum(point, range(r + 1, n + 1), d, -l)
        out = [(E == A, E, A, {"check": "E == A"}), (sign * F == B, sign * F, B, {"check": "F == B"})]
        if interior:
            out.append((E == sign * F, E, sign * F, {"check": "E == (-1)^d F"}))
        return out

    report = _run_trials(cfg, _case_dict(n, r, d, l), n, d, check)
    if cfg.numeric:
        point = numeric_point(n, cfg.seed)
        spec = IntegrandSpec(point, r, d, l)
        exact = complex(assemble_E(spec))
        rho = default_rho(point)
        errors = {}
        for N in (cfg.grid // 4, cfg.grid // 2, cfg.grid):
            if N < 64:
                continue
            approx = contour_integral_numeric(spec, ContourConfig(rho, N))
            errors[str(N)] = relative_error(approx, exact)
        report.extra["numeric"] = {"rho": rho, "relative_error": errors}
    return report


def sweep_cases(n_max: int, d_max: int, all_levels: bool = True) -> list[tuple[int, int, int, int]]:
    cases = []
    for n in range(2, n_max + 1):
        for r in range(1, n):
            levels = range(-r, n - r + 1) if all_levels else range(1 - r, n - r)
            for d in range(d_max + 1):
                for l in levels:
                    cases.append((n, r, d, l))
    return cases


def _sweep_one(args) -> VerificationReport:
    cfg, (n, r, d, l) = args
    sub = RunConfig(**{**asdict(cfg), "n": n, "r": r, "d": d, "l": l})
    return run_verify(sub)


def run_sweep(cfg: RunConfig) -> list[VerificationReport]:
    tasks = [(cfg, c) for c in sweep_cases(cfg.n_max, cfg.d_max, cfg.all_levels)]
    if cfg.jobs == 1:
        return [_sweep_one(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
        return list(pool.map(_sweep_one, tasks))
