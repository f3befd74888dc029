"""Config-driven experiments and their machine-readable reports.

Every report is a pure function of its config: no timestamps, rows in grid
order, floats serialised with repr, so reruns are byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field, fields, replace
from fractions import Fraction
from pathlib import Path

import numpy as np

from .analytic.laurent import laurent_of_zeta_K, main_term
from .analytic.scans import atkinson_integral, convexity_scan
from .analytic.zeta import zeta_K_value
from .bounds import galois
from .bounds.catalog import ExponentBound, exponent_catalog, rprime_exponents
from .bounds.expsum import BilinearInstance, prop_ideal_sum, wu_bordelles_report
from .errors import ConfigError, DegenerateFit, PoleAt1
from .fields import FieldDescriptor, get_field
from .fitting import FitResult, fit_exponent
from .sieve import cached_table, count_ideals, count_ideals_streamed, count_rprime

SCHEMA = 1
KINDS = ("delta", "rprime", "convexity", "expsum", "atkinson", "omega", "catalog")
MAX_X = 2 ** 31
MIN_GRID = 8
EXECUTION_KEYS = ("threads", "output")


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    field: str = "Q"
    m: int = 1
    r: int = 1
    ell: int = 2
    x_min: float = 1000.0
    x_max: int = 10 ** 6
    grid_points: int = 64
    grid_ratio: float | None = None
    window: float = 1.0
    method: str = "running_max"
    beta: float | None = None
    sigma: float = 0.5
    t_min: float = 16.0
    t_max: float = 4096.0
    y: float = 40.0
    A: float = 2.0
    B: float = 50.0
    tau: str = "cos"
    x: float = 1000.0
    S: int = 64
    instances: int = 4
    group: str = "S3"
    n: int = 2
    output: str | None = None
    format: str = "json"
    seed: int = 0
    threads: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"kind must be one of {KINDS}")
        if self.format not in ("json", "csv"):
            raise ConfigError("format must be json or csv")
        if not 1 <= self.x_max <= MAX_X:
            raise ConfigError(f"x_max must lie in [1, {MAX_X}]")
        if self.kind in ("delta", "rprime", "convexity") and self.grid_points < MIN_GRID:
            raise ConfigError(f"grid_points must be >= {MIN_GRID} for fitting experiments")
        if self.grid_ratio is not None and not self.grid_ratio > 1:
            raise ConfigError("grid_ratio must exceed 1")
        if not 0 < self.window <= 1:
            raise ConfigError("window must lie in (0, 1]")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        if self.m < 1 or self.r < 1 or self.ell < 1:
            raise ConfigError("m, r and ell must be positive")
        if self.beta is not None and not self.beta >= 0:
            raise ConfigError("beta must be >= 0")

    @classmethod
    def from_dict(cls, obj: dict) -> "ExperimentConfig":
        if not isinstance(obj, dict):
            raise ConfigError("config must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = set(obj) - known
        if unknown:
            raise ConfigError(f"unknown config keys {sorted(unknown)}")
        if "kind" not in obj:
            raise ConfigError("config needs a 'kind'")
        try:
            return cls(**obj)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        try:
            obj = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"{path}: {exc}") from None
        return cls.from_dict(obj)

    def to_dict(self) -> dict:
        """Config echo for reports, without the execution details (threads, output path)."""
        out = asdict(self)
        for key in EXECUTION_KEYS:
            out.pop(key)
        return out


@dataclass(frozen=True)
class DeltaSample:
    x: float
    I: int | None
    main: float
    delta: float
    ratio: float | None = None

    def to_dict(self) -> dict:
        out = {"x": self.x, "I": self.I, "main": self.main, "delta": self.delta}
        if self.ratio is not None:
            out["ratio"] = self.ratio
        return out


@dataclass
class ExperimentReport:
    kind: str
    config: ExperimentConfig
    columns: tuple
    rows: list
    fit: FitResult | None = None
    bounds: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)
    summary: str = ""

    def to_json(self) -> str:
        obj = {
            "schema": SCHEMA,
            "kind": self.kind,
            "config": self.config.to_dict(),
            "columns": list(self.columns),
            "rows": self.rows,
            "fit": self.fit.to_dict() if self.fit else None,
            "bounds": self.bounds,
            "extra": self.extra,
        }
        return json.dumps(obj, indent=1, sort_keys=True, allow_nan=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for r in self.rows:
            w.writerow(["" if r.get(c) is None else (repr(r[c]) if isinstance(r[c], float) else r[c])
                        for c in self.columns])
        return buf.getvalue()

    def render(self, fmt: str | None = None) -> str:
        return self.to_csv() if (fmt or self.config.format) == "csv" else self.to_json()

    def write(self, path=None, fmt=None) -> Path | None:
        path = path or self.config.output
        if path is None:
            return None
        p = Path(path)
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(self.render(fmt))
        return p


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def geometric_grid(x_min: float, x_max: float, points: int, ratio: float | None = None) -> list[int]:
    """Integer points, geometric in spacing, ending at x_max; duplicates removed."""
    if ratio is not None:
        raw = [x_max / ratio ** k for k in range(points)][::-1]
    else:
        raw = np.geomspace(x_min, x_max, points).tolist()
    out = sorted({max(1, int(round(v))) for v in raw})
    return out


def _bound_dicts(bounds) -> list[dict]:
    return [b.to_dict() for b in bounds]


def conjecture_line() -> dict:
    return {"source": "conjecture", "theta_num": 1, "theta_den": 2, "theta": 0.5,
            "log_power": 0.0, "epsilon": False, "kind": "little_o", "valid": True, "best": False}


def _resolve_field(cfg: ExperimentConfig) -> FieldDescriptor:
    return get_field(cfg.field)


def _fit_or_none(xs, deltas, cfg, extra):
    try:
        return fit_exponent(xs, deltas, cfg.window, cfg.method)
    except DegenerateFit as exc:
        extra["fit_error"] = f"{type(exc).__name__}: {exc}"
        return None


def _best(bounds) -> ExponentBound | None:
    return next((b for b in bounds if b.best), None)


def _fmt_theta(b: ExponentBound | None) -> str:
    return "none" if b is None else f"{b.theta}({b.source})"


# ---------------------------------------------------------------------------
# experiments
# ---------------------------------------------------------------------------

DELTA_COLUMNS = ("x", "I", "main", "delta")


def run_delta(cfg: ExperimentConfig, delta_override=None) -> ExperimentReport:
    """Delta_K^m on a geometric grid, its fitted exponent and the comparison exponents.

    ``delta_override`` (a function of x) replaces the arithmetic and is used to
    validate the fitting pipeline; rows then carry no count.
    """
    grid = geometric_grid(cfg.x_min, cfg.x_max, cfg.grid_points, cfg.grid_ratio)
    extra: dict = {}
    samples = []
    if delta_override is not None:
        for x in grid:
            d = float(delta_override(x))
            samples.append(DeltaSample(float(x), None, float(x) - d, d))
        n, label = None, "synthetic"
    else:
        K = _resolve_field(cfg)
        n, label = K.degree, K.label
        if K.kind == "rational" and cfg.m <= 2:
            count = lambda x: count_ideals_streamed(K, cfg.m, x)  # noqa: E731
        else:
            table = cached_table(K, "piltz", cfg.m, int(cfg.x_max), threads=cfg.threads)
            count = lambda x: count_ideals(table, x)  # noqa: E731
        for x in grid:
            I = count(x)
            main = main_term(K, cfg.m, float(x))
            samples.append(DeltaSample(float(x), I, main, I - main))
    fit = _fit_or_none([s.x for s in samples], [s.delta for s in samples], cfg, extra)
    bounds = _bound_dicts(exponent_catalog(n, cfg.m)) if n else []
    bounds.append(conjecture_line())
    best = _best(exponent_catalog(n, cfg.m)) if n else None
    theta = "n/a" if fit is None else f"{fit.theta_hat:.4f}"
    summary = (f"field={label} experiment=delta m={cfg.m} theta_hat={theta} "
               f"best={_fmt_theta(best)} conjecture=1/2")
    return ExperimentReport("delta", cfg, DELTA_COLUMNS, [s.to_dict() for s in samples], fit,
                            bounds, extra, summary)


RPRIME_COLUMNS = ("x", "I", "main", "delta", "ratio")
ZETA_RTOL = 1e-6


def rprime_main_constant(K: FieldDescriptor, r: int, ell: int):
    """(rho_K^ell / zeta_K(r ell), relative error bound of the zeta value)."""
    if r * ell < 2:
        raise PoleAt1("r * ell >= 2 is required (zeta_K has a pole at 1)")
    rho = laurent_of_zeta_K(K, 0).coeff(-1)
    z, err = zeta_K_value(K, complex(r * ell), rtol=ZETA_RTOL, return_error=True)
    return rho ** ell / z.real, float(err)


def run_rprime(cfg: ExperimentConfig) -> ExperimentReport:
    """V_ell^r(x, K) against rho_K^ell x^ell / zeta_K(r ell)."""
    K = _resolve_field(cfg)
    c, zerr = rprime_main_constant(K, cfg.r, cfg.ell)
    X = int(cfg.x_max)
    dk = cached_table(K, "piltz", 1, X, threads=cfg.threads)
    Q = max(1, int(X ** (1.0 / cfg.r)) + 1)
    mob = cached_table(K, "mobius_norm", 1, min(Q, X), threads=cfg.threads)
    grid = geometric_grid(cfg.x_min, X, cfg.grid_points, cfg.grid_ratio)
    samples = []
    for x in grid:
        V = count_rprime(K, cfg.r, cfg.ell, x, dk, mob)
        main = c * float(x) ** cfg.ell
        samples.append(DeltaSample(float(x), V, main, V - main, V / main))
    extra = {"main_constant": c, "zeta_rel_error_bound": zerr}
    fit = _fit_or_none([s.x for s in samples], [s.delta for s in samples], cfg, extra)
    bounds = _bound_dicts(rprime_exponents(K.degree, cfg.r, cfg.ell, cfg.beta or 0))
    theta = "n/a" if fit is None else f"{fit.theta_hat:.4f}"
    summary = (f"field={K.label} experiment=rprime r={cfg.r} ell={cfg.ell} "
               f"ratio={samples[-1].ratio:.6f} theta_hat={theta} "
               f"compare=" + ",".join(f"{b['theta_num']}/{b['theta_den']}({b['source']})" for b in bounds))
    return ExperimentReport("rprime", cfg, RPRIME_COLUMNS, [s.to_dict() for s in samples], fit,
                            bounds, extra, summary)


CONVEXITY_COLUMNS = ("t", "re", "im", "modulus", "theory_exponent")


def run_convexity(cfg: ExperimentConfig) -> ExperimentReport:
    K = _resolve_field(cfg)
    ts = np.geomspace(cfg.t_min, cfg.t_max, cfg.grid_points).tolist()
    rep = convexity_scan(K, cfg.sigma, ts, cfg.window, cfg.method)
    rows = [{"t": r.t, "re": r.value.real, "im": r.value.imag, "modulus": r.modulus,
             "theory_exponent": r.theory_exponent} for r in rep.rows]
    theta = "n/a" if rep.fit is None else f"{rep.fit.theta_hat:.4f}"
    summary = (f"field={K.label} experiment=convexity sigma={cfg.sigma} fitted={theta} "
               f"convexity={rep.theory_exponent:g}")
    return ExperimentReport("convexity", cfg, CONVEXITY_COLUMNS, rows, rep.fit, [], {}, summary)


ATKINSON_COLUMNS = ("y", "A", "B", "tau", "re", "im", "prediction", "residual", "residual_budget")


def run_atkinson(cfg: ExperimentConfig) -> ExperimentReport:
    res = atkinson_integral(cfg.y, cfg.A, cfg.B, cfg.tau)
    row = {"y": float(cfg.y), "A": float(cfg.A), "B": float(cfg.B), "tau": cfg.tau,
           "re": res.value.real, "im": res.value.imag, "prediction": res.prediction,
           "residual": res.residual, "residual_budget": res.residual_budget}
    summary = (f"experiment=atkinson y={cfg.y} value={res.value.real:.6f} "
               f"prediction={res.prediction:.6f} residual={res.residual:.3g} "
               f"budget={res.residual_budget:.3g}")
    return ExperimentReport("atkinson", cfg, ATKINSON_COLUMNS, [row], None, [], {}, summary)


EXPSUM_COLUMNS = ("index", "X", "M", "M1", "N", "N1", "abs_S", "wu_lhs", "wu_rhs", "wu_ratio",
                  "bordelles_lhs", "bordelles_rhs", "bordelles_ratio", "x_le_m", "nondegenerate")


def random_instances(count: int, seed: int, M: int = 32, N: int = 32, X: float = 100.0):
    """Unimodular random-phase instances on full dyadic ranges."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        a = np.exp(2j * np.pi * rng.random(M))
        b = np.exp(2j * np.pi * rng.random(N))
        out.append(BilinearInstance(X, 1.5, 0.5, M, 2 * M, N, 2 * N, a, b))
    return out


def run_expsum(cfg: ExperimentConfig) -> ExperimentReport:
    K = _resolve_field(cfg)
    F = cached_table(K, "f_kernel", cfg.m, 2 * int(cfg.S), threads=cfg.threads)
    res = prop_ideal_sum(K, cfg.m, cfg.x, cfg.S, F)
    rows = wu_bordelles_report(random_instances(cfg.instances, cfg.seed))
    extra = {"prop_ideal_sum": res.value, "raw_max": res.raw_max, "window": list(res.window),
             "windows_checked": res.windows_checked}
    summary = (f"field={K.label} experiment=expsum S={cfg.S} normalised_max={res.value:.6f} "
               f"window={res.window}")
    return ExperimentReport("expsum", cfg, EXPSUM_COLUMNS, rows, None, [], extra, summary)


OMEGA_COLUMNS = ("nu", "delta_num", "delta_den")


def named_group(name: str) -> galois.GaloisData:
    """Presets: Cn, Sn (natural action), Dn (dihedral on n points)."""
    kind, num = name[:1].upper(), name[1:]
    if not num.isdigit() or int(num) < 2:
        raise ConfigError(f"unknown group {name!r}")
    N = int(num)
    if kind == "C":
        G = galois.cyclic_group(N)
        return galois.GaloisData(G, (galois.identity(N),))
    if kind == "S":
        return galois.field_galois_data(galois.symmetric_group(N))
    if kind == "D":
        rot = tuple(list(range(2, N + 1)) + [1])
        refl = tuple([1] + list(range(N, 1, -1)))
        return galois.field_galois_data(galois.generate_group([rot, refl]))
    raise ConfigError(f"unknown group {name!r}")


def run_omega(cfg: ExperimentConfig) -> ExperimentReport:
    data = named_group(cfg.group)
    oc = galois.omega_constants(data, cfg.m)
    rows = [{"nu": v, "delta_num": d.numerator, "delta_den": d.denominator}
            for v, d in enumerate(oc.delta, start=1)]
    extra = {"R": oc.R, "kappa": oc.kappa, "lambda": oc.lam, "n": data.n, "order": len(data.G)}
    summary = (f"experiment=omega group={cfg.group} n={data.n} m={cfg.m} R={oc.R} "
               f"kappa={oc.kappa:.6f} lambda={oc.lam:.6f}")
    return ExperimentReport("omega", cfg, OMEGA_COLUMNS, rows, None, [], extra, summary)


CATALOG_COLUMNS = ("source", "theta_num", "theta_den", "theta", "log_power", "epsilon", "kind",
                   "valid", "best")


def run_catalog(cfg: ExperimentConfig) -> ExperimentReport:
    beta = None if cfg.beta is None else Fraction(cfg.beta).limit_denominator(10 ** 9)
    bounds = exponent_catalog(cfg.n, cfg.m, beta)
    rows = [b.to_dict() for b in bounds]
    summary = f"experiment=catalog n={cfg.n} m={cfg.m} best={_fmt_theta(_best(bounds))}"
    return ExperimentReport("catalog", cfg, CATALOG_COLUMNS, rows, None, rows, {}, summary)


RUNNERS = {
    "delta": run_delta,
    "rprime": run_rprime,
    "convexity": run_convexity,
    "atkinson": run_atkinson,
    "expsum": run_expsum,
    "omega": run_omega,
    "catalog": run_catalog,
}


def run(cfg: ExperimentConfig) -> ExperimentReport:
    return RUNNERS[cfg.kind](cfg)


def with_overrides(cfg: ExperimentConfig, **kw) -> ExperimentConfig:
    kw = {k: v for k, v in kw.items() if v is not None}
    return replace(cfg, **kw) if kw else cfg


def delta_rows_consistent(rows) -> bool:
    """I = main + delta up to one ulp of main, for every row with a count."""
    return all(r["I"] is None or abs(r["I"] - (r["main"] + r["delta"])) <= math.ulp(r["main"])
               for r in rows)
