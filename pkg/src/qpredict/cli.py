"""Command-line driver: single-state reports, parameter sweeps and oracle runs.

    qpredict state STATE.json
    qpredict sweep --family adc --grid 0:0.5:50,0:0.5:50 --quantities k-bb84,k-star --out adc.csv
    qpredict oracle results12 --n 200
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Sequence

import numpy as np

from .channels import adc_state
from .correlations import f2_cjwr, f3_cjwr, f_haar, horodecki_m, ppt_min_eigenvalue
from .errors import DomainError, NonPhysical, QPredictError
from .haar import (
    DEFAULT_QUAD_N,
    avg_min_bayes_risk,
    avg_min_bayes_risk_quadrature,
    avg_min_inference_variance,
    avg_min_inference_variance_quadrature,
)
from .predictability import brute_force_min, min_bayes_risk, min_inference_variance
from .qkd import k_bb84, k_star_opt
from .state import FanoState, bell_diagonal, random_state, singular_values, validate
from .ttbar import PhasePoint, integrated_state, ttbar_state

EXIT_OK = 0
EXIT_ORACLE = 1
EXIT_PARSE = 2
EXIT_NONPHYSICAL = 3
EXIT_IO = 4

FAMILY_AXES = {
    "bell-diagonal": ("c1", "c2", "c3"),
    "adc": ("p_a", "p_b"),
    "ttbar": ("beta", "theta"),
    "integrated": ("c_perp", "c_z"),
}
FAMILY_FIXED = {"ttbar": {"w_gg": 0.0}}

QUANTITIES: dict[str, Callable[[FanoState, int], float]] = {
    "bayes-avg": lambda s, n: avg_min_bayes_risk(s, n).value,
    "variance-avg": lambda s, n: avg_min_inference_variance(s).value,
    "f2": lambda s, n: f2_cjwr(s),
    "f3": lambda s, n: f3_cjwr(s),
    "f-haar": lambda s, n: f_haar(s),
    "ppt": lambda s, n: ppt_min_eigenvalue(s),
    "horodecki": lambda s, n: horodecki_m(s),
    "k-bb84": lambda s, n: k_bb84(s),
    "k-star": lambda s, n: k_star_opt(s).k_star,
}

ORACLE_TOL = {"results12": 1e-8, "averages": 2e-3, "qkd": 1e-9}


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class SweepSpec:
    family: str
    grid: tuple[tuple[float, float, int], ...]
    quantities: tuple[str, ...]
    out: str
    quad_n: int = DEFAULT_QUAD_N
    seed: int = 0
    fixed: dict = field(default_factory=dict)
    workers: int = 1

    def __post_init__(self):
        if self.family not in FAMILY_AXES:
            raise SpecError(f"unknown family {self.family!r}; choose from {sorted(FAMILY_AXES)}")
        axes = FAMILY_AXES[self.family]
        if len(self.grid) != len(axes):
            raise SpecError(f"family {self.family} needs {len(axes)} grid axes {axes}, got {len(self.grid)}")
        for lo, hi, count in self.grid:
            if count < 2:
                raise SpecError(f"grid count must be at least 2, got {count}")
            if not lo < hi:
                raise SpecError(f"grid needs min < max, got {lo}:{hi}")
        if not self.quantities:
            raise SpecError("at least one quantity is required")
        unknown = [q for q in self.quantities if q not in QUANTITIES]
        if unknown:
            raise SpecError(f"unknown quantities {unknown}; choose from {sorted(QUANTITIES)}")
        allowed = FAMILY_FIXED.get(self.family, {})
        extra = set(self.fixed) - set(allowed)
        if extra:
            raise SpecError(f"family {self.family} has no fixed parameters {sorted(extra)}")
        if self.quad_n < 1 or self.workers < 1:
            raise SpecError("quad_n and workers must be positive")

    @property
    def axes(self) -> tuple[str, ...]:
        return FAMILY_AXES[self.family]

    def fixed_values(self) -> dict:
        return {**FAMILY_FIXED.get(self.family, {}), **self.fixed}

    def points(self) -> list[tuple[float, ...]]:
        """Grid points in row-major order (last axis varies fastest)."""
        axes = [np.linspace(lo, hi, count).tolist() for lo, hi, count in self.grid]
        return list(product(*axes))


def parse_grid(text: str) -> tuple[tuple[float, float, int], ...]:
    """Parse ``"min:max:count,min:max:count,..."``."""
    out = []
    for part in text.split(","):
        pieces = part.strip().split(":")
        if len(pieces) != 3:
            raise SpecError(f"grid axis must be min:max:count, got {part!r}")
        try:
            out.append((float(pieces[0]), float(pieces[1]), int(pieces[2])))
        except ValueError as exc:
            raise SpecError(f"bad grid axis {part!r}: {exc}") from None
    return tuple(out)


def _grid_from_json(value) -> tuple[tuple[float, float, int], ...]:
    if isinstance(value, str):
        return parse_grid(value)
    try:
        return tuple((float(lo), float(hi), int(n)) for lo, hi, n in value)
    except (TypeError, ValueError) as exc:
        raise SpecError(f"bad grid {value!r}: {exc}") from None


def _parse_fixed(items: Sequence[str]) -> dict:
    fixed = {}
    for item in items:
        key, sep, val = item.partition("=")
        if not sep:
            raise SpecError(f"fixed parameter must be name=value, got {item!r}")
        try:
            fixed[key.strip()] = float(val)
        except ValueError:
            raise SpecError(f"bad value in {item!r}") from None
    return fixed


def family_state(family: str, values: Sequence[float], fixed: dict) -> FanoState:
    if family == "bell-diagonal":
        return bell_diagonal(*values)
    if family == "adc":
        return adc_state(*values)
    if family == "ttbar":
        return ttbar_state(PhasePoint(values[0], values[1], fixed["w_gg"]))
    if family == "integrated":
        return integrated_state(*values)
    raise SpecError(f"unknown family {family!r}")


def evaluate_point(args) -> tuple[list[float], str]:
    """Requested quantities at one grid point, with a status flag."""
    family, values, fixed, quantities, quad_n = args
    try:
        s = family_state(family, values, fixed)
        return [float(QUANTITIES[q](s, quad_n)) for q in quantities], "ok"
    except NonPhysical:
        return [math.nan] * len(quantities), "nonphysical"
    except DomainError:
        return [math.nan] * len(quantities), "domain"


def _fmt(x: float) -> str:
    return "nan" if math.isnan(x) else format(x, ".17g")


def render_sweep(spec: SweepSpec) -> str:
    fixed = spec.fixed_values()
    jobs = [(spec.family, p, fixed, spec.quantities, spec.quad_n) for p in spec.points()]
    if spec.workers > 1:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            results = list(pool.map(evaluate_point, jobs, chunksize=max(1, len(jobs) // (4 * spec.workers))))
    else:
        results = [evaluate_point(job) for job in jobs]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([*spec.axes, *spec.quantities, "flag"])
    for point, (vals, flag) in zip(spec.points(), results):
        writer.writerow([*(_fmt(v) for v in point), *(_fmt(v) for v in vals), flag])
    return buf.getvalue()


def state_report(s: FanoState, quad_n: int = DEFAULT_QUAD_N) -> dict:
    """Analysis report with stable key names."""
    bayes = avg_min_bayes_risk(s, quad_n)
    var = avg_min_inference_variance(s)
    kr = k_star_opt(s)
    return {
        "valid": validate(s.t_a, s.t_b, s.c).valid,
        "singular_values": singular_values(s.c).tolist(),
        "f2": f2_cjwr(s),
        "f3": f3_cjwr(s),
        "f_haar": f_haar(s),
        "ppt_min_eig": ppt_min_eigenvalue(s),
        "horodecki_m": horodecki_m(s),
        "bayes_avg": bayes.value,
        "bayes_avg_method": bayes.method,
        "bayes_avg_assumption_verified": bayes.assumption_verified,
        "variance_avg": var.value,
        "variance_avg_method": var.method,
        "k_bb84": kr.k_bb84,
        "k_star": kr.k_star,
        "a1_star": kr.a1_star.tolist(),
        "a2_star": kr.a2_star.tolist(),
    }


def _random_direction(rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(3)
    return v / np.linalg.norm(v)


def run_oracle(suite: str, n: int, seed: int, quad_n: int = DEFAULT_QUAD_N) -> dict:
    """Cross-check closed forms against independent numerical routes on ``n`` random states."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    skipped = 0
    for i in range(n):
        s = random_state(seed * 100_003 + i)
        if suite == "results12":
            a = _random_direction(rng)
            for measure, exact in (("bayes", min_bayes_risk), ("variance", min_inference_variance)):
                brute, _ = brute_force_min(measure, s, a)
                worst = max(worst, abs(brute - exact(s, a).value))
        elif suite == "averages":
            var = avg_min_inference_variance(s).value
            worst = max(worst, abs(var - avg_min_inference_variance_quadrature(s, quad_n)) / var)
            bayes = avg_min_bayes_risk(s, quad_n)
            if bayes.assumption_verified:
                quad = avg_min_bayes_risk_quadrature(s, quad_n)
                worst = max(worst, abs(bayes.value - quad) / quad)
            else:
                skipped += 1
        elif suite == "qkd":
            r = k_star_opt(s)
            worst = max(worst, r.k_bb84 - r.k_star)
        else:
            raise SpecError(f"unknown oracle suite {suite!r}")
    tol = ORACLE_TOL[suite]
    return {
        "suite": suite,
        "n": n,
        "seed": seed,
        "max_deviation": worst,
        "tolerance": tol,
        "skipped": skipped,
        "passed": bool(worst <= tol),
    }


def _load_json(path: str):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _sweep_spec_from_args(args) -> SweepSpec:
    data = {}
    if args.spec:
        data = _load_json(args.spec)
        if not isinstance(data, dict):
            raise SpecError("sweep spec JSON must be an object")
    family = args.family or data.get("family")
    grid_raw = args.grid if args.grid is not None else data.get("grid")
    quantities = args.quantities if args.quantities is not None else data.get("quantities")
    out = args.out or data.get("out")
    if family is None or grid_raw is None or quantities is None or out is None:
        raise SpecError("family, grid, quantities and out are required")
    if isinstance(quantities, str):
        quantities = [q.strip() for q in quantities.split(",") if q.strip()]
    fixed = dict(data.get("fixed", {}))
    fixed.update(_parse_fixed(args.fixed or []))
    return SweepSpec(
        family=family,
        grid=_grid_from_json(grid_raw),
        quantities=tuple(quantities),
        out=out,
        quad_n=int(args.quad_n if args.quad_n is not None else data.get("quad_n", DEFAULT_QUAD_N)),
        seed=int(args.seed if args.seed is not None else data.get("seed", 0)),
        fixed=fixed,
        workers=int(args.workers if args.workers is not None else data.get("workers", 1)),
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qpredict", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_state = sub.add_parser("state", help="analyse a state given as JSON {t_a, t_b, c}")
    p_state.add_argument("path")
    p_state.add_argument("--quad-n", type=int, default=DEFAULT_QUAD_N)

    p_sweep = sub.add_parser("sweep", help="evaluate quantities on a parameter grid and write CSV")
    p_sweep.add_argument("--spec", help="sweep spec as JSON; explicit flags override it")
    p_sweep.add_argument("--family", choices=sorted(FAMILY_AXES))
    p_sweep.add_argument("--grid", help="min:max:count per axis, comma separated")
    p_sweep.add_argument("--quantities", help="comma-separated subset of " + ",".join(QUANTITIES))
    p_sweep.add_argument("--out")
    p_sweep.add_argument("--quad-n", type=int)
    p_sweep.add_argument("--seed", type=int)
    p_sweep.add_argument("--fixed", action="append", help="fixed family parameter, e.g. w_gg=0.5")
    p_sweep.add_argument("--workers", type=int)

    p_oracle = sub.add_parser("oracle", help="cross-check closed forms on random states")
    p_oracle.add_argument("suite", choices=sorted(ORACLE_TOL))
    p_oracle.add_argument("--n", type=int, default=100)
    p_oracle.add_argument("--seed", type=int, default=0)
    p_oracle.add_argument("--quad-n", type=int, default=DEFAULT_QUAD_N)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "state":
            try:
                data = _load_json(args.path)
            except OSError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_IO
            s = FanoState.from_dict(data)
            print(json.dumps(state_report(s, args.quad_n), indent=2))
            return EXIT_OK
        if args.command == "sweep":
            spec = _sweep_spec_from_args(args)
            text = render_sweep(spec)
            try:
                with open(spec.out, "w", encoding="utf-8", newline="") as fh:
                    fh.write(text)
            except OSError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_IO
            return EXIT_OK
        if args.n < 10:
            raise SpecError("oracle runs need n >= 10")
        summary = run_oracle(args.suite, args.n, args.seed, args.quad_n)
        print(json.dumps(summary, indent=2))
        return EXIT_OK if summary["passed"] else EXIT_ORACLE
    except NonPhysical as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONPHYSICAL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (SpecError, json.JSONDecodeError, KeyError, TypeError, ValueError, QPredictError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
