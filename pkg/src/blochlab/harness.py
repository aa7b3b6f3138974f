"""Experiment orchestration: built-in panels, suite runs, and report emission.

The built-in panels fix the maps and symbols every cross-module check runs
against: eight disk automorphisms, three strict shrinkers, fifteen rotations
(angles ``2 pi k / 16``), the ten-map classification panel (automorphisms
plus two shrinkers), and symbol corpora for ``g`` and the test functions
``f``.  The near-boundary log symbol uses ``c = 0.999`` in ``log(2/(1-cz))``
so every sample stays inside the analyticity domain while the divergence
trend is still visible at shell resolution.

Reports are plain dicts rendered by a small deterministic JSON emitter that
writes every real with 17 significant digits (the stdlib encoder's shortest
round-trip floats would be non-lossy too, but the fixed format makes byte
identity across runs trivial to check).  CSV output is reserved for sweep
results, one row per (phi, g, theorem) case.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .criteria import (
    DEFAULT_THRESHOLDS,
    CriterionKind,
    CriterionReport,
    Membership,
    PreconditionFailed,
    THEOREMS,
    Thresholds,
    Verdict,
    classify,
    compact_conclusion,
    Conclusion,
    evaluate_criterion,
    little_bloch_membership,
)
from .diskgeom import (
    DEFAULT_BASE_ANGULAR,
    DEFAULT_MAX_SHELL,
    DiskGrid,
    NotASelfMap,
    SelfMap,
    make_grid,
    shell_radius,
    validate_self_map,
)
from .exprdsl import AnalyticFn, ExprError, analytic
from .operators import QuadratureError
from .series import coeffs_from_samples, recovery_count

SCHEMA_VERSION = 1

ROTATION_ANGLES: tuple[float, ...] = tuple(2.0 * math.pi * k / 16 for k in range(1, 16))

AUTOMORPHISM_PANEL: tuple[str, ...] = (
    "mobius(0.5)",
    "mobius(-0.5)",
    "mobius(0.3i)",
    "mobius(-0.6i)",
    "mobius(complex(0.2,0.4))",
    "mobius(0.8)",
    "-mobius(0.7)",
    "mobius(complex(-0.35,0.15))",
)

SHRINKER_PANEL: tuple[str, ...] = ("z/2", "z^2/2", "(z+0.3)/2")

ROTATION_PANEL: tuple[str, ...] = tuple(f"exp({t!r}i)*z" for t in ROTATION_ANGLES)

TEN_MAP_PANEL: tuple[str, ...] = AUTOMORPHISM_PANEL + ("z/2", "(z+0.3)/2")

G_CORPUS: tuple[str, ...] = (
    "1",
    "complex(0.25,-0.5)",
    "z",
    "z^2",
    "mobius(0.5)",
    "1-mobius(0.7)",
    "log(2/(1-0.5*z))",
    "log(2/(1-0.9*z))",
    "log(2/(1-0.999*z))",
)

POLYNOMIAL_G_CORPUS: tuple[str, ...] = (
    "1",
    "z",
    "z^2",
    "z^3-z+0.5",
    "z^4",
    "0.25*z^4-z^2+complex(0,1)*z",
)

BLOCH_F_CORPUS: tuple[str, ...] = (
    "z",
    "z^2",
    "mobius(0.5)",
    "mobius(-0.3)",
    "1-mobius(0.7)",
    "log(2/(1-0.9*z))",
)

HINF_F_CORPUS: tuple[str, ...] = (
    "1",
    "z",
    "mobius(0.5)",
    "1-mobius(0.7)",
    "(1-0.81)/(1-0.9*z)",
    "mobius(0.6)*(1-0.36)/(1-0.6*z)",
)


# --------------------------------------------------------------------------
# experiment specs and suite reports


@dataclass(frozen=True)
class ExperimentSpec:
    phi_exprs: tuple[str, ...]
    g_exprs: tuple[str, ...]
    theorem_ids: tuple[str, ...]
    max_shell: int = DEFAULT_MAX_SHELL
    base_angular: int = DEFAULT_BASE_ANGULAR
    thresholds: Thresholds = field(default_factory=Thresholds)
    output: str = "json"

    def __post_init__(self):
        for name in ("phi_exprs", "g_exprs", "theorem_ids"):
            value = tuple(getattr(self, name))
            object.__setattr__(self, name, value)
            if not value:
                raise ValueError(f"{name} must be nonempty")
        unknown = [t for t in self.theorem_ids if t not in THEOREMS]
        if unknown:
            raise ValueError(f"unknown theorem ids: {unknown}")
        if self.max_shell < 4 or self.base_angular < 64:
            raise ValueError("grid parameters out of range (max_shell >= 4, base_angular >= 64)")
        if self.output not in ("json", "csv"):
            raise ValueError(f"output must be json or csv, got {self.output!r}")

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentSpec":
        grid = data.get("grid", {})
        thresholds = data.get("thresholds", {})
        return cls(
            phi_exprs=tuple(data["phi"]),
            g_exprs=tuple(data["g"]),
            theorem_ids=tuple(data["theorems"]),
            max_shell=int(grid.get("max_shell", DEFAULT_MAX_SHELL)),
            base_angular=int(grid.get("base_angular", DEFAULT_BASE_ANGULAR)),
            thresholds=Thresholds(
                divergence=float(thresholds.get("divergence", DEFAULT_THRESHOLDS.divergence)),
                compact_tol=float(thresholds.get("compact_tol", DEFAULT_THRESHOLDS.compact_tol)),
            ),
            output=data.get("output", "json"),
        )

    @classmethod
    def from_json_file(cls, path: str) -> "ExperimentSpec":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        return {
            "phi": list(self.phi_exprs),
            "g": list(self.g_exprs),
            "theorems": list(self.theorem_ids),
            "grid": {"max_shell": self.max_shell, "base_angular": self.base_angular},
            "thresholds": self.thresholds.to_dict(),
            "output": self.output,
        }


@dataclass(frozen=True)
class CaseResult:
    theorem_id: str
    phi: str
    g: str
    verdict: Verdict | None = None
    error: str | None = None

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.theorem_id, self.phi, self.g)

    def to_dict(self) -> dict:
        out: dict = {"theorem_id": self.theorem_id, "phi": self.phi, "g": self.g}
        if self.verdict is not None:
            out["verdict"] = self.verdict.to_dict()
        if self.error is not None:
            out["error"] = self.error
        return out


@dataclass(frozen=True)
class SuiteReport:
    cases: tuple[CaseResult, ...]
    invariants: tuple[dict, ...]
    config: dict
    elapsed_seconds: float

    def to_dict(self, include_timing: bool = True) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "config": self.config,
            "cases": [c.to_dict() for c in self.cases],
            "invariants": list(self.invariants),
        }
        if include_timing:
            out["elapsed_seconds"] = self.elapsed_seconds
        return out


def run_classification(spec: ExperimentSpec) -> SuiteReport:
    """Classify every (theorem, phi, g) case; per-case errors stay in-report."""
    start = time.perf_counter()
    grid = make_grid(spec.max_shell, spec.base_angular)

    maps: dict[str, SelfMap | Exception] = {}
    for src in dict.fromkeys(spec.phi_exprs):
        try:
            maps[src] = validate_self_map(analytic(src), grid)
        except (ExprError, NotASelfMap, ValueError) as exc:
            maps[src] = exc
    symbols: dict[str, AnalyticFn | Exception] = {}
    for src in dict.fromkeys(spec.g_exprs):
        try:
            symbols[src] = analytic(src)
        except ExprError as exc:
            symbols[src] = exc

    cases = []
    for theorem_id in spec.theorem_ids:
        for phi_src in spec.phi_exprs:
            for g_src in spec.g_exprs:
                phi, g = maps[phi_src], symbols[g_src]
                if isinstance(phi, Exception):
                    cases.append(CaseResult(theorem_id, phi_src, g_src, error=f"phi: {phi}"))
                    continue
                if isinstance(g, Exception):
                    cases.append(CaseResult(theorem_id, phi_src, g_src, error=f"g: {g}"))
                    continue
                try:
                    verdict = classify(theorem_id, phi, g, grid, spec.thresholds)
                    cases.append(CaseResult(theorem_id, phi_src, g_src, verdict=verdict))
                except (PreconditionFailed, QuadratureError, ValueError) as exc:
                    cases.append(CaseResult(theorem_id, phi_src, g_src, error=str(exc)))
    cases.sort(key=lambda c: c.key)
    config = {
        "grid": {"max_shell": spec.max_shell, "base_angular": spec.base_angular},
        "thresholds": spec.thresholds.to_dict(),
        "output": spec.output,
    }
    return SuiteReport(
        cases=tuple(cases),
        invariants=(),
        config=config,
        elapsed_seconds=time.perf_counter() - start,
    )


# --------------------------------------------------------------------------
# rotation-averaging coherence check


@dataclass(frozen=True)
class RotationAverageOutcome:
    """Coherence data tying the rotation criteria to symbol membership.

    ``witness_t is None`` means every rotation's criterion trends to zero
    ("ConsistentWithB0" when the membership agrees); otherwise the first
    failing rotation is the witness.  ``aliased_max_defect`` is the largest
    violation of the discrete-average inequality

        mean_k (1-|z|^2)|g'(e^{i t_k} z) e^{i t_k} - g'(z)|
            >= (1-|z|^2)|A(z) - g'(z)|,

    where the 16-point average of the rotated derivatives equals the aliased
    sub-series A(z) = sum over 16 | n of n a_n z^{n-1}, with the a_n recovered
    from circle samples.  Checked for |z| <= 0.75 where the degree-capped
    truncation tail is negligible.
    """

    membership: Membership
    rotation_limsups: tuple[tuple[float, float], ...]
    witness_t: float | None
    witness_report: CriterionReport | None
    aliased_max_defect: float
    consistent: bool

    @property
    def classification(self) -> str:
        if self.witness_t is None:
            return "ConsistentWithB0" if self.consistent else "Inconsistent"
        return f"Witness(t={self.witness_t:.6g})"


def rotation_average_check(
    g: AnalyticFn,
    degree: int,
    grid: DiskGrid,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
) -> RotationAverageOutcome:
    series = coeffs_from_samples(g, radius=0.5, count=recovery_count(degree), degree=degree)

    limsups = []
    witness_t: float | None = None
    witness_report: CriterionReport | None = None
    for t in ROTATION_ANGLES:
        rotation = validate_self_map(
            analytic(f"exp({t!r}i)*z"), grid
        )
        report = evaluate_criterion(CriterionKind.KJ, rotation, g, grid)
        limsups.append((t, report.boundary_limsup_estimate))
        if witness_t is None and compact_conclusion(report, thresholds) is not Conclusion.COMPACT:
            witness_t, witness_report = t, report

    membership = little_bloch_membership(g, grid, thresholds)
    consistent = not (witness_t is None and membership is Membership.NOT_IN_B0_EVIDENCE)

    pts = grid.points[np.abs(grid.points) <= 0.75]
    one_minus = 1.0 - np.abs(pts) ** 2
    avg = np.zeros(pts.shape, dtype=float)
    for k in range(16):
        w = complex(np.exp(2j * math.pi * k / 16))
        avg += one_minus * np.abs(
            np.broadcast_to(np.asarray(g.deriv(w * pts) * w - g.deriv(pts)), pts.shape)
        )
    avg /= 16.0
    aliased = np.zeros(pts.shape, dtype=complex)
    for n in range(16, series.degree_bound + 1, 16):
        aliased += n * series.coeffs[n] * pts ** (n - 1)
    rhs = one_minus * np.abs(aliased - np.broadcast_to(np.asarray(g.deriv(pts)), pts.shape))
    defect = float(np.max(rhs - avg))

    return RotationAverageOutcome(
        membership=membership,
        rotation_limsups=tuple(limsups),
        witness_t=witness_t,
        witness_report=witness_report,
        aliased_max_defect=defect,
        consistent=consistent,
    )


# --------------------------------------------------------------------------
# boundary log-ratio check


@dataclass(frozen=True)
class HospitalRatioReport:
    """Per-shell maxima of (ln2 - ln(1-|phi(z)|^2)) / (ln2 - ln(1-|z|^2)).

    The ratio tends to 1 along |z| -> 1 for every self-map.  The allowed
    excess over 1 combines a resolution term 0.1 * 2^(-k/2) with the exact
    finite-radius correction ln((1+s)/(1-s)) / (ln2 - ln(1-r_k^2)) forced by
    the modulus bound |phi(z)| <= (|z|+s)/(1+|z|s), s = |phi(0)|; the second
    term vanishes in the limit and is identically 0 when phi fixes 0.
    """

    phi_source: str
    phi0_modulus: float
    rows: tuple[tuple[int, float, float], ...]  # (shell, max ratio, allowed)
    passed: bool
    max_excess: float


def hospital_slack(k: int, phi0_modulus: float) -> float:
    s = phi0_modulus
    denom = math.log(2.0 / (1.0 - shell_radius(k) ** 2))
    extra = math.log((1.0 + s) / (1.0 - s)) / denom if s > 0.0 else 0.0
    return 0.1 * 2.0 ** (-k / 2.0) + extra


def hospital_ratio_check(phi: SelfMap, grid: DiskGrid) -> HospitalRatioReport:
    pts = grid.points
    w = np.broadcast_to(np.asarray(phi(pts)), pts.shape)
    num = np.log(2.0 / (1.0 - np.abs(w) ** 2))
    den = np.log(2.0 / (1.0 - np.abs(pts) ** 2))
    ratio = num / den
    s = abs(complex(phi(0.0)))
    rows = []
    max_excess = -math.inf
    for k in range(grid.max_shell + 1):
        mask = grid.shell_index == k
        shell_max = float(ratio[mask].max())
        allowed = 1.0 + hospital_slack(k, s)
        rows.append((k, shell_max, allowed))
        max_excess = max(max_excess, shell_max - allowed)
    return HospitalRatioReport(
        phi_source=phi.source,
        phi0_modulus=s,
        rows=tuple(rows),
        passed=max_excess <= 0.0,
        max_excess=max_excess,
    )


# --------------------------------------------------------------------------
# report emission


def _render_json(obj, out: list[str], indent: int) -> None:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, value) in enumerate(obj.items()):
            out.append(f"{pad}  {json.dumps(str(key))}: ")
            _render_json(value, out, indent + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        out.append("[\n")
        for i, value in enumerate(obj):
            out.append(pad + "  ")
            _render_json(value, out, indent + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(pad + "]")
    elif isinstance(obj, bool) or obj is None:
        out.append(json.dumps(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format(obj, ".17g") if math.isfinite(obj) else json.dumps(obj))
    else:
        out.append(json.dumps(str(obj)))


def to_json(payload: dict) -> str:
    """Deterministic JSON with every finite real at 17 significant digits."""
    out: list[str] = []
    _render_json(payload, out, 0)
    out.append("\n")
    return "".join(out)


CSV_COLUMNS = (
    "theorem_id",
    "phi",
    "g",
    "conclusion",
    "sup_value",
    "boundary_limsup_estimate",
    "vacuous_boundary",
    "error",
)


def to_csv(report: SuiteReport) -> str:
    """One row per case: verdict headline plus the main criterion numbers."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for case in report.cases:
        if case.verdict is None:
            writer.writerow([case.theorem_id, case.phi, case.g, "", "", "", "", case.error])
            continue
        main = case.verdict.evidence[-1] if case.verdict.evidence else None
        for rep in case.verdict.evidence:
            if isinstance(rep.kind, CriterionKind):
                main = rep
                break
        writer.writerow(
            [
                case.theorem_id,
                case.phi,
                case.g,
                case.verdict.conclusion.value,
                format(main.sup_value, ".17g") if main else "",
                format(main.boundary_limsup_estimate, ".17g") if main else "",
                str(main.vacuous_boundary).lower() if main else "",
                "",
            ]
        )
    return buf.getvalue()
