"""Criterion fields, shell-wise supremum/limit estimation, and verdicts.

Each boundedness/compactness statement for the commutators reduces to a real
scalar field on the disk.  With ``phi`` a holomorphic self-map and ``g`` a
holomorphic symbol::

    KI(z)    = |phi#(z)| |g(phi(z)) - g(z)|
    KJ(z)    = (1 - |z|^2) |g'(phi(z)) phi'(z) - g'(z)|
    KJlog(z) = KJ(z) * ln(2 / (1 - |phi(z)|^2))
    Lg(z)    = (1 - |z|^2) |g'(z)| ln(2 / (1 - |z|^2))

(``Lg`` and ``LgLogBoundedness`` share a formula: the first is read as a
boundary *limit* condition, the second as a *sup* condition equivalent to
``J_g`` being bounded on the Bloch space.)

:func:`evaluate_criterion` buckets grid samples into exponential boundary
shells of the relevant limit variable — ``|phi(z)|`` for the phi-boundary
criteria, ``|z|`` otherwise — and estimates ``sup`` as the grid max and
``limsup`` as the max over the last three nonempty shells.  When the sampled
sup of ``|phi|`` stays away from 1 the limit set ``|phi(z)| -> 1`` is empty
and limit conditions hold vacuously.

:func:`classify` reduces reports to a :class:`Verdict` per named statement.
All sampled maxima are lower bounds of the true suprema, so verdicts are
evidence, not proofs: divergence requires a witness beyond the divergence
threshold *and* sustained shell growth; compactness requires the boundary
limsup estimate under ``compact_tol`` with a non-increasing tail (or a
vacuous boundary); anything else is Inconclusive.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .diskgeom import DiskGrid, SelfMap, schwarz_derivative

ONE_SIDED_NOTE = "sampled maxima are lower bounds of true suprema"


class CriterionKind(enum.Enum):
    KI = "KI"
    KJ = "KJ"
    KJLOG = "KJlog"
    LG = "Lg"
    LG_LOG_BOUNDEDNESS = "LgLogBoundedness"


#: Kinds whose boundary limit runs over |phi(z)| -> 1 rather than |z| -> 1.
PHI_BOUNDARY_KINDS = frozenset(
    {CriterionKind.KI, CriterionKind.KJ, CriterionKind.KJLOG}
)


class Conclusion(enum.Enum):
    BOUNDED = "Bounded"
    NOT_BOUNDED_EVIDENCE = "NotBoundedEvidence"
    COMPACT = "Compact"
    NOT_COMPACT_EVIDENCE = "NotCompactEvidence"
    INCONCLUSIVE = "Inconclusive"


class Membership(enum.Enum):
    IN_B0 = "InB0"
    NOT_IN_B0_EVIDENCE = "NotInB0Evidence"
    INCONCLUSIVE = "Inconclusive"


class AllShellsEmpty(ValueError):
    """Raised when a criterion is evaluated over an empty grid."""


class PreconditionFailed(RuntimeError):
    """A statement's hypothesis check itself shows divergence evidence."""

    def __init__(self, message: str, report: "CriterionReport"):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class Thresholds:
    """Decision thresholds for verdict reduction (all configurable)."""

    divergence: float = 1e3
    compact_tol: float = 1e-2

    def to_dict(self) -> dict:
        return {"divergence": self.divergence, "compact_tol": self.compact_tol}


DEFAULT_THRESHOLDS = Thresholds()


@dataclass(frozen=True)
class CriterionReport:
    """A criterion field sampled over a grid, reduced shell by shell.

    ``kind`` is a :class:`CriterionKind` for the named fields, or a plain
    string label for auxiliary fields (hypothesis checks use ``"|g|"`` and
    ``"(1-|z|^2)|g'|"``).  ``shell_sups`` lists (shell index, shell max) for
    nonempty shells only, ordered by shell index.
    """

    kind: CriterionKind | str
    sup_value: float
    arg_sup: complex
    shell_sups: tuple[tuple[int, float], ...]
    boundary_limsup_estimate: float
    vacuous_boundary: bool
    bucket_by: str = "z"

    @property
    def kind_label(self) -> str:
        return self.kind.value if isinstance(self.kind, CriterionKind) else self.kind

    def last_shell_sups(self, n: int = 3) -> tuple[float, ...]:
        return tuple(s for _, s in self.shell_sups[-n:])

    def to_dict(self) -> dict:
        return {
            "kind": self.kind_label,
            "sup_value": self.sup_value,
            "arg_sup": [self.arg_sup.real, self.arg_sup.imag],
            "shell_sups": [[k, s] for k, s in self.shell_sups],
            "boundary_limsup_estimate": self.boundary_limsup_estimate,
            "vacuous_boundary": self.vacuous_boundary,
            "bucket_by": self.bucket_by,
        }


@dataclass(frozen=True)
class Verdict:
    theorem_id: str
    conclusion: Conclusion
    evidence: tuple[CriterionReport, ...]
    thresholds: Thresholds
    notes: tuple[str, ...] = field(default=(ONE_SIDED_NOTE,))

    def to_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "conclusion": self.conclusion.value,
            "evidence": [r.to_dict() for r in self.evidence],
            "thresholds": self.thresholds.to_dict(),
            "notes": list(self.notes),
        }


# --------------------------------------------------------------------------
# pointwise fields


def criterion_value(kind: CriterionKind, phi, g, z):
    """Pointwise criterion value; vectorized over ``z`` arrays."""
    zs = np.asarray(z, dtype=complex)
    one_minus = 1.0 - np.abs(zs) ** 2
    if kind in PHI_BOUNDARY_KINDS:
        if phi is None:
            raise ValueError(f"criterion {kind.value} requires a self-map")
        w = np.asarray(phi(zs), dtype=complex)
        if kind is CriterionKind.KI:
            out = np.abs(schwarz_derivative(phi, zs)) * np.abs(g(w) - g(zs))
        else:
            kj = one_minus * np.abs(g.deriv(w) * phi.deriv(zs) - g.deriv(zs))
            if kind is CriterionKind.KJ:
                out = kj
            else:
                out = kj * np.log(2.0 / (1.0 - np.abs(w) ** 2))
    else:
        out = one_minus * np.abs(g.deriv(zs)) * np.log(2.0 / one_minus)
    out = np.broadcast_to(np.asarray(out, dtype=float), zs.shape)
    return float(out) if np.isscalar(z) or np.ndim(z) == 0 else out


def _shell_indices(moduli: np.ndarray, max_shell: int) -> np.ndarray:
    m = np.minimum(moduli, 1.0 - np.finfo(float).tiny)
    k = np.floor(-np.log2(1.0 - m))
    return np.clip(k, 0, max_shell).astype(int)


def _field_report(
    kind,
    values: np.ndarray,
    bucket_moduli: np.ndarray,
    grid: DiskGrid,
    bucket_by: str,
    sup_modulus: float | None = None,
) -> CriterionReport:
    j = int(np.argmax(values))
    ks = _shell_indices(bucket_moduli, grid.max_shell)
    shell_sups = tuple(
        (int(k), float(values[ks == k].max()))
        for k in range(grid.max_shell + 1)
        if np.any(ks == k)
    )
    vacuous = sup_modulus is not None and sup_modulus < 1.0 - 2.0 ** (-grid.max_shell)
    if vacuous:
        limsup = 0.0
    else:
        limsup = max(s for _, s in shell_sups[-3:])
    return CriterionReport(
        kind=kind,
        sup_value=float(values[j]),
        arg_sup=complex(grid.points[j]),
        shell_sups=shell_sups,
        boundary_limsup_estimate=limsup,
        vacuous_boundary=vacuous,
        bucket_by=bucket_by,
    )


def evaluate_criterion(
    kind: CriterionKind, phi, g, grid: DiskGrid, bucket_by: str = "auto"
) -> CriterionReport:
    """Sample the field over the grid and reduce it shell by shell.

    ``bucket_by`` is ``"phi"`` (shells of |phi(z)|), ``"z"`` (shells of |z|),
    or ``"auto"`` to pick the kind's own limit variable.
    """
    if grid.size == 0:
        raise AllShellsEmpty("criterion evaluation needs a nonempty grid")
    if bucket_by == "auto":
        bucket_by = "phi" if kind in PHI_BOUNDARY_KINDS else "z"
    pts = grid.points
    values = criterion_value(kind, phi, g, pts)
    if bucket_by == "phi":
        moduli = np.abs(np.broadcast_to(np.asarray(phi(pts)), pts.shape))
        sup_modulus = phi.sup_modulus_estimate if isinstance(phi, SelfMap) else float(moduli.max())
    else:
        moduli = np.abs(pts)
        sup_modulus = None  # the |z| -> 1 limit set is never empty
    return _field_report(kind, values, moduli, grid, bucket_by, sup_modulus)


# --------------------------------------------------------------------------
# trend detection and verdict reduction


def _sustained_growth(report: CriterionReport) -> bool:
    """Last three shell sups strictly increasing, second step keeping pace.

    A log-divergent field has nearly equal consecutive increments (ratio
    -> 1); a convergent field's increments shrink geometrically (ratio about
    1/2 on dyadic shells).  The 0.9 cutoff separates the two regimes.
    """
    s = report.last_shell_sups(3)
    if len(s) < 3:
        return False
    d1, d2 = s[1] - s[0], s[2] - s[1]
    floor = 1e-9 * (1.0 + s[2])
    return d1 > floor and d2 > floor and d2 >= 0.9 * d1


def _non_increasing_tail(report: CriterionReport) -> bool:
    s = report.last_shell_sups(3)
    return all(b <= a + 1e-12 for a, b in zip(s, s[1:]))


def bounded_conclusion(report: CriterionReport, th: Thresholds) -> Conclusion:
    growth = _sustained_growth(report)
    if report.sup_value > th.divergence and growth:
        return Conclusion.NOT_BOUNDED_EVIDENCE
    if report.sup_value <= th.divergence and not growth:
        return Conclusion.BOUNDED
    return Conclusion.INCONCLUSIVE


def compact_conclusion(report: CriterionReport, th: Thresholds) -> Conclusion:
    if report.vacuous_boundary:
        return Conclusion.COMPACT
    tail = report.last_shell_sups(3)
    if tail and min(tail) >= th.compact_tol:
        return Conclusion.NOT_COMPACT_EVIDENCE
    if report.boundary_limsup_estimate < th.compact_tol and _non_increasing_tail(report):
        return Conclusion.COMPACT
    return Conclusion.INCONCLUSIVE


# --------------------------------------------------------------------------
# statement registry


@dataclass(frozen=True)
class TheoremSpec:
    """How one named statement reduces to criterion reports."""

    theorem_id: str
    kind: CriterionKind | None
    mode: str  # "bounded" | "limit" | "bounded+limit" | "membership"
    bucket_by: str  # limit-variable shells: "phi" or "z"
    needs_phi: bool
    precheck: str | None  # None | "hinf" | "log_bloch"
    summary: str


THEOREMS: dict[str, TheoremSpec] = {
    t.theorem_id: t
    for t in (
        TheoremSpec("T3.1", CriterionKind.KI, "bounded", "phi", True, None,
                    "commutator with the I-type operator bounded on Bloch"),
        TheoremSpec("T3.2", CriterionKind.KI, "limit", "phi", True, "hinf",
                    "essential commutation with the I-type operator on Bloch"),
        TheoremSpec("C3.3", CriterionKind.KI, "limit", "phi", True, None,
                    "I-type commutator compact from H-infinity to Bloch"),
        TheoremSpec("C3.4", CriterionKind.KI, "limit", "z", True, None,
                    "I-type commutator into the little Bloch space"),
        TheoremSpec("T4.1a", CriterionKind.KJ, "bounded", "phi", True, None,
                    "J-type commutator bounded from H-infinity to Bloch"),
        TheoremSpec("T4.1b", CriterionKind.KJ, "bounded+limit", "phi", True, None,
                    "J-type commutator compact from H-infinity to Bloch"),
        TheoremSpec("C4.2", CriterionKind.KJ, "limit", "z", True, None,
                    "J-type commutator into the little Bloch space"),
        TheoremSpec("C4.3", None, "membership", "z", False, None,
                    "little Bloch symbol commutes essentially with every map"),
        TheoremSpec("P4.6", CriterionKind.KJLOG, "bounded", "phi", True, None,
                    "J-type commutator bounded on Bloch"),
        TheoremSpec("P4.7", CriterionKind.KJLOG, "bounded+limit", "phi", True, None,
                    "J-type commutator compact on Bloch"),
        TheoremSpec("T4.9", CriterionKind.LG, "limit", "z", False, "log_bloch",
                    "J-type essential commutation for every self-map"),
    )
}


def _bloch_field_report(g, grid: DiskGrid) -> CriterionReport:
    pts = grid.points
    values = (1.0 - np.abs(pts) ** 2) * np.abs(
        np.broadcast_to(np.asarray(g.deriv(pts)), pts.shape)
    )
    return _field_report("(1-|z|^2)|g'|", values, np.abs(pts), grid, "z")


def _hinf_field_report(g, grid: DiskGrid) -> CriterionReport:
    pts = grid.points
    values = np.abs(np.broadcast_to(np.asarray(g(pts)), pts.shape))
    return _field_report("|g|", values, np.abs(pts), grid, "z")


def little_bloch_membership(
    g, grid: DiskGrid, thresholds: Thresholds = DEFAULT_THRESHOLDS
) -> Membership:
    """Classify the trend of ``(1-|z|^2)|g'(z)|`` toward the boundary."""
    return _membership_from_report(_bloch_field_report(g, grid), thresholds)


def _membership_from_report(report: CriterionReport, th: Thresholds) -> Membership:
    tail = report.last_shell_sups(3)
    if tail and min(tail) >= th.compact_tol:
        return Membership.NOT_IN_B0_EVIDENCE
    if tail and max(tail) < th.compact_tol and _non_increasing_tail(report):
        return Membership.IN_B0
    return Membership.INCONCLUSIVE


def _run_precheck(name: str, g, grid: DiskGrid, th: Thresholds) -> CriterionReport:
    if name == "hinf":
        report = _hinf_field_report(g, grid)
        label = "symbol is not sup-norm bounded"
    else:
        report = evaluate_criterion(CriterionKind.LG_LOG_BOUNDEDNESS, None, g, grid)
        label = "J-type operator is not bounded on Bloch"
    if bounded_conclusion(report, th) is Conclusion.NOT_BOUNDED_EVIDENCE:
        raise PreconditionFailed(f"hypothesis check failed: {label}", report)
    return report


def classify(
    theorem_id: str,
    phi,
    g,
    grid: DiskGrid,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
) -> Verdict:
    """Reduce one named statement to a verdict for the pair (phi, g)."""
    try:
        spec = THEOREMS[theorem_id]
    except KeyError:
        raise ValueError(
            f"unknown theorem id {theorem_id!r}; expected one of {sorted(THEOREMS)}"
        ) from None
    if spec.needs_phi and phi is None:
        raise ValueError(f"{theorem_id} requires a self-map")

    notes = [ONE_SIDED_NOTE]
    evidence: list[CriterionReport] = []
    if spec.precheck is not None:
        evidence.append(_run_precheck(spec.precheck, g, grid, thresholds))

    if spec.mode == "membership":
        report = _bloch_field_report(g, grid)
        evidence.append(report)
        member = _membership_from_report(report, thresholds)
        if member is Membership.IN_B0:
            conclusion = Conclusion.COMPACT
            notes.append("symbol trends into the little Bloch space")
        else:
            conclusion = Conclusion.INCONCLUSIVE
            notes.append("sufficiency-only statement: membership " + member.value)
        return Verdict(theorem_id, conclusion, tuple(evidence), thresholds, tuple(notes))

    main = evaluate_criterion(spec.kind, phi, g, grid, bucket_by=spec.bucket_by)
    evidence.append(main)
    # Divergence of the sup happens toward |z| -> 1 (the field is continuous
    # on compact subsets), so growth is always detected on |z| shells even
    # when the limit variable is |phi(z)|.
    if spec.bucket_by == "z":
        growth_report = main
    else:
        growth_report = evaluate_criterion(spec.kind, phi, g, grid, bucket_by="z")
        evidence.append(growth_report)
    bounded = bounded_conclusion(growth_report, thresholds)

    if spec.mode == "bounded":
        conclusion = bounded
    elif spec.mode == "limit":
        if bounded is Conclusion.NOT_BOUNDED_EVIDENCE:
            conclusion = Conclusion.NOT_COMPACT_EVIDENCE
            notes.append("sup diverges, so the limit condition cannot hold")
        else:
            conclusion = compact_conclusion(main, thresholds)
    else:  # bounded+limit
        compact = compact_conclusion(main, thresholds)
        if bounded is Conclusion.NOT_BOUNDED_EVIDENCE or compact is Conclusion.NOT_COMPACT_EVIDENCE:
            conclusion = Conclusion.NOT_COMPACT_EVIDENCE
        elif bounded is Conclusion.BOUNDED and compact is Conclusion.COMPACT:
            conclusion = Conclusion.COMPACT
        else:
            conclusion = Conclusion.INCONCLUSIVE
    if main.vacuous_boundary and spec.mode != "bounded":
        notes.append("boundary limit set of |phi(z)| -> 1 is empty at this resolution")
    return Verdict(theorem_id, conclusion, tuple(evidence), thresholds, tuple(notes))
