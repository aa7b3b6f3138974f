"""Run the curated map/symbol panels through every classifier and save reports.

Builds an experiment over the ten-map panel crossed with the symbol corpus,
classifies each case under all registered criteria, and writes both the JSON
report and the flat CSV table next to each other. Useful as a smoke run after
changing grid resolution or thresholds, and as a worked example of driving the
harness from code rather than the command line.
"""

import argparse
import json
import pathlib
import sys

from blochlab import (
    ExperimentSpec,
    G_CORPUS,
    TEN_MAP_PANEL,
    THEOREMS,
    run_classification,
    to_csv,
    to_json,
)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="Classify the map/symbol panel under every criterion."
    )
    parser.add_argument(
        "--out-dir", default="sweep_out", help="directory for the report files"
    )
    parser.add_argument(
        "--max-shell", type=int, default=10, help="outermost grid shell index"
    )
    parser.add_argument(
        "--base-angular", type=int, default=64, help="angular samples on shell 0"
    )
    parser.add_argument(
        "--theorems",
        nargs="*",
        default=sorted(THEOREMS),
        help="criterion ids to run (default: all registered)",
    )
    args = parser.parse_args(argv)

    spec = ExperimentSpec(
        phi_exprs=TEN_MAP_PANEL,
        g_exprs=G_CORPUS,
        theorem_ids=tuple(args.theorems),
        max_shell=args.max_shell,
        base_angular=args.base_angular,
    )
    report = run_classification(spec)

    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    json_path = out_dir / "panel_sweep.json"
    csv_path = out_dir / "panel_sweep.csv"
    spec_path = out_dir / "panel_sweep_spec.json"
    json_path.write_text(to_json(report.to_dict()), encoding="utf-8")
    csv_path.write_text(to_csv(report), encoding="utf-8")
    spec_path.write_text(json.dumps(spec.to_dict(), indent=2), encoding="utf-8")

    errors = [c for c in report.cases if c.error is not None]
    counts: dict[str, int] = {}
    for case in report.cases:
        label = case.verdict.conclusion.value if case.verdict else "error"
        counts[label] = counts.get(label, 0) + 1
    print(f"{len(report.cases)} cases in {report.elapsed_seconds:.2f}s -> {json_path}")
    for label in sorted(counts):
        print(f"  {label}: {counts[label]}")
    for case in errors:
        print(f"  error {case.theorem_id} {case.phi} {case.g}: {case.error}",
              file=sys.stderr)
    return 1 if errors else 0


if __name__ == "__main__":
    sys.exit(main())
