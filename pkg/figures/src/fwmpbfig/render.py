"""Render sweep CSVs as publication-style log plots.

Consumes the CSV written by `fwmpb sweep` (header "x,g2_a,n_a,n_b,n_c",
gap rows carry "nan") and writes a raster image. The y axis is always
logarithmic; a vertical guide is drawn at x = 0 whenever the x range
spans zero, which marks the drive resonance on detuning sweeps.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

DPI = 200

Y_COLUMN_LABELS = {
    "g2_a": "g$^{(2)}$(0)",
    "n_a": "mean photon number",
}


class RenderError(ValueError):
    """Input CSV cannot be turned into a figure."""


@dataclass(frozen=True)
class FigureSpec:
    input_csv: str
    y_column: str
    output_path: str
    x_label: str = "x"
    y_label: str = field(default="")

    def resolved_y_label(self) -> str:
        return self.y_label or Y_COLUMN_LABELS.get(self.y_column, self.y_column)


def load_series(path: str, y_column: str) -> tuple[list[float], list[float]]:
    """Read (x, y) pairs, skipping gap rows. Raises RenderError."""
    try:
        with open(path, newline="", encoding="utf-8") as handle:
            reader = csv.reader(handle)
            try:
                header = next(reader)
            except StopIteration:
                raise RenderError(f"{path}: file is empty") from None
            if "x" not in header or y_column not in header:
                raise RenderError(
                    f"{path}: column {y_column!r} not in header {','.join(header)}")
            x_at = header.index("x")
            y_at = header.index(y_column)
            xs: list[float] = []
            ys: list[float] = []
            for row in reader:
                if len(row) <= max(x_at, y_at):
                    raise RenderError(f"{path}: short row {len(xs) + len(ys) + 2}")
                x = float(row[x_at])
                y = float(row[y_at])
                if math.isnan(x) or math.isnan(y):
                    continue
                xs.append(x)
                ys.append(y)
    except OSError as exc:
        raise RenderError(f"cannot read {path}: {exc}") from exc
    except ValueError as exc:
        if isinstance(exc, RenderError):
            raise
        raise RenderError(f"{path}: {exc}") from exc
    if not xs:
        raise RenderError(f"{path}: no plottable rows")
    return xs, ys


def build_figure(spec: FigureSpec):
    """Figure with the series plotted exactly as stored in the CSV."""
    xs, ys = load_series(spec.input_csv, spec.y_column)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(xs, ys, lw=1.2)
    ax.set_yscale("log")
    ax.set_xlabel(spec.x_label)
    ax.set_ylabel(spec.resolved_y_label())
    if min(xs) < 0.0 < max(xs):
        ax.axvline(0.0, color="0.5", lw=0.8, ls="--")
    ax.grid(True, which="both", alpha=0.25)
    fig.tight_layout()
    return fig


def render(spec: FigureSpec) -> str:
    fig = build_figure(spec)
    try:
        fig.savefig(spec.output_path, dpi=DPI)
    except OSError as exc:
        raise RenderError(f"cannot write {spec.output_path}: {exc}") from exc
    finally:
        plt.close(fig)
    return spec.output_path


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render",
        description="Render a sweep CSV as a log-scale raster plot.")
    parser.add_argument("--csv", required=True, help="sweep CSV to plot")
    parser.add_argument("--y", required=True, choices=("g2_a", "n_a"),
                        help="observable column for the y axis")
    parser.add_argument("--out", required=True, help="image file to write")
    parser.add_argument("--x-label", default="x")
    parser.add_argument("--y-label", default="")
    args = parser.parse_args(argv)
    spec = FigureSpec(input_csv=args.csv, y_column=args.y,
                      output_path=args.out, x_label=args.x_label,
                      y_label=args.y_label)
    try:
        render(spec)
    except RenderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
