"""Reading numeric data files and checking the Floyd River reference summary."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = ["DataFileError", "parse_values", "read_values", "FLOYD_SUMMARY", "check_summary"]

_SPLIT = re.compile(r"[,\s]+")


class DataFileError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse_values(text: str) -> list[float]:
    """Numbers separated by newlines, commas or whitespace; ``#`` lines are comments.

    Anything that is not a number is an error rather than being skipped.
    """
    values = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        for tok in _SPLIT.split(stripped):
            if not tok:
                continue
            try:
                v = float(tok)
            except ValueError:
                raise DataFileError(f"not a number: {tok!r}", lineno) from None
            if not np.isfinite(v):
                raise DataFileError(f"not a finite number: {tok!r}", lineno)
            values.append(v)
    return values


def read_values(path) -> list[float]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DataFileError(f"cannot read {path}: {exc.strerror}") from None
    return parse_values(text)


@dataclass(frozen=True)
class SummaryCheck:
    statistic: str
    observed: float
    expected: float
    tolerance: float
    relative: bool

    @property
    def ok(self) -> bool:
        err = abs(self.observed - self.expected)
        if self.relative:
            return err <= self.tolerance * abs(self.expected)
        return err <= self.tolerance


# Published summary of the Floyd River flood series (39 years, 1935-1973).
# Mean is printed rounded to the unit; quartile conventions vary, hence 1 %.
FLOYD_SUMMARY = {
    "n": (39, 0.0, False),
    "min": (318.0, 0.0, False),
    "q1": (1590.0, 0.01, True),
    "median": (3570.0, 0.5, False),
    "mean": (6771.0, 0.5, False),
    "q3": (6725.0, 0.01, True),
    "max": (71500.0, 0.0, False),
}


def check_summary(values, reference=FLOYD_SUMMARY) -> list[SummaryCheck]:
    """Compare sample statistics against a reference table (linear-interpolation quartiles)."""
    x = np.asarray(values, dtype=float)
    if x.size == 0:
        observed = dict.fromkeys(reference, np.nan)
        observed["n"] = 0
    else:
        q1, med, q3 = np.percentile(x, [25, 50, 75])
        observed = {"n": x.size, "min": x.min(), "q1": q1, "median": med,
                    "mean": x.mean(), "q3": q3, "max": x.max()}
    return [SummaryCheck(k, float(observed[k]), float(exp), tol, rel)
            for k, (exp, tol, rel) in reference.items()]
