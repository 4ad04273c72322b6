"""Sample data model, CSV ingestion, and validation.

The CSV dialect is deliberately small: comma delimiter, optional single
header row, blank lines and lines starting with '#' skipped, cells parsed
as 64-bit floats (decimal or scientific notation). No quoting support.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DataError

__all__ = [
    "SampleMatrix",
    "ColumnSpec",
    "Finding",
    "parse_csv",
    "read_csv",
    "to_csv",
    "validate",
    "coincident_row_groups",
]


@dataclass
class SampleMatrix:
    """T observations of N real-valued variables, one observation per row.

    Construction enforces the shape contract (T >= 2, N >= 1, float64).
    Finiteness is reported by :func:`validate` and enforced where the
    numeric pipelines consume the data.
    """

    values: np.ndarray

    def __post_init__(self):
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        if values.ndim != 2:
            raise DataError(f"sample matrix must be 2-dimensional, got shape {values.shape}")
        if values.shape[0] < 2:
            raise DataError(f"need at least 2 observations, got {values.shape[0]}")
        if values.shape[1] < 1:
            raise DataError("need at least 1 variable column")
        self.values = values

    @property
    def T(self) -> int:
        return self.values.shape[0]

    @property
    def N(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class ColumnSpec:
    """Selects one CSV column by 0-based index, optionally checked by name."""

    index: int
    name: str | None = None

    def __post_init__(self):
        if self.index < 0:
            raise DataError(f"column index must be nonnegative, got {self.index}")


@dataclass(frozen=True)
class Finding:
    """One data-quality observation produced by :func:`validate`."""

    kind: str  # "non_finite" | "constant_column" | "duplicate_rows"
    message: str
    column: int | None = None
    rows: tuple[int, ...] = field(default=())


def _as_text(source) -> str:
    if hasattr(source, "read"):
        return source.read()
    return source


def parse_csv(source, has_header: bool = False, columns: list[ColumnSpec] | None = None) -> SampleMatrix:
    """Parse comma-delimited text into a SampleMatrix.

    ``source`` is a string or a readable text stream. When ``columns`` is
    given, exactly those columns are kept, in the given order; a spec with
    a name is cross-checked against the header when one exists. Errors
    name the offending row and column with 1-based file positions.
    """
    text = _as_text(source)
    if columns is not None and len(columns) == 0:
        raise DataError("empty column selection")

    header_names: list[str] | None = None
    rows: list[list[float]] = []
    width: int | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cells = [c.strip() for c in line.split(",")]
        if has_header and header_names is None:
            header_names = cells
            width = len(cells)
            continue
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            raise DataError(
                f"row {lineno}: expected {width} columns, found {len(cells)} (ragged row)"
            )
        parsed = []
        for col, cell in enumerate(cells, start=1):
            try:
                parsed.append(float(cell))
            except ValueError:
                raise DataError(
                    f"row {lineno}, column {col}: could not parse {cell!r} as a number"
                ) from None
        rows.append(parsed)

    if len(rows) < 2:
        raise DataError(f"need at least 2 data rows, found {len(rows)}")

    values = np.array(rows, dtype=np.float64)
    if columns is not None:
        n = values.shape[1]
        for spec in columns:
            if spec.index >= n:
                raise DataError(f"column index {spec.index} out of range for {n} columns")
            if spec.name is not None and header_names is not None:
                actual = header_names[spec.index]
                if actual != spec.name:
                    raise DataError(
                        f"column {spec.index} is named {actual!r}, not {spec.name!r}"
                    )
        values = values[:, [spec.index for spec in columns]]
    return SampleMatrix(values)


def read_csv(path, has_header: bool = False, columns: list[ColumnSpec] | None = None) -> SampleMatrix:
    """Read and parse a CSV file from disk."""
    with open(path, "r", encoding="utf-8") as f:
        return parse_csv(f, has_header=has_header, columns=columns)


def to_csv(m: SampleMatrix, header: list[str] | None = None) -> str:
    """Serialize a SampleMatrix to CSV text.

    Floats are written with shortest round-trip formatting, so
    parse_csv(to_csv(m)) reproduces the values bit for bit.
    """
    lines = []
    if header is not None:
        if len(header) != m.N:
            raise DataError(f"header has {len(header)} names for {m.N} columns")
        lines.append(",".join(header))
    for row in m.values:
        lines.append(",".join(repr(float(v)) for v in row))
    return "\n".join(lines) + "\n"


def coincident_row_groups(values: np.ndarray) -> list[tuple[int, ...]]:
    """Groups of row indices whose entries all agree exactly (IEEE ==).

    Rows containing NaN never match anything (NaN != NaN); negative and
    positive zero are the same value. Groups are ordered by first
    occurrence, indices ascending within each group.
    """
    values = np.ascontiguousarray(values, dtype=np.float64)
    finite_rows = np.flatnonzero(~np.any(np.isnan(values), axis=1))
    if finite_rows.size < 2:
        return []
    # adding 0.0 folds -0.0 into +0.0 so byte-wise grouping matches ==
    canon = values[finite_rows] + 0.0
    _, inverse, counts = np.unique(canon, axis=0, return_inverse=True, return_counts=True)
    inverse = inverse.reshape(-1)
    if not np.any(counts > 1):
        return []
    order = np.argsort(inverse, kind="stable")
    groups = []
    start = 0
    while start < order.size:
        stop = start
        gid = inverse[order[start]]
        while stop < order.size and inverse[order[stop]] == gid:
            stop += 1
        if stop - start > 1:
            groups.append(tuple(int(finite_rows[i]) for i in sorted(order[start:stop])))
        start = stop
    groups.sort(key=lambda g: g[0])
    return groups


def validate(m: SampleMatrix) -> list[Finding]:
    """Report data-quality findings; an empty list means clean data.

    Checks: non-finite entries, constant columns (zero variance), and
    exactly duplicated rows. Findings never raise.
    """
    findings: list[Finding] = []
    values = m.values

    for j in range(m.N):
        col = values[:, j]
        bad = np.flatnonzero(~np.isfinite(col))
        if bad.size:
            findings.append(
                Finding(
                    kind="non_finite",
                    column=j,
                    rows=tuple(int(i) for i in bad),
                    message=f"column {j} has {bad.size} non-finite entries (first at row {int(bad[0])})",
                )
            )

    for j in range(m.N):
        col = values[:, j]
        if np.all(col == col[0]):
            findings.append(
                Finding(
                    kind="constant_column",
                    column=j,
                    message=f"column {j} is constant (zero variance)",
                )
            )

    for group in coincident_row_groups(values):
        listed = ", ".join(str(i) for i in group)
        findings.append(
            Finding(
                kind="duplicate_rows",
                rows=group,
                message=f"rows {{{listed}}} are exact duplicates",
            )
        )
    return findings
