"""Reading categorical observation tables and mean-threshold binarization."""

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .core import MAX_VARS, CapacityError


class DataFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Dataset:
    """Column-major categorical data.

    ``codes[i]`` holds the ``m`` observations of variable ``i`` as integers in
    ``[0, arities[i])``.
    """

    codes: np.ndarray
    arities: tuple[int, ...]
    names: tuple[str, ...]

    def __post_init__(self):
        codes = np.asarray(self.codes, dtype=np.int64)
        if codes.ndim != 2 or codes.shape[0] < 1 or codes.shape[1] < 1:
            raise DataFormatError("dataset needs at least one variable and one observation")
        if codes.shape[0] > MAX_VARS:
            raise CapacityError(f"{codes.shape[0]} variables exceeds the limit of {MAX_VARS}")
        if len(self.arities) != codes.shape[0] or len(self.names) != codes.shape[0]:
            raise DataFormatError("arities and names must have one entry per variable")
        for i, r in enumerate(self.arities):
            if r < 1:
                raise DataFormatError(f"variable {i} has arity {r}")
            if codes[i].min() < 0 or codes[i].max() >= r:
                raise DataFormatError(f"variable {i} has codes outside [0, {r})")
        codes.setflags(write=False)
        object.__setattr__(self, "codes", codes)

    @property
    def n(self) -> int:
        return self.codes.shape[0]

    @property
    def m(self) -> int:
        return self.codes.shape[1]

    def column(self, i: int) -> np.ndarray:
        return self.codes[i]


def _decode(text: Union[str, bytes]) -> str:
    if isinstance(text, bytes):
        return text.decode("utf-8")
    return text


def read_table(text, delimiter: Optional[str] = ",", has_header: bool = False):
    """Split delimited text into ``(names, rows)``.

    ``delimiter=None`` splits on runs of whitespace. Blank lines are skipped.
    Names are generated as ``X0..X{n-1}`` when there is no header.
    """
    lines = [ln for ln in _decode(text).splitlines() if ln.strip()]
    if not lines:
        raise DataFormatError("empty input")

    def split(line):
        if delimiter is None:
            return line.split()
        return [tok.strip() for tok in line.split(delimiter)]

    names = None
    if has_header:
        names = split(lines[0])
        lines = lines[1:]
        if not lines:
            raise DataFormatError("header present but no observations")
    rows = [split(ln) for ln in lines]
    width = len(rows[0]) if names is None else len(names)
    for lineno, row in enumerate(rows, start=2 if has_header else 1):
        if len(row) != width:
            raise DataFormatError(f"line {lineno}: expected {width} fields, got {len(row)}")
    if width > MAX_VARS:
        raise CapacityError(f"{width} variables exceeds the limit of {MAX_VARS}")
    if names is None:
        names = [f"X{i}" for i in range(width)]
    return names, rows


def encode(rows: Sequence[Sequence[str]], names: Sequence[str]) -> Dataset:
    """Map each column's distinct tokens to codes in first-appearance order."""
    n = len(names)
    codes = np.empty((n, len(rows)), dtype=np.int64)
    arities = []
    for i in range(n):
        seen: dict[str, int] = {}
        for j, row in enumerate(rows):
            codes[i, j] = seen.setdefault(row[i], len(seen))
        arities.append(len(seen))
    return Dataset(codes, tuple(arities), tuple(names))


def parse(text, delimiter: Optional[str] = ",", has_header: bool = False) -> Dataset:
    names, rows = read_table(text, delimiter, has_header)
    return encode(rows, names)


def binarize_mean(table, names: Optional[Sequence[str]] = None) -> Dataset:
    """Code each value 0 if strictly below its column mean, else 1.

    ``table`` is row-major (observations by variables), holding numbers or
    numeric strings.
    """
    try:
        values = np.array([[float(tok) for tok in row] for row in table], dtype=float)
    except ValueError as exc:
        raise DataFormatError(f"non-numeric token: {exc}") from None
    if values.ndim != 2 or values.size == 0:
        raise DataFormatError("empty or ragged numeric table")
    n = values.shape[1]
    if names is None:
        names = [f"X{i}" for i in range(n)]
    codes = np.empty((n, values.shape[0]), dtype=np.int64)
    arities = []
    for i in range(n):
        col = values[:, i]
        if np.all(col == col[0]):
            # the mean of a constant column may round away from the value itself
            codes[i] = 1
        else:
            codes[i] = (col >= col.mean()).astype(np.int64)
        arities.append(int(codes[i].max()) + 1)
    return Dataset(codes, tuple(arities), tuple(names))


def parse_binarized(text, delimiter: Optional[str] = ",", has_header: bool = False) -> Dataset:
    names, rows = read_table(text, delimiter, has_header)
    return binarize_mean(rows, names)


def render(data: Dataset, delimiter: str = ",", header: bool = True) -> str:
    """Write codes back out as delimited text; ``parse`` of the result is the identity."""
    lines = []
    if header:
        lines.append(delimiter.join(data.names))
    for j in range(data.m):
        lines.append(delimiter.join(str(int(c)) for c in data.codes[:, j]))
    return "\n".join(lines) + "\n"


def summary(data: Dataset) -> dict:
    return {"n": data.n, "m": data.m, "arities": list(data.arities)}
