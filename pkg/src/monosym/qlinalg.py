"""Dense exact linear algebra over the rationals.

Gauss-Jordan elimination on :class:`QMatrix`. Among the candidate pivots in a
column the entry with the smallest bit size is chosen, which keeps
intermediate numerators and denominators small.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polycore import as_rational, format_rational


class Inconsistent:
    """Sentinel returned by :func:`solve` for an unsolvable system."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INCONSISTENT"

    def __bool__(self):
        return False


INCONSISTENT = Inconsistent()

QVector = tuple  # tuple of Fraction


@dataclass(frozen=True)
class QMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major tuple of Fraction, length rows*cols

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries count must equal rows*cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "QMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        flat = []
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix")
            flat.extend(as_rational(v) for v in r)
        return cls(len(rows), cols, tuple(flat))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "QMatrix":
        if rows is None:
            rows = len(columns[0]) if columns else 0
        data = [[columns[c][r] for c in range(len(columns))] for r in range(rows)]
        return cls.from_rows(data, cols=len(columns))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls.from_rows([[int(r == c) for c in range(n)] for r in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    def row(self, r: int) -> tuple:
        return self.entries[r * self.cols:(r + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(r)) for r in range(self.rows)]

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r * self.cols + c]

    def transpose(self) -> "QMatrix":
        return QMatrix.from_rows(
            [[self[r, c] for r in range(self.rows)] for c in range(self.cols)], cols=self.rows
        )

    def matvec(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        v = [as_rational(x) for x in v]
        return tuple(
            sum((a * b for a, b in zip(self.row(r), v) if a), Fraction(0)) for r in range(self.rows)
        )

    def to_json_obj(self) -> list[list[str]]:
        return [[format_rational(x) for x in self.row(r)] for r in range(self.rows)]


def _bits(x: Fraction) -> int:
    return x.numerator.bit_length() + x.denominator.bit_length()


def _eliminate(a: list[list[Fraction]], ncols: int) -> list[int]:
    """In-place Gauss-Jordan on the first ``ncols`` columns; returns pivots."""
    nrows = len(a)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        best = None
        for i in range(r, nrows):
            x = a[i][c]
            if x and (best is None or _bits(x) < _bits(a[best][c])):
                best = i
        if best is None:
            continue
        a[r], a[best] = a[best], a[r]
        prow = a[r]
        inv = 1 / prow[c]
        if inv != 1:
            prow[:] = [x * inv for x in prow]
        for i in range(nrows):
            if i != r:
                f = a[i][c]
                if f:
                    row = a[i]
                    for k in range(c, len(row)):
                        if prow[k]:
                            row[k] -= f * prow[k]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: QMatrix) -> tuple[QMatrix, list[int]]:
    a = m.to_rows()
    pivots = _eliminate(a, m.cols)
    return QMatrix.from_rows(a, cols=m.cols), pivots


def rank(m: QMatrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: QMatrix) -> list[tuple]:
    """Standard generators of the null space, one per free column."""
    r, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for row, pc in enumerate(pivots):
            v[pc] = -r[row, f]
        basis.append(tuple(v))
    return basis


def solve(m: QMatrix, b: Sequence):
    """One exact solution of ``m x = b`` (free variables set to 0), or ``INCONSISTENT``."""
    if len(b) != m.rows:
        raise ValueError("right-hand side length must equal the row count")
    return LinearSystem(m).solve(b)


class LinearSystem:
    """Factor ``m`` once, then solve against many right-hand sides.

    Row-reduces ``[m | I]`` so that ``E m = R`` with ``R`` in reduced echelon
    form; solving is then a matrix-vector product with ``E``.
    """

    def __init__(self, m: QMatrix):
        self.matrix = m
        aug = [row + [Fraction(int(i == k)) for k in range(m.rows)] for i, row in enumerate(m.to_rows())]
        self.pivots = _eliminate(aug, m.cols)
        self.rank = len(self.pivots)
        self._transform = [row[m.cols:] for row in aug]

    def solve(self, b: Sequence):
        b = [as_rational(x) for x in b]
        if len(b) != self.matrix.rows:
            raise ValueError("right-hand side length must equal the row count")
        eb = [sum((t * y for t, y in zip(row, b) if t and y), Fraction(0)) for row in self._transform]
        if any(eb[self.rank:]):
            return INCONSISTENT
        x = [Fraction(0)] * self.matrix.cols
        for row, pc in enumerate(self.pivots):
            x[pc] = eb[row]
        return tuple(x)
