"""Dense matrices over Q with exact row reduction.

Entries are :class:`fractions.Fraction`; nothing here touches floating
point.  Column indices returned by :func:`rref` are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, MalformedInput

Vector = tuple[Fraction, ...]


def to_fraction(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to Fraction.

    Floats are refused: a binary float rarely means the rational the user wrote.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise MalformedInput(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInput(f"not a rational: {x!r}") from exc
    raise MalformedInput(f"not a rational (use int, Fraction or 'p/q'): {x!r}")


def format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else (cols or 0)
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(len(rows), ncols, tuple(to_fraction(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, tuple(Fraction(int(i == j)) for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix.from_rows([self.column(j) for j in range(self.cols)], cols=self.rows)

    def select_columns(self, cols: Iterable[int]) -> "RationalMatrix":
        cols = list(cols)
        return RationalMatrix.from_rows([[self[i, j] for j in cols] for i in range(self.rows)], cols=len(cols))

    def stack(self, other: "RationalMatrix") -> "RationalMatrix":
        """Vertical concatenation ``self // other``."""
        if self.cols != other.cols:
            raise DimensionMismatch("column counts differ")
        return RationalMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def matvec(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.cols} columns")
        v = [to_fraction(x) for x in v]
        return tuple(sum((a * b for a, b in zip(self.row(i), v)), Fraction(0)) for i in range(self.rows))

    def to_json(self) -> list[list[str]]:
        return [[format_fraction(x) for x in self.row(i)] for i in range(self.rows)]

    @classmethod
    def from_json(cls, data) -> "RationalMatrix":
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise MalformedInput("matrix must be a JSON array of arrays")
        return cls.from_rows(data)


def _reduce(m: RationalMatrix) -> tuple[list[list[Fraction]], list[int]]:
    a = m.to_rows()
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        p = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: RationalMatrix) -> tuple[RationalMatrix, list[int]]:
    """Reduced row-echelon form and the list of pivot columns."""
    a, pivots = _reduce(m)
    return RationalMatrix.from_rows(a, cols=m.cols), pivots


def rank(m: RationalMatrix) -> int:
    return len(_reduce(m)[1])


def nullspace_basis(m: RationalMatrix) -> list[Vector]:
    """Free-variable basis of ``{v : m v = 0}``.

    One vector per free column ``f``: ``v[f] = 1``, other free entries 0,
    pivot entries read off the reduced rows.  Empty when the kernel is {0}.
    """
    a, pivots = _reduce(m)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -a[r][f]
        basis.append(tuple(v))
    return basis


def in_span(basis: Sequence[Sequence], v: Sequence) -> bool:
    """Whether ``v`` is a rational combination of the vectors in ``basis``."""
    if not basis:
        return all(to_fraction(x) == 0 for x in v)
    b = RationalMatrix.from_rows(basis)
    return rank(b) == rank(b.stack(RationalMatrix.from_rows([v])))


def solve_combination(basis: Sequence[Sequence], v: Sequence) -> Vector | None:
    """Coefficients ``c`` with ``sum c_k basis[k] == v``, or None if outside the span."""
    if not basis:
        return () if all(to_fraction(x) == 0 for x in v) else None
    k = len(basis)
    aug = RationalMatrix.from_rows([[basis[j][i] for j in range(k)] + [v[i]] for i in range(len(v))])
    a, pivots = _reduce(aug)
    if k in pivots:
        return None
    c = [Fraction(0)] * k
    for r, p in enumerate(pivots):
        c[p] = a[r][k]
    return tuple(c)
