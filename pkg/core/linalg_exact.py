"""
Exact linear algebra for braidbook.
Provides matrices over the integers and over Laurent polynomials,
fraction-free determinants and the Smith normal form.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, List, Sequence, Tuple

from core.errors import InvariantBreach, PreconditionError, RingMismatchError
from core.laurent import LaurentPoly, divide_exact

logger = logging.getLogger(__name__)

# Laurent determinants up to this size use cofactor expansion.
COFACTOR_THRESHOLD = 4


class Ring(Enum):
    """Scalar rings a matrix can live over."""
    INT = "int"
    LAURENT = "laurent"

    @property
    def zero(self) -> Any:
        return 0 if self is Ring.INT else LaurentPoly.zero()

    @property
    def one(self) -> Any:
        return 1 if self is Ring.INT else LaurentPoly.one()

    def contains(self, value: Any) -> bool:
        if self is Ring.INT:
            return isinstance(value, int) and not isinstance(value, bool)
        return isinstance(value, LaurentPoly)

    def exact_quotient(self, num: Any, den: Any) -> Any:
        if self is Ring.LAURENT:
            return divide_exact(num, den)
        quotient, remainder = divmod(num, den)
        if remainder:
            raise InvariantBreach(f"inexact integer division {num} / {den}")
        return quotient


@dataclass(frozen=True)
class ExactMatrix:
    """An immutable rows x cols matrix with entries from one tagged ring."""
    ring: Ring
    rows: int
    cols: int
    entries: Tuple[Tuple[Any, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise PreconditionError("matrix dimensions must be non-negative")
        grid = tuple(tuple(row) for row in self.entries)
        if len(grid) != self.rows or any(len(row) != self.cols for row in grid):
            raise RingMismatchError(
                f"entry grid does not match declared shape {self.rows}x{self.cols}")
        for row in grid:
            for value in row:
                if not self.ring.contains(value):
                    raise RingMismatchError(
                        f"entry {value!r} is not in the {self.ring.value} ring")
        object.__setattr__(self, 'entries', grid)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]], ring: Ring = Ring.INT) -> "ExactMatrix":
        if ring is Ring.LAURENT:
            rows = [[LaurentPoly.coerce(v) for v in row] for row in rows]
        n_rows = len(rows)
        n_cols = len(rows[0]) if n_rows else 0
        return cls(ring, n_rows, n_cols, tuple(tuple(row) for row in rows))

    def __getitem__(self, index: Tuple[int, int]) -> Any:
        i, j = index
        return self.entries[i][j]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def row(self, i: int) -> Tuple[Any, ...]:
        return self.entries[i]

    def column(self, j: int) -> Tuple[Any, ...]:
        return tuple(row[j] for row in self.entries)

    def to_lists(self) -> List[List[Any]]:
        return [list(row) for row in self.entries]

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return mul(self, other)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        return add(self, other)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return sub(self, other)

    def __neg__(self) -> "ExactMatrix":
        return neg(self)

    def __str__(self) -> str:
        cells = [[str(v) for v in row] for row in self.entries]
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join("[" + "  ".join(c.rjust(width) for c in row) + "]" for row in cells)


def identity(n: int, ring: Ring = Ring.INT) -> ExactMatrix:
    return ExactMatrix(ring, n, n, tuple(
        tuple(ring.one if i == j else ring.zero for j in range(n)) for i in range(n)))


def zeros(rows: int, cols: int, ring: Ring = Ring.INT) -> ExactMatrix:
    return ExactMatrix(ring, rows, cols, tuple(tuple(ring.zero for _ in range(cols))
                                               for _ in range(rows)))


def _check_same_ring(a: ExactMatrix, b: ExactMatrix) -> None:
    if a.ring is not b.ring:
        raise RingMismatchError(f"ring mismatch: {a.ring.value} vs {b.ring.value}")


def _check_square(m: ExactMatrix) -> None:
    if not m.is_square:
        raise RingMismatchError(f"expected a square matrix, got {m.rows}x{m.cols}")


def mul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Matrix product a * b."""
    _check_same_ring(a, b)
    if a.cols != b.rows:
        raise RingMismatchError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    zero = a.ring.zero
    columns = [b.column(j) for j in range(b.cols)]
    entries = []
    for row in a.entries:
        out_row = []
        for column in columns:
            total = zero
            for x, y in zip(row, column):
                if x and y:
                    total = total + x * y
            out_row.append(total)
        entries.append(tuple(out_row))
    return ExactMatrix(a.ring, a.rows, b.cols, tuple(entries))


def _elementwise(a: ExactMatrix, b: ExactMatrix, op: Callable[[Any, Any], Any]) -> ExactMatrix:
    _check_same_ring(a, b)
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise RingMismatchError(
            f"shape mismatch: {a.rows}x{a.cols} vs {b.rows}x{b.cols}")
    return ExactMatrix(a.ring, a.rows, a.cols, tuple(
        tuple(op(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a.entries, b.entries)))


def add(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return _elementwise(a, b, lambda x, y: x + y)


def sub(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return _elementwise(a, b, lambda x, y: x - y)


def neg(a: ExactMatrix) -> ExactMatrix:
    return map_entries(a, lambda x: -x, a.ring)


def transpose(a: ExactMatrix) -> ExactMatrix:
    return ExactMatrix(a.ring, a.cols, a.rows, tuple(a.column(j) for j in range(a.cols)))


def pow(m: ExactMatrix, k: int) -> ExactMatrix:  # noqa: A001
    """m^k for k >= 0 by repeated squaring."""
    _check_square(m)
    if k < 0:
        raise PreconditionError(f"matrix power needs k >= 0, got {k}")
    result = identity(m.rows, m.ring)
    base = m
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def map_entries(m: ExactMatrix, fn: Callable[[Any], Any], ring: Ring) -> ExactMatrix:
    """Apply fn entrywise, landing in ``ring``."""
    return ExactMatrix(ring, m.rows, m.cols, tuple(
        tuple(fn(v) for v in row) for row in m.entries))


def evaluate_at(m: ExactMatrix, x: int) -> ExactMatrix:
    """Substitute t = x in a Laurent matrix; x must be a unit (+1 or -1)."""
    if m.ring is not Ring.LAURENT:
        raise RingMismatchError("evaluate_at expects a Laurent matrix")
    if x not in (1, -1):
        raise PreconditionError("integer specialization needs t = 1 or t = -1")
    return map_entries(m, lambda p: int(p.evaluate(x)), Ring.INT)


# ---------------------------------------------------------------------------
# Determinants
# ---------------------------------------------------------------------------

def det_bareiss(m: ExactMatrix) -> Any:
    """Fraction-free (Bareiss) elimination; every division is exact."""
    _check_square(m)
    ring = m.ring
    n = m.rows
    if n == 0:
        return ring.one
    a = m.to_lists()
    sign = 1
    previous = ring.one
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[i], a[k] = a[k], a[i]
                    sign = -sign
                    break
            else:
                return ring.zero
        pivot = a[k][k]
        for i in range(k + 1, n):
            row_i, row_k = a[i], a[k]
            factor = row_i[k]
            for j in range(k + 1, n):
                value = pivot * row_i[j] - factor * row_k[j]
                row_i[j] = ring.exact_quotient(value, previous) if value else ring.zero
            row_i[k] = ring.zero
        previous = pivot
    result = a[n - 1][n - 1]
    return result if sign > 0 else -result


def det_cofactor(m: ExactMatrix) -> Any:
    """Laplace expansion along the first row (small matrices only)."""
    _check_square(m)

    def expand(rows: List[Tuple[Any, ...]]) -> Any:
        size = len(rows)
        if size == 0:
            return m.ring.one
        if size == 1:
            return rows[0][0]
        total = m.ring.zero
        for j, value in enumerate(rows[0]):
            if not value:
                continue
            minor = [row[:j] + row[j + 1:] for row in rows[1:]]
            term = value * expand(minor)
            total = total + term if j % 2 == 0 else total - term
        return total

    return expand(list(m.entries))


def det(m: ExactMatrix) -> Any:
    """Exact determinant: Bareiss over Z, cofactors for small Laurent matrices."""
    _check_square(m)
    if m.ring is Ring.LAURENT and m.rows <= COFACTOR_THRESHOLD:
        return det_cofactor(m)
    return det_bareiss(m)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SmithForm:
    """U * M * V == D with U, V unimodular and D diagonal with d_1 | d_2 | ..."""
    diagonal: Tuple[int, ...]
    U: ExactMatrix
    V: ExactMatrix
    D: ExactMatrix


def smith_normal_form(m: ExactMatrix) -> SmithForm:
    """
    Smith normal form of an integer matrix with its unimodular transforms.

    Pivots are the smallest nonzero absolute value of the active block,
    scanned in row-major order.
    """
    if m.ring is not Ring.INT:
        raise RingMismatchError("Smith normal form needs an integer matrix")
    rows, cols = m.rows, m.cols
    a = m.to_lists()
    u = identity(rows).to_lists()
    v = identity(cols).to_lists()

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(target: int, source: int, factor: int) -> None:
        a[target] = [x + factor * y for x, y in zip(a[target], a[source])]
        u[target] = [x + factor * y for x, y in zip(u[target], u[source])]

    def add_col(target: int, source: int, factor: int) -> None:
        for row in a:
            row[target] += factor * row[source]
        for row in v:
            row[target] += factor * row[source]

    for t in range(min(rows, cols)):
        while True:
            pivot_at = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j] and (pivot_at is None
                                    or abs(a[i][j]) < abs(a[pivot_at[0]][pivot_at[1]])):
                        pivot_at = (i, j)
            if pivot_at is None:
                break
            swap_rows(t, pivot_at[0])
            swap_cols(t, pivot_at[1])
            pivot = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // pivot))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // pivot))
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            offender = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                             if a[i][j] % pivot), None)
            if offender is None:
                break
            add_row(t, offender[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    diagonal = tuple(a[t][t] for t in range(min(rows, cols)))
    logger.debug("smith normal form diagonal %s", diagonal)
    return SmithForm(
        diagonal=diagonal,
        U=ExactMatrix.from_rows(u) if rows else identity(0),
        V=ExactMatrix.from_rows(v) if cols else identity(0),
        D=ExactMatrix.from_rows(a) if rows else zeros(0, cols),
    )


def cokernel_invariants(m: ExactMatrix) -> List[int]:
    """
    Invariant factors of coker(m) = Z^rows / image(m): the non-unit diagonal
    entries, with 0 standing for a free Z summand.
    """
    diagonal = list(smith_normal_form(m).diagonal)
    diagonal.extend([0] * (m.rows - len(diagonal)))
    return [d for d in diagonal if d != 1]


__all__ = [
    'Ring', 'ExactMatrix', 'SmithForm', 'COFACTOR_THRESHOLD', 'identity',
    'zeros', 'mul', 'add', 'sub', 'neg', 'transpose', 'pow', 'map_entries',
    'evaluate_at', 'det', 'det_bareiss', 'det_cofactor', 'smith_normal_form',
    'cokernel_invariants',
]
