"""
Reduced Burau representation for braidbook.
Provides the generator images, products of braid words, the t = -1
specialization f_*, Alexander polynomials of closures and knot determinants.

Convention: sigma_i acts as the identity except on row i, which reads
(t, -t, 1) in columns i-1, i, i+1 (missing columns dropped at the ends).
At n = 3, t = -1 this gives f_*(delta) = [[0, 1], [-1, 1]].
"""

import logging
from typing import Any, List, Tuple

from core.braid_core import BraidWord, closure_component_count
from core.errors import GeneratorIndexError, NotAKnotError, PreconditionError
from core.laurent import LaurentPoly, divide_exact, geometric_sum, normalize_symmetric
from core.linalg_exact import (
    ExactMatrix,
    Ring,
    cokernel_invariants,
    det,
    identity,
    sub,
)

logger = logging.getLogger(__name__)

_T = LaurentPoly.t()
_T_INV = LaurentPoly.monomial(1, -1)

# Row entries (left of diagonal, diagonal, right of diagonal) of each image.
_LAURENT_ROWS = {
    1: (_T, -_T, LaurentPoly.one()),
    -1: (LaurentPoly.one(), -_T_INV, _T_INV),
}
_MINUS_ONE_ROWS = {
    1: (-1, 1, 1),
    -1: (1, 1, -1),
}


def _check_generator(i: int, n: int) -> None:
    if n < 2:
        raise PreconditionError(f"a braid needs at least 2 strands, got {n}")
    if not 1 <= i <= n - 1:
        raise GeneratorIndexError(i, n)


def burau_generator(i: int, sign: int, n: int) -> ExactMatrix:
    """Image of sigma_i^sign as an (n-1) x (n-1) Laurent matrix."""
    _check_generator(i, n)
    if sign not in (1, -1):
        raise PreconditionError(f"generator sign must be +1 or -1, got {sign}")
    grid = identity(n - 1, Ring.LAURENT).to_lists()
    left, diagonal, right = _LAURENT_ROWS[sign]
    r = i - 1
    if r > 0:
        grid[r][r - 1] = left
    grid[r][r] = diagonal
    if r + 1 < n - 1:
        grid[r][r + 1] = right
    return ExactMatrix.from_rows(grid, Ring.LAURENT)


def _apply_generator(grid: List[List[Any]], r: int, row: Tuple[Any, Any, Any]) -> None:
    """
    Right-multiply grid in place by a generator image whose nontrivial row is r.

    Only columns r-1, r, r+1 change, so a product costs O(n) per letter.
    """
    left, diagonal, right = row
    size = len(grid)
    for line in grid:
        pivot = line[r]
        if not pivot:
            continue
        if r > 0:
            line[r - 1] = line[r - 1] + left * pivot
        if r + 1 < size:
            line[r + 1] = line[r + 1] + right * pivot
        line[r] = diagonal * pivot


def burau_word(w: BraidWord) -> ExactMatrix:
    """Ordered product of generator images; the empty word gives the identity."""
    grid = identity(w.strands - 1, Ring.LAURENT).to_lists()
    for e in w.letters:
        _apply_generator(grid, abs(e) - 1, _LAURENT_ROWS[1 if e > 0 else -1])
    return ExactMatrix.from_rows(grid, Ring.LAURENT)


def burau_at_minus1(w: BraidWord) -> ExactMatrix:
    """f_*(w): the Burau matrix specialized at t = -1, computed over the integers."""
    grid = identity(w.strands - 1).to_lists()
    for e in w.letters:
        _apply_generator(grid, abs(e) - 1, _MINUS_ONE_ROWS[1 if e > 0 else -1])
    return ExactMatrix.from_rows(grid, Ring.INT)


def _require_knot(w: BraidWord) -> None:
    components = closure_component_count(w)
    if components != 1:
        raise NotAKnotError(components)


def alexander_polynomial(w: BraidWord) -> LaurentPoly:
    """
    Alexander polynomial of the closure of w.

    det(I - B(w)) is divided exactly by 1 + t + ... + t^(n-1) and brought
    into symmetric form with positive value at t = 1.
    """
    _require_knot(w)
    n = w.strands
    characteristic = det(sub(identity(n - 1, Ring.LAURENT), burau_word(w)))
    logger.debug("det(I - B) for %d-strand word of length %d: %s", n, len(w), characteristic)
    return normalize_symmetric(divide_exact(characteristic, geometric_sum(n)))


def knot_determinant(w: BraidWord) -> int:
    """
    |Alexander polynomial at t = -1| of the closure.

    Odd strand counts use |det(I - f_*(w))| directly; for even counts the
    normalizing factor vanishes at t = -1 and the symbolic route is taken.
    """
    _require_knot(w)
    n = w.strands
    if n % 2:
        return abs(det(sub(identity(n - 1), burau_at_minus1(w))))
    return abs(alexander_polynomial(w).evaluate(-1))


def h1_group_structure(w: BraidWord) -> List[int]:
    """
    Derived group structure: invariant factors of coker(I - f_*(w)).

    An extension beyond the order computation; 0 stands for a Z summand.
    """
    if w.strands % 2 == 0:
        raise PreconditionError("the group readout needs an odd strand count")
    _require_knot(w)
    return cokernel_invariants(sub(identity(w.strands - 1), burau_at_minus1(w)))


# ---------------------------------------------------------------------------
# Closed forms of f_* on the distinguished braids
# ---------------------------------------------------------------------------

def _check_closed_form(n: int) -> int:
    if n < 3:
        raise PreconditionError(f"closed forms are stated for n >= 3, got {n}")
    return n - 1


def _check_odd_closed_form(n: int) -> int:
    size = _check_closed_form(n)
    if n % 2 == 0:
        raise PreconditionError(f"this closed form holds for odd n only, got {n}")
    return size


def closed_form_delta(n: int) -> ExactMatrix:
    """f_*(delta): top row (0, ..., 0, 1), -I below it, last column all ones."""
    size = _check_closed_form(n)
    grid = [[0] * size for _ in range(size)]
    for i in range(size):
        grid[i][size - 1] = 1
        if i:
            grid[i][i - 1] = -1
    return ExactMatrix.from_rows(grid)


def closed_form_delta_rev(n: int) -> ExactMatrix:
    """f_*(delta_rev): alternating first column, identity block above the diagonal."""
    size = _check_closed_form(n)
    grid = [[0] * size for _ in range(size)]
    for i in range(size):
        grid[i][0] = -1 if i % 2 else 1
        if i + 1 < size:
            grid[i][i + 1] = 1
    return ExactMatrix.from_rows(grid)


def closed_form_squared(n: int) -> ExactMatrix:
    """(f_*(delta delta_rev))^2 for odd n: identity plus first column (., 4, 0, 4, ..., 0, 4)."""
    size = _check_odd_closed_form(n)
    grid = identity(size).to_lists()
    for i in range(1, size, 2):
        grid[i][0] = 4
    return ExactMatrix.from_rows(grid)


def closed_form_power(n: int, l: int) -> ExactMatrix:
    """
    f_*(delta delta_rev)^(2l) f_*(delta) for odd n.

    Same shape as f_*(delta) except the last column alternates 4l+1 and 1
    below the top row.
    """
    if l < 0:
        raise PreconditionError(f"power closed form needs l >= 0, got {l}")
    _check_odd_closed_form(n)
    grid = closed_form_delta(n).to_lists()
    for i in range(1, n - 1, 2):
        grid[i][n - 2] = 4 * l + 1
    return ExactMatrix.from_rows(grid)


__all__ = [
    'burau_generator', 'burau_word', 'burau_at_minus1', 'alexander_polynomial',
    'knot_determinant', 'h1_group_structure', 'closed_form_delta',
    'closed_form_delta_rev', 'closed_form_squared', 'closed_form_power',
]
