"""
Double branched cover bookkeeping for braidbook.
Provides pages of the branched cover of the punctured disc, open book
reports for braids, and the verification sweeps for the genus/FDTC theorem
and the H_1 order formula 4k^2 + 4k - 1.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from core.braid_core import (
    BraidWord,
    beta_family,
    closure_component_count,
    compose,
    delta,
    delta_rev,
    is_positive_word,
    markov_stabilize,
    self_linking_number,
)
from core.burau import (
    alexander_polynomial,
    burau_at_minus1,
    closed_form_delta,
    closed_form_delta_rev,
    closed_form_power,
    closed_form_squared,
    knot_determinant,
)
from core.errors import NotAKnotError, PreconditionError, UsageError
from core.laurent import LaurentPoly
from core.linalg_exact import mul
from core.orderings import DEFAULT_STEP_LIMIT, FdtcEstimate, bh_fdtc, fdtc

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Page:
    """Fiber surface of the open book induced by an n-strand braid."""
    strands: int
    genus: int
    boundary_components: int
    euler_characteristic: int


def page_of(n: int) -> Page:
    """
    Double cover of the disc branched at n points: genus (n-1)/2 with one
    boundary for odd n, genus (n-2)/2 with two boundaries for even n.
    """
    if n < 2:
        raise PreconditionError(f"pages are defined for n >= 2 strands, got {n}")
    if n % 2:
        genus, boundary = (n - 1) // 2, 1
    else:
        genus, boundary = (n - 2) // 2, 2
    return Page(n, genus, boundary, 2 - 2 * genus - boundary)


def _disc_page() -> Page:
    """The page of the one-strand braid: a disc."""
    return Page(1, 0, 1, 1)


def stein_witness(w: BraidWord) -> bool:
    """
    True when every letter is positive, so the monodromy is a product of
    positive Dehn twists. False only means this representative gives no
    certificate.
    """
    return is_positive_word(w)


def h1_order(w: BraidWord) -> int:
    """|H_1| of the double branched cover of the closure; 0 encodes infinite H_1."""
    if w.strands % 2 == 0:
        raise PreconditionError(
            f"H_1 order is read off for odd strand counts only, got n={w.strands}")
    components = closure_component_count(w)
    if components != 1:
        raise NotAKnotError(components)
    return knot_determinant(w)


@dataclass(frozen=True)
class FdtcParams:
    """
    FDTC search parameters; None means derive from the strand count.

    Defaults are denominator_bound D = n and max_power = max(n, D) + 1.
    """
    max_power: Optional[int] = None
    denominator_bound: Optional[int] = None
    step_limit: int = DEFAULT_STEP_LIMIT
    workers: int = 1

    def resolve(self, n: int) -> "FdtcParams":
        bound = self.denominator_bound if self.denominator_bound is not None else n
        return FdtcParams(
            max_power=self.max_power if self.max_power is not None else max(n, bound) + 1,
            denominator_bound=bound,
            step_limit=self.step_limit,
            workers=self.workers,
        )

    def estimate(self, w: BraidWord) -> FdtcEstimate:
        resolved = self.resolve(w.strands)
        return fdtc(w, resolved.max_power, resolved.denominator_bound,
                    resolved.step_limit, resolved.workers)


@dataclass(frozen=True)
class OpenBookReport:
    """
    Open book on the double branched cover induced by a braid.

    ``stein_witness`` and ``non_destabilizable`` are one-sided certificates.
    """
    braid: BraidWord
    page: Page
    binding_connected: bool
    fdtc_braid: FdtcEstimate
    fdtc_upstairs: Optional[FdtcEstimate]
    stein_witness: bool
    non_destabilizable: bool
    h1_order: Optional[int]


def _certifies_large_twisting(est: Optional[FdtcEstimate]) -> bool:
    return est is not None and (est.lower > 1 or est.upper < -1)


def open_book_report(w: BraidWord, fdtc_params: Optional[FdtcParams] = None) -> OpenBookReport:
    """Assemble the page, FDTC, positivity and H_1 data of the open book of w."""
    params = fdtc_params or FdtcParams()
    n = w.strands
    page = page_of(n)
    odd = n % 2 == 1
    downstairs = params.estimate(w)
    upstairs = bh_fdtc(downstairs, n) if odd else None
    order = h1_order(w) if odd and closure_component_count(w) == 1 else None
    return OpenBookReport(
        braid=w,
        page=page,
        binding_connected=page.boundary_components == 1,
        fdtc_braid=downstairs,
        fdtc_upstairs=upstairs,
        stein_witness=stein_witness(w),
        non_destabilizable=_certifies_large_twisting(upstairs),
        h1_order=order,
    )


# ---------------------------------------------------------------------------
# H_1 order formula
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Prop41Row:
    """One k of the sweep: both index orders of the family against 4k^2 + 4k - 1."""
    k: int
    predicted: int
    determinant: int
    determinant_swapped: int
    closed_form_match: bool

    @property
    def passed(self) -> bool:
        return (self.determinant == self.predicted
                and self.determinant_swapped == self.predicted
                and self.closed_form_match)


def predicted_h1_order(k: int) -> int:
    return 4 * k * k + 4 * k - 1


def prop41_row(k: int) -> Prop41Row:
    """Determinants for beta(2k+1, 2k+3) and beta(2k+3, 2k+1)."""
    if k < 1:
        raise PreconditionError(f"the H_1 formula is stated for k >= 1, got {k}")
    braid = beta_family(2 * k + 1, 2 * k + 3)
    swapped = beta_family(2 * k + 3, 2 * k + 1)
    # beta(n, m) = (delta delta_rev)^(2l) delta with 2l = m - 1
    closed_ok = (burau_at_minus1(braid) == closed_form_power(2 * k + 1, k + 1)
                 and burau_at_minus1(swapped) == closed_form_power(2 * k + 3, k))
    row = Prop41Row(
        k=k,
        predicted=predicted_h1_order(k),
        determinant=h1_order(braid),
        determinant_swapped=h1_order(swapped),
        closed_form_match=closed_ok,
    )
    logger.debug("prop 4.1 row %s", row)
    return row


def verify_prop41(k_max: int, workers: int = 1) -> List[Prop41Row]:
    """Rows for k = 1..k_max, in order of k whatever the worker count."""
    if k_max < 1:
        raise UsageError(f"k_max must be at least 1, got {k_max}")
    ks = range(1, k_max + 1)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(prop41_row, ks))
    else:
        rows = [prop41_row(k) for k in ks]
    failed = [row.k for row in rows if not row.passed]
    if failed:
        logger.warning("H_1 order formula failed for k in %s", failed)
    else:
        logger.info("H_1 order formula verified for k = 1..%d", k_max)
    return rows


@dataclass(frozen=True)
class ClosedFormCheck:
    """A computed f_* product compared against its closed form."""
    name: str
    n: int
    l: Optional[int]
    matches: bool


def verify_closed_forms(n_max: int = 21, power_n_max: int = 11,
                        l_max: int = 5) -> List[ClosedFormCheck]:
    """
    f_*(delta) and f_*(delta_rev) for 3 <= n <= n_max; the squared product
    and the family powers for odd n <= power_n_max and 1 <= l <= l_max.
    """
    checks: List[ClosedFormCheck] = []
    for n in range(3, n_max + 1):
        checks.append(ClosedFormCheck(
            "delta", n, None, burau_at_minus1(delta(n)) == closed_form_delta(n)))
        checks.append(ClosedFormCheck(
            "delta_rev", n, None, burau_at_minus1(delta_rev(n)) == closed_form_delta_rev(n)))
    for n in range(3, power_n_max + 1, 2):
        product = burau_at_minus1(compose(delta(n), delta_rev(n)))
        checks.append(ClosedFormCheck(
            "squared", n, None, mul(product, product) == closed_form_squared(n)))
        for l in range(1, l_max + 1):
            checks.append(ClosedFormCheck(
                "power", n, l,
                burau_at_minus1(beta_family(n, 2 * l + 1)) == closed_form_power(n, l)))
    failed = [c for c in checks if not c.matches]
    if failed:
        logger.warning("closed forms failed: %s", failed)
    return checks


# ---------------------------------------------------------------------------
# Genus / FDTC theorem
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FamilySide:
    """Invariants of one braid beta(n, m) of the theorem pair."""
    n: int
    m: int
    page: Page
    positive: bool
    determinant: int
    alexander: Optional[LaurentPoly]
    self_linking: int
    fdtc_upstairs: Optional[FdtcEstimate] = None


def _family_side(n: int, m: int, with_alexander: bool,
                 fdtc_params: Optional[FdtcParams]) -> FamilySide:
    if n == 1:
        # beta(1, m) is the trivial one-strand braid; its closure is the unknot
        return FamilySide(n, m, _disc_page(), True, 1,
                          LaurentPoly.one() if with_alexander else None, -1)
    braid = beta_family(n, m)
    upstairs = None
    if fdtc_params is not None and n % 2:
        upstairs = bh_fdtc(fdtc_params.estimate(braid), n)
    return FamilySide(
        n=n,
        m=m,
        page=page_of(n),
        positive=stein_witness(braid),
        determinant=knot_determinant(braid),
        alexander=alexander_polynomial(braid) if with_alexander else None,
        self_linking=self_linking_number(braid),
        fdtc_upstairs=upstairs,
    )


@dataclass(frozen=True)
class Theorem12Report:
    """
    Computable consequences of the genus/FDTC theorem for one k.

    ``larger`` is beta(2k+3, 2k+1) with pages of genus k+1, ``smaller`` is
    beta(2k+1, 2k+3) with pages of genus k. Isotopy of the two closures and
    equality of the contact structures are not machine-checked; only their
    invariant-level shadows are.
    """
    k: int
    larger: FamilySide
    smaller: FamilySide
    fdtc_predicted: Optional[Fraction]

    @property
    def genus_ok(self) -> bool:
        return self.larger.page.genus == self.k + 1 and self.smaller.page.genus == self.k

    @property
    def euler_gap(self) -> int:
        return self.smaller.page.euler_characteristic - self.larger.page.euler_characteristic

    @property
    def determinants_equal(self) -> bool:
        return self.larger.determinant == self.smaller.determinant

    @property
    def alexander_equal(self) -> Optional[bool]:
        if self.larger.alexander is None or self.smaller.alexander is None:
            return None
        return self.larger.alexander == self.smaller.alexander

    @property
    def self_linking_equal(self) -> bool:
        return self.larger.self_linking == self.smaller.self_linking

    @property
    def fdtc_matches(self) -> Optional[bool]:
        est = self.larger.fdtc_upstairs
        if est is None or self.fdtc_predicted is None:
            return None
        return est.pinned == self.fdtc_predicted

    @property
    def passed(self) -> bool:
        return (self.genus_ok
                and self.larger.positive and self.smaller.positive
                and self.determinants_equal
                and self.self_linking_equal
                and self.alexander_equal is not False
                and self.fdtc_matches is not False)


def theorem12_report(k: int, fdtc_params: Optional[FdtcParams] = None,
                     with_alexander: bool = True) -> Theorem12Report:
    """
    Compare beta(2k+3, 2k+1) and beta(2k+1, 2k+3).

    The FDTC of the larger side is computed only when ``fdtc_params`` is
    given. The prediction k applies from k = 1 on: beta(3, 1) is delta,
    whose coefficient is 1/3 rather than 0.
    """
    if k < 0:
        raise PreconditionError(f"k must be non-negative, got {k}")
    report = Theorem12Report(
        k=k,
        larger=_family_side(2 * k + 3, 2 * k + 1, with_alexander, fdtc_params),
        smaller=_family_side(2 * k + 1, 2 * k + 3, with_alexander, None),
        fdtc_predicted=Fraction(k) if k >= 1 else None,
    )
    logger.debug("theorem report k=%d passed=%s", k, report.passed)
    return report


# ---------------------------------------------------------------------------
# Stabilization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StabilizationLedger:
    """Page change of a Markov stabilization and the induced open book stabilization."""
    word: BraidWord
    before: Page
    after: Page
    euler_drop: int
    open_book_sign: str


def stabilization_ledger(w: BraidWord, sign: int) -> StabilizationLedger:
    stabilized = markov_stabilize(w, sign)
    before, after = page_of(w.strands), page_of(stabilized.strands)
    return StabilizationLedger(
        word=stabilized,
        before=before,
        after=after,
        euler_drop=before.euler_characteristic - after.euler_characteristic,
        open_book_sign="positive" if sign > 0 else "negative",
    )


__all__ = [
    'Page', 'page_of', 'stein_witness', 'h1_order', 'FdtcParams',
    'OpenBookReport', 'open_book_report', 'Prop41Row', 'predicted_h1_order',
    'prop41_row', 'verify_prop41', 'ClosedFormCheck', 'verify_closed_forms',
    'FamilySide', 'Theorem12Report', 'theorem12_report', 'StabilizationLedger',
    'stabilization_ledger',
]
