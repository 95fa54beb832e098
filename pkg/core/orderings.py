"""
Braid orderings for braidbook.
Provides Dehornoy handle reduction, the Dehornoy floor and rational interval
estimates of the fractional Dehn twist coefficient (FDTC).
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import floor
from typing import Callable, Dict, List, Optional, Tuple

from core.braid_core import (
    BraidWord,
    compose,
    exponent_sum,
    full_twist,
    inverse,
    power,
)
from core.errors import InvariantBreach, PreconditionError, StepLimitExceeded

logger = logging.getLogger(__name__)

DEFAULT_STEP_LIMIT = 10 ** 6


class SigmaKind(Enum):
    """Sign of the main generator of a handle-free word."""
    POSITIVE = "sigma_positive"
    NEGATIVE = "sigma_negative"
    TRIVIAL = "trivial"


@dataclass(frozen=True)
class SigmaClass:
    """
    Classification of a braid in the Dehornoy order.

    ``index`` is the main generator: the smallest index occurring in a
    handle-free representative. It is None for the trivial class.
    """
    kind: SigmaKind
    index: Optional[int] = None

    @classmethod
    def positive(cls, index: int) -> "SigmaClass":
        return cls(SigmaKind.POSITIVE, index)

    @classmethod
    def negative(cls, index: int) -> "SigmaClass":
        return cls(SigmaKind.NEGATIVE, index)

    @classmethod
    def trivial(cls) -> "SigmaClass":
        return cls(SigmaKind.TRIVIAL)

    @property
    def is_positive(self) -> bool:
        return self.kind is SigmaKind.POSITIVE

    @property
    def is_negative(self) -> bool:
        return self.kind is SigmaKind.NEGATIVE

    @property
    def is_trivial(self) -> bool:
        return self.kind is SigmaKind.TRIVIAL

    def opposite(self) -> "SigmaClass":
        if self.is_trivial:
            return self
        flipped = SigmaKind.NEGATIVE if self.is_positive else SigmaKind.POSITIVE
        return SigmaClass(flipped, self.index)

    def __str__(self) -> str:
        if self.is_trivial:
            return "trivial"
        return f"{self.kind.value}({self.index})"


class Comparison(Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


@dataclass(frozen=True)
class FdtcEstimate:
    """
    Certified enclosure of the fractional Dehn twist coefficient.

    ``pinned`` is set only when the enclosure determines the value, either
    exactly or as the unique rational of bounded denominator inside it.
    """
    lower: Fraction
    upper: Fraction
    pinned: Optional[Fraction] = None
    power_used: int = 1

    def __post_init__(self):
        object.__setattr__(self, 'lower', Fraction(self.lower))
        object.__setattr__(self, 'upper', Fraction(self.upper))
        if self.pinned is not None:
            object.__setattr__(self, 'pinned', Fraction(self.pinned))
        if self.lower > self.upper:
            raise InvariantBreach(f"empty FDTC interval [{self.lower}, {self.upper}]")
        if self.pinned is not None and not self.lower <= self.pinned <= self.upper:
            raise InvariantBreach(
                f"pinned value {self.pinned} outside [{self.lower}, {self.upper}]")

    @property
    def is_pinned(self) -> bool:
        return self.pinned is not None

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def contains(self, value: Fraction) -> bool:
        return self.lower <= value <= self.upper


# ---------------------------------------------------------------------------
# Handle reduction
# ---------------------------------------------------------------------------

def _rebuild_last_at_most(letters: List[int], end: int, strands: int) -> List[int]:
    """
    last[k] = last position before ``end`` holding a letter of index <= k.

    Scanning stops at the first index-1 letter: every entry is at least that.
    """
    last = [-1] * strands
    for pos in range(end - 1, -1, -1):
        index = abs(letters[pos])
        for k in range(index, strands):
            if last[k] == -1:
                last[k] = pos
        if index == 1:
            break
    return last


def _classify_handle_free(letters: List[int]) -> SigmaClass:
    if not letters:
        return SigmaClass.trivial()
    main = min(abs(e) for e in letters)
    first = next(e for e in letters if abs(e) == main)
    return SigmaClass.positive(main) if first > 0 else SigmaClass.negative(main)


def handle_reduce(w: BraidWord, step_limit: int = DEFAULT_STEP_LIMIT) -> Tuple[BraidWord, SigmaClass]:
    """
    Dehornoy handle reduction.

    A sigma_i-handle is sigma_i^e v sigma_i^-e where v only uses generators
    of index > i. The handle whose right end comes first is always reduced;
    such a handle contains no other handle. Each sigma_{i+1}^d inside it
    becomes sigma_{i+1}^-e sigma_i^d sigma_{i+1}^e and the two ends vanish.

    Returns the handle-free word and its class.
    """
    if step_limit <= 0:
        raise PreconditionError(f"step limit must be positive, got {step_limit}")
    strands = w.strands
    letters = list(w.letters)
    last = [-1] * strands
    steps = 0
    q = 0
    while q < len(letters):
        x = letters[q]
        k = abs(x)
        p = last[k]
        if p >= 0 and letters[p] == -x:
            steps += 1
            if steps > step_limit:
                raise StepLimitExceeded(step_limit, len(letters))
            e = 1 if letters[p] > 0 else -1
            replacement: List[int] = []
            for y in letters[p + 1:q]:
                if abs(y) == k + 1:
                    replacement.extend((-e * (k + 1), k if y > 0 else -k, e * (k + 1)))
                else:
                    replacement.append(y)
            letters[p:q + 1] = replacement
            last = _rebuild_last_at_most(letters, p, strands)
            q = p
            continue
        for j in range(k, strands):
            last[j] = q
        q += 1

    logger.debug("handle reduction of length-%d word: %d steps, result length %d",
                 len(w), steps, len(letters))
    return BraidWord(strands, tuple(letters)), _classify_handle_free(letters)


def sigma_class(w: BraidWord, step_limit: int = DEFAULT_STEP_LIMIT) -> SigmaClass:
    return handle_reduce(w, step_limit)[1]


def compare_dehornoy(a: BraidWord, b: BraidWord,
                     step_limit: int = DEFAULT_STEP_LIMIT) -> Comparison:
    """Order of a and b: greater iff a * b^-1 is sigma-positive."""
    cls = sigma_class(compose(a, inverse(b)), step_limit)
    if cls.is_trivial:
        return Comparison.EQUAL
    return Comparison.GREATER if cls.is_positive else Comparison.LESS


# ---------------------------------------------------------------------------
# Floors
# ---------------------------------------------------------------------------

def _shifted_power(w: BraidWord, exponent: int, twists: int) -> BraidWord:
    """
    A word for Delta^(-2 * twists) * w^exponent.

    With twists = q * exponent + r this is (Delta^-2q w)^exponent Delta^-2r,
    which keeps negative letters spread through the word.
    """
    q, r = divmod(twists, exponent)
    twist = full_twist(w.strands)
    block = compose(power(twist, -q), w)
    return compose(power(block, exponent), power(twist, -r))


def _gallop_floor(is_at_most: Callable[[int], bool], seed: int) -> int:
    """
    Largest m with is_at_most(m) true, for a predicate true up to some
    threshold and false beyond it.
    """
    if is_at_most(seed):
        low, step = seed, 1
        high = low + step
        while is_at_most(high):
            low = high
            step *= 2
            high = low + step
    else:
        high, step = seed, 1
        low = high - step
        while not is_at_most(low):
            high = low
            step *= 2
            low = high - step
    while high - low > 1:
        middle = (low + high) // 2
        if is_at_most(middle):
            low = middle
        else:
            high = middle
    return low


def _power_floor(w: BraidWord, exponent: int, seed: int,
                 step_limit: int) -> Tuple[int, bool]:
    """
    Floor of w^exponent together with whether w^exponent equals the twist
    power Delta^(2 * floor).
    """
    classes: Dict[int, SigmaClass] = {}

    def classify(twists: int) -> SigmaClass:
        if twists not in classes:
            classes[twists] = sigma_class(_shifted_power(w, exponent, twists), step_limit)
        return classes[twists]

    result = _gallop_floor(lambda m: not classify(m).is_negative, seed)
    logger.debug("floor of power %d: %d (probed %s)", exponent, result, sorted(classes))
    return result, classify(result).is_trivial


def _power_floor_job(payload: Tuple[BraidWord, int, int, int]) -> Tuple[int, bool]:
    return _power_floor(*payload)


def dehornoy_floor(w: BraidWord, step_limit: int = DEFAULT_STEP_LIMIT) -> int:
    """
    The integer m with Delta^2m <= w < Delta^(2m+2).

    The search starts at exponent_sum / (n(n-1)) and gallops outwards until
    both inequalities are certified.
    """
    n = w.strands
    seed = exponent_sum(w) // (n * (n - 1))
    return _power_floor(w, 1, seed, step_limit)[0]


# ---------------------------------------------------------------------------
# Fractional Dehn twist coefficient
# ---------------------------------------------------------------------------

def stern_brocot_candidates(lower: Fraction, upper: Fraction, bound: int) -> List[Fraction]:
    """All rationals p/q with q <= bound in the closed interval [lower, upper]."""
    if bound < 1:
        raise PreconditionError(f"denominator bound must be positive, got {bound}")
    base = floor(lower)
    low, high = lower - base, upper - base
    found: List[Fraction] = [Fraction(base)] if low == 0 else []
    # Subtrees between consecutive Farey neighbours (a/b, c/d).
    stack = [((0, 1), (1, 0))]
    while stack:
        (a, b), (c, d) = stack.pop()
        p, q = a + c, b + d
        if q > bound:
            continue
        mediant = Fraction(p, q)
        if low <= mediant <= high:
            found.append(mediant + base)
        if low < mediant:
            stack.append(((a, b), (p, q)))
        if mediant < high:
            stack.append(((p, q), (c, d)))
    return sorted(found)


def fdtc(w: BraidWord, max_power: int, denominator_bound: Optional[int] = None,
         step_limit: int = DEFAULT_STEP_LIMIT, workers: int = 1) -> FdtcEstimate:
    """
    Enclose the FDTC of w using floors of its powers.

    Each power j gives floor(w^j)/j <= omega(w) <= (floor(w^j) + 1)/j; the
    enclosures of j = 1..max_power are intersected. A power equal to a twist
    power Delta^2m fixes the value at m/j. Otherwise a value is pinned when
    exactly one rational of denominator <= denominator_bound lies in the
    closed interval.
    """
    if max_power < 1:
        raise PreconditionError(f"max_power must be at least 1, got {max_power}")
    first, exact = _power_floor(w, 1, exponent_sum(w) // (w.strands * (w.strands - 1)),
                                step_limit)
    floors: List[Tuple[int, bool]] = [(first, exact)]
    if not exact and max_power > 1:
        jobs = [(w, j, j * first, step_limit) for j in range(2, max_power + 1)]
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                floors.extend(pool.map(_power_floor_job, jobs))
        else:
            floors.extend(_power_floor_job(job) for job in jobs)

    lower: Optional[Fraction] = None
    upper: Optional[Fraction] = None
    power_used = 0
    for j, (value, is_twist_power) in enumerate(floors, start=1):
        power_used = j
        if is_twist_power:
            point = Fraction(value, j)
            if (lower is not None and point < lower) or (upper is not None and point > upper):
                raise InvariantBreach(f"exact value {point} escapes the floor sandwich")
            logger.info("w^%d is a twist power: FDTC = %s", j, point)
            return FdtcEstimate(point, point, point, j)
        low, high = Fraction(value, j), Fraction(value + 1, j)
        lower = low if lower is None else max(lower, low)
        upper = high if upper is None else min(upper, high)

    if lower > upper:
        raise InvariantBreach(f"floor sandwiches are inconsistent: [{lower}, {upper}]")
    pinned = lower if lower == upper else None
    if pinned is None and denominator_bound is not None:
        candidates = stern_brocot_candidates(lower, upper, denominator_bound)
        logger.debug("candidates with denominator <= %d in [%s, %s]: %s",
                     denominator_bound, lower, upper, candidates)
        if len(candidates) == 1:
            pinned = candidates[0]
    return FdtcEstimate(lower, upper, pinned, power_used)


def bh_fdtc(est: FdtcEstimate, n: int) -> FdtcEstimate:
    """FDTC upstairs in the double branched cover: half the braid value, odd n only."""
    if n % 2 == 0:
        raise PreconditionError(
            f"halving to the branched cover requires an odd strand count, got {n}")
    half = Fraction(1, 2)
    pinned = est.pinned * half if est.pinned is not None else None
    return FdtcEstimate(est.lower * half, est.upper * half, pinned, est.power_used)


__all__ = [
    'DEFAULT_STEP_LIMIT', 'SigmaKind', 'SigmaClass', 'Comparison',
    'FdtcEstimate', 'handle_reduce', 'sigma_class', 'compare_dehornoy',
    'dehornoy_floor', 'stern_brocot_candidates', 'fdtc', 'bh_fdtc',
]
