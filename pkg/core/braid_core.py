"""
Braid words and braid expressions for braidbook.
Provides the expression lexer/parser, structural queries, the distinguished
braids (delta, reversed delta, full twist, the beta family) and Markov moves.

Letters are signed integers: e > 0 is the Artin generator sigma_e and
e < 0 is its inverse.
"""

import functools
import logging
import operator
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, List, Optional, Tuple

from sympy.combinatorics import Permutation

from core.errors import (
    BraidSyntaxError,
    GeneratorIndexError,
    PreconditionError,
    StrandMismatchError,
    UsageError,
)

logger = logging.getLogger(__name__)

MAX_WORD_LENGTH = 10 ** 7


def _check_length(length: int) -> None:
    if length > MAX_WORD_LENGTH:
        raise UsageError(
            f"word of {length} letters exceeds the limit of {MAX_WORD_LENGTH} letters")


@dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators of B_n with a fixed strand count."""
    strands: int
    letters: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 2:
            raise PreconditionError(f"a braid needs at least 2 strands, got {self.strands}")
        letters = tuple(int(e) for e in self.letters)
        for e in letters:
            if not 1 <= abs(e) <= self.strands - 1:
                raise GeneratorIndexError(abs(e), self.strands)
        object.__setattr__(self, 'letters', letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return compose(self, other)

    def __str__(self) -> str:
        if not self.letters:
            return f"<empty word in B_{self.strands}>"
        return " ".join(f"s{e}" if e > 0 else f"s{-e}^-1" for e in self.letters)


# ---------------------------------------------------------------------------
# Expression syntax tree
# ---------------------------------------------------------------------------

class BraidExpr:
    """Base class of braid expression nodes."""


@dataclass(frozen=True)
class Generator(BraidExpr):
    index: int


@dataclass(frozen=True)
class Delta(BraidExpr):
    pass


@dataclass(frozen=True)
class DeltaRev(BraidExpr):
    pass


@dataclass(frozen=True)
class FullTwist(BraidExpr):
    pass


@dataclass(frozen=True)
class Family(BraidExpr):
    n: int
    m: int


@dataclass(frozen=True)
class Concat(BraidExpr):
    items: Tuple[BraidExpr, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class Power(BraidExpr):
    base: BraidExpr
    exponent: int


@dataclass(frozen=True)
class Inverse(BraidExpr):
    """Sugar for Power(base, -1); renders as ``base^-1`` and reparses as the Power node."""
    base: BraidExpr


_ATOMIC = (Generator, Delta, DeltaRev, FullTwist, Family)


class TokenType(Enum):
    """Token kinds of the braid expression grammar."""
    GENERATOR = "generator"
    DELTA = "d"
    DELTA_REV = "dR"
    FULL_TWIST = "D2"
    BETA = "beta"
    LPAREN = "("
    RPAREN = ")"
    COMMA = ","
    CARET = "^"
    INT = "int"
    END = "end"


@dataclass
class Token:
    """A lexed token with its source offset."""
    type: TokenType
    start: int
    value: int = 0


class BraidLexer:
    """Tokenizes braid expressions such as ``(d dR)^2 d`` or ``s1 s2^-1``."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens: List[Token] = []

    def tokenize(self) -> List[Token]:
        text = self.text
        while self.pos < len(text):
            ch = text[self.pos]
            start = self.pos
            if ch.isspace():
                self.pos += 1
            elif ch == 's':
                self.pos += 1
                digits = self._read_digits()
                if not digits:
                    raise BraidSyntaxError("expected generator index after 's'", self.pos)
                self.tokens.append(Token(TokenType.GENERATOR, start, int(digits)))
            elif text.startswith('beta', self.pos):
                self.pos += 4
                self.tokens.append(Token(TokenType.BETA, start))
            elif text.startswith('dR', self.pos):
                self.pos += 2
                self.tokens.append(Token(TokenType.DELTA_REV, start))
            elif ch == 'd':
                self.pos += 1
                self.tokens.append(Token(TokenType.DELTA, start))
            elif text.startswith('D2', self.pos):
                self.pos += 2
                self.tokens.append(Token(TokenType.FULL_TWIST, start))
            elif ch in '()^,':
                self.pos += 1
                kind = {'(': TokenType.LPAREN, ')': TokenType.RPAREN,
                        '^': TokenType.CARET, ',': TokenType.COMMA}[ch]
                self.tokens.append(Token(kind, start))
            elif ch in '+-' or ch.isdigit():
                sign = 1
                if ch in '+-':
                    sign = -1 if ch == '-' else 1
                    self.pos += 1
                digits = self._read_digits()
                if not digits:
                    raise BraidSyntaxError(f"expected digits after '{ch}'", self.pos)
                self.tokens.append(Token(TokenType.INT, start, sign * int(digits)))
            else:
                raise BraidSyntaxError(f"unexpected character {ch!r}", start)
        self.tokens.append(Token(TokenType.END, self.pos))
        return self.tokens

    def _read_digits(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return self.text[start:self.pos]


class BraidParser:
    """
    Recursive-descent parser for the grammar

        expr := term {term}
        term := atom ["^" signed-int]
        atom := "s" int | "d" | "dR" | "D2" | "beta(" int "," int ")" | "(" expr ")"

    Generator indices are checked against the strand count while parsing so
    errors can point at the offending token.
    """

    _ATOM_START = (TokenType.GENERATOR, TokenType.DELTA, TokenType.DELTA_REV,
                   TokenType.FULL_TWIST, TokenType.BETA, TokenType.LPAREN)

    def __init__(self, text: str, strands: int):
        self.strands = strands
        self.tokens = BraidLexer(text).tokenize()
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _expect(self, kind: TokenType, what: str) -> Token:
        if self.current.type != kind:
            raise BraidSyntaxError(f"expected {what}", self.current.start)
        return self._advance()

    def parse(self) -> BraidExpr:
        if self.current.type == TokenType.END:
            raise BraidSyntaxError("empty expression", self.current.start)
        expr = self._expr()
        if self.current.type != TokenType.END:
            raise BraidSyntaxError(f"unexpected token {self.current.type.value!r}",
                                   self.current.start)
        return expr

    def _expr(self) -> BraidExpr:
        terms = [self._term()]
        while self.current.type in self._ATOM_START:
            terms.append(self._term())
        if len(terms) == 1:
            return terms[0]
        return Concat(tuple(terms))

    def _term(self) -> BraidExpr:
        atom = self._atom()
        if self.current.type == TokenType.CARET:
            self._advance()
            exponent = self._expect(TokenType.INT, "integer exponent after '^'")
            return Power(atom, exponent.value)
        return atom

    def _atom(self) -> BraidExpr:
        token = self.current
        if token.type == TokenType.GENERATOR:
            self._advance()
            if not 1 <= token.value <= self.strands - 1:
                raise GeneratorIndexError(token.value, self.strands, token.start)
            return Generator(token.value)
        if token.type == TokenType.DELTA:
            self._advance()
            return Delta()
        if token.type == TokenType.DELTA_REV:
            self._advance()
            return DeltaRev()
        if token.type == TokenType.FULL_TWIST:
            self._advance()
            return FullTwist()
        if token.type == TokenType.BETA:
            self._advance()
            self._expect(TokenType.LPAREN, "'(' after 'beta'")
            n = self._expect(TokenType.INT, "strand count in beta(n,m)")
            self._expect(TokenType.COMMA, "',' in beta(n,m)")
            m = self._expect(TokenType.INT, "second parameter in beta(n,m)")
            self._expect(TokenType.RPAREN, "')' closing beta(n,m)")
            if n.value < 2 or m.value < 1:
                raise BraidSyntaxError(
                    f"beta({n.value},{m.value}) needs n >= 2 and m >= 1", token.start)
            if n.value > self.strands:
                raise GeneratorIndexError(n.value - 1, self.strands, token.start)
            return Family(n.value, m.value)
        if token.type == TokenType.LPAREN:
            self._advance()
            inner = self._expr()
            self._expect(TokenType.RPAREN, "')'")
            return inner
        raise BraidSyntaxError(f"unexpected token {token.type.value!r}", token.start)


def parse_expr(text: str, strands: int) -> BraidExpr:
    """Parse a braid expression for the braid group on ``strands`` strands."""
    if strands < 2:
        raise PreconditionError(f"a braid needs at least 2 strands, got {strands}")
    return BraidParser(text, strands).parse()


def render(expr: BraidExpr) -> str:
    """
    Canonical text of an expression.

    Parser output reparses to the same tree. Inverse(x) renders like
    Power(x, -1) and reparses to that node.
    """
    if isinstance(expr, Generator):
        return f"s{expr.index}"
    if isinstance(expr, Delta):
        return "d"
    if isinstance(expr, DeltaRev):
        return "dR"
    if isinstance(expr, FullTwist):
        return "D2"
    if isinstance(expr, Family):
        return f"beta({expr.n},{expr.m})"
    if isinstance(expr, Concat):
        return " ".join(f"({render(item)})" if isinstance(item, Concat) else render(item)
                        for item in expr.items)
    if isinstance(expr, (Power, Inverse)):
        exponent = expr.exponent if isinstance(expr, Power) else -1
        base = render(expr.base)
        if not isinstance(expr.base, _ATOMIC):
            base = f"({base})"
        return f"{base}^{exponent}"
    raise TypeError(f"not a braid expression: {expr!r}")


def flatten(expr: BraidExpr, strands: int) -> BraidWord:
    """Expand an expression into a braid word on ``strands`` strands."""
    if isinstance(expr, Generator):
        return BraidWord(strands, (expr.index,))
    if isinstance(expr, Delta):
        return delta(strands)
    if isinstance(expr, DeltaRev):
        return delta_rev(strands)
    if isinstance(expr, FullTwist):
        return full_twist(strands)
    if isinstance(expr, Family):
        return BraidWord(strands, beta_family(expr.n, expr.m).letters)
    if isinstance(expr, Concat):
        parts = [flatten(item, strands).letters for item in expr.items]
        _check_length(sum(len(p) for p in parts))
        letters: List[int] = []
        for part in parts:
            letters.extend(part)
        return BraidWord(strands, tuple(letters))
    if isinstance(expr, Power):
        return power(flatten(expr.base, strands), expr.exponent)
    if isinstance(expr, Inverse):
        return inverse(flatten(expr.base, strands))
    raise TypeError(f"not a braid expression: {expr!r}")


def parse_word(text: str, strands: int) -> BraidWord:
    """Parse and flatten in one step."""
    return flatten(parse_expr(text, strands), strands)


# ---------------------------------------------------------------------------
# Word operations
# ---------------------------------------------------------------------------

def compose(a: BraidWord, b: BraidWord) -> BraidWord:
    """Concatenate two words; no reduction is applied."""
    if a.strands != b.strands:
        raise StrandMismatchError(a.strands, b.strands)
    return BraidWord(a.strands, a.letters + b.letters)


def inverse(w: BraidWord) -> BraidWord:
    return BraidWord(w.strands, tuple(-e for e in reversed(w.letters)))


def power(w: BraidWord, k: int) -> BraidWord:
    """k-fold product of w with itself; negative k uses the inverse."""
    _check_length(len(w) * abs(k))
    base = w if k >= 0 else inverse(w)
    return BraidWord(w.strands, base.letters * abs(k))


def conjugate(w: BraidWord, g: BraidWord) -> BraidWord:
    """The word g w g^-1."""
    return compose(compose(g, w), inverse(g))


def free_reduce(w: BraidWord) -> BraidWord:
    """Delete adjacent pairs e, -e until none remain."""
    stack: List[int] = []
    for e in w.letters:
        if stack and stack[-1] == -e:
            stack.pop()
        else:
            stack.append(e)
    return BraidWord(w.strands, tuple(stack))


def exponent_sum(w: BraidWord) -> int:
    return sum(1 if e > 0 else -1 for e in w.letters)


def self_linking_number(w: BraidWord) -> int:
    """Self-linking number of the closed braid as a transverse link."""
    return exponent_sum(w) - w.strands


def is_positive_word(w: BraidWord) -> bool:
    return all(e > 0 for e in w.letters)


@functools.lru_cache(maxsize=None)
def _transposition(i: int, strands: int) -> Permutation:
    return Permutation(i - 1, i, size=strands)


def permutation(w: BraidWord) -> Permutation:
    """
    Underlying permutation of the strands, sigma_i mapping to (i i+1).

    Products follow sympy's left-to-right convention, so
    ``permutation(compose(a, b)) == permutation(a) * permutation(b)``.
    """
    identity = Permutation(list(range(w.strands)))
    return functools.reduce(
        operator.mul, (_transposition(abs(e), w.strands) for e in w.letters), identity)


def closure_component_count(w: BraidWord) -> int:
    """Number of components of the closure; 1 means the closure is a knot."""
    return permutation(w).cycles


def cycle_type(w: BraidWord) -> List[int]:
    """Cycle lengths of the permutation, longest first, fixed points included."""
    lengths: List[int] = []
    for length, count in permutation(w).cycle_structure.items():
        lengths.extend([length] * count)
    return sorted(lengths, reverse=True)


# ---------------------------------------------------------------------------
# Distinguished braids
# ---------------------------------------------------------------------------

def _check_strands(n: int) -> None:
    if n < 2:
        raise PreconditionError(f"a braid needs at least 2 strands, got {n}")


def delta(n: int) -> BraidWord:
    """sigma_1 sigma_2 ... sigma_{n-1}"""
    _check_strands(n)
    _check_length(n - 1)
    return BraidWord(n, tuple(range(1, n)))


def delta_rev(n: int) -> BraidWord:
    """sigma_{n-1} ... sigma_2 sigma_1"""
    _check_strands(n)
    _check_length(n - 1)
    return BraidWord(n, tuple(range(n - 1, 0, -1)))


def full_twist(n: int) -> BraidWord:
    """The full twist, written as delta to the n-th power."""
    return power(delta(n), n)


def beta_family(n: int, m: int) -> BraidWord:
    """(delta delta_rev)^(m-1) delta in B_n."""
    if n < 2 or m < 1:
        raise PreconditionError(f"beta({n},{m}) needs n >= 2 and m >= 1")
    return compose(power(compose(delta(n), delta_rev(n)), m - 1), delta(n))


# ---------------------------------------------------------------------------
# Markov moves
# ---------------------------------------------------------------------------

def markov_stabilize(w: BraidWord, sign: int) -> BraidWord:
    """Add a strand and append sigma_n^sign."""
    if sign not in (1, -1):
        raise PreconditionError(f"stabilization sign must be +1 or -1, got {sign}")
    n = w.strands
    return BraidWord(n + 1, w.letters + (sign * n,))


def markov_destabilize(w: BraidWord) -> Optional[BraidWord]:
    """
    Undo a stabilization syntactically.

    Applicable when the top generator sigma_{n-1} occurs exactly once; the
    word is rotated cyclically so that letter sits last, then it is removed
    and the strand count drops by one. Returns None when not applicable.
    """
    n = w.strands
    top = n - 1
    positions = [i for i, e in enumerate(w.letters) if abs(e) == top]
    if n < 3 or len(positions) != 1:
        return None
    pos = positions[0]
    rotated = w.letters[pos + 1:] + w.letters[:pos + 1]
    return BraidWord(n - 1, rotated[:-1])


__all__ = [
    'MAX_WORD_LENGTH', 'BraidWord', 'BraidExpr', 'Generator', 'Delta', 'DeltaRev', 'FullTwist',
    'Family', 'Concat', 'Power', 'Inverse', 'TokenType', 'Token',
    'BraidLexer', 'BraidParser', 'parse_expr', 'render', 'flatten',
    'parse_word', 'compose', 'inverse', 'power', 'conjugate', 'free_reduce',
    'exponent_sum', 'self_linking_number', 'is_positive_word', 'permutation',
    'closure_component_count', 'cycle_type', 'delta', 'delta_rev',
    'full_twist', 'beta_family', 'markov_stabilize', 'markov_destabilize',
]
