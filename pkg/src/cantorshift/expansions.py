"""Exact digit expansions of numbers in [0, 1].

A number is stored as a base specification (constant base q, or a finite
prefix of bases followed by a constant tail base), a finite tuple of leading
digits, and a symbolic tail that is either all zeros or all maximal digits.
Every value is an exact ``fractions.Fraction``; no floating point enters the
digit arithmetic.

Conventions:

* positions are 1-indexed throughout,
* x = 0 is the empty prefix with a zeros tail, x = 1 the empty prefix with a
  max-digits tail,
* the terminating (zeros-tail) form is the canonical one for display.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

__all__ = [
    "Tail",
    "BaseSpec",
    "DigitExpansion",
    "Cylinder",
    "value_of",
    "expansion_of",
    "dual_representation",
    "cylinder_interval",
    "same_stream",
    "digits_of_fraction",
    "parse_base",
    "format_base",
    "parse_expansion",
    "format_expansion",
    "parse_rational",
]

RationalLike = Union[Fraction, int, str]


class Tail(Enum):
    """Symbolic digit tail beyond the stored prefix."""

    ZEROS = "zeros"
    MAX = "max"


@dataclass(frozen=True)
class BaseSpec:
    """Per-position digit bases: a finite prefix, then a constant tail value.

    ``base_at(k)`` is the base of position k.  Trailing prefix entries equal
    to the tail value carry no information and are stripped, so equal base
    sequences compare equal and a constant base always has an empty prefix.
    """

    prefix: tuple[int, ...]
    tail_value: int

    def __post_init__(self) -> None:
        prefix = tuple(int(q) for q in self.prefix)
        if self.tail_value < 2:
            raise ValueError("base entries must be >= 2")
        if any(q < 2 for q in prefix):
            raise ValueError("base entries must be >= 2")
        while prefix and prefix[-1] == self.tail_value:
            prefix = prefix[:-1]
        object.__setattr__(self, "prefix", prefix)

    @classmethod
    def constant(cls, q: int) -> "BaseSpec":
        return cls((), q)

    @classmethod
    def cantor(cls, prefix, tail_value: int) -> "BaseSpec":
        return cls(tuple(prefix), tail_value)

    @property
    def is_constant(self) -> bool:
        return not self.prefix

    def base_at(self, k: int) -> int:
        if k < 1:
            raise ValueError("positions are 1-indexed")
        if k <= len(self.prefix):
            return self.prefix[k - 1]
        return self.tail_value

    def block(self, n: int) -> int:
        """Product of the first n bases (denominator of a rank-n cylinder)."""
        if n < 0:
            raise ValueError("n must be >= 0")
        out = 1
        for q in self.prefix[:n]:
            out *= q
        extra = n - len(self.prefix)
        if extra > 0:
            out *= self.tail_value**extra
        return out

    def drop_first(self) -> "BaseSpec":
        return BaseSpec(self.prefix[1:], self.tail_value)

    def delete_at(self, m: int) -> "BaseSpec":
        """Base sequence with the entry at position m removed.

        Deletions inside the constant tail leave the sequence unchanged.
        """
        if m < 1:
            raise ValueError("positions are 1-indexed")
        if m <= len(self.prefix):
            return BaseSpec(self.prefix[: m - 1] + self.prefix[m:], self.tail_value)
        return self

    def __str__(self) -> str:
        return format_base(self)


@dataclass(frozen=True)
class DigitExpansion:
    """A number in [0, 1]: leading digits over a base, plus a symbolic tail.

    The prefix is kept exactly as given (trailing zeros are allowed and
    meaningful for round-trips); semantic equality is value equality via
    :func:`value_of` or stream equality via :func:`same_stream`.
    """

    base: BaseSpec
    prefix: tuple[int, ...]
    tail: Tail = Tail.ZEROS

    def __post_init__(self) -> None:
        prefix = tuple(int(d) for d in self.prefix)
        for k, d in enumerate(prefix, start=1):
            if not 0 <= d < self.base.base_at(k):
                raise ValueError(
                    f"digit {d} at position {k} outside alphabet 0..{self.base.base_at(k) - 1}"
                )
        object.__setattr__(self, "prefix", prefix)

    def digit_at(self, k: int) -> int:
        """Digit at position k, including the symbolic tail region."""
        if k < 1:
            raise ValueError("positions are 1-indexed")
        if k <= len(self.prefix):
            return self.prefix[k - 1]
        if self.tail is Tail.ZEROS:
            return 0
        return self.base.base_at(k) - 1

    def __str__(self) -> str:
        return format_expansion(self)


@dataclass(frozen=True)
class Cylinder:
    """All numbers whose first ``len(word)`` digits equal ``word``."""

    base: BaseSpec
    word: tuple[int, ...]

    def __post_init__(self) -> None:
        word = tuple(int(d) for d in self.word)
        if not word:
            raise ValueError("cylinder rank must be >= 1")
        for k, d in enumerate(word, start=1):
            if not 0 <= d < self.base.base_at(k):
                raise ValueError(f"digit {d} at position {k} outside alphabet")
        object.__setattr__(self, "word", word)

    @property
    def rank(self) -> int:
        return len(self.word)


def value_of(e: DigitExpansion) -> Fraction:
    """Exact value of an expansion.

    The finite prefix sums directly; a max-digits tail beyond position m
    telescopes to 1/(q_1 ... q_m), so the result is closed form for both
    tails.
    """
    total = Fraction(0)
    den = 1
    for k, d in enumerate(e.prefix, start=1):
        den *= e.base.base_at(k)
        if d:
            total += Fraction(d, den)
    if e.tail is Tail.MAX:
        total += Fraction(1, den)
    return total


def expansion_of(
    x: RationalLike,
    base: BaseSpec,
    depth: int,
    tail_pref: Tail = Tail.ZEROS,
) -> DigitExpansion:
    """Greedy digit extraction of a rational in [0, 1].

    If x terminates within ``depth`` digits the tail preference picks which
    of the two dual forms is returned; otherwise the result is the truncated
    prefix of length ``depth`` with a zeros tail.  x = 0 has no max-digits
    form and always comes back in zeros form; x = 1 is always the empty
    prefix with a max tail.
    """
    if depth <= 0:
        raise ValueError("depth must be >= 1")
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise ValueError("value must lie in [0, 1]")
    if x == 1:
        return DigitExpansion(base, (), Tail.MAX)
    digits = []
    r = x
    for k in range(1, depth + 1):
        r *= base.base_at(k)
        d = int(r)
        digits.append(d)
        r -= d
    if r == 0:
        if tail_pref is Tail.MAX and any(digits):
            last = max(k for k, d in enumerate(digits, start=1) if d)
            word = digits[: last - 1] + [digits[last - 1] - 1]
            return DigitExpansion(base, tuple(word), Tail.MAX)
        return DigitExpansion(base, tuple(digits), Tail.ZEROS)
    return DigitExpansion(base, tuple(digits), Tail.ZEROS)


def dual_representation(e: DigitExpansion) -> Optional[DigitExpansion]:
    """The other expansion of the same value, or None if it is unique.

    Terminating form  d_1 .. d_m 0 0 0 ...         (d_m >= 1)
    equals            d_1 .. [d_m - 1] max max ...
    Only 0 (zeros form) and 1 (max form) have a single representation.
    """
    if e.tail is Tail.ZEROS:
        digits = list(e.prefix)
        while digits and digits[-1] == 0:
            digits.pop()
        if not digits:
            return None
        digits[-1] -= 1
        return DigitExpansion(e.base, tuple(digits), Tail.MAX)
    digits = list(e.prefix)
    while digits and digits[-1] == e.base.base_at(len(digits)) - 1:
        digits.pop()
    if not digits:
        return None
    digits[-1] += 1
    return DigitExpansion(e.base, tuple(digits), Tail.ZEROS)


def cylinder_interval(c: Cylinder) -> tuple[Fraction, Fraction]:
    """Closed interval [inf, sup] spanned by a cylinder.

    sup - inf is exactly 1 / (q_1 ... q_m) for rank m.
    """
    lo = value_of(DigitExpansion(c.base, c.word, Tail.ZEROS))
    hi = value_of(DigitExpansion(c.base, c.word, Tail.MAX))
    return lo, hi


def same_stream(e1: DigitExpansion, e2: DigitExpansion) -> bool:
    """True when two expansions have identical digit and base streams.

    Decidable because beyond all stored prefixes both streams are constant:
    digits are 0 (zeros tail) or base-1 (max tail) over the constant tail
    base.
    """
    horizon = 1 + max(
        len(e1.prefix),
        len(e2.prefix),
        len(e1.base.prefix),
        len(e2.base.prefix),
    )
    if e1.base.tail_value != e2.base.tail_value or e1.tail is not e2.tail:
        return False
    for k in range(1, horizon + 1):
        if e1.base.base_at(k) != e2.base.base_at(k):
            return False
        if e1.digit_at(k) != e2.digit_at(k):
            return False
    return True


def digits_of_fraction(num: int, den: int, q: int, count: int) -> list[int]:
    """First ``count`` base-q digits of num/den in [0, 1), by long division.

    Integer-only fast path used by grid evaluations; independent of the
    Fraction-based :func:`expansion_of`.
    """
    if not 0 <= num < den:
        raise ValueError("num/den must lie in [0, 1)")
    out = []
    for _ in range(count):
        num *= q
        d, num = divmod(num, den)
        out.append(d)
    return out


# --- textual notation ---------------------------------------------------
#
#   q10:[2,5]:zeros        constant base 10, digits 2 5, zeros tail
#   Q(2,3,4|5):[1,2]:max   bases 2 3 4 then 5 forever, digits 1 2, max tail

_CONSTANT_RE = re.compile(r"^q(\d+)$")
_CANTOR_RE = re.compile(r"^Q\(([\d,\s]*)\|(\d+)\)$")


def format_base(b: BaseSpec) -> str:
    if b.is_constant:
        return f"q{b.tail_value}"
    inner = ",".join(str(q) for q in b.prefix)
    return f"Q({inner}|{b.tail_value})"


def parse_base(text: str) -> BaseSpec:
    text = text.strip()
    m = _CONSTANT_RE.match(text)
    if m:
        return BaseSpec.constant(int(m.group(1)))
    m = _CANTOR_RE.match(text)
    if m:
        entries = [int(t) for t in m.group(1).split(",") if t.strip()]
        return BaseSpec.cantor(entries, int(m.group(2)))
    raise ValueError(f"cannot parse base {text!r}")


def format_expansion(e: DigitExpansion) -> str:
    digits = ",".join(str(d) for d in e.prefix)
    return f"{format_base(e.base)}:[{digits}]:{e.tail.value}"


def parse_expansion(text: str) -> DigitExpansion:
    parts = text.strip().split(":")
    if len(parts) != 3:
        raise ValueError(f"expected base:[digits]:tail, got {text!r}")
    base = parse_base(parts[0])
    digit_part = parts[1].strip()
    if not (digit_part.startswith("[") and digit_part.endswith("]")):
        raise ValueError(f"digit list must be bracketed, got {digit_part!r}")
    inner = digit_part[1:-1].strip()
    digits = tuple(int(t) for t in inner.split(",") if t.strip()) if inner else ()
    tail_token = parts[2].strip().lower()
    try:
        tail = Tail(tail_token)
    except ValueError:
        raise ValueError(f"tail must be 'zeros' or 'max', got {tail_token!r}") from None
    return DigitExpansion(base, digits, tail)


def parse_rational(text: str) -> Fraction:
    """Parse 'a/b', an integer, or a decimal string as an exact rational."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse rational {text!r}") from exc
