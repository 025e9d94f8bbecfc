"""Shift operators on digit expansions.

The plain shift drops the first digit (and first base entry).  The
generalized shift deletes the digit and base entry at an arbitrary position
m; on each rank-m cylinder it acts as the affine map

    x  ->  q_m * x - (q_m - 1) * head(m-1) - d_m / (q_1 ... q_{m-1})

where head(m-1) is the partial sum over the first m-1 digits.  Compositions
of deletions are tracked through re-indexed deletion schedules: deleting
original positions n_1, .., n_k in that order is achieved by single
deletions at positions n_i - (number of earlier n_j below n_i).

An alternating-series reading of the same digit data (position k weighted by
(-1)^k) is supported for the value and single-deletion formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .expansions import DigitExpansion, Tail, value_of

__all__ = [
    "PartialSums",
    "DeletionSchedule",
    "prefix_sum",
    "partial_sums",
    "shift",
    "shift_n",
    "generalized_shift",
    "generalized_shift_value",
    "compose_two",
    "make_schedule",
    "delete_positions",
    "alternating_value",
    "alternating_shift_value",
]


def prefix_sum(e: DigitExpansion, n: int) -> Fraction:
    """Partial value over the first n digit positions (tail digits included)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    total = Fraction(0)
    den = 1
    for k in range(1, n + 1):
        den *= e.base.base_at(k)
        d = e.digit_at(k)
        if d:
            total += Fraction(d, den)
    return total


@dataclass(frozen=True)
class PartialSums:
    """Split of a value around position m.

    ``head`` sums positions < m; ``tail_rescaled`` sums positions > m with
    the position-m base removed from the denominators, so that

        tail_rescaled = q_m * (x - head - d_m / (q_1 .. q_m)).
    """

    head: Fraction
    tail_rescaled: Fraction


def partial_sums(e: DigitExpansion, m: int) -> PartialSums:
    if m < 1:
        raise ValueError("m must be >= 1")
    head = prefix_sum(e, m - 1)
    q_m = e.base.base_at(m)
    tail = q_m * (value_of(e) - prefix_sum(e, m))
    return PartialSums(head, tail)


def shift(e: DigitExpansion) -> DigitExpansion:
    """Drop the first digit and the first base entry."""
    return DigitExpansion(e.base.drop_first(), e.prefix[1:], e.tail)


def shift_n(e: DigitExpansion, n: int) -> DigitExpansion:
    """n-fold shift; n = 0 is the identity.

    Satisfies value_of(e) == prefix_sum(e, n) + value_of(shift_n(e, n)) / block(n).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    for _ in range(n):
        e = shift(e)
    return e


def generalized_shift(e: DigitExpansion, m: int) -> DigitExpansion:
    """Delete the digit at position m, and the base entry at position m.

    Beyond the stored prefix the deletion removes a symbolic tail digit,
    which leaves zeros tails untouched and keeps max tails aligned with the
    shortened base sequence.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if m <= len(e.prefix):
        prefix = e.prefix[: m - 1] + e.prefix[m:]
    else:
        prefix = e.prefix
    return DigitExpansion(e.base.delete_at(m), prefix, e.tail)


def generalized_shift_value(x: Fraction, e: DigitExpansion, m: int) -> Fraction:
    """Value of the position-m deletion via the closed affine formula.

    ``x`` must equal value_of(e); the digits of e fix the affine branch.
    Agrees exactly with value_of(generalized_shift(e, m)).
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    x = Fraction(x)
    if x != value_of(e):
        raise ValueError("x does not match the expansion's value")
    q_m = e.base.base_at(m)
    head = prefix_sum(e, m - 1)
    d_m = e.digit_at(m)
    return q_m * x - (q_m - 1) * head - Fraction(d_m, e.base.block(m - 1))


def _delete_original_positions(e: DigitExpansion, positions) -> DigitExpansion:
    # Deleting in descending order keeps original indices valid.
    for m in sorted(set(positions), reverse=True):
        e = generalized_shift(e, m)
    return e


def compose_two(e: DigitExpansion, n1: int, n2: int) -> DigitExpansion:
    """Apply the deletion at n1, then the deletion at n2, in one step.

    The pair of original positions removed is {n1, n2} when n1 > n2,
    {n1, n2 + 1} when n1 < n2, and {n1, n1 + 1} when they coincide; the
    result equals two sequential :func:`generalized_shift` calls.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError("positions must be >= 1")
    if n1 > n2:
        positions = (n2, n1)
    elif n1 < n2:
        positions = (n1, n2 + 1)
    else:
        positions = (n1, n1 + 1)
    return _delete_original_positions(e, positions)


@dataclass(frozen=True)
class DeletionSchedule:
    """Original positions to delete, with the re-indexed one-shot steps.

    ``steps[i] = positions[i] - (number of earlier positions below it)``;
    applying single deletions at ``steps`` in order removes exactly the
    original positions.
    """

    positions: tuple[int, ...]
    steps: tuple[int, ...]


def make_schedule(n_list: Sequence[int]) -> DeletionSchedule:
    positions = tuple(int(n) for n in n_list)
    if any(n < 1 for n in positions):
        raise ValueError("positions must be >= 1")
    if len(set(positions)) != len(positions):
        raise ValueError("positions must be distinct")
    steps = []
    for i, n in enumerate(positions):
        smaller = sum(1 for prev in positions[: i + 1] if prev < n)
        steps.append(n - smaller)
    return DeletionSchedule(positions, tuple(steps))


def delete_positions(e: DigitExpansion, schedule: DeletionSchedule) -> DigitExpansion:
    """Apply the schedule's single deletions in order.

    Equivalent to removing the schedule's original positions from the digit
    stream (and base sequence) all at once.
    """
    for m in schedule.steps:
        e = generalized_shift(e, m)
    return e


def alternating_value(e: DigitExpansion) -> Fraction:
    """Value of the digit data read as an alternating series.

    Position k contributes (-1)^k d_k / (q_1 ... q_k); a max tail is summed
    in closed form once the base sequence is constant.
    """
    total = Fraction(0)
    den = 1
    length = len(e.prefix)
    for k, d in enumerate(e.prefix, start=1):
        den *= e.base.base_at(k)
        if d:
            total += Fraction(-d if k % 2 else d, den)
    if e.tail is Tail.MAX:
        start = max(length, len(e.base.prefix)) + 1
        for k in range(length + 1, start):
            q = e.base.base_at(k)
            den *= q
            total += Fraction(-(q - 1) if k % 2 else q - 1, den)
        q = e.base.tail_value
        # sum_{k >= start} (-1)^k (q-1) / (den * q^(k-start+1))
        sign = -1 if start % 2 else 1
        total += Fraction(sign * (q - 1), den * (q + 1))
    return total


def alternating_shift_value(x: Fraction, e: DigitExpansion, m: int) -> Fraction:
    """Position-m deletion value under the alternating reading.

    Closed form: -q_m * x + (1 + q_m) * head_alt(m-1) + (-1)^m d_m / block(m-1),
    where head_alt is the alternating partial sum before m.  Equals
    alternating_value(generalized_shift(e, m)): the digits after the deleted
    position carry the sign (-1)^(j-1) of their new slot.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    x = Fraction(x)
    if x != alternating_value(e):
        raise ValueError("x does not match the alternating value of the expansion")
    q_m = e.base.base_at(m)
    head = Fraction(0)
    den = 1
    for k in range(1, m):
        den *= e.base.base_at(k)
        d = e.digit_at(k)
        if d:
            head += Fraction(-d if k % 2 else d, den)
    d_m = e.digit_at(m)
    sign = -1 if m % 2 else 1
    return -q_m * x + (1 + q_m) * head + Fraction(sign * d_m, e.base.block(m - 1))
