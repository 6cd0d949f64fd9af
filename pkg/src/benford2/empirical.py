"""Leading-digit statistics for classic fast-growing integer sequences.

Families that grow without bound (powers of 3, factorials, Fibonacci) are
tracked by a significand/exponent window instead of full big integers: the
significand is a 64-fraction-bit fixed-point number kept in [1, base), and
each step multiplies or adds, then renormalizes.  Leading blocks need only
the top digits of the significand, and the per-step truncation (one unit
in the last place) cannot move a block across a boundary unless the
significand already sits within ~2^-50 of one; in that rare case the term
is recomputed from the exact integer.  Observed block frequencies are then
compared against the reference law log_base(1 + 1/block).

The rearrangement demonstration shows why these frequencies are a property
of ordering rather than cardinality: interleaving the naturals so that
every other term is a multiple of four doubles the occurrence frequency of
those multiples without changing the underlying set.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from benford2.solver import benford_reference

FAMILIES = ("pow3", "fibonacci", "factorial", "rearranged")
_FAMILY_ALIASES = {"powers-of-3": "pow3", "rearranged-demo": "rearranged"}

_FRACTION_BITS = 64
_ONE = 1 << _FRACTION_BITS
_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class SequenceSpec:
    """Which family to stream and how to block its terms."""

    family: str
    count: int
    block_bits: int = 1  # digits kept after the leading one
    base: int = 2

    def __post_init__(self) -> None:
        canonical = _FAMILY_ALIASES.get(self.family, self.family)
        if canonical not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {FAMILIES}")
        object.__setattr__(self, "family", canonical)
        if self.count < 1:
            raise ValueError(f"count must be >= 1, got {self.count}")
        if self.block_bits < 0:
            raise ValueError(f"block_bits must be >= 0, got {self.block_bits}")
        if not 2 <= self.base <= 36:
            raise ValueError(f"base must be in [2, 36], got {self.base}")


@dataclass(frozen=True)
class FrequencyReport:
    """Observed vs reference block frequencies plus summary statistics."""

    base: int
    block_bits: int
    total: int
    blocks: tuple[str, ...]
    counts: tuple[int, ...]
    observed: tuple[float, ...]
    expected: tuple[float, ...]
    chi_square: float
    dof: int
    max_deviation: float

    def rows(self) -> Iterable[tuple[str, int, float, float, float]]:
        for block, count, obs, exp in zip(self.blocks, self.counts, self.observed, self.expected):
            yield block, count, obs, exp, abs(obs - exp)


def _digit_string(value: int, base: int) -> str:
    if value == 0:
        return "0"
    out = []
    while value:
        value, digit = divmod(value, base)
        out.append(_DIGITS[digit])
    return "".join(reversed(out))


def _digit_count(value: int, base: int) -> int:
    if base == 2:
        return value.bit_length()
    if value < base:
        return 1
    estimate = int(math.log(value, base))
    power = base**estimate
    while power > value:
        estimate -= 1
        power //= base
    while power * base <= value:
        estimate += 1
        power *= base
    return estimate + 1


def leading_block(value: int, block_digits: int, base: int = 2) -> str:
    """First 1 + block_digits significant digits of ``value`` in ``base``.

    Values with fewer digits come back whole (clipped), not padded; scaling
    by any power of the base leaves the result unchanged.
    """
    if value <= 0:
        raise ValueError(f"value must be positive, got {value}")
    if block_digits < 0:
        raise ValueError(f"block_digits must be >= 0, got {block_digits}")
    if not 2 <= base <= 36:
        raise ValueError(f"base must be in [2, 36], got {base}")
    total = _digit_count(value, base)
    keep = min(block_digits + 1, total)
    return _digit_string(value // base ** (total - keep), base)


def _normalize(mantissa: int, exponent: int, base: int) -> tuple[int, int]:
    top = base * _ONE
    while mantissa >= top:
        mantissa //= base
        exponent += 1
    return mantissa, exponent


def _window_block(
    mantissa: int,
    exponent: int,
    steps: int,
    block_digits: int,
    base: int,
    exact: Callable[[], int],
) -> str:
    """Leading block from the window, with an exact-integer escape hatch.

    The guard widens with the step count so accumulated truncation drift
    can never silently carry the scaled significand across a boundary.
    """
    if exponent < block_digits:  # fewer digits than requested: term is small
        return _digit_string(exact(), base)
    scaled = mantissa * base**block_digits
    fraction = scaled & (_ONE - 1)
    guard = (scaled >> 50) + ((steps * scaled) >> 62) + 1
    if fraction < guard or _ONE - fraction < guard:
        return leading_block(exact(), block_digits, base)
    return _digit_string(scaled >> _FRACTION_BITS, base)


def _fib(n: int) -> int:
    """Exact Fibonacci number by fast doubling (F(1) = F(2) = 1)."""

    def pair(m: int) -> tuple[int, int]:
        if m == 0:
            return 0, 1
        a, b = pair(m >> 1)
        c = a * (2 * b - a)
        d = a * a + b * b
        return (d, c + d) if m & 1 else (c, d)

    return pair(n)[0]


def _product_blocks(
    count: int,
    block_digits: int,
    base: int,
    first: int,
    factor: Callable[[int], int],
    exact: Callable[[int], int],
) -> list[str]:
    mantissa, exponent = _normalize(first * _ONE, 0, base)
    blocks = [_window_block(mantissa, exponent, 0, block_digits, base, lambda: exact(1))]
    for i in range(2, count + 1):
        mantissa, exponent = _normalize(mantissa * factor(i), exponent, base)
        blocks.append(
            _window_block(mantissa, exponent, i - 1, block_digits, base, lambda i=i: exact(i))
        )
    return blocks


def _fibonacci_blocks(count: int, block_digits: int, base: int) -> list[str]:
    blocks = []
    prev = _normalize(_ONE, 0, base)  # first term, value 1
    cur = prev  # second term, value 1
    steps = 0
    for i in range(1, count + 1):
        if i == 1:
            mantissa, exponent = prev
        elif i == 2:
            mantissa, exponent = cur
        else:
            (pm, pe), (cm, ce) = prev, cur
            mantissa, exponent = _normalize(cm + pm // base ** (ce - pe), ce, base)
            prev, cur = cur, (mantissa, exponent)
            steps += 1
        blocks.append(
            _window_block(mantissa, exponent, steps, block_digits, base, lambda i=i: _fib(i))
        )
    return blocks


def rearranged_sequence(count: int) -> list[int]:
    """First terms of the interleave putting a multiple of 4 in every other slot.

    Odd slots walk the non-multiples of four in order, even slots walk the
    multiples of four in order: 1, 4, 2, 8, 3, 12, 5, 16, ...
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    non_multiples = (v for v in itertools.count(1) if v % 4)
    multiples = itertools.count(4, 4)
    return [next(multiples) if i % 2 else next(non_multiples) for i in range(count)]


def generate_blocks(spec: SequenceSpec) -> list[str]:
    """Leading blocks of the first ``spec.count`` terms of the family."""
    j, base, n = spec.block_bits, spec.base, spec.count
    if spec.family == "pow3":
        return _product_blocks(n, j, base, 3, lambda i: 3, lambda i: 3**i)
    if spec.family == "factorial":
        return _product_blocks(n, j, base, 1, lambda i: i, math.factorial)
    if spec.family == "fibonacci":
        return _fibonacci_blocks(n, j, base)
    return [leading_block(v, j, base) for v in rearranged_sequence(n)]


def frequency_report(blocks: Sequence[str], block_bits: int, base: int = 2) -> FrequencyReport:
    """Tabulate observed block frequencies against the reference law.

    Blocks shorter than 1 + block_bits digits (clipped small terms) are
    excluded from the counts.  The expected column telescopes to total
    probability 1 across the full block range.
    """
    if block_bits < 0:
        raise ValueError(f"block_bits must be >= 0, got {block_bits}")
    if not 2 <= base <= 36:
        raise ValueError(f"base must be in [2, 36], got {base}")
    values = range(base**block_bits, base ** (block_bits + 1))
    names = tuple(_digit_string(v, base) for v in values)
    known = set(names)
    counted = Counter()
    for block in blocks:
        if len(block) == block_bits + 1:
            if block not in known:
                raise ValueError(f"malformed block {block!r} for base {base}")
            counted[block] += 1
    total = sum(counted.values())
    if total == 0:
        raise ValueError("no blocks of full depth to count")
    counts = tuple(counted.get(name, 0) for name in names)
    observed = tuple(c / total for c in counts)
    expected = tuple(benford_reference(v, base) for v in values)
    chi_square = sum((c - total * p) ** 2 / (total * p) for c, p in zip(counts, expected))
    max_deviation = max(abs(o - p) for o, p in zip(observed, expected))
    return FrequencyReport(
        base=base,
        block_bits=block_bits,
        total=total,
        blocks=names,
        counts=counts,
        observed=observed,
        expected=expected,
        chi_square=chi_square,
        dof=len(names) - 1,
        max_deviation=max_deviation,
    )


def rearrangement_demo(count: int) -> tuple[float, float]:
    """Occurrence frequency of multiples of four, natural vs rearranged.

    Builds the first ``count`` terms of the naturals and of the interleaved
    rearrangement and counts divisibility by four in each; the first
    frequency approaches 1/4, the second 1/2, although both sequences run
    over the same set of integers.
    """
    if count < 4:
        raise ValueError(f"count must be >= 4, got {count}")
    natural = range(1, count + 1)
    natural_freq = sum(1 for v in natural if v % 4 == 0) / count
    rearranged_freq = sum(1 for v in rearranged_sequence(count) if v % 4 == 0) / count
    return natural_freq, rearranged_freq
