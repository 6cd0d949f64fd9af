"""Bit-level building blocks for leading binary blocks and dyadic fractions.

Every positive integer written in base 2 starts with a 1, so a leading
block of 1+k significant digits is fully described by the k bits after the
first one.  Bits are stored most-significant-first as a tuple of 0/1 ints.
Packing the bits of such a tuple into a plain integer preserves dyadic
order (0.b1b2...bk as a fraction), which lets the vector and matrix layers
index 2^k-sized arrays with ordinary integer comparisons and suffix scans.

All values derived from bits are exact: integers for block values,
``fractions.Fraction`` for dyadic fractions and truncations.  Floating
point enters only at module boundaries that need it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Bits = tuple[int, ...]

# Resource budgets.  Vector-shaped work allocates 2^k entries, dense matrix
# work allocates 4^k entries, and the integer counting oracle walks numbers
# of k+padding bits.
MAX_VECTOR_DEPTH = 24
MAX_DENSE_DEPTH = 12
MAX_COUNT_BITS = 40


class DepthError(ValueError):
    """Requested depth exceeds the configured resource budget."""


def validate_bits(bits: Iterable[int], max_depth: int = MAX_VECTOR_DEPTH) -> Bits:
    """Coerce to a tuple of 0/1 ints, enforcing the depth budget."""
    out = tuple(int(b) for b in bits)
    if any(b not in (0, 1) for b in out):
        raise ValueError(f"bits must all be 0 or 1, got {out!r}")
    if len(out) > max_depth:
        raise DepthError(f"depth {len(out)} exceeds the budget of {max_depth}")
    return out


def pack_bits(bits: Bits) -> int:
    """Pack MSB-first bits into an integer; integer order equals dyadic order."""
    packed = 0
    for b in bits:
        packed = (packed << 1) | b
    return packed


def unpack_bits(packed: int, depth: int) -> Bits:
    """Inverse of :func:`pack_bits` for a known depth."""
    if not 0 <= packed < (1 << depth):
        raise ValueError(f"packed value {packed} does not fit in {depth} bits")
    return tuple((packed >> (depth - 1 - i)) & 1 for i in range(depth))


def block_string(packed: int, depth: int) -> str:
    """Render the block ``1 b1 ... bk`` whose trailing bits pack to ``packed``."""
    if depth == 0:
        return "1"
    return "1" + format(packed, f"0{depth}b")


def block_value(bits: Iterable[int]) -> int:
    """Integer value of the block ``1 b1 ... bk``: 2^k plus the packed bits."""
    out = validate_bits(bits)
    return (1 << len(out)) | pack_bits(out)


def dyadic_value(bits: Iterable[int]) -> Fraction:
    """Exact value of the binary fraction ``0.b1 b2 ... bk``, in [0, 1)."""
    out = validate_bits(bits)
    return Fraction(pack_bits(out), 1 << len(out))


def truncate(bits: Iterable[int], places: int) -> Fraction:
    """Exact value of the fraction cut after its first ``places`` bits."""
    out = validate_bits(bits)
    if not 0 <= places <= len(out):
        raise ValueError(f"places must be in [0, {len(out)}], got {places}")
    return Fraction(pack_bits(out[:places]), 1 << places)


def complement(bits: Iterable[int]) -> Bits:
    """Flip every bit; realizes the substitution t = 1 - x bit by bit."""
    return tuple(1 - b for b in validate_bits(bits))


def _paired(alpha: Iterable[int], x: Iterable[int]) -> tuple[Bits, Bits]:
    a = validate_bits(alpha)
    b = validate_bits(x)
    if len(a) != len(b):
        raise ValueError(f"bit vectors differ in length: {len(a)} vs {len(b)}")
    return a, b


def excess_population(alpha: Iterable[int], x: Iterable[int]) -> int:
    """Extra population units the enhancement chunks of a scale contribute.

    Splitting the integers below the scale ``1 a1 ... ak 0...0`` into a base
    chunk plus one enhancement chunk per scale bit, chunk r holds numbers
    starting with the target block ``1 x1 ... xk`` exactly when the scale
    bits match the target up to position r-1 and the target bit x_r is 0.
    Term by term that is ``a_r * [x_r = 0] * prod_{i<r} [a_i = x_i]``, and
    this function evaluates the sum literally (the prefix-match product is
    carried along instead of being recomputed per term).
    """
    a, t = _paired(alpha, x)
    total = 0
    prefix_match = 1
    for r in range(len(t)):
        total += a[r] * (1 - t[r]) * prefix_match
        if a[r] != t[r]:
            prefix_match = 0
    return total


def excess_population_fast(alpha: Iterable[int], x: Iterable[int]) -> int:
    """Shortcut for :func:`excess_population`: 1 iff alpha > x dyadically.

    At the first index where the two vectors differ, a term can fire only
    for a 1-over-0 mismatch, and every later term is killed by the broken
    prefix match; equal vectors contribute nothing.  So the sum collapses
    to a single first-difference comparison.
    """
    a, t = _paired(alpha, x)
    for hi, lo in zip(a, t):
        if hi != lo:
            return 1 if hi > lo else 0
    return 0


@dataclass(frozen=True)
class Block:
    """A leading block ``1 b1 ... bk``, identified by the bits after the 1."""

    bits: Bits

    def __post_init__(self) -> None:
        object.__setattr__(self, "bits", validate_bits(self.bits))

    @property
    def depth(self) -> int:
        return len(self.bits)

    @property
    def value(self) -> int:
        return block_value(self.bits)

    @classmethod
    def from_string(cls, digits: str) -> "Block":
        if not digits or digits[0] != "1":
            raise ValueError(f"a binary block must start with 1, got {digits!r}")
        return cls(tuple(int(c) for c in digits[1:]))

    @classmethod
    def from_value(cls, value: int) -> "Block":
        if value < 1:
            raise ValueError(f"block value must be >= 1, got {value}")
        depth = value.bit_length() - 1
        return cls(unpack_bits(value - (1 << depth), depth))

    def __str__(self) -> str:
        return block_string(pack_bits(self.bits), self.depth)


def as_block_value(block: Union[Block, str, int], base: int = 2) -> int:
    """Coerce a block given as :class:`Block`, digit string, or value.

    Strings are read as digits in ``base`` (leading digit nonzero); plain
    integers are taken as the block value itself.
    """
    if isinstance(block, Block):
        return block.value
    if isinstance(block, str):
        if not block or block[0] == "0":
            raise ValueError(f"block digits must not start with 0: {block!r}")
        value = int(block, base)
    else:
        value = int(block)
    if value < 1:
        raise ValueError(f"block value must be >= 1, got {value}")
    return value
