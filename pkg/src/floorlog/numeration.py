"""Base-b words, greedy digit expansions and characteristic words.

Words are tuples of nonnegative ints, most significant digit first.  A word
produced by ``to_word`` is canonical (digits < b, no leading zero, and 0 is
the single digit 0), but ``from_word`` deliberately accepts digits >= b as
well: the jump-digit sequences feeding this module live on the alphabet
{0, ..., 2b-2}.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .exact import ExactReal

Word = tuple[int, ...]


def to_word(n: int, base: int) -> Word:
    """Canonical base-b expansion of n >= 0, MSD first; (0)_b is (0,)."""
    if base < 2:
        raise ValueError("base must be at least 2")
    if n < 0:
        raise ValueError("to_word expects a nonnegative integer")
    if n == 0:
        return (0,)
    digits = []
    while n:
        n, r = divmod(n, base)
        digits.append(int(r))
    return tuple(reversed(digits))


def from_word(digits: Iterable[int], base: int) -> int:
    """Horner evaluation of a digit word; digits may exceed base-1.

    from_word("1002", 2) is 10 and a digit word like (1, 3) in base 2
    evaluates to 5.
    """
    if base < 2:
        raise ValueError("base must be at least 2")
    value = 0
    seen = False
    for d in digits:
        d = int(d)
        if d < 0:
            raise ValueError("digits must be nonnegative")
        value = value * base + d
        seen = True
    if not seen:
        raise ValueError("empty digit word has no value")
    return value


def word_str(word: Sequence[int]) -> str:
    """Compact rendering: "1010" when digits fit one glyph, else "[1,12,0]"."""
    if all(0 <= d <= 9 for d in word):
        return "".join(str(d) for d in word)
    return "[" + ",".join(str(d) for d in word) + "]"


def parse_word(text: str) -> Word:
    """Inverse of word_str for both renderings."""
    text = text.strip()
    if text.startswith("["):
        if not text.endswith("]"):
            raise ValueError(f"unterminated digit list {text!r}")
        inner = text[1:-1].strip()
        if not inner:
            return ()
        return tuple(int(t) for t in inner.split(","))
    if not text:
        return ()
    if not text.isdigit():
        raise ValueError(f"cannot read {text!r} as a digit word")
    return tuple(int(ch) for ch in text)


class DigitStream:
    """Lazy greedy base-b expansion of some x in [0, 1), exact and memoized.

    The first N digits are the base-b digits of floor(x * b^N), so extending
    the prefix costs one exact floor per batch.  Greedy means terminating
    expansions get a tail of zeros, never of (b-1)s, which keeps digit tails
    aligned with fractional parts: 0.d1 d2 ... read back through from_word
    always equals floor-scaled x.
    """

    def __init__(self, x: ExactReal, base: int):
        if base < 2:
            raise ValueError("base must be at least 2")
        x = ExactReal(x)
        if x.sign() < 0 or x >= 1:
            raise ValueError("DigitStream needs 0 <= x < 1")
        self.base = base
        self._digits: list[int] = []
        self._residual = x  # frac(x * b^len), always in [0, 1)

    def prefix(self, count: int) -> list[int]:
        """Digits d_1 .. d_count as a list (positional, MSD first)."""
        while len(self._digits) < count:
            batch = max(16, count - len(self._digits))
            scaled = self._residual * self.base**batch
            block = scaled.__floor__()
            word = to_word(block, self.base)
            # residual < 1 makes block < b**batch, so word fits the batch
            self._digits.extend((0,) * (batch - len(word)) if block else (0,) * batch)
            if block:
                self._digits.extend(word)
            self._residual = scaled - block
        return self._digits[:count]

    def digit(self, i: int) -> int:
        """The coefficient of base**(-i), i >= 1."""
        if i < 1:
            raise ValueError("digit positions are 1-based")
        return self.prefix(i)[i - 1]


def digit_stream(x: ExactReal, base: int, count: int) -> list[int]:
    """First ``count`` greedy base-b digits of x in [0, 1)."""
    return DigitStream(x, base).prefix(count)


def characteristic_word(members: Iterable[int], n_max: int) -> list[int]:
    """0/1 word w with w[n] = 1 iff n is in ``members``, for n in 0..n_max."""
    w = [0] * (n_max + 1)
    for n in members:
        if 0 <= n <= n_max:
            w[n] = 1
    return w
