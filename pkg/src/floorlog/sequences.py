"""The floor-log sequence u_n = floor(log_b(alpha*n + beta)) and its jumps.

A raw instance (alpha, beta, base) is first normalized so that
0 <= beta < alpha < base.  Scaling alpha by base**-m trades into a constant
value offset, and shifting beta by whole multiples of alpha trades into an
index shift, so the normalized sequence reproduces the original one exactly
on a computable tail.  All decisions below use exact arithmetic only.

Beyond a finite prefix the difference sequence v_n = u_{n+1} - u_n is a 0/1
word, and v_n = 1 happens exactly at the jump positions
c_k = floor((base^k - beta)/alpha), which drive everything downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import ExactReal
from .numeration import to_word


class ConsistencyError(AssertionError):
    """An internal cross-check failed; results cannot be trusted."""


@dataclass(frozen=True)
class FloorLogInstance:
    """Raw problem data for u_n = floor(log_base(alpha*n + beta))."""

    alpha: ExactReal
    beta: ExactReal
    base: int

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("base must be at least 2")
        if not isinstance(self.alpha, ExactReal) or not isinstance(self.beta, ExactReal):
            raise TypeError("alpha and beta must be ExactReal")
        if self.alpha.sign() <= 0:
            raise ValueError("alpha must be positive")

    @property
    def n_min(self) -> int:
        """Least n >= 0 with alpha*n + beta > 0 (1 when beta == 0)."""
        if self.beta.sign() > 0:
            return 0
        # n > -beta/alpha, so the least usable index is floor(-beta/alpha)+1
        return max(0, (-self.beta / self.alpha).floor() + 1)

    def argument(self, n: int) -> ExactReal:
        return self.alpha * n + self.beta

    def describe(self) -> dict:
        return {
            "alpha": str(self.alpha),
            "beta": str(self.beta),
            "base": self.base,
            "alpha_is_rational": self.alpha.is_rational,
        }


@dataclass(frozen=True)
class NormalizedInstance:
    """An instance with 0 <= beta < alpha < base, alpha >= 1, plus the books to map back.

    For every n >= identity_start,

        u_original(n) = value_offset + u_normalized(n + index_shift).

    index_shift is negative when the original beta was negative (the
    normalized sequence then starts earlier than the original).
    """

    alpha: ExactReal
    beta: ExactReal
    base: int
    index_shift: int = 0
    value_offset: int = 0
    identity_start: int = 0

    def __post_init__(self):
        if (
            self.beta.sign() < 0
            or self.beta >= self.alpha
            or self.alpha >= self.base
            or self.alpha < 1
        ):
            raise ConsistencyError(
                f"normalization violated: alpha={self.alpha} beta={self.beta} base={self.base}"
            )

    @property
    def n_min(self) -> int:
        return 0 if self.beta.sign() > 0 else 1

    def instance(self) -> FloorLogInstance:
        return FloorLogInstance(self.alpha, self.beta, self.base)

    def argument(self, n: int) -> ExactReal:
        return self.alpha * n + self.beta

    def describe(self) -> dict:
        d = self.instance().describe()
        d.update(
            index_shift=self.index_shift,
            value_offset=self.value_offset,
            identity_start=self.identity_start,
        )
        return d


def normalize(inst: FloorLogInstance) -> NormalizedInstance:
    """Rewrite an instance into the 0 <= beta < alpha < base, alpha >= 1 normal form."""
    alpha, beta, b = inst.alpha, inst.beta, inst.base
    value_offset = 0
    # alpha >= base: divide the argument by base**m, absorbing m into u
    while alpha >= b:
        alpha = alpha / b
        beta = beta / b
        value_offset += 1
    # alpha < 1: multiply up instead; without this the leading jump count
    # can overrun the digit alphabet
    while alpha < 1:
        alpha = alpha * b
        beta = beta * b
        value_offset -= 1
    index_shift = 0
    if beta >= alpha:
        m = (beta / alpha).floor()
        beta = beta - alpha * m
        index_shift = m
    elif beta.sign() < 0:
        m = (-beta / alpha).ceil()
        beta = beta + alpha * m
        index_shift = -m
    # identity u_orig(n) = offset + u_norm(n + shift) needs both sides defined
    n_min_norm = 0 if beta.sign() > 0 else 1
    start = max(inst.n_min, n_min_norm - index_shift)
    return NormalizedInstance(
        alpha=alpha,
        beta=beta,
        base=b,
        index_shift=index_shift,
        value_offset=value_offset,
        identity_start=start,
    )


def u_term(alpha: ExactReal, beta: ExactReal, base: int, n: int) -> int:
    """Exact u_n, valid whenever alpha*n + beta > 0; may be negative."""
    x = alpha * n + beta
    if x.sign() <= 0:
        raise ValueError(f"u_{n} undefined: alpha*{n}+beta is not positive")
    t = x.floor()
    if t >= 1:
        # base^k <= floor(x) <= x < floor(x)+1 <= base^(k+1) for the digit
        # length k+1 of floor(x), so u_n is that length minus one.
        return len(to_word(t, base)) - 1
    k = 0
    while t < 1:
        x = x * base
        t = x.floor()
        k -= 1
    return k


@dataclass(frozen=True)
class SeqSlice:
    """Integer sequence values on a contiguous index range [start, stop)."""

    start: int
    values: tuple[int, ...]

    @property
    def stop(self) -> int:
        return self.start + len(self.values)

    def at(self, n: int) -> int:
        if not self.start <= n < self.stop:
            raise IndexError(f"index {n} outside [{self.start}, {self.stop})")
        return self.values[n - self.start]

    def items(self):
        return zip(range(self.start, self.stop), self.values)


def u_seq(inst: FloorLogInstance | NormalizedInstance, n_max: int) -> SeqSlice:
    """u_n for n from n_min through n_max inclusive."""
    start = inst.n_min
    if n_max < start:
        return SeqSlice(start, ())
    vals = tuple(u_term(inst.alpha, inst.beta, inst.base, n) for n in range(start, n_max + 1))
    return SeqSlice(start, vals)


def v_seq(inst: FloorLogInstance | NormalizedInstance, n_max: int) -> tuple[SeqSlice, int | None]:
    """Differences v_n = u_{n+1} - u_n for n in [n_min, n_max], plus N0.

    N0 is the last observed index whose difference is outside {0, 1}, or None
    if the whole computed range is already a 0/1 word.  The theory promises
    such violations live in a finite prefix; this reports what the window
    actually shows rather than assuming a bound.
    """
    u = u_seq(inst, n_max + 1)
    if len(u.values) < 2:
        return SeqSlice(u.start, ()), None
    diffs = tuple(b - a for a, b in zip(u.values, u.values[1:]))
    sl = SeqSlice(u.start, diffs)
    n0 = None
    for n, v in sl.items():
        if v not in (0, 1):
            n0 = n
    return sl, n0


@dataclass(frozen=True)
class JumpData:
    """Jump positions c_k = floor((base^k - beta)/alpha), k = 1..k_max.

    integrality_hits collects the k where (base^k - beta)/alpha landed on an
    integer exactly.  Two distinct hits certify alpha rational on their own
    (the difference of the two relations solves for alpha), so the list
    doubles as a rationality witness.
    """

    k_max: int
    c: tuple[int, ...]
    integrality_hits: tuple[int, ...] = ()

    def at(self, k: int) -> int:
        if not 1 <= k <= self.k_max:
            raise IndexError(f"jump index {k} outside 1..{self.k_max}")
        return self.c[k - 1]

    @property
    def first_integrality_hit(self) -> int | None:
        return self.integrality_hits[0] if self.integrality_hits else None


def jump_positions(norm: NormalizedInstance, k_max: int) -> JumpData:
    """Exact c_k for k = 1..k_max with integrality bookkeeping."""
    alpha, beta, b = norm.alpha, norm.beta, norm.base
    cs = []
    hits = []
    power = 1
    for k in range(1, k_max + 1):
        power *= b
        y = (power - beta) / alpha
        c = y.floor()
        cs.append(c)
        if y == c:
            hits.append(k)
    return JumpData(k_max=k_max, c=tuple(cs), integrality_hits=tuple(hits))


def verify_jumps_against_v(
    norm: NormalizedInstance, jumps: JumpData, n_cap: int
) -> None:
    """Cross-check v_n = 1 exactly at the jump positions, within reach.

    At an integrality hit the jump to level k happens at n = c_k itself, so
    the unit step sits one slot earlier; both layouts are checked.  The scan
    runs from the first n whose argument reaches 1 (below that, steps target
    levels k < 1 which JumpData does not cover) and stops before the last
    known jump, so every step inside the window has a prediction.  Raises
    ConsistencyError on any mismatch.
    """
    if jumps.k_max < 1:
        return
    start = max(norm.n_min, ((1 - norm.beta) / norm.alpha).ceil())
    cap = min(n_cap, jumps.at(jumps.k_max) - 1)
    jump_set = set()
    shifted = set()
    for k in range(1, jumps.k_max + 1):
        c = jumps.at(k)
        (shifted if k in jumps.integrality_hits else jump_set).add(c)
    u_prev = None
    for n in range(start, cap + 2):
        u_here = u_term(norm.alpha, norm.beta, norm.base, n)
        if u_prev is not None:
            val = u_here - u_prev
            m = n - 1
            expected = 1 if (m in jump_set or m + 1 in shifted) else 0
            if val != expected:
                raise ConsistencyError(
                    f"v_{m} = {val} but jump positions predict {expected}"
                )
        u_prev = u_here


def v_indicator(norm: NormalizedInstance, size: int) -> bytearray:
    """The unit-step indicator v_n = u_{n+1} - u_n for 0 <= n <= size.

    Read directly off the jump positions: the step to level k sits at
    index c_k, except when the level boundary is hit exactly, where it
    moves one slot earlier.  Cheap even for large size because only
    log-many jumps land inside the range.
    """
    if size < 0:
        raise ValueError("size must be nonnegative")
    k_max = 4
    jumps = jump_positions(norm, k_max)
    while jumps.at(jumps.k_max) <= size:
        k_max += 4
        jumps = jump_positions(norm, k_max)
    bm = bytearray(size + 1)
    for k in range(1, jumps.k_max + 1):
        c = jumps.at(k)
        pos = c - 1 if k in jumps.integrality_hits else c
        if 0 <= pos <= size:
            bm[pos] = 1
    return bm
