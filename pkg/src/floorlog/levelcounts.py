"""Population counts of the floor-log levels and their difference sequence.

f_k counts how many indices n sit at level k, i.e. have u_n = k.  Each
level occupies the half-open index interval [(base^k - beta)/alpha,
(base^(k+1) - beta)/alpha), so the count is a difference of exact ceilings
and never needs enumeration; enumeration is still run over a small prefix
as an independent audit.  The derived sequence d_k = f_{k+1} - base*f_k
mirrors the jump-digit differences on an aligned tail, and its ultimate
periodicity is decided with the same modular-orbit machinery, extended to
cover instances where crossings land on integers forever.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import ExactReal
from .jumpdigits import (
    ModCycleCertificate,
    PeriodicityVerdict,
    detect_period,
    minimize_cycle,
    r_stream,
)
from .sequences import (
    ConsistencyError,
    JumpData,
    NormalizedInstance,
    SeqSlice,
    jump_positions,
    u_term,
)


def _level_start(norm: NormalizedInstance, k: int) -> int:
    """First index n (>= n_min) whose argument has reached base^k."""
    power = ExactReal(Fraction(norm.base) ** k)
    return max(((power - norm.beta) / norm.alpha).ceil(), norm.n_min)


@dataclass
class LevelCounts:
    """Exact level populations for one instance.

    f maps level k to its count for k_min <= k <= k_max; negative levels
    (argument still below 1) are included.  enum_verified_to is the highest
    level whose count was independently confirmed by brute enumeration;
    m0 and alignment are filled in by align_m0.
    """

    norm: NormalizedInstance
    k_min: int
    k_max: int
    f: dict[int, int]
    enum_verified_to: int | None = None
    m0: int | None = None
    alignment: "AlignmentResult | None" = None

    def at(self, k: int) -> int:
        if not self.k_min <= k <= self.k_max:
            raise IndexError(f"level {k} outside {self.k_min}..{self.k_max}")
        return self.f[k]


def f_counts(norm: NormalizedInstance, k_max: int, enum_cap: int = 2000) -> LevelCounts:
    """Count every level up to k_max two ways and reconcile them.

    The primary route is the ceiling-difference formula, exact at any
    depth.  The audit route enumerates n up to enum_cap, recomputes u_n
    term by term, and compares tallies on every level that lies fully
    inside the enumerated range; disagreement raises ConsistencyError.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    k_min = u_term(norm.alpha, norm.beta, norm.base, norm.n_min)
    f: dict[int, int] = {}
    first = _level_start(norm, k_min)
    for k in range(k_min, k_max + 1):
        nxt = _level_start(norm, k + 1)
        f[k] = nxt - first
        first = nxt

    # brute audit over the enumerable prefix
    top = min(enum_cap, _level_start(norm, k_max + 1) - 1)
    tally: dict[int, int] = {}
    for n in range(norm.n_min, top + 1):
        lvl = u_term(norm.alpha, norm.beta, norm.base, n)
        tally[lvl] = tally.get(lvl, 0) + 1
    verified = None
    for k in range(k_min, k_max + 1):
        if _level_start(norm, k + 1) - 1 > top:
            break
        if tally.get(k, 0) != f[k]:
            raise ConsistencyError(
                f"level {k}: formula says {f[k]}, enumeration says {tally.get(k, 0)}"
            )
        verified = k
    return LevelCounts(norm=norm, k_min=k_min, k_max=k_max, f=f,
                       enum_verified_to=verified)


@dataclass(frozen=True)
class AlignmentResult:
    """Outcome of matching level counts against jump-position differences.

    m0 is the least offset with f_k = c_{k+m0+1} - c_{k+m0} on the tail of
    the computed range (None when nothing aligns: either the range is too
    short or crossings keep landing on integers, which shifts single
    endpoints forever).  threshold is the first k of the verified tail;
    also_valid flags any larger offsets that validate too.
    """

    m0: int | None
    threshold: int | None
    checked_to: int
    also_valid: tuple[int, ...] = ()
    mismatches: tuple[int, ...] = ()
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.m0 is not None


def align_m0(lc: LevelCounts, jd: JumpData) -> AlignmentResult:
    """Find the least offset aligning counts with jump differences.

    An offset is accepted when the identity holds on the entire second half
    of the comparable range, i.e. violations, if any, are confined to a
    prefix; the threshold where the clean tail starts is reported rather
    than assumed.  Negative and zero levels never take part.  The result is
    also recorded on lc.
    """
    found: list[tuple[int, int, tuple[int, ...]]] = []
    for m0 in range(0, max(0, min(8, jd.k_max - 3)) + 1):
        k_top = min(lc.k_max, jd.k_max - m0 - 1)
        if k_top < 6:
            continue
        bad = tuple(
            k for k in range(1, k_top + 1)
            if lc.f[k] != jd.at(k + m0 + 1) - jd.at(k + m0)
        )
        if not bad or bad[-1] <= k_top // 2:
            found.append((m0, k_top, bad))
    if not found:
        k_top = min(lc.k_max, jd.k_max - 1)
        result = AlignmentResult(
            m0=None, threshold=None, checked_to=max(k_top, 0),
            note="no offset aligns on this range: too short, or exact "
                 "integer crossings recur and keep shifting single endpoints",
        )
    else:
        m0, k_top, bad = found[0]
        result = AlignmentResult(
            m0=m0,
            threshold=(bad[-1] + 1) if bad else 1,
            checked_to=k_top,
            also_valid=tuple(m for m, _, _ in found[1:]),
            mismatches=bad,
        )
    lc.m0 = result.m0
    lc.alignment = result
    return result


def d_seq(lc: LevelCounts) -> SeqSlice:
    """d_k = f_{k+1} - base*f_k for k from max(0, k_min) to k_max - 1.

    When lc has been aligned, the aligned tail is cross-checked against the
    jump-digit differences r_{k+m0+1} - r_{k+m0}; any mismatch raises
    ConsistencyError, since both sides are exact.
    """
    b = lc.norm.base
    start = max(0, lc.k_min)
    values = tuple(lc.f[k + 1] - b * lc.f[k] for k in range(start, lc.k_max))
    slice_ = SeqSlice(start=start, values=values)
    if lc.m0 is not None:
        m0 = lc.m0
        t = max(lc.alignment.threshold, start, 1)
        r_vals = r_stream(lc.norm, lc.k_max + m0 + 1)
        for k in range(t, lc.k_max):
            want = r_vals[k + m0] - r_vals[k + m0 - 1]
            if slice_.at(k) != want:
                raise ConsistencyError(
                    f"d_{k} = {slice_.at(k)} but jump digits predict {want}"
                )
    return slice_


def _residue_orbit(base: int, modulus: int) -> tuple[int, int]:
    """(preperiod, period) of base^k mod modulus, k counted from 1."""
    seen: dict[int, int] = {}
    residue = base % modulus
    k = 1
    while residue not in seen:
        seen[residue] = k
        residue = residue * base % modulus
        k += 1
    return seen[residue] - 1, k - seen[residue]


def decide_d_periodicity(norm: NormalizedInstance, window: int) -> PeriodicityVerdict:
    """Decide whether d is ultimately periodic, with a certificate.

    Rational alpha = p/q: d_k is a function of base^k mod p, because both
    the jump-digit differences and the pattern of exact integer crossings
    are; the orbit of that residue is the proven cover, and the minimized
    cycle is certified the same way as for r.
    When the count/jump alignment exists, the certificate's difference-map
    lineage is exercised directly: the r certificate must predict the
    aligned tail of d, and partial sums of d must rebuild r.  Irrational
    alpha: aperiodic, no search needed, since d ultimately periodic would
    force r, and then alpha, to be rational.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    if not norm.alpha.is_rational:
        return PeriodicityVerdict.aperiodic_by_theorem(
            "alpha is an irrational quadratic surd; the count-difference "
            "sequence is ultimately periodic exactly when alpha is rational"
        )

    modulus = norm.alpha.as_fraction().numerator
    orbit_pre, orbit_per = _residue_orbit(norm.base, modulus)
    span = max(orbit_pre + 2 * orbit_per, window)

    lc = f_counts(norm, span + 1)
    jd = jump_positions(norm, span + 2)
    align_m0(lc, jd)
    d_slice = d_seq(lc)  # runs the aligned-tail cross-check internally
    d_list = [d_slice.at(k) for k in range(1, span + 1)]

    preperiod, period = minimize_cycle(d_list, orbit_pre, orbit_per)

    if lc.m0 is not None:
        # difference-map lineage: the r certificate predicts the d tail,
        # and summing d walks r forward again
        rv = detect_period(norm, window)
        cert_r = rv.certificate
        m0, t = lc.m0, lc.alignment.threshold
        r_vals = r_stream(norm, span + m0 + 2)
        acc = r_vals[t + m0 - 1]
        for k in range(t, span + 1):
            if cert_r.predict(k + m0 + 1) - cert_r.predict(k + m0) != d_list[k - 1]:
                raise ConsistencyError(
                    f"r certificate fails to predict d_{k} through the "
                    f"difference map"
                )
            acc += d_list[k - 1]
            if acc != r_vals[k + m0]:
                raise ConsistencyError(
                    f"partial sums of d lose track of r at k={k}"
                )

    cert = ModCycleCertificate(
        modulus=modulus,
        orbit_preperiod=orbit_pre,
        orbit_period=orbit_per,
        preperiod=preperiod,
        period=period,
        head=tuple(d_list[:preperiod]),
        cycle=tuple(d_list[preperiod : preperiod + period]),
        integrality_hits=jd.integrality_hits,
    )
    return PeriodicityVerdict.periodic(preperiod, period, cert, certified=True)
