"""Floor-log sequence tests: normalization, u/v terms, jump positions."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from floorlog.exact import ExactReal
from floorlog.sequences import (
    ConsistencyError,
    FloorLogInstance,
    NormalizedInstance,
    jump_positions,
    normalize,
    u_seq,
    u_term,
    v_seq,
    verify_jumps_against_v,
)
from oracles import oracle_c, oracle_u

SQRT2 = ExactReal.sqrt(2)


def inst(alpha, beta, base) -> FloorLogInstance:
    return FloorLogInstance(ExactReal.parse(str(alpha)), ExactReal.parse(str(beta)), base)


def norm_of(alpha, beta, base) -> NormalizedInstance:
    return normalize(inst(alpha, beta, base))


def test_u_frozen_sqrt2():
    n = norm_of("sqrt(2)", 0, 2)
    u = u_seq(n, 6)
    assert u.start == 1
    assert list(u.values) == [0, 1, 2, 2, 2, 3]


def test_v_frozen_sqrt2():
    n = norm_of("sqrt(2)", 0, 2)
    v, n0 = v_seq(n, 5)
    assert list(v.values) == [1, 1, 0, 0, 1]
    assert n0 is None


def test_u_frozen_three_halves():
    n = norm_of("3/2", 0, 2)
    u = u_seq(n, 5)
    assert list(u.values) == [0, 1, 2, 2, 2]


def test_c_frozen_sqrt2():
    n = norm_of("sqrt(2)", 0, 2)
    jd = jump_positions(n, 8)
    assert list(jd.c) == [1, 2, 5, 11, 22, 45, 90, 181]
    assert jd.integrality_hits == ()


def test_c_frozen_three_halves():
    n = norm_of("3/2", 0, 2)
    jd = jump_positions(n, 6)
    # floor(2^{k+1}/3)
    assert list(jd.c) == [1, 2, 5, 10, 21, 42]


def test_c_integrality_alpha_one():
    n = norm_of(1, 0, 2)
    jd = jump_positions(n, 4)
    assert list(jd.c) == [2, 4, 8, 16]
    assert jd.first_integrality_hit == 1
    assert len(jd.integrality_hits) >= 2  # a rationality witness by itself


def test_normalize_shift_example():
    n = norm_of(3, 5, 2)
    assert n.alpha == Fraction(3, 2)
    assert n.beta == 1
    assert n.index_shift == 1
    assert n.value_offset == 1


def test_normalize_identity_holds():
    raw = inst(3, 5, 2)
    n = normalize(raw)
    for k in range(n.identity_start, n.identity_start + 40):
        orig = u_term(raw.alpha, raw.beta, raw.base, k)
        mapped = n.value_offset + u_term(n.alpha, n.beta, n.base, k + n.index_shift)
        assert orig == mapped


def test_normalize_negative_beta():
    raw = inst("3/2", -4, 2)
    n = normalize(raw)
    assert n.beta.sign() >= 0
    assert n.beta < n.alpha
    assert n.index_shift < 0
    for k in range(n.identity_start, n.identity_start + 30):
        orig = u_term(raw.alpha, raw.beta, raw.base, k)
        mapped = n.value_offset + u_term(n.alpha, n.beta, n.base, k + n.index_shift)
        assert orig == mapped


def test_normalize_surd_above_base():
    n = norm_of("1+1*sqrt(2)", 0, 2)  # 2.414... needs one halving
    assert n.value_offset == 1
    assert n.alpha < 2
    assert n.alpha > 1


def test_normalize_small_alpha_scales_up():
    raw = inst("1/3", 0, 2)
    n = normalize(raw)
    assert n.alpha == Fraction(4, 3)
    assert n.value_offset == -2
    for k in range(n.identity_start, n.identity_start + 30):
        orig = u_term(raw.alpha, raw.beta, raw.base, k)
        mapped = n.value_offset + u_term(n.alpha, n.beta, n.base, k + n.index_shift)
        assert orig == mapped


def test_normalize_small_alpha_large_beta():
    # scaling up multiplies beta too, so the index shift happens afterwards
    raw = inst("1/4", 5, 2)
    n = normalize(raw)
    assert n.alpha == 1
    assert n.beta < n.alpha
    assert n.index_shift == 20  # beta*4 = 20 absorbed one alpha at a time
    for k in range(n.identity_start, n.identity_start + 30):
        orig = u_term(raw.alpha, raw.beta, raw.base, k)
        mapped = n.value_offset + u_term(n.alpha, n.beta, n.base, k + n.index_shift)
        assert orig == mapped


def test_n_min():
    assert inst("sqrt(2)", 0, 2).n_min == 1
    assert inst("3/2", "1/3", 2).n_min == 0
    assert inst("3/2", -4, 2).n_min == 3  # 3/2*n > 4 first at n = 3
    assert norm_of("sqrt(2)", 0, 2).n_min == 1


def test_u_negative_levels():
    # alpha n + beta in (0, 1) floors the log below zero
    n = inst("22/7", "1/3", 2)
    assert u_term(n.alpha, n.beta, n.base, 0) == -2  # 1/3 in [1/4, 1/2)
    assert oracle_u(n.alpha, n.beta, 2, 0) == -2


def test_u_rejects_nonpositive_argument():
    raw = inst("3/2", -4, 2)
    with pytest.raises(ValueError):
        u_term(raw.alpha, raw.beta, raw.base, 2)  # 3 - 4 < 0


def test_instance_validation():
    with pytest.raises(ValueError):
        inst(0, 0, 2)
    with pytest.raises(ValueError):
        inst("-3/2", 0, 2)
    with pytest.raises(ValueError):
        inst(1, 0, 1)
    with pytest.raises(ConsistencyError):
        NormalizedInstance(ExactReal(3), ExactReal(0), 2)


def test_jump_cross_check_sqrt2():
    n = norm_of("sqrt(2)", 0, 2)
    verify_jumps_against_v(n, jump_positions(n, 9), 400)


def test_jump_cross_check_with_integrality():
    n = norm_of(1, 0, 2)
    verify_jumps_against_v(n, jump_positions(n, 6), 80)


st_alpha = st.one_of(
    st.fractions(min_value=Fraction(1, 4), max_value=9, max_denominator=12).map(
        lambda f: ExactReal(f)
    ),
    st.tuples(
        st.fractions(min_value=0, max_value=3, max_denominator=6),
        st.fractions(min_value=Fraction(1, 6), max_value=2, max_denominator=6),
        st.sampled_from([2, 3, 5]),
    ).map(lambda t: ExactReal(t[0]) + ExactReal(t[1]) * ExactReal.sqrt(t[2])),
)
st_beta = st.fractions(min_value=-3, max_value=6, max_denominator=9).map(ExactReal)
st_base = st.sampled_from([2, 3, 10])


@settings(max_examples=80, deadline=None)
@given(alpha=st_alpha, beta=st_beta, base=st_base)
def test_normalize_invariants_and_identity(alpha, beta, base):
    raw = FloorLogInstance(alpha, beta, base)
    n = normalize(raw)
    assert n.beta.sign() >= 0
    assert n.beta < n.alpha
    assert n.alpha < base
    assert n.alpha >= 1
    for k in range(n.identity_start, n.identity_start + 12):
        orig = u_term(raw.alpha, raw.beta, raw.base, k)
        mapped = n.value_offset + u_term(n.alpha, n.beta, n.base, k + n.index_shift)
        assert orig == mapped


@settings(max_examples=50, deadline=None)
@given(alpha=st_alpha, beta=st_beta, base=st_base, n=st.integers(min_value=0, max_value=300))
def test_u_matches_oracle(alpha, beta, base, n):
    raw = FloorLogInstance(alpha, beta, base)
    if n < raw.n_min:
        n = raw.n_min
    assert u_term(alpha, beta, base, n) == oracle_u(alpha, beta, base, n)


@settings(max_examples=40, deadline=None)
@given(alpha=st_alpha, beta=st_beta, base=st_base)
def test_c_matches_oracle_and_v_alignment(alpha, beta, base):
    n = normalize(FloorLogInstance(alpha, beta, base))
    jd = jump_positions(n, 10)
    for k in (1, 2, 3, 7, 10):
        assert jd.at(k) == oracle_c(n.alpha, n.beta, base, k)
    verify_jumps_against_v(n, jump_positions(n, 5), jd.at(5) + 2)


@settings(max_examples=50, deadline=None)
@given(alpha=st_alpha, beta=st_beta, base=st_base)
def test_v_is_eventually_binary(alpha, beta, base):
    n = normalize(FloorLogInstance(alpha, beta, base))
    _, n0 = v_seq(n, 600)
    if n0 is not None:
        # violations live in a finite prefix; with normalized data they are
        # confined to the very start where the argument is still below 1
        assert n.argument(n0) < 1
