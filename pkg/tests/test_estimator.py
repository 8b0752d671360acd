import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eld.compressor import DEFAULT_ALPHABET, Params
from eld.core_ld import levenshtein
from eld.estimator import (
    EXACT,
    INCOMPATIBLE,
    NOT_APPLICABLE,
    OK,
    EmptyDigests,
    IncompatibleParams,
    ZeroLength,
    compare,
    error_rate,
    estimate,
    round_half_away,
    significance,
)
from eld.signature import Signature, build, parse
from helpers import english_like

DOC_A = parse("docA,700,51,20,15,AABBCFF00192192")
DOC_B = parse("docB,500,51,20,10,AABBCCDDEE")


def test_worked_example():
    res = estimate(DOC_A, DOC_B, r=0.19)
    assert res.dig_diff == 5
    assert res.effective_c == 48
    assert res.dig_ld == 10
    assert res.scaled_dig_ld == pytest.approx(201.68, abs=0.01)
    assert res.file_length_diff == 200
    assert res.eld == 402


def test_argument_order_irrelevant():
    assert estimate(DOC_B, DOC_A, r=0.19) == estimate(DOC_A, DOC_B, r=0.19)


def test_self_comparison():
    res = estimate(DOC_A, DOC_A)
    assert (res.eld, res.dig_ld, res.dig_diff, res.file_length_diff) == (0, 0, 0, 0)
    assert res.delta == 1.0


def test_incompatible_rejected():
    other = Signature("x", 700, 101, 20, 3, b"abc")
    with pytest.raises(IncompatibleParams):
        estimate(DOC_A, other)
    cmp = compare(DOC_A, other)
    assert cmp.status == INCOMPATIBLE and cmp.eld is None


def test_empty_digests():
    e1 = Signature("e1", 5, 51, 20, 0, b"")
    e2 = Signature("e2", 9, 51, 20, 0, b"")
    with pytest.raises(EmptyDigests):
        estimate(e1, e2)


def test_rounding_half_away_from_zero():
    assert round_half_away(401.5) == 402
    assert round_half_away(402.5) == 403
    assert round_half_away(0.49) == 0
    assert round_half_away(-1.5) == -2


@pytest.mark.parametrize(
    "len_a, len_b, ld, delta",
    [
        (700, 700, 0, 1.000),
        (700, 700, 10, 0.986),
        (700, 350, 400, 0.857),
        (700, 100, 600, 1.000),
        (700, 700, 600, 0.143),
        (700, 350, 650, 0.143),
        (700, 100, 696, 0.040),
        (700, 200, 700, 0.000),
    ],
)
def test_delta_table(len_a, len_b, ld, delta):
    assert round(significance(len_a, len_b, ld), 3) == delta
    assert round(significance(len_b, len_a, ld), 3) == delta


@pytest.mark.parametrize(
    "ld, raw", [(70_000, 0.0), (69_650, 0.5), (69_300, 1.0)]
)
def test_ratio_guard(ld, raw):
    assert significance(70_000, 700, ld, max_ratio=None) == pytest.approx(raw)
    assert significance(70_000, 700, ld, max_ratio=10) is None


def test_delta_empty_short_digest():
    assert significance(10, 0, 10) is None


@pytest.mark.parametrize(
    "ld, eld, expected",
    [(1, 2, 0.00003125), (1000, 2000, 0.03125), (15_000, 30_000, 0.46875)],
)
def test_error_rate(ld, eld, expected):
    assert error_rate(ld, eld, 32_000, 32_000) == pytest.approx(expected)


def test_error_rate_exact_and_zero():
    assert error_rate(123, 123, 500, 400) == 0
    with pytest.raises(ZeroLength):
        error_rate(0, 0, 0, 0)


digests = st.binary(max_size=120).map(lambda b: bytes(DEFAULT_ALPHABET[x % 89] for x in b))


@given(digests, digests, st.integers(0, 50_000), st.integers(0, 50_000))
def test_invariants(da, db, la, lb):
    a = Signature("a", la + len(da), 51, 11, len(da), da)
    b = Signature("b", lb + len(db), 51, 11, len(db), db)
    if not da and not db:
        return
    res = estimate(a, b)
    rev = estimate(b, a)
    assert (res.eld, res.delta) == (rev.eld, rev.delta)
    assert res.eld >= res.file_length_diff == abs(a.file_length - b.file_length)
    assert res.scaled_dig_ld >= 0
    if res.delta is not None:
        assert 0.0 <= res.delta <= 1.0


@given(digests.filter(bool), st.integers(0, 10_000))
def test_self_estimate_is_zero(d, extra):
    a = Signature("a", len(d) + extra, 51, 11, len(d), d)
    assert estimate(a, a).eld == 0


def test_compare_fallback_for_tiny_digests():
    a = Signature("a", 30, 51, 11, 1, b"x")
    b = Signature("b", 40, 51, 11, 9, b"xxxxxxxxx")
    assert compare(a, b).status == NOT_APPLICABLE
    cmp = compare(a, b, fallback=lambda x, y: 17)
    assert (cmp.status, cmp.eld, cmp.delta) == (EXACT, 17, None)
    assert compare(a, b, fallback=lambda x, y: None).status == NOT_APPLICABLE


def test_compare_ok_matches_estimate():
    cmp = compare(DOC_A, DOC_B, r=0.19)
    assert cmp.status == OK
    assert (cmp.eld, cmp.dig_ld, cmp.effective_c) == (402, 10, 48)


def test_threshold_semantics():
    cmp = compare(DOC_A, DOC_B, r=0.19)  # delta 0.5
    assert cmp.passes(0.0) and cmp.passes(0.5) and not cmp.passes(0.51)
    na = compare(Signature("a", 30, 51, 20, 1, b"x"), DOC_B)
    assert na.passes(0.0) and not na.passes(0.01)


def test_deleted_block_estimate_close():
    doc = english_like(seed=11)
    rng = random.Random(11)
    p = Params(11, 11)
    a = build("orig", doc, p)
    for k in (300, 1200, 2500):
        start = rng.randrange(len(doc) - k)
        mod = doc[:start] + doc[start + k :]
        ld = levenshtein(doc, mod)
        eld = estimate(a, build("mod", mod, p)).eld
        assert abs(eld - ld) <= 0.15 * ld


@settings(max_examples=5, deadline=None)
@given(st.integers(0, 10_000))
def test_unrelated_random_inputs_have_low_delta(seed):
    rng = random.Random(seed)
    p = Params(51, 11)
    low = 0
    for _ in range(20):
        a = build("a", rng.randbytes(30_000), p)
        b = build("b", rng.randbytes(30_000), p)
        low += estimate(a, b).delta < 0.15
    assert low >= 19
