import itertools
import math

import pytest

from quatseq.constructions import (TemplateSpec, construct_2d,
                                   construct_4d_iii, construct_4d_iv,
                                   construct_aop_array, construct_seq_2n,
                                   coprime_product, extract_template,
                                   flatten_row_major, pointwise_product,
                                   template_sequence)
from quatseq.correlation import (array_autocorr, full_spectrum, is_perfect,
                                 right_autocorr)
from quatseq.quat import I, J, K, LipschitzQuat, ONE, UnitQuat, unit_mul, unit_pow
from quatseq.seqs import QuatArray, QuatSequence

# Frozen published listings of the power-of-two family.
SEQ_2N_LISTINGS = {
    1: "1,-i",
    2: "1,j,-1,j",
    3: "1,1,-i,-1,1,-1,-i,1",
    4: "1,1,j,-i,-1,i,j,-1,1,-1,j,i,-1,-i,j,1",
    5: ("1,1,1,j,-i,-k,-1,i,1,-i,-1,k,-i,-j,1,-1,"
        "1,-1,1,-j,-i,k,-1,-i,1,i,-1,-k,-i,j,1,1"),
    6: ("1,1,1,1,j,j,-i,-k,-1,-j,i,k,j,-i,-1,i,1,-i,-1,i,j,-k,i,j,-1,k,-i,-j,j,-1,1,-1,"
        "1,-1,1,-1,j,-j,-i,k,-1,j,i,-k,j,i,-1,-i,1,i,-1,-i,j,k,i,-j,-1,-k,-i,j,j,1,1,1"),
}


@pytest.mark.parametrize("n,expected", sorted(SEQ_2N_LISTINGS.items()))
def test_seq_2n_matches_published_listings(n, expected):
    assert ",".join(construct_seq_2n(n).tokens()) == expected


@pytest.mark.parametrize("n", range(1, 7))
def test_seq_2n_perfect_up_to_64(n):
    assert is_perfect(construct_seq_2n(n), side="both")


@pytest.mark.parametrize("n", range(1, 11))
def test_seq_2n_every_odd_shift_vanishes(n):
    s = construct_seq_2n(n)
    for tau in range(1, len(s), 2):
        assert right_autocorr(s, tau).is_zero()


def test_seq_2n_rejects_nonpositive_n():
    with pytest.raises(ValueError):
        construct_seq_2n(0)


def test_factored_quotient_sum_vanishes_for_odd_shifts():
    # The four-term quotient sum with exponent step -2*tau collapses to
    # zero for odd tau, which is what forces the odd-shift zeros above.
    from quatseq.quat import axis_power_sum
    for tau in range(1, 16, 2):
        assert axis_power_sum(I, -2 * tau, 1).is_zero()


def test_aop_array_entries():
    arr = construct_aop_array()
    assert arr.dims == (8, 8)
    assert arr.entry(1, 1) is I
    assert arr.entry(1, 2) is -J
    for b in range(8):
        assert arr.entry(0, b) is ONE


def test_aop_flattening_layout():
    arr = QuatArray((2, 2), [ONE, I, J, K])
    assert flatten_row_major(arr).tokens() == ["1", "i", "j", "k"]
    row = QuatArray((1, 4), [ONE, -I, J, -K])
    assert flatten_row_major(row).tokens() == ["1", "-i", "j", "-k"]


def test_aop_flattening_starts_like_published_sequence():
    seq = flatten_row_major(construct_aop_array())
    assert seq.tokens()[:12] == ["1"] * 9 + ["i", "-j", "-k"]
    assert is_perfect(seq, side="both")


def test_construct_2d_entries():
    arr = construct_2d(4)
    assert arr.dims == (16, 16)
    assert arr.entry(1, 2) is J
    assert arr.entry(1, 4) is I
    for n in (2, 3, 4):
        a = construct_2d(n)
        for t in range(a.dims[0]):
            assert a.entry(0, t) is ONE
            assert a.entry(t, 0) is ONE


def test_construct_2d_rejects_small_n():
    with pytest.raises(ValueError):
        construct_2d(1)


@pytest.mark.parametrize("n", (2, 3, 4))
def test_construct_2d_perfect_small(n):
    assert full_spectrum(construct_2d(n)).perfect


def test_construct_4d_iii_matches_block_structure():
    arr = construct_4d_iii(1)
    assert arr.dims == (4, 4, 4, 4)
    # top-left block (axis0=0, axis1=0): rows are powers of k
    expected_block = [
        ["1", "1", "1", "1"],
        ["1", "k", "-1", "-k"],
        ["1", "-1", "1", "-1"],
        ["1", "-k", "-1", "k"],
    ]
    for c in range(4):
        for d in range(4):
            assert arr.entry(0, 0, c, d).token == expected_block[c][d]
    assert arr.entry(1, 1, 0, 0) is I
    for b, d in itertools.product(range(4), range(4)):
        assert arr.entry(0, b, 0, d) is ONE


def test_construct_4d_iii_perfect_exhaustive_n1():
    arr = construct_4d_iii(1)
    spec = full_spectrum(arr)
    assert spec.perfect
    assert spec.peak == LipschitzQuat(256, 0, 0, 0)


def test_construct_4d_iv_dims_and_base_entries():
    for n in (1, 2):
        arr = construct_4d_iv(n)
        assert arr.dims == (2 ** n, 2 ** n, 2 ** (n + 1), 2 ** (n + 1))
        den = 2 ** (n - 1)
        for c in range(arr.dims[2]):
            for d in range(arr.dims[3]):
                assert arr.entry(0, 0, c, d) is unit_pow(K, (c * d) // den)


def test_construct_4d_iv_perfect_exhaustive_n1():
    arr = construct_4d_iv(1)
    for shift in itertools.product(*[range(d) for d in arr.dims]):
        value = array_autocorr(arr, shift)
        if shift == (0, 0, 0, 0):
            assert value == LipschitzQuat(64, 0, 0, 0)
        else:
            assert value.is_zero(), shift


def test_uniform_denominator_mixed_size_array_is_not_perfect():
    # Keeping the equal-axis denominator 2^(n-1) on the short axes makes
    # the wrap of those axes visible in the exponents; at n=1 the shift
    # (1,0,0,0) already correlates to 32, which is why construct_4d_iv
    # scales the denominators per index pair instead.
    n = 1
    dims = (2, 2, 4, 4)
    den = 2 ** (n - 1)
    elems = []
    for a, b, c, d in itertools.product(*[range(t) for t in dims]):
        u = unit_mul(unit_mul(unit_pow(I, (a * b) // den), unit_pow(J, (b * c) // den)),
                     unit_pow(K, (c * d) // den))
        elems.append(u)
    arr = QuatArray(dims, elems)
    assert array_autocorr(arr, (1, 0, 0, 0)) == LipschitzQuat(32, 0, 0, 0)
    assert not full_spectrum(arr).perfect


def test_construct_4d_iv_rejects_nonpositive_n():
    with pytest.raises(ValueError):
        construct_4d_iv(0)


def test_template_published_length14():
    seq = template_sequence([-1, -1, -1, 1, 1, -1])
    assert ",".join(seq.tokens()) == "-i,-j,-i,-j,i,j,-i,k,-i,j,i,-j,-i,-j"


def test_template_published_length26():
    alpha = [-1, -1, -1, 1, 1, 1, -1, 1, 1, 1, -1, -1]
    expected = ("-i,-j,-i,j,i,-j,i,j,i,j,-i,j,i,k,"
                "i,j,-i,j,i,j,i,-j,i,j,-i,-j")
    assert ",".join(template_sequence(alpha).tokens()) == expected


def test_template_all_plus_smallest():
    assert template_sequence([1, 1]).tokens() == ["-i", "j", "i", "k", "i", "j"]


def test_template_rejects_odd_sign_count():
    with pytest.raises(ValueError):
        TemplateSpec((1, 1, -1))
    with pytest.raises(ValueError):
        template_sequence([1])
    with pytest.raises(ValueError):
        TemplateSpec((1, 2))


def test_extract_template_round_trip():
    spec = TemplateSpec((-1, 1, 1, -1))
    seq = template_sequence(spec)
    assert extract_template(seq) == spec
    assert spec.length == len(seq) == 10


def test_extract_template_rejects_non_template():
    assert extract_template(QuatSequence.from_tokens("-k,i,-k,-i")) is None
    # first-table length 14 is perfect but not template shaped
    tab1_14 = QuatSequence.from_tokens("-i,-j,i,j,i,j,k,j,i,j,i,-j,-i,j")
    assert extract_template(tab1_14) is None


def test_pointwise_product_identity_factor():
    s2 = QuatSequence.from_tokens("j,k,-j,k,j,-i")
    one = QuatSequence.from_tokens("1")
    assert coprime_product(one, s2) == s2


def test_coprime_product_requires_coprime_lengths():
    s4 = QuatSequence.from_tokens("-k,i,-k,-i")
    s6 = QuatSequence.from_tokens("j,k,-j,k,j,-i")
    with pytest.raises(ValueError, match="coprime"):
        coprime_product(s4, s6)


def test_pointwise_product_of_even_lengths_cannot_be_perfect():
    # Lengths 2 and 6 share a factor, so the 12-term pointwise product
    # has period 6 and correlates to 12 at shift 6.
    s1 = QuatSequence.from_tokens("1,-i")
    s2 = QuatSequence.from_tokens("j,k,-j,k,j,-i")
    with pytest.raises(ValueError):
        coprime_product(s1, s2)
    u = pointwise_product(s1, s2, length=12)
    assert len(u) == 12
    assert right_autocorr(u, 6) == LipschitzQuat(12, 0, 0, 0)
    assert not is_perfect(u)


def test_pointwise_product_index_reduction():
    s1 = QuatSequence.from_tokens("1,-i")
    s2 = QuatSequence.from_tokens("1,1,1")
    u = coprime_product(s1, s2)
    assert u.tokens() == ["1", "-i", "1", "-i", "1", "-i"]


def test_pointwise_product_reverse_order_is_observable():
    s1 = QuatSequence.from_tokens("i,j")
    s2 = QuatSequence.from_tokens("j,k,i")
    forward = coprime_product(s1, s2)
    backward = coprime_product(s1, s2, reverse=True)
    assert forward != backward
    assert forward[0] is unit_mul(I, J)
    assert backward[0] is unit_mul(J, I)


def test_default_pointwise_length_is_lcm():
    s1 = QuatSequence.from_tokens("1,-i")
    s2 = QuatSequence.from_tokens("j,k,-j,k,j,-i")
    assert len(pointwise_product(s1, s2)) == math.lcm(2, 6)
