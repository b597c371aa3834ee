import random

import pytest

from merosurf.errors import MalformedSignature
from merosurf.signature import (StratumSignature, degree_gcd, format_signature,
                                genus, is_even_type, is_hyperelliptic_type,
                                is_nonempty, parse_signature)


def sig(zeros, poles):
    return StratumSignature(zeros, poles)


def test_genus_examples():
    assert genus(sig([5], [3])) == 2
    assert genus(sig([], [2])) == 0
    assert genus(sig([24], [24])) == 1


def test_genus_rejects_bad_parity():
    with pytest.raises(MalformedSignature):
        genus(sig([2], [1]))
    with pytest.raises(MalformedSignature):
        genus(sig([], [4]))  # would give negative genus


def test_is_nonempty():
    assert not is_nonempty(sig([1], [1]))
    assert is_nonempty(sig([], [1, 1]))
    assert is_nonempty(sig([2, 4], [1, 1, 2]))


def test_degree_gcd():
    assert degree_gcd(sig([24], [24])) == 24
    assert degree_gcd(sig([2, 4], [1, 1, 2])) == 1
    assert degree_gcd(sig([4, 4], [1, 1])) == 1


def test_degree_gcd_divides_everything():
    rng = random.Random(7)
    for _ in range(200):
        g = rng.randint(1, 4)
        zeros = [rng.randint(1, 6) for _ in range(rng.randint(1, 3))]
        total = sum(zeros) - (2 * g - 2)
        if total < 2:
            continue
        poles = [total]
        s = sig(zeros, poles)
        d = degree_gcd(s)
        assert all(v % d == 0 for v in s.zeros + s.poles)


def test_hyperelliptic_type():
    assert is_hyperelliptic_type(sig([4, 4], [1, 1]))
    assert not is_hyperelliptic_type(sig([2, 4], [1, 1, 2]))
    assert is_hyperelliptic_type(sig([6], [2]))
    assert is_hyperelliptic_type(sig([2, 2], [4]))
    assert not is_hyperelliptic_type(sig([2, 2, 2], [4, 4]))


def test_even_type():
    assert is_even_type(sig([4, 4], [1, 1]))
    assert not is_even_type(sig([2, 4], [1, 1, 2]))
    assert is_even_type(sig([2, 2], [2]))
    assert not is_even_type(sig([2], [1, 1, 2]))  # poles {1,1,2} not allowed
    assert not is_even_type(sig([1, 3], [2]))


def test_type_predicates_reject_marked_points():
    with pytest.raises(MalformedSignature):
        is_even_type(sig([0, 2], [2]))
    with pytest.raises(MalformedSignature):
        degree_gcd(sig([0], [2]))


def test_multiset_order_invariance():
    a = sig([4, 2], [1, 2, 1])
    b = sig([2, 4], [2, 1, 1])
    assert a == b
    assert is_even_type(a) == is_even_type(b)
    assert is_hyperelliptic_type(a) == is_hyperelliptic_type(b)


def test_parse_and_format_roundtrip():
    s = parse_signature("H(4,4,-1,-1)")
    assert s.zeros == (4, 4) and s.poles == (1, 1)
    assert parse_signature(" H( 2 , 4 , -1 , -1 , -2 ) ") == sig([2, 4], [1, 1, 2])
    assert parse_signature(format_signature(s)) == s
    assert format_signature(sig([5], [3])) == "H(5,-3)"


def test_parse_rejects_garbage():
    for bad in ["H(", "H()x", "24,-24", "H(a,-2)", "H(2,,2)"]:
        with pytest.raises(MalformedSignature):
            parse_signature(bad)
