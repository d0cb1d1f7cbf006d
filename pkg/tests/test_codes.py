"""Encoding of normal forms into N, the total order preceq, and the
ordinal text grammar."""

import random

import pytest

from gamma0.ordinals import (
    EPS0,
    GAMMA0,
    LT,
    ONE,
    W,
    ZERO,
    OrdinalParseError,
    add,
    compare,
    decode,
    encode,
    fin,
    format_ordinal,
    gamma,
    mul,
    parse_ordinal,
    prec,
    preceq,
    succ_code,
    veblen,
)
from test_ordinals import random_ordinal


def test_encode_basics():
    assert encode(ZERO) == 0
    assert decode(encode(ZERO)) == ZERO
    assert encode(ONE) == 1
    assert encode(GAMMA0) == 2
    assert decode(encode(veblen(ONE, ZERO))) == veblen(ONE, ZERO)
    assert decode(4) is None


def test_round_trip_random():
    rng = random.Random(8)
    for _ in range(1000):
        x = random_ordinal(rng)
        assert decode(encode(x)) == x


def test_decode_is_canonical():
    for c in range(2000):
        x = decode(c)
        if x is not None:
            assert encode(x) == c


def test_decode_random_naturals():
    rng = random.Random(16)
    for _ in range(1000):
        c = rng.randint(0, 10**9)
        x = decode(c)
        if x is not None:
            assert encode(x) == c


def test_preceq_examples():
    assert preceq(encode(ONE), encode(W))
    assert not preceq(encode(W), encode(ONE))
    for n in (0, 1, 2, 7, 10**6):
        assert preceq(n, n)


def test_preceq_total_order_on_raw_naturals():
    rng = random.Random(31)
    for _ in range(1000):
        m, n = rng.randint(0, 10**6), rng.randint(0, 10**6)
        assert sum([prec(m, n), m == n, prec(n, m)]) == 1
    for _ in range(1000):
        m, n, k = (rng.randint(0, 10**6) for _ in range(3))
        if preceq(m, n) and preceq(n, k):
            assert preceq(m, k)
        if preceq(m, n) and preceq(n, m):
            assert m == n


def test_preceq_agrees_with_compare():
    rng = random.Random(64)
    for _ in range(2000):
        x, y = random_ordinal(rng), random_ordinal(rng)
        assert preceq(encode(x), encode(y)) == (compare(x, y) != 1)


def test_invalid_codes_come_after_valid():
    invalids = [c for c in range(200) if decode(c) is None]
    valids = [c for c in range(200) if decode(c) is not None]
    for i in invalids[:20]:
        for v in valids[:20]:
            assert prec(v, i)
    assert invalids == sorted(invalids)
    a, b = invalids[0], invalids[1]
    assert prec(a, b)


def test_succ_code():
    assert succ_code(encode(ZERO)) == encode(ONE)
    assert succ_code(encode(W)) == encode(add(W, ONE))
    # the successor position of Gamma_0 is the least invalid natural
    s = succ_code(encode(GAMMA0))
    assert decode(s) is None
    assert all(decode(c) is not None for c in range(s))
    # successor of an invalid position is the next invalid natural
    s2 = succ_code(s)
    assert s2 > s and decode(s2) is None
    assert all(decode(c) is not None for c in range(s + 1, s2))


def test_grammar_round_trip_fixed():
    cases = [
        "0",
        "1",
        "17",
        "w",
        "w+1",
        "w*2+3",
        "w^2",
        "w^w",
        "w^w^w",
        "w^w*2+w^2*3+5",
        "phi(1,0)",
        "phi(1,0)*2+w",
        "phi(0,w+1)",
        "phi(w,phi(1,w^2))",
        "G0",
    ]
    for text in cases:
        assert format_ordinal(parse_ordinal(text)) == text


def test_grammar_aliases_and_normalization():
    assert parse_ordinal("eps0") == EPS0
    assert format_ordinal(EPS0) == "phi(1,0)"
    assert parse_ordinal("1+w") == W
    assert parse_ordinal("w^0") == ONE
    assert parse_ordinal("phi(0,2)") == parse_ordinal("w^2")
    assert format_ordinal(gamma(3)) == "phi(phi(1,0),0)"


def test_grammar_round_trip_random():
    rng = random.Random(12)
    for _ in range(1000):
        x = random_ordinal(rng)
        assert parse_ordinal(format_ordinal(x)) == x


def test_grammar_rejects_garbage():
    for bad in ["", "w^", "phi(1)", "2^w", "w+", "x", "w**2", "phi(1,0))"]:
        with pytest.raises(OrdinalParseError):
            parse_ordinal(bad)


def test_precedence():
    assert parse_ordinal("w^w+1") == add(exp_w_w(), ONE)
    assert parse_ordinal("w^w*2") == mul(exp_w_w(), fin(2))


def exp_w_w():
    from gamma0.ordinals import exp

    return exp(W, W)
