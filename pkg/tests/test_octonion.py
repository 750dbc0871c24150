import itertools

import pytest
from hypothesis import given, strategies as st

from splitoct.errors import DomainError, InapplicableError, NotInvertibleError, ParseError
from splitoct.fields import FieldSpec
from splitoct.octonion import (
    REFERENCE_TABLE,
    NAMES,
    ORDER,
    STRUCTURE,
    Octonion,
    artin_word_check,
    associator,
    basis_mul,
    format_entry,
    generated_words,
    hua_check,
    idx,
    moufang_check,
    oct_inverse,
    oct_mul,
    oct_norm,
    oct_square_check,
    oct_trace,
    octonion_from_json,
    parse_octonion,
    rules_table,
    table_discrepancies,
    table_json,
)
from splitoct.ratfunc2 import Z2T, random_ratfunc

GF2, GF3, GF5, GF7, GF4 = FieldSpec(2), FieldSpec(3), FieldSpec(5), FieldSpec(7), FieldSpec(2, 2)

def expected_table():
    """Independent transcription of the reference table, rows = left factor."""
    cols = ["-1", "wb", "w", "0", "-0", "-w", "-wb", "1"]
    # explicit (row, col) -> entry strings, written out with unambiguous names
    out = {}
    rows = {
        "-1": ["0", "0", "0", "0", "e_{-1}", "e_wb", "-e_w", "-e_0"],
        "wb": ["0", "0", "-e_{-1}", "e_wb", "0", "0", "-e_{-0}", "e_{-w}"],
        "w": ["0", "e_{-1}", "0", "e_w", "0", "-e_{-0}", "0", "-e_{-wb}"],
        "0": ["e_{-1}", "0", "0", "e_0", "0", "e_{-w}", "e_{-wb}", "0"],
        "-0": ["0", "e_wb", "e_w", "0", "e_{-0}", "0", "0", "e_1"],
        "-w": ["-e_wb", "0", "-e_0", "0", "e_{-w}", "0", "e_1", "0"],
        "-wb": ["e_w", "-e_0", "0", "0", "e_{-wb}", "-e_1", "0", "0"],
        "1": ["-e_{-0}", "-e_{-w}", "e_{-wb}", "e_1", "0", "0", "0", "0"],
    }
    for r, entries in rows.items():
        for c, e in zip(cols, entries):
            out[(idx(r), idx(c))] = e
    return out


def test_table_matches_second_transcription():
    want = expected_table()
    for key, entry in REFERENCE_TABLE.items():
        assert format_entry(entry) == want[key], key


def test_table_regenerated_from_rules():
    assert table_discrepancies() == []
    assert rules_table() == REFERENCE_TABLE
    assert len(STRUCTURE) == 32


def test_basis_mul_examples():
    assert basis_mul(idx("1"), idx("w")) == (1, idx("-wb"))
    assert basis_mul(idx("-1"), idx("1")) == (-1, idx("0"))
    assert basis_mul(idx("-1"), idx("-1")) is None


def test_table_json_examples():
    rows = table_json()["rows"]
    assert rows["e_1"]["e_{-1}"] == "-e_{-0}"
    assert rows["e_0"]["e_{-0}"] == "0"
    assert rows["e_{-0}"]["e_1"] == "e_1"
    assert table_json()["order"] == list(NAMES)


def test_index_set():
    assert len(set(ORDER)) == 8
    w = idx("w")
    assert w.times_w() == idx("wb") and idx("wb").times_w() == idx("1")
    assert idx("0").times_w() == idx("0")
    with pytest.raises(DomainError):
        idx("x")


def e(name, F=GF5, c=1):
    return Octonion.basis(name, F, c)


def test_mul_examples(rng):
    one = Octonion.one(GF5)
    x = Octonion.random(GF5, rng)
    assert one * x == x and x * one == x
    assert oct_mul(e("1"), e("0")) == e("1")
    assert e("0") * e("0") == e("0")
    assert one == e("0") + e("-0")
    with pytest.raises(DomainError):
        e("1", GF5) * e("1", GF7)


def test_trace_norm_examples():
    x = Octonion.combo(GF5, {"0": 1, "-0": -1, "w": 1, "-w": -1})
    assert oct_trace(x) == 0 and oct_norm(x) == GF5(-2)
    assert x * x == Octonion.scalar(2, GF5)
    assert oct_square_check(x)
    for alpha in GF5.elements():
        y = Octonion.combo(GF5, {"0": 1, "1": alpha, "-1": 1})
        assert y.trace() == 1 and y.norm() == alpha
    one = Octonion.one(GF5)
    assert one.trace() == 2 and one.norm() == 1
    assert oct_square_check(Octonion.zero(GF5))


def test_inverse_examples():
    x = Octonion.combo(GF5, {"0": 1, "-0": -1, "w": 1, "-w": -1})
    # x^2 = 2, so x^-1 = (-2)^-1 (T(x) - x) = -2^-1 x = 3x; note x (2x) = 4
    assert oct_inverse(x) == x.scale(GF5(3))
    assert x * x.scale(GF5(3)) == Octonion.one(GF5)
    assert x * x.scale(GF5(2)) == Octonion.scalar(4, GF5)
    with pytest.raises(NotInvertibleError):
        oct_inverse(e("1"))
    assert Octonion.one(GF5).inverse() == Octonion.one(GF5)


FIELDS = [GF2, GF3, GF5, GF7, GF4, FieldSpec(3, 2)]


@pytest.mark.parametrize("F", FIELDS, ids=str)
def test_random_properties(F, rng):
    one = Octonion.one(F)
    for _ in range(200):
        x, y = Octonion.random(F, rng), Octonion.random(F, rng)
        assert oct_square_check(x)
        assert (x * y).norm() == x.norm() * y.norm()
        assert associator(x, x, y).is_zero() and associator(y, x, x).is_zero()
        assert associator(x, y, x).is_zero()
        if x.is_invertible():
            assert x * x.inverse() == one and x.inverse() * x == one


def test_nonassociative_witness():
    # brute force over basis triples
    found = [(a, b, c) for a, b, c in itertools.product(ORDER, repeat=3)
             if not associator(e(a, GF3), e(b, GF3), e(c, GF3)).is_zero()]
    assert found
    assert not associator(e("1", GF3), e("w", GF3), e("wb", GF3)).is_zero()


def test_power_associative(rng):
    x = Octonion.random(GF7, rng)
    assert x ** 3 == x * (x * x) == (x * x) * x
    if x.is_invertible():
        assert x ** -2 == (x * x).inverse()


def test_moufang(rng):
    one = Octonion.one(GF3)
    assert moufang_check(one, one, one) == (True, True, True)
    for _ in range(200):
        x, y, a = (Octonion.random(GF3, rng) for _ in range(3))
        assert moufang_check(x, y, a) == (True, True, True)


def test_moufang_over_z2t(rng):
    for _ in range(10):
        x, y, a = (Octonion([random_ratfunc(rng, 3) for _ in range(8)], Z2T) for _ in range(3))
        assert moufang_check(x, y, a) == (True, True, True)


def test_hua_scalar_gf7():
    a, b = Octonion.scalar(2, GF7), Octonion.scalar(3, GF7)
    res = hua_check(a, b)
    assert res.lhs == res.rhs == Octonion.scalar(5, GF7)
    assert res.equal and res.flexible_ok


def test_hua_unit_a():
    b = Octonion.scalar(2, GF5)
    res = hua_check(Octonion.one(GF5), b)
    assert res.lhs == b and res.rhs == b


def test_hua_random_gf5(rng):
    valid = 0
    while valid < 1000:
        a, b = Octonion.random(GF5, rng), Octonion.random(GF5, rng)
        try:
            res = hua_check(a, b)
        except InapplicableError:
            continue
        valid += 1
        assert res.equal and res.flexible_ok


def test_hua_inapplicable():
    with pytest.raises(InapplicableError):
        hua_check(e("1"), Octonion.one(GF5))
    # ab - 1 = 0
    with pytest.raises(InapplicableError):
        hua_check(Octonion.one(GF5), Octonion.one(GF5))


def test_artin(rng):
    for _ in range(3):
        x, y = Octonion.random(GF3, rng), Octonion.random(GF3, rng)
        assert artin_word_check(x, y, 2)
    x = Octonion.random(GF5, rng)
    assert artin_word_check(x, x, 2)
    samples = [(e("1", GF2) + e("0", GF2), e("w", GF2) + e("-0", GF2)),
               (Octonion.one(GF2), e("-wb", GF2) + e("wb", GF2))]
    for x, y in samples:
        assert artin_word_check(x, y, 3)
    with pytest.raises(DomainError):
        generated_words(x, y, 4)


def test_three_generators_are_not_associative():
    # sanity check that the word check can fail: a basis triple with nonzero associator
    x, y, z = e("1", GF3), e("w", GF3), e("wb", GF3)
    assert not associator(x, y, z).is_zero()


def test_literals_and_json():
    x = parse_octonion(GF5, "0,0,1,1,-1,-1,0,0")
    assert x == Octonion.combo(GF5, {"w": 1, "0": 1, "-0": -1, "-w": -1})
    assert x.literal() == "0,0,1,1,4,4,0,0"
    assert octonion_from_json(GF5, x.to_json()) == x
    assert x.to_json() == {"coeffs": [0, 0, 1, 1, 4, 4, 0, 0]}
    g = parse_octonion(GF4, "y,0,0,y+1,0,0,0,1")
    assert octonion_from_json(GF4, g.to_json()) == g
    z = parse_octonion(Z2T, "t,0,0,1/(t+1),0,0,0,1")
    assert octonion_from_json(Z2T, z.to_json()) == z
    with pytest.raises(ParseError):
        parse_octonion(GF5, "1,2,3")
    with pytest.raises(ParseError):
        parse_octonion(GF5, "1,2,3,4,5,6,7,y")


@given(st.lists(st.integers(0, 6), min_size=24, max_size=24))
def test_norm_multiplicative_gf7(cs):
    x = Octonion(cs[:8], GF7)
    y = Octonion(cs[8:16], GF7)
    z = Octonion(cs[16:], GF7)
    assert (x * y).norm() == x.norm() * y.norm()
    assert moufang_check(x, y, z) == (True, True, True)
    assert (x * y) * x == x * (y * x)


def test_polar_form_full_rank():
    from splitoct.suites import nondegenerate_suite

    for F in FIELDS:
        assert nondegenerate_suite(F)["rank"] == 8
