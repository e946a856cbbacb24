import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wpcl.errors import UsageError
from wpcl.pvm import (
    BUILTIN_NAMES,
    MAX_AVG_PLUS,
    MIN_AVG_PLUS,
    MIN_MAJ_MAX,
    NEG_INF,
    POS_INF,
    Flags,
    PvMonoid,
    add,
    builtin_monoid,
    format_value,
    in_carrier,
    oplus_fold,
    parse_value,
    register_monoid,
    unregister_monoid,
    val_apply,
    value,
    verify_flags,
)

from .strategies import MONOIDS, finite, values

F = Fraction


@pytest.mark.parametrize(
    "m, args, expected",
    [
        (MAX_AVG_PLUS, [4, 6], 5),
        (MAX_AVG_PLUS, [NEG_INF, 7], NEG_INF),
        (MIN_MAJ_MAX, [1, 2, 2, 3], 2),
        (MIN_MAJ_MAX, [1, 3, 3, 1], 3),
        (MIN_AVG_PLUS, [1, 2], F(3, 2)),
        (MIN_AVG_PLUS, [POS_INF, 1], POS_INF),
        (MIN_MAJ_MAX, [NEG_INF, NEG_INF, 5], NEG_INF),
    ],
)
def test_val_examples(m, args, expected):
    assert val_apply(m, [value(a) if not isinstance(a, type(NEG_INF)) else a for a in args]) == expected


def test_val_rejects_empty():
    with pytest.raises(UsageError):
        val_apply(MAX_AVG_PLUS, [])


def test_oplus_fold():
    assert oplus_fold(MAX_AVG_PLUS, []) == NEG_INF
    assert oplus_fold(MIN_AVG_PLUS, [F(3), F(1), F(2)]) == 1
    assert oplus_fold(MIN_MAJ_MAX, []) == POS_INF


def test_builtin_units():
    assert (MAX_AVG_PLUS.zero, MAX_AVG_PLUS.one) == (NEG_INF, 0)
    assert (MIN_AVG_PLUS.zero, MIN_AVG_PLUS.one) == (POS_INF, 0)
    assert (MIN_MAJ_MAX.zero, MIN_MAJ_MAX.one) == (POS_INF, NEG_INF)
    assert builtin_monoid("min-maj-max") is MIN_MAJ_MAX
    assert set(BUILTIN_NAMES) == {"max-avg-plus", "min-avg-plus", "min-maj-max"}


def test_unknown_monoid():
    with pytest.raises(UsageError, match="unknown"):
        builtin_monoid("max-plus")


def test_declared_flags():
    for m in (MAX_AVG_PLUS, MIN_AVG_PLUS):
        assert m.flags.left_val_distributive and m.flags.oplus_preservative
    f = MIN_MAJ_MAX.flags
    assert not f.left_val_distributive and not f.oplus_preservative
    for m in MONOIDS:
        assert m.flags.idempotent and m.flags.val_symmetric
        assert m.flags.otimes_commutative and m.flags.otimes_associative
        assert m.missing_flags() == []


@pytest.mark.parametrize("m", MONOIDS, ids=lambda m: m.name)
def test_verify_flags_clean(m):
    assert verify_flags(m, samples=2000, seed=7) == {}


def test_maj_not_left_val_distributive():
    # 2 max maj(0,1,3) = 3, but maj(2,2,3) = 2
    t = MIN_MAJ_MAX.otimes
    lhs = t(F(2), val_apply(MIN_MAJ_MAX, [F(0), F(1), F(3)]))
    rhs = val_apply(MIN_MAJ_MAX, [t(F(2), F(x)) for x in (0, 1, 3)])
    assert (lhs, rhs) == (3, 2)
    loose = PvMonoid(
        "maj-claims", MIN_MAJ_MAX.zero, MIN_MAJ_MAX.one, min, max, MIN_MAJ_MAX.raw_val,
        Flags(left_val_distributive=True), MIN_MAJ_MAX.carrier,
    )
    assert "left_val_distributive" in verify_flags(loose, samples=3000, seed=1, axioms=False)


def test_verify_flags_finds_false_claim():
    sub = PvMonoid("sub", NEG_INF, F(0), max, lambda a, b: a - b if NEG_INF not in (a, b) else NEG_INF,
                   lambda xs: sum(xs) / len(xs), Flags(otimes_commutative=True))
    assert "otimes_commutative" in verify_flags(sub, samples=200, axioms=False)


def test_registry_round_trip():
    m = PvMonoid("custom-x", NEG_INF, F(0), max, add, MAX_AVG_PLUS.raw_val)
    register_monoid(m)
    try:
        assert builtin_monoid("custom-x") is m
        with pytest.raises(UsageError):
            register_monoid(m)
    finally:
        unregister_monoid("custom-x")
    with pytest.raises(UsageError):
        builtin_monoid("custom-x")


@pytest.mark.parametrize(
    "text, v",
    [("4", F(4)), ("3/2", F(3, 2)), ("-5/3", F(-5, 3)), ("2/4", F(1, 2)), ("inf", POS_INF), ("-inf", NEG_INF)],
)
def test_parse_value(text, v):
    assert parse_value(text) == v
    assert parse_value(format_value(v)) == v


@pytest.mark.parametrize("bad", ["", "1.5", "1/0", "abc", "- 3", "1/-2"])
def test_parse_value_rejects(bad):
    with pytest.raises(UsageError):
        parse_value(bad)


def test_value_rejects_float():
    with pytest.raises(UsageError):
        value(0.5)


def test_infinity_arithmetic():
    assert add(POS_INF, F(3)) == POS_INF
    assert add(F(3), NEG_INF) == NEG_INF
    with pytest.raises(ArithmeticError):
        add(POS_INF, NEG_INF)
    assert NEG_INF < F(-10**9) < F(10**9) < POS_INF


def test_in_carrier():
    assert in_carrier(MAX_AVG_PLUS, F(3))
    assert in_carrier(MAX_AVG_PLUS, NEG_INF)
    assert not in_carrier(MAX_AVG_PLUS, POS_INF)
    assert in_carrier(MIN_MAJ_MAX, NEG_INF) and in_carrier(MIN_MAJ_MAX, POS_INF)


@given(st.data())
def test_val_permutation_invariant(data):
    m = data.draw(st.sampled_from(MONOIDS))
    xs = data.draw(st.lists(values(m), min_size=1, max_size=6))
    ys = data.draw(st.permutations(xs))
    assert val_apply(m, xs) == val_apply(m, ys)


@given(st.data())
def test_idempotent_and_identity(data):
    m = data.draw(st.sampled_from(MONOIDS))
    d = data.draw(values(m))
    assert m.oplus(d, d) == d
    assert m.oplus(d, m.zero) == d
    assert m.otimes(d, m.one) == d == m.otimes(m.one, d)
    assert m.otimes(d, m.zero) == m.zero
    n = data.draw(st.integers(1, 6))
    assert val_apply(m, [m.one] * n) == m.one


@given(finite, finite, finite)
def test_avg_preserves_max(a, b, d):
    m = MAX_AVG_PLUS
    assert val_apply(m, [max(a, b), d]) == max(val_apply(m, [a, d]), val_apply(m, [b, d]))


@given(finite)
def test_format_round_trip(d):
    assert parse_value(format_value(d)) == d


def test_sampling_is_seeded():
    assert verify_flags(MIN_MAJ_MAX, samples=50, seed=3) == verify_flags(MIN_MAJ_MAX, samples=50, seed=3)
    rng = random.Random(0)
    assert rng.random() == random.Random(0).random()
