import pytest
from hypothesis import given, strategies as st

from addmul import tree as tr
from addmul.tree import LEAF, Add, Leaf, Mul, ValueOverflowError


def trees(max_leaves=30):
    return st.recursive(
        st.just(LEAF),
        lambda kids: st.builds(Add, kids, kids) | st.builds(Mul, kids, kids),
        max_leaves=max_leaves,
    )


def test_evaluate_single_leaf():
    assert tr.evaluate(LEAF, 2) == 2


def test_evaluate_two_squared_plus_two():
    assert tr.evaluate(Add(Mul(LEAF, LEAF), LEAF), 2) == 6


def test_evaluate_ten_with_four_twos():
    t = Add(Mul(Mul(LEAF, LEAF), LEAF), LEAF)
    assert tr.evaluate(t, 2) == 10
    assert tr.leaf_count(t) == 4


def test_evaluate_overflow_raises():
    t = LEAF
    for _ in range(70):
        t = Mul(t, LEAF)
    with pytest.raises(ValueOverflowError):
        tr.evaluate(t, 2)


def test_leaf_count_basics():
    assert tr.leaf_count(LEAF) == 1
    assert tr.leaf_count(Add(LEAF, LEAF)) == 2
    assert tr.leaf_count(Add(Mul(Mul(LEAF, LEAF), LEAF), LEAF)) == 4


def test_normalize_four_ones_becomes_product():
    t = Add(Add(Add(LEAF, LEAF), LEAF), LEAF)
    assert tr.normalize_ones_runs(t) == Mul(Add(LEAF, LEAF), Add(LEAF, LEAF))


def test_normalize_five_ones():
    t = Add(Add(Add(Add(LEAF, LEAF), LEAF), LEAF), LEAF)
    want = Add(Mul(Add(LEAF, LEAF), Add(LEAF, LEAF)), LEAF)
    assert tr.normalize_ones_runs(t) == want


def test_normalize_keeps_short_runs():
    t = Add(LEAF, LEAF)
    assert tr.normalize_ones_runs(t) == t


def test_map_leaves_value():
    t = Add(Mul(Add(LEAF, LEAF), Add(LEAF, LEAF)), LEAF)
    assert tr.evaluate(t, 1) == 5
    mapped, value = tr.map_leaves(t, 1, 2)
    assert mapped is t
    assert value == 18


def test_map_leaves_single():
    assert tr.map_leaves(LEAF, 1, 2)[1] == 2


def test_optimal_seven_representation_maps_to_26():
    # (1+1)(1+1+1)+1 over base 1, remapped to base 2
    t = Add(Mul(Add(LEAF, LEAF), Add(Add(LEAF, LEAF), LEAF)), LEAF)
    assert tr.evaluate(t, 1) == 7
    assert tr.leaf_count(t) == 6
    assert tr.map_leaves(t, 1, 2)[1] == 26


def test_to_text():
    t = Add(Mul(Mul(LEAF, LEAF), LEAF), LEAF)
    assert tr.to_text(t, 2) == "((2*2)*2)+2"
    assert tr.to_text(LEAF, 3) == "3"
    assert tr.to_text(Mul(LEAF, Add(LEAF, LEAF)), 2) == "2*(2+2)"


@given(trees())
def test_normalize_preserves_value_and_count_over_base1(t):
    nt = tr.normalize_ones_runs(t)
    assert tr.evaluate(nt, 1) == tr.evaluate(t, 1)
    assert tr.leaf_count(nt) == tr.leaf_count(t)


@given(trees())
def test_normalize_kills_long_runs(t):
    assert tr.max_leaf_run(tr.normalize_ones_runs(t)) <= 3


@given(trees(max_leaves=20), st.sampled_from([2, 3]))
def test_every_subtree_is_multiple_of_base(t, base):
    def walk(node):
        v = tr.evaluate(node, base)
        assert v % base == 0 and v >= base
        if not isinstance(node, Leaf):
            walk(node.left)
            walk(node.right)

    walk(t)


@given(trees(max_leaves=20))
def test_map_leaves_preserves_leaf_count(t):
    mapped, _ = tr.map_leaves(t, 1, 2)
    assert tr.leaf_count(mapped) == tr.leaf_count(t)
