"""Binary expression trees over a repeated base literal.

A tree is built from ``Leaf`` (one copy of the base), ``Add`` and ``Mul``.
The base value itself is not stored in the nodes; it is supplied when a
tree is evaluated or rendered, so the same shape can be read over any base.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

# Values are kept inside a 64-bit signed word.  Python integers do not wrap,
# so the guard raises instead of silently producing numbers a fixed-width
# implementation could not represent.
WORD_MAX = 2**63 - 1


class ValueOverflowError(OverflowError):
    """An expression value exceeded the supported word size."""


@dataclass(frozen=True)
class Leaf:
    pass


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


Expr = Union[Leaf, Add, Mul]

LEAF = Leaf()


def evaluate(tree: Expr, base: int) -> int:
    """Arithmetic value of ``tree`` with every leaf equal to ``base``."""
    if base < 1:
        raise ValueError("base must be a positive integer")
    stack = [(tree, False)]
    out: list[int] = []
    while stack:
        node, seen = stack.pop()
        if isinstance(node, Leaf):
            out.append(base)
        elif seen:
            b = out.pop()
            a = out.pop()
            v = a + b if isinstance(node, Add) else a * b
            if v > WORD_MAX:
                raise ValueOverflowError(f"expression value exceeds {WORD_MAX}")
            out.append(v)
        else:
            stack.append((node, True))
            stack.append((node.right, False))
            stack.append((node.left, False))
    return out[0]


def leaf_count(tree: Expr) -> int:
    """Number of base literals used by the expression."""
    count = 0
    stack = [tree]
    while stack:
        node = stack.pop()
        if isinstance(node, Leaf):
            count += 1
        else:
            stack.append(node.left)
            stack.append(node.right)
    return count


def map_leaves(tree: Expr, from_base: int, to_base: int) -> tuple[Expr, int]:
    """Reinterpret ``tree`` over ``to_base``.

    The shape carries no literal, so the tree itself is unchanged; the pair
    returned is (tree, value under ``to_base``).  Leaf count is trivially
    preserved.  ``from_base`` documents what the tree expressed before.
    """
    if from_base < 1 or to_base < 1:
        raise ValueError("bases must be positive integers")
    return tree, evaluate(tree, to_base)


def _flatten_add(tree: Expr) -> list[Expr]:
    # Maximal addition chain, left-to-right summand order.
    terms: list[Expr] = []
    stack = [tree]
    while stack:
        node = stack.pop()
        if isinstance(node, Add):
            stack.append(node.right)
            stack.append(node.left)
        else:
            terms.append(node)
    return terms


def _sum_left(terms: list[Expr]) -> Expr:
    acc = terms[0]
    for t in terms[1:]:
        acc = Add(acc, t)
    return acc


_FOUR_ONES_PRODUCT = Mul(Add(LEAF, LEAF), Add(LEAF, LEAF))


def normalize_ones_runs(tree: Expr) -> Expr:
    """Rewrite runs of four or more leaf summands, for trees over base 1.

    Every flattened addition chain with c >= 4 leaf summands has groups of
    four leaves replaced by (1+1)*(1+1), which preserves both the value
    (over base 1 only) and the leaf count.  Summands are rebuilt
    left-associatively: surviving non-leaf summands in original order, then
    the inserted products, then the remaining leaves.
    """
    if isinstance(tree, Leaf):
        return tree
    if isinstance(tree, Mul):
        return Mul(normalize_ones_runs(tree.left), normalize_ones_runs(tree.right))
    terms = _flatten_add(tree)
    non_leaves = [normalize_ones_runs(t) for t in terms if not isinstance(t, Leaf)]
    ones = sum(1 for t in terms if isinstance(t, Leaf))
    products: list[Expr] = []
    while ones >= 4:
        products.append(_FOUR_ONES_PRODUCT)
        ones -= 4
    return _sum_left(non_leaves + products + [LEAF] * ones)


def to_text(tree: Expr, base: int) -> str:
    """Fully parenthesized infix rendering, e.g. ``((2*2)*2)+2``."""
    def sub(node: Expr) -> str:
        if isinstance(node, Leaf):
            return str(base)
        return "(" + render(node) + ")"

    def render(node: Expr) -> str:
        if isinstance(node, Leaf):
            return str(base)
        op = "+" if isinstance(node, Add) else "*"
        return sub(node.left) + op + sub(node.right)

    return render(tree)


def max_leaf_run(tree: Expr) -> int:
    """Largest number of leaf summands in any flattened addition chain."""
    best = 0
    stack = [tree]
    while stack:
        node = stack.pop()
        if isinstance(node, Leaf):
            best = max(best, 1)
        elif isinstance(node, Mul):
            stack.append(node.left)
            stack.append(node.right)
        else:
            terms = _flatten_add(node)
            best = max(best, sum(1 for t in terms if isinstance(t, Leaf)))
            stack.extend(t for t in terms if isinstance(t, Mul))
    return best
