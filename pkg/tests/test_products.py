import itertools

import pytest

from softtop import oracle
from softtop.errors import BudgetExceeded
from softtop.products import (
    component_points,
    point_in_product,
    product_context,
    product_soft_set,
    tuple_label,
)
from softtop.sets import Context, SoftPoint, SoftSet, all_points, point_in

A = Context(("a", "b"), ("e",))
B = Context(("x", "y"), ("d",))


def test_labels_and_order():
    P = product_context([A, B])
    assert P.universe == ("(a,x)", "(a,y)", "(b,x)", "(b,y)")
    assert P.params == ("(e,d)",)
    assert tuple_label(["a", "x"]) == "(a,x)"
    assert P.elem_of([1, 0]) == 2


def test_budget():
    with pytest.raises(BudgetExceeded, match="4"):
        product_context([A, B], cell_budget=3)


def test_absolute_and_null_products():
    P = product_context([A, B])
    assert product_soft_set([SoftSet.absolute(A), SoftSet.absolute(B)], P).is_absolute()
    assert product_soft_set([SoftSet.null(A), SoftSet.absolute(B)], P).is_null()


def test_product_row():
    F = SoftSet.from_rows(A, {"e": ["a"]})
    G = SoftSet.from_rows(B, {"d": ["x", "y"]})
    pr = product_soft_set([F, G])
    assert pr.rows() == {"(e,d)": ["(a,x)", "(a,y)"]}


def test_point_in_product():
    F = SoftSet.from_rows(A, {"e": ["a"]})
    G = SoftSet.from_rows(B, {"d": ["x", "y"]})
    P = product_context([A, B])
    p = SoftPoint.of(P, "(a,x)", "(e,d)")
    assert point_in_product(p, [F, G])
    assert [str(q) for q in component_points(p)] == ["a_e", "x_d"]
    assert not point_in_product(p, [F, SoftSet.null(B)])
    assert not point_in_product(SoftPoint.of(P, "(b,x)", "(e,d)"), [F, G])


def test_exhaustive_against_tuple_oracle():
    C = Context(("a", "b"), ("e1", "e2"))
    D = Context(("x",), ("d1", "d2"))
    P = product_context([C, D])
    for F, G in itertools.product(oracle.enumerate_all_soft_sets(C), oracle.enumerate_all_soft_sets(D)):
        pr = product_soft_set([F, G], P)
        assert pr == oracle.naive_product([F, G], P)
        assert all(point_in(p, pr) == point_in_product(p, [F, G]) for p in all_points(P))
