import pytest

from charp import towers as tw
from charp.bounds import Scenario
from charp.certify import verify_certificate
from charp.descent import InsepTower, SearchConfig
from charp.drivers import (DriverError, IndexReduction, decompose,
                           index_reduction_step)
from charp.oracle import expr_invariants
from charp.textform import format_expr, parse_expr, parse_tower


def test_albert_driver():
    scn = Scenario(2, "split_by_insep", n=1, attached={
        "tower": "GF(2)(t) ; ROOT r: r^2 = t",
        "expr": "[1, t)_2",
    })
    res = decompose(scn)
    assert res.achieved <= res.report.value == 1
    assert verify_certificate(res.certificate).accepted


def test_cyclic_reduction_driver():
    scn = Scenario(2, "cyclic_after_insep", n=1, attached={
        "tower": "GF(2)(t) ; ROOT r: r^2 = t",
        "expr": "[1, t)_2",
        "cyclic": "[1, r^2)_2",
    })
    res = decompose(scn)
    assert res.report.value == 2 and res.achieved <= 2
    assert verify_certificate(res.certificate).accepted


def test_cyclic_degree_driver_bound():
    # a degree-p^2 cyclic presentation: chain of one root step plus data
    scn = Scenario(2, "cyclic_deg", n=2, attached={
        "tower": "GF(2)(t) ; ROOT r: r^2 = t",
        "expr": "[1, t)_2",
        "cyclic": "[1, r^2)_2",
    })
    res = decompose(scn)
    assert res.report.value == 2  # p^(n-1)
    assert res.achieved <= 2
    assert verify_certificate(res.certificate).accepted


def test_cyclic_step_driver_full_pipeline():
    scn = Scenario(2, "split_by_cyclic_p", lambda_bound=1, attached={
        "tower": "GF(2)(t) ; AS i: i^2+i = 1",
        "expr": "[1, t)_2",
        "lambda_expr": "[1, t)_2",
    })
    res = decompose(scn)
    assert res.report.value == 3
    assert res.achieved <= 3
    assert verify_certificate(res.certificate).accepted
    # final invariants equal the initial ones
    T = parse_tower("GF(2)(t)")
    A = parse_expr("[1, t)_2", T)
    out = parse_expr(format_expr(res.expr), T)
    assert expr_invariants(out) == expr_invariants(A)
    methods = {l.method for l in res.labels}
    assert "oracle" in methods


def test_cyclic_step_driver_rejects_wrong_presentation():
    # [i, t) is nonsplit over the constant extension while the class dies
    # there, so the attached presentation cannot match
    scn = Scenario(2, "split_by_cyclic_p", lambda_bound=1, attached={
        "tower": "GF(2)(t) ; AS i: i^2+i = 1",
        "expr": "[1, t)_2",
        "lambda_expr": "[i, t)_2",
    })
    with pytest.raises(DriverError, match="does not match"):
        decompose(scn)


def test_cyclic_step_driver_reports_slot_infeasibility():
    # both sides split over the extension, but the derived inseparable slot
    # cannot carry the class's invariants: reported, not guessed
    from charp.descent import DescentError
    scn = Scenario(2, "split_by_cyclic_p", lambda_bound=1, attached={
        "tower": "GF(2)(t) ; AS i: i^2+i = 1",
        "expr": "[1, t)_2",
        "lambda_expr": "[1, t+1)_2",
    })
    with pytest.raises((DriverError, DescentError)):
        decompose(scn)


def test_driver_requires_attached_data():
    with pytest.raises(DriverError):
        decompose(Scenario(2, "split_by_insep", n=1))
    with pytest.raises(DriverError):
        decompose(Scenario(2, "index", n=2, attached={"tower": "GF(2)(t)",
                                                      "expr": "[1, t)_2"}))


def make_K(tower_text="GF(2)(t) ; ROOT r: r^2 = t"):
    T = parse_tower(tower_text)
    K = InsepTower(tw.truncate(T, 0))
    for lvl in range(1, T.depth + 1):
        K.add(tw.descend(tw.step_defining_elem(T, lvl), 0), T.steps[lvl - 1].gen)
    return K


def test_index_reduction_trivial_case():
    K = make_K()
    A = parse_expr("[1, t)_2", K.tower)
    out = index_reduction_step(A, K)
    assert isinstance(out, IndexReduction)
    assert out.l_degree == 1 and out.ind_after <= 2
    assert out.ind_before == 2


def test_index_reduction_requires_nonsplit():
    K = make_K()
    A = parse_expr("[1/t, t)_2", K.tower)  # split class
    with pytest.raises(DriverError):
        index_reduction_step(A, K)


def test_index_reduction_reports_tower_split():
    K = make_K()
    A = parse_expr("[1, t)_2", K.tower)
    out = index_reduction_step(A, K)
    # any nontrivial exponent-one extension of this backend splits the class
    assert out.ind_after == 1
    assert "splits over the tower" in out.note


def test_albert_driver_multivariate_degree_p_squared():
    # an inseparable tower of degree p^2 needs two base variables; all
    # checks are witness-mode and the certificate is fully elementary
    scn = Scenario(2, "split_by_insep", n=2, attached={
        "tower": "GF(2)(t1,t2) ; ROOT r: r^2 = t1 ; ROOT u: u^2 = t2",
        "expr": "[1/t2, t1)_2 * [1/t1, t2)_2",
    })
    res = decompose(scn)
    assert res.achieved <= res.report.value == 2
    assert verify_certificate(res.certificate).accepted
    assert all(l.method == "witness" for l in res.labels)
