from fractions import Fraction

import pytest

from nearindep.families import (
    BOUND_KINDS,
    FamilyError,
    FamilySpec,
    bound,
    build,
    closed_form_ng,
    mk2_plus_isolated,
)
from nearindep.graph import canonical_form, complement, star_graph
from nearindep.invariants import is_good, ng_sum, sigma1_recursive

CLOSED_FORM = [FamilySpec("complete", 0), FamilySpec("edgeless", 0), FamilySpec("star", 0),
               FamilySpec("mK2_plus_isolated", 0, 3)]


def at(spec, n):
    return FamilySpec(spec.name, n, spec.m)


def test_build_examples():
    g = build(FamilySpec("star", 6))
    assert g == star_graph(6) and g.size == 5
    g = build(FamilySpec("mK2_plus_isolated", 8, 3))
    assert (g.order, g.size) == (8, 3)
    assert canonical_form(build(FamilySpec("join_complement", 6))) == canonical_form(
        complement(build(FamilySpec("mK2_plus_isolated", 6, 3)))
    )


def test_labelling_is_deterministic():
    g = build(FamilySpec("mK2_plus_isolated", 8, 3))
    assert sorted(g.edges()) == [(0, 1), (2, 3), (4, 5)]
    j = build(FamilySpec("join_complement", 8))
    assert j.degrees()[:2] == [7, 7]  # clique block first


def test_cli_names():
    assert FamilySpec.from_cli("3k2-iso", 6) == FamilySpec("mK2_plus_isolated", 6, 3)
    assert FamilySpec.from_cli("join-g64", 7).name == "join_complement"
    with pytest.raises(FamilyError):
        FamilySpec.from_cli("wheel", 6)


@pytest.mark.parametrize(
    "spec,minimum",
    [(FamilySpec("mK2_plus_isolated", 5, 3), 6), (FamilySpec("star", 1), 2),
     (FamilySpec("join_complement", 5), 6), (FamilySpec("mK2_plus_isolated", 7, 4), 8)],
)
def test_below_minimum(spec, minimum):
    with pytest.raises(FamilyError, match=f"requires order >= {minimum}"):
        build(spec)


def test_bound_examples():
    assert bound("ng_lower_general", 5).value == 10
    assert bound("ng_lower_tree", 6).value == 25
    assert bound("ng_upper_general", 9).value == 249
    assert bound("sigma1_max", 5).value == Fraction(27, 2)
    assert bound("ng_upper_general", 5).value == Fraction(41, 2)
    with pytest.raises(ValueError):
        bound("nope", 5)


@pytest.mark.parametrize("n", range(1, 16))
def test_upper_bound_decomposes(n):
    up = bound("ng_upper_general", n).value
    assert up == Fraction(bound("sigma1_max", n).value) + Fraction((n + 2) * (n - 3), 2)
    if n >= 6:
        assert all(isinstance(bound(k, n).value, int) for k in BOUND_KINDS)


def test_closed_form_examples():
    assert closed_form_ng(FamilySpec("complete", 5)) == 10
    assert closed_form_ng(FamilySpec("star", 6)) == 25
    assert closed_form_ng(FamilySpec("mK2_plus_isolated", 6, 3)) == 39 == ng_sum(mk2_plus_isolated(3, 6))
    with pytest.raises(FamilyError):
        closed_form_ng(FamilySpec("join_complement", 6))
    with pytest.raises(FamilyError):
        closed_form_ng(FamilySpec("mK2_plus_isolated", 8, 4))


@pytest.mark.parametrize("n", range(6, 13))
def test_family_identities(n):
    for spec in CLOSED_FORM:
        assert ng_sum(build(at(spec, n))) == closed_form_ng(at(spec, n))
    assert sigma1_recursive(mk2_plus_isolated(3, n)) == bound("sigma1_max", n).value
    if n >= 8:
        assert sigma1_recursive(mk2_plus_isolated(4, n)) == bound("sigma1_max", n).value
    j = build(FamilySpec("join_complement", n))
    assert is_good(j)
    assert sigma1_recursive(j) == j.size == (n + 2) * (n - 3) // 2
