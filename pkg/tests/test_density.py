import csv
import io
import json
import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hyperopic.density import (CSV_FIELDS, HALF, NAMED_TARGETS, NeedPadding, approximant_sequence,
                               beta, build_chain, chain_for, element_density, pad_for_positive_beta,
                               parse_target, solve_diophantine, vlem_cop_number)
from hyperopic.graphs import clique_join_coclique
from hyperopic.oracles import brute_diophantine
from hyperopic.solver import hyperopic_cop_number


@pytest.mark.parametrize("i,j", [(i, j) for i in range(2, 6) for j in range(2, 5) if i + j <= 8])
def test_join_cop_number_matches_solver(i, j):
    assert vlem_cop_number(i, j) == hyperopic_cop_number(clique_join_coclique(i, j))


def test_density_examples():
    assert element_density(2, 2) == HALF
    assert element_density(4, 2) == Fraction(1, 2)
    assert element_density(4, 5) == Fraction(1, 3)
    assert beta(1, 3, 2, 2) == -2 and beta(1, 3, 2, 5) == 1
    with pytest.raises(ValueError):
        element_density(1, 5)


def test_diophantine_examples():
    assert solve_diophantine(1, 3, 2, 5) == (2, 0)
    assert element_density(4, 5) == Fraction(1, 3)
    j = pad_for_positive_beta(2, 5, 3, 2)
    x, y = solve_diophantine(2, 5, 3, j)
    assert x % 2 == 0 and element_density(3 + x, j + y) == Fraction(2, 5)
    with pytest.raises(NeedPadding) as info:
        solve_diophantine(1, 3, 2, 2)
    assert info.value.beta <= 0
    with pytest.raises(ValueError):
        solve_diophantine(1, 2, 2, 2)
    with pytest.raises(ValueError):
        solve_diophantine(2, 6, 2, 2)


@st.composite
def targets(draw):
    b = draw(st.integers(3, 40))
    a = draw(st.integers(1, (b - 1) // 2))
    assume(math.gcd(a, b) == 1 and 2 * a < b)
    i = draw(st.integers(2, 12))
    j = draw(st.integers(2, 12))
    return a, b, i, j


@settings(max_examples=200, deadline=None)
@given(targets())
def test_diophantine_is_least(t):
    a, b, i, j = t
    j = pad_for_positive_beta(a, b, i, j)
    x, y = solve_diophantine(a, b, i, j)
    assert (x, y) == brute_diophantine(a, b, i, j, 4 * b * (i + j + b))


@settings(max_examples=200, deadline=None)
@given(targets())
def test_padding_is_least(t):
    a, b, i, j = t
    jp = pad_for_positive_beta(a, b, i, j)
    assert jp >= j and beta(a, b, i, jp) > 0
    scan = j
    while beta(a, b, i, scan) <= 0:
        scan += 1
    assert jp == scan


def test_padding_examples():
    assert pad_for_positive_beta(1, 3, 2, 2) == 5
    assert pad_for_positive_beta(1, 3, 2, 9) == 9
    assert pad_for_positive_beta(1, 3, 4, 5) == 6 and beta(1, 3, 4, 6) == 1
    # the first j with 2 / (2 + j) < 1/4
    assert pad_for_positive_beta(1, 4, 2, 2) == 7
    assert element_density(2, 6) == Fraction(1, 4)


def test_approximants_rational():
    seq = approximant_sequence(Fraction(1, 3), 4)
    assert seq[0] == HALF and seq[-1] == Fraction(1, 3)
    assert all(0 < p < HALF for p in seq[1:])


def test_approximants_endpoints():
    assert approximant_sequence(0, 3) == [HALF, Fraction(1, 3), Fraction(1, 4), Fraction(1, 5)]
    hi = approximant_sequence(HALF, 3)
    assert hi[1:] == [HALF - Fraction(1, 3), HALF - Fraction(1, 4), HALF - Fraction(1, 5)]


@pytest.mark.parametrize("name,value", [("sqrt2-1", math.sqrt(2) - 1),
                                        ("golden", (3 - math.sqrt(5)) / 2),
                                        ("1/e", 1 / math.e)])
def test_approximants_named(name, value):
    seq = approximant_sequence(name, 16)
    assert name in NAMED_TARGETS
    assert all(0 < p < HALF for p in seq[1:])
    errs = [abs(float(p) - value) for p in seq[1:]]
    assert errs[-1] < 1e-6
    assert errs[-1] <= errs[0]


def test_approximant_errors():
    with pytest.raises(ValueError):
        approximant_sequence(Fraction(3, 4), 3)
    with pytest.raises(ValueError):
        approximant_sequence("pi", 3)
    with pytest.raises(ValueError):
        approximant_sequence(Fraction(1, 3), 0)


def test_parse_target():
    assert parse_target("1/3") == Fraction(1, 3)
    assert parse_target("0.25") == Fraction(1, 4)
    assert parse_target("golden") == "golden"
    with pytest.raises(ValueError):
        parse_target("nope")


def test_chain_example():
    c = build_chain([HALF, Fraction(1, 3)])
    e0, e1 = c.elements
    assert (e0.i, e0.j) == (2, 2)
    assert e1.added == "coclique" and (e1.i, e1.j) == (4, 5)
    assert e1.x == 2 and e1.density == Fraction(1, 3)


def test_chain_rejects_half():
    with pytest.raises(ValueError):
        build_chain([HALF, HALF])
    with pytest.raises(ValueError):
        build_chain([Fraction(1, 3)])


@pytest.mark.parametrize("target", [Fraction(1, 3), Fraction(2, 7), 0, HALF, "golden", "1/e"])
def test_chain_hits_every_density(target):
    c = chain_for(target, 8)
    p = approximant_sequence(target, 8)
    assert c.densities == p
    for prev, cur in zip(c.elements, c.elements[1:]):
        # each element contains the previous one
        assert cur.i >= prev.i and cur.j >= prev.j
        assert cur.x % 2 == 0 and cur.padding >= 0


@pytest.mark.parametrize("i,j", [(2, 2), (3, 3), (4, 2)])
def test_chain_elements_match_solver(i, j):
    g = clique_join_coclique(i, j)
    assert Fraction(hyperopic_cop_number(g), g.n) == element_density(i, j)


def test_csv_and_json():
    c = chain_for(Fraction(1, 3), 3)
    text = c.to_csv()
    assert text.splitlines()[0] == "n,p_n,i,j,x_added,y_added,c_H,|V|,density"
    rows = list(csv.DictReader(io.StringIO(text)))
    assert list(rows[0]) == CSV_FIELDS and len(rows) == 4
    for row in rows:
        assert Fraction(row["density"]) == Fraction(int(row["c_H"]), int(row["|V|"]))
    data = json.loads(c.to_json())
    assert data["target"] == "1/3" and len(data["elements"]) == 4
    assert "padding" in data["elements"][1]
