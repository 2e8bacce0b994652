import random

import pytest
from hypothesis import given, settings, strategies as st

from ewsat.boolfun import family, impl, nand
from ewsat.corpus import (dual_horn, formula_corpus, nand2_avoiding_zoo, random_dag, random_graph,
                          random_hypergraph)
from ewsat.errors import ParseError, UsageError
from ewsat.formats import (directives, load_formula, parse_family, parse_formula, parse_graph,
                           parse_hypergraph, parse_wdi, write_family, write_formula, write_graph,
                           write_hypergraph, write_wdi)
from ewsat.wdi import WdiInstance


def test_family_round_trip():
    F = family(impl(), nand(3), dual_horn())
    assert parse_family(write_family(F)) == F
    assert write_family(family(impl())) == "fun IMPL 2 1011\n"


@pytest.mark.parametrize("text, line", [
    ("fun IMPL 2 101\n", 1),
    ("# c\nfun IMPL 2 10x1\n", 2),
    ("fun A 1 10\nfun A 1 01\n", None),
    ("fn IMPL 2 1011\n", 1),
])
def test_family_errors(text, line):
    with pytest.raises(ParseError) as e:
        parse_family(text, "f.fam")
    assert e.value.line == line
    assert isinstance(e.value, UsageError)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_formula_round_trip(seed):
    [(phi, k)] = formula_corpus(seed, 1, nand2_avoiding_zoo(), 9, 4)
    text = write_formula(phi, k, "Z", ("note",))
    back, k2, name = parse_formula(text, lambda _: phi.family)
    assert (back, k2, name) == (phi, k, "Z")
    assert write_formula(back, k2, name, ("note",)) == text


def test_formula_constants_and_errors():
    F = family(impl())
    text = "p ewsat 2 1 1\nuse I\nc IMPL 1 T\n"
    phi, k, _ = parse_formula(text, lambda _: F)
    assert phi.constraints[0].args == (1, "T")
    bad = {
        "p ewsat 2 1 1\nuse I\nc IMPL 1 3\n": 3,
        "p ewsat 2 1 1\nuse I\nc NAND2 1 2\n": 3,
        "p ewsat 2 1 1\nuse I\nc IMPL 1\n": 3,
        "p ewsat 2 2 1\nuse I\nc IMPL 1 2\n": None,
        "p ewsat 2 1 1\nc IMPL 1 2\n": 2,
        "p ewsat 2 1\n": 1,
        "": None,
    }
    for t, line in bad.items():
        with pytest.raises(ParseError) as e:
            parse_formula(t, lambda _: F)
        assert e.value.line == line, t


def test_load_formula_resolves_family(tmp_path):
    (tmp_path / "I.fam").write_text("fun IMPL 2 1011\n")
    (tmp_path / "x.ewsat").write_text("p ewsat 2 1 1\nuse I\nc IMPL 1 2\n")
    phi, k, name = load_formula(tmp_path / "x.ewsat")
    assert phi.m == 1 and k == 1 and name == "I"
    (tmp_path / "y.ewsat").write_text("p ewsat 2 0 1\nuse missing\n")
    with pytest.raises(ParseError):
        load_formula(tmp_path / "y.ewsat")


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_graph_formats_round_trip(seed):
    rng = random.Random(seed)
    G = random_graph(rng, rng.randint(1, 12), rng.random())
    assert parse_graph(write_graph(G)) == G
    H = random_hypergraph(rng, rng.randint(1, 3), rng.randint(3, 8), rng.random())
    assert parse_hypergraph(write_hypergraph(H)) == H
    inst = random_dag(rng, rng.randint(1, 10), 0.3, (1, 2, 5), rng.randint(0, 9))
    assert parse_wdi(write_wdi(inst)) == inst


def test_graph_errors():
    for t in ("p edge 3 1\ne 1 1\n", "p edge 3 1\ne 1 4\n", "p edge 3 2\ne 1 2\ne 2 1\n",
              "p edge 3 2\ne 1 2\n", "e 1 2\n"):
        with pytest.raises(ParseError):
            parse_graph(t)
    for t in ("p wdi 2 0 1\nw 1 0\n", "p wdi 2 0 1\nw 1 2\nw 1 3\n", "p wdi 2 1 1\na 1 3\n",
              "p wdi 2 0 1\nx 1 2\n"):
        with pytest.raises(ParseError):
            parse_wdi(t)
    with pytest.raises(ParseError):
        parse_hypergraph("p hedge 3 4 1\ne 1 1 2\n")


def test_wdi_example():
    inst = parse_wdi("# c\np wdi 3 2 4\nw 2 3\na 1 2\na 2 3\n")
    assert inst == WdiInstance(3, frozenset({(0, 1), (1, 2)}), (1, 3, 1), 4)


def test_directives():
    assert directives("# expect: YES 1 2\n# k: 3\np edge 1 0\n") == {"expect": "YES 1 2", "k": "3"}
