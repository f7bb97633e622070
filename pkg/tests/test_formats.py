import random

import pytest

from absopt import (
    AbsIoInstance,
    Assignment,
    Graph,
    InvalidInstanceError,
    ParseError,
    WeightedFormula,
    WeightedHypergraph,
)
from absopt.formats import (
    detect_kind,
    parse_absio,
    parse_formula,
    parse_graph,
    parse_hypergraph,
    parse_instance,
    parse_witness,
    serialize_absio,
    serialize_formula,
    serialize_graph,
    serialize_hypergraph,
    serialize_instance,
    serialize_witness,
)
from helpers import random_absio, random_formula, random_graph, random_hypergraph


def test_formula_roundtrip():
    rng = random.Random(53)
    for _ in range(150):
        phi = random_formula(rng)
        again = parse_formula(serialize_formula(phi))
        assert again == phi


def test_formula_header_defaults():
    phi = parse_formula("p wdnf 2 1 3\nw 5 1 -2 0\n")
    assert phi.objective == "abs" and phi.comparison == "atleast"
    phi = parse_formula("p wcnf 1 0 0 sum\n")
    assert phi.kind == "cnf" and phi.objective == "sum" and phi.comparison == "atleast"
    phi = parse_formula("p wdnf 1 1 2 sum atmost\nw -1 1 0\n")
    assert phi.comparison == "atmost"


def test_formula_comments_and_blanks():
    text = "c a comment\nc\n\np wdnf 1 1 1\nc mid-file note\nw 2 1 0\n"
    phi = parse_formula(text)
    assert phi.clauses == ((frozenset({1}), 2),)


def test_formula_parse_errors():
    cases = [
        ("p wxyz 1 0 0\n", 1),
        ("w 1 1 0\n", 1),  # clause before the problem line
        ("p wdnf 1 0 0\np wdnf 1 0 0\n", 2),
        ("p wdnf 1 1 0\nw 2 0 0\n", 2),  # literal 0
        ("p wdnf 1 1 0\nw 2 5 0\n", 2),  # out of range
        ("p wdnf 2 1 0\nw 2 1 -1 0\n", 2),  # repeated variable
        ("p wdnf 2 1 0\nw 2 1\n", 2),  # missing terminator
        ("p wdnf 1 1 0\nq zzz\n", 2),
        ("p wdnf 1 1 0 fancy\n", 1),
        ("p wdnf 1 1 0 abs near\n", 1),
    ]
    for text, line in cases:
        with pytest.raises(ParseError) as exc:
            parse_formula(text)
        assert exc.value.line_no == line, text
    with pytest.raises(ParseError):
        parse_formula("p wdnf 1 2 0\nw 1 1 0\n")  # count mismatch
    with pytest.raises(ParseError):
        parse_formula("c nothing here\n")


def test_hypergraph_roundtrip_identity_vertices():
    rng = random.Random(59)
    for _ in range(100):
        h = random_hypergraph(rng)
        if h.vertices != frozenset(range(1, h.num_vertices + 1)):
            continue
        text = serialize_hypergraph(h)
        assert "\nn " not in text
        # the file format carries no d, so the parse derives it from the edges
        assert parse_hypergraph(text) == WeightedHypergraph(h.vertices, h.edges, h.alpha)


def test_hypergraph_roundtrip_named_vertices():
    h = WeightedHypergraph({3, 7, 9}, (((3, 9), -2), ((), 4)), 2)
    text = serialize_hypergraph(h)
    assert "n 3 7 9 0" in text
    assert parse_hypergraph(text) == h


def test_hypergraph_parse_errors():
    cases = [
        ("p uhg 2 1 1\ne 3 1 1 0\n", 2),  # repeated vertex
        ("p uhg 2 1 1\ne 3 5 0\n", 2),  # unknown vertex
        ("p uhg 2 1 1\nn 1 2 0\ne 3 1 0\nn 1 2 0\n", 4),
        ("p uhg 2 1 1\ne 3 1 0\nn 1 2 0\n", 3),  # vertex list after edges
        ("p uhg 2 1 1\nn 1 1 0\ne 3 1 0\n", 2),  # duplicate ids
        ("p uhg 2 1\n", 1),
    ]
    for text, line in cases:
        with pytest.raises(ParseError) as exc:
            parse_hypergraph(text)
        assert exc.value.line_no == line, text
    with pytest.raises(ParseError):
        parse_hypergraph("p uhg 1 2 1\ne 1 1 0\n")


def test_absio_roundtrip():
    rng = random.Random(61)
    for _ in range(100):
        inst = random_absio(rng, allow_unbounded=True)
        text = serialize_absio(inst)
        assert parse_absio(text) == inst


def test_absio_unbounded_tokens():
    text = "p absio 2 1 5\ncol 3 1:2 0\nb 1 -inf 4\n"
    inst = parse_absio(text)
    assert inst.lower == (None, None) and inst.upper == (4, None)
    assert inst.exponents == ((2,), (0,))
    out = serialize_absio(inst)
    assert "b 1 -inf 4" in out and "b 2 -inf inf" in out


def test_absio_parse_errors():
    cases = [
        ("p absio 1 1 1\ncol 2 1:0 0\n", 2),  # zero exponent
        ("p absio 1 1 1\ncol 2 2:1 0\n", 2),  # unknown variable
        ("p absio 1 1 1\ncol 2 1:1 1:2 0\n", 2),  # repeat
        ("p absio 1 1 1\ncol 2 x 0\n", 2),  # not var:exp
        ("p absio 1 0 1\nb 1 inf 3\n", 2),
        ("p absio 1 0 1\nb 1 0 -inf\n", 2),
        ("p absio 1 0 1\nb 1 0 3\nb 1 0 3\n", 3),
        ("p absio 1 0 1\nb 2 0 3\n", 2),
    ]
    for text, line in cases:
        with pytest.raises(ParseError) as exc:
            parse_absio(text)
        assert exc.value.line_no == line, text


def test_absio_serialize_requires_identity_ids():
    inst = AbsIoInstance(((1,),), (2,), (0,), (3,), 1, (5,))
    with pytest.raises(InvalidInstanceError):
        serialize_absio(inst)


def test_graph_roundtrip_and_errors():
    rng = random.Random(67)
    for _ in range(60):
        g = random_graph(rng)
        assert parse_graph(serialize_graph(g)) == g
    for text, line in [
        ("p edge 2 1\ne 1 1\n", 2),
        ("p edge 2 2\ne 1 2\ne 2 1\n", 3),
        ("p edge 2 1\ne 1 5\n", 2),
    ]:
        with pytest.raises(ParseError) as exc:
            parse_graph(text)
        assert exc.value.line_no == line


def test_detect_and_dispatch():
    samples = {
        "wdnf": "p wdnf 1 0 0\n",
        "wcnf": "p wcnf 1 0 0\n",
        "uhg": "p uhg 0 0 0\n",
        "absio": "p absio 0 0 0\n",
        "edge": "p edge 0 0\n",
    }
    types = {
        "wdnf": WeightedFormula,
        "wcnf": WeightedFormula,
        "uhg": WeightedHypergraph,
        "absio": AbsIoInstance,
        "edge": Graph,
    }
    for kind, text in samples.items():
        assert detect_kind(text) == kind
        obj = parse_instance(text)
        assert isinstance(obj, types[kind])
        again = parse_instance(serialize_instance(obj))
        assert again == obj
    with pytest.raises(ParseError):
        detect_kind("p mystery 1 0\n")
    with pytest.raises(InvalidInstanceError):
        serialize_instance(42)


def test_formula_witness_roundtrip():
    phi = WeightedFormula("dnf", 3, (((1, -2), 4),), 4)
    beta = Assignment((True, False, True))
    text = serialize_witness(phi, beta)
    assert text == "v 1 -2 3\n"
    assert parse_witness(text, phi) == beta
    # true-variable iterables serialize the same way
    assert serialize_witness(phi, {1, 3}) == text


def test_formula_witness_errors():
    phi = WeightedFormula("dnf", 2, (((1,), 1),), 1)
    with pytest.raises(ParseError):
        parse_witness("v 1\n", phi)  # x2 missing
    with pytest.raises(ParseError):
        parse_witness("v 1 -1 2\n", phi)
    with pytest.raises(ParseError):
        parse_witness("v 1 3 2\n", phi)
    with pytest.raises(ParseError):
        parse_witness("s 1 2\n", phi)


def test_hypergraph_witness_roundtrip():
    h = WeightedHypergraph({2, 4, 6}, (((2, 4), 1),), 1)
    assert serialize_witness(h, frozenset({4, 2})) == "s 2 4\n"
    assert parse_witness("s 2 4\n", h) == frozenset({2, 4})
    assert serialize_witness(h, frozenset()) == "s\n"
    assert parse_witness("s\n", h) == frozenset()
    with pytest.raises(ParseError):
        parse_witness("s 3\n", h)
    with pytest.raises(ParseError):
        parse_witness("s 2 2\n", h)


def test_absio_witness_roundtrip():
    inst = AbsIoInstance(((1, 0), (0, 1)), (2, 3), (0, -5), (9, 5), 1)
    text = serialize_witness(inst, (4, -1))
    assert text == "x 1 4\nx 2 -1\n"
    assert parse_witness(text, inst) == (4, -1)
    with pytest.raises(ParseError):
        parse_witness("x 1 4\n", inst)
    with pytest.raises(ParseError):
        parse_witness("x 1 4\nx 1 5\nx 2 0\n", inst)
    with pytest.raises(InvalidInstanceError):
        serialize_witness(inst, (1,))


def test_witness_rejects_graph():
    g = Graph(2, ((1, 2),))
    with pytest.raises(InvalidInstanceError):
        parse_witness("s 1\n", g)
    with pytest.raises(InvalidInstanceError):
        serialize_witness(g, (1,))
