from pathlib import Path

import pytest

from uninorms import generators as G
from uninorms.catalog import catalog_operators, example_uninorm
from uninorms.dsl import DSLSemanticError, DSLSyntaxError, parse_operator, parse_spec, print_op, tokenize
from uninorms.operators import Mode, Representable, SInternal

CORPUS = Path(__file__).parent / "corpus"
BAD = Path(__file__).parent / "corpus_bad"


def test_representable_document():
    op = parse_operator("uninorm representable { gen = logratio; mode = conjunctive }")
    assert op == Representable(G.LOGRATIO, Mode.CONJUNCTIVE)


def test_mode_defaults_to_conjunctive():
    assert parse_operator("uninorm representable { gen = logratio }").mode is Mode.CONJUNCTIVE


def test_example_document():
    op = parse_operator((CORPUS / "example22.op").read_text())
    assert op == example_uninorm()


def test_knot_generator():
    op = parse_operator("uninorm representable { gen = knot(0.35, 0.5, logratio) }")
    assert op.gen == G.knot(0.35, 0.5, G.LOGRATIO)


def test_comments_and_separators():
    text = "# leading\nuninorm sinternal {   # trailing\n curve = [(0, 1), (1, 0)] ; ; }\n"
    assert isinstance(parse_operator(text), SInternal)


def test_anti_comonotone_names_both_summands():
    text = (BAD / "anti_comonotone.op").read_text()
    with pytest.raises(DSLSemanticError) as info:
        parse_spec(text)
    err = info.value
    assert "anti_comonotone" in str(err)
    assert (err.span.line, err.span.col) == (3, 3)
    assert [(s.line, s.col) for s in err.related] == [(5, 3)]


def test_syntax_error_position_and_expected():
    with pytest.raises(DSLSyntaxError) as info:
        parse_spec("uninorm representable { gen = logratio mode = }")
    err = info.value
    assert (err.span.line, err.span.col) == (1, 47)
    assert "a number" in err.expected


def test_bad_character():
    with pytest.raises(DSLSyntaxError) as info:
        tokenize("uninorm $")
    assert info.value.span.col == 9


def test_trailing_garbage():
    with pytest.raises(DSLSyntaxError):
        parse_spec("tnorm min { } tnorm min { }")


@pytest.mark.parametrize("text, fragment", [
    ("uninorm representable { gen = hyperbolic }", "unknown generator"),
    ("tnorm generated { gen = logratio }", "not a t-norm generator"),
    ("uninorm representable { gen = logratio; colour = red }", "unknown field"),
    ("uninorm representable { mode = conjunctive }", "missing field 'gen'"),
    ("uninorm representable { gen = logratio; gen = logratio }", "given twice"),
    ("uninorm representable { gen = logratio; mode = sideways }", "mode is"),
    ("uninorm umin { e = 0.5; tnorm = tconorm max { }; tconorm = tconorm max { } }", "needs a tnorm"),
    ("uninorm sinternal { curve = [(0, 1), (0.4, 0.5), (0.5, 0.5), (1, 0)] }", "strictly decreasing"),
    ("uninorm sinternal { curve = [(0, 1), (0.5, 0.4, 0.6), (1, 0)] }", "vertical"),
    ("uninorm blob { }", "unknown uninorm kind"),
    ("uninorm representable { gen = knot(0, 0.5, logratio) }", "open unit square"),
])
def test_semantic_errors(text, fragment):
    with pytest.raises(DSLSemanticError) as info:
        parse_spec(text)
    assert fragment in str(info.value)


@pytest.mark.parametrize("path", sorted(CORPUS.glob("*.op")), ids=lambda p: p.name)
def test_corpus_round_trip(path):
    doc = parse_spec(path.read_text())
    printed = print_op(doc.op)
    again = parse_operator(printed)
    assert again == doc.op
    assert print_op(again) == printed


@pytest.mark.parametrize("path", sorted(BAD.glob("*.op")), ids=lambda p: p.name)
def test_bad_corpus_rejected(path):
    with pytest.raises((DSLSyntaxError, DSLSemanticError)):
        parse_spec(path.read_text())


@pytest.mark.parametrize("name", sorted(catalog_operators()))
def test_catalog_round_trip(name):
    op = catalog_operators()[name]
    assert parse_operator(print_op(op)) == op


def test_spans_recorded():
    doc = parse_spec((CORPUS / "example22.op").read_text())
    spans = dict(doc.spans())
    assert str(spans["uninorm"]) == "2:1"
    assert str(spans["e"]) == "3:3"
