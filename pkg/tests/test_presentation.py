import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mlaw import Presentation, PresentationError, parse_presentation
from mlaw.presentation import format_presentation, format_word, invert_word, reduce_word


def test_basic_parse():
    p = parse_presentation("<a,b | a^2, b^3, (ab)^2>")
    assert p.generators == ("a", "b")
    assert p.relators == ((("a", 2),), (("b", 3),), (("a", 1), ("b", 1), ("a", 1), ("b", 1)))


def test_equals_sugar():
    p = parse_presentation("<x,y | x^2=y^3, xyx^-1=y^-1>")
    assert p.relators == ((("x", 2), ("y", -3)), (("x", 1), ("y", 1), ("x", -1), ("y", 1)))


def test_empty_relator_list():
    p = parse_presentation("<a | >")
    assert p.generators == ("a",) and p.relators == ()


def test_commutator_identity_and_chains():
    p = parse_presentation("<a,b | [a,b], a^2 = b^2 = 1>")
    assert p.relators[0] == (("a", 1), ("b", 1), ("a", -1), ("b", -1))
    assert p.relators[1:] == ((("a", 2), ("b", -2)), (("b", 2),))


def test_longest_symbol_wins():
    p = parse_presentation("<a, ab | ab a>")
    assert p.relators == ((("ab", 1), ("a", 1)),)


@pytest.mark.parametrize(
    "text,pos",
    [
        ("<a | b>", 5),
        ("<a | a^>", 7),
        ("<a | a", 6),
        ("a | a>", 0),
        ("<a | (a>", 7),
        ("<a | a> x", 8),
        ("<a, a | a>", 4),
    ],
)
def test_errors_carry_positions(text, pos):
    with pytest.raises(PresentationError) as exc:
        parse_presentation(text)
    assert exc.value.pos == pos
    assert "<<HERE>>" in str(exc.value)


def test_undeclared_generator_message():
    with pytest.raises(PresentationError, match="undeclared generator 'b'"):
        parse_presentation("<a | a b>")


def test_presentation_invariants():
    with pytest.raises(PresentationError):
        Presentation(("a",), ((("b", 1),),))
    with pytest.raises(PresentationError):
        Presentation(("a",), ((("a", 0),),))
    with pytest.raises(PresentationError):
        Presentation(("a", "a"), ())


def test_reduce_and_invert():
    assert reduce_word([("a", 1), ("a", -1), ("b", 2)]) == (("b", 2),)
    assert invert_word((("a", 2), ("b", -1))) == (("b", 1), ("a", -2))
    assert format_word(()) == "1"


_letter = st.tuples(st.sampled_from(["x", "y", "z"]), st.integers(-4, 4).filter(bool))


@given(st.lists(st.lists(_letter, max_size=6), max_size=5))
@settings(max_examples=100, deadline=None)
def test_printer_round_trip(words):
    p = Presentation(("x", "y", "z"), tuple(reduce_word(w) for w in words))
    assert parse_presentation(format_presentation(p)) == p


@given(st.lists(st.lists(_letter, max_size=6), max_size=5))
@settings(max_examples=50, deadline=None)
def test_printer_round_trip_multichar(words):
    rename = {"x": "g1", "y": "g2", "z": "h"}
    p = Presentation(("g1", "g2", "h"), tuple(reduce_word((rename[s], e) for s, e in w) for w in words))
    assert parse_presentation(str(p)) == p
