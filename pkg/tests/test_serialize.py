"""Text format round trips and parser error reporting."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nlie import GF, emit_algebra, make_algebra, parse_algebra
from nlie.catalog import CaseId, instantiate
from nlie.errors import (
    DuplicateKey,
    NonIncreasingIndices,
    ParseError,
    ScalarOutOfRange,
    UnknownField,
)
from nlie.serialize import emit_matrix, parse_matrix

F2 = GF(1)
F4 = GF(2)
F8 = GF(3)

SIMPLE = "nla 1\nfield 2^1\narity 3\ndim 5\nbracket 2 3 4 = 0x1 e1\n"


def test_emit_frozen_single_bracket():
    A = instantiate(3, CaseId.T32_b1, {}, F2)
    assert emit_algebra(A) == SIMPLE


def test_emit_frozen_multi_term():
    A = instantiate(3, CaseId.T32_d9, {"s": 0x2, "t": 0x1, "u": 0x3}, F8)
    assert emit_algebra(A) == (
        "nla 1\n"
        "field 2^3\n"
        "arity 3\n"
        "dim 5\n"
        "bracket 1 4 5 = 0x1 e2\n"
        "bracket 2 4 5 = 0x1 e3\n"
        "bracket 3 4 5 = 0x2 e1 + 0x1 e2 + 0x3 e3\n"
    )


def test_parse_round_trip_catalog_samples():
    samples = [
        instantiate(3, CaseId.T32_b1, {}, F2),
        instantiate(3, CaseId.L21_c1, {}, F8),
        instantiate(3, CaseId.T32_e1, {"p": 2, "q": 2}, F2),
        instantiate(4, CaseId.T32_ebar6, {"r": 5}, F2),
        make_algebra(F4, 3, 5, {}),
    ]
    for A in samples:
        text = emit_algebra(A)
        assert parse_algebra(text) == A
        assert emit_algebra(parse_algebra(text)) == text


def test_parse_tolerates_comments_and_blank_lines():
    text = (
        "# header comment\n"
        "nla 1\n"
        "\n"
        "field 2^1   # binary field\n"
        "arity 3\n"
        "dim 5\n"
        "   bracket 2 3 4 = 0x1 e1\n"
    )
    assert parse_algebra(text) == instantiate(3, CaseId.T32_b1, {}, F2)


def test_parse_merges_repeated_terms_with_xor():
    base = "nla 1\nfield 2^1\narity 3\ndim 4\n"
    cancelled = parse_algebra(base + "bracket 1 2 3 = 0x1 e1 + 0x1 e1\n")
    assert cancelled.entries == ()
    merged = parse_algebra(
        "nla 1\nfield 2^2\narity 3\ndim 4\nbracket 1 2 3 = 0x3 e1 + 0x1 e1\n"
    )
    assert merged.table[(1, 2, 3)] == (0x2, 0, 0, 0)


@pytest.mark.parametrize(
    "text,exc,line_no",
    [
        ("", ParseError, 1),
        ("nla 2\n", ParseError, 1),
        ("field 2^1\nnla 1\n", ParseError, 1),
        ("nla 1\nfield 9^9\n", UnknownField, 2),
        ("nla 1\nfield 2^1 extra\n", ParseError, 2),
        ("nla 1\nfield 2^1\narity 1\n", ParseError, 3),
        ("nla 1\nfield 2^1\narity 3\ndim 2\n", ParseError, 4),
        ("nla 1\nfield 2^1\narity 3\ndim 4\nwhatever\n", ParseError, 5),
        ("nla 1\nfield 2^1\narity 3\ndim 4\nbracket 1 2 = 0x1 e1\n", ParseError, 5),
        ("nla 1\nfield 2^1\narity 3\ndim 4\nbracket 1 2 x = 0x1 e1\n", ParseError, 5),
        ("nla 1\nfield 2^1\narity 3\ndim 4\nbracket 1 2 9 = 0x1 e1\n", ParseError, 5),
        (
            "nla 1\nfield 2^1\narity 3\ndim 4\nbracket 3 2 1 = 0x1 e1\n",
            NonIncreasingIndices,
            5,
        ),
        (
            "nla 1\nfield 2^1\narity 3\ndim 4\n"
            "bracket 1 2 3 = 0x1 e1\nbracket 1 2 3 = 0x1 e2\n",
            DuplicateKey,
            6,
        ),
        ("nla 1\nfield 2^1\narity 3\ndim 4\nbracket 1 2 3 0x1 e1\n", ParseError, 5),
        ("nla 1\nfield 2^1\narity 3\ndim 4\nbracket 1 2 3 = + 0x1 e1\n", ParseError, 5),
        ("nla 1\nfield 2^1\narity 3\ndim 4\nbracket 1 2 3 =\n", ParseError, 5),
        ("nla 1\nfield 2^1\narity 3\ndim 4\nbracket 1 2 3 = 0x1 e1 e2\n", ParseError, 5),
        ("nla 1\nfield 2^1\narity 3\ndim 4\nbracket 1 2 3 = 1 e1\n", ParseError, 5),
        (
            "nla 1\nfield 2^1\narity 3\ndim 4\nbracket 1 2 3 = 0x2 e1\n",
            ScalarOutOfRange,
            5,
        ),
        ("nla 1\nfield 2^1\narity 3\ndim 4\nbracket 1 2 3 = 0x1 e9\n", ParseError, 5),
        ("nla 1\nfield 2^1\narity 3\n", ParseError, 4),
    ],
)
def test_parse_errors_carry_line_numbers(text, exc, line_no):
    with pytest.raises(exc) as err:
        parse_algebra(text)
    assert err.value.line_no == line_no


def test_specific_errors_subclass_parse_error():
    for exc in (DuplicateKey, NonIncreasingIndices, ScalarOutOfRange, UnknownField):
        assert issubclass(exc, ParseError)


# -- matrices ----------------------------------------------------------------


def test_matrix_round_trip():
    M = ((0x2, 0x3), (0x1, 0x5))
    text = emit_matrix(M)
    assert text == "0x2 0x3\n0x1 0x5\n"
    assert parse_matrix(text, F8, 2) == M
    assert parse_matrix("# note\n0x2 0x3\n\n0x1 0x5\n", F8, 2) == M


def test_matrix_errors():
    with pytest.raises(ParseError):
        parse_matrix("0x1 0x0 0x0\n0x0 0x1\n", F2, 2)
    with pytest.raises(ParseError) as err:
        parse_matrix("0x1 0x0\n", F2, 2)
    assert err.value.line_no == 2
    with pytest.raises(ScalarOutOfRange):
        parse_matrix("0x1 0x4\n0x0 0x1\n", F4, 2)


# -- fuzzing -----------------------------------------------------------------


def fuzz_algebras(field, n, d):
    from itertools import combinations

    keys = list(combinations(range(1, d + 1), n))
    vec = st.tuples(*[st.sampled_from(field.elements()) for _ in range(d)])
    table = st.dictionaries(st.sampled_from(keys), vec, max_size=5)
    return table.map(lambda t: make_algebra(field, n, d, t))


@given(A=fuzz_algebras(F4, 3, 5))
def test_emit_parse_identity_gf4(A):
    assert parse_algebra(emit_algebra(A)) == A


@given(A=fuzz_algebras(F8, 4, 6))
def test_emit_parse_identity_gf8(A):
    assert parse_algebra(emit_algebra(A)) == A
