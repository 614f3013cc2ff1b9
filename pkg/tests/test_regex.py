import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from generators import all_words
from langgrowth.automata import trim
from langgrowth.regex import (
    Alt,
    Concat,
    Epsilon,
    Literal,
    Optional_,
    Plus,
    RegexSyntaxError,
    Star,
    compile_regex,
    parse_regex,
    regex_to_nfa,
)


def test_parse_examples():
    assert parse_regex("a*b*") == Concat(Star(Literal("a")), Star(Literal("b")))
    assert parse_regex("(ab|ba)*") == Star(Alt(Concat(Literal("a"), Literal("b")), Concat(Literal("b"), Literal("a"))))


def test_parse_operators_and_precedence():
    assert parse_regex("ab|c") == Alt(Concat(Literal("a"), Literal("b")), Literal("c"))
    assert parse_regex("a+?") == Optional_(Plus(Literal("a")))
    assert parse_regex("") == Epsilon()
    assert parse_regex("a|") == Alt(Literal("a"), Epsilon())
    assert parse_regex("()") == Epsilon()


def test_parse_escapes():
    assert parse_regex(r"\*") == Literal("*")
    assert parse_regex(r"a\|b") == Concat(Concat(Literal("a"), Literal("|")), Literal("b"))


@pytest.mark.parametrize("pattern, offset", [
    ("a(", 2),
    ("(a", 2),
    ("a)", 1),
    ("*a", 0),
    ("a|*", 2),
    ("ab\\", 3),
    ("a\\b", 2),
    ("a b", 1),
    ("a#", 1),
])
def test_syntax_errors(pattern, offset):
    with pytest.raises(RegexSyntaxError) as info:
        parse_regex(pattern)
    assert info.value.offset == offset
    assert isinstance(info.value, ValueError)


def language(a, symbols, max_len=6):
    return {w for w in all_words(symbols, max_len) if a.accepts(w)}


def test_compile_single_literal():
    a = regex_to_nfa("a")
    assert a.state_count == 2
    assert language(a, "a") == {"a"}


def test_compile_star():
    a = regex_to_nfa("a*")
    assert {"", "a", "aa"} <= language(a, "a")


def test_compile_alternation_then_concat():
    assert language(regex_to_nfa("(a|b)c"), "abc") == {"ac", "bc"}


def test_compile_is_trim_and_epsilon_free():
    a = regex_to_nfa("(a|b)*abb(c?)+")
    assert trim(a) == a


def test_alphabet_option():
    a = regex_to_nfa("ba", symbols="ba")
    assert a.symbols == "ba"
    assert regex_to_nfa("ba").symbols == "ab"
    with pytest.raises(ValueError):
        regex_to_nfa("abc", symbols="ab")


def test_empty_pattern_accepts_only_epsilon():
    a = regex_to_nfa("")
    assert a.accepts("") and a.state_count == 1


def test_starred_alternatives_collapse():
    # merging bisimilar states gives the loop a single state
    assert regex_to_nfa("(a|b)*").state_count == 1
    assert regex_to_nfa("(ab|ba)*").state_count == 3
    assert regex_to_nfa("a*b*").state_count == 2


def render(node):
    if isinstance(node, Literal):
        return node.symbol
    if isinstance(node, Epsilon):
        return "()"
    if isinstance(node, Concat):
        return f"({render(node.left)}{render(node.right)})"
    if isinstance(node, Alt):
        return f"({render(node.left)}|{render(node.right)})"
    suffix = {Star: "*", Plus: "+", Optional_: "?"}[type(node)]
    return f"({render(node.inner)}){suffix}"


asts = st.recursive(
    st.sampled_from([Literal("a"), Literal("b"), Epsilon()]),
    lambda inner: st.one_of(
        st.builds(Concat, inner, inner),
        st.builds(Alt, inner, inner),
        st.builds(Star, inner),
        st.builds(Plus, inner),
        st.builds(Optional_, inner),
    ),
    max_leaves=8,
)


@settings(max_examples=300, deadline=None)
@given(asts)
def test_compiled_language_matches_python_re(ast):
    pattern = render(ast)
    assert parse_regex(pattern) == ast
    a = compile_regex(ast, "ab")
    expected = re.compile(pattern)
    for w in all_words("ab", 6):
        assert a.accepts(w) == bool(expected.fullmatch(w)), (pattern, w)


@pytest.mark.parametrize("pattern", ["a*b*", "(ab|ba)*", "(a|b)*a(a|b)", "a(b|c)*d?", "((a|b)c)+", "a?b+"])
def test_handwritten_patterns_match_python_re(pattern):
    symbols = "".join(sorted(set(pattern) - set("()|*+?")))
    a = regex_to_nfa(pattern)
    expected = re.compile(pattern)
    for w in all_words(symbols, 6):
        assert a.accepts(w) == bool(expected.fullmatch(w))
