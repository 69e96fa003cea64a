"""
Expression grammar for operation words and algebra elements

    expr   := [sign] term (sign term)*
    term   := coefficient factor* | factor+
    factor := 'Q' '^' int | ['b'] 'P' '^' int | 'Sq' '^' int | identifier

Juxtaposed letters compose; an identifier names an algebra generator.
"""

from dataclasses import dataclass
from typing import List, Tuple, Union

import pyparsing as pp

from .errors import ParseError
from .modp_arith import PrimeLike, as_prime
from .op_terms import LinComb, OpLetter, Side


@dataclass(frozen=True)
class LetterToken:
    kind: str
    bockstein: int
    index: int
    position: int


@dataclass(frozen=True)
class GeneratorToken:
    name: str
    position: int


@dataclass(frozen=True)
class ParsedTerm:
    sign: int
    coefficient: int
    factors: Tuple[Union[LetterToken, GeneratorToken], ...]
    position: int


@dataclass(frozen=True)
class _TermTokens:
    position: int
    items: tuple


def _build_expression():
    index = r"\s*\^\s*(?P<index>-?\d+)"
    sq_letter = pp.Regex(r"Sq" + index).set_parse_action(
        lambda s, loc, t: LetterToken("Sq", 0, int(t["index"]), loc)
    )
    p_letter = pp.Regex(r"(?P<beta>b\s*)?P" + index).set_parse_action(
        lambda s, loc, t: LetterToken("P", 1 if t.get("beta") else 0, int(t["index"]), loc)
    )
    q_letter = pp.Regex(r"Q" + index).set_parse_action(
        lambda s, loc, t: LetterToken("Q", 0, int(t["index"]), loc)
    )
    generator = pp.Regex(r"[A-Za-z_][A-Za-z0-9_]*").set_parse_action(
        lambda s, loc, t: GeneratorToken(t[0], loc)
    )
    factor = sq_letter | p_letter | q_letter | generator
    coefficient = pp.Regex(r"\d+").set_parse_action(lambda t: int(t[0]))
    term = pp.Group(coefficient + pp.ZeroOrMore(factor) | pp.OneOrMore(factor))
    term.set_parse_action(lambda s, loc, t: _TermTokens(loc, tuple(t[0])))
    sign = pp.one_of("+ -")
    return pp.Opt(sign) + term + pp.ZeroOrMore(sign + term)


_EXPRESSION = _build_expression()


def parse_terms(text: str) -> List[ParsedTerm]:
    """Tokenize an expression into signed terms; raises ParseError with position"""
    if not text.strip():
        raise ParseError("empty expression", text, 0)
    try:
        tokens = _EXPRESSION.parse_string(text, parse_all=True)
    except pp.ParseException as e:
        raise ParseError(f"syntax error: {e.msg}", text, e.loc) from None
    terms = []
    sign = 1
    for token in tokens:
        if isinstance(token, str):
            sign = -1 if token == "-" else 1
            continue
        items = token.items
        coefficient = 1
        if items and isinstance(items[0], int):
            coefficient, items = items[0], items[1:]
        terms.append(ParsedTerm(sign, coefficient, tuple(items), token.position))
        sign = 1
    return terms


def letter_from_token(token: LetterToken, p: int, side: Side, text: str) -> OpLetter:
    """Check a letter against the prime/side conventions"""
    expected = ("Q" if side is Side.B else "Sq") if p == 2 else "P"
    if token.kind != expected:
        shown = ("b " if token.bockstein else "") + token.kind
        raise ParseError(
            f"letter {shown} is not valid at p={p} on side {side} (use {expected})",
            text,
            token.position,
        )
    if side is Side.A and token.index < 0:
        raise ParseError("Steenrod letters need a nonnegative index", text, token.position)
    return OpLetter(token.bockstein, token.index)


def parse(text: str, prime: PrimeLike, side) -> LinComb:
    """Parse an operation expression into a canonical LinComb"""
    prime = as_prime(prime)
    side = Side(side)
    p = prime.value
    terms = {}
    for term in parse_terms(text):
        letters = []
        for factor in term.factors:
            if isinstance(factor, GeneratorToken):
                raise ParseError(
                    f"unexpected generator {factor.name!r} in an operation expression",
                    text,
                    factor.position,
                )
            letters.append(letter_from_token(factor, p, side, text))
        key = tuple(letters)
        terms[key] = terms.get(key, 0) + term.sign * term.coefficient
    return LinComb(prime, side, terms)
