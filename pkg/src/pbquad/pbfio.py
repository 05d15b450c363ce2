"""The ``.pbf`` text format.

::

    # comment
    p pbf 4
    -3/2 1 2 -4
    5

After the header, each line is a rational coefficient followed by literals:
``k`` or ``+k`` is ``x_k`` and ``-k`` is its negation.  A line holding only a
coefficient is a constant.  Repeated term lines accumulate.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable

from .core import LiteralForm, PseudoBooleanFunction, canonicalize
from .errors import ParseError

_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?")
_LITERAL = re.compile(r"[+-]?\d+")


def parse_pbf(text: str) -> LiteralForm:
    n = None
    terms = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if n is not None:
                raise ParseError(f"line {lineno}: duplicate header")
            if len(tokens) != 3 or tokens[1] != "pbf" or not tokens[2].isdigit():
                raise ParseError(f"line {lineno}: header must read 'p pbf <n>'")
            n = int(tokens[2])
            continue
        if n is None:
            raise ParseError(f"line {lineno}: term before the 'p pbf <n>' header")
        if not _RATIONAL.fullmatch(tokens[0]):
            raise ParseError(f"line {lineno}: malformed coefficient {tokens[0]!r}")
        try:
            coef = Fraction(tokens[0])
        except ZeroDivisionError:
            raise ParseError(f"line {lineno}: zero denominator in {tokens[0]!r}") from None
        lits = []
        for tok in tokens[1:]:
            if not _LITERAL.fullmatch(tok):
                raise ParseError(f"line {lineno}: malformed literal {tok!r}")
            lit = int(tok)
            if lit == 0 or abs(lit) > n:
                raise ParseError(f"line {lineno}: literal {tok} outside 1..{n}")
            lits.append(lit)
        if any(-l in lits for l in lits):
            raise ParseError(f"line {lineno}: a variable appears with both polarities")
        terms.append((coef, lits))
    if n is None:
        raise ParseError("missing 'p pbf <n>' header")
    return LiteralForm(terms, n_vars=n)


def parse_function(text: str) -> PseudoBooleanFunction:
    return canonicalize(parse_pbf(text))


def emit_pbf(obj: PseudoBooleanFunction | LiteralForm, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"p pbf {obj.n_vars}")
    if isinstance(obj, PseudoBooleanFunction):
        rows = [(c, key) for key, c in obj.items()]
    else:
        rows = list(obj.terms)
    for coef, lits in rows:
        lines.append(" ".join([str(coef)] + [str(l) for l in lits]))
    return "\n".join(lines) + "\n"


def read_function(path) -> PseudoBooleanFunction:
    with open(path, encoding="utf-8") as fh:
        return parse_function(fh.read())


def write_pbf(path, obj, comments: Iterable[str] = ()) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(emit_pbf(obj, comments))
