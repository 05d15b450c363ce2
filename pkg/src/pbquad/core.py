"""Exact multilinear pseudo-Boolean polynomials and literal-product forms.

Variables are positive integers ``1..n``.  A *literal* is a nonzero integer:
``+k`` stands for ``x_k`` and ``-k`` for its negation ``1 - x_k``.  All
coefficients are :class:`fractions.Fraction`, so every identity in this package
is checked exactly.

Term keys are sorted index tuples, iterated in graded order (degree first, then
lexicographically), which makes every emitted representation deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import UniverseMismatchError

__all__ = [
    "Coefficient",
    "Term",
    "LiteralTerm",
    "PseudoBooleanFunction",
    "LiteralForm",
    "AuxAllocator",
    "as_fraction",
    "term_order",
    "literal_order",
    "monomial",
    "evaluate",
    "degree",
    "linear_combine",
    "canonicalize",
    "substitute_pair",
    "restrict",
]

Coefficient = Union[int, Fraction, str]
Term = tuple[int, ...]
LiteralTerm = tuple[int, ...]


def as_fraction(value: Coefficient) -> Fraction:
    """Convert ``value`` to a Fraction, refusing floats (they are not exact)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"coefficient must be an exact rational, got {type(value).__name__}")


def term_order(key: Term) -> tuple[int, Term]:
    return (len(key), key)


def literal_order(lit: int) -> tuple[int, int]:
    return (abs(lit), 0 if lit > 0 else 1)


def _literal_key(lits: Iterable[int]) -> LiteralTerm:
    lits = set(lits)
    for lit in lits:
        if lit == 0:
            raise ValueError("literal 0 is not a variable")
        if -lit in lits:
            raise ValueError(f"term contains both polarities of variable {abs(lit)}")
    return tuple(sorted(lits, key=literal_order))


def _literal_sort_key(key: LiteralTerm) -> tuple:
    return (len(key), tuple(literal_order(lit) for lit in key))


class PseudoBooleanFunction:
    """Canonical multilinear polynomial ``sum_S a_S prod_{j in S} x_j``.

    ``terms`` may be a mapping or an iterable of ``(variables, coefficient)``
    pairs; repeated variables inside a key collapse (``x^2 = x``) and repeated
    keys accumulate.  ``n_vars`` is the size of the declared universe and
    defaults to the largest index used.
    """

    __slots__ = ("_terms", "_n_vars", "_hash")

    def __init__(
        self,
        terms: Mapping[Iterable[int], Coefficient] | Iterable[tuple[Iterable[int], Coefficient]] = (),
        n_vars: int | None = None,
    ):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Term, Fraction] = {}
        top = 0
        for variables, coef in items:
            key = tuple(sorted(set(variables)))
            if key and key[0] < 1:
                raise ValueError(f"variable indices must be positive, got {key}")
            if key:
                top = max(top, key[-1])
            acc[key] = acc.get(key, Fraction(0)) + as_fraction(coef)
        if n_vars is None:
            n_vars = top
        elif top > n_vars:
            raise UniverseMismatchError(f"variable {top} outside universe of size {n_vars}")
        self._n_vars = int(n_vars)
        self._terms = {k: acc[k] for k in sorted(acc, key=term_order) if acc[k] != 0}
        self._hash = None

    @classmethod
    def constant(cls, value: Coefficient, n_vars: int = 0) -> "PseudoBooleanFunction":
        return cls({(): value}, n_vars=n_vars)

    @property
    def n_vars(self) -> int:
        return self._n_vars

    @property
    def terms(self) -> dict[Term, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Term, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Term]:
        return iter(self._terms)

    def __getitem__(self, key: Iterable[int]) -> Fraction:
        return self._terms.get(tuple(sorted(set(key))), Fraction(0))

    def variables(self) -> list[int]:
        return sorted({v for key in self._terms for v in key})

    @property
    def degree(self) -> int:
        return max((len(k) for k in self._terms), default=0)

    def with_universe(self, n_vars: int) -> "PseudoBooleanFunction":
        return PseudoBooleanFunction(self._terms, n_vars=n_vars)

    def __call__(self, x: Sequence[int]) -> Fraction:
        return evaluate(self, x)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PseudoBooleanFunction):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __add__(self, other: "PseudoBooleanFunction") -> "PseudoBooleanFunction":
        return linear_combine(self, 1, other, 1)

    def __sub__(self, other: "PseudoBooleanFunction") -> "PseudoBooleanFunction":
        return linear_combine(self, 1, other, -1)

    def __neg__(self) -> "PseudoBooleanFunction":
        return self * -1

    def __mul__(self, scalar: Coefficient) -> "PseudoBooleanFunction":
        s = as_fraction(scalar)
        return PseudoBooleanFunction({k: c * s for k, c in self._terms.items()}, self._n_vars)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"PseudoBooleanFunction({self}, n_vars={self._n_vars})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for key, coef in self._terms.items():
            mono = "*".join(f"x{v}" for v in key)
            if not key:
                body = str(abs(coef))
            elif abs(coef) == 1:
                body = mono
            else:
                body = f"{abs(coef)}*{mono}"
            parts.append(("- " if coef < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


class LiteralForm:
    """Weighted sum of literal products, e.g. ``2*~x1*x2 - x3``.

    Identical literal products are merged and zero coefficients dropped; a
    product containing both ``x_k`` and its negation is rejected.
    """

    __slots__ = ("_terms", "_n_vars")

    def __init__(self, terms: Iterable[tuple[Coefficient, Iterable[int]]] = (), n_vars: int | None = None):
        acc: dict[LiteralTerm, Fraction] = {}
        top = 0
        for coef, lits in terms:
            key = _literal_key(lits)
            if key:
                top = max(top, max(abs(lit) for lit in key))
            acc[key] = acc.get(key, Fraction(0)) + as_fraction(coef)
        if n_vars is None:
            n_vars = top
        elif top > n_vars:
            raise UniverseMismatchError(f"variable {top} outside universe of size {n_vars}")
        self._n_vars = int(n_vars)
        self._terms = tuple(
            (acc[k], k) for k in sorted(acc, key=_literal_sort_key) if acc[k] != 0
        )

    @property
    def n_vars(self) -> int:
        return self._n_vars

    @property
    def terms(self) -> tuple[tuple[Fraction, LiteralTerm], ...]:
        return self._terms

    def __iter__(self):
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "LiteralForm") -> "LiteralForm":
        return LiteralForm(self._terms + other._terms, max(self._n_vars, other._n_vars))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LiteralForm):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def evaluate(self, x: Sequence[int]) -> Fraction:
        if len(x) != self._n_vars:
            raise UniverseMismatchError(f"assignment has {len(x)} entries, universe is {self._n_vars}")
        total = Fraction(0)
        for coef, lits in self._terms:
            if all((x[lit - 1] if lit > 0 else 1 - x[-lit - 1]) for lit in lits):
                total += coef
        return total

    @property
    def literal_degree(self) -> int:
        return max((len(k) for _, k in self._terms), default=0)

    def __repr__(self) -> str:
        def signed(c):
            return f"+{c}" if c >= 0 else str(c)

        body = " ".join(
            signed(c) + "".join(f"*x{l}" if l > 0 else f"*~x{-l}" for l in k)
            for c, k in self._terms
        )
        return f"LiteralForm({body or '0'}, n_vars={self._n_vars})"


class AuxAllocator:
    """Hands out fresh auxiliary variable indices ``n+1, n+2, ...`` in order."""

    def __init__(self, n_original: int):
        self.n_original = n_original
        self._next = n_original + 1
        self.created: list[int] = []

    def new(self) -> int:
        v = self._next
        self._next += 1
        self.created.append(v)
        return v

    @property
    def n_vars(self) -> int:
        """Size of the universe including every variable handed out so far."""
        return self._next - 1


def monomial(coef: Coefficient, variables: Iterable[int], n_vars: int | None = None) -> PseudoBooleanFunction:
    return PseudoBooleanFunction([(variables, coef)], n_vars=n_vars)


def evaluate(f: PseudoBooleanFunction, x: Sequence[int]) -> Fraction:
    if len(x) != f.n_vars:
        raise UniverseMismatchError(f"assignment has {len(x)} entries, universe is {f.n_vars}")
    total = Fraction(0)
    for key, coef in f.items():
        if all(x[j - 1] for j in key):
            total += coef
    return total


def degree(f: PseudoBooleanFunction) -> int:
    return f.degree


def linear_combine(
    f: PseudoBooleanFunction, alpha: Coefficient, g: PseudoBooleanFunction, beta: Coefficient
) -> PseudoBooleanFunction:
    a, b = as_fraction(alpha), as_fraction(beta)
    pairs = [(k, a * c) for k, c in f.items()] + [(k, b * c) for k, c in g.items()]
    return PseudoBooleanFunction(pairs, n_vars=max(f.n_vars, g.n_vars))


def canonicalize(form: LiteralForm) -> PseudoBooleanFunction:
    """Expand every literal product into the unique multilinear polynomial."""
    pairs: list[tuple[Term, Fraction]] = []
    for coef, lits in form:
        pos = [l for l in lits if l > 0]
        neg = [-l for l in lits if l < 0]
        for r in range(len(neg) + 1):
            sign = -1 if r % 2 else 1
            for chosen in combinations(neg, r):
                pairs.append((tuple(pos) + chosen, sign * coef))
    return PseudoBooleanFunction(pairs, n_vars=form.n_vars)


def to_literal_form(f: PseudoBooleanFunction) -> LiteralForm:
    return LiteralForm(((c, k) for k, c in f.items()), n_vars=f.n_vars)


def substitute_pair(f: PseudoBooleanFunction, i: int, j: int, w: int) -> PseudoBooleanFunction:
    """Replace the product ``x_i x_j`` by ``x_w`` in every term containing both."""
    if i == j:
        raise ValueError("substitute_pair needs two distinct variables")
    if any(w in key for key in f):
        raise ValueError(f"variable {w} is already used by the function")
    pairs = []
    for key, coef in f.items():
        if i in key and j in key:
            key = tuple(v for v in key if v not in (i, j)) + (w,)
        pairs.append((key, coef))
    return PseudoBooleanFunction(pairs, n_vars=max(f.n_vars, w))


def restrict(f: PseudoBooleanFunction, i: int, b: int) -> PseudoBooleanFunction:
    """Fix ``x_i = b``; the universe is kept, ``x_i`` simply no longer occurs."""
    pairs = []
    for key, coef in f.items():
        if i in key:
            if not b:
                continue
            key = tuple(v for v in key if v != i)
        pairs.append((key, coef))
    return PseudoBooleanFunction(pairs, n_vars=f.n_vars)
