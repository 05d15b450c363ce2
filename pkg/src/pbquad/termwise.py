"""Term-by-term quadratization rules and the Rosenberg substitution.

Every rule quadratizes ``alpha * monomial`` for a positive weight ``alpha``; the
published identities are stated for unit weight and scaling by ``alpha > 0``
commutes with the minimum over auxiliaries.  Rules work on literal products
internally (see :mod:`pbquad.core`) and canonicalize once at the end.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from typing import Callable, Iterable, Sequence

from .core import (
    AuxAllocator,
    Coefficient,
    LiteralForm,
    PseudoBooleanFunction,
    as_fraction,
    canonicalize,
    literal_order,
    substitute_pair,
)

LitTerms = list[tuple[Fraction, tuple[int, ...]]]


@dataclass(frozen=True)
class Quadratization:
    """A quadratic ``g`` over original variables ``1..n_original`` plus ``aux``."""

    g: PseudoBooleanFunction
    n_original: int
    aux: tuple[int, ...]
    method: str
    info: dict = field(default_factory=dict, compare=False, repr=False)

    @cached_property
    def metrics(self):
        from .verify import metrics

        return metrics(self)


def _positive(alpha: Coefficient) -> Fraction:
    a = as_fraction(alpha)
    if a <= 0:
        raise ValueError(f"weight must be positive, got {a}")
    return a


def _finish(terms: LitTerms, fresh: AuxAllocator, start: int, method: str, info=None) -> Quadratization:
    g = canonicalize(LiteralForm(terms, n_vars=fresh.n_vars))
    return Quadratization(g, fresh.n_original, tuple(fresh.created[start:]), method, info or {})


# ---------------------------------------------------------------------------
# literal-level rules; each returns a list of (coef, literals) of degree <= 2


def kzfd_terms(alpha: Fraction, lits: Sequence[int], fresh: AuxAllocator) -> LitTerms:
    """``-alpha * prod(lits)  ==  min_w alpha * w * ((d - 1) - sum(lits))``."""
    lits = tuple(lits)
    d = len(lits)
    if d <= 2:
        return [(-alpha, lits)]
    w = fresh.new()
    return [(alpha * (d - 1), (w,))] + [(-alpha, (w, lit)) for lit in lits]


def chain_terms(alpha: Fraction, variables: Sequence[int], fresh: AuxAllocator) -> LitTerms:
    # x_1..x_d = x_{d-1} x_d - sum_i ~x_i prod_{j>i} x_j; each fragment goes through kzfd
    s = sorted(variables)
    d = len(s)
    if d <= 2:
        return [(alpha, tuple(s))]
    out: LitTerms = [(alpha, (s[-2], s[-1]))]
    for i in range(d - 2):
        out += kzfd_terms(alpha, (-s[i],) + tuple(s[i + 1:]), fresh)
    return out


def negated_negative_terms(alpha: Fraction, variables: Sequence[int], fresh: AuxAllocator) -> LitTerms:
    """``-alpha * prod(~x_j)  ==  alpha * (-1 + S1 + min_w w (1 - S1))``."""
    s = sorted(variables)
    if len(s) <= 2:
        return [(-alpha, tuple(-v for v in s))]
    w = fresh.new()
    out: LitTerms = [(-alpha, ()), (alpha, (w,))]
    for v in s:
        out += [(alpha, (v,)), (-alpha, (w, v))]
    return out


def rkfj_terms(alpha: Fraction, negated: Sequence[int], plain: Sequence[int], fresh: AuxAllocator) -> LitTerms:
    """``-alpha * prod(~x, negated) * prod(x, plain)`` with two auxiliaries ``u, v``."""
    u = fresh.new()
    v = fresh.new()
    out: LitTerms = [(-alpha, (u, v))]
    out += [(alpha, (u, j)) for j in sorted(negated)]
    out += [(alpha, (v, -j)) for j in sorted(plain)]
    return out


def rkfj_positive_terms(alpha: Fraction, variables: Sequence[int], fresh: AuxAllocator) -> LitTerms:
    # same decomposition as the chain rule, mixed fragments through the type-I rule
    s = sorted(variables)
    d = len(s)
    if d <= 2:
        return [(alpha, tuple(s))]
    out: LitTerms = [(alpha, (s[-2], s[-1]))]
    for i in range(d - 2):
        out += rkfj_terms(alpha, (s[i],), s[i + 1:], fresh)
    return out


def ishikawa_terms(alpha: Fraction, variables: Sequence[int], fresh: AuxAllocator) -> LitTerms:
    s = sorted(variables)
    d = len(s)
    if d <= 2:
        return [(alpha, tuple(s))]
    k = (d - 1) // 2
    ws = [fresh.new() for _ in range(k)]
    out: LitTerms = [(alpha, pair) for pair in combinations(s, 2)]
    for j, w in enumerate(ws, start=1):
        out.append((alpha * (4 * j - 1), (w,)))
        out += [(-2 * alpha, (w, x)) for x in s]
    if d % 2:
        wk = ws[-1]
        out += [(alpha, (wk, x)) for x in s]
        out.append((-alpha * (d - 1), (wk,)))
    return out


PositiveRule = Callable[[Fraction, Sequence[int], AuxAllocator], LitTerms]

POSITIVE_RULES: dict[str, PositiveRule] = {
    "chain": chain_terms,
    "ishikawa": ishikawa_terms,
    "rkfj": rkfj_positive_terms,
}


def finish_positive(alpha: Fraction, lits: Sequence[int], rule: PositiveRule, fresh: AuxAllocator) -> LitTerms:
    """Quadratize ``+alpha * prod(lits)`` where ``lits`` may contain negations.

    Negated literals are peeled one at a time (``a * ~l * R = a * R - a * l * R``);
    the negative remainder goes through kzfd, the all-positive core through ``rule``.
    """
    lits = tuple(sorted(lits, key=literal_order))
    if len(lits) <= 2:
        return [(alpha, lits)]
    negs = [l for l in lits if l < 0]
    if not negs:
        return rule(alpha, lits, fresh)
    peel = negs[0]
    rest = tuple(l for l in lits if l != peel)
    return finish_positive(alpha, rest, rule, fresh) + kzfd_terms(alpha, (-peel,) + rest, fresh)


# ---------------------------------------------------------------------------
# public single-term operations


def quadratize_negative_term(alpha: Coefficient, S: Iterable[int], fresh: AuxAllocator) -> Quadratization:
    a = _positive(alpha)
    start = len(fresh.created)
    return _finish(kzfd_terms(a, sorted(set(S)), fresh), fresh, start, "kzfd")


def quadratize_positive_term_chain(alpha: Coefficient, S: Iterable[int], fresh: AuxAllocator) -> Quadratization:
    a = _positive(alpha)
    s = sorted(set(S))
    if len(s) < 3:
        raise ValueError("the chain rule needs a term of degree >= 3")
    start = len(fresh.created)
    return _finish(chain_terms(a, s, fresh), fresh, start, "chain")


def quadratize_negated_negative_term(alpha: Coefficient, S: Iterable[int], fresh: AuxAllocator) -> Quadratization:
    a = _positive(alpha)
    start = len(fresh.created)
    return _finish(negated_negative_terms(a, sorted(set(S)), fresh), fresh, start, "negaform")


def quadratize_mixed_term_rkfj(
    alpha: Coefficient, S0: Iterable[int], S1: Iterable[int], fresh: AuxAllocator
) -> Quadratization:
    a = _positive(alpha)
    s0, s1 = set(S0), set(S1)
    if s0 & s1:
        raise ValueError(f"negated and plain sets overlap on {sorted(s0 & s1)}")
    if not s0 and not s1:
        raise ValueError("empty monomial")
    start = len(fresh.created)
    return _finish(rkfj_terms(a, sorted(s0), sorted(s1), fresh), fresh, start, "rkfj")


def quadratize_positive_term_ishikawa(alpha: Coefficient, S: Iterable[int], fresh: AuxAllocator) -> Quadratization:
    a = _positive(alpha)
    s = sorted(set(S))
    if len(s) < 3:
        raise ValueError("the Ishikawa rule needs a term of degree >= 3")
    start = len(fresh.created)
    return _finish(ishikawa_terms(a, s, fresh), fresh, start, "ishikawa")


# ---------------------------------------------------------------------------
# whole-function drivers


def quadratize_termwise(
    f: PseudoBooleanFunction, positive_method: str = "ishikawa", fresh: AuxAllocator | None = None
) -> Quadratization:
    """Negative terms of degree >= 3 via kzfd, positive ones via ``positive_method``."""
    try:
        rule = POSITIVE_RULES[positive_method]
    except KeyError:
        raise ValueError(f"unknown positive method {positive_method!r}") from None
    fresh = fresh or AuxAllocator(f.n_vars)
    start = len(fresh.created)
    terms: LitTerms = []
    for key, c in f.items():
        if len(key) <= 2:
            terms.append((c, key))
        elif c < 0:
            terms += kzfd_terms(-c, key, fresh)
        else:
            terms += rule(c, key, fresh)
    return _finish(terms, fresh, start, positive_method)


def quadratize_kzfd(f: PseudoBooleanFunction, fresh: AuxAllocator | None = None) -> Quadratization:
    """kzfd on every negative term; positive terms of degree >= 3 are rejected."""
    bad = [key for key, c in f.items() if len(key) > 2 and c > 0]
    if bad:
        raise ValueError(f"kzfd cannot handle positive terms of degree >= 3, e.g. {bad[0]}")
    fresh = fresh or AuxAllocator(f.n_vars)
    start = len(fresh.created)
    terms: LitTerms = []
    for key, c in f.items():
        terms += kzfd_terms(-c, key, fresh) if len(key) > 2 else [(c, key)]
    return _finish(terms, fresh, start, "kzfd")


def quadratize_negaform(form: LiteralForm, fresh: AuxAllocator | None = None) -> Quadratization:
    """Submodular quadratization of a unary negaform, term by term."""
    fresh = fresh or AuxAllocator(form.n_vars)
    start = len(fresh.created)
    terms: LitTerms = []
    for c, lits in form:
        if not lits:
            terms.append((c, lits))
            continue
        if c >= 0:
            raise ValueError("unary negaform terms must have negative coefficients")
        if all(l > 0 for l in lits):
            terms += kzfd_terms(-c, lits, fresh)
        elif all(l < 0 for l in lits):
            terms += negated_negative_terms(-c, [-l for l in lits], fresh)
        else:
            raise ValueError(f"term {lits} mixes polarities")
    return _finish(terms, fresh, start, "negaform")


def rosenberg_penalty(i: int, j: int, w: int) -> PseudoBooleanFunction:
    """``x_i x_j - 2 x_i w - 2 x_j w + 3 w``: zero iff ``w == x_i x_j``, else at least 1."""
    return PseudoBooleanFunction({(i, j): 1, (i, w): -2, (j, w): -2, (w,): 3})


def rosenberg_pair(f: PseudoBooleanFunction) -> tuple[int, int] | None:
    counts = Counter(p for key in f if len(key) >= 3 for p in combinations(key, 2))
    if not counts:
        return None
    return min(counts, key=lambda p: (-counts[p], p))


def rosenberg_reduce(f: PseudoBooleanFunction, fresh: AuxAllocator | None = None) -> Quadratization:
    """Substitute pairs by new variables with a big-M penalty until quadratic.

    The pair is the one shared by the most terms of degree >= 3 and
    ``M = 1 + sum |a_S|`` over the terms containing it, which exceeds the
    largest absolute value of the cofactor of that pair.
    """
    fresh = fresh or AuxAllocator(f.n_vars)
    start = len(fresh.created)
    steps = []
    g = f
    while (pair := rosenberg_pair(g)) is not None:
        i, j = pair
        big_m = 1 + sum(abs(c) for key, c in g.items() if i in key and j in key)
        w = fresh.new()
        g = substitute_pair(g, i, j, w) + rosenberg_penalty(i, j, w) * big_m
        steps.append((i, j, w, big_m))
    g = g.with_universe(max(g.n_vars, fresh.n_vars))
    return Quadratization(g, fresh.n_original, tuple(fresh.created[start:]), "rosenberg", {"steps": steps})


# ---------------------------------------------------------------------------
# multiple splits


@dataclass(frozen=True)
class SplitSystem:
    """Literal conjunctions ``phi_1..phi_q`` over local variables ``y_1..y_p``.

    A literal ``+l`` is ``y_l`` and ``-l`` is its negation; an empty conjunction is 1.
    """

    p: int
    phis: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        phis = tuple(tuple(sorted(set(phi), key=literal_order)) for phi in self.phis)
        for phi in phis:
            for lit in phi:
                if lit == 0 or abs(lit) > self.p:
                    raise ValueError(f"literal {lit} outside y_1..y_{self.p}")
                if -lit in phi:
                    raise ValueError(f"conjunction {phi} is contradictory")
        object.__setattr__(self, "phis", phis)

    @property
    def q(self) -> int:
        return len(self.phis)

    def values(self, y: Sequence[int]) -> list[int]:
        return [int(all(y[l - 1] if l > 0 else not y[-l - 1] for l in phi)) for phi in self.phis]


TWO_SPLIT = SplitSystem(1, ((1,), (-1,)))
THREE_SPLIT = SplitSystem(2, ((1,), (2,), (-1, -2)))


def validate_split_system(system: SplitSystem) -> bool:
    """Sum of the phis has minimum exactly 1, and dropping any one phi lets it reach 0.

    Only the ``q`` maximal proper subsets are checked: a ``y`` zeroing a set of
    phis zeroes each of its subsets as well.
    """
    table = [system.values(y) for y in product((0, 1), repeat=system.p)]
    if min(sum(row) for row in table) != 1:
        return False
    return all(any(sum(row) - row[k] == 0 for row in table) for k in range(system.q))


def split_system_from_tree(tree) -> SplitSystem:
    """Leaves of a binary tree as a split system.

    ``tree`` is ``None`` for a leaf or a ``(left, right)`` pair; a node at depth
    ``k`` branches on ``y_{k+1}`` (left ``~y``, right ``y``).
    """
    phis: list[tuple[int, ...]] = []

    def walk(node, path, depth):
        if node is None:
            phis.append(tuple(path))
            return depth
        left, right = node
        return max(walk(left, path + [-(depth + 1)], depth + 1), walk(right, path + [depth + 1], depth + 1))

    p = walk(tree, [], 0)
    return SplitSystem(p, tuple(phis))


def apply_split(
    alpha: Coefficient,
    S: Iterable[int],
    system: SplitSystem,
    cover: Sequence[Iterable[int]],
    fresh: AuxAllocator,
) -> LiteralForm:
    """``alpha * prod(S) == min_y alpha * sum_i phi_i(y) * prod(P_i)`` over fresh ``y``.

    ``S`` and the cover parts are literals, so negated variables are allowed.
    """
    a = _positive(alpha)
    s = set(S)
    parts = [set(part) for part in cover]
    if not validate_split_system(system):
        raise ValueError("split system violates the split condition")
    if len(parts) != system.q:
        raise ValueError(f"cover has {len(parts)} parts, system has {system.q}")
    if set().union(*parts) != s:
        raise ValueError("cover parts must be subsets of S whose union is S")
    ys = [fresh.new() for _ in range(system.p)]
    terms = []
    for phi, part in zip(system.phis, parts):
        ylits = tuple(ys[l - 1] if l > 0 else -ys[-l - 1] for l in phi)
        terms.append((a, tuple(part) + ylits))
    return LiteralForm(terms, n_vars=fresh.n_vars)


def balanced_cover(lits: Sequence[int], q: int) -> list[tuple[int, ...]]:
    """Contiguous parts of near-equal size; the last parts take the remainder."""
    d = len(lits)
    base, extra = divmod(d, q)
    sizes = [base] * (q - extra) + [base + 1] * extra
    out, pos = [], 0
    for size in sizes:
        out.append(tuple(lits[pos:pos + size]))
        pos += size
    return out


def split_rule(system: SplitSystem) -> PositiveRule:
    """Positive rule splitting with ``system``; recursion continues on the pieces.

    Falls back to the 2-split when ``system`` would not lower the degree of
    the positive pieces (or the term has fewer literals than parts).
    """
    if not validate_split_system(system):
        raise ValueError("split system violates the split condition")

    def rule(alpha: Fraction, lits: Sequence[int], fresh: AuxAllocator) -> LitTerms:
        d = len(lits)
        chosen = system
        cover = balanced_cover(lits, system.q) if d >= system.q else None
        if cover is None or any(
            len(part) + sum(1 for l in phi if l > 0) >= d for phi, part in zip(system.phis, cover)
        ) or any(not part for part in cover):
            chosen = TWO_SPLIT
            cover = balanced_cover(lits, 2)
        form = apply_split(alpha, lits, chosen, cover, fresh)
        out: LitTerms = []
        for c, piece in form:
            out += finish_positive(c, piece, rule, fresh)
        return out

    return rule


def quadratize_split(
    f: PseudoBooleanFunction, system: SplitSystem = TWO_SPLIT, fresh: AuxAllocator | None = None
) -> Quadratization:
    """Positive terms by recursive splitting, negative terms via kzfd."""
    rule = split_rule(system)
    fresh = fresh or AuxAllocator(f.n_vars)
    start = len(fresh.created)
    terms: LitTerms = []
    for key, c in f.items():
        if len(key) <= 2:
            terms.append((c, key))
        elif c < 0:
            terms += kzfd_terms(-c, key, fresh)
        else:
            terms += rule(c, key, fresh)
    return _finish(terms, fresh, start, f"split{system.q}")
