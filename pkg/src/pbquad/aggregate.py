"""Common-part splitting: one auxiliary variable shared by several terms.

For terms ``alpha_H * prod(C) * prod(H)`` of one sign sharing the part ``C``:

* positive:  ``min_w (sum alpha_H) ~w prod(C) + sum alpha_H w prod(H)``
* negative:  ``min_w sum alpha_H w (1 - prod(C) - prod(H))``

and ``w = prod(C)`` is always an optimal choice.  The pipeline repeatedly picks a
literal pair shared by at least two same-sign terms of degree >= 3, splits it
off, and hands whatever remains to the term-wise rules.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from .core import AuxAllocator, LiteralForm, PseudoBooleanFunction, as_fraction, literal_order
from .termwise import POSITIVE_RULES, Quadratization, _finish, finish_positive, kzfd_terms


@dataclass(frozen=True)
class TermGroup:
    """Terms ``sign * alpha_H * prod(common) * prod(H)``; all entries are literals."""

    common: tuple[int, ...]
    members: tuple[tuple[Fraction, tuple[int, ...]], ...]
    sign: str = "positive"

    def __post_init__(self):
        if self.sign not in ("positive", "negative"):
            raise ValueError(f"sign must be 'positive' or 'negative', got {self.sign!r}")
        common_vars = {abs(l) for l in self.common}
        members = []
        for alpha, h in self.members:
            alpha = as_fraction(alpha)
            if alpha <= 0:
                raise ValueError(f"member weights must be positive, got {alpha}")
            if common_vars & {abs(l) for l in h}:
                raise ValueError(f"member {tuple(h)} shares variables with the common part")
            members.append((alpha, tuple(h)))
        if not members:
            raise ValueError("a term group needs at least one member")
        object.__setattr__(self, "common", tuple(self.common))
        object.__setattr__(self, "members", tuple(members))

    def as_function(self, n_vars: int | None = None) -> LiteralForm:
        s = 1 if self.sign == "positive" else -1
        return LiteralForm(((s * a, self.common + h) for a, h in self.members), n_vars=n_vars)


def split_common_positive(group: TermGroup, fresh: AuxAllocator) -> LiteralForm:
    if group.sign != "positive":
        raise ValueError("split_common_positive needs a positive group")
    w = fresh.new()
    total = sum(a for a, _ in group.members)
    terms = [(total, group.common + (-w,))]
    terms += [(a, h + (w,)) for a, h in group.members]
    return LiteralForm(terms, n_vars=fresh.n_vars)


def split_common_negative(group: TermGroup, fresh: AuxAllocator) -> LiteralForm:
    if group.sign != "negative":
        raise ValueError("split_common_negative needs a negative group")
    w = fresh.new()
    terms = []
    for a, h in group.members:
        terms += [(a, (w,)), (-a, group.common + (w,)), (-a, h + (w,))]
    return LiteralForm(terms, n_vars=fresh.n_vars)


class CommonPart(NamedTuple):
    pair: tuple[int, int]
    sign: str
    indices: tuple[int, ...]


def select_common_part(terms: Sequence[tuple[Fraction, Sequence[int]]]) -> CommonPart | None:
    """The literal pair in the most same-sign terms of degree >= 3, if shared by two or more.

    Ties go to the lexicographically smallest pair, then to the positive sign.
    """
    counts: dict[str, Counter] = {"positive": Counter(), "negative": Counter()}
    for coef, lits in terms:
        if len(lits) < 3:
            continue
        sign = "positive" if coef > 0 else "negative"
        ordered = sorted(lits, key=literal_order)
        counts[sign].update(combinations(ordered, 2))
    best = None
    for sign_rank, sign in enumerate(("positive", "negative")):
        for pair, count in counts[sign].items():
            if count < 2:
                continue
            rank = (-count, tuple(literal_order(l) for l in pair), sign_rank)
            if best is None or rank < best[0]:
                best = (rank, pair, sign)
    if best is None:
        return None
    _, pair, sign = best
    want = 1 if sign == "positive" else -1
    indices = tuple(
        i for i, (coef, lits) in enumerate(terms)
        if len(lits) >= 3 and (coef > 0) == (want > 0) and set(pair) <= set(lits)
    )
    return CommonPart(pair, sign, indices)


def excess_degree(terms: Iterable[tuple[Fraction, Sequence[int]]]) -> int:
    """``sum max(deg - 2, 0)``: strictly decreases with every aggregation step."""
    return sum(max(len(lits) - 2, 0) for _, lits in terms)


def aggregate_pipeline(
    f: PseudoBooleanFunction, fallback: str = "ishikawa", fresh: AuxAllocator | None = None
) -> Quadratization:
    """Split shared pairs off groups of terms, then finish term by term.

    Leftover positive terms go through ``fallback`` (``"ishikawa"`` or
    ``"chain"``) after their negated literals are peeled; negative terms go
    through kzfd on literals.  ``info["potentials"]`` records the excess degree
    of the working set before and after each aggregation step.
    """
    if fallback not in ("ishikawa", "chain"):
        raise ValueError(f"fallback must be 'ishikawa' or 'chain', got {fallback!r}")
    rule = POSITIVE_RULES[fallback]
    fresh = fresh or AuxAllocator(f.n_vars)
    start = len(fresh.created)

    work = LiteralForm(((c, k) for k, c in f.items()), n_vars=f.n_vars)
    potentials = [excess_degree(work)]
    groups = []
    while (part := select_common_part(work.terms)) is not None:
        matched = set(part.indices)
        members = tuple(
            (abs(c), tuple(l for l in lits if l not in part.pair))
            for i, (c, lits) in enumerate(work.terms) if i in matched
        )
        group = TermGroup(part.pair, members, part.sign)
        split = split_common_positive if part.sign == "positive" else split_common_negative
        produced = split(group, fresh)
        kept = [t for i, t in enumerate(work.terms) if i not in matched]
        work = LiteralForm(kept + list(produced.terms), n_vars=fresh.n_vars)
        potentials.append(excess_degree(work))
        groups.append(group)

    terms = []
    for c, lits in work:
        if len(lits) <= 2:
            terms.append((c, lits))
        elif c < 0:
            terms += kzfd_terms(-c, lits, fresh)
        else:
            terms += finish_positive(c, lits, rule, fresh)
    return _finish(terms, fresh, start, "aggregate", {"potentials": potentials, "groups": groups})
