"""Interval-order and semiorder recognition, and interval representations.

The forbidden patterns are 2+2 (two disjoint comparable pairs with all cross
pairs incomparable) for interval orders, plus 3+1 (a 3-chain with a point
incomparable to all of it) for semiorders.  `is_interval_order` and
`is_semiorder` search for the pattern directly; `downset_chain_check` is the
independent classical route (predecessor sets totally ordered by inclusion)
that the test suite cross-checks against.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from .errors import FormatError, InternalInvariantError, NotIntervalOrder
from .measures import AtomicMeasure
from .poset import FinitePoset, _bits


def find_two_plus_two(p: FinitePoset) -> tuple[int, int, int, int] | None:
    """An induced 2+2 as (a, b, c, d) with a < b, c < d, or None.

    A violating quadruple exists iff some two points have inclusion-
    incomparable predecessor sets; the cross incomparabilities then follow
    from transitivity.
    """
    n = p.n
    pred = p.pred
    for b in range(n):
        for d in range(b + 1, n):
            only_b = pred[b] & ~pred[d]
            only_d = pred[d] & ~pred[b]
            if only_b and only_d:
                a = (only_b & -only_b).bit_length() - 1
                c = (only_d & -only_d).bit_length() - 1
                return (a, b, c, d)
    return None


def find_three_plus_one(p: FinitePoset) -> tuple[int, int, int, int] | None:
    """An induced 3+1 as (x, y, z, w) with x < y < z all incomparable to w."""
    n = p.n
    full = (1 << n) - 1
    for w in range(n):
        incomp = full & ~(p.succ[w] | p.pred[w] | (1 << w))
        if incomp.bit_count() < 3:
            continue
        for y in _bits(incomp):
            below = p.pred[y] & incomp
            above = p.succ[y] & incomp
            if below and above:
                x = (below & -below).bit_length() - 1
                z = (above & -above).bit_length() - 1
                return (x, y, z, w)
    return None


def is_interval_order(p: FinitePoset) -> bool:
    """True iff the induced 2+2 density is zero."""
    return find_two_plus_two(p) is None


def is_semiorder(p: FinitePoset) -> bool:
    """True iff both induced 2+2 and induced 3+1 densities are zero."""
    return find_two_plus_two(p) is None and find_three_plus_one(p) is None


def downset_chain_check(p: FinitePoset) -> bool:
    """Classical interval-order test: {D(x)} is a chain under inclusion."""
    rows = sorted(set(p.pred), key=lambda m: (m.bit_count(), m))
    for a, b in zip(rows, rows[1:]):
        if a & ~b:
            return False
    return True


@dataclass(frozen=True)
class IntervalRepresentation:
    """Closed intervals realizing an interval order, left endpoints k/n.

    `rank[i]` is the 1-based rank of point i; a[i] = rank[i]/n, and b[i] is
    one grid step below the smallest rank in i's successor set (1 if none),
    so that i < j holds exactly when b[i] < a[j].
    """

    n: int
    rank: tuple[int, ...]
    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]


def interval_representation(p: FinitePoset) -> IntervalRepresentation:
    """Evenly-spaced-left-endpoint representation of an interval order.

    Points are ranked by (predecessor count asc, successor count desc,
    index); for interval orders every successor set is then a rank suffix,
    which makes the realization biconditional hold.  For semiorders the
    right endpoints come out nondecreasing in rank order; both facts are
    re-checked at runtime.
    """
    witness = find_two_plus_two(p)
    if witness is not None:
        raise NotIntervalOrder(f"induced 2+2 on points {witness}")
    n = p.n
    order = sorted(
        range(n),
        key=lambda i: (p.pred[i].bit_count(), -p.succ[i].bit_count(), i),
    )
    rank = [0] * n
    for pos, i in enumerate(order):
        rank[i] = pos + 1
    a = [Fraction(rank[i], n) for i in range(n)]
    b: list[Fraction] = []
    for i in range(n):
        if p.succ[i]:
            m = min(rank[j] for j in _bits(p.succ[i]))
            b.append(Fraction(m - 1, n))
        else:
            b.append(Fraction(1))
    rep = IntervalRepresentation(n, tuple(rank), tuple(a), tuple(b))
    for i in range(n):
        if a[i] > b[i]:
            raise InternalInvariantError(f"interval {i} is empty")
        for j in range(n):
            if i != j and (b[i] < a[j]) != p.less(i, j):
                raise InternalInvariantError(
                    f"representation does not realize the pair ({i},{j})"
                )
    if is_semiorder(p):
        ordered_b = [b[i] for i in order]
        if any(x > y for x, y in zip(ordered_b, ordered_b[1:])):
            raise InternalInvariantError(
                "right endpoints not monotone for a semiorder"
            )
    return rep


def empirical_measure(rep: IntervalRepresentation) -> AtomicMeasure:
    """Atoms (a_i, b_i), weight 1/n each (equal intervals merge)."""
    w = Fraction(1, rep.n)
    return AtomicMeasure.from_atoms(
        [(rep.a[i], rep.b[i], w) for i in range(rep.n)]
    )


# -- CSV serialization --------------------------------------------------------


def write_representation(rep: IntervalRepresentation) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["index", "rank", "a", "b"])
    for i in range(rep.n):
        writer.writerow(
            [
                i + 1,
                rep.rank[i],
                f"{rep.a[i].numerator}/{rep.a[i].denominator}",
                f"{rep.b[i].numerator}/{rep.b[i].denominator}",
            ]
        )
    return buf.getvalue()


def read_representation(text: str) -> IntervalRepresentation:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != ["index", "rank", "a", "b"]:
        raise FormatError("expected representation header index,rank,a,b")
    n = len(rows) - 1
    rank = [0] * n
    a = [Fraction(0)] * n
    b = [Fraction(0)] * n
    for row in rows[1:]:
        if len(row) != 4:
            raise FormatError(f"bad representation row: {row!r}")
        idx = int(row[0]) - 1
        if not 0 <= idx < n:
            raise FormatError(f"index out of range: {row[0]}")
        rank[idx] = int(row[1])
        a[idx] = Fraction(row[2])
        b[idx] = Fraction(row[3])
    return IntervalRepresentation(n, tuple(rank), tuple(a), tuple(b))
