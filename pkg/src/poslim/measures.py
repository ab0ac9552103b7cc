"""Exactly representable probability measures on the closed-interval triangle.

The triangle is {(x, y): 0 <= x <= y <= 1}, each point standing for the
closed interval [x, y]; intervals are ordered by complete precedence
(I before J iff I's right endpoint is strictly below J's left endpoint).

Two measure classes are exact-rational and closed under every operation here:

* `AtomicMeasure`      - finitely many weighted interval atoms;
* `StepKernelMeasure`  - uniform left endpoint, with the conditional law of
                          the right endpoint constant on each cell of a finite
                          partition of [0,1] (a finite atom list per cell).

`StepCDF` holds one-dimensional marginals and degree distributions, and
`SupportSet` the support of such a CDF as closed components.  The snap maps
(`h_map`), the pushforwards that collapse support gaps (`push_h`), the
gap-averaging canonical projection (`project_star`) and the exact equivalence
test (`equivalent`) implement the canonical-representation calculus.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, Union

from . import pwl
from .errors import FormatError, InvariantError, NotInPMinus
from .pwl import ONE, ZERO, Points, as_fraction

HVariant = Literal["minus", "plus", "bar_plus"]
PushVariant = Literal["minus", "bar_plus"]


# -- CDFs ---------------------------------------------------------------------


@dataclass(frozen=True)
class StepCDF:
    """Piecewise-linear right-continuous CDF on [0,1] with upward jumps."""

    points: Points

    @classmethod
    def from_points(cls, raw: Iterable) -> "StepCDF":
        pts = pwl.normalize(raw)
        pwl.check_monotone(pts)
        if pts[0][1] != ZERO:
            raise InvariantError("CDF must have F(0-) = 0")
        if pts[-1][2] != ONE:
            raise InvariantError("CDF must have F(1) = 1")
        return cls(pts)

    @classmethod
    def from_jumps(cls, weighted_values: Iterable[tuple[Fraction, Fraction]]) -> "StepCDF":
        """Pure-jump CDF from (value, weight) pairs; weights must sum to 1."""
        acc: dict[Fraction, Fraction] = {}
        for v, w in weighted_values:
            v, w = as_fraction(v), as_fraction(w)
            if not ZERO <= v <= ONE:
                raise InvariantError(f"jump location {v} outside [0,1]")
            if w <= 0:
                raise InvariantError("weights must be positive")
            acc[v] = acc.get(v, ZERO) + w
        if sum(acc.values()) != ONE:
            raise InvariantError("weights must sum to 1 exactly")
        pts = []
        cum = ZERO
        if min(acc) > ZERO:
            pts.append((ZERO, ZERO, ZERO))
        for v in sorted(acc):
            pts.append((v, cum, cum + acc[v]))
            cum += acc[v]
        if max(acc) < ONE:
            pts.append((ONE, ONE, ONE))
        return cls.from_points(pts)

    @classmethod
    def uniform(cls) -> "StepCDF":
        return cls.from_points([(ZERO, ZERO, ZERO), (ONE, ONE, ONE)])

    @classmethod
    def dirac(cls, v) -> "StepCDF":
        return cls.from_jumps([(as_fraction(v), ONE)])

    def value(self, t) -> Fraction:
        return pwl.value_at(self.points, as_fraction(t))

    def left_limit(self, t) -> Fraction:
        return pwl.left_limit_at(self.points, as_fraction(t))

    def jump_locations(self) -> list[Fraction]:
        return [x for x, left, right in self.points if left != right]

    def breakpoints(self) -> list[Fraction]:
        return [p[0] for p in self.points]


@dataclass(frozen=True)
class SupportSet:
    """Finite union of maximal disjoint closed intervals within [0,1]."""

    intervals: tuple[tuple[Fraction, Fraction], ...]

    def contains(self, x) -> bool:
        x = as_fraction(x)
        return any(lo <= x <= hi for lo, hi in self.intervals)

    def min(self) -> Fraction:
        return self.intervals[0][0]

    def max(self) -> Fraction:
        return self.intervals[-1][1]


def support_and_gaps(
    nu: StepCDF,
) -> tuple[SupportSet, list[tuple[Fraction, Fraction]]]:
    """Support components of nu and the open gaps of (0,1) minus the support.

    Gaps touching 0 or 1 are reported like interior ones; together with the
    sup/inf conventions of the snap maps this makes end gaps behave exactly
    like interior gaps.
    """
    parts: list[tuple[Fraction, Fraction]] = []
    pts = nu.points
    for i, (x, left, right) in enumerate(pts):
        if left != right:
            parts.append((x, x))
        if i + 1 < len(pts) and right < pts[i + 1][1]:
            parts.append((x, pts[i + 1][0]))
    if not parts:
        raise InvariantError("a CDF must increase somewhere")
    merged = [parts[0]]
    for lo, hi in parts[1:]:
        if lo <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
        else:
            merged.append((lo, hi))
    gaps: list[tuple[Fraction, Fraction]] = []
    prev = ZERO
    for lo, hi in merged:
        if lo > prev:
            gaps.append((prev, lo))
        prev = hi
    if prev < ONE:
        gaps.append((prev, ONE))
    return SupportSet(tuple(merged)), gaps


def h_map(nu: StepCDF, x, variant: HVariant) -> Fraction:
    """Snap x to the support of nu.

    minus: nearest support point strictly below (0 if none);
    plus: nearest support point strictly above (1 if none);
    bar_plus: like plus but right-continuous in x (gap membership (a, b]).
    """
    x = as_fraction(x)
    if not ZERO <= x <= ONE:
        raise InvariantError(f"argument {x} outside [0,1]")
    _, gaps = support_and_gaps(nu)
    for a, b in gaps:
        if variant == "minus" and a < x <= b:
            return a
        if variant == "plus" and a <= x < b:
            return b
        if variant == "bar_plus" and a < x <= b:
            return b
    if variant not in ("minus", "plus", "bar_plus"):
        raise ValueError(f"unknown variant {variant!r}")
    return x


# -- measure classes ----------------------------------------------------------


@dataclass(frozen=True)
class AtomicMeasure:
    """Finitely many weighted atoms ((x, y), w) inside the closed triangle."""

    atoms: tuple[tuple[Fraction, Fraction, Fraction], ...]

    @classmethod
    def from_atoms(cls, raw: Iterable) -> "AtomicMeasure":
        acc: dict[tuple[Fraction, Fraction], Fraction] = {}
        for item in raw:
            if len(item) == 2:
                (x, y), w = item
            else:
                x, y, w = item
            x, y, w = as_fraction(x), as_fraction(y), as_fraction(w)
            if not ZERO <= x <= y <= ONE:
                raise InvariantError(f"atom ({x},{y}) outside the triangle")
            if w <= 0:
                raise InvariantError("atom weights must be positive")
            acc[(x, y)] = acc.get((x, y), ZERO) + w
        if sum(acc.values()) != ONE:
            raise InvariantError("atom weights must sum to 1 exactly")
        return cls(tuple((x, y, acc[(x, y)]) for x, y in sorted(acc)))

    @classmethod
    def dirac(cls, x, y) -> "AtomicMeasure":
        return cls.from_atoms([(x, y, ONE)])


@dataclass(frozen=True)
class StepKernelMeasure:
    """Uniform left endpoint; per-cell constant conditional for the right one.

    `breaks` are 0 = c_0 < ... < c_m = 1; cell j spans (c_j, c_{j+1}) and its
    conditional atoms (y, p) satisfy y >= c_{j+1} and sum p = 1, so y >= x
    holds pointwise and the left marginal is Lebesgue by construction.
    """

    breaks: tuple[Fraction, ...]
    conditionals: tuple[tuple[tuple[Fraction, Fraction], ...], ...]

    @classmethod
    def from_cells(cls, cells: Iterable) -> "StepKernelMeasure":
        """Cells as (c_lo, c_hi, [(y, p), ...]); must tile [0,1] in order."""
        breaks: list[Fraction] = []
        conds: list[tuple[tuple[Fraction, Fraction], ...]] = []
        for c_lo, c_hi, cond in cells:
            c_lo, c_hi = as_fraction(c_lo), as_fraction(c_hi)
            if not breaks:
                if c_lo != ZERO:
                    raise InvariantError("cells must start at 0")
                breaks.append(c_lo)
            elif breaks[-1] != c_lo:
                raise InvariantError("cells must tile [0,1] without holes")
            if c_hi <= c_lo:
                raise InvariantError("cells must have positive length")
            acc: dict[Fraction, Fraction] = {}
            for y, p in cond:
                y, p = as_fraction(y), as_fraction(p)
                if p <= 0:
                    raise InvariantError("conditional weights must be positive")
                if y > ONE:
                    raise InvariantError(f"conditional atom {y} above 1")
                if y < c_hi:
                    raise InvariantError(
                        f"conditional atom {y} below its cell's right endpoint {c_hi}"
                    )
                acc[y] = acc.get(y, ZERO) + p
            if sum(acc.values()) != ONE:
                raise InvariantError("conditional weights must sum to 1")
            breaks.append(c_hi)
            conds.append(tuple((y, acc[y]) for y in sorted(acc)))
        if not breaks or breaks[-1] != ONE:
            raise InvariantError("cells must end at 1")
        return cls(tuple(breaks), tuple(conds))

    def cells(self) -> list[tuple[Fraction, Fraction, tuple[tuple[Fraction, Fraction], ...]]]:
        return [
            (self.breaks[j], self.breaks[j + 1], self.conditionals[j])
            for j in range(len(self.conditionals))
        ]

    def canonical(self) -> "StepKernelMeasure":
        """Merge adjacent cells with identical conditionals."""
        merged: list[list] = []
        for c_lo, c_hi, cond in self.cells():
            if merged and merged[-1][2] == cond:
                merged[-1][1] = c_hi
            else:
                merged.append([c_lo, c_hi, cond])
        return StepKernelMeasure.from_cells(tuple(tuple(c) for c in merged))


Measure = Union[AtomicMeasure, StepKernelMeasure]


def right_marginal(mu: Measure) -> StepCDF:
    """Exact CDF of the right endpoint of a random interval from mu."""
    acc: dict[Fraction, Fraction] = {}
    if isinstance(mu, AtomicMeasure):
        for _, y, w in mu.atoms:
            acc[y] = acc.get(y, ZERO) + w
    elif isinstance(mu, StepKernelMeasure):
        for c_lo, c_hi, cond in mu.cells():
            length = c_hi - c_lo
            for y, p in cond:
                acc[y] = acc.get(y, ZERO) + length * p
    else:
        raise TypeError(f"not a measure: {mu!r}")
    return StepCDF.from_jumps(acc.items())


def left_marginal(mu: Measure) -> StepCDF:
    if isinstance(mu, AtomicMeasure):
        acc: dict[Fraction, Fraction] = {}
        for x, _, w in mu.atoms:
            acc[x] = acc.get(x, ZERO) + w
        return StepCDF.from_jumps(acc.items())
    if isinstance(mu, StepKernelMeasure):
        return StepCDF.uniform()
    raise TypeError(f"not a measure: {mu!r}")


def push_h(mu: Measure, variant: PushVariant) -> AtomicMeasure:
    """Image of mu under (x, y) -> (h(x), y) with h snapped to supp of mu's
    right marginal.

    Both exact classes have finitely supported right marginals, so the gaps
    cover all of (0,1) except finitely many points and the image is purely
    atomic; any uniform piece where h would be the identity has Lebesgue
    measure zero and cannot retain mass.
    """
    if variant not in ("minus", "bar_plus"):
        raise ValueError(f"push variant must be minus or bar_plus, got {variant!r}")
    nu = right_marginal(mu)
    _, gaps = support_and_gaps(nu)

    def snap(x: Fraction) -> Fraction:
        for a, b in gaps:
            if a < x <= b:
                return a if variant == "minus" else b
        return x

    out: list[tuple[Fraction, Fraction, Fraction]] = []
    if isinstance(mu, AtomicMeasure):
        for x, y, w in mu.atoms:
            out.append((snap(x), y, w))
    else:
        for c_lo, c_hi, cond in mu.cells():
            remaining = c_hi - c_lo
            for a, b in gaps:
                lo, hi = max(c_lo, a), min(c_hi, b)
                if hi <= lo:
                    continue
                remaining -= hi - lo
                target = a if variant == "minus" else b
                for y, p in cond:
                    out.append((target, y, (hi - lo) * p))
            if remaining != ZERO:
                raise InvariantError(
                    "cell mass not exhausted by support gaps; "
                    "right marginal support is not finite"
                )
    for x, y, _ in out:
        if not ZERO <= x <= y <= ONE:
            raise InvariantError(f"pushed atom ({x},{y}) left the triangle")
    return AtomicMeasure.from_atoms(out)


def project_star(mu: StepKernelMeasure) -> StepKernelMeasure:
    """Average the conditional over each support gap of the right marginal.

    The result is the canonical representative of mu's equivalence class:
    idempotent, same right marginal, same snapped pushforwards.
    """
    nu = right_marginal(mu)
    _, gaps = support_and_gaps(nu)
    new_cells = []
    for a, b in gaps:
        acc: dict[Fraction, Fraction] = {}
        for c_lo, c_hi, cond in mu.cells():
            lo, hi = max(c_lo, a), min(c_hi, b)
            if hi <= lo:
                continue
            for y, p in cond:
                acc[y] = acc.get(y, ZERO) + (hi - lo) * p
        total = sum(acc.values())
        if total != b - a:
            raise InvariantError("gap mass mismatch; support is not finite")
        length = b - a
        new_cells.append((a, b, tuple((y, w / length) for y, w in sorted(acc.items()))))
    if not gaps or gaps[0][0] != ZERO or gaps[-1][1] != ONE or any(
        gaps[i][1] != gaps[i + 1][0] for i in range(len(gaps) - 1)
    ):
        raise InvariantError("gaps do not tile (0,1); support is not finite")
    return StepKernelMeasure.from_cells(new_cells)


def equivalent(mu: StepKernelMeasure, mu_prime: StepKernelMeasure) -> bool:
    """Do the two left-uniform measures define the same interval-order limit?

    True iff the gap-averaged canonical forms coincide exactly.
    """
    a = project_star(mu).canonical()
    b = project_star(mu_prime).canonical()
    return a == b


# -- distributions dominated by uniform --------------------------------------


def check_p_minus(nu: StepCDF) -> None:
    """Raise NotInPMinus unless F(t) >= t everywhere.

    For a piecewise-linear CDF it is enough to check values and left limits
    at the breakpoints.
    """
    for x, left, right in nu.points:
        if right < x:
            raise NotInPMinus(f"F({x}) = {right} < {x}")
        if left < x:
            raise NotInPMinus(f"F({x}-) = {left} < {x}")


# -- text formats -------------------------------------------------------------


def format_fraction(fr: Fraction) -> str:
    return f"{fr.numerator}/{fr.denominator}"


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational: {text!r}") from exc


def write_measure(mu: Measure) -> str:
    if isinstance(mu, AtomicMeasure):
        lines = [f"atoms {len(mu.atoms)}"]
        for x, y, w in mu.atoms:
            lines.append(
                f"{format_fraction(x)} {format_fraction(y)} {format_fraction(w)}"
            )
        return "\n".join(lines) + "\n"
    if isinstance(mu, StepKernelMeasure):
        cells = mu.cells()
        lines = [f"stepmeasure {len(cells)}"]
        for c_lo, c_hi, cond in cells:
            atoms = " ; ".join(
                f"{format_fraction(y)} {format_fraction(p)}" for y, p in cond
            )
            lines.append(
                f"{format_fraction(c_lo)} {format_fraction(c_hi)} : {atoms}"
            )
        return "\n".join(lines) + "\n"
    raise TypeError(f"not a measure: {mu!r}")


def read_measure(text: str) -> Measure:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty measure file")
    header = lines[0].split()
    if header[0] == "atoms":
        atoms = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 3:
                raise FormatError(f"bad atom line: {ln!r}")
            atoms.append(tuple(parse_fraction(p) for p in parts))
        return AtomicMeasure.from_atoms(atoms)
    if header[0] == "stepmeasure":
        cells = []
        for ln in lines[1:]:
            if ":" not in ln:
                raise FormatError(f"bad cell line: {ln!r}")
            bounds, _, conds = ln.partition(":")
            b = bounds.split()
            if len(b) != 2:
                raise FormatError(f"bad cell bounds: {ln!r}")
            cond = []
            for chunk in conds.split(";"):
                parts = chunk.split()
                if len(parts) != 2:
                    raise FormatError(f"bad conditional atom: {chunk!r}")
                cond.append((parse_fraction(parts[0]), parse_fraction(parts[1])))
            cells.append((parse_fraction(b[0]), parse_fraction(b[1]), cond))
        return StepKernelMeasure.from_cells(cells)
    raise FormatError(f"unknown measure header: {lines[0]!r}")
