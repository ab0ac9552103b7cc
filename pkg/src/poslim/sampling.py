"""Random poset generation, empirical degree statistics and diagnostics.

Sampling is fully deterministic given a seed: every uniform comes from an
addressed position of a counter-based stream (see `rng`), so identical seeds
and parameters produce bit-identical posets regardless of how work is split.

The built-in kernels are all indicators of interval precedence: a threshold
function g turns point x into the interval [x, g(x)], a measure on the
triangle draws intervals directly, and in both cases i < j holds iff
interval i ends strictly before interval j begins.  The pairwise coin flips
of the general construction are skipped for these 0/1 kernels; a raw callable
kernel uses them and gets its output validated.
"""

from __future__ import annotations

import csv
import io
import json
import math
import warnings
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Literal, Sequence, Union

import numpy as np

from .densities import automorphism_count, density
from .errors import NotTransitive, SizeLimit
from .measures import AtomicMeasure, StepCDF, StepKernelMeasure
from .poset import (
    FinitePoset,
    PosetCatalog,
    _bits,
    _transpose_masks,
    cached_catalog,
    chain,
    is_isomorphic,
    three_plus_one,
    two_plus_two,
)
from .pwl import ZERO, sup_distance
from .recognition import is_semiorder
from .rng import CONDITIONALS, EDGES, PAIRS, POINTS, SUBSETS, SeededRng
from .semiorders import MonotoneRC, RateFunction, f_minus, f_plus, g_from_rate

Sign = Literal["minus", "plus"]
SamplerModel = Union[MonotoneRC, RateFunction, StepKernelMeasure, AtomicMeasure]

_RGO_CAP = 5000
_FINGERPRINT_MAX = 5


# -- interval models ----------------------------------------------------------


class _ThresholdModel:
    """Point x becomes the interval [x, g(x)]; one uniform per point."""

    per_point = 1

    def __init__(self, g: MonotoneRC):
        self.g = g

    def interval_at(self, u: float) -> tuple[Fraction, Fraction]:
        x = Fraction(u)
        return x, self.g.value(x)


class _StepMeasureModel:
    """Uniform left endpoint locates the cell; a second uniform picks the
    conditional atom for the right endpoint."""

    per_point = 2

    def __init__(self, mu: StepKernelMeasure):
        self.mu = mu
        self.cum: list[list[Fraction]] = []
        for cond in mu.conditionals:
            acc, out = ZERO, []
            for _, p in cond:
                acc += p
                out.append(acc)
            self.cum.append(out)

    def interval_at(self, u1: float, u2: float) -> tuple[Fraction, Fraction]:
        x = Fraction(u1)
        cell = bisect_right(self.mu.breaks, x) - 1
        cell = min(cell, len(self.mu.conditionals) - 1)
        r = Fraction(u2)
        cum = self.cum[cell]
        k = bisect_right(cum, r)
        k = min(k, len(cum) - 1)
        return x, self.mu.conditionals[cell][k][0]


class _AtomicModel:
    """One uniform picks an interval atom by cumulative weight."""

    per_point = 1

    def __init__(self, mu: AtomicMeasure):
        self.atoms = mu.atoms
        acc = ZERO
        self.cum: list[Fraction] = []
        for _, _, w in mu.atoms:
            acc += w
            self.cum.append(acc)

    def interval_at(self, u: float) -> tuple[Fraction, Fraction]:
        k = bisect_right(self.cum, Fraction(u))
        k = min(k, len(self.atoms) - 1)
        x, y, _ = self.atoms[k]
        return x, y


def interval_model(model: SamplerModel):
    """Adapt any supported sampler model to interval draws."""
    if isinstance(model, MonotoneRC):
        return _ThresholdModel(model)
    if isinstance(model, RateFunction):
        return _ThresholdModel(g_from_rate(model))
    if isinstance(model, StepKernelMeasure):
        return _StepMeasureModel(model)
    if isinstance(model, AtomicMeasure):
        return _AtomicModel(model)
    raise TypeError(f"unsupported sampler model: {model!r}")


# -- poset construction -------------------------------------------------------


def poset_from_intervals(
    intervals: Sequence[tuple[Fraction, Fraction]]
) -> FinitePoset:
    """Interval order of closed intervals: i < j iff b_i < a_j, exact."""
    n = len(intervals)
    a = [iv[0] for iv in intervals]
    b = [iv[1] for iv in intervals]
    order_a = sorted(range(n), key=lambda i: a[i])
    a_sorted = [a[i] for i in order_a]
    suffix = [0] * (n + 1)
    for pos in reversed(range(n)):
        suffix[pos] = suffix[pos + 1] | (1 << order_a[pos])
    succ = tuple(suffix[bisect_right(a_sorted, b[i])] for i in range(n))
    order_b = sorted(range(n), key=lambda i: b[i])
    b_sorted = [b[i] for i in order_b]
    prefix = [0] * (n + 1)
    for pos in range(n):
        prefix[pos + 1] = prefix[pos] | (1 << order_b[pos])
    pred = tuple(prefix[bisect_left(b_sorted, a[j])] for j in range(n))
    return FinitePoset(n, succ, pred)


def sample_kernel_poset(
    kernel, n: int, rng: SeededRng, *, validate: bool = False
) -> FinitePoset:
    """Random n-point poset from a kernel model.

    Point i uses position i of the POINTS stream (plus position i of
    CONDITIONALS when the model needs two uniforms).  A raw callable kernel
    W(x, y) -> [0,1] additionally reads position j of PAIRS stream i for the
    pair (i, j) and has its output checked (NotTransitive on failure).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if callable(kernel) and not isinstance(
        kernel, (MonotoneRC, RateFunction, StepKernelMeasure, AtomicMeasure)
    ):
        xs = rng.uniforms(POINTS, n)
        masks = []
        for i in range(n):
            row = rng.uniforms(PAIRS, n, index=i)
            m = 0
            for j in range(n):
                if i != j and row[j] < float(kernel(float(xs[i]), float(xs[j]))):
                    m |= 1 << j
            masks.append(m)
        out = FinitePoset(n, tuple(masks), _transpose_masks(masks, n))
        _check_strict_order(out)
        return out
    mdl = interval_model(kernel)
    u1 = rng.uniforms(POINTS, n)
    if mdl.per_point == 2:
        u2 = rng.uniforms(CONDITIONALS, n)
        intervals = [mdl.interval_at(float(u1[i]), float(u2[i])) for i in range(n)]
    else:
        intervals = [mdl.interval_at(float(u1[i])) for i in range(n)]
    out = poset_from_intervals(intervals)
    if validate:
        out.check_valid()
    return out


def _check_strict_order(p: FinitePoset) -> None:
    for i in range(p.n):
        if (p.succ[i] >> i) & 1 or (p.succ[i] & p.pred[i]):
            raise NotTransitive(f"relation not antisymmetric at point {i}")
        for j in _bits(p.succ[i]):
            if p.succ[j] & ~p.succ[i]:
                raise NotTransitive(f"relation not transitive through ({i},{j})")


def sample_interval_poset(
    mu: StepKernelMeasure | AtomicMeasure, n: int, rng: SeededRng
) -> FinitePoset:
    """Poset of n i.i.d. random intervals drawn from mu."""
    if not isinstance(mu, (StepKernelMeasure, AtomicMeasure)):
        raise TypeError("sample_interval_poset needs an interval measure")
    return sample_kernel_poset(mu, n, rng)


# -- empirical degree statistics ----------------------------------------------


def nu_empirical(p: FinitePoset, sign: Sign) -> StepCDF:
    """Empirical CDF of normalised predecessor (minus) or successor counts."""
    masks = p.pred if sign == "minus" else p.succ
    counts: dict[int, int] = {}
    for m in masks:
        d = m.bit_count()
        counts[d] = counts.get(d, 0) + 1
    n = p.n
    return StepCDF.from_jumps(
        [(Fraction(d, n), Fraction(c, n)) for d, c in counts.items()]
    )


def ks_distance(f: StepCDF, g: StepCDF) -> Fraction:
    """Exact sup-norm distance between two piecewise-linear CDFs."""
    return sup_distance(f.points, g.points)


def ks_distance_at_continuity(
    f: StepCDF,
    g: StepCDF,
    grid_denominator: int = 64,
    margin: Fraction = ZERO,
) -> Fraction:
    """Sup of |f - g| over a fixed grid of continuity points of g.

    The plain sup-norm does not metrize convergence in distribution at atoms
    of the target: an empirical atom lands a random O(n^-1/2) offset away and
    the adaptive sup picks the discrepancy up as the full atom mass.  A fixed
    grid that stays `margin` away from the target's jump points is the
    documented comparison for atom-carrying targets (margin should dominate
    the sampling fluctuation scale, a few n^-1/2).
    """
    jumps = g.jump_locations()
    candidates = {Fraction(k, grid_denominator) for k in range(grid_denominator + 1)}
    candidates |= set(g.breakpoints())
    best = ZERO
    for t in sorted(candidates):
        if any(abs(t - j) <= margin for j in jumps):
            continue
        best = max(best, abs(f.value(t) - g.value(t)))
    return best


# -- fingerprints -------------------------------------------------------------


@dataclass(frozen=True)
class FingerprintEntry:
    poset_id: str
    label: str
    value: object  # Fraction when exact, float when estimated
    half_width: object

    def as_row(self) -> list:
        return [self.poset_id, self.label, str(self.value), str(self.half_width)]


@dataclass(frozen=True)
class Fingerprint:
    catalog_size: int
    entries: tuple[FingerprintEntry, ...]

    def value(self, poset_id: str):
        for e in self.entries:
            if e.poset_id == poset_id:
                return e.value
        raise KeyError(poset_id)

    def as_dict(self) -> dict:
        return {e.poset_id: (e.value, e.half_width) for e in self.entries}


def _class_label(q: FinitePoset) -> str:
    if q.pair_count() == 0:
        return f"antichain{q.n}"
    if is_isomorphic(q, chain(q.n)):
        return f"chain{q.n}"
    if q.n == 4 and is_isomorphic(q, two_plus_two()):
        return "2+2"
    if q.n == 4 and is_isomorphic(q, three_plus_one()):
        return "3+1"
    return ""


@lru_cache(maxsize=8)
def _catalog_with_labels(max_q: int) -> tuple[PosetCatalog, tuple[str, ...]]:
    cat = cached_catalog(max_q)
    labels = tuple(_class_label(q) for q in cat.classes)
    return cat, labels


def fingerprint(p: FinitePoset, max_q: int) -> Fingerprint:
    """Exact induced densities of every catalog pattern up to size max_q."""
    if max_q > _FINGERPRINT_MAX:
        raise SizeLimit(f"fingerprint patterns capped at size {_FINGERPRINT_MAX}")
    cat, labels = _catalog_with_labels(max_q)
    entries = []
    for idx, q in enumerate(cat.classes):
        entries.append(
            FingerprintEntry(
                cat.class_id(idx), labels[idx], density(q, p, "ind"), Fraction(0)
            )
        )
    return Fingerprint(max_q, tuple(entries))


@lru_cache(maxsize=8)
def _pattern_key_table(s: int) -> tuple[dict[int, int], list[int], list[str], list[str]]:
    """key -> class position among size-s catalog classes, plus Aut counts."""
    cat, labels = _catalog_with_labels(s)
    classes = [
        (i, q) for i, q in enumerate(cat.classes) if q.n == s
    ]
    table: dict[int, int] = {}
    auts: list[int] = []
    ids: list[str] = []
    labs: list[str] = []
    import itertools as _it

    for pos, (idx, q) in enumerate(classes):
        auts.append(automorphism_count(q))
        ids.append(cat.class_id(idx))
        labs.append(labels[idx])
        for perm in _it.permutations(range(s)):
            key = 0
            for u in range(s):
                for v in range(s):
                    if u != v and q.less(perm[u], perm[v]):
                        key |= 1 << (u * s + v)
            table[key] = pos
    return table, auts, ids, labs


def fingerprint_estimate(
    p: FinitePoset,
    max_q: int,
    subsets: int,
    rng: SeededRng,
    stream_index: int = 0,
) -> Fingerprint:
    """Unbiased estimate of the induced-density fingerprint by random tuples.

    For each pattern size s, `subsets` ordered s-tuples of distinct points
    are drawn; the frequency of each labelled pattern class, scaled by
    |Aut| / s!, estimates the induced density.  Intended for posets too large
    for exact counting.
    """
    if max_q > _FINGERPRINT_MAX:
        raise SizeLimit(f"fingerprint patterns capped at size {_FINGERPRINT_MAX}")
    n = p.n
    entries = [FingerprintEntry("1-0", "antichain1", 1.0, 0.0)]
    for s in range(2, max_q + 1):
        if s > n:
            break
        table, auts, ids, labs = _pattern_key_table(s)
        counts = [0] * len(auts)
        us = rng.uniforms(SUBSETS, subsets * s * 4, index=(stream_index << 3) | s)
        cursor = 0
        drawn = 0
        while drawn < subsets:
            if cursor + s > len(us):
                raise RuntimeError("subset draw budget exhausted")
            idx = [min(int(u * n), n - 1) for u in us[cursor : cursor + s]]
            cursor += s
            if len(set(idx)) != s:
                continue
            key = 0
            for u in range(s):
                su = p.succ[idx[u]]
                for v in range(s):
                    if u != v and (su >> idx[v]) & 1:
                        key |= 1 << (u * s + v)
            counts[table[key]] += 1
            drawn += 1
        fact = math.factorial(s)
        for pos in range(len(auts)):
            freq = counts[pos] / subsets
            scale = auts[pos] / fact
            se = math.sqrt(max(freq * (1 - freq), 0.0) / subsets) * scale
            entries.append(
                FingerprintEntry(ids[pos], labs[pos], freq * scale, 1.96 * se)
            )
    return Fingerprint(max_q, tuple(entries))


# -- random graph orders ------------------------------------------------------


def c_parameter(n: int, p) -> float:
    """The limit shift parameter min(log(1/p) / (p n), 1)."""
    pf = float(p)
    if not 0 < pf <= 1:
        raise ValueError("p must be in (0, 1]")
    return min(math.log(1.0 / pf) / (pf * n), 1.0)


def p_for_c(n: int, c: float) -> float:
    """Inverse of c_parameter in p, by bisection (c in [0, 1))."""
    if c <= 0:
        return 1.0
    lo, hi = 1e-12, 1.0
    for _ in range(200):
        mid = (lo + hi) / 2
        if c_parameter(n, mid) > c:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def random_graph_order(n: int, p, rng: SeededRng) -> FinitePoset:
    """Transitive closure of a random directed graph on the labelled chain.

    Edge (i, j), i < j, is present with probability p and read from position
    j of EDGES stream i.  Every edge points up the labelling, so one reverse
    sweep over bitmask rows computes the exact closure.
    """
    pf = float(p)
    if not 0 < pf <= 1:
        raise ValueError("p must be in (0, 1]")
    if n > _RGO_CAP:
        raise SizeLimit(f"random graph orders capped at {_RGO_CAP} points")
    direct = []
    for i in range(n):
        row = rng.uniforms(EDGES, n, index=i)
        bits = row < pf
        bits[: i + 1] = False
        packed = np.packbits(bits, bitorder="little")
        direct.append(int.from_bytes(packed.tobytes(), "little"))
    # edges all point up the labelling, so one reverse sweep closes the order
    succ = [0] * n
    for i in reversed(range(n)):
        acc = direct[i]
        for j in _bits(direct[i]):
            acc |= succ[j]
        succ[i] = acc
    return FinitePoset(n, tuple(succ), _transpose_masks(succ, n))


# -- convergence diagnostics --------------------------------------------------


@dataclass(frozen=True)
class ConvergenceRow:
    index: int
    n: int
    semiorder: bool
    ks_prev: float | None
    ks_minus_target: float | None
    ks_plus_target: float | None


@dataclass(frozen=True)
class ConvergenceReport:
    rows: tuple[ConvergenceRow, ...]
    verdict: str
    threshold: float
    notes: tuple[str, ...] = field(default_factory=tuple)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(
            ["index", "n", "semiorder", "ks_prev", "ks_minus_target", "ks_plus_target"]
        )
        for r in self.rows:
            w.writerow(
                [
                    r.index,
                    r.n,
                    int(r.semiorder),
                    "" if r.ks_prev is None else repr(r.ks_prev),
                    "" if r.ks_minus_target is None else repr(r.ks_minus_target),
                    "" if r.ks_plus_target is None else repr(r.ks_plus_target),
                ]
            )
        return buf.getvalue()

    def to_json_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "threshold": self.threshold,
            "notes": list(self.notes),
            "rows": [
                {
                    "index": r.index,
                    "n": r.n,
                    "semiorder": r.semiorder,
                    "ks_prev": r.ks_prev,
                    "ks_minus_target": r.ks_minus_target,
                    "ks_plus_target": r.ks_plus_target,
                }
                for r in self.rows
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"


def _trend_verdict(series: list[float], threshold: float) -> str:
    if len(series) < 2:
        return "insufficient-data"
    slack = threshold / 4
    weakly_decreasing = all(b <= a + slack for a, b in zip(series, series[1:]))
    if weakly_decreasing and series[-1] <= threshold:
        return "converging"
    return "not-converging"


def converge_diagnostic(
    posets: Iterable[FinitePoset],
    target_g: MonotoneRC | None = None,
    threshold: float = 0.05,
) -> ConvergenceReport:
    """Kolmogorov distances of successive degree distributions, with verdict.

    The verdict rule (last distance at most `threshold` and no successive
    increase beyond threshold/4) is a heuristic, not a theorem.  Inputs that
    are not semiorders are reported in `notes`: the degree-distribution
    criterion characterises convergence only within semiorders.
    """
    ps = list(posets)
    notes = []
    minus_cdfs = [nu_empirical(p, "minus") for p in ps]
    plus_cdfs = [nu_empirical(p, "plus") for p in ps]
    target_minus = f_minus(target_g) if target_g is not None else None
    target_plus = f_plus(target_g) if target_g is not None else None
    rows = []
    for k, p in enumerate(ps):
        semi = is_semiorder(p)
        if not semi:
            msg = (
                f"input {k} is not a semiorder; the degree-distribution "
                "convergence criterion assumes semiorders"
            )
            notes.append(msg)
            warnings.warn(msg, stacklevel=2)
        ks_prev = (
            float(ks_distance(minus_cdfs[k - 1], minus_cdfs[k])) if k else None
        )
        km = kp = None
        if target_minus is not None:
            km = float(ks_for_target(minus_cdfs[k], target_minus))
            kp = float(ks_for_target(plus_cdfs[k], target_plus))
        rows.append(ConvergenceRow(k, p.n, semi, ks_prev, km, kp))
    if target_minus is not None:
        series = [r.ks_minus_target for r in rows]
    else:
        series = [r.ks_prev for r in rows if r.ks_prev is not None]
    verdict = _trend_verdict([s for s in series if s is not None], threshold)
    return ConvergenceReport(tuple(rows), verdict, threshold, tuple(notes))


def ks_for_target(
    empirical: StepCDF, target: StepCDF, margin: Fraction = Fraction(1, 32)
) -> Fraction:
    """Full sup-norm for continuous targets; the fixed continuity grid with a
    safety margin around atoms otherwise (the sup does not metrize weak
    convergence at atoms of the target)."""
    if target.jump_locations():
        return ks_distance_at_continuity(empirical, target, margin=margin)
    return ks_distance(empirical, target)


# -- statistical equivalence test ---------------------------------------------


@dataclass(frozen=True)
class EquivalenceRow:
    poset_id: str
    label: str
    mean_a: float
    se_a: float
    mean_b: float
    se_b: float
    flagged: bool


@dataclass(frozen=True)
class EquivalenceReport:
    rows: tuple[EquivalenceRow, ...]
    n: int
    trials: int

    def flagged_ids(self) -> list[str]:
        return [r.poset_id for r in self.rows if r.flagged]

    def any_flagged(self) -> bool:
        return any(r.flagged for r in self.rows)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["poset_id", "label", "mean_a", "se_a", "mean_b", "se_b", "flagged"])
        for r in self.rows:
            w.writerow(
                [
                    r.poset_id,
                    r.label,
                    repr(r.mean_a),
                    repr(r.se_a),
                    repr(r.mean_b),
                    repr(r.se_b),
                    int(r.flagged),
                ]
            )
        return buf.getvalue()

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "trials": self.trials,
            "flagged": self.flagged_ids(),
            "rows": [
                {
                    "poset_id": r.poset_id,
                    "label": r.label,
                    "mean_a": r.mean_a,
                    "se_a": r.se_a,
                    "mean_b": r.mean_b,
                    "se_b": r.se_b,
                    "flagged": r.flagged,
                }
                for r in self.rows
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"


def equivalence_test_statistical(
    a: SamplerModel,
    b: SamplerModel,
    n: int,
    trials: int,
    rng: SeededRng,
    max_q: int = 4,
    subsets: int = 1200,
) -> EquivalenceReport:
    """Compare two samplers through estimated induced-density fingerprints.

    Trial t samples an n-point poset from each side (children spawn(2t) and
    spawn(2t+1)) and estimates every catalog density of size <= max_q; a
    pattern is flagged when the two 4-standard-error intervals around the
    trial means are disjoint.
    """
    if trials < 30:
        raise ValueError("at least 30 trials are required")
    acc_a: dict[str, list[float]] = {}
    acc_b: dict[str, list[float]] = {}
    labels: dict[str, str] = {}
    for t in range(trials):
        for side, model, acc in (("a", a, acc_a), ("b", b, acc_b)):
            child = rng.spawn(2 * t if side == "a" else 2 * t + 1)
            p = sample_kernel_poset(model, n, child)
            fp = fingerprint_estimate(p, max_q, subsets, child)
            for e in fp.entries:
                acc.setdefault(e.poset_id, []).append(float(e.value))
                labels[e.poset_id] = e.label

    def stats(values: list[float]) -> tuple[float, float]:
        m = sum(values) / len(values)
        if len(values) > 1:
            var = sum((v - m) ** 2 for v in values) / (len(values) - 1)
        else:
            var = 0.0
        return m, math.sqrt(var / len(values))

    rows = []
    for pid in sorted(acc_a, key=lambda s: (int(s.split("-")[0]), int(s.split("-")[1]))):
        ma, sa = stats(acc_a[pid])
        mb, sb = stats(acc_b[pid])
        flagged = abs(ma - mb) > 4.0 * (sa + sb)
        rows.append(EquivalenceRow(pid, labels[pid], ma, sa, mb, sb, flagged))
    return EquivalenceReport(tuple(rows), n, trials)
