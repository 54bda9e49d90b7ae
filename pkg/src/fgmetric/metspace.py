"""The metric on the space of metrics.

dist(d, p) is the sup over nonidentity g of |d(g,1) - p(g,1)| / |g|.
From finite data it is only ever reported as a certified interval: the
lower end is the exact maximum over a ball (or a caller-supplied
candidate set), the upper end uses the tail bound for 1-bounded metrics
(every word longer than N contributes at most 1/N).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from . import core
from .fingen import FinGenMetric, InvalidTableError, Valid
from .utils import format_fraction, minimal_feasible_denominator, smallest_fraction_in_interval
from .words import (
    IDENTITY,
    Word,
    enumerate_ball,
    generator,
    inverse,
    multiply,
)


@dataclass
class MetricOracle:
    """A bi-invariant metric presented through its norm function."""

    rank: int
    norm_fn: Callable[[Word], Fraction]
    bounded_by_one: bool = False
    max_query_len: Optional[int] = None  # tabulated oracles cannot go deeper
    name: str = "oracle"

    def norm(self, g: Word) -> Fraction:
        if g.max_index() > self.rank:
            raise ValueError(f"word exceeds oracle rank {self.rank}")
        if self.max_query_len is not None and len(g) > self.max_query_len:
            raise ValueError(
                f"oracle {self.name} is tabulated to length {self.max_query_len}"
            )
        return self.norm_fn(g)

    def dist(self, u: Word, v: Word) -> Fraction:
        return self.norm(multiply(u, inverse(v)))

    @staticmethod
    def from_fingen(metric: FinGenMetric, name: str = "fingen") -> "MetricOracle":
        bounded = metric.bound is not None and metric.bound <= 1
        return MetricOracle(
            metric.genset.rank, metric.norm, bounded, None, name
        )

    @staticmethod
    def from_table(
        rank: int,
        values: Dict[Word, Fraction],
        bounded_by_one: bool = False,
        name: str = "table",
    ) -> "MetricOracle":
        max_len = max((len(w) for w in values), default=0)

        def norm_fn(g: Word) -> Fraction:
            return values[g]

        return MetricOracle(rank, norm_fn, bounded_by_one, max_len, name)

    @staticmethod
    def tabulate(source: "MetricOracle", max_len: int) -> "MetricOracle":
        values = {w: source.norm(w) for w in enumerate_ball(source.rank, max_len)}
        return MetricOracle.from_table(
            source.rank, values, source.bounded_by_one, f"{source.name}|tab{max_len}"
        )


@dataclass(frozen=True)
class DistInterval:
    lo: Fraction
    hi: Optional[Fraction]  # None: unknown (oracles not 1-bounded)
    depth: int
    witness: Optional[Word]  # a word achieving lo
    complete: bool  # lo is the exact maximum over the full ball

    def __post_init__(self):
        if self.lo < 0 or (self.hi is not None and self.lo > self.hi):
            raise ValueError("malformed interval")


def ball_class_representatives(rank: int, radius: int) -> List[Word]:
    """Cyclically reduced, rotation-least words of length <= radius.

    For bi-invariant metrics the dist ratio |d-p|/|g| is maximized on
    these: every ball word's class has its representative in the ball at
    minimal length.
    """
    reps = []
    for w in enumerate_ball(rank, radius):
        if not w.is_identity() and core.canonical_cyclic(w.letters)[0] == w.letters:
            reps.append(w)
    return reps


def dist_interval(
    d: MetricOracle,
    p: MetricOracle,
    depth: int,
    candidates: Optional[Iterable[Word]] = None,
) -> DistInterval:
    """Certified interval for dist(d, p).

    lo is the exact maximum of |d(g,1)-p(g,1)|/|g| over the radius-`depth`
    ball (computed on conjugacy-class representatives), or over the given
    candidate words (complete=False).  hi = max(lo, 1/depth) when both
    oracles are 1-bounded, else unknown.
    """
    if d.rank != p.rank:
        raise ValueError("oracles have different ranks")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if candidates is None:
        words = ball_class_representatives(d.rank, depth)
        complete = True
    else:
        words = [w for w in candidates if not w.is_identity()]
        complete = False
    lo = Fraction(0)
    witness: Optional[Word] = None
    for w in words:
        ratio = abs(d.norm(w) - p.norm(w)) / len(w)
        if ratio > lo or (witness is None and ratio == lo):
            lo, witness = ratio, w
    hi: Optional[Fraction] = None
    if d.bounded_by_one and p.bounded_by_one:
        hi = max(lo, Fraction(1, depth))
    return DistInterval(lo, hi, depth, witness, complete)


def n_approximation(d: MetricOracle, depth: int, clamp: Optional[Fraction] = None) -> FinGenMetric:
    """The metric generated by d's values on the radius-`depth` ball.

    Agrees with d exactly on that ball and dominates d everywhere.  The
    oracle must be 1-bounded (or given an explicit clamp); it is queried
    to length 2*depth for the pair table.
    """
    if clamp is None:
        if not d.bounded_by_one:
            raise ValueError("oracle is not 1-bounded and no clamp was given")
        clamp = Fraction(1)
    ball = enumerate_ball(d.rank, depth)
    table: Dict[Tuple[Word, Word], Fraction] = {}
    for i, u in enumerate(ball):
        for v in ball[i + 1 :]:
            table[(u, v)] = min(clamp, d.dist(u, v))
    metric = FinGenMetric.build(d.rank, table, bound=clamp)
    result = metric.validate()
    if not isinstance(result, Valid):
        raise InvalidTableError(
            f"ball restriction failed to validate ({result}); "
            "the source oracle is not a bi-invariant metric"
        )
    return metric


def rational_approximation(
    p: FinGenMetric, eps: Fraction, denom_cap: int
) -> FinGenMetric:
    """Closest-from-above rational table within eps, denominators capped.

    Each entry moves to the smallest admissible fraction in
    [value, value + eps/(L/l)] with denominator <= denom_cap, then the
    table is re-closed (entries replaced by generated values, fractions
    re-picked below them) until it validates.  The result dominates the
    input and is eps-close to it.
    """
    if eps < 0:
        raise ValueError("eps must be >= 0")
    p.require_validated()
    if eps == 0:
        return p
    gs = p.genset
    lipschitz = p.max_generator_norm / p.min_positive  # L/l from the input
    slack = eps / lipschitz if lipschitz > 0 else eps
    n = len(gs.entries)
    originals: Dict[Tuple[int, int], Fraction] = {}
    chosen: Dict[Tuple[int, int], Fraction] = {}
    for j in range(n):
        for i in range(j + 1, n):
            v = gs.table[(i, j)]
            originals[(i, j)] = v
            hi = v + slack
            if p.bound is not None:
                hi = min(hi, p.bound)
                if hi < v:
                    hi = v
            cand = smallest_fraction_in_interval(v, hi, denom_cap)
            if cand is None:
                feasible = minimal_feasible_denominator(v, hi)
                raise ValueError(
                    f"no fraction with denominator <= {denom_cap} in "
                    f"[{format_fraction(v)}, {format_fraction(hi)}]; "
                    f"minimal feasible cap is {feasible}"
                )
            chosen[(i, j)] = cand

    for _ in range(64):
        draft = FinGenMetric.build(
            gs.rank,
            {
                (gs.entries[i], gs.entries[j]): val
                for (i, j), val in chosen.items()
            },
            bound=p.bound,
            names=gs.names,
        )
        if isinstance(draft.validate(), Valid):
            return draft
        # re-close: pull each entry down to its generated value, then
        # re-pick the smallest admissible fraction underneath it
        changed = False
        dgs = draft.genset
        for (i, j), val in list(chosen.items()):
            u, v = gs.entries[i], gs.entries[j]
            closed = draft._engine_norm(
                multiply(u, inverse(v)), allow_unvalidated=True
            )
            if closed < val:
                cand = smallest_fraction_in_interval(
                    originals[(i, j)], closed, denom_cap
                )
                if cand is None:
                    feasible = minimal_feasible_denominator(originals[(i, j)], closed)
                    raise ValueError(
                        f"no fraction with denominator <= {denom_cap} in "
                        f"[{format_fraction(originals[(i, j)])}, "
                        f"{format_fraction(closed)}]; minimal feasible cap is "
                        f"{feasible}"
                    )
                chosen[(i, j)] = cand
                changed = True
        if not changed:  # pragma: no cover - closure must have changed something
            break
    raise RuntimeError("rational approximation failed to reach a closed table")


@dataclass(frozen=True)
class EpsilonSchedule:
    values: Tuple[Fraction, ...]

    def __post_init__(self):
        prev: Optional[Fraction] = None
        for n, v in enumerate(self.values, start=1):
            if v > Fraction(1, 2**n):
                raise ValueError("schedule exceeds 1/2^n")
            if prev is not None and v > prev:
                raise ValueError("schedule is not nonincreasing")
            prev = v

    def __getitem__(self, n: int) -> Fraction:
        # 1-indexed, matching the construction
        return self.values[n - 1]

    def __len__(self) -> int:
        return len(self.values)


def epsilon_schedule(d: MetricOracle, count: int) -> EpsilonSchedule:
    """eps_1 = min(1/2, 2 d(f_1, 1)); eps_n = min(1/2^n, 2 d(f_n, 1), eps_{n-1})."""
    if count < 1:
        raise ValueError("count must be >= 1")
    if count > d.rank:
        raise ValueError("schedule needs a generator per index")
    values: List[Fraction] = []
    for n in range(1, count + 1):
        cand = min(Fraction(1, 2**n), 2 * d.norm(generator(n)))
        if values:
            cand = min(cand, values[-1])
        values.append(cand)
    return EpsilonSchedule(tuple(values))


def int_dist(
    h: MetricOracle, images: Sequence[Word], images2: Sequence[Word]
) -> Fraction:
    """Max distance between corresponding free-subgroup generators.

    Word images then drift by at most int_dist * |w| (bi-invariance),
    which is checked as a property in tests.
    """
    if len(images) != len(images2):
        raise ValueError("image lists differ in length")
    out = Fraction(0)
    for u, v in zip(images, images2):
        out = max(out, h.dist(u, v))
    return out
