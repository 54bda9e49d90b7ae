"""Seeded random instances for tests, the acceptance suite, and benchmarks.

Everything takes an explicit random.Random so corpora are reproducible
from a seed alone.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from .fingen import FinGenMetric, Valid
from .graev import PointedSpace
from .words import IDENTITY, Word, enumerate_ball, generator, inverse, multiply

_VALUE_GRID = [
    Fraction(1, 4),
    Fraction(1, 3),
    Fraction(1, 2),
    Fraction(2, 3),
    Fraction(3, 4),
    Fraction(1),
    Fraction(5, 4),
    Fraction(4, 3),
    Fraction(3, 2),
    Fraction(2),
]


def metric_closure(
    n: int, table: Dict[Tuple[int, int], Fraction]
) -> Dict[Tuple[int, int], Fraction]:
    """Shortest-path closure of a symmetric positive table on {0..n-1}."""
    d = dict(table)
    for i in range(n):
        d[(i, i)] = Fraction(0)
    for k in range(n):
        for i in range(n):
            for j in range(n):
                via = d[(i, k)] + d[(k, j)]
                if via < d[(i, j)]:
                    d[(i, j)] = via
                    d[(j, i)] = via
    return d


def random_pointed_space(
    rng: random.Random, max_points: int = 4, min_points: int = 2
) -> PointedSpace:
    """Random rational pointed metric space with 2..max_points points."""
    n = rng.randint(min_points, max_points)
    raw: Dict[Tuple[int, int], Fraction] = {}
    for i, j in combinations(range(n), 2):
        v = rng.choice(_VALUE_GRID)
        raw[(i, j)] = v
        raw[(j, i)] = v
    closed = metric_closure(n, raw)
    names = ["1"] + [chr(ord("a") + i) for i in range(n - 1)]
    distances = {
        (names[i], names[j]): closed[(i, j)] for i, j in combinations(range(n), 2)
    }
    return PointedSpace.build(names, distances)


def random_reduced_words(
    rng: random.Random, rank: int, max_len: int, count: int
) -> List[Word]:
    ball = enumerate_ball(rank, max_len)
    return [ball[rng.randrange(len(ball))] for _ in range(count)]


# Norm values kept within a factor-2 band so L/l <= 2: the brute-force
# oracle is then provably complete at small pair caps (m <= (L/l)|g|).
_NORM_GRID = [Fraction(1, 2), Fraction(2, 3), Fraction(3, 4), Fraction(1)]


def table_closure(metric: FinGenMetric) -> FinGenMetric:
    """Replace every table value by its engine-generated value.

    One pass suffices: the generated metric restricted to the generating
    set regenerates itself.
    """
    gs = metric.genset
    closed: Dict[Tuple[Word, Word], Fraction] = {}
    for i, u in enumerate(gs.entries):
        for j in range(i + 1, len(gs.entries)):
            v = gs.entries[j]
            closed[(u, v)] = metric._engine_norm(
                multiply(u, inverse(v)), allow_unvalidated=True
            )
    return FinGenMetric.build(gs.rank, closed, bound=metric.bound, names=gs.names)


def random_fingen_metric(
    rng: random.Random,
    max_rank: int = 2,
    max_extra_entries: int = 1,
    extra_entry_len: int = 2,
    max_entries: Optional[int] = None,
    bounded: bool = False,
    one_bounded: bool = False,
) -> FinGenMetric:
    """Random validated metric; |A| = 2*rank + 2*extras + 1."""
    rank = rng.randint(1, max_rank)
    table: Dict[Tuple[Word, Word], Fraction] = {}
    for i in range(1, rank + 1):
        table[(generator(i), IDENTITY)] = rng.choice(_NORM_GRID)
    extras = rng.randint(0, max_extra_entries)
    if max_entries is not None:
        extras = min(extras, (max_entries - 1 - 2 * rank) // 2)
        extras = max(extras, 0)
    candidates = [
        w
        for w in enumerate_ball(rank, extra_entry_len)
        if len(w) >= 2 and w < inverse(w)
    ]
    for w in rng.sample(candidates, min(extras, len(candidates))):
        table[(w, IDENTITY)] = rng.choice(_NORM_GRID) + rng.choice(_NORM_GRID)
    bound = Fraction(1) if (bounded or one_bounded) else None
    if one_bounded:
        # keep every value within the unit bound so no clamping happens
        table = {k: min(v, Fraction(1)) for k, v in table.items()}
    draft = FinGenMetric.build(rank, table, bound=bound)
    metric = table_closure(draft)
    result = metric.validate()
    assert isinstance(result, Valid), f"closure failed to validate: {result}"
    return metric
