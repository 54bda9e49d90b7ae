import random
from fractions import Fraction

import pytest

from fgmetric.fingen import (
    BruteForceResult,
    BudgetExceededError,
    FinGenMetric,
    InvalidTableError,
    UnvalidatedMetricError,
    Valid,
    Violation,
    format_fgm,
    norm_bruteforce,
    parse_fgm,
)
from fgmetric.graev import PointedSpace, graev_norm
from fgmetric.sampling import random_fingen_metric
from fgmetric.words import (
    IDENTITY,
    enumerate_ball,
    generator,
    inverse,
    multiply,
    parse_word,
    reduce,
    substitute,
    word,
)

F = Fraction
a, b, c = generator(1), generator(2), generator(3)


def graev_f1():
    m = FinGenMetric.build(1, {(a, IDENTITY): F(1)})
    assert isinstance(m.validate(), Valid)
    return m


def letters_f3():
    m = FinGenMetric.build(
        3, {(a, IDENTITY): F(1), (b, IDENTITY): F(1), (c, IDENTITY): F(1)}
    )
    assert isinstance(m.validate(), Valid)
    return m


# -- validation --------------------------------------------------------------


def test_validate_graev_case():
    assert isinstance(graev_f1().validate(), Valid)


def test_validate_violation_square_entry():
    m = FinGenMetric.build(1, {(a, IDENTITY): F(1), (a * a, IDENTITY): F(3)})
    result = m.validate()
    assert isinstance(result, Violation)
    assert result.pair == (a * a, IDENTITY)
    assert result.generated_value == F(2)
    assert result.kind in ("triangle", "decomposition")


def test_validate_completion_produces_sums():
    # cross pairs are completed with generated values (here: sums)
    m = letters_f3()
    assert m.pair_value(a, b) == F(2)
    assert m.pair_value(a, inverse(b)) == F(2)


def test_structural_rejects():
    with pytest.raises(InvalidTableError):
        FinGenMetric.build(1, {(a, IDENTITY): F(0)})
    with pytest.raises(InvalidTableError):
        FinGenMetric.build(1, {(a, IDENTITY): F(-1)})
    with pytest.raises(InvalidTableError):
        FinGenMetric.build(2, {(a, IDENTITY): F(1)})  # generator b missing


def test_norm_requires_validation():
    m = FinGenMetric.build(1, {(a, IDENTITY): F(1)})
    with pytest.raises(UnvalidatedMetricError):
        m.norm(a)


# -- norms -------------------------------------------------------------------


def test_norm_identity():
    assert graev_f1().norm(IDENTITY) == 0


def test_norm_cube():
    assert graev_f1().norm(a**3) == F(3)


def test_norm_family_word():
    # all-generator-values-1 set on F3: the 6-letter word costs 6
    assert letters_f3().norm(reduce([1, 1, 2, 2, 3, 3])) == F(6)


def test_norm_conjugation_invariant_exact():
    m = letters_f3()
    g = reduce([1, 2])
    assert m.norm(g.conjugate_by(c)) == m.norm(g) == F(2)


def test_dist_value_on_entries():
    m = letters_f3()
    assert m.dist_value(a, b) == m.pair_value(a, b) == F(2)
    assert m.dist_value(a, a) == 0


def test_dist_value_bi_invariance_sampled():
    m = letters_f3()
    rng = random.Random(7)
    ball = enumerate_ball(3, 3)
    for _ in range(20):
        u, v, z = (ball[rng.randrange(len(ball))] for _ in range(3))
        assert m.dist_value(u.conjugate_by(z), v.conjugate_by(z)) == m.dist_value(u, v)


def test_bound_clamps():
    m = FinGenMetric.build(1, {(a, IDENTITY): F(1)}, bound=F(2))
    assert isinstance(m.validate(), Valid)
    assert m.norm(a**5) == F(2)


# -- witness -----------------------------------------------------------------


def test_witness_cube():
    m = graev_f1()
    wit = m.witness(a**3)
    assert wit.cost == F(3)
    assert wit.pairs == ((a, IDENTITY),) * 3
    wit.verify(m)
    assert wit.block_tightness_holds(m)


def test_witness_identity():
    wit = graev_f1().witness(IDENTITY)
    assert wit.pairs == ()
    assert wit.cost == 0


def test_witness_conjugate_word():
    m = letters_f3()
    g = a.conjugate_by(b)  # b a b^-1
    wit = m.witness(g)
    assert wit.cost == m.norm(g) == F(1)
    wit.verify(m)


# -- brute force oracle ------------------------------------------------------


def test_bruteforce_matches_examples():
    m = graev_f1()
    r = norm_bruteforce(m, a**3, 3)
    assert r.value == F(3) and r.complete


def test_bruteforce_upper_bound_semantics():
    m = graev_f1()
    r = norm_bruteforce(m, a**3, 1)
    assert r.value >= m.norm(a**3)
    assert not r.complete


def test_bruteforce_entry_value():
    m = letters_f3()
    r = norm_bruteforce(m, a, 1)
    assert r.value == m.pair_value(a, IDENTITY)


def test_engine_equals_bruteforce_random():
    rng = random.Random(11)
    for _ in range(12):
        m = random_fingen_metric(rng, max_entries=5)
        ball = enumerate_ball(m.genset.rank, 3)
        for g in ball:
            eng = m.norm(g)
            bf = norm_bruteforce(m, g, 5)
            assert eng <= bf.value
            if bf.complete:
                assert eng == bf.value, (m.genset.table, g)


def test_canonical_equals_raw_mode():
    # raw mode is the reference semantics but its zero-cost conjugation
    # orbit explodes with loose horizons; validate on tight horizons
    rng = random.Random(12)
    for _ in range(8):
        m = random_fingen_metric(rng)
        maxlen = m.genset.max_entry_len
        ball = enumerate_ball(m.genset.rank, 3)
        for g in ball:
            raw = m.norm(g, mode="raw", node_horizon=len(g) + 2 * maxlen)
            assert m.norm(g, mode="canonical") == raw, g


# -- norm axioms -------------------------------------------------------------


def test_norm_axioms_random():
    rng = random.Random(13)
    for _ in range(8):
        m = random_fingen_metric(rng)
        rank = m.genset.rank
        ball = enumerate_ball(rank, 3)
        words = [ball[rng.randrange(len(ball))] for _ in range(10)]
        l = m.min_positive
        for g in words:
            assert m.norm(g) == m.norm(inverse(g))
            if not g.is_identity():
                assert m.norm(g) >= l  # discreteness
        for g, h in zip(words, words[1:]):
            assert m.norm(multiply(g, h)) <= m.norm(g) + m.norm(h)
            assert m.norm(g.conjugate_by(h)) == m.norm(g)


# -- quotient-of-Graev cross-check ------------------------------------------


def test_quotient_of_graev_agreement():
    # min over generating-set representative words z (substitute(z) = g)
    # of the Graev norm over the abstract entry alphabet equals norm(g)
    m = FinGenMetric.build(
        1, {(a, IDENTITY): F(1), (a * a, IDENTITY): F(2)}
    )
    assert isinstance(m.validate(), Valid)
    gs = m.genset
    plus_entries = [w for w in gs.entries if not w.is_identity() and w < inverse(w)]
    names = ["1"] + [f"x{k}" for k in range(len(plus_entries))]
    dist = {}
    for k, u in enumerate(plus_entries):
        dist[(f"x{k}", "1")] = m.pair_value(u, IDENTITY)
        for k2 in range(k + 1, len(plus_entries)):
            dist[(f"x{k}", f"x{k2}")] = m.pair_value(u, plus_entries[k2])
    space = PointedSpace.build(names, dist)
    images = {k + 1: u for k, u in enumerate(plus_entries)}

    for g in enumerate_ball(1, 4):
        best = None
        for z in enumerate_ball(len(plus_entries), 4):
            if substitute(images, z) == g:
                val = graev_norm(z, space)
                best = val if best is None else min(best, val)
        if best is not None:
            assert best == m.norm(g), g


# -- budgets -----------------------------------------------------------------


def test_budget_fields():
    m = letters_f3()
    bud = m.budget(reduce([1, 1, 2]))
    assert bud.L == F(1) and bud.l == F(1) and bud.ratio == F(1)
    assert bud.max_pairs == 3
    assert bud.node_horizon >= 6


def test_budget_overflow_reports_bound():
    m = letters_f3()
    g = reduce([1, 1, 2, 2, 3, 3])
    with pytest.raises(BudgetExceededError) as exc:
        m.norm(g, node_limit=1)
    assert exc.value.best_bound is not None
    assert exc.value.best_bound >= F(6)
    # a successful query is unaffected afterwards
    assert m.norm(g) == F(6)


# -- .fgm format -------------------------------------------------------------


def test_fgm_roundtrip():
    m = FinGenMetric.build(
        2,
        {
            (a, IDENTITY): F(1, 2),
            (b, IDENTITY): F(3, 4),
            (multiply(a, b), IDENTITY): F(5, 4),
        },
        bound=F(2),
    )
    text = format_fgm(m)
    again = parse_fgm(text)
    assert again.genset.rank == m.genset.rank
    assert again.genset.entries == m.genset.entries
    assert again.genset.table == m.genset.table
    assert again.bound == m.bound
    assert format_fgm(again) == text


def test_fgm_parse_errors_carry_line_numbers():
    with pytest.raises(ValueError, match="line 1"):
        parse_fgm("not an fgm file\n")
    with pytest.raises(ValueError, match="line 3"):
        parse_fgm("fgm v1\nrank = 1\na | 1\n")


def test_fgm_requires_generator_entries():
    with pytest.raises(ValueError):
        parse_fgm("fgm v1\nrank = 2\na | 1 | 1/1\n")
