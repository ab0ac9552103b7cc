from fractions import Fraction

import pytest
from hypothesis import given, settings

from poslim import densities as de
from poslim import poset as ps
from poslim import recognition as rec
from poslim.errors import NotIntervalOrder
from poslim.measures import AtomicMeasure

from conftest import posets


def test_pattern_examples():
    h, l = ps.two_plus_two(), ps.three_plus_one()
    assert not rec.is_interval_order(h)
    assert rec.is_interval_order(ps.chain(7))
    assert rec.is_interval_order(l)
    assert not rec.is_semiorder(l)
    assert not rec.is_semiorder(h)
    assert rec.is_semiorder(ps.chain(4))
    assert rec.is_semiorder(ps.antichain(6))


def test_witnesses_are_induced_patterns():
    h = ps.two_plus_two()
    w = rec.find_two_plus_two(h)
    assert w is not None
    sub = ps.induced(h, list(w))
    assert ps.is_isomorphic(sub, h)
    l = ps.three_plus_one()
    w = rec.find_three_plus_one(l)
    assert ps.is_isomorphic(ps.induced(l, list(w)), l)


def test_downset_chain_examples():
    assert not rec.downset_chain_check(ps.two_plus_two())
    assert rec.downset_chain_check(ps.chain(3))
    assert rec.downset_chain_check(ps.antichain(5))


def test_routes_agree_on_catalog(catalog6):
    h, l = ps.two_plus_two(), ps.three_plus_one()
    for p in catalog6.classes:
        io = rec.is_interval_order(p)
        assert io == rec.downset_chain_check(p)
        assert io == (de.density(h, p, "ind") == 0)
        assert rec.is_semiorder(p) == (
            io and de.density(l, p, "ind") == 0
        )


@given(posets(max_n=6))
@settings(max_examples=80)
def test_routes_agree_random(p):
    assert rec.is_interval_order(p) == rec.downset_chain_check(p)


def test_representation_examples():
    r = rec.interval_representation(ps.antichain(2))
    assert r.a == (Fraction(1, 2), Fraction(1)) and r.b == (Fraction(1), Fraction(1))
    r = rec.interval_representation(ps.chain(2))
    assert r.a == (Fraction(1, 2), Fraction(1))
    assert r.b == (Fraction(1, 2), Fraction(1))
    # realizes 1 < 2: b_1 = 1/2 < a_2 = 1


def test_representation_rejects_two_plus_two():
    with pytest.raises(NotIntervalOrder):
        rec.interval_representation(ps.two_plus_two())


def test_representation_realizes_catalog(catalog6):
    for p in catalog6.classes:
        if not rec.is_interval_order(p):
            continue
        rep = rec.interval_representation(p)
        # the constructor re-checks realization internally; re-verify here
        for i in range(p.n):
            for j in range(p.n):
                if i != j:
                    assert (rep.b[i] < rep.a[j]) == p.less(i, j)
        if rec.is_semiorder(p):
            by_rank = sorted(range(p.n), key=lambda i: rep.rank[i])
            bs = [rep.b[i] for i in by_rank]
            assert all(x <= y for x, y in zip(bs, bs[1:]))


def test_empirical_measure_examples():
    r = rec.interval_representation(ps.chain(2))
    m = rec.empirical_measure(r)
    assert m.atoms == (
        (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)),
        (Fraction(1), Fraction(1), Fraction(1, 2)),
    )
    r = rec.interval_representation(ps.antichain(2))
    m = rec.empirical_measure(r)
    assert m.atoms == (
        (Fraction(1, 2), Fraction(1), Fraction(1, 2)),
        (Fraction(1), Fraction(1), Fraction(1, 2)),
    )


@given(posets())
@settings(max_examples=60)
def test_empirical_measure_total_mass(p):
    if rec.is_interval_order(p):
        m = rec.empirical_measure(rec.interval_representation(p))
        assert isinstance(m, AtomicMeasure)
        assert sum(w for _, _, w in m.atoms) == 1


def test_representation_roundtrip():
    rep = rec.interval_representation(ps.chain(3))
    assert rec.read_representation(rec.write_representation(rep)) == rep
