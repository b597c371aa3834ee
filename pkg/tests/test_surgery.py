import random

import pytest

from merosurf.errors import MalformedSignature, NotGenusOne, OutOfRange
from merosurf.signature import StratumSignature, genus
from merosurf.surgery import (ComponentTerm, all_terms, bubble,
                              component_classes, minimal_component_count,
                              neighbors, pq_orbit_classes)


def sig(zeros, poles):
    return StratumSignature(zeros, poles)


def pole_multisets(total_max):
    out = set()

    def rec(cur, remaining, minv):
        if cur and sum(cur) >= 2:
            out.add(tuple(cur))
        for p in range(minv, remaining + 1):
            rec(cur + [p], remaining - p, p)

    rec([], total_max, 1)
    return sorted(out)


def test_bubble_bookkeeping():
    base = ComponentTerm(0, (2,))
    t1 = bubble(base, 1)
    assert t1.signature() == sig([2], [2])
    t2 = bubble(bubble(base, 1), 2)
    assert t2.signature() == sig([4], [2])
    with pytest.raises(OutOfRange):
        bubble(base, 2)                       # degree + 2 is out of range


def test_neighbors_reflection_rule():
    base = ComponentTerm(2, (2, 2))           # base degree 2
    t = base.with_bubbles((1,))
    assert base.with_bubbles((3,)) in neighbors(t)


def test_first_bubble_gcd_rule():
    # poles {4}: gcd(1,4) != gcd(2,4): not related at slot one
    t = ComponentTerm(2, (4,), (1,))
    nb = {u.bubbles for u in neighbors(t)}
    assert (2,) not in nb
    assert (3,) in nb                         # gcd(3,4)=1=gcd(1,4)
    # odd pole present: gcd(1,...) = gcd(2,...): related at slot one
    t = ComponentTerm(2, (1, 1, 2), (1,))
    assert (2,) in {u.bubbles for u in neighbors(t)}


def test_neighbors_symmetric(rng_seed=20240910):
    rng = random.Random(rng_seed)
    for _ in range(40):
        poles = random.Random(rng.random()).choice(pole_multisets(6))
        base_deg = sum(poles) - 2
        g = rng.randint(1, 3)
        term = ComponentTerm(base_deg, poles)
        for i in range(g):
            hi = term.degree_before(i) + 1
            term = bubble(term, rng.randint(1, hi))
        for u in neighbors(term):
            assert term in neighbors(u)
            assert u.signature() == term.signature()


def test_component_classes_examples():
    assert len(component_classes(sig([4], [2]))) == 2
    assert len(component_classes(sig([4], [1, 1]))) == 2
    assert len(component_classes(sig([8], [2]))) == 3
    reps = component_classes(sig([4], [2]))
    assert reps == [(1, 1), (1, 2)]


def test_component_classes_match_table():
    for poles in pole_multisets(6):
        for n in range(1, 13):
            s = sig([n], poles)
            try:
                g = genus(s)
            except MalformedSignature:
                continue
            if g < 2:
                continue
            assert len(component_classes(s)) == minimal_component_count(s), s


def test_component_classes_at_most_three():
    for poles in pole_multisets(6):
        for n in range(1, 13):
            s = sig([n], poles)
            try:
                g = genus(s)
            except MalformedSignature:
                continue
            if g < 2:
                continue
            assert len(component_classes(s)) <= 3


def test_pq_examples():
    orbits = pq_orbit_classes(sig([4], [4]))
    assert [lbl for lbl, _sz in orbits] == [1, 2]
    assert sum(sz for _lbl, sz in orbits) == 15
    assert len(pq_orbit_classes(sig([24], [24]))) == 7
    orbits = pq_orbit_classes(sig([2, 2], [2, 2]))
    assert [lbl for lbl, _sz in orbits] == [1, 2]
    assert sum(sz for _lbl, sz in orbits) == 4


def test_pq_orbit_labels_distinct():
    for s in [sig([6], [6]), sig([12], [12]), sig([3, 3], [3, 3]),
              sig([8, 4], [6, 6])]:
        orbits = pq_orbit_classes(s)
        labels = [lbl for lbl, _sz in orbits]
        assert len(labels) == len(set(labels))


def test_pq_rejects_non_genus_one():
    with pytest.raises(NotGenusOne):
        pq_orbit_classes(sig([4], [2]))


def test_all_terms_enumeration():
    terms = all_terms(sig([4], [2]))
    assert sorted(t.bubbles for t in terms) == [(1, 1), (1, 2), (1, 3)]
