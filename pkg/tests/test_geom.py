import random
from fractions import Fraction

from merosurf.builders import bubbled_torus_surface, parallelogram_example
from merosurf.construction import ZipperedDatum, assemble
from merosurf.exact import QQi
from merosurf.geom import cylinders, saddle_connections

from conftest import plane_datum, random_connected_surface


def square_like():
    return parallelogram_example(QQi(1, 1), QQi(1, -1))


def valley():
    return parallelogram_example(QQi(1, -1), QQi(1, 1))


def hexagon_like():
    """Plane minus a centrally symmetric hexagon, opposite sides glued:
    a surface in H(1,1,-2)."""
    d = ZipperedDatum(n=3, pi_t=(1, 2, 3), pi_b=(3, 2, 1),
                      nplus=(0, 3), nminus=(0, 3), d_breaks=(0, 1),
                      splus=0, sminus=0)
    zeta = (QQi(1, 1), QQi(1, 0), QQi(1, -1))
    return assemble(d, zeta)


def test_square_exactly_two_self_connections():
    scs = saddle_connections(square_like(), 10)
    assert len(scs) == 2
    assert all(sc.start == sc.end for sc in scs)
    assert {sc.length2 for sc in scs} == {Fraction(2)}


def test_square_no_cylinders():
    assert cylinders(square_like(), 10) == []


def test_valley_has_a_cylinder():
    cyls = cylinders(valley(), 10)
    assert len(cyls) >= 1
    c = cyls[0]
    assert c.waist == QQi(2, 0)
    assert len(c.boundary) == 2


def test_hexagon_no_self_connections():
    s = hexagon_like()
    from merosurf.construction import stratum_of
    from merosurf.signature import StratumSignature
    assert stratum_of(s) == StratumSignature([1, 1], [2])
    scs = saddle_connections(s, 10)
    assert len(scs) > 0
    assert all(sc.start != sc.end for sc in scs)


def test_plane_census_empty():
    s = assemble(plane_datum())
    assert saddle_connections(s, 10) == []
    assert cylinders(s, 10) == []


def test_bubbled_cylinder_found():
    for k, poles in [(1, (2,)), (2, (4,)), (3, (4,))]:
        s = bubbled_torus_surface(k, poles)
        cyls = cylinders(s, 12)
        assert len(cyls) >= 1
        assert all(len(c.boundary) >= 1 for c in cyls)


def test_census_monotone_prefix():
    s = valley()
    big = saddle_connections(s, 10)
    small = saddle_connections(s, 5)
    assert big[:len(small)] == small
    assert all(sc.length2 <= 25 for sc in small)


def test_census_holonomy_exactness(rng_seed=20240909):
    rng = random.Random(rng_seed)
    for _ in range(10):
        s = random_connected_surface(rng, max_n=5)
        for sc in saddle_connections(s, 4):
            assert sc.length2 == sc.holonomy.norm2()
            assert sc.length2 > 0


def test_census_deterministic():
    s = valley()
    assert saddle_connections(s, 8) == saddle_connections(s, 8)
    c1 = cylinders(s, 8)
    c2 = cylinders(s, 8)
    assert c1 == c2


def test_rotated_census_counts_match():
    # multiplying all zeta by i maps the mirror-symmetric two-half-plane
    # surfaces onto their rotations; counts are preserved (both zeta have
    # negative imaginary part, so i*zeta keeps positive real part)
    i = QQi(0, 1)
    z1, z2 = QQi(1, -1), QQi(1, -2)
    s = parallelogram_example(z1, z2)
    rot = parallelogram_example(i * z1, i * z2)
    a = saddle_connections(s, 6)
    b = saddle_connections(rot, 6)
    assert len(a) == len(b)
    assert sorted(sc.length2 for sc in a) == sorted(sc.length2 for sc in b)
    assert len(cylinders(s, 6)) == len(cylinders(rot, 6))
