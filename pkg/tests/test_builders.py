from fractions import Fraction

import pytest

from merosurf.builders import (add_bubble, bubble_chain_sketch,
                               bubbled_torus, bubbled_torus_surface,
                               close_two_simple_poles, genus0_base,
                               parallelogram_example)
from merosurf.construction import (assemble, pole_profile, singularity_degrees,
                                   stratum_of, surface_genus)
from merosurf.errors import NonPositiveRealPart, NotTwoSimplePoles, OutOfRange
from merosurf.exact import QQi
from merosurf.signature import StratumSignature


def test_parallelogram_stratum():
    s = parallelogram_example(QQi(1, Fraction(1, 2)), QQi(1, Fraction(-1, 2)))
    assert stratum_of(s) == StratumSignature([2], [2])
    assert surface_genus(s) == 1


def test_parallelogram_degenerate_direction_is_valid():
    s = parallelogram_example(QQi(1, 0), QQi(1, 0))
    assert stratum_of(s) == StratumSignature([2], [2])


def test_parallelogram_rejects_bad_real_part():
    with pytest.raises(NonPositiveRealPart):
        parallelogram_example(QQi(0, 1), QQi(1, 1))


@pytest.mark.parametrize("poles,zero", [
    ((2,), 0), ((3,), 1), ((4,), 2), ((1, 1), 0), ((1, 1, 1), 1),
    ((2, 1), 1), ((2, 2), 2), ((3, 1, 1), 3), ((2, 2, 2), 4),
    ((5, 4, 1), 8),
])
def test_genus0_base_strata(poles, zero):
    s = genus0_base(poles).assemble()
    assert stratum_of(s) == StratumSignature([zero], poles)
    assert len(s.vertex_classes) == 1


def test_bubbled_torus_strata_and_genus():
    for poles in [(2,), (4,), (1, 1), (3, 2)]:
        n = sum(poles)
        for k in range(1, n):
            datum, zeta = bubbled_torus(k, poles)
            s = assemble(datum, zeta)
            assert stratum_of(s) == StratumSignature([n], poles)
            assert surface_genus(s) == 1


def test_bubbled_torus_range_checks():
    with pytest.raises(OutOfRange):
        bubbled_torus(0, (4,))
    with pytest.raises(OutOfRange):
        bubbled_torus(4, (4,))
    with pytest.raises(OutOfRange):
        bubbled_torus(1, (1,))


def test_bubbled_torus_rotation_examples():
    from merosurf.homology import rotation_number
    assert rotation_number(bubbled_torus_surface(1, (2,))) == 1
    assert rotation_number(bubbled_torus_surface(2, (4,))) == 2
    assert rotation_number(bubbled_torus_surface(1, (4,))) == 1
    assert rotation_number(bubbled_torus_surface(1, (1, 1))) == 1


def test_bubble_attaching_angle_certificate():
    # the split degrees of the broken surface carry the attaching angle;
    # re-derive them by deleting the cylinder pair from the datum
    from merosurf.builders import insert_slit
    sk = genus0_base((5,))
    for s_param in (1, 2, 3):
        slitted, label = insert_slit(sk, s_param)
        surf = slitted.assemble()
        assert singularity_degrees(surf) == \
            tuple(sorted((s_param - 1, 3 + 1 - s_param)))


def test_bubble_chain_minimal_strata():
    s = bubble_chain_sketch((2,), (1, 2)).assemble()
    assert stratum_of(s) == StratumSignature([4], [2])
    assert surface_genus(s) == 2
    s = bubble_chain_sketch((1, 1), (1, 1, 2)).assemble()
    assert stratum_of(s) == StratumSignature([6], [1, 1])
    assert surface_genus(s) == 3


def test_bubble_parameter_out_of_range():
    sk = genus0_base((2,))
    with pytest.raises(OutOfRange):
        add_bubble(sk, 2)      # base degree 0 allows only s = 1


def test_close_two_simple_poles_examples():
    t = bubbled_torus_surface(1, (1, 1))
    c = close_two_simple_poles(t)
    assert c.is_compact
    assert stratum_of(c) == StratumSignature([2], [])
    assert surface_genus(c) == 2

    s = bubbled_torus_surface(1, (1, 1))
    sk = bubble_chain_sketch((1, 1), (1, 1))
    s2 = sk.assemble()                      # H(4,-1,-1)
    c2 = close_two_simple_poles(s2)
    assert stratum_of(c2) == StratumSignature([4], [])
    assert surface_genus(c2) == 3


def test_close_rejects_other_surfaces(pole3_surface):
    with pytest.raises(NotTwoSimplePoles):
        close_two_simple_poles(pole3_surface)


def test_close_twist_choices_agree_on_spin():
    from merosurf.homology import spin_parity
    t = bubbled_torus_surface(1, (1, 1))
    base = spin_parity(close_two_simple_poles(t))
    for twist in (Fraction(1, 7), Fraction(2, 5)):
        assert spin_parity(close_two_simple_poles(t, twist=twist)) == base


def test_residues_of_bubbled_surfaces_sum_zero():
    for poles in [(2, 2), (3, 1), (1, 1, 2)]:
        s = bubbled_torus_surface(1, poles)
        total = pole_profile(s)
        sig = stratum_of(s)
        assert sig.poles == tuple(sorted(poles))
        acc = total[0].flat_residue
        for p in total[1:]:
            acc = acc + p.flat_residue
        assert not acc
