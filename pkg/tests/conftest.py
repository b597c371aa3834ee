import random

import pytest

from merosurf.construction import ZipperedDatum, assemble, default_zeta
from merosurf.exact import QQi


def fig_pole3_datum() -> ZipperedDatum:
    """Reference datum: two half-plane pairs in one chain, a single
    pole of order 3 (the assembled surface lies in H(5,-3))."""
    return ZipperedDatum(n=4, pi_t=(1, 2, 3, 4), pi_b=(2, 3, 4, 1),
                         nplus=(0, 2, 4), nminus=(0, 2, 4),
                         d_breaks=(0, 2), splus=0, sminus=0)


def fig_twopoles_datum() -> ZipperedDatum:
    """Same data split into two chains: two poles of order 2, H(2,2,-2,-2)."""
    return ZipperedDatum(n=4, pi_t=(1, 2, 3, 4), pi_b=(2, 3, 4, 1),
                         nplus=(0, 2, 4), nminus=(0, 2, 4),
                         d_breaks=(0, 1, 2), splus=0, sminus=0)


def plane_datum() -> ZipperedDatum:
    """n = 0: one half-plane pair, the flat plane with a marked point."""
    return ZipperedDatum(n=0, pi_t=(), pi_b=(),
                         nplus=(0, 0), nminus=(0, 0),
                         d_breaks=(0, 1), splus=0, sminus=0)


@pytest.fixture
def pole3_surface():
    return assemble(fig_pole3_datum())


@pytest.fixture
def twopoles_surface():
    return assemble(fig_twopoles_datum())


@pytest.fixture
def plane_surface():
    return assemble(plane_datum())


def random_rational(rng: random.Random, lo=-3, hi=3, den=7):
    from fractions import Fraction
    return Fraction(rng.randint(lo * den, hi * den), den)


def random_zeta(rng: random.Random, n):
    from fractions import Fraction
    out = []
    for _ in range(n):
        re = Fraction(rng.randint(1, 24), rng.randint(1, 8))
        im = Fraction(rng.randint(-24, 24), rng.randint(1, 8))
        out.append(QQi(re, im))
    return tuple(out)


def random_valid_datum(rng: random.Random, max_n=10):
    """A random shape-valid datum; the assembled surface may still be
    disconnected, callers filter on that."""
    while True:
        d = rng.randint(0, 3)
        splus = rng.randint(0, 2)
        sminus = rng.randint(0, 2)
        if d == 0 and (splus == 0 or sminus == 0):
            continue
        # sizes for top: d domains (>=0 each) + splus cylinders (>=1 each)
        top_sizes = [rng.randint(0, 2) for _ in range(d)] + \
                    [rng.randint(1, 2) for _ in range(splus)]
        n = sum(top_sizes)
        if n == 0 or n > max_n:
            continue
        # bottom sizes must total n with sminus nonempty cylinder blocks
        for _ in range(30):
            bot_sizes = [rng.randint(0, 2) for _ in range(d)] + \
                        [rng.randint(1, 2) for _ in range(sminus)]
            if sum(bot_sizes) == n:
                break
        else:
            continue
        nplus = [0]
        for sz in top_sizes:
            nplus.append(nplus[-1] + sz)
        nminus = [0]
        for sz in bot_sizes:
            nminus.append(nminus[-1] + sz)
        pi_t = list(range(1, n + 1))
        rng.shuffle(pi_t)
        pi_b = list(range(1, n + 1))
        rng.shuffle(pi_b)
        if d > 0:
            cuts = sorted(rng.sample(range(1, d), rng.randint(0, d - 1))) if d > 1 else []
            d_breaks = [0] + cuts + [d]
        else:
            d_breaks = [0]
        return ZipperedDatum(n=n, pi_t=pi_t, pi_b=pi_b, nplus=nplus,
                             nminus=nminus, d_breaks=d_breaks,
                             splus=splus, sminus=sminus)


def random_connected_surface(rng: random.Random, max_n=10, randomize_zeta=True):
    from merosurf.errors import Disconnected
    while True:
        datum = random_valid_datum(rng, max_n=max_n)
        zeta = random_zeta(rng, datum.n) if randomize_zeta else default_zeta(datum.n)
        try:
            return assemble(datum, zeta)
        except Disconnected:
            continue
