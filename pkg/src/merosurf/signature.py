"""Stratum signatures and the exact arithmetic on them.

A signature records the multiset of zero degrees and pole orders of a
stratum of meromorphic differentials.  Pole orders are stored positive;
the sign convention of the text notation H(...,-p) lives only in
parsing and printing.  Degree-0 zeros (marked points) are representable
because surgery bases need them, but every classification entry point
rejects them.
"""

from __future__ import annotations

import math
import re as _re
from dataclasses import dataclass
from functools import reduce

from .errors import MalformedSignature


@dataclass(frozen=True)
class StratumSignature:
    """Multisets of zero degrees (>= 0) and pole orders (>= 1), sorted."""

    zeros: tuple
    poles: tuple

    def __init__(self, zeros, poles):
        object.__setattr__(self, "zeros", tuple(sorted(int(z) for z in zeros)))
        object.__setattr__(self, "poles", tuple(sorted(int(p) for p in poles)))

    def __str__(self) -> str:
        return format_signature(self)

    @property
    def r(self) -> int:
        return len(self.zeros)

    @property
    def s(self) -> int:
        return len(self.poles)

    def zero_sum(self) -> int:
        return sum(self.zeros)

    def pole_sum(self) -> int:
        return sum(self.poles)


def check_wellformed(sig: StratumSignature, require_pole: bool = True) -> None:
    """Raise MalformedSignature unless degrees make an honest stratum.

    require_pole=False admits the pole-free signatures that appear as
    compact closings (e.g. H(2)); meromorphic strata always have s >= 1.
    """
    if any(z < 0 for z in sig.zeros):
        raise MalformedSignature(f"negative zero degree in {sig}")
    if any(p < 1 for p in sig.poles):
        raise MalformedSignature(f"pole order < 1 in {sig}")
    if require_pole and sig.s < 1:
        raise MalformedSignature(f"{sig} has no pole")
    total = sig.zero_sum() - sig.pole_sum()
    if total % 2 != 0 or total < -2:
        raise MalformedSignature(
            f"{sig}: zero/pole degrees do not satisfy Riemann-Roch parity")


def genus(sig: StratumSignature) -> int:
    """Genus from sum(zeros) - sum(poles) = 2g - 2."""
    check_wellformed(sig, require_pole=False)
    return (sig.zero_sum() - sig.pole_sum() + 2) // 2


def is_nonempty(sig: StratumSignature) -> bool:
    """A well-formed stratum is nonempty iff it has more than one simple pole
    worth of polar degree (sum of pole orders > 1)."""
    check_wellformed(sig)
    return sig.pole_sum() > 1


def degree_gcd(sig: StratumSignature) -> int:
    """gcd of all zero degrees and pole orders (all zeros must be >= 1)."""
    check_wellformed(sig)
    if any(z < 1 for z in sig.zeros):
        raise MalformedSignature(f"{sig} has a marked point (degree-0 zero)")
    return reduce(math.gcd, sig.zeros + sig.poles)


def _pair_type(values: tuple) -> bool:
    """True iff the multiset is {2m} or {m, m} for some m >= 1."""
    if len(values) == 1:
        return values[0] % 2 == 0 and values[0] >= 2
    if len(values) == 2:
        return values[0] == values[1] and values[0] >= 1
    return False


def is_hyperelliptic_type(sig: StratumSignature) -> bool:
    """Zeros of shape {2n} or {n,n} and poles of shape {2p} or {p,p}."""
    check_wellformed(sig)
    if any(z < 1 for z in sig.zeros):
        raise MalformedSignature(f"{sig} has a marked point (degree-0 zero)")
    return _pair_type(sig.zeros) and _pair_type(sig.poles)


def is_even_type(sig: StratumSignature) -> bool:
    """All zero degrees even, and poles all even or exactly {1, 1}."""
    check_wellformed(sig)
    if any(z < 1 for z in sig.zeros):
        raise MalformedSignature(f"{sig} has a marked point (degree-0 zero)")
    if any(z % 2 for z in sig.zeros):
        return False
    return all(p % 2 == 0 for p in sig.poles) or sig.poles == (1, 1)


_SIG_RE = _re.compile(r"^H\(([-+0-9,\s]*)\)$")


def parse_signature(text: str) -> StratumSignature:
    """Parse 'H(n1,...,-p1,...)'; whitespace-insensitive."""
    cleaned = text.strip()
    m = _SIG_RE.match(cleaned.replace(" ", "").replace("\t", ""))
    if not m:
        raise MalformedSignature(f"cannot parse signature {text!r}")
    body = m.group(1)
    zeros, poles = [], []
    if body:
        for part in body.split(","):
            if part == "":
                raise MalformedSignature(f"empty entry in {text!r}")
            try:
                v = int(part)
            except ValueError:
                raise MalformedSignature(f"bad integer {part!r} in {text!r}") from None
            if v < 0:
                poles.append(-v)
            else:
                zeros.append(v)
    sig = StratumSignature(zeros, poles)
    check_wellformed(sig, require_pole=False)
    return sig


def format_signature(sig: StratumSignature) -> str:
    parts = [str(z) for z in sorted(sig.zeros, reverse=True)]
    parts += [str(-p) for p in sorted(sig.poles)]
    return "H(" + ",".join(parts) + ")"
