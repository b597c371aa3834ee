"""Command-line front door.

Subcommands: classify, build, invariants, oracle, census, render.
Exit codes: 0 success, 2 malformed input, 3 broken internal invariant.
Output is deterministic byte-for-byte, including the parallel oracle
mode, whose worker results are merged in a fixed order.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from .classifier import classify
from .construction import assemble, load_datum, pole_profile, stratum_of, surface_genus
from .errors import (InputError, InternalError, MalformedSignature,
                     NoEmbeddedBasis, NotGenusOne, SpinUndefined)
from .exact import rat_str
from .geom import cylinders, saddle_connections
from .homology import has_zippered_involution, rotation_number, spin_parity
from .signature import format_signature, genus, parse_signature
from .surgery import component_classes, pq_orbit_classes
from .svg import render_svg

SCHEMA_VERSION = 1


def _emit(text: str) -> None:
    sys.stdout.write(text)


def cmd_classify(args) -> int:
    sig = parse_signature(args.signature)
    comps = classify(sig)
    if args.json:
        doc = {
            "schema": SCHEMA_VERSION,
            "stratum": format_signature(sig),
            "components": [
                {"label": c.label,
                 **({"rotation": c.rotation} if c.label == "Rotation" else {}),
                 **({"notes": c.notes} if c.notes else {})}
                for c in comps
            ],
        }
        _emit(json.dumps(doc, indent=1, sort_keys=True) + "\n")
        return 0
    if not comps:
        _emit("empty stratum\n")
        return 0
    for c in comps:
        _emit(f"{c}\t{c.notes}\n")
    return 0


def _load_surface(path):
    datum, zeta = load_datum(path)
    return assemble(datum, zeta), datum


def cmd_build(args) -> int:
    surface, datum = _load_surface(args.datum)
    _emit(f"n\t{datum.n}\n")
    _emit(f"domains\t{len(surface.domains)}\n")
    _emit(f"stratum\t{format_signature(stratum_of(surface))}\n")
    _emit(f"genus\t{surface_genus(surface)}\n")
    return 0


def cmd_invariants(args) -> int:
    surface, datum = _load_surface(args.datum)
    sig = stratum_of(surface)
    g = surface_genus(surface)
    _emit(f"genus\t{g}\n")
    _emit(f"stratum\t{format_signature(sig)}\n")
    residues = ",".join(
        f"({rat_str(p.flat_residue.re)},{rat_str(p.flat_residue.im)})"
        for p in pole_profile(surface))
    _emit(f"residues\t{residues}\n")
    if g == 1:
        try:
            _emit(f"rotation_number\t{rotation_number(surface)}\n")
        except NoEmbeddedBasis:
            _emit("rotation_number\tno-embedded-basis\n")
    try:
        _emit(f"spin_parity\t{spin_parity(surface)}\n")
    except SpinUndefined:
        pass
    _emit(f"zippered_involution\t{has_zippered_involution(datum)}\n")
    return 0


def cmd_oracle(args) -> int:
    sig = parse_signature(args.stratum)
    if args.mode == "pq":
        if genus(sig) != 1:
            raise MalformedSignature("pq oracle needs a genus-one stratum")
        orbits = pq_orbit_classes(sig, workers=args.workers)
        _emit(f"classes\t{len(orbits)}\n")
        for label, size in orbits:
            _emit(f"{label}\t{size}\n")
        return 0
    reps = component_classes(sig)
    _emit(f"classes\t{len(reps)}\n")
    for rep in reps:
        _emit("+".join(str(s) for s in rep) + "\n")
    return 0


def cmd_census(args) -> int:
    surface, _datum = _load_surface(args.datum)
    bound = Fraction(args.bound)
    if args.kind == "sc":
        for sc in saddle_connections(surface, bound):
            _emit(f"({rat_str(sc.holonomy.re)},{rat_str(sc.holonomy.im)})\t"
                  f"{sc.start}\t{sc.end}\t{math.sqrt(sc.length2):.6f}\n")
    else:
        for cyl in cylinders(surface, bound):
            _emit(f"({rat_str(cyl.waist.re)},{rat_str(cyl.waist.im)})\t"
                  f"{len(cyl.boundary)}\t{math.sqrt(cyl.length2):.6f}\n")
    return 0


def cmd_render(args) -> int:
    surface, _datum = _load_surface(args.datum)
    text = render_svg(surface)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="merosurf",
        description="Translation surfaces with poles: construction, "
                    "invariants, and stratum component classification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="components of a stratum")
    p.add_argument("signature", help='e.g. "H(4,4,-1,-1)"')
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("build", help="validate and assemble a datum file")
    p.add_argument("--datum", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("invariants", help="flat invariants of a surface")
    p.add_argument("--datum", required=True)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("oracle", help="brute-force component oracles")
    p.add_argument("--mode", choices=["pq", "bubble"], required=True)
    p.add_argument("--stratum", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("census", help="saddle connection / cylinder census")
    p.add_argument("--datum", required=True)
    p.add_argument("--bound", required=True, help="rational length bound")
    p.add_argument("--kind", choices=["sc", "cyl"], default="sc")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("render", help="draw the domains as SVG")
    p.add_argument("--datum", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_render)

    return parser


def run(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except InternalError as exc:
        print(f"internal invariant breach: {exc}", file=sys.stderr)
        return 3
    except (InputError, NotGenusOne, ValueError, OSError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
