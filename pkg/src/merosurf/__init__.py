"""Translation surfaces with poles: construction, invariants, classification."""

from .signature import (StratumSignature, degree_gcd, format_signature, genus,
                        is_even_type, is_hyperelliptic_type, is_nonempty,
                        parse_signature)
from .construction import (PoleRecord, Surface, Violation, ZipperedDatum,
                           assemble, default_zeta, load_datum, pole_profile,
                           save_datum, singularity_degrees, stratum_of,
                           surface_genus, validate_datum)

__all__ = [
    "StratumSignature", "degree_gcd", "format_signature", "genus",
    "is_even_type", "is_hyperelliptic_type", "is_nonempty", "parse_signature",
    "PoleRecord", "Surface", "Violation", "ZipperedDatum", "assemble",
    "default_zeta", "load_datum", "pole_profile", "save_datum",
    "singularity_degrees", "stratum_of", "surface_genus", "validate_datum",
]
