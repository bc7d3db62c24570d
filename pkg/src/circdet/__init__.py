"""Exact integer circulant determinants and the structure of S_15."""

from .constructions import WitnessCertificate
from .cyclonorm import CycloElement, NormProfile, circulant_det, norm_d, norm_profile
from .goodbad import classify_element, classify_prime, prime_power_tag
from .membership import MembershipVerdict, decide_s15, decide_sp, divisibility_ok
from .polyring import IntPoly, cyclotomic, parse_poly, render_poly, resultant

__version__ = "0.1.0"

__all__ = [
    "CycloElement",
    "IntPoly",
    "MembershipVerdict",
    "NormProfile",
    "WitnessCertificate",
    "circulant_det",
    "classify_element",
    "classify_prime",
    "cyclotomic",
    "decide_s15",
    "decide_sp",
    "divisibility_ok",
    "norm_d",
    "norm_profile",
    "parse_poly",
    "prime_power_tag",
    "render_poly",
    "resultant",
]
