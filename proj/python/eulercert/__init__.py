"""Certificates for free actions of finite groups on products of spheres."""

import json

from . import _core
from ._core import (
    Character,
    EulercertError,
    Group,
    HypothesisFailure,
    InsufficientData,
    ValidationError,
    central_induction,
    contains_p_cube,
    group_from_json,
    ingest_character,
    inner_product,
    involution_criterion,
    irreducible,
    irreducibles,
    join_dim,
    load_character,
    load_group,
    maximal_rank_primes,
    normal_sylow_effective,
    p_rank,
    rank,
    search_effective,
    trivial_character,
)

__all__ = [
    "Character",
    "EulercertError",
    "Group",
    "HypothesisFailure",
    "InsufficientData",
    "ValidationError",
    "central_induction",
    "certify_amalgams",
    "certify_center",
    "certify_rank_one_isotropy",
    "certify_rank_two",
    "contains_p_cube",
    "group_from_json",
    "ingest_character",
    "inner_product",
    "involution_criterion",
    "irreducible",
    "irreducibles",
    "is_effective",
    "is_p_effective",
    "isotropy_profile",
    "join_dim",
    "load_character",
    "load_group",
    "local_certificate",
    "maximal_rank_primes",
    "normal_sylow_effective",
    "p_rank",
    "rank",
    "replay",
    "search_effective",
    "trivial_character",
    "validate_amalgam",
]


def is_effective(character):
    return json.loads(_core.is_effective(character))


def is_p_effective(character, p):
    return json.loads(_core.is_p_effective(character, p))


def isotropy_profile(factors):
    return json.loads(_core.isotropy_profile(list(factors)))


def validate_amalgam(path):
    return json.loads(_core.validate_amalgam(str(path)))


def local_certificate(path):
    return json.loads(_core.local_certificate(str(path)))


def certify_rank_one_isotropy(group, factors):
    return json.loads(_core.certify_rank_one_isotropy(group, list(factors)))


def certify_rank_two(group, character):
    return json.loads(_core.certify_rank_two(group, character))


def certify_center(group, p):
    return json.loads(_core.certify_center(group, p))


def certify_amalgams(group, paths, alignment="product"):
    return json.loads(_core.certify_amalgams(group, [str(p) for p in paths], alignment))


def replay(certificate):
    """Returns (reproduced, report text). Accepts a dict or JSON text."""
    if not isinstance(certificate, str):
        certificate = json.dumps(certificate)
    return _core.report(certificate)
