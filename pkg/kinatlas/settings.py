# -*- coding: utf-8 -*-
"""
Global numeric tolerances.

There is one ToleranceProfile in force (TOLERANCES). It can be overridden from a YAML file, e.g.

    glue: 1.0e-9
    endpoint: 1.0e-6

"""
import logging
import dataclasses
from dataclasses import dataclass

import yaml

from kinatlas.errors import InvalidInput

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ToleranceProfile:
    # endpoint gluing of paths (per coordinate)
    glue: float = 1e-9
    # R^T R = I and det R = 1
    orthonormal: float = 1e-10
    # unit sphere vectors
    unit: float = 1e-12
    # decidable version of equality sets in chart domains (antipodal pairs, poles, singular circles)
    domain: float = 1e-9
    # regular-value tests
    singular_value: float = 1e-9
    # roadmap endpoint contract
    endpoint: float = 1e-6
    closed_form: float = 1e-12
    # relative rank threshold for rank_at
    rank: float = 1e-8
    # band around the singular locus excluded from agreement checks
    margin_band: float = 1e-6

    def replace(self, **overrides):
        return dataclasses.replace(self, **overrides)


TOLERANCES = ToleranceProfile()


def tolerances_from_mapping(values, base=TOLERANCES):
    known = {f.name for f in dataclasses.fields(ToleranceProfile)}
    unknown = set(values) - known
    if unknown:
        raise InvalidInput("Unknown tolerance keys: %s" % ", ".join(sorted(unknown)))
    return base.replace(**{k: float(v) for k, v in values.items()})


def load_tolerances(path):
    """Read a YAML tolerance profile. Missing keys keep their defaults."""
    logger.info("Loading tolerance profile from %s" % path)
    with open(path, 'r') as f:
        values = yaml.safe_load(f) or {}
    if not isinstance(values, dict):
        raise InvalidInput("Tolerance profile %s is not a mapping" % path)
    return tolerances_from_mapping(values)
