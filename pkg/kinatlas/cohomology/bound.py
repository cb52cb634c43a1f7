# -*- coding: utf-8 -*-
"""
The cohomological lower bound cx(F) >= nil(Ker(Id x F*)) and the model files it is computed from.

A model names the cohomology of the configuration space and of the workspace and gives F* on the workspace
generators:

    {"config": "torus6", "work": "so3", "fstar": {"u": [1, 0, 0, 0, 0, 0]}}

Each coefficient list runs over the basis monomials of H*(C) in the generator's degree. "fstar": "identity" maps every
generator to the generator of the same position; "fstar_u": [...] is accepted as shorthand for a single generator.
"""
import re
import json
import logging
from dataclasses import dataclass

from kinatlas.cohomology import gf2
from kinatlas.cohomology.algebra import (exterior_algebra, truncated_poly, GradedHom, induced_product_hom, kernel)
from kinatlas.errors import InvalidInput

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Sweep:
    """Result of the product sweep: nil, dim S_j for j = 1..nil, and a non-zero product of nil - 1 generators."""
    value: int
    dims: tuple
    certificate: int
    word: tuple


def sweep(ideal, generators=None):
    """
    S_1 = span(G), S_{j+1} = span{g s : g in G, s in S_j}, for G the ideal generators (or any other set generating the
    same ideal, e.g. its vector space basis). The least j with S_j = 0 is the nilpotency.

    Independent raw products are kept together with the word of generators they multiply.
    """
    algebra = ideal.algebra
    gens = list(ideal.generators if generators is None else generators)
    level = []
    echelon = gf2.Echelon()
    for i, g in enumerate(gens):
        if echelon.add(g):
            level.append((g, (i,)))
    dims = []
    certificate, word = 1, ()
    while level:
        dims.append(len(level))
        certificate, word = level[0]
        echelon = gf2.Echelon()
        following = []
        for s, w in level:
            for i, g in enumerate(gens):
                p = algebra.mul(g, s)
                if p and echelon.add(p):
                    following.append((p, (i,) + w))
        level = following
    return Sweep(len(dims) + 1, tuple(dims), certificate, word)


def nilpotency(ideal, generators=None):
    return sweep(ideal, generators).value


_TORUS = re.compile(r'^torus(\d+)$')


def algebra_for(name):
    """H*(-; Z2) of a named space."""
    m = _TORUS.match(name)
    if m:
        return exterior_algebra(int(m.group(1)))
    if name == 'circle':
        return exterior_algebra(1)
    if name == 'so3':
        return truncated_poly(4, 1, 'u')
    if name == 'sphere2':
        return truncated_poly(2, 2, 'v')
    raise InvalidInput("Unknown space %r; expected torusN, circle, so3 or sphere2" % name)


@dataclass(frozen=True)
class Model:
    config_name: str
    work_name: str
    fstar: GradedHom

    @property
    def config(self):
        return self.fstar.target

    @property
    def work(self):
        return self.fstar.source


def _coefficients_to_element(config, degree, coefficients, generator):
    basis = config.basis_in_degree(degree)
    if not isinstance(coefficients, list) or len(coefficients) != len(basis):
        raise InvalidInput("F*(%s) needs %d coefficients over the degree-%d monomials of H*(C)"
                           % (generator, len(basis), degree))
    v = 0
    for i, a in zip(basis, coefficients):
        if a not in (0, 1):
            raise InvalidInput("F*(%s) coefficients must be 0 or 1, got %r" % (generator, a))
        if a:
            v |= 1 << i
    return v


def model_from_json(js):
    if not isinstance(js, dict):
        raise InvalidInput("A model must be a JSON object")
    try:
        config_name, work_name = js['config'], js['work']
    except KeyError as e:
        raise InvalidInput("Model is missing %s" % e)
    config, work = algebra_for(config_name), algebra_for(work_name)
    fstar = js.get('fstar')
    if fstar is None:
        fstar = {k[len('fstar_'):]: v for k, v in js.items() if k.startswith('fstar_')}
    if fstar == 'identity':
        if [g[1:] for g in config.generators] != [g[1:] for g in work.generators]:
            raise InvalidInput("Identity F* needs matching generators, %s and %s differ" % (config_name, work_name))
        images = [config.gen(i) for i in range(len(work.generators))]
    elif isinstance(fstar, dict):
        missing = [g.name for g in work.generators if g.name not in fstar]
        if missing:
            raise InvalidInput("F* is not given on %s" % ", ".join(missing))
        images = [_coefficients_to_element(config, g.degree, fstar[g.name], g.name) for g in work.generators]
    else:
        raise InvalidInput("fstar must be \"identity\" or a mapping from generators to coefficient lists")
    return Model(config_name, work_name, GradedHom(work, config, images))


def load_model(path):
    with open(path, 'r') as f:
        try:
            js = json.load(f)
        except ValueError as e:
            raise InvalidInput("%s is not valid JSON: %s" % (path, e))
    return model_from_json(js)


def bound_report(model):
    """cx lower bound with its certificate, as a JSON-ready dict."""
    product = induced_product_hom(model.fstar)
    ideal = kernel(product)
    result = sweep(ideal)
    algebra = ideal.algebra
    logger.info("cx(%s -> %s) >= %d" % (model.config_name, model.work_name, result.value))
    return {
        'config': model.config_name,
        'work': model.work_name,
        'bound': result.value,
        'kernel_dim': ideal.dim,
        'generators': [algebra.format(g) for g in ideal.generators],
        'sweep_dims': list(result.dims),
        'certificate': algebra.format(result.certificate),
        'certificate_monomials': [algebra.monomial_name(i) for i in sorted(gf2.bits(result.certificate))],
        'certificate_word': [algebra.format(ideal.generators[i]) for i in result.word],
    }


def cx_lower_bound(model):
    return sweep(kernel(induced_product_hom(model.fstar))).value
