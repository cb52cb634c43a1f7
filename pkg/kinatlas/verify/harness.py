# -*- coding: utf-8 -*-
"""
Property harness for atlases.

Every suite is driven by a HarnessConfig. Sample i draws from its own generator sample_rng(seed, i, stream), so a
report only depends on the configuration, never on evaluation order. Contract violations are recorded as Witness
entries of the report rather than raised.

    endpoints    plan(q) starts exactly at c and ends within tolerances.endpoint of w
    coverage     every sampled query (and every chart probe) has a chart
    continuity   per chart, the 99th percentile K of |plan(q) - plan(q')| / |q - q'| at delta and delta/refine agree
                 within a factor `stability`; pairs with the largest ratios are bisected to flag seams
"""
import math
import logging
import dataclasses
from dataclasses import dataclass, field

import numpy as np
import yaml

from kinatlas.core.paths import path_distance
from kinatlas.core.workspace import work_distance
from kinatlas.verify.sampling import sample_rng, query_distance, perturb_query
from kinatlas.errors import KinAtlasError, NoChart, InvalidInput
from kinatlas.settings import TOLERANCES, ToleranceProfile, tolerances_from_mapping

logger = logging.getLogger(__name__)

SUITES = ('endpoints', 'coverage', 'continuity')

# RNG streams
QUERIES, DIRECTIONS, PROBES = 0, 1, 2


@dataclass(frozen=True)
class HarnessConfig:
    seed: int = 0
    samples: int = 1000
    delta: float = 1e-4
    tolerances: ToleranceProfile = TOLERANCES
    # exact members constructed per chart that has a probe
    probes: int = 16
    percentile: float = 99.0
    refine: float = 10.0
    stability: float = 4.0
    seam_pairs: int = 4
    seam_rounds: int = 4
    seam_growth: float = 10.0
    # pairs closer than margin_factor * delta to a domain boundary are discarded
    margin_factor: float = 10.0

    def __post_init__(self):
        if int(self.samples) != self.samples or self.samples < 1:
            raise InvalidInput("samples must be a positive integer, got %r" % self.samples)
        if not self.delta > 0.0:
            raise InvalidInput("delta must be positive, got %r" % self.delta)
        if self.probes < 0 or self.refine <= 1.0:
            raise InvalidInput("probes must be >= 0 and refine > 1")

    def replace(self, **overrides):
        return dataclasses.replace(self, **{k: v for k, v in overrides.items() if v is not None})

    @classmethod
    def from_yaml(cls, path, **overrides):
        """Read a YAML mapping of HarnessConfig fields; 'tolerances' is a nested mapping. Non-None overrides win."""
        logger.info("Loading harness configuration from %s" % path)
        with open(path, 'r') as f:
            values = yaml.safe_load(f) or {}
        if not isinstance(values, dict):
            raise InvalidInput("Harness configuration %s is not a mapping" % path)
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(values) - known
        if unknown:
            raise InvalidInput("Unknown harness configuration keys: %s" % ", ".join(sorted(unknown)))
        if 'tolerances' in values:
            values['tolerances'] = tolerances_from_mapping(values['tolerances'] or {})
        return cls(**values).replace(**overrides)


def _num(x):
    """JSON-safe float: None for missing or non-finite values."""
    if x is None or not math.isfinite(x):
        return None
    return float(x)


@dataclass
class Witness:
    kind: str
    chart: int = None
    query: object = None
    value: float = None
    detail: str = ''

    def to_json(self):
        return {'kind': self.kind, 'chart': self.chart, 'query': None if self.query is None else self.query.to_json(),
                'value': _num(self.value), 'detail': self.detail}


@dataclass
class ChartReport:
    index: int
    label: str
    queries: int = 0
    covered: int = 0
    max_endpoint_error: float = 0.0
    pairs: int = 0
    discarded: int = 0
    k: float = None
    k_refined: float = None
    violations: list = field(default_factory=list)

    def to_json(self):
        return {'index': self.index, 'label': self.label, 'queries': self.queries, 'covered': self.covered,
                'max_endpoint_error': _num(self.max_endpoint_error), 'pairs': self.pairs,
                'discarded': self.discarded, 'k': _num(self.k), 'k_refined': _num(self.k_refined),
                'violations': [w.to_json() for w in self.violations]}


@dataclass
class Report:
    suite: str
    atlas: str
    seed: int
    samples: int
    charts: list
    violations: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.violations and not any(c.violations for c in self.charts)

    def witnesses(self):
        return list(self.violations) + [w for c in self.charts for w in c.violations]

    def to_json(self):
        return {'suite': self.suite, 'atlas': self.atlas, 'seed': self.seed, 'samples': self.samples,
                'chart_count': len(self.charts), 'passed': self.passed,
                'charts': [c.to_json() for c in self.charts],
                'violations': [w.to_json() for w in self.violations]}


def _new_report(suite, atlas, cfg):
    charts = [ChartReport(i, chart.label) for i, chart in enumerate(atlas)]
    return Report(suite, atlas.label, cfg.seed, cfg.samples, charts)


def _queries(atlas, cfg):
    """
    (query, origin) pairs: the random sample (origin None), then `cfg.probes` constructed members of every chart with a
    probe (origin: chart label) and of the atlas' extra probes.
    """
    for i in range(cfg.samples):
        yield atlas.sample_query(sample_rng(cfg.seed, i, QUERIES)), None
    probes = [(chart.label, chart.probe) for chart in atlas if chart.probe is not None] + list(atlas.extra_probes)
    for k, (label, probe) in enumerate(probes):
        for p in range(cfg.probes):
            yield probe(sample_rng(cfg.seed, p, PROBES + k)), label


def check_endpoints(atlas, cfg):
    report = _new_report('endpoints', atlas, cfg)
    mech = atlas.mechanism
    tol = cfg.tolerances.endpoint
    for q, _ in _queries(atlas, cfg):
        try:
            i = atlas.chart_index(q)
        except NoChart as e:
            report.violations.append(Witness('no-chart', None, q, None, str(e)))
            continue
        chart = report.charts[i]
        chart.queries += 1
        try:
            path = atlas[i].plan(q)
        except KinAtlasError as e:
            chart.violations.append(Witness('plan-failure', i, q, None, "%s: %s" % (type(e).__name__, e)))
            continue
        if path.start != q.config:
            chart.violations.append(Witness('start', i, q, torus_gap(path.start, q.config),
                                            "plan starts at %r" % (path.start,)))
        error = work_distance(mech.forward(path.end), q.target)
        chart.max_endpoint_error = max(chart.max_endpoint_error, error)
        if not error < tol:
            chart.violations.append(Witness('endpoint', i, q, error, "F(end) misses the target by %.3g" % error))
    logger.info("Endpoint suite on %s: %s" % (atlas.label, "pass" if report.passed else "FAIL"))
    return report


def torus_gap(c1, c2):
    return float(np.max(np.abs(c1.as_array() - c2.as_array())))


def check_coverage(atlas, cfg):
    report = _new_report('coverage', atlas, cfg)
    for q, origin in _queries(atlas, cfg):
        try:
            i = atlas.chart_index(q)
        except NoChart as e:
            detail = "sampled" if origin is None else "probe of %s" % origin
            report.violations.append(Witness('no-chart', None, q, None, "%s (%s)" % (e, detail)))
            continue
        report.charts[i].queries += 1
        report.charts[i].covered += 1
    logger.info("Coverage suite on %s: %s" % (atlas.label, "pass" if report.passed else "FAIL"))
    return report


def _partner(chart, q, delta, rng):
    """A query of the same chart at distance about delta from q, or None."""
    q2 = perturb_query(q, delta, rng)
    if chart.contains(q2):
        return q2
    if chart.neighbour is not None:
        q2 = chart.neighbour(q, delta, rng)
        if q2 is not None and chart.contains(q2):
            return q2
    return None


def _ratio(chart, q, path, key, delta, cfg):
    """Path distance over query distance for the partner of q drawn from direction stream `key`."""
    q2 = _partner(chart, q, delta, sample_rng(cfg.seed, key, DIRECTIONS))
    if q2 is None:
        return None
    d = query_distance(q, q2)
    if d <= 0.0:
        return None
    return path_distance(path, chart.plan(q2)) / d


def continuity_probe(atlas, cfg):
    report = _new_report('continuity', atlas, cfg)
    fine = cfg.delta / cfg.refine
    ratios = [[] for _ in atlas]
    for key, (q, _) in enumerate(_queries(atlas, cfg)):
        try:
            i = atlas.chart_index(q)
        except NoChart:
            continue
        chart, entry = atlas[i], report.charts[i]
        if chart.margin is not None and chart.margin(q) < cfg.margin_factor * cfg.delta:
            entry.discarded += 1
            continue
        try:
            path = chart.plan(q)
            coarse = _ratio(chart, q, path, key, cfg.delta, cfg)
            refined = _ratio(chart, q, path, key, fine, cfg)
        except KinAtlasError as e:
            entry.violations.append(Witness('plan-failure', i, q, None, "%s: %s" % (type(e).__name__, e)))
            continue
        if coarse is None or refined is None:
            entry.discarded += 1
            continue
        entry.pairs += 1
        ratios[i].append((coarse, refined, key, q, path))

    for i, entry in enumerate(report.charts):
        if not ratios[i]:
            continue
        entry.k = float(np.percentile([r[0] for r in ratios[i]], cfg.percentile))
        entry.k_refined = float(np.percentile([r[1] for r in ratios[i]], cfg.percentile))
        if not (math.isfinite(entry.k) and math.isfinite(entry.k_refined)):
            entry.violations.append(Witness('continuity', i, None, None, "non-finite continuity constant"))
            continue
        low, high = sorted((entry.k, entry.k_refined))
        if high > cfg.stability * max(low, 1e-12):
            entry.violations.append(Witness('continuity', i, None, high / max(low, 1e-12),
                                            "K %.3g at delta, %.3g at delta/%g" % (entry.k, entry.k_refined,
                                                                                   cfg.refine)))
        _find_seams(atlas[i], entry, ratios[i], cfg)
    if any(e.discarded for e in report.charts):
        logger.warning("Discarded %d probe pairs near chart boundaries" % sum(e.discarded for e in report.charts))
    logger.info("Continuity suite on %s: %s" % (atlas.label, "pass" if report.passed else "FAIL"))
    return report


def _find_seams(chart, entry, ratios, cfg):
    top = sorted(ratios, key=lambda r: -r[0])[:cfg.seam_pairs]
    for coarse, _, key, q, path in top:
        delta = cfg.delta
        for _ in range(cfg.seam_rounds):
            delta /= 2.0
            try:
                r = _ratio(chart, q, path, key, delta, cfg)
            except KinAtlasError:
                break
            if r is not None and coarse > 0.0 and r >= cfg.seam_growth * coarse:
                entry.violations.append(Witness('seam', entry.index, q, r / coarse,
                                                "ratio grows from %.3g to %.3g at delta %.3g" % (coarse, r, delta)))
                break


def run_suites(atlas, cfg, suites=SUITES):
    """Run the named suites; returns {suite: Report}."""
    runners = {'endpoints': check_endpoints, 'coverage': check_coverage, 'continuity': continuity_probe}
    reports = {}
    for name in suites:
        if name not in runners:
            raise InvalidInput("Unknown suite %r" % name)
        logger.info("Running the %s suite on %s (%d samples, seed %d)" % (name, atlas.label, cfg.samples, cfg.seed))
        reports[name] = runners[name](atlas, cfg)
    return reports


@dataclass
class LoopReport:
    """Largest path jump between adjacent loop samples against the loop mesh."""
    jump: float
    mesh: float
    compared: int
    chart_changes: int = 0
    witness: Witness = None

    @property
    def passed(self):
        return self.witness is None

    def to_json(self):
        return {'jump': _num(self.jump), 'mesh': _num(self.mesh), 'compared': self.compared,
                'chart_changes': self.chart_changes, 'passed': self.passed,
                'witness': None if self.witness is None else self.witness.to_json()}


def _loop_samples(loop, cfg):
    return [loop(k / cfg.samples) for k in range(cfg.samples + 1)]


def _mesh(queries):
    return max(query_distance(a, b) for a, b in zip(queries, queries[1:]))


def loop_discontinuity_test(mech, single_plan, loop, cfg):
    """
    Plan every sample of a closed loop of queries with one total planner. A jump of at least 100 times the loop mesh
    between adjacent samples is a discontinuity witness.
    """
    queries = _loop_samples(loop, cfg)
    mesh = _mesh(queries)
    paths = [single_plan(q) for q in queries]
    jumps = [path_distance(a, b) for a, b in zip(paths, paths[1:])]
    k = int(np.argmax(jumps))
    report = LoopReport(jumps[k], mesh, len(jumps))
    if jumps[k] >= 100.0 * mesh:
        report.witness = Witness('discontinuity', None, queries[k], jumps[k],
                                 "%s plan jumps by %.3g between t=%g and t=%g"
                                 % (mech.kind, jumps[k], k / cfg.samples, (k + 1) / cfg.samples))
    return report


def atlas_loop_test(atlas, loop, cfg):
    """
    loop_discontinuity_test for an atlas: jumps are only compared between adjacent samples planned by the same chart
    whose margins are at least the loop mesh.
    """
    queries = _loop_samples(loop, cfg)
    mesh = _mesh(queries)
    planned = []
    for q in queries:
        i, path = atlas.plan(q)
        chart = atlas[i]
        margin = chart.margin(q) if chart.margin is not None else math.inf
        planned.append((i, path, margin))
    jump, where, compared, changes = 0.0, None, 0, 0
    for k, ((i, p, m), (j, p2, m2)) in enumerate(zip(planned, planned[1:])):
        if i != j:
            changes += 1
            continue
        if m < mesh or m2 < mesh:
            continue
        compared += 1
        d = path_distance(p, p2)
        if d > jump:
            jump, where = d, k
    report = LoopReport(jump, mesh, compared, changes)
    if where is not None and jump >= 100.0 * mesh:
        report.witness = Witness('discontinuity', planned[where][0], queries[where], jump,
                                 "chart %d jumps by %.3g at t=%g" % (planned[where][0], jump, where / cfg.samples))
    return report
