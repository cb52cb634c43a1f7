# -*- coding: utf-8 -*-
"""
Partial roadmaps, atlases and deformations.

A PartialRoadmap (chart) plans a MotionPath for every query in its domain, starting exactly at the query's
configuration and ending at a configuration mapped to the query's target. An Atlas is an ordered list of charts;
plan() uses the first chart whose domain contains the query.

Charts may carry three optional hooks used by the verification harness:

    probe(rng, target=None)  -> Query   an exact member of the domain, needed for measure-zero domains
    neighbour(q, delta, rng) -> Query   a query of the same domain at distance about delta
    margin(q)                -> float   distance of q to the boundary of the domain
"""
import logging

from kinatlas.core.workspace import Query
from kinatlas.errors import NoChart
from kinatlas.verify.sampling import uniform_query

logger = logging.getLogger(__name__)


class PartialRoadmap(object):

    def __init__(self, label, domain, plan, probe=None, neighbour=None, margin=None):
        self.label = label
        self.domain = domain
        self.plan = plan
        self.probe = probe
        self.neighbour = neighbour
        self.margin = margin

    def contains(self, q):
        return bool(self.domain(q))

    def __call__(self, q):
        return self.plan(q)

    def replace(self, **changes):
        fields = dict(label=self.label, domain=self.domain, plan=self.plan, probe=self.probe,
                      neighbour=self.neighbour, margin=self.margin)
        fields.update(changes)
        return PartialRoadmap(**fields)

    def __repr__(self):
        return "<PartialRoadmap %s>" % self.label


class Atlas(object):

    def __init__(self, mechanism, charts, claimed_cover, label=None, sampler=None, extra_probes=()):
        self.mechanism = mechanism
        self.charts = tuple(charts)
        self.claimed_cover = claimed_cover
        self.label = label or mechanism.kind
        self.sampler = sampler
        # (label, probe) pairs of strata no chart is responsible for any more, kept for coverage checks
        self.extra_probes = tuple(extra_probes)

    def __len__(self):
        return len(self.charts)

    def __iter__(self):
        return iter(self.charts)

    def __getitem__(self, i):
        return self.charts[i]

    def chart_index(self, q):
        for i, chart in enumerate(self.charts):
            if chart.contains(q):
                return i
        raise NoChart("No chart of the %s atlas contains %r" % (self.label, q), witness=q)

    def plan(self, q):
        i = self.chart_index(q)
        return i, self.charts[i].plan(q)

    def sample_query(self, rng):
        """A random query of the claimed cover."""
        if self.sampler is not None:
            return self.sampler(rng)
        return uniform_query(self.mechanism, rng)

    def with_charts(self, charts, label=None, extra_probes=None):
        extra = self.extra_probes if extra_probes is None else extra_probes
        return Atlas(self.mechanism, charts, self.claimed_cover, label or self.label, self.sampler, extra)

    def __repr__(self):
        return "<Atlas %s, %d charts over %s>" % (self.label, len(self), self.claimed_cover)


def plan(atlas, q):
    """(chart index, path) from the first chart containing q."""
    return atlas.plan(q)


class Deformation(object):
    """
    A deformation D of a region of queries. track(q) returns D(q, .) as a pair (MotionPath of configurations,
    WorkPath of targets); horizontal deformations keep the target fixed.
    """

    def __init__(self, track, horizontal, label='', domain=None):
        self.track = track
        self.horizontal = horizontal
        self.label = label
        self.domain = domain

    def contains(self, q):
        return self.domain is None or bool(self.domain(q))

    def __call__(self, q, t):
        configs, targets = self.track(q)
        return Query(configs(t), targets(t))

    def end(self, q):
        configs, targets = self.track(q)
        return Query(configs.end, targets.end)

    def __repr__(self):
        return "<Deformation %s%s>" % (self.label, " (horizontal)" if self.horizontal else "")


class WorkRoadmap(object):
    """A chart of a motion planner on the workspace itself: plans WorkPaths from w0 to w1."""

    def __init__(self, label, domain, plan, probe=None, margin=None):
        self.label = label
        self.domain = domain
        self.plan = plan
        self.probe = probe
        self.margin = margin

    def contains(self, w0, w1):
        return bool(self.domain(w0, w1))

    def __repr__(self):
        return "<WorkRoadmap %s>" % self.label


class WorkAtlas(object):

    def __init__(self, kind, charts, label=None):
        self.kind = kind
        self.charts = tuple(charts)
        self.label = label or kind

    def __len__(self):
        return len(self.charts)

    def __getitem__(self, i):
        return self.charts[i]

    def chart_index(self, w0, w1):
        for i, chart in enumerate(self.charts):
            if chart.contains(w0, w1):
                return i
        raise NoChart("No chart of the %s work atlas contains %r -> %r" % (self.label, w0, w1), witness=(w0, w1))

    def plan(self, w0, w1):
        i = self.chart_index(w0, w1)
        return i, self.charts[i].plan(w0, w1)

    def __repr__(self):
        return "<WorkAtlas %s, %d charts>" % (self.label, len(self))
