# -*- coding: utf-8 -*-
"""
Building atlases out of other atlases.

    section_pullback        rho'(c, w) = rho(c, I(w))               planners for F from planners for C and a section I
    section_pushforward     rho'(w, w1) = F o rho(I(w), w1)         planners for W from planners for F
    lift_pullback           rho'(c, w) = Lift(c, rho(F(c), w))      planners for a regular F from planners for W
    roadmap_to_deformation  D(q, t) = (rho(q)(t), w)
    deformation_to_roadmap  C-track of D, then the lift of the reversed W-track
    horizontal_pullback     C-track of a horizontal D, then rho at D(q, 1)
    categorical_roadmap     deformation_to_roadmap for a contraction to a point of the graph of F
    retarget_to_section     rho(c, F(c1)) followed by the reversed deformation of c1 onto the section image
    atlas_from_sections     union of section pullbacks whose branch domains cover W
"""
import math
import logging

import numpy as np

from kinatlas.core.angles import JointAngles, wrap_pi, torus_distance
from kinatlas.core.workspace import Torus, Query, work_distance, work_exp, work_log, work_perturb
from kinatlas.core.paths import MotionPath, path_concat, path_reverse, MIN_SAMPLES
from kinatlas.core.workpaths import WorkPath
from kinatlas.mechanisms import Branch, TorusIdentity
from kinatlas.lifting import lift_any
from kinatlas.roadmaps.base import PartialRoadmap, Atlas, Deformation, WorkRoadmap, WorkAtlas
from kinatlas.verify.sampling import uniform_config, uniform_work, sample_rng
from kinatlas.errors import BranchDomainError, CoverageGap, InvalidInput, ConstructionError
from kinatlas.settings import TOLERANCES

logger = logging.getLogger(__name__)


class Section(object):
    """
    A partial section I of F: a continuous map from a domain Q in W with F(I(w)) = w.

    `sampler(rng)` draws members of Q; without one, members are found as images of random configurations.
    `margin(w)` is an optional distance to the boundary of Q.
    """

    def __init__(self, mech, inverse, domain, label, sampler=None, margin=None):
        self.mech = mech
        self.inverse = inverse
        self.domain = domain
        self.label = label
        self.sampler = sampler
        self.margin = margin

    @classmethod
    def branch(cls, mech, branch=Branch.PRIMARY, domain=None, label=None, margin=None):
        return cls(mech, lambda w: mech.inverse(w, branch), domain or (lambda w: True),
                   label or "%s/%s" % (mech.kind, branch.value), margin=margin)

    def contains(self, w):
        return bool(self.domain(w))

    def __call__(self, w):
        if not self.contains(w):
            raise BranchDomainError("%r is outside the domain of the section %s" % (w, self.label))
        return self.inverse(w)

    def sample(self, rng):
        if self.sampler is not None:
            return self.sampler(rng)
        for _ in range(1000):
            w = uniform_work(self.mech, rng)
            if self.contains(w):
                return w
        raise ConstructionError("Could not sample the domain of the section %s" % self.label)

    def __repr__(self):
        return "<Section %s>" % self.label


def section_pullback(atlas_on_c, section, label=None):
    """Charts {(c, w) : (c, I(w)) in Q_i} planning rho_i(c, I(w))."""
    mech = section.mech
    charts = [_pullback_chart(chart, section) for chart in atlas_on_c]
    logger.info("Pulled back %d charts of %s along %s" % (len(charts), atlas_on_c.label, section.label))
    return Atlas(mech, charts, "C x %s" % section.label, label=label or "%s<-%s" % (section.label, atlas_on_c.label),
                 sampler=lambda rng: Query(uniform_config(mech.config_dim, rng), section.sample(rng)))


def _pullback_chart(chart, section):

    def inner(q):
        return Query(q.config, Torus(section(q.target)))

    def domain(q):
        return section.contains(q.target) and chart.contains(inner(q))

    def plan(q):
        return chart.plan(inner(q))

    probe = None
    if chart.probe is not None:
        def probe(rng, target=None):
            w = section.sample(rng) if target is None else target
            return Query(chart.probe(rng, target=Torus(section(w))).config, w)

    def neighbour(q, delta, rng):
        w = work_perturb(q.target, delta, rng)
        if not section.contains(w):
            return None
        shift = wrap_pi(section(w).as_array() - section(q.target).as_array())
        return Query(q.config.shifted(shift), w)

    def margin(q):
        m = chart.margin(inner(q)) if chart.margin is not None else math.inf
        if section.margin is not None:
            m = min(m, section.margin(q.target))
        return m

    return PartialRoadmap("%s<-%s" % (section.label, chart.label), domain, plan, probe=probe, neighbour=neighbour,
                          margin=margin)


def section_pushforward(atlas_for_f, section):
    """Work planners w -> w1 obtained by mapping the plans from I(w) through F."""
    mech = section.mech

    def work_chart(chart):
        def domain(w0, w1):
            return section.contains(w0) and chart.contains(Query(section(w0), w1))

        def plan(w0, w1):
            path = chart.plan(Query(section(w0), w1))
            points = [mech.forward(JointAngles.from_array(a)) for a in path.angles]
            points[0] = w0
            return WorkPath(path.times, points)

        margin = None
        if chart.margin is not None:
            def margin(w0, w1):
                return chart.margin(Query(section(w0), w1))

        return WorkRoadmap("F*%s" % chart.label, domain, plan, margin=margin)

    return WorkAtlas(mech.workspace_kind, [work_chart(ch) for ch in atlas_for_f],
                     label="F*%s" % atlas_for_f.label)


def categorical_section(chart, c0, mech):
    """I(w) = rho(c0, w)(1) on {w : (c0, w) in the chart's domain}; F(I(w)) = w up to the chart's endpoint error."""
    return Section(mech, lambda w: chart.plan(Query(c0, w)).end, lambda w: chart.contains(Query(c0, w)),
                   "csec(%s, %r)" % (chart.label, c0))


def lift_pullback(work_atlas, mech, opts=None, label=None):
    """Charts {(c, w) : (F(c), w) in Q_i} planning the lift of rho_i(F(c), w) from c."""
    charts = [_lift_chart(wc, mech, opts) for wc in work_atlas]
    logger.info("Lifted %d charts of %s through %s" % (len(charts), work_atlas.label, mech.kind))
    return Atlas(mech, charts, "C x W", label=label or "%s^%s" % (work_atlas.label, mech.kind))


def _lift_chart(wc, mech, opts):

    def domain(q):
        return wc.contains(mech.forward(q.config), q.target)

    def plan(q):
        alpha = wc.plan(mech.forward(q.config), q.target)
        return lift_any(mech, q.config, alpha, opts)

    probe = None
    if wc.probe is not None:
        def probe(rng, target=None):
            c = uniform_config(mech.config_dim, rng)
            _, w1 = wc.probe(rng, start=mech.forward(c))
            return Query(c, w1)

    def neighbour(q, delta, rng):
        d = rng.uniform(-1.0, 1.0, size=mech.config_dim)
        c = q.config.shifted(delta * d / np.max(np.abs(d)))
        moved = work_log(mech.forward(q.config), mech.forward(c))
        return Query(c, work_exp(q.target, moved))

    margin = None
    if wc.margin is not None:
        def margin(q):
            return wc.margin(mech.forward(q.config), q.target)

    return PartialRoadmap("lift(%s)" % wc.label, domain, plan, probe=probe, neighbour=neighbour, margin=margin)


def roadmap_to_deformation(r):
    """D(q, t) = (rho(q)(t), w): horizontal, ending in the graph of F."""
    return Deformation(lambda q: (r.plan(q), WorkPath.constant(q.target)), True, label="D(%s)" % r.label,
                       domain=r.contains)


def deformation_to_roadmap(deformation, mech, opts=None, label=None):
    """Follow the C-track of D, then lift the reversed W-track of D back to the original target."""

    def plan(q):
        configs, targets = deformation.track(q)
        back = lift_any(mech, configs.end, targets.reversed(), opts)
        return path_concat(configs, back)

    return PartialRoadmap(label or "rho(%s)" % deformation.label, deformation.contains, plan)


def horizontal_pullback(r, deformation, label=None):
    """Domain {q : D(q, 1) in dom r}; plan: C-track of D, then r at D(q, 1)."""
    if not deformation.horizontal:
        raise InvalidInput("horizontal_pullback needs a horizontal deformation, %s is not" % deformation.label)

    def domain(q):
        return deformation.contains(q) and r.contains(deformation.end(q))

    def plan(q):
        configs, _ = deformation.track(q)
        return path_concat(configs, r.plan(Query(configs.end, q.target)))

    return PartialRoadmap(label or "%s*%s" % (deformation.label, r.label), domain, plan, margin=r.margin)


def categorical_roadmap(contraction, mech, opts=None, label=None):
    """Roadmap on a region contracted by D to a single point (c0, w0) of the graph of F."""
    return deformation_to_roadmap(contraction, mech, opts, label=label or "cat(%s)" % contraction.label)


def straight_contraction(mech, c0, radius):
    """
    Contraction of the product ball {d(c, c0) <= radius, d(w, F(c0)) <= radius} onto (c0, F(c0)) along straight lines
    in C and geodesics in W.
    """
    c0 = c0 if isinstance(c0, JointAngles) else JointAngles.from_array(c0)
    w0 = mech.forward(c0)

    def domain(q):
        return (torus_distance(q.config, c0) <= radius + TOLERANCES.glue
                and work_distance(q.target, w0) <= radius + TOLERANCES.glue)

    def track(q):
        step = wrap_pi(c0.as_array() - q.config.as_array())
        configs = MotionPath.linear(q.config, step, MIN_SAMPLES)
        # land on c0 exactly
        configs = MotionPath(configs.times, np.vstack([configs.angles[:-1], c0.as_array()]))
        return configs, WorkPath.geodesic(q.target, w0)

    return Deformation(track, False, label="contract(%r, %g)" % (c0, radius), domain=domain)


class SectionDeformation(object):
    """
    Deformation of a set of configurations into the image of a section: track(c) runs from c to I(F(c)) and is
    constant on the image itself.
    """

    def __init__(self, label, domain, track):
        self.label = label
        self.domain = domain
        self.track = track

    def contains(self, c):
        return bool(self.domain(c))

    def end(self, c):
        return self.track(c).end


def universal_flip(eps=None, toward=Branch.PRIMARY):
    """
    Slides (t1, t2) from the other side of the poles onto the `toward` branch: (t1, t2) -> (t1 + pi, pi - t2), F
    agrees at both ends. Constant on the `toward` side.
    """
    eps = TOLERANCES.domain if eps is None else eps

    def track(c):
        primary = math.cos(c[1]) > 0.0
        if primary == (toward == Branch.PRIMARY):
            return MotionPath.constant(c)
        # latitude in (-pi/2, pi/2) on the primary side, in (pi/2, 3pi/2) on the other
        t2 = float(wrap_pi(c[1])) if primary else c[1]
        return MotionPath.linear(c, [math.pi, math.pi - 2.0 * t2], MIN_SAMPLES)

    return SectionDeformation("universal-flip>%s" % toward.value, lambda c: abs(math.cos(c[1])) > eps, track)


def wrist_flip(eps=None, toward=Branch.PRIMARY):
    """
    Slides (a, b, c) with b on the other side of {0, pi} onto the `toward` branch: (a, b, c) -> (a + pi, 2pi - b,
    c + pi), F agrees at both ends. Constant on the `toward` side.
    """
    eps = TOLERANCES.domain if eps is None else eps

    def track(c):
        primary = math.sin(c[1]) > 0.0
        if primary == (toward == Branch.PRIMARY):
            return MotionPath.constant(c)
        return MotionPath.linear(c, [math.pi, 2.0 * math.pi - 2.0 * c[1], math.pi], MIN_SAMPLES)

    return SectionDeformation("wrist-flip>%s" % toward.value, lambda c: abs(math.sin(c[1])) > eps, track)


def query_deformation(section_deformation):
    """The horizontal deformation (c, w) -> (track(c), w)."""
    return Deformation(lambda q: (section_deformation.track(q.config), WorkPath.constant(q.target)), True,
                       label=section_deformation.label, domain=lambda q: section_deformation.contains(q.config))


def retarget_to_section(r, deformation, mech):
    """
    A chart of the identity of C over queries (c, c1): plan rho(c, F(c1)), which ends on the section image at
    D(c1, 1), then run the deformation of c1 backwards.
    """

    def outer(q):
        return Query(q.config, mech.forward(q.target.angles))

    def domain(q):
        return deformation.contains(q.target.angles) and r.contains(outer(q))

    def plan(q):
        return path_concat(r.plan(outer(q)), path_reverse(deformation.track(q.target.angles)))

    probe = None
    if r.probe is not None:
        def probe(rng, target=None):
            if target is None:
                for _ in range(1000):
                    c1 = uniform_config(mech.config_dim, rng)
                    if deformation.contains(c1):
                        break
            else:
                c1 = target.angles
            return Query(r.probe(rng, target=mech.forward(c1)).config, Torus(c1))

    margin = None
    if r.margin is not None:
        def margin(q):
            return r.margin(outer(q))

    return PartialRoadmap("%s>%s" % (r.label, deformation.label), domain, plan, probe=probe, margin=margin)


def retargeted_atlas(atlas_for_f, deformation, label=None):
    """retarget_to_section applied to every chart; an atlas of the identity of C."""
    mech = atlas_for_f.mechanism
    charts = [retarget_to_section(ch, deformation, mech) for ch in atlas_for_f]
    return Atlas(TorusIdentity(mech.config_dim), charts, "C x C'",
                 label=label or "%s>%s" % (atlas_for_f.label, deformation.label))


def atlas_from_sections(sections, mech, samples=1000, seed=0, label=None):
    """
    Union of section pullbacks. `sections` is a list of (section, atlas on C) pairs; the section domains must cover
    W, which is checked on `samples` random workspace values plus members drawn from every section.
    """
    for i in range(samples):
        rng = sample_rng(seed, i)
        candidates = [uniform_work(mech, rng)] + [s.sample(rng) for s, _ in sections]
        for w in candidates:
            if not any(s.contains(w) for s, _ in sections):
                raise CoverageGap("No section domain contains %r" % w, witness=w)
    charts = []
    for section, atlas_on_c in sections:
        charts.extend(section_pullback(atlas_on_c, section).charts)
    logger.info("Assembled %d charts from %d sections" % (len(charts), len(sections)))
    return Atlas(mech, charts, "C x W", label=label or "sections(%s)" % mech.kind)
