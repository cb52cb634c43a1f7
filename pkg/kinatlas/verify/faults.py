# -*- coding: utf-8 -*-
"""
Deliberately broken atlases, one per contract the harness checks.
"""
import math
import logging

import numpy as np

from kinatlas.core.paths import MotionPath, path_concat
from kinatlas.errors import InvalidInput

logger = logging.getLogger(__name__)

FAULTS = ('endpoint', 'remove-chart', 'seam')


def inject_endpoint_offset(atlas, i, offset=1e-3):
    """Chart i overshoots: every plan is followed by a move of `offset` in every joint."""
    chart = atlas[i]
    logger.warning("Injecting an endpoint offset of %g into chart %d (%s)" % (offset, i, chart.label))

    def plan(q):
        path = chart.plan(q)
        return path_concat(path, MotionPath.linear(path.end, np.full(path.dim, offset)))

    charts = list(atlas.charts)
    charts[i] = chart.replace(plan=plan, label="%s+offset" % chart.label)
    return atlas.with_charts(charts)


def remove_chart(atlas, i):
    """Drop chart i. Its probe stays with the atlas so coverage checks still visit the stratum it served."""
    chart = atlas[i]
    logger.warning("Removing chart %d (%s) from %s" % (i, chart.label, atlas.label))
    extra = atlas.extra_probes
    if chart.probe is not None:
        extra = extra + ((chart.label, chart.probe),)
    return atlas.with_charts([c for k, c in enumerate(atlas.charts) if k != i], extra_probes=extra)


def inject_seam(atlas, i, period=1e-5):
    """
    Chart i gets a hidden branch seam: when floor(theta_1 / period) is odd the plan first winds once around joint 1.
    Endpoints are unchanged.
    """
    chart = atlas[i]
    logger.warning("Injecting a seam of period %g into chart %d (%s)" % (period, i, chart.label))

    def plan(q):
        path = chart.plan(q)
        if int(math.floor(q.config[0] / period)) % 2 == 0:
            return path
        loop = np.zeros(path.dim)
        loop[0] = 2.0 * math.pi
        return path_concat(MotionPath.linear(q.config, loop), path)

    charts = list(atlas.charts)
    charts[i] = chart.replace(plan=plan, label="%s+seam" % chart.label)
    return atlas.with_charts(charts)


def inject_fault(atlas, fault, chart=0):
    if fault in (None, 'none'):
        return atlas
    if fault == 'endpoint':
        return inject_endpoint_offset(atlas, chart)
    if fault == 'remove-chart':
        return remove_chart(atlas, chart)
    if fault == 'seam':
        return inject_seam(atlas, chart)
    raise InvalidInput("Unknown fault %r" % fault)
