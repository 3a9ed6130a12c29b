# SPDX-License-Identifier: Apache-2.0
"""Subgraph matching with simulated SIMT lanes."""

import json

from ._lanematch import (
    Graph,
    LanematchError,
    Query,
    clique4,
    erdos_renyi,
    oracle_count,
    rmat,
    skewed_fixture,
    skewed_query,
    star,
    triangle,
)
from . import _lanematch

__all__ = [
    "Graph",
    "LanematchError",
    "Query",
    "clique4",
    "count",
    "erdos_renyi",
    "oracle_count",
    "rmat",
    "skewed_fixture",
    "skewed_query",
    "star",
    "triangle",
]


def count(data, query, engine="fine", tau=1_000_000, workers=1, lane_width=32, unroll=1,
          steal=True, timeout=60.0):
    """Runs one search and returns the report as a dict."""
    return json.loads(
        _lanematch._count_json(data, query, engine, tau, workers, lane_width, unroll, steal,
                               timeout))
