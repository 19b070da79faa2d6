from __future__ import annotations

import itertools

import pytest

from prismcactus.chains import _arcs_between
from prismcactus.structure import CircuitGraph
from prismcactus import oracle


@pytest.fixture(scope="session")
def fixtures():
    """Name -> PlaneGraph for every built-in fixture."""
    return {e.name: e.graph for e in oracle.builtin_fixtures()}


@pytest.fixture(scope="session")
def circuit_fixtures(fixtures):
    """Name -> CircuitGraph for every fixture that is a circuit graph."""
    out = {}
    for e in oracle.builtin_fixtures():
        if e.meta["circuit"]:
            out[e.name] = CircuitGraph.from_graph(e.graph, check=False)
    return out


def q_candidates(b: CircuitGraph, x: int, y: int):
    """The x..y outer arcs whose off-arc vertices all have degree >= 3."""
    out = []
    for q in _arcs_between(b.outer_cycle, x, y):
        off = set(b.outer_cycle) - set(q)
        if all(b.graph.degree(v) >= 3 for v in off):
            out.append(q)
    return out


def external_pairs(b: CircuitGraph):
    return itertools.permutations(b.outer_cycle, 2)
