from __future__ import annotations

from functools import lru_cache

import pytest

from cubecheck import generators as gen
from cubecheck.graph import build_graph, cartesian_product

ACCEPTANCE_LINES: list[str] = []


def _naphthalene():
    # two hexagons sharing the edge 0-5
    return build_graph(10, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0),
                            (5, 6), (6, 7), (7, 8), (8, 9), (9, 0)])


def _tree():
    return build_graph(8, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (3, 6), (6, 7)])


@lru_cache(maxsize=None)
def partial_cube_corpus() -> dict:
    """Named partial cubes of several shapes, cubic and not."""
    corpus = {
        "K2": gen.complete_k2(),
        "P5": gen.path(5),
        "K1,3": gen.complete_bipartite(1, 3),
        "tree8": _tree(),
        "C4": gen.cycle(4),
        "C6": gen.cycle(6),
        "C8": gen.cycle(8),
        "C10": gen.cycle(10),
        "Q3": gen.hypercube(3),
        "Q4": gen.hypercube(4),
        "ladder4": cartesian_product(gen.complete_k2(), gen.path(4)),
        "grid3x3": cartesian_product(gen.path(3), gen.path(3)),
        "naphthalene": _naphthalene(),
        "X": gen.graph_X(),
        "G10_3": gen.generalized_petersen(10, 3),
        "ML3": gen.middle_levels(3),
        "permutahedron": gen.cubic_permutahedron(),
        "trunc_cubocta": gen.truncated_cuboctahedron(),
        "trunc_icosidodeca": gen.truncated_icosidodecahedron(),
    }
    for k in range(4, 17, 2):
        corpus[f"prism{k}"] = gen.prism(k)
    return corpus


@lru_cache(maxsize=None)
def non_partial_cubes() -> dict:
    return {
        "C5": gen.cycle(5),
        "K2,3": gen.complete_bipartite(2, 3),
        "K3,3": gen.complete_bipartite(3, 3),
        "K4": build_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        "Petersen": gen.generalized_petersen(5, 2),
        "prism5": gen.prism(5),
        "K2,4": gen.complete_bipartite(2, 4),
    }


@lru_cache(maxsize=None)
def cubic_vt_corpus() -> dict:
    return {k: g for k, g in partial_cube_corpus().items()
            if k in ("Q3", "G10_3", "ML3", "permutahedron", "trunc_cubocta", "trunc_icosidodeca")
            or k.startswith("prism")}


@pytest.fixture
def acceptance():
    """Record one result line per acceptance criterion."""

    def record(number: int, passed: bool, detail: str) -> None:
        line = f"ACCEPTANCE {number}: {'PASS' if passed else 'FAIL'} - {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
