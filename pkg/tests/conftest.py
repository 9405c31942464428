from __future__ import annotations

import functools
import random
import sys
from itertools import combinations
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from specdet.graph import build_graph  # noqa: E402
from specdet.io import parse_graph6  # noqa: E402


def random_graph(rng: random.Random, n: int, p: float = 0.5):
    return build_graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def planted_gm(rng: random.Random):
    """Random graph with a valid GM block {0..b-1} and at least one half-degree outsider."""
    b = rng.choice((2, 4, 6))
    n = b + rng.randint(1, 7)
    edges = set()
    k = rng.randrange(b)  # regular block: circulant-like pattern
    for i in range(b):
        for j in range(1, k // 2 + 1):
            edges.add(tuple(sorted((i, (i + j) % b))))
    if k % 2 and b % 2 == 0:
        for i in range(b // 2):
            edges.add((i, i + b // 2))
    blk = list(range(b))
    outs = list(range(b, n))
    modes = [rng.choice(("none", "half", "all")) for _ in outs]
    modes[0] = "half"
    for w, mode in zip(outs, modes):
        if mode == "all":
            chosen = blk
        elif mode == "half":
            chosen = rng.sample(blk, b // 2)
        else:
            chosen = []
        edges.update((v, w) for v in chosen)
    for u in outs:
        for w in outs:
            if u < w and rng.random() < 0.5:
                edges.add((u, w))
    return build_graph(n, sorted(edges)), blk


@functools.lru_cache(maxsize=None)
def regular_10_4():
    from specdet.census import enumerate_regular

    return tuple(enumerate_regular(10, 4))


@functools.lru_cache(maxsize=None)
def regular_nics_pairs():
    """A-cospectral classes of size >= 2 among connected 4-regular graphs on 10 vertices."""
    from specdet.census import cospectral_classes

    return tuple(tuple(c) for c in cospectral_classes(regular_10_4(), ["A"]) if len(c) > 1)


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture(scope="session")
def nics_pairs():
    return regular_nics_pairs()


@pytest.fixture
def g6():
    return parse_graph6


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS):
        terminalreporter.write_line(line)
