"""Seeded and exhaustive model grids for tests and the CLI."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import comb

from .errors import GridCapError
from .kripke import KripkeModel, Vocabulary

EXHAUSTIVE_CAP = 10**6


@dataclass(frozen=True)
class GridSpec:
    """Envelope of a model grid.

    ``count`` is the number of random models to draw; with ``exhaustive``
    set, every model up to the caps is enumerated instead (refused above
    :data:`EXHAUSTIVE_CAP`).
    """

    max_nodes: int
    max_degree: int
    channels: int = 1
    props: int = 0
    seed: int = 0
    count: int = 0
    exhaustive: bool = False

    def vocabulary(self):
        return Vocabulary(frozenset(range(self.props)), self.channels)


def _out_sets(n, max_degree):
    """All successor sets over 0..n-1 of size <= max_degree, by size then lex."""
    out = []
    for size in range(min(max_degree, n) + 1):
        out.extend(itertools.combinations(range(n), size))
    return out


def exhaustive_count(spec):
    """Number of models the exhaustive enumeration would produce."""
    total = 0
    for n in range(1, spec.max_nodes + 1):
        sets = sum(comb(n, j) for j in range(min(spec.max_degree, n) + 1))
        total += sets ** (n * spec.channels) * 2 ** (n * spec.props)
    return total


def _exhaustive(spec):
    vocab = spec.vocabulary()
    for n in range(1, spec.max_nodes + 1):
        nodes = range(n)
        out_sets = _out_sets(n, spec.max_degree)
        slots = [(w, alpha) for w in nodes for alpha in range(1, spec.channels + 1)]
        val_sets = [tuple(itertools.compress(nodes, bits))
                    for bits in itertools.product((0, 1), repeat=n)]
        for assignment in itertools.product(out_sets, repeat=len(slots)):
            edges = [
                (alpha, w, v)
                for (w, alpha), targets in zip(slots, assignment)
                for v in targets
            ]
            for val_combo in itertools.product(val_sets, repeat=spec.props):
                valuation = {p: val_combo[p] for p in range(spec.props)}
                yield KripkeModel(nodes, vocab, edges, valuation)


def _random(spec):
    vocab = spec.vocabulary()
    rng = random.Random(spec.seed)
    for _ in range(spec.count):
        n = rng.randint(1, spec.max_nodes)
        nodes = list(range(n))
        edges = []
        for w in nodes:
            for alpha in range(1, spec.channels + 1):
                degree = rng.randint(0, min(spec.max_degree, n))
                for v in rng.sample(nodes, degree):
                    edges.append((alpha, w, v))
        valuation = {
            p: [w for w in nodes if rng.random() < 0.5] for p in range(spec.props)
        }
        yield KripkeModel(nodes, vocab, edges, valuation)


def gen_grid(spec):
    """Stream of models per the grid spec; reproducible for a fixed seed."""
    if spec.exhaustive:
        implied = exhaustive_count(spec)
        if implied > EXHAUSTIVE_CAP:
            raise GridCapError(
                f"exhaustive grid would contain {implied} models, cap is {EXHAUSTIVE_CAP}"
            )
        return _exhaustive(spec)
    return _random(spec)
