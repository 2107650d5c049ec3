"""Deterministic test corpus of small splice diagrams.

Inner vertices carry pairwise coprime weights from {1, 2, 3, 5, 7} and have
at most four edges; multiplicities lie in {-3..-1, 1..3}.  Single-vertex
diagrams are enumerated exhaustively (up to isomorphism); diagrams with two
or three inner vertices (necessarily a path) are sampled with a seeded RNG,
since the full product of weights, terminal kinds and multiplicities is far
beyond desk scale.  Every structure gets a fixed set of multiplicity
patterns: all ones, random positive, random negative and random mixed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product

from .diagram import ARROW, BOUND, NODE, Edge, SpliceDiagram, canonical_form
from .dsl import parse_diagram

PRIMES = (2, 3, 5, 7)
MULTS = (1, 2, 3)


@dataclass(frozen=True)
class CorpusConfig:
    seed: int = 20240611
    n_double: int = 150
    n_triple: int = 120
    max_degree: int = 4


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    diagram: SpliceDiagram


NAMED = {
    "trefoil": "node v; bound v:2; bound v:3; arrow v:1 m=1;",
    "hopf-node": "node v; arrow v:2 m=1; arrow v:3 m=1;",
    "hopf-node-mixed": "node v; arrow v:2 m=1; arrow v:3 m=-1;",
    "type-link": "link a1 <-> a2 m=(1,1);",
    "type-link-mixed": "link a1 <-> a2 m=(1,-1);",
    "iterated-cable": "node u; node v; edge u:1 -- v:13; bound u:2; bound u:3; arrow v:2 m=1; bound v:1;",
    "unit-node": "node v; arrow v:1 m=1; arrow v:1 m=1;",
}


def weight_sets(k: int) -> list[tuple[int, ...]]:
    """Sorted pairwise coprime k-tuples over {1, 2, 3, 5, 7}."""
    out = []
    for j in range(0, min(k, len(PRIMES)) + 1):
        for ps in combinations(PRIMES, j):
            out.append(tuple(sorted((1,) * (k - j) + ps)))
    return out


def _mult_patterns(n_arrows: int, rng: random.Random) -> list[tuple[int, ...]]:
    pats = [(1,) * n_arrows]
    pos = tuple(rng.choice(MULTS) for _ in range(n_arrows))
    pats.append(pos)
    pats.append(tuple(-m for m in (rng.choice(MULTS) for _ in range(n_arrows))))
    if n_arrows >= 2:
        signs = [1] * n_arrows
        while len(set(signs)) == 1:
            signs = [rng.choice((1, -1)) for _ in range(n_arrows)]
        pats.append(tuple(s * rng.choice(MULTS) for s in signs))
    return list(dict.fromkeys(pats))


def _assemble(nodes, inner, leaves, mults) -> SpliceDiagram:
    """nodes: ids; inner: (u, wu, v, wv); leaves: (node, weight, kind)."""
    kinds = {v: NODE for v in nodes}
    edges = [Edge(u, v, wu, wv) for u, wu, v, wv in inner]
    ms = {}
    na = nb = 0
    it = iter(mults)
    for at, w, kind in leaves:
        if kind == ARROW:
            na += 1
            tid = f"a{na}"
            ms[tid] = next(it)
        else:
            nb += 1
            tid = f"b{nb}"
        kinds[tid] = kind
        edges.append(Edge(at, tid, w, None))
    return SpliceDiagram.build(kinds, edges, ms)


def _single_structures(max_degree: int):
    for k in range(2, max_degree + 1):
        for ws in weight_sets(k):
            for kinds in product((ARROW, BOUND), repeat=k):
                if ARROW in kinds:
                    yield ["v"], [], [("v", w, t) for w, t in zip(ws, kinds)]


def _random_structure(n_nodes: int, rng: random.Random, max_degree: int):
    ids = ["u", "v", "w"][:n_nodes]
    inner_count = {v: 0 for v in ids}
    for i in range(n_nodes - 1):
        inner_count[ids[i]] += 1
        inner_count[ids[i + 1]] += 1
    weights = {}
    for v in ids:
        k = rng.randint(max(2, inner_count[v] + 1), max_degree)
        ws = list(rng.choice(weight_sets(k)))
        rng.shuffle(ws)
        weights[v] = ws
    inner, leaves = [], []
    for i in range(n_nodes - 1):
        u, v = ids[i], ids[i + 1]
        inner.append((u, weights[u].pop(), v, weights[v].pop(0)))
    for v in ids:
        for w in weights[v]:
            leaves.append((v, w, rng.choice((ARROW, ARROW, BOUND))))
    if not any(k == ARROW for _, _, k in leaves):
        at, w, _ = leaves[0]
        leaves[0] = (at, w, ARROW)
    return ids, inner, leaves


def generate(cfg: CorpusConfig = CorpusConfig()) -> list[CorpusEntry]:
    rng = random.Random(cfg.seed)
    seen: set[str] = set()
    out: list[CorpusEntry] = []

    def add(name, d):
        key = canonical_form(d)
        if key not in seen:
            seen.add(key)
            out.append(CorpusEntry(name, d))

    for name, text in NAMED.items():
        add(name, parse_diagram(text))

    structures = list(_single_structures(cfg.max_degree))
    for n_nodes, count in ((2, cfg.n_double), (3, cfg.n_triple)):
        for _ in range(count):
            structures.append(_random_structure(n_nodes, rng, cfg.max_degree))

    for i, (nodes, inner, leaves) in enumerate(structures):
        n_arrows = sum(1 for _, _, k in leaves if k == ARROW)
        for j, ms in enumerate(_mult_patterns(n_arrows, rng)):
            add(f"g{len(nodes)}-{i}-{j}", _assemble(nodes, inner, leaves, ms))
    return out


_CACHE: dict = {}


def corpus(cfg: CorpusConfig = CorpusConfig()) -> list[CorpusEntry]:
    if cfg not in _CACHE:
        _CACHE[cfg] = generate(cfg)
    return _CACHE[cfg]
