"""Random generating sets, Cayley and Latin square graphs, and diameter tests.

The random model: each group element (or Latin square symbol) joins the
generating set S independently with probability p; the graph joins g and h
when h g^-1 or g h^-1 lies in S.  Loops and multiplicities are discarded, so
only the symmetric closure S union S^-1 minus the identity matters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .groups import GroupTable

INFINITE = math.inf


def stream(master_seed: int, *key: int) -> np.random.Generator:
    """A counter-based (Philox) generator derived from a master seed and a
    split key, reproducible independently of execution order."""
    ss = np.random.SeedSequence(entropy=master_seed, spawn_key=tuple(key))
    return np.random.Generator(np.random.Philox(ss))


@dataclass(frozen=True)
class GeneratorSet:
    """Sampled generating set over a group: raw membership plus the symmetric
    closure (S union S^-1, identity removed) that actually determines edges."""

    member: np.ndarray
    closure: np.ndarray

    @property
    def size(self) -> int:
        return int(self.member.sum())

    def closure_indices(self) -> np.ndarray:
        return np.flatnonzero(self.closure).astype(np.int64)


def generator_set(g: GroupTable, member: np.ndarray) -> GeneratorSet:
    """Wrap an explicit membership vector with its symmetric closure."""
    member = np.asarray(member, dtype=bool).copy()
    closure = member | member[g.inv_all()]
    closure[0] = False
    member.setflags(write=False)
    closure.setflags(write=False)
    return GeneratorSet(member=member, closure=closure)


def sample_generators(g: GroupTable, p: float, rng: np.random.Generator) -> GeneratorSet:
    """Include each of the n elements independently with probability p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    return generator_set(g, rng.random(g.order) < p)


@dataclass(frozen=True)
class CayleyGraph:
    """Undirected simple graph on 0..order-1 with dense boolean adjacency.

    ``source`` records how it was built: "cayley" graphs are vertex transitive
    (right multiplication is an automorphism), which diameter tests exploit.
    """

    order: int
    adj: np.ndarray
    source: str  # "cayley" | "latin"

    def degrees(self) -> np.ndarray:
        return self.adj.sum(axis=1)

    def edge_count(self) -> int:
        return int(self.adj.sum()) // 2

    def edges(self):
        us, vs = np.nonzero(np.triu(self.adj, k=1))
        return list(zip(us.tolist(), vs.tolist()))

    def to_edge_text(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.edges())


def build_cayley(g: GroupTable, s: GeneratorSet) -> CayleyGraph:
    """Adjacency by right-translating the identity row: g ~ h iff h g^-1 is in
    the closure."""
    if g.backing != "dense":
        raise ValueError("adjacency materialisation needs a dense-backed group")
    closure = s.closure
    adj = closure[g._table[:, g._inv]].T
    np.fill_diagonal(adj, False)
    adj.setflags(write=False)
    return CayleyGraph(order=g.order, adj=adj, source="cayley")


@dataclass(frozen=True)
class LatinSquare:
    """n x n array over symbols 0..n-1, each appearing once per row and column."""

    order: int
    entries: np.ndarray

    def __post_init__(self):
        validate_latin(self.entries)
        self.entries.setflags(write=False)

    def to_text(self) -> str:
        lines = [str(self.order)]
        lines += [" ".join(str(int(v)) for v in row) for row in self.entries]
        return "\n".join(lines) + "\n"


def validate_latin(entries: np.ndarray) -> None:
    n = entries.shape[0]
    if entries.shape != (n, n):
        raise ValueError("Latin square entries must be square")
    idx = np.arange(n)
    if not (np.sort(entries, axis=1) == idx).all():
        raise ValueError("a row is not a permutation of the symbols")
    if not (np.sort(entries, axis=0) == idx[:, None]).all():
        raise ValueError("a column is not a permutation of the symbols")


def latin_square(entries) -> LatinSquare:
    entries = np.ascontiguousarray(entries, dtype=np.uint16)
    return LatinSquare(order=int(entries.shape[0]), entries=entries)


def load_latin_text(text: str) -> LatinSquare:
    tokens = text.split()
    n = int(tokens[0])
    if len(tokens) != 1 + n * n:
        raise ValueError(f"expected {n * n} entries, found {len(tokens) - 1}")
    return latin_square(np.array(tokens[1:], dtype=np.int64).reshape(n, n))


def latin_from_group(g: GroupTable) -> LatinSquare:
    """The square L[x, y] = x * y^-1, whose Latin square graph coincides with
    the Cayley graph for every generating set."""
    if g.backing != "dense":
        raise ValueError("latin_from_group needs a dense-backed group")
    return latin_square(g._table[:, g._inv])


def build_latin_graph(l: LatinSquare, s: GeneratorSet | np.ndarray) -> CayleyGraph:
    """Join i and j iff L[i, j] or L[j, i] is a sampled symbol; loops dropped."""
    member = s.member if isinstance(s, GeneratorSet) else np.asarray(s, dtype=bool)
    if member.shape[0] != l.order:
        raise ValueError("symbol membership size does not match the square")
    adj = member[l.entries] | member[l.entries.T]
    np.fill_diagonal(adj, False)
    adj.setflags(write=False)
    return CayleyGraph(order=l.order, adj=adj, source="latin")


# -- diameter ------------------------------------------------------------------


def has_diameter_at_most_2(graph: CayleyGraph) -> bool:
    """Every pair of distinct vertices adjacent or sharing a neighbour.

    Cayley sources are vertex transitive, so only pairs (identity, x) are
    tested; Latin sources test all pairs.  The pair test is an adjacency bit,
    then a packed 64-bit word intersection of the two rows.
    """
    n = graph.order
    if n <= 1:
        return True
    words = _kernels.fallback.pack_rows(graph.adj)
    if graph.source == "cayley":
        row0 = words[0]
        near = graph.adj[0] | (words & row0).any(axis=1)
        return bool(near[1:].all())
    for i in range(n - 1):
        need = ~graph.adj[i, i + 1:]
        if not need.any():
            continue
        rows = words[i + 1:][need]
        if not (rows & words[i]).any(axis=1).all():
            return False
    return True


def distances_from(graph: CayleyGraph, v: int) -> np.ndarray:
    """BFS distance vector from v; unreachable vertices get inf."""
    n = graph.order
    dist = np.full(n, INFINITE)
    frontier = np.zeros(n, dtype=bool)
    frontier[v] = True
    visited = frontier.copy()
    d = 0
    dist[v] = 0.0
    while frontier.any():
        d += 1
        nxt = graph.adj[frontier].any(axis=0) & ~visited
        dist[nxt] = d
        visited |= nxt
        frontier = nxt
    return dist


def diameter(graph: CayleyGraph) -> float:
    """Exact diameter; INFINITE when disconnected.  Cayley sources need only
    the eccentricity of the identity."""
    if graph.order <= 1:
        return 0.0
    if graph.source == "cayley":
        return float(distances_from(graph, 0).max())
    worst = 0.0
    for v in range(graph.order):
        ecc = distances_from(graph, v).max()
        if math.isinf(ecc):
            return INFINITE
        worst = max(worst, float(ecc))
    return worst


# -- random Latin squares ------------------------------------------------------


def random_latin_square(n: int, rng: np.random.Generator) -> LatinSquare:
    """Sample a Latin square via the +-1 move chain from the cyclic square.

    Runs n^3 proper moves of burn-in; improper states (a single -1 cell in the
    incidence cube) are resolved by continuing the chain from the defect.
    """
    if n < 1:
        raise ValueError("order must be positive")
    if n == 1:
        return latin_square([[0]])
    if n == 2:
        # the chain alternates deterministically between the two squares of
        # order 2, so a fixed burn-in count would always land on the same one
        first = int(rng.integers(0, 2))
        return latin_square([[first, 1 - first], [1 - first, first]])
    return latin_square(_kernels.jm_square(n, rng))
