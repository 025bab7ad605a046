"""Undirected simple graphs: core type, standard generators, edge-list I/O.

Vertices are dense 0-based integers.  ``Graph`` objects are immutable after
construction (treat all attributes as read-only) and may be shared freely
across threads.  All randomized generators take an explicit seed and are
deterministic for a fixed seed within one version of this package; the
random source is the stdlib Mersenne Twister (``random.Random``).
"""

from __future__ import annotations

import random
from typing import Iterable, Optional

import numpy as np

# Full-restart budget for the pairing-model regular generator.
DEFAULT_PAIRING_RESTARTS = 10_000

# Per-vertex degrees; sum is always even and equals twice the edge count.
DegreeSequence = tuple[int, ...]


class GraphParseError(ValueError):
    """Edge-list text could not be parsed; the message carries the line number."""


class GenerationError(RuntimeError):
    """A randomized generator exhausted its restart budget."""


class Graph:
    """Immutable undirected simple graph (no self-loops, no multi-edges).

    Attributes
    ----------
    n : int
        Vertex count; vertex ids are ``0..n-1``.
    edges : tuple[tuple[int, int], ...]
        Deduplicated edges as ``(i, j)`` with ``i < j``, sorted lexicographically.
    adj : tuple[tuple[int, ...], ...]
        Per-vertex sorted neighbor lists, symmetric with ``edges``.
    indptr, indices, row_ids, degrees : numpy arrays
        CSR-style views of the adjacency used for fast vectorized
        matrix-vector products; one directed entry per edge direction.
    """

    __slots__ = ("n", "edges", "adj", "indptr", "indices", "row_ids", "degrees")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()) -> None:
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {n}")
        canon: set[tuple[int, int]] = set()
        for i, j in edges:
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"vertex id out of range for n={n}: ({i}, {j})")
            canon.add((i, j) if i < j else (j, i))
        self.n = int(n)
        self.edges = tuple(sorted(canon))
        adj: list[list[int]] = [[] for _ in range(n)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        self.adj = tuple(tuple(sorted(a)) for a in adj)
        self.degrees = np.array([len(a) for a in self.adj], dtype=np.int64)
        self.indptr = np.concatenate(([0], np.cumsum(self.degrees)))
        self.indices = np.fromiter(
            (j for a in self.adj for j in a), dtype=np.int64, count=int(self.indptr[-1])
        )
        self.row_ids = np.repeat(np.arange(n, dtype=np.int64), self.degrees)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={len(self.edges)})"

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def neighbors(self, i: int) -> tuple[int, ...]:
        if not 0 <= i < self.n:
            raise ValueError(f"vertex id out of range: {i}")
        return self.adj[i]

    def degree(self, i: int) -> int:
        return len(self.neighbors(i))

    def degree_sequence(self) -> DegreeSequence:
        return tuple(int(d) for d in self.degrees)

    def is_regular(self) -> Optional[int]:
        """Common degree if every vertex has the same degree, else None."""
        if self.n == 0:
            return None
        d0 = len(self.adj[0])
        return d0 if all(len(a) == d0 for a in self.adj) else None


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format: ``#`` comments, first data line is the
    vertex count, every following data line is ``i j``.

    Duplicate and reversed edges collapse to one.  Raises GraphParseError
    with the offending line number for malformed input, self-loops, or
    out-of-range vertex ids.
    """
    n: Optional[int] = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if n is None:
            if len(tokens) != 1:
                raise GraphParseError(
                    f"line {lineno}: expected a single vertex count, got {line!r}"
                )
            try:
                n = int(tokens[0])
            except ValueError:
                raise GraphParseError(f"line {lineno}: vertex count is not an integer") from None
            if n < 0:
                raise GraphParseError(f"line {lineno}: vertex count must be nonnegative")
            continue
        if len(tokens) != 2:
            raise GraphParseError(f"line {lineno}: expected two integer tokens, got {line!r}")
        try:
            i, j = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphParseError(f"line {lineno}: edge endpoints are not integers") from None
        if i == j:
            raise GraphParseError(f"line {lineno}: self-loop at vertex {i}")
        if not (0 <= i < n and 0 <= j < n):
            raise GraphParseError(f"line {lineno}: vertex id out of range for n={n}")
        edges.append((i, j))
    if n is None:
        raise GraphParseError("line 1: missing vertex count line")
    return Graph(n, edges)


def serialize_edge_list(g: Graph, comment: Optional[str] = None) -> str:
    """Canonical text form; edges sorted lexicographically. Round-trips
    through parse_edge_list."""
    lines = []
    if comment is not None:
        lines.append(f"# {comment}")
    lines.append(str(g.n))
    lines.extend(f"{i} {j}" for i, j in g.edges)
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def write_graph(g: Graph, path, comment: Optional[str] = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_edge_list(g, comment=comment))


def generate_ring(n: int) -> Graph:
    """Cycle graph on n >= 3 vertices; every vertex has degree 2."""
    if n < 3:
        raise ValueError(f"ring needs at least 3 vertices, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def generate_complete(n: int) -> Graph:
    """Complete graph on n vertices."""
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def generate_random_regular(
    n: int, r: int, seed: int, max_restarts: int = DEFAULT_PAIRING_RESTARTS
) -> Graph:
    """Uniform-ish random simple r-regular graph via the pairing model.

    All n*r half-edge stubs are shuffled and paired; any loop or repeated
    pair triggers a full restart, which keeps the accepted sample unbiased.
    Raises GenerationError (reporting the attempt count) if max_restarts
    pairings all fail.
    """
    if r < 0 or r >= n:
        raise ValueError(f"degree must satisfy 0 <= r < n, got r={r}, n={n}")
    if (n * r) % 2 != 0:
        raise ValueError(f"parity violation: n*r = {n * r} must be even")
    rng = random.Random(seed)
    stubs = [v for v in range(n) for _ in range(r)]
    for _ in range(max_restarts):
        rng.shuffle(stubs)
        pairs: set[tuple[int, int]] = set()
        ok = True
        for k in range(0, len(stubs), 2):
            i, j = stubs[k], stubs[k + 1]
            if i == j:
                ok = False
                break
            e = (i, j) if i < j else (j, i)
            if e in pairs:
                ok = False
                break
            pairs.add(e)
        if ok:
            return Graph(n, pairs)
    raise GenerationError(
        f"pairing model failed for n={n}, r={r} after {max_restarts} restarts"
    )


def generate_barabasi_albert(n: int, m0: int, m: int, seed: int) -> Graph:
    """Preferential-attachment graph: complete seed on m0 vertices, then each
    arriving vertex attaches m distinct edges with probability proportional
    to current degree (rejection sampling over the degree-weighted pool).
    m0 == n degenerates to the complete seed graph with no arrivals.
    """
    if not (1 <= m <= m0 <= n):
        raise ValueError(f"need 1 <= m <= m0 <= n, got m={m}, m0={m0}, n={n}")
    rng = random.Random(seed)
    edges = [(i, j) for i in range(m0) for j in range(i + 1, m0)]
    # one entry per endpoint: sampling an index is sampling by degree
    pool: list[int] = [v for e in edges for v in e]
    for v in range(m0, n):
        targets: set[int] = set()
        while len(targets) < m:
            if pool:
                targets.add(pool[rng.randrange(len(pool))])
            else:
                # degenerate m0=1 start: no degrees yet, attach uniformly
                targets.add(rng.randrange(v))
        for t in targets:
            edges.append((t, v))
            pool.append(t)
        pool.extend([v] * m)
    return Graph(n, edges)


def generate_erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """G(n, p): each of the C(n, 2) pairs is an edge independently with
    probability p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    rng = random.Random(seed)
    edges = [
        (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p
    ]
    return Graph(n, edges)


def connected_component_count(g: Graph) -> int:
    """Number of maximal connected subgraphs, by breadth-first traversal."""
    seen = [False] * g.n
    count = 0
    for start in range(g.n):
        if seen[start]:
            continue
        count += 1
        queue = [start]
        seen[start] = True
        while queue:
            v = queue.pop()
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return count
