"""Slow, obviously-correct reference implementations for small instances.

Exhaustive enumerations over all 2^C(p,2) labeled graphs validate the
counting recurrences and asymptotics; a dense eigensolver validates the
sparse power iteration.  Hard caps keep the whole oracle suite cheap; each
can be lifted with an explicit ``expensive=True``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .enumeration import BigCount
from .graphs import Graph

CAP_CONNECTED = 6
CAP_CONNECTED_EXPENSIVE = 7
CAP_REGULAR = 6
CAP_REGULAR_EXPENSIVE = 7
CAP_DENSE = 12
CAP_CATALAN = 14


def edge_order(p: int) -> list[tuple[int, int]]:
    """The pinned lexicographic edge ordering (0,1), (0,2), ..., (0,p-1),
    (1,2), ...: bit b of a mask encodes the b-th pair."""
    return [(i, j) for i in range(p) for j in range(i + 1, p)]


@dataclass(frozen=True)
class GraphMask:
    """A labeled graph on p vertices packed into the bits of an integer
    under the pinned edge ordering."""

    p: int
    bits: int

    def __post_init__(self) -> None:
        if self.p < 0:
            raise ValueError(f"order must be nonnegative, got {self.p}")
        if not 0 <= self.bits < (1 << comb(self.p, 2)):
            raise ValueError(f"bits out of range for p={self.p}: {self.bits}")

    def edges(self) -> list[tuple[int, int]]:
        order = edge_order(self.p)
        return [order[b] for b in range(len(order)) if self.bits >> b & 1]

    def degree_sequence(self) -> tuple[int, ...]:
        deg = [0] * self.p
        for i, j in self.edges():
            deg[i] += 1
            deg[j] += 1
        return tuple(deg)

    def is_connected(self) -> bool:
        """One component spanning all p vertices (isolated vertices count
        against connectivity)."""
        return _mask_components(self.p, self.bits, edge_order(self.p)) == 1

    def to_graph(self) -> Graph:
        return Graph(self.p, self.edges())


def iter_graph_masks(p: int):
    """All 2^C(p,2) labeled graphs on p vertices, as GraphMask values."""
    for bits in range(1 << comb(p, 2)):
        yield GraphMask(p, bits)


def _mask_components(p: int, bits: int, order: list[tuple[int, int]]) -> int:
    """Component count by union-find over the set bits."""
    parent = list(range(p))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    components = p
    b = bits
    while b:
        low = b & -b
        i, j = order[low.bit_length() - 1]
        b ^= low
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            components -= 1
    return components


def brute_count_connected(p: int, expensive: bool = False) -> BigCount:
    """Count connected labeled graphs on p vertices by trying every mask."""
    cap = CAP_CONNECTED_EXPENSIVE if expensive else CAP_CONNECTED
    if p < 1 or p > cap:
        raise ValueError(
            f"exhaustive connectivity count capped at p <= {cap} "
            f"(expensive={expensive}), got {p}"
        )
    order = edge_order(p)
    return sum(
        1 for bits in range(1 << len(order)) if _mask_components(p, bits, order) == 1
    )


def brute_count_regular(n: int, r: int, expensive: bool = False) -> BigCount:
    """Count labeled r-regular graphs on n vertices by trying every mask."""
    cap = CAP_REGULAR_EXPENSIVE if expensive else CAP_REGULAR
    if n < 1 or n > cap:
        raise ValueError(
            f"exhaustive regularity count capped at n <= {cap} "
            f"(expensive={expensive}), got {n}"
        )
    if r < 0 or r >= n:
        raise ValueError(f"degree must satisfy 0 <= r < n, got r={r}, n={n}")
    if (n * r) % 2 != 0:
        raise ValueError(f"parity violation: n*r = {n * r} must be even")
    order = edge_order(n)
    count = 0
    for bits in range(1 << len(order)):
        deg = [0] * n
        b = bits
        ok = True
        while b:
            low = b & -b
            i, j = order[low.bit_length() - 1]
            b ^= low
            deg[i] += 1
            deg[j] += 1
            if deg[i] > r or deg[j] > r:
                ok = False
                break
        if ok and all(d == r for d in deg):
            count += 1
    return count


def _try_symmetrize(h: np.ndarray) -> np.ndarray | None:
    """If the off-diagonal part M admits positive weights w with
    w_i M_ij = w_j M_ji, return the similar symmetric matrix, else None.
    This holds for every H of the form D0 + diag(c) A with c > 0."""
    n = h.shape[0]
    m = h - np.diag(np.diag(h))
    if not np.array_equal(m > 0, m.T > 0):
        return None
    w = np.zeros(n)
    for start in range(n):
        if w[start]:
            continue
        w[start] = 1.0
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if m[i, j] > 0 and not w[j]:
                    w[j] = w[i] * m[i, j] / m[j, i]
                    stack.append(j)
    s = np.sqrt(w)
    sym = (s[:, None] * h) / s[None, :]
    if not np.allclose(sym, sym.T, rtol=1e-10, atol=1e-12):
        return None
    return 0.5 * (sym + sym.T)


def dense_spectral_radius(h: np.ndarray, expensive: bool = False) -> float:
    """Spectral radius of a small dense nonnegative matrix.

    When the off-diagonal part is a positive-diagonal scaling of a symmetric
    pattern, a diagonal similarity makes the matrix symmetric and the
    symmetric eigensolver applies; otherwise the general eigensolver is
    used.  Either way this is the machine-precision reference the sparse
    power iteration is checked against.
    """
    h = np.asarray(h, dtype=float)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"matrix must be square, got shape {h.shape}")
    if np.any(h < 0):
        raise ValueError("matrix must be entrywise nonnegative")
    if not expensive and h.shape[0] > CAP_DENSE:
        raise ValueError(
            f"dense oracle capped at n <= {CAP_DENSE} (expensive=False), "
            f"got {h.shape[0]}"
        )
    if np.allclose(h, h.T, rtol=1e-12, atol=1e-14):
        vals = np.linalg.eigvalsh(0.5 * (h + h.T))
        return float(np.max(np.abs(vals)))
    sym = _try_symmetrize(h)
    if sym is not None:
        vals = np.linalg.eigvalsh(sym)
        return float(np.max(np.abs(vals)))
    return float(np.max(np.abs(np.linalg.eigvals(h))))


def brute_catalan(n: int, expensive: bool = False) -> BigCount:
    """(n-1)-th Catalan number by exact dynamic programming over Dyck paths
    (never-negative +/-1 walks of length 2(n-1) ending at 0)."""
    if n < 1:
        raise ValueError(f"index must be >= 1, got {n}")
    if not expensive and n > CAP_CATALAN:
        raise ValueError(f"Catalan oracle capped at n <= {CAP_CATALAN}, got {n}")
    m = n - 1
    ways = [0] * (m + 1)
    ways[0] = 1
    for _ in range(2 * m):
        nxt = [0] * (m + 1)
        for height, cnt in enumerate(ways):
            if not cnt:
                continue
            if height + 1 <= m:
                nxt[height + 1] += cnt
            if height - 1 >= 0:
                nxt[height - 1] += cnt
        ways = nxt
    return ways[0]
