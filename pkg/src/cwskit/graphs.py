"""Simple graphs, graph states, canonical labelling, and LC orbits.

A graph on ``n`` vertices is stored as bit-packed adjacency rows.  Every
graph also has an *edge mask*: edge (i, j) with i < j occupies bit
``E-1-(j(j-1)/2+i)`` where ``E = n(n-1)/2``.  With that layout, integer
order on masks is lexicographic order on the colex edge sequence, and the
canonical label of a graph is simply the minimum mask over all vertex
relabellings.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from . import kernels

MAX_EXHAUSTIVE_N = 8
MAX_CANONICAL_N = 10
MAX_AMPLITUDE_N = 12


def edge_count(n: int) -> int:
    return n * (n - 1) // 2


def edge_bit(i: int, j: int, n: int) -> int:
    """Bit position of edge (i, j), i < j, in the edge mask."""
    if i > j:
        i, j = j, i
    return edge_count(n) - 1 - (j * (j - 1) // 2 + i)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph; ``rows[i]`` is the neighbour bitmask of i."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        if len(self.rows) != self.n:
            raise ValueError("adjacency row count does not match n")
        for i, r in enumerate(self.rows):
            if not 0 <= r < (1 << self.n):
                raise ValueError("adjacency row out of range")
            if (r >> i) & 1:
                raise ValueError(f"self loop at vertex {i}")
            for j in range(i + 1, self.n):
                if ((r >> j) & 1) != ((self.rows[j] >> i) & 1):
                    raise ValueError("adjacency matrix is not symmetric")

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def from_edges(cls, n: int, edges: Sequence[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for i, j in edges:
            if i == j:
                raise ValueError(f"self loop at vertex {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i},{j}) out of range")
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(n, tuple(rows))

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "Graph":
        rows = [0] * n
        for j in range(n):
            for i in range(j):
                if (mask >> edge_bit(i, j, n)) & 1:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
        return cls(n, tuple(rows))

    @classmethod
    def ring(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << i) for i in range(n)))

    @classmethod
    def star(cls, n: int, center: int = 0) -> "Graph":
        return cls.from_edges(n, [(center, j) for j in range(n) if j != center])

    def edges(self) -> list[tuple[int, int]]:
        return [
            (i, j)
            for i in range(self.n)
            for j in range(i + 1, self.n)
            if (self.rows[i] >> j) & 1
        ]

    def mask(self) -> int:
        m = 0
        for i, j in self.edges():
            m |= 1 << edge_bit(i, j, self.n)
        return m

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted((r.bit_count() for r in self.rows), reverse=True))

    def permute(self, perm: Sequence[int]) -> "Graph":
        """Relabel vertices: old vertex i becomes perm[i]."""
        rows = [0] * self.n
        for i, j in self.edges():
            rows[perm[i]] |= 1 << perm[j]
            rows[perm[j]] |= 1 << perm[i]
        return Graph(self.n, tuple(rows))

    def has_edge(self, i: int, j: int) -> bool:
        return bool((self.rows[i] >> j) & 1)

    def rows_array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64)


def canonical_hex(g: Graph) -> str:
    width = max(1, (edge_count(g.n) + 3) // 4)
    return f"{canonical_form(g).mask:0{width}x}"


def mask_hex(n: int, mask: int) -> str:
    width = max(1, (edge_count(n) + 3) // 4)
    return f"{mask:0{width}x}"


# ---------------------------------------------------------------------------
# graph file format: "n <count>" then one "<i> <j>" line per edge

def parse_graph_file(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("n "):
        raise ValueError("graph file must start with 'n <count>'")
    try:
        n = int(lines[0].split()[1])
    except (IndexError, ValueError) as exc:
        raise ValueError("bad vertex count line") from exc
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line: {ln!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise ValueError(f"bad edge line: {ln!r}") from exc
        if i == j:
            raise ValueError(f"self loop: {ln!r}")
        if not (i < j):
            raise ValueError(f"edges must list i < j: {ln!r}")
        if (i, j) in seen:
            raise ValueError(f"duplicate edge: {ln!r}")
        seen.add((i, j))
        edges.append((i, j))
    return Graph.from_edges(n, edges)


def write_graph_file(g: Graph) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"{i} {j}" for i, j in g.edges())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# canonical labelling

@dataclass(frozen=True)
class CanonicalForm:
    n: int
    mask: int
    perm: tuple[int, ...]

    @property
    def label(self) -> tuple[int, int]:
        return (self.n, self.mask)


@lru_cache(maxsize=8)
def _perm_tables(n: int) -> tuple[tuple[tuple[int, ...], ...], np.ndarray]:
    """All vertex permutations plus their action on edge-mask bit positions."""
    perms = tuple(itertools.permutations(range(n)))
    nedge = edge_count(n)
    maps = np.zeros((len(perms), max(1, nedge)), dtype=np.int32)
    for p, perm in enumerate(perms):
        for j in range(n):
            for i in range(j):
                maps[p, edge_bit(i, j, n)] = edge_bit(perm[i], perm[j], n)
    return perms, maps


def _canonical_dfs(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Branch-and-bound search for the minimum edge mask over relabellings.

    Builds the mask prefix position by position (new vertex k fixes the edge
    bits towards positions 0..k-1) and prunes branches whose prefix already
    exceeds the best complete mask found.
    """
    n = g.n
    nedge = edge_count(n)
    rows = g.rows
    best_mask = [None]
    best_perm = [None]

    def descend(assigned: list[int], used: int, prefix: int, bits: int) -> None:
        k = len(assigned)
        if k == n:
            if best_mask[0] is None or prefix < best_mask[0]:
                best_mask[0] = prefix
                best_perm[0] = list(assigned)
            return
        scored = []
        for w in range(n):
            if (used >> w) & 1:
                continue
            block = 0
            for t in range(k):
                block = (block << 1) | ((rows[assigned[t]] >> w) & 1)
            scored.append((block, w))
        scored.sort()
        new_bits = bits + k
        for block, w in scored:
            new_prefix = (prefix << k) | block
            if best_mask[0] is not None:
                if new_prefix > (best_mask[0] >> (nedge - new_bits)):
                    break
            assigned.append(w)
            descend(assigned, used | (1 << w), new_prefix, new_bits)
            assigned.pop()

    descend([], 0, 0, 0)
    order = best_perm[0]
    perm = [0] * n
    for pos, w in enumerate(order):
        perm[w] = pos
    return best_mask[0], tuple(perm)


def canonical_form(g: Graph) -> CanonicalForm:
    """Minimum edge mask over all vertex permutations, plus a witness."""
    n = g.n
    if n > MAX_CANONICAL_N:
        raise ValueError(f"canonical_form supports n <= {MAX_CANONICAL_N}")
    if n == 1:
        return CanonicalForm(1, 0, (0,))
    if n <= MAX_EXHAUSTIVE_N and kernels.HAVE_NUMBA:
        perms, maps = _perm_tables(n)
        mask, pidx = kernels.canon_scan(g.mask(), maps)
        return CanonicalForm(n, int(mask), perms[pidx])
    mask, perm = _canonical_dfs(g)
    return CanonicalForm(n, mask, perm)


# ---------------------------------------------------------------------------
# enumeration

def enumerate_graphs(n: int, dedup: bool = False) -> Iterator[Graph]:
    """Every labelled n-vertex graph, or one per isomorphism class."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > MAX_EXHAUSTIVE_N:
        raise ValueError(
            f"exhaustive enumeration refused for n > {MAX_EXHAUSTIVE_N}; "
            "supply graphs from a file instead"
        )
    if dedup:
        for g, _size in isomorphism_classes(n):
            yield g
        return
    for mask in range(1 << edge_count(n)):
        yield Graph.from_mask(n, mask)


def isomorphism_classes(n: int) -> Iterator[tuple[Graph, int]]:
    """One minimum-mask representative per isomorphism class, with class size."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > MAX_EXHAUSTIVE_N:
        raise ValueError(f"isomorphism classes supported for n <= {MAX_EXHAUSTIVE_N}")
    nedge = edge_count(n)
    _perms, maps = _perm_tables(n)
    visited = np.zeros(max(1, ((1 << nedge) + 63) >> 6), dtype=np.uint64)
    for mask in range(1 << nedge):
        if (int(visited[mask >> 6]) >> (mask & 63)) & 1:
            continue
        min_mask, size = kernels.orbit_mark(mask, maps, visited)
        # first unvisited mask is always its orbit's minimum
        yield Graph.from_mask(n, int(min_mask)), int(size)


# ---------------------------------------------------------------------------
# local complementation and LC orbits

def local_complement(g: Graph, v: int) -> Graph:
    """Complement all edges among the neighbours of v."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    nb = g.rows[v]
    rows = list(g.rows)
    t = nb
    while t:
        i = (t & -t).bit_length() - 1
        t &= t - 1
        rows[i] ^= nb & ~(1 << i)
    return Graph(g.n, tuple(rows))


def lc_orbit(g: Graph) -> list[Graph]:
    """Isomorphism-class representatives reachable by local complementation."""
    start = canonical_form(g).mask
    seen = {start}
    frontier = [start]
    while frontier:
        mask = frontier.pop()
        cur = Graph.from_mask(g.n, mask)
        for v in range(g.n):
            nxt = canonical_form(local_complement(cur, v)).mask
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return [Graph.from_mask(g.n, m) for m in sorted(seen)]


def lc_orbits(n: int) -> Iterator[tuple[Graph, tuple[int, ...]]]:
    """One representative per LC+isomorphism orbit, with the orbit's
    isomorphism-class canonical masks."""
    if n > MAX_EXHAUSTIVE_N:
        raise ValueError(f"LC orbit enumeration supported for n <= {MAX_EXHAUSTIVE_N}")
    seen: set[int] = set()
    for rep, _size in isomorphism_classes(n):
        m = rep.mask()
        if m in seen:
            continue
        closure = lc_orbit(rep)
        masks = tuple(h.mask() for h in closure)
        seen.update(masks)
        yield Graph.from_mask(n, min(masks)), masks


def lc_orbit_representatives(n: int) -> Iterator[Graph]:
    for rep, _masks in lc_orbits(n):
        yield rep


# ---------------------------------------------------------------------------
# graph states

def graph_state_amplitudes(g: Graph) -> np.ndarray:
    """Amplitudes of |G>: entry x is (-1)^q(x) / 2^(n/2) with
    q(x) = sum_{i<j} adj[i][j] x_i x_j."""
    if g.n > MAX_AMPLITUDE_N:
        raise ValueError(f"graph_state_amplitudes supports n <= {MAX_AMPLITUDE_N}")
    signs = kernels.graph_signs(g.rows_array(), g.n)
    return signs.astype(np.float64) / math.sqrt(2.0**g.n)
