"""k-clique and d-uniform k-hyperclique search.

Vertices are 0-based here; the file formats are 1-based.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import UsageError

log = logging.getLogger(__name__)

MM_CAP = 200_000


def _bits(m: int) -> List[int]:
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return out


@dataclass(frozen=True)
class Graph:
    n: int
    rows: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        if len(self.rows) != self.n:
            raise UsageError("adjacency has the wrong number of rows")
        for v, row in enumerate(self.rows):
            if (row >> v) & 1:
                raise UsageError(f"self-loop at vertex {v}")
            if row >> self.n:
                raise UsageError(f"vertex {v} has a neighbor out of range")
            for u in _bits(row):
                if not (self.rows[u] >> v) & 1:
                    raise UsageError("adjacency is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise UsageError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise UsageError(f"edge ({u}, {v}) out of range")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    def edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.rows[u]) if u < v]

    def adjacent(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def with_edge(self, u: int, v: int) -> "Graph":
        return Graph.from_edges(self.n, self.edges() + [(u, v)])


@dataclass(frozen=True)
class Hypergraph:
    d: int
    n: int
    edges: FrozenSet[Tuple[int, ...]]

    def __post_init__(self):
        if self.d < 1:
            raise UsageError("uniformity must be positive")
        norm = set()
        for e in self.edges:
            t = tuple(sorted(e))
            if len(t) != self.d or len(set(t)) != self.d:
                raise UsageError(f"hyperedge {e} is not a {self.d}-set")
            if t[0] < 0 or t[-1] >= self.n:
                raise UsageError(f"hyperedge {e} out of range")
            norm.add(t)
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_graph(cls, G: Graph) -> "Hypergraph":
        return cls(2, G.n, frozenset(G.edges()))


def is_clique(G: Graph, S: Iterable[int]) -> bool:
    S = list(S)
    return all(G.adjacent(u, v) for u, v in combinations(S, 2))


def is_hyperclique(H: Hypergraph, S: Iterable[int]) -> bool:
    S = sorted(S)
    return all(e in H.edges for e in combinations(S, H.d))


def find_clique_bruteforce(G: Graph, k: int) -> Optional[Tuple[int, ...]]:
    """Lexicographically first k-clique."""
    if k < 0:
        raise UsageError("negative clique size")
    if k > G.n:
        return None
    chosen: List[int] = []

    def go(cand: int, need: int) -> bool:
        if need == 0:
            return True
        while cand and bin(cand).count("1") >= need:
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            chosen.append(v)
            if go(cand & G.rows[v], need - 1):
                return True
            chosen.pop()
        return False

    if go((1 << G.n) - 1, k):
        return tuple(chosen)
    return None


def cliques_of_size(G: Graph, s: int) -> List[int]:
    """All s-cliques as vertex bitmasks."""
    out: List[int] = []

    def go(cand: int, cur: int, need: int) -> None:
        if need == 0:
            out.append(cur)
            return
        while cand:
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            go(cand & G.rows[v], cur | (1 << v), need - 1)

    go((1 << G.n) - 1, 0, s)
    return out


def _common_neighbors(G: Graph, clique: int) -> int:
    m = (1 << G.n) - 1
    for v in _bits(clique):
        m &= G.rows[v]
    return m


def _adjacency_rows(G: Graph, left: Sequence[int], right: Sequence[int]) -> List[int]:
    """Row p has bit q set iff left[p] and right[q] together form a clique."""
    rows = []
    for p in left:
        nb = _common_neighbors(G, p)
        row = 0
        for q, c in enumerate(right):
            if c & ~nb == 0:
                row |= 1 << q
        rows.append(row)
    return rows


def bool_matmul(A: Sequence[int], B: Sequence[int]) -> List[int]:
    """Boolean product of bit-row matrices: row i of the result ORs the rows B[j] with A[i][j] = 1."""
    out = []
    for row in A:
        acc = 0
        for j in _bits(row):
            acc |= B[j]
        out.append(acc)
    return out


def find_clique_mm(G: Graph, k: int, cap: int = MM_CAP) -> Optional[Tuple[int, ...]]:
    """k-clique via triangle detection in the graph of small cliques.

    k is split into parts of sizes about k/3; a k-clique is a triangle whose
    three corners are cliques of those sizes.  The triangle test is a boolean
    matrix product over bit rows.
    """
    if k < 3:
        return find_clique_bruteforce(G, k)
    if k > G.n:
        return None
    k1 = -(-k // 3)
    k2 = -(-(k - k1) // 2)
    k3 = k - k1 - k2
    if comb(G.n, k1) > cap:
        log.warning("clique list for size %d exceeds cap %d; using brute force", k1, cap)
        return find_clique_bruteforce(G, k)
    lists = {s: cliques_of_size(G, s) for s in {k1, k2, k3}}
    A, B, C = lists[k1], lists[k2], lists[k3]
    if not (A and B and C):
        return None
    AB = _adjacency_rows(G, A, B)
    BC = _adjacency_rows(G, B, C)
    AC = _adjacency_rows(G, A, C)
    P = bool_matmul(AB, BC)
    for a, row in enumerate(P):
        hit = row & AC[a]
        if not hit:
            continue
        for b in _bits(AB[a]):
            both = BC[b] & AC[a]
            if both:
                c = (both & -both).bit_length() - 1
                S = A[a] | B[b] | C[c]
                out = tuple(_bits(S))
                assert len(out) == k and is_clique(G, out)
                return out
    return None


def find_hyperclique(H: Hypergraph, k: int) -> Optional[Tuple[int, ...]]:
    """First k-set (lexicographically) all of whose d-subsets are hyperedges."""
    if k < 0:
        raise UsageError("negative clique size")
    if k > H.n:
        return None
    if k < H.d:
        return tuple(range(k))
    d = H.d
    edges = H.edges
    chosen: List[int] = []

    def fits(v: int) -> bool:
        if len(chosen) < d - 1:
            return True
        return all(sub + (v,) in edges for sub in combinations(chosen, d - 1))

    def go(start: int) -> bool:
        if len(chosen) == k:
            return True
        for v in range(start, H.n - (k - len(chosen)) + 1):
            if fits(v):
                chosen.append(v)
                if go(v + 1):
                    return True
                chosen.pop()
        return False

    if go(0):
        return tuple(chosen)
    return None
