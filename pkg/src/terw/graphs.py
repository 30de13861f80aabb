"""Graph representation, graph6 I/O, family generators, and distance machinery.

Vertices are 0..n-1 internally.  The classical families (paths, stars,
cycles, Paley graphs, the kite-with-tail family) are published with 1-based
labels; the constructors map label i to index i-1 and say so in their
docstrings.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional

import numpy as np

from .errors import Graph6Error, ToleranceError

GRAPH6_HEADER = b">>graph6<<"
GRAPH6_MAX_N = 258048

# absolute gap below which two numerically computed adjacency eigenvalues
# are treated as equal; misclustering is caught by the exact distinct count
EIG_CLUSTER_TOL = 1e-7


class Graph:
    """Finite simple undirected graph on vertices 0..n-1.

    Adjacency is stored as one bitmask per vertex.  Construction rejects
    loops and forces symmetry, so every instance is a simple graph.
    """

    __slots__ = ("n", "_bits")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 1:
            raise ValueError("graph needs at least one vertex")
        bits = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u} not allowed")
            bits[u] |= 1 << v
            bits[v] |= 1 << u
        self.n = n
        self._bits = tuple(bits)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "Graph":
        g = cls.__new__(cls)
        bits = tuple(bits)
        g.n = len(bits)
        g._bits = bits
        mask = (1 << g.n) - 1
        for v, b in enumerate(bits):
            if b & ~mask or b >> v & 1:
                raise ValueError("invalid adjacency bits")
        for u in range(g.n):
            for v in range(u + 1, g.n):
                if (bits[u] >> v & 1) != (bits[v] >> u & 1):
                    raise ValueError("adjacency must be symmetric")
        return g

    @classmethod
    def from_adjacency(cls, mat) -> "Graph":
        m = np.asarray(mat)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("adjacency matrix must be square")
        n = m.shape[0]
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if m[i, j]]
        g = cls(n, edges)
        if np.any(m != np.asarray(g.adjacency_matrix(), dtype=m.dtype)):
            raise ValueError("matrix is not a symmetric 0/1 adjacency with empty diagonal")
        return g

    def bits(self, v: int) -> int:
        return self._bits[v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._bits[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        b = self._bits[v]
        out = []
        while b:
            low = b & -b
            out.append(low.bit_length() - 1)
            b ^= low
        return out

    def degree(self, v: int) -> int:
        return self._bits[v].bit_count()

    def degree_sequence(self) -> list[int]:
        return [self.degree(v) for v in range(self.n)]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.neighbors(u) if u < v]

    def num_edges(self) -> int:
        return sum(self.degree(v) for v in range(self.n)) // 2

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u in range(self.n):
            for v in self.neighbors(u):
                a[u, v] = 1
        return a

    def is_connected(self) -> bool:
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            b = frontier
            while b:
                low = b & -b
                nxt |= self._bits[low.bit_length() - 1]
                b ^= low
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.n) - 1

    def complement(self) -> "Graph":
        mask = (1 << self.n) - 1
        return Graph.from_bits(~b & mask & ~(1 << v) for v, b in enumerate(self._bits))

    def relabel(self, perm: list[int]) -> "Graph":
        """New graph with vertex v renamed perm[v]."""
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self._bits == other._bits

    def __hash__(self) -> int:
        return hash(self._bits)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges()})"


# ---------------------------------------------------------------------------
# graph6 wire format (6 bits per byte, bias 63, big-endian groups)
# ---------------------------------------------------------------------------

def _read_number(data: bytes, pos: int) -> tuple[int, int]:
    if pos >= len(data):
        raise Graph6Error("empty graph6 string")
    c = data[pos]
    if c != 126:
        if not 63 <= c <= 125:
            raise Graph6Error(f"byte {c} out of graph6 range")
        return c - 63, pos + 1
    # 126 prefix: 18-bit size in three bytes (63 <= n <= 258047)
    if pos + 1 < len(data) and data[pos + 1] == 126:
        raise Graph6Error("graphs with n >= 258048 are not supported")
    if pos + 4 > len(data):
        raise Graph6Error("truncated multi-byte length header")
    n = 0
    for c in data[pos + 1 : pos + 4]:
        if not 63 <= c <= 126:
            raise Graph6Error(f"byte {c} out of graph6 range")
        n = n << 6 | (c - 63)
    if n < 63:
        raise Graph6Error("non-canonical multi-byte length header")
    return n, pos + 4


def parse_graph6(data: bytes | str) -> Graph:
    """Decode one graph6 value (an optional '>>graph6<<' prefix is skipped)."""
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER):]
    n, pos = _read_number(data, 0)
    if n < 1:
        raise Graph6Error("graph6 value encodes an empty vertex set")
    if n >= GRAPH6_MAX_N:
        raise Graph6Error(f"vertex count {n} out of supported range")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != nbytes:
        raise Graph6Error(f"expected {nbytes} adjacency bytes, got {len(body)}")
    acc = 0
    for c in body:
        if not 63 <= c <= 126:
            raise Graph6Error(f"byte {c} out of graph6 range")
        acc = acc << 6 | (c - 63)
    pad = nbytes * 6 - nbits
    if acc & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits")
    acc >>= pad
    bits = [0] * n
    k = nbits
    for j in range(1, n):
        for i in range(j):
            k -= 1
            if acc >> k & 1:
                bits[i] |= 1 << j
                bits[j] |= 1 << i
    return Graph.from_bits(bits)


def write_graph6(graph: Graph) -> bytes:
    """Encode a graph as graph6 bytes; inverse of parse_graph6."""
    n = graph.n
    if n >= GRAPH6_MAX_N:
        raise Graph6Error(f"vertex count {n} out of supported range")
    if n <= 62:
        head = bytes([n + 63])
    else:
        head = bytes([126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    acc = 0
    nbits = 0
    for j in range(1, n):
        col = graph.bits(j)
        for i in range(j):
            acc = acc << 1 | (col >> i & 1)
            nbits += 1
    pad = (-nbits) % 6
    acc <<= pad
    nbits += pad
    body = bytes((acc >> k & 63) + 63 for k in range(nbits - 6, -1, -6))
    return head + body


def iter_graph6_lines(lines: Iterable[bytes | str]) -> Iterable[tuple[int, bytes]]:
    """Yield (line_number, payload) for each non-blank graph6 line.

    Blank lines and standalone '>>graph6<<' header lines are skipped; a
    header glued to the first value is handled by parse_graph6 itself.
    """
    for lineno, raw in enumerate(lines, start=1):
        if isinstance(raw, str):
            raw = raw.encode("ascii")
        s = raw.strip()
        if not s or s == GRAPH6_HEADER:
            continue
        yield lineno, s


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------

def gen_path(n: int) -> Graph:
    """Path on vertices 1..n (stored as 0..n-1), edges between consecutive labels."""
    if n < 2:
        raise ValueError("path needs n >= 2")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def gen_star(n: int) -> Graph:
    """Star K_{1,n-1}: center labeled 1 (index 0), leaves 2..n."""
    if n < 2:
        raise ValueError("star needs n >= 2")
    return Graph(n, [(0, i) for i in range(1, n)])


def gen_cycle(n: int) -> Graph:
    """Cycle on vertices 1..n (stored as 0..n-1)."""
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def gen_delta(n: int) -> Graph:
    """Kite-with-apex-and-tail graph on labels 1..n (stored as 0..n-1).

    Labels 1-2-3-4 form a path, label 5 is adjacent to all of 1..4, and
    5-6-...-n is a pendant tail (empty for n=5).  Base vertex n is the
    distinguished choice in the dimension formulas exercised by the tests.
    """
    if n < 5:
        raise ValueError("family needs n >= 5")
    edges = [(0, 1), (1, 2), (2, 3)]
    edges += [(4, i) for i in range(4)]
    edges += [(i, i + 1) for i in range(4, n - 1)]
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# finite fields and Paley graphs
# ---------------------------------------------------------------------------

def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for d in range(2, int(math.isqrt(p)) + 1):
        if p % d == 0:
            return False
    return True


class _GF:
    """Arithmetic in GF(p^a) as polynomial residues, coefficients ascending.

    The modulus is the lexicographically smallest monic irreducible of
    degree a, where polynomials are ordered by their degree-major integer
    encoding sum(c_i * p^i); elements use the same encoding for ordering.
    """

    def __init__(self, p: int, a: int):
        self.p = p
        self.a = a
        self.q = p**a
        self.modulus = self._find_modulus()

    def _poly_from_code(self, code: int, deg: int) -> tuple[int, ...]:
        cs = []
        for _ in range(deg):
            cs.append(code % self.p)
            code //= self.p
        return tuple(cs)

    def code(self, x: tuple[int, ...]) -> int:
        v = 0
        for c in reversed(x):
            v = v * self.p + c
        return v

    def _find_modulus(self) -> tuple[int, ...]:
        # monic x^a + f(x), scanned in encoding order of f
        if self.a == 1:
            return (0, 1)
        for code in range(self.q):
            f = self._poly_from_code(code, self.a) + (1,)
            if self._is_irreducible(f):
                return f
        raise AssertionError("no irreducible polynomial found")

    def _poly_mulmod(self, x, y, mod):
        p = self.p
        prod = [0] * (len(x) + len(y) - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    prod[i + j] = (prod[i + j] + xi * yj) % p
        # reduce modulo the monic polynomial mod
        dm = len(mod) - 1
        for k in range(len(prod) - 1, dm - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for t in range(dm):
                    prod[k - dm + t] = (prod[k - dm + t] - c * mod[t]) % p
        return tuple(prod[:dm]) if dm > 0 else ()

    def _is_irreducible(self, f: tuple[int, ...]) -> bool:
        # trial division by all monic polynomials of degree 1..deg(f)//2
        deg = len(f) - 1
        for d in range(1, deg // 2 + 1):
            for code in range(self.p**d):
                g = self._poly_from_code(code, d) + (1,)
                if self._poly_divides(g, f):
                    return False
        return True

    def _poly_divides(self, g, f) -> bool:
        p = self.p
        rem = list(f)
        dg = len(g) - 1
        while len(rem) - 1 >= dg:
            c = rem[-1]
            if c:
                for t in range(dg + 1):
                    rem[len(rem) - 1 - dg + t] = (rem[len(rem) - 1 - dg + t] - c * g[t]) % p
            rem.pop()
        return not any(rem)

    # elements are coefficient tuples of length a
    def zero(self) -> tuple[int, ...]:
        return (0,) * self.a

    def one(self) -> tuple[int, ...]:
        return (1,) + (0,) * (self.a - 1)

    def elements(self) -> list[tuple[int, ...]]:
        return [self._poly_from_code(c, self.a) for c in range(self.q)]

    def add(self, x, y):
        return tuple((a + b) % self.p for a, b in zip(x, y))

    def sub(self, x, y):
        return tuple((a - b) % self.p for a, b in zip(x, y))

    def mul(self, x, y):
        r = self._poly_mulmod(x, y, self.modulus)
        return r + (0,) * (self.a - len(r))

    def pow(self, x, k: int):
        r = self.one()
        b = x
        while k:
            if k & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            k >>= 1
        return r

    def mult_order(self, x) -> int:
        if x == self.zero():
            return 0
        k = 1
        y = x
        while y != self.one():
            y = self.mul(y, x)
            k += 1
        return k

    def primitive_element(self) -> tuple[int, ...]:
        for code in range(1, self.q):
            x = self._poly_from_code(code, self.a)
            if self.mult_order(x) == self.q - 1:
                return x
        raise AssertionError("no primitive element found")


@dataclass(frozen=True)
class PaleyConstruction:
    """Record of the field data behind a Paley graph.

    ``order`` lists the field elements in vertex-index order: zero first,
    then the even powers of the primitive element xi starting at xi^0 = 1,
    then the odd powers.  This ordering makes the vertex permutation
    x -> x*xi^2 act as a block of two disjoint cycles on indices, which the
    analytic stabilizer generators rely on.
    """

    p: int
    a: int
    modulus_poly: tuple[int, ...]
    xi: tuple[int, ...]
    squares: frozenset[tuple[int, ...]]
    order: tuple[tuple[int, ...], ...]
    index: dict[tuple[int, ...], int] = field(compare=False, hash=False)

    @property
    def q(self) -> int:
        return self.p**self.a

    def gf(self) -> _GF:
        f = _GF(self.p, self.a)
        assert f.modulus == self.modulus_poly
        return f


def gen_paley(p: int, a: int = 1) -> tuple[Graph, PaleyConstruction]:
    """Paley graph on GF(p^a), p^a = 1 (mod 4): x ~ y iff x-y is a nonzero square.

    Vertex 0 is the field zero; vertices 1..(q-1)/2 are the even powers
    xi^0, xi^2, ... of the primitive element xi, and the rest are the odd
    powers, in exponent order.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if a < 1:
        raise ValueError("exponent must be positive")
    q = p**a
    if q % 4 != 1:
        raise ValueError(f"p^a = {q} is not congruent to 1 mod 4")
    f = _GF(p, a)
    xi = f.primitive_element()
    k = (q - 1) // 2
    powers = [f.one()]
    for _ in range(q - 2):
        powers.append(f.mul(powers[-1], xi))
    order = [f.zero()] + [powers[2 * i] for i in range(k)] + [powers[2 * i + 1] for i in range(k)]
    squares = frozenset(powers[2 * i] for i in range(k))
    index = {x: i for i, x in enumerate(order)}
    edges = []
    for i in range(q):
        for j in range(i + 1, q):
            if f.sub(order[i], order[j]) in squares:
                edges.append((i, j))
    graph = Graph(q, edges)
    pc = PaleyConstruction(
        p=p, a=a, modulus_poly=f.modulus, xi=xi,
        squares=squares, order=tuple(order), index=index,
    )
    return graph, pc


# ---------------------------------------------------------------------------
# distance machinery
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DistancePartition:
    """Cells of vertices at distance 0..D from the base vertex."""

    base: int
    cells: tuple[tuple[int, ...], ...]

    @property
    def eccentricity(self) -> int:
        return len(self.cells) - 1


def bfs_distance_partition(graph: Graph, base: int) -> DistancePartition:
    """Distance cells around base, ordered by distance; rejects disconnected input."""
    if not 0 <= base < graph.n:
        raise ValueError(f"base vertex {base} out of range")
    dist = [-1] * graph.n
    dist[base] = 0
    q = deque([base])
    while q:
        u = q.popleft()
        for v in graph.neighbors(u):
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                q.append(v)
    if min(dist) < 0:
        raise ValueError("graph is disconnected")
    d = max(dist)
    cells = [tuple(v for v in range(graph.n) if dist[v] == k) for k in range(d + 1)]
    return DistancePartition(base=base, cells=tuple(cells))


def distance_matrix(graph: Graph) -> list[list[int]]:
    """All-pairs distances by BFS from every vertex; -1 marks unreachable."""
    out = []
    for s in range(graph.n):
        dist = [-1] * graph.n
        dist[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for v in graph.neighbors(u):
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    q.append(v)
        out.append(dist)
    return out


@dataclass(frozen=True)
class SrgParams:
    """Strongly regular graph parameters."""

    n: int
    k: int
    lam: int
    mu: int

    def feasible(self) -> bool:
        return self.k * (self.k - self.lam - 1) == (self.n - self.k - 1) * self.mu


def is_strongly_regular(graph: Graph) -> Optional[SrgParams]:
    """Parameters of a primitive strongly regular graph, or None.

    Primitive means both the graph and its complement are connected, which
    excludes complete and complete multipartite cases.
    """
    n = graph.n
    if not graph.is_connected() or not graph.complement().is_connected():
        return None
    degs = graph.degree_sequence()
    k = degs[0]
    if any(d != k for d in degs):
        return None
    lam = mu = None
    for u in range(n):
        bu = graph.bits(u)
        for v in range(u + 1, n):
            common = (bu & graph.bits(v)).bit_count()
            if graph.has_edge(u, v):
                if lam is None:
                    lam = common
                elif lam != common:
                    return None
            else:
                if mu is None:
                    mu = common
                elif mu != common:
                    return None
    if lam is None or mu is None:
        return None
    params = SrgParams(n=n, k=k, lam=lam, mu=mu)
    assert params.feasible()
    return params


@dataclass(frozen=True)
class IntersectionNumbers:
    """Intersection numbers p[i][j][k] of a distance-regular graph."""

    diameter: int
    table: tuple[tuple[tuple[int, ...], ...], ...]

    def p(self, i: int, j: int, k: int) -> int:
        return self.table[i][j][k]


def is_distance_regular(graph: Graph) -> Optional[IntersectionNumbers]:
    """Full intersection array if the graph is distance-regular, else None."""
    if not graph.is_connected():
        return None
    dm = distance_matrix(graph)
    n = graph.n
    diam = max(max(row) for row in dm)
    counts: list[list[list[Optional[int]]]] = [
        [[None] * (diam + 1) for _ in range(diam + 1)] for _ in range(diam + 1)
    ]
    for x in range(n):
        for y in range(n):
            k = dm[x][y]
            profile = [[0] * (diam + 1) for _ in range(diam + 1)]
            for z in range(n):
                profile[dm[x][z]][dm[z][y]] += 1
            for i in range(diam + 1):
                for j in range(diam + 1):
                    prev = counts[i][j][k]
                    if prev is None:
                        counts[i][j][k] = profile[i][j]
                    elif prev != profile[i][j]:
                        return None
    table = tuple(
        tuple(tuple(counts[i][j][k] or 0 for k in range(diam + 1)) for j in range(diam + 1))
        for i in range(diam + 1)
    )
    return IntersectionNumbers(diameter=diam, table=table)


# ---------------------------------------------------------------------------
# exact characteristic polynomial and the spectrum summary
# ---------------------------------------------------------------------------

def charpoly_exact(mat: np.ndarray) -> list[int]:
    """Integer coefficients of det(xI - A), leading first (Faddeev-LeVerrier).

    All intermediate divisions are exact over the integers; arithmetic runs
    in arbitrary precision.
    """
    a = np.asarray(mat, dtype=object)
    n = a.shape[0]
    coeffs = [1]
    m = np.eye(n, dtype=object)
    for k in range(1, n + 1):
        am = np.dot(a, m)
        tr = int(np.trace(am))
        q, r = divmod(-tr, k)
        assert r == 0, "Faddeev-LeVerrier division must be exact"
        coeffs.append(q)
        m = am + q * np.eye(n, dtype=object)
    return coeffs


def _poly_deriv(p: list[Fraction]) -> list[Fraction]:
    n = len(p) - 1
    return [c * (n - i) for i, c in enumerate(p[:-1])]


def _poly_mod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    db = len(b) - 1
    while len(a) - 1 >= db and any(a):
        if a[0] == 0:
            a.pop(0)
            continue
        f = a[0] / b[0]
        for i in range(db + 1):
            a[i] -= f * b[i]
        a.pop(0)
    while a and a[0] == 0:
        a.pop(0)
    return a


def _poly_gcd_degree(p: list[int], q: list[int]) -> int:
    a = [Fraction(c) for c in p]
    b = [Fraction(c) for c in q]
    while b:
        a, b = b, _poly_mod(a, b)
    return len(a) - 1


def distinct_eigenvalue_count(graph: Graph) -> int:
    """Number of distinct adjacency eigenvalues, exactly (squarefree degree)."""
    p = charpoly_exact(graph.adjacency_matrix())
    return len(p) - 1 - _poly_gcd_degree(p, [int(c) for c in _poly_deriv([Fraction(c) for c in p])])


class SpectrumSummary(NamedTuple):
    distinct_count: int
    multiplicities: tuple[int, ...]


def spectrum_summary(graph: Graph) -> SpectrumSummary:
    """Distinct eigenvalue count (exact) and multiplicities (checked numerics).

    The count comes from the squarefree degree of the exact characteristic
    polynomial; multiplicities come from clustering numerically computed
    eigenvalues and must reproduce exactly that many clusters summing to n,
    otherwise a ToleranceError is raised.
    """
    t = distinct_eigenvalue_count(graph)
    evals = np.linalg.eigvalsh(graph.adjacency_matrix().astype(float))
    mults = []
    count = 1
    for i in range(1, len(evals)):
        if evals[i] - evals[i - 1] > EIG_CLUSTER_TOL:
            mults.append(count)
            count = 1
        else:
            count += 1
    mults.append(count)
    if len(mults) != t:
        raise ToleranceError(
            f"eigenvalue clustering found {len(mults)} groups but the exact count is {t}"
        )
    if sum(mults) != graph.n:
        raise ToleranceError("cluster multiplicities do not sum to n")
    return SpectrumSummary(distinct_count=t, multiplicities=tuple(mults))
