"""Builders for the five nested algebras of a pointed graph.

Levels, for a connected graph with base vertex x0:

  0  unital algebra generated by the adjacency matrix A
  1  generated by A and the base-vertex idempotent
  2  generated by A and the diagonal idempotents of the distance partition
  3  generated by A and the idempotents of the stabilizer's vertex orbits
  4  span of the 0/1 orbital matrices of the stabilizer (the centralizer
     algebra); built directly as a span and then certified closed

Every level contains the previous one, and all five are closed under
transpose; both facts are asserted on construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg
from .graphs import Graph, bfs_distance_partition
from .groups import PermGroup, orbital_matrices, orbitals, stabilizer, vertex_orbits
from .linalg import SpanBasis, algebra_closure, exact_matmul

LEVELS = (0, 1, 2, 3, 4)

# full pairwise closure certification up to this many basis pairs; beyond
# that a fixed-seed sample is checked instead
_CLOSURE_PAIR_LIMIT = 400
_CLOSURE_SAMPLE = 200


def idempotent_for_set(n: int, vertices) -> np.ndarray:
    """Diagonal 0/1 matrix supported on the given vertex set."""
    e = np.zeros((n, n), dtype=np.int64)
    for v in vertices:
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} out of range for n={n}")
        e[v, v] = 1
    return e


@dataclass
class AlgebraBasis:
    """Exact basis of one of the five algebras, tagged with its provenance."""

    level: int
    base: int
    n: int
    basis: SpanBasis
    generators: tuple[str, ...]
    cells: Optional[tuple[tuple[int, ...], ...]] = None  # distance or orbit cells

    @property
    def dim(self) -> int:
        return self.basis.dim

    def contains(self, mat) -> bool:
        return self.basis.contains(mat)


def _assert_unital_and_selfadjoint(basis: SpanBasis) -> None:
    n = basis.side
    assert basis.contains(np.eye(n, dtype=np.int64)), "algebra misses the identity"
    for row in list(basis.rows):
        m = row.reshape(n, n)
        assert basis.contains(m.T.copy()), "algebra is not closed under transpose"


def _assert_span_closed(basis: SpanBasis) -> None:
    d = basis.dim
    if d * d <= _CLOSURE_PAIR_LIMIT:
        pairs = None
    else:
        rng = random.Random(0)
        pairs = [(rng.randrange(d), rng.randrange(d)) for _ in range(_CLOSURE_SAMPLE)]
    assert linalg.is_multiplicatively_closed(basis, pairs), "orbital span is not closed"


def build_T(
    level: int,
    graph: Graph,
    base: int,
    *,
    stab: Optional[PermGroup] = None,
    node_budget: int = 10**7,
    time_budget: Optional[float] = None,
) -> AlgebraBasis:
    """Exact basis of the level-0..4 algebra of (graph, base).

    Level 0 ignores the base vertex (the adjacency algebra does not depend
    on it) but records it.  Levels 3 and 4 need the base-vertex stabilizer:
    pass one in (e.g. an analytic Paley group) or it is found by search.
    """
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}")
    if not 0 <= base < graph.n:
        raise ValueError(f"base vertex {base} out of range")
    if not graph.is_connected():
        raise ValueError("algebra builders need a connected graph")
    n = graph.n
    a = graph.adjacency_matrix()
    cells = None
    if level == 0:
        gens = [a]
        names = ("A",)
    elif level == 1:
        gens = [a, idempotent_for_set(n, [base])]
        names = ("A", f"E[{{{base}}}]")
    elif level == 2:
        dp = bfs_distance_partition(graph, base)
        cells = dp.cells
        gens = [a] + [idempotent_for_set(n, c) for c in cells]
        names = ("A",) + tuple(f"E[X{k}]" for k in range(len(cells)))
    elif level == 3:
        group = stab if stab is not None else stabilizer(
            graph, base, node_budget=node_budget, time_budget=time_budget
        )
        cells = vertex_orbits(group, base=base).cells
        gens = [a] + [idempotent_for_set(n, c) for c in cells]
        names = ("A",) + tuple(f"E[Y{k}]" for k in range(len(cells)))
    else:
        group = stab if stab is not None else stabilizer(
            graph, base, node_budget=node_budget, time_budget=time_budget
        )
        mats = orbital_matrices(orbitals(group))
        basis = SpanBasis(n)
        for m in mats:
            basis.insert(m)
        assert basis.dim == len(mats), "orbital matrices must be independent"
        _assert_span_closed(basis)
        _assert_unital_and_selfadjoint(basis)
        alg = AlgebraBasis(
            level=4, base=base, n=n, basis=basis,
            generators=tuple(f"A[orbital {i}]" for i in range(len(mats))),
        )
        return alg

    basis = algebra_closure(gens, side=n)
    _assert_unital_and_selfadjoint(basis)
    return AlgebraBasis(level=level, base=base, n=n, basis=basis, generators=names, cells=cells)


@dataclass(frozen=True)
class ChainReport:
    """Dimensions and equality flags along the chain of the five algebras."""

    dims: tuple[int, int, int, int, int]
    equal_next: tuple[bool, bool, bool, bool]
    # for each strict step, a basis matrix of the larger algebra outside the
    # smaller one (rows are vectorized matrices)
    witnesses: dict[int, np.ndarray]


def inclusion_chain_report(
    graph: Graph,
    base: int,
    *,
    stab: Optional[PermGroup] = None,
    node_budget: int = 10**7,
    time_budget: Optional[float] = None,
) -> ChainReport:
    """Dims of all five algebras plus adjacency equality flags.

    Containment of each algebra in the next is verified by exact membership
    of every basis element; for strict steps the first non-member basis
    matrix of the larger algebra is kept as a witness.
    """
    report, _ = chain_with_algebras(
        graph, base, stab=stab, node_budget=node_budget, time_budget=time_budget
    )
    return report


def chain_with_algebras(
    graph: Graph,
    base: int,
    *,
    stab: Optional[PermGroup] = None,
    node_budget: int = 10**7,
    time_budget: Optional[float] = None,
) -> tuple[ChainReport, list[AlgebraBasis]]:
    """inclusion_chain_report plus the five constructed algebras."""
    algs = [
        build_T(lvl, graph, base, stab=stab, node_budget=node_budget, time_budget=time_budget)
        for lvl in LEVELS
    ]
    dims = tuple(a.dim for a in algs)
    flags = []
    witnesses: dict[int, np.ndarray] = {}
    for lvl in range(4):
        small, big = algs[lvl], algs[lvl + 1]
        assert small.dim <= big.dim, "chain dimensions must be nondecreasing"
        for m in small.basis.matrices():
            assert big.contains(m), f"level {lvl} basis escapes level {lvl + 1}"
        eq = small.dim == big.dim
        flags.append(eq)
        if not eq:
            for m in big.basis.matrices():
                if not small.contains(m):
                    witnesses[lvl] = m
                    break
    return ChainReport(dims=dims, equal_next=tuple(flags), witnesses=witnesses), algs


def corner(algebra: AlgebraBasis | SpanBasis, vertices) -> SpanBasis:
    """Basis of E_Y * A * E_Y: every basis element compressed to the subset."""
    basis = algebra.basis if isinstance(algebra, AlgebraBasis) else algebra
    n = basis.side
    e = idempotent_for_set(n, vertices)
    out = SpanBasis(n)
    for m in basis.matrices():
        out.insert(exact_matmul(exact_matmul(e, m), e))
    return out


def is_commutative(basis: SpanBasis | AlgebraBasis) -> bool:
    """All pairwise commutators of basis elements vanish (exact)."""
    if isinstance(basis, AlgebraBasis):
        basis = basis.basis
    mats = basis.matrices()
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if np.any(exact_matmul(mats[i], mats[j]) - exact_matmul(mats[j], mats[i])):
                return False
    return True


def principal_row_dim(algebra: AlgebraBasis, base: Optional[int] = None) -> int:
    """Rank of the base-vertex row space {row x0 of B : B in basis}.

    This is the dimension of the module generated by the base idempotent.
    """
    if base is None:
        base = algebra.base
    if algebra.level < 1:
        raise ValueError("needs a level >= 1 algebra")
    rows = [m[base].copy() for m in algebra.basis.matrices()]
    return linalg.row_space_rank(rows)


def _delete_vertex(graph: Graph, v: int) -> tuple[Graph, list[int]]:
    """Graph minus one vertex; returns it plus the old->new index map."""
    keep = [u for u in range(graph.n) if u != v]
    newidx = {u: i for i, u in enumerate(keep)}
    edges = [(newidx[a], newidx[b]) for a, b in graph.edges() if v not in (a, b)]
    return Graph(graph.n - 1, edges), keep


def pendant_reduction_check(graph: Graph, pendant: int, level: int = 2, **kwargs) -> bool:
    """Compressing away a pendant base vertex matches the smaller graph's algebra.

    For a degree-one base vertex x0 with neighbor x1, the compression of the
    level-2 or level-3 algebra to the other vertices equals the same algebra
    of the vertex-deleted graph based at x1, both as exact spans and in
    Wedderburn type up to the block of the neighbor idempotent growing by
    one.
    """
    if level not in (2, 3):
        raise ValueError("reduction applies to levels 2 and 3")
    if graph.degree(pendant) != 1:
        raise ValueError(f"vertex {pendant} is not pendant")
    x1 = graph.neighbors(pendant)[0]
    big = build_T(level, graph, pendant, **kwargs)
    small_graph, keep = _delete_vertex(graph, pendant)
    x1_small = keep.index(x1)
    small = build_T(level, small_graph, x1_small, **kwargs)
    compressed = corner(big, [u for u in range(graph.n) if u != pendant])
    # embed the smaller algebra's basis into the big matrix space
    embedded = SpanBasis(graph.n)
    for m in small.basis.matrices():
        full = np.zeros((graph.n, graph.n), dtype=m.dtype)
        for i, u in enumerate(keep):
            for j, w in enumerate(keep):
                full[u, w] = m[i, j]
        embedded.insert(full)
    if embedded.dim != compressed.dim:
        return False
    if not all(compressed.contains(m) for m in embedded.matrices()):
        return False
    # type bookkeeping: the block housing the neighbor idempotent grows by one
    from .structure import block_of_idempotent, wedderburn_decompose

    dec_small = wedderburn_decompose(small)
    dec_big = wedderburn_decompose(big)
    e_x1 = idempotent_for_set(small_graph.n, [x1_small])
    (blk,) = block_of_idempotent(dec_small, small, e_x1)
    grown = [n for n, _ in dec_small.type.blocks]
    grown[blk] += 1
    sizes_big = sorted(n for n, _ in dec_big.type.blocks)
    return sorted(grown) == sizes_big
