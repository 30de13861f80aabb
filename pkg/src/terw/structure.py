"""Wedderburn decomposition of a self-adjoint algebra basis, plus thinness.

The pipeline is hybrid: everything countable (dimension, center, ranks of
integer row spaces, memberships) is exact, while the spectral splitting of
a generic central element is floating point.  Every floating-point
conclusion must reconcile with an exact integer identity (block count =
center dimension, sum of squared block sizes = algebra dimension, weighted
block sizes = matrix side) before a result is reported; any mismatch raises
instead of returning silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .algebras import AlgebraBasis, corner, is_commutative
from .errors import DecompositionError
from .linalg import SpanBasis, center_basis, exact_matmul

# relative gap for clustering eigenvalues of the generic central element
_CLUSTER_REL_TOL = 1e-6
# singular values below this fraction of the largest count as zero
_RANK_REL_TOL = 1e-8
# how close a floating-point count must be to an integer
_NEAR_INT_TOL = 1e-4
_MAX_SEED_RETRIES = 3


@dataclass(frozen=True)
class WedderburnType:
    """Multiset of (block size, standard-module multiplicity) pairs.

    blocks are sorted descending, so types compare by equality.  For an
    algebra A of dimension d inside the n-by-n matrices containing the
    identity: sum of size^2 = d, sum of size*multiplicity = n, and the
    number of blocks equals the dimension of the center.
    """

    blocks: tuple[tuple[int, int], ...]

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def algebra_dim(self) -> int:
        return sum(s * s for s, _ in self.blocks)

    def standard_dim(self) -> int:
        return sum(s * m for s, m in self.blocks)

    def block_sizes(self) -> tuple[int, ...]:
        return tuple(s for s, _ in self.blocks)

    def render(self) -> str:
        """Human-readable form: size-1 blocks print as C, e.g. 'M3+C+C'."""
        return "+".join("C" if s == 1 else f"M{s}" for s, _ in self.blocks)

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple[int, int]]) -> "WedderburnType":
        return cls(blocks=tuple(sorted(pairs, key=lambda b: (-b[0], -b[1]))))


@dataclass
class WedderburnDecomposition:
    """A certified type together with the numeric central projectors.

    projectors[i] belongs to type.blocks[i]; center is the exact center
    basis of the input algebra.
    """

    type: WedderburnType
    projectors: list[np.ndarray]
    center: SpanBasis
    seed: int


def _as_span(algebra: AlgebraBasis | SpanBasis) -> SpanBasis:
    return algebra.basis if isinstance(algebra, AlgebraBasis) else algebra


def _cluster_complex(values: np.ndarray, count: int) -> Optional[list[list[int]]]:
    """Single-linkage clusters of complex values; None unless exactly count."""
    m = len(values)
    diam = 0.0
    for i in range(m):
        diam = max(diam, float(np.max(np.abs(values - values[i]))))
    tol = max(_CLUSTER_REL_TOL * diam, 1e-12)
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(m):
        for j in range(i + 1, m):
            if abs(values[i] - values[j]) <= tol:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    if len(groups) != count:
        return None
    return sorted(groups.values(), key=lambda g: (values[g[0]].real, values[g[0]].imag))


def _float_mat(m: np.ndarray) -> np.ndarray:
    f = m.astype(np.float64)
    peak = np.max(np.abs(f))
    return f / peak if peak > 0 else f


def wedderburn_decompose(
    algebra: AlgebraBasis | SpanBasis,
    *,
    seed: int = 0,
) -> WedderburnDecomposition:
    """Certified block decomposition of a transpose-closed algebra basis.

    Steps: exact center dimension s; generic central element from seeded
    rational coefficients; numeric eigensplit into exactly s clusters
    (retrying with fresh seeds a few times); spectral projectors; block
    sizes from compressed numeric ranks, multiplicities from cluster sizes.
    All counts must satisfy the exact invariants or the call raises
    DecompositionError.
    """
    basis = _as_span(algebra)
    n = basis.side
    d = basis.dim
    if d == 0:
        raise ValueError("cannot decompose the zero algebra")
    center = center_basis(basis)
    s = center.dim
    if s == 0:
        raise DecompositionError("center has dimension zero; input is not a unital algebra")
    center_mats = [_float_mat(m) for m in center.matrices()]
    basis_float = [_float_mat(m) for m in basis.matrices()]

    last_error = "no attempt"
    for attempt in range(_MAX_SEED_RETRIES):
        rng = np.random.default_rng(seed + 7919 * attempt)
        coeffs = rng.integers(1, 1000, size=s)
        z = sum(int(c) * zm for c, zm in zip(coeffs, center_mats))
        evals, evecs = np.linalg.eig(z)
        clusters = _cluster_complex(evals, s)
        if clusters is None:
            last_error = f"eigenvalues did not split into {s} clusters"
            continue
        try:
            vinv = np.linalg.inv(evecs)
        except np.linalg.LinAlgError:
            last_error = "singular eigenvector matrix"
            continue
        pairs: list[tuple[int, int]] = []
        projectors: list[np.ndarray] = []
        ok = True
        for idx in clusters:
            proj = evecs[:, idx] @ vinv[idx, :]
            tr = proj.trace()
            if abs(tr.imag) > _NEAR_INT_TOL or abs(tr.real - round(tr.real)) > _NEAR_INT_TOL:
                ok = False
                last_error = f"projector trace {tr} is not a near-integer"
                break
            nm = len(idx)  # algebraic multiplicity = rank of the projector
            if round(tr.real) != nm:
                ok = False
                last_error = "projector trace disagrees with cluster size"
                break
            stack = np.stack([(proj @ b @ proj).reshape(n * n) for b in basis_float])
            svals = np.linalg.svd(stack, compute_uv=False)
            rank = int(np.sum(svals > _RANK_REL_TOL * svals[0]))
            size = round(rank**0.5)
            if size * size != rank:
                ok = False
                last_error = f"compressed rank {rank} is not a perfect square"
                break
            if nm % size:
                ok = False
                last_error = f"cluster size {nm} not divisible by block size {size}"
                break
            pairs.append((size, nm // size))
            projectors.append(proj)
        if not ok:
            continue
        wtype = WedderburnType.from_pairs(pairs)
        order = sorted(range(len(pairs)), key=lambda i: (-pairs[i][0], -pairs[i][1]))
        projectors = [projectors[i] for i in order]
        if wtype.algebra_dim() != d:
            last_error = f"sum of squared sizes {wtype.algebra_dim()} != dim {d}"
            continue
        if wtype.standard_dim() != n:
            last_error = f"weighted sizes {wtype.standard_dim()} != n {n}"
            continue
        if wtype.num_blocks != s:
            last_error = "block count differs from center dimension"
            continue
        if any(sz < 1 or m < 1 for sz, m in wtype.blocks):
            last_error = "non-positive block data"
            continue
        return WedderburnDecomposition(type=wtype, projectors=projectors, center=center, seed=seed)
    raise DecompositionError(f"decomposition failed after {_MAX_SEED_RETRIES} attempts: {last_error}")


def block_of_idempotent(
    dec: WedderburnDecomposition,
    algebra: AlgebraBasis | SpanBasis,
    e: np.ndarray,
) -> tuple[int, ...]:
    """Indices of the blocks in which an idempotent has nonzero component.

    The idempotent must lie in the algebra and satisfy e*e = e exactly; a
    primitive idempotent yields a single index into dec.type.blocks.
    """
    basis = _as_span(algebra)
    e = np.asarray(e)
    if not basis.contains(e):
        raise ValueError("matrix is not in the algebra span")
    if np.any(exact_matmul(e, e) - e):
        raise ValueError("matrix is not idempotent")
    ef = e.astype(np.float64)
    norm = np.linalg.norm(ef)
    hits = []
    for i, proj in enumerate(dec.projectors):
        if np.linalg.norm(proj @ ef) > 1e-6 * max(norm, 1.0):
            hits.append(i)
    return tuple(hits)


def is_thin(algebra: AlgebraBasis) -> Optional[bool]:
    """Sufficient thinness certificate for a level-2 algebra.

    True when the compression to every distance cell is commutative (then
    each simple module meets each cell compression in dimension at most
    one); None means the certificate does not apply, not that the algebra
    fails to be thin.
    """
    if algebra.level != 2 or algebra.cells is None:
        raise ValueError("thinness check needs a level-2 algebra with its distance cells")
    for cell in algebra.cells[1:]:
        if not is_commutative(corner(algebra, cell)):
            return None
    return True
