"""Independent oracles used by the test suite.

Everything here recomputes expected values by a route different from the
package's own: brute-force permutation filtering for automorphisms, a
string-of-bits graph6 encoder, common-neighbor counting for strong
regularity, and a fully exact Wedderburn type via minimal-polynomial
factorization with rational projector arithmetic (sympy).
"""

from __future__ import annotations

import itertools
import math

import numpy as np
import sympy

from terw.graphs import Graph


def brute_automorphisms(graph: Graph) -> list[tuple[int, ...]]:
    """All automorphisms by filtering every permutation (n <= 8 or so)."""
    edges = graph.edges()
    out = []
    for p in itertools.permutations(range(graph.n)):
        if all(graph.has_edge(p[u], p[v]) for u, v in edges):
            out.append(p)
    return out


def brute_stabilizer_orbits(graph: Graph, base: int) -> list[tuple[int, ...]]:
    """Vertex orbits of the base stabilizer, computed from all automorphisms."""
    perms = [p for p in brute_automorphisms(graph) if p[base] == base]
    seen = set()
    cells = []
    for v in range(graph.n):
        if v in seen:
            continue
        orbit = sorted({p[v] for p in perms})
        seen.update(orbit)
        cells.append(tuple(orbit))
    return cells


def find_isomorphism(g1: Graph, g2: Graph) -> tuple[int, ...] | None:
    """A vertex bijection carrying g1 onto g2, or None (brute force)."""
    if g1.n != g2.n or g1.num_edges() != g2.num_edges():
        return None
    if sorted(g1.degree_sequence()) != sorted(g2.degree_sequence()):
        return None
    edges = g1.edges()
    for p in itertools.permutations(range(g1.n)):
        if all(g2.has_edge(p[u], p[v]) for u, v in edges):
            return p
    return None


def hand_graph6(graph: Graph) -> bytes:
    """graph6 encoder written directly from the format definition.

    Builds the upper-triangle bit string column by column as text, pads to a
    multiple of six, and adds 63 to each 6-bit group; the size header is
    either one byte or the 126-prefixed 18-bit form.
    """
    n = graph.n
    if n <= 62:
        head = [n + 63]
    else:
        head = [126, 63 + (n >> 12), 63 + ((n >> 6) & 63), 63 + (n & 63)]
    bits = ""
    for j in range(1, n):
        for i in range(j):
            bits += "1" if graph.has_edge(i, j) else "0"
    while len(bits) % 6:
        bits += "0"
    body = [int(bits[k : k + 6], 2) + 63 for k in range(0, len(bits), 6)]
    return bytes(head + body)


def brute_srg_params(graph: Graph):
    """(n,k,lam,mu) by direct common-neighbor counting, or None."""
    n = graph.n
    if not graph.is_connected() or not graph.complement().is_connected():
        return None
    degs = {graph.degree(v) for v in range(n)}
    if len(degs) != 1:
        return None
    k = degs.pop()
    lams, mus = set(), set()
    for u in range(n):
        for v in range(n):
            if u == v:
                continue
            common = len(set(graph.neighbors(u)) & set(graph.neighbors(v)))
            (lams if graph.has_edge(u, v) else mus).add(common)
    if len(lams) == 1 and len(mus) == 1:
        return (n, k, lams.pop(), mus.pop())
    return None


# ---------------------------------------------------------------------------
# exact Wedderburn type via minimal-polynomial factorization
# ---------------------------------------------------------------------------

def exact_wedderburn_type(basis_mats: list[np.ndarray], center_mats: list[np.ndarray]) -> tuple[tuple[int, int], ...]:
    """Fully exact block type of a semisimple algebra with known center basis.

    A deterministic integer combination of the center basis is taken; its
    minimal polynomial must have degree equal to the center dimension (else
    the coefficients are varied).  The rational matrices projecting onto
    each irreducible factor's primary component are written down exactly via
    polynomial CRT, and block sizes and multiplicities come from exact ranks
    of the compressed algebra.  No floating point anywhere.
    """
    s = len(center_mats)
    n = basis_mats[0].shape[0]
    x = sympy.Symbol("x")
    z_mats = [sympy.Matrix([[int(e) for e in row] for row in m]) for m in center_mats]
    b_mats = [sympy.Matrix([[int(e) for e in row] for row in m]) for m in basis_mats]

    for trial in range(6):
        coeffs = [((17 * (t + 1) ** 2 + 31 * (trial + 1) * (t + 1) + 7) % 1009) + 1 for t in range(s)]
        z = sympy.zeros(n, n)
        for c, zm in zip(coeffs, z_mats):
            z += c * zm
        cp = sympy.Poly(z.charpoly(x).as_expr(), x)
        deriv = cp.diff(x)
        minpoly = sympy.quo(cp, sympy.gcd(cp, deriv))
        if sympy.degree(minpoly, x) != s:
            continue
        _, factors = sympy.factor_list(minpoly.as_expr(), x)
        blocks: list[tuple[int, int]] = []
        ok = True
        for f_expr, mult in factors:
            assert mult == 1, "minimal polynomial must be squarefree"
            f = sympy.Poly(f_expr, x)
            cof = sympy.quo(minpoly, f)
            u, _v, gcd = sympy.gcdex(cof.as_expr(), f.as_expr(), x)
            assert sympy.Poly(gcd, x).degree() == 0
            crt = sympy.Poly(sympy.expand(u * cof.as_expr() / gcd), x)
            proj = _poly_at_matrix(crt, z, n)
            assert proj * proj == proj, "primary projector must be idempotent"
            deg_f = int(sympy.degree(f, x))
            # multiplicity of f in the characteristic polynomial
            k = 0
            rem = cp
            while True:
                q, r = sympy.div(rem, f)
                if not r.is_zero:
                    break
                rem = q
                k += 1
            rank_proj = proj.rank()
            if rank_proj != deg_f * k:
                ok = False
                break
            stack = sympy.Matrix([list(proj * b * proj) for b in b_mats])
            big_n = stack.rank()
            if big_n % deg_f:
                ok = False
                break
            size_sq = big_n // deg_f
            size = math.isqrt(size_sq)
            if size * size != size_sq or k % size:
                ok = False
                break
            blocks.extend([(size, k // size)] * deg_f)
        if not ok:
            continue
        assert sum(sz * sz for sz, _ in blocks) == len(basis_mats)
        assert sum(sz * m for sz, m in blocks) == n
        assert len(blocks) == s
        return tuple(sorted(blocks, key=lambda b: (-b[0], -b[1])))
    raise AssertionError("no generic central element found")


def _poly_at_matrix(poly: sympy.Poly, z: sympy.Matrix, n: int) -> sympy.Matrix:
    out = sympy.zeros(n, n)
    for c in poly.all_coeffs():
        out = out * z + c * sympy.eye(n)
    return out


def sympy_center_dim(basis_mats: list[np.ndarray]) -> int:
    """Center dimension by a sympy rank computation on the commutator system."""
    d = len(basis_mats)
    n = basis_mats[0].shape[0]
    mats = [sympy.Matrix([[int(e) for e in row] for row in m]) for m in basis_mats]
    comms = [[mats[j] * bi - bi * mats[j] for j in range(d)] for bi in mats]
    system = sympy.Matrix(
        [[comms[i][j][r, c] for j in range(d)]
         for i in range(d) for r in range(n) for c in range(n)]
    )
    return d - system.rank()
