import numpy as np
import pytest

from oracles import exact_wedderburn_type, sympy_center_dim
from terw.errors import DecompositionError
from terw.graphs import gen_cycle, gen_delta, gen_paley, gen_path, gen_star
from terw.groups import paley_stabilizer_generators
from terw.algebras import build_T, idempotent_for_set
from terw.linalg import SpanBasis, algebra_closure, center_basis
from terw.structure import WedderburnType, block_of_idempotent, is_thin, wedderburn_decompose


def E(n, i, j):
    m = np.zeros((n, n), dtype=np.int64)
    m[i, j] = 1
    return m


class TestWedderburnType:
    def test_render(self):
        t = WedderburnType.from_pairs([(1, 1), (3, 1), (1, 1)])
        assert t.render() == "M3+C+C"
        assert t.blocks == ((3, 1), (1, 1), (1, 1))

    def test_invariant_helpers(self):
        t = WedderburnType.from_pairs([(4, 1), (2, 1)])
        assert t.algebra_dim() == 20
        assert t.standard_dim() == 6
        assert t.block_sizes() == (4, 2)


class TestDecompose:
    def test_full_matrix_algebra_m2(self):
        alg = algebra_closure([E(2, 0, 1), E(2, 1, 0)])
        assert alg.dim == 4
        dec = wedderburn_decompose(alg)
        assert dec.type.blocks == ((2, 1),)

    def test_c6_level4(self):
        dec = wedderburn_decompose(build_T(4, gen_cycle(6), 0))
        assert dec.type.blocks == ((4, 1), (2, 1))
        assert dec.type.render() == "M4+M2"

    def test_delta5_level2(self):
        dec = wedderburn_decompose(build_T(2, gen_delta(5), 4))
        assert dec.type.render() == "M3+C+C"

    def test_paley13_level4(self):
        g, pc = gen_paley(13)
        t4 = build_T(4, g, 0, stab=paley_stabilizer_generators(pc))
        dec = wedderburn_decompose(t4)
        assert dec.type.blocks == ((3, 1),) + ((2, 1),) * 5

    def test_commutative_blocks_all_size_one(self):
        for g in [gen_path(6), gen_cycle(7), gen_star(5)]:
            t0 = build_T(0, g, 0)
            dec = wedderburn_decompose(t0)
            assert all(s == 1 for s, _ in dec.type.blocks)
            assert dec.type.num_blocks == t0.dim

    def test_cyclic_rotation_algebra(self):
        # regular representation of a 3-cycle: three 1-dim blocks with
        # complex central idempotents; the decomposer must handle the
        # complex eigenvalue clusters
        p = np.zeros((3, 3), dtype=np.int64)
        p[0, 1] = p[1, 2] = p[2, 0] = 1
        dec = wedderburn_decompose(algebra_closure([p]))
        assert dec.type.blocks == ((1, 1),) * 3

    def test_seed_invariance(self):
        alg = build_T(3, gen_delta(5), 4)
        assert wedderburn_decompose(alg, seed=0).type == wedderburn_decompose(alg, seed=1).type

    def test_transposed_basis_same_type(self):
        alg = build_T(2, gen_delta(6), 5)
        flipped = SpanBasis(alg.n)
        for m in alg.basis.matrices():
            flipped.insert(m.T.copy())
        assert wedderburn_decompose(alg).type == wedderburn_decompose(flipped).type

    def test_star_types(self):
        assert wedderburn_decompose(build_T(1, gen_star(7), 0)).type.render() == "M2+C"
        assert wedderburn_decompose(build_T(1, gen_star(7), 1)).type.render() == "M3+C"


class TestExactOracle:
    @pytest.mark.parametrize("level", [0, 1, 2, 3, 4])
    def test_kite_apex_all_levels(self, level):
        alg = build_T(level, gen_delta(5), 4)
        dec = wedderburn_decompose(alg)
        oracle = exact_wedderburn_type(
            alg.basis.matrices(), center_basis(alg.basis).matrices()
        )
        assert dec.type.blocks == oracle

    def test_cyclic_algebra_oracle(self):
        p = np.zeros((3, 3), dtype=np.int64)
        p[0, 1] = p[1, 2] = p[2, 0] = 1
        alg = algebra_closure([p])
        oracle = exact_wedderburn_type(alg.matrices(), center_basis(alg).matrices())
        assert oracle == ((1, 1),) * 3

    def test_center_dim_matches_sympy(self):
        for g, b in [(gen_path(4), 1), (gen_cycle(5), 0), (gen_star(5), 1)]:
            for lvl in (1, 2, 4):
                alg = build_T(lvl, g, b)
                assert center_basis(alg.basis).dim == sympy_center_dim(alg.basis.matrices())


class TestBlockOfIdempotent:
    def test_base_idempotent_lands_in_largest_block(self):
        t2 = build_T(2, gen_delta(5), 4)
        dec = wedderburn_decompose(t2)
        hits = block_of_idempotent(dec, t2, idempotent_for_set(5, [4]))
        assert hits == (0,)
        assert dec.type.blocks[0] == (3, 1)

    def test_identity_hits_all_blocks(self):
        t2 = build_T(2, gen_delta(5), 4)
        dec = wedderburn_decompose(t2)
        assert block_of_idempotent(dec, t2, np.eye(5, dtype=np.int64)) == (0, 1, 2)

    def test_c6_base_idempotent_in_principal_block(self):
        t1 = build_T(1, gen_cycle(6), 0)
        dec = wedderburn_decompose(t1)
        hits = block_of_idempotent(dec, t1, idempotent_for_set(6, [0]))
        assert len(hits) == 1
        assert dec.type.blocks[hits[0]][0] == 4  # eccentricity + 1

    def test_rejects_non_idempotent(self):
        t2 = build_T(2, gen_delta(5), 4)
        dec = wedderburn_decompose(t2)
        with pytest.raises(ValueError):
            block_of_idempotent(dec, t2, gen_delta(5).adjacency_matrix())

    def test_rejects_non_member(self):
        t0 = build_T(0, gen_delta(5), 4)
        dec = wedderburn_decompose(t0)
        with pytest.raises(ValueError):
            block_of_idempotent(dec, t0, idempotent_for_set(5, [0]))


class TestThinness:
    def test_strongly_regular_is_thin(self):
        g, _ = gen_paley(13)
        assert is_thin(build_T(2, g, 0)) is True

    def test_triangle_thin(self):
        assert is_thin(build_T(2, gen_cycle(3), 0)) is True

    def test_c8_thin(self):
        assert is_thin(build_T(2, gen_cycle(8), 0)) is True

    def test_needs_level2(self):
        with pytest.raises(ValueError):
            is_thin(build_T(1, gen_cycle(5), 0))


def test_invariants_enforced_on_failure():
    # a span that is not an algebra must be rejected, not silently decomposed
    b = SpanBasis(3)
    b.insert(np.eye(3, dtype=np.int64))
    b.insert(E(3, 0, 1) + E(3, 1, 2))
    with pytest.raises((DecompositionError, ValueError)):
        wedderburn_decompose(b)
