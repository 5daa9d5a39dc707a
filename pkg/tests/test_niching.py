import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import oracles
from commea.niching import (
    NeighborGraph,
    Space,
    crowding,
    local_convergence_indicator,
    local_convergence_quality,
    niche_radius,
    truncate_by_crowding,
)
from conftest import random_population

CHAIN_F = np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]])
CHAIN_X = np.array([[0.5, 0.5], [0.51, 0.5], [0.5, 0.51]])


class TestNicheRadius:
    def test_single(self):
        assert niche_radius(np.array([[0.3, 0.3]])) == 0.0

    def test_two_points(self):
        assert niche_radius(np.array([[0.0, 0.0], [0.3, 0.4]])) == pytest.approx(0.5 / 4)

    def test_three_collinear(self):
        assert niche_radius(np.array([[0.0], [0.5], [1.0]])) == pytest.approx(4 / 18, abs=1e-15)

    @given(arrays(np.float64, (8, 3), elements=st.floats(0, 1)), st.floats(0.05, 0.95))
    def test_contraction_scales_radius(self, X, lam):
        c = X.mean(axis=0)
        shrunk = c + lam * (X - c)
        assert niche_radius(shrunk) == pytest.approx(lam * niche_radius(X), rel=1e-9, abs=1e-12)


@given(arrays(np.float64, (12, 2), elements=st.floats(0, 1)))
def test_graph_symmetric(X):
    adj = NeighborGraph.build(X).adjacency
    assert np.array_equal(adj, adj.T)
    assert not adj.diagonal().any()


class TestLocalConvergence:
    def test_mutually_nondominated(self):
        F = np.array([[0, 3], [1, 2], [2, 1], [3, 0]], float)
        X = np.random.default_rng(0).random((4, 2))
        g = NeighborGraph(1.0, NeighborGraph.build(X).dist)
        assert local_convergence_indicator(F, g).tolist() == [0, 0, 0, 0]
        assert local_convergence_quality(F, g).tolist() == [0, 0, 0, 0]

    def test_chain_in_one_niche(self):
        g = NeighborGraph.build(CHAIN_X, radius=0.5)
        assert local_convergence_indicator(CHAIN_F, g).tolist() == [0, 2, 3]
        np.testing.assert_allclose(local_convergence_quality(CHAIN_F, g), [0, 0.5, 1.0])

    def test_isolated_member(self):
        X = np.array([[0.0, 0.0], [0.01, 0.0], [1.0, 1.0]])
        F = np.array([[0.0, 0.0], [1.0, 1.0], [5.0, 5.0]])
        g = NeighborGraph.build(X, radius=0.1)
        ilc = local_convergence_indicator(F, g)
        assert ilc[2] == 0 and ilc[1] == 1
        assert local_convergence_quality(F, g)[2] == 0

    @pytest.mark.parametrize("seed", range(25))
    def test_matches_oracle_and_zero_sets_agree(self, seed):
        rng = np.random.default_rng(seed)
        F, X = random_population(rng, int(rng.integers(2, 40)), 2 + seed % 2, levels=5)
        g = NeighborGraph.build(X)
        ilc = local_convergence_indicator(F, g)
        c = local_convergence_quality(F, g)
        assert ilc.tolist() == oracles.ilc(F.tolist(), X.tolist(), g.radius)
        np.testing.assert_allclose(c, oracles.quality(F.tolist(), X.tolist(), g.radius), atol=1e-15)
        assert np.all(ilc >= 0)
        assert np.array_equal(ilc == 0, c == 0)


class TestCrowding:
    def test_collinear_hand_values(self):
        kappa, cd = crowding(np.array([[0.0], [0.5], [1.0]]))
        np.testing.assert_allclose(kappa, [3, 4, 3])
        np.testing.assert_allclose(cd, [2 / 3, 0.5, 2 / 3])

    def test_pair_symmetric(self):
        kappa, cd = crowding(np.array([[0.1, 0.2], [0.7, 0.9]]))
        assert kappa[0] == kappa[1] and cd[0] == cd[1]

    def test_duplicates_most_crowded(self):
        kappa, cd = crowding(np.array([[0.2, 0.2], [0.2, 0.2], [0.9, 0.1]]))
        assert math.isinf(kappa[0]) and math.isinf(kappa[1]) and np.isfinite(kappa[2])
        assert cd[0] == 0 and cd[2] > 0

    def test_matches_oracle(self, rng):
        X = rng.random((15, 3))
        np.testing.assert_allclose(crowding(X)[0], oracles.kappa(X.tolist()), rtol=1e-13)

    def test_objective_space_normalizes(self):
        F = np.array([[0.0, 0.0], [5.0, 100.0], [10.0, 200.0]])
        np.testing.assert_allclose(crowding(F=F, space=Space.OBJECTIVE)[0], np.array([3, 4, 3]) / np.sqrt(2))


class TestTruncation:
    def test_identity(self, rng):
        X = rng.random((6, 2))
        assert truncate_by_crowding(X, None, 6).tolist() == list(range(6))

    def test_zero_target(self, rng):
        assert truncate_by_crowding(rng.random((6, 2)), None, 0).size == 0

    def test_close_pair_loses_one(self):
        X = np.array([[0.0], [0.02], [0.5], [1.0]])
        kept = truncate_by_crowding(X, None, 3).tolist()
        assert len(kept) == 3 and {2, 3} <= set(kept) and len({0, 1} & set(kept)) == 1

    def test_beats_literal_max_crowddis_rule(self):
        X = np.array([[0.0], [0.02], [0.3], [0.32], [0.7], [0.71], [1.0], [0.5]])
        for target in (3, 4, 5, 6):
            ours = truncate_by_crowding(X, None, target).tolist()
            literal = oracles.truncate_literal_max_crowddis(X.tolist(), target)
            assert oracles.min_pairwise(X.tolist(), ours) > oracles.min_pairwise(X.tolist(), literal)

    def test_subset_and_deterministic(self, rng):
        X = rng.random((30, 2))
        F = rng.random((30, 2))
        a = truncate_by_crowding(X, F, 11, Space.COMBINED)
        b = truncate_by_crowding(X, F, 11, Space.COMBINED)
        assert np.array_equal(a, b) and len(set(a.tolist())) == 11
        assert set(a.tolist()) <= set(range(30))

    @pytest.mark.parametrize("space", list(Space))
    @pytest.mark.parametrize("seed", range(5))
    def test_permutation_stable(self, space, seed):
        rng = np.random.default_rng(seed)
        X, F = rng.random((25, 3)), rng.random((25, 2))
        perm = rng.permutation(25)
        a = set(truncate_by_crowding(X, F, 9, space).tolist())
        b = {int(perm[i]) for i in truncate_by_crowding(X[perm], F[perm], 9, space)}
        assert a == b

    def test_ties_go_to_lowest_index(self):
        # the two inner members are mirror images, equally crowded
        X = np.array([[0.0], [1.0], [2.0], [3.0]]) / 3
        assert truncate_by_crowding(X, None, 3).tolist() == [0, 2, 3]

    def test_duplicates_removed_first(self):
        X = np.array([[0.5, 0.5], [0.1, 0.1], [0.5, 0.5], [0.9, 0.9], [0.5, 0.5]])
        kept = truncate_by_crowding(X, None, 3).tolist()
        assert kept == [1, 3, 4]
