"""
Exact linear algebra over F_p: rank paths, echelon forms, kernels, solves
"""
import numpy as np
import pytest

from syzygy.core.errors import MalformedInputError, UsageError
from syzygy.models.matrix import FpMatrix
from syzygy.services.exactla_service import ExactLinearAlgebraService, exact_la
from syzygy.services.field_service import field_service

P = 1000003


def random_product(seed: int, rows: int, inner: int, cols: int, p: int = P) -> np.ndarray:
    rng = np.random.default_rng(seed)
    left = rng.integers(0, p, size=(rows, inner))
    right = rng.integers(0, p, size=(inner, cols))
    return FpMatrix.from_dense(left, p).matmul(FpMatrix.from_dense(right, p)).to_dense()


def test_default_prime_is_smallest_above_floor():
    assert field_service.default_prime(1) == 1000003
    assert field_service.prime_field(level=3).p % 3 == 1


def test_prime_field_rejects_bad_primes():
    with pytest.raises(UsageError):
        field_service.prime_field(prime=1000001)
    with pytest.raises(UsageError):
        field_service.prime_field(prime=(1 << 26) + 15)
    with pytest.raises(UsageError):
        field_service.prime_field(level=2, prime=2)


def test_zeta_has_exact_order(field_level3):
    zeta = field_level3.zeta
    p = field_level3.p
    assert pow(zeta, 3, p) == 1
    assert zeta != 1


def test_from_coo_sums_duplicates_and_drops_zeros():
    m = FpMatrix.from_coo(2, 2, [0, 0, 1], [0, 0, 1], [3, P - 3, 5], P)
    assert m.entries() == [(1, 1, 5)]


def test_matmul_is_exact_for_large_entries():
    a = FpMatrix.from_dense([[P - 1, P - 2], [P - 3, 1]], P)
    b = FpMatrix.from_dense([[P - 1], [P - 1]], P)
    expected = np.array([[(P - 1) * (P - 1) + (P - 2) * (P - 1)], [(P - 3) * (P - 1) + (P - 1)]], dtype=object) % P
    assert a.matmul(b).to_dense().tolist() == expected.astype(np.int64).tolist()


def test_rank_of_small_matrices():
    assert exact_la.rank(FpMatrix.zeros(3, 4, P)) == 0
    assert exact_la.rank(FpMatrix.identity(5, P)) == 5
    m = FpMatrix.from_dense([[1, 2, 3], [2, 4, 6], [1, 0, 1]], P)
    assert exact_la.rank(m) == 2


def test_rank_mod_small_prime_sees_characteristic():
    m = FpMatrix.from_dense([[1, 1], [1, 8]], 7)
    assert exact_la.rank(m) == 1
    assert exact_la.rank(FpMatrix.from_dense([[1, 1], [1, 8]], 11)) == 2


@pytest.mark.parametrize("seed,shape,inner", [(1, (40, 30), 12), (2, (25, 60), 20), (3, (50, 50), 50)])
def test_sparse_and_dense_paths_agree(seed, shape, inner):
    dense = random_product(seed, shape[0], inner, shape[1])
    m = FpMatrix.from_dense(dense, P)
    sparse_first = ExactLinearAlgebraService(dense_fill_threshold=1.0, markowitz_cost_limit=10**9)
    dense_first = ExactLinearAlgebraService(dense_fill_threshold=1e-9, markowitz_cost_limit=0)
    expected = exact_la.rank_dense(dense, P)
    assert sparse_first.rank(m) == expected
    assert dense_first.rank(m) == expected
    assert expected <= inner


def test_rank_of_sparse_band_matrix():
    n = 200
    entries = [(i, i, 1) for i in range(n)] + [(i, i + 1, P - 1) for i in range(n - 1)]
    m = FpMatrix.from_entries(n, n, entries, P)
    assert exact_la.rank(m) == n
    truncated = FpMatrix.from_entries(n - 1, n, [(i, i, 1) for i in range(n - 1)] + [(i, i + 1, P - 1) for i in range(n - 1)], P)
    assert exact_la.rank(truncated) == n - 1


def test_rref_is_canonical():
    a = np.array([[2, 4, 2], [1, 2, 3]])
    reduced, pivots = exact_la.rref(a, P)
    assert pivots == [0, 2]
    assert reduced.tolist() == [[1, 2, 0], [0, 0, 1]]
    with pytest.raises(MalformedInputError):
        exact_la.rref(a)


def test_kernel_basis_spans_null_space():
    m = FpMatrix.from_dense([[1, 2, 3, 4], [0, 1, 1, 1]], P)
    kernel = exact_la.kernel_basis(m)
    assert len(kernel) == 2
    for vector in kernel:
        assert not np.any(m.apply(vector))


def test_solve_membership():
    m = FpMatrix.from_dense([[1, 0], [0, 1], [1, 1]], P)
    x = exact_la.solve_membership(m, [3, 4, 7])
    assert x.tolist() == [3, 4]
    assert exact_la.solve_membership(m, [3, 4, 8]) is None
    with pytest.raises(MalformedInputError):
        exact_la.solve_membership(m, [1, 2])


def test_determinant():
    assert exact_la.determinant([[1, 2], [3, 4]], P) == (-2) % P
    assert exact_la.determinant([[0, 1], [1, 0]], P) == P - 1
    assert exact_la.determinant([[1, 2], [2, 4]], P) == 0
    with pytest.raises(MalformedInputError):
        exact_la.determinant([[1, 2, 3]], P)


@pytest.mark.parametrize("seed", [4, 5, 6])
def test_rank_is_invariant_under_row_permutations(seed):
    dense = random_product(seed, 30, 12, 25)
    m = FpMatrix.from_dense(dense, P)
    order = np.random.default_rng(seed).permutation(m.rows).tolist()
    permuted = m.permute_rows(order)
    assert permuted.to_dense().tolist() == dense[order].tolist()
    assert exact_la.rank(permuted) == exact_la.rank(m) == 12


@pytest.mark.parametrize("seed", range(5))
def test_solve_membership_recovers_random_combinations(seed):
    m = FpMatrix.from_dense(random_product(seed, 20, 8, 12), P)
    x = np.random.default_rng(seed).integers(0, P, size=12)
    v = m.apply(x)
    solution = exact_la.solve_membership(m, v)
    assert solution is not None
    assert m.apply(solution).tolist() == v.tolist()
    outside = v.copy()
    outside[0] = (outside[0] + 1) % P
    assert exact_la.solve_membership(m, outside) is None
