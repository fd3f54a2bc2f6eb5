import numpy as np

from core.algorithms.f2linalg import (
    ChainComplex,
    Generator,
    SparseMatF2,
    cancel_pair,
    dense_rank,
    homology,
    random_choice,
    rank,
    reduce_complex,
)
from core.algorithms.hochschild import hochschild_complex
from core.base_abstractions.bimodule import NEGATIVE, derived_tensor, elementary
from core.base_abstractions.misc import (
    Bigrading,
    IllFormedComplexError,
    InvalidCancellationError,
)
from core.base_abstractions.quiver import build_A


def _random_acyclic_pairs_complex(rng: np.random.RandomState):
    """A direct sum of cancelling pairs and isolated generators in three
    homological degrees, conjugated by random elementary changes of basis."""
    degrees = []
    entries = []
    for h in range(3):
        for _ in range(rng.randint(1, 4)):
            degrees.append(h)
    n_pairs = 0
    for h in range(2):
        src = [i for i, d in enumerate(degrees) if d == h]
        dst = [i for i, d in enumerate(degrees) if d == h + 1]
        used_src = set(j for j, _ in entries)
        used_dst = set(k for _, k in entries)
        for i, j in zip(src, dst):
            if i not in used_src and i not in used_dst and j not in used_src and j not in used_dst:
                entries.append((i, j))
                n_pairs += 1
                break
    n = len(degrees)
    d = np.zeros((n, n), dtype=np.uint8)
    for i, j in entries:
        d[i, j] = 1
    for _ in range(20):
        i, j = rng.randint(n), rng.randint(n)
        if i == j or degrees[i] != degrees[j]:
            continue
        e = np.eye(n, dtype=np.uint8)
        e[i, j] = 1
        d = (e @ d @ e) % 2
    gens = [Generator("g{}".format(i), Bigrading(h, 0)) for i, h in enumerate(degrees)]
    return ChainComplex(gens, SparseMatF2.from_dense(d)), n - 2 * n_pairs


class TestSparseMatF2(object):
    def test_rank_matches_dense(self, tmpdir):
        rng = np.random.RandomState(12345)
        for _ in range(30):
            rows, cols = rng.randint(1, 12), rng.randint(1, 12)
            dense = rng.randint(0, 2, size=(rows, cols)).astype(np.uint8)
            mat = SparseMatF2.from_dense(dense)
            assert rank(mat) == dense_rank(dense)
            assert rank(mat.transpose()) == rank(mat)

    def test_entries_toggle(self, tmpdir):
        mat = SparseMatF2.from_entries(2, 2, [(0, 1), (1, 0), (0, 1)])
        assert mat.entries() == [(1, 0)]
        assert not mat.is_zero()
        assert SparseMatF2.zeros(3, 2).is_zero()

    def test_matmul_matches_numpy(self, tmpdir):
        rng = np.random.RandomState(7)
        a = rng.randint(0, 2, size=(4, 5)).astype(np.uint8)
        b = rng.randint(0, 2, size=(5, 3)).astype(np.uint8)
        prod = SparseMatF2.from_dense(a).matmul(SparseMatF2.from_dense(b))
        assert (prod.to_dense() == (a.astype(int) @ b.astype(int)) % 2).all()

    def test_out_of_range_entry(self, tmpdir):
        failed = False
        try:
            SparseMatF2(1, 2, [[2]])
        except IndexError:
            failed = True
        assert failed


class TestChainComplex(object):
    def test_bad_grading_rejected(self, tmpdir):
        gens = [Generator("a", Bigrading(0, 0)), Generator("b", Bigrading(1, 1))]
        failed = False
        try:
            ChainComplex(gens, SparseMatF2(2, 2, [[1], []]))
        except IllFormedComplexError:
            failed = True
        assert failed

    def test_homology_of_small_complex(self, tmpdir):
        gens = [
            Generator("a", Bigrading(0, 0)),
            Generator("b", Bigrading(1, 0)),
            Generator("c", Bigrading(1, 2)),
        ]
        c = ChainComplex(gens, SparseMatF2(3, 3, [[1], [], []]))
        assert homology(c) == {Bigrading(1, 2): 1}
        assert len(reduce_complex(c)) == 1

    def test_nonzero_square_detected(self, tmpdir):
        gens = [Generator(str(h), Bigrading(h, 0)) for h in range(3)]
        c = ChainComplex(gens, SparseMatF2(3, 3, [[1], [2], []]))
        assert not c.squares_to_zero()
        failed = False
        try:
            homology(c)
        except IllFormedComplexError:
            failed = True
        assert failed

    def test_cancel_pair_zigzag(self, tmpdir):
        # x -> a <- b -> y becomes x -> y
        gens = [
            Generator("x", Bigrading(0, 0)),
            Generator("b", Bigrading(0, 0)),
            Generator("a", Bigrading(1, 0)),
            Generator("y", Bigrading(1, 0)),
        ]
        c = ChainComplex(gens, SparseMatF2(4, 4, [[2], [2, 3], [], []]))
        reduced = cancel_pair(c, 1, 2)
        assert [g.name for g in reduced.generators] == ["x", "y"]
        assert reduced.differential.entries() == [(0, 1)]

    def test_invalid_cancellation(self, tmpdir):
        gens = [Generator("a", Bigrading(0, 0)), Generator("b", Bigrading(1, 0))]
        c = ChainComplex(gens, SparseMatF2(2, 2, [[], []]))
        failed = False
        try:
            cancel_pair(c, 0, 1)
        except InvalidCancellationError:
            failed = True
        assert failed

    def test_cancellation_order_independent(self, tmpdir):
        rng = np.random.RandomState(2020)
        for _ in range(10):
            c, expected = _random_acyclic_pairs_complex(rng)
            assert c.squares_to_zero()
            assert sum(homology(c).values()) == expected
            assert len(reduce_complex(c)) == expected
            assert len(reduce_complex(c, random_choice(rng))) == expected


def _hopf_e0() -> ChainComplex:
    half = elementary(build_A(1), 1, NEGATIVE)
    return hochschild_complex(derived_tensor(half, half), (0, 2)).complex


def _cancel_one_at_a_time(c: ChainComplex) -> ChainComplex:
    while not c.differential.is_zero():
        b = next(i for i, r in enumerate(c.differential.rows) if r)
        c = cancel_pair(c, b, min(c.differential.rows[b]))
    return c


class TestHopfCancellation(object):
    def test_quantum_two_summand(self, tmpdir):
        q2 = _hopf_e0().quantum_summand(2)
        assert len(q2) == 21
        reduced = _cancel_one_at_a_time(q2)
        assert [g.grading for g in reduced.generators] == [Bigrading(0, 2)]

    def test_quantum_four_summand(self, tmpdir):
        q4 = _hopf_e0().quantum_summand(4)
        assert len(q4) == 12
        reduced = _cancel_one_at_a_time(q4)
        assert sorted(g.grading for g in reduced.generators) == [
            Bigrading(1, 4),
            Bigrading(2, 4),
        ]
        rng = np.random.RandomState(7)
        assert reduce_complex(q4, random_choice(rng)).graded_dimensions() == {
            Bigrading(1, 4): 1,
            Bigrading(2, 4): 1,
        }

    def test_summands_cover_complex(self, tmpdir):
        c = _hopf_e0()
        assert sum(len(c.quantum_summand(q)) for q in (2, 4, 6)) == len(c)


if __name__ == "__main__":
    TestSparseMatF2().test_rank_matches_dense(None)  # type:ignore
    TestChainComplex().test_cancellation_order_independent(None)  # type:ignore
