from core.algorithms.hochschild import hochschild_homology
from core.algorithms.tate import (
    ReplayStep,
    check_involution,
    pages,
    pi_formality_replay,
    rank_parity,
    tate_complex,
)
from core.base_abstractions.bimodule import (
    NEGATIVE,
    POSITIVE,
    derived_tensor,
    direct_sum,
    elementary,
    regular,
    shift,
)
from core.base_abstractions.misc import (
    Bigrading,
    NonConvergenceError,
    NotDoubledError,
)
from core.base_abstractions.quiver import arrow_label, build_A, build_B

HOPF_SHIFT = (0, 2)


def _hopf_doubled():
    half = elementary(build_A(1), 1, NEGATIVE)
    return derived_tensor(half, half)


class TestTateComplex(object):
    def test_involution(self, tmpdir):
        t = tate_complex(_hopf_doubled(), HOPF_SHIFT)
        assert check_involution(t)
        names = [g.name for g in t.hochschild.complex.generators]
        g = names.index("1|w10|t1|1")
        assert names[t.tau[g]] == "t1|1|1|w10"

    def test_not_doubled(self, tmpdir):
        A = build_A(1)
        for m in [
            elementary(A, 1, NEGATIVE),
            derived_tensor(elementary(A, 1, NEGATIVE), elementary(A, 1, POSITIVE)),
        ]:
            failed = False
            try:
                tate_complex(m)
            except NotDoubledError:
                failed = True
            assert failed


class TestPages(object):
    def test_hopf_pages(self, tmpdir):
        result = pages(_hopf_doubled(), shift=HOPF_SHIFT)
        assert result.pages[0].ranks() == {
            Bigrading(0, 2): 7,
            Bigrading(1, 2): 10,
            Bigrading(2, 2): 4,
            Bigrading(1, 4): 6,
            Bigrading(2, 4): 6,
            Bigrading(2, 6): 1,
        }
        assert result.pages[1].ranks() == {
            Bigrading(0, 2): 1,
            Bigrading(1, 4): 1,
            Bigrading(2, 4): 1,
            Bigrading(2, 6): 1,
        }
        assert result.e_infinity.ranks() == {Bigrading(0, 2): 1, Bigrading(2, 6): 1}
        assert result.stabilized_at == 3
        assert result.odd_violations == []
        assert [p.index for p in result.pages] == list(range(len(result.pages)))

    def test_hopf_d2(self, tmpdir):
        result = pages(_hopf_doubled(), shift=HOPF_SHIFT)
        page = result.pages[2]
        grading = dict(page.generators)
        assert len(page.differential) == 1
        src, dst = page.differential[0]
        assert grading[src] == Bigrading(2, 4)
        assert grading[dst] == Bigrading(1, 4)
        assert result.pages[1].differential == []

    def test_swapped_summands(self, tmpdir):
        A = build_A(1)
        m = direct_sum(regular(A), shift(regular(A), 0, 2))
        result = pages(derived_tensor(m, m))
        assert len(result.pages[1].differential) > 0
        assert result.odd_violations == []
        assert len(result.e_infinity.generators) == sum(hochschild_homology(m).values())
        parities = rank_parity(result)
        assert all(p == parities[0] for p in parities)

    def test_rank_parity(self, tmpdir):
        parity = rank_parity(pages(_hopf_doubled(), shift=HOPF_SHIFT))
        assert all(p == parity[1] for p in parity[1:])

    def test_non_convergence(self, tmpdir):
        failed = False
        try:
            pages(_hopf_doubled(), shift=HOPF_SHIFT, max_pages=1)
        except NonConvergenceError:
            failed = True
        assert failed


class TestPiFormality(object):
    def test_replay_A1(self, tmpdir):
        steps = pi_formality_replay(1)
        assert len(steps) == 3
        assert (len(steps[0].boundary), len(steps[0].representative)) == (8, 4)
        assert len(steps[1].boundary) == 4
        assert steps[1].representative == ["x01|w10|i01|y10", "x01|y10|i01|w10"]
        assert steps[2] == ReplayStep([], [])

    def test_zigzag_remainder(self, tmpdir):
        for n in range(1, 5):
            representative = pi_formality_replay(n)[1].representative
            for i in range(n):
                x, iota = arrow_label("x", i, i + 1), arrow_label("i", i, i + 1)
                w, y = arrow_label("w", i + 1, i), arrow_label("y", i + 1, i)
                assert "|".join([x, w, iota, y]) in representative
                assert "|".join([x, y, iota, w]) in representative

    def test_last_representative_shape(self, tmpdir):
        for n in (3, 4):
            A, B = build_A(n), build_B(n)
            algebras = (A, B, A, B)
            index = [{p.name: k for k, p in enumerate(alg.basis)} for alg in algebras]
            steps = pi_formality_replay(n)
            assert len(steps[3].boundary) == 2 * (n - 2)
            representative = steps[3].representative
            assert len(representative) == n - 2
            for term in representative:
                factors = [d[f] for d, f in zip(index, term.split("|"))]
                lengths = [alg.basis[k].length for alg, k in zip(algebras, factors)]
                assert lengths == [2, 3, 2, 1]
                assert all(alg.contains_special(k) for alg, k in zip(algebras, factors))
        assert "x12i01|y10w21w32|x23i12|y21" in pi_formality_replay(3)[3].representative

    def test_replay_terminates(self, tmpdir):
        for n in range(1, 5):
            steps = pi_formality_replay(n)
            assert steps[-1] == ReplayStep([], [])
            for step in steps[:-1]:
                assert 2 * len(step.representative) == len(step.boundary)


if __name__ == "__main__":
    TestPages().test_hopf_pages(None)  # type:ignore
    TestPiFormality().test_replay_A1(None)  # type:ignore
