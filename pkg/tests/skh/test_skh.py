import itertools

from core.algorithms.skh import (
    batch,
    closure_shift,
    decat_check,
    doubling_report,
    euler_characteristic,
    poincare_polynomial,
    skh_next_to_top,
)
from core.algorithms.tate import rank_parity
from core.base_abstractions.bimodule import NEGATIVE, POSITIVE, BraidWord
from core.base_abstractions.misc import Bigrading, LaurentPoly


def _skh(text: str, strands: int = 2):
    return skh_next_to_top(BraidWord.parse(text, strands)).ranks


def _letters(strands: int):
    return [(i, s) for i in range(1, strands) for s in (POSITIVE, NEGATIVE)]


def _words(strands: int, max_length: int, up_to_rotation: bool = False):
    seen = set()
    for length in range(max_length + 1):
        for letters in itertools.product(_letters(strands), repeat=length):
            if up_to_rotation and length > 0:
                letters = min(letters[k:] + letters[:k] for k in range(length))
            if letters not in seen:
                seen.add(letters)
                yield BraidWord.make(strands, letters)


class TestSkh(object):
    def test_closure_shift(self, tmpdir):
        assert closure_shift(BraidWord.parse("s1 s1", 2)) == Bigrading(0, 2)
        assert closure_shift(BraidWord.parse("S1 s2 S1", 3)) == Bigrading(2, -2)

    def test_two_strands(self, tmpdir):
        assert _skh("") == {Bigrading(0, 0): 2}
        assert _skh("s1") == {Bigrading(0, 1): 1, Bigrading(1, 3): 1}
        assert _skh("S1") == {Bigrading(0, -1): 1, Bigrading(-1, -3): 1}
        assert _skh("s1 s1") == {
            Bigrading(0, 2): 1,
            Bigrading(1, 4): 1,
            Bigrading(2, 4): 1,
            Bigrading(2, 6): 1,
        }

    def test_result_fields(self, tmpdir):
        result = skh_next_to_top(BraidWord.parse("s1", 2))
        assert result.winding == 0
        assert result.total_rank == 2
        assert poincare_polynomial(result) == "q^1 + t^1 q^3"
        assert poincare_polynomial(skh_next_to_top(BraidWord.parse("", 2))) == "2 q^0"
        assert skh_next_to_top(BraidWord.parse("", 3)).winding == 1

    def test_euler_characteristic(self, tmpdir):
        hopf = skh_next_to_top(BraidWord.parse("s1 s1", 2))
        assert euler_characteristic(hopf) == LaurentPoly({2: 1, 6: 1})
        s1 = skh_next_to_top(BraidWord.parse("s1", 2))
        assert euler_characteristic(s1) == LaurentPoly({1: 1, 3: -1})

    def test_reidemeister_two(self, tmpdir):
        assert _skh("s1 S1") == _skh("")
        assert _skh("S1 s1") == _skh("")
        assert _skh("s2 S2", 3) == _skh("", 3)

    def test_conjugation(self, tmpdir):
        assert _skh("s1 S2", 3) == _skh("S2 s1", 3)

    def test_braid_relation(self, tmpdir):
        assert _skh("s1 s2 s1", 3) == _skh("s2 s1 s2", 3)
        assert _skh("S1 S2 S1", 3) == _skh("S2 S1 S2", 3)

    def test_braid_relation_all_signs(self, tmpdir):
        for a, b, c in itertools.product((POSITIVE, NEGATIVE), repeat=3):
            lhs = BraidWord.make(3, [(1, a), (2, b), (1, c)])
            rhs = BraidWord.make(3, [(2, c), (1, b), (2, a)])
            assert skh_next_to_top(lhs).ranks == skh_next_to_top(rhs).ranks, str(lhs)

    def test_conjugation_invariance(self, tmpdir):
        for word in _words(3, 2):
            expected = skh_next_to_top(word).ranks
            for i, sign in _letters(3):
                conjugate = BraidWord.make(3, ((i, sign),) + word.letters + ((i, -sign),))
                assert skh_next_to_top(conjugate).ranks == expected, str(conjugate)
            if len(word.letters) > 1:
                rotated = BraidWord.make(3, word.letters[1:] + word.letters[:1])
                assert skh_next_to_top(rotated).ranks == expected, str(rotated)


class TestDecategorification(object):
    def test_congruent(self, tmpdir):
        for text in ["", "s1", "S1", "s1 s1", "S1 s1"]:
            check = decat_check(BraidWord.parse(text, 2))
            assert check.congruent
            assert check.lhs == check.rhs

    def test_hopf_values(self, tmpdir):
        check = decat_check(BraidWord.parse("s1", 2))
        assert check.lhs == LaurentPoly({2: 1, 6: 1})

    def test_sweep(self, tmpdir):
        for strands in (2, 3):
            for word in _words(strands, 4, up_to_rotation=True):
                assert decat_check(word).congruent, str(word)


class TestDoublingReport(object):
    def test_positive_crossing(self, tmpdir):
        report = doubling_report(BraidWord.parse("s1", 2), strict=True)
        assert report.violations == []
        assert report.e_infinity_halved() == [(0, 1), (2, 3)]
        assert report.tate.stabilized_at == 3
        assert report.sigma_squared.ranks == report.tate.pages[1].ranks()

    def test_negative_crossing(self, tmpdir):
        report = doubling_report(BraidWord.parse("S1", 2))
        assert report.violations == []
        assert len(report.tate.e_infinity.generators) == 2

    def test_short_words(self, tmpdir):
        for strands in (2, 3):
            for word in _words(strands, 2):
                report = doubling_report(word)
                assert report.violations == [], str(word)
                parities = rank_parity(report.tate)
                assert all(p == parities[0] for p in parities), str(word)

    def test_mixed_signs_first_differential(self, tmpdir):
        for text in ("s1 S2", "S1 s2"):
            report = doubling_report(BraidWord.parse(text, 3), strict=True)
            assert len(report.tate.pages[1].differential) > 0
            assert report.tate.odd_violations == []
            assert len(report.tate.e_infinity.generators) == report.sigma.total_rank


class TestBatch(object):
    def test_parallel_matches_serial(self, tmpdir):
        words = [BraidWord.parse(t, 2) for t in ["", "s1", "S1", "s1 s1"]]
        serial = batch(words, jobs=1)
        parallel = batch(words, jobs=2)
        assert [r.ranks for r in parallel] == [r.ranks for r in serial]
        assert [r.word for r in parallel] == words


if __name__ == "__main__":
    TestSkh().test_two_strands(None)  # type:ignore
    TestDoublingReport().test_positive_crossing(None)  # type:ignore
