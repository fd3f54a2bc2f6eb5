from core.base_abstractions.misc import (
    AlgebraMismatchError,
    Bigrading,
    UnsupportedAlgebraError,
)
from core.base_abstractions.quiver import (
    Arrow,
    PathAlgebra,
    Quiver,
    build_A,
    build_B,
    dualize,
    pairing,
    relations_annihilate,
)
from utils.misc_utils import path_algebra_dimension


class TestPathAlgebra(object):
    def test_A1_basis(self, tmpdir):
        A = build_A(1)
        assert [p.name for p in A.basis] == ["0", "1", "i01", "x01"]
        assert A.grading(A.arrow("i01")) == Bigrading(0, 1)
        assert A.grading(A.arrow("x01")) == Bigrading(-1, -1)
        x = A.basis[A.arrow("x01")]
        assert (x.left, x.right) == (1, 0)

    def test_dimensions(self, tmpdir):
        for n in range(1, 5):
            assert len(build_A(n)) == path_algebra_dimension(n)
            assert len(build_B(n)) == path_algebra_dimension(n)
        assert len(build_A(4)) == 25

    def test_normal_forms(self, tmpdir):
        A = build_A(2)
        assert A.normalize(("i12", "x01")) == ("x12", "i01")
        assert A.normalize(("x12", "i01")) == ("x12", "i01")
        assert A.normalize(("x12", "x01")) is None
        assert A.normalize(("i01", "i12")) is None
        assert A.mult(A.arrow("i12"), A.arrow("x01")) == A.mult(
            A.arrow("x12"), A.arrow("i01")
        )
        assert A.mult(A.arrow("x12"), A.arrow("x01")) is None
        assert A.mult(A.arrow("i01"), A.arrow("i12")) is None

    def test_gradings_of_long_paths(self, tmpdir):
        A = build_A(3)
        assert A.grading(A.index_of_word(("i23", "i12", "i01"))) == Bigrading(0, 3)
        assert A.grading(A.index_of_word(("i23", "x12", "i01"))) == Bigrading(-1, 1)
        B = build_B(2)
        assert B.grading(B.index_of_word(("y10", "w21"))) == Bigrading(-3, 0)
        assert B.grading(B.index_of_word(("w10", "w21"))) == Bigrading(-4, -2)

    def test_idempotents(self, tmpdir):
        A = build_A(2)
        x = A.arrow("x12")
        assert A.mult(A.idempotent(2), x) == x
        assert A.mult(x, A.idempotent(1)) == x
        assert A.mult(A.idempotent(1), x) is None

    def test_associative(self, tmpdir):
        A = build_A(2)
        for a in range(len(A)):
            for b in range(len(A)):
                for c in range(len(A)):
                    ab, bc = A.mult(a, b), A.mult(b, c)
                    lhs = None if ab is None else A.mult(ab, c)
                    rhs = None if bc is None else A.mult(a, bc)
                    assert lhs == rhs

    def test_cyclic_quiver_rejected(self, tmpdir):
        arrows = [
            Arrow("a", 0, 1, Bigrading(0, 1), False),
            Arrow("b", 0, 1, Bigrading(0, 1), True),
            Arrow("c", 1, 0, Bigrading(0, 1), False),
            Arrow("d", 1, 0, Bigrading(0, 1), True),
        ]
        failed = False
        try:
            PathAlgebra(Quiver(2, arrows), "cyclic")
        except UnsupportedAlgebraError:
            failed = True
        assert failed

    def test_missing_partner_rejected(self, tmpdir):
        failed = False
        try:
            Quiver(2, [Arrow("a", 0, 1, Bigrading(0, 1), False)])
        except UnsupportedAlgebraError:
            failed = True
        assert failed

    def test_empty_quiver_unsupported(self, tmpdir):
        for build in (build_A, build_B):
            for n in (0, -1):
                failed = False
                try:
                    build(n)
                except UnsupportedAlgebraError:
                    failed = True
                assert failed


class TestKoszulDuality(object):
    def test_pairing(self, tmpdir):
        assert pairing(build_A(1), build_B(1)) == {"i01": "y10", "x01": "w10"}

    def test_relations_annihilate(self, tmpdir):
        for n in range(1, 4):
            assert relations_annihilate(build_A(n), build_B(n))

    def test_mismatch(self, tmpdir):
        for other in (build_A(1), build_B(2)):
            failed = False
            try:
                pairing(build_A(1), other)
            except AlgebraMismatchError:
                failed = True
            assert failed

    def test_contractions(self, tmpdir):
        B = build_B(2)
        bstar = dualize(B)
        y = B.index_of_word(("y10", "w21"))
        assert bstar.name_of(y) == "w21y10"
        assert (bstar.left(y), bstar.right(y)) == (2, 0)
        assert bstar.grading(y) == Bigrading(-3, 0)

        assert bstar.strip_left(y, "w21") == B.arrow("y10")
        assert bstar.strip_left(y, "y21") == B.arrow("w10")
        assert bstar.strip_right(y, "y10") == B.arrow("w21")
        assert bstar.strip_right(y, "w10") == B.arrow("y21")

        w = B.index_of_word(("w10", "w21"))
        assert bstar.strip_left(w, "y21") is None
        assert bstar.strip_left(w, "w21") == B.arrow("w10")

        y1 = B.arrow("y10")
        assert bstar.strip_left(y1, "y10") == B.idempotent(0)
        assert bstar.strip_right(y1, "y10") == B.idempotent(1)
        assert bstar.strip_left(y1, "w10") is None


if __name__ == "__main__":
    TestPathAlgebra().test_normal_forms(None)  # type:ignore
    TestKoszulDuality().test_contractions(None)  # type:ignore
