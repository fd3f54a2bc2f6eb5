"""Small shared types: bigradings, Laurent polynomials in the quantum variable
and the exception hierarchy."""

from collections import OrderedDict
from typing import Dict, Iterable, Mapping, NamedTuple, Tuple, Union


class Bigrading(NamedTuple):
    """A (homological, quantum) bigrading.

    Differentials raise `hom` by one and preserve `quantum`.
    """

    hom: int
    quantum: int

    def plus(self, other: Union["Bigrading", Tuple[int, int]]) -> "Bigrading":
        return Bigrading(self.hom + other[0], self.quantum + other[1])

    def minus(self, other: Union["Bigrading", Tuple[int, int]]) -> "Bigrading":
        return Bigrading(self.hom - other[0], self.quantum - other[1])


ZERO_GRADING = Bigrading(0, 0)

RankTable = Dict[Bigrading, int]


def total_grading(gradings: Iterable[Tuple[int, int]]) -> Bigrading:
    hom, quantum = 0, 0
    for g in gradings:
        hom += g[0]
        quantum += g[1]
    return Bigrading(hom, quantum)


def sorted_ranks(ranks: Mapping[Tuple[int, int], int]) -> "OrderedDict[Bigrading, int]":
    """Drops zero entries and orders a rank table by (hom, quantum)."""
    return OrderedDict(
        (Bigrading(*k), ranks[k]) for k in sorted(ranks) if ranks[k] != 0
    )


class LaurentPoly(object):
    """Finitely supported integer Laurent polynomial in the quantum variable
    `y`.

    # Attributes

    coefficients : Mapping `exponent -> coefficient`, zero coefficients are never stored.
    """

    def __init__(self, coefficients: Mapping[int, int] = None):
        self.coefficients: Dict[int, int] = {
            e: c for e, c in (coefficients or {}).items() if c != 0
        }

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPoly":
        return cls({exponent: coefficient})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coefficients)
        for e, c in other.coefficients.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: Dict[int, int] = {}
        for e1, c1 in self.coefficients.items():
            for e2, c2 in other.coefficients.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(tuple(sorted(self.coefficients.items())))

    def shift(self, k: int) -> "LaurentPoly":
        """Multiplication by `y**k`."""
        return LaurentPoly({e + k: c for e, c in self.coefficients.items()})

    def mod2(self) -> "LaurentPoly":
        return LaurentPoly({e: c % 2 for e, c in self.coefficients.items()})

    def is_zero(self) -> bool:
        return len(self.coefficients) == 0

    def to_json(self) -> Dict[str, int]:
        return OrderedDict((str(e), self.coefficients[e]) for e in sorted(self.coefficients))

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for e in sorted(self.coefficients):
            c = self.coefficients[e]
            mono = "1" if e == 0 else ("y" if e == 1 else "y^{}".format(e))
            if mono == "1":
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append("{}{}".format(c, mono))
        return " + ".join(terms).replace("+ -", "- ")


class SkhError(Exception):
    """Base class of all errors raised by this package."""


class InvalidCancellationError(SkhError):
    pass


class IllFormedComplexError(SkhError):
    pass


class UnsupportedAlgebraError(SkhError):
    pass


class AlgebraMismatchError(SkhError):
    pass


class InvalidCrossingError(SkhError):
    pass


class InvalidConfigError(SkhError):
    pass


class BraidParseError(SkhError):
    def __init__(self, message: str, position: int):
        super().__init__("{} (token {})".format(message, position))
        self.position = position


class TruncationInsufficientError(SkhError):
    pass


class NotDoubledError(SkhError):
    pass


class NotPiFormalError(SkhError):
    pass


class NonConvergenceError(SkhError):
    pass


class TheoremViolationError(SkhError):
    pass
