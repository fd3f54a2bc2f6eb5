"""Next-to-top winding grading of sutured annular Khovanov homology of braid
closures, its decategorification and the doubling spectral sequence."""

import functools
import multiprocessing as mp
from fractions import Fraction
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple

from core.algorithms.hochschild import hochschild_homology
from core.algorithms.tate import TateResult, pages
from core.base_abstractions.bimodule import BraidWord
from core.base_abstractions.misc import (
    Bigrading,
    LaurentPoly,
    RankTable,
    TheoremViolationError,
    sorted_ranks,
)
from core.base_abstractions.twisted import box, reduced_braid_bimodule
from utils.misc_utils import partition_sequence
from utils.system import get_logger


def closure_shift(word: BraidWord) -> Bigrading:
    """Bigrading shift turning `HH(A_n, M_{m(w)})` into the next-to-top winding
    grading of `SKh` of the closure of `w`: `[-n_-]{(n-1) + n_+ - 2 n_-}`."""
    return Bigrading(word.n_minus, (word.n - 1) + word.n_plus - 2 * word.n_minus)


class SkhResult(NamedTuple):
    """
    # Attributes

    word : The braid word.
    winding : The annular grading, always `n - 1`.
    ranks : Bigraded ranks, zero entries omitted.
    """

    word: BraidWord
    winding: int
    ranks: RankTable

    @property
    def total_rank(self) -> int:
        return sum(self.ranks.values())


def skh_next_to_top(word: BraidWord) -> SkhResult:
    m = reduced_braid_bimodule(word.mirror())
    ranks = hochschild_homology(m, closure_shift(word))
    table = dict(sorted_ranks(ranks))
    get_logger().info(
        "SKh of {!r} on {} strands: {}".format(str(word), word.strands, table)
    )
    return SkhResult(word, word.n - 1, table)


def euler_characteristic(result: SkhResult) -> LaurentPoly:
    """`sum_{h,q} (-1)^h y^q rank`."""
    out = LaurentPoly()
    for (h, q), r in result.ranks.items():
        out = out + LaurentPoly.monomial(q, r if h % 2 == 0 else -r)
    return out


def poincare_polynomial(result: SkhResult) -> str:
    """Renders `sum t^h q^q rank` as e.g. `"q^2 + t^1 q^4 + 2 t^2 q^6"`, terms
    ordered by `(h, q)`."""
    terms = []
    for g, r in sorted_ranks(result.ranks).items():
        parts = [] if r == 1 else [str(r)]
        if g.hom != 0:
            parts.append("t^{}".format(g.hom))
        parts.append("q^{}".format(g.quantum))
        terms.append(" ".join(parts))
    return " + ".join(terms) or "0"


class DecatCheck(NamedTuple):
    lhs: LaurentPoly
    rhs: LaurentPoly
    congruent: bool


def decat_check(
    word: BraidWord,
    sigma: Optional[SkhResult] = None,
    sigma_squared: Optional[SkhResult] = None,
) -> DecatCheck:
    """Compares `y^(n-1) q(w^2)` with `q(w)^2` modulo 2, where `q` is the graded
    Euler characteristic of the next-to-top winding grading."""
    sigma = sigma or skh_next_to_top(word)
    sigma_squared = sigma_squared or skh_next_to_top(word.squared())
    lhs = euler_characteristic(sigma_squared).shift(word.n - 1).mod2()
    q = euler_characteristic(sigma)
    rhs = (q * q).mod2()
    return DecatCheck(lhs, rhs, lhs == rhs)


class DoublingReport(NamedTuple):
    """Everything computed for the doubling spectral sequence of one braid.

    # Attributes

    word : The braid word `w`.
    tate : Pages of the spectral sequence of `M_{m(w)} (x)L M_{m(w)}`, shifted like `SKh` of `w^2`.
    sigma : `SKh` of the closure of `w`.
    sigma_squared : `SKh` of the closure of `w^2`.
    decat : The mod 2 decategorified comparison.
    violations : Human readable descriptions of every failed expectation.
    """

    word: BraidWord
    tate: TateResult
    sigma: SkhResult
    sigma_squared: SkhResult
    decat: DecatCheck
    violations: List[str]

    def e_infinity_halved(self) -> List[Tuple[int, Fraction]]:
        """`E^infinity` bigradings `(h, q)` rewritten as `(h, (q + n - 1) / 2)`,
        whose quantum parts match `SKh` of the closure of `w`."""
        return _halve(self.tate, self.word)


def _halve(tate: TateResult, word: BraidWord) -> List[Tuple[int, Fraction]]:
    """Maps each `E^infinity` bigrading `(h, q)` to `(h, (q + n - 1) / 2)`.

    `n - 1` is the winding label, `strands - 2`, so two strand braids add
    nothing: `(2, 6)` becomes `(2, 3)`. The homological grading is kept as is.
    Taking the label to be `1` on two strands and shifting and halving both
    gradings would instead give `(3/2, 7/2)`.
    """
    return sorted(
        (g.hom, Fraction(g.quantum + word.n - 1, 2))
        for _, g in tate.e_infinity.generators
    )


def doubling_report(
    word: BraidWord, strict: bool = False, max_pages: Optional[int] = None
) -> DoublingReport:
    """Runs the doubling spectral sequence for `w` and checks that

    - `E^1` agrees with `SKh` of the closure of `w^2`,
    - `E^infinity` has the total rank of `SKh` of the closure of `w`,
    - odd differentials from `d^3` on vanish, and
    - the decategorified congruence holds.

    Halved `E^infinity` quantum gradings are only logged next to those of `SKh(w)`.

    # Parameters

    word : The braid word.
    strict : Raise `TheoremViolationError` instead of recording violations.
    max_pages : Page cap passed to `pages`, its gin binding when `None`.
    """
    n_half = reduced_braid_bimodule(word.mirror())
    doubled = box(n_half, n_half)
    if max_pages is None:
        tate = pages(doubled, shift=closure_shift(word.squared()))
    else:
        tate = pages(doubled, shift=closure_shift(word.squared()), max_pages=max_pages)

    sigma = skh_next_to_top(word)
    sigma_squared = skh_next_to_top(word.squared())
    decat = decat_check(word, sigma, sigma_squared)

    violations = []
    e1 = dict(sorted_ranks(tate.pages[1].ranks()))
    if e1 != sigma_squared.ranks:
        violations.append("E^1 {} differs from SKh(w^2) {}".format(e1, sigma_squared.ranks))
    e_inf = len(tate.e_infinity.generators)
    if e_inf != sigma.total_rank:
        violations.append(
            "E^infinity has rank {}, SKh(w) has rank {}".format(e_inf, sigma.total_rank)
        )
    halved = sorted(q for _, q in _halve(tate, word))
    expected = sorted(
        Fraction(g[1]) for g, r in sigma.ranks.items() for _ in range(r)
    )
    if halved != expected:
        get_logger().info(
            "{}: halved E^infinity quantum gradings {} vs SKh(w) {}".format(
                word, [str(q) for q in halved], [str(q) for q in expected]
            )
        )
    for r in tate.odd_violations:
        violations.append("d^{} is non-zero".format(r))
    if not decat.congruent:
        violations.append("decategorification {} != {}".format(decat.lhs, decat.rhs))

    for v in violations:
        get_logger().warning("{}: {}".format(word, v))
    if strict and len(violations) > 0:
        raise TheoremViolationError("; ".join(violations))
    return DoublingReport(word, tate, sigma, sigma_squared, decat, violations)


def batch(
    words: Sequence[BraidWord],
    jobs: int = 1,
    task: Callable[[BraidWord], SkhResult] = skh_next_to_top,
) -> List[SkhResult]:
    """Runs `task` on every word, in `jobs` worker processes when `jobs > 1`.

    Results come back in input order.
    """
    if jobs <= 1 or len(words) <= 1:
        return _run_chunk(task, words)
    chunks = partition_sequence(list(words), min(jobs, len(words)))
    with mp.get_context("spawn").Pool(processes=len(chunks)) as pool:
        out = pool.map(functools.partial(_run_chunk, task), chunks)
    return [r for chunk in out for r in chunk]


def _run_chunk(
    task: Callable[[BraidWord], SkhResult], words: Sequence[BraidWord]
) -> List[SkhResult]:
    return [task(w) for w in words]
