"""The Tate spectral sequence of a doubled Hochschild complex.

For `M = N (x)L N` the Hochschild complex of `M` carries the involution `tau`
swapping the two copies of `N`. The Tate complex places a copy of that complex
in every column `p` and uses `D = d + (1 + tau)` where `1 + tau` maps column
`p` to column `p + 1`. Pages are computed on a finite window of columns by
cancelling arrows in order of increasing column jump; the page `E^r` of the
middle column is exact as long as `r` does not exceed the distance to the edge
of the window.
"""

from typing import Dict, List, NamedTuple, Optional, Set, Tuple

import gin

from core.algorithms.f2linalg import CancellationState, homology
from core.algorithms.hochschild import HochschildComplex, hochschild_complex
from core.base_abstractions.bimodule import koszul_pairs
from core.base_abstractions.misc import (
    Bigrading,
    NonConvergenceError,
    NotDoubledError,
    NotPiFormalError,
    RankTable,
    ZERO_GRADING,
)
from core.base_abstractions.quiver import PathAlgebra, build_A, build_B
from core.base_abstractions.twisted import AnyBimodule
from utils.system import get_logger


class TateComplex(NamedTuple):
    """A doubled Hochschild complex with its swap involution.

    # Attributes

    hochschild : The Hochschild complex of `N (x)L N`.
    tau : `tau[g]` is the generator obtained from `g` by swapping the two copies of `N`.
    """

    hochschild: HochschildComplex
    tau: List[int]


def tate_complex(m: AnyBimodule, shift: Tuple[int, int] = ZERO_GRADING) -> TateComplex:
    """Builds the Tate data of a doubled bimodule `m = N (x)L N`.

    Generator `n1|b1|n2|b2` is sent to `n2|b2|n1|b1`.
    """
    if m.halves is None or m.factors is None:
        raise NotDoubledError("{} is not a derived tensor product".format(m.name))
    first, second = m.halves
    if first is not second:
        raise NotDoubledError(
            "{} has distinct halves {} and {}".format(m.name, first.name, second.name)
        )

    hc = hochschild_complex(m, shift)
    factor_index = {f: t for t, f in enumerate(m.factors)}
    tau = []
    for i, k in hc.labels:
        n1, b1, n2 = m.factors[i]
        swapped = factor_index.get((n2, k, n1))
        if swapped is None or (swapped, b1) not in hc.index:
            raise NotDoubledError(
                "{} has no swapped partner".format(hc.complex.generators[len(tau)].name)
            )
        tau.append(hc.index[(swapped, b1)])
    return TateComplex(hc, tau)


def check_involution(t: TateComplex) -> bool:
    """`tau` squares to the identity and commutes with the differential."""
    if any(t.tau[t.tau[g]] != g for g in range(len(t.tau))):
        return False
    rows = t.hochschild.complex.differential.rows
    for g, row in enumerate(rows):
        if set(rows[t.tau[g]]) != {t.tau[h] for h in row}:
            return False
    return True


class TatePage(NamedTuple):
    """One page of the spectral sequence restricted to a single column.

    # Attributes

    index : The page number `r`.
    generators : Names and bigradings of the surviving generators.
    differential : Arrows of `d^r` as pairs of generator names, the target lives `r` columns to the right.
    """

    index: int
    generators: List[Tuple[str, Bigrading]]
    differential: List[Tuple[str, str]]

    def ranks(self) -> RankTable:
        out: RankTable = {}
        for _, g in self.generators:
            out[g] = out.get(g, 0) + 1
        return out


class TateResult(NamedTuple):
    """
    # Attributes

    pages : `E^0, E^1, ...` up to and including the first page known to be `E^infinity`.
    stabilized_at : Smallest `r` with `E^r = E^infinity`.
    odd_violations : Odd page numbers `r >= 3` with a non-zero `d^r`. `d^1` is
        `1 + tau` acting on `E^1` and is non-zero whenever `tau` moves a class.
    """

    pages: List[TatePage]
    stabilized_at: int
    odd_violations: List[int]

    @property
    def e_infinity(self) -> TatePage:
        return self.pages[-1]


@gin.configurable
def pages(
    m: AnyBimodule,
    shift: Tuple[int, int] = ZERO_GRADING,
    max_pages: int = 8,
) -> TateResult:
    """Computes the pages of the Tate spectral sequence of `m = N (x)L N`.

    # Parameters

    m : The doubled bimodule.
    shift : Added to all bigradings of the Hochschild complex.
    max_pages : Largest page number the computation may need before giving up.

    # Returns

    A `TateResult`. All differentials `d^r` with `r` beyond the homological
    spread of `E^1` vanish, so the page after that is `E^infinity`.
    """
    t = tate_complex(m, shift)
    hc = t.hochschild
    gens = hc.complex.generators
    n_gens = len(gens)

    e1 = homology(hc.complex)
    homs = [g.hom for g in e1] or [0]
    last = max(homs) - min(homs) + 2
    if last > max_pages:
        raise NonConvergenceError(
            "{} needs {} pages, max_pages is {}".format(m.name, last, max_pages)
        )
    radius = last
    width = 2 * radius + 1
    get_logger().info(
        "Tate window for {}: {} columns of {} generators".format(m.name, width, n_gens)
    )

    def gid(col: int, g: int) -> int:
        return col * n_gens + g

    state = CancellationState(range(width * n_gens))
    rows = hc.complex.differential.rows
    for col in range(width):
        for g in range(n_gens):
            for h in rows[g]:
                state.add_arrow(gid(col, g), gid(col, h))
            if col + 1 < width and t.tau[g] != g:
                state.add_arrow(gid(col, g), gid(col + 1, g))
                state.add_arrow(gid(col, g), gid(col + 1, t.tau[g]))

    def snapshot(r: int) -> TatePage:
        centre = [v for v in state.alive() if v // n_gens == radius]
        arrows = sorted(
            (v % n_gens, w % n_gens)
            for v in centre
            for w in state.out[v]
            if w // n_gens - radius == r
        )
        return TatePage(
            r,
            [(gens[v % n_gens].name, gens[v % n_gens].grading) for v in centre],
            [(gens[a].name, gens[b].name) for a, b in arrows],
        )

    result: List[TatePage] = []
    odd: List[int] = []
    for r in range(last + 1):
        page = snapshot(r)
        result.append(page)
        if r >= 3 and r % 2 == 1 and len(page.differential) > 0:
            get_logger().warning("d^{} of {} is non-zero".format(r, m.name))
            odd.append(r)
        _cancel_jump(state, r, n_gens)

    final = result[-1].ranks()
    stabilized = last
    while stabilized > 0 and result[stabilized - 1].ranks() == final:
        stabilized -= 1
    return TateResult(result, stabilized, odd)


def _cancel_jump(state: CancellationState, r: int, n_gens: int) -> None:
    """Cancels arrows jumping exactly `r` columns until none is left."""
    changed = True
    while changed:
        changed = False
        for v in state.alive():
            if v not in state.out:
                continue
            while True:
                targets = [w for w in state.out[v] if w // n_gens - v // n_gens == r]
                if len(targets) == 0:
                    break
                state.cancel(v, min(targets))
                changed = True
                if v not in state.out:
                    break


def rank_parity(result: TateResult) -> List[Dict[int, int]]:
    """Per page, the number of generators in each quantum grading mod 2."""
    out = []
    for page in result.pages:
        parity: Dict[int, int] = {}
        for _, g in page.generators:
            parity[g.quantum] = (parity.get(g.quantum, 0) + 1) % 2
        out.append({q: p for q, p in sorted(parity.items()) if p})
    return out


Tensor4 = Tuple[int, int, int, int]


class ReplayStep(NamedTuple):
    """
    # Attributes

    boundary : Terms of `d` applied to the previous representative.
    representative : `c` with `(1 + tau) c = boundary`, empty once `boundary` vanishes.
    """

    boundary: List[str]
    representative: List[str]


def _name4(A: PathAlgebra, B: PathAlgebra, t: Tensor4) -> str:
    return "|".join(
        [A.basis[t[0]].name, B.basis[t[1]].name, A.basis[t[2]].name, B.basis[t[3]].name]
    )


def pi_formality_replay(n: int, max_iter: int = 8) -> List[ReplayStep]:
    """Replays the zig-zag showing that the even differentials vanish on the
    unit of `A_n (x) B_n (x) A_n (x) B_n`.

    Starting from `1 = sum_v e_v|e_v|e_v|e_v`, repeatedly apply the Koszul
    differential and divide the result by `1 + tau`. A representative is picked
    per `tau`-orbit, preferring a non-idempotent first `B` factor, then a longer
    first `A` factor, then a special letter in the first `A` factor, then a
    longer first `B` factor.

    # Returns

    The steps up to and including the first vanishing boundary.
    """
    A, B = build_A(n), build_B(n)
    pairs = [(A.arrow(xi), B.arrow(xi_dual)) for xi, xi_dual in koszul_pairs(n)]

    def boundary(c: Set[Tensor4]) -> Set[Tensor4]:
        out: Set[Tensor4] = set()

        def add(t: Tuple[Optional[int], ...]) -> None:
            if all(x is not None for x in t):
                out.symmetric_difference_update({t})  # type: ignore

        for a1, b1, a2, b2 in c:
            for xi, xi_dual in pairs:
                add((A.mult(a1, xi), B.mult(xi_dual, b1), a2, b2))
                add((a1, B.mult(b1, xi_dual), A.mult(xi, a2), b2))
                add((a1, b1, A.mult(a2, xi), B.mult(xi_dual, b2)))
                add((A.mult(xi, a1), b1, a2, B.mult(b2, xi_dual)))
        return out

    def swap(t: Tensor4) -> Tensor4:
        return (t[2], t[3], t[0], t[1])

    def preference(t: Tensor4):
        return (
            not B.basis[t[1]].is_idempotent,
            A.basis[t[0]].length,
            A.contains_special(t[0]),
            B.basis[t[1]].length,
            t,
        )

    def divide(c: Set[Tensor4]) -> Set[Tensor4]:
        out: Set[Tensor4] = set()
        for t in c:
            s = swap(t)
            if s == t or s not in c:
                raise NotPiFormalError(
                    "{} is not in the image of 1 + tau".format(_name4(A, B, t))
                )
            if preference(t) > preference(s):
                out.add(t)
        return out

    def names(c: Set[Tensor4]) -> List[str]:
        return sorted(_name4(A, B, t) for t in c)

    current: Set[Tensor4] = {(v, v, v, v) for v in range(A.n_vertices)}
    steps: List[ReplayStep] = []
    for _ in range(max_iter):
        d = boundary(current)
        if len(d) == 0:
            steps.append(ReplayStep([], []))
            get_logger().debug("replay for n={} ended after {} steps".format(n, len(steps)))
            return steps
        current = divide(d)
        steps.append(ReplayStep(names(d), names(current)))
    raise NotPiFormalError("no vanishing boundary within {} steps".format(max_iter))
