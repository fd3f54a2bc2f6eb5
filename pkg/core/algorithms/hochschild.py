"""Hochschild complexes of dg bimodules over `A_n`.

The main route uses the Koszul resolution `A (x)_K B* (x)_K A`, which makes
the Hochschild complex of `M` the cyclic tensor `M (x)_K B*` (basis pairs
`(m, beta)` with matching idempotents on both sides). The normalized cyclic bar
complex is kept as an independent check.
"""

from typing import Dict, List, NamedTuple, Set, Tuple

import gin

from core.algorithms.f2linalg import ChainComplex, Generator, SparseMatF2, homology
from core.base_abstractions.bimodule import (
    DgBimodule,
    derived_tensor,
    koszul_dual,
    regular,
)
from core.base_abstractions.misc import (
    Bigrading,
    RankTable,
    TruncationInsufficientError,
    ZERO_GRADING,
)
from core.base_abstractions.quiver import PathAlgebra
from core.base_abstractions.twisted import AnyBimodule, twisted
from utils.system import get_logger


class KoszulResolution(NamedTuple):
    """`A (x)_K B* (x)_K A` as a bimodule together with its underlying complex
    graded by `(-length of the B* factor, quantum)`.

    # Attributes

    bimodule : The resolution as a dg bimodule.
    complex : The same complex with resolution degrees in the homological slot.
    degrees : Resolution degree to the indices of its generators.
    """

    bimodule: AnyBimodule
    complex: ChainComplex
    degrees: Dict[int, List[int]]


def koszul_resolution(A: PathAlgebra) -> KoszulResolution:
    n = A.n_vertices - 1
    bstar = koszul_dual(n)
    reg = regular(A)
    R = derived_tensor(reg, reg)
    assert R.factors is not None

    generators = []
    degrees: Dict[int, List[int]] = {}
    for t, (i, k, j) in enumerate(R.factors):
        length = bstar.length(k)
        generators.append(
            Generator(R.elements[t].name, Bigrading(-length, R.elements[t].grading.quantum))
        )
        degrees.setdefault(length, []).append(t)
    return KoszulResolution(R, ChainComplex(generators, R.differential), degrees)


class HochschildComplex(NamedTuple):
    """The complex `M (x)_K B*` computing `HH(A_n, M)`.

    # Attributes

    bimodule : The bimodule `M`.
    labels : Pairs `(m, beta)` underlying each generator.
    index : Inverse of `labels`.
    complex : The bigraded complex.
    """

    bimodule: AnyBimodule
    labels: List[Tuple[int, int]]
    index: Dict[Tuple[int, int], int]
    complex: ChainComplex


def hochschild_complex(m: AnyBimodule, shift: Tuple[int, int] = ZERO_GRADING) -> HochschildComplex:
    """Builds `M (x)_K B*` with differential

    `d(m|beta) = d(m)|beta + sum_xi (m xi | xi' contracted from the left of beta)
    + (xi m | beta with xi' contracted from the right)`.

    Reduced bimodules contract whole coefficient paths on both sides instead.

    # Parameters

    m : The bimodule, dg or reduced.
    shift : Added to every bigrading.
    """
    t = twisted(m)
    bstar = t.dual

    labels: List[Tuple[int, int]] = []
    index: Dict[Tuple[int, int], int] = {}
    generators: List[Generator] = []
    for i, e in enumerate(t.elements):
        for k in range(len(bstar)):
            if bstar.left(k) == e.right and bstar.right(k) == e.left:
                index[(i, k)] = len(labels)
                labels.append((i, k))
                generators.append(
                    Generator(
                        "{}|{}".format(e.name, bstar.name_of(k)),
                        e.grading.plus(bstar.grading(k)).plus(shift),
                    )
                )

    rows: List[Set[int]] = []
    for i, k in labels:
        row: Set[int] = set()
        for l, i2, r in t.delta[i]:
            kk = bstar.contract_left(k, r)
            if kk is not None:
                kk = bstar.contract_right(kk, l)
            if kk is not None:
                row ^= {index[(i2, kk)]}
        rows.append(row)

    get_logger().debug(
        "Hochschild complex of {}: {} generators".format(m.name, len(labels))
    )
    n_gens = len(labels)
    return HochschildComplex(
        m, labels, index, ChainComplex(generators, SparseMatF2(n_gens, n_gens, rows))
    )


def hochschild_homology(m: AnyBimodule, shift: Tuple[int, int] = ZERO_GRADING) -> RankTable:
    return homology(hochschild_complex(m, shift).complex)


def _bar_bound(m: DgBimodule) -> int:
    return max([0] + [e.right - e.left for e in m.elements])


@gin.configurable
def bar_hochschild(m: DgBimodule, max_length: int = 12) -> RankTable:
    """Hochschild homology from the normalized cyclic bar complex.

    Generators are `m | a_1 | ... | a_k` with `a_j` non-idempotent basis paths
    and matching idempotents around the cycle, in bigrading
    `deg(m) + sum_j (deg(a_j) - (1, 0))`. Paths strictly lower the vertex, so
    `k` never exceeds the largest `right - left` over the basis of `m`; a bound
    above `max_length` raises `TruncationInsufficientError`.
    """
    A = m.algebra
    bound = _bar_bound(m)
    if bound > max_length:
        raise TruncationInsufficientError(
            "bar complex of {} needs length {} > max_length {}".format(m.name, bound, max_length)
        )
    radical = A.radical()
    by_left: Dict[int, List[int]] = {}
    for a in radical:
        by_left.setdefault(A.basis[a].left, []).append(a)

    chains: List[Tuple[int, Tuple[int, ...]]] = []

    def extend(i: int, vertex: int, target: int, prefix: Tuple[int, ...]) -> None:
        if vertex == target:
            chains.append((i, prefix))
        for a in by_left.get(vertex, []):
            if A.basis[a].right >= target:
                extend(i, A.basis[a].right, target, prefix + (a,))

    for i, e in enumerate(m.elements):
        if e.right >= e.left:
            extend(i, e.right, e.left, ())

    index = {c: t for t, c in enumerate(chains)}
    generators = []
    for i, seq in chains:
        grading = m.elements[i].grading
        for a in seq:
            grading = grading.plus(A.grading(a)).minus((1, 0))
        generators.append(
            Generator(
                "|".join([m.elements[i].name] + [A.basis[a].name for a in seq]), grading
            )
        )

    rows: List[Set[int]] = []
    for i, seq in chains:
        row: Set[int] = set()
        for i2 in m.d(i):
            row ^= {index[(i2, seq)]}
        if len(seq) > 0:
            head = m.act_right(i, seq[0])
            if head is not None:
                row ^= {index[(head, seq[1:])]}
            for k in range(len(seq) - 1):
                prod = A.mult(seq[k], seq[k + 1])
                if prod is not None:
                    row ^= {index[(i, seq[:k] + (prod,) + seq[k + 2:])]}
            tail = m.act_left(seq[-1], i)
            if tail is not None:
                row ^= {index[(tail, seq[:-1])]}
        rows.append(row)

    complex = ChainComplex(generators, SparseMatF2(len(rows), len(rows), rows))
    get_logger().debug("bar complex of {}: {} generators".format(m.name, len(chains)))
    return homology(complex)
