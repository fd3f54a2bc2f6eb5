"""Bimodules over `A_n` with structure maps valued in `B_n (x) B_n^op`.

Generator `x` carries a set of terms `(l, y, r)` with `l` and `r` basis paths
of `B_n`: `x` maps to `y` while `l` is contracted from the right of the
neighbouring `B*` factor on the left and `r` from the left of the neighbouring
factor on the right. Idempotent coefficients on both sides are the internal
differential, and a dual letter on one side is the action of an arrow of
`A_n`. Longer coefficients appear once generators joined by an idempotent
term are cancelled.

Derived tensor products and Hochschild complexes only contract `B*` by these
coefficients, so a reduced bimodule gives the same homology as the dg
bimodule it came from while staying far smaller.
"""

from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Set, Tuple, Union

from core.base_abstractions.bimodule import (
    BraidWord,
    DgBimodule,
    ModuleElement,
    algebra_for,
    elementary,
    koszul_dual,
    koszul_pairs,
    regular,
    same_algebra,
)
from core.base_abstractions.misc import RankTable
from core.base_abstractions.quiver import DualAlgebra, PathAlgebra
from utils.system import get_logger

Term = Tuple[int, int, int]


class TwistedBimodule(object):
    """A bimodule given by generators and coefficient-valued structure maps.

    # Attributes

    algebra : The algebra `A_n`.
    elements : The generators.
    delta : `delta[x]` is the set of terms `(l, y, r)` leaving `elements[x]`.
    name : Human readable description.
    factors : For a derived tensor product, the triple `(x1, beta, x2)` underlying each generator.
    halves : For a derived tensor product, the pair of factors.
    """

    def __init__(
        self,
        algebra: PathAlgebra,
        elements: Sequence[ModuleElement],
        delta: List[Set[Term]],
        name: str,
        factors: Optional[List[Tuple[int, int, int]]] = None,
        halves: Optional[Tuple[object, object]] = None,
    ):
        self.algebra = algebra
        self.elements = list(elements)
        self.delta = delta
        self.name = name
        self.factors = factors
        self.halves = halves
        self._by_name: Optional[Dict[str, int]] = None

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def dual(self) -> DualAlgebra:
        return koszul_dual(self.algebra.n_vertices - 1)

    def index_of(self, name: str) -> int:
        if self._by_name is None:
            self._by_name = {e.name: i for i, e in enumerate(self.elements)}
        return self._by_name[name]

    def graded_dimensions(self) -> RankTable:
        out: RankTable = {}
        for e in self.elements:
            out[e.grading] = out.get(e.grading, 0) + 1
        return out

    def __repr__(self) -> str:
        return "TwistedBimodule({}, dim={})".format(self.name, len(self))


AnyBimodule = Union[DgBimodule, TwistedBimodule]


def twisted(m: AnyBimodule) -> TwistedBimodule:
    """The structure maps of a dg bimodule: `d` with idempotent coefficients,
    the left action of `xi` with left coefficient `xi'` and the right action
    with right coefficient `xi'`."""
    if isinstance(m, TwistedBimodule):
        return m
    n = m.algebra.n_vertices - 1
    B = koszul_dual(n).algebra
    dual = dict(koszul_pairs(n))

    delta: List[Set[Term]] = []
    for x, e in enumerate(m.elements):
        left, right = B.idempotent(e.left), B.idempotent(e.right)
        delta.append({(left, y, right) for y in m.d(x)})
    for (label, x), y in m.left_action.items():
        delta[x].add((B.arrow(dual[label]), y, B.idempotent(m.elements[x].right)))
    for (label, x), y in m.right_action.items():
        delta[x].add((B.idempotent(m.elements[x].left), y, B.arrow(dual[label])))
    return TwistedBimodule(m.algebra, m.elements, delta, m.name, m.factors, m.halves)


def box(m1: AnyBimodule, m2: AnyBimodule) -> TwistedBimodule:
    """The derived tensor product `m1 (x)_K B* (x)_K m2`.

    A term `(l, x, r)` of the left factor contracts `r` from the left of `beta`
    and keeps `l`; a term of the right factor contracts its `l` from the right
    of `beta` and keeps `r`. On dg bimodules this is `derived_tensor` with the
    same generators and names.
    """
    same_algebra(m1, m2)
    t1, t2 = twisted(m1), twisted(m2)
    bstar = t1.dual
    B = bstar.algebra

    elements: List[ModuleElement] = []
    index: Dict[Tuple[int, int, int], int] = {}
    factors: List[Tuple[int, int, int]] = []
    for i, ei in enumerate(t1.elements):
        for k in range(len(bstar)):
            if bstar.left(k) != ei.right:
                continue
            for j, ej in enumerate(t2.elements):
                if ej.left != bstar.right(k):
                    continue
                index[(i, k, j)] = len(elements)
                elements.append(
                    ModuleElement(
                        "{}|{}|{}".format(ei.name, bstar.name_of(k), ej.name),
                        ei.left,
                        ej.right,
                        ei.grading.plus(bstar.grading(k)).plus(ej.grading),
                    )
                )
                factors.append((i, k, j))

    delta: List[Set[Term]] = []
    for i, k, j in factors:
        terms: Set[Term] = set()
        right = B.idempotent(t2.elements[j].right)
        for l, i2, r in t1.delta[i]:
            kk = bstar.contract_left(k, r)
            if kk is not None:
                terms ^= {(l, index[(i2, kk, j)], right)}
        left = B.idempotent(t1.elements[i].left)
        for l, j2, r in t2.delta[j]:
            kk = bstar.contract_right(k, l)
            if kk is not None:
                terms ^= {(left, index[(i, kk, j2)], r)}
        delta.append(terms)

    return TwistedBimodule(
        t1.algebra,
        elements,
        delta,
        "({} (x)L {})".format(t1.name, t2.name),
        factors=factors,
        halves=(m1, m2),
    )


def check_twisted(m: TwistedBimodule) -> List[str]:
    """Lists the generators on which the structure maps fail to square to
    zero; coefficients compose as `(l1 l2, r2 r1)`."""
    B = m.dual.algebra
    problems = []
    for x in range(len(m)):
        total: Set[Term] = set()
        for l1, y, r1 in m.delta[x]:
            for l2, w, r2 in m.delta[y]:
                l, r = B.mult(l1, l2), B.mult(r2, r1)
                if l is not None and r is not None:
                    total ^= {(l, w, r)}
        if len(total) > 0:
            problems.append("delta^2({}) != 0".format(m.elements[x].name))
    return problems


def reduce(m: AnyBimodule) -> TwistedBimodule:
    """Cancels pairs `x -> y` joined by a single idempotent term until none is
    left.

    Every other generator `z` with a term `(l1, y, r1)` gains
    `(l1 l2, w, r2 r1)` for each term `(l2, w, r2)` of `x`, and all terms into
    `x` and `y` are dropped.
    """
    t = twisted(m)
    B = t.dual.algebra
    delta = [set(terms) for terms in t.delta]
    incoming: Dict[int, Set[int]] = {}
    for x, terms in enumerate(delta):
        for _, y, _ in terms:
            incoming.setdefault(y, set()).add(x)
    alive = set(range(len(delta)))

    def partner(x: int) -> Optional[int]:
        targets: Dict[int, int] = {}
        for _, y, _ in delta[x]:
            targets[y] = targets.get(y, 0) + 1
        for l, y, r in sorted(delta[x], key=lambda term: term[1]):
            if (
                y != x
                and targets[y] == 1
                and B.basis[l].is_idempotent
                and B.basis[r].is_idempotent
            ):
                return y
        return None

    def cancel(x: int, y: int) -> None:
        outgoing = [term for term in delta[x] if term[1] not in (x, y)]
        for z in sorted(incoming.get(y, set())):
            if z not in alive or z in (x, y):
                continue
            for l1, _, r1 in [term for term in delta[z] if term[1] == y]:
                for l2, w, r2 in outgoing:
                    l, r = B.mult(l1, l2), B.mult(r2, r1)
                    if l is None or r is None:
                        continue
                    delta[z] ^= {(l, w, r)}
                    incoming.setdefault(w, set()).add(z)
        for z in incoming.get(x, set()) | incoming.get(y, set()):
            delta[z] = {term for term in delta[z] if term[1] not in (x, y)}
        alive.difference_update((x, y))
        delta[x], delta[y] = set(), set()

    changed = True
    while changed:
        changed = False
        for x in sorted(alive):
            if x not in alive:
                continue
            y = partner(x)
            if y is not None:
                cancel(x, y)
                changed = True

    keep = sorted(alive)
    new = {old: i for i, old in enumerate(keep)}
    get_logger().debug("reduced {}: {} -> {} generators".format(t.name, len(t), len(keep)))
    return TwistedBimodule(
        t.algebra,
        [t.elements[x] for x in keep],
        [{(l, new[y], r) for l, y, r in delta[x]} for x in keep],
        t.name,
    )


@lru_cache(maxsize=512)
def _reduced_prefix(strands: int, letters: Tuple[Tuple[int, int], ...]) -> TwistedBimodule:
    A = algebra_for(strands)
    if len(letters) == 0:
        return twisted(regular(A))
    if len(letters) == 1:
        return twisted(elementary(A, *letters[0]))
    return reduce(
        box(_reduced_prefix(strands, letters[:-1]), elementary(A, *letters[-1]))
    )


def reduced_braid_bimodule(word: BraidWord) -> TwistedBimodule:
    """`M_w` with the partial products reduced after every letter. Words of at
    most one letter are returned unreduced."""
    return _reduced_prefix(word.strands, tuple(word.letters))
