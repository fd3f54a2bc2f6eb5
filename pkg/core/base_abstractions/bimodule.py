"""Differential graded bimodules over `A_n` and the crossing bimodules of
braid words.

Every bimodule here has a basis on which arrows of `A_n` act monomially: an
arrow sends a basis element to another basis element or to zero. Actions of
arbitrary basis paths are obtained by composing arrow actions.
"""

import re
from functools import lru_cache
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Set,
    Tuple,
)

from core.algorithms.f2linalg import SparseMatF2
from core.base_abstractions.misc import (
    AlgebraMismatchError,
    Bigrading,
    BraidParseError,
    IllFormedComplexError,
    InvalidCrossingError,
    RankTable,
    ZERO_GRADING,
)
from core.base_abstractions.quiver import (
    DualAlgebra,
    PathAlgebra,
    arrow_label,
    build_A,
    build_B,
    dualize,
    pairing,
)

POSITIVE = 1
NEGATIVE = -1


class BraidWord(NamedTuple):
    """A braid word on `strands` strands.

    # Attributes

    strands : Number of strands, the algebra is `A_n` with `n = strands - 1`.
    letters : Pairs `(i, sign)` with `1 <= i <= n` and `sign` in `{POSITIVE, NEGATIVE}`.
    """

    strands: int
    letters: Tuple[Tuple[int, int], ...]

    @classmethod
    def make(cls, strands: int, letters: Iterable[Tuple[int, int]]) -> "BraidWord":
        word = cls(strands, tuple((int(i), int(s)) for i, s in letters))
        word.validate()
        return word

    @classmethod
    def parse(cls, text: str, strands: int) -> "BraidWord":
        """Parses whitespace separated tokens `s<k>` (positive crossing) and
        `S<k>` (negative crossing)."""
        if strands < 2:
            raise BraidParseError("need at least 2 strands, got {}".format(strands), 0)
        letters = []
        for pos, token in enumerate(text.split()):
            match = re.fullmatch(r"([sS])(\d+)", token)
            if match is None:
                raise BraidParseError("cannot parse {!r}".format(token), pos)
            k = int(match.group(2))
            if not 1 <= k <= strands - 1:
                raise BraidParseError(
                    "generator {} out of range for {} strands".format(k, strands), pos
                )
            letters.append((k, POSITIVE if match.group(1) == "s" else NEGATIVE))
        return cls(strands, tuple(letters))

    def validate(self) -> None:
        assert self.strands >= 2, "need at least 2 strands, got {}".format(self.strands)
        for i, s in self.letters:
            assert 1 <= i <= self.n, "generator {} out of range for n={}".format(i, self.n)
            assert s in (POSITIVE, NEGATIVE), "bad sign {}".format(s)

    @property
    def n(self) -> int:
        return self.strands - 1

    @property
    def n_plus(self) -> int:
        return sum(1 for _, s in self.letters if s == POSITIVE)

    @property
    def n_minus(self) -> int:
        return sum(1 for _, s in self.letters if s == NEGATIVE)

    def mirror(self) -> "BraidWord":
        return BraidWord(self.strands, tuple((i, -s) for i, s in reversed(self.letters)))

    def concat(self, other: "BraidWord") -> "BraidWord":
        assert self.strands == other.strands, "strand counts differ"
        return BraidWord(self.strands, self.letters + other.letters)

    def squared(self) -> "BraidWord":
        return self.concat(self)

    def __str__(self) -> str:
        return " ".join(
            "{}{}".format("s" if s == POSITIVE else "S", i) for i, s in self.letters
        )


def mirror(word: BraidWord) -> BraidWord:
    return word.mirror()


class ModuleElement(NamedTuple):
    name: str
    left: int
    right: int
    grading: Bigrading


class DgBimodule(object):
    """A finite dimensional dg bimodule over a path algebra.

    # Attributes

    algebra : The algebra acting on both sides.
    elements : The basis.
    left_action : `(arrow label, element) -> element` for non-zero arrow actions from the left.
    right_action : The same for the right action.
    differential : Internal differential, row `i` is `d(elements[i])`.
    name : Human readable description.
    factors : For a derived tensor product `M1 (x)_K B* (x)_K M2`, the triple
        `(i1, beta, i2)` underlying each basis element.
    halves : For a derived tensor product, the pair `(M1, M2)`.
    """

    def __init__(
        self,
        algebra: PathAlgebra,
        elements: Sequence[ModuleElement],
        left_action: Dict[Tuple[str, int], int],
        right_action: Dict[Tuple[str, int], int],
        differential: SparseMatF2,
        name: str,
        factors: Optional[List[Tuple[int, int, int]]] = None,
        halves: Optional[Tuple["DgBimodule", "DgBimodule"]] = None,
    ):
        self.algebra = algebra
        self.elements = list(elements)
        self.left_action = left_action
        self.right_action = right_action
        self.differential = differential
        self.name = name
        self.factors = factors
        self.halves = halves
        self._by_name: Optional[Dict[str, int]] = None

    def __len__(self) -> int:
        return len(self.elements)

    def d(self, m: int) -> FrozenSet[int]:
        return self.differential.rows[m]

    def act_left(self, a: int, m: int) -> Optional[int]:
        """`basis[a] * elements[m]`."""
        path = self.algebra.basis[a]
        if path.is_idempotent:
            return m if self.elements[m].left == path.left else None
        out: Optional[int] = m
        for label in reversed(path.word):
            out = self.left_action.get((label, out))
            if out is None:
                return None
        return out

    def act_right(self, m: int, a: int) -> Optional[int]:
        """`elements[m] * basis[a]`."""
        path = self.algebra.basis[a]
        if path.is_idempotent:
            return m if self.elements[m].right == path.left else None
        out: Optional[int] = m
        for label in path.word:
            out = self.right_action.get((label, out))
            if out is None:
                return None
        return out

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
        return "DgBimodule({}, dim={})".format(self.name, len(self))


class _Builder(object):
    def __init__(self, algebra: PathAlgebra):
        self.algebra = algebra
        self.elements: List[ModuleElement] = []
        self.left_action: Dict[Tuple[str, int], int] = {}
        self.right_action: Dict[Tuple[str, int], int] = {}
        self.d: List[Set[int]] = []

    def add(self, name: str, left: int, right: int, grading: Bigrading) -> int:
        self.elements.append(ModuleElement(name, left, right, Bigrading(*grading)))
        self.d.append(set())
        return len(self.elements) - 1

    def finish(self, name: str, **kwargs) -> DgBimodule:
        n = len(self.elements)
        return DgBimodule(
            self.algebra,
            self.elements,
            self.left_action,
            self.right_action,
            SparseMatF2(n, n, self.d),
            name,
            **kwargs
        )


def _add_regular_summand(b: _Builder, offset: Bigrading = ZERO_GRADING) -> List[int]:
    A = b.algebra
    idx = [
        b.add(p.name, p.left, p.right, p.grading.plus(offset)) for p in A.basis
    ]
    for label in A.quiver.arrows:
        xi = A.arrow(label)
        for j in range(len(A)):
            prod = A.mult(xi, j)
            if prod is not None:
                b.left_action[(label, idx[j])] = idx[prod]
            prod = A.mult(j, xi)
            if prod is not None:
                b.right_action[(label, idx[j])] = idx[prod]
    return idx


def regular(A: PathAlgebra) -> DgBimodule:
    """`A` as a bimodule over itself with zero differential."""
    b = _Builder(A)
    _add_regular_summand(b)
    return b.finish(A.name)


class OneSidedModule(NamedTuple):
    """A module over a path algebra acting on one side only.

    `vertices[k]` is the vertex at which the algebra acts on element `k`.
    """

    side: str
    names: Tuple[str, ...]
    vertices: Tuple[int, ...]
    gradings: Tuple[Bigrading, ...]
    action: Dict[Tuple[str, int], int]


def _check_crossing_index(A: PathAlgebra, i: int) -> None:
    if not 1 <= i <= A.n_vertices - 1:
        raise InvalidCrossingError(
            "crossing index {} out of range 1..{}".format(i, A.n_vertices - 1)
        )


def projectives(A: PathAlgebra, i: int) -> Tuple[OneSidedModule, OneSidedModule]:
    """The two dimensional modules `P_i` (left) and `iP` (right) supported on
    vertices `i - 1` and `i`, linked by the special arrow `x_{i-1,i}`."""
    _check_crossing_index(A, i)
    x = arrow_label("x", i - 1, i)
    left = OneSidedModule(
        side="left",
        names=("u*", "v*"),
        vertices=(i, i - 1),
        gradings=(Bigrading(-1, -2), Bigrading(0, -1)),
        action={(x, 1): 0},
    )
    right = OneSidedModule(
        side="right",
        names=("u", "v"),
        vertices=(i, i - 1),
        gradings=(Bigrading(1, 0), Bigrading(0, -1)),
        action={(x, 0): 1},
    )
    return left, right


_PROJECTIVE_ALIASES = {
    ("u*", "u"): "u",
    ("v*", "v"): "v",
    ("v*", "u"): "t",
    ("u*", "v"): "s",
}


def _add_projective_summand(b: _Builder, i: int, offset: Bigrading) -> Dict[str, int]:
    P, Q = projectives(b.algebra, i)
    idx: Dict[Tuple[int, int], int] = {}
    for p in range(len(P.names)):
        for q in range(len(Q.names)):
            name = _PROJECTIVE_ALIASES[(P.names[p], Q.names[q])] + str(i)
            idx[(p, q)] = b.add(
                name,
                P.vertices[p],
                Q.vertices[q],
                P.gradings[p].plus(Q.gradings[q]).plus(offset),
            )
    for (p, q), k in idx.items():
        for (label, src), dst in P.action.items():
            if src == p:
                b.left_action[(label, k)] = idx[(dst, q)]
        for (label, src), dst in Q.action.items():
            if src == q:
                b.right_action[(label, k)] = idx[(p, dst)]
    return {b.elements[k].name[0]: k for k in idx.values()}


def _add_free_summand(
    b: _Builder, p: int, q: int, offset: Bigrading
) -> Dict[Tuple[int, int], int]:
    """Adds the free bimodule `A e_p (x)_F2 e_q A` with generator degree
    `offset`, basis `a (x) b` with `right(a) == p` and `left(b) == q`."""
    A = b.algebra
    idx: Dict[Tuple[int, int], int] = {}
    for a, pa in enumerate(A.basis):
        if pa.right != p:
            continue
        for c, pc in enumerate(A.basis):
            if pc.left != q:
                continue
            idx[(a, c)] = b.add(
                "{}<{}{}>{}".format(pa.name, p, q, pc.name),
                pa.left,
                pc.right,
                pa.grading.plus(offset).plus(pc.grading),
            )
    for (a, c), k in idx.items():
        for label in A.quiver.arrows:
            xi = A.arrow(label)
            prod = A.mult(xi, a)
            if prod is not None:
                b.left_action[(label, k)] = idx[(prod, c)]
            prod = A.mult(c, xi)
            if prod is not None:
                b.right_action[(label, k)] = idx[(a, prod)]
    return idx


def elementary(A: PathAlgebra, i: int, sign: int) -> DgBimodule:
    """The crossing bimodule of `sigma_i^{sign}`.

    For a negative crossing this is the cone of the map `A -> P_i (x)_K iP`
    sending `e_{i-1}`, `e_i` and `x_{i-1,i}` to `v`, `u` and `s`, with the
    projective summand shifted by `[-1]{2}`.

    For a positive crossing `P_i (x)_K iP` is replaced by its free resolution
    `Q_i` by four free bimodules and the summand is mapped to `A` by
    multiplication. The whole cone sits one homological degree lower and one
    quantum degree higher, so that `sigma_i^+ sigma_i^-` is `A` up to that
    shift.
    """
    _check_crossing_index(A, i)
    assert sign in (POSITIVE, NEGATIVE), "bad sign {}".format(sign)
    b = _Builder(A)

    if sign == NEGATIVE:
        reg = _add_regular_summand(b)
        proj = _add_projective_summand(b, i, Bigrading(1, 2))
        b.d[reg[A.idempotent(i - 1)]].add(proj["v"])
        b.d[reg[A.idempotent(i)]].add(proj["u"])
        b.d[reg[A.arrow(arrow_label("x", i - 1, i))]].add(proj["s"])
        return b.finish("M(S{})".format(i))

    shift = Bigrading(-1, 1)
    iota = A.arrow(arrow_label("i", i - 1, i))
    reg = _add_regular_summand(b, shift)
    top = _add_free_summand(b, i, i - 1, shift.plus((-2, 1)))
    mid_low = _add_free_summand(b, i - 1, i - 1, shift.plus((-1, 0)))
    mid_high = _add_free_summand(b, i, i, shift.plus((-1, 0)))
    bottom = _add_free_summand(b, i - 1, i, shift.plus((0, -1)))

    for (a, c), k in top.items():
        b.d[k].add(mid_low[(A.mult(a, iota), c)])
        b.d[k].add(mid_high[(a, A.mult(iota, c))])
    for (a, c), k in mid_low.items():
        ic = A.mult(iota, c)
        if ic is not None:
            b.d[k].add(bottom[(a, ic)])
        ac = A.mult(a, c)
        if ac is not None:
            b.d[k] ^= {reg[ac]}
    for (a, c), k in mid_high.items():
        ai = A.mult(a, iota)
        if ai is not None:
            b.d[k].add(bottom[(ai, c)])
        ac = A.mult(a, c)
        if ac is not None:
            b.d[k] ^= {reg[ac]}
    return b.finish("M(s{})".format(i))


def shift(m: DgBimodule, hom: int, quantum: int) -> DgBimodule:
    """Translates every bigrading by `(hom, quantum)`.

    In bracket notation `[k]{l}` is `shift(m, -k, l)`.
    """
    return DgBimodule(
        m.algebra,
        [e._replace(grading=e.grading.plus((hom, quantum))) for e in m.elements],
        m.left_action,
        m.right_action,
        m.differential,
        m.name if (hom, quantum) == (0, 0) else "{}[{},{}]".format(m.name, hom, quantum),
        factors=m.factors,
        halves=m.halves,
    )


def same_algebra(m1, m2) -> None:
    if m1.algebra is not m2.algebra and (
        m1.algebra.name != m2.algebra.name
        or len(m1.algebra) != len(m2.algebra)
    ):
        raise AlgebraMismatchError(
            "{} is over {}, {} is over {}".format(
                m1.name, m1.algebra.name, m2.name, m2.algebra.name
            )
        )


def direct_sum(m1: DgBimodule, m2: DgBimodule) -> DgBimodule:
    """`m1 (+) m2`; basis names get the suffix `#1` or `#2`."""
    same_algebra(m1, m2)
    b = _Builder(m1.algebra)
    for summand, m in enumerate((m1, m2), 1):
        base = len(b.elements)
        for e in m.elements:
            b.add("{}#{}".format(e.name, summand), e.left, e.right, e.grading)
        for (label, x), y in m.left_action.items():
            b.left_action[(label, base + x)] = base + y
        for (label, x), y in m.right_action.items():
            b.right_action[(label, base + x)] = base + y
        for x in range(len(m)):
            b.d[base + x] = {base + y for y in m.d(x)}
    return b.finish("({} (+) {})".format(m1.name, m2.name))


class _UnionFind(object):
    def __init__(self):
        self.parent: Dict[Tuple[int, int], Tuple[int, int]] = {}
        self.dead: Set[Tuple[int, int]] = set()

    def find(self, x: Tuple[int, int]) -> Tuple[int, int]:
        root = x
        while self.parent.get(root, root) != root:
            root = self.parent[root]
        while x != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: Tuple[int, int], y: Tuple[int, int]) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        lo, hi = min(rx, ry), max(rx, ry)
        self.parent[hi] = lo
        if hi in self.dead:
            self.dead.add(lo)

    def kill(self, x: Tuple[int, int]) -> None:
        self.dead.add(self.find(x))


def tensor(m1: DgBimodule, m2: DgBimodule) -> DgBimodule:
    """The balanced tensor product `m1 (x)_A m2`.

    Relations `m xi (x) n = m (x) xi n` have at most two monomial terms, so the
    quotient identifies classes of pairs and kills the classes containing a
    one-term relation. Each class is represented by its smallest pair.
    """
    same_algebra(m1, m2)
    A = m1.algebra
    pairs = [
        (i, j)
        for i, ei in enumerate(m1.elements)
        for j, ej in enumerate(m2.elements)
        if ei.right == ej.left
    ]
    uf = _UnionFind()
    for (i, j) in pairs:
        uf.find((i, j))
    for label in sorted(A.quiver.arrows):
        arrow = A.quiver.arrows[label]
        for i, ei in enumerate(m1.elements):
            if ei.right != arrow.head:
                continue
            mi = m1.right_action.get((label, i))
            for j, ej in enumerate(m2.elements):
                if ej.left != arrow.tail:
                    continue
                nj = m2.left_action.get((label, j))
                terms = [t for t in ((mi, j), (i, nj)) if t[0] is not None and t[1] is not None]
                if len(terms) == 2:
                    uf.union(terms[0], terms[1])
                elif len(terms) == 1:
                    uf.kill(terms[0])

    b = _Builder(A)
    index: Dict[Tuple[int, int], int] = {}
    for p in pairs:
        root = uf.find(p)
        if root in uf.dead or root in index:
            continue
        i, j = root
        index[root] = b.add(
            "{}&{}".format(m1.elements[i].name, m2.elements[j].name),
            m1.elements[i].left,
            m2.elements[j].right,
            m1.elements[i].grading.plus(m2.elements[j].grading),
        )

    def cls(i: Optional[int], j: Optional[int]) -> Optional[int]:
        if i is None or j is None:
            return None
        return index.get(uf.find((i, j)))

    for (i, j), k in index.items():
        for label in A.quiver.arrows:
            k2 = cls(m1.left_action.get((label, i)), j)
            if k2 is not None:
                b.left_action[(label, k)] = k2
            k2 = cls(i, m2.right_action.get((label, j)))
            if k2 is not None:
                b.right_action[(label, k)] = k2
        for i2 in m1.d(i):
            k2 = cls(i2, j)
            if k2 is not None:
                b.d[k] ^= {k2}
        for j2 in m2.d(j):
            k2 = cls(i, j2)
            if k2 is not None:
                b.d[k] ^= {k2}
    return b.finish("({} (x)_A {})".format(m1.name, m2.name))


@lru_cache(maxsize=None)
def koszul_dual(n: int) -> DualAlgebra:
    return dualize(build_B(n))


@lru_cache(maxsize=None)
def koszul_pairs(n: int) -> Tuple[Tuple[str, str], ...]:
    """Pairs `(xi, xi')` of an arrow of `A_n` and its dual letter in `B_n^*`."""
    return tuple(sorted(pairing(build_A(n), koszul_dual(n).algebra).items()))


def derived_tensor(m1: DgBimodule, m2: DgBimodule) -> DgBimodule:
    """The derived tensor product `m1 (x)_K B* (x)_K m2` computed with the
    Koszul resolution of `A_n`.

    The differential is `d1 + d2` plus, for every arrow `xi` with dual letter
    `xi'`, the terms `m1 xi | xi' contracted from the left of beta | m2` and
    `m1 | beta with xi' contracted from the right | xi m2`.
    """
    same_algebra(m1, m2)
    A = m1.algebra
    n = A.n_vertices - 1
    bstar = koszul_dual(n)
    pairs = koszul_pairs(n)

    b = _Builder(A)
    index: Dict[Tuple[int, int, int], int] = {}
    factors: List[Tuple[int, int, int]] = []
    for i, ei in enumerate(m1.elements):
        for k in range(len(bstar)):
            if bstar.left(k) != ei.right:
                continue
            for j, ej in enumerate(m2.elements):
                if ej.left != bstar.right(k):
                    continue
                index[(i, k, j)] = b.add(
                    "{}|{}|{}".format(ei.name, bstar.name_of(k), ej.name),
                    ei.left,
                    ej.right,
                    ei.grading.plus(bstar.grading(k)).plus(ej.grading),
                )
                factors.append((i, k, j))

    for (i, k, j), t in index.items():
        for label in A.quiver.arrows:
            src = m1.left_action.get((label, i))
            if src is not None:
                b.left_action[(label, t)] = index[(src, k, j)]
            dst = m2.right_action.get((label, j))
            if dst is not None:
                b.right_action[(label, t)] = index[(i, k, dst)]
        d = b.d[t]
        for i2 in m1.d(i):
            d ^= {index[(i2, k, j)]}
        for j2 in m2.d(j):
            d ^= {index[(i, k, j2)]}
        for xi, xi_dual in pairs:
            kk = bstar.strip_left(k, xi_dual)
            if kk is not None:
                ii = m1.right_action.get((xi, i))
                if ii is not None:
                    d ^= {index[(ii, kk, j)]}
            kk = bstar.strip_right(k, xi_dual)
            if kk is not None:
                jj = m2.left_action.get((xi, j))
                if jj is not None:
                    d ^= {index[(i, kk, jj)]}

    return b.finish(
        "({} (x)L {})".format(m1.name, m2.name), factors=factors, halves=(m1, m2)
    )


@lru_cache(maxsize=None)
def algebra_for(strands: int) -> PathAlgebra:
    return build_A(strands - 1)


def braid_bimodule(word: BraidWord) -> DgBimodule:
    """`M_w`, the derived tensor product of the crossing bimodules of the
    letters of `w` from left to right. The empty word gives `A_n`."""
    A = algebra_for(word.strands)
    if len(word.letters) == 0:
        return regular(A)
    out = elementary(A, *word.letters[0])
    for letter in word.letters[1:]:
        out = derived_tensor(out, elementary(A, *letter))
    return out


def check_bimodule(m: DgBimodule) -> List[str]:
    """Lists every violated bimodule axiom; an empty list means `m` is a dg
    bimodule."""
    A = m.algebra
    problems: List[str] = []
    arrows = A.quiver.arrows

    for (label, src), dst in m.left_action.items():
        e, f = m.elements[src], m.elements[dst]
        if e.left != arrows[label].tail or f.left != arrows[label].head or f.right != e.right:
            problems.append("left action {} on {} breaks idempotents".format(label, e.name))
        if f.grading != e.grading.plus(arrows[label].grading):
            problems.append("left action {} on {} breaks gradings".format(label, e.name))
    for (label, src), dst in m.right_action.items():
        e, f = m.elements[src], m.elements[dst]
        if e.right != arrows[label].head or f.right != arrows[label].tail or f.left != e.left:
            problems.append("right action {} on {} breaks idempotents".format(label, e.name))
        if f.grading != e.grading.plus(arrows[label].grading):
            problems.append("right action {} on {} breaks gradings".format(label, e.name))

    for relation in A.relations():
        for k in range(len(m)):
            left_sum: Set[int] = set()
            right_sum: Set[int] = set()
            for word in relation:
                out_l: Optional[int] = k
                for label in reversed(word):
                    out_l = None if out_l is None else m.left_action.get((label, out_l))
                if out_l is not None:
                    left_sum ^= {out_l}
                out_r: Optional[int] = k
                for label in word:
                    out_r = None if out_r is None else m.right_action.get((label, out_r))
                if out_r is not None:
                    right_sum ^= {out_r}
            if left_sum or right_sum:
                problems.append(
                    "relation {} fails on {}".format(sorted(relation), m.elements[k].name)
                )

    for k, e in enumerate(m.elements):
        if any(m.elements[j].grading != e.grading.plus((1, 0)) for j in m.d(k)):
            problems.append("d({}) has wrong degree".format(e.name))
        for label in arrows:
            right = m.right_action.get((label, k))
            left = m.left_action.get((label, k))
            lhs = set(m.d(left)) if left is not None else set()
            rhs: Set[int] = set()
            for j in m.d(k):
                t = m.left_action.get((label, j))
                if t is not None:
                    rhs ^= {t}
            if lhs != rhs:
                problems.append("d does not commute with {} on the left of {}".format(label, e.name))
            lhs = set(m.d(right)) if right is not None else set()
            rhs = set()
            for j in m.d(k):
                t = m.right_action.get((label, j))
                if t is not None:
                    rhs ^= {t}
            if lhs != rhs:
                problems.append("d does not commute with {} on the right of {}".format(label, e.name))
        dd: Set[int] = set()
        for j in m.d(k):
            dd ^= set(m.d(j))
        if dd:
            problems.append("d^2({}) != 0".format(e.name))
    return problems


def validate_bimodule(m: DgBimodule) -> None:
    problems = check_bimodule(m)
    if len(problems) > 0:
        raise IllFormedComplexError(
            "{} is not a dg bimodule: {}".format(m.name, "; ".join(problems[:5]))
        )
