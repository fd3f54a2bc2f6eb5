"""Quivers and their path algebras modulo "special letter" relations.

A path is written as a word `(a_1, ..., a_k)` of arrow labels where `a_k` is
traversed first, so the word is composable when `tail(a_j) == head(a_{j+1})`.
The *left* vertex of a path is the head of `a_1`, its *right* vertex the tail of
`a_k`, and a product `p * q` is non-zero only if `right(p) == left(q)`.

Every arrow comes with a *partner* between the same two vertices, exactly one
of the two being *special*. The relations are that a special letter commutes
with the non-special ones (swapping the roles of two adjacent letters) and that
two special letters multiply to zero. Normal forms put the special letter, if
any, leftmost.
"""

from collections import defaultdict
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx

from core.base_abstractions.misc import (
    AlgebraMismatchError,
    Bigrading,
    UnsupportedAlgebraError,
    ZERO_GRADING,
    total_grading,
)
from utils.misc_utils import path_algebra_dimension

Word = Tuple[str, ...]


class GroundRing(NamedTuple):
    """The semisimple ring `K` spanned by the vertex idempotents."""

    n_vertices: int

    def vertices(self) -> List[int]:
        return list(range(self.n_vertices))


class Arrow(NamedTuple):
    label: str
    tail: int
    head: int
    grading: Bigrading
    special: bool


class Path(NamedTuple):
    """A normal form basis element of a path algebra."""

    word: Word
    left: int
    right: int
    grading: Bigrading
    name: str

    @property
    def is_idempotent(self) -> bool:
        return len(self.word) == 0

    @property
    def length(self) -> int:
        return len(self.word)


def arrow_label(kind: str, tail: int, head: int) -> str:
    if max(tail, head) < 10:
        return "{}{}{}".format(kind, tail, head)
    return "{}{}_{}".format(kind, tail, head)


class Quiver(object):
    """A finite quiver whose arrows come in special / non-special pairs.

    # Attributes

    n_vertices : Number of vertices, labelled `0, ..., n_vertices - 1`.
    arrows : Arrows keyed by label.
    graph : The underlying `networkx.MultiDiGraph`, edges keyed by arrow label.
    """

    def __init__(self, n_vertices: int, arrows: Sequence[Arrow]):
        self.n_vertices = n_vertices
        self.arrows: Dict[str, Arrow] = {}
        self.graph = nx.MultiDiGraph()
        self.graph.add_nodes_from(range(n_vertices))
        for a in arrows:
            assert a.label not in self.arrows, "duplicate arrow {}".format(a.label)
            assert 0 <= a.tail < n_vertices and 0 <= a.head < n_vertices
            self.arrows[a.label] = a
            self.graph.add_edge(a.tail, a.head, key=a.label, arrow=a)

        self._partner: Dict[str, str] = {}
        for a in arrows:
            candidates = [
                key
                for key, data in self.graph[a.tail][a.head].items()
                if data["arrow"].special != a.special
            ]
            if len(candidates) != 1:
                raise UnsupportedAlgebraError(
                    "arrow {} needs exactly one partner, found {}".format(
                        a.label, candidates
                    )
                )
            self._partner[a.label] = candidates[0]

    def ground_ring(self) -> GroundRing:
        return GroundRing(self.n_vertices)

    def partner(self, label: str) -> Arrow:
        return self.arrows[self._partner[label]]

    def is_acyclic(self) -> bool:
        return nx.is_directed_acyclic_graph(self.graph)

    def arrows_out_of(self, vertex: int) -> List[Arrow]:
        return sorted(
            (data["arrow"] for _, _, data in self.graph.out_edges(vertex, data=True)),
            key=lambda a: a.label,
        )


class PathAlgebra(object):
    """Path algebra of a `Quiver` modulo the special letter relations, with a
    normal form basis and a multiplication table.

    # Attributes

    quiver : The quiver.
    name : Short name used in logs.
    basis : Normal form paths, idempotents first, then by length.
    """

    def __init__(self, quiver: Quiver, name: str):
        if not quiver.is_acyclic():
            raise UnsupportedAlgebraError(
                "{}: only acyclic quivers give finite dimensional algebras".format(name)
            )
        self.quiver = quiver
        self.name = name
        self.basis: List[Path] = []
        self._index: Dict[Tuple[int, int, Word], int] = {}
        self._mult_cache: Dict[Tuple[int, int], Optional[int]] = {}

        for v in range(quiver.n_vertices):
            self._add(Path((), v, v, ZERO_GRADING, str(v)))

        frontier = [
            self._add(self._path_of((a.label,)))
            for a in sorted(quiver.arrows.values(), key=lambda a: a.label)
            if self.normalize((a.label,)) == (a.label,)
        ]
        while len(frontier) > 0:
            new_frontier = []
            for i in frontier:
                p = self.basis[i]
                for a in quiver.arrows_out_of(p.left):
                    word = self.normalize((a.label,) + p.word)
                    if word is None:
                        continue
                    key = (quiver.arrows[word[0]].head, p.right, word)
                    if key not in self._index:
                        new_frontier.append(self._add(self._path_of(word)))
            frontier = new_frontier

    def _path_of(self, word: Word) -> Path:
        arrows = [self.quiver.arrows[l] for l in word]
        return Path(
            word,
            arrows[0].head,
            arrows[-1].tail,
            total_grading(a.grading for a in arrows),
            "".join(word),
        )

    def _add(self, path: Path) -> int:
        key = (path.left, path.right, path.word)
        assert key not in self._index
        self._index[key] = len(self.basis)
        self.basis.append(path)
        return self._index[key]

    def __len__(self) -> int:
        return len(self.basis)

    @property
    def n_vertices(self) -> int:
        return self.quiver.n_vertices

    def normalize(self, word: Word) -> Optional[Word]:
        """Normal form of a composable word, or `None` when it is zero."""
        arrows = [self.quiver.arrows[l] for l in word]
        for a, b in zip(arrows[:-1], arrows[1:]):
            if a.tail != b.head:
                return None
        specials = [k for k, a in enumerate(arrows) if a.special]
        if len(specials) > 1:
            return None
        if len(specials) == 1:
            for k in range(specials[0], 0, -1):
                arrows[k - 1], arrows[k] = (
                    self.quiver.partner(arrows[k - 1].label),
                    self.quiver.partner(arrows[k].label),
                )
        return tuple(a.label for a in arrows)

    def index_of_word(self, word: Word, vertex: Optional[int] = None) -> int:
        if len(word) == 0:
            assert vertex is not None, "an empty word needs a vertex"
            return vertex
        normal = self.normalize(word)
        if normal is None:
            raise KeyError("{} is zero in {}".format(word, self.name))
        p = self._path_of(normal)
        return self._index[(p.left, p.right, normal)]

    def idempotent(self, vertex: int) -> int:
        return vertex

    def arrow(self, label: str) -> int:
        return self.index_of_word((label,))

    def mult(self, i: int, j: int) -> Optional[int]:
        """Index of `basis[i] * basis[j]`, `None` if the product vanishes."""
        key = (i, j)
        if key not in self._mult_cache:
            p, q = self.basis[i], self.basis[j]
            if p.right != q.left:
                out = None
            elif p.is_idempotent:
                out = j
            elif q.is_idempotent:
                out = i
            else:
                word = self.normalize(p.word + q.word)
                out = None if word is None else self._index[(p.left, q.right, word)]
            self._mult_cache[key] = out
        return self._mult_cache[key]

    def grading(self, i: int) -> Bigrading:
        return self.basis[i].grading

    def radical(self) -> List[int]:
        return [i for i, p in enumerate(self.basis) if not p.is_idempotent]

    def contains_special(self, i: int) -> bool:
        return any(self.quiver.arrows[l].special for l in self.basis[i].word)

    def relations(self) -> List[FrozenSet[Word]]:
        """A basis of the quadratic relation space.

        Each relation is the set of length two words whose sum vanishes.
        """
        groups: Dict[Word, List[Word]] = defaultdict(list)
        out: List[FrozenSet[Word]] = []
        for a in sorted(self.quiver.arrows):
            for b in sorted(self.quiver.arrows):
                if self.quiver.arrows[a].tail != self.quiver.arrows[b].head:
                    continue
                normal = self.normalize((a, b))
                if normal is None:
                    out.append(frozenset([(a, b)]))
                else:
                    groups[normal].append((a, b))
        for normal in sorted(groups):
            words = groups[normal]
            out.extend(frozenset([words[0], w]) for w in words[1:])
        return out

    def length_two_words(self) -> List[Word]:
        return [
            (a, b)
            for a in sorted(self.quiver.arrows)
            for b in sorted(self.quiver.arrows)
            if self.quiver.arrows[a].tail == self.quiver.arrows[b].head
        ]


class DualAlgebra(object):
    """The linear dual `B*` of a path algebra `B`, a coalgebra with left and
    right contraction by arrows of `B`.

    Basis element `k` is dual to `B.basis[k]`. Its left vertex is the right
    vertex of the path and vice versa, it carries the same bigrading, and its
    letters read in the reverse order.
    """

    def __init__(self, algebra: PathAlgebra):
        self.algebra = algebra
        self.name = algebra.name + "*"
        self._strip_left: Dict[Tuple[int, str], int] = {}
        self._strip_right: Dict[Tuple[int, str], int] = {}
        self._by_path: Optional[Tuple[Dict[Tuple[int, int], int], Dict[Tuple[int, int], int]]] = None
        for label in sorted(algebra.quiver.arrows):
            xi = algebra.arrow(label)
            for c in range(len(algebra)):
                for table, prod in (
                    (self._strip_left, algebra.mult(c, xi)),
                    (self._strip_right, algebra.mult(xi, c)),
                ):
                    if prod is None:
                        continue
                    assert (prod, label) not in table, "contraction is not monomial"
                    table[(prod, label)] = c

    def __len__(self) -> int:
        return len(self.algebra)

    def left(self, k: int) -> int:
        return self.algebra.basis[k].right

    def right(self, k: int) -> int:
        return self.algebra.basis[k].left

    def grading(self, k: int) -> Bigrading:
        return self.algebra.basis[k].grading

    def length(self, k: int) -> int:
        return self.algebra.basis[k].length

    def name_of(self, k: int) -> str:
        p = self.algebra.basis[k]
        return p.name if p.is_idempotent else "".join(reversed(p.word))

    def strip_left(self, k: int, label: str) -> Optional[int]:
        """The contraction removing the leftmost letter `label` from `k`."""
        return self._strip_left.get((k, label))

    def strip_right(self, k: int, label: str) -> Optional[int]:
        return self._strip_right.get((k, label))

    def _path_tables(self) -> Tuple[Dict[Tuple[int, int], int], Dict[Tuple[int, int], int]]:
        if self._by_path is None:
            B = self.algebra
            left: Dict[Tuple[int, int], int] = {}
            right: Dict[Tuple[int, int], int] = {}
            for b in range(len(B)):
                for c in range(len(B)):
                    for table, prod in ((left, B.mult(c, b)), (right, B.mult(b, c))):
                        if prod is None:
                            continue
                        assert (prod, b) not in table, "contraction is not monomial"
                        table[(prod, b)] = c
            self._by_path = (left, right)
        return self._by_path

    def contract_left(self, k: int, b: int) -> Optional[int]:
        """The `c` with `c * basis[b] = basis[k]` in `B`, so `strip_left` by a
        whole path. Idempotents at the right vertex of `k` act trivially."""
        return self._path_tables()[0].get((k, b))

    def contract_right(self, k: int, b: int) -> Optional[int]:
        """The `c` with `basis[b] * c = basis[k]`."""
        return self._path_tables()[1].get((k, b))


def build_A(n: int) -> PathAlgebra:
    """The algebra `A_n` with arrows `iota_{i,i+1}` of degree (0, 1) and
    special `x_{i,i+1}` of degree (-1, -1)."""
    if n < 1:
        raise UnsupportedAlgebraError("A_n needs n >= 1, got {}".format(n))
    arrows = []
    for i in range(n):
        arrows.append(Arrow(arrow_label("i", i, i + 1), i, i + 1, Bigrading(0, 1), False))
        arrows.append(Arrow(arrow_label("x", i, i + 1), i, i + 1, Bigrading(-1, -1), True))
    A = PathAlgebra(Quiver(n + 1, arrows), "A_{}".format(n))
    assert len(A) == path_algebra_dimension(n)
    return A


def build_B(n: int) -> PathAlgebra:
    """The quadratic dual `B_n` with arrows `w_{i+1,i}` of degree (-2, -1) and
    special `y_{i+1,i}` of degree (-1, 1)."""
    if n < 1:
        raise UnsupportedAlgebraError("B_n needs n >= 1, got {}".format(n))
    arrows = []
    for i in range(n):
        arrows.append(Arrow(arrow_label("w", i + 1, i), i + 1, i, Bigrading(-2, -1), False))
        arrows.append(Arrow(arrow_label("y", i + 1, i), i + 1, i, Bigrading(-1, 1), True))
    B = PathAlgebra(Quiver(n + 1, arrows), "B_{}".format(n))
    assert len(B) == path_algebra_dimension(n)
    return B


def dualize(algebra: PathAlgebra) -> DualAlgebra:
    return DualAlgebra(algebra)


def pairing(A: PathAlgebra, B: PathAlgebra) -> Dict[str, str]:
    """Matches each arrow of `A` with the arrow of `B` running between the same
    vertices in the opposite direction whose bigrading is one homological
    degree lower."""
    if A.n_vertices != B.n_vertices:
        raise AlgebraMismatchError(
            "{} has {} vertices, {} has {}".format(A.name, A.n_vertices, B.name, B.n_vertices)
        )
    out: Dict[str, str] = {}
    for label, a in sorted(A.quiver.arrows.items()):
        matches = [
            b.label
            for b in B.quiver.arrows.values()
            if b.tail == a.head
            and b.head == a.tail
            and b.grading == a.grading.minus((1, 0))
        ]
        if len(matches) != 1:
            raise AlgebraMismatchError(
                "arrow {} of {} has {} dual candidates".format(label, A.name, len(matches))
            )
        out[label] = matches[0]
    return out


def relations_annihilate(A: PathAlgebra, B: PathAlgebra) -> bool:
    """Whether the relation spaces of `A` and `B` are orthogonal complements
    under the arrow pairing, i.e. whether `B` is the quadratic dual of `A`."""
    dual = pairing(A, B)

    def pair(b_word: Word, a_word: Word) -> int:
        return int(b_word == (dual[a_word[1]], dual[a_word[0]]))

    rel_A, rel_B = A.relations(), B.relations()
    for rb in rel_B:
        for ra in rel_A:
            if sum(pair(wb, wa) for wb in rb for wa in ra) % 2 != 0:
                return False
    return len(rel_A) + len(rel_B) == len(A.length_two_words())
