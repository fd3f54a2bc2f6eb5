"""Sparse linear algebra over GF(2) and bigraded chain complexes.

Matrices act on row vectors: row `i` of a differential lists the generators
appearing in the image of generator `i`. Ranks are computed by Gaussian
elimination on rows packed into python integers used as bitsets; a dense
`numpy` implementation is kept as an oracle for tests.
"""

from collections import defaultdict
from typing import (
    Callable,
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

import numpy as np

from core.base_abstractions.misc import (
    Bigrading,
    IllFormedComplexError,
    InvalidCancellationError,
    RankTable,
)
from utils.system import get_logger


class SparseMatF2(object):
    """Immutable sparse matrix over GF(2).

    # Attributes

    n_rows : Number of rows.
    n_cols : Number of columns.
    rows : For each row, the frozen set of column indices holding a one.
    """

    __slots__ = ("n_rows", "n_cols", "rows")

    def __init__(self, n_rows: int, n_cols: int, rows: Sequence[Iterable[int]]):
        assert len(rows) == n_rows, "expected {} rows, got {}".format(n_rows, len(rows))
        self.n_rows = n_rows
        self.n_cols = n_cols
        self.rows: Tuple[FrozenSet[int], ...] = tuple(frozenset(r) for r in rows)
        for i, r in enumerate(self.rows):
            for j in r:
                if not 0 <= j < n_cols:
                    raise IndexError(
                        "entry ({}, {}) outside a {}x{} matrix".format(i, j, n_rows, n_cols)
                    )

    @classmethod
    def from_entries(
        cls, n_rows: int, n_cols: int, entries: Iterable[Tuple[int, int]]
    ) -> "SparseMatF2":
        rows: List[Set[int]] = [set() for _ in range(n_rows)]
        for i, j in entries:
            rows[i] ^= {j}
        return cls(n_rows, n_cols, rows)

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "SparseMatF2":
        return cls(n_rows, n_cols, [()] * n_rows)

    @classmethod
    def from_dense(cls, mat: np.ndarray) -> "SparseMatF2":
        mat = np.asarray(mat) % 2
        return cls(
            mat.shape[0],
            mat.shape[1],
            [np.flatnonzero(mat[i]).tolist() for i in range(mat.shape[0])],
        )

    def entries(self) -> List[Tuple[int, int]]:
        return sorted((i, j) for i, r in enumerate(self.rows) for j in r)

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def is_zero(self) -> bool:
        return all(len(r) == 0 for r in self.rows)

    def transpose(self) -> "SparseMatF2":
        return SparseMatF2.from_entries(
            self.n_cols, self.n_rows, ((j, i) for i, j in self.entries())
        )

    def matmul(self, other: "SparseMatF2") -> "SparseMatF2":
        """Row-vector composition: `(self @ other)[i] = sum_{j in self[i]}
        other[j]`."""
        assert self.n_cols == other.n_rows, "shape mismatch {}x{} @ {}x{}".format(
            self.n_rows, self.n_cols, other.n_rows, other.n_cols
        )
        out = []
        for r in self.rows:
            acc: Set[int] = set()
            for j in r:
                acc ^= other.rows[j]
            out.append(acc)
        return SparseMatF2(self.n_rows, other.n_cols, out)

    def to_dense(self) -> np.ndarray:
        mat = np.zeros((self.n_rows, self.n_cols), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in r:
                mat[i, j] = 1
        return mat

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparseMatF2)
            and self.n_rows == other.n_rows
            and self.n_cols == other.n_cols
            and self.rows == other.rows
        )

    def __repr__(self) -> str:
        return "SparseMatF2({}x{}, nnz={})".format(self.n_rows, self.n_cols, self.nnz())


def _pack(columns: Iterable[int], column_index: Optional[Dict[int, int]] = None) -> int:
    bits = 0
    for j in columns:
        bits ^= 1 << (j if column_index is None else column_index[j])
    return bits


def rank_of_rows(rows: Iterable[int]) -> int:
    """Rank of a family of GF(2) vectors given as integer bitsets."""
    pivots: Dict[int, int] = {}
    for r in rows:
        while r:
            p = r.bit_length() - 1
            if p in pivots:
                r ^= pivots[p]
            else:
                pivots[p] = r
                break
    return len(pivots)


def rank(mat: SparseMatF2) -> int:
    return rank_of_rows(_pack(r) for r in mat.rows)


def dense_rank(mat: np.ndarray) -> int:
    """Row reduction of a dense 0/1 matrix, used to cross check `rank`."""
    m = (np.array(mat, dtype=np.uint8) % 2).copy()
    n_rows, n_cols = m.shape
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if len(nz) == 0:
            continue
        p = r + nz[0]
        if p != r:
            m[[r, p]] = m[[p, r]]
        below = np.flatnonzero(m[:, c])
        below = below[below != r]
        m[below] ^= m[r]
        r += 1
    return int(r)


class Generator(NamedTuple):
    name: str
    grading: Bigrading


class ChainComplex(object):
    """A finite bigraded complex of GF(2) vector spaces with a distinguished
    basis.

    # Attributes

    generators : The basis, generator `i` has name `generators[i].name`.
    differential : Square `SparseMatF2`, row `i` is the image of generator `i`.
    """

    def __init__(
        self,
        generators: Sequence[Generator],
        differential: SparseMatF2,
        validate: bool = True,
    ):
        self.generators: List[Generator] = [
            Generator(g.name, Bigrading(*g.grading)) for g in generators
        ]
        self.differential = differential
        if validate:
            self.validate()

    def __len__(self) -> int:
        return len(self.generators)

    def validate(self) -> None:
        n = len(self.generators)
        if self.differential.n_rows != n or self.differential.n_cols != n:
            raise IllFormedComplexError(
                "differential is {}x{} for {} generators".format(
                    self.differential.n_rows, self.differential.n_cols, n
                )
            )
        for i, r in enumerate(self.differential.rows):
            src = self.generators[i].grading
            for j in r:
                if self.generators[j].grading != src.plus((1, 0)):
                    raise IllFormedComplexError(
                        "arrow {} -> {} goes from {} to {}".format(
                            self.generators[i].name,
                            self.generators[j].name,
                            src,
                            self.generators[j].grading,
                        )
                    )

    def squares_to_zero(self) -> bool:
        packed = [_pack(r) for r in self.differential.rows]
        for r in self.differential.rows:
            acc = 0
            for j in r:
                acc ^= packed[j]
            if acc:
                return False
        return True

    def blocks(self) -> Dict[Bigrading, List[int]]:
        out: Dict[Bigrading, List[int]] = defaultdict(list)
        for i, g in enumerate(self.generators):
            out[g.grading].append(i)
        return dict(out)

    def graded_dimensions(self) -> RankTable:
        return {k: len(v) for k, v in self.blocks().items()}

    def index_of(self, name: str) -> int:
        for i, g in enumerate(self.generators):
            if g.name == name:
                return i
        raise KeyError(name)

    def quantum_summand(self, quantum: int) -> "ChainComplex":
        """The direct summand spanned by generators of quantum grading
        `quantum`."""
        keep = [i for i, g in enumerate(self.generators) if g.grading.quantum == quantum]
        new_index = {old: new for new, old in enumerate(keep)}
        rows = [[new_index[j] for j in self.differential.rows[i]] for i in keep]
        return ChainComplex(
            [self.generators[i] for i in keep], SparseMatF2(len(keep), len(keep), rows)
        )


def homology(complex: ChainComplex, check: bool = True) -> RankTable:
    """Bigraded ranks of the homology of `complex`.

    # Parameters

    complex : The complex.
    check : Whether to verify that the differential squares to zero first.

    # Returns

    Mapping from bigrading to rank, zero ranks omitted.
    """
    if check and not complex.squares_to_zero():
        raise IllFormedComplexError("differential does not square to zero")

    blocks = complex.blocks()
    block_rank: Dict[Bigrading, int] = {}
    for grading, members in blocks.items():
        target = blocks.get(grading.plus((1, 0)), [])
        column_index = {j: k for k, j in enumerate(target)}
        block_rank[grading] = rank_of_rows(
            _pack(complex.differential.rows[i], column_index) for i in members
        )

    out: RankTable = {}
    for grading, members in blocks.items():
        r = (
            len(members)
            - block_rank[grading]
            - block_rank.get(grading.minus((1, 0)), 0)
        )
        assert r >= 0
        if r > 0:
            out[grading] = r
    return out


def cancel_pair(complex: ChainComplex, b: int, a: int) -> ChainComplex:
    """Gaussian elimination of the arrow `b -> a`.

    Every `x` with `a` in `d(x)` gets `d'(x) = d(x) + d(b)` restricted to the
    surviving generators; `a` and `b` are removed.
    """
    if a not in complex.differential.rows[b]:
        raise InvalidCancellationError(
            "no arrow {} -> {}".format(complex.generators[b].name, complex.generators[a].name)
        )
    reducer = CancellationState.from_complex(complex)
    reducer.cancel(b, a)
    return reducer.to_complex(complex.generators)


class CancellationState(object):
    """Mutable adjacency form of a complex used by repeated cancellation.

    # Attributes

    out : Generator id to the set of ids in its image.
    inc : Generator id to the set of ids whose image contains it.
    """

    def __init__(self, ids: Iterable[int]):
        self.out: Dict[int, Set[int]] = {i: set() for i in ids}
        self.inc: Dict[int, Set[int]] = {i: set() for i in self.out}

    @classmethod
    def from_complex(cls, complex: ChainComplex) -> "CancellationState":
        state = cls(range(len(complex)))
        for i, r in enumerate(complex.differential.rows):
            for j in r:
                state.add_arrow(i, j)
        return state

    def alive(self) -> List[int]:
        return sorted(self.out)

    def add_arrow(self, src: int, dst: int) -> None:
        self.out[src].add(dst)
        self.inc[dst].add(src)

    def toggle_arrow(self, src: int, dst: int) -> None:
        if dst in self.out[src]:
            self.out[src].discard(dst)
            self.inc[dst].discard(src)
        else:
            self.add_arrow(src, dst)

    def cancel(self, b: int, a: int) -> None:
        if b not in self.out or a not in self.out[b]:
            raise InvalidCancellationError("no arrow {} -> {}".format(b, a))
        rest = [y for y in self.out[b] if y != a]
        for x in list(self.inc[a]):
            if x == b:
                continue
            for y in rest:
                self.toggle_arrow(x, y)
        for v in (a, b):
            for y in list(self.out[v]):
                self.inc[y].discard(v)
            for x in list(self.inc[v]):
                self.out[x].discard(v)
            del self.out[v]
            del self.inc[v]

    def to_complex(self, generators: Sequence[Generator]) -> ChainComplex:
        keep = self.alive()
        new_index = {old: new for new, old in enumerate(keep)}
        rows = [[new_index[j] for j in self.out[i]] for i in keep]
        return ChainComplex(
            [generators[i] for i in keep],
            SparseMatF2(len(keep), len(keep), rows),
            validate=False,
        )


def reduce_complex(
    complex: ChainComplex,
    choose: Optional[Callable[[CancellationState], Optional[Tuple[int, int]]]] = None,
) -> ChainComplex:
    """Cancels arrows until the differential vanishes.

    The surviving generators form a basis of the homology. Unless `choose` is
    given, the arrow cancelled next leaves the smallest source id and enters its
    smallest target id.
    """
    state = CancellationState.from_complex(complex)
    n_cancelled = 0
    while True:
        if choose is None:
            pick = None
            for b in state.alive():
                if state.out[b]:
                    pick = (b, min(state.out[b]))
                    break
        else:
            pick = choose(state)
        if pick is None:
            break
        state.cancel(*pick)
        n_cancelled += 1
    get_logger().debug(
        "cancelled {} arrows, {} generators remain".format(n_cancelled, len(state.out))
    )
    return state.to_complex(complex.generators)


def random_choice(rng: np.random.RandomState) -> Callable[[CancellationState], Optional[Tuple[int, int]]]:
    """An arrow chooser for `reduce_complex` picking uniformly among arrows."""

    def choose(state: CancellationState) -> Optional[Tuple[int, int]]:
        arrows = [(b, a) for b in state.alive() for a in sorted(state.out[b])]
        if len(arrows) == 0:
            return None
        return arrows[rng.randint(len(arrows))]

    return choose
