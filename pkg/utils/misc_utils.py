from functools import lru_cache
from typing import List, Sequence

import numpy as np
from scipy.special import comb


def partition_sequence(input: Sequence, parts: int) -> List:
    assert 0 < parts <= len(input)
    n = len(input)

    quotient = n // parts
    remainder = n % parts
    counts = [quotient + (i < remainder) for i in range(parts)]
    inds = np.cumsum([0] + counts)
    return [input[ind0:ind1] for ind0, ind1 in zip(inds[:-1], inds[1:])]


@lru_cache(10000)
def cached_comb(n: int, m: int) -> int:
    return int(comb(n, m, exact=True))


def path_algebra_dimension(n: int) -> int:
    """Dimension of `A_n` (and `B_n`): one idempotent per vertex and two paths
    for every ordered pair of distinct vertices."""
    return (n + 1) + 2 * cached_comb(n + 1, 2)

