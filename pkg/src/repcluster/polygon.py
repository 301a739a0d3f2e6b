"""Combinatorics of the repetitive polygon: regions, m-diagonals, rotation
and crossing.  Nothing here is metric; crossing is index interleaving."""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple


@dataclass(frozen=True)
class ModelParams:
    n: int
    m: int = 1
    p: int = 1

    def __post_init__(self):
        for name in ("n", "m", "p"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ValueError(f"{name} must be a positive integer (got {value!r})")

    @property
    def N(self) -> int:
        """Vertices per region."""
        return (self.n + 1) * self.m + 2

    @property
    def total_vertices(self) -> int:
        return self.p * (self.N - 1)

    @property
    def diagonals_per_region(self) -> int:
        return self.n * (self.m * (self.n + 1) + 2) // 2

    @property
    def vertex_count(self) -> int:
        return self.p * self.diagonals_per_region

    def to_dict(self):
        return {"n": self.n, "m": self.m, "p": self.p}


class Diagonal(NamedTuple):
    i: int
    j: int
    k: int

    def to_json(self):
        return [self.i, self.j, self.k]


@dataclass(frozen=True)
class Region:
    k: int
    params: ModelParams

    @property
    def boundary(self) -> list:
        """Global vertex numbers of the region, local order 1..N.  Local
        vertex N of region k is local vertex 1 of region k+1."""
        P, N = self.params, self.params.N
        return [((self.k - 1) * (N - 1) + local - 1) % P.total_vertices + 1
                for local in range(1, N + 1)]


def is_m_diagonal(i: int, j: int, params: ModelParams) -> bool:
    """Both parts cut off by (i, j) have 2 vertices modulo m."""
    if not 1 <= i < j <= params.N:
        raise ValueError(f"need 1 <= i < j <= {params.N}, got ({i}, {j})")
    m = params.m
    inside = j - i + 1
    outside = params.N - (j - i) + 1
    return inside % m == 2 % m and outside % m == 2 % m


def _is_diagonal_pair(i: int, j: int, params: ModelParams) -> bool:
    return (1 <= i < j <= params.N and j - i >= 2 and (i, j) != (1, params.N)
            and (j - i) % params.m == 1 % params.m)


def diagonal(i: int, j: int, k: int, params: ModelParams) -> Diagonal:
    """Canonical m-diagonal: indices reduced into 1..N and sorted, region into 1..p."""
    N = params.N
    i, j = (i - 1) % N + 1, (j - 1) % N + 1
    if i > j:
        i, j = j, i
    if not _is_diagonal_pair(i, j, params):
        raise ValueError(f"({i}, {j}) is not an m-diagonal of a region with N={N}, m={params.m}")
    return Diagonal(i, j, (k - 1) % params.p + 1)


def region_diagonals(params: ModelParams, k: int = 1) -> list:
    N = params.N
    return [Diagonal(i, j, k) for i in range(1, N + 1) for j in range(i + 2, N + 1)
            if _is_diagonal_pair(i, j, params)]


def enumerate_diagonals(params: ModelParams) -> list:
    """All m-diagonals of all regions, region-major then lexicographic."""
    return [d for k in range(1, params.p + 1) for d in region_diagonals(params, k)]


def rho(d: Diagonal, params: ModelParams, times: int = 1) -> Diagonal:
    return Diagonal(d.i, d.j, (d.k - 1 + times) % params.p + 1)


def crosses(d1: Diagonal, d2: Diagonal) -> bool:
    if d1.k != d2.k:
        raise ValueError("diagonals of different regions: transport one with rho first")
    i1, j1, i2, j2 = d1.i, d1.j, d2.i, d2.j
    return i1 < i2 < j1 < j2 or i2 < i1 < j2 < j1
