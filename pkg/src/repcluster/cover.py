"""The translation quiver ZA_n as a computational stand-in for the AR-quiver
of the bounded derived category of type A_n, and Hom/Ext in orbit categories
by summing over orbits.

Coordinates are ``(column, row)`` with arrows ``(c, r) -> (c, r+1)`` and
``(c, r) -> (c+1, r-1)`` and translation ``(c, r) -> (c-1, r)``.  The
depth ``2c + r`` rises by one along arrows; every functor used here shifts
it by a constant, which is what makes orbit representatives easy to pick.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import NamedTuple

from .orbit_model import build_gamma
from .polygon import Diagonal, ModelParams, enumerate_diagonals
from .quiver import TranslationQuiver, hammock


class CoverVertex(NamedTuple):
    column: int
    row: int


def depth(v) -> int:
    return 2 * v[0] + v[1]


def tau_action(v, i: int = 1) -> CoverVertex:
    return CoverVertex(v[0] - i, v[1])


def shift_action(v, i: int, n: int) -> CoverVertex:
    """``[i]`` with ``[1](c, r) = (c + r, n + 1 - r)``; ``[2]`` is ``tau^-(n+1)``."""
    c, r = v
    q, s = divmod(i, 2)
    c += q * (n + 1)
    if s:
        c, r = c + r, n + 1 - r
    return CoverVertex(c, r)


def serre_action(v, i: int, n: int) -> CoverVertex:
    """``nu = tau [1]``, so ``nu(c, r) = (c + r - 1, n + 1 - r)``."""
    return tau_action(shift_action(v, i, n), i)


def orbit_generator_action(v, params: ModelParams, i: int = 1) -> CoverVertex:
    """``(tau^-1 [m])^p`` applied ``i`` times."""
    P = params
    return tau_action(shift_action(v, i * P.p * P.m, P.n), -i * P.p)


def generator_depth_shift(params: ModelParams) -> int:
    return 2 * params.p + params.p * params.m * (params.n + 1)


class FunctorKind(str, Enum):
    TAU = "Tau"
    SHIFT = "Shift"
    SERRE = "Serre"
    ORBIT_GENERATOR = "OrbitGenerator"


@dataclass(frozen=True)
class FunctorAction:
    kind: FunctorKind
    exponent: int = 1

    def apply(self, v, params: ModelParams) -> CoverVertex:
        if self.kind is FunctorKind.TAU:
            return tau_action(v, self.exponent)
        if self.kind is FunctorKind.SHIFT:
            return shift_action(v, self.exponent, params.n)
        if self.kind is FunctorKind.SERRE:
            return serre_action(v, self.exponent, params.n)
        return orbit_generator_action(v, params, self.exponent)


# ------------------------------------------------------------ cover windows

def cover_window(n: int, first_column: int, last_column: int) -> TranslationQuiver:
    vertices = [CoverVertex(c, r) for c in range(first_column, last_column + 1)
                for r in range(1, n + 1)]
    vset = set(vertices)
    arrows = []
    for c, r in vertices:
        for t in ((c, r + 1), (c + 1, r - 1)):
            if t in vset:
                arrows.append((CoverVertex(c, r), CoverVertex(*t)))
    translation = {v: tau_action(v) for v in vertices if tau_action(v) in vset}
    return TranslationQuiver(vertices, arrows, translation,
                             meta={"model": "cover", "n": n})


def cover_subquiver(n: int, vertices) -> TranslationQuiver:
    """Full subquiver of ZA_n on a finite vertex set."""
    vertices = sorted(CoverVertex(*v) for v in vertices)
    vset = set(vertices)
    arrows = [(v, CoverVertex(*t)) for v in vertices
              for t in ((v[0], v[1] + 1), (v[0] + 1, v[1] - 1)) if t in vset]
    translation = {v: tau_action(v) for v in vertices if tau_action(v) in vset}
    return TranslationQuiver(vertices, arrows, translation, meta={"model": "cover", "n": n})


@lru_cache(maxsize=None)
def _hammock_from_origin(n: int, row: int) -> dict:
    # the support of Hom((0, row), -) has depth in [row, row + n - 1], so
    # columns from -(n // 2) - 1 to n + 1 are plenty
    window = cover_window(n, -n - 1, n + 1)
    return hammock(window, CoverVertex(0, row))


def hom_dim_derived(x, y, n: int) -> int:
    """``dim Hom(x, y)`` in the derived category, by knitting on a window."""
    if not (1 <= x[1] <= n and 1 <= y[1] <= n):
        raise ValueError(f"rows must lie in 1..{n}")
    rel = CoverVertex(y[0] - x[0], y[1])
    return _hammock_from_origin(n, x[1]).get(rel, 0)


# ------------------------------------------------------------- orbit quivers

def _representative(v, params: ModelParams) -> CoverVertex:
    shift = generator_depth_shift(params)
    k = depth(v) // shift
    return orbit_generator_action(v, params, -k)


def orbit_quiver(params: ModelParams) -> TranslationQuiver:
    """ZA_n modulo the orbit generator, on representatives of depth in
    ``[0, D)`` where ``D`` is the generator's depth shift."""
    n, D = params.n, generator_depth_shift(params)
    vertices = [CoverVertex(c, r) for r in range(1, n + 1)
                for c in range(-r, D) if 0 <= 2 * c + r < D]
    vertices.sort()
    arrows = []
    for c, r in vertices:
        v = CoverVertex(c, r)
        if r < n:
            arrows.append((v, _representative((c, r + 1), params)))
        if r > 1:
            arrows.append((v, _representative((c + 1, r - 1), params)))
    translation = {v: _representative(tau_action(v), params) for v in vertices}
    return TranslationQuiver(vertices, arrows, translation,
                             meta={"model": "cover-orbit", **params.to_dict()})


def quotient_by_shift(n: int) -> TranslationQuiver:
    """ZA_n modulo ``[1]`` (the shift raises depth by ``n + 1``)."""
    D = n + 1

    def rep(v):
        return shift_action(v, -(depth(v) // D), n)

    vertices = sorted(CoverVertex(c, r) for r in range(1, n + 1)
                      for c in range(-r, D) if 0 <= 2 * c + r < D)
    arrows = []
    for c, r in vertices:
        v = CoverVertex(c, r)
        if r < n:
            arrows.append((v, rep((c, r + 1))))
        if r > 1:
            arrows.append((v, rep((c + 1, r - 1))))
    translation = {v: rep(tau_action(v)) for v in vertices}
    return TranslationQuiver(vertices, arrows, translation, meta={"model": "cover/[1]", "n": n})


class BijectionError(AssertionError):
    pass


class FundamentalBijection:
    """Covering map from ZA_n onto the diagonal quiver.

    Anchored at ``(0, 1) -> (1, m+2, 1)`` (the shortest m-diagonal at vertex 1)
    and extended along arrows: row 1 follows the translation, and the image of
    ``(c, r+1)`` is the out-neighbour of the image of ``(c, r)`` other than the
    image of ``(c+1, r-1)``.  :meth:`validate` checks the result is an
    isomorphism of translation quivers from the orbit quiver.
    """

    def __init__(self, params: ModelParams, gamma: TranslationQuiver | None = None):
        self.params = params
        self.gamma = build_gamma(params) if gamma is None else gamma
        self.orbit = orbit_quiver(params)
        n = params.n
        cols = [v.column for v in self.orbit.vertices]
        lo, hi = min(cols), max(cols) + n + 1
        anchor = Diagonal(1, params.m + 2, 1)
        image: dict = {}
        # row 1: columns lo..hi via the translation and its inverse
        v = anchor
        for c in range(0, hi + 1):
            image[(c, 1)] = v
            v = self.gamma.tau_inverse(v)
        v = anchor
        for c in range(0, lo - 1, -1):
            image[(c, 1)] = v
            v = self.gamma.tau(v)
        for r in range(1, n):
            for c in range(lo, hi - r + 1):
                succ = set(self.gamma.successors[image[(c, r)]])
                if r > 1:
                    succ.discard(image[(c + 1, r - 1)])
                if len(succ) != 1:
                    raise BijectionError(
                        f"cannot extend along arrows at {(c, r)}: candidates {sorted(succ)}")
                image[(c, r + 1)] = succ.pop()
        self.projection = {v: image[tuple(v)] for v in self.orbit.vertices}
        self.lift = {d: v for v, d in self.projection.items()}

    def project(self, v) -> Diagonal:
        return self.projection[_representative(v, self.params)]

    def validate(self) -> bool:
        g, o, pr = self.gamma, self.orbit, self.projection
        if set(self.lift) != g.vertex_set or len(self.lift) != len(pr):
            raise BijectionError("vertex map is not a bijection onto the diagonals")
        for s, t in o.arrows:
            if g.arrow_count(pr[s], pr[t]) != o.arrow_count(s, t):
                raise BijectionError(f"arrow {s}->{t} not carried to an arrow")
        if len(o.arrows) != len(g.arrows):
            raise BijectionError("arrow counts differ")
        for v, tv in o.translation.items():
            if g.tau(pr[v]) != pr[tv]:
                raise BijectionError(f"translation not respected at {v}")
        return True


@lru_cache(maxsize=64)
def fundamental_bijection(params: ModelParams) -> FundamentalBijection:
    return FundamentalBijection(params)


def _as_cover(x, params: ModelParams) -> CoverVertex:
    if isinstance(x, Diagonal):
        return fundamental_bijection(params).lift[x]
    return CoverVertex(*x)


def orbit_hom(x, y, params: ModelParams) -> int:
    """Sum of ``dim Hom(x, g^i y)`` over the orbit of ``y`` under the generator.

    A nonzero derived Hom needs ``0 <= depth(target) - depth(source) <= n - 1``
    (the hammock ends at the Serre image).  The sum runs over every orbit
    element with depth offset in ``[-1, 2n + 2]``, which contains that range.
    """
    n, D = params.n, generator_depth_shift(params)
    xs, ys = _as_cover(x, params), _as_cover(y, params)
    lo = depth(xs) - 1
    hi = depth(xs) + 2 * n + 2
    k = -((depth(ys) - lo) // D)  # smallest exponent landing at depth >= lo
    total = 0
    w = orbit_generator_action(ys, params, k)
    while depth(w) <= hi:
        if depth(w) >= lo:
            total += hom_dim_derived(xs, w, n)
        w = orbit_generator_action(w, params, 1)
    return total


def orbit_ext(x, y, degree: int, params: ModelParams) -> int:
    """``dim Ext^degree(x, y) = dim Hom(x, y[degree])`` in the orbit category."""
    if not 1 <= degree <= params.m:
        raise ValueError(f"Ext degree must lie in 1..m = 1..{params.m}, got {degree}")
    ys = shift_action(_as_cover(y, params), degree, params.n)
    return orbit_hom(x, ys, params)


def ext1_crossing(x: Diagonal, y: Diagonal, params: ModelParams) -> int:
    """Ext^1 from the crossing rule for m = 1 (same region: ``y`` starts
    first; ``x`` one region after ``y``: ``x`` starts first)."""
    if params.m != 1:
        raise ValueError("the crossing rule for Ext^1 is only available for m = 1")
    p = params.p
    (i, j, l), (i2, j2, l2) = x, y
    if l == l2 and 1 <= i2 < i < j2 < j <= params.N:
        return 1
    if (l - 1) % p == l2 % p and 1 <= i < i2 < j < j2 <= params.N:
        return 1
    return 0


def hom_table(params: ModelParams, method: str = "cover") -> dict:
    diagonals = enumerate_diagonals(params)
    if method == "cover":
        rows = [[orbit_hom(x, y, params) for y in diagonals] for x in diagonals]
    elif method == "hammock":
        g = fundamental_bijection(params).gamma
        rows = []
        for x in diagonals:
            h = hammock(g, x)
            rows.append([h.get(y, 0) for y in diagonals])
    else:
        raise ValueError(f"unknown method {method!r}")
    return {"params": params.to_dict(), "kind": "hom", "method": method,
            "keys": [list(d) for d in diagonals], "matrix": rows}


def ext_table(params: ModelParams, degree: int = 1, method: str = "cover") -> dict:
    diagonals = enumerate_diagonals(params)
    if method == "cover":
        rows = [[orbit_ext(x, y, degree, params) for y in diagonals] for x in diagonals]
    elif method == "crossing":
        if degree != 1:
            raise ValueError("the crossing rule only gives Ext^1")
        rows = [[ext1_crossing(x, y, params) for y in diagonals] for x in diagonals]
    else:
        raise ValueError(f"unknown method {method!r}")
    return {"params": params.to_dict(), "kind": f"ext{degree}", "method": method,
            "keys": [list(d) for d in diagonals], "matrix": rows}
