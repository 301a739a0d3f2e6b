"""The translation quiver of m-diagonals of the repetitive polygon.

Arrows rotate one endpoint of a diagonal clockwise by ``m`` steps inside its
region.  The region index changes only when a rotation lands on local vertex
1 (the ``IrrRhoRot`` arrows ``(i, N-m+1, k) -> (1, i, k+1)``), and the
translation leaves a region only from diagonals ``(1, j, k)``.  Every other
wrap-around stays in the region.
"""
from __future__ import annotations

from collections import Counter
from enum import Enum

from .polygon import Diagonal, ModelParams, enumerate_diagonals
from .quiver import TranslationQuiver

IRR_ROT = "IrrRot"
IRR_RHO_ROT = "IrrRhoRot"


def _reduce(a: int, b: int, N: int) -> tuple:
    a, b = (a - 1) % N + 1, (b - 1) % N + 1
    return (a, b) if a < b else (b, a)


def rotate_endpoint_j(d: Diagonal, params: ModelParams):
    """Clockwise m-step rotation of the larger endpoint; ``(target, kind)``."""
    N, m, p = params.N, params.m, params.p
    raw = d.j + m
    if raw <= N:
        return Diagonal(d.i, raw, d.k), IRR_ROT
    a, b = _reduce(raw, d.i, N)
    if raw - N == 1:
        return Diagonal(a, b, d.k % p + 1), IRR_RHO_ROT
    return Diagonal(a, b, d.k), IRR_ROT


def rotate_endpoint_i(d: Diagonal, params: ModelParams):
    return Diagonal(d.i + params.m, d.j, d.k), IRR_ROT


def tau_m(d: Diagonal, params: ModelParams) -> Diagonal:
    N, m, p = params.N, params.m, params.p
    a, b = d.i - m, d.j - m
    if a >= 1:
        return Diagonal(a, b, d.k)
    a, b = _reduce(a, b, N)
    k = (d.k - 2) % p + 1 if d.i == 1 else d.k
    return Diagonal(a, b, k)


def build_gamma(params: ModelParams) -> TranslationQuiver:
    vertices = enumerate_diagonals(params)
    vset = set(vertices)
    arrows, kinds, translation = [], {}, {}
    for d in vertices:
        for rotate in (rotate_endpoint_j, rotate_endpoint_i):
            target, kind = rotate(d, params)
            if target in vset:
                arrows.append((d, target))
                kinds[(d, target)] = kind
        translation[d] = tau_m(d, params)
    return TranslationQuiver(
        vertices, arrows, translation,
        labels={d: list(d) for d in vertices},
        arrow_kinds=kinds,
        meta={"model": "gamma", **params.to_dict()},
    )


def label_fundamental_domains(q: TranslationQuiver) -> dict:
    return {v: v.k if isinstance(v, Diagonal) else v[2] for v in q.vertices}


def domain_sizes(q: TranslationQuiver) -> dict:
    return dict(sorted(Counter(label_fundamental_domains(q).values()).items()))


class BandTopology(str, Enum):
    MOEBIUS = "Moebius"
    CYLINDER = "Cylinder"
    INCONCLUSIVE = "inconclusive"


def band_topology(q: TranslationQuiver) -> BandTopology:
    """Walk one lap of the translation from the shortest diagonal at vertex 1
    and report whether the row order came back reversed.

    Rows are length classes ``j - i - 1`` inside a region.  A lap ends after
    ``p`` seam steps (translations out of a diagonal ``(1, j, k)``, each moving
    to the previous region), i.e. back in the starting region.  With a single
    row (``n = 1``) the rows cannot be told apart and the parity of seam steps,
    each of which swaps the roles of the endpoints, decides.
    """
    n, m, p = q.meta.get("n"), q.meta.get("m"), q.meta.get("p")
    if q.meta.get("model") != "gamma" or m != 1:
        return BandTopology.INCONCLUSIVE
    start = Diagonal(1, 3, 1)
    row = start.j - start.i - 1
    seams = 0
    v = start
    while seams < p:
        if v.i == 1:
            seams += 1
        v = q.translation[v]
    if v.k != start.k:
        raise AssertionError("a lap of the translation did not return to the start region")
    end_row = v.j - v.i - 1
    if n >= 2:
        if end_row not in (row, n + 1 - row):
            raise AssertionError("translation left the row pair of the start vertex")
        reversed_order = end_row != row
    else:
        reversed_order = seams % 2 == 1
    return BandTopology.MOEBIUS if reversed_order else BandTopology.CYLINDER
