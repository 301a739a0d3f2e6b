"""Brute-force Hom dimensions in a mesh category.

Independent of the knitting in :mod:`repcluster.quiver`: paths are
enumerated length by length and the mesh ideal is spanned explicitly, so
``dim Hom(x, y)`` is the dimension of the path space modulo that ideal.
Only meant for small quivers.
"""
from __future__ import annotations

from fractions import Fraction

from .quiver import TranslationQuiver, mesh_relations


def _paths_from(q: TranslationQuiver, start, length: int) -> list:
    """All paths of the given length as tuples of arrow indices, keyed by end."""
    out_arrows: dict = {}
    for idx, (s, _) in enumerate(q.arrows):
        out_arrows.setdefault(s, []).append(idx)
    layer = [((), start)]
    for _ in range(length):
        layer = [(path + (a,), q.arrows[a][1])
                 for path, end in layer for a in out_arrows.get(end, ())]
    return layer


def _rank(rows: list, ncols: int) -> int:
    rows = [dict(r) for r in rows if r]
    rank = 0
    pivots_used = set()
    for col in range(ncols):
        pivot = next((r for r in rows if r.get(col)), None)
        if pivot is None:
            continue
        rows.remove(pivot)
        pivots_used.add(col)
        rank += 1
        pv = pivot[col]
        for r in rows:
            c = r.get(col)
            if c:
                factor = Fraction(c, 1) / pv
                for k, val in pivot.items():
                    nv = r.get(k, 0) - factor * val
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
    return rank


def pathspace_homs(q: TranslationQuiver, x, max_length: int = 64) -> dict:
    """``{y: dim Hom(x, y)}`` summed over path lengths.

    Stops at the first length where every path out of ``x`` lies in the
    ideal; longer paths factor through those, so they vanish too.
    """
    relations = mesh_relations(q)
    totals: dict = {}
    for length in range(max_length + 1):
        paths = _paths_from(q, x, length)
        if not paths:
            break
        by_end: dict = {}
        for path, end in paths:
            by_end.setdefault(end, []).append(path)
        generators: dict = {}
        if length >= 2:
            for rel in relations:
                for a in range(length - 1):
                    b = length - 2 - a
                    for pre, pre_end in _paths_from(q, x, a):
                        if pre_end != rel.source:
                            continue
                        for post, end in _paths_from(q, rel.target, b):
                            vec: dict = {}
                            for s_idx, a_idx in rel.terms:
                                key = pre + (s_idx, a_idx) + post
                                vec[key] = vec.get(key, 0) + 1
                            generators.setdefault(end, []).append(vec)
        surviving = 0
        for end, plist in by_end.items():
            index = {p: i for i, p in enumerate(plist)}
            rows = [{index[k]: c for k, c in vec.items() if c}
                    for vec in generators.get(end, ())]
            dim = len(plist) - _rank(rows, len(plist))
            if dim:
                totals[end] = totals.get(end, 0) + dim
                surviving += dim
        if surviving == 0:
            break
    return totals


def pathspace_hom(q: TranslationQuiver, x, y, max_length: int = 64) -> int:
    return pathspace_homs(q, x, max_length).get(y, 0)
