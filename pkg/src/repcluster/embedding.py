"""The diagonal quiver of the repetitive polygon as a band inside the
diagonal quiver of a single larger polygon, and the quotient obtained by
deleting the rest of that larger quiver.

Rows of ``Gamma_t`` (the (t+3)-gon, one region, m = 1) are indexed by
``j - i - 1``, so a diagonal sits in row ``r`` when one side of it cuts off
``r`` interior vertices; the other side puts it in row ``t + 1 - r``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .cover import (CoverVertex, fundamental_bijection, generator_depth_shift,
                    orbit_generator_action)
from .orbit_model import build_gamma
from .polygon import ModelParams
from .quiver import (QuiverIsomorphism, TranslationQuiver, find_isomorphism,
                     induced_subquiver, refinement_trace)


class EmbeddingError(RuntimeError):
    def __init__(self, message: str, trace: dict | None = None):
        super().__init__(message)
        self.trace = trace or {}


def _check_p(p: int) -> None:
    if p <= 2:
        raise ValueError(f"p must be greater than 2 (got {p}): "
                         "for p <= 2 the two models overlap")


def t_value(n: int, p: int) -> int:
    _check_p(p)
    if p % 2 == 0:
        return (n + 3) * p // 2 - 3
    return (n + 3) * p - 3


@dataclass(frozen=True)
class BandSelection:
    n: int
    p: int
    t: int
    rows: tuple
    parity_case: str

    @property
    def deleted_rows(self) -> tuple:
        return tuple(r for r in range(1, self.t + 1) if r not in self.rows)

    def to_dict(self):
        return {"n": self.n, "p": self.p, "t": self.t, "parity_case": self.parity_case,
                "rows": list(self.rows), "deleted_rows": list(self.deleted_rows)}


def odd_band_start(n: int, p: int) -> int:
    return (p - 1) * (n + 3) // 2 + 1


def band_selection(n: int, p: int) -> BandSelection:
    """Even p: the top and bottom n rows.  Odd p: the n rows from height
    ``(p-1)(n+3)/2 + 1``, counted from the bottom; that band is symmetric
    under ``r -> t + 1 - r`` so counting from the top gives the same rows."""
    t = t_value(n, p)
    if p % 2 == 0:
        rows = tuple(range(1, n + 1)) + tuple(range(t + 1 - n, t + 1))
        if n >= t + 1 - n:
            raise EmbeddingError("the two kept strips overlap")
        return BandSelection(n, p, t, rows, "even")
    a = odd_band_start(n, p)
    return BandSelection(n, p, t, tuple(range(a, a + n)), "odd")


def row(d) -> int:
    return d.j - d.i - 1


def gamma_t(t: int) -> TranslationQuiver:
    return build_gamma(ModelParams(t, 1, 1))


def band_subquiver(sel: BandSelection, big: TranslationQuiver | None = None) -> TranslationQuiver:
    big = gamma_t(sel.t) if big is None else big
    keep = [v for v in big.vertices if row(v) in sel.rows]
    return induced_subquiver(big, keep, meta={"model": "band", **sel.to_dict()})


def gluing_check(sel: BandSelection) -> dict:
    """Compare the identification of the band with the orbit generator.

    In the cover ZA_t of ``Gamma_t`` the band lifts to a strip of n rows
    (rows ``1..n`` for even p, ``a..a+n-1`` for odd p), which is a copy of
    ZA_n.  The strip is glued to itself by ``F^2`` (even p) or ``F`` (odd p),
    ``F = tau^-1 [1]`` on ZA_t.  That gluing must agree with the generator
    ``(tau^-1 [1])^p`` of ZA_n in local coordinates, and the strip must
    project onto exactly the kept band.
    """
    n, p, t = sel.n, sel.p, sel.t
    big = ModelParams(t, 1, 1)
    small = ModelParams(n, 1, p)
    r0, power = (1, 2) if sel.parity_case == "even" else (sel.rows[0], 1)
    period = generator_depth_shift(small)
    strip = [CoverVertex(c, r) for r in range(r0, r0 + n)
             for c in range(-n - 1, period + n + 1)]
    mismatches = []
    for v in strip:
        w = orbit_generator_action(v, big, power)
        local_v = CoverVertex(v.column, v.row - r0 + 1)
        local_w = CoverVertex(w.column, w.row - r0 + 1)
        if local_w != orbit_generator_action(local_v, small):
            mismatches.append([list(v), list(w)])
    bij = fundamental_bijection(big)
    image = {bij.project(v) for v in strip}
    band = {d for d in bij.gamma.vertices if row(d) in sel.rows}
    return {"passed": not mismatches and image == band,
            "strip_rows": [r0, r0 + n - 1], "power": power,
            "mismatches": mismatches[:3], "projects_onto_band": image == band}


@dataclass
class Embedding:
    selection: BandSelection
    isomorphism: QuiverIsomorphism
    band_vertices: int
    gluing: dict = field(default_factory=dict)

    def to_dict(self):
        return {"selection": self.selection.to_dict(),
                "band_vertices": self.band_vertices, "gluing": self.gluing,
                "vertex_map": [[list(a), list(b)] for a, b in
                               sorted(self.isomorphism.vertex_map.items())]}


def embed(n: int, p: int) -> Embedding:
    """Isomorphism of translation quivers from ``Gamma_{n,p}`` onto the band
    of ``Gamma_t``, with the band's translation the restriction of
    ``Gamma_t``'s."""
    sel = band_selection(n, p)
    band = band_subquiver(sel)
    expected = p * n * (n + 3) // 2
    if len(band) != expected:
        raise EmbeddingError(f"band has {len(band)} vertices, expected {expected}")
    small = build_gamma(ModelParams(n, 1, p))
    iso = find_isomorphism(small, band, respect_translation=True)
    if iso is None:
        raise EmbeddingError(f"no isomorphism from Gamma_({n},{p}) onto the band",
                             refinement_trace(small, band))
    gluing = gluing_check(sel)
    if not gluing["passed"]:
        raise EmbeddingError("band gluing differs from the orbit generator", gluing)
    return Embedding(sel, iso, len(band), gluing)


def delete_rows(big: TranslationQuiver, rows) -> TranslationQuiver:
    """Remove a union of rows after checking it is stable under the
    translation."""
    rows = set(rows)
    doomed = {v for v in big.vertices if row(v) in rows}
    moved = {big.translation[v] for v in doomed if v in big.translation}
    if moved != doomed:
        witness = sorted(moved ^ doomed)[:1]
        raise EmbeddingError("deleted band is not stable under the translation",
                             {"witness": [list(w) for w in witness]})
    if not doomed:
        return big
    keep = [v for v in big.vertices if v not in doomed]
    return induced_subquiver(big, keep, meta={**big.meta, "deleted_rows": sorted(rows)})


def quotient_ar(n: int, p: int) -> TranslationQuiver:
    sel = band_selection(n, p)
    return delete_rows(gamma_t(sel.t), sel.deleted_rows)


def verify_quotient(n: int, p: int) -> dict:
    sel = band_selection(n, p)
    big = gamma_t(sel.t)
    quotient = delete_rows(big, sel.deleted_rows)
    small = build_gamma(ModelParams(n, 1, p))
    iso = find_isomorphism(small, quotient)
    deleted = len(big) - len(quotient)
    return {"n": n, "p": p, "t": sel.t, "passed": iso is not None,
            "deleted_vertices": deleted, "kept_vertices": len(quotient),
            "count_identity": sel.t * (sel.t + 3) // 2 - deleted == p * n * (n + 3) // 2,
            "same_as_band": set(quotient.vertices) == set(band_subquiver(sel, big).vertices),
            "trace": None if iso is not None else refinement_trace(small, quotient)}
