"""Invariant suites behind ``repcluster check``.

Each suite returns ``{"suite", "passed", "items"}``; every item carries its
parameters, a pass flag and, on failure, a witness small enough to rerun in
isolation.  Nothing here reads the clock, so reports are reproducible.
"""
from __future__ import annotations

import itertools

from .cover import ext1_crossing, fundamental_bijection, orbit_ext, orbit_hom
from .derived import (WindowParams, fractional_cy_check, module_quiver,
                      parity_models_isomorphic, power_decomposition,
                      region_to_module_quiver, serre_window_check, tau2,
                      varrho_action, verify_derived_iso)
from .embedding import embed, verify_quotient
from .orbit_model import build_gamma
from .polygon import ModelParams, enumerate_diagonals, is_m_diagonal
from .quiver import find_isomorphism, hammock, verify_stable
from .tilting import (enumerate_angulations, fuss_catalan, tilting_objects,
                      verify_tilting_bruteforce)

GRID = {"n": range(1, 7), "m": range(1, 4), "p": range(1, 5)}
EXT_GRID = {"n": range(1, 5), "m": (1,), "p": range(1, 5)}
HOM_GRID = {"n": range(1, 5), "m": range(1, 3), "p": range(1, 4)}
TILTING_SETS = [(3, 1, 2), (2, 1, 3), (2, 2, 2), (1, 2, 3), (1, 2, 1), (3, 1, 3)]
EMBEDDING_SETS = [(2, 3), (2, 4), (3, 3), (3, 4)]
DERIVED_RANKS = range(1, 5)
POWER_NS = (1, 2, 3)

SUITES = ("stability", "ext-consistency", "tilting", "embedding", "derived", "power", "all")


def _grid(axes):
    return [ModelParams(n, m, p) for n, m, p in itertools.product(axes["n"], axes["m"], axes["p"])]


def _suite(name, items):
    return {"suite": name, "passed": all(i["passed"] for i in items), "items": items}


def brute_force_diagonal_count(params: ModelParams) -> int:
    """Every pair of region vertices, filtered only by the two-sided count."""
    N = params.N
    per_region = sum(1 for i in range(1, N + 1) for j in range(i + 2, N + 1)
                     if (i, j) != (1, N) and is_m_diagonal(i, j, params))
    return params.p * per_region


def stability_item(params: ModelParams) -> dict:
    q = build_gamma(params)
    report = verify_stable(q)
    expected = params.vertex_count
    brute = brute_force_diagonal_count(params)
    bijection = fundamental_bijection(params).validate()
    item = {"params": params.to_dict(), "vertices": len(q.vertices), "expected": expected,
            "brute_force": brute, "stable": report.passed, "cover_bijection": bijection}
    item["passed"] = report.passed and len(q.vertices) == expected == brute and bijection
    if not report.passed:
        item["witness"] = report.to_dict()
    return item


def stability_suite(params_list=None) -> dict:
    return _suite("stability", [stability_item(P) for P in params_list or _grid(GRID)])


def ext_item(params: ModelParams) -> dict:
    ds = enumerate_diagonals(params)
    bad = None
    for x, y in itertools.product(ds, ds):
        a, b = ext1_crossing(x, y, params), orbit_ext(x, y, 1, params)
        if a != b:
            bad = {"x": list(x), "y": list(y), "crossing": a, "cover": b}
            break
    item = {"check": "ext1", "params": params.to_dict(), "pairs": len(ds) ** 2,
            "passed": bad is None}
    if bad:
        item["witness"] = bad
    return item


def hom_item(params: ModelParams) -> dict:
    q = build_gamma(params)
    bad = None
    for x in q.vertices:
        h = hammock(q, x)
        for y in q.vertices:
            a, b = h.get(y, 0), orbit_hom(x, y, params)
            if a != b:
                bad = {"x": list(x), "y": list(y), "hammock": a, "cover": b}
                break
        if bad:
            break
    item = {"check": "hom", "params": params.to_dict(), "pairs": len(q.vertices) ** 2,
            "passed": bad is None}
    if bad:
        item["witness"] = bad
    return item


def ext_consistency_suite(params: ModelParams | None = None) -> dict:
    if params is not None:
        items = ([ext_item(params)] if params.m == 1 else []) + [hom_item(params)]
    else:
        items = [ext_item(P) for P in _grid(EXT_GRID)] + [hom_item(P) for P in _grid(HOM_GRID)]
    return _suite("ext-consistency", items)


def tilting_item(params: ModelParams) -> dict:
    report = verify_tilting_bruteforce(params)
    objects = tilting_objects(params)
    angulations = len(enumerate_angulations(params))
    sizes = sorted({len(t) for t in objects})
    item = report.to_dict()
    item["angulations"] = angulations
    item["fuss_catalan"] = fuss_catalan(params.n, params.m)
    item["summand_counts"] = sizes
    item["passed"] = (report.passed and angulations == item["fuss_catalan"] == len(objects)
                      and sizes == [params.p * params.n])
    return item


def tilting_suite(params: ModelParams | None = None) -> dict:
    sets = [params] if params is not None else [ModelParams(*t) for t in TILTING_SETS]
    return _suite("tilting", [tilting_item(P) for P in sets])


def embedding_item(n: int, p: int) -> dict:
    e = embed(n, p)
    q = verify_quotient(n, p)
    item = {"n": n, "p": p, "t": e.selection.t, "rows": list(e.selection.rows),
            "band_vertices": e.band_vertices, "gluing": e.gluing["passed"],
            "quotient": q}
    item["passed"] = bool(e.gluing["passed"] and q["passed"] and q["count_identity"]
                          and q["same_as_band"])
    item["witness_map"] = e.to_dict()["vertex_map"]
    return item


def embedding_suite(n: int | None = None, p: int | None = None) -> dict:
    sets = [(n, p)] if n is not None and p is not None else EMBEDDING_SETS
    return _suite("embedding", [embedding_item(a, b) for a, b in sets])


def derived_item(rank: int, half_width: int = 2) -> dict:
    w = WindowParams(rank, half_width)
    iso = verify_derived_iso(w)
    cy = fractional_cy_check(w)
    serre = serre_window_check(w)
    # a shift that is off by one translation must be caught
    perturbed = serre_window_check(
        w, shift=lambda d: tau2(d, w) and varrho_action(tau2(d, w), w))
    sub, labels = region_to_module_quiver(w, 0)
    module_iso = find_isomorphism(sub, module_quiver(rank)) is not None
    roots = {(a, b) for a in range(1, rank + 1) for b in range(a, rank + 1)}
    labels_ok = (set(labels.values()) == roots and len(labels) == len(roots)
                 and all((v[1] - v[0]) // 2 == b - a + 1 for v, (a, b) in labels.items()))
    parity = parity_models_isomorphic(rank, half_width)
    item = {"rank": rank, "half_width": half_width, "window": iso,
            "fractional_cy": cy, "serre": serre,
            "perturbed_shift_rejected": not perturbed["passed"],
            "module_quiver_isomorphic": module_iso, "root_labels": labels_ok,
            "region_vertices": len(sub.vertices), "odd_model_isomorphic": parity}
    item["passed"] = (iso["passed"] and cy["passed"] and serre["passed"]
                      and not perturbed["passed"] and module_iso and labels_ok and parity
                      and len(sub.vertices) == w.per_region)
    return item


def derived_suite(rank: int | None = None, half_width: int = 2) -> dict:
    ranks = [rank] if rank is not None else list(DERIVED_RANKS)
    items = [derived_item(r, half_width) for r in ranks]
    if rank is None:
        # region counts and module quivers up to rank 6
        for r in range(5, 7):
            w = WindowParams(r, 1)
            sub, _ = region_to_module_quiver(w, 0)
            ok = (len(sub.vertices) == w.per_region
                  and find_isomorphism(sub, module_quiver(r)) is not None)
            items.append({"rank": r, "check": "region", "passed": ok})
    return _suite("derived", items)


def power_suite(n: int | None = None) -> dict:
    items = [power_decomposition(k) for k in ([n] if n is not None else POWER_NS)]
    return _suite("power", items)


def run_suite(name: str, n=None, m=None, p=None) -> dict:
    """``n``, ``m``, ``p`` narrow a suite to one parameter set; when all are
    omitted the default grid of the suite runs."""
    given = n is not None
    params = ModelParams(n, m or 1, p or 1) if given else None
    if name == "stability":
        return stability_suite([params] if given else None)
    if name == "ext-consistency":
        return ext_consistency_suite(params)
    if name == "tilting":
        return tilting_suite(params)
    if name == "embedding":
        return embedding_suite(n, p) if given else embedding_suite()
    if name == "derived":
        # the window models type A_{n+1}; p is the half-width
        return derived_suite(n + 1 if given else None, p or 2)
    if name == "power":
        return power_suite(n)
    if name == "all":
        parts = [run_suite(s, n, m, p) for s in SUITES[:-1]
                 if not (given and s == "embedding" and (p or 1) <= 2)]
        return {"suite": "all", "passed": all(s["passed"] for s in parts), "suites": parts}
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")

