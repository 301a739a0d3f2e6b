"""Finite translation quivers: stability, mesh relations, powers, hammocks
and isomorphism search.

Vertices are arbitrary hashable ids (the models use tuples such as diagonal
triples or cover coordinates).  Arrows form a multiset stored as a tuple of
``(source, target)`` pairs; parallel arrows are repeated entries.  The
translation is a partial injective map.
"""
from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Any, Hashable, Iterable, Mapping

Vertex = Hashable
Arrow = tuple  # (source, target)


class QuiverError(ValueError):
    pass


def _freeze(mapping) -> Mapping:
    return MappingProxyType(dict(mapping or {}))


@dataclass(frozen=True, eq=False)
class TranslationQuiver:
    vertices: tuple
    arrows: tuple
    translation: Mapping = field(default_factory=dict)
    labels: Mapping = field(default_factory=dict)
    arrow_kinds: Mapping = field(default_factory=dict)
    meta: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(tuple(a) for a in self.arrows))
        for name in ("translation", "labels", "arrow_kinds", "meta"):
            object.__setattr__(self, name, _freeze(getattr(self, name)))
        vs = self.vertex_set
        if len(vs) != len(self.vertices):
            raise QuiverError("duplicate vertex ids")
        for a in self.arrows:
            if len(a) != 2 or a[0] not in vs or a[1] not in vs:
                raise QuiverError(f"arrow {a!r} has an undeclared endpoint")
        images = set()
        for v, tv in self.translation.items():
            if v not in vs or tv not in vs:
                raise QuiverError(f"translation {v!r} -> {tv!r} leaves the vertex set")
            if tv in images:
                raise QuiverError(f"translation is not injective at {tv!r}")
            images.add(tv)

    @cached_property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    @cached_property
    def multiplicity(self) -> Counter:
        return Counter(self.arrows)

    @cached_property
    def successors(self) -> dict:
        out = {v: [] for v in self.vertices}
        for s, t in self.arrows:
            out[s].append(t)
        return {v: tuple(ts) for v, ts in out.items()}

    @cached_property
    def predecessors(self) -> dict:
        inc = {v: [] for v in self.vertices}
        for s, t in self.arrows:
            inc[t].append(s)
        return {v: tuple(ss) for v, ss in inc.items()}

    @cached_property
    def inverse_translation(self) -> Mapping:
        return _freeze({tv: v for v, tv in self.translation.items()})

    def tau(self, v):
        return self.translation.get(v)

    def tau_inverse(self, v):
        return self.inverse_translation.get(v)

    def arrow_count(self, u, v) -> int:
        return self.multiplicity.get((u, v), 0)

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        return (f"TranslationQuiver({len(self.vertices)} vertices, "
                f"{len(self.arrows)} arrows, {len(self.translation)} translations)")


def induced_subquiver(q: TranslationQuiver, keep: Iterable, meta=None) -> TranslationQuiver:
    """Full subquiver on ``keep``; the translation is restricted to pairs inside it."""
    keep = set(keep)
    vertices = [v for v in q.vertices if v in keep]
    arrows = [a for a in q.arrows if a[0] in keep and a[1] in keep]
    translation = {v: tv for v, tv in q.translation.items() if v in keep and tv in keep}
    return TranslationQuiver(
        vertices, arrows, translation,
        labels={v: q.labels[v] for v in vertices if v in q.labels},
        arrow_kinds={a: k for a, k in q.arrow_kinds.items() if a[0] in keep and a[1] in keep},
        meta=q.meta if meta is None else meta,
    )


def weak_components(q: TranslationQuiver) -> list:
    """Vertex sets of the connected components of arrows plus translation edges."""
    adj = {v: set() for v in q.vertices}
    for s, t in q.arrows:
        adj[s].add(t)
        adj[t].add(s)
    for v, tv in q.translation.items():
        adj[v].add(tv)
        adj[tv].add(v)
    seen, comps = set(), []
    for v in q.vertices:
        if v in seen:
            continue
        comp, todo = [], [v]
        seen.add(v)
        while todo:
            x = todo.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        order = {x: i for i, x in enumerate(q.vertices)}
        comps.append(sorted(comp, key=order.__getitem__))
    return comps


def components(q: TranslationQuiver) -> list:
    return [induced_subquiver(q, c) for c in weak_components(q)]


# ---------------------------------------------------------------- stability

@dataclass
class StabilityReport:
    passed: bool
    translation_total: bool
    translation_bijective: bool
    missing_translation: list
    violations: list  # (u, v, #arrows(u->v), #arrows(tau v -> u))

    def to_dict(self):
        return {
            "passed": self.passed,
            "translation_total": self.translation_total,
            "translation_bijective": self.translation_bijective,
            "missing_translation": [to_jsonable(v) for v in self.missing_translation],
            "violations": [
                {"pair": [to_jsonable(u), to_jsonable(v)], "arrows": a, "mesh_partner": b}
                for u, v, a, b in self.violations
            ],
        }


def verify_stable(q: TranslationQuiver, vertices: Iterable | None = None) -> StabilityReport:
    """Check that ``q`` is a stable translation quiver.

    Every arrow slot ``u -> v`` that carries arrows is compared with its mesh
    partner ``tau v -> u``.  On a finite quiver with bijective translation this
    covers empty slots too, since the slot pairing has finite orbits.

    ``vertices`` restricts the check to a subset (truncated windows): the
    translation must be defined and invertible there, and only slots ending in
    the subset are compared.
    """
    scope = q.vertex_set if vertices is None else frozenset(vertices)
    missing = [v for v in q.vertices if v in scope and v not in q.translation]
    no_preimage = [v for v in q.vertices if v in scope and v not in q.inverse_translation]
    total = not missing
    bijective = total and not no_preimage
    violations = []
    for (u, v), count in sorted(q.multiplicity.items(), key=lambda kv: (repr(kv[0]))):
        if v not in scope or v not in q.translation:
            continue
        partner = q.arrow_count(q.translation[v], u)
        if partner != count:
            violations.append((u, v, count, partner))
    return StabilityReport(
        passed=bijective and not violations,
        translation_total=total,
        translation_bijective=bijective,
        missing_translation=missing,
        violations=violations,
    )


@dataclass(frozen=True)
class MeshRelation:
    """Relation at ``target``: sum over arrows ``alpha: u -> target`` of
    ``alpha . sigma(alpha)`` where ``sigma(alpha): source -> u``.

    ``terms`` holds pairs of arrow indices into ``q.arrows``:
    ``(index of sigma(alpha), index of alpha)``.
    """
    target: Any
    source: Any
    terms: tuple


def mesh_relations(q: TranslationQuiver) -> list:
    report = verify_stable(q, vertices=q.translation.keys())
    if report.violations:
        raise QuiverError(f"mesh mismatch at {report.violations[0][:2]!r}")
    by_slot: dict = {}
    for idx, a in enumerate(q.arrows):
        by_slot.setdefault(a, []).append(idx)
    relations = []
    for v in q.vertices:
        tv = q.translation.get(v)
        if tv is None:
            continue
        terms = []
        # parallel arrows are paired in stored order
        for u in dict.fromkeys(q.predecessors[v]):
            for a_idx, s_idx in zip(by_slot[(u, v)], by_slot[(tv, u)]):
                terms.append((s_idx, a_idx))
        if terms:
            relations.append(MeshRelation(v, tv, tuple(terms)))
    return relations


# -------------------------------------------------------------------- power

def power(q: TranslationQuiver, m: int) -> TranslationQuiver:
    """Quiver on the same vertices whose arrows are the length-``m`` paths
    ``x0 -> ... -> xm`` with ``tau x_{i+1} != x_{i-1}`` whenever defined."""
    if m < 1:
        raise ValueError("power exponent must be >= 1")
    if m == 1:
        return q
    arrows = []
    for x in q.vertices:
        stack = [(x,)]
        while stack:
            path = stack.pop()
            if len(path) == m + 1:
                arrows.append((path[0], path[-1]))
                continue
            for y in q.successors[path[-1]]:
                if len(path) >= 2:
                    ty = q.translation.get(y)
                    if ty is not None and ty == path[-2]:
                        continue
                stack.append(path + (y,))
    pos = {v: i for i, v in enumerate(q.vertices)}
    arrows.sort(key=lambda a: (pos[a[0]], pos[a[1]]))
    translation = {}
    for v in q.vertices:
        w = v
        for _ in range(m):
            w = q.translation.get(w)
            if w is None:
                break
        if w is not None:
            translation[v] = w
    meta = dict(q.meta)
    meta["power"] = meta.get("power", 1) * m
    return TranslationQuiver(q.vertices, arrows, translation, labels=q.labels, meta=meta)


# ------------------------------------------------------------------ hammocks

def hammock(q: TranslationQuiver, x, max_depth: int | None = None) -> dict:
    """Dimensions ``dim Hom(x, -)`` in the mesh category of ``q``.

    Knitting runs on the depth-graded unrolling of ``q`` (arrows raise the
    depth by one, the translation lowers it by two), which is the universal
    cover for the quivers handled here, so cyclic orbit quivers are knitted
    like their covers.  The values at all lifts of a vertex are summed.
    """
    if x not in q.vertex_set:
        raise KeyError(x)
    if max_depth is None:
        max_depth = 4 * len(q.vertices) + 8
    total = Counter({x: 1})
    prev2: dict = {}
    prev1: dict = {x: 1}
    depth = 0
    while prev1 or prev2:
        depth += 1
        if depth > max_depth:
            raise QuiverError("hammock did not terminate; quiver is not of finite type")
        cur = {}
        candidates = {t for u in prev1 for t in q.successors[u]}
        for v in candidates:
            s = sum(prev1.get(u, 0) for u in q.predecessors[v])
            tv = q.translation.get(v)
            if tv is not None:
                s -= prev2.get(tv, 0)
            if s > 0:
                cur[v] = s
        for v, val in cur.items():
            total[v] += val
        prev2, prev1 = prev1, cur
    return dict(total)


def hammock_hom(q: TranslationQuiver, x, y) -> int:
    return hammock(q, x).get(y, 0)


# -------------------------------------------------------------- isomorphism

@dataclass
class QuiverIsomorphism:
    vertex_map: dict
    respects_translation: bool

    def check(self, q1: TranslationQuiver, q2: TranslationQuiver) -> bool:
        f = self.vertex_map
        if set(f) != q1.vertex_set or set(f.values()) != q2.vertex_set:
            return False
        if len(set(f.values())) != len(f):
            return False
        if Counter((f[s], f[t]) for s, t in q1.arrows) != q2.multiplicity:
            return False
        if self.respects_translation:
            mapped = {f[v]: f[tv] for v, tv in q1.translation.items()}
            if mapped != dict(q2.translation):
                return False
        return True

    def inverse(self) -> "QuiverIsomorphism":
        return QuiverIsomorphism({b: a for a, b in self.vertex_map.items()},
                                 self.respects_translation)

    def compose(self, other: "QuiverIsomorphism") -> "QuiverIsomorphism":
        """``other`` after ``self``."""
        return QuiverIsomorphism(
            {a: other.vertex_map[b] for a, b in self.vertex_map.items()},
            self.respects_translation and other.respects_translation,
        )


def _orbit_signature(q: TranslationQuiver, v):
    # cycle length, or (steps back, steps forward) along a finite chain
    w, steps = q.translation.get(v), 1
    while w is not None and w != v:
        w = q.translation.get(w)
        steps += 1
        if steps > len(q.vertices):
            break
    if w == v:
        return ("cycle", steps)
    back = 0
    w = v
    while w in q.translation:
        w = q.translation[w]
        back += 1
    fwd = 0
    w = v
    while w in q.inverse_translation:
        w = q.inverse_translation[w]
        fwd += 1
    return ("chain", back, fwd)


def _refine(quivers, respect_translation):
    """Joint colour refinement so colours are comparable across quivers."""
    colours = []
    for q in quivers:
        c = {}
        for v in q.vertices:
            base = (len(q.predecessors[v]), len(q.successors[v]),
                    q.multiplicity.get((v, v), 0))
            if respect_translation:
                base += (_orbit_signature(q, v),)
            c[v] = base
        colours.append(c)
    palette = {}
    colours = [{v: palette.setdefault(col, len(palette)) for v, col in c.items()}
               for c in colours]
    n_classes = len(palette)
    while True:
        palette = {}
        new = []
        for q, c in zip(quivers, colours):
            nc = {}
            for v in q.vertices:
                sig = (c[v],
                       tuple(sorted(c[t] for t in q.successors[v])),
                       tuple(sorted(c[s] for s in q.predecessors[v])))
                if respect_translation:
                    tv, uv = q.translation.get(v), q.inverse_translation.get(v)
                    sig += (None if tv is None else c[tv], None if uv is None else c[uv])
                nc[v] = palette.setdefault(sig, len(palette))
            new.append(nc)
        colours = new
        if len(palette) == n_classes:
            return colours
        n_classes = len(palette)


def find_isomorphism(q1: TranslationQuiver, q2: TranslationQuiver,
                     respect_translation: bool = True) -> QuiverIsomorphism | None:
    """Exact isomorphism search; returns a witness or ``None``.

    Colour refinement on (in-degree, out-degree, translation-orbit shape) and
    neighbour colours prunes the candidates, then a backtracking search in
    breadth-first order extends partial maps one neighbour at a time.
    """
    if len(q1.vertices) != len(q2.vertices) or len(q1.arrows) != len(q2.arrows):
        return None
    if respect_translation and len(q1.translation) != len(q2.translation):
        return None
    c1, c2 = _refine((q1, q2), respect_translation)
    if Counter(c1.values()) != Counter(c2.values()):
        return None

    def neighbours(q, v):
        nb = set(q.successors[v]) | set(q.predecessors[v])
        if respect_translation:
            for w in (q.translation.get(v), q.inverse_translation.get(v)):
                if w is not None:
                    nb.add(w)
        nb.discard(v)
        return nb

    class_size = Counter(c1.values())
    pos1 = {v: i for i, v in enumerate(q1.vertices)}
    order, seen = [], set()
    for start in sorted(q1.vertices, key=lambda v: (class_size[c1[v]], pos1[v])):
        if start in seen:
            continue
        seen.add(start)
        queue = deque([start])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in sorted(neighbours(q1, v), key=pos1.__getitem__):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    position = {v: i for i, v in enumerate(order)}
    by_colour: dict = {}
    for v in q2.vertices:
        by_colour.setdefault(c2[v], []).append(v)

    f: dict = {}
    used: set = set()

    def consistent(v, x):
        if q1.arrow_count(v, v) != q2.arrow_count(x, x):
            return False
        for w in neighbours(q1, v):
            if w not in f:
                continue
            y = f[w]
            if q1.arrow_count(v, w) != q2.arrow_count(x, y):
                return False
            if q1.arrow_count(w, v) != q2.arrow_count(y, x):
                return False
            if respect_translation:
                if (q1.translation.get(v) == w) != (q2.translation.get(x) == y):
                    return False
                if (q1.translation.get(w) == v) != (q2.translation.get(y) == x):
                    return False
        # mapped vertices that are not neighbours of v must not be neighbours of x
        for y in neighbours(q2, x):
            if y in used and f_inv[y] not in neighbours(q1, v):
                return False
        return True

    f_inv: dict = {}

    def candidates(v):
        anchor = next((w for w in neighbours(q1, v) if w in f and position[w] < position[v]), None)
        pool = by_colour.get(c1[v], ())
        if anchor is None:
            return [x for x in pool if x not in used]
        near = neighbours(q2, f[anchor])
        return [x for x in pool if x in near and x not in used]

    def extend(i):
        if i == len(order):
            return True
        v = order[i]
        for x in candidates(v):
            if consistent(v, x):
                f[v] = x
                f_inv[x] = v
                used.add(x)
                if extend(i + 1):
                    return True
                del f[v]
                del f_inv[x]
                used.discard(x)
        return False

    import sys
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * len(order) + 100))
    try:
        found = extend(0)
    finally:
        sys.setrecursionlimit(limit)
    if not found:
        return None
    iso = QuiverIsomorphism(dict(f), respect_translation)
    if not iso.check(q1, q2):
        raise QuiverError("internal: isomorphism search produced an invalid map")
    return iso


def refinement_trace(q1: TranslationQuiver, q2: TranslationQuiver,
                     respect_translation: bool = True) -> dict:
    """Sizes of the stable colour classes on both sides, for defect reports
    when no isomorphism exists."""
    c1, c2 = _refine((q1, q2), respect_translation)
    n1, n2 = Counter(c1.values()), Counter(c2.values())
    return {
        "vertices": [len(q1.vertices), len(q2.vertices)],
        "arrows": [len(q1.arrows), len(q2.arrows)],
        "classes": [len(n1), len(n2)],
        "mismatched_classes": sorted(c for c in set(n1) | set(n2) if n1[c] != n2[c]),
    }


# ------------------------------------------------------------ serialisation

def to_jsonable(v):
    if isinstance(v, tuple):
        return [to_jsonable(x) for x in v]
    return v


def from_jsonable(v):
    if isinstance(v, list):
        return tuple(from_jsonable(x) for x in v)
    return v


def to_json(q: TranslationQuiver) -> dict:
    out = {
        "vertices": [{"id": to_jsonable(v), "label": to_jsonable(q.labels.get(v))}
                     for v in q.vertices],
        "arrows": [[to_jsonable(s), to_jsonable(t)] for s, t in q.arrows],
        "translation": [[to_jsonable(v), to_jsonable(tv)] for v, tv in q.translation.items()],
    }
    if q.arrow_kinds:
        out["arrow_kinds"] = [[to_jsonable(s), to_jsonable(t), k]
                              for (s, t), k in q.arrow_kinds.items()]
    if q.meta:
        out["meta"] = {k: to_jsonable(v) for k, v in q.meta.items()}
    return out


def from_json(data: dict | str) -> TranslationQuiver:
    if isinstance(data, str):
        data = json.loads(data)
    vertices = [from_jsonable(d["id"]) for d in data["vertices"]]
    labels = {from_jsonable(d["id"]): from_jsonable(d.get("label"))
              for d in data["vertices"] if d.get("label") is not None}
    return TranslationQuiver(
        vertices,
        [(from_jsonable(s), from_jsonable(t)) for s, t in data["arrows"]],
        {from_jsonable(v): from_jsonable(tv) for v, tv in data["translation"]},
        labels=labels,
        arrow_kinds={(from_jsonable(s), from_jsonable(t)): k
                     for s, t, k in data.get("arrow_kinds", [])},
        meta={k: from_jsonable(v) for k, v in data.get("meta", {}).items()},
    )


def _dot_id(v) -> str:
    text = json.dumps(to_jsonable(v), separators=(",", ":"))
    return '"' + text.replace('"', '\\"') + '"'


def to_dot(q: TranslationQuiver, name: str = "quiver", clusters: Mapping | None = None) -> str:
    """Graphviz text: solid arrows carrying a ``kind`` attribute, dashed
    back-edges ``v -> tau v`` for the translation.  ``clusters`` maps vertices
    to a cluster key (regions of a window, say)."""
    lines = [f"digraph {name} {{", "  node [shape=plaintext];"]

    def node_line(v):
        label = q.labels.get(v, v)
        text = label if isinstance(label, str) else json.dumps(to_jsonable(label))
        return f'{_dot_id(v)} [label="{text.replace(chr(34), "")}"];'

    if clusters:
        groups: dict = {}
        for v in q.vertices:
            groups.setdefault(clusters[v], []).append(v)
        for key, members in groups.items():
            lines.append(f'  subgraph "cluster_{key}" {{')
            lines.append(f'    label="{key}";')
            lines.extend("    " + node_line(v) for v in members)
            lines.append("  }")
    else:
        lines.extend("  " + node_line(v) for v in q.vertices)
    for s, t in q.arrows:
        kind = q.arrow_kinds.get((s, t), "arrow").lower()
        lines.append(f"  {_dot_id(s)} -> {_dot_id(t)} [style=solid, kind={kind}];")
    for v, tv in q.translation.items():
        lines.append(f"  {_dot_id(v)} -> {_dot_id(tv)} [style=dashed, constraint=false, kind=tau];")
    lines.append("}")
    return "\n".join(lines) + "\n"
