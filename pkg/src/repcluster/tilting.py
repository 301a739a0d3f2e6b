"""m-angulations of one region, the cluster-tilting objects they generate
under the rotation, a brute-force check against Ext-vanishing, and mutation."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .cover import orbit_ext
from .polygon import Diagonal, ModelParams, crosses, enumerate_diagonals, region_diagonals, rho


def fuss_catalan(n: int, m: int = 1) -> int:
    """Number of m-angulations of an ((n+1)m+2)-gon."""
    return comb((m + 1) * (n + 1), n + 1) // (m * (n + 1) + 1)


@dataclass(frozen=True)
class Angulation:
    diagonals: tuple
    region: int = 1

    def to_json(self):
        return [list(d) for d in self.diagonals]


@dataclass(frozen=True)
class TiltingObject:
    summands: tuple

    def __contains__(self, d) -> bool:
        return d in self.summands

    def __len__(self):
        return len(self.summands)

    def to_json(self):
        return [list(d) for d in self.summands]


def _cell_splits(size: int, m: int):
    """Index tuples ``0 = a_0 < ... < a_{m+1} = size - 1`` with every gap
    congruent to 1 mod m: the vertices of the cell on the base side."""
    def rec(start, left):
        if left == 0:
            if (size - 1 - start) % m == 1 % m:
                yield (size - 1,)
            return
        for nxt in range(start + 1, size - 1):
            if (nxt - start) % m == 1 % m and (size - 1 - nxt) >= left:
                for rest in rec(nxt, left - 1):
                    yield (nxt,) + rest
    for tail in rec(0, m):
        yield (0,) + tail


def _angulate(polygon: tuple, m: int) -> list:
    if len(polygon) == m + 2:
        return [()]
    out = []
    for split in _cell_splits(len(polygon), m):
        parts = [()]
        for a, b in zip(split, split[1:]):
            if b - a < 2:
                continue
            sub = polygon[a:b + 1]
            parts = [p + ((sub[0], sub[-1]),) + q for p in parts for q in _angulate(sub, m)]
        out.extend(parts)
    return out


def _check_angulation(diagonals: list, all_diagonals: list) -> None:
    index = {d: i for i, d in enumerate(all_diagonals)}
    cross_mask = [sum(1 << index[e] for e in all_diagonals if crosses(d, e))
                  for d in all_diagonals]
    mask = sum(1 << index[d] for d in diagonals)
    for d in diagonals:
        if cross_mask[index[d]] & mask:
            raise AssertionError(f"angulation contains crossing diagonals at {d}")
    for e in all_diagonals:
        if e not in diagonals and not cross_mask[index[e]] & mask:
            raise AssertionError(f"angulation is not maximal: {e} can be added")


def enumerate_angulations(params: ModelParams, region: int = 1) -> list:
    """All m-angulations of region ``region``, each checked non-crossing and
    maximal (by trying every absent diagonal) and of size n.

    Every m-angulation has exactly one cell on the side ``(1, N)``; choosing
    that cell and recursing into the pieces it cuts off lists each one once.
    """
    P = params
    all_diagonals = region_diagonals(P, region)
    result = []
    for pairs in _angulate(tuple(range(1, P.N + 1)), P.m):
        ds = sorted(Diagonal(i, j, region) for i, j in pairs)
        _check_angulation(ds, all_diagonals)
        if len(ds) != P.n:
            raise AssertionError(f"angulation of size {len(ds)}, expected {P.n}")
        result.append(Angulation(tuple(ds), region))
    result.sort(key=lambda a: a.diagonals)
    return result


def count_maximal_noncrossing(params: ModelParams) -> int:
    """Unfiltered brute force over subsets of one region's diagonals."""
    ds = region_diagonals(params, 1)
    k = len(ds)
    cross = [sum(1 << b for b in range(k) if crosses(ds[a], ds[b])) for a in range(k)]
    count = 0

    def rec(i, chosen, blocked):
        nonlocal count
        if i == k:
            if all(chosen >> b & 1 or blocked >> b & 1 for b in range(k)):
                count += 1
            return
        if not blocked >> i & 1:
            rec(i + 1, chosen | 1 << i, blocked | cross[i])
        rec(i + 1, chosen, blocked)

    rec(0, 0, 0)
    return count


def orbit_closure(diagonals, params: ModelParams) -> TiltingObject:
    return TiltingObject(tuple(sorted({rho(d, params, t) for d in diagonals
                                       for t in range(params.p)})))


def tilting_objects(params: ModelParams) -> list:
    return [orbit_closure(a.diagonals, params) for a in enumerate_angulations(params, 1)]


# ------------------------------------------------------------ brute force

def _maximal_cliques(adjacency: dict) -> list:
    """Bron-Kerbosch with pivoting; each clique as a frozenset."""
    out = []

    def expand(r, p, x):
        if not p and not x:
            out.append(frozenset(r))
            return
        pivot = max(p | x, key=lambda u: len(adjacency[u] & p))
        for v in sorted(p - adjacency[pivot]):
            expand(r | {v}, p & adjacency[v], x & adjacency[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(adjacency), set())
    return out


@dataclass
class TiltingReport:
    params: dict
    passed: bool
    tilting_count: int
    bruteforce_count: int
    maximal_rigid_count: int
    missing: list = field(default_factory=list)
    extra: list = field(default_factory=list)
    rigid_not_tilting: list = field(default_factory=list)

    def to_dict(self):
        def sets(xs):
            return [[list(d) for d in s] for s in xs]
        return {
            "params": self.params, "passed": self.passed,
            "tilting_count": self.tilting_count, "bruteforce_count": self.bruteforce_count,
            "maximal_rigid_count": self.maximal_rigid_count,
            "missing": sets(self.missing), "extra": sets(self.extra),
            "rigid_not_tilting": sets(self.rigid_not_tilting),
        }


BRUTEFORCE_VERTEX_CAP = 120


def verify_tilting_bruteforce(params: ModelParams, force: bool = False) -> TiltingReport:
    """Cluster-tilting sets found by exhaustive search, compared with
    :func:`tilting_objects`.

    Ext^1..Ext^m come from the cover.  The search lists all maximal rigid
    sets (maximal cliques of the Ext-vanishing graph) and keeps those ``T``
    for which every diagonal outside ``T`` has nonzero Ext with ``T`` in both
    directions.  Once p >= 3 some maximal rigid sets fail that test; they are
    reported in ``rigid_not_tilting`` but do not count as a mismatch.
    ``missing`` holds tilting objects the search did not find, ``extra``
    the cluster-tilting sets that are not tilting objects.
    """
    ds = enumerate_diagonals(params)
    if len(ds) > BRUTEFORCE_VERTEX_CAP and not force:
        raise ValueError(f"{len(ds)} diagonals exceeds the brute-force cap "
                         f"{BRUTEFORCE_VERTEX_CAP}; pass force=True")
    ext = {(x, y): any(orbit_ext(x, y, i, params) for i in range(1, params.m + 1))
           for x in ds for y in ds}
    rigid = [d for d in ds if not ext[d, d]]
    adjacency = {d: set() for d in rigid}
    for a, x in enumerate(rigid):
        for y in rigid[a + 1:]:
            if not ext[x, y] and not ext[y, x]:
                adjacency[x].add(y)
                adjacency[y].add(x)
    cliques = _maximal_cliques(adjacency)

    def tilting(s):
        return all(any(ext[t, x] for t in s) and any(ext[x, t] for t in s)
                   for x in ds if x not in s)

    brute = {c for c in cliques if tilting(c)}
    objects = {frozenset(t.summands) for t in tilting_objects(params)}
    missing = sorted(sorted(s) for s in objects - brute)
    extra = sorted(sorted(s) for s in brute - objects)
    rigid_only = sorted(sorted(c) for c in cliques if c not in brute)
    return TiltingReport(params.to_dict(), not missing and not extra,
                         len(objects), len(brute), len(cliques),
                         missing[:3], extra[:3], rigid_only[:3])


# --------------------------------------------------------------- mutation

def _to_region(d: Diagonal, region: int, params: ModelParams) -> Diagonal:
    return rho(d, params, region - d.k)


def orbit_mutate(t: TiltingObject, d: Diagonal, params: ModelParams) -> TiltingObject:
    """Replace the rotation orbit of ``d`` by the orbit of the next diagonal
    in the cell left behind.

    Removing ``d`` from the angulation of region 1 leaves a (2m+2)-gon cell
    whose m+1 long diagonals are the possible replacements.  ``d`` moves to
    the one obtained by turning it one vertex forward inside that cell, so
    for m = 1 this is the flip and in general it has order m + 1.
    """
    if d not in t:
        raise ValueError(f"{tuple(d)} is not a summand of the tilting object")
    base = _to_region(d, 1, params)
    rest = [e for e in t.summands if e.k == 1 and e != base]
    options = [e for e in region_diagonals(params, 1)
               if e != base and e not in rest and not any(crosses(e, f) for f in rest)]
    cell = sorted({v for e in options + [base] for v in (e.i, e.j)})
    size = 2 * params.m + 2
    if len(cell) != size or len(options) != params.m:
        raise AssertionError(f"unexpected cell {cell} around {tuple(base)}")
    a = cell.index(base.i)
    i, j = cell[(a + 1) % size], cell[(a + params.m + 2) % size]
    new = Diagonal(min(i, j), max(i, j), 1)
    if new not in options:
        raise AssertionError(f"rotated diagonal {tuple(new)} is not a completion")
    return orbit_closure(rest + [new], params)


@dataclass
class MutationGraph:
    nodes: list
    edges: list

    @property
    def connected(self) -> bool:
        if not self.nodes:
            return True
        adj = {i: set() for i in range(len(self.nodes))}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        seen, stack = {0}, [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.nodes)

    def to_dict(self):
        return {"nodes": [t.to_json() for t in self.nodes],
                "edges": [list(e) for e in self.edges], "connected": self.connected}

    def to_dot(self, name: str = "mutation") -> str:
        lines = [f"graph {name} {{"]
        for idx, t in enumerate(self.nodes):
            label = " ".join(f"({d.i},{d.j},{d.k})" for d in t.summands if d.k == 1)
            lines.append(f'  t{idx} [label="{label}"];')
        for a, b in self.edges:
            lines.append(f"  t{a} -- t{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def mutation_graph(params: ModelParams) -> MutationGraph:
    """Tilting objects joined whenever one orbit mutation relates them."""
    nodes = tilting_objects(params)
    index = {frozenset(t.summands): i for i, t in enumerate(nodes)}
    edges = set()
    for a, t in enumerate(nodes):
        for d in t.summands:
            if d.k != 1:
                continue
            b = index[frozenset(orbit_mutate(t, d, params).summands)]
            edges.add((min(a, b), max(a, b)))
    return MutationGraph(nodes, sorted(edges))
