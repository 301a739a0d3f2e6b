import itertools

import pytest
from hypothesis import given, settings, strategies as st

from repcluster.cover import (CoverVertex, FunctorAction, FunctorKind, cover_window, depth,
                              ext1_crossing, ext_table, fundamental_bijection,
                              generator_depth_shift, hom_dim_derived, hom_table,
                              orbit_ext, orbit_generator_action, orbit_hom, orbit_quiver,
                              quotient_by_shift, serre_action, shift_action, tau_action)
from repcluster.orbit_model import build_gamma
from repcluster.pathspace import pathspace_homs
from repcluster.polygon import Diagonal, ModelParams, enumerate_diagonals
from repcluster.quiver import find_isomorphism, verify_stable

V = CoverVertex
D = Diagonal
cover_vertex = st.builds(lambda c, r: (c, r), st.integers(-20, 20), st.integers(1, 8))


def closed_form_hom(x, y, n):
    """Type A: write (c, r) as the arc (c, c + r + 1); a morphism exists iff
    the target arc starts and ends inside the right intervals."""
    a, b = x[0], x[0] + x[1] + 1
    a2, b2 = y[0], y[0] + y[1] + 1
    return int(a <= a2 <= b - 2 and b <= b2 <= a + n + 1)


def test_small_examples():
    assert hom_dim_derived(V(0, 2), V(0, 2), 3) == 1
    assert hom_dim_derived(V(0, 1), V(0, 3), 3) == 1
    assert hom_dim_derived(V(0, 3), V(0, 1), 3) == 0
    assert shift_action(V(0, 2), 0, 3) == V(0, 2)
    assert shift_action(V(0, 1), 1, 3) == V(1, 3)


def test_serre_functor_powers():
    n = 3
    for v in [V(0, 1), V(2, 3), V(-1, 2)]:
        nu4 = v
        for _ in range(n + 1):
            nu4 = serre_action(nu4, 1, n)
        assert nu4 == V(v.column + 4, v.row) == shift_action(v, 2, n)
        assert nu4 == shift_action(v, n - 1, n)


@pytest.mark.parametrize("n", range(1, 7))
def test_hom_matches_closed_form(n):
    for r in range(1, n + 1):
        x = V(0, r)
        for c in range(-n - 2, n + 3):
            for r2 in range(1, n + 1):
                assert hom_dim_derived(x, V(c, r2), n) == closed_form_hom(x, V(c, r2), n)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_hom_matches_path_space_on_a_window(n):
    window = cover_window(n, -1, 2 * n + 2)
    for r in range(1, n + 1):
        homs = pathspace_homs(window, V(0, r))
        for y in window.vertices:
            if y.column <= n:
                assert homs.get(y, 0) == hom_dim_derived(V(0, r), y, n)


@settings(max_examples=60, deadline=None)
@given(cover_vertex, cover_vertex, st.integers(1, 8))
def test_serre_duality(x, y, n):
    x, y = V(x[0], min(x[1], n)), V(y[0], min(y[1], n))
    assert hom_dim_derived(x, y, n) == hom_dim_derived(y, serre_action(x, 1, n), n)


@settings(max_examples=60, deadline=None)
@given(cover_vertex, st.integers(-6, 6), st.integers(-6, 6), st.integers(1, 8))
def test_shift_is_a_group_action(v, i, j, n):
    v = V(v[0], min(v[1], n))
    assert shift_action(shift_action(v, i, n), j, n) == shift_action(v, i + j, n)
    assert shift_action(v, 2, n) == tau_action(v, -(n + 1))
    assert depth(shift_action(v, 1, n)) == depth(v) + n + 1


def test_functor_actions():
    P = ModelParams(3, 2, 2)
    v = V(1, 2)
    assert FunctorAction(FunctorKind.TAU, 2).apply(v, P) == V(-1, 2)
    assert FunctorAction(FunctorKind.SHIFT, 1).apply(v, P) == V(3, 2)
    assert FunctorAction(FunctorKind.SERRE, 1).apply(v, P) == V(2, 2)
    g = FunctorAction(FunctorKind.ORBIT_GENERATOR, 1).apply(v, P)
    assert depth(g) - depth(v) == generator_depth_shift(P) == 2 * 2 + 2 * 2 * 4


@pytest.mark.parametrize("n,m,p", list(itertools.product(range(1, 5), range(1, 4), range(1, 4))))
def test_orbit_quiver_matches_diagonal_model(n, m, p):
    P = ModelParams(n, m, p)
    orbit = orbit_quiver(P)
    assert len(orbit.vertices) == P.vertex_count
    assert verify_stable(orbit).passed
    bij = fundamental_bijection(P)
    assert bij.validate()
    assert bij.lift[D(1, m + 2, 1)] == V(0, 1)


@pytest.mark.parametrize("n,m,p", [(3, 1, 3), (2, 2, 2), (1, 3, 4), (4, 1, 2)])
def test_projection_is_equivariant(n, m, p):
    P = ModelParams(n, m, p)
    bij = fundamental_bijection(P)
    g = bij.gamma
    for c in range(-6, 7):
        for r in range(1, n + 1):
            v = V(c, r)
            assert bij.project(orbit_generator_action(v, P)) == bij.project(v)
            assert bij.project(tau_action(v)) == g.tau(bij.project(v))


def test_shift_quotient():
    for n in range(1, 6):
        q = quotient_by_shift(n)
        assert len(q.vertices) == n * (n + 1) // 2
        assert verify_stable(q).passed
    # cluster category of type A_n is ZA_n modulo tau^-1 [1]
    assert find_isomorphism(orbit_quiver(ModelParams(3)), build_gamma(ModelParams(3))) is not None


def test_orbit_hom_examples():
    P = ModelParams(3, 1, 1)
    for d in enumerate_diagonals(P):
        assert orbit_hom(d, d, P) == 1
    P = ModelParams(3, 1, 3)
    for x, y in itertools.product(enumerate_diagonals(P)[:9], repeat=2):
        ys = fundamental_bijection(P).lift[y]
        assert orbit_hom(x, orbit_generator_action(ys, P, 2), P) == orbit_hom(x, y, P)


def test_orbit_ext_examples():
    P = ModelParams(3, 1, 3)
    assert orbit_ext(D(2, 4, 1), D(1, 3, 1), 1, P) == 1
    assert orbit_ext(D(1, 3, 1), D(2, 4, 1), 1, P) == 0
    assert orbit_ext(D(1, 3, 2), D(2, 4, 1), 1, P) == 1
    with pytest.raises(ValueError):
        orbit_ext(D(1, 3, 1), D(2, 4, 1), 2, P)


def test_crossing_rule_examples():
    P3, P1 = ModelParams(3, 1, 3), ModelParams(3, 1, 1)
    assert ext1_crossing(D(2, 4, 1), D(1, 3, 1), P3) == 1
    assert ext1_crossing(D(1, 3, 1), D(2, 4, 1), P3) == 0
    assert ext1_crossing(D(2, 4, 1), D(1, 3, 1), P1) == 1
    assert ext1_crossing(D(1, 3, 1), D(2, 4, 1), P1) == 1
    with pytest.raises(ValueError):
        ext1_crossing(D(1, 4, 1), D(2, 5, 1), ModelParams(1, 2, 1))


@pytest.mark.parametrize("n,p", [(2, 2), (3, 3), (3, 4)])
def test_crossing_rule_matches_cover(n, p):
    P = ModelParams(n, 1, p)
    ds = enumerate_diagonals(P)
    for x, y in itertools.product(ds, ds):
        assert ext1_crossing(x, y, P) == orbit_ext(x, y, 1, P)


@pytest.mark.parametrize("n,m,p", [(2, 2, 1), (1, 3, 2), (2, 2, 2)])
def test_higher_ext_is_serre_dual(n, m, p):
    # with p = 1 the orbit category is (m+1)-Calabi-Yau
    P = ModelParams(n, m, p)
    table = ext_table(P, m)
    assert len(table["keys"]) == P.vertex_count
    if p == 1:
        ds = enumerate_diagonals(P)
        for x, y in itertools.product(ds, ds):
            for i in range(1, m + 1):
                assert orbit_ext(x, y, i, P) == orbit_ext(y, x, m + 1 - i, P)


def test_tables():
    P = ModelParams(2, 1, 2)
    cover = hom_table(P)
    knit = hom_table(P, "hammock")
    assert cover["matrix"] == knit["matrix"]
    assert ext_table(P, 1)["matrix"] == ext_table(P, 1, "crossing")["matrix"]
    with pytest.raises(ValueError):
        hom_table(P, "bogus")
