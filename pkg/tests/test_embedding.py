import pytest

from repcluster.embedding import (BandSelection, EmbeddingError, band_selection, band_subquiver,
                                  delete_rows, embed, gamma_t, gluing_check, quotient_ar,
                                  row, t_value, verify_quotient)
from repcluster.orbit_model import build_gamma
from repcluster.polygon import ModelParams
from repcluster.quiver import find_isomorphism


def test_t_values():
    assert t_value(2, 4) == 7
    assert t_value(2, 3) == 12
    assert t_value(3, 3) == 15
    assert t_value(3, 4) == 9


@pytest.mark.parametrize("p", [0, 1, 2])
def test_small_p_refused(p):
    with pytest.raises(ValueError, match="overlap"):
        t_value(2, p)


def test_band_examples():
    sel = band_selection(2, 4)
    assert sel.rows == (1, 2, 6, 7) and sel.parity_case == "even"
    assert len(band_subquiver(sel)) == 20
    sel = band_selection(2, 3)
    assert sel.rows == (6, 7) and sel.parity_case == "odd"
    assert len(band_subquiver(sel)) == 15
    assert len(band_subquiver(band_selection(3, 3))) == 27


@pytest.mark.parametrize("n,p", [(2, 3), (2, 4), (3, 3), (3, 4), (1, 3), (1, 4), (4, 5), (2, 6)])
def test_embedding(n, p):
    e = embed(n, p)
    small = build_gamma(ModelParams(n, 1, p))
    assert e.isomorphism.check(small, band_subquiver(e.selection))
    assert e.gluing["passed"] and e.gluing["projects_onto_band"]
    assert e.band_vertices == p * n * (n + 3) // 2


@pytest.mark.parametrize("n,p", [(2, 3), (2, 4), (3, 3), (3, 4)])
def test_quotient(n, p):
    report = verify_quotient(n, p)
    assert report["passed"] and report["count_identity"] and report["same_as_band"]
    q = quotient_ar(n, p)
    assert find_isomorphism(build_gamma(ModelParams(n, 1, p)), q) is not None


def test_quotient_examples():
    sel = band_selection(2, 4)
    assert sel.deleted_rows == (3, 4, 5)
    sel = band_selection(2, 3)
    assert sel.deleted_rows == tuple(range(1, 6)) + tuple(range(8, 13))


def test_even_strips_are_disjoint():
    for n in range(1, 6):
        for p in (4, 6, 8):
            sel = band_selection(n, p)
            assert len(set(sel.rows)) == 2 * n


def test_deleting_nothing_is_a_no_op():
    big = gamma_t(5)
    assert delete_rows(big, []) is big


def test_unstable_deletion_is_refused():
    # the translation carries row r into row t+1-r at the seam, so one row alone is unstable
    with pytest.raises(EmbeddingError):
        delete_rows(gamma_t(4), [1])
    assert len(delete_rows(gamma_t(4), [1, 4])) == len(gamma_t(4)) - 7


def test_shifted_band_is_not_the_model():
    sel = band_selection(2, 3)
    wrong = BandSelection(sel.n, sel.p, sel.t, (5, 6), sel.parity_case)
    band = band_subquiver(wrong)
    assert find_isomorphism(build_gamma(ModelParams(2, 1, 3)), band) is None


def test_shifted_band_fails_the_gluing_check():
    sel = band_selection(3, 3)
    wrong = BandSelection(sel.n, sel.p, sel.t, tuple(r + 1 for r in sel.rows), sel.parity_case)
    assert not gluing_check(wrong)["passed"]
