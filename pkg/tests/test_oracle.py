import pytest

from gkaut.core.errors import ScaleTooLarge
from gkaut.models.linmap import MapForm
from gkaut.services.ansatz_oracle import ansatz_exhaustive_oracle


def test_sweep_refuses_large_fields(gk5):
    with pytest.raises(ScaleTooLarge):
        ansatz_exhaustive_oracle(gk5, 0, MapForm.DIAGONAL)


@pytest.mark.slow
def test_index_zero_diagonal_sweep_matches_construction(gk3, spread3):
    found, report = ansatz_exhaustive_oracle(gk3, 0, MapForm.DIAGONAL, spread=spread3, threads=4)
    assert len(found) == 5_824
    assert report.verified == 5_824
    assert report.constructed == 5_824
    assert report.set_equal
    assert report.missing == 0 and report.extra == 0
    assert report.equation_survivors >= report.verified


@pytest.mark.slow
def test_inadmissible_index_sweeps_empty(gk3, spread3):
    found, report = ansatz_exhaustive_oracle(gk3, 1, MapForm.ANTIDIAGONAL, spread=spread3, threads=4)
    assert len(found) == 0
    assert not report.admissible
    assert report.set_equal


@pytest.mark.slow
def test_antidiagonal_sweep_matches_construction(balanced, spread_balanced):
    found, report = ansatz_exhaustive_oracle(balanced, 1, MapForm.ANTIDIAGONAL, spread=spread_balanced, threads=4)
    assert report.admissible
    assert report.verified == 5_824
    assert report.set_equal


@pytest.mark.longrun
@pytest.mark.parametrize("form", list(MapForm))
def test_every_index_sweeps_to_the_constructed_family(gk3, spread3, form):
    for i in range(6):
        _, report = ansatz_exhaustive_oracle(gk3, i, form, spread=spread3, threads=4)
        assert report.set_equal, f"i={i} {form.value}"
        assert report.verified == (5_824 if report.admissible else 0)
