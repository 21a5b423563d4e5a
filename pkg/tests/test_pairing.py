import json

import numpy as np
import pytest

from nctorus import (
    AlgebraElement,
    PeriodicFunction,
    character_degree0,
    character_degree2,
    chern_number,
    fedosov_index,
    graded_heat_trace,
    index_pairing,
    report_to_json_dict,
    reports_to_csv,
    rieffel_projection,
)

HBAR = 0.3


def test_degree0_of_unit():
    value = character_degree0(AlgebraElement.unit(HBAR), n_modes=400)
    assert abs(value - 1.0) < 1e-3


def test_graded_heat_trace_of_unit_telescopes():
    # grading symmetry: the unit's graded heat sum collapses to e^{-t}
    one = AlgebraElement.unit(HBAR)
    for t in (0.02, 0.01, 0.005):
        assert abs(graded_heat_trace(one, t, n_modes=400) - np.exp(-t)) < 1e-10


def test_degree0_of_nonzero_degree(p03):
    part = AlgebraElement(HBAR, {1: p03.coefficient(1)})
    value = character_degree0(part, n_modes=1600)
    assert abs(value) < 1e-3


def test_degree0_of_projection(p03):
    value = character_degree0(p03, n_modes=1600)
    assert abs(value - HBAR) < 5e-3


def test_degree2_kills_unit_slot(p03):
    one = AlgebraElement.unit(HBAR, p03.n_samples)
    assert abs(character_degree2(p03, one, p03)) < 1e-12


def test_degree2_projection_identity(p03):
    half = p03 - 0.5 * AlgebraElement.unit(HBAR, p03.n_samples)
    value = character_degree2(half, p03, p03)
    assert abs(value - HBAR * chern_number(p03)) < 1e-6
    assert abs(value - HBAR) < 1e-6


def test_degree2_vanishes_at_classical_point():
    f = PeriodicFunction.from_callable(lambda x: np.sin(2 * np.pi * x) + 2.0)
    a = AlgebraElement(0.0, {0: f})
    assert character_degree2(a, a, a) == 0.0


def test_fedosov_unit_and_telescoping_oracle():
    # analytic oracle for the trivial class: the order-two trace difference
    # telescopes to sum (2n+1)^{-2} - sum (2n+3)^{-2} = 1 at infinite size
    n = np.arange(5000)
    oracle = (1.0 / (2 * n + 1.0) ** 2).sum() - (1.0 / (2 * n + 3.0) ** 2).sum()
    assert abs(oracle - 1.0) < 1e-3
    value = fedosov_index(AlgebraElement.unit(HBAR), basis_size=200)
    assert value == 1.0


def test_fedosov_projection_small_basis(p03):
    assert fedosov_index(p03, basis_size=320) == 0.0


def test_fedosov_branch(p03):
    assert fedosov_index(rieffel_projection(1.3), basis_size=320) == -1.0


def test_fedosov_rejects_basis_too_small(p03):
    with pytest.raises(ValueError):
        fedosov_index(p03, basis_size=100)


def test_fedosov_rejects_non_projection():
    f = PeriodicFunction.from_callable(lambda x: 0.5 + 0.4 * np.cos(2 * np.pi * x))
    a = AlgebraElement(HBAR, {0: f})
    with pytest.raises(ValueError, match="not"):
        fedosov_index(a, basis_size=200)


def test_index_pairing_unit():
    report = index_pairing(
        AlgebraElement.unit(HBAR), basis_size=200, n_modes=400
    )
    assert abs(report.closed_form - 1.0) < 1e-12
    assert abs(report.local_formula - 1.0) < 1e-3
    assert report.fedosov == 1.0
    assert report.rounded_integer == 1


def test_index_pairing_rejects_non_projection():
    f = PeriodicFunction.from_callable(lambda x: 0.5 + 0.4 * np.cos(2 * np.pi * x))
    with pytest.raises(ValueError, match="not a projection"):
        index_pairing(AlgebraElement(HBAR, {0: f}))


def test_closed_form_staircase_values():
    # trace(p) - hbar * c1(p) at the two branch examples
    p26 = rieffel_projection(2.6)
    closed = (0.6 - 2.6 * chern_number(p26)).real
    assert abs(closed - (-2.0)) < 1e-6
    pm04 = rieffel_projection(-0.4)
    closed = (0.6 + 0.4 * chern_number(pm04)).real
    assert abs(closed - 1.0) < 1e-6


def test_report_emission(p03):
    report = index_pairing(p03, basis_size=200, n_modes=400)
    csv_text = reports_to_csv([report])
    lines = csv_text.strip().split("\n")
    assert lines[0] == "hbar,closed_form,local_formula,fedosov,integer"
    cells = lines[1].split(",")
    assert cells[0] == "0.3"
    assert int(cells[4]) == report.rounded_integer
    payload = json.dumps(report_to_json_dict(report))
    back = json.loads(payload)
    assert back["integer"] == report.rounded_integer
    assert reports_to_csv([report]) == csv_text  # deterministic
