
import cmath
import math

import pytest

from hypothesis import given, settings
from hypothesis import strategies as st

from mojo.specflow.eta.etainvariant import (
    CharacterSpectrum,
    Progression,
    SpectralPoint,
    boundary_term,
    eta_abel_oracle,
    eta_closed_form,
    eta_function,
    eta_lerch_form,
    eta_value,
    spectrum_from_dict,
    symmetric_spectrum
)
from mojo.specflow.exceptions import InvalidInput, SchemaError, UseNumericOracle

ORACLE_TOL = 1e-6
SYMMETRIC_TOL = 1e-8

OFFSETS = st.floats(min_value=0.05, max_value=1.0)
ANGLES = st.floats(min_value=0.3, max_value=2.0 * math.pi - 0.3)


def unit(angle: float) -> complex:
    return cmath.exp(1j * angle)


def test_progression_validation():
    with pytest.raises(InvalidInput):
        Progression(0.0)
    with pytest.raises(InvalidInput):
        Progression(1.5)
    with pytest.raises(InvalidInput):
        Progression(0.5, ratio=2.0)
    with pytest.raises(InvalidInput):
        Progression(0.5, scale=0.0)


def test_closed_form_known_values():
    # {j + a} for a = ½ is symmetric
    assert abs(eta_closed_form(CharacterSpectrum((), (Progression(0.5),))).value) < 1e-15
    # ℤ∖{0}
    assert abs(eta_closed_form(CharacterSpectrum((), (Progression(1.0),))).value) < 1e-15
    # {j + ¼}: ζ(0, ¼) − ζ(0, ¾) = ½
    assert abs(eta_closed_form(CharacterSpectrum((), (Progression(0.25),))).value - 0.5) < 1e-15


def test_closed_form_needs_unit_ratio():
    spectrum = CharacterSpectrum((), (Progression(0.5, ratio=1j),))
    with pytest.raises(UseNumericOracle):
        eta_closed_form(spectrum)
    with pytest.raises(UseNumericOracle):
        eta_function(spectrum, -1.0)
    with pytest.raises(InvalidInput):
        eta_lerch_form(CharacterSpectrum((), (Progression(0.5),)))


def test_finite_part_sign_count():
    spectrum = CharacterSpectrum((SpectralPoint(2.0, 3), SpectralPoint(-1.0, 1, 1j), SpectralPoint(0.0, 2, -1.0)))
    assert abs(eta_closed_form(spectrum).value - (3.0 - 1j)) < 1e-15
    assert spectrum.kernel_trace().value == -2.0


def test_eta_function_at_zero_matches_closed_form():
    spectrum = CharacterSpectrum((SpectralPoint(3.0, 1),), (Progression(0.3, 1.0, 1j), Progression(0.8, scale=2.0)))
    closed = eta_closed_form(spectrum).value
    assert abs(eta_function(spectrum, 0.0).value - closed) < 1e-12

    with pytest.raises(InvalidInput):
        eta_function(spectrum, 1.0)


def test_eta_function_convergent_region():
    spectrum = CharacterSpectrum((), (Progression(0.25),))
    direct = sum((j + 0.25) ** -3.0 for j in range(0, 200000)) - sum((j + 0.75) ** -3.0 for j in range(0, 200000))
    assert abs(eta_function(spectrum, 3.0).value - direct) < 1e-9


def test_eta_value_method_selection():
    unit_only = CharacterSpectrum((), (Progression(0.25),))
    assert eta_value(unit_only)[1] == "closed"

    twisted = CharacterSpectrum((), (Progression(0.25, ratio=1j),))
    assert eta_value(twisted)[1] == "lerch"

    mixed = CharacterSpectrum((), (Progression(0.25), Progression(0.5, ratio=1j)))
    assert eta_value(mixed)[1] == "oracle"

    with pytest.raises(InvalidInput):
        eta_value(unit_only, method="guess")


def test_oracle_requires_consecutive_levels():
    spectrum = CharacterSpectrum((), (Progression(0.25),))
    with pytest.raises(InvalidInput):
        eta_abel_oracle(spectrum, levels=(4, 6, 8))


def test_oracle_along_explicit_radii():
    spectrum = CharacterSpectrum((SpectralPoint(-2.0),), (Progression(0.25),))
    radii = [1.0 - 2.0 ** (-k) for k in range(6, 13)]

    estimate = eta_abel_oracle(spectrum, r_sequence=radii)
    assert abs(estimate.value.value - (-0.5)) < 1e-6
    assert estimate.levels == ()
    assert estimate.as_dict()["radii"] == radii

    with pytest.raises(InvalidInput):
        eta_abel_oracle(spectrum, r_sequence=list(reversed(radii)))
    with pytest.raises(InvalidInput):
        eta_abel_oracle(spectrum, r_sequence=[0.5, 0.9, 1.0])


@settings(max_examples=60, deadline=None, derandomize=True)
@given(offset=OFFSETS, plus=ANGLES, minus=ANGLES, scale=st.floats(min_value=0.5, max_value=3.0))
def test_closed_form_matches_oracle(offset, plus, minus, scale):
    spectrum = CharacterSpectrum(
        (SpectralPoint(1.5, 1, unit(plus)),),
        (Progression(offset, unit(plus), unit(minus), 1.0, scale),),
        "g"
    )
    oracle = eta_abel_oracle(spectrum)
    assert abs(oracle.value.value - eta_closed_form(spectrum).value) < ORACLE_TOL


@settings(max_examples=60, deadline=None, derandomize=True)
@given(offset=OFFSETS, ratio=ANGLES, plus=ANGLES)
def test_lerch_form_matches_oracle(offset, ratio, plus):
    spectrum = CharacterSpectrum((), (Progression(offset, unit(plus), 1.0, unit(ratio)),), "g")
    oracle = eta_abel_oracle(spectrum)
    assert abs(oracle.value.value - eta_lerch_form(spectrum).value) < ORACLE_TOL


@settings(max_examples=50, deadline=None, derandomize=True)
@given(values=st.lists(st.floats(min_value=0.1, max_value=10.0), min_size=1, max_size=6), angle=ANGLES)
def test_symmetric_spectra_have_no_eta(values, angle):
    characters = [unit(angle * (idx + 1)) for idx in range(len(values))]
    spectrum = symmetric_spectrum(values, characters, "g")
    assert abs(eta_closed_form(spectrum).value) < SYMMETRIC_TOL
    assert abs(eta_abel_oracle(spectrum).value.value) < SYMMETRIC_TOL


def test_scaling_leaves_eta_unchanged():
    spectrum = CharacterSpectrum((SpectralPoint(-2.0),), (Progression(0.3, 1.0, 1j),))
    assert abs(eta_closed_form(spectrum.scaled(3.0)).value - eta_closed_form(spectrum).value) < 1e-15
    with pytest.raises(InvalidInput):
        spectrum.scaled(-1.0)


def test_boundary_term_components():
    start = CharacterSpectrum((SpectralPoint(0.0, 1),), (Progression(1.0),))
    end = CharacterSpectrum((), (Progression(0.25),))
    term = boundary_term(start, end)

    assert term.kernel_trace_start.exact_integer == 1
    assert abs(term.eta_end.value - 0.5) < 1e-15
    assert abs(term.b_value.value + 0.25) < 1e-15
    assert term.eta_method == "closed"


def test_spectrum_document():
    spectrum = spectrum_from_dict({
        "finite_part": [{"eigenvalue": 0.0, "multiplicity": 2, "character": [0.0, 1.0]}],
        "progressions": [{"offset": 0.5, "weight_plus": [1.0, 0.0], "ratio": 1}]
    })
    assert spectrum.kernel_trace().value == 2j
    assert spectrum.progressions[0].offset == 0.5

    with pytest.raises(SchemaError):
        spectrum_from_dict({"finite_part": [{"multiplicity": 1}]})
    with pytest.raises(SchemaError):
        spectrum_from_dict({"finite_part": [{"eigenvalue": 1.0, "character": "one"}]})
