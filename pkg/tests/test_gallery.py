import math

import numpy as np
import pytest

from entbounds.gallery import (
    FAMILIES,
    StateSpec,
    cor_a,
    cor_b,
    fig3,
    ghz,
    gsd3,
    gsd3_closed_forms,
    named,
    thm2_saturating,
    w,
    wclass4,
    wclass4_closed_forms,
)
from entbounds.measures import (
    coa_two_qubit,
    concurrence_pure,
    concurrence_two_qubit,
)
from entbounds.qcore import reduced_density


def _random_simplex(rng, k):
    x = rng.random(k) + 1e-3
    return np.sqrt(x / x.sum())


def test_gsd3_equal_coefficients():
    lam = 1 / math.sqrt(5)
    psi = gsd3(lam, lam, lam, lam, lam)
    assert abs(concurrence_pure(psi, (0,)).value - 2 * math.sqrt(3) / 5) < 1e-12


def test_gsd3_zero_head_coefficient_is_product_for_first_qubit():
    lam = _random_simplex(np.random.default_rng(5), 4)
    psi = gsd3(0.0, *lam)
    forms = gsd3_closed_forms(0.0, *lam)
    assert all(abs(v) < 1e-12 for v in forms.values())
    assert concurrence_pure(psi, (0,)).value < 1e-10


def test_gsd3_closed_forms_match_numeric():
    rng = np.random.default_rng(42)
    for _ in range(100):
        lam = _random_simplex(rng, 5)
        phi = float(rng.uniform(0, 2 * math.pi))
        psi = gsd3(*lam, phi)
        forms = gsd3_closed_forms(*lam, phi)
        rho_ab = reduced_density(psi, (0, 1))
        rho_ac = reduced_density(psi, (0, 2))
        assert abs(concurrence_pure(psi, (0,)).value - forms["C(A|BC)"]) < 1e-9
        assert abs(concurrence_two_qubit(rho_ab).value - forms["C(AB)"]) < 1e-9
        assert abs(concurrence_two_qubit(rho_ac).value - forms["C(AC)"]) < 1e-9
        assert abs(coa_two_qubit(rho_ab).value - forms["Ca(AB)"]) < 1e-9
        assert abs(coa_two_qubit(rho_ac).value - forms["Ca(AC)"]) < 1e-9


def test_gsd3_rejects_bad_coefficients():
    with pytest.raises(ValueError):
        gsd3(1.0, 1.0, 0.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        gsd3(-0.5, 0.5, 0.5, 0.5, 0.0)


def test_wclass4_reference_values():
    psi = wclass4(3 / 4, 1 / 2, math.sqrt(2) / 4, 1 / 4)
    assert abs(concurrence_pure(psi, (0, 1)).value - math.sqrt(39) / 8) < 1e-12


def test_wclass4_separable_cut():
    psi = wclass4(math.sqrt(0.6), math.sqrt(0.4), 0.0, 0.0)
    assert concurrence_pure(psi, (0, 1)).value < 1e-10


def test_wclass4_closed_forms_match_numeric():
    rng = np.random.default_rng(43)
    for _ in range(100):
        lam = _random_simplex(rng, 4)
        psi = wclass4(*lam)
        forms = wclass4_closed_forms(*lam)
        assert abs(concurrence_pure(psi, (0, 1)).value - forms["C(AB|C1C2)"]) < 1e-9
        for pair, key in [((0, 1), "AB"), ((0, 2), "AC1"), ((0, 3), "AC2")]:
            rho = reduced_density(psi, pair)
            assert abs(concurrence_two_qubit(rho).value - forms[f"C({key})"]) < 1e-9
            assert abs(coa_two_qubit(rho).value - forms[f"Ca({key})"]) < 1e-9


def test_named_states():
    assert abs(concurrence_pure(ghz(3), (0,)).value - 1.0) < 1e-12
    assert abs(concurrence_pure(thm2_saturating(), (0, 1)).value - 1.0) < 1e-12
    # cor_a entangles qubits 0 and 2: unit concurrence across any cut that
    # separates them, exactly zero across the (0,1,2) cut that keeps them
    # together (rank-one cuts must not leave noise that small powers amplify)
    assert abs(concurrence_pure(cor_a(), (0, 1, 3)).value - 1.0) < 1e-12
    assert concurrence_pure(cor_a(), (0, 1, 2)).value == 0.0
    # cor_b entangles qubits 2 and 3, which straddle the (0,1,2) cut.
    assert abs(concurrence_pure(cor_b(), (0, 1, 2)).value - 1.0) < 1e-12
    assert abs(concurrence_pure(fig3(), (0, 1)).value - 2 * math.sqrt(2) / 3) < 1e-12


def test_w_state_reference():
    psi = w(3)
    assert abs(concurrence_pure(psi, (0,)).value ** 2 - 8 / 9) < 1e-12
    rho = reduced_density(psi, (0, 1))
    assert abs(concurrence_two_qubit(rho).value - 2 / 3) < 1e-10


def test_named_dispatch_and_errors():
    assert named("ghz", (3,)).num_qubits == 3
    with pytest.raises(ValueError):
        named("bell_tower")
    with pytest.raises(ValueError):
        named("gsd3", (0.5, 0.5))  # wrong parameter count
    assert set(FAMILIES) == {"gsd3", "wclass4", "ghz", "w", "thm2_saturating",
                             "fig3", "cor_a", "cor_b"}


def test_state_spec_amplitudes_roundtrip():
    spec = StateSpec.from_dict({
        "kind": "amplitudes", "n": 1,
        "re": [1 / math.sqrt(2), 1 / math.sqrt(2)], "im": [0.0, 0.0]})
    psi = spec.build()
    assert abs(psi.amplitudes[0] - 1 / math.sqrt(2)) < 1e-12


def test_state_spec_renormalizes_small_drift():
    drift = 1 + 5e-7
    spec = StateSpec.from_dict({
        "kind": "amplitudes", "n": 1, "re": [drift, 0.0], "im": [0.0, 0.0]})
    psi = spec.build()
    assert abs(np.linalg.norm(psi.amplitudes) - 1.0) < 1e-12


def test_state_spec_rejects_large_drift():
    spec = StateSpec.from_dict({
        "kind": "amplitudes", "n": 1, "re": [1.1, 0.0], "im": [0.0, 0.0]})
    with pytest.raises(ValueError):
        spec.build()


def test_state_spec_named():
    spec = StateSpec.from_dict({"kind": "named", "family": "fig3"})
    assert spec.build().num_qubits == 4


def test_state_spec_rejects_malformed():
    with pytest.raises(ValueError):
        StateSpec.from_dict({"kind": "frequencies"})
    with pytest.raises(ValueError):
        StateSpec.from_dict({"kind": "amplitudes", "n": 1, "re": [1, 0]})
    with pytest.raises(ValueError):
        StateSpec.from_dict({"kind": "named"})
    with pytest.raises(ValueError):
        StateSpec.from_dict([1, 2, 3])
