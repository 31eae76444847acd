"""Acceptance gate.

Each test prints one [PASS]/[FAIL] line per criterion; run

    pytest tests/test_acceptance.py -v -s

to see them live.  Expected wall time is well under two minutes.
"""

import math
from contextlib import contextmanager

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings, strategies as st
from scipy.signal import find_peaks

from pulseatom.dynamics import Coherent, FockOne, SimInput, fock_oracle, integrate
from pulseatom.geometry import Cone, CouplingBudget, lambda_of, LAMBDA_MAX
from pulseatom.optimize import max_over_time, optimize_bandwidth, sweep_photon_number, table_two
from pulseatom.pulses import PulseShape, ShapeKind, norm, support_window

FULL = CouplingBudget()

# reference optimum bandwidth / peak probability per (shape, state)
REFERENCE_OPTIMA = {
    ("gaussian", "fock"): (1.5, 0.80),
    ("gaussian", "coherent"): (2.4, 0.48),
    ("sech", "fock"): (1.3, 0.80),
    ("sech", "coherent"): (2.0, 0.48),
    ("rect", "fock"): (0.8, 0.81),
    ("rect", "coherent"): (1.3, 0.48),
    ("sym-exp", "fock"): (0.9, 0.79),
    ("sym-exp", "coherent"): (1.4, 0.48),
    ("decay-exp", "fock"): (1.0, 0.54),
    ("decay-exp", "coherent"): (1.4, 0.37),
    ("rising-exp", "fock"): (1.0, 0.995),
    ("rising-exp", "coherent"): (1.9, 0.56),
}


@contextmanager
def criterion(label):
    try:
        yield
    except BaseException:
        print(f"[FAIL] {label}")
        raise
    print(f"[PASS] {label}")


def _state_label(field):
    return "fock" if isinstance(field, FockOne) else "coherent"


@pytest.fixture(scope="module")
def table_reports():
    return table_two(FULL)


def test_criterion_1_table_ii(table_reports):
    with criterion("criterion 1: 12-row optimum table within 0.1 on Omega, 0.01 on pe"):
        assert len(table_reports) == 12
        for report in table_reports:
            omega_ref, pe_ref = REFERENCE_OPTIMA[(report.kind.value, _state_label(report.field))]
            pe_tol = 0.005 if pe_ref == 0.995 else 0.01
            assert abs(report.omega_opt - omega_ref) <= 0.1, report
            assert abs(report.pe_max - pe_ref) <= pe_tol, report
            assert not report.boundary, report
        # coherent N=1 stays strictly below the Fock optimum, shape by shape
        by_key = {(r.kind, _state_label(r.field)): r for r in table_reports}
        for kind in ShapeKind:
            assert by_key[(kind, "coherent")].pe_max < by_key[(kind, "fock")].pe_max


# Bandwidths the focusing predictions are quoted at: the full-coverage
# optima of the 12-row table.  Re-optimizing per Lambda instead shifts the
# rising/coherent lens entry to 0.289 and off the quoted 0.27 (see
# test_focusing_reoptimized_bandwidths below, which pins both readings).
_FOCUS_CASES = [
    ("rising-exp", FockOne(), 1.0),
    ("rising-exp", Coherent(1.0), 1.9),
    ("gaussian", FockOne(), 1.5),
    ("gaussian", Coherent(1.0), 2.4),
]


def _focus_values(fraction):
    budget = CouplingBudget.from_fraction(fraction)
    out = []
    for kind, field, omega in _FOCUS_CASES:
        sim = SimInput.default(PulseShape(kind, omega), field, budget)
        out.append(max_over_time(integrate(sim))[0])
    return out


def test_criterion_2_mirror_numbers():
    with criterion("criterion 2: mirror focusing (Lambda = 0.94 x 8pi/3) "
                   "gives 0.94/0.54/0.75/0.46 within 0.01"):
        got = _focus_values(0.94)
        for value, ref in zip(got, (0.94, 0.54, 0.75, 0.46)):
            assert abs(value - ref) <= 0.01, (got,)


def test_criterion_3_lens_numbers():
    with criterion("criterion 3: lens focusing (Lambda = 0.364 x 8pi/3) "
                   "gives 0.36/0.27/0.29/0.23 within 0.01"):
        got = _focus_values(0.364)
        for value, ref in zip(got, (0.36, 0.27, 0.29, 0.23)):
            assert abs(value - ref) <= 0.01, (got,)


def test_focusing_reoptimized_bandwidths():
    # Companion record: optimizing the bandwidth anew at the reduced
    # coupling.  The Fock rows cannot move (linear rescaling), the
    # coherent rows gain a little; at the lens coupling the rising
    # coherent optimum is 0.289 at Omega ~ 1.24, not the quoted 0.27.
    expected = {
        (0.94, "rising-exp", "fock"): 0.9400,
        (0.94, "rising-exp", "coherent"): 0.5409,
        (0.94, "gaussian", "fock"): 0.7529,
        (0.94, "gaussian", "coherent"): 0.4622,
        (0.364, "rising-exp", "fock"): 0.3640,
        (0.364, "rising-exp", "coherent"): 0.2886,
        (0.364, "gaussian", "fock"): 0.2916,
        (0.364, "gaussian", "coherent"): 0.2370,
    }
    for (fraction, kind, state), ref in expected.items():
        field = FockOne() if state == "fock" else Coherent(1.0)
        report = optimize_bandwidth(kind, field, CouplingBudget.from_fraction(fraction))
        assert report.pe_max == pytest.approx(ref, abs=2e-3), (fraction, kind, state)


def test_criterion_4_cone_integral():
    with criterion("criterion 4: cone integral, 0.94 at 134 deg and exactly 1 at 180 deg"):
        assert lambda_of(Cone.from_degrees(134.0)) / LAMBDA_MAX == pytest.approx(
            0.94, abs=0.005
        )
        assert lambda_of(Cone.from_degrees(180.0)) / LAMBDA_MAX == 1.0


def test_criterion_5_oracle_equivalence():
    with criterion("criterion 5: integration matches the quadrature oracle to 1e-6 "
                   "over 6 shapes x 4 bandwidths x 3 couplings"):
        worst = 0.0
        for kind in ShapeKind:
            for omega in (0.5, 1.0, 1.5, 2.4):
                for fraction in (0.364, 0.94, 1.0):
                    budget = CouplingBudget.from_fraction(fraction)
                    shape = PulseShape(kind, omega)
                    sim = SimInput.default(shape, FockOne(), budget)
                    trajectory = integrate(sim)
                    ref = fock_oracle(
                        shape, budget, trajectory.times,
                        t_start=sim.window.t_start,
                        t_stop=support_window(shape, sim.eps_trunc).t_end,
                    )
                    worst = max(worst, float(np.max(np.abs(trajectory.pe - ref))))
        print(f"  (worst |P_e - oracle| = {worst:.2e})")
        assert worst <= 1e-6


def test_criterion_6_closed_form_spot_checks():
    with criterion("criterion 6: decaying ramp peaks at 4/e^2 at t = 2; rising ramp "
                   "edge value 4 Gp Omega/(Omega+Gamma)^2 to 1e-6"):
        sim = SimInput.default(PulseShape("decay-exp", 1.0), FockOne(), FULL)
        pe_max, t_max = max_over_time(integrate(sim))
        assert abs(pe_max - 4 * math.exp(-2)) <= 1e-4
        assert abs(t_max - 2.0) <= 1e-3

        rng = np.random.default_rng(20260810)
        for _ in range(5):
            omega = rng.uniform(0.5, 2.0)
            fraction = rng.uniform(0.1, 1.0)
            budget = CouplingBudget.from_fraction(fraction)
            expected = 4 * budget.gamma_p * omega / (omega + 1.0) ** 2
            sim = SimInput.default(
                PulseShape("rising-exp", omega), FockOne(), budget, eps_trunc=1e-14
            )
            trajectory = integrate(sim)
            i = int(np.searchsorted(trajectory.times, 0.0))
            assert trajectory.times[i] == 0.0
            assert abs(trajectory.pe[i] - expected) <= 1e-6
            assert abs(
                fock_oracle(PulseShape("rising-exp", omega), budget, 0.0) - expected
            ) <= 1e-6


def test_criterion_7_normalization():
    with criterion("criterion 7: unit norm to 1e-6 for all shapes at "
                   "Omega in {0.1, 1, 10}"):
        for kind in ShapeKind:
            for omega in (0.1, 1.0, 10.0):
                assert abs(norm(PulseShape(kind, omega)) - 1.0) <= 1e-6


def test_criterion_8_coherent_saturation_and_rabi():
    with criterion("criterion 8: saturation with photon number and damped Rabi "
                   "oscillations at N = 50"):
        pairs = sweep_photon_number("gaussian", 2.4, FULL, [1.0, 10.0, 50.0, 100.0])
        pes = [pe for _, pe in pairs]
        assert pes[0] <= pes[1] <= pes[2]              # non-decreasing
        assert pes[2] > 0.9 * pes[3]                   # near the large-N plateau

        sim = SimInput.default(PulseShape("gaussian", 2.4), Coherent(50.0), FULL)
        trajectory = integrate(sim)
        peaks, _ = find_peaks(trajectory.pe, prominence=1e-3)
        print(f"  (pe_max by N: {[round(p, 4) for p in pes]}; "
              f"{len(peaks)} local maxima at N = 50)")
        assert len(peaks) >= 2


# ---------------------------------------------------------------------------
# criterion 9: module invariants under a property-test runner
# ---------------------------------------------------------------------------

_PROPERTY_SETTINGS = settings(
    max_examples=100,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)

_kinds = st.sampled_from(list(ShapeKind))
_omegas = st.floats(0.3, 3.0)
_fractions = st.floats(0.0, 1.0)
_fields = st.one_of(
    st.just(FockOne()),
    st.floats(0.0, 8.0).map(Coherent),
)


def test_criterion_9a_range_bounds():
    @_PROPERTY_SETTINGS
    @given(kind=_kinds, omega=_omegas, fraction=_fractions, field=_fields)
    def run(kind, omega, fraction, field):
        sim = SimInput.default(
            PulseShape(kind, omega), field, CouplingBudget.from_fraction(fraction)
        )
        trajectory = integrate(sim)
        assert np.all((trajectory.pe >= 0.0) & (trajectory.pe <= 1.0))
        s1 = trajectory.states[:, 0].real
        assert np.all((s1 >= -1.0) & (s1 <= 1.0))
        assert np.allclose(trajectory.pe, (s1 + 1) / 2, atol=1e-14)
        assert 0.0 <= trajectory.pe_max <= 1.0

    with criterion("criterion 9a: P_e and s1 stay in range (100 random cases)"):
        run()


def test_criterion_9b_conjugation():
    @_PROPERTY_SETTINGS
    @given(kind=_kinds, omega=_omegas, fraction=_fractions, field=_fields)
    def run(kind, omega, fraction, field):
        sim = SimInput.default(
            PulseShape(kind, omega), field, CouplingBudget.from_fraction(fraction)
        )
        trajectory = integrate(sim)
        s2, s3 = trajectory.states[:, 1], trajectory.states[:, 2]
        assert np.max(np.abs(s3 - np.conj(s2))) <= 1e-8
        if isinstance(field, Coherent):
            ball = trajectory.states[:, 0].real ** 2 + 4 * np.abs(s3) ** 2
            assert np.max(ball) <= 1.0 + 1e-6

    with criterion("criterion 9b: s3 = conj(s2), coherent Bloch ball bounded "
                   "(100 random cases)"):
        run()


def test_criterion_9c_free_decay_tail():
    @_PROPERTY_SETTINGS
    @given(kind=_kinds, omega=_omegas, fraction=_fractions, field=_fields)
    def run(kind, omega, fraction, field):
        shape = PulseShape(kind, omega)
        sim = SimInput.default(shape, field, CouplingBudget.from_fraction(fraction))
        trajectory = integrate(sim)
        t_end = support_window(shape, sim.eps_trunc).t_end
        sel = trajectory.times >= t_end - 1e-12
        tail_t = trajectory.times[sel]
        tail_pe = trajectory.pe[sel]
        ref = tail_pe[0]
        if ref == 0.0:
            assert np.all(tail_pe == 0.0)
            return
        model = ref * np.exp(-(tail_t - tail_t[0]))
        assert np.max(np.abs(tail_pe - model) / model) <= 1e-6

    with criterion("criterion 9c: post-pulse tail decays at exactly Gamma "
                   "(100 random cases)"):
        run()


def test_criterion_9d_fock_linear_in_coupling():
    @_PROPERTY_SETTINGS
    @given(kind=_kinds, omega=_omegas, scale=st.floats(0.05, 1.0))
    def run(kind, omega, scale):
        shape = PulseShape(kind, omega)
        full = integrate(SimInput.default(shape, FockOne(), FULL))
        part = integrate(
            SimInput.default(shape, FockOne(), CouplingBudget.from_fraction(scale))
        )
        assert abs(part.pe_max - scale * full.pe_max) <= 1e-6
        assert abs(part.t_max - full.t_max) <= 1e-3

    with criterion("criterion 9d: Fock peak scales linearly with the coupling, "
                   "argmax fixed (100 random cases)"):
        run()
