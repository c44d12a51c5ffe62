"""Acceptance gate: eleven end-to-end checks at fixed tolerances.

Each test prints a single PASS line with the measured numbers (visible with
``pytest -s``) and fails loudly otherwise.  Everything here runs from the
public API or the CLI; no internals are reached into.
"""

import filecmp
import math

import numpy as np
import pytest

from multislit import (
    ProtocolError,
    build_reduced_density,
    bracket_visibility,
    channel_intensity,
    closed_form_intensity,
    coherence_closed_form,
    coherence_decay,
    intensity_n3,
    intensity_n4,
    l1_coherence,
    one_path_configuration,
    one_path_knowledge_state,
    run_pairwise_protocol,
    run_peak_ratio_protocol,
    scan_phase,
    visibility_vs_time,
)
from multislit.cli import main
from multislit.decoherence import (
    BathParameters,
    SlitGeometry,
    flight_time,
    screen_density_exact,
    screen_density_fraunhofer,
)
from multislit.states import DetectorOverlapMatrix, PathConfiguration


def report(num, detail):
    print(f"PASS criterion {num}: {detail}")


def test_c01_two_path_duality():
    worst_v = worst_c = 0.0
    for beta in np.linspace(0.0, 1.0, 101):
        beta = float(beta)
        worst_v = max(worst_v, abs(scan_phase(2, beta).visibility - beta))
        worst_c = max(worst_c, abs(l1_coherence(one_path_knowledge_state(2, beta)) - beta))
    assert worst_v < 1e-6
    assert worst_c < 1e-6
    report(1, f"two-path visibility and coherence equal beta (max errors {worst_v:.2e}, {worst_c:.2e})")


def test_c02_three_path_endpoints_and_dip():
    v0 = scan_phase(3, 0.0).visibility
    v1 = scan_phase(3, 1.0).visibility
    assert v0 == pytest.approx(2.0 / 3.0, abs=1e-4)
    assert v1 == pytest.approx(2.0 / 3.0, abs=1e-4)
    dipped = scan_phase(3, 0.3).visibility
    assert dipped < 0.66
    # walking beta downward from the dip raises the visibility back up
    ladder = [scan_phase(3, b).visibility for b in (0.3, 0.2, 0.1, 0.05)]
    assert all(hi > lo for lo, hi in zip(ladder, ladder[1:]))
    report(2, f"n=3 endpoints {v0:.6f}/{v1:.6f}, interior dip {dipped:.4f} recovering toward 2/3")


def test_c03_four_path_enhancement_gap():
    gap = scan_phase(4, 0.0).visibility - scan_phase(4, 1.0).visibility
    want = 9.0 / 11.0 - 4.0 / (3.0 * math.sqrt(3.0))
    assert gap == pytest.approx(want, abs=1e-4)
    report(3, f"n=4 visibility gap {gap:.6f} matches 9/11 - 4/(3*sqrt(3)) = {want:.6f}")


def test_c04_coherence_closed_form():
    worst = 0.0
    for n in range(2, 9):
        for beta in np.linspace(0.0, 1.0, 101):
            beta = float(beta)
            got = l1_coherence(one_path_knowledge_state(n, beta))
            worst = max(worst, abs(got - coherence_closed_form(n, beta)))
    assert worst < 1e-12
    report(4, f"l1 coherence equals (n-2+2 beta)/n for n=2..8 (max error {worst:.2e})")


def test_c05_closed_forms_match_direct_sum():
    theta = np.linspace(0.0, 2.0 * math.pi, 720, endpoint=False)
    worst_special = worst_general = 0.0
    for beta in (0.0, 0.25, 0.5, 0.75, 1.0):
        p3, o3 = one_path_configuration(3, beta)
        p4, o4 = one_path_configuration(4, beta)
        worst_special = max(
            worst_special,
            np.max(np.abs(intensity_n3(beta, theta) - channel_intensity(p3, o3, theta))),
            np.max(np.abs(intensity_n4(beta, theta) - channel_intensity(p4, o4, theta))),
        )
    for n in range(3, 9):
        for beta in (0.0, 0.5, 1.0):
            paths, overlaps = one_path_configuration(n, beta)
            worst_general = max(
                worst_general,
                np.max(np.abs(closed_form_intensity(n, beta, theta) - channel_intensity(paths, overlaps, theta))),
            )
    assert worst_special < 1e-12
    assert worst_general < 1e-10
    report(5, f"closed forms track the direct sum (n=3/4 to {worst_special:.2e}, general to {worst_general:.2e})")


def test_c06_decay_law():
    worst_limit = max(
        abs(coherence_decay(n, 50.0) - (n - 2) / n) for n in range(2, 9)
    )
    assert worst_limit < 1e-10
    assert coherence_decay(4, 1.0) == pytest.approx(0.564386, abs=1e-5)
    worst_pairwise = 0.0
    for n in (2, 3, 4, 6, 8):
        amps = np.full(n, 1.0 / math.sqrt(n))
        for s in (0.0, 0.2, 1.0, 3.0):
            damping = np.exp(-np.arange(n - 1, 0, -1) ** 2 * s)
            got = run_pairwise_protocol(amps, damping, n).value
            worst_pairwise = max(worst_pairwise, abs(got - coherence_decay(n, s)))
    assert worst_pairwise < 1e-12
    report(6, f"decay saturates at (n-2)/n, value 0.564386 hit at n=4 t=tau, pairwise protocol agrees to {worst_pairwise:.2e}")


def test_c07_visibility_coherence_crossover():
    v0 = bracket_visibility(4, 0.0)
    v2 = bracket_visibility(4, 2.0)
    assert v2 > v0
    assert coherence_decay(4, 2.0) < coherence_decay(4, 0.0)
    grid = np.linspace(0.0, 5.0, 26)
    table = visibility_vs_time(3, grid, samples=1024)
    k = int(np.argmin(table.visibility))
    assert 0 < k < len(grid) - 1
    assert table.visibility[k] < min(table.visibility[0], table.visibility[-1])
    report(7, f"n=4 visibility rises {v0:.4f} -> {v2:.4f} while coherence falls; n=3 visibility dips at t/tau = {grid[k]:g}")


def test_c08_screen_and_phase_scans_agree_at_t_zero():
    worst = 0.0
    for n in (2, 3, 4, 5, 6):
        worst = max(worst, abs(bracket_visibility(n, 0.0) - scan_phase(n, 1.0).visibility))
    assert worst < 1e-5
    report(8, f"undamped screen visibility equals the beta=1 phase-scan value (max gap {worst:.2e})")


def test_c09_fraunhofer_fidelity():
    geom = SlitGeometry(n=4, ell=6e-6, eps=2e-6, wavelength=0.018e-6, L=37e-3)
    mass = 3.349e-26
    bath = BathParameters(gamma=0.0, temperature=2.5e-3, mass=mass)
    t = flight_time(geom, mass)
    paths = PathConfiguration.equal(4)
    overlaps = DetectorOverlapMatrix.one_path(4, 1.0)
    x = np.linspace(-1.0, 1.0, 1001) * geom.fringe_width
    exact = screen_density_exact(geom, paths, overlaps, bath, t, x + geom.centroid)
    far = screen_density_fraunhofer(geom, paths, overlaps, bath, t, x)
    margin = np.max(np.abs(exact - far)) / np.max(far)
    assert margin < 0.05
    report(9, f"per-slit vs far-field patterns differ by {100 * margin:.2f}% of peak (< 5%)")


def test_c10_protocol_guard():
    worst = 0.0
    for n in (2, 3, 4, 5, 6):
        for beta in (0.0, 0.3, 0.6, 1.0):
            paths, overlaps = one_path_configuration(n, beta, pi_phase=False)
            got = run_peak_ratio_protocol(paths, overlaps, samples=1024).value
            want = l1_coherence(build_reduced_density(paths, overlaps))
            worst = max(worst, abs(got - want))
    assert worst < 1e-10
    with pytest.raises(ProtocolError):
        paths, overlaps = one_path_configuration(4, 0.5, pi_phase=True)
        run_peak_ratio_protocol(paths, overlaps)
    report(10, f"peak-ratio protocol recovers l1 coherence to {worst:.2e} and rejects the pi-phase flag")


def test_c11_deterministic_outputs(tmp_path):
    jobs = [
        ["fig2", "--n", "3", "--beta-points", "11", "--samples", "512"],
        ["fig4", "--x-points", "129"],
        ["fig5", "--n", "4", "--points", "11", "--samples", "512"],
    ]
    names = set()
    for run in ("r1", "r2"):
        for job in jobs:
            out = tmp_path / run / job[0]
            assert main(job + ["--out", str(out)]) == 0
            names.update(f"{job[0]}/{p.name}" for p in out.iterdir())
    mismatched = [
        name
        for name in sorted(names)
        if not filecmp.cmp(tmp_path / "r1" / name, tmp_path / "r2" / name, shallow=False)
    ]
    assert mismatched == []
    report(11, f"{len(names)} files (tables, sidecars and PNGs) byte-identical across two runs")
