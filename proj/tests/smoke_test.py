"""Python binding smoke tests (run with PYTHONPATH pointing at the build)."""

import json
import math

import wpvol


def test_volume_latex():
    assert wpvol.volume_latex(1, 1, "wp") == r"\frac{L_1^2}{48} + \frac{\pi^2}{12}"


def test_volume_json_golden():
    payload = json.loads(wpvol.volume_json(0, 3, "wp"))
    assert payload["g"] == 0 and payload["n"] == 3
    assert payload["terms"] == [{"exponents": {}, "coeff": "1"}]


def test_psi_intersection():
    assert wpvol.psi_intersection(2, [4]) == "1/1152"
    assert wpvol.psi_intersection(1, [1]) == "1/24"
    assert wpvol.psi_intersection(0, [1, 1, 1]) == "0"
    rows = json.loads(wpvol.intersection_table_json())
    assert {"g": 2, "d": [4], "value": "1/1152"} in rows


def test_tight_defect_volume():
    payload = json.loads(wpvol.tight_defects_json(1, 1, 1))
    assert payload["g"] == 1 and payload["n"] == 2
    assert payload["basis"] == "wp"
    assert payload["terms"]


def test_moments_identity():
    weight = json.dumps({
        "atoms": [{"kind": "geodesic", "length": 1.0, "weight": 0.02}],
        "fzzt": None,
        "mode": "numeric",
    })
    md = wpvol.moments(weight, 8)
    assert md["z_residual"] <= 1e-12
    assert md["beta_convolution_residual"] <= 1e-10
    assert md["M"][0] > 0


def test_jt_partition_mu0():
    res = wpvol.jt_partition(1, [1.0])
    expect = (1.0 + math.pi ** 2) / (12.0 * math.sqrt(math.pi))
    assert abs(res["value"] - expect) < 1e-12
    assert res["prefactor_exponent"] == 1


def test_checks_fast_suite():
    report = json.loads(wpvol.run_checks("decomposition", 4))
    assert report["pass"] is True
