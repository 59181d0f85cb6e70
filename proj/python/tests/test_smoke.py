# Copyright 2026 The renyi-lab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import math
import os
import subprocess

import numpy as np
import pytest

import renyi_lab as rl


def classical(p, q, alpha):
    p, q = np.asarray(p), np.asarray(q)
    return math.log(np.sum(p**alpha * q ** (1 - alpha))) / (alpha - 1)


def test_diagonal_pair_matches_classical_formula():
    p, q = [0.6, 0.3, 0.1], [0.2, 0.5, 0.3]
    for alpha in (0.5, 0.75, 2.0, 3.0):
        got = rl.divergence(np.diag(p), np.diag(q), alpha)
        assert got == pytest.approx(classical(p, q, alpha), abs=1e-10)


def test_orders_and_conventions():
    rho = np.diag([1.0, 0.0])
    sigma = np.diag([0.0, 1.0])
    assert math.isinf(rl.divergence(rho, sigma, 2.0))
    assert math.isinf(rl.divergence(rho, sigma, 0.5))
    plus = np.full((2, 2), 0.5)
    assert rl.divergence(plus, np.eye(2) / 2, "inf") == pytest.approx(math.log(2), abs=1e-12)
    assert rl.divergence(plus, np.eye(2) / 2, 1.0, base="2") == pytest.approx(1.0, abs=1e-12)


def test_traditional_dominates_sandwiched():
    rho = rl.random_density(3, 7)
    sigma = rl.random_density(3, 8)
    assert rl.divergence(rho, sigma, 2.0) <= rl.divergence(rho, sigma, 2.0, traditional=True) + 1e-9


def test_fidelity_and_half_order():
    rho = rl.random_density(3, 1)
    sigma = rl.random_density(3, 2)
    f = rl.fidelity(rho, sigma)
    assert rl.divergence(rho, sigma, 0.5) == pytest.approx(-2 * math.log(f), abs=1e-10)


def test_haar_unitary_is_unitary_and_seeded():
    u = rl.haar_unitary(4, 11)
    assert np.allclose(u.conj().T @ u, np.eye(4), atol=1e-12)
    assert np.array_equal(u, rl.haar_unitary(4, 11))


def test_channel_roundtrip_through_dilation():
    kraus = rl.random_channel(3, 3, 2, 5)
    total = sum(k.conj().T @ k for k in kraus)
    assert np.allclose(total, np.eye(3), atol=1e-10)
    rho = rl.random_density(3, 9)
    out = rl.apply_channel(kraus, rho)
    assert np.trace(out).real == pytest.approx(1.0, abs=1e-12)
    d = rl.stinespring(kraus)
    assert d["env_dim"] == 2
    u = d["unitary"]
    joint = u @ np.kron(rho, d["env_state"]) @ u.conj().T
    reduced = np.einsum("ajbj->ab", joint.reshape(3, 2, 3, 2))
    assert np.allclose(reduced, out, atol=1e-10)


def test_verify_report_passes():
    assert "thm1" in rl.claim_names()
    report = rl.verify("thm1", dims=[2, 3], trials=20, seed=3, threads=1)
    assert report["claim"] == "thm1"
    assert report["pass"] is True


def test_alpha_scan_rows():
    rows = rl.alpha_scan(np.diag([0.7, 0.3]), np.diag([0.4, 0.6]), points=5)
    assert rows[-1][0] == math.inf and rows[-1][2] is None
    assert all(b is not None for _, b, _ in rows)


def test_invalid_input_raises():
    with pytest.raises(ValueError):
        rl.divergence(np.array([[1.0, 1.0], [0.0, 1.0]]), np.eye(2), 2.0)
    with pytest.raises(ValueError):
        rl.divergence(np.eye(2) / 2, np.eye(2) / 2, -1.0)


# CLI exit codes -------------------------------------------------------------

CLI = os.environ.get("RENYI_LAB_CLI")
needs_cli = pytest.mark.skipif(not CLI, reason="RENYI_LAB_CLI not set")


def write_matrix(path, m):
    m = np.asarray(m, dtype=complex)
    path.write_text(json.dumps({"dim": m.shape[0], "re": m.real.tolist(), "im": m.imag.tolist()}))
    return str(path)


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


@needs_cli
def test_cli_divergence(tmp_path):
    rho = write_matrix(tmp_path / "rho.json", np.diag([0.6, 0.3, 0.1]))
    sigma = write_matrix(tmp_path / "sigma.json", np.diag([0.2, 0.5, 0.3]))
    r = run("divergence", "--rho", rho, "--sigma", sigma, "--alpha", "2")
    assert r.returncode == 0
    assert float(r.stdout.strip()) == pytest.approx(classical([0.6, 0.3, 0.1], [0.2, 0.5, 0.3], 2))


@needs_cli
def test_cli_kernel_infinity_exits_2(tmp_path):
    rho = write_matrix(tmp_path / "rho.json", np.diag([1.0, 0.0]))
    sigma = write_matrix(tmp_path / "sigma.json", np.diag([0.0, 1.0]))
    r = run("divergence", "--rho", rho, "--sigma", sigma, "--alpha", "2")
    assert r.returncode == 2
    assert "+inf" in r.stdout


@needs_cli
def test_cli_usage_error_exits_2():
    assert run("verify").returncode == 2
    assert run("frobnicate").returncode == 2


@needs_cli
def test_cli_verify_pass_exits_0(tmp_path):
    report = tmp_path / "report.json"
    r = run("verify", "thm1", "--dims", "2", "--trials", "10", "--report", str(report))
    assert r.returncode == 0
    assert json.loads(report.read_text())["pass"] is True
