import json
import math

import numpy as np
import pytest

import pseudopower as pp


def test_bicomplex_algebra():
    one_plus_k = pp.Bicomplex(1.0, 0.0, 1.0, 0.0)
    one_minus_k = pp.Bicomplex(1.0, 0.0, -1.0, 0.0)
    assert one_plus_k * one_minus_k == pp.Bicomplex(2.0)

    k = pp.Bicomplex(0.0, 0.0, 1.0, 0.0)
    assert k * k == pp.Bicomplex(-1.0)

    p_plus = pp.Bicomplex(0.5, 0.0, 0.0, 0.5)
    with pytest.raises(pp.ZeroDivisorError):
        p_plus.inverse()

    w = pp.Bicomplex(0.3, -1.2, 0.5, 2.0)
    plus, minus = pp.idempotent_split(w)
    back = pp.from_idempotent(plus, minus)
    assert (back - w).abs() < 1e-14


def test_cumulative_integral():
    n = 201
    x = np.linspace(-1.0, 1.0, n)
    v = pp.cumulative_integral(np.ones(n, dtype=complex), 1.0)
    assert np.max(np.abs(v - x)) < 1e-12


def test_free_case_formal_powers():
    prob = pp.Problem(kind="zero", m=0.0, omega=0.0, a=1.0, nx=101, b=1.0, ny=101)
    x = prob.x_nodes
    y = prob.y_nodes
    zx, zy = np.meshgrid(x, y)  # rows iy, cols ix

    u3, v3 = prob.formal_power(3, "1")
    # z^3 = (x + k y)^3: Sc = x^3 - 3 x y^2, Vec = 3 x^2 y - y^3
    want_u = zx**3 - 3 * zx * zy**2
    want_v = 3 * zx**2 * zy - zy**3
    assert np.max(np.abs(u3 - want_u)) < 1e-9
    assert np.max(np.abs(v3 - want_v)) < 1e-9

    ur, vr = prob.formal_power_recursive(3, "1")
    assert np.max(np.abs(ur - want_u)) < 1e-9
    assert np.max(np.abs(vr - want_v)) < 1e-9


def test_free_case_operators_identity():
    prob = pp.Problem(kind="zero", m=0.0, omega=0.0, a=1.0, nx=101, b=1.0, ny=101)
    x = prob.x_nodes
    zx, zy = np.meshgrid(x, prob.y_nodes)
    u = 1.0 + zx + zx * zy + 0.5j * zy**2
    v = zx**2 - zy + 2.0j * zx
    tu, tv = prob.apply_T0(u, v)
    assert np.max(np.abs(tu - u)) < 1e-12
    assert np.max(np.abs(tv - v)) < 1e-12


def test_potential_pipeline():
    prob = pp.Problem(kind="linear", c=1.0, m=0.5, omega=1.0,
                      a=1.0, nx=161, b=1.0, ny=161)
    assert prob.picard_iterations <= 50
    h = prob.x_nodes[1] - prob.x_nodes[0]

    # the degree-2 formal power solves its Vekua equation
    u, v = prob.formal_power(2, "k")
    assert prob.vekua_residual_main(u, v) <= 50.0 * h * h * max(1.0, np.max(np.abs(u)))

    # and its scalar part solves the nu-Schroedinger equation
    assert prob.schrodinger_residual(u, "nu") <= 50.0 * h * h * max(1.0, np.max(np.abs(u)))

    # mapping property of T_f on x^2 against phi_2 = f * Xt^(2) rebuilt here
    x = prob.x_nodes
    tx2 = prob.transmute((x**2).astype(complex))
    f = prob.f
    xt1 = pp.cumulative_integral(f**2, 1.0)
    xt2 = 2.0 * pp.cumulative_integral(xt1 / f**2, 1.0)
    phi2 = f * xt2
    scale = np.max(np.abs(phi2))
    assert np.max(np.abs(tx2 - phi2)) / scale <= 50.0 * h * h


def test_taylor_round_trip():
    prob = pp.Problem(kind="linear", c=1.0, m=0.5, omega=1.0,
                      a=1.0, nx=201, b=1.0, ny=201)
    u0, v0 = prob.formal_power(0, "1")
    coeffs, radius = prob.taylor_coefficients(u0, v0, 3, 0.5)
    assert abs(coeffs[0].re - 1.0) < 1e-5
    assert abs(coeffs[1].re) < 1e-5


def test_runge_fit_decays():
    prob = pp.Problem(kind="linear", c=1.0, m=0.5, omega=1.0,
                      a=1.0, nx=121, b=1.0, ny=121)
    zx, zy = np.meshgrid(prob.x_nodes, prob.y_nodes)
    # bicomplex 1/(z - 2): idempotent components 1/((x - 2) +- i y)
    plus = 1.0 / ((zx - 2.0) - 1j * zy)
    minus = 1.0 / ((zx - 2.0) + 1j * zy)
    u = 0.5 * (plus + minus)
    v = 0.5j * (plus - minus)
    tu, tv = prob.apply_T0(u, v)
    e2 = prob.runge_fit(tu, tv, 2)["sup_error"]
    e6 = prob.runge_fit(tu, tv, 6)["sup_error"]
    assert e6 < e2


def test_run_command_powers(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "p": {"kind": "linear", "c": 1.0}, "m": 0.5, "omega": 1.0,
        "a": 1, "b": 1, "nx": 41, "ny": 41, "n_max": 1,
    }))
    out = tmp_path / "out"
    rc = pp.run_command("powers", pp.load_config(str(cfg)), str(out))
    assert rc == 0
    files = sorted(p.name for p in out.iterdir())
    assert files == [
        "Z_main_n0_1.csv", "Z_main_n0_k.csv", "Z_main_n1_1.csv", "Z_main_n1_k.csv",
        "Z_succ_n0_1.csv", "Z_succ_n0_k.csv", "Z_succ_n1_1.csv", "Z_succ_n1_k.csv",
    ]
    header = (out / "Z_main_n0_1.csv").read_text().splitlines()[0]
    assert header == "x,y,re,im_i,im_k,im_ik"


def test_loaded_config_defaults(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"p": "zero", "m": 1, "omega": 0, "a": 1, "b": 1}')
    pp.load_config(str(cfg))  # defaults validate
