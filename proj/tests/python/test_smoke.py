import json
import math
import os
import pathlib
import subprocess

import jsonschema
import pytest

import zetalab

SCHEMAS = pathlib.Path(os.environ.get("ZETALAB_SCHEMAS", pathlib.Path(__file__).parents[2] / "docs" / "schemas"))
BIN = os.environ.get("ZETALAB_BIN")

SHIFT_TARGETS = {
    "phi": {"type": "shift", "k0": 7, "region": [0.6, 0.9, -1, 1], "density": 3},
    "zeta": {"type": "shift", "k0": 7, "region": [0.6, 0.9, -1, 1], "density": 3},
}

CASES = {
    "eval": {"function": {"family": "riemann"}, "s": [2, 0]},
    "density": {
        "phi": {"family": "riemann"},
        "zeta": {"alpha": 0.7},
        "independence": {"mode": "generic_real_h", "h": 1},
        "targets": SHIFT_TARGETS,
        "N": 50,
        "epsilon": 0.1,
    },
    "sweep": {
        "phi": {"family": "dirichlet_l", "modulus": 4, "index": 1},
        "zeta": {"alpha": 0.7},
        "independence": {"mode": "rational_exp", "a": 2, "b": 1},
        "targets": SHIFT_TARGETS,
        "N": 50,
        "epsilons": [0.1, 1, "inf"],
    },
    "fourier": {"frequency": {"k": {"2": 1}, "l": {"0": -1}}, "N": [10, 21], "independence": {"h": 1}, "alpha": 0.7},
    "meansquare": {"function": {"family": "riemann"}, "sigma": 2, "mode": "discrete", "N": 200},
    "diststats": {"coordinate": {"prime": 3}, "independence": {"h": 1}, "N": 1000},
    "check": {"function": {"family": "riemann"}, "x": 500, "shifts": 50, "sigma_grid": [1.5, 2]},
}


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def test_special_values():
    assert abs(zetalab.riemann_zeta(2) - math.pi**2 / 6) < 1e-10
    assert abs(zetalab.hurwitz_zeta(2, 1.0) - math.pi**2 / 6) < 1e-10
    assert abs(zetalab.periodic_hurwitz(2, 1.0, [1, -1]) - math.pi**2 / 12) < 1e-8
    with pytest.raises(zetalab.PoleError):
        zetalab.riemann_zeta(1)
    with pytest.raises(zetalab.DomainError):
        zetalab.hurwitz_zeta(2, -1.0)


@pytest.mark.parametrize("command", sorted(CASES))
def test_payloads_match_schema(command):
    payload = zetalab.run(command, CASES[command])
    jsonschema.validate(payload, schema(command))
    jsonschema.validate(CASES[command], schema("config"))


def test_error_mapping():
    with pytest.raises(zetalab.RegimeError):
        cfg = dict(CASES["density"], alpha_class="rational", strict=True)
        zetalab.run("density", cfg)
    with pytest.raises(zetalab.DomainError):
        zetalab.run("eval", {"function": {"family": "riemann"}, "s": 2, "bogus": 1})
    code, out, err = zetalab.run_cli(["eval", "--params", json.dumps({"function": {"family": "riemann"}, "s": 1})])
    assert code == 2 and out == "" and err.startswith("PoleError")


@pytest.mark.skipif(BIN is None, reason="CLI binary location not provided")
def test_cli_binary_is_deterministic(tmp_path):
    doc = {"meansquare": dict(CASES["meansquare"], mode="random", N=300, P_max=10, M_max=300,
                              function={"family": "hurwitz", "alpha": 0.7})}
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps(doc))
    jsonschema.validate(doc, schema("config"))
    runs = [subprocess.run([BIN, "meansquare", "--config", str(cfg), "--seed", "4"], capture_output=True, check=True).stdout
            for _ in range(2)]
    assert runs[0] == runs[1]
    payload = json.loads(runs[0])
    jsonschema.validate(payload, schema("meansquare"))
    assert payload["seed"] == 4
    csv = subprocess.run([BIN, "fourier", "--params", json.dumps(CASES["fourier"])], capture_output=True, check=True)
    assert csv.stdout.decode().splitlines()[0] == "N,direct_re,direct_im,closed_re,closed_im,abs_diff,bound"
