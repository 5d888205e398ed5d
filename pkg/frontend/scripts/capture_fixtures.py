#!/usr/bin/env python3
"""Capture real service responses as frontend test fixtures.

Run from the repository root after installing the Python package:

    python3 frontend/scripts/capture_fixtures.py
"""

import json
from pathlib import Path

from fastapi.testclient import TestClient

from rrdp.api import create_app

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

SCENARIOS = {
    "warner": {"design": "warner"},
    "uqrr": {"design": "uqrr", "pi_y": 0.6},
    "frd": {"design": "frd"},
}

HYP = {"pi0": 0.2, "pi1": 0.3, "alpha": 0.05}
CONSTRAINTS = {"epsilon": 1.0, "strict": True, "target_power": 0.8, "grid": 0.01}


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    client = TestClient(create_app())
    for name, fields in SCENARIOS.items():
        curve_fields = dict(fields)
        if name == "frd":
            curve_fields["p2"] = 0.25
        dump(f"{name}_curves", client.post(
            "/curves", json={**curve_fields, **HYP, "n": 1000, "grid": 0.01}
        ))
        dump(f"{name}_feasible", client.post(
            "/feasible",
            json={**fields, **HYP, "n": 1000, "mode": "both", **CONSTRAINTS},
        ))
        dump(f"{name}_fixed", client.post(
            "/optimize", json={**fields, **HYP, "n": 1000, **CONSTRAINTS}
        ))
        dump(f"{name}_joint", client.post(
            "/optimize", json={**fields, **HYP, "n_max": 20000, **CONSTRAINTS}
        ))


def dump(name: str, response) -> None:
    assert response.status_code in (200, 422), (name, response.status_code, response.text)
    path = OUT / f"{name}.json"
    path.write_text(json.dumps(response.json(), indent=2) + "\n")
    print(f"wrote {path.relative_to(OUT.parent.parent)} ({response.status_code})")


if __name__ == "__main__":
    main()
