import json
import os

# Sample input documents for every CLI command
DATA_DIR = "data"

UNIT_INTERVAL = {"components": [{"interval": [0.0, 1.0]}]}
INTEGERS = {"components": [{"point": float(k)} for k in range(0, 5)]}
FIVE_POINTS = {"components": [{"point": x} for x in (0.0, 0.25, 0.5, 0.75, 1.0)]}
MIXED = {"components": [{"point": 0.0}, {"point": 0.5}, {"interval": [1.0, 2.0]}]}

SAMPLES = {
    "timescale_mixed.json": MIXED,
    "fracint_integers.json": {
        "timescale": INTEGERS,
        "psi": {"name": "identity", "params": {}},
        "function": {"name": "constant", "params": {"value": 1.0}},
        "alpha": 0.5,
        "t": 2.0,
    },
    "fracderiv_power.json": {
        "timescale": UNIT_INTERVAL,
        "psi": {"name": "power", "params": {"exponent": 2.0}},
        "function": {"name": "psi_power", "params": {"exponent": 2.0}},
        "alpha": 0.5,
        "beta": 0.5,
        "t": 1.0,
    },
    "ivp_constant.json": {
        "timescale": UNIT_INTERVAL,
        "psi": {"name": "identity", "params": {}},
        "alpha": 0.5,
        "beta": 1.0,
        "rhs": {"name": "constant", "params": {"value": 1.0}},
        "L": 0.0,
        "M": 1.0,
    },
    "ivp_cosine.json": {
        "timescale": UNIT_INTERVAL,
        "psi": {"name": "identity", "params": {}},
        "alpha": 0.5,
        "beta": 1.0,
        "rhs": {"name": "scaled-cosine", "params": {"scale": 0.5}},
        "L": 0.5,
        "M": 0.5,
    },
    "control_real.json": {
        "timescale": UNIT_INTERVAL,
        "psi": {"name": "identity", "params": {}},
        "alpha": 1.0,
        "beta": 0.0,
        "rhs": {"name": "constant", "params": {"value": 0.0}},
        "b_gain": 1.0,
        "y1": 1.0,
        "M_W": 1.0,
    },
    "control_discrete.json": {
        "timescale": FIVE_POINTS,
        "psi": {"name": "identity", "params": {}},
        "alpha": 0.5,
        "beta": 1.0,
        "rhs": {"name": "constant", "params": {"value": 1.0}},
        "b_gain": 1.0,
        "y1": 2.0,
    },
}

os.makedirs(DATA_DIR, exist_ok=True)
for filename, document in SAMPLES.items():
    path = os.path.join(DATA_DIR, filename)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(document, f, indent=2)
        f.write("\n")
    print(f"Wrote {path}")
