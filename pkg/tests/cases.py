"""The standard verification case suite shared by acceptance and CLI tests.

Thirteen cases spanning power pairs p in {2, 3, 4}, the mixed pair
(quadratic G against the piecewise 2/4 H), constant/step/bump weights,
interval widths {1/2, 1, 2} and unit balls in dimensions 2 and 3.
"""


def _case(case_id, G, H, weight, domain, mu_list=(1.0,), N=512, restarts=2,
          seed=0, ledger=None):
    cfg = {
        "schema_version": 1,
        "case_id": case_id,
        "young_G": G,
        "young_H": H,
        "weight": weight,
        "domain": domain,
        "mu_list": list(mu_list),
        "solver": {"N": N, "restarts": restarts, "seed": seed},
    }
    if ledger:
        cfg["ledger"] = ledger
    return cfg


def power(p):
    return {"family": "power", "p": p}


PIECEWISE_24 = {"family": "piecewise_power", "p": 2, "q": 4}
UNIT = {"kind": "interval", "a": 0.0, "b": 1.0}
HALF = {"kind": "interval", "a": 0.0, "b": 0.5}
WIDE = {"kind": "interval", "a": 0.0, "b": 2.0}
W_CONST = {"kind": "constant", "value": 1.0}
W_STEP = {"kind": "step", "breakpoint": 0.5, "left": 1.0, "right": 0.0}
W_STEP_WIDE = {"kind": "step", "breakpoint": 1.0, "left": 1.0, "right": 0.5}
W_BUMP = {"kind": "bump", "center": 0.5, "width": 0.15, "amplitude": 2.0, "base": 1.0}
W_BUMP_HALF = {"kind": "bump", "center": 0.25, "width": 0.08, "amplitude": 2.0,
               "base": 1.0}


def suite():
    return [
        _case("p2-unit", power(2), power(2), W_CONST, UNIT),
        _case("p2-half", power(2), power(2), W_CONST, HALF),
        _case("p2-wide", power(2), power(2), W_CONST, WIDE),
        _case("p2-step", power(2), power(2), W_STEP, UNIT),
        _case("p2-bump", power(2), power(2), W_BUMP, UNIT),
        _case("p3-unit", power(3), power(3), W_CONST, UNIT),
        _case("p3-step-wide", power(3), power(3), W_STEP_WIDE, WIDE),
        _case("p4-unit", power(4), power(4), W_CONST, UNIT),
        _case("p4-bump-half", power(4), power(4), W_BUMP_HALF, HALF),
        _case("mixed-unit", power(2), PIECEWISE_24, W_CONST, UNIT,
              mu_list=(1.0, 2.0)),
        _case("mixed-step", power(2), PIECEWISE_24, W_STEP, UNIT),
        _case("ball2-p3", power(3), power(3), W_CONST,
              {"kind": "ball", "radius": 1.0, "dim": 2}, N=384),
        _case("ball3-p2", power(2), power(2), W_CONST,
              {"kind": "ball", "radius": 1.0, "dim": 3}, N=384),
    ]
