"""Show that the cyclic span of z + w misses one direction of the target model space.

For each w on the unit circle this prints the orthogonality residual of the
explicit annihilator, its distance from the model space, and the probe-defect
floor it forces, next to the probe defect the two-sided protocol measures.

    python3 scripts/annihilator_demo.py
"""

from __future__ import annotations

import sympy as sp

from nisv.checks import _annihilator, run_check
from nisv.config import Config


def main() -> None:
    cfg = Config()
    print(f"{'w':>16} {'orthogonality':>14} {'in target':>10} {'floor':>8} {'probe':>8}")
    for label in ("exp(I*pi/6)", "exp(I*pi/3)", "exp(I*pi/2)", "exp(2*I*pi/3)", "-1"):
        w = sp.sympify(label)
        d = _annihilator(cfg, w)
        r = run_check("PROP-ZW", {"w": label}, cfg)
        print(
            f"{label:>16} {d['annihilator_orthogonality']:14.2e} {d['annihilator_in_target']:10.2e} "
            f"{d['annihilator_probe_overlap']:8.4f} {r.defects['probe_final']:8.4f}"
        )
    r = run_check("PROP-ZW", {"w": "1"}, cfg)
    print(f"{'1':>16} {'-':>14} {'-':>10} {'-':>8} {r.defects['probe_final']:8.4f}")


if __name__ == "__main__":
    main()
