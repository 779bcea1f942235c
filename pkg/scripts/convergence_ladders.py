"""Print probe-defect ladders for the cyclic-span checks.

Each row is one check; the columns are the largest probe defect at each number
of shift samples.  Convergent rows shrink toward zero; rows with a missing
direction level off.

    python3 scripts/convergence_ladders.py
"""

from __future__ import annotations

from nisv.checks import run_check, sweep

CASES = [
    ("THM-N-DISC", {"n": 0}),
    ("THM-N-DISC", {"n": 2}),
    ("PROP-ZW", {"w": "1"}),
    ("PROP-ZW", {"w": "exp(I*pi/3)"}),
    ("PROP-PN", {"w": "1,-1"}),
    ("EXM-INVERT", {}),
    ("THM-GENERAL", {}),
]


def main() -> None:
    values = [8, 16, 32, 64]
    print(f"{'check':<34}" + "".join(f"{v:>11}" for v in values) + "   monotone")
    for check, params in CASES:
        res = sweep(check, params, "lambda_samples", values)
        row = "".join(f"{r.defects['probe_at_samples']:11.3e}" for r in res.reports)
        label = check + (" " + ",".join(f"{k}={v}" for k, v in params.items()) if params else "")
        print(f"{label:<34}{row}   {res.monotone}")
    r = run_check("LEM-GS")
    print(f"\nlocal derivative approximation: rate {r.defects['observed_rate']:.3f}, final distance {r.defects['distance_final']:.3e}")


if __name__ == "__main__":
    main()
