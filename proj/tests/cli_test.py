#!/usr/bin/env python3
"""End-to-end checks of the wpvol command line interface."""

import json
import os
import subprocess
import sys
import tempfile

BIN = sys.argv[1]
FAILURES = []


def run(args, env=None, expect=0):
    merged = dict(os.environ)
    if env:
        merged.update(env)
    proc = subprocess.run([BIN] + args, capture_output=True, text=True, env=merged)
    if proc.returncode != expect:
        FAILURES.append(f"{args}: exit {proc.returncode} != {expect}\n{proc.stderr}")
    return proc


def check(cond, what):
    if not cond:
        FAILURES.append(what)


def main():
    with tempfile.TemporaryDirectory() as tmp:
        cache = os.path.join(tmp, "cache")
        env = {"WP_CACHE_DIR": cache}

        out = run(["volumes", "-g", "1", "-n", "1", "--basis", "wp", "--format", "latex"],
                  env=env)
        check(out.stdout.strip() == r"\frac{L_1^2}{48} + \frac{\pi^2}{12}",
              f"V11 latex: {out.stdout!r}")

        out = run(["volumes", "-g", "0", "-n", "3"], env=env)
        check(out.stdout.strip() == "1", f"V03 table: {out.stdout!r}")

        run(["volumes", "-g", "0", "-n", "2"], env=env, expect=2)

        out = run(["tight", "-g", "0", "-n", "4", "--basis", "moments"], env=env)
        check("invM0^2" in out.stdout and "m1" in out.stdout, f"tight moments: {out.stdout!r}")

        out = run(["tight", "-g", "0", "-n", "3", "--defects", "0"], env=env)
        check(out.stdout.strip() == "1", f"T030: {out.stdout!r}")

        out = run(["tight", "-g", "1", "-n", "1", "--defects", "1", "--format", "json"],
                  env=env)
        payload = json.loads(out.stdout)
        check(payload["basis"] == "wp" and payload["terms"], "T111 json payload")

        # Determinism: warm cache output must be byte-identical.
        cold = run(["volumes", "-g", "1", "-n", "2", "--format", "json"], env=env).stdout
        warm = run(["volumes", "-g", "1", "-n", "2", "--format", "json"], env=env).stdout
        check(cold == warm, "cache determinism")
        check(os.path.isdir(cache) and os.listdir(cache), "cache populated")

        # Weight files: good and malformed.
        weight = {"atoms": [{"kind": "geodesic", "length": 1.0, "weight": 0.02}],
                  "fzzt": None, "mode": "numeric"}
        wfile = os.path.join(tmp, "weight.json")
        with open(wfile, "w") as f:
            json.dump(weight, f)
        out = run(["moments", "--mu", wfile, "-K", "4", "--format", "json"], env=env)
        payload = json.loads(out.stdout)
        check(payload["z_residual"] <= 1e-12, "moments residual")
        check(len(payload["M"]) == 5, "moments length")

        bad = os.path.join(tmp, "bad.json")
        with open(bad, "w") as f:
            f.write('{"atoms": [{"kind": "cone", "angle": 9.0, "weight": 0.1}]}')
        proc = run(["moments", "--mu", bad], env=env, expect=3)
        check("/atoms/0/angle" in proc.stderr, f"diagnostics pointer: {proc.stderr!r}")

        out = run(["jt", "-g", "1", "--beta", "1.0", "--mu", wfile], env=env)
        payload = json.loads(out.stdout)
        check(payload["prefactor_exponent"] == 1, "jt prefactor")
        check(payload["value"] > 0, "jt value positive")

        out = run(["check", "--suite", "decomposition"], env=env)
        payload = json.loads(out.stdout)
        check(payload["pass"] is True, "decomposition suite passes")

        out = run(["check", "--suite", "paths", "--max-complexity", "3"], env=env)
        payload = json.loads(out.stdout)
        check(payload["pass"] is True, "paths suite passes")

    if FAILURES:
        print("CLI TEST FAILURES:")
        for f in FAILURES:
            print(" -", f)
        return 1
    print("cli tests ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
