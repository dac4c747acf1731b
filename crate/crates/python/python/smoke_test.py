"""Smoke test for the perverse_hodge_py extension module.

Build with `cargo build -p perverse-hodge-py --features extension-module`,
copy target/debug/libperverse_hodge_py.so to perverse_hodge_py.so somewhere on
PYTHONPATH, then run this script.
"""

import json

import perverse_hodge_py as ph

k3 = ph.Model.builtin("k3")
assert k3.n == 1
assert k3.graded_dims == [1, 0, 22, 0, 1]
assert k3.validate()

table = k3.perverse_table()
assert table == [[1, 0, 1], [0, 20, 0], [1, 0, 1]], table
assert k3.structure_checks() == (True, True)
assert k3.so5_dimensions(count=2, seed=7) == [10, 10]

assert ph.goettsche_hodge(1) == table
assert ph.refined_gv(table) == [24, -2]
assert ph.kkv_oracle(2)[2] == [324, -54, 3]

mismatches = ph.compare_tables(table, ph.goettsche_hodge(1))
assert mismatches == [], mismatches

perverse, leray = ph.surface_tables(0, [1, 0, 22, 0, 1], [1] * 24)
assert perverse == [[1, 0, 1], [0, 20, 0], [1, 0, 1]], perverse
assert leray[2][0] == 1

code, out, _ = ph.run_cli(["gv", "--hmax", "2"])
assert code == 0
report = json.loads(out)
assert report["pass"] is True

code, _, err = ph.run_cli(["gv", "--hmax", "0"])
assert code == 2 and "hmax" in err

try:
    ph.Model.builtin("nope")
except ValueError:
    pass
else:
    raise AssertionError("unknown model accepted")

print("smoke test ok", ph.__version__)
