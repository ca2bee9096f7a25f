"""A tour of the batch front end: every result the CLI emits is exact JSON.

The same dispatch function backs `gausslab <subcommand>`; reports carry the
command, exact results (cyclotomic values as {order, coeffs}), pass/fail
verdicts with witnesses, and a timing field that is excluded from the
byte-stability contract.
"""

import json

from gausslab.cli import dispatch
from gausslab.corpus import corpus

jobs = corpus()

# A single fixture end to end: the Z/2 form whose Gauss sum is 1 + i.
report = dispatch("gauss-sum", jobs["exeasy-z2"]["input"])
print("gauss-sum on the Z/2 fixture:")
print(json.dumps(report["result"], sort_keys=True))

# Verdicts carry witnesses; this descriptor fails its chain on purpose.
bad = dict(jobs["diag-x3-f4-hd"]["input"])
bad["datum"] = json.loads(json.dumps(bad["datum"]))
bad["datum"]["terms"][0]["a"] = [0, 1]  # coefficient w: kernel leaves F_4
report = dispatch("hasse-davenport", bad)
print("\nchain check with a non-rational kernel (expected failure):")
for check in report["checks"]:
    print("  ", check["name"], "->", check["pass"])

# The full bundled battery: every fixture must pass on a clean build.
report = dispatch("suite", {})
print("\nsuite:", "all fixtures pass" if report["ok"] else "FAILURES",
      f"({len(report['result']['fixtures'])} fixtures)")

# Shell equivalents:
#   gausslab gauss-sum --input exeasy.json
#   gausslab zeta --input vdgv.json --format csv
#   gausslab suite
#   GAUSSLAB_CAP=2097152 gausslab char-sum --input datum.json --ext 4 --cap-override
