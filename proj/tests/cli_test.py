"""End-to-end checks of gabor-lab: exit codes, output files and the report schema."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

TOOL = sys.argv[1]
SCHEMA = json.loads(pathlib.Path(sys.argv[2]).read_text())
VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)
failures = []


def run(args, expect):
    proc = subprocess.run([TOOL, *args], capture_output=True, text=True)
    if proc.returncode != expect:
        failures.append(f"{args}: exit {proc.returncode}, expected {expect}\n{proc.stderr}")
    return proc


def validate(doc, label):
    errors = sorted(VALIDATOR.iter_errors(doc), key=str)
    for e in errors:
        failures.append(f"{label}: schema violation at {list(e.path)}: {e.message}")


def check_stdout(args, expect=0):
    proc = run(args, expect)
    if proc.returncode == expect:
        doc = json.loads(proc.stdout)
        validate(doc, " ".join(args))
        return doc
    return None


small = ["--L", "48", "--lattice", "4x4"]
check_stdout(["density", *small, "--jitter", "0.5", "--N", "6,12,48"])
fb = check_stdout(["framebounds", *small])
check_stdout(["framebounds", *small, "--iterative"])
check_stdout(["dual", *small])
check_stdout(["localize", *small, "--reflattice", "4x4", "--N", "6,12,24"])
ms = check_stdout(["measure", *small, "--N", "12,24"])
check_stdout(["excess", *small, "--jitter", "1", "--fraction", "0.25"])
check_stdout(["excess", *small, "--strategy", "random", "--fraction", "0.25"])
check_stdout(["suite", "--only", "12"])
for name in ["harmonic", "no_hap", "weak_not_strong", "perturbed_basis", "column_not_row",
             "double_index", "dual_localized_not_self", "infinite_density_bessel"]:
    check_stdout(["counterexample", name, "--size", "16"])

if fb and fb["result"]["A"] > fb["result"]["B"]:
    failures.append("framebounds: A > B")
if ms and not ms["result"]["identities_hold"]:
    failures.append("measure: identities_hold is false")

# Usage errors.
bad = run(["framebounds", "--L", "144", "--lattice", "4x5"], 1)
if "divide" not in bad.stderr:
    failures.append("lattice error message does not name the divisibility rule")
run(["framebounds", "--L", "1024", "--lattice", "8x8"], 1)
run(["measure", "--L", "1024", "--lattice", "8x8"], 1)
run(["framebounds", "--window", "triangle"], 1)
run(["counterexample", "unknown_name"], 1)
run(["nosuchcommand"], 1)
run(["density", "--format", "xml"], 1)
run(["--help"], 0)

with tempfile.TemporaryDirectory() as tmp:
    out = pathlib.Path(tmp)

    # Config file values override flags.
    cfg = out / "run.cfg"
    cfg.write_text("# small run\nL = 48\nlattice = 4x4\n")
    doc = check_stdout(["framebounds", "--L", "144", "--lattice", "4x6", "--config", str(cfg)])
    if doc and (doc["config"]["L"] != 48 or doc["result"]["n_points"] != 144):
        failures.append("config file did not override flags")
    (out / "bad.cfg").write_text("colour = red\n")
    run(["density", "--config", str(out / "bad.cfg")], 1)

    # File outputs, plots and separated metadata.
    d = out / "fb"
    run(["framebounds", *small, "--out", str(d), "--plot"], 0)
    for f in ["framebounds.json", "metadata.json", "window_stft.svg"]:
        if not (d / f).exists():
            failures.append(f"missing output {f}")
    if (d / "framebounds.json").exists():
        payload = json.loads((d / "framebounds.json").read_text())
        validate(payload, "framebounds --out")
        if "timestamp" in json.dumps(payload):
            failures.append("payload contains a timestamp")
    d2 = out / "fb2"
    run(["framebounds", *small, "--out", str(d2)], 0)
    if (d / "framebounds.json").exists() and (d2 / "framebounds.json").exists():
        if (d / "framebounds.json").read_text() != (d2 / "framebounds.json").read_text():
            failures.append("payload is not reproducible")

    d = out / "loc"
    run(["localize", *small, "--out", str(d), "--plot"], 0)
    for f, header in [("column_profile.csv", "N,eps"), ("row_profile.csv", "N,eps"),
                      ("envelope.csv", "dx,domega,value")]:
        p = d / f
        if not p.exists() or p.read_text().splitlines()[0] != header:
            failures.append(f"{f}: missing or wrong header")

    d = out / "ms"
    run(["measure", *small, "--N", "12", "--out", str(d), "--format", "csv"], 0)
    p = d / "measure.csv"
    if not p.exists() or p.read_text().splitlines()[0] != "N,center_x,center_w,avg":
        failures.append("measure.csv: missing or wrong header")

    rep = out / "ce.json"
    run(["counterexample", "harmonic", "--size", "8", "--report", str(rep)], 0)
    if rep.exists():
        validate(json.loads(rep.read_text()), "counterexample --report")
    else:
        failures.append("counterexample --report wrote nothing")

    d = out / "den"
    run(["density", *small, "--out", str(d), "--format", "csv"], 0)
    p = d / "points.csv"
    if not p.exists() or p.read_text().splitlines()[0] != "x,omega":
        failures.append("points.csv: missing or wrong header")

for f in failures:
    print("FAIL:", f)
print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
