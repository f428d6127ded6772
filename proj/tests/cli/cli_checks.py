"""End-to-end checks of giry_cli. Usage: cli_checks.py CLI SCHEMA CASE"""
import json
import os
import subprocess
import sys
import tempfile

CLI, SCHEMA, CASE = sys.argv[1], sys.argv[2], sys.argv[3]
WORK = tempfile.mkdtemp(prefix="giry_cli_")


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def expect(cond, message):
    if not cond:
        print("FAIL:", message)
        sys.exit(1)


def path(name):
    return os.path.join(WORK, name)


def gen_determinism():
    for kind in ("space", "measure", "functional"):
        a, b = path(kind + "_a.fx"), path(kind + "_b.fx")
        for out in (a, b):
            r = run("gen", kind, "--points", "3", "--seed", "7", "--out", out)
            expect(r.returncode == 0, r.stderr)
        with open(a, "rb") as fa, open(b, "rb") as fb:
            expect(fa.read() == fb.read(), kind + " output differs between runs")
    expect(run("gen", "space", "--seed", "7").stdout != run("gen", "space", "--seed", "8", "--points", "5").stdout,
           "different parameters gave the same fixture")


def gen_measure_one_atom():
    r = run("gen", "measure", "--points", "3", "--atoms", "1", "--seed", "4")
    expect(r.returncode == 0, r.stderr)
    expect("P: atom0=1\n" in r.stdout, r.stdout)


def gen_size_cap():
    r = run("gen", "space", "--points", "65")
    expect(r.returncode == 2, "size cap not enforced")


def verify_all():
    r = run("verify", "all", "--seed", "3")
    expect(r.returncode == 0, r.stdout + r.stderr)
    expect("0 failed" in r.stdout, r.stdout)


def verify_lemma_basic_max():
    fx = path("max.fx")
    run("gen", "functional", "--adversarial", "max-over-atoms", "--points", "4", "--atoms", "3", "--seed", "2",
        "--out", fx)
    r = run("verify", "lemma-basic", "--fixture", fx)
    expect(r.returncode == 1, "expected exit 1, got %d" % r.returncode)
    failing = [l for l in r.stdout.splitlines() if l.startswith("[fail] lemma-basic/lemma-basic-")]
    expect(failing, r.stdout)
    # the witness names the item (in the id) and the sets involved
    expect(any("G(chi_S)" in l or "G(SnT)" in l for l in failing), "\n".join(failing))


def verify_equivalence_exhaustive():
    fx = path("two_atoms.fx")
    run("gen", "space", "--points", "2", "--atoms", "2", "--seed", "1", "--out", fx)
    report = path("eq.json")
    r = run("verify", "equivalence", "--fixture", fx, "--exhaustive-denominator", "3", "--json", report)
    expect(r.returncode == 0, r.stdout + r.stderr)
    with open(report) as f:
        checks = {c["id"]: c for c in json.load(f)["checks"]}
    # measures on two atoms with denominator <= 3: 0, 1/3, 1/2, 2/3, 1
    expect(checks["phi-gamma-roundtrip"]["cases"] == 5, checks["phi-gamma-roundtrip"])


def parse_error():
    fx = path("bad.fx")
    with open(fx, "w") as f:
        f.write("points 2\natom 0: 0\natom 1: 1 x\n")
    r = run("verify", "laws", "--fixture", fx)
    expect(r.returncode == 2, "expected exit 2, got %d" % r.returncode)
    expect(fx + ":3:" in r.stderr, r.stderr)


def json_schema():
    import jsonschema

    with open(SCHEMA) as f:
        schema = json.load(f)
    fx = path("sq.fx")
    run("gen", "functional", "--adversarial", "square-at-point", "--seed", "5", "--out", fx)
    for args, code in ((["verify", "all"], 0), (["verify", "lemma-basic", "--fixture", fx], 1)):
        out = path("report.json")
        r = run(*args, "--json", out)
        expect(r.returncode == code, "exit %d for %s" % (r.returncode, args))
        with open(out) as f:
            report = json.load(f)
        jsonschema.validate(report, schema)
        expect((report["counts"]["fail"] == 0) == (r.returncode == 0), "exit code disagrees with the report")


def adversarial_declared():
    ids = {"weakly-averaging": "property-weakly-averaging", "affine": "property-affine",
           "preserves-limits": "property-preserves-limits"}
    items = ["i", "ii", "iii", "iv", "v", "vi"]
    for kind in ("max-over-atoms", "square-at-point", "tail-limit"):
        fx = path(kind + ".fx")
        run("gen", "functional", "--adversarial", kind, "--points", "5", "--atoms", "3", "--seed", "9", "--out", fx)
        declared = set()
        with open(fx) as f:
            for line in f:
                words = line.split()
                if words and words[0] == "violates":
                    declared |= {ids[w] for w in words[1:]}
                if words and words[0] == "lemma-items":
                    declared |= {"lemma-basic-" + items[int(w) - 1] for w in words[1:]}
        expect(declared, kind + " declares nothing")
        out = path(kind + ".json")
        run("verify", "lemma-basic", "--fixture", fx, "--json", out)
        with open(out) as f:
            checks = json.load(f)["checks"]
        failed = {c["id"] for c in checks if c["status"] == "fail"}
        expect(failed == declared, "%s fails %s, declared %s" % (kind, sorted(failed), sorted(declared)))
        r = run("verify", "equivalence", "--fixture", fx)
        expect(r.returncode == 1 and "phi-accepts-fixture-functionals" in r.stdout, kind + " accepted by phi")


globals()[CASE.replace("-", "_")]()
print("ok", CASE)
