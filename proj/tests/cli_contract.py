"""CLI contract: schema validity, byte-identical reruns, exit codes."""

import json
import os
import subprocess
import sys
from pathlib import Path

import jsonschema

cli, schema_dir, samples = sys.argv[1], Path(sys.argv[2]), Path(sys.argv[3])
schemas = {p.name.removesuffix(".schema.json"): json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
failures = []


def run(args, env=None):
    e = dict(os.environ)
    e.pop("SKEWPROD_PRECISION", None)
    e.update(env or {})
    return subprocess.run([cli, *args], capture_output=True, text=True, env=e, timeout=120)


def check(name, cond, info=""):
    print(("ok   " if cond else "FAIL ") + name + (f": {info}" if info and not cond else ""))
    if not cond:
        failures.append(name)


def json_case(name, args, want_rc=0, env=None):
    first = run([*args, "--json"], env)
    check(f"{name} exit {want_rc}", first.returncode == want_rc, first.stderr.strip())
    if first.returncode not in (0, 3):
        return None
    second = run([*args, "--json"], env)
    check(f"{name} deterministic", first.stdout == second.stdout)
    doc = json.loads(first.stdout)
    try:
        jsonschema.validate(doc, schemas[doc["command"]])
        check(f"{name} schema", True)
    except jsonschema.ValidationError as err:
        check(f"{name} schema", False, err.message)
    return doc


doc = json_case("classify dagger2", ["classify", "--map", "(z^2, w^2 - 2*z)"])
check("classify dagger2 verdict", doc["special"] and doc["kind"] == "dagger2" and doc["zeta"] == "1" and doc["m"] == 1)

doc = json_case("classify not special", ["classify", "--map", str(samples / "not_special.map")])
check("classify failing step", not doc["special"] and doc["failed_step"] == "functional_equation")

doc = json_case("classify chebyshev", ["classify", "--map", str(samples / "chebyshev_pair.map"), "--exhaustive", "--converse-check", "2", "--rationality", "2"])
check("classify chebyshev verdict", doc["p_kind"] == "chebyshev_plus" and doc["q_kind"] == "chebyshev_plus")
check("classify converse", doc["converse_check"]["all_passed"])
check("classify rationality", doc["rationality"]["all_rational"])

doc = json_case("classify conjugate float", ["classify", "--map", str(samples / "conjugated_cubic.map"), "--mode", "float"])
check("classify conjugate verdict", doc["kind"] == "dagger2" and doc["m"] == 1 and doc["residual"] <= 2.0**-128)

doc = json_case("classify irregular", ["classify", "--map", "(z^2, w^2 - 2*z^3)"])
check("classify irregular verdict", doc["regular"] is False and doc["base_form"] is None)

doc = json_case("dickson", ["dickson", "--degree", "3"])
check("dickson D_3", doc["poly"] == "x^3 - 3*a*x")
check("dickson text", run(["dickson", "--degree", "3"]).stdout.strip() == "x^3 - 3*a*x")

doc = json_case("verify-identities", ["verify-identities", "--max-degree", "10"])
check("verify-identities zero failures", doc["failures"] == 0 and doc["checks"] > 0)

doc = json_case("decompose chain", ["decompose", "--factor", "x^2 - 2", "--factor", "x^2 - 2"])
check("decompose chebyshev", doc["found"] and doc["case"] == "chebyshev" and doc["ell"] == ["1", "1"])
doc = json_case("decompose affine", ["decompose", "--factor", "x^2 - 1", "--factor", "(x+1)^2", "--against", "x^2", "--against", "x^2"])
check("decompose affine map", doc["affine_maps"] == ["z + 1"])

doc = json_case("iterate", ["iterate", "--map", str(samples / "dagger2.map"), "--z", "1", "--w", "2", "--n", "2"])
check("iterate fiber", doc["fiber_iterate"] == "w^4 - 4*w^2 + 2" and doc["orbit_point"] == ["1", "2"])

doc = json_case("periodic base", ["periodic", "--map", str(samples / "dagger2.map"), "--period", "2"])
check("periodic count", len(doc["points"]) == 2)
doc = json_case("periodic fiber", ["periodic", "--map", str(samples / "dagger2.map"), "--fiber-over", "1"])
check("periodic fiber multipliers", [p["fiber_multiplier"] for p in doc["points"]] == ["-2", "4"])

doc = json_case("multipliers", ["multipliers", "--map", str(samples / "not_special.map"), "-N", "3"])
check("multipliers flags irrational", doc["rationality"]["all_rational"] is False)

doc = json_case("semiconjugacy", ["semiconjugacy", "--f", "(z^2, w^2 - 2*z)", "--pi", "(u^2, u*v)", "--g", "(u^2, v^2 - 2)"])
check("semiconjugacy holds", doc["holds"] and doc["residual"] == "(0, 0)")

doc = json_case("env precision", ["classify", "--map", "(z^2 - 2, w^2 - 2)", "--mode", "float"], env={"SKEWPROD_PRECISION": "192"})
check("env precision applied", doc["config"]["precision_bits"] == 192)
doc = json_case("flag beats env", ["dickson", "-d", "2", "--precision", "320"], env={"SKEWPROD_PRECISION": "192"})
check("flag precision applied", doc["config"]["precision_bits"] == 320)

# input errors
for name, args, env in [
    ("syntax error", ["classify", "--map", "(z^^2, w^2)"], None),
    ("degree mismatch", ["classify", "--map", "(z^2, w^3)"], None),
    ("unknown subcommand option", ["dickson", "--bogus"], None),
    ("missing subcommand", [], None),
    ("bad env precision", ["dickson", "-d", "2"], {"SKEWPROD_PRECISION": "many"}),
    ("negative exponent", ["dickson", "-d", "2", "--a", "z^-1"], None),
]:
    r = run(args, env)
    check(f"{name} exit 2", r.returncode == 2, f"rc={r.returncode} {r.stderr.strip()}")

# numeric trouble
r = run(["periodic", "--map", "(z^2, w^2)", "--period", "4", "--degree-cap", "8"])
check("degree cap exit 3", r.returncode == 3, f"rc={r.returncode}")

print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
