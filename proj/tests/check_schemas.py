"""Runs the CLI with --json and validates every document against schemas/.

usage: check_schemas.py CLI SCHEMA_DIR SAMPLES_DIR
"""

import copy
import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource


def load_registry(schema_dir):
    schemas = {}
    for path in sorted(pathlib.Path(schema_dir).glob("*.schema.json")):
        doc = json.loads(path.read_text())
        jsonschema.Draft202012Validator.check_schema(doc)
        schemas[doc["$id"]] = doc
    registry = Registry().with_resources((sid, Resource.from_contents(doc)) for sid, doc in schemas.items())
    return schemas, registry


def run(cli, *args):
    proc = subprocess.run([cli, "--json", *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout


def main():
    cli, schema_dir, samples = sys.argv[1:4]
    schemas, registry = load_registry(schema_dir)

    def validator(name):
        return jsonschema.Draft202012Validator(schemas["urn:continuum:" + name], registry=registry)

    cases = [
        ("validate", ["validate", f"{samples}/example.ini"], 0),
        ("predict", ["predict", "--preset", "edge-small"], 0),
        ("predict", ["predict", "--preset", "mist", "--rate", "0"], 0),
        ("predict", ["predict", "--preset", "cloud", "--workload", f"{samples}/edge-small-workload.ini"], 0),
        ("heatmap", ["heatmap", "--resolution", "5"], 0),
        ("heatmap", ["heatmap", "--preset", "edge-large", "--preset", "cloud", "--resolution", "3"], 0),
        ("simulate", ["simulate", "--preset", "edge-large", "--seed", "42", "--duration", "10"], 0),
        ("simulate", ["simulate", "--preset", "edge-small", "--local", "--duration", "10"], 0),
        ("compare", ["compare", "--preset", "cloud", "--preset", "mist", "--repeats", "2", "--duration", "5"], 0),
    ]
    failures = 0
    docs = {}
    for schema, args, want in cases:
        code, out = run(cli, *args)
        label = " ".join(args)
        if code != want:
            print(f"FAIL {label}: exit {code}")
            failures += 1
            continue
        doc = json.loads(out)
        errors = sorted(validator(schema).iter_errors(doc), key=lambda e: list(e.path))
        for e in errors:
            print(f"FAIL {label}: {'/'.join(map(str, e.path))}: {e.message}")
        failures += bool(errors)
        if not errors:
            print(f"ok   {label} ({schema})")
        docs.setdefault(schema, doc)

    # Topology documents on their own, for every preset.
    for preset in ("cloud", "edge-large", "edge-small", "mist"):
        code, out = run(cli, "predict", "--preset", preset)
        errors = list(validator("topology").iter_errors(json.loads(out)["topology"]))
        failures += bool(errors) or code != 0
        print(("ok  " if not errors else "FAIL") + f" topology {preset}")

    # The schemas must reject a broken document, or the checks above prove nothing.
    broken = copy.deepcopy(docs["predict"])
    broken["local"]["viable"] = "yes"
    if validator("predict").is_valid(broken):
        print("FAIL predict schema accepted a malformed verdict")
        failures += 1

    print(f"{failures} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
