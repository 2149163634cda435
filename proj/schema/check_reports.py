"""Run the qgx CLI on small inputs and validate every JSON report against the schema."""
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

RUNS = [
    ["rmatrix", "--series", "c", "--n", "2", "--braid", "--kfit", "--dump"],
    ["rmatrix", "--series", "a", "--n", "3", "--braid"],
    ["verify", "--series", "c", "--n", "2", "--variant", "tilde", "--bound", "3"],
    ["verify", "--series", "a", "--n", "2", "--variant", "special", "--groups", "abe"],
    ["reps", "--series", "c", "--n", "2", "--theta", "0.3", "--lambda-grid", "4", "--demo"],
    ["reps", "--model", "shift-usp2", "--trunc", "6", "--q", "0.5", "--lambda-grid", "2"],
    ["classical", "--group", "sot", "--n", "2", "--trials", "10", "--branch", "--closure"],
    ["classical", "--group", "uspt", "--n", "2", "--trials", "10", "--seed", "7"],
]


def main() -> int:
    qgx, schema_path = sys.argv[1], sys.argv[2]
    schema = json.loads(pathlib.Path(schema_path).read_text())
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        paths = []
        for i, args in enumerate(RUNS):
            out = pathlib.Path(tmp) / f"r{i}.json"
            proc = subprocess.run([qgx, "--json", "--out", str(out), *args], capture_output=True, text=True)
            if proc.returncode != 0:
                print(f"FAIL exit {proc.returncode}: {' '.join(args)}\n{proc.stderr}")
                failures += 1
                continue
            paths.append(str(out))
        summary = pathlib.Path(tmp) / "summary.json"
        proc = subprocess.run([qgx, "--json", "--out", str(summary), "report", *paths], capture_output=True, text=True)
        if proc.returncode != 0:
            print(f"FAIL report exit {proc.returncode}\n{proc.stderr}")
            failures += 1
        for p in [*paths, str(summary)]:
            doc = json.loads(pathlib.Path(p).read_text())
            errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
            for e in errors:
                print(f"FAIL {doc.get('kind')}: {list(e.path)}: {e.message}")
            failures += len(errors)
            if not errors:
                print(f"ok {doc.get('kind')}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
