"""Run every subcommand with --format json and validate the output against the schema."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

CASES = [
    (["verify", "--group", "ab:5", "--quad", "(0,1);(1,0);(1,2);(1,4)"], 0),
    (["verify", "--group", "alt:5", "--quad", "();();();()"], 1),
    (["search", "--group", "alt:5"], 1),
    (["search", "--group", "psl2:13", "--strategy", "macbeath", "--type1", "6,6,6", "--type2", "7,7,7"], 0),
    (["search", "--group", "alt:7", "--strategy", "random"], 0),
    (["triple", "--group", "psl2:7", "--r", "2", "--s", "3", "--t", "7"], 0),
    (["triple", "--group", "alt:5", "--r", "2", "--s", "3", "--t", "7"], 1),
    (["classify", "--group", "psl2:11", "--pair", "[[1,1],[0,1]];[[0,10],[1,0]]"], 0),
    (["classify", "--group", "psl2:49", "--traces", "3,4,2"], 0),
    (["classify", "--group", "alt:6", "--pair", "(1 2 3);(1 2)(3 4)"], 0),
    (["estimate", "--group", "psl2:13", "--samples", "300", "--components"], 0),
    (["estimate", "--group", "ab:5", "--samples", "300"], 0),
    (["stats", "--group", "psl2:16", "--samples", "500"], 0),
    (["stats", "--group", "alt:7", "--samples", "200"], 0),
    (["exact", "--group", "ab:5"], 0),
    (["classes", "--group", "psl2:8"], 0),
    (["frobenius", "--group", "alt:5", "--x", "2", "--y", "2", "--z", "2"], 0),
    (["frobenius", "--group", "psl2:7", "--x", "1", "--y", "2", "--z", "3", "--method", "character"], 0),
    (["chartable", "--group", "alt:5"], 0),
    (["zeta", "--group", "psl2:7", "--s", "1.5"], 0),
    (["zeta", "--degrees", "1,3,3,4,5"], 0),
    (["hurwitz", "--p", "7", "--e", "1"], 0),
    (["hurwitz", "--p", "5", "--e", "1"], 1),
    (["triangle", "--r", "2", "--s", "3", "--t", "7"], 0),
    (["triangle", "--r", "2", "--s", "3", "--t", "5"], 0),
    (["classes", "--group", "foo:3"], 2),
    (["classes", "--group", "alt:100"], 3),
]


def main() -> int:
    binary, schema_path = sys.argv[1], sys.argv[2]
    schema = json.loads(Path(schema_path).read_text())
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    with tempfile.TemporaryDirectory() as cache:
        for args, expected in CASES:
            proc = subprocess.run([binary, *args, "--format", "json"], capture_output=True, text=True,
                                  env={"BEAUVILLE_CACHE_DIR": cache})
            label = " ".join(args)
            try:
                doc = json.loads(proc.stdout)
            except json.JSONDecodeError:
                print(f"FAIL {label}: stdout is not JSON")
                failures += 1
                continue
            errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
            if proc.returncode != expected or doc.get("exit_code") != expected:
                print(f"FAIL {label}: exit {proc.returncode}, expected {expected}")
                failures += 1
            elif errors:
                print(f"FAIL {label}: {errors[0].message} at {list(errors[0].path)}")
                failures += 1
            else:
                print(f"ok   {label}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
