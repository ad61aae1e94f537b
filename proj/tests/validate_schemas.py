#!/usr/bin/env python3
"""Run each JSON-emitting subcommand and validate its output against the shipped schemas."""

import argparse
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource


def load_registry(schema_dir):
    schemas = {}
    for path in sorted(schema_dir.glob("*.schema.json")):
        doc = json.loads(path.read_text())
        schemas[path.name.removesuffix(".schema.json")] = doc
    registry = Registry().with_resources(
        (doc["$id"], Resource.from_contents(doc)) for doc in schemas.values()
    )
    return schemas, registry


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("cli")
    ap.add_argument("schemas", type=pathlib.Path)
    ap.add_argument("data", type=pathlib.Path)
    args = ap.parse_args()

    schemas, registry = load_registry(args.schemas)
    data = args.data
    runs = [
        ("stems", ["stems", "--fasta", data / "pkb092.fasta"]),
        ("stems", ["stems", "--seq", "CUACGAUAG", "--all-substems", "--min-loop", "0"]),
        ("qubo", ["qubo", "--fasta", data / "pkb092.fasta"]),
        ("qubo", ["qubo", "--seq", "GGGAAAUCCCAGGAAAUCC", "--domains", "--cp", "-0.5"]),
        ("solve", ["solve", "--method", "brute", "--dbn", data / "small.dbn"]),
        ("solve", ["solve", "--method", "qaoa-x", "--dbn", data / "small.dbn", "--pmax", "3", "--timestamps"]),
        ("solve", ["solve", "--method", "qaoa-xy", "--fasta", data / "cuacgauag.fasta", "--gate-counts",
                   "--noise-p2", "0.01", "--readout", "0.02,0.03"]),
        ("solve", ["solve", "--method", "qaoa-x", "--seq", "AAAAAAAAAA"]),
        ("score", ["score", "--seq", "CUACGAUAG", "--reference", "(((...)))", "--prediction", "((.....))"]),
        ("score", ["score", "--reference-file", data / "small.dbn", "--prediction-file", data / "small.dbn"]),
        ("sweep_levels", ["sweep", "levels", "--dbn", data / "small.dbn", "--levels", "2,3"]),
        ("sweep_noise", ["sweep", "noise", "--dbn", data / "small.dbn", "--rates", "0,0.01", "--readout", "0.02"]),
        ("warmup", ["warmup", "--fasta", data / "cuacgauag.fasta", "--grid", "4", "--polish", "10"]),
    ]

    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        runs.append(("config", None))
        for k, (name, argv) in enumerate(runs):
            if argv is None:
                doc = json.loads((data / "config" / "default.json").read_text())
                label = "data/config/default.json"
            else:
                out = pathlib.Path(tmp) / f"out{k}.json"
                cmd = [args.cli, *map(str, argv), "--output", str(out)]
                label = " ".join(map(str, cmd[1:]))
                proc = subprocess.run(cmd, capture_output=True, text=True)
                if proc.returncode != 0:
                    print(f"FAIL {label}: exit {proc.returncode}: {proc.stderr.strip()}")
                    failures += 1
                    continue
                doc = json.loads(out.read_text())
            validator = jsonschema.Draft202012Validator(
                schemas[name], registry=registry, format_checker=jsonschema.FormatChecker()
            )
            errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
            if errors:
                failures += 1
                print(f"FAIL {label} against {name}:")
                for e in errors[:5]:
                    print(f"  {'/'.join(map(str, e.path))}: {e.message}")
            else:
                print(f"ok   {label}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
