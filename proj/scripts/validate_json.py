#!/usr/bin/env python3
# Copyright 2026 The qsrank Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Runs every qsrank subcommand with --format json and validates the output."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema

EXAMPLE = "label,a,b,c\na,0,1,1\nb,2,0,2\nc,4,4,0\n"
NOT_QS = "label,a,b,c\na,0,1,1\nb,2,0,2\nc,4,5,0\n"
ARTICLES = "label,articles\na,1\nb,1\nc,2\n"


def main():
    binary, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    with tempfile.TemporaryDirectory() as tmp:
        def write(name, text):
            path = os.path.join(tmp, name)
            with open(path, "w") as f:
                f.write(text)
            return path

        example = write("example.csv", EXAMPLE)
        not_qs = write("not_qs.csv", NOT_QS)
        articles = write("articles.csv", ARTICLES)
        runs = [
            (["rank", example, "--method", "pagerank"], 0),
            (["rank", example, "--method", "pagerank", "--alpha", "1"], 0),
            (["rank", example, "--method", "iw"], 0),
            (["rank", example, "--method", "iw", "--damped"], 0),
            (["rank", example, "--method", "total"], 0),
            (["rank", example, "--method", "ipp", "--articles", articles], 0),
            (["rank", example, "--method", "bt"], 0),
            (["check-qs", example], 0),
            (["check-qs", not_qs], 4),
            (["asymptotics", "--n", "5", "--k", "2", "--check"], 0),
            (["asymptotics", "--structure", "circular", "--n", "8", "--check"], 0),
            (["simulate", "--n", "4", "--k", "3", "--reps", "200", "--seed", "9"], 0),
        ]
        failures = 0
        for args, expected in runs:
            proc = subprocess.run([binary] + args + ["--format", "json"],
                                  capture_output=True, text=True)
            label = " ".join(a if not a.startswith(tmp) else os.path.basename(a)
                             for a in args)
            if proc.returncode != expected:
                print(f"FAIL {label}: exit {proc.returncode}, expected {expected}")
                print(proc.stderr)
                failures += 1
                continue
            try:
                validator.validate(json.loads(proc.stdout))
            except (json.JSONDecodeError, jsonschema.ValidationError) as e:
                print(f"FAIL {label}: {e}")
                failures += 1
                continue
            print(f"ok   {label}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
