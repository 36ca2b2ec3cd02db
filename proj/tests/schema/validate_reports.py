# Copyright 2026 The cwm-verify Authors.
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

"""Validates `cwm verify/reward --json` output against the report schema."""

import argparse
import copy
import json
import os
import subprocess
import sys
import tempfile

import jsonschema

RUNS = [
    ("verify", "tic_tac_toe", "builtin:tic_tac_toe"),
    ("verify", "kuhn_poker", "builtin:mutant_stub_resampler"),
    ("verify", "leduc_poker", "builtin:mutant_mutating"),
    ("verify", "generalized_tic_tac_toe", "builtin:generalized_tic_tac_toe"),
    ("verify", "tic_tac_toe", "builtin:mutant_syntax_error"),
    ("reward", "leduc_poker", "builtin:leduc_poker"),
    ("reward", "kuhn_poker", "builtin:mutant_no_resampler"),
    ("reward", "tic_tac_toe", "builtin:mutant_hanging"),
    ("reward", "tic_tac_toe", "builtin:mutant_missing_api"),
]


def run(cwm, command, game, candidate, out_path):
    args = [cwm, command, "--game", game, "--candidate", candidate,
            "--json", out_path]
    if command == "verify":
        args += ["--fuzz-n", "20", "--info-n", "20"]
    else:
        args += ["--n", "20", "--timeout", "2"]
    subprocess.run(args, check=True, stdout=subprocess.DEVNULL)
    with open(out_path) as f:
        return json.load(f)


def check_consistency(report):
    for tier in report["tiers"]:
        passed = sum(1 for c in tier["checks"] if c["passed"])
        assert tier["passed"] == passed, tier["tier"]
        assert tier["total"] == len(tier["checks"]), tier["tier"]
    breakdown = report["reward"]
    assert breakdown["tier_scores"].keys() == breakdown["exact"]["tier_scores"].keys()
    assert abs(sum(breakdown["weights_used"].values()) - 1.0) < 1e-12


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--cwm", required=True)
    parser.add_argument("--schema", required=True)
    args = parser.parse_args()

    with open(args.schema) as f:
        schema = json.load(f)
    validator_class = jsonschema.validators.validator_for(schema)
    validator_class.check_schema(schema)
    validator = validator_class(schema)

    failures = 0
    reports = []
    with tempfile.TemporaryDirectory() as tmp:
        for i, (command, game, candidate) in enumerate(RUNS):
            report = run(args.cwm, command, game, candidate,
                         os.path.join(tmp, "report%d.json" % i))
            errors = sorted(validator.iter_errors(report), key=str)
            label = "%s %s %s" % (command, game, candidate)
            try:
                check_consistency(report)
            except AssertionError as e:
                errors.append("inconsistent: %s" % e)
            if errors:
                failures += 1
                print("FAIL", label)
                for error in errors:
                    print("   ", getattr(error, "message", error))
            else:
                print("ok  ", label)
            reports.append(report)

    broken = copy.deepcopy(reports[0])
    broken["reward"]["reward"] = 1.5
    broken["tiers"][0]["tier"] = "bogus"
    if validator.is_valid(broken):
        failures += 1
        print("FAIL schema accepts an out-of-range reward and unknown tier")
    else:
        print("ok   schema rejects a corrupted report")

    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
