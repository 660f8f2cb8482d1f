"""End-to-end run on the pentagon: the smallest three-quadric example.

Prints the full pipeline report for the standard Delzant pentagon, whose
Lagrangian total space is a genus-5 surface bundle over a 3-torus.
"""

import json

from hamlag.cli import PipelineOptions, print_human_summary, run_pipeline
from hamlag.instances import parse_instance_text

PENTAGON = {
    "format": "polytope",
    "name": "pentagon",
    "a": [["1", "0"], ["0", "1"], ["-1", "0"], ["0", "-1"], ["-1", "-1"]],
    "b": ["0", "0", "2", "2", "3"],
}


def main():
    instance = parse_instance_text(json.dumps(PENTAGON))
    stages = ["validate", "generic", "delzant", "embed", "classify", "sample", "lagrangian"]
    document, code = run_pipeline(instance, stages, PipelineOptions(count=200, seed=11))
    print_human_summary(document)
    classify = next(s for s in document["stages"] if s["name"] == "classify")
    print()
    print("classification detail:")
    print(json.dumps(classify["result"], indent=2, sort_keys=True))
    raise SystemExit(code)


if __name__ == "__main__":
    main()
