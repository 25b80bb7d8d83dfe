"""Validate model artifacts against docs/artifact.schema.json.

usage: validate_artifact.py SCHEMA ARTIFACT [ARTIFACT ...]

Each artifact must validate. Mutated copies of the first artifact must not,
which keeps the schema from passing vacuously.
"""

import copy
import json
import sys

import jsonschema


def mutations(artifact):
    a = copy.deepcopy(artifact)
    a["format_version"] = "2.0.0"
    yield "major version 2", a

    a = copy.deepcopy(artifact)
    del a["background"]
    yield "missing background", a

    a = copy.deepcopy(artifact)
    a["model"]["learner"] = "svm"
    yield "unknown learner", a

    a = copy.deepcopy(artifact)
    a["model"]["body"]["type"] = "forest"
    yield "unknown body type", a

    a = copy.deepcopy(artifact)
    a["preprocessor"]["scaler"]["sigma"] = [-1.0]
    yield "negative sigma", a

    a = copy.deepcopy(artifact)
    a["surprise"] = True
    yield "unexpected top-level key", a


def main(argv):
    if len(argv) < 3:
        print(__doc__.strip(), file=sys.stderr)
        return 2
    with open(argv[1]) as f:
        schema = json.load(f)
    validator_cls = jsonschema.validators.validator_for(schema)
    validator_cls.check_schema(schema)
    validator = validator_cls(schema)

    failures = 0
    artifacts = []
    for path in argv[2:]:
        with open(path) as f:
            artifact = json.load(f)
        artifacts.append(artifact)
        errors = sorted(validator.iter_errors(artifact), key=lambda e: list(e.absolute_path))
        if errors:
            failures += 1
            print(f"INVALID {path}: {errors[0].message} at /{'/'.join(map(str, errors[0].absolute_path))}")
        else:
            print(f"valid {path} ({artifact['model']['learner']})")

    for name, mutated in mutations(artifacts[0]):
        if validator.is_valid(mutated):
            failures += 1
            print(f"ACCEPTED mutation: {name}")
        else:
            print(f"rejected mutation: {name}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
