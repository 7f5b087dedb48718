import json
import os
import pathlib
import subprocess

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]
SCHEMAS = ROOT / "docs" / "schemas"
DATA = pathlib.Path(os.environ.get("KSTAR_DATA_DIR", ROOT / "data"))


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def cli():
    exe = os.environ.get("KSTAR_CLI", str(ROOT / "build" / "tools" / "kstar"))
    if not pathlib.Path(exe).exists():
        pytest.skip("kstar executable not built")

    def run(*args, expect=0):
        proc = subprocess.run([exe, *map(str, args)], capture_output=True, text=True)
        assert proc.returncode == expect, proc.stderr
        return proc.stdout

    return run


@pytest.fixture
def validate():
    jsonschema = pytest.importorskip("jsonschema")
    referencing = pytest.importorskip("referencing")
    resources = []
    for path in SCHEMAS.glob("*.schema.json"):
        contents = json.loads(path.read_text())
        resources.append((path.name, referencing.Resource.from_contents(contents)))
    registry = referencing.Registry().with_resources(resources)

    def check(doc, name):
        schema = registry[f"{name}.schema.json"].contents
        jsonschema.Draft202012Validator(schema, registry=registry).validate(doc)

    return check
