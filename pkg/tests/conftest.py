import json
from importlib import resources

import jsonschema
import pytest
from referencing import Registry, Resource


def _schemas() -> dict:
    root = resources.files("bohrharm") / "schemas"
    return {p.name: json.loads(p.read_text()) for p in root.iterdir() if p.name.endswith(".json")}


@pytest.fixture(scope="session")
def validate():
    """``validate(instance, "series.schema.json")`` raises on mismatch."""
    schemas = _schemas()
    registry = Registry().with_resources((name, Resource.from_contents(s)) for name, s in schemas.items())

    def check(instance, name: str) -> None:
        jsonschema.Draft202012Validator(schemas[name], registry=registry).validate(instance)

    return check
