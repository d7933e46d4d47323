import json
import sys
from importlib import resources
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def schema():
    jsonschema = pytest.importorskip("jsonschema")

    def check(name, instance):
        text = resources.files("expdom").joinpath("schemas", f"{name}.schema.json").read_text()
        jsonschema.validate(instance, json.loads(text))

    return check


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
