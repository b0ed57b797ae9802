import json
import os
import pathlib
import subprocess

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def schemas():
    directory = pathlib.Path(os.environ.get("OTTER_SCHEMAS", ROOT / "schemas"))
    return {p.name.split(".")[0]: json.loads(p.read_text()) for p in directory.glob("*.schema.json")}


@pytest.fixture(scope="session")
def otter_bin():
    path = os.environ.get("OTTER_BIN", str(ROOT / "build" / "otter"))
    if not pathlib.Path(path).exists():
        pytest.skip(f"otter binary not found at {path}")

    def run(*args, check=True):
        proc = subprocess.run([path, *map(str, args)], capture_output=True, text=True)
        if check and proc.returncode != 0:
            raise AssertionError(f"exit {proc.returncode}: {proc.stderr}")
        return proc

    return run
