import os
import pathlib
import shutil

import pytest

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def data():
    return DATA


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("ADSGEOM_CLI") or shutil.which("adsgeom")
    if not path:
        pytest.skip("adsgeom executable not available; set ADSGEOM_CLI")
    return path
