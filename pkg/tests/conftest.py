import pytest

from topo_thermo.cli import WORKERS_ENV_VAR


@pytest.fixture(autouse=True)
def _isolate_worker_env(monkeypatch):
    # Tests control the worker-count env var explicitly where they need it.
    monkeypatch.delenv(WORKERS_ENV_VAR, raising=False)
