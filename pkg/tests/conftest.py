import json
import logging
import os
from pathlib import Path

import pytest

from speed_scaling_analyzer.models.job import Instance
from speed_scaling_analyzer.models.power import PowerParams
from speed_scaling_analyzer.models.trace import SimConfig
from tests.utils.data_factory import InstanceFactory


@pytest.fixture
def params() -> PowerParams:
    """alpha = 3, g = 2, L = 1; the critical speed is exactly 1."""
    return PowerParams(alpha=3.0, g=2.0, L=1.0)


@pytest.fixture
def params_alpha2() -> PowerParams:
    """alpha = 2, g = 1; critical speed 1, beta = c = 4.5."""
    return PowerParams(alpha=2.0, g=1.0, L=1.0)


@pytest.fixture
def sim_config() -> SimConfig:
    """A coarse step; energies of the fixtures below do not depend on it."""
    return SimConfig(max_step=1e-2, event_tolerance=1e-9)


@pytest.fixture
def single_job() -> Instance:
    """One job (0, 4, 4) of density 1."""
    return InstanceFactory.single_job()


@pytest.fixture
def two_jobs() -> Instance:
    """A (0, 2, 4) and B (0, 4, 2): YDS runs A at 2 then B at 1."""
    return InstanceFactory.two_nested_jobs()


@pytest.fixture
def far_jobs() -> Instance:
    """Two unit jobs (0, 1, 1) and (3, 4, 1) separated by a gap of 2."""
    return InstanceFactory.far_jobs()


@pytest.fixture
def empty_instance() -> Instance:
    return Instance(jobs=(), name="empty")


@pytest.fixture
def instance_file(tmp_path):
    """Write job tuples to a JSON instance file and return its path."""
    def _create(jobs, filename: str = "instance.json") -> Path:
        path = tmp_path / filename
        records = [{"id": job_id, "r": r, "d": d, "w": w} for job_id, r, d, w in jobs]
        path.write_text(json.dumps({"jobs": records}), encoding="utf-8")
        return path
    return _create


@pytest.fixture
def single_job_file(instance_file) -> Path:
    return instance_file([("J1", 0, 4, 4)], "single.json")


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    """Keep SPEED_ANALYZER_* variables of the caller out of the tests."""
    for name in list(os.environ):
        if name.startswith("SPEED_ANALYZER_"):
            monkeypatch.delenv(name, raising=False)


@pytest.fixture(scope="session", autouse=True)
def setup_logging():
    """Configure logging for tests."""
    logging.basicConfig(
        level=logging.WARNING,  # Reduce log noise during tests
        format='%(levelname)s: %(message)s'
    )
