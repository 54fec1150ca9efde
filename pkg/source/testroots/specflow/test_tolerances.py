
import pytest

from mojo.specflow.exceptions import InvalidInput
from mojo.specflow.tolerances import DEFAULT_TOLERANCES, Tolerances, parallel_map, worker_count


def test_defaults():
    assert DEFAULT_TOLERANCES.identity_tol == 1e-9
    assert DEFAULT_TOLERANCES.max_segments == 2 ** 20
    assert DEFAULT_TOLERANCES.top_window_width == 2.0 ** -6
    assert list(DEFAULT_TOLERANCES.as_dict().keys())[0] == "hermiticity_tol"


def test_non_positive_tolerances_rejected():
    with pytest.raises(InvalidInput):
        Tolerances(rank_tol=0.0)
    with pytest.raises(InvalidInput):
        DEFAULT_TOLERANCES.with_overrides(margin_min=-1.0)
    with pytest.raises(InvalidInput):
        DEFAULT_TOLERANCES.with_overrides(unknown_tol=1.0)


def test_worker_count_from_environment(monkeypatch):
    monkeypatch.delenv("SPECFLOW_THREADS", raising=False)
    assert worker_count() == 1

    monkeypatch.setenv("SPECFLOW_THREADS", "4")
    assert worker_count() == 4

    monkeypatch.setenv("SPECFLOW_THREADS", "0")
    assert worker_count() == 1

    monkeypatch.setenv("SPECFLOW_THREADS", "many")
    with pytest.raises(InvalidInput):
        worker_count()


@pytest.mark.parametrize("threads", ["1", "3"])
def test_parallel_map_keeps_order(monkeypatch, threads):
    monkeypatch.setenv("SPECFLOW_THREADS", threads)
    assert parallel_map(lambda x: x * x, range(10)) == [x * x for x in range(10)]
    assert parallel_map(lambda x: x, []) == []
