import pytest

from theta.bench import BenchResult, ResourceLimit, count_minimal_benchmark


@pytest.mark.parametrize("n,count", [(1, 4), (2, 87)])
def test_small_counts(n, count):
    r = count_minimal_benchmark(n, threads=1)
    assert r.count == count == sum(r.per_size.values())


def test_dedup_and_threads_agree():
    a = count_minimal_benchmark(2, threads=1, dedup=True)
    b = count_minimal_benchmark(2, threads=2)
    assert a.count == b.count == 87 and a.per_size == b.per_size


def test_per_size_for_two_orders():
    r = count_minimal_benchmark(2, threads=1)
    assert max(r.per_size) == 5 and r.per_size[1] == 1


def test_memory_cap():
    with pytest.raises(ResourceLimit):
        count_minimal_benchmark(3, threads=1, memory_cap=1)


def test_result_json():
    r = count_minimal_benchmark(1, threads=1)
    out = r.to_json()
    assert isinstance(r, BenchResult)
    assert out["count"] == 4 and out["order_count"] == 1 and set(out["per_size"]) == {"1", "2", "3"}
