import pytest

from exspec import verify


@pytest.mark.extended
@pytest.mark.parametrize("p", (11, 13))
def test_every_suite_at_large_primes(p):
    results = verify.run_all(p)
    failed = [(r.suite, c.name, c.detail) for r in results for c in r.checks if not c.passed]
    assert not failed


@pytest.mark.parametrize("p", (3, 5))
def test_every_suite_at_small_primes(p):
    results = verify.run_all(p)
    assert [r.suite for r in results] == [s.name for s in verify.applicable_suites(p)]
    assert all(r.passed for r in results)
