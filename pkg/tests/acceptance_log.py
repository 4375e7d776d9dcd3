"""Outcome of each acceptance criterion, filled in by test_acceptance."""
import time
from contextlib import contextmanager

RESULTS: dict[int, tuple[str, str, float, str]] = {}


@contextmanager
def criterion(number: int, title: str, limit: float):
    """Time a criterion, enforce its runtime limit and record the outcome."""
    t0 = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - t0
        assert elapsed < limit, f"runtime {elapsed:.1f}s exceeds {limit:g}s"
        RESULTS[number] = (title, "PASS", elapsed, "")
    except BaseException as exc:
        msg = str(exc).strip().splitlines()[0] if str(exc).strip() else type(exc).__name__
        RESULTS[number] = (title, "FAIL", time.perf_counter() - t0, msg)
        raise
