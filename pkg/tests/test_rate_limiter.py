"""Shared token-bucket limiter for concurrent provider calls."""

import threading
import time

from kgforge.extract.providers import _RateLimiter


def test_limiter_spaces_out_calls():
    limiter = _RateLimiter(per_second=50, burst=1)
    start = time.monotonic()
    for _ in range(5):
        limiter.acquire()
    elapsed = time.monotonic() - start
    assert elapsed >= 4 / 50  # four refills after the initial token


def test_limiter_is_thread_safe():
    limiter = _RateLimiter(per_second=200, burst=1)
    acquired = []
    lock = threading.Lock()

    def work():
        limiter.acquire()
        with lock:
            acquired.append(time.monotonic())

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(acquired) == 8


def test_zero_rate_means_unlimited():
    limiter = _RateLimiter(per_second=0)
    start = time.monotonic()
    for _ in range(100):
        limiter.acquire()
    assert time.monotonic() - start < 0.1
