from __future__ import annotations

import time
from collections import Counter, defaultdict
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from typing import Callable, Iterable, Iterator, TypeVar

from typing_extensions import Self

from splitmat.config import Settings
from splitmat.logging import logger

T = TypeVar("T")
R = TypeVar("R")


class Timer:
    _times: defaultdict
    _calls: Counter

    def __init__(self):
        self._times = defaultdict(float)
        self._calls = Counter()

    @contextmanager
    def measure(self, name: str):
        start = time.perf_counter()
        try:
            yield
        finally:
            self._times[name] += time.perf_counter() - start
            self._calls[name] += 1

    def get_time_ms(self, name: str) -> int:
        return int(self._times.get(name, 0) * 1000)

    def calls(self, name: str) -> int:
        return self._calls[name]

    def names(self) -> list[str]:
        return sorted(self._times)

    def aggregate(self, other: Self) -> None:
        for key, val in other._times.items():
            self._times[key] += val
        self._calls.update(other._calls)


class ExecutionContext:
    """Settings, timings and the worker pool shared by one command run."""

    settings: Settings
    timer: Timer
    processed: int
    failures: list[str]

    def __init__(self, settings: Settings):
        self.settings = settings
        self.timer = Timer()
        self.processed = 0
        self.failures = []

    @property
    def jobs(self) -> int:
        return self.settings.jobs

    def map(self, func: Callable[[T], R], items: Iterable[T]) -> Iterator[R]:
        """Apply ``func`` to every item; results come back in input order."""
        if self.jobs == 1:
            for item in items:
                self.processed += 1
                yield func(item)
            return

        logger.debug("processing with %s workers", self.jobs)
        with ThreadPoolExecutor(max_workers=self.jobs) as executor:
            for result in executor.map(func, items):
                self.processed += 1
                yield result

    def record_failure(self, what: str):
        self.failures.append(what)
