"""
Evaluation Pool

Order-preserving parallel map for independent cycle evaluations.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, Optional

logger = logging.getLogger(__name__)


class EvaluationPool:
    """
    Context manager over a process pool

    With jobs == 1 everything runs in-process, so callables need not be
    picklable.
    """

    def __init__(self, jobs: int = 1):
        if jobs < 1:
            raise ValueError(f"jobs must be at least 1, got {jobs}")
        self.jobs = jobs
        self._executor: Optional[ProcessPoolExecutor] = None

    def __enter__(self) -> "EvaluationPool":
        if self.jobs > 1:
            self._executor = ProcessPoolExecutor(max_workers=self.jobs)
            logger.info(f"Started evaluation pool with {self.jobs} workers")
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        if self._executor is not None:
            self._executor.shutdown(wait=True, cancel_futures=exc_type is not None)
            self._executor = None
            if exc_type is not None:
                logger.error(f"Evaluation pool stopped after error: {exc}")

    def map(self, fn: Callable, items: Iterable) -> List:
        items = list(items)
        if self._executor is None:
            return [fn(item) for item in items]
        chunksize = max(1, len(items) // (self.jobs * 4))
        return list(self._executor.map(fn, items, chunksize=chunksize))
