# app/utils.py

import logging
import time
from contextlib import contextmanager
from typing import Iterator, List, Optional

logger = logging.getLogger(__name__)


@contextmanager
def timer(description: str, times_dict: Optional[dict] = None, key: Optional[str] = None,
          level: int = logging.DEBUG) -> Iterator[dict]:
    """
    A context manager to time a block of code and store the result in a dictionary.
    The elapsed time is also available as ``result["elapsed"]`` on the yielded dict.
    """
    result: dict = {}
    start_time = time.perf_counter()
    try:
        yield result
    finally:
        elapsed_time = time.perf_counter() - start_time
        result["elapsed"] = elapsed_time
        if times_dict is not None and key is not None:
            times_dict[key] = elapsed_time
        logger.log(level, "%s took: %.4f seconds", description, elapsed_time)


def parse_sizes(text: str) -> List[int]:
    """
    Parses a comma-separated list of qubit counts, e.g. "64,128,256".
    """
    sizes = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        value = int(part)
        if value < 1:
            raise ValueError(f"size must be >= 1, got {value}")
        sizes.append(value)
    if not sizes:
        raise ValueError("no sizes given")
    return sizes
