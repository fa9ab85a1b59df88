import logging
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

import numpy as np

from gkaut.core.config import BATCH_SIZE

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def chunk_ranges(total: int, size: int = BATCH_SIZE, start: int = 0) -> list[tuple[int, int]]:
    return [(lo, min(lo + size, total)) for lo in range(start, total, size)]


def run_chunks(fn: Callable[[T], R], chunks: Sequence[T] | Iterable[T], threads: int = 1) -> list[R]:
    """Apply ``fn`` to every chunk; results come back in chunk order whatever the thread count."""
    chunks = list(chunks)
    if threads <= 1 or len(chunks) <= 1:
        return [fn(chunk) for chunk in chunks]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        tasks = [executor.submit(fn, chunk) for chunk in chunks]
        return [task.result() for task in tasks]


def digits(indices: np.ndarray, p: int, width: int) -> np.ndarray:
    """Base-p digits (least significant first) of each index, shape (B, width)."""
    powers = p ** np.arange(width, dtype=np.int64)
    return (np.asarray(indices, dtype=np.int64)[:, None] // powers) % p
