from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(func: Callable[[T], R], items: Iterable[T], n_jobs: int = 1) -> List[R]:
    """
    Apply ``func`` to every item, optionally on a thread pool.

    Results come back in input order whatever the scheduling, so reductions
    over them are deterministic. Exceptions propagate from the first failing
    item in input order.
    """
    items = list(items)
    if n_jobs <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(n_jobs, len(items))) as executor:
        return list(executor.map(func, items))
