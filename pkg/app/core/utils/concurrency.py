"""Evaluación de casos independientes con orden de resultados estable"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from app.core.config import settings

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(
    fn: Callable[[T], R],
    items: Iterable[T],
    max_workers: Optional[int] = None
) -> List[R]:
    """Aplica `fn` a cada elemento; el resultado sigue el orden de entrada"""
    workers = max_workers or settings.MAX_WORKERS
    materialized = list(items)
    if workers <= 1 or len(materialized) <= 1:
        return [fn(item) for item in materialized]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, materialized))
