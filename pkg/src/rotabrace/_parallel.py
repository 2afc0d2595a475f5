from concurrent.futures import ProcessPoolExecutor


def parallel_map(fn, items, workers=1):
    """Ordered map over ``items``; uses a process pool when ``workers > 1``."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items))
