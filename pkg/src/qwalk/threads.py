import os


def max_workers() -> int:
    """Worker cap from ``QWALK_THREADS`` (default: CPU count)."""
    raw = os.environ.get("QWALK_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1
