from typing import Any, Callable, Dict

def handler_decorator(d: Dict[str, Callable[..., Any]]):
    """Register one function per key, e.g. per parameter variant or format."""
    def _handler(key: str):
        def _(func: Callable[..., Any]):
            if key in d:
                raise ValueError(f"duplicate handler for {key!r}")
            d[key] = func
            return func
        return _
    return _handler
