"""Per-instance memoization of service queries."""

from functools import lru_cache, wraps
from typing import Callable, TypeVar

_Method = TypeVar("_Method", bound=Callable)


def instance_cache(method: _Method) -> _Method:
    """Memoize `method` on each instance separately.

    The first call stores an `lru_cache` of the bound method in the instance
    dict under the method's name, where it shadows the class attribute. The
    cache is released with the instance, unlike `lru_cache` on the function,
    which holds every instance it has seen.
    """

    @wraps(method)
    def wrapper(self, *args, **kwargs):
        cached = lru_cache(maxsize=None)(method.__get__(self, type(self)))
        self.__dict__[method.__name__] = cached
        return cached(*args, **kwargs)

    return wrapper
