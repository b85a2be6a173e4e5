from collections import defaultdict

from .protocol import SuiteLike

__all__ = ["registered_suites"]

registered_suites: dict[str, SuiteLike] = defaultdict(lambda: None)
