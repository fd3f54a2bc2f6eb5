"""On-disk cache of computed complexes keyed by a content hash.

Entries are pickles written under a `filelock.FileLock` so that concurrent
workers never observe half-written files. A corrupt entry is deleted, logged
and recomputed.
"""

import hashlib
import os
import pickle
from typing import Any, Callable, Optional, Tuple

from filelock import FileLock

from constants import CACHE_DIR_ENV_VAR
from utils.system import get_logger


def cache_key(kind: str, strands: int, word: str, *settings: Any) -> str:
    """SHA-256 of `(kind, strands, word, *settings)`."""
    return hashlib.sha256(
        repr((kind, strands, word) + settings).encode("utf-8")
    ).hexdigest()


def default_cache_dir() -> Optional[str]:
    return os.environ.get(CACHE_DIR_ENV_VAR) or None


class DiskCache(object):
    """
    # Attributes

    directory : Where entries live, `None` disables caching.
    """

    def __init__(self, directory: Optional[str]):
        self.directory = directory
        if directory is not None:
            os.makedirs(directory, exist_ok=True)

    def _paths(self, key: str) -> Tuple[str, str]:
        assert self.directory is not None
        path = os.path.join(self.directory, key + ".pkl")
        return path, path + ".lock"

    def get_or_compute(self, key: str, compute: Callable[[], Any]) -> Any:
        if self.directory is None:
            return compute()

        path, lock_path = self._paths(key)
        with FileLock(lock_path):
            if os.path.exists(path):
                try:
                    with open(path, "rb") as f:
                        value = pickle.load(f)
                    get_logger().debug("cache hit {}".format(key[:12]))
                    return value
                except (pickle.UnpicklingError, EOFError, AttributeError, ValueError) as e:
                    get_logger().warning(
                        "corrupt cache entry {} ({}), recomputing".format(path, e)
                    )
                    os.remove(path)

            value = compute()
            tmp_path = path + ".tmp"
            with open(tmp_path, "wb") as f:
                pickle.dump(value, f, protocol=pickle.HIGHEST_PROTOCOL)
            os.replace(tmp_path, path)
            get_logger().debug("cache store {}".format(key[:12]))
            return value
