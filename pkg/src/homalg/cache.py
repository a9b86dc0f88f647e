"""On-disk store for resolution states, keyed by module fingerprint."""

from __future__ import annotations

import os
import pickle
import tempfile

from .resolution import ResolutionCache

ENV_VAR = "HOMALG_CACHE"
DEFAULT_DIR = ".homalg-cache"


def cache_dir(flag: str | None = None) -> str:
    return flag or os.environ.get(ENV_VAR) or DEFAULT_DIR


class DiskStore:
    """Pickled ``Resolution.to_state()`` blobs, one file per module key."""

    def __init__(self, path: str):
        self.path = path
        os.makedirs(path, exist_ok=True)

    def _file(self, key):
        return os.path.join(self.path, f"{key}.pkl")

    def load(self, key):
        try:
            with open(self._file(key), "rb") as fh:
                return pickle.load(fh)
        except (OSError, pickle.UnpicklingError, EOFError):
            return None

    def store(self, key, state):
        fd, tmp = tempfile.mkstemp(dir=self.path, suffix=".tmp")
        with os.fdopen(fd, "wb") as fh:
            pickle.dump(state, fh, protocol=pickle.HIGHEST_PROTOCOL)
        os.replace(tmp, self._file(key))


def make_cache(path: str | None = None, enabled: bool = True) -> ResolutionCache:
    if not enabled:
        return ResolutionCache()
    return ResolutionCache(DiskStore(cache_dir(path)))
