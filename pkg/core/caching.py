"""
Rewrite caching - memoized Adem pair expansions with an optional disk tier
"""

import hashlib
import logging
import threading
from pathlib import Path

import diskcache

logger = logging.getLogger(__name__)

DEFAULT_MAX_NORMAL_FORMS = 500_000


class RewriteCache:
    """
    Append-only map (prime, side, left letter, right letter) -> pair expansion.

    Expansions are tuples of (letters, residue) pairs. The memory tier is a
    plain dict read without locking; insertion takes a lock so concurrent
    writers never interleave. The disk tier (diskcache) persists expansions
    across CLI runs.

    A second, memory-only table holds normal forms of whole words, keyed by
    (prime, side, strategy, letters). It stops accepting entries once it holds
    max_normal_forms words.
    """

    def __init__(self, cache_dir=None, enabled=True, max_normal_forms=DEFAULT_MAX_NORMAL_FORMS):
        """
        Args:
            cache_dir: Directory for the persistent tier (None = memory only)
            enabled: When False nothing is stored and every lookup misses
            max_normal_forms: Capacity of the normal form table
        """
        self.enabled = enabled
        self.memory = {}
        self.normal_forms = {}
        self.max_normal_forms = max_normal_forms
        self.hits = 0
        self.misses = 0
        self._lock = threading.Lock()

        self.cache_dir = None
        self.disk_cache = None
        if cache_dir is not None and enabled:
            self._init_disk(cache_dir)

    def _init_disk(self, cache_dir):
        """Open the disk tier, falling back to memory only"""
        try:
            self.cache_dir = Path(cache_dir)
            self.cache_dir.mkdir(parents=True, exist_ok=True)
            self.disk_cache = diskcache.Cache(str(self.cache_dir / "adem"))
            logger.debug("disk rewrite cache opened at %s", self.cache_dir)
        except Exception as e:
            logger.warning("disk rewrite cache unavailable, using memory only: %s", e)
            self.disk_cache = None

    @staticmethod
    def _make_key(prefix, *args):
        """Create a cache key"""
        key_str = ":".join(str(arg) for arg in args)
        if len(key_str) > 200:
            return f"{prefix}:{hashlib.md5(key_str.encode()).hexdigest()}"
        return f"{prefix}:{key_str}"

    def get(self, prime, side, left, right):
        """Cached expansion or None"""
        if not self.enabled:
            return None
        key = (prime, side, left, right)
        value = self.memory.get(key)
        if value is not None:
            self.hits += 1
            return value
        if self.disk_cache is not None:
            try:
                stored = self.disk_cache.get(self._make_key("adem", prime, side, *left, *right))
            except Exception as e:
                logger.warning("disk rewrite cache read failed: %s", e)
                stored = None
            if stored is not None:
                with self._lock:
                    self.memory.setdefault(key, stored)
                self.hits += 1
                return self.memory[key]
        self.misses += 1
        return None

    def put(self, prime, side, left, right, expansion):
        """Store an expansion; an existing entry is never replaced"""
        if not self.enabled:
            return expansion
        key = (prime, side, left, right)
        with self._lock:
            if key in self.memory:
                return self.memory[key]
            self.memory[key] = expansion
        if self.disk_cache is not None:
            try:
                self.disk_cache.add(self._make_key("adem", prime, side, *left, *right), expansion)
            except Exception as e:
                logger.warning("disk rewrite cache write failed: %s", e)
        return expansion

    def get_normal_form(self, prime, side, strategy, letters):
        """Cached normal form of a word as (letters, residue) pairs, or None"""
        if not self.enabled:
            return None
        return self.normal_forms.get((prime, side, strategy, letters))

    def put_normal_form(self, prime, side, strategy, letters, terms):
        """Store a normal form while the table has room; returns terms"""
        if not self.enabled or len(self.normal_forms) >= self.max_normal_forms:
            return terms
        with self._lock:
            return self.normal_forms.setdefault((prime, side, strategy, letters), terms)

    def clear(self):
        """Empty both tiers"""
        with self._lock:
            self.memory.clear()
            self.normal_forms.clear()
        self.hits = self.misses = 0
        if self.disk_cache is not None:
            try:
                self.disk_cache.clear()
            except Exception as e:
                logger.warning("disk rewrite cache clear failed: %s", e)

    def __len__(self):
        return len(self.memory)

    def get_cache_stats(self):
        """Get cache statistics"""
        stats = {
            "enabled": self.enabled,
            "pairs_cached": len(self.memory),
            "normal_forms_cached": len(self.normal_forms),
            "hits": self.hits,
            "misses": self.misses,
            "disk_enabled": self.disk_cache is not None,
            "cache_dir": str(self.cache_dir) if self.cache_dir else None,
        }
        if self.disk_cache is not None:
            try:
                stats["pairs_cached_disk"] = len(self.disk_cache)
                stats["disk_cache_size"] = self.disk_cache.volume()
            except Exception:
                stats["pairs_cached_disk"] = 0
                stats["disk_cache_size"] = 0
        return stats


class SharedRewriteCache:
    """
    Process-wide rewrite cache shared by every engine that is not handed its
    own cache.
    """

    _cache = None
    _lock = threading.Lock()

    @classmethod
    def get_cache(cls):
        """Get the shared cache instance"""
        with cls._lock:
            if cls._cache is None:
                cls._cache = RewriteCache()
            return cls._cache

    @classmethod
    def reset(cls):
        """Reset the cache (for testing)"""
        with cls._lock:
            cls._cache = None
