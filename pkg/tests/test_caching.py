"""Unit tests for caching module"""

import shutil
import tempfile
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import pytest

from core.adem_engine import AdemEngine, expand_pair
from core.caching import RewriteCache, SharedRewriteCache
from core.config import EngineConfig
from core.grammar import parse
from core.op_terms import OpLetter, Side

LEFT = OpLetter(0, 5)
RIGHT = OpLetter(0, 1)


@pytest.fixture
def temp_cache_dir():
    """Create a temporary cache directory"""
    path = tempfile.mkdtemp()
    yield path
    # Cleanup
    shutil.rmtree(path, ignore_errors=True)


@pytest.fixture
def cache():
    """Memory-only cache"""
    return RewriteCache()


@pytest.fixture
def expansion():
    return expand_pair(LEFT, RIGHT, 2, Side.B)


class TestRewriteCache:
    """Tests for RewriteCache"""

    def test_put_get(self, cache, expansion):
        cache.put(2, "B", LEFT, RIGHT, expansion)
        assert cache.get(2, "B", LEFT, RIGHT) == expansion
        assert len(cache) == 1

    def test_miss(self, cache):
        assert cache.get(2, "B", LEFT, RIGHT) is None
        assert cache.get_cache_stats()["misses"] == 1

    def test_keys_include_prime_and_side(self, cache, expansion):
        cache.put(2, "B", LEFT, RIGHT, expansion)
        assert cache.get(2, "A", LEFT, RIGHT) is None
        assert cache.get(3, "B", LEFT, RIGHT) is None

    def test_append_only(self, cache, expansion):
        first = cache.put(2, "B", LEFT, RIGHT, expansion)
        second = cache.put(2, "B", LEFT, RIGHT, ())
        assert first == second == expansion
        assert cache.get(2, "B", LEFT, RIGHT) == expansion

    def test_disabled(self, expansion):
        cache = RewriteCache(enabled=False)
        assert cache.put(2, "B", LEFT, RIGHT, expansion) == expansion
        assert cache.get(2, "B", LEFT, RIGHT) is None
        assert len(cache) == 0

    def test_clear(self, cache, expansion):
        cache.put(2, "B", LEFT, RIGHT, expansion)
        cache.clear()
        assert cache.get(2, "B", LEFT, RIGHT) is None
        assert len(cache) == 0

    def test_stats(self, cache, expansion):
        cache.get(2, "B", LEFT, RIGHT)
        cache.put(2, "B", LEFT, RIGHT, expansion)
        cache.get(2, "B", LEFT, RIGHT)
        stats = cache.get_cache_stats()
        assert stats["enabled"] is True
        assert stats["pairs_cached"] == 1
        assert stats["hits"] == 1
        assert stats["misses"] == 1
        assert stats["disk_enabled"] is False
        assert stats["cache_dir"] is None

    def test_make_key_hashes_long_keys(self):
        short = RewriteCache._make_key("adem", 2, "B", 0, 5)
        long = RewriteCache._make_key("adem", *range(200))
        assert short == "adem:2:B:0:5"
        assert long.startswith("adem:")
        assert len(long) == len("adem:") + 32


class TestDiskTier:
    """Tests for the persistent tier"""

    def test_init_creates_directory(self, temp_cache_dir):
        target = Path(temp_cache_dir) / "rewrites"
        cache = RewriteCache(cache_dir=target)
        assert target.exists()
        assert cache.get_cache_stats()["disk_enabled"] is True

    def test_survives_new_instance(self, temp_cache_dir, expansion):
        RewriteCache(cache_dir=temp_cache_dir).put(2, "B", LEFT, RIGHT, expansion)

        reopened = RewriteCache(cache_dir=temp_cache_dir)
        assert len(reopened) == 0
        assert reopened.get(2, "B", LEFT, RIGHT) == expansion
        assert reopened.get_cache_stats()["pairs_cached_disk"] == 1

    def test_engine_from_config_uses_disk(self, temp_cache_dir):
        config = EngineConfig(cache_dir=temp_cache_dir)
        engine = AdemEngine.from_config(config)
        engine.reduce(parse("Q^5 Q^1", 2, "B"))

        reopened = RewriteCache(cache_dir=temp_cache_dir)
        assert reopened.get(2, "B", LEFT, RIGHT) is not None


class TestSharedRewriteCache:
    """Tests for SharedRewriteCache singleton"""

    def test_singleton_pattern(self):
        cache1 = SharedRewriteCache.get_cache()
        cache2 = SharedRewriteCache.get_cache()
        assert cache1 is cache2

    def test_reset(self):
        cache1 = SharedRewriteCache.get_cache()
        SharedRewriteCache.reset()
        cache2 = SharedRewriteCache.get_cache()
        assert cache1 is not cache2

    def test_engines_share_by_default(self):
        assert AdemEngine().cache is AdemEngine().cache

    def test_concurrent_first_use(self):
        SharedRewriteCache.reset()
        with ThreadPoolExecutor(max_workers=8) as pool:
            caches = list(pool.map(lambda _: SharedRewriteCache.get_cache(), range(32)))
        assert all(cache is caches[0] for cache in caches)


class TestNormalFormTable:
    """Tests for the memory-only normal-form table"""

    WORD = ((0, 5), (0, 1))
    TERMS = ((((0, 3), (0, 3)), 1),)

    def test_store_and_lookup(self):
        cache = RewriteCache()
        assert cache.get_normal_form(2, Side.B, "leftmost", self.WORD) is None
        cache.put_normal_form(2, Side.B, "leftmost", self.WORD, self.TERMS)
        assert cache.get_normal_form(2, Side.B, "leftmost", self.WORD) == self.TERMS
        assert cache.get_normal_form(2, Side.B, "rightmost", self.WORD) is None
        assert cache.get_cache_stats()["normal_forms_cached"] == 1

    def test_capacity(self):
        cache = RewriteCache(max_normal_forms=1)
        cache.put_normal_form(2, Side.B, "leftmost", self.WORD, self.TERMS)
        cache.put_normal_form(2, Side.B, "rightmost", self.WORD, self.TERMS)
        assert cache.get_cache_stats()["normal_forms_cached"] == 1

    def test_disabled_and_clear(self):
        disabled = RewriteCache(enabled=False)
        disabled.put_normal_form(2, Side.B, "leftmost", self.WORD, self.TERMS)
        assert disabled.get_normal_form(2, Side.B, "leftmost", self.WORD) is None

        cache = RewriteCache()
        cache.put_normal_form(2, Side.B, "leftmost", self.WORD, self.TERMS)
        cache.clear()
        assert cache.get_normal_form(2, Side.B, "leftmost", self.WORD) is None


class TestCacheTransparency:
    """Reduction results do not depend on the cache"""

    def test_same_results_without_cache(self):
        cached = AdemEngine(RewriteCache())
        uncached = AdemEngine(RewriteCache(enabled=False))
        for text, p, side in [
            ("Q^9 Q^2 Q^1", 2, "B"),
            ("Sq^2 Sq^2 Sq^2", 2, "A"),
            ("P^4 b P^1 P^0", 3, "B"),
            ("P^1 P^1 P^1", 3, "A"),
        ]:
            x = parse(text, p, side)
            first = cached.reduce(x)
            assert cached.reduce(x) == first
            assert uncached.reduce(x) == first
