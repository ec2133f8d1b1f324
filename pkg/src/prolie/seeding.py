"""Deterministic seeds for the randomized checks.

The seed is derived from a content hash so identical inputs give identical
reports. ``PROLIE_SEED`` or :func:`set_override` replace it.
"""

import hashlib
import os
import random

_override = None


def set_override(seed):
    global _override
    _override = None if seed is None else int(seed)


def content_hash(text):
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def seed_for(text):
    if _override is not None:
        return _override
    env = os.environ.get("PROLIE_SEED")
    if env not in (None, ""):
        return int(env)
    return int(content_hash(text)[:16], 16)


def rng_for(text):
    return random.Random(seed_for(text))
