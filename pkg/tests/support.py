"""Shared catalogs, built once per session."""

from __future__ import annotations

import functools

from icelab import build_catalog, enumerate_torf, fixture_path, load_algebra

BOUNDS = {"a2": 2, "a3": 3, "a4": 4, "a3_rad2": 2, "semisimple2": 1, "loop_x2": 2, "square": 4}


@functools.lru_cache(maxsize=None)
def catalog(name: str):
    return build_catalog(load_algebra(fixture_path(name)), BOUNDS[name])


@functools.lru_cache(maxsize=None)
def lattice(name: str):
    return enumerate_torf(catalog(name))
