"""On-disk cache for sigma tables.

Format (text, bit-exact)::

    sigma k=<k> N=<N> mod=<m|none> v1
    <sigma_k(1)>
    ...
    <sigma_k(N)>

with a terminating newline. A file that fails any check on load is ignored
and the table is rebuilt.
"""

from __future__ import annotations

import logging
import random
from pathlib import Path

import numpy as np

from .arith import is_prime
from .sieves import INT64_MODULUS_LIMIT, SigmaTable, sigma_mod_sieve, sigma_sieve

log = logging.getLogger(__name__)


def header(k: int, N: int, modulus: int | None) -> str:
    return f"sigma k={k} N={N} mod={'none' if modulus is None else modulus} v1"


def cache_path(cache_dir: Path, k: int, N: int, modulus: int | None) -> Path:
    return Path(cache_dir) / f"sigma_k{k}_N{N}_mod{'none' if modulus is None else modulus}.txt"


def save_table(table: SigmaTable, path: Path) -> None:
    path = Path(path)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "w", encoding="ascii", newline="\n") as fh:
        fh.write(header(table.k, table.N, table.modulus) + "\n")
        for v in table.values[1:]:
            fh.write(f"{int(v)}\n")
    tmp.replace(path)


def load_table(path: Path, k: int, N: int, modulus: int | None) -> SigmaTable | None:
    """The cached table, or None when the file is missing or fails verification."""
    path = Path(path)
    try:
        text = path.read_text(encoding="ascii")
    except (OSError, UnicodeDecodeError):
        return None
    if not text.endswith("\n"):
        log.warning("cache %s: missing terminating newline", path)
        return None
    lines = text[:-1].split("\n")
    if lines[0] != header(k, N, modulus) or len(lines) != N + 1:
        log.warning("cache %s: header or line count mismatch", path)
        return None
    body = lines[1:]
    if not all(s.isdigit() for s in body):
        log.warning("cache %s: unparsable value line", path)
        return None
    ints = [0, *map(int, body)]
    if modulus is not None and modulus < INT64_MODULUS_LIMIT:
        values = np.array(ints, dtype=np.int64)
    else:
        values = np.empty(N + 1, dtype=object)
        values[:] = ints
    table = SigmaTable(k, N, values, modulus)
    if not _verify(table):
        log.warning("cache %s: spot check failed", path)
        return None
    return table


def _verify(table: SigmaTable) -> bool:
    """values[1] and the value at one pseudo-random prime position."""
    m = table.modulus
    if m is not None and any(int(v) >= m for v in table.values):
        return False
    if table[1] != (1 if m is None else 1 % m):
        return False
    rng = random.Random(table.N)
    for _ in range(256):
        p = rng.randint(2, max(2, table.N))
        if p <= table.N and is_prime(p):
            expected = 1 + p**table.k if m is None else (1 + pow(p, table.k, m)) % m
            return table[p] == expected
    return True


def cached_sigma(k: int, N: int, modulus: int | None, cache_dir: Path | None, memory_budget: int) -> SigmaTable:
    """Load from the cache directory if possible, otherwise build and store."""
    if cache_dir is None:
        return _build(k, N, modulus, memory_budget)
    path = cache_path(cache_dir, k, N, modulus)
    table = load_table(path, k, N, modulus) if path.exists() else None
    if table is not None:
        return table
    table = _build(k, N, modulus, memory_budget)
    Path(cache_dir).mkdir(parents=True, exist_ok=True)
    save_table(table, path)
    return table


def _build(k: int, N: int, modulus: int | None, memory_budget: int) -> SigmaTable:
    if modulus is None:
        return sigma_sieve(k, N, memory_budget)
    return sigma_mod_sieve(k, N, modulus, memory_budget)
