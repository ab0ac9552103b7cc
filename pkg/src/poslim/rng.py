"""Deterministic counter-based random streams.

Every random quantity in this package is *addressed* rather than drawn from
shared mutable state: the uniform used for point i, pair (i, j), Monte Carlo
tuple t, and so on is a pure function of (base seed, stream kind, stream
index, position).  Splitting work across workers therefore cannot change any
result, because each worker reads exactly the positions it would have read
serially.

The concrete rule, which file formats and reports rely on:

* a stream is a Philox4x64 bit generator keyed with the 128-bit pair
  ``(seed mod 2**64, kind * 2**48 + index)``;
* position p of the stream is the p-th raw 64-bit output, mapped to a
  float in [0, 1) by taking the top 53 bits (``(raw >> 11) * 2**-53``).

Stream kinds used by the samplers:

* ``POINTS``      - X_i is position i (one uniform per point);
* ``CONDITIONALS``- second per-point uniform (conditional atom selection);
* ``PAIRS``       - xi_ij for a general [0,1]-valued kernel: position j of
                    stream index i;
* ``EDGES``       - random graph order edge (i, j): position j of stream
                    index i;
* ``MC_TUPLES``   - Monte Carlo density tuple t: positions t*q .. t*q+q-1;
* ``SUBSETS``     - random subset draws for fingerprint estimation;
* ``SPAWN``       - child-seed derivation for independent trials.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1
_MAX_INDEX = 1 << 48

POINTS = 1
PAIRS = 2
CONDITIONALS = 3
EDGES = 4
MC_TUPLES = 5
SUBSETS = 6
SPAWN = 7


@dataclass(frozen=True)
class SeededRng:
    """A base seed plus the documented stream-splitting rule."""

    seed: int

    def _key(self, kind: int, index: int) -> list:
        if not 0 <= index < _MAX_INDEX:
            raise ValueError(f"stream index out of range: {index}")
        return [self.seed & _MASK64, ((kind & 0xFFFF) << 48) | index]

    def raw(self, kind: int, count: int, index: int = 0) -> np.ndarray:
        """Raw uint64 outputs at positions 0..count-1 of a stream."""
        bg = np.random.Philox(key=self._key(kind, index))
        return bg.random_raw(count)

    def uniforms(self, kind: int, count: int, index: int = 0) -> np.ndarray:
        """float64 uniforms in [0, 1) at positions 0..count-1 of a stream."""
        raw = self.raw(kind, count, index)
        return (raw >> np.uint64(11)) * 2.0**-53

    def spawn(self, index: int) -> "SeededRng":
        """Child rng for trial `index`; children are mutually independent."""
        return SeededRng(int(self.raw(SPAWN, 1, index)[0]))
