"""Pure-Python kernels for the hot interval tests.

These three functions dominate the running time of bound checking, so
they are written against flat data: `lo`/`hi` are bytes of length
5*d+1 indexed by cartwheel position, and `entries` is a flat bytes
of (position, lo, hi) triples.  `shift` is the outlet's position
minus one; positions are translated band-preserving before testing.

A Cython twin (_speed.pyx) implements the identical contract.
"""

from __future__ import annotations


def outlet_enforced(lo, hi, entries, shift, d):
    # Every entry interval must contain [lo[q], hi[q]].
    for t in range(0, len(entries), 3):
        p = entries[t]
        q = p + shift if shift + (p - 1) % d < d else p + shift - d
        if entries[t + 1] > lo[q] or hi[q] > entries[t + 2]:
            return False
    return True


def outlet_permitted(lo, hi, entries, shift, d):
    # Every entry interval must intersect [lo[q], hi[q]].
    for t in range(0, len(entries), 3):
        p = entries[t]
        q = p + shift if shift + (p - 1) % d < d else p + shift - d
        if entries[t + 2] < lo[q] or hi[q] < entries[t + 1]:
            return False
    return True


def outlet_wedge(lo, hi, entries, shift, d):
    # Intersect each entry interval into the bounds; None if some
    # position pinches empty (not permitted).
    nlo = bytearray(lo)
    nhi = bytearray(hi)
    for t in range(0, len(entries), 3):
        p = entries[t]
        q = p + shift if shift + (p - 1) % d < d else p + shift - d
        if entries[t + 1] > nlo[q]:
            nlo[q] = entries[t + 1]
        if entries[t + 2] < nhi[q]:
            nhi[q] = entries[t + 2]
        if nlo[q] > nhi[q]:
            return None
    return bytes(nlo), bytes(nhi)
