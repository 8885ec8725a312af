# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of _py.py: identical contract, same flat layout."""


def outlet_enforced(const unsigned char[:] lo, const unsigned char[:] hi,
                    const unsigned char[:] entries, int shift, int d):
    cdef Py_ssize_t t, n = entries.shape[0]
    cdef int p, q
    for t in range(0, n, 3):
        p = entries[t]
        q = p + shift if shift + (p - 1) % d < d else p + shift - d
        if entries[t + 1] > lo[q] or hi[q] > entries[t + 2]:
            return False
    return True


def outlet_permitted(const unsigned char[:] lo, const unsigned char[:] hi,
                     const unsigned char[:] entries, int shift, int d):
    cdef Py_ssize_t t, n = entries.shape[0]
    cdef int p, q
    for t in range(0, n, 3):
        p = entries[t]
        q = p + shift if shift + (p - 1) % d < d else p + shift - d
        if entries[t + 2] < lo[q] or hi[q] < entries[t + 1]:
            return False
    return True


def outlet_wedge(lo, hi, const unsigned char[:] entries, int shift, int d):
    cdef bytearray nlo = bytearray(lo)
    cdef bytearray nhi = bytearray(hi)
    cdef unsigned char[:] vlo = nlo
    cdef unsigned char[:] vhi = nhi
    cdef Py_ssize_t t, n = entries.shape[0]
    cdef int p, q
    for t in range(0, n, 3):
        p = entries[t]
        q = p + shift if shift + (p - 1) % d < d else p + shift - d
        if entries[t + 1] > vlo[q]:
            vlo[q] = entries[t + 1]
        if entries[t + 2] < vhi[q]:
            vhi[q] = entries[t + 2]
        if vlo[q] > vhi[q]:
            return None
    return bytes(nlo), bytes(nhi)
