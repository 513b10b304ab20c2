# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled kernels; same contracts as ``_pure`` with single-word masks."""

from libc.stdint cimport uint64_t, int64_t
from libcpp.unordered_set cimport unordered_set
from libcpp.vector cimport vector

import numpy as np

MAX_ELEMENTS = 64


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


def cover_search(need, cands, Py_ssize_t budget):
    """Iterative twin of ``_pure.cover_search``; at most 64 elements."""
    cdef Py_ssize_t n_elems = len(cands)
    if n_elems > MAX_ELEMENTS:
        raise OverflowError("compiled cover_search handles at most 64 elements")

    cdef vector[Py_ssize_t] start
    cdef vector[uint64_t] blocks
    cdef Py_ssize_t e
    for e in range(n_elems):
        start.push_back(blocks.size())
        for b in cands[e]:
            blocks.push_back(<uint64_t>b)
    start.push_back(blocks.size())

    cdef uint64_t need_mask = <uint64_t>need
    if need_mask == 0:
        return [], 1

    cdef unordered_set[uint64_t] failed
    cdef vector[uint64_t] cov_stack
    cdef vector[int] elem_stack
    cdef vector[Py_ssize_t] pos_stack
    cdef uint64_t covered, block, nxt, remaining
    cdef Py_ssize_t pos, stop, nodes = 1
    cdef int el
    cdef bint found = False, advanced

    with nogil:
        el = __builtin_ctzll(need_mask)
        cov_stack.push_back(0)
        elem_stack.push_back(el)
        pos_stack.push_back(start[el])
        while cov_stack.size() > 0:
            covered = cov_stack.back()
            el = elem_stack.back()
            pos = pos_stack.back()
            stop = start[el + 1]
            advanced = False
            while pos < stop:
                block = blocks[pos]
                pos += 1
                if block & covered:
                    continue
                nxt = covered | block
                nodes += 1
                remaining = need_mask & ~nxt
                if remaining == 0:
                    found = True
                    advanced = True
                    break
                if failed.count(nxt):
                    continue
                advanced = True
                break
            pos_stack[pos_stack.size() - 1] = pos
            if found:
                break
            if not advanced:
                if <Py_ssize_t>failed.size() < budget:
                    failed.insert(covered)
                cov_stack.pop_back()
                elem_stack.pop_back()
                pos_stack.pop_back()
                continue
            el = __builtin_ctzll(remaining)
            cov_stack.push_back(nxt)
            elem_stack.push_back(el)
            pos_stack.push_back(start[el])

    if not found:
        return None, nodes
    chosen = []
    cdef Py_ssize_t k
    for k in range(<Py_ssize_t>elem_stack.size()):
        el = elem_stack[k]
        chosen.append((el, pos_stack[k] - 1 - start[el]))
    return chosen, nodes


def rank_mod_p(rows, int64_t p):
    """Rank over GF(p), ``p < 2**31``."""
    arr = np.array(rows, dtype=np.int64, ndmin=2)
    if arr.size == 0:
        return 0
    cdef int64_t[:, ::1] a = np.ascontiguousarray(np.mod(arr, p))
    cdef Py_ssize_t nrows = a.shape[0], ncols = a.shape[1]
    cdef Py_ssize_t rank = 0, col, r, c, piv
    cdef int64_t inv, f, tmp, base, e
    with nogil:
        for col in range(ncols):
            piv = -1
            for r in range(rank, nrows):
                if a[r, col] != 0:
                    piv = r
                    break
            if piv < 0:
                continue
            if piv != rank:
                for c in range(col, ncols):
                    tmp = a[rank, c]
                    a[rank, c] = a[piv, c]
                    a[piv, c] = tmp
            # modular inverse by Fermat
            inv = 1
            base = a[rank, col]
            e = p - 2
            while e > 0:
                if e & 1:
                    inv = inv * base % p
                base = base * base % p
                e >>= 1
            for r in range(rank + 1, nrows):
                f = a[r, col]
                if f != 0:
                    f = f * inv % p
                    for c in range(col, ncols):
                        a[r, c] = (a[r, c] - f * a[rank, c]) % p
                        if a[r, c] < 0:
                            a[r, c] += p
            rank += 1
            if rank == nrows:
                break
    return rank
