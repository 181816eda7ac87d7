# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled permutation kernel.

Mirrors ``_pykernel`` exactly: same functions, same iteration order, same
results (including dict insertion order and work-queue order). See that
module for the conventions. Only the inner loops differ: permutations are
unpacked into C integer arrays and all composition happens in C.
"""

from cpython.list cimport PyList_GET_ITEM, PyList_GET_SIZE
from cpython.long cimport PyLong_AsLong
from cpython.ref cimport Py_INCREF
from cpython.tuple cimport PyTuple_GET_ITEM, PyTuple_GET_SIZE, PyTuple_New, PyTuple_SET_ITEM
from libc.stdlib cimport free, malloc


cdef inline int _unpack(tuple t, long* buf) except -1:
    cdef Py_ssize_t i, n = PyTuple_GET_SIZE(t)
    for i in range(n):
        buf[i] = PyLong_AsLong(<object>PyTuple_GET_ITEM(t, i))
    return 0


cdef inline tuple _pack(long* buf, Py_ssize_t n):
    cdef tuple out = PyTuple_New(n)
    cdef object v
    cdef Py_ssize_t i
    for i in range(n):
        v = buf[i]
        Py_INCREF(v)
        PyTuple_SET_ITEM(out, i, v)
    return out


cdef inline bint _is_identity(long* buf, Py_ssize_t n):
    cdef Py_ssize_t i
    for i in range(n):
        if buf[i] != i:
            return 0
    return 1


def compose(tuple p, tuple q):
    """Product pq acting on the right: i -> q[p[i]]."""
    cdef Py_ssize_t n = PyTuple_GET_SIZE(p)
    cdef long* a = <long*>malloc(2 * n * sizeof(long))
    if a == NULL:
        raise MemoryError()
    cdef long* b = a + n
    cdef Py_ssize_t i
    try:
        _unpack(p, a)
        _unpack(q, b)
        for i in range(n):
            a[i] = b[a[i]]
        return _pack(a, n)
    finally:
        free(a)


def compose3(tuple p, tuple q, tuple r):
    """Triple product pqr, saving one intermediate tuple."""
    cdef Py_ssize_t n = PyTuple_GET_SIZE(p)
    cdef long* a = <long*>malloc(3 * n * sizeof(long))
    if a == NULL:
        raise MemoryError()
    cdef long* b = a + n
    cdef long* c = a + 2 * n
    cdef Py_ssize_t i
    try:
        _unpack(p, a)
        _unpack(q, b)
        _unpack(r, c)
        for i in range(n):
            a[i] = c[b[a[i]]]
        return _pack(a, n)
    finally:
        free(a)


def inverse(tuple p):
    cdef Py_ssize_t n = PyTuple_GET_SIZE(p)
    cdef long* a = <long*>malloc(2 * n * sizeof(long))
    if a == NULL:
        raise MemoryError()
    cdef long* b = a + n
    cdef Py_ssize_t i
    try:
        _unpack(p, a)
        for i in range(n):
            b[a[i]] = i
        return _pack(b, n)
    finally:
        free(a)


def power(tuple p, n):
    """p**n by binary powering; n may be negative."""
    cdef long long e = n
    cdef Py_ssize_t deg = PyTuple_GET_SIZE(p), i
    cdef long* res = <long*>malloc(3 * deg * sizeof(long))
    if res == NULL:
        raise MemoryError()
    cdef long* base = res + deg
    cdef long* tmp = res + 2 * deg
    cdef bint negate = e < 0
    if negate:
        e = -e
    try:
        _unpack(p, base)
        if negate:
            for i in range(deg):
                tmp[base[i]] = i
            for i in range(deg):
                base[i] = tmp[i]
        for i in range(deg):
            res[i] = i
        while e:
            if e & 1:
                for i in range(deg):
                    res[i] = base[res[i]]
            e >>= 1
            if e:
                for i in range(deg):
                    tmp[i] = base[base[i]]
                for i in range(deg):
                    base[i] = tmp[i]
        return _pack(res, deg)
    finally:
        free(res)


def sift(tuple p, list levels):
    """Strip p through a stabilizer chain; see ``_pykernel.sift``."""
    cdef Py_ssize_t n = PyTuple_GET_SIZE(p)
    cdef Py_ssize_t nlevels = PyList_GET_SIZE(levels)
    cdef long* r = <long*>malloc(2 * n * sizeof(long))
    if r == NULL:
        raise MemoryError()
    cdef long* t = r + n
    cdef Py_ssize_t idx, i
    cdef long beta, img
    cdef object level, table, entry
    try:
        _unpack(p, r)
        for idx in range(nlevels):
            level = <object>PyList_GET_ITEM(levels, idx)
            beta = PyLong_AsLong(<object>PyTuple_GET_ITEM(<tuple>level, 0))
            img = r[beta]
            if img == beta:
                continue
            table = <object>PyTuple_GET_ITEM(<tuple>level, 1)
            entry = (<dict>table).get(img)
            if entry is None:
                return _pack(r, n), idx
            _unpack(<tuple>PyTuple_GET_ITEM(<tuple>entry, 1), t)
            for i in range(n):
                r[i] = t[r[i]]
        return _pack(r, n), nlevels
    finally:
        free(r)


def extend_orbit(dict table, list gens, new_index, list pending):
    """Grow one level's orbit after ``gens[new_index]`` was appended.

    Identical queue and insertion order to ``_pykernel.extend_orbit``.
    """
    cdef tuple h = <tuple>PyList_GET_ITEM(gens, new_index)
    cdef Py_ssize_t n = PyTuple_GET_SIZE(h)
    cdef Py_ssize_t ngens = PyList_GET_SIZE(gens)
    cdef long* rep = <long*>malloc(3 * n * sizeof(long))
    if rep == NULL:
        raise MemoryError()
    cdef long* gbuf = rep + n
    cdef long* inv = rep + 2 * n
    cdef list frontier = []
    cdef Py_ssize_t head = 0, i, gi
    cdef long a_c, b_c, c_c
    cdef object a, b, c, entry, rep_t
    try:
        _unpack(h, gbuf)
        for a in list(table):
            pending.append((a, new_index))
            a_c = PyLong_AsLong(a)
            b_c = gbuf[a_c]
            b = b_c
            if b not in table:
                entry = table[a]
                _unpack(<tuple>PyTuple_GET_ITEM(<tuple>entry, 0), rep)
                for i in range(n):
                    rep[i] = gbuf[rep[i]]
                for i in range(n):
                    inv[rep[i]] = i
                table[b] = (_pack(rep, n), _pack(inv, n))
                frontier.append(b)
        while head < PyList_GET_SIZE(frontier):
            b = <object>PyList_GET_ITEM(frontier, head)
            head += 1
            b_c = PyLong_AsLong(b)
            for gi in range(ngens):
                pending.append((b, gi))
                _unpack(<tuple>PyList_GET_ITEM(gens, gi), gbuf)
                c_c = gbuf[b_c]
                c = c_c
                if c not in table:
                    entry = table[b]
                    _unpack(<tuple>PyTuple_GET_ITEM(<tuple>entry, 0), rep)
                    for i in range(n):
                        rep[i] = gbuf[rep[i]]
                    for i in range(n):
                        inv[rep[i]] = i
                    table[c] = (_pack(rep, n), _pack(inv, n))
                    frontier.append(c)
        return None
    finally:
        free(rep)


def process_pending(dict table, list gens, list pending, head, list deeper):
    """Sift queued Schreier generators; see ``_pykernel.process_pending``."""
    cdef Py_ssize_t pos = head
    cdef Py_ssize_t npending = PyList_GET_SIZE(pending)
    cdef Py_ssize_t ndeeper = PyList_GET_SIZE(deeper)
    cdef Py_ssize_t ngens = PyList_GET_SIZE(gens)
    if ngens == 0:
        return pos, None, 0
    cdef Py_ssize_t n = PyTuple_GET_SIZE(<tuple>PyList_GET_ITEM(gens, 0))
    # gens are fixed for the duration of the call: unpack them once
    cdef long* gall = <long*>malloc((ngens + 3) * n * sizeof(long))
    if gall == NULL:
        raise MemoryError()
    cdef long* sg = gall + ngens * n
    cdef long* tbuf = gall + (ngens + 1) * n
    cdef long* rbuf = gall + (ngens + 2) * n
    cdef Py_ssize_t gi, i, idx
    cdef long a_c, b_c, beta, img
    cdef object pair, a, entrya, entryb, level, dtable, entry
    try:
        for gi in range(ngens):
            _unpack(<tuple>PyList_GET_ITEM(gens, gi), gall + gi * n)
        while pos < npending:
            pair = <object>PyList_GET_ITEM(pending, pos)
            pos += 1
            a = <object>PyTuple_GET_ITEM(<tuple>pair, 0)
            gi = PyLong_AsLong(<object>PyTuple_GET_ITEM(<tuple>pair, 1))
            a_c = PyLong_AsLong(a)
            b_c = (gall + gi * n)[a_c]
            entrya = table[a]
            entryb = table[b_c]
            _unpack(<tuple>PyTuple_GET_ITEM(<tuple>entrya, 0), sg)
            _unpack(<tuple>PyTuple_GET_ITEM(<tuple>entryb, 1), tbuf)
            for i in range(n):
                sg[i] = tbuf[(gall + gi * n)[sg[i]]]
            if _is_identity(sg, n):
                continue
            # inline sift of sg through the deeper chain
            for i in range(n):
                rbuf[i] = sg[i]
            for idx in range(ndeeper):
                level = <object>PyList_GET_ITEM(deeper, idx)
                beta = PyLong_AsLong(<object>PyTuple_GET_ITEM(<tuple>level, 0))
                img = rbuf[beta]
                if img == beta:
                    continue
                dtable = <object>PyTuple_GET_ITEM(<tuple>level, 1)
                entry = (<dict>dtable).get(img)
                if entry is None:
                    return pos, _pack(rbuf, n), idx
                _unpack(<tuple>PyTuple_GET_ITEM(<tuple>entry, 1), tbuf)
                for i in range(n):
                    rbuf[i] = tbuf[rbuf[i]]
            if not _is_identity(rbuf, n):
                return pos, _pack(rbuf, n), ndeeper
        return pos, None, 0
    finally:
        free(gall)
