# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled toppling and burning loops over int64 buffers.

Graphs arrive in CSR form (``indptr``, ``indices``, ``weights``); heights and
odometers are ``array('q')`` buffers modified in place.  Callers guarantee the
total grain count fits in 62 bits.
"""
from libc.stdlib cimport malloc, free
from libc.string cimport memset

ctypedef long long i64


def stabilize_fifo(const i64[:] indptr, const i64[:] indices, const i64[:] weights,
                   const i64[:] degree, i64[:] heights, i64[:] odometer):
    cdef Py_ssize_t n = heights.shape[0]
    if n == 0:
        return
    cdef Py_ssize_t *queue = <Py_ssize_t *> malloc(n * sizeof(Py_ssize_t))
    cdef char *queued = <char *> malloc(n)
    if queue == NULL or queued == NULL:
        free(queue)
        free(queued)
        raise MemoryError()
    memset(queued, 0, n)
    cdef Py_ssize_t head = 0, size = 0, i, j, e
    cdef i64 k
    for i in range(n):
        if heights[i] >= degree[i]:
            queue[(head + size) % n] = i
            size += 1
            queued[i] = 1
    try:
        while size:
            i = queue[head]
            head = (head + 1) % n
            size -= 1
            queued[i] = 0
            k = heights[i] // degree[i]
            if k == 0:
                continue
            heights[i] -= k * degree[i]
            odometer[i] += k
            for e in range(indptr[i], indptr[i + 1]):
                j = indices[e]
                heights[j] += k * weights[e]
                if not queued[j] and heights[j] >= degree[j]:
                    queue[(head + size) % n] = j
                    size += 1
                    queued[j] = 1
    finally:
        free(queue)
        free(queued)


def burn(const i64[:] indptr, const i64[:] indices, const i64[:] weights,
         const i64[:] degree, const i64[:] sink_mult, const i64[:] heights):
    cdef Py_ssize_t n = heights.shape[0]
    if n == 0:
        return True
    cdef i64 *lit = <i64 *> malloc(n * sizeof(i64))
    cdef Py_ssize_t *stack = <Py_ssize_t *> malloc(n * sizeof(Py_ssize_t))
    cdef char *burnt = <char *> malloc(n)
    if lit == NULL or stack == NULL or burnt == NULL:
        free(lit)
        free(stack)
        free(burnt)
        raise MemoryError()
    cdef Py_ssize_t top = 0, count = 0, i, j, e
    try:
        for i in range(n):
            lit[i] = sink_mult[i]
            burnt[i] = 0
            if heights[i] + lit[i] >= degree[i]:
                burnt[i] = 1
                stack[top] = i
                top += 1
        while top:
            top -= 1
            i = stack[top]
            count += 1
            for e in range(indptr[i], indptr[i + 1]):
                j = indices[e]
                if burnt[j]:
                    continue
                lit[j] += weights[e]
                if heights[j] + lit[j] >= degree[j]:
                    burnt[j] = 1
                    stack[top] = j
                    top += 1
        return count == n
    finally:
        free(lit)
        free(stack)
        free(burnt)
