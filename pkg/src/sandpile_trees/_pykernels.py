"""Pure-Python twins of the compiled kernels in ``_kernels.pyx``.

Same signatures and in-place semantics, but any mutable integer sequence is
accepted, so arbitrarily large heights work here.
"""
from collections import deque


def stabilize_fifo(indptr, indices, weights, degree, heights, odometer):
    n = len(heights)
    queued = [heights[i] >= degree[i] for i in range(n)]
    queue = deque(i for i in range(n) if queued[i])
    while queue:
        i = queue.popleft()
        queued[i] = False
        k = heights[i] // degree[i]
        if k == 0:
            continue
        heights[i] -= k * degree[i]
        odometer[i] += k
        for e in range(indptr[i], indptr[i + 1]):
            j = indices[e]
            heights[j] += k * weights[e]
            if not queued[j] and heights[j] >= degree[j]:
                queued[j] = True
                queue.append(j)


def burn(indptr, indices, weights, degree, sink_mult, heights):
    n = len(heights)
    lit = list(sink_mult)
    burnt = [heights[i] + lit[i] >= degree[i] for i in range(n)]
    stack = [i for i in range(n) if burnt[i]]
    count = 0
    while stack:
        i = stack.pop()
        count += 1
        for e in range(indptr[i], indptr[i + 1]):
            j = indices[e]
            if burnt[j]:
                continue
            lit[j] += weights[e]
            if heights[j] + lit[j] >= degree[j]:
                burnt[j] = True
                stack.append(j)
    return count == n
