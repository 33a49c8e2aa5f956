# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for free reduction and substitution.

Same contract as ``twistlab._pykernels``; the stack lives in a C buffer.
"""

from cpython.tuple cimport PyTuple_New, PyTuple_SET_ITEM
from cpython.ref cimport Py_INCREF
from libc.stdlib cimport malloc, free

from twistlab.errors import WordGrowthOverflow


cdef tuple _to_tuple(int* buf, Py_ssize_t n):
    cdef tuple out = PyTuple_New(n)
    cdef Py_ssize_t i
    cdef object item
    for i in range(n):
        item = buf[i]
        Py_INCREF(item)
        PyTuple_SET_ITEM(out, i, item)
    return out


cdef class _Table:
    """Generator images flattened into one C buffer, both signs."""

    cdef int* letters
    cdef Py_ssize_t* start
    cdef Py_ssize_t* length
    cdef int rank

    def __cinit__(self, images, inv_images):
        cdef Py_ssize_t total = 0, pos = 0, slot
        cdef int r = len(images)
        self.rank = r
        for w in images:
            total += len(w)
        self.letters = <int*>malloc((2 * total + 1) * sizeof(int))
        self.start = <Py_ssize_t*>malloc((2 * r + 1) * sizeof(Py_ssize_t))
        self.length = <Py_ssize_t*>malloc((2 * r + 1) * sizeof(Py_ssize_t))
        if not self.letters or not self.start or not self.length:
            raise MemoryError()
        for slot in range(2 * r):
            w = images[slot] if slot < r else inv_images[slot - r]
            self.start[slot] = pos
            self.length[slot] = len(w)
            for y in w:
                self.letters[pos] = y
                pos += 1

    def __dealloc__(self):
        free(self.letters)
        free(self.start)
        free(self.length)


cdef tuple _substitute(_Table t, word, Py_ssize_t limit):
    cdef Py_ssize_t n = len(word), i, j, top = 0, total = 0, end
    cdef int x, y, slot, r = t.rank
    cdef int* slots = <int*>malloc((n + 1) * sizeof(int))
    cdef int* stack
    if not slots:
        raise MemoryError()
    try:
        for i in range(n):
            x = word[i]
            if 0 < x <= r:
                slot = x - 1
            elif 0 < -x <= r:
                slot = r - x - 1
            else:
                raise ValueError(f"letter {x} out of range for rank {r}")
            slots[i] = slot
            total += t.length[slot]
        stack = <int*>malloc((total + 1) * sizeof(int))
        if not stack:
            raise MemoryError()
        try:
            for i in range(n):
                slot = slots[i]
                end = t.start[slot] + t.length[slot]
                for j in range(t.start[slot], end):
                    y = t.letters[j]
                    if top > 0 and stack[top - 1] == -y:
                        top -= 1
                    else:
                        stack[top] = y
                        top += 1
                if top > limit:
                    raise WordGrowthOverflow(limit)
            return _to_tuple(stack, top)
        finally:
            free(stack)
    finally:
        free(slots)


def reduce_letters(letters, int rank, Py_ssize_t limit):
    cdef Py_ssize_t n = len(letters), i, top = 0
    cdef int x
    cdef int* stack = <int*>malloc((n + 1) * sizeof(int))
    if not stack:
        raise MemoryError()
    try:
        for i in range(n):
            x = letters[i]
            if x == 0 or x > rank or -x > rank:
                raise ValueError(f"letter {x} out of range for rank {rank}")
            if top > 0 and stack[top - 1] == -x:
                top -= 1
            else:
                stack[top] = x
                top += 1
                if top > limit:
                    raise WordGrowthOverflow(limit)
        return _to_tuple(stack, top)
    finally:
        free(stack)


def substitute(images, inv_images, word, Py_ssize_t limit):
    return _substitute(_Table(images, inv_images), word, limit)


def compose_images(images, inv_images, inner, Py_ssize_t limit):
    cdef _Table t = _Table(images, inv_images)
    return tuple([_substitute(t, w, limit) for w in inner])
