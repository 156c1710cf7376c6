# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled union-find: the coequalizer kernel behind every colimit here."""

from libc.stdlib cimport free, malloc


cdef class UnionFind:
    """Disjoint sets over 0..n-1; labels are minimal class member indices."""

    cdef Py_ssize_t n
    cdef Py_ssize_t* parent
    cdef Py_ssize_t* size
    cdef Py_ssize_t* least

    def __cinit__(self, Py_ssize_t n):
        self.n = n
        self.parent = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
        self.size = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
        self.least = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
        if n and (self.parent == NULL or self.size == NULL or self.least == NULL):
            raise MemoryError()
        cdef Py_ssize_t i
        for i in range(n):
            self.parent[i] = i
            self.size[i] = 1
            self.least[i] = i

    def __dealloc__(self):
        if self.parent != NULL:
            free(self.parent)
        if self.size != NULL:
            free(self.size)
        if self.least != NULL:
            free(self.least)

    cdef Py_ssize_t _find(self, Py_ssize_t x):
        cdef Py_ssize_t root = x
        cdef Py_ssize_t nxt
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            nxt = self.parent[x]
            self.parent[x] = root
            x = nxt
        return root

    def find(self, Py_ssize_t x):
        return self._find(x)

    cdef void _union(self, Py_ssize_t x, Py_ssize_t y):
        cdef Py_ssize_t rx = self._find(x)
        cdef Py_ssize_t ry = self._find(y)
        cdef Py_ssize_t tmp
        if rx == ry:
            return
        if self.size[rx] < self.size[ry]:
            tmp = rx
            rx = ry
            ry = tmp
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        if self.least[ry] < self.least[rx]:
            self.least[rx] = self.least[ry]

    def union(self, Py_ssize_t x, Py_ssize_t y):
        self._union(x, y)

    def union_edges(self, us, vs):
        cdef Py_ssize_t u, v
        for u, v in zip(us, vs):
            self._union(u, v)

    def labels(self):
        cdef Py_ssize_t i
        return [self.least[self._find(i)] for i in range(self.n)]

    def n_classes(self):
        cdef Py_ssize_t i, count = 0
        for i in range(self.n):
            if self._find(i) == i:
                count += 1
        return count


IMPLEMENTATION = "cython"
