# cython: boundscheck=False, wraparound=False, cdivision=True
"""Cython build of the scoring kernels. Semantics match kernels.pure
exactly; see that module for the embedding definition."""

from libc.math cimport sqrt
from libc.stdlib cimport free, malloc

DIM = 256

cdef int _DIM = 256
cdef unsigned int _FNV_OFFSET = 2166136261u
cdef unsigned int _FNV_PRIME = 16777619u


cdef inline unsigned int _fnv1a32(const unsigned char* data, Py_ssize_t n):
    cdef unsigned int h = _FNV_OFFSET
    cdef Py_ssize_t i
    for i in range(n):
        h = (h ^ data[i]) * _FNV_PRIME
    return h


def _embed_one(text):
    cdef bytes data = text.lower().encode("utf-8")
    cdef const unsigned char* buf = data
    cdef Py_ssize_t nbytes = len(data)
    cdef Py_ssize_t nchars = len(text)
    cdef long long counts[256]
    cdef Py_ssize_t i
    for i in range(_DIM):
        counts[i] = 0
    if nchars == 0:
        return [0.0] * _DIM
    cdef Py_ssize_t* offs
    cdef Py_ssize_t pos, ci
    cdef unsigned char lead
    if nchars < 3:
        counts[_fnv1a32(buf, nbytes) % _DIM] += 1
    else:
        # Character boundaries inside the UTF-8 buffer: hashing the byte
        # range of a 3-char window equals hashing that substring's UTF-8.
        offs = <Py_ssize_t*> malloc((nbytes + 1) * sizeof(Py_ssize_t))
        if offs == NULL:
            raise MemoryError()
        try:
            ci = 0
            pos = 0
            while pos < nbytes:
                lead = buf[pos]
                if lead < 0x80 or lead >= 0xC0:  # not a continuation byte
                    offs[ci] = pos
                    ci += 1
                pos += 1
            offs[ci] = nbytes
            for i in range(ci - 2):
                counts[_fnv1a32(buf + offs[i], offs[i + 3] - offs[i]) % _DIM] += 1
        finally:
            free(offs)
    cdef long long sq = 0
    for i in range(_DIM):
        sq += counts[i] * counts[i]
    cdef double norm = sqrt(<double> sq)
    return [counts[i] / norm for i in range(_DIM)]


def embed_batch(texts):
    """Embed each text into a unit (or zero) vector of dimension DIM."""
    return [_embed_one(t) for t in texts]


def cosine01_batch(query, docs):
    """Cosine of the query against each doc, mapped from [-1, 1] to [0, 1].

    Same conventions as the pure backend: identical vectors are exactly
    1.0, zero vectors score cosine 0, reductions in ascending index order.
    """
    cdef Py_ssize_t n = len(query)
    if n == 0:
        raise ValueError("query vector is empty")
    cdef double* q = <double*> malloc(n * sizeof(double))
    cdef double* dv = <double*> malloc(n * sizeof(double))
    if q == NULL or dv == NULL:
        free(q)
        free(dv)
        raise MemoryError()
    cdef Py_ssize_t i
    cdef double nq, nd, dot, cos
    cdef bint same
    out = []
    try:
        for i in range(n):
            q[i] = query[i]
        nq = 0.0
        for i in range(n):
            nq += q[i] * q[i]
        for d in docs:
            if len(d) != n:
                raise ValueError(f"doc vector has dimension {len(d)}, expected {n}")
            same = True
            for i in range(n):
                dv[i] = d[i]
                if dv[i] != q[i]:
                    same = False
            if same:
                cos = 0.0 if nq == 0.0 else 1.0
            else:
                dot = 0.0
                nd = 0.0
                for i in range(n):
                    dot += q[i] * dv[i]
                    nd += dv[i] * dv[i]
                if nq == 0.0 or nd == 0.0:
                    cos = 0.0
                else:
                    cos = dot / (sqrt(nq) * sqrt(nd))
                    if cos > 1.0:
                        cos = 1.0
                    elif cos < -1.0:
                        cos = -1.0
            out.append((cos + 1.0) / 2.0)
        return out
    finally:
        free(q)
        free(dv)
