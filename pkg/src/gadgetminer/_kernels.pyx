# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: Pauli weight scans and canonical graph encoding.

Mirrors _kernels_py exactly; see that module for the semantics.  Bitmasks
are held in 64-bit words, so the scan functions handle n <= 32 qubits
(2n symplectic bits) and the encoder n <= 64 nodes; larger inputs are
delegated to the pure-Python implementation.
"""

from libc.stdint cimport uint64_t, uint8_t
from libc.stdlib cimport malloc, free
from libc.string cimport memcmp, memcpy

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef int _basis_insert(uint64_t* basis, int nb, uint64_t v) nogil:
    """Reduce v against the descending-sorted basis and insert if nonzero.
    Returns the new basis size."""
    cdef int i, j
    cdef uint64_t w
    for i in range(nb):
        w = v ^ basis[i]
        if w < v:
            v = w
    if v == 0:
        return nb
    i = nb
    while i > 0 and basis[i - 1] < v:
        basis[i] = basis[i - 1]
        i -= 1
    basis[i] = v
    return nb + 1


cdef uint64_t _basis_reduce(uint64_t* basis, int nb, uint64_t v) nogil:
    cdef int i
    cdef uint64_t w
    for i in range(nb):
        w = v ^ basis[i]
        if w < v:
            v = w
    return v


cdef long _scan_weight_c(uint64_t* gx, uint64_t* gz, int m, int n, int w,
                         bint count_mode) nogil:
    """Count (or detect) weight-w Paulis commuting with every generator but
    outside their GF(2) span.  Support subsets advance in combinations
    order, letters in base-3 (X, Y, Z) order, matching the pure version."""
    cdef uint64_t* basis = <uint64_t*> malloc(m * sizeof(uint64_t))
    cdef int* support = <int*> malloc((w if w > 0 else 1) * sizeof(int))
    cdef int* letter = <int*> malloc((w if w > 0 else 1) * sizeof(int))
    cdef int nb = 0, i, q, parity, pos
    cdef long count = 0
    cdef uint64_t px, pz, bit
    cdef bint commutes, done
    if basis == NULL or support == NULL or letter == NULL:
        if basis != NULL: free(basis)
        if support != NULL: free(support)
        if letter != NULL: free(letter)
        return -1
    for i in range(m):
        nb = _basis_insert(basis, nb, (gx[i] << n) | gz[i])
    for i in range(w):
        support[i] = i
    done = w > n
    while not done:
        for i in range(w):
            letter[i] = 0
        while True:
            px = 0
            pz = 0
            for i in range(w):
                bit = (<uint64_t> 1) << support[i]
                if letter[i] == 0:        # X
                    px |= bit
                elif letter[i] == 1:      # Y
                    px |= bit
                    pz |= bit
                else:                     # Z
                    pz |= bit
            commutes = True
            for i in range(m):
                parity = (__builtin_popcountll(px & gz[i])
                          + __builtin_popcountll(pz & gx[i])) & 1
                if parity:
                    commutes = False
                    break
            if commutes and _basis_reduce(basis, nb, (px << n) | pz) != 0:
                if not count_mode:
                    free(basis); free(support); free(letter)
                    return 1
                count += 1
            # next letter assignment, rightmost digit fastest
            pos = w - 1
            while pos >= 0 and letter[pos] == 2:
                letter[pos] = 0
                pos -= 1
            if pos < 0:
                break
            letter[pos] += 1
        # next support combination
        pos = w - 1
        while pos >= 0 and support[pos] == n - w + pos:
            pos -= 1
        if pos < 0:
            done = True
        else:
            support[pos] += 1
            for i in range(pos + 1, w):
                support[i] = support[i - 1] + 1
    free(basis); free(support); free(letter)
    return count


def min_logical_weight(gx, gz, n, max_weight):
    """Smallest weight in 1..max_weight of a Pauli commuting with all
    generators but outside their span; 0 if none exists up to the bound."""
    if n > 32:
        from . import _kernels_py
        return _kernels_py.min_logical_weight(gx, gz, n, max_weight)
    cdef int m = len(gx)
    cdef int cn = n, w
    cdef uint64_t* cgx = <uint64_t*> malloc((m if m > 0 else 1) * sizeof(uint64_t))
    cdef uint64_t* cgz = <uint64_t*> malloc((m if m > 0 else 1) * sizeof(uint64_t))
    cdef long hit
    cdef int i
    if cgx == NULL or cgz == NULL:
        if cgx != NULL: free(cgx)
        if cgz != NULL: free(cgz)
        raise MemoryError
    try:
        for i in range(m):
            cgx[i] = gx[i]
            cgz[i] = gz[i]
        for w in range(1, max_weight + 1):
            if w > cn:
                break
            hit = _scan_weight_c(cgx, cgz, m, cn, w, False)
            if hit < 0:
                raise MemoryError
            if hit:
                return w
        return 0
    finally:
        free(cgx)
        free(cgz)


def pauli_weight_profile(gx, gz, n, max_weight):
    """counts[w-1] = number of weight-w Paulis commuting with all generators
    but outside their span, for w = 1..max_weight."""
    if n > 32:
        from . import _kernels_py
        return _kernels_py.pauli_weight_profile(gx, gz, n, max_weight)
    cdef int m = len(gx)
    cdef int cn = n, w
    cdef uint64_t* cgx = <uint64_t*> malloc((m if m > 0 else 1) * sizeof(uint64_t))
    cdef uint64_t* cgz = <uint64_t*> malloc((m if m > 0 else 1) * sizeof(uint64_t))
    cdef long cnt
    cdef int i
    if cgx == NULL or cgz == NULL:
        if cgx != NULL: free(cgx)
        if cgz != NULL: free(cgz)
        raise MemoryError
    try:
        for i in range(m):
            cgx[i] = gx[i]
            cgz[i] = gz[i]
        out = []
        for w in range(1, max_weight + 1):
            if w > cn:
                out.append(0)
                continue
            cnt = _scan_weight_c(cgx, cgz, m, cn, w, True)
            if cnt < 0:
                raise MemoryError
            out.append(cnt)
        return out
    finally:
        free(cgx)
        free(cgz)


cdef struct _EncState:
    int n
    uint8_t* cur
    uint8_t* best
    bint have_best
    int* placed
    uint8_t* used
    int* pos_class
    int* class_off
    int* class_size
    int* class_nodes
    uint64_t* out_c
    uint64_t* in_c
    uint64_t* out_t
    uint64_t* in_t


cdef void _enc_free(_EncState* st):
    if st.cur != NULL: free(st.cur)
    if st.best != NULL: free(st.best)
    if st.placed != NULL: free(st.placed)
    if st.used != NULL: free(st.used)
    if st.pos_class != NULL: free(st.pos_class)
    if st.class_off != NULL: free(st.class_off)
    if st.class_size != NULL: free(st.class_size)
    if st.class_nodes != NULL: free(st.class_nodes)
    if st.out_c != NULL: free(st.out_c)
    if st.in_c != NULL: free(st.in_c)
    if st.out_t != NULL: free(st.out_t)
    if st.in_t != NULL: free(st.in_t)


cdef bint _enc_rec(_EncState* st, int i, bint tight) nogil:
    cdef int off, ci, k, u, j, v, total
    cdef bint improved = False, child_tight
    cdef int cmp
    if i == st.n:
        if not st.have_best or not tight:
            total = st.n * (st.n - 1) // 2
            memcpy(st.best, st.cur, total)
            st.have_best = True
            return True
        return False
    off = i * (i - 1) // 2
    ci = st.pos_class[i]
    for k in range(st.class_size[ci]):
        u = st.class_nodes[st.class_off[ci] + k]
        if st.used[u]:
            continue
        for j in range(i):
            v = st.placed[j]
            st.cur[off + j] = <uint8_t> (
                (((st.out_c[u] >> v) & 1) << 3)
                | (((st.in_c[u] >> v) & 1) << 2)
                | (((st.out_t[u] >> v) & 1) << 1)
                | ((st.in_t[u] >> v) & 1))
        child_tight = tight
        if st.have_best and tight:
            cmp = memcmp(st.cur + off, st.best + off, i)
            if cmp > 0:
                continue
            child_tight = cmp == 0
        st.used[u] = 1
        st.placed[i] = u
        if _enc_rec(st, i + 1, child_tight):
            improved = True
            tight = True
        st.used[u] = 0
    return improved


def canonical_encoding(n, class_sizes, class_nodes, out_c, in_c, out_t, in_t):
    """Lexicographically minimal adjacency encoding over node orderings that
    place each refinement class in its own contiguous position block.  See
    _kernels_py.canonical_encoding for the nibble layout."""
    if n > 64:
        from . import _kernels_py
        return _kernels_py.canonical_encoding(
            n, class_sizes, class_nodes, out_c, in_c, out_t, in_t)
    if n == 0:
        return b""
    cdef int cn = n
    cdef int ncls = len(class_sizes)
    cdef int total = cn * (cn - 1) // 2
    cdef _EncState st
    cdef int i, ci, start
    st.n = cn
    st.cur = NULL; st.best = NULL; st.placed = NULL; st.used = NULL
    st.pos_class = NULL; st.class_off = NULL; st.class_size = NULL
    st.class_nodes = NULL; st.out_c = NULL; st.in_c = NULL
    st.out_t = NULL; st.in_t = NULL
    st.cur = <uint8_t*> malloc(total if total > 0 else 1)
    st.best = <uint8_t*> malloc(total if total > 0 else 1)
    st.placed = <int*> malloc(cn * sizeof(int))
    st.used = <uint8_t*> malloc(cn)
    st.pos_class = <int*> malloc(cn * sizeof(int))
    st.class_off = <int*> malloc(ncls * sizeof(int))
    st.class_size = <int*> malloc(ncls * sizeof(int))
    st.class_nodes = <int*> malloc(cn * sizeof(int))
    st.out_c = <uint64_t*> malloc(cn * sizeof(uint64_t))
    st.in_c = <uint64_t*> malloc(cn * sizeof(uint64_t))
    st.out_t = <uint64_t*> malloc(cn * sizeof(uint64_t))
    st.in_t = <uint64_t*> malloc(cn * sizeof(uint64_t))
    if (st.cur == NULL or st.best == NULL or st.placed == NULL
            or st.used == NULL or st.pos_class == NULL or st.class_off == NULL
            or st.class_size == NULL or st.class_nodes == NULL
            or st.out_c == NULL or st.in_c == NULL or st.out_t == NULL
            or st.in_t == NULL):
        _enc_free(&st)
        raise MemoryError
    try:
        st.have_best = False
        start = 0
        for ci in range(ncls):
            st.class_off[ci] = start
            st.class_size[ci] = class_sizes[ci]
            for i in range(class_sizes[ci]):
                st.pos_class[start + i] = ci
            start += class_sizes[ci]
        for i in range(cn):
            st.class_nodes[i] = class_nodes[i]
            st.used[i] = 0
            st.out_c[i] = out_c[i]
            st.in_c[i] = in_c[i]
            st.out_t[i] = out_t[i]
            st.in_t[i] = in_t[i]
        _enc_rec(&st, 0, True)
        if not st.have_best:
            raise RuntimeError("no ordering explored")
        return (<char*> st.best)[:total]
    finally:
        _enc_free(&st)
