# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled multiplication-table kernels.

Drop-in twin of ``tables_py``: identical signatures, identical results
(including the lexicographically smallest isomorphism witness), with the
inner loops in C.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc

EXHAUSTIVE_ASSOCIATIVITY_LIMIT = 64

cdef unsigned long long _LCG_MULT = 6364136223846793005ULL
cdef unsigned long long _LCG_INC = 1442695040888963407ULL


cdef int* _alloc_ints(Py_ssize_t count) except NULL:
    cdef int* buf = <int*> PyMem_Malloc(count * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    return buf


cdef int* _flatten(table, int n) except NULL:
    cdef int* buf = _alloc_ints(<Py_ssize_t> n * n)
    cdef int i, j
    try:
        for i in range(n):
            row = table[i]
            for j in range(n):
                buf[i * n + j] = row[j]
    except Exception:
        PyMem_Free(buf)
        raise
    return buf


def find_identity(table):
    cdef int n = len(table)
    cdef int* t = _flatten(table, n)
    cdef int e, j, ok
    try:
        for e in range(n):
            ok = 1
            for j in range(n):
                if t[e * n + j] != j or t[j * n + e] != j:
                    ok = 0
                    break
            if ok:
                return e
        return None
    finally:
        PyMem_Free(t)


def latin_square_violation(table):
    cdef int n = len(table)
    cdef int i, j, v
    for i in range(n):
        if len(table[i]) != n:
            return ("row-length", i)
    cdef int* t = _flatten(table, n)
    cdef int* seen = _alloc_ints(n)
    try:
        for i in range(n):
            for j in range(n):
                seen[j] = 0
            for j in range(n):
                v = t[i * n + j]
                if v < 0 or v >= n or seen[v]:
                    return ("row", i)
                seen[v] = 1
        for j in range(n):
            for i in range(n):
                seen[i] = 0
            for i in range(n):
                v = t[i * n + j]
                if v < 0 or v >= n or seen[v]:
                    return ("column", j)
                seen[v] = 1
        return None
    finally:
        PyMem_Free(seen)
        PyMem_Free(t)


def inverse_table(table, int identity):
    cdef int n = len(table)
    cdef int* t = _flatten(table, n)
    cdef int i, j, found
    result = []
    try:
        for i in range(n):
            found = -1
            for j in range(n):
                if t[i * n + j] == identity and t[j * n + i] == identity:
                    found = j
                    break
            if found < 0:
                return None
            result.append(found)
        return result
    finally:
        PyMem_Free(t)


def associativity_violation(table, int sample_count=200000):
    cdef int n = len(table)
    cdef int* t = _flatten(table, n)
    cdef int i, j, k, ij
    cdef int count
    cdef unsigned long long state
    try:
        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT:
            for i in range(n):
                for j in range(n):
                    ij = t[i * n + j]
                    for k in range(n):
                        if t[ij * n + k] != t[i * n + t[j * n + k]]:
                            return (i, j, k)
            return None
        state = 0x9E3779B97F4A7C15ULL
        for count in range(sample_count):
            state = state * _LCG_MULT + _LCG_INC
            i = <int> ((state >> 16) % <unsigned long long> n)
            state = state * _LCG_MULT + _LCG_INC
            j = <int> ((state >> 16) % <unsigned long long> n)
            state = state * _LCG_MULT + _LCG_INC
            k = <int> ((state >> 16) % <unsigned long long> n)
            if t[t[i * n + j] * n + k] != t[i * n + t[j * n + k]]:
                return (i, j, k)
        return None
    finally:
        PyMem_Free(t)


def element_orders(table, int identity):
    cdef int n = len(table)
    cdef int* t = _flatten(table, n)
    cdef int i, power, order
    result = []
    try:
        for i in range(n):
            power = i
            order = 1
            while power != identity:
                power = t[power * n + i]
                order += 1
                if order > n:
                    raise ValueError(
                        f"element {i} has no finite order; table is not a group"
                    )
            result.append(order)
        return result
    finally:
        PyMem_Free(t)


def is_abelian(table):
    cdef int n = len(table)
    cdef int* t = _flatten(table, n)
    cdef int i, j
    try:
        for i in range(n):
            for j in range(i + 1, n):
                if t[i * n + j] != t[j * n + i]:
                    return False
        return True
    finally:
        PyMem_Free(t)


cdef struct _Iso:
    int n
    int* gt
    int* ht
    int* gord
    int* hord
    int* phi
    unsigned char* used
    int* assigned
    int assigned_count
    int* trail
    int trail_len
    int* queue


cdef bint _force(_Iso* s, int g_el, int h_el) noexcept:
    cdef int qhead = 0, qtail = 0
    cdef int x, y, i, other, n = s.n
    s.queue[qtail] = g_el
    s.queue[qtail + 1] = h_el
    qtail += 2
    while qhead < qtail:
        x = s.queue[qhead]
        y = s.queue[qhead + 1]
        qhead += 2
        if s.phi[x] >= 0:
            if s.phi[x] != y:
                return False
            continue
        if s.used[y] or s.gord[x] != s.hord[y]:
            return False
        s.phi[x] = y
        s.used[y] = 1
        s.trail[s.trail_len] = x
        s.trail_len += 1
        s.assigned[s.assigned_count] = x
        s.assigned_count += 1
        for i in range(s.assigned_count):
            other = s.assigned[i]
            s.queue[qtail] = s.gt[x * n + other]
            s.queue[qtail + 1] = s.ht[y * n + s.phi[other]]
            s.queue[qtail + 2] = s.gt[other * n + x]
            s.queue[qtail + 3] = s.ht[s.phi[other] * n + y]
            qtail += 4
    return True


cdef void _undo_to(_Iso* s, int saved_trail) noexcept:
    cdef int x
    while s.trail_len > saved_trail:
        s.trail_len -= 1
        x = s.trail[s.trail_len]
        s.used[s.phi[x]] = 0
        s.phi[x] = -1
        s.assigned_count -= 1


cdef bint _search(_Iso* s, int start) noexcept:
    cdef int k = start
    cdef int n = s.n
    cdef int target, cand, saved
    while k < n and s.phi[k] >= 0:
        k += 1
    if k == n:
        return True
    target = s.gord[k]
    for cand in range(n):
        if s.used[cand] or s.hord[cand] != target:
            continue
        saved = s.trail_len
        if _force(s, k, cand) and _search(s, k + 1):
            return True
        _undo_to(s, saved)
    return False


def find_isomorphism(g_table, h_table, int g_identity, int h_identity):
    cdef int n = len(g_table)
    if len(h_table) != n:
        return None
    g_orders = element_orders(g_table, g_identity)
    h_orders = element_orders(h_table, h_identity)
    if sorted(g_orders) != sorted(h_orders):
        return None

    cdef _Iso s
    cdef int i
    s.n = n
    s.gt = NULL
    s.ht = NULL
    s.gord = NULL
    s.hord = NULL
    s.phi = NULL
    s.used = NULL
    s.assigned = NULL
    s.trail = NULL
    s.queue = NULL
    s.assigned_count = 0
    s.trail_len = 0
    try:
        s.gt = _flatten(g_table, n)
        s.ht = _flatten(h_table, n)
        s.gord = _alloc_ints(n)
        s.hord = _alloc_ints(n)
        s.phi = _alloc_ints(n)
        s.assigned = _alloc_ints(n)
        s.trail = _alloc_ints(n)
        # one queue entry pair per (new assignment, prior assignment) pair
        s.queue = _alloc_ints(4 * (<Py_ssize_t> n) * (n + 1) + 8)
        s.used = <unsigned char*> PyMem_Malloc(n)
        if s.used == NULL:
            raise MemoryError()
        for i in range(n):
            s.gord[i] = g_orders[i]
            s.hord[i] = h_orders[i]
            s.phi[i] = -1
            s.used[i] = 0
        if not _force(&s, g_identity, h_identity):
            return None
        if not _search(&s, 0):
            return None
        return [s.phi[i] for i in range(n)]
    finally:
        PyMem_Free(s.gt)
        PyMem_Free(s.ht)
        PyMem_Free(s.gord)
        PyMem_Free(s.hord)
        PyMem_Free(s.phi)
        PyMem_Free(s.assigned)
        PyMem_Free(s.trail)
        PyMem_Free(s.queue)
        PyMem_Free(s.used)


def check_isomorphism(g_table, h_table, mapping):
    cdef int n = len(g_table)
    if len(h_table) != n or len(mapping) != n:
        return False
    if sorted(mapping) != list(range(n)):
        return False
    cdef int* gt = _flatten(g_table, n)
    cdef int* ht = _flatten(h_table, n)
    cdef int* phi = _alloc_ints(n)
    cdef int i, j
    try:
        for i in range(n):
            phi[i] = mapping[i]
        for i in range(n):
            for j in range(n):
                if phi[gt[i * n + j]] != ht[phi[i] * n + phi[j]]:
                    return False
        return True
    finally:
        PyMem_Free(gt)
        PyMem_Free(ht)
        PyMem_Free(phi)
