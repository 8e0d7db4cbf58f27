# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of _pykernels.  Same functions, same outputs, C speed.

The census scan in connected_class_reps iterates permutations in the
same lexicographic order as itertools.permutations so both backends pick
identical class representatives.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memset


cdef int _face_count_c(int n, const int* sigma, const int* alpha, char* seen) noexcept:
    cdef int faces = 0, d, e
    memset(seen, 0, n)
    for d in range(n):
        if not seen[d]:
            faces += 1
            e = d
            while not seen[e]:
                seen[e] = 1
                e = sigma[alpha[e]]
    return faces


cdef int _component_count_c(int n, const int* sigma, const int* alpha,
                            char* seen, int* stack) noexcept:
    cdef int comps = 0, top, d, e, f
    memset(seen, 0, n)
    for d in range(n):
        if seen[d]:
            continue
        comps += 1
        seen[d] = 1
        stack[0] = d
        top = 1
        while top:
            top -= 1
            e = stack[top]
            f = sigma[e]
            if not seen[f]:
                seen[f] = 1
                stack[top] = f
                top += 1
            f = alpha[e]
            if not seen[f]:
                seen[f] = 1
                stack[top] = f
                top += 1
    return comps


cdef int _canonical_code_c(int n, const int* sigma, const int* alpha,
                           int* labels, int* order, int* code, int* best) noexcept:
    """Write the minimal traversal code (length 2n) into best.
    Returns 0 on success, -1 when the map is disconnected."""
    cdef int root, nxt, i, d, e, j, cmp_flag
    cdef bint have_best = False
    for root in range(n):
        for i in range(n):
            labels[i] = -1
        labels[root] = 0
        order[0] = root
        nxt = 1
        i = 0
        while i < nxt:
            d = order[i]
            e = sigma[d]
            if labels[e] < 0:
                labels[e] = nxt
                order[nxt] = e
                nxt += 1
            e = alpha[d]
            if labels[e] < 0:
                labels[e] = nxt
                order[nxt] = e
                nxt += 1
            i += 1
        if nxt != n:
            return -1
        for j in range(n):
            d = order[j]
            code[2 * j] = labels[sigma[d]]
            code[2 * j + 1] = labels[alpha[d]]
        if not have_best:
            for j in range(2 * n):
                best[j] = code[j]
            have_best = True
        else:
            cmp_flag = 0
            for j in range(2 * n):
                if code[j] != best[j]:
                    cmp_flag = 1 if code[j] < best[j] else -1
                    break
            if cmp_flag == 1:
                for j in range(2 * n):
                    best[j] = code[j]
    return 0


cdef int* _to_array(seq, int n) except NULL:
    cdef int* arr = <int*> malloc(n * sizeof(int))
    if arr == NULL:
        raise MemoryError()
    cdef int i
    for i in range(n):
        arr[i] = seq[i]
    return arr


def face_count(sigma, alpha):
    """Number of orbits of sigma∘alpha (alpha applied first)."""
    cdef int n = len(sigma)
    if n == 0:
        return 0
    cdef int* s = _to_array(sigma, n)
    cdef int* a = _to_array(alpha, n)
    cdef char* seen = <char*> malloc(n)
    try:
        return _face_count_c(n, s, a, seen)
    finally:
        free(s); free(a); free(seen)


def component_count(sigma, alpha):
    """Orbit count of the group generated by sigma and alpha on the darts."""
    cdef int n = len(sigma)
    if n == 0:
        return 0
    cdef int* s = _to_array(sigma, n)
    cdef int* a = _to_array(alpha, n)
    cdef char* seen = <char*> malloc(n)
    cdef int* stack = <int*> malloc(n * sizeof(int))
    try:
        return _component_count_c(n, s, a, seen, stack)
    finally:
        free(s); free(a); free(seen); free(stack)


def canonical_code(sigma, alpha):
    """Lexicographically least traversal encoding over all start darts."""
    cdef int n = len(sigma)
    if n == 0:
        return (0,)
    cdef int* s = _to_array(sigma, n)
    cdef int* a = _to_array(alpha, n)
    cdef int* labels = <int*> malloc(n * sizeof(int))
    cdef int* order = <int*> malloc(n * sizeof(int))
    cdef int* code = <int*> malloc(2 * n * sizeof(int))
    cdef int* best = <int*> malloc(2 * n * sizeof(int))
    cdef int rc, j
    try:
        rc = _canonical_code_c(n, s, a, labels, order, code, best)
        if rc < 0:
            raise ValueError("canonical code requires a connected map")
        out = [n]
        for j in range(2 * n):
            out.append(best[j])
        return tuple(out)
    finally:
        free(s); free(a); free(labels); free(order); free(code); free(best)


def connected_class_reps(n_edges):
    """Scan every rotation system over the standard pairing, dedupe by
    canonical code.  Returns (reps, connected_count); see _pykernels."""
    cdef int n = 2 * n_edges
    cdef long long connected = 0
    cdef int i, j, k, l, tmp
    if n_edges < 1:
        return [], 0
    cdef int* sigma = <int*> malloc(n * sizeof(int))
    cdef int* alpha = <int*> malloc(n * sizeof(int))
    cdef char* seen = <char*> malloc(n)
    cdef int* stack = <int*> malloc(n * sizeof(int))
    cdef int* labels = <int*> malloc(n * sizeof(int))
    cdef int* order = <int*> malloc(n * sizeof(int))
    cdef int* code = <int*> malloc(2 * n * sizeof(int))
    cdef int* best = <int*> malloc(2 * n * sizeof(int))
    cdef char* key = <char*> malloc(2 * n)
    seen_codes = set()
    reps = []
    try:
        for i in range(n):
            sigma[i] = i
            alpha[i] = i ^ 1
        while True:
            if _component_count_c(n, sigma, alpha, seen, stack) == 1:
                connected += 1
                _canonical_code_c(n, sigma, alpha, labels, order, code, best)
                for j in range(2 * n):
                    key[j] = <char> best[j]
                pykey = key[:2 * n]
                if pykey not in seen_codes:
                    seen_codes.add(pykey)
                    reps.append(tuple([sigma[j] for j in range(n)]))
            # next permutation in lexicographic order
            i = n - 2
            while i >= 0 and sigma[i] >= sigma[i + 1]:
                i -= 1
            if i < 0:
                break
            j = n - 1
            while sigma[j] <= sigma[i]:
                j -= 1
            tmp = sigma[i]; sigma[i] = sigma[j]; sigma[j] = tmp
            k = i + 1
            l = n - 1
            while k < l:
                tmp = sigma[k]; sigma[k] = sigma[l]; sigma[l] = tmp
                k += 1
                l -= 1
        return reps, connected
    finally:
        free(sigma); free(alpha); free(seen); free(stack)
        free(labels); free(order); free(code); free(best); free(key)
