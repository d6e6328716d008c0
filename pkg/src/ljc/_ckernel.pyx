# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled rewrite kernel.  Same contract as ``_pykernel.reducts``; codes
are copied into C int buffers and every reduct is built there before being
turned back into a tuple."""

from libc.stdlib cimport free, malloc, realloc

cdef enum:
    ABS = -1
    GAPP = -2
    APP = -3
    SUB = -4
    FREE0 = -5

cdef enum:
    BETA, PI, P2, DBETA, DB, B, S, LBETA, SIGMA1, SIGMA2, ES_SIGMA1, ES_SIGMA4, NRULES


cdef struct Buf:
    int* data
    Py_ssize_t n
    Py_ssize_t cap


cdef int buf_init(Buf* b, Py_ssize_t cap) except -1:
    b.data = <int*>malloc(cap * sizeof(int))
    if b.data == NULL:
        raise MemoryError()
    b.n = 0
    b.cap = cap
    return 0


cdef int push(Buf* b, int v) except -1:
    cdef int* grown
    if b.n == b.cap:
        grown = <int*>realloc(b.data, 2 * b.cap * sizeof(int))
        if grown == NULL:
            raise MemoryError()
        b.data = grown
        b.cap *= 2
    b.data[b.n] = v
    b.n += 1
    return 0


cdef int extend(Buf* b, const int* c, Py_ssize_t lo, Py_ssize_t hi) except -1:
    cdef Py_ssize_t k
    for k in range(lo, hi):
        push(b, c[k])
    return 0


cdef Py_ssize_t skip(const int* c, Py_ssize_t i) noexcept:
    cdef int need = 1
    cdef int tag
    while need:
        tag = c[i]
        i += 1
        need -= 1
        if tag == GAPP:
            need += 3
        elif tag == APP or tag == SUB:
            need += 2
        elif tag == ABS:
            need += 1
    return i


cdef Py_ssize_t shift(const int* c, Py_ssize_t i, int d, int cut, Buf* out) except -1:
    cdef int tag = c[i]
    cdef Py_ssize_t j
    if tag >= 0:
        push(out, tag + d if tag >= cut else tag)
        return i + 1
    push(out, tag)
    if tag <= FREE0:
        return i + 1
    if tag == ABS:
        return shift(c, i + 1, d, cut + 1, out)
    if tag == GAPP:
        j = shift(c, i + 1, d, cut, out)
        j = shift(c, j, d, cut, out)
        return shift(c, j, d, cut + 1, out)
    j = shift(c, i + 1, d, cut, out)
    if tag == APP:
        return shift(c, j, d, cut, out)
    return shift(c, j, d, cut + 1, out)


cdef Py_ssize_t inst(const int* c, Py_ssize_t i, int lvl, const int* val, Buf* out) except -1:
    cdef int tag = c[i]
    cdef Py_ssize_t j
    if tag >= 0:
        if tag == lvl:
            shift(val, 0, lvl, 0, out)
        else:
            push(out, tag - 1 if tag > lvl else tag)
        return i + 1
    push(out, tag)
    if tag <= FREE0:
        return i + 1
    if tag == ABS:
        return inst(c, i + 1, lvl + 1, val, out)
    if tag == GAPP:
        j = inst(c, i + 1, lvl, val, out)
        j = inst(c, j, lvl, val, out)
        return inst(c, j, lvl + 1, val, out)
    j = inst(c, i + 1, lvl, val, out)
    if tag == APP:
        return inst(c, j, lvl, val, out)
    return inst(c, j, lvl + 1, val, out)


cdef Py_ssize_t swap(const int* c, Py_ssize_t i, int lvl, Buf* out) except -1:
    cdef int tag = c[i]
    cdef Py_ssize_t j
    if tag >= 0:
        push(out, lvl + 1 if tag == lvl else (lvl if tag == lvl + 1 else tag))
        return i + 1
    push(out, tag)
    if tag <= FREE0:
        return i + 1
    if tag == ABS:
        return swap(c, i + 1, lvl + 1, out)
    if tag == GAPP:
        j = swap(c, i + 1, lvl, out)
        j = swap(c, j, lvl, out)
        return swap(c, j, lvl + 1, out)
    j = swap(c, i + 1, lvl, out)
    if tag == APP:
        return swap(c, j, lvl, out)
    return swap(c, j, lvl + 1, out)


cdef int occurs(const int* c, Py_ssize_t i, Py_ssize_t end, int lvl, Buf* stack) except -1:
    cdef int tag, cur
    stack.n = 0
    push(stack, lvl)
    while i < end:
        tag = c[i]
        stack.n -= 1
        cur = stack.data[stack.n]
        i += 1
        if tag >= 0:
            if tag == cur:
                return 1
        elif tag == ABS:
            push(stack, cur + 1)
        elif tag == GAPP:
            push(stack, cur + 1)
            push(stack, cur)
            push(stack, cur)
        elif tag == APP:
            push(stack, cur)
            push(stack, cur)
        elif tag == SUB:
            push(stack, cur + 1)
            push(stack, cur)
    return 0


cdef struct Scratch:
    Buf a
    Buf b
    Buf frames
    Buf stack


cdef int root_step(const int* c, Py_ssize_t i, Py_ssize_t end, int rule, Buf* out, Scratch* w) except -2:
    """Write the contractum into ``out``; -1 when there is no redex,
    otherwise 1 for an erasing step and 0 for the rest."""
    cdef int tag = c[i]
    cdef Py_ssize_t j, s, s_end, u_end, t_end, r_end, u2_end, m, m_end, n_end, a_end, f
    cdef int k, erasing
    out.n = 0
    if rule == BETA or rule == DBETA:
        if tag != GAPP:
            return -1
        j = i + 1
        k = 0
        w.frames.n = 0
        while c[j] == GAPP:
            if rule == BETA:
                return -1
            a_end = skip(c, skip(c, j + 1))
            push(&w.frames, <int>j)
            push(&w.frames, <int>a_end)
            j = a_end
            k += 1
        if c[j] != ABS:
            return -1
        s = j + 1
        s_end = skip(c, s)
        u_end = skip(c, s_end)
        # a: the argument shifted under the k frames
        w.a.n = 0
        shift(c, s_end, k, 0, &w.a)
        # b: the frames followed by the instantiated body
        w.b.n = 0
        for f in range(0, w.frames.n, 2):
            extend(&w.b, c, w.frames.data[f], w.frames.data[f + 1])
        inst(c, s, 0, w.a.data, &w.b)
        erasing = (not occurs(c, s, s_end, 0, &w.stack)) or (not occurs(c, u_end, end, 0, &w.stack))
        inst(c, u_end, 0, w.b.data, out)
        return 1 if erasing else 0
    if rule == PI:
        if tag != GAPP or c[i + 1] != GAPP:
            return -1
        t_end = skip(c, i + 2)
        u_end = skip(c, t_end)
        r_end = skip(c, u_end)
        u2_end = skip(c, r_end)
        push(out, GAPP)
        extend(out, c, i + 2, u_end)
        push(out, GAPP)
        extend(out, c, u_end, r_end)
        shift(c, r_end, 1, 0, out)
        shift(c, u2_end, 1, 1, out)
        return 0
    if rule == P2:
        if tag != GAPP:
            return -1
        t_end = skip(c, i + 1)
        u_end = skip(c, t_end)
        if c[u_end] != ABS:
            return -1
        push(out, ABS)
        push(out, GAPP)
        shift(c, i + 1, 1, 0, out)
        shift(c, t_end, 1, 0, out)
        swap(c, u_end + 1, 0, out)
        return 0
    if rule == DB or rule == B:
        if tag != APP:
            return -1
        j = i + 1
        k = 0
        while c[j] == SUB:
            if rule == B:
                return -1
            n_end = skip(c, j + 1)
            extend(out, c, j, n_end)
            j = n_end
            k += 1
        if c[j] != ABS:
            return -1
        m = j + 1
        m_end = skip(c, m)
        push(out, SUB)
        shift(c, m_end, k, 0, out)
        extend(out, c, m, m_end)
        return 0
    if rule == S:
        if tag != SUB:
            return -1
        n_end = skip(c, i + 1)
        w.a.n = 0
        extend(&w.a, c, i + 1, n_end)
        inst(c, n_end, 0, w.a.data, out)
        return 0
    if rule == LBETA:
        if tag != APP or c[i + 1] != ABS:
            return -1
        m_end = skip(c, i + 2)
        n_end = skip(c, m_end)
        w.a.n = 0
        extend(&w.a, c, m_end, n_end)
        inst(c, i + 2, 0, w.a.data, out)
        return 0
    if rule == SIGMA1:
        if tag != APP or c[i + 1] != APP or c[i + 2] != ABS:
            return -1
        m_end = skip(c, i + 3)
        n_end = skip(c, m_end)
        push(out, APP)
        push(out, ABS)
        push(out, APP)
        extend(out, c, i + 3, m_end)
        shift(c, n_end, 1, 0, out)
        extend(out, c, m_end, n_end)
        return 0
    if rule == SIGMA2:
        if tag != APP or c[i + 1] != ABS or c[i + 2] != ABS:
            return -1
        m_end = skip(c, i + 3)
        push(out, ABS)
        push(out, APP)
        push(out, ABS)
        swap(c, i + 3, 0, out)
        shift(c, m_end, 1, 0, out)
        return 0
    if rule == ES_SIGMA1:
        if tag != APP or c[i + 1] != SUB:
            return -1
        n_end = skip(c, i + 2)
        m_end = skip(c, n_end)
        push(out, SUB)
        extend(out, c, i + 2, n_end)
        push(out, APP)
        extend(out, c, n_end, m_end)
        shift(c, m_end, 1, 0, out)
        return 0
    if rule == ES_SIGMA4:
        if tag != SUB or c[i + 1] != SUB:
            return -1
        u_end = skip(c, i + 2)
        t_end = skip(c, u_end)
        push(out, SUB)
        extend(out, c, i + 2, u_end)
        push(out, SUB)
        extend(out, c, u_end, t_end)
        shift(c, t_end, 1, 1, out)
        return 0
    return -1


def reducts(tuple code, long mask):
    cdef Py_ssize_t n = len(code)
    cdef Py_ssize_t i, end, k
    cdef int r, res
    cdef int rules[NRULES]
    cdef int nrules = 0
    cdef Buf out
    cdef Scratch w
    cdef int* c = <int*>malloc((n + 1) * sizeof(int))
    if c == NULL:
        raise MemoryError()
    buf_init(&out, 64)
    buf_init(&w.a, 64)
    buf_init(&w.b, 64)
    buf_init(&w.frames, 16)
    buf_init(&w.stack, 64)
    result = []
    try:
        for i in range(n):
            c[i] = code[i]
        for r in range(NRULES):
            if mask >> r & 1:
                rules[nrules] = r
                nrules += 1
        for i in range(n):
            if c[i] >= 0 or c[i] <= FREE0:
                continue
            end = skip(c, i)
            for k in range(nrules):
                res = root_step(c, i, end, rules[k], &out, &w)
                if res >= 0:
                    body = tuple([out.data[j] for j in range(out.n)])
                    result.append((rules[k], i, res == 1, code[:i] + body + code[end:]))
    finally:
        free(c)
        free(out.data)
        free(w.a.data)
        free(w.b.data)
        free(w.frames.data)
        free(w.stack.data)
    return result
