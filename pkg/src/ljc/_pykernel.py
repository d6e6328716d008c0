"""Pure-Python rewrite kernel over de Bruijn codes (see ``codec``).

``reducts(code, mask)`` returns every one-step reduct for the rules whose
bit is set in ``mask`` as ``(rule_id, index, erasing, code)`` tuples, in
preorder position order and rule-id order.  The compiled kernel exposes the
same function.
"""

ABS, GAPP, APP, SUB = -1, -2, -3, -4
FREE0 = -5

BETA, PI, P2, DBETA, DB, B, S, LBETA, SIGMA1, SIGMA2, ES_SIGMA1, ES_SIGMA4 = range(12)


def skip(c, i):
    need = 1
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


def shift(c, i, d, cut, out):
    """Copy the subterm at ``i``, adding ``d`` to indices >= ``cut``."""
    tag = c[i]
    if tag >= 0:
        out.append(tag + d if tag >= cut else tag)
        return i + 1
    out.append(tag)
    if tag <= FREE0:
        return i + 1
    if tag == ABS:
        return shift(c, i + 1, d, cut + 1, out)
    if tag == GAPP:
        j = shift(c, i + 1, d, cut, out)
        j = shift(c, j, d, cut, out)
        return shift(c, j, d, cut + 1, out)
    if tag == APP:
        j = shift(c, i + 1, d, cut, out)
        return shift(c, j, d, cut, out)
    j = shift(c, i + 1, d, cut, out)
    return shift(c, j, d, cut + 1, out)


def shifted(c, i, d, cut=0):
    out = []
    shift(c, i, d, cut, out)
    return out


def inst(c, i, lvl, val, cache, out):
    """Copy the body at ``i`` replacing index ``lvl`` by ``val`` (lowering
    the indices above it)."""
    tag = c[i]
    if tag >= 0:
        if tag == lvl:
            v = cache.get(lvl)
            if v is None:
                v = cache[lvl] = shifted(val, 0, lvl)
            out.extend(v)
        else:
            out.append(tag - 1 if tag > lvl else tag)
        return i + 1
    out.append(tag)
    if tag <= FREE0:
        return i + 1
    if tag == ABS:
        return inst(c, i + 1, lvl + 1, val, cache, out)
    if tag == GAPP:
        j = inst(c, i + 1, lvl, val, cache, out)
        j = inst(c, j, lvl, val, cache, out)
        return inst(c, j, lvl + 1, val, cache, out)
    if tag == APP:
        j = inst(c, i + 1, lvl, val, cache, out)
        return inst(c, j, lvl, val, cache, out)
    j = inst(c, i + 1, lvl, val, cache, out)
    return inst(c, j, lvl + 1, val, cache, out)


def instantiated(c, i, val):
    out = []
    inst(c, i, 0, val, {}, out)
    return out


def swap(c, i, lvl, out):
    """Copy the subterm at ``i`` exchanging indices ``lvl`` and ``lvl+1``."""
    tag = c[i]
    if tag >= 0:
        out.append(lvl + 1 if tag == lvl else lvl if tag == lvl + 1 else tag)
        return i + 1
    out.append(tag)
    if tag <= FREE0:
        return i + 1
    if tag == ABS:
        return swap(c, i + 1, lvl + 1, out)
    if tag == GAPP:
        j = swap(c, i + 1, lvl, out)
        j = swap(c, j, lvl, out)
        return swap(c, j, lvl + 1, out)
    if tag == APP:
        j = swap(c, i + 1, lvl, out)
        return swap(c, j, lvl, out)
    j = swap(c, i + 1, lvl, out)
    return swap(c, j, lvl + 1, out)


def occurs(c, i, end, lvl):
    """Whether index ``lvl`` (relative to the start) occurs in c[i:end]."""
    # walk keeping the binder depth of every node
    stack = [lvl]
    while i < end:
        tag = c[i]
        cur = stack.pop()
        i += 1
        if tag >= 0:
            if tag == cur:
                return True
        elif tag == ABS:
            stack.append(cur + 1)
        elif tag == GAPP:
            stack.extend((cur + 1, cur, cur))
        elif tag == APP:
            stack.extend((cur, cur))
        elif tag == SUB:
            stack.extend((cur + 1, cur))
    return False


def root_step(c, i, end, rule):
    """Contractum of the redex at ``i`` for ``rule`` as (list, erasing)."""
    tag = c[i]
    if rule == BETA or rule == DBETA:
        if tag != GAPP:
            return None
        j = i + 1
        k = 0
        frames = []
        while c[j] == GAPP:
            if rule == BETA:
                return None
            a_end = skip(c, skip(c, j + 1))
            frames.append((j, a_end))
            j = a_end
            k += 1
        if c[j] != ABS:
            return None
        s = j + 1
        s_end = skip(c, s)
        u_end = skip(c, s_end)
        u = c[s_end:u_end]
        inner = instantiated(c, s, shifted(u, 0, k) if k else u)
        dterm = []
        for a, b in frames:
            dterm.extend(c[a:b])
        dterm.extend(inner)
        erasing = not occurs(c, s, s_end, 0) or not occurs(c, u_end, end, 0)
        return instantiated(c, u_end, dterm), erasing
    if rule == PI:
        if tag != GAPP or c[i + 1] != GAPP:
            return None
        t_end = skip(c, i + 2)
        u_end = skip(c, t_end)
        r_end = skip(c, u_end)
        u2_end = skip(c, r_end)
        out = [GAPP]
        out.extend(c[i + 2:u_end])
        out.append(GAPP)
        out.extend(c[u_end:r_end])
        shift(c, r_end, 1, 0, out)
        shift(c, u2_end, 1, 1, out)
        return out, False
    if rule == P2:
        if tag != GAPP:
            return None
        t_end = skip(c, i + 1)
        u_end = skip(c, t_end)
        if c[u_end] != ABS:
            return None
        out = [ABS, GAPP]
        shift(c, i + 1, 1, 0, out)
        shift(c, t_end, 1, 0, out)
        swap(c, u_end + 1, 0, out)
        return out, False
    if rule == DB or rule == B:
        if tag != APP:
            return None
        j = i + 1
        k = 0
        prefix = []
        while c[j] == SUB:
            if rule == B:
                return None
            n_end = skip(c, j + 1)
            prefix.extend(c[j:n_end])
            j = n_end
            k += 1
        if c[j] != ABS:
            return None
        m = j + 1
        m_end = skip(c, m)
        prefix.append(SUB)
        shift(c, m_end, k, 0, prefix)
        prefix.extend(c[m:m_end])
        return prefix, False
    if rule == S:
        if tag != SUB:
            return None
        n_end = skip(c, i + 1)
        return instantiated(c, n_end, c[i + 1:n_end]), False
    if rule == LBETA:
        if tag != APP or c[i + 1] != ABS:
            return None
        m_end = skip(c, i + 2)
        n_end = skip(c, m_end)
        return instantiated(c, i + 2, c[m_end:n_end]), False
    if rule == SIGMA1:
        if tag != APP or c[i + 1] != APP or c[i + 2] != ABS:
            return None
        m_end = skip(c, i + 3)
        n_end = skip(c, m_end)
        out = [APP, ABS, APP]
        out.extend(c[i + 3:m_end])
        shift(c, n_end, 1, 0, out)
        out.extend(c[m_end:n_end])
        return out, False
    if rule == SIGMA2:
        if tag != APP or c[i + 1] != ABS or c[i + 2] != ABS:
            return None
        m_end = skip(c, i + 3)
        out = [ABS, APP, ABS]
        swap(c, i + 3, 0, out)
        shift(c, m_end, 1, 0, out)
        return out, False
    if rule == ES_SIGMA1:
        if tag != APP or c[i + 1] != SUB:
            return None
        n_end = skip(c, i + 2)
        m_end = skip(c, n_end)
        out = [SUB]
        out.extend(c[i + 2:n_end])
        out.append(APP)
        out.extend(c[n_end:m_end])
        shift(c, m_end, 1, 0, out)
        return out, False
    if rule == ES_SIGMA4:
        if tag != SUB or c[i + 1] != SUB:
            return None
        u_end = skip(c, i + 2)
        t_end = skip(c, u_end)
        out = [SUB]
        out.extend(c[i + 2:u_end])
        out.append(SUB)
        out.extend(c[u_end:t_end])
        shift(c, t_end, 1, 1, out)
        return out, False
    return None


def reducts(code, mask):
    out = []
    n = len(code)
    rules = [r for r in range(12) if mask >> r & 1]
    for i in range(n):
        if code[i] >= 0 or code[i] <= FREE0:
            continue
        end = None
        for r in rules:
            if end is None:
                end = skip(code, i)
            res = root_step(code, i, end, r)
            if res is not None:
                body, erasing = res
                out.append((r, i, erasing, code[:i] + tuple(body) + code[end:]))
    return out
