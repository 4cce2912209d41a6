# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled evaluation kernels; see _pykernels for the reference semantics."""

cdef enum:
    MAX_STACK = 256

cdef enum:
    OP_CONST = 0
    OP_ATOM = 1
    OP_EQ = 2
    OP_NOT = 3
    OP_AND = 4
    OP_OR = 5

cdef enum:
    Q_EXISTS = 0
    Q_FORALL = 1
    Q_FIXED = 2


cdef bint _eval(const unsigned char[:] data, Py_ssize_t n, const int[:] prog,
                long long[:] assign) noexcept nogil:
    cdef unsigned char stack[MAX_STACK]
    cdef Py_ssize_t sp = 0, pc = 0, plen = prog.shape[0]
    cdef Py_ssize_t idx, j, arity, m
    cdef int op
    cdef unsigned char acc
    while pc < plen:
        op = prog[pc]
        if op == OP_ATOM:
            arity = prog[pc + 2]
            idx = 0
            for j in range(arity):
                idx = idx * n + assign[prog[pc + 3 + j]]
            stack[sp] = data[prog[pc + 1] + idx]
            sp += 1
            pc += 3 + arity
        elif op == OP_EQ:
            stack[sp] = assign[prog[pc + 1]] == assign[prog[pc + 2]]
            sp += 1
            pc += 3
        elif op == OP_NOT:
            stack[sp - 1] = not stack[sp - 1]
            pc += 1
        elif op == OP_AND:
            m = prog[pc + 1]
            acc = 1
            for j in range(m):
                sp -= 1
                acc = acc & stack[sp]
            stack[sp] = acc
            sp += 1
            pc += 2
        elif op == OP_OR:
            m = prog[pc + 1]
            acc = 0
            for j in range(m):
                sp -= 1
                acc = acc | stack[sp]
            stack[sp] = acc
            sp += 1
            pc += 2
        else:
            stack[sp] = prog[pc + 1] != 0
            sp += 1
            pc += 2
    return stack[0]


cdef bint _check(const unsigned char[:] data, Py_ssize_t n, const int[:] prog,
                 const signed char[:] quant, Py_ssize_t depth,
                 long long[:] assign) noexcept nogil:
    cdef Py_ssize_t v
    while depth < quant.shape[0] and quant[depth] == Q_FIXED:
        depth += 1
    if depth == quant.shape[0]:
        return _eval(data, n, prog, assign)
    if quant[depth] == Q_FORALL:
        for v in range(n):
            assign[depth] = v
            if not _check(data, n, prog, quant, depth + 1, assign):
                return False
        return True
    for v in range(n):
        assign[depth] = v
        if _check(data, n, prog, quant, depth + 1, assign):
            return True
    return False


def eval_matrix(const unsigned char[:] data, Py_ssize_t n, const int[:] prog,
                long long[:] assign):
    return _eval(data, n, prog, assign)


def check_prefix(const unsigned char[:] data, Py_ssize_t n, const int[:] prog,
                 const signed char[:] quant, long long[:] assign):
    cdef bint r
    with nogil:
        r = _check(data, n, prog, quant, 0, assign)
    return r


def first_violation(const unsigned char[:] data, Py_ssize_t n, const int[:] prog,
                    const int[:] slots, long long[:] assign):
    """Lexicographically first assignment of ``slots`` falsifying the matrix.

    Returns True and leaves the violation in ``assign``, or False.
    """
    cdef Py_ssize_t d = slots.shape[0], i
    cdef bint found = False
    with nogil:
        for i in range(d):
            assign[slots[i]] = 0
        while True:
            if not _eval(data, n, prog, assign):
                found = True
                break
            i = d - 1
            while i >= 0:
                assign[slots[i]] += 1
                if assign[slots[i]] < n:
                    break
                assign[slots[i]] = 0
                i -= 1
            if i < 0:
                break
    return found
