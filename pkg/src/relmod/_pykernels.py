"""Pure-Python evaluation kernels.

Same API and semantics as the compiled ``_ckernels`` module. A program is a
flat postfix instruction list (see ``modelcheck.compile_matrix``); ``data`` is
a byte buffer holding every relation densely, ``assign`` maps variable slots
to elements.
"""

OP_CONST, OP_ATOM, OP_EQ, OP_NOT, OP_AND, OP_OR = range(6)
Q_EXISTS, Q_FORALL, Q_FIXED = range(3)


def eval_matrix(data, n, prog, assign):
    stack = []
    push = stack.append
    pc = 0
    plen = len(prog)
    while pc < plen:
        op = prog[pc]
        if op == OP_ATOM:
            arity = prog[pc + 2]
            idx = 0
            for j in range(pc + 3, pc + 3 + arity):
                idx = idx * n + assign[prog[j]]
            push(data[prog[pc + 1] + idx])
            pc += 3 + arity
        elif op == OP_EQ:
            push(assign[prog[pc + 1]] == assign[prog[pc + 2]])
            pc += 3
        elif op == OP_NOT:
            stack[-1] = not stack[-1]
            pc += 1
        elif op == OP_AND:
            m = prog[pc + 1]
            vals = stack[-m:]
            del stack[-m:]
            push(all(vals))
            pc += 2
        elif op == OP_OR:
            m = prog[pc + 1]
            vals = stack[-m:]
            del stack[-m:]
            push(any(vals))
            pc += 2
        else:
            push(prog[pc + 1] != 0)
            pc += 2
    return bool(stack[0])


def _check(data, n, prog, quant, depth, assign):
    nq = len(quant)
    while depth < nq and quant[depth] == Q_FIXED:
        depth += 1
    if depth == nq:
        return eval_matrix(data, n, prog, assign)
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


def check_prefix(data, n, prog, quant, assign):
    return _check(data, n, prog, quant, 0, assign)


def first_violation(data, n, prog, slots, assign):
    d = len(slots)
    for s in slots:
        assign[s] = 0
    while True:
        if not eval_matrix(data, n, prog, assign):
            return True
        i = d - 1
        while i >= 0:
            assign[slots[i]] += 1
            if assign[slots[i]] < n:
                break
            assign[slots[i]] = 0
            i -= 1
        if i < 0:
            return False
