# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled assignment scan; semantics mirror _scan_py.scan_assignments."""

from libc.stdlib cimport free, malloc

BACKEND = "cython"


def scan_assignments(domain_sizes, ops, var_a, var_b, values, bint count_all=False):
    cdef Py_ssize_t n_vars = len(domain_sizes)
    cdef Py_ssize_t n_rules = len(ops)
    if n_vars == 0:
        return (0, -1)

    cdef long *sizes = <long *> malloc(n_vars * sizeof(long))
    cdef long *assign = <long *> malloc(n_vars * sizeof(long))
    cdef long *r_op = <long *> malloc(max(n_rules, 1) * sizeof(long))
    cdef long *r_a = <long *> malloc(max(n_rules, 1) * sizeof(long))
    cdef long *r_b = <long *> malloc(max(n_rules, 1) * sizeof(long))
    cdef long *r_v = <long *> malloc(max(n_rules, 1) * sizeof(long))
    if sizes == NULL or assign == NULL or r_op == NULL or r_a == NULL or r_b == NULL or r_v == NULL:
        free(sizes); free(assign); free(r_op); free(r_a); free(r_b); free(r_v)
        raise MemoryError()

    cdef Py_ssize_t i
    cdef long long total = 1
    for i in range(n_vars):
        sizes[i] = domain_sizes[i]
        assign[i] = 0
        total *= sizes[i]
    for i in range(n_rules):
        r_op[i] = ops[i]
        r_a[i] = var_a[i]
        r_b[i] = var_b[i]
        r_v[i] = values[i]

    cdef long long index = 0
    cdef long long count = 0
    cdef long long first = -1
    cdef bint ok
    cdef Py_ssize_t r
    cdef Py_ssize_t pos
    cdef long a, b, op

    try:
        if total == 0:
            return (0, -1)
        while True:
            ok = True
            for r in range(n_rules):
                op = r_op[r]
                a = assign[r_a[r]]
                if op == 0:
                    if a != r_v[r]:
                        ok = False
                        break
                elif op == 1:
                    if a == r_v[r]:
                        ok = False
                        break
                else:
                    b = assign[r_b[r]]
                    if op == 2:
                        if a != b:
                            ok = False
                            break
                    elif op == 3:
                        if a == b:
                            ok = False
                            break
                    elif a >= b:
                        ok = False
                        break
            if ok:
                count += 1
                if first < 0:
                    first = index
                if not count_all:
                    return (count, first)

            pos = n_vars - 1
            while pos >= 0:
                assign[pos] += 1
                if assign[pos] < sizes[pos]:
                    break
                assign[pos] = 0
                pos -= 1
            if pos < 0:
                return (count, first)
            index += 1
    finally:
        free(sizes)
        free(assign)
        free(r_op)
        free(r_a)
        free(r_b)
        free(r_v)
