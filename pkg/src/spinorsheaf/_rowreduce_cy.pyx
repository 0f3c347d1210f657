# cython: language_level=3, boundscheck=False, wraparound=False
"""Integer row-reduction kernels, compiled twin of _rowreduce_py.

Entries are Python ints (arbitrary precision); the speedup comes from
typed loop indices and direct list/dict access in the inner loops.
"""

from math import gcd

BACKEND = "compiled"


def echelon(list rows, Py_ssize_t ncols):
    """Fraction-free (Bareiss) forward elimination, in place.

    Same contract as the pure backend: returns (rank, pivots) and leaves
    the matrix in echelon form up to positive row scaling.
    """
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t r = 0, c, i, j, pr
    cdef list pivots = []
    cdef list row, prow
    cdef object prev = 1
    cdef object p, f, a, b
    for c in range(ncols):
        pr = -1
        for i in range(r, nrows):
            row = <list>rows[i]
            if row[c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        prow = <list>rows[r]
        p = prow[c]
        for i in range(r + 1, nrows):
            row = <list>rows[i]
            f = row[c]
            if f != 0:
                row[c] = 0
                for j in range(c + 1, ncols):
                    a = row[j]
                    b = prow[j]
                    if a != 0 or b != 0:
                        row[j] = (p * a - f * b) // prev
            elif p != prev:
                for j in range(c + 1, ncols):
                    a = row[j]
                    if a != 0:
                        row[j] = p * a // prev
        prev = p
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return r, pivots


def sparse_rank(list rows):
    """Rank of a sparse integer matrix given as dicts {col: value}."""
    cdef dict buckets = {}
    cdef dict row, prow
    cdef list group
    cdef Py_ssize_t rank = 0, pi, i, glen
    cdef object c, p, f, j, b, v, a, g
    for row_obj in rows:
        row = <dict>row_obj
        if row:
            c = min(row)
            if c in buckets:
                (<list>buckets[c]).append(row)
            else:
                buckets[c] = [row]
    while buckets:
        c = min(buckets)
        group = <list>buckets.pop(c)
        glen = len(group)
        pi = 0
        for i in range(1, glen):
            if len(<dict>group[i]) < len(<dict>group[pi]):
                pi = i
        prow = <dict>group[pi]
        p = prow[c]
        rank += 1
        for i in range(glen):
            if i == pi:
                continue
            row = <dict>group[i]
            f = row.pop(c)
            if p != 1:
                for j in row:
                    row[j] = row[j] * p
            for j, b in prow.items():
                if j == c:
                    continue
                a = row.get(j)
                if a is None:
                    v = -f * b
                else:
                    v = a - f * b
                if v != 0:
                    row[j] = v
                elif a is not None:
                    del row[j]
            if row:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                    if g == 1:
                        break
                if g > 1:
                    for j in row:
                        row[j] = row[j] // g
                c2 = min(row)
                if c2 in buckets:
                    (<list>buckets[c2]).append(row)
                else:
                    buckets[c2] = [row]
    return rank
