"""Integer row-reduction kernels, pure Python reference implementation.

The compiled twin (_rowreduce_cy) implements the same two functions with
identical semantics; callers pick a backend through spinorsheaf._kernels.
"""

from math import gcd

BACKEND = "pure"


def echelon(rows, ncols):
    """Fraction-free (Bareiss) forward elimination, in place.

    ``rows`` is a list of lists of int, each of length ``ncols``.  On return
    the matrix is in row echelon form up to positive row scaling; row ``i``
    has its leading nonzero in column ``pivots[i]``.  Returns
    ``(rank, pivots)``.
    """
    nrows = len(rows)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        pr = -1
        for i in range(r, nrows):
            if rows[i][c]:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        prow = rows[r]
        p = prow[c]
        for i in range(r + 1, nrows):
            row = rows[i]
            f = row[c]
            if f:
                row[c] = 0
                for j in range(c + 1, ncols):
                    a = row[j]
                    b = prow[j]
                    if a or b:
                        row[j] = (p * a - f * b) // prev
            elif p != prev:
                for j in range(c + 1, ncols):
                    a = row[j]
                    if a:
                        row[j] = p * a // prev
        prev = p
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return r, pivots


def sparse_rank(rows):
    """Rank of an integer matrix given as sparse rows ``{col: value}``.

    Row scaling leaves the rank alone, so rows are cross-multiplied and
    divided by their content to keep entries small.  ``rows`` is consumed.
    """
    buckets = {}
    for row in rows:
        if row:
            buckets.setdefault(min(row), []).append(row)
    rank = 0
    while buckets:
        c = min(buckets)
        group = buckets.pop(c)
        pi = 0
        for i in range(1, len(group)):
            if len(group[i]) < len(group[pi]):
                pi = i
        prow = group[pi]
        p = prow[c]
        rank += 1
        for i, row in enumerate(group):
            if i == pi:
                continue
            f = row.pop(c)
            if p != 1:
                for j in row:
                    row[j] *= p
            for j, b in prow.items():
                if j == c:
                    continue
                v = row.get(j, 0) - f * b
                if v:
                    row[j] = v
                elif j in row:
                    del row[j]
            if row:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                    if g == 1:
                        break
                if g > 1:
                    for j in row:
                        row[j] //= g
                buckets.setdefault(min(row), []).append(row)
    return rank
