"""Exact linear algebra over the rationals.

Row reduction works on sparse rows (``dict`` column -> Fraction) because the
constraint and delta matrices handled here are large but very sparse.  Small
dense helpers (products, inverses) operate on lists of lists of Fractions.

Pivot choice is deterministic: scan columns left to right and take the
shortest eligible row, breaking ties by row index.  Every derived basis
(kernel bases in particular) is therefore reproducible run to run.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rref(rows, ncols):
    """Reduced row echelon form of sparse rows.

    Returns ``(reduced, pivot_cols)`` where ``reduced[i]`` is a sparse row with
    leading coefficient 1 in column ``pivot_cols[i]`` and zeros in every other
    pivot column.  Input rows are not mutated.
    """
    active = [dict(r) for r in rows if r]
    done = []
    pivot_cols = []
    for col in range(ncols):
        best = None
        for idx, row in enumerate(active):
            if row.get(col):
                cand = (len(row), idx)
                if best is None or cand < best:
                    best = cand
        if best is None:
            continue
        piv = active.pop(best[1])
        inv = ONE / piv[col]
        piv = {c: v * inv for c, v in piv.items()}
        for row in active:
            f = row.get(col)
            if f:
                for c, v in piv.items():
                    nv = row.get(c, ZERO) - f * v
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
        for row in done:
            f = row.get(col)
            if f:
                for c, v in piv.items():
                    nv = row.get(c, ZERO) - f * v
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
        done.append(piv)
        pivot_cols.append(col)
        active = [r for r in active if r]
        if not active:
            break
    return done, pivot_cols


def rank(rows, ncols):
    return len(rref(rows, ncols)[1])


def kernel_basis(rows, ncols):
    """Deterministic basis of the right kernel, one dense vector per free column."""
    reduced, pivot_cols = rref(rows, ncols)
    pivot_of = {c: r for r, c in enumerate(pivot_cols)}
    free_cols = [c for c in range(ncols) if c not in pivot_of]
    basis = []
    for f in free_cols:
        vec = [ZERO] * ncols
        vec[f] = ONE
        for c, r in pivot_of.items():
            coef = reduced[r].get(f)
            if coef:
                vec[c] = -coef
        basis.append(vec)
    return basis


def free_columns(rows, ncols):
    _, pivot_cols = rref(rows, ncols)
    taken = set(pivot_cols)
    return [c for c in range(ncols) if c not in taken]


def mat_mul(a, b):
    if not a:
        return []
    nk = len(b)
    ncols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [ZERO] * ncols
        for k in range(nk):
            f = row[k]
            if f:
                brow = b[k]
                for j in range(ncols):
                    if brow[j]:
                        acc[j] += f * brow[j]
        out.append(acc)
    return out


def mat_vec(a, v):
    return [sum((row[k] * v[k] for k in range(len(v)) if v[k]), ZERO) for row in a]


def identity(k):
    return [[ONE if i == j else ZERO for j in range(k)] for i in range(k)]


def transpose(a):
    if not a:
        return []
    return [[a[i][j] for i in range(len(a))] for j in range(len(a[0]))]


def is_zero_matrix(a):
    return all(all(v == 0 for v in row) for row in a)


def invert(a):
    """Inverse of a small dense rational matrix; raises on singular input."""
    k = len(a)
    work = [[Fraction(v) for v in row] + ident_row
            for row, ident_row in zip(a, identity(k))]
    for col in range(k):
        piv = None
        for r in range(col, k):
            if work[r][col]:
                piv = r
                break
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        work[col], work[piv] = work[piv], work[col]
        inv = ONE / work[col][col]
        work[col] = [v * inv for v in work[col]]
        for r in range(k):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [v - f * w for v, w in zip(work[r], work[col])]
    return [row[k:] for row in work]


def dense_rank(a):
    rows = [{j: v for j, v in enumerate(row) if v} for row in a]
    ncols = len(a[0]) if a else 0
    return rank(rows, ncols)
