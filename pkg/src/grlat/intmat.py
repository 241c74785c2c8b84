"""Exact linear algebra over the integers.

Matrices are lists (or tuples) of rows of Python ints; a lattice is the
row span of such a matrix.  Everything here is exact: no floats, no
modular shortcuts.  Arbitrary precision is load-bearing, since several
callers cross-check valuations of large determinants.

Conventions:
  * vectors are rows, maps act on the right (x -> x @ A),
  * hnf() returns the canonical row Hermite form: echelon, positive
    pivots, entries above each pivot reduced into [0, pivot),
  * snf_with_transform() returns (diag, U, V) with U @ A @ V diagonal,
    diag[i] | diag[i+1], U and V unimodular.
"""

from __future__ import annotations

from math import gcd


def mat_copy(rows):
    return [list(r) for r in rows]


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    nb = len(b)
    wb = len(b[0]) if nb else 0
    out = []
    for row in a:
        acc = [0] * wb
        for x, brow in zip(row, b):
            if x:
                for j, y in enumerate(brow):
                    if y:
                        acc[j] += x * y
        out.append(acc)
    return out


def vec_mat(v, b):
    wb = len(b[0]) if b else 0
    acc = [0] * wb
    for x, brow in zip(v, b):
        if x:
            for j, y in enumerate(brow):
                if y:
                    acc[j] += x * y
    return acc


def mat_transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    return [[c * x for x in r] for r in a]


def mat_eq(a, b):
    return [list(r) for r in a] == [list(r) for r in b]


def mat_pow(a, k):
    n = len(a)
    result = identity(n)
    base = mat_copy(a)
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base_next = None
        k >>= 1
        if k:
            base_next = mat_mul(base, base)
            base = base_next
    return result


def _echelon(mat, width, reduce_above=True):
    """In-place row echelon with gcd pivoting.  Returns pivot column list.

    Rows at index >= len(pivots) are zero in columns < width on exit.
    Entries stay small: the least |entry| is always the working pivot,
    and floor-division leaves remainders in [0, pivot).
    """
    m = len(mat)
    pivots = []
    top = 0
    for col in range(width):
        if top == m:
            break
        while True:
            nz = [i for i in range(top, m) if mat[i][col]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(mat[i][col]))
            if i0 != top:
                mat[i0], mat[top] = mat[top], mat[i0]
            if len(nz) == 1:
                break
            piv = mat[top][col]
            prow = mat[top]
            for i in range(top + 1, m):
                row = mat[i]
                if row[col]:
                    q = row[col] // piv
                    if q:
                        for j in range(col, len(row)):
                            row[j] -= q * prow[j]
        if top < m and mat[top][col]:
            if mat[top][col] < 0:
                mat[top] = [-x for x in mat[top]]
            pivots.append(col)
            top += 1
    if reduce_above:
        # increasing order: step k only touches columns >= pivots[k], so
        # already-canonical earlier pivot columns stay put
        for k in range(len(pivots)):
            col = pivots[k]
            piv = mat[k][col]
            prow = mat[k]
            for i in range(k):
                q = mat[i][col] // piv
                if q:
                    row = mat[i]
                    for j in range(col, len(row)):
                        row[j] -= q * prow[j]
    return pivots


def hnf(rows, width=None):
    """Canonical row Hermite normal form of the row span (zero rows dropped)."""
    rows = [list(r) for r in rows]
    if not rows:
        return []
    if width is None:
        width = len(rows[0])
    pivots = _echelon(rows, width)
    return rows[: len(pivots)]


def hnf_with_pivots(rows, width=None):
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    if width is None:
        width = len(rows[0])
    pivots = _echelon(rows, width)
    return rows[: len(pivots)], pivots


def hnf_with_transform(rows, width=None):
    """Return (H, U, pivots) with U unimodular, U @ A = [H; 0].

    U is square of size len(rows); its last rows (beyond len(H)) span the
    left kernel of A.
    """
    rows = [list(r) for r in rows]
    m = len(rows)
    if width is None:
        width = len(rows[0]) if m else 0
    aug = [rows[i] + [1 if j == i else 0 for j in range(m)] for i in range(m)]
    pivots = _echelon(aug, width)
    h = [aug[i][:width] for i in range(len(pivots))]
    u = [aug[i][width:] for i in range(m)]
    return h, u, pivots


def left_kernel(rows, width=None):
    """Basis (list of rows) of {x : x @ A = 0}."""
    m = len(rows)
    if m == 0:
        return []
    h, u, pivots = hnf_with_transform(rows, width)
    return [u[i] for i in range(len(pivots), m)]


def right_kernel(rows):
    """Basis of {y (column) : A @ y = 0}, returned as rows."""
    return left_kernel(mat_transpose(rows))


def reduce_against(hrows, pivots, v):
    """Reduce v against an echelon basis.  Returns (coeffs, remainder)."""
    v = list(v)
    coeffs = [0] * len(hrows)
    for k, col in enumerate(pivots):
        piv = hrows[k][col]
        c = v[col] // piv
        if c:
            row = hrows[k]
            for j in range(col, len(v)):
                v[j] -= c * row[j]
        coeffs[k] = c
    return coeffs, v


def in_span(hrows, pivots, v):
    """Exact membership of v in the row span given canonical echelon basis."""
    _, rem = reduce_against(hrows, pivots, v)
    return not any(rem)


def span_coefficients(hrows, pivots, v):
    coeffs, rem = reduce_against(hrows, pivots, v)
    if any(rem):
        return None
    return coeffs


def solve_left(a_rows, v):
    """Some integer x with x @ A = v, or None."""
    h, u, pivots = hnf_with_transform(a_rows)
    c = span_coefficients(h, pivots, v)
    if c is None:
        return None
    m = len(a_rows)
    x = [0] * m
    for ci, urow in zip(c, u):
        if ci:
            for j in range(m):
                x[j] += ci * urow[j]
    return x


def snf_with_transform(rows, width=None):
    """Smith form.  Returns (diag, U, V): U @ A @ V = diag(diag), chained.

    diag has length min(m, width), nonnegative entries, diag[i] | diag[i+1];
    trailing zeros indicate rank deficiency.  U, V are unimodular.

    At each position t the pivot is reduced until it divides every entry of
    the trailing block before moving on, so the chain holds by construction.
    """
    a = [list(r) for r in rows]
    m = len(a)
    n = width if width is not None else (len(a[0]) if m else 0)
    for r in a:
        if len(r) != n:
            raise ValueError("ragged matrix")
    u = identity(m)
    v = identity(n)
    limit = min(m, n)
    t = 0
    while t < limit:
        best = None
        for i in range(t, m):
            ai = a[i]
            for j in range(t, n):
                x = ai[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            a[bi], a[t] = a[t], a[bi]
            u[bi], u[t] = u[t], u[bi]
        if bj != t:
            for row in a:
                row[bj], row[t] = row[t], row[bj]
            for row in v:
                row[bj], row[t] = row[t], row[bj]
        piv = a[t][t]
        # reduce column t below the pivot
        col_clean = True
        for i in range(t + 1, m):
            if a[i][t]:
                q = a[i][t] // piv
                if q:
                    ai, at = a[i], a[t]
                    for j in range(t, n):
                        ai[j] -= q * at[j]
                    ui, ut = u[i], u[t]
                    for j in range(m):
                        ui[j] -= q * ut[j]
                if a[i][t]:
                    col_clean = False
        if not col_clean:
            continue
        # reduce row t right of the pivot
        row_clean = True
        for j in range(t + 1, n):
            if a[t][j]:
                q = a[t][j] // piv
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                    for row in v:
                        row[j] -= q * row[t]
                if a[t][j]:
                    row_clean = False
        if not row_clean:
            continue
        # pivot must divide the whole trailing block for the chain
        offender = None
        for i in range(t + 1, m):
            ai = a[i]
            for j in range(t + 1, n):
                if ai[j] % piv:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            ai, at = a[offender], a[t]
            for j in range(t, n):
                at[j] += ai[j]
            ui, ut = u[offender], u[t]
            for j in range(m):
                ut[j] += ui[j]
            continue
        if piv < 0:
            for j in range(t, n):
                a[t][j] = -a[t][j]
            for j in range(m):
                u[t][j] = -u[t][j]
        t += 1
    diag = [a[i][i] for i in range(limit)]
    return diag, u, v


def snf_diagonal(rows, width=None):
    diag, _, _ = snf_with_transform(rows, width)
    return diag


def invariant_factors(rows, width=None):
    """Positive Smith invariants > 1 of coker (Z^width / row span)."""
    return tuple(d for d in snf_diagonal(rows, width) if d > 1)


def det(rows):
    """Bareiss fraction-free determinant."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[i], a[k] = a[k], a[i]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ai, ak = a[i], a[k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * akk - aik * ak[j]) // prev
            ai[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def lattice_sum(*lattices):
    rows = []
    for lat in lattices:
        rows.extend(list(r) for r in lat)
    return hnf(rows)


def lattice_eq(a_rows, b_rows):
    return hnf(a_rows) == hnf(b_rows)


def lattice_contains(outer_rows, inner_rows):
    h, piv = hnf_with_pivots(outer_rows)
    return all(in_span(h, piv, r) for r in inner_rows)


def lattice_index(rows, width):
    """|Z^width / L| for a full-rank lattice L; raises on rank deficiency."""
    from .errors import NotFullRankError

    h, piv = hnf_with_pivots(rows, width)
    if len(h) != width:
        raise NotFullRankError(f"lattice has rank {len(h)} < {width}")
    out = 1
    for k, col in enumerate(piv):
        out *= h[k][col]
    return out


def lattice_intersection(a_rows, b_rows):
    """Basis of (row span A) ∩ (row span B)."""
    if not a_rows or not b_rows:
        return []
    stacked = [list(r) for r in a_rows] + [[-x for x in r] for r in b_rows]
    ker = left_kernel(stacked)
    na = len(a_rows)
    out = []
    for k in ker:
        out.append(vec_mat(k[:na], a_rows))
    return hnf(out) if out else []


def preimage_lattice(domain_rows, f_matrix, target_rows, width_target=None):
    """Basis of {x in row span(domain) : x @ F in row span(target)}.

    domain_rows may be None meaning the standard lattice Z^a.
    """
    a = len(f_matrix)
    if domain_rows is None:
        domain_rows = identity(a)
    if width_target is None:
        width_target = len(f_matrix[0]) if f_matrix else 0
    images = [vec_mat(r, f_matrix) for r in domain_rows]
    stacked = images + [[-x for x in r] for r in target_rows]
    if not stacked:
        return []
    ker = left_kernel(stacked, width_target)
    nd = len(domain_rows)
    out = [vec_mat(k[:nd], domain_rows) for k in ker]
    return hnf(out, len(domain_rows[0]) if domain_rows else 0) if out else []


def unimodular_inverse(v):
    """Exact inverse of a unimodular integer matrix."""
    n = len(v)
    h, u, piv = hnf_with_transform(v)
    if len(h) != n or any(h[i][i] != 1 for i in range(n)):
        raise ValueError("matrix is not unimodular")
    # U @ V = H = I  =>  V^{-1} = U
    return u


def lattice_quotient_coords(big_rows, small_rows):
    """Coordinates X with X @ big = small, exact; raises ContainmentError."""
    from .errors import ContainmentError

    h, u, piv = hnf_with_transform(big_rows)
    coords = []
    for r in small_rows:
        c = span_coefficients(h, piv, r)
        if c is None:
            raise ContainmentError("sublattice not contained in the big lattice")
        x = [0] * len(big_rows)
        for ci, urow in zip(c, u):
            if ci:
                for j in range(len(x)):
                    x[j] += ci * urow[j]
        coords.append(x)
    return coords


def frozen(rows):
    return tuple(tuple(r) for r in rows)
