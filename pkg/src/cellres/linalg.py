"""Exact linear algebra over rationals and big integers.

Everything in this package that touches geometry goes through these
helpers; no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

Vector = tuple[Fraction, ...]


def vec(xs) -> Vector:
    return tuple(Fraction(x) for x in xs)


def vec_sub(a, b) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vec_add(a, b) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vec_scale(c, a) -> Vector:
    return tuple(c * x for x in a)


def dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def is_zero_vec(a) -> bool:
    return all(x == 0 for x in a)


def det(matrix) -> Fraction:
    """Determinant of a square matrix of Fractions by Gaussian elimination."""
    m = [list(row) for row in matrix]
    k = len(m)
    if k == 0:
        return Fraction(1)
    result = Fraction(1)
    for col in range(k):
        pivot = next((r for r in range(col, k) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            result = -result
        result *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, k):
            if m[r][col] != 0:
                factor = m[r][col] * inv
                for c in range(col, k):
                    m[r][c] -= factor * m[col][c]
    return result


def det_sign(matrix) -> int:
    d = det(matrix)
    return (d > 0) - (d < 0)


def rank(matrix) -> int:
    """Rank of a matrix (list of row tuples) of Fractions."""
    rows = [list(r) for r in matrix if not is_zero_vec(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][col]
        for i in range(r + 1, len(rows)):
            if rows[i][col] != 0:
                factor = rows[i][col] * inv
                for c in range(col, ncols):
                    rows[i][c] -= factor * rows[r][c]
        r += 1
        if r == len(rows):
            break
    return r


def bareiss_rank(matrix) -> int:
    """Rank of an integer matrix via fraction-free Bareiss elimination."""
    m = [list(map(int, row)) for row in matrix]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    r = 0
    prev = 1
    for col in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][col] != 0), None)
        if pivot is None:
            continue
        if pivot != r:
            m[r], m[pivot] = m[pivot], m[r]
        for i in range(r + 1, nrows):
            for c in range(col + 1, ncols):
                m[i][c] = (m[r][col] * m[i][c] - m[i][col] * m[r][c]) // prev
            m[i][col] = 0
        prev = m[r][col]
        r += 1
        if r == nrows:
            break
    return r


def solve(matrix, rhs):
    """Solve A x = b exactly; returns a solution tuple or None if inconsistent.

    When underdetermined, free variables are set to zero.
    """
    a = [list(row) + [b] for row, b in zip(matrix, rhs)]
    nrows = len(a)
    ncols = len(matrix[0]) if nrows else 0
    piv_cols = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, nrows) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][col]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][col] != 0:
                factor = a[i][col]
                a[i] = [x - factor * y for x, y in zip(a[i], a[r])]
        piv_cols.append(col)
        r += 1
    for i in range(r, nrows):
        if a[i][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, col in enumerate(piv_cols):
        x[col] = a[i][ncols]
    return tuple(x)


def orthogonal_residual(v, basis):
    """Component of v orthogonal to the span of the given vectors."""
    residual = list(vec(v))
    ortho = []
    for b in basis:
        u = list(b)
        for g in ortho:
            coeff = dot(u, g) / dot(g, g)
            u = [x - coeff * y for x, y in zip(u, g)]
        if not is_zero_vec(u):
            ortho.append(u)
    for g in ortho:
        coeff = dot(residual, g) / dot(g, g)
        residual = [x - coeff * y for x, y in zip(residual, g)]
    return tuple(residual)


def nullspace(matrix, ncols):
    """Basis of the right nullspace of a matrix given as a list of rows."""
    rows = [list(r) for r in matrix]
    nrows = len(rows)
    piv_of_col = {}
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        piv_of_col[col] = r
        r += 1
    basis = []
    for free in range(ncols):
        if free in piv_of_col:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for col, piv in piv_of_col.items():
            v[col] = -rows[piv][free]
        basis.append(tuple(v))
    return basis


def affine_basis_indices(points) -> list[int]:
    """Indices of a maximal affinely independent subset, scanning in order.

    The first point is always taken; the result has affine_rank(points)
    entries.
    """
    if not points:
        return []
    chosen = [0]
    directions: list[Vector] = []
    for i in range(1, len(points)):
        d = vec_sub(points[i], points[chosen[0]])
        residual = orthogonal_residual(d, directions)
        if not is_zero_vec(residual):
            directions.append(d)
            chosen.append(i)
    return chosen


def affine_dim(points) -> int:
    return len(affine_basis_indices(points)) - 1 if points else -1


def basis_change_det_sign(basis_from, basis_to) -> int:
    """Sign of det C where columns(basis_from) = columns(basis_to) @ C.

    Both bases must span the same subspace; uses the Gram trick
    det(B^T A) = det(B^T B) det(C) with det(B^T B) > 0.
    """
    g = [[dot(b, a) for a in basis_from] for b in basis_to]
    return det_sign(g)


def fm_feasible(rows, nvars) -> bool:
    """Fourier-Motzkin feasibility for a system of rows (coeffs, rhs)
    meaning coeffs . x >= rhs."""
    system = []
    for coeffs, rhs in rows:
        system.append((tuple(Fraction(c) for c in coeffs), Fraction(rhs)))
    for var in range(nvars):
        pos, neg, rest = [], [], []
        for coeffs, rhs in system:
            c = coeffs[var]
            if c > 0:
                pos.append((coeffs, rhs))
            elif c < 0:
                neg.append((coeffs, rhs))
            else:
                rest.append((coeffs, rhs))
        new = rest
        for pc, pr in pos:
            for nc, nr in neg:
                # eliminate var: scale to cancel, combine lower/upper bounds
                a = pc[var]
                b = -nc[var]
                coeffs = tuple(b * x + a * y for x, y in zip(pc, nc))
                new.append((coeffs, b * pr + a * nr))
        # normalize and dedupe to keep the system small
        seen = {}
        for coeffs, rhs in new:
            scale = None
            for c in coeffs:
                if c != 0:
                    scale = abs(c)
                    break
            if scale is None:
                if rhs > 0:
                    return False
                continue
            key = tuple(c / scale for c in coeffs)
            val = rhs / scale
            if key not in seen or val > seen[key]:
                seen[key] = val
        system = [(k, v) for k, v in seen.items()]
    return all(rhs <= 0 for _, rhs in system)


def convex_position_facets(points):
    """Facets of conv(points) inside its affine hull.

    Returns (facets, normals): for each facet, the frozenset of indices of
    the points lying on it and an inner normal (points of the hull have
    value >= the facet's). Points are assumed pairwise distinct.
    """
    npoints = len(points)
    ambient = len(points[0])
    basis_idx = affine_basis_indices(points)
    d = len(basis_idx) - 1
    if d == 0:
        return [], []
    origin = points[basis_idx[0]]
    hull_dirs = [vec_sub(points[i], origin) for i in basis_idx[1:]]
    facets = {}
    for combo in combinations(range(npoints), d):
        base = points[combo[0]]
        dirs = [vec_sub(points[i], base) for i in combo[1:]]
        if len(affine_basis_indices([points[i] for i in combo])) != d:
            continue
        # normal inside the hull's direction space, orthogonal to the flat
        rows = [[dot(dv, hv) for hv in hull_dirs] for dv in dirs]
        kernel = nullspace(rows, d)
        if len(kernel) != 1:
            continue
        normal = tuple(
            sum((kernel[0][j] * hull_dirs[j][c] for j in range(d)), Fraction(0))
            for c in range(ambient)
        )
        values = [dot(normal, p) for p in points]
        level = values[combo[0]]
        if all(v >= level for v in values):
            inner = normal
        elif all(v <= level for v in values):
            inner = tuple(-x for x in normal)
            values = [-v for v in values]
            level = -level
        else:
            continue
        members = frozenset(i for i in range(npoints) if values[i] == level)
        facets[members] = inner
    return list(facets.keys()), [facets[f] for f in facets.keys()]
