"""Independent brute-force oracles for the test suite.

These deliberately avoid the library's computation paths: subset
enumeration instead of join closure, inclusion-exclusion instead of
lattice counting, graded strand ranks with a local elimination instead of
subcomplex homology.
"""

from fractions import Fraction
from itertools import combinations, product


def subset_lcm_lattice(generators):
    """All joins of nonempty generator subsets, by explicit enumeration."""
    gens = [tuple(g) for g in generators]
    lattice = set()
    for size in range(1, len(gens) + 1):
        for combo in combinations(gens, size):
            lattice.add(tuple(max(col) for col in zip(*combo)))
    return lattice


def multiplicity_by_inclusion_exclusion(generators, box):
    """Volume of the staircase inside the box, via inclusion-exclusion over
    the upward cones of the generators."""
    gens = [tuple(g) for g in generators]
    total = 1
    for b in box:
        total *= b
    covered = 0
    for size in range(1, len(gens) + 1):
        for combo in combinations(gens, size):
            join = tuple(max(col) for col in zip(*combo))
            vol = 1
            for b, j in zip(box, join):
                vol *= max(b - j, 0)
            covered += (-1) ** (size + 1) * vol
    return total - covered


def staircase_lattice_points(generators, box):
    """Exponents in [0, box) whose monomials avoid the ideal."""
    gens = [tuple(g) for g in generators]
    points = []
    for beta in product(*(range(b) for b in box)):
        if not any(all(g[i] <= beta[i] for i in range(len(beta))) for g in gens):
            points.append(beta)
    return points


def _rank(rows):
    rows = [[Fraction(x) for x in r] for r in rows]
    if not rows or not rows[0]:
        return 0
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col] / rows[r][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def graded_strand_inexact_degree(free_complex, box):
    """First degree in [0, box] whose graded strand is not exact, or None.

    The strand at beta keeps the basis elements whose label divides z^beta;
    the induced maps are the bare signs.  Exactness at level k >= 0 means
    rank d_k + rank d_{k+1} = dim C_k.
    """
    F = free_complex
    top = F.top
    for beta in product(*(range(b + 1) for b in box)):
        bases = {
            k: [i for i, fid in enumerate(F.basis(k))
                if all(x <= y for x, y in zip(F.labels[fid], beta))]
            for k in range(-1, top + 1)
        }
        ranks = {}
        for k in range(0, top + 1):
            rows = bases[k - 1]
            cols = bases[k]
            matrix = [[F.matrix(k)[i][j].sign for j in cols] for i in rows]
            ranks[k] = _rank(matrix)
        ranks[top + 1] = 0
        for k in range(0, top + 1):
            if ranks[k] + ranks[k + 1] != len(bases[k]):
                return beta
    return None


def smith_diagonal(matrix):
    """Diagonal of an integer Smith-like form (no divisibility fixup)."""
    m = [list(map(int, row)) for row in matrix]
    if not m or not m[0]:
        return []
    nrows, ncols = len(m), len(m[0])
    diag = []
    r = c = 0
    while r < nrows and c < ncols:
        pivot = None
        best = None
        for i in range(r, nrows):
            for j in range(c, ncols):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < best):
                    best = abs(m[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        m[r], m[i] = m[i], m[r]
        for row in m:
            row[c], row[j] = row[j], row[c]
        while True:
            reduced = False
            for i in range(r + 1, nrows):
                if m[i][c] != 0:
                    q = m[i][c] // m[r][c]
                    for k in range(c, ncols):
                        m[i][k] -= q * m[r][k]
                    if m[i][c] != 0:
                        m[r], m[i] = m[i], m[r]
                        reduced = True
            for j in range(c + 1, ncols):
                if m[r][j] != 0:
                    q = m[r][j] // m[r][c]
                    for i in range(r, nrows):
                        m[i][j] -= q * m[i][c]
                    if m[r][j] != 0:
                        for row in m:
                            row[c], row[j] = row[j], row[c]
                        reduced = True
            if not reduced:
                break
        diag.append(abs(m[r][c]))
        r += 1
        c += 1
    return [d for d in diag if d != 0]
