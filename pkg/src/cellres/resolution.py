"""Free complexes supported on labeled cell complexes.

Matrix entries are signed monomials; boundary-squared and all exactness
checks are exact polynomial identities over the integers/rationals.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .cellcomplex import LabeledCellComplex, sign_facet, subcomplex_leq
from .errors import CellresError, PreconditionError
from .monomial import MonomialIdeal, lcm_lattice, minimize


@dataclass(frozen=True)
class SignedMonomial:
    sign: int
    exp: tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return self.sign == 0


def zero_entry(n: int) -> SignedMonomial:
    return SignedMonomial(0, (0,) * n)


@dataclass(frozen=True)
class FreeComplex:
    """Graded free complex: bases of face ids per level and the boundary
    matrices phi_k: A_k -> A_{k-1} as signed-monomial matrices."""

    n: int
    levels: dict[int, tuple]
    labels: dict
    matrices: dict[int, tuple[tuple[SignedMonomial, ...], ...]]

    @property
    def top(self) -> int:
        return max(self.levels)

    def basis(self, k) -> tuple:
        return self.levels.get(k, ())

    def matrix(self, k):
        return self.matrices[k]


def _exp_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def poly_matmul(a, b, n):
    """Product of signed-monomial matrices as polynomial matrices.

    Entries of the result are dicts exponent -> integer coefficient with
    zero coefficients dropped.
    """
    rows = len(a)
    inner = len(b)
    cols = len(b[0]) if inner else 0
    if a and len(a[0]) != inner:
        raise CellresError("matrix dimensions do not match")
    result = [[{} for _ in range(cols)] for _ in range(rows)]
    for i in range(rows):
        for j in range(cols):
            acc = result[i][j]
            for k in range(inner):
                x, y = a[i][k], b[k][j]
                if x.sign == 0 or y.sign == 0:
                    continue
                e = tuple(p + q for p, q in zip(x.exp, y.exp))
                c = acc.get(e, 0) + x.sign * y.sign
                if c:
                    acc[e] = c
                else:
                    acc.pop(e, None)
    return result


def poly_matrix_is_zero(p) -> bool:
    return all(not entry for row in p for entry in row)


def cellular_complex(X: LabeledCellComplex) -> FreeComplex:
    """Boundary matrices with entries sign(tau,sigma) z^{m_sigma - m_tau}.

    Verifies that consecutive matrices compose to zero.
    """
    n = X.n
    top = X.dim
    levels = {k: tuple(X.faces_of_dim(k)) for k in range(-1, top + 1)}
    labels = {fid: X.face(fid).label for fid in X.faces}
    matrices = {}
    for k in range(0, top + 1):
        rows = levels[k - 1]
        cols = levels[k]
        row_index = {fid: i for i, fid in enumerate(rows)}
        matrix = [[zero_entry(n) for _ in cols] for _ in rows]
        for j, sigma in enumerate(cols):
            for tau in X.facets(sigma):
                i = row_index[tau]
                matrix[i][j] = SignedMonomial(
                    sign_facet(X, tau, sigma), _exp_sub(labels[sigma], labels[tau])
                )
        matrices[k] = tuple(tuple(row) for row in matrix)
    for k in range(1, top + 1):
        if not poly_matrix_is_zero(poly_matmul(matrices[k - 1], matrices[k], n)):
            raise CellresError(
                f"boundary squared is nonzero between levels {k} and {k-2}; "
                "orientation data is inconsistent"
            )
    return FreeComplex(n, levels, labels, matrices)


def reduced_homology_ranks(X_sub: LabeledCellComplex) -> list[int]:
    """Ranks of reduced rational homology in degrees -1 .. dim.

    Uses the augmented chain complex (the empty face included) with
    fraction-free integer rank computations.
    """
    top = X_sub.dim
    if top < 0:
        raise PreconditionError("homology of the complex with no nonempty faces")
    levels = {k: X_sub.faces_of_dim(k) for k in range(-1, top + 1)}
    boundary_rank = {}
    for k in range(0, top + 1):
        rows = levels[k - 1]
        cols = levels[k]
        row_index = {fid: i for i, fid in enumerate(rows)}
        matrix = [[0] * len(cols) for _ in rows]
        for j, sigma in enumerate(cols):
            for tau in X_sub.facets(sigma):
                matrix[row_index[tau]][j] = sign_facet(X_sub, tau, sigma)
        boundary_rank[k] = linalg.bareiss_rank(matrix)
    boundary_rank[top + 1] = 0
    boundary_rank[-1] = 0
    return [
        len(levels[k]) - boundary_rank[k] - boundary_rank[k + 1]
        for k in range(-1, top + 1)
    ]


def exactness_witness(F: FreeComplex, X: LabeledCellComplex, M: MonomialIdeal):
    """First degree in the lcm lattice where acyclicity fails, or None.

    The scan over the lattice joins (plus zero) is sufficient because the
    subcomplex of faces dividing a degree only changes at joins.
    """
    vertex_ideal = minimize([X.vertex_label(v) for v in X.vertices])
    if vertex_ideal.generators != M.generators:
        raise PreconditionError("vertex labels do not generate the given ideal")
    degrees = sorted(lcm_lattice(M) | {(0,) * M.n})
    for beta in degrees:
        sub = subcomplex_leq(X, beta)
        if sub.dim < 0:
            continue
        ranks = reduced_homology_ranks(sub)
        if any(ranks):
            return beta
    return None


def is_exact(F: FreeComplex, X: LabeledCellComplex, M: MonomialIdeal) -> bool:
    return exactness_witness(F, X, M) is None


def minimality_witness(F: FreeComplex):
    """A facet pair with equal labels (a unit matrix entry), or None."""
    for k in sorted(F.matrices):
        rows = F.basis(k - 1)
        cols = F.basis(k)
        matrix = F.matrix(k)
        for i, row in enumerate(rows):
            for j, col in enumerate(cols):
                entry = matrix[i][j]
                if entry.sign != 0 and all(e == 0 for e in entry.exp):
                    return (row, col)
    return None


def is_minimal(F: FreeComplex) -> bool:
    return minimality_witness(F) is None
