"""Residue currents of cellular resolutions, in closed form and via chain maps.

A current entry is a signed product of antiholomorphic derivatives of
principal values of coordinate powers, kept in the fixed descending
variable order; its action on monomial test coefficients is exact
coefficient extraction, so every identity here is an integer identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .cellcomplex import (
    LabeledCellComplex,
    contained_faces,
    is_refinement,
    sign_same_span,
)
from .errors import PreconditionError
from .hull import corner_simplex_complex
from .monomial import MonomialIdeal, contains, minimize, pure_power_exponents
from .resolution import (
    SignedMonomial,
    cellular_complex,
    exactness_witness,
    poly_matmul,
    zero_entry,
)


@dataclass(frozen=True)
class CHProduct:
    """sign * dbar[1/z_n^{a_n}] ^ ... ^ dbar[1/z_1^{a_1}]; sign 0 is the
    absorbed zero element."""

    sign: int
    alpha: tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return self.sign == 0


def ch_zero(n: int) -> CHProduct:
    return CHProduct(0, (0,) * n)


def ch_product(sign: int, alpha) -> CHProduct:
    alpha = tuple(alpha)
    if sign not in (-1, 1) or any(a < 1 for a in alpha):
        raise PreconditionError("a nonzero product needs sign +-1 and exponents >= 1")
    return CHProduct(sign, alpha)


@dataclass(frozen=True)
class ResidueCurrent:
    n: int
    entries: dict


@dataclass(frozen=True)
class ChainMap:
    """Maps a_k from the corner-simplex resolution into the refined one."""

    levels: dict[int, tuple[tuple[SignedMonomial, ...], ...]]
    row_bases: dict[int, tuple]
    col_bases: dict[int, tuple]


def _reference_complex(X: LabeledCellComplex, b):
    b = tuple(b)
    Y = corner_simplex_complex(X, b)
    if not is_refinement(X, Y):
        raise PreconditionError("complex does not refine the corner simplex")
    return Y


def _check_exact(X: LabeledCellComplex):
    M = minimize([X.vertex_label(v) for v in X.vertices])
    F = cellular_complex(X)
    witness = exactness_witness(F, X, M)
    if witness is not None:
        raise PreconditionError(f"complex is not a resolution; fails at degree {witness}")


def residue_current(X: LabeledCellComplex, b, check=True) -> ResidueCurrent:
    """Closed form: one entry per top face, the signed product of its label.

    The sign compares the face's orientation with the corner simplex; the
    complex must refine the simplex and support an exact complex.
    """
    if check:
        Y = _reference_complex(X, b)
        _check_exact(X)
    else:
        Y = corner_simplex_complex(X, tuple(b))
    delta = Y.face(tuple(range(X.n)))
    entries = {}
    for fid in X.faces_of_dim(X.n - 1):
        face = X.face(fid)
        entries[fid] = ch_product(sign_same_span(face, delta), face.label)
    return ResidueCurrent(X.n, entries)


def ch_action(c: CHProduct, beta) -> int:
    """Action on the monomial test coefficient z^beta, in units of (2 pi i)^n:
    the sign when beta is exactly alpha - 1, else zero."""
    beta = tuple(beta)
    if any(x < 0 for x in beta):
        raise PreconditionError("test exponents must be nonnegative")
    if c.is_zero:
        return 0
    if beta == tuple(a - 1 for a in c.alpha):
        return c.sign
    return 0


def monomial_times_ch(gamma, c: CHProduct) -> CHProduct:
    """z^gamma times the product: lowers the exponents, or annihilates."""
    gamma = tuple(gamma)
    if any(g < 0 for g in gamma):
        raise PreconditionError("monomial exponents must be nonnegative")
    if c.is_zero:
        return c
    alpha = tuple(a - g for a, g in zip(c.alpha, gamma))
    if all(a >= 1 for a in alpha):
        return CHProduct(c.sign, alpha)
    return ch_zero(len(gamma))


def chain_maps(X: LabeledCellComplex, b) -> ChainMap:
    """Comparison maps from the corner-simplex complex into X.

    a_k sends a simplex face to the signed label quotients of the X-faces
    of the same dimension it contains; a_{-1} is the identity.
    """
    b = tuple(b)
    Y = _reference_complex(X, b)
    n = X.n
    levels = {}
    row_bases = {}
    col_bases = {}
    row_bases[-1] = ((),)
    col_bases[-1] = ((),)
    levels[-1] = ((SignedMonomial(1, (0,) * n),),)
    for k in range(0, n):
        rows = tuple(X.faces_of_dim(k))
        cols = tuple(Y.faces_of_dim(k))
        row_index = {fid: i for i, fid in enumerate(rows)}
        matrix = [[zero_entry(n) for _ in cols] for _ in rows]
        for j, sid in enumerate(cols):
            sigma = Y.face(sid)
            for fid in contained_faces(Y, sid, X, k):
                face = X.face(fid)
                exp = tuple(s - f for s, f in zip(sigma.label, face.label))
                matrix[row_index[fid]][j] = SignedMonomial(
                    sign_same_span(face, sigma), exp
                )
        levels[k] = tuple(tuple(row) for row in matrix)
        row_bases[k] = rows
        col_bases[k] = cols
    return ChainMap(levels, row_bases, col_bases)


def verify_chain_maps(X: LabeledCellComplex, b, maps: ChainMap | None = None):
    """Exact polynomial check that the comparison square commutes at every
    level; returns (ok, witness) with the first failing level and faces."""
    b = tuple(b)
    if maps is None:
        maps = chain_maps(X, b)
    Y = corner_simplex_complex(X, b)
    phi = cellular_complex(X)
    psi = cellular_complex(Y)
    n = X.n
    for k in range(0, n):
        lhs = poly_matmul(maps.levels[k - 1], psi.matrix(k), n)
        rhs = poly_matmul(phi.matrix(k), maps.levels[k], n)
        rows = phi.basis(k - 1)
        cols = psi.basis(k)
        for i in range(len(rows)):
            for j in range(len(cols)):
                if lhs[i][j] != rhs[i][j]:
                    return False, (k, rows[i], cols[j])
    return True, None


def residue_via_chain_maps(X: LabeledCellComplex, b, check=True) -> ResidueCurrent:
    """Transport the corner-simplex current through the top comparison map.

    The simplex complex carries the product of the pure powers with sign
    +1 under its fixed orientation; each top face of X picks up its label
    quotient.  Must agree entrywise with the closed form.
    """
    b = tuple(b)
    if check:
        ok, witness = verify_chain_maps(X, b)
        if not ok:
            raise PreconditionError(f"comparison square does not commute at {witness}")
        _check_exact(X)
    maps = chain_maps(X, b)
    n = X.n
    top = maps.levels[n - 1]
    rows = maps.row_bases[n - 1]
    koszul = ch_product(1, b)
    entries = {}
    for i, fid in enumerate(rows):
        entry = top[i][0]
        if entry.sign == 0:
            raise PreconditionError(f"top face {fid} is missing from the chain map")
        transported = monomial_times_ch(entry.exp, koszul)
        entries[fid] = CHProduct(entry.sign * transported.sign, transported.alpha)
    return ResidueCurrent(n, entries)


def annihilator_contains(R: ResidueCurrent, beta) -> bool:
    """Whether z^beta kills every entry: some exponent reaches alpha in each."""
    beta = tuple(beta)
    for c in R.entries.values():
        if c.is_zero:
            continue
        if not any(beta[i] >= c.alpha[i] for i in range(len(beta))):
            return False
    return True


def duality_counterexample(R: ResidueCurrent, M: MonomialIdeal, box=None):
    """First exponent in [0, box] where annihilation and membership differ."""
    if box is None:
        box = pure_power_exponents(M)
    box = tuple(box)
    for beta in product(*(range(x + 1) for x in box)):
        if annihilator_contains(R, beta) != contains(M, beta):
            return beta
    return None


def duality_check(R: ResidueCurrent, M: MonomialIdeal, box=None) -> bool:
    return duality_counterexample(R, M, box) is None
