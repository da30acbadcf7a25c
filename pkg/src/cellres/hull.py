"""Hull, Scarf, and Taylor complexes of Artinian monomial ideals.

The hull complex is built from the exact rational convex hull of the
lifted generator points t^alpha: its faces are the hull faces whose inner
normal cone meets the strictly positive orthant, decided by exact linear
feasibility.  Everything is checked for stability by recomputing at t+1.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from . import linalg
from .cellcomplex import (
    Face,
    LabeledCellComplex,
    default_orientation_basis,
    make_complex,
    orient_tops_to,
)
from .errors import CellresError, InputError, PreconditionError
from .monomial import (
    MonomialIdeal,
    is_artinian,
    lcm_many,
    pure_power_exponents,
)


def default_lift_base(n: int) -> int:
    return factorial(n + 1) + 1


def _check_lift_base(n: int, t) -> int:
    if t is None:
        return default_lift_base(n)
    if t < default_lift_base(n):
        raise InputError(f"lift base must be at least {default_lift_base(n)} for n={n}")
    return t


def _lifted_points(M: MonomialIdeal, t: int):
    return [tuple(Fraction(t) ** a for a in g) for g in M.generators]


def _closure_under_intersection(face_sets):
    faces = set(face_sets)
    frontier = set(face_sets)
    while frontier:
        new = set()
        for a in frontier:
            for b in faces:
                c = a & b
                if c and c not in faces and c not in new:
                    new.add(c)
        faces |= new
        frontier = new
    return faces


def _positive_normal_exists(normal_gens, lineality, ambient) -> bool:
    """Whether the cone spanned by the normals plus the lineality space
    contains a strictly positive vector."""
    nvars = len(normal_gens) + len(lineality)
    rows = []
    for coord in range(ambient):
        coeffs = [g[coord] for g in normal_gens] + [w[coord] for w in lineality]
        rows.append((coeffs, Fraction(1)))
    for j in range(len(normal_gens)):
        unit = [Fraction(0)] * nvars
        unit[j] = Fraction(1)
        rows.append((unit, Fraction(0)))
    return linalg.fm_feasible(rows, nvars)


def _bounded_face_sets(points):
    """Vertex-index sets of the bounded faces of conv(points) + R_+^n."""
    npoints = len(points)
    ambient = len(points[0])
    if npoints == 1:
        return [frozenset({0})]
    facets, normals = linalg.convex_position_facets(points)
    basis_idx = linalg.affine_basis_indices(points)
    origin = points[basis_idx[0]]
    hull_dirs = [linalg.vec_sub(points[i], origin) for i in basis_idx[1:]]
    lineality = linalg.nullspace([list(d) for d in hull_dirs], ambient)
    lattice = _closure_under_intersection(
        [frozenset(range(npoints))] + list(facets)
    )
    bounded = []
    for members in lattice:
        gens = [normals[i] for i, fac in enumerate(facets) if members <= fac]
        if _positive_normal_exists(gens, lineality, ambient):
            bounded.append(members)
    for i in range(npoints):
        if frozenset({i}) not in bounded:
            raise CellresError(
                "a generator point is not a vertex of the bounded hull; "
                "the lift base is too small"
            )
    return bounded


def hull_complex(M: MonomialIdeal, t=None, check_stability=True) -> LabeledCellComplex:
    """Bounded faces of conv{t^alpha} + R_+^n with lcm labels.

    Vertices are the minimal generators in descending lexicographic order;
    with ``check_stability`` the face poset is recomputed at t+1 and must
    agree.
    """
    if not is_artinian(M):
        raise PreconditionError("hull complex requires an Artinian ideal")
    t = _check_lift_base(M.n, t)

    def face_sets(base):
        points = _lifted_points(M, base)
        return {tuple(sorted(fs)) for fs in _bounded_face_sets(points)}

    sets_t = face_sets(t)
    if check_stability and face_sets(t + 1) != sets_t:
        raise CellresError("hull face poset differs between t and t+1")
    points = dict(enumerate(_lifted_points(M, t)))
    labels = dict(enumerate(M.generators))
    return make_complex(M.n, points, labels, sets_t, lift_base=t)


def _projection_to_simplex(point, b, t):
    """Intersection of the line through (1,...,1) and the point with the
    hyperplane spanned by the corner points (1,..,t^{b_i},..,1)."""
    weights = [Fraction(1, t**bi - 1) for bi in b]
    denom = sum(
        (w * (p - 1) for w, p in zip(weights, point)), Fraction(0)
    )
    if denom == 0:
        raise PreconditionError("cannot project the all-ones point")
    s = 1 / denom
    return tuple(1 + s * (p - 1) for p in point)


def _corner_vertex_ids(X: LabeledCellComplex, b):
    corners = {}
    for v in sorted(X.vertices):
        label = X.vertex_label(v)
        support = [i for i, e in enumerate(label) if e > 0]
        if len(support) == 1 and label[support[0]] == b[support[0]]:
            corners.setdefault(support[0], v)
    missing = [i for i in range(X.n) if i not in corners]
    if missing:
        raise PreconditionError(
            f"pure powers for variables {missing} are not among the vertex labels"
        )
    return corners


def reference_simplex_face(X: LabeledCellComplex, b) -> Face:
    """Top face of the corner simplex, oriented by ascending variable order."""
    corners = _corner_vertex_ids(X, b)
    pts = [X.vertex_point(corners[i]) for i in range(X.n)]
    if linalg.affine_dim(pts) != X.n - 1:
        raise PreconditionError("corner points are affinely dependent")
    return Face(
        tuple(corners[i] for i in range(X.n)),
        X.n - 1,
        tuple(b),
        default_orientation_basis(pts),
    )


def corner_simplex_complex(X: LabeledCellComplex, b) -> LabeledCellComplex:
    """The simplex complex on X's corner vertices, labeled by the pure powers.

    Vertex ids are the variable indices, so faces are subsets of 0..n-1.
    """
    corners = _corner_vertex_ids(X, b)
    n = X.n
    points = {i: X.vertex_point(corners[i]) for i in range(n)}
    labels = {
        i: tuple(b[i] if j == i else 0 for j in range(n)) for i in range(n)
    }
    subsets = [
        tuple(i for i in range(n) if mask >> i & 1) for mask in range(1, 2**n)
    ]
    return make_complex(n, points, labels, subsets, simplicial=True,
                        lift_base=X.lift_base)


def delta_complex(b, t=None) -> LabeledCellComplex:
    """Simplex complex of the complete intersection (z_1^{b_1},...,z_n^{b_n})."""
    b = tuple(b)
    n = len(b)
    if any(bi < 1 for bi in b):
        raise InputError("pure-power exponents must be positive")
    t = _check_lift_base(n, t)
    points = {
        i: tuple(Fraction(t) ** b[i] if j == i else Fraction(1) for j in range(n))
        for i in range(n)
    }
    labels = {i: tuple(b[i] if j == i else 0 for j in range(n)) for i in range(n)}
    subsets = [
        tuple(i for i in range(n) if mask >> i & 1) for mask in range(1, 2**n)
    ]
    return make_complex(n, points, labels, subsets, simplicial=True, lift_base=t)


def embed_in_simplex(H: LabeledCellComplex, b) -> LabeledCellComplex:
    """Project a hull complex onto the corner simplex along lines through 1.

    Labels and the face poset are unchanged; top faces are flipped to agree
    with the simplex orientation.
    """
    b = tuple(b)
    t = H.lift_base
    if t is None:
        raise PreconditionError("complex carries no lift base; cannot embed")
    _corner_vertex_ids(H, b)
    points = {
        v: _projection_to_simplex(H.vertex_point(v), b, t) for v in H.vertices
    }
    labels = {v: H.vertex_label(v) for v in H.vertices}
    face_sets = [fid for fid in H.faces if len(fid) >= 2]
    embedded = make_complex(H.n, points, labels, face_sets, lift_base=t)
    if embedded.facet_ids != H.facet_ids:
        raise CellresError("projection changed the face poset")
    return orient_tops_to(embedded, reference_simplex_face(embedded, b))


def scarf_complex(M: MonomialIdeal, t=None, max_generators=22) -> LabeledCellComplex:
    """Simplicial complex of generator subsets with a unique lcm.

    Realized on the embedded hull vertex coordinates, with simplex
    orientations from the sorted vertex order.
    """
    r = len(M.generators)
    if r > max_generators:
        raise PreconditionError(
            f"{r} generators exceed the subset-enumeration bound {max_generators}"
        )
    if not is_artinian(M):
        raise PreconditionError("the embedded realization requires an Artinian ideal")
    b = pure_power_exponents(M)
    t = _check_lift_base(M.n, t)

    lcms = [None] * (1 << r)
    counts: dict[tuple, int] = {}
    for mask in range(1, 1 << r):
        low = mask & -mask
        rest = mask ^ low
        gen = M.generators[low.bit_length() - 1]
        lcms[mask] = gen if rest == 0 else lcm_many([lcms[rest], gen])
        counts[lcms[mask]] = counts.get(lcms[mask], 0) + 1
    members = [
        tuple(i for i in range(r) if mask >> i & 1)
        for mask in range(1, 1 << r)
        if counts[lcms[mask]] == 1
    ]
    member_set = set(members)
    for face in members:
        for drop in range(len(face)):
            sub = face[:drop] + face[drop + 1 :]
            if sub and sub not in member_set:
                raise CellresError("unique-lcm subsets are not closed under subsets")

    points = {
        i: _projection_to_simplex(
            tuple(Fraction(t) ** a for a in M.generators[i]), b, t
        )
        for i in range(r)
    }
    labels = dict(enumerate(M.generators))
    return make_complex(M.n, points, labels, members, simplicial=True, lift_base=t)


def taylor_complex(M: MonomialIdeal) -> LabeledCellComplex:
    """Full simplex on the generators, realized on a standard simplex.

    The geometry only matters for boundary-sign consistency; labels carry
    all the algebra.
    """
    r = len(M.generators)
    dim = max(r - 1, 1)
    points = {}
    for i in range(r):
        coords = [Fraction(0)] * dim
        if i < r - 1:
            coords[i] = Fraction(1)
        points[i] = tuple(coords)
    labels = dict(enumerate(M.generators))
    subsets = [
        tuple(i for i in range(r) if mask >> i & 1) for mask in range(1, 1 << r)
    ]
    return make_complex(M.n, points, labels, subsets, simplicial=True)
