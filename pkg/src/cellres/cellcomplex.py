"""Oriented polyhedral cell complexes with monomial vertex labels.

Coordinates are exact rationals.  Each face carries an orientation as an
ordered spanning basis of its direction space; a face's label is the
componentwise maximum of its vertices' labels.  The empty face (dimension
-1, label the zero vector) is always part of a complex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import linalg
from .errors import InputError, PreconditionError
from .monomial import divides, lcm_many

EMPTY = ()


@dataclass(frozen=True)
class Face:
    vertices: tuple
    dim: int
    label: tuple[int, ...]
    basis: tuple[tuple[Fraction, ...], ...]


class LabeledCellComplex:
    """Immutable cell complex; all queries are pure.

    ``vertices`` maps vertex id to (point, label); ``faces`` maps the face
    id (the sorted tuple of its vertex ids) to its Face; ``facet_ids`` maps
    each face to its codimension-one faces.
    """

    def __init__(self, n, vertices, faces, facet_ids, lift_base=None, signs=None):
        self.n = n
        self.vertices = vertices
        self.faces = faces
        self.facet_ids = facet_ids
        self.lift_base = lift_base
        self._signs = {} if signs is None else signs
        self._triangulations = {}

    @property
    def dim(self) -> int:
        return max(f.dim for f in self.faces.values())

    @property
    def ambient_dim(self) -> int:
        point, _ = next(iter(self.vertices.values()))
        return len(point)

    def face(self, fid) -> Face:
        return self.faces[fid]

    def vertex_point(self, vid):
        return self.vertices[vid][0]

    def vertex_label(self, vid):
        return self.vertices[vid][1]

    def faces_of_dim(self, k) -> list:
        return sorted(fid for fid, f in self.faces.items() if f.dim == k)

    def facets(self, fid) -> tuple:
        return self.facet_ids[fid]

    def barycenter(self, fid):
        ids = self.faces[fid].vertices
        m = len(ids)
        coords = [self.vertex_point(v) for v in ids]
        return tuple(sum(c, Fraction(0)) / m for c in zip(*coords))

    def face_points(self, fid):
        return [self.vertex_point(v) for v in self.faces[fid].vertices]


def default_orientation_basis(points):
    """Orientation basis from the first affinely independent points in order.

    For the chosen points q_0 < ... < q_k this is the simplex convention
    (q_0 - q_k, ..., q_{k-1} - q_k).
    """
    idx = linalg.affine_basis_indices(points)
    if len(idx) <= 1:
        return ()
    chosen = [points[i] for i in idx]
    last = chosen[-1]
    return tuple(linalg.vec_sub(p, last) for p in chosen[:-1])


def _validate_basis(basis, dirs, dim, fid):
    if len(basis) != max(dim, 0):
        raise InputError(f"face {fid}: orientation basis must have {dim} vectors")
    if dim <= 0:
        return
    if linalg.rank(basis) != dim:
        raise InputError(f"face {fid}: degenerate orientation basis")
    for b in basis:
        if not linalg.is_zero_vec(linalg.orthogonal_residual(b, dirs)):
            raise InputError(f"face {fid}: basis vector outside the face's span")


def _face_dirs(points):
    return [linalg.vec_sub(p, points[0]) for p in points[1:]]


def _geometric_facets(points_by_vertex, sigma_ids, candidates):
    """Facet candidates of a face, by exact supporting-flat tests.

    ``candidates`` are vertex-id tuples with one dimension less; a candidate
    is a facet when the face lies weakly on one side of the candidate's
    affine hull and touches it exactly in the candidate's vertices.
    """
    sigma_pts = [points_by_vertex[v] for v in sigma_ids]
    bary = tuple(
        sum(c, Fraction(0)) / len(sigma_pts) for c in zip(*sigma_pts)
    )
    facets = []
    for tau in candidates:
        if not set(tau) < set(sigma_ids):
            continue
        tau_pts = [points_by_vertex[v] for v in tau]
        dirs = _face_dirs(tau_pts)
        normal = linalg.orthogonal_residual(linalg.vec_sub(bary, tau_pts[0]), dirs)
        if linalg.is_zero_vec(normal):
            continue
        values = {
            v: linalg.dot(normal, linalg.vec_sub(points_by_vertex[v], tau_pts[0]))
            for v in sigma_ids
        }
        if all(val >= 0 for val in values.values()) and set(tau) == {
            v for v, val in values.items() if val == 0
        }:
            facets.append(tau)
    return facets


def make_complex(
    n,
    vertex_points,
    vertex_labels,
    face_sets,
    bases=None,
    lift_base=None,
    simplicial=False,
):
    """Assemble a labeled complex from vertex data and face vertex sets.

    Singleton faces and the empty face are added automatically.  With
    ``simplicial`` every face must span a simplex and incidence is taken
    combinatorially; otherwise facets are found geometrically.
    """
    bases = dict(bases or {})
    ids = sorted(vertex_points)
    if not ids:
        raise InputError("a complex needs at least one vertex")
    if sorted(vertex_labels) != ids:
        raise InputError("vertex points and labels must share the same ids")
    points = {v: linalg.vec(vertex_points[v]) for v in ids}
    ambient = {len(p) for p in points.values()}
    if len(ambient) != 1:
        raise InputError("vertex coordinates must share one ambient dimension")
    if len({points[v] for v in ids}) != len(ids):
        raise InputError("vertex coordinates must be pairwise distinct")
    for v in ids:
        if len(vertex_labels[v]) != n or any(e < 0 for e in vertex_labels[v]):
            raise InputError(f"vertex {v}: label must be a nonnegative vector of length {n}")

    face_ids = {tuple(sorted(fs)) for fs in face_sets}
    face_ids |= {(v,) for v in ids}
    face_ids.discard(EMPTY)
    for fid in face_ids:
        for v in fid:
            if v not in points:
                raise InputError(f"face {fid} references unknown vertex {v}")

    faces = {}
    zero_label = (0,) * n
    faces[EMPTY] = Face(EMPTY, -1, zero_label, ())
    for fid in sorted(face_ids):
        pts = [points[v] for v in fid]
        dim = linalg.affine_dim(pts)
        if simplicial and dim != len(fid) - 1:
            raise InputError(f"face {fid}: degenerate simplex realization")
        label = lcm_many([tuple(vertex_labels[v]) for v in fid])
        basis = bases.get(fid)
        if basis is None:
            basis = default_orientation_basis(pts)
        else:
            basis = tuple(linalg.vec(b) for b in basis)
        _validate_basis(basis, _face_dirs(pts), dim, fid)
        faces[fid] = Face(fid, dim, label, basis)

    # closure under vertex-set intersections (faces of a complex intersect
    # in common faces)
    listed = sorted(face_ids)
    for i in range(len(listed)):
        for j in range(i + 1, len(listed)):
            inter = tuple(sorted(set(listed[i]) & set(listed[j])))
            if inter and inter not in faces:
                raise InputError(
                    f"faces {listed[i]} and {listed[j]} meet in {inter}, "
                    "which is not a face of the complex"
                )

    facet_ids = {EMPTY: ()}
    by_dim = {}
    for fid, f in faces.items():
        by_dim.setdefault(f.dim, []).append(fid)
    for fid in sorted(face_ids):
        f = faces[fid]
        if f.dim == 0:
            facet_ids[fid] = (EMPTY,)
            continue
        candidates = [t for t in by_dim.get(f.dim - 1, []) if set(t) < set(fid)]
        if simplicial:
            found = sorted(candidates)
            if len(found) != len(fid):
                raise InputError(f"face {fid}: missing simplex facets")
        else:
            found = sorted(_geometric_facets(points, fid, candidates))
            if len(found) < f.dim + 1:
                raise InputError(f"face {fid}: boundary is not covered by listed faces")
        facet_ids[fid] = tuple(found)

    vertices = {v: (points[v], tuple(vertex_labels[v])) for v in ids}
    return LabeledCellComplex(n, vertices, faces, facet_ids, lift_base=lift_base)


def sign_facet(X: LabeledCellComplex, tau_id, sigma_id) -> int:
    """Incidence sign of a facet: orientation of (inward normal, facet basis)
    against the face's orientation."""
    key = (tau_id, sigma_id)
    cached = X._signs.get(key)
    if cached is not None:
        return cached
    sigma = X.face(sigma_id)
    if tau_id not in X.facets(sigma_id):
        raise PreconditionError(f"{tau_id} is not a facet of {sigma_id}")
    if sigma.dim == 0:
        X._signs[key] = 1
        return 1
    tau = X.face(tau_id)
    eta = linalg.orthogonal_residual(
        linalg.vec_sub(X.barycenter(sigma_id), X.barycenter(tau_id)), tau.basis
    )
    if linalg.is_zero_vec(eta):
        raise PreconditionError(f"degenerate inward normal for {tau_id} in {sigma_id}")
    columns = (eta,) + tau.basis
    sign = linalg.det_sign([[linalg.dot(b, c) for c in columns] for b in sigma.basis])
    if sign == 0:
        raise PreconditionError(f"degenerate orientation data for {tau_id} in {sigma_id}")
    X._signs[key] = sign
    return sign


def sign_same_span(face_a: Face, face_b: Face) -> int:
    """Orientation comparison of two faces spanning the same subspace."""
    if face_a.dim != face_b.dim:
        raise PreconditionError("orientation comparison needs equal dimensions")
    if face_a.dim <= 0:
        return 1
    for u in face_a.basis:
        if not linalg.is_zero_vec(linalg.orthogonal_residual(u, face_b.basis)):
            raise PreconditionError("orientation comparison needs equal spans")
    sign = linalg.basis_change_det_sign(face_a.basis, face_b.basis)
    if sign == 0:
        raise PreconditionError("degenerate orientation basis")
    return sign


def cofaces(X: LabeledCellComplex, tau_id, k) -> list:
    """Faces of dimension k having the given (k-1)-face as a facet."""
    if X.face(tau_id).dim != k - 1:
        raise PreconditionError("coface query needs a face of dimension k-1")
    return [fid for fid in X.faces_of_dim(k) if tau_id in X.facets(fid)]


def subcomplex_leq(X: LabeledCellComplex, beta) -> LabeledCellComplex:
    """Subcomplex of faces whose label divides z^beta."""
    beta = tuple(beta)
    keep = {fid for fid, f in X.faces.items() if divides(f.label, beta)}
    faces = {fid: X.faces[fid] for fid in keep}
    facet_ids = {fid: X.facet_ids[fid] for fid in keep}
    vertices = {fid[0]: X.vertices[fid[0]] for fid in keep if len(fid) == 1}
    sub = LabeledCellComplex(X.n, vertices, faces, facet_ids, lift_base=X.lift_base,
                             signs=X._signs)
    return sub


def reoriented(X: LabeledCellComplex, flip_ids) -> LabeledCellComplex:
    """Copy of X with the orientation of the given faces reversed."""
    faces = {}
    for fid, f in X.faces.items():
        if fid in flip_ids and f.dim >= 1:
            basis = (linalg.vec_scale(Fraction(-1), f.basis[0]),) + f.basis[1:]
            faces[fid] = Face(f.vertices, f.dim, f.label, basis)
        else:
            faces[fid] = f
    return LabeledCellComplex(X.n, X.vertices, faces, X.facet_ids,
                              lift_base=X.lift_base)


def barycentric_coordinates(point, simplex_points):
    """Coefficients of point as an affine combination of simplex vertices,
    or None when the point is outside the affine hull."""
    rows = [[p[c] for p in simplex_points] for c in range(len(point))]
    rows.append([Fraction(1)] * len(simplex_points))
    rhs = list(point) + [Fraction(1)]
    return linalg.solve(rows, rhs)


def point_in_simplex(point, simplex_points) -> bool:
    coords = barycentric_coordinates(point, simplex_points)
    return coords is not None and all(c >= 0 for c in coords)


def _face_in_simplex(X, fid, simplex_points) -> bool:
    return all(
        point_in_simplex(X.vertex_point(v), simplex_points)
        for v in X.face(fid).vertices
    )


def _triangulate(X: LabeledCellComplex, fid):
    """Simplices (as vertex-id tuples) decomposing a face, via its own
    facet structure."""
    cached = X._triangulations.get(fid)
    if cached is not None:
        return cached
    face = X.face(fid)
    if face.dim <= 0 or len(face.vertices) == face.dim + 1:
        result = [face.vertices]
    else:
        apex = face.vertices[0]
        result = []
        for tau in X.facets(fid):
            if apex in tau:
                continue
            for s in _triangulate(X, tau):
                result.append((apex,) + s)
    X._triangulations[fid] = result
    return result


def _coords_in_basis(v, basis):
    rows = [[b[c] for b in basis] for c in range(len(v))]
    coords = linalg.solve(rows, list(v))
    if coords is None:
        raise PreconditionError("vector outside the reference span")
    return coords


def face_volume_rel(X: LabeledCellComplex, fid, basis, origin) -> Fraction:
    """k-dimensional volume of a face measured in the given reference basis.

    The face must be parallel to span(basis); volumes of same-span faces
    measured against one basis compare and add exactly.
    """
    face = X.face(fid)
    k = face.dim
    if k <= 0:
        return Fraction(1)
    total = Fraction(0)
    for simplex in _triangulate(X, fid):
        p0 = X.vertex_point(simplex[0])
        edges = [
            _coords_in_basis(linalg.vec_sub(X.vertex_point(v), p0), basis)
            for v in simplex[1:]
        ]
        total += abs(linalg.det(edges))
    return total / factorial(k)


def _check_simplex_complex(Y: LabeledCellComplex):
    ids = sorted(Y.vertices)
    m = len(ids)
    if linalg.affine_dim([Y.vertex_point(v) for v in ids]) != m - 1:
        raise PreconditionError("reference complex vertices are affinely dependent")
    expected = 2 ** m
    if len(Y.faces) != expected or tuple(ids) not in Y.faces:
        raise PreconditionError("reference complex is not the face set of one simplex")


def is_refinement(X: LabeledCellComplex, Y: LabeledCellComplex) -> bool:
    """Whether X subdivides the simplex complex Y compatibly with labels.

    Checks that X covers |Y| exactly (vertices inside, volumes adding up
    facewise) and that geometric containment implies label divisibility.
    """
    _check_simplex_complex(Y)
    top = Y.faces_of_dim(Y.dim)[0]
    top_points = Y.face_points(top)
    for v in X.vertices:
        if not point_in_simplex(X.vertex_point(v), top_points):
            return False
    for k in range(0, Y.dim + 1):
        for sid in Y.faces_of_dim(k):
            spts = Y.face_points(sid)
            inside = [fid for fid in X.faces_of_dim(k) if _face_in_simplex(X, fid, spts)]
            if k == 0:
                if len(inside) != 1:
                    return False
                continue
            basis = Y.face(sid).basis
            origin = spts[0]
            try:
                total = sum(
                    (face_volume_rel(X, fid, basis, origin) for fid in inside),
                    Fraction(0),
                )
            except PreconditionError:
                return False
            if total != face_volume_rel(Y, sid, basis, origin):
                return False
    for sid, sface in Y.faces.items():
        if sface.dim < 0:
            continue
        spts = Y.face_points(sid)
        for fid, f in X.faces.items():
            if f.dim < 0 or f.dim > sface.dim:
                continue
            if _face_in_simplex(X, fid, spts) and not divides(f.label, sface.label):
                return False
    return True


def _simplex_variable(Y: LabeledCellComplex, vid) -> int:
    label = Y.vertex_label(vid)
    support = [i for i, e in enumerate(label) if e > 0]
    if len(support) != 1:
        raise PreconditionError("reference vertex labels must be pure powers")
    return support[0]


def contained_faces(Y: LabeledCellComplex, sigma_id, X: LabeledCellComplex, k) -> list:
    """Faces of X of dimension k inside a k-face of the reference simplex.

    Combines the label-support test with exact barycentric containment of
    the vertices; the two agree on genuine refinements.
    """
    sigma = Y.face(sigma_id)
    if sigma.dim != k:
        raise PreconditionError("contained-face query needs a face of dimension k")
    allowed = {_simplex_variable(Y, v) for v in sigma.vertices}
    spts = Y.face_points(sigma_id)
    result = []
    for fid in X.faces_of_dim(k):
        label = X.face(fid).label
        support_ok = all(
            i in allowed
            for v in fid
            for i, e in enumerate(X.vertex_label(v))
            if e > 0
        )
        geometric_ok = _face_in_simplex(X, fid, spts)
        if support_ok != geometric_ok:
            raise PreconditionError(
                f"support and geometry disagree on {fid}: X does not refine the simplex"
            )
        if support_ok:
            result.append(fid)
    return result


def orient_tops_to(X: LabeledCellComplex, reference: Face) -> LabeledCellComplex:
    """Flip top-dimensional faces so each agrees with the reference orientation."""
    flips = {
        fid
        for fid in X.faces_of_dim(X.dim)
        if sign_same_span(X.face(fid), reference) < 0
    }
    return reoriented(X, flips) if flips else X


def _fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def complex_to_json(X: LabeledCellComplex) -> dict:
    vertices = [
        {
            "id": v,
            "coords": [_fraction_str(c) for c in X.vertex_point(v)],
            "label": list(X.vertex_label(v)),
        }
        for v in sorted(X.vertices)
    ]
    faces = [
        {
            "vertices": list(fid),
            "dim": X.face(fid).dim,
            "label": list(X.face(fid).label),
        }
        for fid in sorted(X.faces, key=lambda f: (X.face(f).dim, f))
        if len(fid) >= 2
    ]
    return {"n": X.n, "vertices": vertices, "faces": faces}


def complex_from_json(obj) -> LabeledCellComplex:
    """Load a complex from its JSON form; see complex_to_json for the shape.

    Coordinates are exact rational strings.  Faces with omitted bases get
    the deterministic orientation rule; if the labels carry a full set of
    pure powers and the top faces span the corresponding simplex, top faces
    are flipped to agree with it.
    """
    if not isinstance(obj, dict) or not {"vertices", "faces"} <= set(obj):
        raise InputError('complex JSON needs "vertices" and "faces"')
    extra = set(obj) - {"vertices", "faces", "n", "schema"}
    if extra:
        raise InputError(f"complex JSON has unknown keys: {sorted(extra)}")
    points, labels = {}, {}
    for entry in obj["vertices"]:
        if set(entry) != {"id", "coords", "label"}:
            raise InputError('complex vertices need exactly "id", "coords", "label"')
        vid = entry["id"]
        if vid in points:
            raise InputError(f"duplicate vertex id {vid}")
        points[vid] = tuple(Fraction(c) for c in entry["coords"])
        labels[vid] = tuple(int(e) for e in entry["label"])
    n = obj.get("n", len(next(iter(labels.values()))) if labels else 0)
    face_sets = []
    bases = {}
    for entry in obj["faces"]:
        unknown = set(entry) - {"vertices", "orientation_basis", "dim", "label"}
        if unknown:
            raise InputError(f"complex face has unknown keys: {sorted(unknown)}")
        fid = tuple(sorted(entry["vertices"]))
        face_sets.append(fid)
        if "orientation_basis" in entry:
            bases[fid] = [
                tuple(Fraction(c) for c in row) for row in entry["orientation_basis"]
            ]
    X = make_complex(n, points, labels, face_sets, bases=bases)
    for entry in obj["faces"]:
        fid = tuple(sorted(entry["vertices"]))
        if "label" in entry and tuple(entry["label"]) != X.face(fid).label:
            raise InputError(f"face {fid}: stated label disagrees with the vertex lcm")
        if "dim" in entry and entry["dim"] != X.face(fid).dim:
            raise InputError(f"face {fid}: stated dimension disagrees with the geometry")
    return _orient_tops_by_pure_powers(X)


def _orient_tops_by_pure_powers(X: LabeledCellComplex) -> LabeledCellComplex:
    """Apply the canonical top orientation when the corner simplex is visible."""
    corners = {}
    for v in X.vertices:
        label = X.vertex_label(v)
        support = [i for i, e in enumerate(label) if e > 0]
        if len(support) == 1 and support[0] not in corners:
            corners[support[0]] = v
    if sorted(corners) != list(range(X.n)) or X.dim != X.n - 1:
        return X
    pts = [X.vertex_point(corners[i]) for i in range(X.n)]
    if linalg.affine_dim(pts) != X.n - 1:
        return X
    reference = Face(
        tuple(range(X.n)),
        X.n - 1,
        lcm_many([X.vertex_label(corners[i]) for i in range(X.n)]),
        default_orientation_basis(pts),
    )
    try:
        return orient_tops_to(X, reference)
    except PreconditionError:
        return X
