"""Monomial ideals as sets of exponent vectors.

Monomials are exponent tuples of arbitrary-precision nonnegative integers;
an ideal is stored by its divisibility-minimal generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import InputError, PreconditionError

ExponentVector = tuple[int, ...]


def _check_vector(v, n=None) -> ExponentVector:
    t = tuple(v)
    if n is not None and len(t) != n:
        raise InputError(f"exponent vector {t} has length {len(t)}, expected {n}")
    for x in t:
        if not isinstance(x, int) or isinstance(x, bool) or x < 0:
            raise InputError(f"exponent vector entries must be nonnegative integers: {t}")
    return t


def divides(a: ExponentVector, b: ExponentVector) -> bool:
    """Componentwise a <= b, i.e. z^a divides z^b."""
    return all(x <= y for x, y in zip(a, b))


def lcm(a: ExponentVector, b: ExponentVector) -> ExponentVector:
    """Componentwise maximum (least common multiple of the monomials)."""
    if len(a) != len(b):
        raise InputError("lcm of exponent vectors of different lengths")
    return tuple(max(x, y) for x, y in zip(a, b))


def lcm_many(vectors) -> ExponentVector:
    vectors = list(vectors)
    result = vectors[0]
    for v in vectors[1:]:
        result = lcm(result, v)
    return result


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by its minimal monomial generators.

    Generators are kept sorted in descending lexicographic order, which for
    staircase ideals in two variables lists them by decreasing first
    exponent.
    """

    n: int
    generators: tuple[ExponentVector, ...]

    def __post_init__(self):
        if self.n < 1:
            raise InputError("ambient dimension must be >= 1")
        if not self.generators:
            raise InputError("a monomial ideal needs at least one generator")


def minimize(generators) -> MonomialIdeal:
    """Build an ideal from any generating set, discarding divisible ones."""
    gens = [tuple(g) for g in generators]
    if not gens:
        raise InputError("empty generator list")
    n = len(gens[0])
    gens = [_check_vector(g, n) for g in gens]
    unique = sorted(set(gens))
    minimal = [
        g
        for g in unique
        if not any(h != g and divides(h, g) for h in unique)
    ]
    minimal.sort(reverse=True)
    return MonomialIdeal(n, tuple(minimal))


def ideal_from_json(obj) -> MonomialIdeal:
    """Accepts {"n": int, "generators": [[int, ...], ...]}; minimizes."""
    if not isinstance(obj, dict) or set(obj) != {"n", "generators"}:
        raise InputError('ideal JSON must be {"n": ..., "generators": [...]}')
    n = obj["n"]
    if not isinstance(n, int) or n < 1:
        raise InputError("ideal JSON: n must be a positive integer")
    gens = obj["generators"]
    if not isinstance(gens, list) or not gens:
        raise InputError("ideal JSON: generators must be a nonempty list")
    ideal = minimize([_check_vector(g, n) for g in gens])
    return ideal


def contains(M: MonomialIdeal, beta) -> bool:
    """Whether z^beta lies in the ideal."""
    beta = _check_vector(beta, M.n)
    return any(divides(g, beta) for g in M.generators)


def is_artinian(M: MonomialIdeal) -> bool:
    """True when every variable appears as a pure power among the generators."""
    pure = set()
    for g in M.generators:
        support = [i for i, e in enumerate(g) if e > 0]
        if len(support) == 1:
            pure.add(support[0])
    return len(pure) == M.n


def pure_power_exponents(M: MonomialIdeal) -> ExponentVector:
    """The exponents (b_1, ..., b_n) of the pure-power generators z_i^{b_i}."""
    powers = [0] * M.n
    for g in M.generators:
        support = [i for i, e in enumerate(g) if e > 0]
        if len(support) == 1:
            powers[support[0]] = g[support[0]]
    if any(b == 0 for b in powers):
        raise PreconditionError("ideal is not Artinian: missing pure powers")
    return tuple(powers)


def lcm_lattice(M: MonomialIdeal) -> frozenset[ExponentVector]:
    """All joins of nonempty generator subsets, by closure under pairwise lcm."""
    lattice = set(M.generators)
    frontier = set(M.generators)
    while frontier:
        new = set()
        for a in frontier:
            for b in M.generators:
                j = lcm(a, b)
                if j not in lattice:
                    new.add(j)
        lattice |= new
        frontier = new
    return frozenset(lattice)


def multiplicity(M: MonomialIdeal) -> int:
    """Colength of an Artinian ideal: lattice points under the staircase."""
    b = pure_power_exponents(M)
    return sum(
        1 for beta in product(*(range(bi) for bi in b)) if not contains(M, beta)
    )


def is_generic(M: MonomialIdeal) -> bool:
    """No two generators share a positive exponent without a strict divisor.

    Two generators sharing the same positive degree in some variable must
    admit a third generator dividing the lcm lowered by one in every
    variable where it is positive.
    """
    gens = M.generators
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            shared = any(
                gens[i][k] == gens[j][k] > 0 for k in range(M.n)
            )
            if not shared:
                continue
            joint = lcm(gens[i], gens[j])
            lowered = tuple(max(e - 1, 0) for e in joint)
            if not any(
                k != i and k != j and divides(gens[k], lowered)
                for k in range(len(gens))
            ):
                return False
    return True


def intersection_contains(components, beta) -> bool:
    """Membership of z^beta in an intersection of ideals (z_1^{a_1},...,z_n^{a_n})."""
    components = [tuple(c) for c in components]
    if not components:
        raise InputError("empty component list")
    beta = _check_vector(beta, len(components[0]))
    return all(
        any(beta[i] >= alpha[i] for i in range(len(alpha))) for alpha in components
    )


def equals_ideal(components, M: MonomialIdeal, box=None) -> bool:
    """Exhaustively compare an irreducible intersection with M on [0, box]."""
    if box is None:
        box = pure_power_exponents(M)
    box = _check_vector(box, M.n)
    if not divides(pure_power_exponents(M), box):
        raise PreconditionError("box must dominate the pure-power exponents")
    for beta in product(*(range(b + 1) for b in box)):
        if intersection_contains(components, beta) != contains(M, beta):
            return False
    return True


def staircase_corners_2d(M: MonomialIdeal) -> list[tuple[int, int]]:
    """Generators of a plane ideal sorted as staircase inner corners.

    Returns [(a_1,b_1), ..., (a_r,b_r)] with a_1 > ... > a_r = 0 and
    0 = b_1 < ... < b_r.
    """
    if M.n != 2:
        raise PreconditionError("staircase corners are defined for n = 2 only")
    if not is_artinian(M):
        raise PreconditionError("staircase corners require an Artinian ideal")
    corners = sorted(M.generators, key=lambda g: -g[0])
    a_seq = [c[0] for c in corners]
    b_seq = [c[1] for c in corners]
    ok = (
        all(x > y for x, y in zip(a_seq, a_seq[1:]))
        and all(x < y for x, y in zip(b_seq, b_seq[1:]))
        and a_seq[-1] == 0
        and b_seq[0] == 0
    )
    if not ok:
        raise PreconditionError("generators do not form a strict staircase")
    return corners
