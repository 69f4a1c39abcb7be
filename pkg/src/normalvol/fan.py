"""Marked, weighted, pure simplicial fans.

A fan is stored by its maximal cones; since every cone is simplicial, the
faces of a maximal cone are exactly the subsets of its ray set, and the
whole face poset is generated from the maximal cones.  Ray ids are strings
and a cone is a frozenset of ray ids (the empty set is the zero cone).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from . import lp
from .errors import (
    DimensionMismatch,
    FacesDontMeet,
    NonpositiveWeight,
    NotPure,
    NotSimplicial,
    NoSolution,
    RayProjectionCollision,
)
from .linalg import Mat, Vec, ZERO, ONE, dot, mat_vec, qvec, rank, solve, solve_unique, transpose, vec_scale, vec_sub, zeros
from .serialize import format_rat, parse_rat

Cone = frozenset[str]

ZERO_CONE: Cone = frozenset()


class MarkedFan:
    """A pure simplicial fan with marked ray generators and weighted top cones."""

    def __init__(
        self,
        ambient_dim: int,
        rays: Mapping[str, Vec],
        max_cones: Iterable[tuple[Iterable[str], Fraction]],
        validate_geometry: bool = True,
    ):
        self.ambient_dim = ambient_dim
        self.rays: dict[str, Vec] = {rid: qvec(u) for rid, u in rays.items()}
        for rid, u in self.rays.items():
            if len(u) != ambient_dim:
                raise DimensionMismatch(f"ray {rid!r} has length {len(u)}, expected {ambient_dim}")
            if all(x == 0 for x in u):
                raise NotSimplicial(f"ray {rid!r} has zero marked generator")
        self.weights: dict[Cone, Fraction] = {}
        cones: list[Cone] = []
        for ray_ids, weight in max_cones:
            cone = frozenset(ray_ids)
            missing = cone - self.rays.keys()
            if missing:
                raise DimensionMismatch(f"cone uses unknown rays {sorted(missing)}")
            weight = Fraction(weight)
            if weight <= 0:
                raise NonpositiveWeight(f"cone {sorted(cone)} has weight {weight}")
            if cone in self.weights:
                raise FacesDontMeet(f"cone {sorted(cone)} listed twice")
            self.weights[cone] = weight
            cones.append(cone)
        if not cones:
            raise NotPure("fan has no maximal cones")
        self.d = len(cones[0])
        if any(len(c) != self.d for c in cones):
            raise NotPure("maximal cones have different numbers of rays")
        self.max_cones: tuple[Cone, ...] = tuple(cones)
        for cone in self.max_cones:
            if rank(self.generator_matrix(cone)) != len(cone):
                raise NotSimplicial(f"cone {sorted(cone)} has dependent generators")
        used = set().union(*self.max_cones)
        unused = self.rays.keys() - used
        if unused:
            raise NotPure(f"rays {sorted(unused)} lie in no maximal cone")
        self.cones: frozenset[Cone] = frozenset(
            frozenset(sub) for cone in self.max_cones for sub in _subsets(sorted(cone))
        )
        if validate_geometry and self.d <= 3:
            self._check_meet_along_faces()

    # -- basic queries -------------------------------------------------

    def ray_ids(self) -> list[str]:
        return sorted(self.rays)

    def cones_of_dim(self, k: int) -> list[Cone]:
        return sorted((c for c in self.cones if len(c) == k), key=sorted)

    def weight(self, cone: Cone) -> Fraction:
        return self.weights[cone]

    def generator_matrix(self, cone: Cone) -> Mat:
        """Columns are the marked generators of the cone's rays, sorted by id."""
        cols = [self.rays[rid] for rid in sorted(cone)]
        return transpose(qmat_from_cols(cols, self.ambient_dim))

    def maximal_cones_containing(self, cone: Cone) -> list[Cone]:
        return [c for c in self.max_cones if cone <= c]

    # -- validation ----------------------------------------------------

    def _check_meet_along_faces(self) -> None:
        """Exact pairwise check that maximal cones intersect in their common face.

        For simplicial cones, a point of cone(S1) lies in the common face iff
        its (unique) barycentric coefficients vanish outside the common ray
        set, so a violation is a feasible point of an exact LP.
        """
        for i, c1 in enumerate(self.max_cones):
            for c2 in self.max_cones[i + 1 :]:
                common = c1 & c2
                if self._meets_outside_face(c1, c2, common) or self._meets_outside_face(
                    c2, c1, common
                ):
                    raise FacesDontMeet(
                        f"cones {sorted(c1)} and {sorted(c2)} do not meet along {sorted(common)}"
                    )

    def _meets_outside_face(self, c1: Cone, c2: Cone, common: Cone) -> bool:
        r1, r2 = sorted(c1), sorted(c2)
        n = self.ambient_dim
        ncols = len(r1) + len(r2)
        rows = []
        for coord in range(n):
            rows.append(
                qvec(
                    [self.rays[rid][coord] for rid in r1]
                    + [-self.rays[rid][coord] for rid in r2]
                )
            )
        rows.append(
            qvec([ONE if rid not in common else ZERO for rid in r1] + [ZERO] * len(r2))
        )
        b = qvec([ZERO] * n + [ONE])
        return lp.feasible_nonneg(rows, b) is not None


def qmat_from_cols(cols: list[Vec], nrows: int) -> Mat:
    if not cols:
        return ((),) * 0
    return tuple(tuple(col[i] for i in range(nrows)) for col in cols)


def _subsets(items: list[str]):
    n = len(items)
    for mask in range(1 << n):
        yield [items[i] for i in range(n) if mask >> i & 1]


# -- construction from JSON ---------------------------------------------


def build_fan(raw: Mapping) -> MarkedFan:
    """Build and validate a fan from its JSON description."""
    try:
        ambient_dim = int(raw["ambient_dim"])
        rays = {entry["id"]: qvec([parse_rat(v) for v in entry["u"]]) for entry in raw["rays"]}
        max_cones = [(entry["rays"], parse_rat(entry["weight"])) for entry in raw["max_cones"]]
    except (KeyError, TypeError) as exc:
        raise DimensionMismatch(f"malformed fan description: {exc}") from exc
    if len(rays) != len(raw["rays"]):
        raise FacesDontMeet("duplicate ray ids")
    return MarkedFan(ambient_dim, rays, max_cones)


def fan_to_json(fan: MarkedFan) -> dict:
    return {
        "ambient_dim": fan.ambient_dim,
        "rays": [{"id": rid, "u": [format_rat(v) for v in fan.rays[rid]]} for rid in fan.ray_ids()],
        "max_cones": [
            {"rays": sorted(cone), "weight": format_rat(fan.weights[cone])}
            for cone in sorted(fan.max_cones, key=sorted)
        ],
    }


# -- the balancing condition ---------------------------------------------


@dataclass(frozen=True)
class TropicalReport:
    is_tropical: bool
    failing: tuple[Cone, ...]


def is_tropical(fan: MarkedFan) -> TropicalReport:
    """Check the weighted balancing condition at every codimension-1 cone."""
    failing = []
    for tau in fan.cones_of_dim(fan.d - 1):
        total = zeros(fan.ambient_dim)
        for sigma in fan.maximal_cones_containing(tau):
            if len(sigma) != fan.d:
                continue
            (extra,) = sigma - tau
            total = tuple(
                t + fan.weights[sigma] * u for t, u in zip(total, fan.rays[extra])
            )
        if not _in_span(fan, tau, total):
            failing.append(tau)
    return TropicalReport(not failing, tuple(failing))


def _in_span(fan: MarkedFan, cone: Cone, v: Vec) -> bool:
    if not cone:
        return all(x == 0 for x in v)
    cols = tuple(tuple(fan.rays[rid][i] for rid in sorted(cone)) for i in range(fan.ambient_dim))
    try:
        solve(cols, v)
    except NoSolution:
        return False
    return True


# -- star fans ------------------------------------------------------------


@dataclass(frozen=True)
class StarFan:
    """The star of a fan at a cone, realized in the orthogonal complement.

    Star ray ids equal the originating neighborhood ray ids, so restricting
    a z-vector to the star is index-stable.  ``cone_lift`` maps a star cone
    back to the corresponding neighborhood cone (its rays plus tau's).
    """

    fan: MarkedFan
    tau: Cone
    origin: MarkedFan

    def cone_lift(self, star_cone: Cone) -> Cone:
        return star_cone | self.tau


def orthogonal_projector(fan: MarkedFan, tau: Cone, gram: Mat):
    """Return a function projecting onto the *-orthogonal complement of span(tau)."""
    if not tau:
        return lambda v: v
    basis = [fan.rays[rid] for rid in sorted(tau)]
    gbasis = [mat_vec(gram, u) for u in basis]
    gm = tuple(tuple(dot(u, gb) for gb in gbasis) for u in basis)

    def project(v: Vec) -> Vec:
        rhs = qvec([dot(v, gb) for gb in gbasis])
        coeffs = solve_unique(gm, rhs)
        out = v
        for c, u in zip(coeffs, basis):
            out = vec_sub(out, vec_scale(c, u))
        return out

    return project


def star(fan: MarkedFan, tau: Cone, gram: Mat) -> StarFan:
    """Star fan at tau: projections of the cones neighboring tau."""
    if tau not in fan.cones:
        raise DimensionMismatch(f"{sorted(tau)} is not a cone of the fan")
    if not tau:
        return StarFan(fan, tau, fan)
    project = orthogonal_projector(fan, tau, gram)
    neighborhood = fan.maximal_cones_containing(tau)
    star_rays: dict[str, Vec] = {}
    for sigma in neighborhood:
        for rid in sorted(sigma - tau):
            if rid not in star_rays:
                star_rays[rid] = project(fan.rays[rid])
    _check_no_collision(star_rays)
    star_cones = [(sorted(sigma - tau), fan.weights[sigma]) for sigma in neighborhood]
    projected = MarkedFan(fan.ambient_dim, star_rays, star_cones, validate_geometry=False)
    return StarFan(projected, tau, fan)


def _check_no_collision(star_rays: Mapping[str, Vec]) -> None:
    items = sorted(star_rays.items())
    for i, (rid1, u1) in enumerate(items):
        if all(x == 0 for x in u1):
            raise RayProjectionCollision(f"ray {rid1!r} projects to zero")
        for rid2, u2 in items[i + 1 :]:
            if _positively_parallel(u1, u2):
                raise RayProjectionCollision(
                    f"rays {rid1!r} and {rid2!r} project onto the same star ray"
                )


def _positively_parallel(u: Vec, v: Vec) -> bool:
    pivot = next((i for i, x in enumerate(u) if x != 0), None)
    if pivot is None or v[pivot] == 0:
        return False
    c = v[pivot] / u[pivot]
    if c <= 0:
        return False
    return all(c * x == y for x, y in zip(u, v))


def star_connected_minus_origin(fan: MarkedFan) -> bool:
    """Connectivity of the ray graph whose edges are the 2-cones.

    For a pure fan of dimension >= 2 this is equivalent to connectivity of
    the fan minus the origin.
    """
    rays = fan.ray_ids()
    if len(rays) <= 1:
        return True
    adjacency: dict[str, set[str]] = {rid: set() for rid in rays}
    for cone in fan.cones_of_dim(2):
        a, b = sorted(cone)
        adjacency[a].add(b)
        adjacency[b].add(a)
    seen = {rays[0]}
    stack = [rays[0]]
    while stack:
        for nxt in adjacency[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return len(seen) == len(rays)


# -- products --------------------------------------------------------------


def product_fan(a: MarkedFan, b: MarkedFan, prefix: tuple[str, str] = ("L.", "R.")) -> MarkedFan:
    """Product of two fans in the direct sum of their ambient spaces.

    Ray ids are prefixed to keep the factors disjoint; weights multiply.
    """
    pa, pb = prefix
    rays: dict[str, Vec] = {}
    for rid, u in a.rays.items():
        rays[pa + rid] = tuple(u) + zeros(b.ambient_dim)
    for rid, u in b.rays.items():
        rays[pb + rid] = zeros(a.ambient_dim) + tuple(u)
    cones = []
    for ca in a.max_cones:
        for cb in b.max_cones:
            ray_ids = [pa + r for r in ca] + [pb + r for r in cb]
            cones.append((ray_ids, a.weights[ca] * b.weights[cb]))
    return MarkedFan(a.ambient_dim + b.ambient_dim, rays, cones, validate_geometry=False)
