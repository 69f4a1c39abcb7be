"""Normal complexes of a (fan, inner product) context.

Everything an inner product touches happens here: w-vectors, the cubical /
pseudocubical classification and search, polytope vertices, exact volumes
and mixed volumes by three independent algorithms, the symbolic volume
polynomial, and restriction of truncation values to star fans.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from itertools import combinations
from typing import Mapping, Sequence

from . import lp
from .errors import (
    ArityMismatch,
    DimensionMismatch,
    DimTooLarge,
    MismatchError,
    NotPseudocubical,
    NotSymmetric,
    NormalVolError,
)
from .fan import Cone, MarkedFan, StarFan, ZERO_CONE, star
from .linalg import (
    Mat,
    Vec,
    ZERO,
    ONE,
    det,
    dot,
    inverse,
    mat_vec,
    qvec,
    vec_add,
    vec_scale,
    vec_sub,
    zeros,
)
from .poly import MultiPoly
from .serialize import parse_rat

ZValues = dict[str, Fraction]


def check_gram(gram: Mat, n: int) -> None:
    """Validate a symmetric positive-definite Gram matrix, exactly."""
    if len(gram) != n or any(len(row) != n for row in gram):
        raise DimensionMismatch(f"Gram matrix must be {n}x{n}")
    for i in range(n):
        for j in range(i):
            if gram[i][j] != gram[j][i]:
                raise NotSymmetric("Gram matrix is not symmetric")
    for k in range(1, n + 1):
        minor = tuple(tuple(gram[i][j] for j in range(k)) for i in range(k))
        if det(minor) <= 0:
            raise NormalVolError(f"Gram matrix is not positive definite (minor {k})")


class Context:
    """An immutable (fan, inner product) pair with per-cone caches.

    Star contexts are realized inside the same ambient coordinates, so the
    restricted inner product is literally the same Gram matrix.
    """

    def __init__(self, fan: MarkedFan, gram: Mat, _validate_gram: bool = True):
        if _validate_gram:
            check_gram(gram, fan.ambient_dim)
        self.fan = fan
        self.gram = gram
        self._gram_inv: dict[Cone, Mat] = {}
        self._stars: dict[Cone, "Context"] = {}
        self._star_fans: dict[Cone, StarFan] = {}
        self._ray_restrictions: dict[str, dict[str, Fraction]] = {}
        self._vol_poly: MultiPoly | None = None
        self._cubical: tuple[ZValues, Fraction] | None | bool = False  # False = not yet computed

    def pair(self, u: Vec, v: Vec) -> Fraction:
        return dot(u, mat_vec(self.gram, v))

    def cone_gram_inverse(self, cone: Cone) -> Mat:
        inv = self._gram_inv.get(cone)
        if inv is None:
            gens = [self.fan.rays[rid] for rid in sorted(cone)]
            block = tuple(tuple(self.pair(a, b) for b in gens) for a in gens)
            inv = inverse(block)
            self._gram_inv[cone] = inv
        return inv

    def star_fan(self, tau: Cone) -> StarFan:
        sf = self._star_fans.get(tau)
        if sf is None:
            sf = star(self.fan, tau, self.gram)
            self._star_fans[tau] = sf
        return sf

    def star_context(self, tau: Cone) -> "Context":
        ctx = self._stars.get(tau)
        if ctx is None:
            if not tau:
                ctx = self
            else:
                ctx = Context(self.star_fan(tau).fan, self.gram, _validate_gram=False)
            self._stars[tau] = ctx
        return ctx

    def ray_restriction(self, rho: str) -> dict[str, Fraction]:
        """Coefficients c with z^rho_eta = z_eta - c[eta] * z_rho."""
        coeffs = self._ray_restrictions.get(rho)
        if coeffs is None:
            u_rho = self.fan.rays[rho]
            norm = self.pair(u_rho, u_rho)
            star_ids = self.star_context(frozenset({rho})).fan.ray_ids()
            coeffs = {
                eta: self.pair(u_rho, self.fan.rays[eta]) / norm for eta in star_ids
            }
            self._ray_restrictions[rho] = coeffs
        return coeffs


def zvalues_from_json(raw: Mapping, fan: MarkedFan) -> ZValues:
    z = {rid: parse_rat(v) for rid, v in raw["z"].items()}
    _check_keys(fan, z)
    return z


def _check_keys(fan: MarkedFan, z: Mapping[str, Fraction]) -> None:
    if set(z) != set(fan.rays):
        raise DimensionMismatch("z-values must be indexed by exactly the fan's rays")


# -- w-vectors and the cubical classification -----------------------------


@dataclass(frozen=True)
class WVector:
    cone: Cone
    coords: Vec
    coefficients: tuple[tuple[str, Fraction], ...]  # barycentric, in the ray basis

    def coefficient(self, rid: str) -> Fraction:
        return dict(self.coefficients)[rid]


def w_vector(ctx: Context, cone: Cone, z: Mapping[str, Fraction]) -> WVector:
    """The unique vector of span(cone) pairing to z_rho against every marked ray."""
    if cone not in ctx.fan.cones:
        raise DimensionMismatch(f"{sorted(cone)} is not a cone of the fan")
    if not cone:
        return WVector(cone, zeros(ctx.fan.ambient_dim), ())
    rids = sorted(cone)
    rhs = qvec([z[rid] for rid in rids])
    coeffs = mat_vec(ctx.cone_gram_inverse(cone), rhs)
    coords = zeros(ctx.fan.ambient_dim)
    for c, rid in zip(coeffs, rids):
        coords = vec_add(coords, vec_scale(c, ctx.fan.rays[rid]))
    return WVector(cone, coords, tuple(zip(rids, coeffs)))


CUBICAL = "cubical"
PSEUDOCUBICAL_BOUNDARY = "pseudocubical-boundary"
OUTSIDE = "outside"


@dataclass(frozen=True)
class CubReport:
    classification: str
    witness_cone: Cone | None = None
    witness_ray: str | None = None

    @property
    def is_cubical(self) -> bool:
        return self.classification == CUBICAL

    @property
    def is_pseudocubical(self) -> bool:
        return self.classification in (CUBICAL, PSEUDOCUBICAL_BOUNDARY)


def classify_z(ctx: Context, z: Mapping[str, Fraction]) -> CubReport:
    """Exact classification by the barycentric coefficients of every w-vector."""
    _check_keys(ctx.fan, z)
    boundary: tuple[Cone, str] | None = None
    for cone in sorted(ctx.fan.cones, key=sorted):
        if not cone:
            continue
        for rid, coeff in w_vector(ctx, cone, z).coefficients:
            if coeff < 0:
                return CubReport(OUTSIDE, cone, rid)
            if coeff == 0 and boundary is None:
                boundary = (cone, rid)
    if boundary is not None:
        return CubReport(PSEUDOCUBICAL_BOUNDARY, *boundary)
    return CubReport(CUBICAL)


def find_cubical(ctx: Context) -> tuple[ZValues, Fraction] | None:
    """Search the cubical cone by an exact LP; None means Cub is empty.

    Maximizes the minimum barycentric coefficient over all (cone, ray) pairs
    subject to the normalization sum(z) = 1; a positive optimal slack is an
    interior certificate.  The result is cached on the context.
    """
    if ctx._cubical is not False:
        return ctx._cubical
    ray_order = ctx.fan.ray_ids()
    index = {rid: i for i, rid in enumerate(ray_order)}
    seen: set[Vec] = set()
    rows: list[tuple[Vec, Fraction]] = []
    for cone in sorted(ctx.fan.cones, key=sorted):
        if not cone:
            continue
        rids = sorted(cone)
        inv = ctx.cone_gram_inverse(cone)
        for i, _ in enumerate(rids):
            row = [ZERO] * len(ray_order)
            for j, rid in enumerate(rids):
                row[index[rid]] = inv[i][j]
            key = tuple(row)
            if key not in seen:  # coefficient rows repeat across shared faces
                seen.add(key)
                rows.append((key, ZERO))
    normalizer = (ONE,) * len(ray_order)
    sol = lp.max_min_slack(rows, normalizer)
    if sol.slack <= 0:
        ctx._cubical = None
        return None
    z = {rid: sol.z[index[rid]] for rid in ray_order}
    ctx._cubical = (z, sol.slack)
    return ctx._cubical


# -- restriction to star fans ---------------------------------------------


def restrict_z(
    ctx: Context, tau: Cone, z: Mapping[str, Fraction], check: bool = False
) -> ZValues:
    """Truncation values z^tau on the star fan's rays."""
    star_ctx = ctx.star_context(tau)
    if not tau:
        return dict(z)
    w = w_vector(ctx, tau, z)
    out = {
        eta: z[eta] - ctx.pair(w.coords, ctx.fan.rays[eta])
        for eta in star_ctx.fan.ray_ids()
    }
    if check:
        before = classify_z(ctx, z).classification
        after = classify_z(star_ctx, out).classification
        order = {CUBICAL: 2, PSEUDOCUBICAL_BOUNDARY: 1, OUTSIDE: 0}
        if order[after] < order[before]:
            raise MismatchError(
                f"restriction to {sorted(tau)} weakened classification {before} -> {after}"
            )
    return out


def face_complex(
    ctx: Context, tau: Cone, z: Mapping[str, Fraction]
) -> tuple[Context, ZValues]:
    """The face of the normal complex at tau, as a normal complex of the star."""
    return ctx.star_context(tau), restrict_z(ctx, tau, z, check=True)


# -- polytopes --------------------------------------------------------------


def polytope_vertices(
    ctx: Context, sigma: Cone, z: Mapping[str, Fraction]
) -> dict[Cone, Vec]:
    """Vertex w_tau(z) for each face tau of sigma (duplicates kept on the boundary)."""
    if not classify_z(ctx, z).is_pseudocubical:
        raise NotPseudocubical("z is outside the pseudocubical cone")
    rids = sorted(sigma)
    out: dict[Cone, Vec] = {}
    for k in range(len(rids) + 1):
        for sub in combinations(rids, k):
            face = frozenset(sub)
            out[face] = w_vector(ctx, face, z).coords
    return out


# -- volumes ----------------------------------------------------------------


def _require_pseudocubical(ctx: Context, z: Mapping[str, Fraction]) -> None:
    if not classify_z(ctx, z).is_pseudocubical:
        raise NotPseudocubical("z is outside the pseudocubical cone")


def _vol(ctx: Context, z: Mapping[str, Fraction]) -> Fraction:
    fan = ctx.fan
    if fan.d == 1:
        return sum((fan.weights[c] * z[next(iter(c))] for c in fan.max_cones), ZERO)
    total = ZERO
    for rho in fan.ray_ids():
        if z[rho] == 0:
            continue
        tau = frozenset({rho})
        total += z[rho] * _vol(ctx.star_context(tau), restrict_z(ctx, tau, z))
    return total


def vol_recursive(ctx: Context, z: Mapping[str, Fraction]) -> Fraction:
    """Weighted volume of the normal complex by the facet-pyramid recursion."""
    _require_pseudocubical(ctx, z)
    return _vol(ctx, z)


def _mvol(ctx: Context, zs: Sequence[Mapping[str, Fraction]]) -> Fraction:
    fan = ctx.fan
    z1 = zs[0]
    if fan.d == 1:
        return sum((fan.weights[c] * z1[next(iter(c))] for c in fan.max_cones), ZERO)
    total = ZERO
    for rho in fan.ray_ids():
        if z1[rho] == 0:
            continue
        tau = frozenset({rho})
        rest = [restrict_z(ctx, tau, zi) for zi in zs[1:]]
        total += z1[rho] * _mvol(ctx.star_context(tau), rest)
    return total


def mvol_recursive(ctx: Context, zs: Sequence[Mapping[str, Fraction]]) -> Fraction:
    """Mixed volume by the facet recursion; symmetric and multilinear."""
    if len(zs) != ctx.fan.d:
        raise ArityMismatch(f"need exactly {ctx.fan.d} arguments, got {len(zs)}")
    for z in zs:
        _require_pseudocubical(ctx, z)
    return _mvol(ctx, zs)


def mvol_polarization_oracle(
    ctx: Context, zs: Sequence[Mapping[str, Fraction]]
) -> Fraction:
    """Mixed volume by inclusion-exclusion polarization of plain volumes.

    Independent of the recursion above; the primary cross-check oracle.
    """
    d = ctx.fan.d
    if len(zs) != d:
        raise ArityMismatch(f"need exactly {d} arguments, got {len(zs)}")
    for z in zs:
        _require_pseudocubical(ctx, z)
    rays = ctx.fan.ray_ids()
    total = ZERO
    for r in range(1, d + 1):
        for subset in combinations(range(d), r):
            zsum = {rid: sum((zs[i][rid] for i in subset), ZERO) for rid in rays}
            total += Fraction((-1) ** (d - r)) * _vol(ctx, zsum)
    return total / factorial(d)


def _vol_poly(ctx: Context, sym: Mapping[str, MultiPoly]) -> MultiPoly:
    fan = ctx.fan
    if fan.d == 1:
        out = MultiPoly.zero()
        for cone in fan.max_cones:
            out = out + fan.weights[cone] * sym[next(iter(cone))]
        return out
    out = MultiPoly.zero()
    for rho in fan.ray_ids():
        tau = frozenset({rho})
        coeffs = ctx.ray_restriction(rho)
        inner = {eta: sym[eta] - coeffs[eta] * sym[rho] for eta in coeffs}
        out = out + sym[rho] * _vol_poly(ctx.star_context(tau), inner)
    return out


def vol_polynomial(ctx: Context) -> MultiPoly:
    """The volume polynomial: homogeneous of degree d in the ray variables."""
    if ctx._vol_poly is None:
        sym = {rid: MultiPoly.variable(rid) for rid in ctx.fan.ray_ids()}
        ctx._vol_poly = _vol_poly(ctx, sym)
    return ctx._vol_poly


# -- the low-dimensional geometric oracle -----------------------------------


def geometric_volume_oracle(
    ctx: Context, sigma: Cone, z: Mapping[str, Fraction]
) -> Fraction:
    """Normalized volume of one truncation polytope, computed geometrically.

    Vertices are expressed in the *-dual basis of the cone's marked
    generators, where the unit-volume fundamental simplex is the standard
    simplex, so the normalized volume is dim! times the Lebesgue measure.
    Limited to cones of dimension <= 3.
    """
    k = len(sigma)
    if k > 3:
        raise DimTooLarge("geometric oracle supports dimension <= 3 only")
    _require_pseudocubical(ctx, z)
    rids = sorted(sigma)
    if k == 0:
        return ONE

    def coords(face: tuple[str, ...]) -> Vec:
        w = w_vector(ctx, frozenset(face), z)
        return tuple(ctx.pair(w.coords, ctx.fan.rays[rid]) for rid in rids)

    if k == 1:
        return coords((rids[0],))[0]
    if k == 2:
        cycle = [(), (rids[0],), (rids[0], rids[1]), (rids[1],)]
        pts = [coords(f) for f in cycle]
        area2 = ZERO
        for (x1, y1), (x2, y2) in zip(pts, pts[1:] + pts[:1]):
            area2 += x1 * y2 - x2 * y1
        return abs(area2)  # shoelace gives area*2; normalized volume is 2*area

    vertex: dict[frozenset, Vec] = {}
    for m in range(4):
        for sub in combinations(rids, m):
            vertex[frozenset(sub)] = coords(sub)
    pts = list(vertex.values())
    centroid = tuple(sum(p[i] for p in pts) / len(pts) for i in range(3))
    total = ZERO
    for i, axis in enumerate(rids):
        others = [r for r in rids if r != axis]
        for present in (False, True):
            base = frozenset({axis}) if present else frozenset()
            quad = [
                vertex[base],
                vertex[base | {others[0]}],
                vertex[base | {others[0], others[1]}],
                vertex[base | {others[1]}],
            ]
            for a, b, c in ((quad[0], quad[1], quad[2]), (quad[0], quad[2], quad[3])):
                m = tuple(
                    tuple(p[i] - centroid[i] for i in range(3)) for p in (a, b, c)
                )
                total += abs(det(m))
    return total  # sum of |det|/6 over tetrahedra, times 3! normalization
