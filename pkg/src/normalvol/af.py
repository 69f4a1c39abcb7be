"""Alexandrov-Fenchel and log-concavity verification.

This module checks the sufficient conditions for the AF inequality on a
normal complex (connectivity of small stars and the signature of the
2-dimensional star volume quadratics), evaluates sampled AF margins
exactly, spot-checks the Lorentzian property of the volume polynomial, and
runs the full characteristic-polynomial log-concavity pipeline for
matroids.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import chow, normalcx
from .errors import ArityMismatch, MismatchError, NotCubical
from .fan import Cone, star_connected_minus_origin
from .linalg import Signature, ONE, ZERO, signature
from .matroid import Matroid, alpha_beta_z, bergman_fan, char_poly, e0_inner_product
from .normalcx import Context, ZValues, classify_z, find_cubical, mvol_recursive, vol_polynomial

PASS = "pass"
FAIL = "fail"
UNDEFINED = "undefined"


# -- Theorem-reduce style sufficient conditions ------------------------------


@dataclass(frozen=True)
class ReduceReport:
    condition_i_pass: bool
    condition_i_failing: tuple[Cone, ...]
    condition_ii_pass: bool
    condition_ii_signatures: tuple[tuple[Cone, Signature], ...]
    cub_nonempty: bool
    cubical_witness: ZValues | None

    @property
    def verdict(self) -> str:
        if not self.cub_nonempty:
            return UNDEFINED
        return PASS if self.condition_i_pass and self.condition_ii_pass else FAIL


def check_reduce_conditions(ctx: Context) -> ReduceReport:
    """Sufficient conditions for the AF inequality on the normal complex.

    Condition (i): for every cone of dimension at most d-3 (the zero cone
    included), the star minus the origin is connected.  Condition (ii): the
    volume quadratic of every 2-dimensional star has exactly one positive
    eigenvalue.  The cubical cone must also be nonempty for AF to be about
    anything.
    """
    fan = ctx.fan
    failing: list[Cone] = []
    for k in range(0, fan.d - 2):
        for tau in fan.cones_of_dim(k):
            if not star_connected_minus_origin(ctx.star_context(tau).fan):
                failing.append(tau)
    signatures: list[tuple[Cone, Signature]] = []
    ii_pass = True
    if fan.d >= 2:
        for tau in fan.cones_of_dim(fan.d - 2):
            star_ctx = ctx.star_context(tau)
            quad = vol_polynomial(star_ctx)
            sig = signature(quad.hessian(star_ctx.fan.ray_ids()))
            signatures.append((tau, sig))
            if sig.n_plus != 1:
                ii_pass = False
    witness = find_cubical(ctx)
    return ReduceReport(
        condition_i_pass=not failing,
        condition_i_failing=tuple(failing),
        condition_ii_pass=ii_pass,
        condition_ii_signatures=tuple(signatures),
        cub_nonempty=witness is not None,
        cubical_witness=witness[0] if witness else None,
    )


# -- the AF inequality itself -------------------------------------------------


def af_check(ctx: Context, zs: Sequence[Mapping[str, Fraction]]) -> Fraction:
    """Exact AF margin MVol(z1,z2,rest)^2 - MVol(z1,z1,rest)*MVol(z2,z2,rest).

    All arguments must be cubical; a nonnegative margin is the inequality.
    """
    if ctx.fan.d < 2:
        raise ArityMismatch("the AF inequality needs a fan of dimension >= 2")
    if len(zs) != ctx.fan.d:
        raise NotCubical(f"need {ctx.fan.d} cubical arguments, got {len(zs)}")
    for z in zs:
        if not classify_z(ctx, z).is_cubical:
            raise NotCubical("every AF argument must be strictly cubical")
    z1, z2, rest = zs[0], zs[1], list(zs[2:])
    m12 = mvol_recursive(ctx, [z1, z2] + rest)
    m11 = mvol_recursive(ctx, [z1, z1] + rest)
    m22 = mvol_recursive(ctx, [z2, z2] + rest)
    return m12 * m12 - m11 * m22


# -- seeded sampling of the cubical cone ---------------------------------------


def sample_cubical(ctx: Context, count: int, seed: int) -> list[ZValues]:
    """Reproducible interior samples: perturbations of the LP witness.

    Each perturbation is re-classified exactly before acceptance, and the
    perturbation size is halved until the sample is strictly cubical (the
    witness is interior, so this terminates).
    """
    found = find_cubical(ctx)
    if found is None:
        return []
    witness, _ = found
    rng = random.Random(seed)
    rays = ctx.fan.ray_ids()
    samples: list[ZValues] = []
    for _ in range(count):
        direction = {rid: Fraction(rng.randint(-100, 100), 100) for rid in rays}
        eps = Fraction(1, 4)
        while True:
            z = {rid: witness[rid] + eps * direction[rid] for rid in rays}
            if classify_z(ctx, z).is_cubical:
                samples.append(z)
                break
            eps /= 2
    return samples


def sample_pseudocubical(ctx: Context, count: int, seed: int) -> list[ZValues]:
    """Seeded pseudocubical samples: cubical interior points qualify."""
    return sample_cubical(ctx, count, seed)


# -- Lorentzian spot checks -----------------------------------------------------


@dataclass(frozen=True)
class LorentzianReport:
    irreducible: bool
    positivity_pass: bool
    hessian_pass: bool
    offdiagonal_pattern_pass: bool
    samples: int

    @property
    def verdict(self) -> str:
        ok = (
            self.irreducible
            and self.positivity_pass
            and self.hessian_pass
            and self.offdiagonal_pattern_pass
        )
        return PASS if ok else FAIL


def lorentzian_spot_check(ctx: Context, samples: int, seed: int) -> LorentzianReport:
    """Spot-check the Lorentzian conditions of the volume polynomial.

    For sampled cubical directions v_1..v_d: the full contraction must be
    positive, and the Hessian contracted along v_1..v_{d-2} must have
    exactly one positive eigenvalue.  The nonzero off-diagonal pattern of
    each contracted Hessian must match the fan's 2-cone adjacency, and the
    adjacency graph must be connected (irreducibility).
    """
    fan = ctx.fan
    d = fan.d
    rays = fan.ray_ids()
    f = vol_polynomial(ctx)
    # irreducibility constrains the quadratic contractions, which only exist
    # for d >= 2; below that it holds vacuously
    irreducible = d < 2 or star_connected_minus_origin(fan)
    two_cones = {frozenset(c) for c in fan.cones_of_dim(2)}
    cubicals = sample_cubical(ctx, samples * max(d, 1), seed)
    positivity = hess = pattern = True
    n_done = 0
    for s in range(samples):
        tuple_dirs = cubicals[s * d : (s + 1) * d]
        if len(tuple_dirs) < d:
            break
        n_done += 1
        full = f
        for v in tuple_dirs:
            full = full.directional(v)
        if full.eval_at({rid: ZERO for rid in rays}) <= 0:
            positivity = False
        if d < 2:
            continue
        h = f.hessian_of_contraction(tuple_dirs[: d - 2], rays)
        if signature(h).n_plus != 1:
            hess = False
        for i, r1 in enumerate(rays):
            for j in range(i + 1, len(rays)):
                if h[i][j] != 0 and frozenset({r1, rays[j]}) not in two_cones:
                    pattern = False
    return LorentzianReport(irreducible, positivity, hess, pattern, n_done)


# -- the Heron-Rota-Welsh pipeline ------------------------------------------------


def _log_concave(seq: Sequence[int]) -> bool:
    return all(seq[k] * seq[k] >= seq[k - 1] * seq[k + 1] for k in range(1, len(seq) - 1))


def _unimodal(seq: Sequence[int]) -> bool:
    rises = [i for i in range(1, len(seq)) if seq[i] < seq[i - 1]]
    return all(seq[i] <= seq[i - 1] for i in range(rises[0], len(seq))) if rises else True


@dataclass(frozen=True)
class HRWReport:
    mubar_char: tuple[int, ...]
    mubar_deg: tuple[int, ...]
    mubar_mvol: tuple[int, ...]
    mu: tuple[int, ...]
    equal: bool
    log_concave: bool
    unimodal: bool
    mu_log_concave: bool
    mu_unimodal: bool

    @property
    def verdict(self) -> str:
        ok = (
            self.equal
            and self.log_concave
            and self.unimodal
            and self.mu_log_concave
            and self.mu_unimodal
        )
        return PASS if ok else FAIL


def hrw_verify(m: Matroid, e0: str | None = None) -> HRWReport:
    """Coefficients of the reduced characteristic polynomial, three ways.

    The subset-expansion coefficients must equal the Chow degrees of
    alpha^(d-a) beta^a and the mixed volumes of the corresponding
    (z_alpha, z_beta) tuples, and the resulting sequence must be
    log-concave and unimodal (as must the unreduced one).
    """
    if e0 is None:
        e0 = m.ground[0]
    cp = char_poly(m)
    mubar_char = cp.mubar
    fan = bergman_fan(m, e0)
    ctx = Context(fan, e0_inner_product(m, e0))
    z_alpha, z_beta = alpha_beta_z(m, e0)
    d = fan.d
    mubar_deg = []
    mubar_mvol = []
    for a in range(d + 1):
        zs = [z_alpha] * (d - a) + [z_beta] * a
        deg = chow.deg_product(fan, zs)
        mv = mvol_recursive(ctx, zs)
        if deg.denominator != 1 or mv.denominator != 1:
            raise MismatchError("matroid degrees must be integers")
        mubar_deg.append(int(deg))
        mubar_mvol.append(int(mv))
    mubar_deg = tuple(mubar_deg)
    mubar_mvol = tuple(mubar_mvol)
    equal = mubar_char == mubar_deg == mubar_mvol
    if not equal:
        raise MismatchError(
            f"mubar paths disagree: {mubar_char} vs {mubar_deg} vs {mubar_mvol}"
        )
    return HRWReport(
        mubar_char=mubar_char,
        mubar_deg=mubar_deg,
        mubar_mvol=mubar_mvol,
        mu=cp.mu,
        equal=equal,
        log_concave=_log_concave(mubar_char),
        unimodal=_unimodal(mubar_char),
        mu_log_concave=_log_concave(cp.mu),
        mu_unimodal=_unimodal(cp.mu),
    )


# -- boundary values vs cubical limits ---------------------------------------------


def boundary_limit_margins(
    ctx: Context,
    bases: Sequence[Mapping[str, Fraction]],
    witness: Mapping[str, Fraction],
    ts: Sequence[Fraction],
) -> dict[Fraction, Fraction]:
    """Compare MVol along cubical approximants with its multilinear expansion.

    For z_i(t) = (1-t) * bases[i] + t * witness, the mixed volume is a
    polynomial p(t) determined by the 2^d mixed volumes of base/witness
    choices.  Returns, per t, the (identically zero) difference between the
    direct evaluation and p(t); the t = 0 value of p is the boundary value.
    """
    d = ctx.fan.d
    rays = ctx.fan.ray_ids()
    corner: dict[int, Fraction] = {}
    for mask in range(1 << d):
        zs = [witness if mask >> i & 1 else bases[i] for i in range(d)]
        corner[mask] = mvol_recursive(ctx, zs)

    def p(t: Fraction) -> Fraction:
        total = ZERO
        for mask, value in corner.items():
            k = bin(mask).count("1")
            total += (ONE - t) ** (d - k) * t**k * value
        return total

    margins: dict[Fraction, Fraction] = {}
    for t in ts:
        t = Fraction(t)
        zt = [
            {rid: (ONE - t) * Fraction(b[rid]) + t * Fraction(witness[rid]) for rid in rays}
            for b in bases
        ]
        margins[t] = mvol_recursive(ctx, zt) - p(t)
    return margins
