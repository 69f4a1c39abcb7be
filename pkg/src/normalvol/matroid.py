"""Matroids, characteristic polynomials, and Bergman fans.

A matroid is stored by its lattice of flats, with flats encoded as bitsets
over the ordered ground set.  Constructors from other encodings (uniform,
graphic, linear over the rationals) build the flats by closure search from
a rank oracle and then run the same axiom validation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    AxiomViolation,
    GroundSetTooLarge,
    LoopDetected,
    MismatchError,
    RankTooSmall,
    UnknownElement,
)
from .fan import MarkedFan
from .linalg import Mat, Vec, ONE, ZERO, identity, qvec
from .linalg import rank as matrix_rank
from .serialize import parse_rat

GROUND_SET_CAP = 20


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


class Matroid:
    """A loopless matroid presented by its flats."""

    def __init__(self, ground: Sequence[str], flat_masks: set[int], provenance: str):
        self.ground: tuple[str, ...] = tuple(str(e) for e in ground)
        if len(set(self.ground)) != len(self.ground):
            raise AxiomViolation("F1", "ground set labels are not distinct")
        self.n = len(self.ground)
        self.index: dict[str, int] = {e: i for i, e in enumerate(self.ground)}
        self.full_mask = (1 << self.n) - 1
        self.provenance = provenance
        self.flats: tuple[int, ...] = tuple(sorted(flat_masks, key=lambda m: (_popcount(m), m)))
        self._validate_axioms()
        self._rank_of_flat: dict[int, int] = {}
        for f in self.flats:
            below = [self._rank_of_flat[g] for g in self.flats if g != f and g & f == g]
            self._rank_of_flat[f] = max(below, default=-1) + 1
        self.rank = self._rank_of_flat[self.full_mask]

    def _validate_axioms(self) -> None:
        flats = set(self.flats)
        if 0 not in flats:
            raise AxiomViolation("F1", "the empty set is not a flat")
        if self.full_mask not in flats:
            raise AxiomViolation("F2", "the ground set is not a flat")
        for f in self.flats:
            for g in self.flats:
                if f & g not in flats:
                    raise AxiomViolation(
                        "F2", f"intersection of {self.labels(f)} and {self.labels(g)} is not a flat"
                    )
        for f in self.flats:
            above = [g for g in self.flats if g & f == f and g != f]
            minimal = [g for g in above if not any(h & g == h and h != g for h in above)]
            rest = self.full_mask & ~f
            covered = 0
            for g in minimal:
                extra = g & ~f
                if covered & extra:
                    raise AxiomViolation(
                        "F3", f"two minimal flats above {self.labels(f)} share an element"
                    )
                covered |= extra
            if covered != rest and above:
                raise AxiomViolation(
                    "F3", f"elements outside {self.labels(f)} missed by its minimal superflats"
                )
        # Looplessness: no element belongs to the minimal flat.
        if min(flats, key=_popcount) != 0:
            raise LoopDetected("the closure of the empty set is nonempty")

    # -- basic queries ---------------------------------------------------

    def mask(self, labels) -> int:
        m = 0
        for e in labels:
            if e not in self.index:
                raise UnknownElement(f"{e!r} is not a ground set element")
            m |= 1 << self.index[e]
        return m

    def labels(self, mask: int) -> tuple[str, ...]:
        return tuple(e for i, e in enumerate(self.ground) if mask >> i & 1)

    def closure(self, mask: int) -> int:
        out = self.full_mask
        for f in self.flats:
            if f & mask == mask:
                out &= f
        return out

    def rank_of_flat(self, flat: int) -> int:
        return self._rank_of_flat[flat]

    def rank_of_set(self, mask: int) -> int:
        return self._rank_of_flat[self.closure(mask)]

    def proper_flats(self) -> tuple[int, ...]:
        return tuple(f for f in self.flats if f != 0 and f != self.full_mask)

    def flats_of_rank(self, k: int) -> tuple[int, ...]:
        return tuple(f for f in self.flats if self._rank_of_flat[f] == k)


# -- constructors ----------------------------------------------------------


def from_flats(ground: Sequence[str], flats: Sequence[Sequence[str]]) -> Matroid:
    labels = [str(e) for e in ground]
    index = {e: i for i, e in enumerate(labels)}
    masks = set()
    for flat in flats:
        m = 0
        for e in flat:
            if str(e) not in index:
                raise UnknownElement(f"{e!r} is not a ground set element")
            m |= 1 << index[str(e)]
        masks.add(m)
    return Matroid(labels, masks, "flats")


def _flats_from_rank_oracle(ground: Sequence[str], rank_of) -> set[int]:
    """Closure search: the flats are the closed sets of the rank function."""
    n = len(ground)
    full = (1 << n) - 1

    def closure(mask: int) -> int:
        r = rank_of(mask)
        out = mask
        for i in range(n):
            bit = 1 << i
            if not mask & bit and rank_of(mask | bit) == r:
                out |= bit
        return out

    flats = {closure(0)}
    frontier = [closure(0)]
    while frontier:
        f = frontier.pop()
        for i in range(n):
            bit = 1 << i
            if f & bit:
                continue
            g = closure(f | bit)
            if g not in flats:
                flats.add(g)
                frontier.append(g)
    flats.add(full)
    return flats


def uniform(r: int, ground: int | Sequence[str]) -> Matroid:
    if isinstance(ground, int):
        ground = [chr(ord("a") + i) if ground <= 26 else f"e{i}" for i in range(ground)]
    labels = [str(e) for e in ground]
    n = len(labels)
    if not 0 < r <= n:
        raise RankTooSmall(f"uniform matroid needs 0 < r <= {n}, got {r}")
    masks = {m for m in range(1 << n) if _popcount(m) < r}
    masks.add((1 << n) - 1)
    m = Matroid(labels, masks, "uniform")
    return m


def graphic(edges: Sequence[Sequence[str]], labels: Sequence[str] | None = None) -> Matroid:
    """The cycle matroid of a multigraph given as a list of edges (u, v)."""
    if labels is None:
        labels = [str(i) for i in range(len(edges))]
    if len(labels) != len(edges):
        raise AxiomViolation("F1", "one label per edge is required")
    pairs = [(str(u), str(v)) for u, v in edges]
    for u, v in pairs:
        if u == v:
            raise LoopDetected(f"edge ({u},{v}) is a loop")

    def rank_of(mask: int) -> int:
        parent: dict[str, str] = {}

        def find(x: str) -> str:
            parent.setdefault(x, x)
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        r = 0
        for i, (u, v) in enumerate(pairs):
            if mask >> i & 1:
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[ru] = rv
                    r += 1
        return r

    return Matroid(labels, _flats_from_rank_oracle(labels, rank_of), "graphic")


def linear(columns: Mapping[str, Sequence] | Sequence[Sequence], labels: Sequence[str] | None = None) -> Matroid:
    """The matroid of a list of rational column vectors."""
    if isinstance(columns, Mapping):
        labels = list(columns)
        vecs = [qvec(columns[e]) for e in labels]
    else:
        vecs = [qvec(col) for col in columns]
        if labels is None:
            labels = [str(i) for i in range(len(vecs))]
    labels = [str(e) for e in labels]
    for e, v in zip(labels, vecs):
        if all(x == 0 for x in v):
            raise LoopDetected(f"column {e!r} is zero")

    def rank_of(mask: int) -> int:
        rows = tuple(v for i, v in enumerate(vecs) if mask >> i & 1)
        return matrix_rank(rows)

    return Matroid(labels, _flats_from_rank_oracle(labels, rank_of), "linear")


def matroid_from_json(raw: Mapping) -> Matroid:
    ground = [str(e) for e in raw["ground_set"]]
    if len(ground) > GROUND_SET_CAP:
        raise GroundSetTooLarge(f"|E| = {len(ground)} exceeds the cap {GROUND_SET_CAP}")
    kind = raw["kind"]
    if kind == "flats":
        return from_flats(ground, raw["flats"])
    if kind == "uniform":
        return uniform(int(raw["rank"]), ground)
    if kind == "graphic":
        return graphic(raw["edges"], ground)
    if kind == "linear":
        cols = [[parse_rat(v) for v in col] for col in raw["matrix"]]
        return linear(cols, ground)
    raise UnknownElement(f"unknown matroid kind {kind!r}")


# -- characteristic polynomials ---------------------------------------------


@dataclass(frozen=True)
class CharPoly:
    """chi and the reduced chibar, coefficients by ascending power of lambda."""

    chi: tuple[int, ...]
    chibar: tuple[int, ...]

    @property
    def mu(self) -> tuple[int, ...]:
        """Unsigned Whitney numbers mu^a = |coefficient of lambda^(r-a)| in chi."""
        r = len(self.chi) - 1
        return tuple(abs(self.chi[r - a]) for a in range(r + 1))

    @property
    def mubar(self) -> tuple[int, ...]:
        d = len(self.chibar) - 1
        return tuple(abs(self.chibar[d - a]) for a in range(d + 1))


def char_poly(m: Matroid, cap: int = GROUND_SET_CAP) -> CharPoly:
    """Characteristic polynomial by subset expansion, cross-checked by Moebius counts."""
    if m.n > cap:
        raise GroundSetTooLarge(f"|E| = {m.n} exceeds the cap {cap}")
    r = m.rank
    rank_cache = {f: m.rank_of_flat(f) for f in m.flats}
    chi = [0] * (r + 1)
    for s in range(1 << m.n):
        cl = m.full_mask
        for f in m.flats:
            if f & s == s:
                cl &= f
        chi[r - rank_cache[cl]] += -1 if _popcount(s) & 1 else 1

    mobius: dict[int, int] = {}
    for f in m.flats:
        mobius[f] = -sum(mobius[g] for g in m.flats if g & f == g and g != f) if f else 1
    chi2 = [0] * (r + 1)
    for f in m.flats:
        chi2[r - rank_cache[f]] += mobius[f]
    if chi != chi2:
        raise MismatchError("subset expansion and Moebius paths disagree")

    # Exact division by (lambda - 1), highest power first.
    quotient = [0] * r
    carry = 0
    for k in range(r, 0, -1):
        carry += chi[k]
        quotient[k - 1] = carry
    if carry + chi[0] != 0:
        raise MismatchError("chi(1) != 0; division by (lambda - 1) leaves a remainder")
    return CharPoly(tuple(chi), tuple(quotient))


# -- Bergman fans -----------------------------------------------------------


def flat_ray_id(m: Matroid, flat: int) -> str:
    return ",".join(m.labels(flat))


def bergman_fan(m: Matroid, e0: str | None = None) -> MarkedFan:
    """Bergman fan on flags of proper flats, realized in R^(E minus e0).

    The quotient by the all-ones vector is realized by deleting the e0
    coordinate, so the e0 inner product is the identity matrix.  All cone
    weights are 1, and the fan has dimension rank(m) - 1.
    """
    if m.rank < 2:
        raise RankTooSmall(f"Bergman fan needs rank >= 2, got {m.rank}")
    if e0 is None:
        e0 = m.ground[0]
    if e0 not in m.index:
        raise UnknownElement(f"{e0!r} is not a ground set element")
    coords = [e for e in m.ground if e != e0]
    e0_bit = 1 << m.index[e0]

    rays: dict[str, Vec] = {}
    for f in m.proper_flats():
        shift = ONE if f & e0_bit else ZERO
        rays[flat_ray_id(m, f)] = tuple(
            (ONE if f >> m.index[e] & 1 else ZERO) - shift for e in coords
        )

    by_rank = {k: m.flats_of_rank(k) for k in range(1, m.rank)}
    flags: list[list[int]] = [[]]
    for k in range(1, m.rank):
        flags = [
            chain + [f]
            for chain in flags
            for f in by_rank[k]
            if not chain or chain[-1] & f == chain[-1]
        ]
    max_cones = [([flat_ray_id(m, f) for f in chain], ONE) for chain in flags]
    return MarkedFan(len(coords), rays, max_cones, validate_geometry=False)


def e0_inner_product(m: Matroid, e0: str) -> Mat:
    """The inner product making {u_e | e != e0} orthonormal: the identity Gram."""
    if e0 not in m.index:
        raise UnknownElement(f"{e0!r} is not a ground set element")
    return identity(m.n - 1)


def alpha_beta_z(m: Matroid, e0: str) -> tuple[dict[str, Fraction], dict[str, Fraction]]:
    """Indicator truncation values with D(z_alpha) = alpha and D(z_beta) = beta."""
    if e0 not in m.index:
        raise UnknownElement(f"{e0!r} is not a ground set element")
    e0_bit = 1 << m.index[e0]
    z_alpha: dict[str, Fraction] = {}
    z_beta: dict[str, Fraction] = {}
    for f in m.proper_flats():
        rid = flat_ray_id(m, f)
        z_alpha[rid] = ONE if f & e0_bit else ZERO
        z_beta[rid] = ZERO if f & e0_bit else ONE
    return z_alpha, z_beta
