"""Shared fixtures: small fans, matroid fixtures, and seeded samples.

Heavy artifacts (Bergman contexts, cubical witnesses) are session-scoped so
the LP searches run once per test session.
"""

from fractions import Fraction

import pytest

import normalvol as nv
from normalvol.linalg import identity, qmat
from normalvol.matroid import flat_ray_id
from normalvol.normalcx import Context


def make_quadrant_fan():
    """Rays +-e1, +-e2 in the plane, four orthant cones, weights 1."""
    rays = {
        "r1": (Fraction(1), Fraction(0)),
        "r2": (Fraction(0), Fraction(1)),
        "r3": (Fraction(-1), Fraction(0)),
        "r4": (Fraction(0), Fraction(-1)),
    }
    cones = [(("r1", "r2"), 1), (("r2", "r3"), 1), (("r3", "r4"), 1), (("r4", "r1"), 1)]
    return nv.MarkedFan(2, rays, cones)


def make_pm1_fan(weights=(1, 1)):
    """The 1-dimensional fan with rays at +1 and -1."""
    rays = {"p": (Fraction(1),), "m": (Fraction(-1),)}
    return nv.MarkedFan(1, rays, [(("p",), weights[0]), (("m",), weights[1])])


QUADRANT_JSON = {
    "ambient_dim": 2,
    "rays": [
        {"id": "r1", "u": ["1", "0"]},
        {"id": "r2", "u": ["0", "1"]},
        {"id": "r3", "u": ["-1", "0"]},
        {"id": "r4", "u": ["0", "-1"]},
    ],
    "max_cones": [
        {"rays": ["r1", "r2"], "weight": "1"},
        {"rays": ["r2", "r3"], "weight": "1"},
        {"rays": ["r3", "r4"], "weight": "1"},
        {"rays": ["r4", "r1"], "weight": "1"},
    ],
}


K4_EDGES = [("1", "2"), ("1", "3"), ("1", "4"), ("2", "3"), ("2", "4"), ("3", "4")]
K4_MINUS_EDGE = K4_EDGES[:5]


def make_matroid(name):
    if name == "U23":
        return nv.uniform(2, 3)
    if name == "U34":
        return nv.uniform(3, 4)
    if name == "U35":
        return nv.uniform(3, 5)
    if name == "U45":
        return nv.uniform(4, 5)
    if name == "K4":
        return nv.graphic(K4_EDGES)
    if name == "K4e":
        return nv.graphic(K4_MINUS_EDGE)
    raise KeyError(name)


MATROID_NAMES = ("U23", "U34", "U35", "U45", "K4", "K4e")

# Fixtures whose cubical witness comes from the LP search at session start.
# U45's full LP is beyond desk scale; its witness below was found by solving
# the symmetry-reduced LP (values depend only on (|F|, e0 in F)) and is
# re-verified exactly by classify_z before use.
LP_WITNESS_NAMES = ("U23", "U34", "U35", "K4", "K4e")

U45_WITNESS_CLASSES = {
    (1, False): Fraction(3, 37),
    (1, True): Fraction(9, 37),
    (2, False): Fraction(5, 37),
    (2, True): Fraction(8, 37),
    (3, False): Fraction(6, 37),
    (3, True): Fraction(6, 37),
}


class BergmanFixture:
    def __init__(self, name):
        self.name = name
        self.matroid = make_matroid(name)
        self.e0 = self.matroid.ground[0]
        self.fan = nv.bergman_fan(self.matroid, self.e0)
        self.gram = nv.e0_inner_product(self.matroid, self.e0)
        self.ctx = Context(self.fan, self.gram)
        self.z_alpha, self.z_beta = nv.alpha_beta_z(self.matroid, self.e0)

    def cubical_witness(self):
        if self.name == "U45":
            m = self.matroid
            e0_bit = 1 << m.index[self.e0]
            z = {
                flat_ray_id(m, f): U45_WITNESS_CLASSES[
                    (bin(f).count("1"), bool(f & e0_bit))
                ]
                for f in m.proper_flats()
            }
            assert nv.classify_z(self.ctx, z).is_cubical
            return z
        found = nv.find_cubical(self.ctx)
        assert found is not None
        return found[0]


_BERGMAN_CACHE = {}


def bergman(name) -> BergmanFixture:
    if name not in _BERGMAN_CACHE:
        _BERGMAN_CACHE[name] = BergmanFixture(name)
    return _BERGMAN_CACHE[name]


@pytest.fixture(scope="session")
def quadrant_ctx():
    return Context(make_quadrant_fan(), identity(2))


@pytest.fixture(scope="session")
def pm1_ctx():
    return Context(make_pm1_fan(), identity(1))


def rational_gram(entries):
    return qmat(entries)
