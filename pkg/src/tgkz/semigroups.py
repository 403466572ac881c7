"""Semigroup modules over the monoid generated by the columns.

Three module kinds are supported: the full facet-nonnegative region K (the
preimage of the real cone, whole torsion fibers included), its strict
interior, and modules given by an explicit finite generator list.  Each has
an exact membership test and a finite primitive generating set obtained by
Caratheodory reduction into half-open parallelepiped boxes over a placing
triangulation.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from . import fieldlin
from .cones import PointConfig, cone_triangulation, facets, is_pointed
from .errors import NotPointedError, SpecError
from .lattice import IntMatrix

K = "K"
K_INTERIOR = "K_INTERIOR"
EXPLICIT = "EXPLICIT"
_KINDS = (K, K_INTERIOR, EXPLICIT)


@dataclass(frozen=True)
class SemigroupModule:
    kind: str
    config: PointConfig
    explicit_generators: tuple = ()

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown module kind {self.kind!r}")
        object.__setattr__(self, "explicit_generators",
                           tuple(self.explicit_generators))
        if self.kind == EXPLICIT:
            if not self.explicit_generators:
                raise ValueError("explicit module needs at least one generator")
            taus = _facet_functionals(self.config)
            for g in self.explicit_generators:
                if g.group != self.config.group:
                    raise ValueError("generator outside the ambient group")
                if any(t(g.free) < 0 for t in taus):
                    raise ValueError(f"explicit generator {g} lies outside the cone")
        elif self.explicit_generators:
            raise ValueError("generators only allowed for explicit modules")


@dataclass(frozen=True)
class PrimitiveSet:
    """Irreducible module generators and their free-part degrees (aligned)."""

    elements: tuple
    degrees: tuple


@lru_cache(maxsize=None)
def _facet_functionals(config: PointConfig):
    return facets(config)


@lru_cache(maxsize=None)
def _unit_set(config: PointConfig):
    return frozenset(units(config))


@lru_cache(maxsize=None)
def _distinct_nonunit_columns(config: PointConfig):
    out = sorted({c for c in config.columns if not c.has_finite_order()},
                 key=lambda e: e.sort_key())
    return tuple(out)


def units(config: PointConfig):
    """The unit subgroup of the column monoid: the (finite) group generated
    by the columns of finite order."""
    gens = [c for c in config.columns if c.has_finite_order()]
    seen = {config.group.zero()}
    frontier = list(seen)
    while frontier:
        cur = frontier.pop()
        for g in gens:
            nxt = cur + g
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return sorted(seen, key=lambda e: e.sort_key())


def membership(t, module: SemigroupModule) -> bool:
    if t.group != module.config.group:
        raise ValueError("element outside the ambient group")
    if module.kind == EXPLICIT:
        return any(member_semigroup(module.config, t - g)
                   for g in module.explicit_generators)
    taus = _facet_functionals(module.config)
    if module.kind == K:
        return all(tau(t.free) >= 0 for tau in taus)
    return all(tau(t.free) > 0 for tau in taus)


@lru_cache(maxsize=None)
def member_semigroup(config: PointConfig, t) -> bool:
    """Membership of t in the unsaturated column monoid (units included).

    Depth-first column subtraction; termination needs the pointed-cone
    hypothesis, since only then does a grading strictly decrease.
    """
    if t.has_finite_order():
        return t in _unit_set(config)
    taus = _facet_functionals(config)
    if any(tau(t.free) < 0 for tau in taus):
        return False
    return any(member_semigroup(config, t - c)
               for c in _distinct_nonunit_columns(config))


# ---------------------------------------------------------------------------
# primitive generating sets


def _box_points(simplex, scale):
    """Lattice points of {sum mu_j v_j : 0 <= mu_j < scale} for linearly
    independent integer vectors v_j spanning Z^d rationally.

    One representative per residue class of Z^d modulo the sublattice the
    vectors span, translated into the fundamental box, then shifted by all
    nonnegative integer combinations below `scale`.
    """
    d = len(simplex[0])
    assert len(simplex) == d
    m_rows = [[simplex[j][i] for j in range(d)] for i in range(d)]
    from .lattice import smith_normal_form
    snf = smith_normal_form(IntMatrix.from_rows(m_rows))
    dets = snf.invariant_factors
    assert len(dets) == d, "box vectors must be linearly independent"
    u_rows = [[Fraction(snf.U.entry(i, j)) for j in range(d)] for i in range(d)]
    m_frac = [[Fraction(x) for x in row] for row in m_rows]
    base = set()
    for residue in product(*(range(di) for di in dets)):
        x = fieldlin.solve_unique(u_rows, [Fraction(r) for r in residue])
        assert x is not None and all(c.denominator == 1 for c in x)
        x = [int(c) for c in x]
        mu = fieldlin.solve_unique(m_frac, [Fraction(c) for c in x])
        shift = [math.floor(c) for c in mu]
        base.add(tuple(x[i] - sum(shift[j] * simplex[j][i] for j in range(d))
                       for i in range(d)))
    assert len(base) == math.prod(dets)
    points = set()
    for k in product(range(scale), repeat=d):
        for b in base:
            points.add(tuple(b[i] + sum(k[j] * simplex[j][i] for j in range(d))
                             for i in range(d)))
    return points


def _free_degree_in_module(v, kind, taus) -> bool:
    if kind == K:
        return all(tau(v) >= 0 for tau in taus)
    return all(tau(v) > 0 for tau in taus)


def _primitive_degrees(module: SemigroupModule, scale):
    config = module.config
    taus = _facet_functionals(config)
    tri, rk = cone_triangulation(config)
    assert rk == config.d, "columns must span the free part rationally"
    candidates = set()
    for simplex in tri:
        candidates.update(_box_points(simplex, scale))
    nonunit = _distinct_nonunit_columns(config)
    out = []
    for v in sorted(candidates):
        if not _free_degree_in_module(v, module.kind, taus):
            continue
        reducible = any(
            _free_degree_in_module(tuple(x - y for x, y in zip(v, c.free)),
                                   module.kind, taus)
            for c in nonunit)
        if not reducible:
            out.append(v)
    return tuple(out)


def module_generators(module: SemigroupModule) -> PrimitiveSet:
    """Finite primitive generating set of the closure or interior module.

    Candidates are the lattice points of the half-open boxes over the placing
    triangulation's maximal simplices (interior modules widen the boxes by one
    extra copy of each ray, since a coefficient >= 2 is always reducible);
    a secondary scan at doubled scale asserts nothing was missed.  Full
    torsion fibers are attached afterwards: membership and reducibility only
    see the free part, so every fiber behaves identically.
    """
    if module.kind == EXPLICIT:
        raise SpecError("explicit modules carry their own generators; "
                        "use primitive_elements", code="UNSUPPORTED_MODULE")
    config = module.config
    if not is_pointed(config):
        raise NotPointedError("primitive set requires a pointed cone")
    base_scale = 1 if module.kind == K else 2
    degrees = _primitive_degrees(module, base_scale)
    widened = _primitive_degrees(module, 2 * base_scale)
    assert degrees == widened, "candidate box missed a primitive element"
    elements = [config.group.element(f.torsion, v)
                for v in degrees for f in config.group.torsion_elements()]
    elements.sort(key=lambda e: e.sort_key())
    return PrimitiveSet(tuple(elements), tuple(e.free for e in elements))


def primitive_elements(module: SemigroupModule) -> PrimitiveSet:
    """Irreducible subset of an explicit generator list: keep t whenever no
    non-unit column can be subtracted without leaving the module."""
    if module.kind != EXPLICIT:
        raise SpecError("kind must be EXPLICIT", code="UNSUPPORTED_MODULE")
    nonunit = _distinct_nonunit_columns(module.config)
    keep = []
    for g in sorted(set(module.explicit_generators), key=lambda e: e.sort_key()):
        if not any(membership(g - c, module) for c in nonunit):
            keep.append(g)
    return PrimitiveSet(tuple(keep), tuple(e.free for e in keep))


# ---------------------------------------------------------------------------
# bounded slices


def cone_points_up_to(config: PointConfig, height, bound):
    """Free-part lattice points of the cone with height(v) <= bound, where
    `height` is a functional >= 1 on every nonzero column."""
    taus = _facet_functionals(config)
    tri, rk = cone_triangulation(config)
    assert rk == config.d
    out = set()
    for simplex in tri:
        base = _box_points(simplex, 1)
        ranges = [range(int(math.floor(Fraction(bound) / height(v))) + 2)
                  for v in simplex]
        for k in product(*ranges):
            for b in base:
                x = tuple(b[i] + sum(k[j] * simplex[j][i]
                                     for j in range(len(simplex)))
                          for i in range(config.d))
                if height(x) <= bound and all(tau(x) >= 0 for tau in taus):
                    out.add(x)
    return sorted(out)


def elements_with_height_at_most(module: SemigroupModule, height, bound):
    """All module elements t with height(free part of t) <= bound, every
    torsion fiber included; sorted."""
    config = module.config
    pts = cone_points_up_to(config, height, bound)
    out = []
    for v in pts:
        for f in config.group.torsion_elements():
            t = config.group.element(f.torsion, v)
            if membership(t, module):
                out.append(t)
    out.sort(key=lambda e: e.sort_key())
    return out
