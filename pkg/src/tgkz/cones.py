"""Polyhedral geometry of a point configuration in N = F (+) Z^d.

Everything runs on the free parts pi(a_j) in Z^d with exact arithmetic.
Zero free-part columns are invisible to the cone; they come back as
semigroup units.  The triangulation is the incremental lexicographic
(placing) one; any triangulation gives the same volume, so canonicity is
only needed for reproducibility of candidate boxes downstream.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from . import fieldlin
from .cyclotomic import Cyclotomic
from .errors import EmptyConeError, NotPointedError
from .lattice import (AbelianGroup, Functional, GroupElement, IntMatrix,
                      INFINITE, lattice_index, smith_normal_form)


@dataclass(frozen=True)
class PointConfig:
    """The defining data: a group N and the tuple of columns cal(A)."""

    group: AbelianGroup
    columns: tuple

    def __post_init__(self):
        if not self.columns:
            raise ValueError("at least one column required")
        object.__setattr__(self, "columns", tuple(self.columns))
        if any(c.group != self.group for c in self.columns):
            raise ValueError("column does not belong to the group")
        if self.group.free_rank < 1:
            raise ValueError("free rank must be >= 1")

    @property
    def n(self):
        return len(self.columns)

    @property
    def d(self):
        return self.group.free_rank

    @property
    def ell(self):
        return self.group.torsion_index

    def free_columns(self):
        return [c.free for c in self.columns]

    def free_matrix(self) -> IntMatrix:
        return IntMatrix.from_rows(
            [[c.free[i] for c in self.columns] for i in range(self.d)])

    def nonzero_free_columns(self):
        """Distinct nonzero free parts, lexicographically sorted."""
        return sorted({c.free for c in self.columns if any(x != 0 for x in c.free)})

    def nonunit_indices(self):
        return [j for j, c in enumerate(self.columns) if any(x != 0 for x in c.free)]


# ---------------------------------------------------------------------------
# placing triangulation


def placing_triangulation(vectors):
    """Incremental placing triangulation of the cone over `vectors`.

    Vectors are inserted in the given order; returns (simplices, rank) where
    each simplex is a tuple of indices into `vectors` and all simplices have
    exactly `rank` members.  New vectors inside the current cone add nothing;
    vectors raising the linear rank cone over every existing simplex; other
    outside vectors cone over the strictly visible boundary faces.
    """
    simplices = []
    basis_idx = []
    coords = {}  # index -> coordinates w.r.t. the current basis

    def express(v):
        rows = [[Fraction(vectors[b][i]) for b in basis_idx] for i in range(len(v))]
        return fieldlin.solve_unique(rows, [Fraction(x) for x in v])

    def recompute_coords(active):
        coords.clear()
        for j in active:
            coords[j] = express(vectors[j])
            assert coords[j] is not None

    placed = []
    for idx, v in enumerate(vectors):
        assert any(x != 0 for x in v), "zero vector has no ray"
        if not basis_idx:
            basis_idx.append(idx)
            simplices = [(idx,)]
            placed.append(idx)
            coords[idx] = (Fraction(1),)
            continue
        lam = express(v)
        if lam is None:
            # rank jump: cone every simplex over the new vector
            simplices = [s + (idx,) for s in simplices]
            basis_idx.append(idx)
            placed.append(idx)
            recompute_coords(placed)
            continue
        coords[idx] = lam
        r = len(basis_idx)
        face_count = {}
        face_opp = {}
        for s in simplices:
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                face_count[face] = face_count.get(face, 0) + 1
                face_opp[face] = s[i]
        fresh = []
        for face, cnt in face_count.items():
            if cnt != 1:
                continue
            rows = [list(coords[f]) for f in face]
            s_side = fieldlin.determinant(rows + [list(coords[face_opp[face]])]) if r > 0 else 0
            p_side = fieldlin.determinant(rows + [list(lam)])
            if s_side != 0 and p_side != 0 and (s_side > 0) != (p_side > 0):
                fresh.append(tuple(sorted(face + (idx,))))
        simplices.extend(fresh)
        placed.append(idx)
    return simplices, len(basis_idx)


def cone_triangulation(config: PointConfig):
    """Maximal simplicial subcones (as tuples of free-column vectors) covering
    the cone, from the placing triangulation of the distinct nonzero columns."""
    vecs = config.nonzero_free_columns()
    if not vecs:
        raise EmptyConeError("all columns have zero free part")
    simplices, rk = placing_triangulation(vecs)
    maximal = [tuple(vecs[i] for i in s) for s in simplices if len(s) == rk]
    assert maximal, "triangulation produced no maximal simplices"
    return maximal, rk


def normalized_volume(config: PointConfig) -> int:
    """Normalized lattice volume of conv({0} cup pi(cal A)); unit simplex = 1."""
    pts = sorted({(0,) * config.d} | {c.free for c in config.columns})
    vectors = [(1,) + p for p in pts]
    simplices, rk = placing_triangulation(vectors)
    if rk < config.d + 1:
        return 0
    total = 0
    for s in simplices:
        if len(s) == config.d + 1:
            m = IntMatrix.from_rows([vectors[i] for i in s])
            total += abs(m.det())
    return total


# ---------------------------------------------------------------------------
# facets and faces


def facets(config: PointConfig):
    """Primitive integer functionals nonnegative on the cone and vanishing on
    a (d-1)-dimensional subset of it, lexicographically sorted."""
    cols = config.nonzero_free_columns()
    if not cols:
        raise EmptyConeError("all columns have zero free part")
    d = config.d
    found = set()

    def consider(tau):
        if all(_dot(tau, c) >= 0 for c in cols):
            vanish = [c for c in cols if _dot(tau, c) == 0]
            if _int_rank(vanish) == d - 1:
                found.add(tau)

    if d == 1:
        consider((1,))
        consider((-1,))
    else:
        from .lattice import kernel_basis
        for subset in combinations(cols, d - 1):
            if _int_rank(subset) != d - 1:
                continue
            kern = kernel_basis(IntMatrix.from_rows(subset))
            if kern.rows != 1:
                continue
            tau = tuple(kern.row(0))
            consider(tau)
            consider(tuple(-x for x in tau))
    return tuple(Functional.of(t) for t in sorted(found))


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _int_rank(vectors):
    if not vectors:
        return 0
    rows = [[Fraction(x) for x in v] for v in vectors]
    return fieldlin.rank(rows)


def is_pointed(config: PointConfig) -> bool:
    """True iff some rational functional is strictly positive on every
    nonzero pi(a_j); equivalently 0 is not in conv of the nonzero columns."""
    cols = config.nonzero_free_columns()
    if not cols:
        return True
    d = config.d
    for size in range(1, min(len(cols), d + 1) + 1):
        for subset in combinations(cols, size):
            rows = [[Fraction(v[i]) for v in subset] for i in range(d)]
            rows.append([Fraction(1)] * size)
            rhs = [Fraction(0)] * d + [Fraction(1)]
            lam = fieldlin.solve_unique(rows, rhs)
            if lam is not None and all(x >= 0 for x in lam):
                return False
    return True


@dataclass(frozen=True)
class Face:
    """A face of the cone, recorded by the columns lying on it (0-based,
    zero free-part columns belong to every face)."""

    column_indices: tuple
    normals: tuple
    dim: int


def face_lattice(config: PointConfig):
    if not is_pointed(config):
        raise NotPointedError("face lattice requires a pointed cone")
    taus = facets(config)
    free = config.free_columns()
    seen = {}
    for k in range(len(taus) + 1):
        for chosen in combinations(range(len(taus)), k):
            colset = tuple(j for j in range(config.n)
                           if all(taus[i](free[j]) == 0 for i in chosen))
            if colset in seen:
                continue
            normals = tuple(t for t in taus
                            if all(t(free[j]) == 0 for j in colset))
            dim = _int_rank([free[j] for j in colset
                             if any(x != 0 for x in free[j])])
            seen[colset] = Face(colset, normals, dim)
    return tuple(sorted(seen.values(), key=lambda f: (f.dim, f.column_indices)))


def face_by_columns(config: PointConfig, column_indices):
    target = tuple(sorted(set(column_indices)))
    for f in face_lattice(config):
        if f.column_indices == target:
            return f
    return None


# ---------------------------------------------------------------------------
# gradings and functionals


def epsilon_vector(config: PointConfig):
    """Sum of the free parts over all columns (with multiplicity)."""
    out = [0] * config.d
    for c in config.columns:
        for i, x in enumerate(c.free):
            out[i] += x
    return tuple(out)


def homogenizing_functional(config: PointConfig):
    """Rational h with h(pi(a_j)) = 1 for every column, or None.

    Existence certifies that every column lies on a common affine hyperplane
    at height one.  Under the spanning hypothesis the solution is unique;
    otherwise the deterministic particular solution is returned.
    """
    rows = [[Fraction(x) for x in c.free] for c in config.columns]
    rhs = [Fraction(1)] * config.n
    sol = fieldlin.solve(rows, rhs)
    return Functional(tuple(sol)) if sol is not None else None


def positive_grading(config: PointConfig) -> Functional:
    """h = sum of the facet functionals: integral, zero exactly on the
    torsion columns, >= 1 on every column with nonzero free part."""
    if not is_pointed(config):
        raise NotPointedError("positive grading requires a pointed cone")
    taus = facets(config)
    h = tuple(sum(t.free_part[i] for t in taus) for i in range(config.d))
    fn = Functional(h)
    for c in config.nonzero_free_columns():
        if fn(c) < 1:
            raise NotPointedError("no strictly positive integral grading found")
    return fn


# ---------------------------------------------------------------------------
# affine arrangements (quasi-degree supports)


@dataclass(frozen=True)
class AffinePiece:
    shift: tuple          # rational d-vector
    span_vectors: tuple   # integer d-vectors spanning the linear part
    column_indices: tuple  # columns contributing the span (0-based, display)


@dataclass(frozen=True)
class Arrangement:
    dim: int
    pieces: tuple


def membership_in_arrangement(beta, arrangement: Arrangement) -> bool:
    """Exact test whether beta (cyclotomic entries allowed) lies on one of
    the affine pieces; rank comparison over the coefficient field."""
    beta = tuple(Cyclotomic.coerce(b) for b in beta)
    for piece in arrangement.pieces:
        target = [b - Fraction(s) for b, s in zip(beta, piece.shift)]
        vectors = [[Cyclotomic.rational(x) for x in v] for v in piece.span_vectors]
        if fieldlin.in_span(vectors, target):
            return True
    return False


# ---------------------------------------------------------------------------
# standing hypotheses


@dataclass(frozen=True)
class HypothesesReport:
    spans: bool
    pointed: bool
    delta_divides_ell: bool
    delta: object
    ell: int

    @property
    def ok(self):
        return self.spans and self.pointed and self.delta_divides_ell


def check_hypotheses(config: PointConfig) -> HypothesesReport:
    s = smith_normal_form(config.free_matrix())
    spans = (len(s.invariant_factors) == config.d
             and all(f == 1 for f in s.invariant_factors))
    pointed = is_pointed(config)
    delta = lattice_index(config.columns, config.group)
    ell = config.ell
    divides = isinstance(delta, int) and delta > 0 and ell % delta == 0
    return HypothesesReport(spans, pointed, divides, delta, ell)
