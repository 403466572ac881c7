"""Exact integer linear algebra and finitely generated abelian groups.

Matrices are immutable, arbitrary-precision, row-major.  Lattice bases are
returned as rows in Hermite normal form with positive pivots, so equal
lattices always produce identical output.
"""

from dataclasses import dataclass
from fractions import Fraction


class _Infinite:
    __slots__ = ()

    def __repr__(self):
        return "INFINITE"


#: Sentinel returned by lattice_index when the subgroup has infinite index.
INFINITE = _Infinite()


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major, length rows*cols

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @staticmethod
    def from_rows(rows):
        rows = [tuple(int(x) for x in r) for r in rows]
        if not rows:
            return IntMatrix(0, 0, ())
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        return IntMatrix(len(rows), width, tuple(x for r in rows for x in r))

    @staticmethod
    def identity(n):
        return IntMatrix(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    def entry(self, i, j):
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j):
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self):
        return IntMatrix(self.cols, self.rows,
                         tuple(self.entry(i, j) for j in range(self.cols) for i in range(self.rows)))

    def mul(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        rows = []
        for i in range(self.rows):
            r = self.row(i)
            rows.append([sum(r[k] * other.entry(k, j) for k in range(self.cols))
                         for j in range(other.cols)])
        return IntMatrix.from_rows(rows)

    def mul_vector(self, v):
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(sum(self.entry(i, k) * v[k] for k in range(self.cols))
                     for i in range(self.rows))

    def det(self):
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.to_rows()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    invariant_factors: tuple


def _swap_rows(a, u, i, j):
    a[i], a[j] = a[j], a[i]
    u[i], u[j] = u[j], u[i]


def _swap_cols(a, v, i, j):
    for r in a:
        r[i], r[j] = r[j], r[i]
    for r in v:
        r[i], r[j] = r[j], r[i]


def _add_row(a, u, dst, src, q):
    # row dst += q * row src
    ad, asrc = a[dst], a[src]
    for k in range(len(ad)):
        ad[k] += q * asrc[k]
    ud, usrc = u[dst], u[src]
    for k in range(len(ud)):
        ud[k] += q * usrc[k]


def _add_col(a, v, dst, src, q):
    for r in a:
        r[dst] += q * r[src]
    for r in v:
        r[dst] += q * r[src]


def smith_normal_form(m: IntMatrix) -> SmithDecomposition:
    """U*M*V = D with U, V unimodular and positive diagonal factors in a
    divisibility chain d1 | d2 | ... ."""
    a = m.to_rows()
    nr, nc = m.rows, m.cols
    u = IntMatrix.identity(nr).to_rows()
    v = IntMatrix.identity(nc).to_rows()
    k = 0
    while k < min(nr, nc):
        # smallest nonzero |entry| in the remaining block becomes the pivot
        piv = None
        for i in range(k, nr):
            for j in range(k, nc):
                if a[i][j] != 0 and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        _swap_rows(a, u, k, piv[0])
        _swap_cols(a, v, k, piv[1])
        while True:
            dirty = False
            for i in range(k + 1, nr):
                if a[i][k] != 0:
                    q = a[i][k] // a[k][k]
                    _add_row(a, u, i, k, -q)
                    if a[i][k] != 0:
                        # remainder smaller than pivot: promote it
                        _swap_rows(a, u, k, i)
                        dirty = True
            for j in range(k + 1, nc):
                if a[k][j] != 0:
                    q = a[k][j] // a[k][k]
                    _add_col(a, v, j, k, -q)
                    if a[k][j] != 0:
                        _swap_cols(a, v, k, j)
                        dirty = True
            if dirty:
                continue
            # pivot must divide every entry of the remaining block before we
            # advance, otherwise the divisibility chain can break later
            offender = None
            for i in range(k + 1, nr):
                for j in range(k + 1, nc):
                    if a[i][j] % a[k][k] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            _add_row(a, u, k, offender, 1)
        if a[k][k] < 0:
            for j in range(nc):
                a[k][j] = -a[k][j]
            for j in range(nr):
                u[k][j] = -u[k][j]
        k += 1
    um = IntMatrix.from_rows(u)
    vm = IntMatrix.from_rows(v)
    dm = IntMatrix.from_rows(a)
    assert um.mul(m).mul(vm).entries == dm.entries
    factors = tuple(dm.entry(i, i) for i in range(min(nr, nc)) if dm.entry(i, i) != 0)
    for i in range(len(factors) - 1):
        assert factors[i + 1] % factors[i] == 0
    return SmithDecomposition(um, dm, vm, factors)


def rank(m: IntMatrix) -> int:
    return len(smith_normal_form(m).invariant_factors)


def hnf_rows(rows):
    """Canonical basis of the lattice spanned by the given integer rows.

    Row-style Hermite normal form: positive pivots in staircase position,
    entries above each pivot reduced into [0, pivot).  Zero rows dropped.
    """
    h, _ = hnf_with_transform(rows)
    return h


def hnf_with_transform(rows):
    """(H, T) with T unimodular, T * rows = H padded by zero rows."""
    m = [list(int(x) for x in r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if m else 0
    t = IntMatrix.identity(nr).to_rows()
    r = 0
    for c in range(nc):
        if r == nr:
            break
        # clear column c below position r by Euclidean row steps
        while True:
            pivot = None
            for i in range(r, nr):
                if m[i][c] != 0 and (pivot is None or abs(m[i][c]) < abs(m[pivot][c])):
                    pivot = i
            if pivot is None:
                break
            m[r], m[pivot] = m[pivot], m[r]
            t[r], t[pivot] = t[pivot], t[r]
            done = True
            for i in range(r + 1, nr):
                if m[i][c] != 0:
                    q = m[i][c] // m[r][c]
                    for k in range(nc):
                        m[i][k] -= q * m[r][k]
                    for k in range(nr):
                        t[i][k] -= q * t[r][k]
                    if m[i][c] != 0:
                        done = False
            if done:
                break
        if r < nr and m[r][c] != 0:
            if m[r][c] < 0:
                m[r] = [-x for x in m[r]]
                t[r] = [-x for x in t[r]]
            for i in range(r):
                q = m[i][c] // m[r][c]
                if q:
                    for k in range(nc):
                        m[i][k] -= q * m[r][k]
                    for k in range(nr):
                        t[i][k] -= q * t[r][k]
            r += 1
    basis = tuple(tuple(row) for row in m[:r])
    assert all(any(x != 0 for x in row) for row in basis)
    return basis, IntMatrix.from_rows(t) if t else IntMatrix(0, 0, ())


def _pivot_positions(hrows):
    out = []
    for row in hrows:
        for j, x in enumerate(row):
            if x != 0:
                out.append(j)
                break
    return out


def in_row_span(v, basis_rows) -> bool:
    """Is the integer vector v in the lattice spanned by basis_rows?"""
    return express_in_rows(v, basis_rows) is not None


def express_in_rows(v, rows):
    """Integer coefficients c with sum(c_i * rows_i) = v, or None."""
    rows = [tuple(r) for r in rows]
    if not rows:
        return () if all(x == 0 for x in v) else None
    h, t = hnf_with_transform(rows)
    pivots = _pivot_positions(h)
    w = list(int(x) for x in v)
    y = [0] * t.rows
    for idx, row in enumerate(h):
        p = pivots[idx]
        if w[p] % row[p] != 0:
            return None
        q = w[p] // row[p]
        y[idx] = q
        for k in range(len(w)):
            w[k] -= q * row[k]
    if any(x != 0 for x in w):
        return None
    # y * H = v and T * rows = H, so (y * T) * rows = v
    return tuple(sum(y[i] * t.entry(i, j) for i in range(t.rows)) for j in range(t.rows))


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """Rows form the canonical basis of {u in Z^cols : M u = 0}."""
    s = smith_normal_form(m)
    r = len(s.invariant_factors)
    cols = [tuple(s.V.entry(i, j) for i in range(m.cols)) for j in range(r, m.cols)]
    return IntMatrix.from_rows(hnf_rows(cols)) if cols else IntMatrix(0, m.cols, ())


@dataclass(frozen=True)
class AbelianGroup:
    """N = Z/l1 (+) ... (+) Z/lk (+) Z^d with the invariant-factor chain l1 | l2 | ... ."""

    torsion_orders: tuple
    free_rank: int

    def __post_init__(self):
        orders = tuple(int(x) for x in self.torsion_orders)
        object.__setattr__(self, "torsion_orders", orders)
        if any(o < 2 for o in orders):
            raise ValueError("torsion orders must be >= 2")
        for a, b in zip(orders, orders[1:]):
            if b % a != 0:
                raise ValueError("torsion orders must form a divisibility chain")
        if self.free_rank < 0:
            raise ValueError("free rank must be >= 0")

    @property
    def torsion_rank(self):
        return len(self.torsion_orders)

    @property
    def torsion_index(self):
        """|F|, the order of the torsion subgroup."""
        out = 1
        for o in self.torsion_orders:
            out *= o
        return out

    def element(self, torsion, free):
        torsion = tuple(int(t) % o for t, o in zip(tuple(torsion), self.torsion_orders))
        if len(torsion) != self.torsion_rank or len(tuple(free)) != self.free_rank:
            raise ValueError("coordinate length mismatch")
        return GroupElement(self, torsion, tuple(int(x) for x in free))

    def zero(self):
        return self.element((0,) * self.torsion_rank, (0,) * self.free_rank)

    def torsion_elements(self):
        """All elements of the torsion subgroup F, in lexicographic order."""
        from itertools import product
        zero_free = (0,) * self.free_rank
        for t in product(*(range(o) for o in self.torsion_orders)):
            yield GroupElement(self, t, zero_free)


@dataclass(frozen=True)
class GroupElement:
    group: AbelianGroup
    torsion: tuple
    free: tuple

    def __add__(self, other):
        if self.group != other.group:
            raise ValueError("elements of different groups")
        return self.group.element(
            tuple(a + b for a, b in zip(self.torsion, other.torsion)),
            tuple(a + b for a, b in zip(self.free, other.free)))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.group.element(tuple(-t for t in self.torsion),
                                  tuple(-x for x in self.free))

    def __mul__(self, k):
        k = int(k)
        return self.group.element(tuple(k * t for t in self.torsion),
                                  tuple(k * x for x in self.free))

    __rmul__ = __mul__

    def is_zero(self):
        return all(t == 0 for t in self.torsion) and all(x == 0 for x in self.free)

    def has_finite_order(self):
        return all(x == 0 for x in self.free)

    def sort_key(self):
        return (self.free, self.torsion)


@dataclass(frozen=True)
class Functional:
    """Rational linear functional on the free part N-bar = Z^d."""

    free_part: tuple

    @staticmethod
    def of(coeffs):
        return Functional(tuple(Fraction(c) for c in coeffs))

    def __call__(self, v):
        vec = v.free if isinstance(v, GroupElement) else tuple(v)
        if len(vec) != len(self.free_part):
            raise ValueError("dimension mismatch")
        return sum((c * Fraction(x) for c, x in zip(self.free_part, vec)), Fraction(0))

    def is_integral(self):
        return all(c.denominator == 1 for c in self.free_part)

    def as_int_tuple(self):
        assert self.is_integral()
        return tuple(int(c) for c in self.free_part)

    def sort_key(self):
        return self.free_part


def full_coordinate_matrix(columns, group):
    """(k+d) x n integer matrix of canonical full coordinates: torsion rows
    (representatives in [0, l_i)) stacked over free rows."""
    k, d = group.torsion_rank, group.free_rank
    rows = []
    for i in range(k):
        rows.append([c.torsion[i] for c in columns])
    for i in range(d):
        rows.append([c.free[i] for c in columns])
    return IntMatrix.from_rows(rows) if rows else IntMatrix(0, len(columns), ())


def _presentation_matrix(columns, group):
    """[M | L] where M holds full coordinates and L the torsion relations l_i e_i."""
    k, d = group.torsion_rank, group.free_rank
    m = full_coordinate_matrix(columns, group)
    rows = []
    for i in range(k + d):
        row = list(m.row(i))
        for j in range(k):
            row.append(group.torsion_orders[j] if i == j else 0)
        rows.append(row)
    return IntMatrix.from_rows(rows)


def kernel_lattice_free(columns, group) -> IntMatrix:
    """Basis (rows, HNF) of {u in Z^n : sum u_j pi(a_j) = 0}."""
    d = group.free_rank
    rows = [[c.free[i] for c in columns] for i in range(d)]
    a = IntMatrix.from_rows(rows) if rows else IntMatrix(0, len(columns), ())
    return kernel_basis(a)


def kernel_lattice(columns, group) -> IntMatrix:
    """Basis (rows, HNF) of {u in Z^n : sum u_j a_j = 0 in N}, torsion included."""
    n = len(columns)
    if group.torsion_rank == 0:
        return kernel_lattice_free(columns, group)
    combined = _presentation_matrix(columns, group)
    kern = kernel_basis(combined)
    projected = [kern.row(i)[:n] for i in range(kern.rows)]
    basis = hnf_rows([r for r in projected if any(x != 0 for x in r)])
    return IntMatrix.from_rows(basis) if basis else IntMatrix(0, n, ())


def lattice_index(columns, group):
    """Index [N : Z*cal(A)] as a positive integer, or INFINITE."""
    total = group.torsion_rank + group.free_rank
    if total == 0:
        return 1
    combined = _presentation_matrix(columns, group)
    s = smith_normal_form(combined)
    if len(s.invariant_factors) < total:
        return INFINITE
    out = 1
    for f in s.invariant_factors:
        out *= f
    return out
