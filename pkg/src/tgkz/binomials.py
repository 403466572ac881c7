"""Lattice and twisted lattice ideals attached to a point configuration.

The untwisted toric ideal comes from the kernel of the free projection of
the columns; the full-group toric ideal from the kernel of the whole column
map, torsion included.  Characters on a kernel sublattice twist binomial
coefficients into roots of unity, which is how the minimal primes of the
full-group ideal arise.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import gcd

from .cones import Face, PointConfig, face_by_columns
from .cyclotomic import Cyclotomic
from .errors import LatticeMismatchError, NotSaturatedError
from .lattice import (IntMatrix, express_in_rows, hnf_rows, kernel_basis,
                      kernel_lattice, smith_normal_form)
from .poly import (GREVLEX, IdealBasis, Polynomial, canonical_ideal,
                   groebner_ideal, ideal_equal, ideal_member, normal_form,
                   saturate, intersect_many)


@dataclass(frozen=True)
class PartialCharacter:
    """A multiplicative map on a sublattice of Z^n, stored by its nonzero
    values on a Hermite-form lattice basis."""

    basis: tuple          # HNF rows
    values: tuple         # one nonzero Cyclotomic per row
    nvars: int

    @staticmethod
    def on_rows(rows, values, nvars):
        """Build from any basis; rebases values onto the Hermite form."""
        rows = [tuple(r) for r in rows]
        values = [Cyclotomic.coerce(v) for v in values]
        assert len(rows) == len(values)
        if not rows:
            return PartialCharacter((), (), nvars)
        assert all(not v.is_zero() for v in values)
        hermite = hnf_rows(rows)
        rebased = []
        for h in hermite:
            coeffs = express_in_rows(h, rows)
            assert coeffs is not None, "Hermite row left the lattice"
            val = Cyclotomic.one()
            for c, v in zip(coeffs, values):
                val = val * (v ** c)
            rebased.append(val)
        return PartialCharacter(tuple(hermite), tuple(rebased), nvars)

    @staticmethod
    def trivial_on(rows, nvars):
        return PartialCharacter.on_rows(rows, [Cyclotomic.one()] * len(rows), nvars)

    def value_of(self, m):
        """Value on a lattice element; the element must lie in the span."""
        coeffs = express_in_rows(tuple(m), list(self.basis))
        if coeffs is None:
            raise LatticeMismatchError(f"{tuple(m)} outside the character lattice")
        val = Cyclotomic.one()
        for c, v in zip(coeffs, self.values):
            val = val * (v ** c)
        return val

    def contains(self, m):
        return express_in_rows(tuple(m), list(self.basis)) is not None

    def is_saturated(self):
        """True iff Z^n modulo the lattice is torsion-free."""
        if not self.basis:
            return True
        snf = smith_normal_form(IntMatrix.from_rows(list(self.basis)))
        return all(f == 1 for f in snf.invariant_factors)

    def same_lattice(self, rows):
        return tuple(self.basis) == tuple(hnf_rows([tuple(r) for r in rows]))

    def is_trivial(self):
        return all(v.is_one() for v in self.values)


# ---------------------------------------------------------------------------
# kernels and Markov bases


def free_kernel_rows(config: PointConfig):
    kb = kernel_basis(config.free_matrix())
    return [tuple(r) for r in kb.to_rows()]


def full_kernel_rows(config: PointConfig):
    kl = kernel_lattice(config.columns, config.group)
    return [tuple(r) for r in kl.to_rows()]


def lattice_ideal(rows, nvars, values=None, do_saturate=True) -> IdealBasis:
    """Reduced basis of the (optionally twisted) lattice ideal of the row
    span: binomials with exponents the positive/negative parts of each row,
    coefficient twisted by the character value, then saturated so membership
    depends only on the lattice, not the chosen basis."""
    if values is None:
        values = [Cyclotomic.one()] * len(rows)
    gens = []
    for m, val in zip(rows, values):
        plus = tuple(max(x, 0) for x in m)
        minus = tuple(max(-x, 0) for x in m)
        gens.append(Polynomial.monomial(nvars, plus)
                    - Polynomial.monomial(nvars, minus, val))
    ideal = groebner_ideal(gens, nvars) if gens else IdealBasis(nvars, (), GREVLEX, True)
    if do_saturate and ideal.generators:
        ideal = saturate(ideal, range(nvars))
    return ideal


def toric_ideal_free(config: PointConfig) -> IdealBasis:
    """Lattice ideal of the kernel of the free projection of the columns."""
    return lattice_ideal(free_kernel_rows(config), config.n)


def toric_ideal_full(config: PointConfig) -> IdealBasis:
    """Lattice ideal of the kernel of the full column map, torsion included."""
    return lattice_ideal(full_kernel_rows(config), config.n)


def markov_basis(config: PointConfig):
    """Exponent moves connecting the fibers of the free column map: the
    binomial exponents of the reduced basis of the free toric ideal."""
    ideal = toric_ideal_free(config)
    moves = []
    for g in ideal.generators:
        exps = sorted(g.terms, key=GREVLEX.key, reverse=True)
        assert len(exps) == 2, "lattice ideal basis element is not a binomial"
        moves.append(tuple(a - b for a, b in zip(exps[0], exps[1])))
    return moves


def power_ideal(config: PointConfig) -> IdealBasis:
    """Ideal generated by the torsion-order dilations of the Markov moves.

    Dilating every move by ell lands the generators inside the full-group
    ideal, and telescoping along Markov paths shows they generate it whenever
    the dilated fiber graph is connected; the ideal is taken as generated,
    without saturation.
    """
    ell = config.ell
    gens = []
    for m in markov_basis(config):
        plus = tuple(ell * max(x, 0) for x in m)
        minus = tuple(ell * max(-x, 0) for x in m)
        gens.append(Polynomial.monomial(config.n, plus)
                    - Polynomial.monomial(config.n, minus))
    if not gens:
        return IdealBasis(config.n, (), GREVLEX, True)
    return groebner_ideal(gens, config.n)


# ---------------------------------------------------------------------------
# twisted ideals


def twisted_ideal(config: PointConfig, rho: PartialCharacter) -> IdealBasis:
    """Lattice ideal of the free kernel with coefficients twisted by rho;
    rho must live exactly on that kernel."""
    rows = free_kernel_rows(config)
    if not rho.same_lattice(rows):
        raise LatticeMismatchError("character lattice differs from the free kernel")
    moves = markov_basis(config)
    return lattice_ideal(moves, config.n, [rho.value_of(m) for m in moves])


def face_twisted_ideal(config: PointConfig, face: Face, rho: PartialCharacter) -> IdealBasis:
    """Variables whose columns avoid the face, plus the twisted lattice ideal
    of the face's own column submatrix (embedded back into all n variables)."""
    n = config.n
    on_face = set(face.column_indices)
    gens = [Polynomial.variable(j, n) for j in range(n) if j not in on_face]
    face_cols = sorted(on_face)
    if face_cols:
        sub = IntMatrix.from_rows(
            [[config.columns[j].free[i] for j in face_cols]
             for i in range(config.d)])
        sub_kernel = kernel_basis(sub).to_rows()
        embedded = []
        for row in sub_kernel:
            full = [0] * n
            for pos, j in enumerate(face_cols):
                full[j] = row[pos]
            embedded.append(tuple(full))
        vals = [rho.value_of(m) for m in embedded]
        face_ideal = lattice_ideal(embedded, n, vals)
        gens.extend(face_ideal.generators)
    if not gens:
        return IdealBasis(n, (), GREVLEX, True)
    return groebner_ideal(gens, n)


def extend_character(rho: PartialCharacter):
    """Extend to all of Z^n: value rho on the lattice, 1 on a complement.

    Requires saturation; a basis of Z^n adapted to the lattice comes from the
    Smith decomposition of the basis matrix, the complement rows get value 1,
    and values on the standard vectors follow by multiplicativity.  No root
    extraction is ever needed, so the coefficient field does not grow.
    """
    n = rho.nvars
    if not rho.is_saturated():
        raise NotSaturatedError("character lattice is not saturated")
    identity = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    if not rho.basis:
        return PartialCharacter.on_rows(identity, [Cyclotomic.one()] * n, n)
    m = IntMatrix.from_rows(list(rho.basis))
    snf = smith_normal_form(m)
    r = len(snf.invariant_factors)
    assert r == m.rows and all(f == 1 for f in snf.invariant_factors)
    # adapted basis rows w_i: rows of V^{-1}; the first r span the lattice
    w = _unimodular_inverse(snf.V)
    adapted_values = []
    for i in range(n):
        if i < r:
            adapted_values.append(rho.value_of(w.row(i)))
        else:
            adapted_values.append(Cyclotomic.one())
    # e_j = sum_i V[j][i] w_i
    values = []
    for j in range(n):
        val = Cyclotomic.one()
        for i in range(n):
            val = val * (adapted_values[i] ** snf.V.entry(j, i))
        values.append(val)
    full = PartialCharacter.on_rows(identity, values, n)
    for row, expected in zip(rho.basis, rho.values):
        assert full.value_of(row) == expected
    return full


def _unimodular_inverse(m: IntMatrix) -> IntMatrix:
    """Integer inverse of a unimodular matrix via Hermite reduction of
    [m | I], which ends at [I | m^{-1}]."""
    n = m.rows
    assert n == m.cols
    aug = [list(m.row(i)) + [1 if j == i else 0 for j in range(n)]
           for i in range(n)]
    h = hnf_rows(aug)
    assert all(h[i][i] == 1 for i in range(n))
    inv_rows = [row[n:] for row in h]
    return IntMatrix.from_rows(inv_rows)


def twist_automorphism(f: Polynomial, full_character: PartialCharacter) -> Polynomial:
    """Scale each monomial by the character value of its exponent."""
    terms = {}
    for exp, c in f.terms.items():
        terms[exp] = c * full_character.value_of(exp)
    field = f.field_order
    for v in full_character.values:
        field = field * v.order // gcd(field, v.order)
    return Polynomial(f.nvars, field, terms)


# ---------------------------------------------------------------------------
# minimal primes of the full-group toric ideal


def minimal_primes(config: PointConfig, workers=None):
    """Twisted lattice ideals cutting out the components of the full-group
    toric ideal.

    The free kernel modulo the full kernel is a finite abelian group; each of
    its characters lifts to a character on the free kernel trivial on the
    full kernel, and the resulting twisted ideals are exactly the minimal
    primes.  Their intersection is asserted to recover the full-group ideal.
    Returns [(character, ideal)], characters enumerated in a fixed order.
    """
    free_rows = free_kernel_rows(config)
    n = config.n
    if not free_rows:
        triv = PartialCharacter.trivial_on([], n)
        return [(triv, toric_ideal_free(config))]
    full_rows = full_kernel_rows(config)
    r = len(free_rows)
    assert len(full_rows) == r, "full kernel must have finite index in the free kernel"
    x_rows = []
    for row in full_rows:
        coeffs = express_in_rows(row, free_rows)
        assert coeffs is not None
        x_rows.append(coeffs)
    snf = smith_normal_form(IntMatrix.from_rows(x_rows))
    orders = snf.invariant_factors
    assert len(orders) == r
    characters = []
    from itertools import product
    for c in product(*(range(o) for o in orders)):
        values = []
        for k in range(r):
            val = Cyclotomic.one()
            for j in range(r):
                if orders[j] > 1 and c[j] % orders[j]:
                    val = val * Cyclotomic.zeta(orders[j], c[j] * snf.V.entry(k, j))
            values.append(val)
        rho = PartialCharacter.on_rows(free_rows, values, n)
        for row in full_rows:
            assert rho.value_of(row).is_one(), "character not trivial on the full kernel"
        characters.append(rho)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            ideals = list(pool.map(lambda rho: twisted_ideal(config, rho), characters))
    else:
        ideals = [twisted_ideal(config, rho) for rho in characters]
    meet = intersect_many(list(ideals))
    assert ideal_equal(meet, toric_ideal_full(config)), \
        "minimal primes do not intersect to the full-group ideal"
    return list(zip(characters, ideals))


# ---------------------------------------------------------------------------
# recognizing graded binomial primes


def classify_graded_binomial_prime(ideal: IdealBasis, config: PointConfig):
    """Match an ideal against the face-plus-twist shape.

    Returns (face, character-on-the-face-kernel) when the ideal equals the
    face's variable ideal plus a twisted face lattice ideal, None otherwise
    (including inputs that are not graded for the free column matrix).
    """
    n = config.n
    if ideal.nvars != n:
        return None
    free = config.free_columns()
    for g in ideal.generators:
        degs = {tuple(sum(e[j] * free[j][i] for j in range(n))
                      for i in range(config.d))
                for e in g.terms}
        if len(degs) > 1:
            return None
    basis = canonical_ideal(ideal)
    gb = list(basis.generators)
    if any(g.total_degree() == 0 for g in gb):
        return None  # unit ideal
    inside = []
    for j in range(n):
        dj = Polynomial.variable(j, n, basis.field_order())
        if not normal_form(dj, gb, GREVLEX).is_zero():
            inside.append(j)
    face = face_by_columns(config, inside)
    if face is None:
        return None
    face_cols = sorted(set(face.column_indices))
    sub_kernel = []
    if face_cols:
        sub = IntMatrix.from_rows(
            [[config.columns[j].free[i] for j in face_cols]
             for i in range(config.d)])
        for row in kernel_basis(sub).to_rows():
            full = [0] * n
            for pos, j in enumerate(face_cols):
                full[j] = row[pos]
            sub_kernel.append(tuple(full))
    values = []
    for m in sub_kernel:
        plus = tuple(max(x, 0) for x in m)
        minus = tuple(max(-x, 0) for x in m)
        nf_plus = normal_form(Polynomial.monomial(n, plus, 1, basis.field_order()),
                              gb, GREVLEX)
        nf_minus = normal_form(Polynomial.monomial(n, minus, 1, basis.field_order()),
                               gb, GREVLEX)
        if nf_minus.is_zero() or set(nf_plus.terms) != set(nf_minus.terms):
            return None
        exp = next(iter(nf_minus.terms))
        ratio = nf_plus.terms[exp] / nf_minus.terms[exp]
        scaled = nf_minus * ratio
        if not (nf_plus - scaled).is_zero():
            return None
        values.append(ratio)
    rho = PartialCharacter.on_rows(sub_kernel, values, n)
    rebuilt = face_twisted_ideal(config, face, rho)
    if not ideal_equal(basis, rebuilt):
        return None
    return face, rho
