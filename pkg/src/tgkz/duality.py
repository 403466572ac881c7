"""Rank bookkeeping, the parameter-shift duality, and the character split.

The rank of both the closure and interior systems is the torsion order times
the normalized volume; duality pairs the closure system at beta with the
interior system at -beta-epsilon after the sign twist x -> -x, d -> -d.
The character split certifies that the closure module decomposes into
torsion-order many untwisted copies, one per character of the torsion group.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import fieldlin
from .cones import (PointConfig, check_hypotheses, epsilon_vector,
                    normalized_volume, positive_grading)
from .cyclotomic import Cyclotomic
from .errors import HypothesisError, SpecError
from .semigroups import K, K_INTERIOR, SemigroupModule, cone_points_up_to
from .systems import SystemPresentation, bbgkz_primitive_presentation, coerce_beta
from .weyl import WeylElement

DEFAULT_TRUNCATION = 10


def rank_formula(config: PointConfig, module_kind) -> int:
    """Torsion order times normalized volume; the same number for the
    closure and interior modules, independent of the parameter."""
    if module_kind not in (K, K_INTERIOR):
        raise SpecError(f"rank formula applies to {K} and {K_INTERIOR} only",
                        code="UNSUPPORTED_MODULE")
    return config.ell * normalized_volume(config)


def dual_parameter(beta, config: PointConfig):
    """-beta minus the column sum; applying it twice gives beta back."""
    beta = coerce_beta(beta, config.d)
    eps = epsilon_vector(config)
    return tuple(-(b + Fraction(e)) for b, e in zip(beta, eps))


def sign_twist(obj):
    """x -> -x, d -> -d, on an operator or a whole presentation; an
    involution that fixes every Euler relation."""
    if isinstance(obj, WeylElement):
        return obj.sign_twist()
    if isinstance(obj, SystemPresentation):
        relations = tuple(tuple((i, op.sign_twist()) for i, op in rel)
                          for rel in obj.relations)
        return SystemPresentation(obj.config, obj.module_kind, obj.beta,
                                  obj.generators, relations, obj.bounds)
    raise TypeError(f"cannot sign-twist {type(obj).__name__}")


@dataclass(frozen=True)
class DualityReport:
    beta: tuple
    epsilon: tuple
    dual_beta: tuple
    rank_primal: int
    rank_dual: int
    twisted: bool

    def to_json(self):
        return {
            "beta": [b.to_text() for b in self.beta],
            "epsilon": list(self.epsilon),
            "dual_beta": [b.to_text() for b in self.dual_beta],
            "rank_primal": self.rank_primal,
            "rank_dual": self.rank_dual,
            "twisted": self.twisted,
        }


def dual_system(config: PointConfig, beta, binomial_degree_bound=None):
    """Sign-twisted interior presentation at the shifted parameter, paired
    with the rank report for both sides."""
    report = check_hypotheses(config)
    if not report.ok:
        raise HypothesisError("duality requires the standing hypotheses",
                              hypotheses=report)
    beta = coerce_beta(beta, config.d)
    shifted = dual_parameter(beta, config)
    module = SemigroupModule(K_INTERIOR, config)
    presentation = sign_twist(
        bbgkz_primitive_presentation(module, shifted, binomial_degree_bound))
    duality = DualityReport(
        beta, epsilon_vector(config), shifted,
        rank_formula(config, K), rank_formula(config, K_INTERIOR), True)
    assert duality.rank_primal == duality.rank_dual
    return presentation, duality


# ---------------------------------------------------------------------------
# character split


@dataclass(frozen=True)
class SplitCertificate:
    """Evaluation maps on the torsion markers and the exact evidence that
    they jointly separate every truncated graded piece."""

    exponents: tuple       # one exponent tuple r per map
    values: tuple          # per map, the marker values zeta_{l_i}^{r_i}
    matrix: tuple          # rows = maps, columns = torsion fiber elements
    determinant: Cyclotomic
    pieces_checked: int
    truncation: int

    @property
    def nonsingular(self):
        return not self.determinant.is_zero()

    def to_json(self):
        return {
            "maps": [{"exponents": list(r), "values": [v.to_text() for v in vals]}
                     for r, vals in zip(self.exponents, self.values)],
            "matrix": [[c.to_text() for c in row] for row in self.matrix],
            "determinant": self.determinant.to_text(),
            "nonsingular": self.nonsingular,
            "pieces_checked": self.pieces_checked,
            "truncation": self.truncation,
        }


def character_split(config: PointConfig, truncation=DEFAULT_TRUNCATION) -> SplitCertificate:
    """One evaluation map per torsion character; the joint map is a graded
    bijection on the height-truncated piece of the closure module because
    every graded piece produces the same root-of-unity matrix, checked
    nonsingular by an exact determinant."""
    report = check_hypotheses(config)
    if not report.ok:
        raise HypothesisError("character split requires the standing hypotheses",
                              hypotheses=report)
    orders = config.group.torsion_orders
    fibers = list(product(*(range(o) for o in orders)))
    exponents = fibers
    values = []
    matrix = []
    for r in exponents:
        values.append(tuple(Cyclotomic.zeta(o, k) if o > 1 else Cyclotomic.one()
                            for o, k in zip(orders, r)))
        row = []
        for f in fibers:
            entry = Cyclotomic.one()
            for o, rk, fk in zip(orders, r, f):
                if (rk * fk) % o:
                    entry = entry * Cyclotomic.zeta(o, rk * fk)
            row.append(entry)
        matrix.append(tuple(row))
    det = fieldlin.determinant([list(row) for row in matrix])
    det = Cyclotomic.coerce(det)
    assert not det.is_zero(), "torsion characters failed to separate the fibers"
    height = positive_grading(config)
    pieces = cone_points_up_to(config, height, truncation)
    return SplitCertificate(tuple(exponents), tuple(values), tuple(matrix),
                            det, len(pieces), int(truncation))
