"""Normally ordered elements of the Weyl algebra on n variables.

Terms are stored as (x-exponent, d-exponent) -> coefficient with every x to
the left of every d; products are renormalized through the Leibniz rule
d*x = x*d + 1.  Exact cyclotomic coefficients throughout.
"""

from math import comb, factorial, gcd

from .cyclotomic import Cyclotomic
from .poly import Polynomial, _coeff_text


class WeylElement:
    __slots__ = ("nvars", "field_order", "terms")

    def __init__(self, nvars, field_order=1, terms=None):
        self.nvars = int(nvars)
        self.field_order = int(field_order)
        clean = {}
        for (xe, de), c in (terms or {}).items():
            c = Cyclotomic.coerce(c)
            if not c.is_zero():
                clean[(tuple(int(v) for v in xe), tuple(int(v) for v in de))] = c
        self.terms = clean

    # -- constructors

    @staticmethod
    def zero(nvars, field_order=1):
        return WeylElement(nvars, field_order)

    @staticmethod
    def constant(nvars, c, field_order=1):
        c = Cyclotomic.coerce(c)
        zero = (0,) * nvars
        return WeylElement(nvars, max(field_order, c.order), {(zero, zero): c})

    @staticmethod
    def monomial(nvars, x_exp, d_exp, c=1, field_order=1):
        c = Cyclotomic.coerce(c)
        return WeylElement(nvars, max(field_order, c.order),
                           {(tuple(x_exp), tuple(d_exp)): c})

    @staticmethod
    def x(i, nvars, field_order=1):
        e = [0] * nvars
        e[i] = 1
        return WeylElement.monomial(nvars, e, [0] * nvars, 1, field_order)

    @staticmethod
    def d(i, nvars, field_order=1):
        e = [0] * nvars
        e[i] = 1
        return WeylElement.monomial(nvars, [0] * nvars, e, 1, field_order)

    @staticmethod
    def from_differential_polynomial(p: Polynomial):
        """Embed a polynomial in the d-variables."""
        zero = (0,) * p.nvars
        return WeylElement(p.nvars, p.field_order,
                           {(zero, e): c for e, c in p.terms.items()})

    # -- structure

    def is_zero(self):
        return not self.terms

    def promote(self, field_order):
        if field_order == self.field_order:
            return self
        assert field_order % self.field_order == 0
        return WeylElement(self.nvars, field_order,
                           {k: c.lift(field_order) for k, c in self.terms.items()})

    def _pair(self, other):
        if isinstance(other, (int, Cyclotomic)) or type(other).__name__ == "Fraction":
            other = WeylElement.constant(self.nvars, other)
        if self.nvars != other.nvars:
            raise ValueError("different variable counts")
        e = self.field_order * other.field_order // gcd(self.field_order,
                                                        other.field_order)
        return self.promote(e), other.promote(e)

    def __add__(self, other):
        a, b = self._pair(other)
        terms = dict(a.terms)
        for k, c in b.terms.items():
            terms[k] = terms[k] + c if k in terms else c
        return WeylElement(a.nvars, a.field_order, terms)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement(self.nvars, self.field_order,
                           {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        a, b = self._pair(other)
        return a + (-b)

    def __rsub__(self, other):
        a, b = self._pair(other)
        return b + (-a)

    def __mul__(self, other):
        a, b = self._pair(other)
        out = {}
        for (xa, da), ca in a.terms.items():
            for (xb, db), cb in b.terms.items():
                base = ca * cb
                # d^da then x^xb: iterate the Leibniz contraction per variable
                for k in _contractions(da, xb):
                    coef = base
                    for i in range(a.nvars):
                        coef = coef * (comb(da[i], k[i]) * comb(xb[i], k[i])
                                       * factorial(k[i]))
                    key = (tuple(xa[i] + xb[i] - k[i] for i in range(a.nvars)),
                           tuple(da[i] + db[i] - k[i] for i in range(a.nvars)))
                    out[key] = out[key] + coef if key in out else coef
        return WeylElement(a.nvars, a.field_order, out)

    def __rmul__(self, other):
        a, b = self._pair(other)
        return b * a

    def __pow__(self, k):
        k = int(k)
        assert k >= 0
        out = WeylElement.constant(self.nvars, 1, self.field_order)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        a, b = self._pair(other)
        return a.terms == b.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(
            (k, v.demoted()) for k, v in self.terms.items())))

    def commutator(self, other):
        return self * other - other * self

    def sign_twist(self):
        """The image under x -> -x, d -> -d: each term picks up the parity
        of its total degree."""
        terms = {}
        for (xe, de), c in self.terms.items():
            if (sum(xe) + sum(de)) % 2:
                c = -c
            terms[(xe, de)] = c
        return WeylElement(self.nvars, self.field_order, terms)

    def total_degree(self):
        return max((sum(xe) + sum(de) for (xe, de) in self.terms), default=0)

    # -- canonical forms

    def sorted_terms(self):
        def key(item):
            (xe, de), _ = item
            return (sum(xe) + sum(de), xe, de)
        return sorted(self.terms.items(), key=key, reverse=True)

    def to_text(self):
        if not self.terms:
            return "0"
        chunks = []
        for (xe, de), c in self.sorted_terms():
            mono = "*".join(
                [f"x{i+1}" + (f"^{e}" if e > 1 else "")
                 for i, e in enumerate(xe) if e] +
                [f"d{i+1}" + (f"^{e}" if e > 1 else "")
                 for i, e in enumerate(de) if e])
            chunks.append(_coeff_text(c, bool(mono)) + mono)
        out = chunks[0]
        for ch in chunks[1:]:
            if ch.startswith("-"):
                out += " - " + ch[1:]
            else:
                out += " + " + ch
        return out

    def to_json(self):
        return [{"x": list(xe), "d": list(de), "c": c.to_text()}
                for (xe, de), c in self.sorted_terms()]

    def __repr__(self):
        return f"WeylElement({self.to_text()})"


def _contractions(d_exp, x_exp):
    """All contraction multi-indices 0 <= k <= min(d_exp, x_exp)."""
    ranges = [range(min(a, b) + 1) for a, b in zip(d_exp, x_exp)]
    from itertools import product
    return product(*ranges)


def euler_operators(config):
    """Row-wise weighted vector fields: the i-th has weight a_{i,j} on the
    j-th coordinate scaling field x_j d_j."""
    n, dvars = config.n, config.d
    out = []
    free = config.free_columns()
    for i in range(dvars):
        op = WeylElement.zero(n)
        for j in range(n):
            if free[j][i]:
                xe = [0] * n
                xe[j] = 1
                op = op + WeylElement.monomial(n, xe, xe, free[j][i])
        out.append(op)
    return tuple(out)
