"""Commutative polynomial algebra over Q(zeta_e).

Monomial orders, Buchberger with a pair budget, reduced Groebner bases,
saturation and intersection by variable adjunction/elimination, a small
module-level Buchberger for submodules of free modules (used by the
presentation builder), and the canonical round-trippable text format.
"""

import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _gcd

from .cyclotomic import Cyclotomic
from .errors import BudgetExceededError

DEFAULT_PAIR_BUDGET = 5000


def default_pair_budget():
    raw = os.environ.get("TGKZ_PAIR_BUDGET")
    if raw is None:
        return DEFAULT_PAIR_BUDGET
    return int(raw)


# ---------------------------------------------------------------------------
# monomial orders


class MonomialOrder:
    def key(self, exp):
        raise NotImplementedError

    def tag(self):
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self.tag() == other.tag()

    def __hash__(self):
        return hash(self.tag())


class Grevlex(MonomialOrder):
    """Graded reverse lexicographic; optional variable permutation."""

    def __init__(self, perm=None):
        self.perm = tuple(perm) if perm is not None else None

    def key(self, exp):
        e = exp if self.perm is None else tuple(exp[p] for p in self.perm)
        return (sum(e), tuple(-x for x in reversed(e)))

    def tag(self):
        return "grevlex" if self.perm is None else f"grevlex:perm={list(self.perm)}"


class Lex(MonomialOrder):
    def __init__(self, perm=None):
        self.perm = tuple(perm) if perm is not None else None

    def key(self, exp):
        return exp if self.perm is None else tuple(exp[p] for p in self.perm)

    def tag(self):
        return "lex" if self.perm is None else f"lex:perm={list(self.perm)}"


class BlockElim(MonomialOrder):
    """Eliminate the given variables: their total degree is compared first,
    grevlex breaks ties.  Monomials free of the block are smaller than any
    monomial meeting it, which is what elimination needs."""

    def __init__(self, elim):
        self.elim = tuple(sorted(elim))

    def key(self, exp):
        return (sum(exp[i] for i in self.elim), sum(exp), tuple(-x for x in reversed(exp)))

    def tag(self):
        return f"elim:{list(self.elim)}"


GREVLEX = Grevlex()


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _lcm_exp(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    __slots__ = ("nvars", "field_order", "terms")

    def __init__(self, nvars, field_order=1, terms=None):
        self.nvars = int(nvars)
        self.field_order = int(field_order)
        clean = {}
        for exp, c in (terms or {}).items():
            c = Cyclotomic.coerce(c)
            if not c.is_zero():
                clean[tuple(int(x) for x in exp)] = c
        self.terms = clean

    # -- constructors

    @staticmethod
    def zero(nvars, field_order=1):
        return Polynomial(nvars, field_order)

    @staticmethod
    def constant(nvars, c, field_order=1):
        c = Cyclotomic.coerce(c)
        return Polynomial(nvars, max(field_order, c.order), {(0,) * nvars: c})

    @staticmethod
    def monomial(nvars, exp, c=1, field_order=1):
        c = Cyclotomic.coerce(c)
        return Polynomial(nvars, max(field_order, c.order), {tuple(exp): c})

    @staticmethod
    def variable(i, nvars, field_order=1):
        exp = [0] * nvars
        exp[i] = 1
        return Polynomial.monomial(nvars, exp, 1, field_order)

    # -- helpers

    def is_zero(self):
        return not self.terms

    def promote(self, field_order):
        if field_order == self.field_order:
            return self
        assert field_order % self.field_order == 0
        return Polynomial(self.nvars, field_order,
                          {e: c.lift(field_order) for e, c in self.terms.items()})

    def _pair(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = Polynomial.constant(self.nvars, other)
        if self.nvars != other.nvars:
            raise ValueError("polynomials in different rings")
        e = self.field_order * other.field_order // _gcd(self.field_order, other.field_order)
        return self.promote(e), other.promote(e)

    def __add__(self, other):
        a, b = self._pair(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return Polynomial(a.nvars, a.field_order, terms)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._pair(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            terms[e] = terms[e] - c if e in terms else -c
        return Polynomial(a.nvars, a.field_order, terms)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Polynomial(self.nvars, self.field_order,
                          {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            c0 = Cyclotomic.coerce(other)
            e = self.field_order * c0.order // _gcd(self.field_order, c0.order)
            return Polynomial(self.nvars, e,
                              {exp: c * c0 for exp, c in self.terms.items()})
        a, b = self._pair(other)
        terms = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = _add(e1, e2)
                c = c1 * c2
                terms[e] = terms[e] + c if e in terms else c
        return Polynomial(a.nvars, a.field_order, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        k = int(k)
        assert k >= 0
        out = Polynomial.constant(self.nvars, 1, self.field_order)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self._pair(other)
        return a.terms == b.terms

    def leading(self, order):
        exp = max(self.terms, key=order.key)
        return exp, self.terms[exp]

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def map_exponents(self, fn, new_nvars):
        terms = {}
        for e, c in self.terms.items():
            ne = fn(e)
            terms[ne] = terms[ne] + c if ne in terms else c
        return Polynomial(new_nvars, self.field_order, terms)

    def extend_vars(self, extra):
        """Append `extra` fresh variables (exponent 0) at the end."""
        return self.map_exponents(lambda e: e + (0,) * extra, self.nvars + extra)

    def drop_last_vars(self, count):
        assert all(all(x == 0 for x in e[self.nvars - count:]) for e in self.terms)
        return self.map_exponents(lambda e: e[:self.nvars - count], self.nvars - count)

    def sorted_terms(self, order=GREVLEX, reverse=True):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=reverse)

    def __repr__(self):
        return f"Polynomial({polynomial_to_text(self)})"


def _common_field(polys):
    e = 1
    for p in polys:
        e = e * p.field_order // _gcd(e, p.field_order)
    return e


def normal_form(f, gens, order):
    """Full multivariate division remainder of f by gens, deterministic."""
    gens = [g for g in gens if not g.is_zero()]
    if f.is_zero() or not gens:
        return f
    e = _common_field([f] + gens)
    f = f.promote(e)
    gens = [g.promote(e) for g in gens]
    leads = [g.leading(order) for g in gens]
    remainder = {}
    work = dict(f.terms)
    while work:
        exp = max(work, key=order.key)
        coeff = work.pop(exp)
        hit = None
        for idx, (lexp, lc) in enumerate(leads):
            if _divides(lexp, exp):
                hit = (idx, lexp, lc)
                break
        if hit is None:
            remainder[exp] = remainder[exp] + coeff if exp in remainder else coeff
            continue
        idx, lexp, lc = hit
        shift = _sub(exp, lexp)
        factor = coeff / lc
        for gexp, gc in gens[idx].terms.items():
            if gexp == lexp:
                continue
            tgt = _add(gexp, shift)
            c = factor * gc
            if tgt in work:
                work[tgt] = work[tgt] - c
                if work[tgt].is_zero():
                    del work[tgt]
            elif tgt in remainder:
                # terms already banked are order-smaller than exp; reductions
                # only produce terms below exp, so this cannot happen
                raise AssertionError("reduction produced a banked term")
            else:
                nc = -c
                if not nc.is_zero():
                    work[tgt] = nc
    return Polynomial(f.nvars, e, remainder)


def s_polynomial(f, g, order):
    (fe, fc), (ge, gc) = f.leading(order), g.leading(order)
    lcm = _lcm_exp(fe, ge)
    mf = Polynomial.monomial(f.nvars, _sub(lcm, fe), 1, f.field_order)
    mg = Polynomial.monomial(g.nvars, _sub(lcm, ge), 1, g.field_order)
    return (mf * f) * (Cyclotomic.one() / fc) - (mg * g) * (Cyclotomic.one() / gc)


def buchberger(gens, order=GREVLEX, pair_budget=None):
    """Reduced Groebner basis, monic, sorted ascending by leading monomial.

    Raises BudgetExceededError after processing `pair_budget` S-pairs
    (default from TGKZ_PAIR_BUDGET or 5000).
    """
    if pair_budget is None:
        pair_budget = default_pair_budget()
    basis = [g for g in gens if not g.is_zero()]
    if not basis:
        return []
    e = _common_field(basis)
    basis = [g.promote(e) for g in basis]
    pending = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    processed = 0
    while pending:
        pair = min(pending, key=lambda ij: (order.key(
            _lcm_exp(basis[ij[0]].leading(order)[0], basis[ij[1]].leading(order)[0])), ij))
        pending.discard(pair)
        processed += 1
        if processed > pair_budget:
            raise BudgetExceededError(
                f"Groebner pair budget exceeded ({pair_budget} pairs)",
                pairs=processed, budget=pair_budget)
        i, j = pair
        fi, fj = basis[i], basis[j]
        le_i, le_j = fi.leading(order)[0], fj.leading(order)[0]
        if _lcm_exp(le_i, le_j) == _add(le_i, le_j):
            continue  # coprime leading monomials: S-poly reduces to zero
        rem = normal_form(s_polynomial(fi, fj, order), basis, order)
        if not rem.is_zero():
            basis = [g.promote(rem.field_order) for g in basis]
            basis.append(rem)
            k = len(basis) - 1
            pending.update((i2, k) for i2 in range(k))
    return _interreduce(basis, order)


def _interreduce(basis, order):
    # minimalize: drop generators whose leading monomial another one divides
    basis = [g for g in basis if not g.is_zero()]
    basis.sort(key=lambda g: order.key(g.leading(order)[0]))
    kept = []
    for i, g in enumerate(basis):
        le = g.leading(order)[0]
        redundant = False
        for j, h in enumerate(basis):
            if j == i:
                continue
            hle = h.leading(order)[0]
            if _divides(hle, le) and (hle != le or j < i):
                redundant = True
                break
        if not redundant:
            kept.append(g)
    # full tail reduction; leading terms are pairwise non-divisible so they stay
    for i in range(len(kept)):
        others = kept[:i] + kept[i + 1:]
        kept[i] = normal_form(kept[i], others, order)
    out = []
    for g in kept:
        _, lc = g.leading(order)
        out.append(g * (Cyclotomic.one() / lc))
    out.sort(key=lambda g: order.key(g.leading(order)[0]))
    return out


@dataclass(frozen=True)
class IdealBasis:
    """A generating set, flagged when it is a reduced Groebner basis."""

    nvars: int
    generators: tuple
    order: MonomialOrder
    is_groebner: bool

    def field_order(self):
        return _common_field(list(self.generators)) if self.generators else 1


def groebner_ideal(gens, nvars=None, order=GREVLEX, pair_budget=None) -> IdealBasis:
    gens = [g for g in gens if not g.is_zero()]
    if nvars is None:
        if not gens:
            raise ValueError("nvars required for the zero ideal")
        nvars = gens[0].nvars
    basis = buchberger(gens, order, pair_budget)
    return IdealBasis(nvars, tuple(basis), order, True)


def ideal_member(f, ideal: IdealBasis) -> bool:
    basis = ideal.generators if ideal.is_groebner else \
        tuple(buchberger(list(ideal.generators), ideal.order))
    return normal_form(f, list(basis), ideal.order).is_zero()


def canonical_ideal(ideal: IdealBasis) -> IdealBasis:
    """Reduced grevlex Groebner basis: the canonical form used for equality."""
    if ideal.is_groebner and ideal.order == GREVLEX:
        return ideal
    return groebner_ideal(list(ideal.generators), ideal.nvars, GREVLEX)


def ideal_equal(a: IdealBasis, b: IdealBasis) -> bool:
    ca, cb = canonical_ideal(a), canonical_ideal(b)
    if ca.nvars != cb.nvars or len(ca.generators) != len(cb.generators):
        return False
    return all(f == g for f, g in zip(ca.generators, cb.generators))


def eliminate(gens, elim_indices, pair_budget=None):
    """Generators of the elimination ideal (still in the big ring)."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    order = BlockElim(elim_indices)
    basis = buchberger(gens, order, pair_budget)
    elim = set(elim_indices)
    return [g for g in basis if all(all(e[i] == 0 for i in elim) for e in g.terms)]


def saturate(ideal: IdealBasis, var_indices, pair_budget=None) -> IdealBasis:
    """(I : (prod of the given variables)^infinity), reduced grevlex basis."""
    if not ideal.generators:
        return IdealBasis(ideal.nvars, (), GREVLEX, True)
    n = ideal.nvars
    gens = [g.extend_vars(1) for g in ideal.generators]
    prod = Polynomial.variable(n, n + 1)
    for j in var_indices:
        prod = prod * Polynomial.variable(j, n + 1)
    gens.append(prod - 1)
    kept = eliminate(gens, [n], pair_budget)
    back = [g.drop_last_vars(1) for g in kept]
    return groebner_ideal(back, n, GREVLEX, pair_budget)


def intersect(a: IdealBasis, b: IdealBasis, pair_budget=None) -> IdealBasis:
    """I cap J via t*I + (1-t)*J and elimination of t."""
    assert a.nvars == b.nvars
    n = a.nvars
    if not a.generators or not b.generators:
        return IdealBasis(n, (), GREVLEX, True)
    t = Polynomial.variable(n, n + 1)
    gens = [t * g.extend_vars(1) for g in a.generators]
    gens += [(Polynomial.constant(n + 1, 1) - t) * g.extend_vars(1) for g in b.generators]
    kept = eliminate(gens, [n], pair_budget)
    back = [g.drop_last_vars(1) for g in kept]
    return groebner_ideal(back, n, GREVLEX, pair_budget)


def intersect_many(ideals, pair_budget=None) -> IdealBasis:
    assert ideals
    out = ideals[0]
    for nxt in ideals[1:]:
        out = intersect(out, nxt, pair_budget)
    return out


# ---------------------------------------------------------------------------
# free-module Groebner bases (terms carry a component index)
#
# Elements are dicts (component, exponent) -> Cyclotomic.  The order is
# term-over-position: grevlex on the monomial, smaller component wins ties.


def _mod_key(order, key_pair):
    comp, exp = key_pair
    return (order.key(exp), -comp)


def _mod_leading(elem, order):
    k = max(elem, key=lambda ce: _mod_key(order, ce))
    return k, elem[k]


def _mod_normal_form(elem, gens, order):
    if not elem:
        return {}
    leads = [_mod_leading(g, order) for g in gens]
    remainder = {}
    work = dict(elem)
    while work:
        key = max(work, key=lambda ce: _mod_key(order, ce))
        coeff = work.pop(key)
        comp, exp = key
        hit = None
        for idx, ((lcomp, lexp), lc) in enumerate(leads):
            if lcomp == comp and _divides(lexp, exp):
                hit = (idx, lexp, lc)
                break
        if hit is None:
            remainder[key] = remainder[key] + coeff if key in remainder else coeff
            continue
        idx, lexp, lc = hit
        shift = _sub(exp, lexp)
        factor = coeff / lc
        for (gcomp, gexp), gc in gens[idx].items():
            if (gcomp, gexp) == (comp, lexp):
                continue
            tgt = (gcomp, _add(gexp, shift))
            c = factor * gc
            if tgt in work:
                work[tgt] = work[tgt] - c
                if work[tgt].is_zero():
                    del work[tgt]
            else:
                nc = -c
                if not nc.is_zero():
                    work[tgt] = nc
    return remainder


def module_normal_form(elem, gens, order=GREVLEX):
    """Remainder of a module element on full division by `gens`."""
    return _mod_normal_form(dict(elem), [dict(g) for g in gens], order)


def module_groebner(elems, order=GREVLEX, pair_budget=None):
    """Reduced Groebner basis of the submodule generated by elems.

    Same contract as buchberger: monic, canonical, sorted ascending by
    leading term.  S-pairs form only between elements sharing the leading
    component.
    """
    if pair_budget is None:
        pair_budget = default_pair_budget()
    basis = [dict(e) for e in elems if e]
    pending = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))
               if _mod_leading(basis[i], order)[0][0] == _mod_leading(basis[j], order)[0][0]}
    processed = 0
    while pending:
        pair = min(pending, key=lambda ij: (_mod_key(order, (
            _mod_leading(basis[ij[0]], order)[0][0],
            _lcm_exp(_mod_leading(basis[ij[0]], order)[0][1],
                     _mod_leading(basis[ij[1]], order)[0][1]))), ij))
        pending.discard(pair)
        processed += 1
        if processed > pair_budget:
            raise BudgetExceededError(
                f"module Groebner pair budget exceeded ({pair_budget} pairs)",
                pairs=processed, budget=pair_budget)
        i, j = pair
        (ci, ei), lci = _mod_leading(basis[i], order)
        (cj, ej), lcj = _mod_leading(basis[j], order)
        lcm = _lcm_exp(ei, ej)
        spair = {}
        for (c, e), co in basis[i].items():
            key = (c, _add(e, _sub(lcm, ei)))
            spair[key] = spair.get(key, Cyclotomic.zero()) + co / lci
        for (c, e), co in basis[j].items():
            key = (c, _add(e, _sub(lcm, ej)))
            spair[key] = spair.get(key, Cyclotomic.zero()) - co / lcj
        spair = {k: v for k, v in spair.items() if not v.is_zero()}
        rem = _mod_normal_form(spair, basis, order)
        if rem:
            basis.append(rem)
            k = len(basis) - 1
            for i2 in range(k):
                if _mod_leading(basis[i2], order)[0][0] == _mod_leading(rem, order)[0][0]:
                    pending.add((i2, k))
    # interreduce
    basis = [b for b in basis if b]
    basis.sort(key=lambda g: _mod_key(order, _mod_leading(g, order)[0]))
    kept = []
    for i, g in enumerate(basis):
        (gc, ge), _ = _mod_leading(g, order)
        redundant = False
        for j, h in enumerate(basis):
            if j == i:
                continue
            (hc, he), _ = _mod_leading(h, order)
            if hc == gc and _divides(he, ge) and ((hc, he) != (gc, ge) or j < i):
                redundant = True
                break
        if not redundant:
            kept.append(g)
    for i in range(len(kept)):
        others = kept[:i] + kept[i + 1:]
        if others:
            kept[i] = _mod_normal_form(kept[i], others, order)
    out = []
    for g in kept:
        _, lc = _mod_leading(g, order)
        out.append({k: v / lc for k, v in g.items()})
    out.sort(key=lambda g: _mod_key(order, _mod_leading(g, order)[0]))
    return out


# ---------------------------------------------------------------------------
# text format: canonical printing and parsing
#
# poly   := ["+"|"-"] term (("+"|"-") term)*
# term   := factor ("*" factor)*
# factor := rational | "zeta(" int ")" ["^" int] | var ["^" int] | "(" poly ")"
# var    := name followed by a 1-based index, e.g. d1, x3


def _coeff_text(c: Cyclotomic, with_monomial: bool):
    c = c.demoted()
    q = c.rational_value()
    if q is not None:
        if not with_monomial:
            return str(q)
        if q == 1:
            return ""
        if q == -1:
            return "-"
        return f"{q}*"
    text = c.to_text()
    single = "+" not in text and " - " not in text
    if not with_monomial:
        return text
    if single:
        return f"{text}*"
    return f"({text})*"


def monomial_text(exp, name="d"):
    parts = []
    for i, k in enumerate(exp):
        if k == 0:
            continue
        parts.append(f"{name}{i + 1}" if k == 1 else f"{name}{i + 1}^{k}")
    return "*".join(parts)


def polynomial_to_text(p: Polynomial, name="d") -> str:
    if p.is_zero():
        return "0"
    chunks = []
    for exp, c in p.sorted_terms():
        mono = monomial_text(exp, name)
        if not mono:
            chunks.append(_coeff_text(c, False))
        else:
            chunks.append(_coeff_text(c, True) + mono)
    out = chunks[0]
    for ch in chunks[1:]:
        if ch.startswith("-"):
            out += " - " + ch[1:]
        else:
            out += " + " + ch
    return out


class _Tokens:
    def __init__(self, text):
        self.toks = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.toks.append(("num", int(text[i:j])))
                i = j
            elif ch.isalpha():
                j = i
                while j < len(text) and (text[j].isalpha()):
                    j += 1
                self.toks.append(("name", text[i:j]))
                i = j
            elif ch in "+-*/^()":
                self.toks.append((ch, ch))
                i += 1
            else:
                raise ValueError(f"unexpected character {ch!r} in polynomial text")
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ValueError(f"expected {kind!r}, got {tok!r}")
        return tok


def parse_polynomial(text, nvars, names=("d",)) -> Polynomial:
    """Parse the canonical text format.

    `names` lists accepted variable prefixes; prefix p with index i maps to
    flat variable (prefix_position * nvars + i - 1).  Total variables =
    len(names) * nvars.
    """
    toks = _Tokens(text)
    total = len(names) * nvars

    def parse_int():
        sign = 1
        while toks.peek()[0] == "-":
            toks.next()
            sign = -sign
        return sign * toks.expect("num")[1]

    def atom():
        kind, val = toks.peek()
        if kind == "(":
            toks.next()
            p = expr()
            toks.expect(")")
            return p
        if kind == "num":
            toks.next()
            num = val
            if toks.peek()[0] == "/":
                toks.next()
                den = toks.expect("num")[1]
                return Polynomial.constant(total, Fraction(num, den))
            return Polynomial.constant(total, num)
        if kind == "name":
            toks.next()
            if val == "zeta":
                toks.expect("(")
                e = toks.expect("num")[1]
                toks.expect(")")
                k = 1
                if toks.peek()[0] == "^":
                    toks.next()
                    k = parse_int()
                return Polynomial.constant(total, Cyclotomic.zeta(e, k))
            for pos, prefix in enumerate(names):
                if val == prefix:
                    idx = toks.expect("num")[1]
                    if not 1 <= idx <= nvars:
                        raise ValueError(f"variable index out of range: {prefix}{idx}")
                    return Polynomial.variable(pos * nvars + idx - 1, total)
            raise ValueError(f"unknown name {val!r}")
        raise ValueError(f"unexpected token {kind!r}")

    def factor():
        base = atom()
        if toks.peek()[0] == "^":
            toks.next()
            k = parse_int()
            if k < 0:
                if len(base.terms) == 1 and set(base.terms) == {(0,) * total}:
                    c = base.terms[(0,) * total]
                    return Polynomial.constant(total, c ** k)
                raise ValueError("negative powers only allowed on constants")
            return base ** k
        return base

    def term():
        p = factor()
        while toks.peek()[0] == "*":
            toks.next()
            p = p * factor()
        return p

    def expr():
        sign = 1
        while toks.peek()[0] in ("+", "-"):
            if toks.next()[0] == "-":
                sign = -sign
        p = term() * sign
        while toks.peek()[0] in ("+", "-"):
            sign = 1
            while toks.peek()[0] in ("+", "-"):
                if toks.next()[0] == "-":
                    sign = -sign
            p = p + term() * sign
        return p

    out = expr()
    if toks.peek()[0] is not None:
        raise ValueError(f"trailing input at token {toks.peek()!r}")
    return out


def parse_scalar(text) -> Cyclotomic:
    """Parse a constant expression (rationals, zeta powers, sums, products)."""
    p = parse_polynomial(str(text), 0, names=())
    if p.is_zero():
        return Cyclotomic.zero()
    assert set(p.terms) == {()}
    return p.terms[()]
