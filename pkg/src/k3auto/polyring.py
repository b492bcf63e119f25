"""Polynomials and rational functions over Q(zeta_n) in the variables t, x, y.

Three layers:

* ``UniPoly``: dense univariate polynomials, the workhorse for base-curve data.
* ``MultiPoly``: sparse polynomials in the fixed variable triple (x, y, t).
* ``RationalFunction``: reduced fractions of MultiPoly, with equality decided
  by cross multiplication.

Place bookkeeping (gcd-free bases, vanishing orders) lives here as well.  No
irreducible factorization over the coefficient field is ever performed: a
basis element of degree d stands for d geometric points sharing identical
vanishing data.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .cyclotomic import CycloNum, CyclotomicField

INF = float("inf")

VARS = ("x", "y", "t")
_VAR_INDEX = {"x": 0, "y": 1, "t": 2}


class ZeroInputError(ValueError):
    """A zero polynomial was passed where a nonzero one is required."""


def _fmt_terms(parts: list[tuple[bool, str]]) -> str:
    # parts: (negative?, body) pairs in print order.
    if not parts:
        return "0"
    out = []
    for i, (neg, body) in enumerate(parts):
        if i == 0:
            out.append("-" + body if neg else body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def _coeff_body(c: CycloNum, symbol: str) -> tuple[bool, str]:
    # Render c * symbol so that the printed form re-parses to the same value.
    neg = False
    if c.is_rational():
        q = c.as_rational()
        if q < 0:
            neg, q = True, -q
        if not symbol:
            return neg, str(q)
        if q == 1:
            return neg, symbol
        return neg, f"{q}*{symbol}"
    text = str(c)
    if not symbol:
        if " " in text or text.startswith("-"):
            return False, f"({text})"
        return False, text
    return False, f"({text})*{symbol}"


class UniPoly:
    """Dense univariate polynomial over a cyclotomic field, constant term first."""

    __slots__ = ("field", "var", "coeffs")

    def __init__(self, field: CyclotomicField, var: str, coeffs: Iterable[CycloNum]):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.var = var
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, field, var="t"):
        return cls(field, var, ())

    @classmethod
    def constant(cls, field, value, var="t"):
        if isinstance(value, CycloNum):
            return cls(field, var, (value,))
        return cls(field, var, (field.from_rational(value),))

    @classmethod
    def gen(cls, field, var="t"):
        return cls(field, var, (field.zero(), field.one()))

    @classmethod
    def from_int_coeffs(cls, field, coeffs, var="t"):
        return cls(field, var, tuple(field.from_rational(c) for c in coeffs))

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> CycloNum:
        if self.is_zero():
            raise ZeroInputError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        inv = self.leading().inverse()
        return UniPoly(self.field, self.var, (c * inv for c in self.coeffs))

    def _match(self, other):
        if isinstance(other, UniPoly):
            if other.var != self.var:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        if isinstance(other, (int, Fraction, CycloNum)):
            return UniPoly.constant(self.field, other, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        zero = self.field.zero()
        a = list(self.coeffs) + [zero] * (n - len(self.coeffs))
        b = list(other.coeffs) + [zero] * (n - len(other.coeffs))
        return UniPoly(self.field, self.var, (x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, UniPoly) else -self._match(other))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return UniPoly(self.field, self.var, (-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloNum)):
            c = other if isinstance(other, CycloNum) else self.field.from_rational(other)
            return UniPoly(self.field, self.var, (a * c for a in self.coeffs))
        other = self._match(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(self.field, self.var)
        out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return UniPoly(self.field, self.var, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent on a polynomial")
        result = UniPoly.constant(self.field, 1, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._match(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quo = [self.field.zero()] * max(len(rem) - len(other.coeffs) + 1, 0)
        inv_lead = other.leading().inverse()
        db = other.degree()
        for i in range(len(quo) - 1, -1, -1):
            c = rem[db + i] * inv_lead
            quo[i] = c
            if not c.is_zero():
                for j, d in enumerate(other.coeffs):
                    rem[i + j] = rem[i + j] - c * d
        return (
            UniPoly(self.field, self.var, quo),
            UniPoly(self.field, self.var, rem[: max(db, 0)]),
        )

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CycloNum)):
            other = UniPoly.constant(self.field, other, self.var)
        return (
            isinstance(other, UniPoly)
            and other.var == self.var
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def evaluate(self, value: CycloNum) -> CycloNum:
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(
            self.field,
            self.var,
            (c * k for k, c in enumerate(self.coeffs) if k > 0),
        )

    def __repr__(self):
        return f"UniPoly({self})"

    def __str__(self):
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            sym = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            parts.append(_coeff_body(c, sym))
        return _fmt_terms(parts)


def uni_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic greatest common divisor; uni_gcd(0, 0) is the zero polynomial."""
    a, b = p, q
    while not b.is_zero():
        a, b = b, (a % b).monic() if not (a % b).is_zero() else (a % b)
    return a.monic() if not a.is_zero() else a


def squarefree_part(p: UniPoly) -> UniPoly:
    """The product of the distinct roots' linear factors: p / gcd(p, p')."""
    if p.is_zero():
        raise ZeroInputError("squarefree part of the zero polynomial")
    if p.is_constant():
        return UniPoly.constant(p.field, 1, p.var)
    g = uni_gcd(p, p.derivative())
    return (p // g).monic()


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's decomposition p = unit * prod q_k^k with the q_k squarefree, coprime.

    Only the nonconstant q_k are returned, each monic with its multiplicity.
    """
    if p.is_zero():
        raise ZeroInputError("squarefree decomposition of the zero polynomial")
    out: list[tuple[UniPoly, int]] = []
    f = p.monic()
    if f.is_constant():
        return out
    deriv = f.derivative()
    a = uni_gcd(f, deriv)
    b = f // a
    c = deriv // a
    d = c - b.derivative()
    k = 1
    while not b.is_constant():
        g = uni_gcd(b, d)
        if g.is_zero():
            g = UniPoly.constant(f.field, 1, f.var)
        if not g.is_constant():
            out.append((g, k))
        b = b // g
        c = d // g
        d = c - b.derivative()
        k += 1
    return out


class PlacePoly:
    """A place of the base line: a monic squarefree polynomial, or infinity."""

    __slots__ = ("poly",)

    def __init__(self, poly: UniPoly | None):
        if poly is not None:
            if poly.is_zero() or poly.is_constant():
                raise ValueError("a finite place needs a nonconstant polynomial")
            poly = poly.monic()
        self.poly = poly

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree()

    def __eq__(self, other):
        return isinstance(other, PlacePoly) and other.poly == self.poly

    def __hash__(self):
        return hash(("PlacePoly", self.poly))

    def __repr__(self):
        return f"PlacePoly({self})"

    def __str__(self):
        return "infinity" if self.poly is None else str(self.poly)


def vanishing_order(p: UniPoly, place: UniPoly | PlacePoly) -> int | float:
    """Largest e with place^e dividing p; INF for the zero polynomial."""
    if isinstance(place, PlacePoly):
        if place.is_infinite:
            raise ValueError("vanishing_order handles finite places only")
        place = place.poly
    if p.is_zero():
        return INF
    order = 0
    while True:
        quo, rem = divmod(p, place)
        if not rem.is_zero():
            return order
        p = quo
        order += 1


def gcd_free_basis(polys: list[UniPoly]) -> list[tuple[PlacePoly, tuple[int, ...]]]:
    """Pairwise-coprime squarefree factors with exact exponents.

    Returns [(place, (e_1, ..., e_m))] such that each input P_j equals a unit
    times the product of place^e_j over the basis, and the vanishing order of
    P_j at every root of a basis element is exactly the listed exponent.
    """
    if not polys:
        return []
    for p in polys:
        if p.is_zero():
            raise ZeroInputError("gcd_free_basis requires nonzero inputs")
    # Collect each input's Yun factors so roots of different multiplicity are
    # already separated within one input; refinement then separates them
    # across inputs.
    parts = []
    for p in polys:
        for q, _mult in squarefree_decomposition(p):
            parts.append(q)
    # Refine to a pairwise coprime set; the parts are squarefree so every
    # split stays squarefree.  The degree multiset strictly decreases.
    basis: list[UniPoly] = []
    queue = parts
    while queue:
        f = queue.pop().monic()
        if f.is_constant():
            continue
        for i, g in enumerate(basis):
            d = uni_gcd(f, g)
            if d.is_constant():
                continue
            basis[i] = d
            rest_g = g // d
            if not rest_g.is_constant():
                queue.append(rest_g)
            f = f // d
            if f.is_constant():
                break
        if not f.is_constant():
            basis.append(f)
    basis.sort(key=str)
    return [
        (PlacePoly(f), tuple(int(vanishing_order(p, f)) for p in polys))
        for f in basis
    ]


class MultiPoly:
    """Sparse polynomial in (x, y, t): exponent triples mapped to coefficients."""

    __slots__ = ("field", "terms")

    def __init__(self, field: CyclotomicField, terms: dict):
        self.field = field
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}

    @classmethod
    def zero(cls, field):
        return cls(field, {})

    @classmethod
    def constant(cls, field, value):
        c = value if isinstance(value, CycloNum) else field.from_rational(value)
        return cls(field, {(0, 0, 0): c})

    @classmethod
    def gen(cls, field, var: str):
        e = [0, 0, 0]
        e[_VAR_INDEX[var]] = 1
        return cls(field, {tuple(e): field.one()})

    @classmethod
    def monomial(cls, field, exponents: tuple[int, int, int], coeff: CycloNum):
        return cls(field, {exponents: coeff})

    @classmethod
    def from_unipoly(cls, p: UniPoly, var: str | None = None):
        var = var or p.var
        idx = _VAR_INDEX[var]
        terms = {}
        for k, c in enumerate(p.coeffs):
            if not c.is_zero():
                e = [0, 0, 0]
                e[idx] = k
                terms[tuple(e)] = c
        return cls(p.field, terms)

    def to_unipoly(self, var: str) -> UniPoly:
        idx = _VAR_INDEX[var]
        coeffs = [self.field.zero()] * (self.degree_in(var) + 1 if self.terms else 0)
        for e, c in self.terms.items():
            if any(e[i] for i in range(3) if i != idx):
                raise ValueError(f"polynomial is not univariate in {var}")
            coeffs[e[idx]] = c
        return UniPoly(self.field, var, coeffs)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {(0, 0, 0)}

    def constant_value(self) -> CycloNum:
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self.terms.get((0, 0, 0), self.field.zero())

    def uses_var(self, var: str) -> bool:
        idx = _VAR_INDEX[var]
        return any(e[idx] for e in self.terms)

    def degree_in(self, var: str) -> int:
        idx = _VAR_INDEX[var]
        return max((e[idx] for e in self.terms), default=-1)

    def __add__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        zero = self.field.zero()
        for e, c in other.terms.items():
            out[e] = out.get(e, zero) + c
        return MultiPoly(self.field, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return MultiPoly(self.field, {e: -c for e, c in self.terms.items()})

    def _match(self, other):
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction, CycloNum)):
            return MultiPoly.constant(self.field, other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloNum)):
            c = other if isinstance(other, CycloNum) else self.field.from_rational(other)
            if c.is_zero():
                return MultiPoly.zero(self.field)
            return MultiPoly(self.field, {e: v * c for e, v in self.terms.items()})
        other = self._match(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        zero = self.field.zero()
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[e] = out.get(e, zero) + c1 * c2
        return MultiPoly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent on a polynomial")
        result = MultiPoly.constant(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CycloNum)):
            other = MultiPoly.constant(self.field, other)
        return isinstance(other, MultiPoly) and other.terms == self.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self) -> list[tuple[tuple[int, int, int], CycloNum]]:
        # Lexicographic on (x, y, t) exponents, descending: canonical order
        # for printing and hashing.
        return sorted(self.terms.items(), key=lambda item: item[0], reverse=True)

    def leading_coeff_lex(self) -> CycloNum:
        if self.is_zero():
            raise ZeroInputError("zero polynomial")
        return self.sorted_terms()[0][1]

    def coeffs_in(self, var: str) -> dict[int, "MultiPoly"]:
        """View as a polynomial in var: exponent -> coefficient MultiPoly."""
        idx = _VAR_INDEX[var]
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            rest = list(e)
            rest[idx] = 0
            out.setdefault(e[idx], {})[tuple(rest)] = c
        return {k: MultiPoly(self.field, v) for k, v in out.items()}

    def derivative(self, var: str) -> "MultiPoly":
        idx = _VAR_INDEX[var]
        out = {}
        for e, c in self.terms.items():
            k = e[idx]
            if k:
                e2 = list(e)
                e2[idx] = k - 1
                out[tuple(e2)] = c * k
        return MultiPoly(self.field, out)

    def exact_div(self, divisor: "MultiPoly") -> "MultiPoly":
        """Exact multivariate division; raises ArithmeticError when not exact."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if divisor.is_constant():
            inv = divisor.constant_value().inverse()
            return self * inv
        rem = self
        quo: dict = {}
        d_terms = divisor.sorted_terms()
        de, dc = d_terms[0]
        dc_inv = dc.inverse()
        while not rem.is_zero():
            re, rc = rem.sorted_terms()[0]
            qe = (re[0] - de[0], re[1] - de[1], re[2] - de[2])
            if min(qe) < 0:
                raise ArithmeticError("division is not exact")
            qc = rc * dc_inv
            quo[qe] = qc
            rem = rem - MultiPoly.monomial(self.field, qe, qc) * divisor
        return MultiPoly(self.field, quo)

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        parts = []
        for e, c in self.sorted_terms():
            syms = []
            for name, k in zip(VARS, e):
                if k == 1:
                    syms.append(name)
                elif k > 1:
                    syms.append(f"{name}^{k}")
            parts.append(_coeff_body(c, "*".join(syms)))
        return _fmt_terms(parts)


_GCD_VAR_ORDER = ("y", "x", "t")


def _normalized(p: MultiPoly) -> MultiPoly:
    if p.is_zero():
        return p
    return p * p.leading_coeff_lex().inverse()


def _content(p: MultiPoly, var: str) -> MultiPoly:
    acc = MultiPoly.zero(p.field)
    for coeff in p.coeffs_in(var).values():
        acc = multi_gcd(acc, coeff)
        if acc.is_constant() and not acc.is_zero():
            break
    return acc


def _prem(a: MultiPoly, b: MultiPoly, var: str) -> MultiPoly:
    # Pseudo-remainder of a by b in the main variable var; stays polynomial.
    db = b.degree_in(var)
    lb = b.coeffs_in(var)[db]
    gen = MultiPoly.gen(a.field, var)
    r = a
    while not r.is_zero() and r.degree_in(var) >= db:
        dr = r.degree_in(var)
        lr = r.coeffs_in(var)[dr]
        r = r * lb - b * lr * gen ** (dr - db)
    return r


def _monomial_content(p: MultiPoly) -> tuple[int, int, int]:
    mins = [min(e[i] for e in p.terms) for i in range(3)]
    return (mins[0], mins[1], mins[2])


def _subresultant_gcd(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    # GCD of the var-primitive parts, by the subresultant PRS: growth is
    # controlled by exact divisions instead of recursive content gcds.
    field = p.field
    one = MultiPoly.constant(field, 1)
    a, b = (p, q) if p.degree_in(var) >= q.degree_in(var) else (q, p)
    g = one
    h = one
    while True:
        delta = a.degree_in(var) - b.degree_in(var)
        r = _prem(a, b, var)
        if r.is_zero():
            break
        if r.degree_in(var) == 0:
            return one
        a, b = b, r.exact_div(g * h ** delta)
        g = a.coeffs_in(var)[a.degree_in(var)]
        if delta == 1:
            h = g
        elif delta > 1:
            h = (g ** delta).exact_div(h ** (delta - 1))
    return b.exact_div(_content(b, var))


def multi_gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """GCD in Q(zeta)[x, y, t], normalized so the lex-leading coefficient is 1.

    Subresultant pseudo-remainder sequences with the main variable chosen in
    the fixed order y, x, t; common monomial factors are split off first.
    """
    if p.is_zero():
        return _normalized(q)
    if q.is_zero():
        return _normalized(p)
    # Common monomial part, handled cheaply up front.
    mp = _monomial_content(p)
    mq = _monomial_content(q)
    shared = tuple(min(a, b) for a, b in zip(mp, mq))
    if any(shared):
        field = p.field
        mono = MultiPoly.monomial(field, shared, field.one())
        p = p.exact_div(mono)
        q = q.exact_div(mono)
        return _normalized(mono * multi_gcd(p, q))
    var = next(
        (v for v in _GCD_VAR_ORDER if p.uses_var(v) or q.uses_var(v)),
        None,
    )
    if var is None:
        return MultiPoly.constant(p.field, 1)
    if not (p.uses_var(var) and q.uses_var(var)):
        # One side is free of the main variable: the gcd divides that side's
        # content, so recurse on the content directly.
        if p.uses_var(var):
            return multi_gcd(_content(p, var), q)
        return multi_gcd(p, _content(q, var))
    cp = _content(p, var)
    cq = _content(q, var)
    c = multi_gcd(cp, cq)
    g = _subresultant_gcd(p.exact_div(cp), q.exact_div(cq), var)
    return _normalized(c * g)


class RationalFunction:
    """A reduced fraction of MultiPoly values.

    The constructor cancels the gcd and scales the denominator so its
    lex-leading coefficient is 1, which makes the representation canonical;
    equality is still decided by cross multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly | None = None):
        field = num.field
        if den is None:
            den = MultiPoly.constant(field, 1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in a rational function")
        if num.is_zero():
            num = MultiPoly.zero(field)
            den = MultiPoly.constant(field, 1)
        elif den.is_constant():
            inv = den.constant_value().inverse()
            num = num * inv
            den = MultiPoly.constant(field, 1)
        else:
            g = multi_gcd(num, den)
            if not g.is_constant():
                num = num.exact_div(g)
                den = den.exact_div(g)
            scale = den.leading_coeff_lex().inverse()
            num = num * scale
            den = den * scale
        self.num = num
        self.den = den

    @property
    def field(self):
        return self.num.field

    @classmethod
    def from_poly(cls, p: MultiPoly):
        return cls(p)

    @classmethod
    def constant(cls, field, value):
        return cls(MultiPoly.constant(field, value))

    @classmethod
    def gen(cls, field, var: str):
        return cls(MultiPoly.gen(field, var))

    @classmethod
    def from_unipoly(cls, p: UniPoly, var: str | None = None):
        return cls(MultiPoly.from_unipoly(p, var))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> CycloNum:
        if not self.is_constant():
            raise ValueError("not a constant rational function")
        return self.num.constant_value() / self.den.constant_value()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> MultiPoly:
        if not self.is_polynomial():
            raise ValueError("denominator is not constant")
        return self.num * self.den.constant_value().inverse()

    def uses_only(self, *vars: str) -> bool:
        allowed = set(vars)
        return all(
            not (self.num.uses_var(v) or self.den.uses_var(v))
            for v in VARS
            if v not in allowed
        )

    def _match(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction, CycloNum)):
            return RationalFunction.constant(self.field, other)
        if isinstance(other, MultiPoly):
            return RationalFunction(other)
        return NotImplemented

    def __add__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        out = RationalFunction.__new__(RationalFunction)
        out.num = -self.num
        out.den = self.den
        return out

    def __mul__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RationalFunction.constant(self.field, other) / self

    def __pow__(self, n: int):
        if n < 0:
            return (1 / self) ** (-n)
        result = RationalFunction.constant(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def derivative(self, var: str) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative(var) * self.den - self.num * self.den.derivative(var),
            self.den * self.den,
        )

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        if self.is_polynomial():
            return str(self.as_poly())
        return f"({self.num})/({self.den})"
