"""Arithmetic in the function field of a Weierstrass model.

Elements are kept in the normal form a + b*y with a, b rational functions in
(x, t): powers of y reduce through y^2 = x^3 + A(t) x + B(t), and y clears
from denominators by conjugate multiplication.  Surface maps store the images
of x, y, t in that normal form, so map equality is a finite comparison.
"""
from __future__ import annotations

from .cyclotomic import CycloNum
from .polyring import MultiPoly, RationalFunction
from .surface import WeierstrassModel


class ZeroDenominatorOnSurfaceError(ZeroDivisionError):
    """A denominator reduces to zero in the function field."""


class NotAMorphismError(ValueError):
    """The candidate map does not preserve the surface equation."""


class NotConstantFactorError(ValueError):
    """The 2-form factor failed to reduce to a constant."""


class OrderBoundExceededError(ValueError):
    """No power of the map reached the identity within the bound."""


def _rhs_poly(model: WeierstrassModel) -> MultiPoly:
    # x^3 + A(t) x + B(t), the square of y.
    field = model.field
    x = MultiPoly.gen(field, "x")
    out = x ** 3 + MultiPoly.from_unipoly(model.A) * x
    if not model.B.is_zero():
        out = out + MultiPoly.from_unipoly(model.B)
    return out


def _split_y(poly: MultiPoly, rhs: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    # Write poly = p0 + p1 * y modulo y^2 = rhs; p0, p1 are y-free.
    field = poly.field
    parts = [MultiPoly.zero(field), MultiPoly.zero(field)]
    rhs_powers = {0: MultiPoly.constant(field, 1)}

    def rhs_pow(k: int) -> MultiPoly:
        if k not in rhs_powers:
            rhs_powers[k] = rhs_pow(k - 1) * rhs
        return rhs_powers[k]

    for (ex, ey, et), c in poly.terms.items():
        q, r = divmod(ey, 2)
        base = MultiPoly.monomial(field, (ex, 0, et), c)
        if q:
            base = base * rhs_pow(q)
        parts[r] = parts[r] + base
    return parts[0], parts[1]


class FieldElement:
    """a + b*y on a fixed model, with a and b rational in (x, t)."""

    __slots__ = ("model", "a", "b")

    def __init__(self, model: WeierstrassModel, a: RationalFunction, b: RationalFunction):
        self.model = model
        self.a = a
        self.b = b

    @classmethod
    def const(cls, model, value) -> "FieldElement":
        field = model.field
        return cls(
            model,
            RationalFunction.constant(field, value),
            RationalFunction.constant(field, 0),
        )

    @classmethod
    def coordinate(cls, model, var: str) -> "FieldElement":
        field = model.field
        zero = RationalFunction.constant(field, 0)
        if var == "y":
            return cls(model, zero, RationalFunction.constant(field, 1))
        return cls(model, RationalFunction.gen(field, var), zero)

    @classmethod
    def from_ratfunc(cls, model, r: RationalFunction) -> "FieldElement":
        if not r.uses_only("x", "t"):
            raise ValueError("component must be free of y; use normalize instead")
        return cls(model, r, RationalFunction.constant(model.field, 0))

    def _rhs(self) -> RationalFunction:
        return RationalFunction(_rhs_poly(self.model))

    def _check(self, other: "FieldElement"):
        if other.model != self.model:
            raise ValueError("elements live on different models")

    def __add__(self, other):
        if isinstance(other, (int, CycloNum)):
            other = FieldElement.const(self.model, other)
        self._check(other)
        return FieldElement(self.model, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, CycloNum)):
            other = FieldElement.const(self.model, other)
        self._check(other)
        return FieldElement(self.model, self.a - other.a, self.b - other.b)

    def __neg__(self):
        return FieldElement(self.model, -self.a, -self.b)

    def __mul__(self, other):
        if isinstance(other, (int, CycloNum)):
            other = FieldElement.const(self.model, other)
        self._check(other)
        rhs = self._rhs()
        a = self.a * other.a + self.b * other.b * rhs
        b = self.a * other.b + self.b * other.a
        return FieldElement(self.model, a, b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, CycloNum)):
            other = FieldElement.const(self.model, other)
        self._check(other)
        return self * other.inverse()

    def inverse(self) -> "FieldElement":
        # 1 / (a + b y) = (a - b y) / (a^2 - b^2 rhs); the norm is y-free and
        # vanishes only for the zero element since rhs is not a square.
        norm = self.a * self.a - self.b * self.b * self._rhs()
        if norm.is_zero():
            raise ZeroDenominatorOnSurfaceError("element is zero in the function field")
        return FieldElement(self.model, self.a / norm, -self.b / norm)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = FieldElement.const(self.model, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def is_constant(self) -> bool:
        return self.b.is_zero() and self.a.is_constant()

    def constant_value(self) -> CycloNum:
        if not self.is_constant():
            raise NotConstantFactorError(f"{self} is not a constant")
        return self.a.constant_value()

    def __eq__(self, other):
        if isinstance(other, (int, CycloNum)):
            other = FieldElement.const(self.model, other)
        return (
            isinstance(other, FieldElement)
            and other.model == self.model
            and other.a == self.a
            and other.b == self.b
        )

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"FieldElement({self})"

    def __str__(self):
        if self.b.is_zero():
            return str(self.a)
        if self.a.is_zero():
            return f"({self.b})*y"
        return f"({self.a}) + ({self.b})*y"


def normalize(expr, model: WeierstrassModel) -> FieldElement:
    """Reduce a rational expression in x, y, t to the a + b*y normal form."""
    if isinstance(expr, MultiPoly):
        expr = RationalFunction(expr)
    rhs = _rhs_poly(model)
    n0, n1 = _split_y(expr.num, rhs)
    d0, d1 = _split_y(expr.den, rhs)
    field = model.field
    if d1.is_zero():
        if d0.is_zero():
            raise ZeroDenominatorOnSurfaceError("denominator is zero on the surface")
        a = RationalFunction(n0, d0)
        b = RationalFunction(n1, d0)
    else:
        clear = d0 * d0 - d1 * d1 * rhs
        if clear.is_zero():
            raise ZeroDenominatorOnSurfaceError("denominator is zero on the surface")
        a = RationalFunction(n0 * d0 - n1 * d1 * rhs, clear)
        b = RationalFunction(n1 * d0 - n0 * d1, clear)
    return FieldElement(model, a, b)


class SurfaceMap:
    """A candidate automorphism: images of (x, y, t) over a fixed model.

    The t image is a rational function of t alone, so the map respects the
    elliptic fibration.
    """

    __slots__ = ("model", "u", "v", "w")

    def __init__(self, model, u: FieldElement, v: FieldElement, w: RationalFunction):
        if not w.uses_only("t"):
            raise ValueError("the base image must be a rational function of t alone")
        self.model = model
        self.u = u
        self.v = v
        self.w = w

    @classmethod
    def identity(cls, model) -> "SurfaceMap":
        return cls(
            model,
            FieldElement.coordinate(model, "x"),
            FieldElement.coordinate(model, "y"),
            RationalFunction.gen(model.field, "t"),
        )

    @classmethod
    def scaling(cls, model, cx: CycloNum, cy: CycloNum, ct: CycloNum) -> "SurfaceMap":
        """(x, y, t) -> (cx x, cy y, ct t)."""
        return cls(
            model,
            FieldElement.coordinate(model, "x") * cx,
            FieldElement.coordinate(model, "y") * cy,
            RationalFunction.gen(model.field, "t") * ct,
        )

    @classmethod
    def from_expressions(cls, model, ex, ey, et) -> "SurfaceMap":
        """Build from parsed expressions (MultiPoly or RationalFunction)."""
        u = normalize(ex, model)
        v = normalize(ey, model)
        w = et if isinstance(et, RationalFunction) else RationalFunction(et)
        return cls(model, u, v, w)

    def is_identity(self) -> bool:
        return self == SurfaceMap.identity(self.model)

    def __eq__(self, other):
        return (
            isinstance(other, SurfaceMap)
            and other.model == self.model
            and other.u == self.u
            and other.v == self.v
            and other.w == self.w
        )

    def __hash__(self):
        return hash((self.u, self.v, self.w))

    def __repr__(self):
        return f"SurfaceMap(x -> {self.u}, y -> {self.v}, t -> {self.w})"


def _eval_poly(p: MultiPoly, X: FieldElement, T: FieldElement, model) -> FieldElement:
    # p(x, t) with the given substitutions; p must be y-free.
    x_pows = {0: FieldElement.const(model, 1)}
    t_pows = {0: FieldElement.const(model, 1)}

    def pow_of(cache, base, k):
        if k not in cache:
            cache[k] = pow_of(cache, base, k - 1) * base
        return cache[k]

    acc = FieldElement.const(model, 0)
    for (ex, ey, et), c in p.terms.items():
        if ey:
            raise ValueError("unexpected y while composing components")
        term = FieldElement.const(model, c)
        if ex:
            term = term * pow_of(x_pows, X, ex)
        if et:
            term = term * pow_of(t_pows, T, et)
        acc = acc + term
    return acc


def _eval_ratfunc(r: RationalFunction, X: FieldElement, T: FieldElement, model) -> FieldElement:
    num = _eval_poly(r.num, X, T, model)
    den = _eval_poly(r.den, X, T, model)
    if den.is_zero():
        raise ZeroDenominatorOnSurfaceError("composition hits a zero denominator")
    return num / den


def _subst_t(r: RationalFunction, w: RationalFunction) -> RationalFunction:
    # r(t) with t replaced by w(t); both rational in t alone.
    field = r.field

    def eval_poly(p: MultiPoly) -> RationalFunction:
        acc = RationalFunction.constant(field, 0)
        w_pows = {0: RationalFunction.constant(field, 1)}

        def wp(k):
            if k not in w_pows:
                w_pows[k] = wp(k - 1) * w
            return w_pows[k]

        for (ex, ey, et), c in p.terms.items():
            if ex or ey:
                raise ValueError("expected a function of t alone")
            acc = acc + wp(et) * c
        return acc

    return eval_poly(r.num) / eval_poly(r.den)


def compose(m1: SurfaceMap, m2: SurfaceMap) -> SurfaceMap:
    """The map m1 after m2: substitute m2's images into m1's components."""
    if m1.model != m2.model:
        raise ValueError("maps live on different models")
    model = m1.model
    X, V = m2.u, m2.v
    T = FieldElement.from_ratfunc(model, m2.w)

    def comp(e: FieldElement) -> FieldElement:
        out = _eval_ratfunc(e.a, X, T, model)
        if not e.b.is_zero():
            out = out + _eval_ratfunc(e.b, X, T, model) * V
        return out

    return SurfaceMap(model, comp(m1.u), comp(m1.v), _subst_t(m1.w, m2.w))


def morphism_residual(m: SurfaceMap) -> FieldElement:
    """The defect v^2 - u^3 - A(w) u - B(w); zero exactly for morphisms."""
    model = m.model
    Aw = FieldElement.from_ratfunc(
        model, _subst_t(RationalFunction.from_unipoly(model.A), m.w)
    )
    residual = m.v * m.v - m.u * m.u * m.u - Aw * m.u
    if not model.B.is_zero():
        Bw = FieldElement.from_ratfunc(
            model, _subst_t(RationalFunction.from_unipoly(model.B), m.w)
        )
        residual = residual - Bw
    return residual


def verify_morphism(m: SurfaceMap) -> bool:
    """Does the map send the surface to itself: v^2 = u^3 + A(w) u + B(w)?"""
    return morphism_residual(m).is_zero()


def ambient_scalar(m: SurfaceMap) -> CycloNum | None:
    """c with F(u, v, w) = c * F as ambient polynomials, if the map is
    polynomial and such a scalar exists."""
    model = m.model
    field = model.field
    if not m.w.is_polynomial():
        return None

    # Reassemble ambient polynomial images of x and y.
    def ambient(e: FieldElement) -> MultiPoly | None:
        if not (e.a.is_polynomial() and e.b.is_polynomial()):
            return None
        y = MultiPoly.gen(field, "y")
        return e.a.as_poly() + e.b.as_poly() * y

    u = ambient(m.u)
    v = ambient(m.v)
    if u is None or v is None:
        return None
    w = m.w.as_poly()
    # F = y^2 - x^3 - A(t) x - B(t); compute F(u, v, w) without reduction.
    def subst(p: MultiPoly) -> MultiPoly:
        acc = MultiPoly.zero(field)
        for (ex, ey, et), c in p.terms.items():
            term = MultiPoly.constant(field, c)
            if ex:
                term = term * u ** ex
            if ey:
                term = term * v ** ey
            if et:
                term = term * w ** et
            acc = acc + term
        return acc

    x = MultiPoly.gen(field, "x")
    y = MultiPoly.gen(field, "y")
    F = y ** 2 - x ** 3 - MultiPoly.from_unipoly(model.A) * x
    if not model.B.is_zero():
        F = F - MultiPoly.from_unipoly(model.B)
    image = subst(F)
    if image.is_zero():
        return None
    # Proportionality: image == c * F with a single scalar c.
    c = None
    if set(image.terms) != set(F.terms):
        return None
    for e, coeff in F.terms.items():
        ratio = image.terms[e] / coeff
        if c is None:
            c = ratio
        elif ratio != c:
            return None
    return c


def omega_factor(m: SurfaceMap) -> CycloNum:
    """The constant c with pullback(omega) = c * omega for omega = dx^dt / y.

    dy is eliminated through 2 y dy = (3 x^2 + A) dx + (A' x + B') dt, so
    pullback(omega) = w'(t) (u_x + u_y (3x^2 + A) / (2y)) / v * dx^dt, and
    dividing by 1/y gives the factor below.  A nonconstant result signals an
    inconsistent input.
    """
    if not verify_morphism(m):
        raise NotAMorphismError("omega factor of a map that is not a morphism")
    model = m.model
    field = model.field
    x = RationalFunction.gen(field, "x")
    rhs = RationalFunction(_rhs_poly(model))
    three_x2_plus_A = x * x * 3 + RationalFunction.from_unipoly(model.A)
    # (3x^2 + A) / (2y) = (3x^2 + A) y / (2 rhs), as a field element.
    half_slope = FieldElement(
        model,
        RationalFunction.constant(field, 0),
        three_x2_plus_A / (rhs * 2),
    )
    u_x = FieldElement(model, m.u.a.derivative("x"), m.u.b.derivative("x"))
    u_y = FieldElement(model, m.u.b, RationalFunction.constant(field, 0))
    w_prime = FieldElement.from_ratfunc(model, m.w.derivative("t"))
    y_elem = FieldElement.coordinate(model, "y")
    factor = y_elem * w_prime * (u_x + u_y * half_slope) / m.v
    if not factor.is_constant():
        raise NotConstantFactorError("2-form factor did not reduce to a constant")
    return factor.constant_value()


def map_order(m: SurfaceMap, max_order: int = 64) -> int:
    """Least k <= max_order with m^k the identity."""
    acc = m
    for k in range(1, max_order + 1):
        if acc.is_identity():
            return k
        acc = compose(m, acc)
    raise OrderBoundExceededError(f"order exceeds {max_order}")


def inverse(m: SurfaceMap, max_order: int = 64) -> SurfaceMap:
    """m^(order - 1); maps in scope all have finite small order."""
    order = map_order(m, max_order)
    acc = SurfaceMap.identity(m.model)
    for _ in range(order - 1):
        acc = compose(m, acc)
    return acc


class Section:
    """A section of the fibration: rational x(t), y(t), or the zero section."""

    __slots__ = ("x", "y")

    def __init__(self, x: RationalFunction | None, y: RationalFunction | None):
        if (x is None) != (y is None):
            raise ValueError("both coordinates or neither")
        if x is not None and not (x.uses_only("t") and y.uses_only("t")):
            raise ValueError("section coordinates are functions of t alone")
        self.x = x
        self.y = y

    @classmethod
    def zero(cls) -> "Section":
        return cls(None, None)

    @property
    def is_zero_section(self) -> bool:
        return self.x is None

    def on_model(self, model: WeierstrassModel) -> bool:
        if self.is_zero_section:
            return True
        lhs = self.y * self.y
        rhs = (
            self.x ** 3
            + RationalFunction.from_unipoly(model.A) * self.x
            + RationalFunction.from_unipoly(model.B)
        )
        return lhs == rhs

    def __eq__(self, other):
        return (
            isinstance(other, Section)
            and other.x == self.x
            and other.y == self.y
        )

    def __hash__(self):
        return hash((self.x, self.y))

    def __repr__(self):
        if self.is_zero_section:
            return "Section(O)"
        return f"Section({self.x}, {self.y})"


def negate(p: Section) -> Section:
    if p.is_zero_section:
        return p
    return Section(p.x, -p.y)


def add_points(model: WeierstrassModel, p: Section, q: Section) -> Section:
    """Chord-tangent addition over Q(zeta)(t), with the zero section as O."""
    if p.is_zero_section:
        return q
    if q.is_zero_section:
        return p
    if p.x == q.x:
        if p.y == -q.y:
            return Section.zero()
        # Doubling (p == q with y != 0).
        slope = (p.x * p.x * 3 + RationalFunction.from_unipoly(model.A)) / (p.y * 2)
    else:
        slope = (q.y - p.y) / (q.x - p.x)
    x3 = slope * slope - p.x - q.x
    y3 = slope * (p.x - x3) - p.y
    return Section(x3, y3)


def translation_map(model: WeierstrassModel, t_section: Section) -> SurfaceMap:
    """The fiberwise map P -> P + T on the generic fiber, with t fixed."""
    if t_section.is_zero_section:
        return SurfaceMap.identity(model)
    field = model.field
    xT = FieldElement.from_ratfunc(model, t_section.x)
    yT = FieldElement.from_ratfunc(model, t_section.y)
    x_e = FieldElement.coordinate(model, "x")
    y_e = FieldElement.coordinate(model, "y")
    slope = (y_e - yT) / (x_e - xT)
    u = slope * slope - x_e - xT
    v = slope * (x_e - u) - y_e
    return SurfaceMap(model, u, v, RationalFunction.gen(field, "t"))


def build_named_maps(model: WeierstrassModel, scaling_exponents=(6, 9, 4)) -> dict:
    """The bundled trio on the fixture model: the coordinate scaling, its
    composite with translation by the 2-torsion section (0, 0), and the
    symplectic quotient of the two.

    The alternative factorization equals translation composed with the
    scaling, and the quotient map equals the bare translation; both identities
    are rechecked here.
    """
    field = model.field
    ex, ey, et = scaling_exponents
    sigma = SurfaceMap.scaling(model, field.zeta(ex), field.zeta(ey), field.zeta(et))
    zero = RationalFunction.constant(field, 0)
    two_torsion = Section(zero, zero)
    trans = translation_map(model, two_torsion)
    sigma_alt = compose(trans, sigma)
    if compose(sigma, trans) != sigma_alt:
        raise NotAMorphismError("scaling and translation failed to commute")
    tau = compose(sigma, inverse(sigma_alt))
    if tau != trans:
        raise NotAMorphismError("quotient map is not the expected translation")
    return {"sigma": sigma, "sigma_alt": sigma_alt, "tau": tau}
