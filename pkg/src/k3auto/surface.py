"""Weierstrass models over the projective t-line and Kodaira fiber types.

Models are in short form y^2 = x^3 + A(t) x + B(t) with deg A <= 8 and
deg B <= 12, which pins the twist exponents 8 / 12 / 24 at the place at
infinity.  Classification works from vanishing orders of (A, B, Delta) via
the characteristic-zero table; v(0) is infinite and satisfies every lower
bound in the table.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .cyclotomic import CyclotomicField
from .polyring import (
    INF,
    PlacePoly,
    UniPoly,
    gcd_free_basis,
    vanishing_order,
)

INFINITY = PlacePoly(None)


class NonMinimalError(ValueError):
    """Vanishing orders admit a 4/6/12 twist down: the model is not minimal."""


class UnclassifiableError(ValueError):
    """The vanishing-order triple matches no row of the fiber table."""


class NonLinearNonMinimalPlaceError(ValueError):
    """minimalize only handles non-minimality at linear finite places."""


def euler_number(fiber_type: str) -> int:
    """Euler number of a Kodaira fiber, from the standard table."""
    if fiber_type == "smooth":
        return 0
    m = re.fullmatch(r"I(\d+)(\*)?", fiber_type)
    if m:
        n = int(m.group(1))
        return n + 6 if m.group(2) else n
    table = {"II": 2, "III": 3, "IV": 4, "IV*": 8, "III*": 9, "II*": 10}
    if fiber_type in table:
        return table[fiber_type]
    raise ValueError(f"unknown Kodaira type {fiber_type!r}")


def component_count(fiber_type: str) -> int:
    """Number of irreducible components of a Kodaira fiber."""
    if fiber_type == "smooth":
        return 1
    m = re.fullmatch(r"I(\d+)(\*)?", fiber_type)
    if m:
        n = int(m.group(1))
        if m.group(2):
            return n + 5
        return max(n, 1)
    table = {"II": 1, "III": 2, "IV": 3, "IV*": 7, "III*": 8, "II*": 9}
    if fiber_type in table:
        return table[fiber_type]
    raise ValueError(f"unknown Kodaira type {fiber_type!r}")


def classify_place(vA, vB, vD) -> str:
    """Kodaira type from the vanishing orders of (A, B, Delta) at one place.

    The triple must come from a minimal model; INF satisfies every ">= k"
    guard.  Exactly one row applies, or the input is inconsistent.
    """
    if vA >= 4 and vB >= 6:
        raise NonMinimalError(
            f"orders (vA={vA}, vB={vB}) admit a twist down; minimalize first"
        )
    if vD == 0:
        return "smooth"
    if vA == 0 and vB == 0 and vD >= 1:
        return f"I{int(vD)}"
    if vD == 2 and vA >= 1 and vB == 1:
        return "II"
    if vD == 3 and vA == 1 and vB >= 2:
        return "III"
    if vD == 4 and vA >= 2 and vB == 2:
        return "IV"
    if vD == 6 and vA >= 2 and vB >= 3:
        return "I0*"
    if vD >= 7 and vA == 2 and vB == 3:
        return f"I{int(vD) - 6}*"
    if vD == 8 and vA >= 3 and vB == 4:
        return "IV*"
    if vD == 9 and vA == 3 and vB >= 5:
        return "III*"
    if vD == 10 and vA >= 4 and vB == 5:
        return "II*"
    raise UnclassifiableError(f"no table row matches (vA={vA}, vB={vB}, vDelta={vD})")


class WeierstrassModel:
    """Short Weierstrass data y^2 = x^3 + A(t) x + B(t) over Q(zeta_n)."""

    __slots__ = ("field", "A", "B", "_disc")

    def __init__(self, field: CyclotomicField, A: UniPoly, B: UniPoly):
        if A.var != "t" or B.var != "t":
            raise ValueError("A and B must be polynomials in t")
        if A.degree() > 8:
            raise ValueError("deg A must be at most 8 for a K3-bounded model")
        if B.degree() > 12:
            raise ValueError("deg B must be at most 12 for a K3-bounded model")
        self.field = field
        self.A = A
        self.B = B
        self._disc = (A ** 3 * 4 + B ** 2 * 27) * (-16)
        if self._disc.is_zero():
            raise ValueError("discriminant vanishes identically: not an elliptic surface")

    def discriminant(self) -> UniPoly:
        return self._disc

    def __eq__(self, other):
        return (
            isinstance(other, WeierstrassModel)
            and other.field == self.field
            and other.A == self.A
            and other.B == self.B
        )

    def __hash__(self):
        return hash((self.field, self.A, self.B))

    def __repr__(self):
        return f"WeierstrassModel(A={self.A}, B={self.B})"


def discriminant(model: WeierstrassModel) -> UniPoly:
    """The short-form discriminant -16 (4 A^3 + 27 B^2)."""
    return model.discriminant()


@dataclass(frozen=True)
class KodairaFiber:
    place: PlacePoly
    type: str
    vA: int | float
    vB: int | float
    vD: int | float
    euler: int
    components: int
    multiplicity: int

    def sort_key(self):
        return (self.place.is_infinite, str(self.place))


@dataclass(frozen=True)
class FiberInventory:
    fibers: tuple[KodairaFiber, ...]
    euler_total: int

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for f in self.fibers:
            out[f.type] = out.get(f.type, 0) + f.multiplicity
        return out


def _order_at_infinity(poly: UniPoly, bound: int) -> int | float:
    # v_s of s^bound * p(1/s) at s = 0, i.e. bound - deg p; INF for p = 0.
    if poly.is_zero():
        return INF
    return bound - poly.degree()


def classify_all(model: WeierstrassModel) -> FiberInventory:
    """One fiber per gcd-free-basis place of Delta, plus the place at infinity.

    Finite places must already be minimal (classify_place raises otherwise).
    At infinity the 8/12/24 twist of a low-degree model is reduced to its
    minimal form before classification, so small models classify as the
    elliptic surfaces they are.
    """
    delta = model.discriminant()
    triple = (model.A, model.B, delta)
    nonzero_slots = [i for i, p in enumerate(triple) if not p.is_zero()]
    basis = gcd_free_basis([triple[i] for i in nonzero_slots])

    def orders_at(exps):
        vals = [INF, INF, INF]
        for slot, e in zip(nonzero_slots, exps):
            vals[slot] = e
        return vals

    fibers = []
    for place, exps in basis:
        vA, vB, vD = orders_at(exps)
        if vD == 0:
            continue
        ftype = classify_place(vA, vB, vD)
        fibers.append(
            KodairaFiber(
                place=place,
                type=ftype,
                vA=vA,
                vB=vB,
                vD=vD,
                euler=euler_number(ftype),
                components=component_count(ftype),
                multiplicity=place.degree(),
            )
        )
    # Place at infinity via the fixed 8/12/24 twist, minimalized there.
    vA = _order_at_infinity(model.A, 8)
    vB = _order_at_infinity(model.B, 12)
    vD = _order_at_infinity(delta, 24)
    while vA >= 4 and vB >= 6:
        vA -= 4
        vB -= 6
        vD -= 12
    if vD != 0:
        ftype = classify_place(vA, vB, vD)
        fibers.append(
            KodairaFiber(
                place=INFINITY,
                type=ftype,
                vA=vA,
                vB=vB,
                vD=vD,
                euler=euler_number(ftype),
                components=component_count(ftype),
                multiplicity=1,
            )
        )
    fibers.sort(key=KodairaFiber.sort_key)
    total = sum(f.euler * f.multiplicity for f in fibers)
    return FiberInventory(fibers=tuple(fibers), euler_total=total)


def minimalize(model: WeierstrassModel) -> WeierstrassModel:
    """Twist away finite places with v(A) >= 4 and v(B) >= 6.

    Only linear offending places are supported: A -> A / p^4, B -> B / p^6.
    """
    A, B = model.A, model.B
    while True:
        nonzero = [p for p in (A, B) if not p.is_zero()]
        offender = None
        for place, _ in gcd_free_basis(nonzero):
            vA = vanishing_order(A, place) if not A.is_zero() else INF
            vB = vanishing_order(B, place) if not B.is_zero() else INF
            if vA >= 4 and vB >= 6:
                offender = place
                break
        if offender is None:
            return WeierstrassModel(model.field, A, B)
        if offender.degree() != 1:
            raise NonLinearNonMinimalPlaceError(
                f"non-minimal at place {offender} of degree {offender.degree()}"
            )
        p4 = offender.poly ** 4
        p6 = offender.poly ** 6
        A = A // p4 if not A.is_zero() else A
        B = B // p6 if not B.is_zero() else B


def is_k3(model: WeierstrassModel) -> bool:
    """True exactly when the fiber Euler numbers sum to 24."""
    return classify_all(model).euler_total == 24


def _fmt_order(v) -> str:
    return "inf" if v == INF else str(int(v))


def format_report(inv: FiberInventory, k3_verdict: bool | None = None) -> str:
    """Deterministic plain-text fiber report."""
    lines = []
    for f in inv.fibers:
        lines.append(
            f"{f.place} | {f.type} | {_fmt_order(f.vA)} {_fmt_order(f.vB)} "
            f"{_fmt_order(f.vD)} | {f.euler} | {f.multiplicity}"
        )
    lines.append(f"euler_total = {inv.euler_total}")
    if k3_verdict is None:
        k3_verdict = inv.euler_total == 24
    lines.append(f"is_k3 = {'yes' if k3_verdict else 'no'}")
    return "\n".join(lines)
