"""Integer lattice toolkit: named Gram matrices, signatures, discriminant forms.

Everything is exact: Smith normal forms over the integers, signatures by
rational symmetric elimination (Sylvester counts), and finite quadratic forms
compared by brute-force isomorphism search.  ADE lattices follow the K3 curve
convention and are negative definite.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, lcm


class UnknownLatticeError(ValueError):
    """No lattice of that name is built in."""


class GroupTooLargeError(ValueError):
    """The discriminant group exceeds the brute-force comparison bound."""


class GramMatrix:
    """A symmetric even integer matrix."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        rows = tuple(tuple(int(v) for v in row) for row in entries)
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise ValueError("Gram matrix must be square")
        for i in range(n):
            if rows[i][i] % 2:
                raise ValueError("Gram matrix must be even on the diagonal")
            for j in range(n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        self.entries = rows

    @property
    def size(self) -> int:
        return len(self.entries)

    def __eq__(self, other):
        return isinstance(other, GramMatrix) and other.entries == self.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"GramMatrix({self.entries!r})"


def _adjacency_gram(n: int, edges: list[tuple[int, int]]) -> GramMatrix:
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = -2
    for a, b in edges:
        rows[a][b] = 1
        rows[b][a] = 1
    return GramMatrix(rows)


def _path_edges(n: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(n - 1)]


def named_lattice(name: str) -> GramMatrix:
    """Standard lattices by name: A_n, D_n, E_6, E_7, E_8, U, U(m).

    ADE lattices are negative definite (curves of self-intersection -2 meeting
    transversally); U is the hyperbolic plane and U(m) its scaling.
    """
    name = name.strip()
    if name == "U":
        return GramMatrix([[0, 1], [1, 0]])
    m = re.fullmatch(r"U\((\d+)\)", name)
    if m:
        k = int(m.group(1))
        return GramMatrix([[0, k], [k, 0]])
    m = re.fullmatch(r"([ADE])_?(\d+)", name)
    if not m:
        raise UnknownLatticeError(f"unknown lattice name {name!r}")
    family, rank = m.group(1), int(m.group(2))
    if family == "A" and rank >= 1:
        return _adjacency_gram(rank, _path_edges(rank))
    if family == "D" and rank >= 3:
        edges = _path_edges(rank - 1) + [(rank - 3, rank - 1)]
        return _adjacency_gram(rank, edges)
    if family == "E" and rank in (6, 7, 8):
        # A path v0..v(rank-2) with the last node attached so the branch arms
        # have lengths (1, 2, rank - 4) beyond the trivalent node.
        branch = {6: 2, 7: 3, 8: 4}[rank]
        edges = _path_edges(rank - 1) + [(branch, rank - 1)]
        return _adjacency_gram(rank, edges)
    raise UnknownLatticeError(f"unknown lattice name {name!r}")


def direct_sum(parts) -> GramMatrix:
    mats = [p if isinstance(p, GramMatrix) else named_lattice(p) for p in parts]
    n = sum(m.size for m in mats)
    rows = [[0] * n for _ in range(n)]
    offset = 0
    for m in mats:
        for i in range(m.size):
            for j in range(m.size):
                rows[offset + i][offset + j] = m.entries[i][j]
        offset += m.size
    return GramMatrix(rows)


def from_curve_config(config) -> GramMatrix:
    """Intersection matrix of a curve configuration: -2 diagonal, edge
    multiplicities off the diagonal."""
    names = list(config.vertices)
    index = {v: i for i, v in enumerate(names)}
    rows = [[0] * len(names) for _ in names]
    for i in range(len(names)):
        rows[i][i] = -2
    for (a, b), mult in config.edges.items():
        rows[index[a]][index[b]] = mult
        rows[index[b]][index[a]] = mult
    return GramMatrix(rows)


def signature(G: GramMatrix) -> tuple[int, int]:
    """(positive, negative) inertia by exact symmetric elimination."""
    n = G.size
    m = [[Fraction(v) for v in row] for row in G.entries]
    active = list(range(n))
    pos = neg = 0
    while active:
        pivot = next((i for i in active if m[i][i] != 0), None)
        if pivot is not None:
            if m[pivot][pivot] > 0:
                pos += 1
            else:
                neg += 1
            d = m[pivot][pivot]
            active.remove(pivot)
            for i in active:
                f = m[i][pivot] / d
                if f:
                    for j in active:
                        m[i][j] -= f * m[pivot][j]
            continue
        pair = None
        for i in active:
            for j in active:
                if i != j and m[i][j] != 0:
                    pair = (i, j)
                    break
            if pair:
                break
        if pair is None:
            break  # only the radical remains
        # All active diagonal entries are zero here, so (i, j) spans a
        # hyperbolic plane: signature contribution (1, 1), and the congruence
        # v_k -> v_k - (m[k][j]/a) v_i - (m[k][i]/a) v_j clears the pair.
        i, j = pair
        a = m[i][j]
        pos += 1
        neg += 1
        active.remove(i)
        active.remove(j)
        alpha = {k: m[k][j] / a for k in active}
        beta = {k: m[k][i] / a for k in active}
        for k in active:
            for l in active:
                m[k][l] -= a * (alpha[k] * beta[l] + alpha[l] * beta[k])
    return pos, neg


def rank(G: GramMatrix) -> int:
    p, q = signature(G)
    return p + q


def determinant(G: GramMatrix) -> int:
    """Exact determinant by fraction-free elimination."""
    n = G.size
    m = [[Fraction(v) for v in row] for row in G.entries]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] * inv
            if f:
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    assert det.denominator == 1
    return int(det)


def smith_normal_form(matrix) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """(D, U, V) with U * M * V = D diagonal, U and V unimodular, d_i | d_{i+1}."""
    a = [list(map(int, row)) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    U = [[int(i == j) for j in range(rows)] for i in range(rows)]
    V = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in range(rows):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(cols):
            V[r][i], V[r][j] = V[r][j], V[r][i]

    def add_row(src, dst, k):
        for c in range(cols):
            a[dst][c] += k * a[src][c]
        for c in range(rows):
            U[dst][c] += k * U[src][c]

    def add_col(src, dst, k):
        for r in range(rows):
            a[r][dst] += k * a[r][src]
        for r in range(cols):
            V[r][dst] += k * V[r][src]

    t = 0
    while t < min(rows, cols):
        # Find the smallest nonzero entry in the remaining block.
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        dirty = False
        for i in range(t + 1, rows):
            if a[i][t]:
                add_row(t, i, -(a[i][t] // a[t][t]))
                if a[i][t]:
                    dirty = True
        for j in range(t + 1, cols):
            if a[t][j]:
                add_col(t, j, -(a[t][j] // a[t][t]))
                if a[t][j]:
                    dirty = True
        if dirty:
            continue
        # Enforce divisibility of the remaining block by the pivot.
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % a[t][t]:
                    offender = i
                    break
            if offender:
                break
        if offender is not None:
            add_row(offender, t, 1)
            continue
        if a[t][t] < 0:
            for c in range(cols):
                a[t][c] = -a[t][c]
            for c in range(rows):
                U[t][c] = -U[t][c]
        t += 1
    return a, U, V


def _mat_mul(A, B):
    return [
        [sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
        for i in range(len(A))
    ]


def _fraction_inverse(M):
    n = len(M)
    aug = [[Fraction(M[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [v - f * p for v, p in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


@dataclass(frozen=True)
class DiscriminantGroup:
    """L*/L of the nondegenerate part, with its quadratic and bilinear forms.

    q values live in Q/2Z and b values in Q/Z, given on the generators of the
    invariant-factor decomposition.
    """

    invariant_factors: tuple[int, ...]
    generators: tuple[tuple[Fraction, ...], ...]
    q_values: tuple[Fraction, ...]
    b_values: tuple[tuple[Fraction, ...], ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def elements(self):
        return product(*(range(d) for d in self.invariant_factors))

    def q_of(self, coeffs) -> Fraction:
        total = Fraction(0)
        k = len(coeffs)
        for i in range(k):
            total += coeffs[i] * coeffs[i] * self.q_values[i]
            for j in range(i + 1, k):
                total += 2 * coeffs[i] * coeffs[j] * self.b_values[i][j]
        return total % 2

    def b_of(self, u, v) -> Fraction:
        total = Fraction(0)
        k = len(u)
        for i in range(k):
            for j in range(k):
                total += u[i] * v[j] * self.b_values[i][j]
        return total % 1

    def element_order(self, coeffs) -> int:
        out = 1
        for d, c in zip(self.invariant_factors, coeffs):
            out = lcm(out, d // gcd(d, c) if c else 1)
        return out


def _nondegenerate_gram(G: GramMatrix) -> list[list[int]]:
    # Basis change by the SNF right transform of G: the columns of V with
    # G V e_j = 0 span the saturated kernel, and the remaining columns
    # project to a basis of the nondegenerate quotient.
    _D, _U, V = smith_normal_form(G.entries)
    n = G.size
    keep = []
    for j in range(n):
        column_nonzero = any(
            sum(G.entries[r][c] * V[c][j] for c in range(n)) for r in range(n)
        )
        if column_nonzero:
            keep.append(j)
    basis = [[V[r][j] for r in range(n)] for j in keep]  # kept columns of V
    out = []
    for vi in basis:
        row = []
        for vj in basis:
            val = 0
            for r in range(n):
                for c in range(n):
                    val += vi[r] * G.entries[r][c] * vj[c]
            row.append(val)
        out.append(row)
    return out


def discriminant_data(G: GramMatrix) -> DiscriminantGroup:
    """Invariant factors and discriminant form of the nondegenerate quotient."""
    M = _nondegenerate_gram(G)
    n = len(M)
    if n == 0:
        return DiscriminantGroup((), (), (), ())
    D, U, _V = smith_normal_form(M)
    diag = [D[i][i] for i in range(n)]
    U_inv = _fraction_inverse(U)
    M_inv = _fraction_inverse(M)
    gens = []
    factors = []
    for i in range(n):
        if diag[i] <= 1:
            continue
        factors.append(diag[i])
        # Generator of the i-th cyclic summand: G^{-1} U^{-1} e_i.
        col = [U_inv[r][i] for r in range(n)]
        vec = tuple(
            sum(M_inv[r][c] * col[c] for c in range(n)) for r in range(n)
        )
        gens.append(vec)

    def pair(u, v) -> Fraction:
        total = Fraction(0)
        for r in range(n):
            for c in range(n):
                total += u[r] * M[r][c] * v[c]
        return total

    q_vals = tuple(pair(g, g) % 2 for g in gens)
    b_vals = tuple(
        tuple(pair(gi, gj) % 1 for gj in gens) for gi in gens
    )
    return DiscriminantGroup(tuple(factors), tuple(gens), q_vals, b_vals)


def genus_equal(G1: GramMatrix, G2: GramMatrix) -> bool:
    """Same signature and isomorphic discriminant quadratic forms.

    For the even indefinite lattices in scope this decides the genus; the
    finite-form isomorphism is found by brute-force search over generator
    images (group order capped at 1024).
    """
    if signature(G1) != signature(G2):
        return False
    d1 = discriminant_data(G1)
    d2 = discriminant_data(G2)
    if sorted(d1.invariant_factors) != sorted(d2.invariant_factors):
        return False
    if d1.order != d2.order:
        return False
    if d1.order > 1024:
        raise GroupTooLargeError(f"discriminant group of order {d1.order}")
    if d1.order == 1:
        return True
    elements2 = list(d2.elements())
    by_order_q: dict[tuple[int, Fraction], list[tuple[int, ...]]] = {}
    for el in elements2:
        key = (d2.element_order(el), d2.q_of(el))
        by_order_q.setdefault(key, []).append(el)

    gens1 = list(range(len(d1.invariant_factors)))

    def extend(i, images):
        if i == len(gens1):
            # Images must generate all of group 2.
            seen = set()
            for coeffs in d1.elements():
                img = tuple(
                    sum(coeffs[k] * images[k][j] for k in range(len(images))) % d2.invariant_factors[j]
                    for j in range(len(d2.invariant_factors))
                )
                seen.add(img)
            return len(seen) == d2.order
        d = d1.invariant_factors[i]
        unit = tuple(int(j == i) for j in range(len(d1.invariant_factors)))
        want_q = d1.q_values[i] % 2
        for cand in by_order_q.get((d, want_q), ()):
            ok = True
            for j in range(i):
                b1 = d1.b_values[i][j] % 1
                if d2.b_of(cand, images[j]) != b1:
                    ok = False
                    break
            if ok and extend(i + 1, images + [cand]):
                return True
        return False

    return extend(0, [])
