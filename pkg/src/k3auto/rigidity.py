"""Weighted finite-order actions on incidence graphs of rational curves.

A configuration is a graph whose vertices are smooth rational curves of
self-intersection -2 and whose edges are intersection points (multiplicity 2
marking a tangency).  An action of order n with volume exponent c carries a
local weight w at each flag (curve, fixed point): along that curve the action
linearizes as z -> zeta_n^w z.  Three local rules make the calculus rigid:

* volume rule: at a transverse fixed point of two stable curves the two
  weights sum to c mod n;
* projective-line rule: a stable curve is either pointwise fixed (weight 0)
  or has exactly two fixed points with opposite weights, and every orbit of
  non-fixed marked points on it has length equal to the rotation order;
* tangency rule: along-branch weights at a tangency agree.

Propagation from a single anchor flag saturates these rules over the whole
graph, synthesizing free fixed points where a curve has fewer than two marked
ones, and failing loudly on any contradiction.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd, lcm
from typing import Iterable


class RigidityError(ValueError):
    """Base class for inconsistencies in the fixed-point calculus."""


class InconsistentCycleError(RigidityError):
    """A propagation cycle produced contradictory weights."""


class TooManyFixedPointsError(RigidityError):
    """A stable curve would need three or more fixed points with nonzero weight."""


class AnchorOnMobileCurveError(RigidityError):
    """The anchor flag does not sit on a pi-stable curve at a fixed point."""


class IncompatibleActionsError(RigidityError):
    """Two actions share no usable germ data for composition."""


class UnderdeterminedActionError(RigidityError):
    """Propagation left some stable curve without weight data."""


def edge_key(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


def edge_point_id(a: str, b: str) -> str:
    a, b = edge_key(a, b)
    return f"{a}:{b}"


class CurveConfig:
    """Incidence graph of rational curves with edge multiplicities 1 or 2."""

    __slots__ = ("vertices", "edges", "adj")

    def __init__(self, vertices: Iterable[str], edges):
        self.vertices = tuple(sorted(set(vertices)))
        for v in self.vertices:
            if ":" in v or "." in v:
                raise ValueError(f"vertex name {v!r} clashes with point-id syntax")
        self.edges = {}
        self.adj = {v: {} for v in self.vertices}
        for item in edges.items() if isinstance(edges, dict) else edges:
            if isinstance(edges, dict):
                (a, b), mult = item
            else:
                a, b, mult = item
            if a == b:
                raise ValueError(f"self-intersection edge at {a}")
            if a not in self.adj or b not in self.adj:
                raise ValueError(f"edge touches unknown vertex: {a}, {b}")
            if mult not in (1, 2):
                raise ValueError("edge multiplicity must be 1 or 2")
            key = edge_key(a, b)
            if key in self.edges:
                raise ValueError(f"duplicate edge {key}")
            self.edges[key] = mult
            self.adj[a][b] = mult
            self.adj[b][a] = mult

    def neighbors(self, v: str) -> dict[str, int]:
        return self.adj[v]

    def degree(self, v: str) -> int:
        return len(self.adj[v])

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        queue = deque(seen)
        while queue:
            v = queue.popleft()
            for w in self.adj[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == len(self.vertices)

    def is_automorphism(self, perm: dict[str, str]) -> bool:
        if sorted(perm) != list(self.vertices):
            return False
        if sorted(perm.values()) != list(self.vertices):
            return False
        for (a, b), mult in self.edges.items():
            if self.edges.get(edge_key(perm[a], perm[b])) != mult:
                return False
        return True


def _perm_power(perm: dict[str, str], m: int) -> dict[str, str]:
    out = {}
    for v in perm:
        w = v
        for _ in range(m):
            w = perm[w]
        out[v] = w
    return out


def _perm_order(perm: dict[str, str]) -> int:
    out = 1
    seen = set()
    for v in perm:
        if v in seen:
            continue
        length = 0
        w = v
        while True:
            w = perm[w]
            length += 1
            seen.add(w)
            if w == v:
                break
        out = lcm(out, length)
    return out


def _cycle_length(perm: dict[str, str], v: str) -> int:
    length = 0
    w = v
    while True:
        w = perm[w]
        length += 1
        if w == v:
            return length


@dataclass(frozen=True)
class CensusPoint:
    location: str
    kind: str  # transverse-intersection | tangency | free-point | swap-point
    weights: tuple[tuple[str, int], ...] | None


@dataclass(frozen=True)
class FixedLocusCensus:
    N: int
    k: int
    points: tuple[CensusPoint, ...]
    curves: tuple[str, ...]


class GraphAction:
    """A consistent weighted action: permutation, volume exponent, weights.

    Weights are exponents mod n at flags (curve, point id); free fixed points
    carry ids "<curve>.free<i>".  Pointwise-fixed curves record weight 0 at
    each of their marked points.
    """

    __slots__ = ("config", "n", "c", "perm", "weights", "pointwise", "free_points")

    def __init__(self, config, n, c, perm, weights, pointwise, free_points):
        self.config = config
        self.n = n
        self.c = c % n
        self.perm = dict(perm)
        self.weights = dict(weights)
        self.pointwise = frozenset(pointwise)
        self.free_points = {k: tuple(v) for k, v in free_points.items() if v}

    # -- structure ---------------------------------------------------------

    def stable_curves(self) -> list[str]:
        return [v for v in self.config.vertices if self.perm[v] == v]

    def fixed_edge_points(self) -> list[tuple[str, str, int]]:
        out = []
        for (a, b), mult in sorted(self.config.edges.items()):
            if self.perm[a] == a and self.perm[b] == b:
                out.append((a, b, mult))
        return out

    def swap_points(self) -> list[tuple[str, str, int]]:
        out = []
        for (a, b), mult in sorted(self.config.edges.items()):
            if self.perm[a] == b and self.perm[b] == a:
                out.append((a, b, mult))
        return out

    def weight_at(self, curve: str, point: str) -> int | None:
        if curve in self.pointwise:
            return 0
        return self.weights.get((curve, point))

    def curve_weight(self, curve: str) -> int | None:
        """The rotation exponent on a stable curve: 0 if pointwise fixed."""
        if curve in self.pointwise:
            return 0
        ws = [w for (c, _), w in self.weights.items() if c == curve]
        return min(ws) if ws else None

    def order(self) -> int:
        g = self.n
        g = gcd(g, self.c)
        for w in self.weights.values():
            g = gcd(g, w)
        weight_order = self.n // g if g else 1
        return lcm(_perm_order(self.perm), max(weight_order, 1))

    # -- canonical form ----------------------------------------------------

    def reduced_key(self):
        g = self.n
        g = gcd(g, self.c)
        for w in self.weights.values():
            g = gcd(g, w)
        if g == 0:
            g = self.n
        n2 = self.n // g
        flags = []
        for (curve, point), w in self.weights.items():
            if point.startswith(f"{curve}.free"):
                continue
            flags.append((curve, point, (w % self.n) // g))
        frees = []
        for curve, pids in sorted(self.free_points.items()):
            ws = sorted(((self.weights[(curve, p)] % self.n) // g) for p in pids)
            frees.append((curve, tuple(ws)))
        return (
            n2,
            (self.c % self.n) // g,
            tuple(sorted(self.perm.items())),
            tuple(sorted(flags)),
            tuple(frees),
            tuple(sorted(self.pointwise)),
        )

    def __eq__(self, other):
        return (
            isinstance(other, GraphAction)
            and other.config is self.config
            and other.reduced_key() == self.reduced_key()
        )

    def __hash__(self):
        return hash(self.reduced_key())

    # -- validation --------------------------------------------------------

    def validate(self):
        """Recheck every rule; raises RigidityError on any violation."""
        config = self.config
        n, c = self.n, self.c
        if not config.is_automorphism(self.perm):
            raise RigidityError("permutation is not a graph automorphism")
        stable = set(self.stable_curves())
        for curve in self.pointwise:
            if curve not in stable:
                raise RigidityError(f"pointwise-fixed curve {curve} is mobile")
            for d in config.neighbors(curve):
                if d not in stable:
                    raise InconsistentCycleError(
                        f"pointwise-fixed curve {curve} meets mobile curve {d}"
                    )
        for (curve, point), w in self.weights.items():
            if curve not in stable:
                raise RigidityError(f"weight on mobile curve {curve}")
            if not 0 <= w < n:
                raise RigidityError("weight out of range")
        for a, b, mult in self.fixed_edge_points():
            pid = edge_point_id(a, b)
            wa = self.weight_at(a, pid)
            wb = self.weight_at(b, pid)
            if wa is None or wb is None:
                raise UnderdeterminedActionError(f"missing weight at {pid}")
            if mult == 1:
                if (wa + wb) % n != c:
                    raise InconsistentCycleError(
                        f"volume rule fails at {pid}: {wa} + {wb} != {c} mod {n}"
                    )
            else:
                if wa != wb:
                    raise InconsistentCycleError(
                        f"tangency rule fails at {pid}: {wa} != {wb}"
                    )
        for curve in stable:
            if curve in self.pointwise:
                continue
            flags = {
                point: w for (cv, point), w in self.weights.items() if cv == curve
            }
            if not flags:
                raise UnderdeterminedActionError(f"no weights on stable curve {curve}")
            if len(flags) != 2:
                raise TooManyFixedPointsError(
                    f"curve {curve} carries {len(flags)} fixed points"
                )
            (p1, w1), (p2, w2) = sorted(flags.items())
            if (w1 + w2) % n != 0 or w1 % n == 0:
                raise InconsistentCycleError(
                    f"projective-line rule fails on {curve}: weights {w1}, {w2}"
                )
            rotation = n // gcd(n, w1)
            for d in config.neighbors(curve):
                if self.perm[d] != d and _cycle_length(self.perm, d) != rotation:
                    raise InconsistentCycleError(
                        f"orbit of {d} on {curve} has length "
                        f"{_cycle_length(self.perm, d)}, rotation order is {rotation}"
                    )

    # -- census --------------------------------------------------------------

    def census(self) -> FixedLocusCensus:
        points = []
        for a, b, mult in self.fixed_edge_points():
            if a in self.pointwise or b in self.pointwise:
                continue
            pid = edge_point_id(a, b)
            kind = "tangency" if mult == 2 else "transverse-intersection"
            points.append(
                CensusPoint(
                    location=pid,
                    kind=kind,
                    weights=(
                        (a, self.weight_at(a, pid)),
                        (b, self.weight_at(b, pid)),
                    ),
                )
            )
        for a, b, _mult in self.swap_points():
            points.append(
                CensusPoint(location=edge_point_id(a, b), kind="swap-point", weights=None)
            )
        for curve, pids in sorted(self.free_points.items()):
            for pid in pids:
                points.append(
                    CensusPoint(
                        location=pid,
                        kind="free-point",
                        weights=((curve, self.weights[(curve, pid)]),),
                    )
                )
        points.sort(key=lambda p: p.location)
        curves = tuple(sorted(self.pointwise))
        return FixedLocusCensus(
            N=len(points), k=len(curves), points=tuple(points), curves=curves
        )


def _saturate(config, perm, n, c, seeds, free_seeds=None) -> GraphAction:
    """Close the rule set over the graph from the given seed flags."""
    if not config.is_automorphism(perm):
        raise RigidityError("permutation is not a graph automorphism")
    c %= n
    stable = {v for v in config.vertices if perm[v] == v}
    fixed_points: dict[str, list[str]] = {v: [] for v in stable}
    edge_of: dict[str, tuple[str, str, int]] = {}
    for (a, b), mult in sorted(config.edges.items()):
        if a in stable and b in stable:
            pid = edge_point_id(a, b)
            fixed_points[a].append(pid)
            fixed_points[b].append(pid)
            edge_of[pid] = (a, b, mult)

    weights: dict[tuple[str, str], int] = {}
    pointwise: set[str] = set()
    free: dict[str, list[str]] = {v: [] for v in stable}
    queue: deque[tuple[str, str]] = deque()

    def set_weight(curve, pid, w):
        w %= n
        if w != 0 and len(fixed_points[curve]) >= 3:
            raise TooManyFixedPointsError(
                f"curve {curve} has {len(fixed_points[curve])} fixed points, "
                f"cannot carry nonzero weight {w}"
            )
        key = (curve, pid)
        if key in weights:
            if weights[key] != w:
                raise InconsistentCycleError(
                    f"contradictory weights {weights[key]} and {w} at {pid} on {curve}"
                )
            return
        if curve in pointwise and w != 0:
            raise InconsistentCycleError(
                f"nonzero weight {w} on pointwise-fixed curve {curve}"
            )
        weights[key] = w
        queue.append(key)

    def mark_pointwise(curve):
        if curve in pointwise:
            return
        for d in config.neighbors(curve):
            if d not in stable:
                raise InconsistentCycleError(
                    f"curve {curve} forced pointwise fixed but neighbor {d} moves"
                )
        if free[curve]:
            raise InconsistentCycleError(
                f"curve {curve} is pointwise fixed yet carries free points"
            )
        pointwise.add(curve)
        for pid in fixed_points[curve]:
            set_weight(curve, pid, 0)

    # A stable curve with three or more fixed points must be the identity.
    for curve in sorted(stable):
        if len(fixed_points[curve]) >= 3:
            mark_pointwise(curve)

    for (curve, pid), w in sorted(seeds.items()):
        if curve not in stable:
            raise AnchorOnMobileCurveError(f"curve {curve} is mobile under the action")
        if pid not in fixed_points[curve]:
            raise AnchorOnMobileCurveError(
                f"point {pid} is not a fixed point of the stable curve {curve}"
            )
        set_weight(curve, pid, w)

    for curve, ws in sorted((free_seeds or {}).items()):
        if curve not in stable:
            raise AnchorOnMobileCurveError(f"curve {curve} is mobile under the action")
        for w in ws:
            if w % n == 0:
                # Weight zero means the rotation is trivial: the would-be free
                # point melts into a pointwise-fixed curve.
                mark_pointwise(curve)
                continue
            pid = f"{curve}.free{len(free[curve])}"
            free[curve].append(pid)
            set_weight(curve, pid, w)

    while queue:
        curve, pid = queue.popleft()
        w = weights[(curve, pid)]
        if w == 0:
            mark_pointwise(curve)
        else:
            known = fixed_points[curve] + free[curve]
            if len(known) == 1:
                new_pid = f"{curve}.free{len(free[curve])}"
                free[curve].append(new_pid)
                set_weight(curve, new_pid, -w)
            elif len(known) == 2:
                other = known[0] if known[1] == pid else known[1]
                set_weight(curve, other, -w)
            else:
                raise TooManyFixedPointsError(
                    f"curve {curve} would carry {len(known)} fixed points"
                )
        if pid in edge_of:
            a, b, mult = edge_of[pid]
            other_curve = b if curve == a else a
            set_weight(other_curve, pid, w if mult == 2 else c - w)

    for curve in stable:
        if curve in pointwise:
            continue
        known = fixed_points[curve] + free[curve]
        missing = [p for p in known if (curve, p) not in weights]
        if missing or len(known) != 2:
            raise UnderdeterminedActionError(
                f"stable curve {curve} is underdetermined after propagation"
            )

    action = GraphAction(config, n, c, perm, weights, pointwise, free)
    action.validate()
    return action


def propagate(config, perm, n, c, anchor_flag, anchor_weight) -> GraphAction:
    """Build the unique consistent action from one anchor flag.

    anchor_flag is (curve, point id); the point must be fixed, i.e. an edge
    to another stable curve.
    """
    curve, pid = anchor_flag
    return _saturate(config, perm, n, c, {(curve, pid): anchor_weight})


def census(action: GraphAction) -> FixedLocusCensus:
    return action.census()


def power(action: GraphAction, m: int) -> GraphAction:
    """The action of the m-th power: weights scale by m, order divides out."""
    n = action.n
    g = gcd(n, m)
    n2 = n // g if n // g >= 1 else 1
    perm2 = _perm_power(action.perm, m)
    seeds = {}
    free_seeds: dict[str, list[int]] = {}
    for curve in action.stable_curves():
        curve_w = action.curve_weight(curve)
        becomes_pointwise = curve_w is not None and (m * curve_w) % n == 0
        for pid in action.free_points.get(curve, ()):
            if becomes_pointwise:
                continue  # the free point melts into the fixed curve
            w = (m * action.weights[(curve, pid)]) % n
            free_seeds.setdefault(curve, []).append(w // g)
    for (curve, pid), w in action.weights.items():
        if pid.startswith(f"{curve}.free"):
            continue
        seeds[(curve, pid)] = ((m * w) % n) // g
    return _saturate(action.config, perm2, n2, ((m * action.c) % n) // g, seeds, free_seeds)


def inverse_action(action: GraphAction) -> GraphAction:
    return power(action, action.order() - 1)


def compose_actions(a1: GraphAction, a2: GraphAction) -> GraphAction:
    """Germ-wise composition: weights add at points fixed by both actions."""
    if a1.config is not a2.config and a1.config.edges != a2.config.edges:
        raise IncompatibleActionsError("actions live on different configurations")
    config = a1.config
    n = lcm(a1.n, a2.n)
    s1, s2 = n // a1.n, n // a2.n
    perm = {v: a1.perm[a2.perm[v]] for v in config.vertices}
    c = (a1.c * s1 + a2.c * s2) % n

    def defined(action, scale, curve, pid):
        if action.perm[curve] != curve:
            return None
        if ":" in pid:
            a, b = pid.split(":")
            if action.perm[a] != a or action.perm[b] != b:
                return None
        w = action.weight_at(curve, pid)
        return None if w is None else (w * scale) % n

    seeds = {}
    for (a, b), _mult in sorted(config.edges.items()):
        pid = edge_point_id(a, b)
        for curve in (a, b):
            w1 = defined(a1, s1, curve, pid)
            w2 = defined(a2, s2, curve, pid)
            if w1 is not None and w2 is not None and perm[curve] == curve:
                seeds[(curve, pid)] = (w1 + w2) % n

    free_seeds: dict[str, list[int]] = {}
    for curve in config.vertices:
        if perm[curve] != curve:
            continue
        f1 = list(a1.free_points.get(curve, ()))
        f2 = list(a2.free_points.get(curve, ()))
        if curve in a1.pointwise and f2:
            for pid in f2:
                free_seeds.setdefault(curve, []).append(
                    (a2.weights[(curve, pid)] * s2) % n
                )
        elif curve in a2.pointwise and f1:
            for pid in f1:
                free_seeds.setdefault(curve, []).append(
                    (a1.weights[(curve, pid)] * s1) % n
                )
        elif len(f1) == 1 and len(f2) == 1:
            w = (a1.weights[(curve, f1[0])] * s1 + a2.weights[(curve, f2[0])] * s2) % n
            free_seeds.setdefault(curve, []).append(w)

    if not seeds and not free_seeds:
        raise IncompatibleActionsError("no common germ data to compose from")
    return _saturate(config, perm, n, c, seeds, free_seeds)


def graph_automorphisms(config: CurveConfig) -> list[dict[str, str]]:
    """All automorphisms, by backtracking on degree and neighborhood data."""

    def signature(v):
        return (
            config.degree(v),
            tuple(sorted((m, config.degree(w)) for w, m in config.adj[v].items())),
        )

    sigs = {v: signature(v) for v in config.vertices}
    order = sorted(config.vertices, key=lambda v: (-config.degree(v), v))
    candidates = {
        v: [w for w in config.vertices if sigs[w] == sigs[v]] for v in order
    }
    out = []
    assignment: dict[str, str] = {}
    used: set[str] = set()

    def extend(i):
        if i == len(order):
            out.append(dict(assignment))
            return
        v = order[i]
        for w in candidates[v]:
            if w in used:
                continue
            ok = True
            for u, mult in config.adj[v].items():
                if u in assignment and config.adj[w].get(assignment[u]) != mult:
                    ok = False
                    break
            if ok:
                # no extra edges may appear either
                for u in assignment:
                    if (u in config.adj[v]) != (assignment[u] in config.adj[w]):
                        ok = False
                        break
            if ok:
                assignment[v] = w
                used.add(w)
                extend(i + 1)
                used.remove(w)
                del assignment[v]

    extend(0)
    out.sort(key=lambda p: tuple(p[v] for v in config.vertices))
    return out


def _transport(action: GraphAction, g: dict[str, str]) -> GraphAction:
    """Relabel an action along a graph automorphism g."""
    config = action.config
    perm = {g[v]: g[action.perm[v]] for v in config.vertices}
    weights = {}
    free_points: dict[str, list[str]] = {}
    for curve, pids in action.free_points.items():
        target = g[curve]
        ordered = sorted(pids, key=lambda p: action.weights[(curve, p)])
        new_pids = []
        for i, pid in enumerate(ordered):
            new_pid = f"{target}.free{i}"
            weights[(target, new_pid)] = action.weights[(curve, pid)]
            new_pids.append(new_pid)
        free_points[target] = new_pids
    for (curve, pid), w in action.weights.items():
        if pid.startswith(f"{curve}.free"):
            continue
        a, b = pid.split(":")
        weights[(g[curve], edge_point_id(g[a], g[b]))] = w
    pointwise = {g[v] for v in action.pointwise}
    return GraphAction(config, action.n, action.c, perm, weights, pointwise, free_points)


def canonical_key(action: GraphAction, automorphisms=None):
    """Smallest reduced key over conjugation by the full automorphism group."""
    if automorphisms is None:
        automorphisms = graph_automorphisms(action.config)
    return min(_transport(action, g).reduced_key() for g in automorphisms)


def enumerate_actions(config, n, c, census_filter=None) -> list[GraphAction]:
    """All consistent actions of the given order and volume exponent, up to
    conjugation by graph automorphisms.

    For every automorphism the anchor is the first fixed edge flag in
    canonical order; every anchor weight in Z_n is attempted, inconsistent or
    underdetermined combinations are dropped, and survivors are deduplicated
    by conjugation.  The optional filter keeps actions whose census matches
    (N, k).
    """
    if n > 64:
        raise ValueError("order bound for enumeration is 64")
    if len(config.vertices) > 64:
        raise ValueError("vertex bound for enumeration is 64")
    auts = graph_automorphisms(config)
    survivors: dict[tuple, GraphAction] = {}
    for perm in auts:
        anchor = None
        for (a, b), _mult in sorted(config.edges.items()):
            if perm[a] == a and perm[b] == b:
                anchor = (a, edge_point_id(a, b))
                break
        if anchor is None:
            continue
        for w in range(n):
            try:
                action = _saturate(config, perm, n, c, {anchor: w})
            except RigidityError:
                continue
            if census_filter is not None:
                cens = action.census()
                if (cens.N, cens.k) != tuple(census_filter):
                    continue
            key = canonical_key(action, auts)
            survivors.setdefault(key, action)
    return [survivors[key] for key in sorted(survivors)]


def to_dot(config: CurveConfig, action: GraphAction | None = None) -> str:
    """Graphviz export; byte-stable for identical inputs.

    With an action: pointwise-fixed curves fill grey, mobile curves stay
    white, stable curves get a bold outline; fixed points appear as edge
    labels, free fixed points as point-shaped satellite nodes.
    """
    lines = ["graph curves {", "  node [shape=circle fontsize=10];"]
    for v in config.vertices:
        attrs = []
        if action is not None:
            if v in action.pointwise:
                attrs.append('style=filled fillcolor=grey')
            elif action.perm[v] == v:
                attrs.append("penwidth=2")
            else:
                attrs.append('style=solid')
        attr_text = f" [{' '.join(attrs)}]" if attrs else ""
        lines.append(f'  "{v}"{attr_text};')
    for (a, b), mult in sorted(config.edges.items()):
        attrs = []
        if mult == 2:
            attrs.append("penwidth=2")
        if action is not None:
            pid = edge_point_id(a, b)
            wa = action.weight_at(a, pid) if action.perm[a] == a else None
            wb = action.weight_at(b, pid) if action.perm[b] == b else None
            if action.perm[a] == b and action.perm[b] == a:
                attrs.append('label="swap"')
            elif wa is not None and wb is not None:
                attrs.append(f'label="{wa}|{wb}"')
        attr_text = f" [{' '.join(attrs)}]" if attrs else ""
        lines.append(f'  "{a}" -- "{b}"{attr_text};')
    if action is not None:
        for curve, pids in sorted(action.free_points.items()):
            for pid in pids:
                w = action.weights[(curve, pid)]
                lines.append(
                    f'  "{pid}" [shape=point width=0.08 xlabel="{w}"];'
                )
                lines.append(f'  "{curve}" -- "{pid}" [style=dotted];')
    lines.append("}")
    return "\n".join(lines) + "\n"
