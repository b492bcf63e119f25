import random
from math import gcd

import pytest

from k3auto.fixtures import load_bundle
from k3auto.rigidity import (
    AnchorOnMobileCurveError,
    CurveConfig,
    GraphAction,
    InconsistentCycleError,
    RigidityError,
    TooManyFixedPointsError,
    canonical_key,
    census,
    compose_actions,
    edge_point_id,
    enumerate_actions,
    graph_automorphisms,
    inverse_action,
    power,
    propagate,
    to_dot,
)

BUNDLE = load_bundle()
CFG = BUNDLE.config


def identity_perm(config):
    return {v: v for v in config.vertices}


def perm_from_cycles(config, cycles):
    perm = identity_perm(config)
    for cycle in cycles:
        for i, v in enumerate(cycle):
            perm[v] = cycle[(i + 1) % len(cycle)]
    return perm


def test_fixture_graph_shape():
    assert len(CFG.vertices) == 20
    assert len(CFG.edges) == 24
    assert CFG.is_connected()
    degree6 = [v for v in CFG.vertices if CFG.degree(v) == 6]
    assert sorted(degree6) == ["s0", "s1"]
    assert CFG.degree("C4") == 3


def test_sigma_action_from_the_anchor():
    act = BUNDLE.actions["sigma"]
    # The central component is pointwise fixed and both sections carry the
    # order-4 rotation exponent.
    assert act.pointwise == frozenset({"C4"})
    assert act.weight_at("s0", edge_point_id("s0", "C1")) == 4
    assert act.weight_at("s1", edge_point_id("s1", "C7")) == 4
    # Hand propagation along the chain: weights 3, 2, 1, 0, 1, 2, 3.
    chain = [act.curve_weight(f"C{i}") for i in range(1, 8)]
    assert chain == [3, 2, 1, 0, 1, 2, 3]


def test_sigma_census_counts():
    cen = census(BUNDLE.actions["sigma"])
    assert (cen.N, cen.k) == (10, 1)
    assert cen.curves == ("C4",)
    on_stable_fiber = [p for p in cen.points if "a5" in p.location or "b5" in p.location]
    assert len(on_stable_fiber) == 3
    rest = [p for p in cen.points if p not in on_stable_fiber]
    assert len(rest) == 7
    kinds = {p.kind for p in cen.points}
    assert kinds == {"transverse-intersection", "tangency", "free-point"}


def test_sigma_alt_census():
    cen = census(BUNDLE.actions["sigma_alt"])
    assert (cen.N, cen.k) == (4, 0)
    kinds = sorted(p.kind for p in cen.points)
    assert kinds == [
        "free-point",
        "free-point",
        "swap-point",
        "transverse-intersection",
    ]


def test_tau_census():
    cen = census(BUNDLE.actions["tau"])
    assert (cen.N, cen.k) == (8, 0)
    swaps = [p for p in cen.points if p.kind == "swap-point"]
    assert len(swaps) == 5  # one per tangent fiber pair


def test_power_of_sigma_squares_to_same_census():
    sq = power(BUNDLE.actions["sigma"], 2)
    cen = sq.census()
    assert (cen.N, cen.k) == (10, 1)
    assert sq.n == 8
    assert sq.order() == 8


def test_power_to_the_order_is_trivial():
    for act in BUNDLE.actions.values():
        triv = power(act, act.order())
        cen = triv.census()
        assert cen.N == 0
        assert cen.k == len(CFG.vertices)


def test_power_composition_law():
    act = BUNDLE.actions["sigma"]
    assert power(power(act, 2), 2) == power(act, 4)
    assert power(power(act, 2), 4) == power(act, 8)


def test_same_squares_for_both_factorizations():
    lhs = power(BUNDLE.actions["sigma_alt"], 2)
    rhs = power(BUNDLE.actions["sigma"], 2)
    assert lhs == rhs


def test_compose_recovers_tau():
    tau = compose_actions(
        BUNDLE.actions["sigma"], inverse_action(BUNDLE.actions["sigma_alt"])
    )
    cen = tau.census()
    assert (cen.N, cen.k) == (8, 0)
    assert tau.c % tau.n == 0
    assert tau == BUNDLE.actions["tau"]


def test_compose_with_inverse_is_trivial():
    act = BUNDLE.actions["sigma"]
    triv = compose_actions(act, inverse_action(act))
    assert triv.census().k == len(CFG.vertices)


def test_compose_matches_power():
    act = BUNDLE.actions["sigma"]
    assert compose_actions(act, act) == power(act, 2)


def test_propagation_is_anchor_independent():
    for act in BUNDLE.actions.values():
        flags = [
            (curve, pid)
            for (curve, pid) in act.weights
            if ":" in pid
        ]
        for curve, pid in flags:
            rebuilt = propagate(
                CFG, act.perm, act.n, act.c, (curve, pid), act.weights[(curve, pid)]
            )
            assert rebuilt == act


def test_volume_rule_holds_everywhere():
    for act in BUNDLE.actions.values():
        act.validate()
        for a, b, mult in act.fixed_edge_points():
            pid = edge_point_id(a, b)
            wa, wb = act.weight_at(a, pid), act.weight_at(b, pid)
            if mult == 1:
                assert (wa + wb) % act.n == act.c % act.n
            else:
                assert wa == wb


def test_every_stable_curve_has_two_fixed_points():
    for act in BUNDLE.actions.values():
        cen = act.census()
        for curve in act.stable_curves():
            if curve in act.pointwise:
                continue
            flags = [pid for (cv, pid) in act.weights if cv == curve]
            assert len(flags) == 2


def test_chain_of_three_with_zero_anchor():
    cfg = CurveConfig(["L", "M", "R"], [("L", "M", 1), ("M", "R", 1)])
    act = propagate(
        cfg, identity_perm(cfg), 16, 1, ("M", edge_point_id("L", "M")), 0
    )
    assert act.pointwise == frozenset({"M"})
    assert act.weight_at("L", edge_point_id("L", "M")) == 1
    assert act.weight_at("R", edge_point_id("M", "R")) == 1
    assert act.weight_at("L", "L.free0") == 15
    cen = act.census()
    assert (cen.N, cen.k) == (2, 1)


def test_triangle_is_inconsistent():
    cfg = CurveConfig(
        ["P", "Q", "R"], [("P", "Q", 1), ("Q", "R", 1), ("P", "R", 1)]
    )
    with pytest.raises(RigidityError):
        propagate(cfg, identity_perm(cfg), 16, 1, ("P", edge_point_id("P", "Q")), 5)
    # Brute-force oracle: no weight assignment at all satisfies the rules.
    # Each curve is parametrized by w (0 meaning pointwise fixed); flags are
    # (w at first point, -w at second point) in the cyclic order.
    found = False
    for wp in range(16):
        for wq in range(16):
            for wr in range(16):
                # points: PQ, QR, PR; curve P carries (wp at PQ, -wp at PR),
                # Q carries (wq at QR, -wq at PQ), R carries (wr at PR, -wr at QR)
                volume = (
                    (wp - wq) % 16 == 1
                    and (wq - wr) % 16 == 1
                    and (wr - wp) % 16 == 1
                )
                if volume:
                    found = True
    assert not found


def test_anchor_on_mobile_curve_rejected():
    perm = perm_from_cycles(CFG, [["a1", "a2", "a3", "a4"], ["b1", "b2", "b3", "b4"]])
    with pytest.raises(AnchorOnMobileCurveError):
        propagate(CFG, perm, 16, 1, ("a1", edge_point_id("a1", "b1")), 3)
    with pytest.raises(AnchorOnMobileCurveError):
        propagate(CFG, perm, 16, 1, ("s0", edge_point_id("s0", "a1")), 3)


def test_too_many_fixed_points_under_identity():
    # Under the identity the section s0 carries six fixed points, so any
    # nonzero anchor weight there is impossible.
    with pytest.raises(TooManyFixedPointsError):
        propagate(
            CFG, identity_perm(CFG), 16, 1, ("s0", edge_point_id("s0", "C1")), 4
        )


def test_wrong_anchor_weight_contradicts():
    perm = perm_from_cycles(CFG, [["a1", "a2", "a3", "a4"], ["b1", "b2", "b3", "b4"]])
    with pytest.raises(RigidityError):
        propagate(CFG, perm, 16, 1, ("s0", edge_point_id("s0", "C1")), 5)


def test_orbit_rule_rejects_double_transpositions():
    # Two 2-cycles of fiber pairs would need a rotation of order 2 on the
    # sections, but the propagated section weight 4 has order 4.
    perm = perm_from_cycles(CFG, [["a1", "a2"], ["b1", "b2"], ["a3", "a4"], ["b3", "b4"]])
    with pytest.raises(RigidityError):
        propagate(CFG, perm, 16, 1, ("C4", edge_point_id("C4", "C8")), 0)


def test_graph_automorphism_group():
    auts = graph_automorphisms(CFG)
    assert len(auts) == 240
    # Group sanity: identity present, closed under composition on a sample,
    # every element is an automorphism, and the generators appear.
    ident = identity_perm(CFG)
    assert ident in auts
    for perm in auts:
        assert CFG.is_automorphism(perm)
    rng = random.Random(1)
    as_tuples = {tuple(sorted(p.items())) for p in auts}
    for _ in range(25):
        g = rng.choice(auts)
        h = rng.choice(auts)
        gh = {v: g[h[v]] for v in CFG.vertices}
        assert tuple(sorted(gh.items())) in as_tuples
    swap_pairs = perm_from_cycles(CFG, [["a1", "a2"], ["b1", "b2"]])
    assert tuple(sorted(swap_pairs.items())) in as_tuples
    arm_swap = perm_from_cycles(
        CFG,
        [[f"a{i}", f"b{i}"] for i in range(1, 6)]
        + [["s0", "s1"], ["C1", "C7"], ["C2", "C6"], ["C3", "C5"]],
    )
    assert tuple(sorted(arm_swap.items())) in as_tuples


def test_enumerate_unique_order16_action():
    classes = enumerate_actions(CFG, 16, 1, census_filter=(10, 1))
    assert len(classes) == 1
    act = classes[0]
    cen = act.census()
    assert (cen.N, cen.k) == (10, 1)
    # In the unique class the two degree-6 vertices carry weight exponent 4.
    assert canonical_key(act) == canonical_key(BUNDLE.actions["sigma"])
    for section in ("s0", "s1"):
        flags = [w for (cv, pid), w in act.weights.items() if cv == section]
        assert sorted(flags) in ([4, 12],)


def test_enumerate_trivial_order():
    classes = enumerate_actions(CFG, 1, 0)
    assert len(classes) == 1
    cen = classes[0].census()
    assert cen.k == 20 and cen.N == 0


def test_census_of_full_power_is_everything_fixed():
    for act in BUNDLE.actions.values():
        cen = census(power(act, act.order()))
        assert cen.N == 0
        assert cen.k == 20


def test_dot_export_is_stable_and_legend_aware():
    act = BUNDLE.actions["sigma"]
    dot1 = to_dot(CFG, act)
    dot2 = to_dot(CFG, act)
    assert dot1 == dot2
    assert '"C4" [style=filled fillcolor=grey];' in dot1
    assert dot1.startswith("graph curves {")
    assert '"a5" -- "b5"' in dot1
    bare = to_dot(CFG)
    assert "fillcolor" not in bare
