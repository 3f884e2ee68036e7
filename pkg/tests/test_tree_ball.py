import random
from collections import Counter

import pytest

from gbstools.chains import ChainSpec, family_spec, make_chain
from gbstools.errors import BallTooLargeError, GbsError
from gbstools.graph import Edge, GbsGraph, is_reduced, reverse
from gbstools.moves import collapse, collapsible_edges, essential_vertices, subdivide
from gbstools.tree_ball import (
    ball_table,
    classify_fold,
    expand_ball,
    format_address,
    inessential_tree_vertices,
    interior_valences,
    level_counts,
    parse_address,
    projected_size,
)

from oracles import random_graph

BS23 = GbsGraph(["v"], [Edge("e", "v", "v", 2, 3)])
CHAIN3 = make_chain(ChainSpec((2, 2, 2), (3, 3, 3)))


def test_bs23_root_valence():
    b = expand_ball(BS23, "v", 1)
    assert b.valence(()) == 2 + 3
    assert interior_valences(b) == Counter({("v", 5): 1})


def test_chain_root_valence_is_q0():
    b = expand_ball(CHAIN3, "v0", 1)
    assert b.valence(()) == 2


def test_radius_zero():
    b = expand_ball(BS23, "v", 0)
    assert len(b) == 1 and b.frontier == [()]
    with pytest.raises(GbsError):
        interior_valences(b)


def test_negative_radius():
    with pytest.raises(GbsError):
        expand_ball(BS23, "v", -1)


def test_valence_five_family_ball():
    g = make_chain(family_spec(3))
    b = expand_ball(g, "v1", 3)
    assert {val for (_, val) in interior_valences(b)} == {5}


def test_chain_valences_by_position():
    b = expand_ball(CHAIN3, "v1", 2)
    expected = {"v0": 2, "v1": 5, "v2": 5, "v3": 3}
    for (v, val) in interior_valences(b):
        assert val == expected[v]


def test_trivial_graph_ball():
    b = expand_ball(GbsGraph(["v"]), "v", 3)
    assert interior_valences(b) == Counter({("v", 0): 1})


def test_interior_valence_matches_label_sums():
    rng = random.Random(1)
    for _ in range(40):
        g = random_graph(rng, 3)
        for base in g.vertices:
            b = expand_ball(g, base, 2)
            for (v, val) in interior_valences(b):
                assert val == sum(abs(g.label(f)) for f in g.ends_at(v))


def test_addresses_prefix_closed():
    b = expand_ball(CHAIN3, "v1", 3)
    for a in b.vertices:
        if a:
            assert a[:-1] in b.image
            f, c = a[-1]
            assert b.image[a] == CHAIN3.terminus(f) and 0 <= c < abs(CHAIN3.label(f))


def test_vertex_count_recurrence():
    rng = random.Random(2)
    for _ in range(30):
        g = random_graph(rng, 3)
        base = g.vertices[0]
        prev = expand_ball(g, base, 1)
        for r in range(2, 4):
            b = expand_ball(g, base, r)
            full = {v: sum(abs(g.label(f)) for f in g.ends_at(v)) for v in g.vertices}
            assert len(b) == len(prev) + sum(full[prev.image[a]] - 1 for a in prev.frontier)
            assert len(b) == projected_size(g, base, r)
            prev = b


def test_reduced_ball_frontier_grows():
    for g in (make_chain(family_spec(4)), BS23, CHAIN3):
        assert is_reduced(g)
        counts = level_counts(expand_ball(g, "v" if "v" in g.vertices else "v1", 5))
        assert all(b > a for a, b in zip(counts[1:], counts[2:]))


def test_size_guard(monkeypatch):
    with pytest.raises(BallTooLargeError):
        expand_ball(BS23, "v", 12, cap=1000)
    monkeypatch.setenv("GBS_BALL_CAP", "50")
    with pytest.raises(BallTooLargeError, match="GBS_BALL_CAP"):
        expand_ball(BS23, "v", 4)
    monkeypatch.setenv("GBS_BALL_CAP", "100000")
    assert len(expand_ball(BS23, "v", 4)) == projected_size(BS23, "v", 4)


# -- inessential vertices ------------------------------------------------------------


def test_subdivision_vertex_lifts_inessential():
    h, rec = subdivide(BS23, "e")
    x = rec.data["new_vertex"]
    b = expand_ball(h, "v", 3)
    lifts = {a for a in b.image if b.image[a] == x and b.is_interior(a)}
    assert lifts and inessential_tree_vertices(b) == lifts


def test_reduced_chain_has_no_inessential_lifts():
    assert inessential_tree_vertices(expand_ball(make_chain(family_spec(3)), "v0", 3)) == set()


def test_valence_two_with_label_two_is_essential():
    g = GbsGraph(["x", "a"], [Edge("p", "x", "a", 2, 3)])
    b = expand_ball(g, "x", 2)
    assert b.valence(()) == 2
    assert () not in inessential_tree_vertices(b)


def test_inessential_agrees_with_quotient():
    rng = random.Random(3)
    for _ in range(40):
        g = random_graph(rng, 3, labels=(1, -1, 1, 2))
        ess = essential_vertices(g)
        for base in g.vertices:
            b = expand_ball(g, base, 2)
            ines = inessential_tree_vertices(b)
            for a in b.image:
                if b.is_interior(a):
                    assert (a in ines) == (b.image[a] not in ess)


# -- commutation with collapse ---------------------------------------------------------


def contracted_valences(g, e, base, r, cap=None):
    """Contract every tree edge over ``e`` in a ball of ``g``; return the set of
    (vertex of the collapsed graph, valence) over fully interior classes."""
    b = expand_ball(g, base, r, cap=cap)
    parent = {a: a for a in b.image}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for a in b.image:
        if a and a[-1][0] in (e, reverse(e)):
            parent[find(a)] = find(a[:-1])
    classes = {}
    for a in b.image:
        classes.setdefault(find(a), []).append(a)
    w = g.terminus(e)
    out = set()
    for members in classes.values():
        if not all(b.is_interior(a) for a in members):
            continue
        inside = sum(1 for a in members if a and a[-1][0] in (e, reverse(e)) and a[:-1] in members)
        val = sum(b.valence(a) for a in members) - 2 * inside
        img = {b.image[a] for a in members}
        v = w if g.origin(e) in img else img.pop()
        out.add((v, val))
    return out


def test_collapse_commutes_with_ball_expansion():
    rng = random.Random(4)
    checked = 0
    while checked < 40:
        g = random_graph(rng, 4)
        cands = collapsible_edges(g)
        if not cands:
            continue
        e = rng.choice(cands)
        h, _ = collapse(g, e)
        for r in (1, 2):
            try:
                mine = set(interior_valences(expand_ball(h, g.terminus(e), r)))
                theirs = contracted_valences(g, e, g.terminus(e), 2 * r + 1, cap=20000)
            except BallTooLargeError:
                continue
            assert mine and mine <= theirs
            full = {(v, sum(abs(h.label(f)) for f in h.ends_at(v))) for v in h.vertices}
            assert theirs <= full
        checked += 1


def test_collapse_example_valence_six():
    g = GbsGraph(["u", "v", "w"], [Edge("e", "v", "w", 1, 3), Edge("f", "v", "u", 2, 5)])
    h, _ = collapse(g, "e")
    assert ("w", 6) in contracted_valences(g, "e", "w", 3)
    assert ("w", 6) in interior_valences(expand_ball(h, "w", 1))


# -- folds -------------------------------------------------------------------------


def test_fold_siblings_over_bs23_loop():
    b = expand_ball(BS23, "v", 2)
    assert classify_fold(b, ((), (("e", 0),)), ((), (("e", 1),))) == "IIB"


def test_fold_at_interior_chain_vertex():
    b = expand_ball(CHAIN3, "v1", 2)
    back = ((), (("~e1", 0),))
    fwd = ((), (("e2", 0),))
    assert classify_fold(b, back, fwd) == "IA"


def test_fold_siblings_at_chain_start():
    b = expand_ball(CHAIN3, "v0", 2)
    assert classify_fold(b, ((), (("e1", 0),)), ((), (("e1", 1),))) == "IIA"


def test_fold_type_III_and_B():
    g = GbsGraph(["v", "u"], [Edge("p", "v", "u", 2, 3), Edge("q", "v", "u", 2, 5)])
    b = expand_ball(g, "v", 1)
    assert classify_fold(b, ((), (("p", 0),)), ((), (("q", 0),))) == "IIIA"
    b = expand_ball(BS23, "v", 1)
    assert classify_fold(b, ((), (("e", 0),)), ((), (("~e", 0),))) == "IIIB"
    g = GbsGraph(["v", "u"], [Edge("p", "v", "u", 2, 3), Edge("t", "v", "v", 2, 3)])
    b = expand_ball(g, "v", 1)
    assert classify_fold(b, ((), (("p", 0),)), ((), (("t", 0),))) == "IB"


def test_fold_type_A_criterion_via_images():
    b = expand_ball(CHAIN3, "v1", 3)
    for o in b.vertices:
        if not b.is_interior(o):
            continue
        nbrs = [o + (s,) for s in [a[-1] for a in b.image if a[:-1] == o and a]]
        if o:
            nbrs.append(o[:-1])
        for i, u1 in enumerate(nbrs):
            for u2 in nbrs[i + 1:]:
                t = classify_fold(b, (o, u1), (o, u2))
                a_type = b.image[o] not in (b.image[u1], b.image[u2])
                assert t.endswith("A") == a_type


def test_fold_errors():
    b = expand_ball(CHAIN3, "v1", 2)
    with pytest.raises(GbsError, match="share an origin"):
        classify_fold(b, ((), (("e2", 0),)), ((("e2", 0),), (("e2", 0), ("e3", 0))))
    with pytest.raises(GbsError, match="not adjacent"):
        classify_fold(b, ((), (("e2", 0), ("e3", 0))), ((), (("e2", 0),)))
    assert classify_fold(b, ((), (("e2", 0),)), ((), (("e2", 0),))) == "degenerate"


def test_address_text_round_trip():
    b = expand_ball(BS23, "v", 2)
    for a in b.vertices:
        assert parse_address(format_address(a)) == a
    rows = ball_table(b)
    assert rows[0] == (".", "v", 0, "5")
    assert all(r[3] == "-" for r in rows if r[2] == 2)
