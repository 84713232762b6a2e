import itertools
import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from conftest import Z_PUNCTURED, Z_TORUS
from mcgpres.canon import (Relabeling, all_relabelings, apply, automorphisms,
                           brute_force_automorphisms, brute_force_canonical, canonical,
                           canonical_form, isomorphism_by_propagation, orbit_witness)
from mcgpres.fatgraph import OrderedGraph, boundary_words, invariants, random_graph
from mcgpres.moves import collapse
from oracles import all_labeled_graphs

G = OrderedGraph.parse


def random_relabeling(edge_ids, rng):
    ids = sorted(edge_ids)
    img = ids[:]
    rng.shuffle(img)
    return Relabeling({e: d * rng.choice((1, -1)) for e, d in zip(ids, img)})


def orbit_invariants(g):
    inv = invariants(g)
    bd = boundary_words(g)
    return (inv, len(bd.w0), sorted(len(c) for c in bd.cycles), sorted(len(s) for s in g.stars))


def test_relabeling_text_form():
    g = Relabeling.parse("e1->e3, e3->-e4, e4->-e2, e2->e1")
    assert str(g) == "e1->e3, e2->e1, e3->-e4, e4->-e2"
    assert Relabeling.parse(str(g)) == g
    assert g.perm == {1: 3, 2: 1, 3: 4, 4: 2}
    assert g.flips == {3, 4}
    with pytest.raises(ValueError):
        Relabeling({1: 2, 2: -2})


def test_relabeling_group_laws():
    rng = random.Random(3)
    ids = range(1, 6)
    for _ in range(50):
        a, b, c = (random_relabeling(ids, rng) for _ in range(3))
        assert a.compose(b).compose(c) == a.compose(b.compose(c))
        assert a.compose(a.inverse()).is_identity()
        assert a.inverse().compose(a).is_identity()
        for x in (1, -1, 3, -5):
            assert a(-x) == -a(x)
            assert a.compose(b)(x) == a(b(x))


def test_apply_examples(torus_z):
    assert apply(Relabeling.identity(torus_z.edge_ids), torus_z) == torus_z
    z1, z2 = collapse(torus_z, 1), collapse(torus_z, 2)
    # the worked example lists the images of e1, e3, e4; the image of e2 is forced
    partial = {1: 3, 3: -4, 4: -2}
    matches = [g for g in all_relabelings(z2.edge_ids, z1.edge_ids)
               if all(g(e) == d for e, d in partial.items()) and apply(g, z2) == z1]
    assert [str(g) for g in matches] == ["e1->e3, e3->-e4, e4->-e2"]


def test_apply_flip_of_loop():
    g = G("(e1,e2);(-e1,e3,-e3,e4,e5),(-e2,-e5,-e4)")
    h = apply(Relabeling({1: 1, 2: 2, 3: -3, 4: 4, 5: 5}), g)
    assert h == G("(e1,e2);(-e1,-e3,e3,e4,e5),(-e2,-e5,-e4)")


def test_apply_domain_mismatch(torus_z):
    with pytest.raises(ValueError):
        apply(Relabeling({1: 1, 2: 2}), torus_z)


def test_canonical_examples(torus_z):
    z = {i: collapse(torus_z, i) for i in (1, 2, 3, 4)}
    assert canonical(z[1]) == canonical(z[2])
    assert canonical(z[3]) == canonical(z[4])
    assert canonical(z[1]) != canonical(z[3])
    grand = [collapse(z[i], j) for i, j in [(1, 2), (1, 3), (1, 4), (3, 1), (3, 2)]]
    assert len({canonical(x) for x in grand}) == 1


def test_orbit_witness_from_worked_example():
    z1, z2 = G(Z_PUNCTURED[0]), G(Z_PUNCTURED[1])
    w = orbit_witness(collapse(z1, 4), collapse(z2, 2))
    assert w is not None
    assert apply(w, collapse(z2, 2)) == collapse(z1, 4)
    assert {e: w(e) for e in (1, 3, 4, 5)} == {1: 1, 3: -3, 4: -5, 5: -2}


def test_orbit_witness_on_self_and_distinct():
    z = G(Z_TORUS)
    w = orbit_witness(z, z)
    assert w is not None and w.is_identity()
    assert orbit_witness(G(Z_PUNCTURED[0]), G(Z_PUNCTURED[2])) is None


def test_automorphisms_examples():
    rose = G("(e1,-e1)")
    assert len(brute_force_automorphisms(rose)) == 1
    assert len(automorphisms(rose)) == 1
    z1 = G(Z_PUNCTURED[0])
    auts = brute_force_automorphisms(z1)
    assert [str(a) for a in auts] == ["e1->e1, e2->e2, e3->e3, e4->e4, e5->e5"]
    assert automorphisms(z1) == auts


def test_exhaustive_orbits_up_to_four_edges():
    # every labeled graph with k <= 4 edges: orbits have full size and the
    # canonical form is the least encoding in the orbit
    for k in (1, 2, 3, 4):
        graphs = set(all_labeled_graphs(k))
        group = list(all_relabelings(range(1, k + 1)))
        orbits = 0
        while graphs:
            g = graphs.pop()
            orbit = {apply(r, g) for r in group}
            assert len(orbit) == len(group)
            rep = min(orbit, key=OrderedGraph.key)
            for h in orbit:
                assert canonical(h) == rep
            graphs -= orbit
            orbits += 1
        assert orbits == {1: 1, 2: 3, 3: 20, 4: 178}[k]


def test_orbit_witness_matches_exhaustive_search():
    rng = random.Random(11)
    pool = [random_graph(k, rng) for k in (3, 4, 5) for _ in range(6)]
    pool += [apply(random_relabeling(g.edge_ids, rng), g) for g in pool[:8]]
    for g1, g2 in itertools.combinations(pool, 2):
        if g1.edge_count != g2.edge_count:
            continue
        same = brute_force_canonical(g1) == brute_force_canonical(g2)
        w = orbit_witness(g1, g2)
        assert (w is not None) == same
        assert (isomorphism_by_propagation(g1, g2) is not None) == same
        if same:
            assert apply(w, g2) == g1
            assert orbit_invariants(g1) == orbit_invariants(g2)


@settings(max_examples=300, deadline=None)
@given(k=st.integers(1, 8), seed=st.integers(0, 2**32 - 1))
def test_canonical_form_is_orbit_invariant(k, seed):
    rng = random.Random(seed)
    g = random_graph(k, rng)
    h = apply(random_relabeling(g.edge_ids, rng), g)
    rep, w = canonical_form(g)
    assert apply(w, g) == rep
    assert canonical(h) == rep
    v = orbit_witness(g, h)
    assert v is not None and apply(v, h) == g
    p = isomorphism_by_propagation(g, h)
    assert p is not None and apply(p, h) == g
    assert automorphisms(g) == [Relabeling.identity(g.edge_ids)]


def test_boundary_cycle_multiset_separates_orbits():
    # graphs with different cycle-length multisets are never in one orbit
    by_class = Counter()
    for g in all_labeled_graphs(3):
        by_class[(canonical(g), tuple(sorted(len(c) for c in boundary_words(g).cycles)))] += 1
    reps = Counter(rep for rep, _ in by_class)
    assert all(n == 1 for n in reps.values())
