import itertools
import random

import pytest

import oracle as O
from conftest import as_oracle
from princ.corpus import (bounded_orders, inner_posets, lattice_homs, macneille_completion, order_triples,
                          random_hom, random_lattice, random_order_lattices, random_surjective_hom)
from princ.lattice import named_lattice, verify_lattice_axioms


def test_inner_poset_counts():
    # unlabelled posets on 0..5 points (OEIS A000112)
    assert [len(inner_posets(k)) for k in range(6)] == [1, 1, 2, 5, 16, 63]


def test_bounded_order_and_triple_counts():
    assert len(bounded_orders(5)) == 1 + 1 + 2 + 5
    assert len(order_triples(3)) == 7
    assert len(order_triples(4)) == 90


def test_triples_are_isotone_and_distinct():
    for t in order_triples(3):
        for p in t.p.elements:
            for q in t.p.elements:
                if t.p.le(p, q):
                    assert t.q.le(t.psi(p), t.psi(q))


def brute_homs(K, L):
    """Every {0,1}-map K -> L preserving meet and join, by plain enumeration."""
    k, l = as_oracle(K), as_oracle(L)
    inner = [x for x in K.elements if x not in (K.bottom, K.top)]
    found = set()
    for imgs in itertools.product(L.elements, repeat=len(inner)):
        f = dict(zip(inner, imgs))
        f[K.bottom], f[K.top] = L.bottom, L.top
        if all(f[k.m(x, y)] == l.m(f[x], f[y]) and f[k.j(x, y)] == l.j(f[x], f[y])
               for x in K.elements for y in K.elements):
            found.add(tuple(sorted(f.items())))
    return found


@pytest.mark.parametrize("src,dst", [("C3", "B2"), ("B2", "C4"), ("N5", "C3"), ("M3", "M3"), ("N5", "N5"),
                                     ("C4", "N5"), ("B2", "M3")])
def test_lattice_homs_match_brute_force(src, dst):
    K, L = named_lattice(src), named_lattice(dst)
    got = {tuple(sorted(h.assignment.items())) for h in lattice_homs(K, L)}
    assert got == brute_homs(K, L)


def test_lattice_homs_random():
    rng = random.Random(3)
    for _ in range(15):
        K, L = random_lattice(rng, 6), random_lattice(rng, 6)
        got = {tuple(sorted(h.assignment.items())) for h in lattice_homs(K, L)}
        assert got == brute_homs(K, L)


def test_macneille_of_antichain_and_chain():
    M = macneille_completion(3, set())
    assert len(M) == 5 and len(O.all_congruences(as_oracle(M))) == 2
    C = macneille_completion(3, {(0, 1), (1, 2), (0, 2)})
    assert len(C) == 4  # the chain already has a top; only 0 is added
    verify_lattice_axioms(C, full=True)


def test_random_lattices_are_lattices():
    rng = random.Random(11)
    for _ in range(30):
        L = random_lattice(rng, 8)
        assert 2 <= len(L) <= 8
        verify_lattice_axioms(L, full=True)
    for L in random_order_lattices(rng, 40, 7):
        verify_lattice_axioms(L, full=True)


def test_random_homs():
    rng = random.Random(5)
    for _ in range(10):
        h = random_hom(rng, 6)
        assert h.source.bottom in h.assignment
        s = random_surjective_hom(rng, 6)
        assert s.is_surjective()
