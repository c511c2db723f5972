import pytest

import oracle as O
from conftest import as_oracle
from princ.congruence import Congruence, principal_congruence
from princ.errors import BoundElement, NotACongruence, NotAHomomorphism, NotALattice
from princ.lattice import (FIXTURES, LatticeHom, chain_lattice, eval_alternating_term, generated_sublattice,
                           glue, is_01_sublattice, is_universal_complement, lattice_from_covers,
                           lattice_from_order, named_lattice, quotient, subset_is_01_sublattice,
                           verify_lattice_axioms)
from princ.order import validate_bounded_order


@pytest.mark.parametrize("name", FIXTURES)
def test_tables_match_oracle(name):
    L = named_lattice(name)
    ref = as_oracle(L)
    for x in L.elements:
        for y in L.elements:
            assert L.m(x, y) == ref.m(x, y)
            assert L.j(x, y) == ref.j(x, y)
    verify_lattice_axioms(L, full=True)


def test_fixture_sizes():
    assert [len(named_lattice(n)) for n in FIXTURES] == [2, 3, 4, 5, 4, 5, 5]


def test_not_a_lattice_names_pair():
    P = validate_bounded_order(["0", "a", "b", "c", "d", "1"],
                               [("0", "a"), ("0", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"),
                                ("c", "1"), ("d", "1")])
    with pytest.raises(NotALattice) as err:
        lattice_from_order(P)
    assert set(err.value.pair) in ({"a", "b"}, {"c", "d"})


def test_alternating_term_example(n5):
    ps = ["o", "b", "o", "a"]
    assert eval_alternating_term(n5, "c", ps) == "o"
    assert eval_alternating_term(n5, "i", ps) == "a"
    assert eval_alternating_term(n5, "c", []) == "c"


def test_hom_checks():
    C3, C2 = named_lattice("C3"), named_lattice("C2")
    f = LatticeHom(C3, C2, {"o": "c0", "m": "c1", "i": "c1"})
    assert f.is_surjective()
    with pytest.raises(NotAHomomorphism):
        LatticeHom(C3, C2, {"o": "c0", "m": "c0", "i": "c0"})
    with pytest.raises(NotAHomomorphism):
        # order-preserving, but a v b = 1 goes to c3 while c1 v c2 = c2
        LatticeHom(named_lattice("B2"), named_lattice("C4"), {"0": "c0", "a": "c1", "b": "c2", "1": "c3"})
    g = LatticeHom(C2, C2, {"c0": "c0", "c1": "c1"})
    assert f.then(g).assignment == f.assignment


def test_quotient_of_n5(n5):
    Q, proj = quotient(n5, principal_congruence(n5, "o", "c"))
    assert len(Q) == 2
    assert proj("a") == proj("b") == proj("i")
    with pytest.raises(NotACongruence):
        quotient(n5, Congruence.from_blocks(n5, [["o", "a"], ["b"], ["c"], ["i"]]))


def test_sublattices(n5):
    assert subset_is_01_sublattice(n5, {"o", "a", "b", "i"})
    assert not subset_is_01_sublattice(n5, {"o", "a", "c"})
    assert generated_sublattice(n5, ["a", "c"]) == frozenset({"o", "a", "c", "i"})
    C4 = chain_lattice(4, ["o", "a", "b", "i"])
    assert is_01_sublattice(C4, n5, {x: x for x in C4.elements})
    assert not is_01_sublattice(C4, n5, {"o": "o", "a": "a", "b": "c", "i": "i"})


def test_glue_and_universal_complements():
    L, emb = glue({"A": named_lattice("C3"), "B": named_lattice("C2"), "C": named_lattice("C3")})
    assert len(L) == 4
    assert emb["A"]["m"] == "A.m" and emb["B"]["c0"] == "0"
    assert is_universal_complement(L, "A.m") and is_universal_complement(L, "C.m")
    with pytest.raises(BoundElement):
        is_universal_complement(L, "0")
    ref = as_oracle(L)
    assert ref.j("A.m", "C.m") == "1" and ref.m("A.m", "C.m") == "0"


def test_lattice_from_covers_labels():
    L = lattice_from_covers(["0", "x", "1"], [("0", "x"), ("x", "1")], labels={"a:p": "x"})
    assert L.label("a:p") == "x"
    assert L.labels_of("x") == ["a:p"]
