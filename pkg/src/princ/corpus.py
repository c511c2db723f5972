"""Test corpora: bounded orders up to isomorphism, order-triples, random lattices and homs."""

from __future__ import annotations

import itertools
import random
from typing import Iterator

import numpy as np

from .congruence import all_congruences
from .errors import NotIsotone
from .lattice import FiniteLattice, LatticeHom, lattice_from_order, quotient
from .order import BoundedOrder, IsotoneMap, OrderTriple, isotone_maps, validate_bounded_order

INNER_NAMES = "pqrstuvw"


def _closed(k: int, rel: set) -> bool:
    return all((i, l) in rel for i, j in rel for jj, l in rel if j == jj)


def _canonical(k: int, rel: frozenset) -> tuple:
    return min(tuple(sorted((perm[i], perm[j]) for i, j in rel))
               for perm in itertools.permutations(range(k)))


def inner_posets(k: int) -> list:
    """Strict orders on range(k) up to isomorphism, as sets of pairs i < j.

    Every finite order has a natural labelling, so it suffices to search
    transitively closed subsets of {(i, j) : i < j}.
    """
    slots = [(i, j) for i in range(k) for j in range(i + 1, k)]
    found = {}
    for bits in range(1 << len(slots)):
        rel = frozenset(s for n, s in enumerate(slots) if bits >> n & 1)
        if not _closed(k, rel):
            continue
        key = _canonical(k, rel)
        found.setdefault(key, rel)
    return sorted(found.values(), key=lambda r: (len(r), sorted(r)))


def bounded_order_from_inner(k: int, rel, names=INNER_NAMES) -> BoundedOrder:
    inner = list(names[:k])
    pairs = [("0", x) for x in inner] + [(x, "1") for x in inner] + [("0", "1")]
    pairs += [(inner[i], inner[j]) for i, j in rel]
    return validate_bounded_order(["0", "1"] + inner, pairs)


def bounded_orders(max_size: int, min_size: int = 2) -> list:
    """All bounded orders with min_size..max_size elements, one per isomorphism class."""
    out = []
    for n in range(max(min_size, 2), max_size + 1):
        out += [bounded_order_from_inner(n - 2, rel) for rel in inner_posets(n - 2)]
    return out


def order_triples(max_p: int, max_q: int | None = None, min_size: int = 2) -> list:
    """Every (P, Q, psi) with P, Q from the iso-class lists and psi any isotone {0,1}-map.

    Triples are listed per pair of representatives, so two maps related by an
    automorphism both appear; that only repeats work.
    """
    max_q = max_p if max_q is None else max_q
    out = []
    for P in bounded_orders(max_p, min_size):
        for Q in bounded_orders(max_q, min_size):
            out += [OrderTriple(P, Q, f) for f in isotone_maps(P, Q)]
    return out


def random_order_triple(rng: random.Random, size_p: int, size_q: int) -> OrderTriple:
    P = random_bounded_order(rng, size_p)
    Q = random_bounded_order(rng, size_q)
    maps = list(isotone_maps(P, Q))
    return OrderTriple(P, Q, rng.choice(maps))


def random_bounded_order(rng: random.Random, size: int, density: float | None = None) -> BoundedOrder:
    k = size - 2
    density = rng.random() if density is None else density
    rel = {(i, j) for i in range(k) for j in range(i + 1, k) if rng.random() < density}
    rel = _transitive(rel)
    perm = list(range(k))
    rng.shuffle(perm)
    return bounded_order_from_inner(k, {(perm[i], perm[j]) for i, j in rel})


def _transitive(rel: set) -> set:
    rel = set(rel)
    while True:
        new = {(i, l) for i, j in rel for jj, l in rel if j == jj} - rel
        if not new:
            return rel
        rel |= new


# ----------------------------------------------------------------------
# random lattices


def macneille_completion(k: int, rel) -> FiniteLattice:
    """Dedekind-MacNeille completion of a strict order on range(k).

    Elements are the cuts (sets closed under lower-of-upper), named by their
    members; the empty cut is ``0`` and the full one ``1``.
    """
    leq = np.eye(k, dtype=bool)
    for i, j in rel:
        leq[i, j] = True
    cuts = set()
    for bits in range(1 << k):
        s = [i for i in range(k) if bits >> i & 1]
        upper = np.all(leq[s, :], axis=0) if s else np.ones(k, dtype=bool)
        lower = np.all(leq[:, upper], axis=1) if upper.any() else np.ones(k, dtype=bool)
        cuts.add(frozenset(np.flatnonzero(lower).tolist()))
    cuts.add(frozenset())
    cuts.add(frozenset(range(k)))
    full = frozenset(range(k))

    def name(c):
        if not c:
            return "0"
        if c == full:
            return "1"
        return "e" + "".join(map(str, sorted(c)))

    cuts = sorted(cuts, key=lambda c: (len(c), sorted(c)))
    pairs = [(name(a), name(b)) for a in cuts for b in cuts if a < b]
    return lattice_from_order(validate_bounded_order([name(c) for c in cuts], pairs))


def random_lattice(rng: random.Random, max_size: int = 8, min_size: int = 2) -> FiniteLattice:
    """Completion of a random order, redrawn until the size fits."""
    while True:
        k = rng.randint(1, max(1, max_size - 2))
        density = rng.random()
        rel = _transitive({(i, j) for i in range(k) for j in range(i + 1, k) if rng.random() < density})
        L = macneille_completion(k, rel)
        if min_size <= len(L) <= max_size:
            return L


def random_order_lattices(rng: random.Random, count: int, max_size: int = 8) -> list:
    """Draw ``count`` random bounded orders of size <= max_size; keep the lattices."""
    out = []
    from .errors import NotALattice
    for _ in range(count):
        P = random_bounded_order(rng, rng.randint(2, max_size))
        try:
            out.append(lattice_from_order(P))
        except NotALattice:
            pass
    return out


# ----------------------------------------------------------------------
# homomorphisms


def lattice_homs(K: FiniteLattice, L: FiniteLattice, limit: int | None = None) -> Iterator[LatticeHom]:
    """{0,1}-homomorphisms K -> L by backtracking along a linear extension of K."""
    n = len(K)
    order = sorted(range(n), key=lambda i: int(K.order.leq[:, i].sum()))
    pos = {v: k for k, v in enumerate(order)}
    b, t = K.idx(K.bottom), K.idx(K.top)
    img = [-1] * n
    KM, KJ, LM, LJ = K.meet, K.join, L.meet, L.join
    count = 0

    def consistent(i):
        # every assigned triple (x, y, x op y) that involves i must commute
        a = np.array(img)
        done = a >= 0
        for tab, ltab in ((KM, LM), (KJ, LJ)):
            r = tab
            mask = done[:, None] & done[None, :] & done[r]
            mask &= (np.arange(n)[:, None] == i) | (np.arange(n)[None, :] == i) | (r == i)
            xs, ys = np.nonzero(mask)
            if len(xs) and not np.array_equal(a[r[xs, ys]], ltab[a[xs], a[ys]]):
                return False
        return True

    def extend(k):
        nonlocal count
        if k == n:
            count += 1
            yield LatticeHom(K, L, {K.elements[i]: L.elements[img[i]] for i in range(n)})
            return
        i = order[k]
        if i == b:
            choices = [L.idx(L.bottom)]
        elif i == t:
            choices = [L.idx(L.top)]
        else:
            choices = range(len(L))
        for c in choices:
            img[i] = c
            if consistent(i):
                yield from extend(k + 1)
                if limit is not None and count >= limit:
                    img[i] = -1
                    return
            img[i] = -1

    yield from extend(0)


def random_hom(rng: random.Random, max_size: int = 8, tries: int = 50) -> LatticeHom:
    """A random {0,1}-hom between random lattices; falls back to a quotient map."""
    for _ in range(tries):
        K = random_lattice(rng, max_size)
        L = random_lattice(rng, max_size)
        homs = list(lattice_homs(K, L, limit=200))
        if homs:
            return rng.choice(homs)
    return random_surjective_hom(rng, max_size)


def random_surjective_hom(rng: random.Random, max_size: int = 8) -> LatticeHom:
    """Quotient map of a random lattice by a random non-total congruence."""
    K = random_lattice(rng, max_size)
    cons = sorted((c for c in all_congruences(K) if not c.is_total), key=lambda c: c._key)
    theta = rng.choice(cons)
    return quotient(K, theta)[1]
