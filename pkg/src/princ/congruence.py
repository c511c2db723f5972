"""Congruences of finite lattices.

A congruence is stored as a canonical label vector: element ``i`` sits in
block ``labels[i]`` and blocks are numbered in order of their least member.
Two congruences of the same lattice are equal iff their label vectors are.

``principal_congruence`` is the substitution-closure fixpoint.  Whole
congruence lattices go through the cover decomposition instead: every
congruence of a finite lattice is determined by the covers it collapses,
and since cover congruences are join-prime in the distributive lattice
Con L, joins are unions of collapsed-cover sets.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import MissingLabels, SizeLimitExceeded, WellDefinednessViolation
from .lattice import FiniteLattice, Interval, LatticeHom, eval_alternating_term
from .order import BoundedOrder, DownSet, IsotoneMap

ORACLE_SIZE_LIMIT = 10


def canonical_labels(lab) -> np.ndarray:
    """Renumber blocks in order of first occurrence."""
    lab = np.asarray(lab)
    _, first, inv = np.unique(lab, return_index=True, return_inverse=True)
    rank = np.argsort(np.argsort(first))
    return rank[inv].astype(np.int64)


class Congruence:
    __slots__ = ("lattice", "labels", "_key")

    def __init__(self, lattice: FiniteLattice, labels):
        self.lattice = lattice
        self.labels = canonical_labels(labels)
        self.labels.flags.writeable = False
        self._key = self.labels.tobytes()

    @classmethod
    def from_blocks(cls, L: FiniteLattice, blocks) -> "Congruence":
        lab = np.arange(len(L))
        for k, block in enumerate(blocks):
            for x in block:
                lab[L.idx(x)] = len(L) + k
        return cls(L, lab)

    @property
    def blocks(self) -> tuple:
        els = self.lattice.elements
        k = int(self.labels.max()) + 1
        return tuple(tuple(els[i] for i in np.flatnonzero(self.labels == b)) for b in range(k))

    def related(self, x, y) -> bool:
        L = self.lattice
        return bool(self.labels[L.idx(x)] == self.labels[L.idx(y)])

    def __le__(self, other: "Congruence") -> bool:
        """Refinement: every block of self lies inside a block of other."""
        a, b = self.labels, other.labels
        rep = np.zeros(int(a.max()) + 1, dtype=np.int64)
        rep[a] = b
        return bool(np.array_equal(rep[a], b))

    def __lt__(self, other):
        return self <= other and self != other

    def __eq__(self, other):
        if not isinstance(other, Congruence):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    @property
    def is_trivial(self) -> bool:
        return int(self.labels.max()) + 1 == len(self.labels)

    @property
    def is_total(self) -> bool:
        return int(self.labels.max()) == 0

    def __repr__(self):
        return "Con<" + " | ".join(",".join(b) for b in self.blocks) + ">"


def delta(L: FiniteLattice) -> Congruence:
    return Congruence(L, np.arange(len(L)))


def nabla(L: FiniteLattice) -> Congruence:
    return Congruence(L, np.zeros(len(L), dtype=np.int64))


# ----------------------------------------------------------------------
# closure


def _merge(lab: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Merge the blocks a[k] ~ b[k] (transitively) in the label vector."""
    k = int(lab.max()) + 1
    g = coo_matrix((np.ones(len(a)), (a, b)), shape=(k, k))
    _, comp = connected_components(g, directed=False)
    return comp[lab]


def _closure(L: FiniteLattice, lab: np.ndarray) -> np.ndarray:
    """Least congruence containing the partition ``lab`` (substitution fixpoint)."""
    M, J = L.meet, L.join
    while True:
        lab = canonical_labels(lab)
        rep = np.zeros(int(lab.max()) + 1, dtype=np.int64)
        rep[lab[::-1]] = np.arange(len(lab))[::-1]   # least member of each block
        r = rep[lab]
        news_a, news_b = [], []
        for T in (J, M):
            A = lab[T]
            B = A[r]
            bad = A != B
            if bad.any():
                news_a.append(A[bad])
                news_b.append(B[bad])
        if not news_a:
            return lab
        lab = _merge(lab, np.concatenate(news_a), np.concatenate(news_b))


def is_congruence_labels(L: FiniteLattice, lab) -> bool:
    lab = np.asarray(lab)
    for T in (L.join, L.meet):
        A = lab[T]
        # rows of equivalent elements must agree blockwise
        first = {}
        for i, b in enumerate(lab):
            if b in first:
                if not np.array_equal(A[i], A[first[b]]):
                    return False
            else:
                first[b] = i
    return True


def principal_congruence(L: FiniteLattice, a, b) -> Congruence:
    """Smallest congruence collapsing a and b."""
    lo, hi = L.idx(L.m(a, b)), L.idx(L.j(a, b))
    lab = np.arange(len(L))
    lab[hi] = lo
    return Congruence(L, _closure(L, lab))


def congruence_generated(L: FiniteLattice, pairs: Iterable) -> Congruence:
    lab = np.arange(len(L))
    pairs = list(pairs)
    if pairs:
        a = np.array([L.idx(x) for x, _ in pairs])
        b = np.array([L.idx(y) for _, y in pairs])
        lab = _merge(lab, a, b)
    return Congruence(L, _closure(L, lab))


def congruence_meet(theta: Congruence, phi: Congruence) -> Congruence:
    pairs = theta.labels * (int(phi.labels.max()) + 1) + phi.labels
    return Congruence(theta.lattice, pairs)


def congruence_join(theta: Congruence, phi: Congruence) -> Congruence:
    L = theta.lattice
    n = len(L)
    idx = np.arange(n)
    lab = theta.labels.copy()
    # union: connect each element to the least member of its phi-block
    rep = np.zeros(int(phi.labels.max()) + 1, dtype=np.int64)
    rep[phi.labels[::-1]] = idx[::-1]
    lab = _merge(lab, lab[idx], lab[rep[phi.labels]])
    return Congruence(L, _closure(L, lab))


# ----------------------------------------------------------------------
# brute-force oracle


def set_partitions(n: int):
    """Restricted growth strings of length n."""
    if n == 0:
        yield ()
        return
    a = [0] * n

    def rec(i, m):
        if i == n:
            yield tuple(a)
            return
        for v in range(m + 2):
            a[i] = v
            yield from rec(i + 1, max(m, v))

    a[0] = 0
    yield from rec(1, 0)


def oracle_all_congruences(L: FiniteLattice, limit: int = ORACLE_SIZE_LIMIT) -> frozenset:
    """Every partition with the substitution property, by exhaustive enumeration."""
    n = len(L)
    if n > limit:
        raise SizeLimitExceeded(f"oracle capped at {limit} elements")
    M, J = L.meet, L.join
    out = []
    for rgs in set_partitions(n):
        lab = np.array(rgs)
        ok = True
        for x in range(n):
            for y in range(x + 1, n):
                if lab[x] != lab[y]:
                    continue
                if not (np.array_equal(lab[J[x]], lab[J[y]])
                        and np.array_equal(lab[M[x]], lab[M[y]])):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(Congruence(L, lab))
    return frozenset(out)


def oracle_principal(L: FiniteLattice, a, b, congruences=None) -> Congruence:
    """Least oracle congruence relating a and b."""
    cons = congruences if congruences is not None else oracle_all_congruences(L)
    holding = [c for c in cons if c.related(a, b)]
    least = [c for c in holding if all(c <= d for d in holding)]
    assert len(least) == 1
    return least[0]


# ----------------------------------------------------------------------
# cover decomposition


@dataclass
class CoverData:
    """Cover congruences of a lattice, each as a bitmask over the covers."""

    covers: list                      # (i, j) index pairs, i covered by j
    masks: list                       # int bitmask of covers collapsed by con(cover)
    upper: list = field(default_factory=list)   # upper[i] = [(j, cover_number)]

    def mask_of(self, lab) -> int:
        m = 0
        for k, (i, j) in enumerate(self.covers):
            if lab[i] == lab[j]:
                m |= 1 << k
        return m


def cover_data(L: FiniteLattice) -> CoverData:
    if "covers" in L.cache:
        return L.cache["covers"]
    c = L.order.cover_matrix()
    covers = [(int(i), int(j)) for i, j in zip(*np.nonzero(c))]
    upper = [[] for _ in range(len(L))]
    for k, (i, j) in enumerate(covers):
        upper[i].append((j, k))
    data = CoverData(covers, [0] * len(covers), upper)
    for k, (i, j) in enumerate(covers):
        lab = np.arange(len(L))
        lab[j] = i
        data.masks[k] = data.mask_of(_closure(L, lab))
    L.cache["covers"] = data
    return data


def congruence_from_mask(L: FiniteLattice, mask: int) -> Congruence:
    data = cover_data(L)
    sel = [data.covers[k] for k in range(len(data.covers)) if mask >> k & 1]
    lab = np.arange(len(L))
    if sel:
        a = np.array([i for i, _ in sel])
        b = np.array([j for _, j in sel])
        lab = _merge(lab, a, b)
    return Congruence(L, lab)


def principal_congruence_via_covers(L: FiniteLattice, a, b) -> Congruence:
    """con(a, b) as the join of the cover congruences along one maximal chain."""
    return congruence_from_mask(L, _principal_masks(L)[L.idx(L.m(a, b)), L.idx(L.j(a, b))])


def _principal_masks(L: FiniteLattice) -> dict:
    """mask of con(x, y) for every pair x <= y (by index)."""
    if "principal_masks" in L.cache:
        return L.cache["principal_masks"]
    data = cover_data(L)
    leq = L.order.leq
    n = len(L)
    out = {}
    # process pairs by decreasing x so the step x -> cover c -> y is ready
    height = leq.sum(axis=0)   # number of elements below
    by_height = sorted(range(n), key=lambda i: -height[i])
    for y in range(n):
        out[(y, y)] = 0
    for x in by_height:
        for y in np.flatnonzero(leq[x]):
            y = int(y)
            if y == x:
                continue
            for c, k in data.upper[x]:
                if leq[c, y]:
                    out[(x, y)] = data.masks[k] | out[(c, y)]
                    break
    L.cache["principal_masks"] = out
    return out


def all_congruences(L: FiniteLattice) -> frozenset:
    """Delta together with all joins of cover congruences."""
    data = cover_data(L)
    gens = sorted(set(data.masks))
    found = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                t = s | g
                if t not in found:
                    found.add(t)
                    nxt.append(t)
        frontier = nxt
    return frozenset(congruence_from_mask(L, m) for m in found)


def congruence_lattice_order(L: FiniteLattice) -> tuple:
    """Con L as a BoundedOrder plus the name -> Congruence map."""
    cons = sorted(all_congruences(L), key=lambda c: (int(c.labels.max()) * -1, c._key))
    names = {c: f"θ{k}" for k, c in enumerate(cons)}
    rel = np.array([[a <= b for b in cons] for a in cons], dtype=bool)
    order = BoundedOrder._from_closed([names[c] for c in cons], rel)
    return order, {names[c]: c for c in cons}


# ----------------------------------------------------------------------
# Princ L


@dataclass
class PrincOrder:
    """The order of principal congruences with one generating pair each."""

    lattice: FiniteLattice
    order: BoundedOrder
    congruences: dict        # name -> Congruence
    witness: dict            # name -> (a, b) with a <= b
    by_mask: dict = field(default_factory=dict, repr=False)

    def name_of(self, theta: Congruence) -> str:
        for k, c in self.congruences.items():
            if c == theta:
                return k
        raise KeyError(theta)

    def con(self, a, b) -> str:
        """Name of con(a, b) in this order."""
        L = self.lattice
        m = _principal_masks(L)[(L.idx(L.m(a, b)), L.idx(L.j(a, b)))]
        return self.by_mask[m]


def princ_order(L: FiniteLattice) -> PrincOrder:
    if "princ" in L.cache:
        return L.cache["princ"]
    masks = _principal_masks(L)
    full = masks[(L.idx(L.bottom), L.idx(L.top))]
    by_mask = {}
    witness = {}
    els = L.elements
    for (x, y), m in sorted(masks.items()):
        if m in by_mask:
            continue
        if m == 0:
            name = "Δ"
        elif m == full:
            name = "∇"
        else:
            name = f"con({els[x]},{els[y]})"
        by_mask[m] = name
        witness[name] = (els[x], els[y])
    names = list(by_mask.values())
    ms = list(by_mask.keys())
    rel = np.array([[(a & b) == a for b in ms] for a in ms], dtype=bool)
    order = BoundedOrder._from_closed(names, rel)
    cons = {by_mask[m]: congruence_from_mask(L, m) for m in ms}
    po = PrincOrder(L, order, cons, witness, by_mask)
    L.cache["princ"] = po
    return po


# ----------------------------------------------------------------------
# projectivity and spreading


def _projectivity_tree(L: FiniteLattice, start: tuple) -> dict:
    """BFS parents of every pair reachable from ``start`` (cached per source)."""
    trees = L.cache.setdefault("projectivity", {})
    if start in trees:
        return trees[start]
    n = len(L)
    J, M = L.join, L.meet
    parent = {start: None}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        x, y = state
        for kind, T in (("j", J), ("m", M)):
            xs, ys = T[x], T[y]
            for s in range(n):
                nxt = (int(xs[s]), int(ys[s]))
                if nxt not in parent:
                    parent[nxt] = (state, kind, s)
                    queue.append(nxt)
    trees[start] = parent
    return parent


def is_cong_projective(L: FiniteLattice, src: Interval, dst: Interval):
    """A witness p0..p(m-1) of src => dst, or None.

    Breadth-first search over pairs x <= y, stepping by joins and meets;
    consecutive steps of the same kind are separated by neutral elements
    (join with 0, meet with 1) so the witness fits the alternating term.
    """
    start = (L.idx(src.low), L.idx(src.high))
    goal = (L.idx(dst.low), L.idx(dst.high))
    parent = _projectivity_tree(L, start)
    if goal not in parent:
        return None
    steps = []
    state = goal
    while parent[state] is not None:
        state, kind, s = parent[state]
        steps.append((kind, s))
    steps.reverse()
    ps = []
    for kind, s in steps:
        expected = "j" if len(ps) % 2 == 0 else "m"
        if kind != expected:
            ps.append(L.bottom if expected == "j" else L.top)
        ps.append(L.elements[s])
    return ps


def spreading_chain(L: FiniteLattice, gen: Interval, tgt: Interval):
    """An ascending chain from tgt.low to tgt.high with every step projective from gen."""
    if gen == tgt:
        return (tgt.low, tgt.high)
    if tgt.low == tgt.high:
        return (tgt.low,)
    data = cover_data(L)
    leq = L.order.leq
    lo, hi = L.idx(tgt.low), L.idx(tgt.high)
    cache = {}

    def ok(u, v):
        if (u, v) not in cache:
            w = is_cong_projective(L, gen, Interval(L.elements[u], L.elements[v]))
            cache[(u, v)] = w is not None
        return cache[(u, v)]

    # depth-first over cover chains inside [lo, hi]
    stack = [(lo, (lo,))]
    seen = set()
    while stack:
        u, path = stack.pop()
        if u == hi:
            return tuple(L.elements[i] for i in path)
        if u in seen:
            continue
        seen.add(u)
        for v, _ in reversed(data.upper[u]):
            if leq[v, hi] and ok(u, v):
                stack.append((v, path + (v,)))
    return None


# ----------------------------------------------------------------------
# induced maps between Princ orders


def _induced(K: FiniteLattice, L: FiniteLattice, f) -> IsotoneMap:
    PK, PL = princ_order(K), princ_order(L)
    masks_k = _principal_masks(K)
    image = {}
    for (x, y), m in masks_k.items():
        name = PK.by_mask[m]
        a, b = K.elements[x], K.elements[y]
        target = PL.con(f(a), f(b))
        prev = image.setdefault(name, target)
        if prev != target:
            raise WellDefinednessViolation(
                f"{name} generated by ({a},{b}) lands on {target}, elsewhere on {prev}")
    return IsotoneMap(PK.order, PL.order, image)


def induced_hom_map(K: FiniteLattice, L: FiniteLattice, phi: LatticeHom) -> IsotoneMap:
    """con_K(a, b) -> con_L(phi a, phi b), checked on every generating pair."""
    return _induced(K, L, phi)


def induced_sub_map(K: FiniteLattice, L: FiniteLattice, embedding) -> IsotoneMap:
    """con_K(x, y) -> con_L(x, y) for a {0,1}-sublattice K of L."""
    f = embedding if callable(embedding) else embedding.__getitem__
    return _induced(K, L, f)


# ----------------------------------------------------------------------
# {0,1}-isolating congruences and Base


def is_01_isolating(theta: Congruence, include_trivial: bool = False) -> bool:
    """{0} and {1} are blocks; Delta only counts when ``include_trivial``."""
    L = theta.lattice
    if theta.is_trivial:
        return include_trivial
    lab = theta.labels
    b, t = lab[L.idx(L.bottom)], lab[L.idx(L.top)]
    return int((lab == b).sum()) == 1 and int((lab == t).sum()) == 1


def base_of(theta: Congruence, P: BoundedOrder) -> DownSet:
    """{p in P^- : a:p == b:p (theta)} as a down-set of P^-."""
    L = theta.lattice
    missing = [p for p in P.inner if f"a:{p}" not in L.labels or f"b:{p}" not in L.labels]
    if missing:
        raise MissingLabels(f"no frame labels for {missing}")
    carrier = {p for p in P.inner if theta.related(L.labels[f"a:{p}"], L.labels[f"b:{p}"])}
    return DownSet(P, frozenset(carrier), inner=True)
