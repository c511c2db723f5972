"""Finite bounded orders, down-sets, isotone maps and order-triples.

The relation of a :class:`BoundedOrder` is stored closed (reflexive and
transitive) as a boolean matrix indexed by the canonical element order,
which is plain string order on the identifiers.  Covers are derived on
demand.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import (
    CycleDetected,
    EmptyOrder,
    NoBounds,
    NotADownSet,
    NotIsotone,
    SizeLimitExceeded,
    TrivialOrder,
)

ISO_SIZE_LIMIT = 24


def transitive_closure(rel: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure of a square boolean matrix."""
    r = np.array(rel, dtype=bool)
    np.fill_diagonal(r, True)
    while True:
        f = r.astype(np.float32)
        nxt = (f @ f) > 0
        if np.array_equal(nxt, r):
            return r
        r = nxt


class BoundedOrder:
    """A finite poset with a least and a greatest element, 0 != 1."""

    __slots__ = ("elements", "leq", "bottom", "top", "index", "_covers")

    def __init__(self, elements, leq, bottom, top):
        self.elements = tuple(elements)
        self.leq = leq
        self.leq.flags.writeable = False
        self.bottom = bottom
        self.top = top
        self.index = {x: i for i, x in enumerate(self.elements)}
        self._covers = None

    # -- construction helpers ------------------------------------------
    @classmethod
    def _from_closed(cls, elements, leq) -> "BoundedOrder":
        """Build from an already closed relation; sorts and checks bounds."""
        elements = [str(x) for x in elements]
        order = sorted(range(len(elements)), key=lambda i: elements[i])
        els = [elements[i] for i in order]
        leq = np.asarray(leq, dtype=bool)[np.ix_(order, order)].copy()
        n = len(els)
        if n == 0:
            raise EmptyOrder("order has no elements")
        strict = leq & leq.T
        np.fill_diagonal(strict, False)
        if strict.any():
            i, j = map(int, np.argwhere(strict)[0])
            raise CycleDetected(f"{els[i]} <= {els[j]} <= {els[i]}")
        bottoms = np.flatnonzero(leq.all(axis=1))
        tops = np.flatnonzero(leq.all(axis=0))
        if len(bottoms) != 1 or len(tops) != 1:
            raise NoBounds("no unique least and greatest element")
        if n == 1:
            raise TrivialOrder("bottom equals top")
        return cls(els, leq, els[bottoms[0]], els[tops[0]])

    # -- basic queries -------------------------------------------------
    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.index

    def le(self, x, y) -> bool:
        return bool(self.leq[self.index[x], self.index[y]])

    def lt(self, x, y) -> bool:
        return x != y and self.le(x, y)

    @property
    def inner(self) -> tuple:
        """The elements other than 0 and 1 (the set written P^- in the docs)."""
        return tuple(x for x in self.elements if x not in (self.bottom, self.top))

    def strict_pairs(self, within: Iterable | None = None) -> list:
        """All pairs x < y, optionally restricted to a subset."""
        els = self.elements if within is None else [x for x in self.elements if x in set(within)]
        return [(x, y) for x in els for y in els if self.lt(x, y)]

    def cover_matrix(self) -> np.ndarray:
        if self._covers is None:
            lt = self.leq.copy()
            np.fill_diagonal(lt, False)
            f = lt.astype(np.float32)
            self._covers = lt & ~((f @ f) > 0)
            self._covers.flags.writeable = False
        return self._covers

    def covers(self) -> list:
        """Transitive reduction as a list of (lower, upper) pairs."""
        c = self.cover_matrix()
        return [(self.elements[i], self.elements[j]) for i, j in zip(*np.nonzero(c))]

    def down(self, x) -> frozenset:
        col = self.leq[:, self.index[x]]
        return frozenset(self.elements[i] for i in np.flatnonzero(col))

    def up(self, x) -> frozenset:
        row = self.leq[self.index[x]]
        return frozenset(self.elements[i] for i in np.flatnonzero(row))

    def suborder(self, subset) -> "BoundedOrder":
        """The induced order on ``subset``; it must have its own bounds."""
        idx = [self.index[x] for x in sorted(set(subset))]
        return BoundedOrder._from_closed(
            [self.elements[i] for i in idx], self.leq[np.ix_(idx, idx)]
        )

    def relabel(self, mapping: Mapping) -> "BoundedOrder":
        return BoundedOrder._from_closed([mapping[x] for x in self.elements], self.leq)

    # -- identity ------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, BoundedOrder):
            return NotImplemented
        return self.elements == other.elements and np.array_equal(self.leq, other.leq)

    def __hash__(self):
        return hash((self.elements, self.leq.tobytes()))

    def __repr__(self):
        return f"BoundedOrder({len(self)} elements, covers={self.covers()})"


def validate_bounded_order(raw_elements, raw_leq_pairs) -> BoundedOrder:
    """Close ``raw_leq_pairs`` reflexively and transitively and check the result.

    Raises CycleDetected, NoBounds, EmptyOrder or TrivialOrder.
    """
    elements = [str(x) for x in raw_elements]
    if len(set(elements)) != len(elements):
        raise ValueError("element identifiers must be distinct")
    if not elements:
        raise EmptyOrder("order has no elements")
    index = {x: i for i, x in enumerate(elements)}
    rel = np.zeros((len(elements), len(elements)), dtype=bool)
    for x, y in raw_leq_pairs:
        x, y = str(x), str(y)
        if x not in index or y not in index:
            raise ValueError(f"pair ({x}, {y}) names an unknown element")
        rel[index[x], index[y]] = True
    return BoundedOrder._from_closed(elements, transitive_closure(rel))


def chain_order(n: int, names: Iterable | None = None) -> BoundedOrder:
    names = list(names) if names is not None else [str(i) for i in range(n)]
    return validate_bounded_order(names, zip(names, names[1:]))


# ----------------------------------------------------------------------
# down-sets


@dataclass(frozen=True)
class DownSet:
    """A downward closed subset of ``order`` (or of its inner part)."""

    order: BoundedOrder
    carrier: frozenset
    inner: bool = False

    def __post_init__(self):
        object.__setattr__(self, "carrier", frozenset(self.carrier))
        domain = set(self.order.inner) if self.inner else set(self.order.elements)
        if not self.carrier <= domain:
            raise NotADownSet("down-set carrier leaves its domain")
        for x in self.carrier:
            missing = (self.order.down(x) & domain) - self.carrier
            if missing:
                raise NotADownSet(f"{sorted(missing)} below {x} missing from down-set")

    def __le__(self, other):
        return self.carrier <= other.carrier

    def __contains__(self, x):
        return x in self.carrier


def down_sets(order: BoundedOrder, inner: bool = True) -> list:
    """All down-sets of ``order`` (of its inner part when ``inner``)."""
    domain = list(order.inner) if inner else list(order.elements)
    dom = set(domain)
    below = {x: order.down(x) & dom for x in domain}
    seen = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for s in frontier:
            for x in domain:
                if x not in s and below[x] - {x} <= s:
                    t = s | {x}
                    if t not in seen:
                        seen.add(t)
                        nxt.append(t)
        frontier = nxt
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


def downset_name(s) -> str:
    return "{" + ",".join(sorted(s)) + "}"


def down_set_order(P: BoundedOrder, with_top: bool = False) -> BoundedOrder:
    """Down-sets of P^- ordered by inclusion, optionally with a new top named ``P``.

    Without ``with_top`` the result may be a one-element order; it is then
    returned unchecked as a plain ``BoundedOrder`` with bottom == top.
    """
    sets = down_sets(P, inner=True)
    names = [downset_name(s) for s in sets]
    rel = np.array([[a <= b for b in sets] for a in sets], dtype=bool)
    if with_top:
        names.append("P")
        n = len(names)
        big = np.zeros((n, n), dtype=bool)
        big[: n - 1, : n - 1] = rel
        big[:, n - 1] = True
        rel = big
    if len(names) == 1:
        return BoundedOrder(names, rel, names[0], names[0])
    return BoundedOrder._from_closed(names, rel)


# ----------------------------------------------------------------------
# isotone maps and order-triples


class IsotoneMap:
    """An order-preserving total map between bounded orders."""

    __slots__ = ("source", "target", "assignment", "zero_one")

    def __init__(self, source: BoundedOrder, target: BoundedOrder, assignment: Mapping,
                 zero_one: bool = True):
        self.source = source
        self.target = target
        self.assignment = {x: assignment[x] for x in source.elements}
        self.zero_one = zero_one
        for x, fx in self.assignment.items():
            if fx not in target:
                raise NotIsotone(f"{x} is sent to {fx}, not an element of the target")
        for x, y in source.covers():
            if not target.le(self.assignment[x], self.assignment[y]):
                raise NotIsotone(f"{x} <= {y} but their images are not ordered")
        if zero_one and (self.assignment[source.bottom] != target.bottom
                         or self.assignment[source.top] != target.top):
            raise NotIsotone("map does not preserve 0 and 1")

    def __call__(self, x):
        return self.assignment[x]

    def image(self) -> frozenset:
        return frozenset(self.assignment.values())

    def is_surjective(self) -> bool:
        return self.image() == frozenset(self.target.elements)

    def __eq__(self, other):
        if not isinstance(other, IsotoneMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.assignment == other.assignment)

    def __repr__(self):
        return f"IsotoneMap({self.assignment})"


def identity_map(P: BoundedOrder) -> IsotoneMap:
    return IsotoneMap(P, P, {x: x for x in P})


def compose(g: IsotoneMap, f: IsotoneMap) -> IsotoneMap:
    """``g`` after ``f``."""
    return IsotoneMap(f.source, g.target, {x: g(f(x)) for x in f.source},
                      zero_one=f.zero_one and g.zero_one)


def is_zero_separating(f: IsotoneMap) -> bool:
    zero = f.target.bottom
    return all(x == f.source.bottom for x, fx in f.assignment.items() if fx == zero)


@dataclass(frozen=True)
class OrderTriple:
    p: BoundedOrder
    q: BoundedOrder
    psi: IsotoneMap

    def __post_init__(self):
        if self.psi.source != self.p or self.psi.target != self.q:
            raise ValueError("psi must map p into q")
        if not self.psi.zero_one:
            raise NotIsotone("psi must be a {0,1}-map")

    def is_surjective(self) -> bool:
        return self.psi.is_surjective()


def top_of_triple(t: OrderTriple) -> BoundedOrder:
    """The suborder {x : psi(x) > 0} together with 0."""
    zero = t.q.bottom
    keep = [x for x in t.p if t.psi(x) != zero] + [t.p.bottom]
    return t.p.suborder(keep)


def btm_of_triple(t: OrderTriple) -> DownSet:
    zero = t.q.bottom
    return DownSet(t.p, frozenset(x for x in t.p if t.psi(x) == zero))


def alpha_map(t: OrderTriple) -> IsotoneMap:
    R = top_of_triple(t)
    return IsotoneMap(t.p, R, {x: x if x in R else R.bottom for x in t.p})


def beta_map(t: OrderTriple) -> IsotoneMap:
    R = top_of_triple(t)
    return IsotoneMap(R, t.q, {x: t.psi(x) for x in R})


# ----------------------------------------------------------------------
# isomorphisms


def _profile(P: BoundedOrder):
    c = P.cover_matrix()
    return [
        (int(P.leq[:, i].sum()), int(P.leq[i].sum()), int(c[:, i].sum()), int(c[i].sum()))
        for i in range(len(P))
    ]


def iter_order_isomorphisms(P: BoundedOrder, Q: BoundedOrder, fixed: Mapping | None = None,
                            limit: int = ISO_SIZE_LIMIT) -> Iterator[dict]:
    """Yield every order isomorphism P -> Q extending ``fixed``."""
    if max(len(P), len(Q)) > limit:
        raise SizeLimitExceeded(f"isomorphism search capped at {limit} elements")
    if len(P) != len(Q):
        return
    fp, fq = _profile(P), _profile(Q)
    if sorted(fp) != sorted(fq):
        return
    n = len(P)
    assign = [-1] * n
    used = [False] * n
    fixed = dict(fixed or {})
    fixed.setdefault(P.bottom, Q.bottom)
    fixed.setdefault(P.top, Q.top)
    for x, y in fixed.items():
        i, j = P.index[x], Q.index[y]
        if fp[i] != fq[j] or used[j]:
            return
        assign[i], used[j] = j, True
    # most constrained first: descending number of elements below
    todo = sorted((i for i in range(n) if assign[i] < 0), key=lambda i: (-fp[i][0], i))
    done = [i for i in range(n) if assign[i] >= 0]
    for i in done:
        for k in done:
            if P.leq[i, k] != Q.leq[assign[i], assign[k]]:
                return

    def extend(pos):
        if pos == len(todo):
            yield {P.elements[i]: Q.elements[assign[i]] for i in range(n)}
            return
        i = todo[pos]
        for j in range(n):
            if used[j] or fq[j] != fp[i]:
                continue
            ok = True
            for k in range(n):
                a = assign[k]
                if a >= 0 and (P.leq[i, k] != Q.leq[j, a] or P.leq[k, i] != Q.leq[a, j]):
                    ok = False
                    break
            if ok:
                assign[i], used[j] = j, True
                yield from extend(pos + 1)
                assign[i], used[j] = -1, False

    yield from extend(0)


def order_isomorphism(P: BoundedOrder, Q: BoundedOrder, limit: int = ISO_SIZE_LIMIT):
    """A 0/1-preserving order isomorphism P -> Q, or None."""
    return next(iter_order_isomorphisms(P, Q, limit=limit), None)


def triple_isomorphism(s: OrderTriple, t: OrderTriple, limit: int = ISO_SIZE_LIMIT):
    """A pair (sigma, tau) of isomorphisms with tau . psi_s == psi_t . sigma, or None."""
    for sigma in iter_order_isomorphisms(s.p, t.p, limit=limit):
        forced = {}
        ok = True
        for x in s.p:
            a, b = s.psi(x), t.psi(sigma[x])
            if forced.setdefault(a, b) != b:
                ok = False
                break
        if not ok:
            continue
        tau = next(iter_order_isomorphisms(s.q, t.q, fixed=forced, limit=limit), None)
        if tau is not None:
            return sigma, tau
    return None


def isotone_maps(P: BoundedOrder, Q: BoundedOrder) -> Iterator[IsotoneMap]:
    """Every isotone {0,1}-map P -> Q."""
    inner = P.inner
    for images in itertools.product(Q.elements, repeat=len(inner)):
        assignment = dict(zip(inner, images))
        assignment[P.bottom] = Q.bottom
        assignment[P.top] = Q.top
        if all(Q.le(assignment[x], assignment[y]) for x, y in P.covers()):
            yield IsotoneMap(P, Q, assignment)
