"""Finite lattices as bounded orders with dense meet and join tables."""

from __future__ import annotations

from typing import Iterable, Mapping, NamedTuple

import numpy as np

from .errors import BoundElement, NotAHomomorphism, NotALattice, NotACongruence
from .order import BoundedOrder, validate_bounded_order


class Interval(NamedTuple):
    low: str
    high: str


class FiniteLattice:
    """A bounded order whose binary meets and joins all exist.

    ``meet`` and ``join`` are integer tables over element indices.  ``labels``
    maps role tags such as ``"a:p"`` to elements; several tags may land on
    the same element.
    """

    __slots__ = ("order", "meet", "join", "labels", "cache")

    def __init__(self, order: BoundedOrder, meet: np.ndarray, join: np.ndarray,
                 labels: Mapping | None = None):
        self.order = order
        self.meet = meet
        self.join = join
        meet.flags.writeable = False
        join.flags.writeable = False
        self.labels = dict(labels or {})
        for tag, x in self.labels.items():
            if x not in order:
                raise ValueError(f"label {tag} names unknown element {x}")
        self.cache = {}

    # element-level helpers
    @property
    def elements(self):
        return self.order.elements

    @property
    def bottom(self):
        return self.order.bottom

    @property
    def top(self):
        return self.order.top

    def __len__(self):
        return len(self.order)

    def __contains__(self, x):
        return x in self.order

    def idx(self, x) -> int:
        return self.order.index[x]

    def le(self, x, y) -> bool:
        return self.order.le(x, y)

    def m(self, x, y):
        i = self.order.index
        return self.elements[self.meet[i[x], i[y]]]

    def j(self, x, y):
        i = self.order.index
        return self.elements[self.join[i[x], i[y]]]

    def label(self, tag):
        return self.labels[tag]

    def labels_of(self, x) -> list:
        return sorted(t for t, y in self.labels.items() if y == x)

    def label_collisions(self) -> dict:
        """Elements carrying more than one label."""
        out = {}
        for t, x in self.labels.items():
            out.setdefault(x, []).append(t)
        return {x: sorted(ts) for x, ts in out.items() if len(ts) > 1}

    def covers(self) -> list:
        return self.order.covers()

    def with_labels(self, labels: Mapping) -> "FiniteLattice":
        return FiniteLattice(self.order, self.meet, self.join, labels)

    def relabel(self, mapping: Mapping, label_map=None) -> "FiniteLattice":
        """Rename elements (and optionally label tags)."""
        order = self.order.relabel(mapping)
        perm = [self.order.index[x] for x in sorted(self.elements, key=lambda x: mapping[x])]
        inv = np.empty(len(perm), dtype=np.int64)
        inv[perm] = np.arange(len(perm))
        meet = inv[self.meet[np.ix_(perm, perm)]]
        join = inv[self.join[np.ix_(perm, perm)]]
        label_map = label_map or (lambda t: t)
        labels = {label_map(t): mapping[x] for t, x in self.labels.items()}
        return FiniteLattice(order, meet, join, labels)

    def __eq__(self, other):
        if not isinstance(other, FiniteLattice):
            return NotImplemented
        return self.order == other.order

    def __hash__(self):
        return hash(self.order)

    def __repr__(self):
        return f"FiniteLattice({len(self)} elements)"


def _bound_table(leq: np.ndarray, upper: bool):
    """Least upper (or greatest lower) bound table; -1 where none is unique."""
    n = leq.shape[0]
    U = leq if upper else leq.T          # U[i, k]: k is an upper bound of i
    notU = (~U).astype(np.float32)
    table = np.full((n, n), -1, dtype=np.int64)
    for i in range(n):
        ub = U[i][None, :] & U           # row j: common upper bounds of i and j
        bad = ub.astype(np.float32) @ notU.T   # [j, z]: bounds of (i, j) not above z
        least = ub & (bad == 0)
        has = least.any(axis=1)
        table[i, has] = least[has].argmax(axis=1)
    return table


def lattice_from_order(P: BoundedOrder, labels: Mapping | None = None,
                       check: bool = False) -> FiniteLattice:
    """Compute meet and join tables; raise NotALattice naming a failing pair."""
    join = _bound_table(P.leq, upper=True)
    meet = _bound_table(P.leq, upper=False)
    for table, what in ((join, "join"), (meet, "meet")):
        bad = np.argwhere(table < 0)
        if len(bad):
            i, j = map(int, bad[0])
            raise NotALattice(P.elements[i], P.elements[j], what)
    L = FiniteLattice(P, meet, join, labels)
    if check:
        verify_lattice_axioms(L, full=True)
    return L


def lattice_from_covers(elements: Iterable, covers: Iterable, labels=None) -> FiniteLattice:
    return lattice_from_order(validate_bounded_order(list(elements), list(covers)), labels)


def verify_lattice_axioms(L: FiniteLattice, full: bool = False) -> None:
    """Commutativity, idempotence, absorption; associativity when ``full``."""
    M, J = L.meet, L.join
    n = len(L)
    r = np.arange(n)
    problems = []
    if not (np.array_equal(M, M.T) and np.array_equal(J, J.T)):
        problems.append("commutativity")
    if not (np.array_equal(M[r, r], r) and np.array_equal(J[r, r], r)):
        problems.append("idempotence")
    rows = r[:, None]
    if not (np.array_equal(M[rows, J], np.broadcast_to(rows, (n, n)))
            and np.array_equal(J[rows, M], np.broadcast_to(rows, (n, n)))):
        problems.append("absorption")
    if full:
        for T in (M, J):
            # (x*y)*z == x*(y*z) for all x, y, z
            left = T[T[:, :, None], r[None, None, :]]
            right = T[r[:, None, None], T[None, :, :]]
            if not np.array_equal(left, right):
                problems.append("associativity")
                break
    if problems:
        raise AssertionError(f"lattice axioms fail: {problems}")


# ----------------------------------------------------------------------
# homomorphisms, terms, quotients


class LatticeHom:
    """A total map between lattices preserving meet and join (checked)."""

    __slots__ = ("source", "target", "assignment", "zero_one", "_arr")

    def __init__(self, source: FiniteLattice, target: FiniteLattice, assignment: Mapping,
                 zero_one: bool = True):
        self.source = source
        self.target = target
        self.assignment = {x: assignment[x] for x in source.elements}
        self.zero_one = zero_one
        arr = np.array([target.idx(self.assignment[x]) for x in source.elements])
        self._arr = arr
        if not (np.array_equal(arr[source.meet], target.meet[np.ix_(arr, arr)])
                and np.array_equal(arr[source.join], target.join[np.ix_(arr, arr)])):
            raise NotAHomomorphism("map does not preserve meet and join")
        if zero_one and (self.assignment[source.bottom] != target.bottom
                         or self.assignment[source.top] != target.top):
            raise NotAHomomorphism("map does not preserve 0 and 1")

    def __call__(self, x):
        return self.assignment[x]

    def is_surjective(self) -> bool:
        return set(self.assignment.values()) == set(self.target.elements)

    def then(self, other: "LatticeHom") -> "LatticeHom":
        """``other`` after ``self``."""
        return LatticeHom(self.source, other.target,
                          {x: other(self(x)) for x in self.source.elements},
                          zero_one=self.zero_one and other.zero_one)


def eval_alternating_term(L: FiniteLattice, x, ps) -> str:
    """Evaluate (((x v p0) ^ p1) v p2) ^ ... in L."""
    for k, p in enumerate(ps):
        x = L.j(x, p) if k % 2 == 0 else L.m(x, p)
    return x


def quotient(L: FiniteLattice, theta):
    """Return (L/theta, projection).  Blocks are named by their least member."""
    from .congruence import is_congruence_labels

    lab = theta.labels
    if not is_congruence_labels(L, lab):
        raise NotACongruence("partition lacks the substitution property")
    k = int(lab.max()) + 1
    reps = np.array([int(np.flatnonzero(lab == b)[0]) for b in range(k)])
    names = [L.elements[i] for i in reps]
    qm = lab[L.meet[np.ix_(reps, reps)]]
    qj = lab[L.join[np.ix_(reps, reps)]]
    leq = qm == np.arange(k)[:, None]
    order = BoundedOrder._from_closed(names, leq)
    perm = [names.index(x) for x in order.elements]
    inv = np.empty(k, dtype=np.int64)
    inv[perm] = np.arange(k)
    meet = inv[qm[np.ix_(perm, perm)]]
    join = inv[qj[np.ix_(perm, perm)]]
    labels = {t: names[lab[L.idx(x)]] for t, x in L.labels.items()}
    Q = FiniteLattice(order, meet, join, labels)
    proj = LatticeHom(L, Q, {x: names[lab[i]] for i, x in enumerate(L.elements)})
    return Q, proj


def is_01_sublattice(K: FiniteLattice, L: FiniteLattice, embedding: Mapping) -> bool:
    """True iff ``embedding`` is an injective {0,1}-lattice homomorphism K -> L."""
    try:
        images = [embedding[x] for x in K.elements]
    except KeyError:
        return False
    if len(set(images)) != len(images) or not all(y in L for y in images):
        return False
    try:
        LatticeHom(K, L, embedding, zero_one=True)
    except NotAHomomorphism:
        return False
    return True


def subset_is_01_sublattice(L: FiniteLattice, subset) -> bool:
    """Whether ``subset`` (containing 0 and 1) is closed under meet and join."""
    s = set(subset)
    if L.bottom not in s or L.top not in s:
        return False
    idx = np.array([L.idx(x) for x in s])
    inside = np.zeros(len(L), dtype=bool)
    inside[idx] = True
    sub = np.ix_(idx, idx)
    return bool(inside[L.meet[sub]].all() and inside[L.join[sub]].all())


def sublattice(L: FiniteLattice, subset) -> FiniteLattice:
    """The {0,1}-sublattice on ``subset`` (must be closed)."""
    if not subset_is_01_sublattice(L, subset):
        raise ValueError("subset is not a {0,1}-sublattice")
    order = L.order.suborder(subset)
    idx = np.array([L.idx(x) for x in order.elements])
    pos = {int(i): k for k, i in enumerate(idx)}
    remap = np.vectorize(lambda v: pos[int(v)])
    meet = remap(L.meet[np.ix_(idx, idx)])
    join = remap(L.join[np.ix_(idx, idx)])
    labels = {t: x for t, x in L.labels.items() if x in order}
    return FiniteLattice(order, np.asarray(meet, dtype=np.int64), np.asarray(join, dtype=np.int64), labels)


def generated_sublattice(L: FiniteLattice, gens) -> frozenset:
    """Closure of ``gens`` together with 0 and 1 under meet and join."""
    s = {L.idx(x) for x in gens} | {L.idx(L.bottom), L.idx(L.top)}
    while True:
        idx = np.array(sorted(s))
        new = set(L.meet[np.ix_(idx, idx)].ravel()) | set(L.join[np.ix_(idx, idx)].ravel())
        new = {int(v) for v in new} | s
        if new == s:
            return frozenset(L.elements[i] for i in s)
        s = new


def disjoint_union_bounded(P: BoundedOrder, Q: BoundedOrder, left: str = "P",
                           right: str = "Q") -> BoundedOrder:
    """P and Q side by side with their bounds identified.

    Inner elements are renamed ``left.x`` / ``right.y``; the shared bounds are
    named ``0`` and ``1``.
    """
    lmap = _side_names(P, left)
    rmap = _side_names(Q, right)
    elements = sorted(set(lmap.values()) | set(rmap.values()))
    pairs = [(lmap[x], lmap[y]) for x, y in P.covers()]
    pairs += [(rmap[x], rmap[y]) for x, y in Q.covers()]
    return validate_bounded_order(elements, pairs)


def _side_names(P: BoundedOrder, prefix: str) -> dict:
    out = {x: f"{prefix}.{x}" for x in P.inner}
    out[P.bottom] = "0"
    out[P.top] = "1"
    return out


def side_label(tag: str, prefix: str) -> str:
    """``a:p`` -> ``a:P.p``: tag role kept, element part prefixed."""
    role, _, rest = tag.partition(":")
    return f"{role}:{prefix}.{rest}"


def glue(parts: Mapping) -> tuple:
    """Horizontal sum of bounded lattices (bounds identified).

    ``parts`` maps a prefix to a lattice.  Returns the glued lattice and, per
    prefix, the embedding dict of that summand.
    """
    embeds = {}
    pairs = []
    elements = {"0", "1"}
    labels = {}
    for prefix, A in parts.items():
        emb = {x: f"{prefix}.{x}" for x in A.elements}
        emb[A.bottom] = "0"
        emb[A.top] = "1"
        embeds[prefix] = emb
        elements |= set(emb.values())
        pairs += [(emb[x], emb[y]) for x, y in A.covers()]
        labels.update({side_label(t, prefix): emb[x] for t, x in A.labels.items()})
    order = validate_bounded_order(sorted(elements), pairs)
    return lattice_from_order(order, labels), embeds


def is_universal_complement(L: FiniteLattice, u) -> bool:
    if u in (L.bottom, L.top):
        raise BoundElement(f"{u} is a bound")
    i = L.idx(u)
    b, t = L.idx(L.bottom), L.idx(L.top)
    others = [k for k in range(len(L)) if k not in (i, b, t)]
    return all(L.meet[i, k] == b and L.join[i, k] == t for k in others)


# ----------------------------------------------------------------------
# named small lattices


def chain_lattice(n: int, names: Iterable | None = None) -> FiniteLattice:
    names = list(names) if names is not None else [f"c{i}" for i in range(n)]
    return lattice_from_covers(names, zip(names, names[1:]))


def named_lattice(name: str) -> FiniteLattice:
    """Fixtures: C2..C5, B2, N5 (o<a<b<i, o<c<i), M3 (atoms x, y, z)."""
    if name.startswith("C") and name[1:].isdigit():
        n = int(name[1:])
        if n == 3:
            return chain_lattice(3, ["o", "m", "i"])
        return chain_lattice(n)
    table = {
        "B2": (["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]),
        "N5": (["o", "a", "b", "c", "i"],
               [("o", "a"), ("a", "b"), ("b", "i"), ("o", "c"), ("c", "i")]),
        "M3": (["o", "x", "y", "z", "i"],
               [("o", "x"), ("o", "y"), ("o", "z"), ("x", "i"), ("y", "i"), ("z", "i")]),
    }
    els, covers = table[name]
    return lattice_from_covers(els, covers)


FIXTURES = ("C2", "C3", "C4", "C5", "B2", "N5", "M3")
