"""Frame lattices, comparability-forcing gadgets and the disjoint-union construction.

Gadget shapes are data: a catalog lists, per kind, internal element count,
cover pairs among ports and internals, and the nominal size used in the
element-count formulas.  Port names are ``a:p``, ``b:p``, ``a:q``, ``b:q``
plus the bounds ``0`` and ``1``; internals are ``k0``, ``k1``, ...
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Mapping

import numpy as np

from .congruence import (Congruence, all_congruences, base_of, is_01_isolating,
                         principal_congruence, princ_order)
from .errors import MissingLabels, NotZeroSeparating, PrincError
from .lattice import FiniteLattice, glue, is_01_sublattice, is_universal_complement, lattice_from_order
from .order import (BoundedOrder, IsotoneMap, down_set_order, down_sets, is_zero_separating,
                    iter_order_isomorphisms, validate_bounded_order)

KINDS = ("G", "GExt", "Equi", "EquiTop")
NOMINAL = {"G": 7, "GExt": 15, "Equi": 4}
CATALOG_ENV = "PRINC_CATALOG"


# ----------------------------------------------------------------------
# catalog


@dataclass(frozen=True)
class Gadget:
    kind: str
    nominal: int
    internal: int
    covers: tuple

    @property
    def size(self) -> int:
        return self.internal


@dataclass(frozen=True)
class Catalog:
    gadgets: Mapping
    digest: str
    source: str = ""

    def __getitem__(self, kind) -> Gadget:
        return self.gadgets[kind]

    def sizes(self) -> dict:
        return {k: g.size for k, g in self.gadgets.items()}

    def deviations(self) -> dict:
        """kind -> (actual, nominal) wherever they differ."""
        return {k: (g.size, NOMINAL[k]) for k, g in self.gadgets.items()
                if k in NOMINAL and g.size != NOMINAL[k]}


def parse_catalog(doc: Mapping, source: str = "") -> Catalog:
    gadgets = {}
    for kind, entry in doc["gadgets"].items():
        if kind not in KINDS:
            raise ValueError(f"unknown gadget kind {kind!r}")
        n = int(entry["internal"])
        names = {f"k{i}" for i in range(n)} | set(entry.get("ports", [])) | {"0", "1"}
        covers = tuple(sorted((str(x), str(y)) for x, y in entry["covers"]))
        for x, y in covers:
            if x not in names or y not in names:
                raise ValueError(f"{kind}: cover ({x}, {y}) uses an unknown name")
        gadgets[kind] = Gadget(kind, int(entry.get("nominal", n)), n, covers)
    canon = json.dumps({k: [g.internal, g.nominal, g.covers] for k, g in sorted(gadgets.items())},
                       sort_keys=True)
    return Catalog(gadgets, hashlib.sha256(canon.encode()).hexdigest()[:16], source)


def load_catalog(path: str | os.PathLike | None = None) -> Catalog:
    """Load a gadget catalog; ``$PRINC_CATALOG`` or the bundled one by default."""
    path = path or os.environ.get(CATALOG_ENV)
    if path:
        with open(path) as fh:
            return parse_catalog(json.load(fh), str(path))
    text = resources.files("princ").joinpath("data/catalog.json").read_text()
    return parse_catalog(json.loads(text), "builtin")


def _catalog(catalog):
    return catalog if catalog is not None else load_catalog()


# ----------------------------------------------------------------------
# frame and gadget insertion


def frame(P: BoundedOrder, X: Iterable = ()) -> FiniteLattice:
    """Horizontal sum of 4-chains 0 < a:p < b:p < 1, plus atoms ``x:i``.

    Two extra atoms ``u:0`` and ``u:1`` sit beside the chains whenever there
    is anything to add; they make every a:p generate the total congruence
    together with 0 but are themselves never named by P.
    """
    X = list(X)
    elements = ["0", "1"]
    covers = [("0", "1")]
    labels = {}
    for p in P.inner:
        a, b = f"a:{p}", f"b:{p}"
        elements += [a, b]
        covers += [("0", a), (a, b), (b, "1")]
        labels[a], labels[b] = a, b
    if P.inner or X:
        for u in ("u:0", "u:1"):
            elements.append(u)
            covers += [("0", u), (u, "1")]
            labels[u] = u
    for x in X:
        name = f"x:{x}"
        if name in elements:
            raise ValueError(f"duplicate universal complement {x}")
        elements.append(name)
        covers += [("0", name), (name, "1")]
        labels[name] = name
    if len(elements) > 2:
        covers.remove(("0", "1"))
    return lattice_from_order(validate_bounded_order(elements, covers), labels)


def gadget_prefix(p, q, kind: str) -> str:
    if kind in ("G", "GExt"):
        return f"g:{p}<{q}"
    if kind == "EquiTop":
        return f"g:{p}=1"
    return f"g:{p}={q}"


def _port_map(L: FiniteLattice, p, q, kind, anchor=None):
    ports = {"0": L.bottom, "1": L.top}
    wanted = [("p", p)] + ([] if kind == "EquiTop" else [("q", q)])
    for side, name in wanted:
        for role in ("a", "b"):
            tag = f"{role}:{name}"
            if tag not in L.labels:
                raise MissingLabels(f"lattice has no label {tag}")
            ports[f"{role}:{side}"] = L.labels[tag]
    # default anchor: the u:0 atom of q's frame (u:S.0 once glued under prefix S)
    if anchor is None:
        prefix, dot, _ = str(q).rpartition(".")
        anchor = f"u:{prefix}.0" if dot else "u:0"
    if anchor in L.labels:
        ports["u"] = L.labels[anchor]
    return ports


def insert_gadgets(L: FiniteLattice, specs: Iterable, catalog: Catalog | None = None) -> FiniteLattice:
    """Insert several gadgets at once; ``specs`` holds (p, q, kind) triples.

    A fourth entry, when present, is the label of the anchor atom an Equi
    gadget hangs its middle element under.

    The result's cover relation is the union of L's and the gadgets'; every
    new element also sits above 0 and below 1.  The lattice property is
    re-verified from scratch.
    """
    catalog = _catalog(catalog)
    elements = list(L.elements)
    covers = list(L.covers())
    labels = dict(L.labels)
    seen = set(elements)
    for p, q, kind, *rest in specs:
        g = catalog[kind]
        ports = _port_map(L, p, q, kind, *rest)
        needed = {x for c in g.covers for x in c if not x.startswith("k")}
        if not needed <= ports.keys():
            raise MissingLabels(f"{kind} needs ports {sorted(needed - ports.keys())}")
        prefix = gadget_prefix(p, q, kind)
        names = dict(ports)
        for k in range(g.internal):
            name = f"{prefix}:k{k}"
            if name in seen:
                raise ValueError(f"gadget {prefix} inserted twice")
            seen.add(name)
            names[f"k{k}"] = name
            elements.append(name)
            labels[name] = name
            covers += [(L.bottom, name), (name, L.top)]
        covers += [(names[x], names[y]) for x, y in g.covers]
    return lattice_from_order(validate_bounded_order(elements, covers), labels)


def insert_gadget(L: FiniteLattice, p, q, kind: str, catalog: Catalog | None = None) -> FiniteLattice:
    return insert_gadgets(L, [(p, q, kind)], catalog)


def lat_of(P: BoundedOrder, X: Iterable = (), kind: str = "G", catalog: Catalog | None = None) -> FiniteLattice:
    """Frame of P with one ``kind`` gadget per strict comparable pair p < q of P^-."""
    if kind not in ("G", "GExt"):
        raise ValueError("lat_of takes kind G or GExt")
    return insert_gadgets(frame(P, X), [(p, q, kind) for p, q in P.strict_pairs(P.inner)], catalog)


# ----------------------------------------------------------------------
# element counts


def count_comparabilities(P: BoundedOrder) -> int:
    return len(P.strict_pairs(P.inner))


def added_element_count(variant: str, n_P: int, c_P: int, c_Q: int,
                        catalog: Catalog | None = None) -> int:
    """15c_P + 15c_Q + 30n_P (original) or 7c_P + 7c_Q + 4n_P (reduced).

    With a catalog the coefficients come from its actual gadget sizes.
    """
    if min(n_P, c_P, c_Q) < 0:
        raise ValueError("counts must be nonnegative")
    sizes = dict(NOMINAL) if catalog is None else {k: catalog[k].size for k in NOMINAL}
    if variant == "original":
        return sizes["GExt"] * (c_P + c_Q) + 2 * sizes["GExt"] * n_P
    if variant == "reduced":
        return sizes["G"] * (c_P + c_Q) + sizes["Equi"] * n_P
    raise ValueError(f"unknown variant {variant!r}")


@dataclass
class ConstructionReport:
    base_size: int
    added_by_gadgets: int
    n_P: int
    c_P: int
    c_Q: int
    formula_expected: int
    variant: str = ""
    top_links: int = 0
    expected_actual: int = 0
    coefficients: dict = field(default_factory=dict)
    catalog_digest: str = ""
    anchor_atoms: int = 0      # frame atoms of Q reserved as Equi anchors, part of base_size

    @property
    def matches_formula(self) -> bool:
        return self.added_by_gadgets == self.formula_expected

    @property
    def matches_catalog(self) -> bool:
        return self.added_by_gadgets == self.expected_actual

    def as_dict(self) -> dict:
        d = dict(self.__dict__)
        d["matches_formula"] = self.matches_formula
        d["matches_catalog"] = self.matches_catalog
        return d


# ----------------------------------------------------------------------
# the disjoint-union construction


@dataclass
class CzedliResult:
    M: FiniteLattice
    L: FiniteLattice
    embedding: dict
    report: ConstructionReport
    links: list

    def __iter__(self):
        return iter((self.M, self.L, self.embedding))


TOP_PAIR = "Q.1"


def _link_specs(P: BoundedOrder, Q: BoundedOrder, beta: IsotoneMap, variant: str) -> list:
    specs = []
    for p in P.inner:
        r = beta(p)
        pp = f"P.{p}"
        qq = TOP_PAIR if r == Q.top else f"Q.{r}"
        if variant == "original":
            specs += [(pp, qq, "GExt"), (qq, pp, "GExt")]
        elif r == Q.top:
            specs.append((pp, None, "EquiTop"))
        else:
            specs.append((pp, qq, "Equi", f"x:Q.{p}"))
    return specs


def czedli_construct(P: BoundedOrder, Q: BoundedOrder, beta: IsotoneMap, variant: str = "reduced",
                     base: FiniteLattice | None = None, catalog: Catalog | None = None) -> CzedliResult:
    """Lattices M <= L with Princ M = P, Princ L = Q and the inclusion inducing beta.

    M is ``base`` when given (it must carry frame labels for P^-), otherwise
    the lattice of P built with the variant's gadget.  L glues M to the
    lattice of Q along the bounds and links each a:p, b:p to the pair of
    beta(p): by Equi in the reduced variant, by two opposite GExt in the
    original one.  Each Equi link hangs its middle element under a private
    atom ``x:p`` of Q's frame, so Q's side is the frame with those atoms.
    When beta(p) is the top of Q there is no pair to link to,
    and an EquiTop gadget makes con(a:p, b:p) total instead.

    Iterating the result yields (M, L, embedding).
    """
    if variant not in ("original", "reduced"):
        raise ValueError(f"unknown variant {variant!r}")
    if beta.source != P or beta.target != Q:
        raise ValueError("beta must map P to Q")
    if not is_zero_separating(beta):
        raise NotZeroSeparating("only 0 may map to 0")
    catalog = _catalog(catalog)
    kind = "G" if variant == "reduced" else "GExt"
    from_base = base is not None
    M = base if from_base else lat_of(P, (), kind, catalog)
    for p in P.inner:
        if f"a:{p}" not in M.labels or f"b:{p}" not in M.labels:
            raise MissingLabels(f"base lacks frame labels for {p}")
    specs = _link_specs(P, Q, beta, variant)
    # one private anchor atom in Q's frame per Equi link
    anchors = [s[3].split(".", 1)[1] for s in specs if s[2] == "Equi"]
    N = lat_of(Q, anchors, kind, catalog)
    glued, embeds = glue({"P": M, "Q": N})
    if any(TOP_PAIR in s[:2] for s in specs):
        # (0, u) generates the total congruence and stands in for the top of Q
        glued = glued.with_labels({**glued.labels, f"a:{TOP_PAIR}": glued.bottom,
                                   f"b:{TOP_PAIR}": glued.labels.get("u:Q.0", glued.labels.get("u:P.0"))})
    L = insert_gadgets(glued, specs, catalog)
    embedding = dict(embeds["P"])

    n_P, c_P, c_Q = len(P.inner), count_comparabilities(P), count_comparabilities(Q)
    n_frame_P = len(frame(P))
    base_size = (len(M) if from_base else n_frame_P) + len(frame(Q, anchors)) - 2
    added = len(L) - base_size
    top_links = sum(1 for s in specs if s[2] == "EquiTop")
    sizes = catalog.sizes()
    formula = added_element_count(variant, n_P, c_P, c_Q)
    link_size = sizes["Equi"] if variant == "reduced" else 2 * sizes["GExt"]
    expected = (added_element_count(variant, n_P, c_P, c_Q, catalog)
                - top_links * (link_size - sizes["EquiTop"]))
    if from_base:
        # P-side gadgets already live in the base
        formula -= NOMINAL[kind] * c_P
        expected -= sizes[kind] * c_P
    coeffs = ({"c_P": sizes[kind], "c_Q": sizes[kind], "n_P": link_size, "top": sizes["EquiTop"]})
    report = ConstructionReport(base_size, added, n_P, c_P, c_Q, formula, variant, top_links,
                                expected, coeffs, catalog.digest, len(anchors))
    return CzedliResult(M, L, embedding, report, specs)


# ----------------------------------------------------------------------
# contract checks


def frame_map(P: BoundedOrder, L: FiniteLattice) -> dict:
    """0 -> Delta, 1 -> nabla, p -> con(a:p, b:p) as names in Princ L."""
    po = princ_order(L)
    f = {P.bottom: "Δ", P.top: "∇"}
    for p in P.inner:
        f[p] = po.con(L.labels[f"a:{p}"], L.labels[f"b:{p}"])
    return f


def check_c1(P: BoundedOrder, L: FiniteLattice) -> bool:
    """p -> con(a:p, b:p) is an order isomorphism P -> Princ L."""
    po = princ_order(L)
    f = frame_map(P, L)
    if len(set(f.values())) != len(P) or len(po.order) != len(P):
        return False
    return all(P.le(x, y) == po.order.le(f[x], f[y]) for x in P for y in P)


def check_c2(P: BoundedOrder, L: FiniteLattice) -> bool:
    """Isolating congruences <-> Down P^- via Base, extending to Con L = (Down P^-)^t."""
    cons = all_congruences(L)
    total = [c for c in cons if c.is_total]
    rest = [c for c in cons if not c.is_total]
    if len(total) != 1 or not all(is_01_isolating(c, include_trivial=True) for c in rest):
        return False
    base = {c: base_of(c, P).carrier for c in rest}
    targets = set(down_sets(P, inner=True))
    if len(set(base.values())) != len(rest) or set(base.values()) != targets:
        return False
    if not all((a <= b) == (base[a] <= base[b]) for a in rest for b in rest):
        return False
    # principal on both sides: con(a:p, b:p) <-> the principal down-set of p
    po = princ_order(L)
    principal = set(po.congruences.values())
    principal_sets = {frozenset()} | {frozenset(P.down(p)) & frozenset(P.inner) for p in P.inner}
    return all((c in principal) == (base[c] in principal_sets) for c in rest)


def check_c3(L: FiniteLattice, X: Iterable) -> bool:
    return all(is_universal_complement(L, f"x:{x}") for x in X)


def check_c4(L: FiniteLattice, links: Iterable) -> bool:
    """Every Equi link (p, r) has con(a:p, b:p) = con(a:r, b:r).

    An EquiTop link sends p to the top of Q, so there con(a:p, b:p) must be total.
    """
    lab = L.labels
    for p, r, kind, *_ in links:
        if kind not in ("Equi", "EquiTop"):
            continue
        theta = principal_congruence(L, lab[f"a:{p}"], lab[f"b:{p}"])
        if kind == "EquiTop":
            if not theta.is_total:
                return False
        elif theta != principal_congruence(L, lab[f"a:{r}"], lab[f"b:{r}"]):
            return False
    return True


def check_c5_lat(P: BoundedOrder, L: FiniteLattice, kind: str, X: Iterable = (),
                 catalog: Catalog | None = None) -> bool:
    catalog = _catalog(catalog)
    return len(L) - len(frame(P, X)) == catalog[kind].size * count_comparabilities(P)


def verify_contract(P: BoundedOrder, X: Iterable = (), kind: str = "G",
                    catalog: Catalog | None = None) -> dict:
    """Run C1, C2 (on the lattice without X), C3 and the lat_of part of C5.

    Returns clause -> bool; a clause whose check raises counts as failed,
    and a lattice that cannot be built fails every clause.
    """
    X = list(X)
    try:
        L = lat_of(P, X, kind, catalog)
        L0 = L if not X else lat_of(P, (), kind, catalog)
    except PrincError:
        return {c: False for c in ("C1", "C2", "C3", "C5")}
    clauses = {"C1": lambda: check_c1(P, L), "C2": lambda: check_c2(P, L0),
               "C3": lambda: check_c3(L, X), "C5": lambda: check_c5_lat(P, L, kind, X, catalog)}
    out = {}
    for name, fn in clauses.items():
        try:
            out[name] = bool(fn())
        except PrincError:
            out[name] = False
    return out
