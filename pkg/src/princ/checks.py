"""Property suites shared by the test harness and ``princ verify-corpus``.

Each suite returns a list of failure strings; an empty list means it passed.
"""

from __future__ import annotations

import itertools

from .congruence import (all_congruences, induced_hom_map, is_cong_projective, oracle_all_congruences,
                         oracle_principal, principal_congruence, principal_congruence_via_covers,
                         spreading_chain)
from .lattice import FiniteLattice, Interval, LatticeHom, eval_alternating_term


def intervals(L: FiniteLattice) -> list:
    return [Interval(x, y) for x in L.elements for y in L.elements if L.le(x, y)]


def oracle_equivalence(L: FiniteLattice) -> list:
    """Closure, cover route and brute force agree on con(a, b) and on Con L."""
    fails = []
    oracle = oracle_all_congruences(L)
    if all_congruences(L) != oracle:
        fails.append(f"Con L differs from the oracle on {L.elements}")
    for a, b in itertools.combinations(L.elements, 2):
        c = principal_congruence(L, a, b)
        if c != oracle_principal(L, a, b, oracle):
            fails.append(f"con({a},{b}) differs from the oracle")
        if c != principal_congruence_via_covers(L, a, b):
            fails.append(f"con({a},{b}) differs between closure and covers")
    return fails


def projectivity_coherence(L: FiniteLattice) -> list:
    """Projective => collapses; collapses => spreading chain exists (and conversely)."""
    fails = []
    ivs = intervals(L)
    for src in ivs:
        theta = principal_congruence(L, src.low, src.high)
        for dst in ivs:
            w = is_cong_projective(L, src, dst)
            collapses = theta.related(dst.low, dst.high)
            if w is not None:
                if (eval_alternating_term(L, src.low, w), eval_alternating_term(L, src.high, w)) != dst:
                    fails.append(f"bad witness {w} for {src} => {dst}")
                if not collapses:
                    fails.append(f"{src} => {dst} but con{tuple(src)} keeps {tuple(dst)} apart")
            chain = spreading_chain(L, src, dst)
            if collapses != (chain is not None):
                fails.append(f"spreading chain for {src} -> {dst} is {chain}, collapse is {collapses}")
            if chain is not None:
                if chain[0] != dst.low or chain[-1] != dst.high:
                    fails.append(f"chain {chain} does not span {tuple(dst)}")
                for u, v in zip(chain, chain[1:]):
                    if not L.le(u, v) or is_cong_projective(L, src, Interval(u, v)) is None:
                        fails.append(f"chain step [{u},{v}] is not projective from {src}")
    return fails


def hom_transport(phi: LatticeHom, max_pairs: int | None = None) -> list:
    """Mapped witnesses re-verify; con transport and isotonicity transport hold."""
    K, L = phi.source, phi.target
    fails = []
    ivs = intervals(K)
    cons = {iv: principal_congruence(K, *iv) for iv in ivs}
    images = {iv: principal_congruence(L, phi(iv.low), phi(iv.high)) for iv in ivs}
    pairs = list(itertools.product(ivs, ivs))
    if max_pairs is not None:
        pairs = pairs[:max_pairs]
    for src, dst in pairs:
        w = is_cong_projective(K, src, dst)
        if w is not None:
            fw = [phi(p) for p in w]
            got = (eval_alternating_term(L, phi(src.low), fw), eval_alternating_term(L, phi(src.high), fw))
            if got != (phi(dst.low), phi(dst.high)):
                fails.append(f"mapped witness of {src} => {dst} evaluates to {got}")
        if cons[src].related(dst.low, dst.high) and not images[src].related(phi(dst.low), phi(dst.high)):
            fails.append(f"{tuple(dst)} in con{tuple(src)} but images are apart")
        if cons[dst] <= cons[src] and not images[dst] <= images[src]:
            fails.append(f"con{tuple(dst)} <= con{tuple(src)} is not transported")
    return fails


def induced_surjectivity(phi: LatticeHom) -> list:
    """A surjective hom induces a surjective map of Princ orders."""
    if not phi.is_surjective():
        return ["hom is not surjective"]
    f = induced_hom_map(phi.source, phi.target, phi)
    return [] if f.is_surjective() else [f"induced map misses {sorted(set(f.target) - f.image())}"]
