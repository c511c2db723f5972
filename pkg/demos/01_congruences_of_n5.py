"""Principal congruences of N5, three ways, plus one projectivity witness."""

from princ import (Interval, all_congruences, is_cong_projective, named_lattice, oracle_principal,
                   principal_congruence, principal_congruence_via_covers, princ_order, spreading_chain)

L = named_lattice("N5")
print("N5 covers:", L.covers())
print("|Con N5| =", len(all_congruences(L)))

po = princ_order(L)
for name, theta in po.congruences.items():
    print(f"  {name:10} blocks {theta.blocks}")

a, b = "o", "c"
closure = principal_congruence(L, a, b)
assert closure == principal_congruence_via_covers(L, a, b) == oracle_principal(L, a, b)
print(f"con({a},{b}) agrees across closure, covers and brute force:", closure.blocks)

w = is_cong_projective(L, Interval("c", "i"), Interval("o", "a"))
print("[c,i] => [o,a] via alternating term parameters", w)
print("spreading chain from [o,c] to [a,i]:", spreading_chain(L, Interval("o", "c"), Interval("a", "i")))
