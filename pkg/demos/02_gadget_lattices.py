"""Build the gadget lattice of a small order and check that Princ gives it back."""

from princ import chain_order, lat_of, load_catalog, order_isomorphism, princ_order, verify_contract
from princ.formats import to_dot

catalog = load_catalog()
print("catalog digest", catalog.digest, "sizes", catalog.sizes())

P = chain_order(4, ["0", "p", "q", "1"])
for kind in ("G", "GExt"):
    L = lat_of(P, ["x"], kind)
    Princ = princ_order(L).order
    print(f"{kind}: |Lat P| = {len(L)}, |Princ| = {len(Princ)},",
          "isomorphic to P:", order_isomorphism(P, Princ) is not None)
    print("  contract:", verify_contract(P, ["x"], kind))

print(to_dot(P, "P"))
