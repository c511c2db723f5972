"""Principal congruences of finite lattices and the gadget lattices that realize orders."""

from .congruence import (Congruence, PrincOrder, all_congruences, base_of, congruence_generated,
                         congruence_join, congruence_lattice_order, congruence_meet, delta,
                         induced_hom_map, induced_sub_map, is_01_isolating, is_cong_projective, nabla,
                         oracle_all_congruences, oracle_principal, principal_congruence,
                         principal_congruence_via_covers, princ_order, spreading_chain)
from .construct import (ConstructionReport, added_element_count, czedli_construct, frame, insert_gadget,
                        insert_gadgets, lat_of, load_catalog, verify_contract)
from .errors import PrincError
from .lattice import (FiniteLattice, Interval, LatticeHom, chain_lattice, eval_alternating_term, glue,
                      is_01_sublattice, is_universal_complement, lattice_from_covers, lattice_from_order,
                      named_lattice, quotient)
from .order import (BoundedOrder, DownSet, IsotoneMap, OrderTriple, alpha_map, beta_map, btm_of_triple,
                    chain_order, down_set_order, down_sets, is_zero_separating, order_isomorphism,
                    top_of_triple, triple_isomorphism, validate_bounded_order)
from .triples import (LatticeTriple, is_surjective_triple, ordc, represent, represent_surjective,
                      verify_representation)

__version__ = "0.1.0"
