"""Equivariant quantum products on Gr(2,4) and what the specializations show.

Run with ``python3 demos/quantum_products.py``.
"""

from eqschub.eqqring import (
    SchubertExpansion, build_ring, eqlr, eqlr_xmodel, pieri_rule, reduce_out_of_rectangle,
    specialize,
)
from eqschub.partitions import GrassmannShape, Partition, format_partition

shape = GrassmannShape(2, 4)
ring_e = build_ring("e", shape)
ring_h = build_ring("h", shape)

print("relations of the e-model:")
for r in ring_e.relation_generators():
    print("   ", r)

# The divisor class acts by the Pieri rule.  The q-term shows up only when
# the first row is full and every row is nonempty.
print("\nmultiplication by sigma_1:")
for lam in ring_e.basis:
    prod = eqlr(lam, (1,), ring_e)
    assert prod == pieri_rule(lam, shape)
    print(f"   sigma_[{format_partition(lam)}] * sigma_1 = {prod}")

# The same product from three independent routes.
lam, mu = Partition((2, 1)), Partition((2, 1))
routes = {
    "h-model": eqlr(lam, mu, ring_h),
    "e-model": eqlr(lam, mu, ring_e),
    "x-model": eqlr_xmodel(lam, mu, ring_e),
}
print(f"\nsigma_[{format_partition(lam)}] * sigma_[{format_partition(mu)}]:")
print("   ", routes["e-model"])
print("    routes agree:", len({r.render() for r in routes.values()}) == 1)

# q = 0 gives equivariant cohomology, T = 0 gives quantum cohomology and
# both together give the classical cup product.
full = routes["e-model"]
print("\n    q = 0:", specialize(full, "q0"))
print("    T = 0:", specialize(full, "T0"))
print("    both :", specialize(specialize(full, "q0"), "T0"))

# Classes with a first row that is too long fold back into the rectangle
# with a power of q.
print("\nout-of-rectangle classes:")
for nu in [(3,), (3, 1), (3, 2), (4, 2)]:
    print(f"   s~_[{format_partition(nu)}] = {reduce_out_of_rectangle(nu, ring_e)}")

# Associativity through expansions: (s1 s1) s2 against s1 (s1 s2).
one, two = SchubertExpansion.basis(Partition((1,))), SchubertExpansion.basis(Partition((2,)))
left = ring_e.multiply(ring_e.multiply(one, one), two)
right = ring_e.multiply(one, ring_e.multiply(one, two))
print("\n(s1 s1) s2 =", left)
print("associative:", left == right)
