"""Gr(3,6): a full multiplication table, reusable normal forms, timings.

Run with ``python3 demos/larger_grassmannian.py [cache-dir]``.  With a cache
directory the generator normal forms are saved and reused on the next run.
"""

import sys
import time

from eqschub.eqqring import build_ring, eqlr, specialize
from eqschub.partitions import GrassmannShape, Partition, format_partition

shape = GrassmannShape(3, 6)
cache = sys.argv[1] if len(sys.argv) > 1 else None

start = time.perf_counter()
ring = build_ring("e", shape, cache_dir=cache)
basis = ring.basis
table = {(lam, mu): eqlr(lam, mu, ring) for lam in basis for mu in basis}
elapsed = time.perf_counter() - start
print(f"{len(table)} products on {shape} in {elapsed:.1f}s")
if cache:
    print("normal forms saved to", ring.save(cache))

# The longest coefficient in the table and where it sits.
(lam, mu), exp = max(table.items(), key=lambda kv: max((len(c) for _, c in kv[1].items()), default=0))
(nu, d), c = max(exp.items(), key=lambda kv: len(kv[1]))
print(f"largest coefficient: q^{d} sigma_[{format_partition(nu)}] in sigma_[{format_partition(lam)}] * sigma_[{format_partition(mu)}], "
      f"{len(c)} terms of degree {lam.weight + mu.weight - nu.weight - 6 * d}")

# Gromov-Witten numbers: the T = 0 layer of the point class squared.
point = Partition((3, 3, 3))
print("sigma_point^2 at T = 0:", specialize(table[(point, point)], "T0"))

# The count of q-degrees that actually occur.
degrees = sorted({d for exp in table.values() for _, d in exp})
print("q-degrees appearing:", degrees)
