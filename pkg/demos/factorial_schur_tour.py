"""A short tour of factorial Schur polynomials s_lambda(x|a).

Run with ``python3 demos/factorial_schur_tour.py``.
"""

from eqschub.exactpoly import render
from eqschub.factorial_schur import (
    diagonal_value, eval_at_partition, factorial_schur, generic, make_t,
)
from eqschub.partitions import GrassmannShape, Partition, enumerate_partitions
from eqschub.struct_const import flr_peel

a = generic()

# Three constructions of the same polynomial.  With two variables and
# lambda = (1,1) every route lands on (x1 - a1)(x2 - a1).
lam = Partition((1, 1))
for mode in ("ratio", "jt-h", "jt-e"):
    print(f"{mode:6s} s_(1,1)(x|a) =", render(factorial_schur(lam, a, 2, mode)))

# Inhomogeneity: the top x-degree part is the ordinary Schur polynomial,
# everything else involves the parameters.
print("\ns_(2,1)(x|a) in two variables:")
print("  ", factorial_schur(Partition((2, 1)), a, 2))

# Vanishing: plug in x = a_rho.  The result is zero unless lambda fits
# inside rho, and on the diagonal it is an explicit product of differences.
shape = GrassmannShape(2, 4)
print("\nvanishing pattern on Gr(2,4) (rows lambda, columns rho; . = 0, * = nonzero):")
parts = enumerate_partitions(shape)
header = " ".join(f"{','.join(map(str, r)) or '-':>4s}" for r in parts)
print("       " + header)
for lam in parts:
    s = factorial_schur(lam, a, 2)
    cells = " ".join(f"{'*' if eval_at_partition(s, rho, a, 2) else '.':>4s}" for rho in parts)
    print(f"{','.join(map(str, lam)) or '-':>6s} {cells}")
print("diagonal value at (2,1):", diagonal_value(Partition((2, 1)), a, 2))

# Structure constants at the equivariant specialization a = t.
t = make_t(shape)
print("\nfactorial LR expansion of s_(1) s_(2,1) at a = t (Gr(2,4)):")
for nu, c in flr_peel((1,), (2, 1), t, 2).items():
    print(f"   s_{tuple(nu)}: {c}")
