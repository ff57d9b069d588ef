"""Factorial Littlewood-Richardson coefficients c_{lambda mu}^nu(a).

Two independent engines compute them, peeling (:func:`flr_peel`) and
triangular solving at the vanishing points (:func:`flr_vanish`); the
combinatorial Littlewood-Richardson rule (:func:`classical_lr`) is the
oracle for the top-degree part.
"""

from __future__ import annotations

from functools import lru_cache

from .exactpoly import Polynomial, Var, mask_of
from .factorial_schur import (
    ParameterSequence, chevalley_coeff, diagonal_value, eval_at_partition,
    factorial_schur, generic,
)
from .partitions import Partition, contains, iter_partitions, partition_key, successors

__all__ = [
    "FactorialExpansion", "expand_in_basis", "flr_peel", "flr_vanish",
    "classical_lr", "pieri_factorial", "sorted_expansion",
]

FactorialExpansion = dict  # Partition -> Polynomial


def sorted_expansion(exp: dict) -> dict:
    return {nu: exp[nu] for nu in sorted(exp, key=partition_key) if exp[nu]}


def _x_vector(part: int, p: int) -> tuple[int, ...]:
    ex = Polynomial.unpack(part)
    return tuple(ex.get(Var("x", i), 0) for i in range(1, p + 1))


def expand_in_basis(f: Polynomial, a: ParameterSequence, p: int) -> dict:
    """Coefficients of a symmetric ``f`` in the basis s_nu(x|a), len(nu) <= p.

    Peels off the lex-leading monomial x^nu of the top x-degree part, which
    must be the leading monomial of s_nu(x); raises ArithmeticError if ``f``
    is not symmetric or the degree fails to drop.
    """
    xm = mask_of(Var("x", i) for i in range(1, p + 1))
    out: dict[Partition, Polynomial] = {}
    rem = f
    last = None
    while rem:
        groups = rem.split(xm)
        vecs = {part: _x_vector(part, p) for part in groups}
        part = max(groups, key=lambda k: (sum(vecs[k]), vecs[k]))
        vec = vecs[part]
        step = (sum(vec), vec)
        if last is not None and step >= last:
            raise ArithmeticError("peeling did not reduce the leading x-monomial")
        last = step
        if any(vec[i] < vec[i + 1] for i in range(p - 1)):
            raise ArithmeticError(f"leading exponent {vec} is not a partition; input not symmetric")
        nu = Partition(vec)
        c = groups[part]
        out[nu] = out.get(nu, 0) + c
        rem = rem - c * factorial_schur(nu, a, p)
    return sorted_expansion(out)


@lru_cache(maxsize=None)
def _flr_peel(lam: Partition, mu: Partition, a: ParameterSequence, p: int):
    prod = factorial_schur(lam, a, p) * factorial_schur(mu, a, p)
    return tuple(expand_in_basis(prod, a, p).items())


def flr_peel(lam, mu, a: ParameterSequence, p: int) -> dict:
    """s_lam(x|a) s_mu(x|a) expanded by direct peeling."""
    lam, mu = Partition(lam), Partition(mu)
    if partition_key(lam) > partition_key(mu):
        lam, mu = mu, lam
    return dict(_flr_peel(lam, mu, a, p))


@lru_cache(maxsize=None)
def _eval_schur(nu: Partition, rho: Partition, a: ParameterSequence, p: int) -> Polynomial:
    return eval_at_partition(factorial_schur(nu, a, p), rho, a, p)


def _pivot_factors(rho: Partition, a: ParameterSequence, p: int) -> list[Polynomial]:
    conj = rho.conjugate()
    return [a.term(row + p - i + 1) - a.term(p - conj.part(j) + j)
            for i, row in enumerate(rho, start=1) for j in range(1, row + 1)]


def flr_vanish(lam, mu, p: int, a: ParameterSequence | None = None) -> dict:
    """Coefficients by triangular solving at the points x = a_rho.

    Only valid over the generic sequence, where every pivot s_rho(a_rho|a)
    is a nonzero product of differences; substitute afterwards to specialize.
    """
    a = generic() if a is None else a
    if not a.symbolic:
        raise ValueError("flr_vanish needs the generic sequence")
    lam, mu = Partition(lam), Partition(mu)
    total = lam.weight + mu.weight
    candidates = [nu for nu in iter_partitions(total, p) if contains(nu, lam) and contains(nu, mu)]
    candidates.sort(key=partition_key)
    out: dict[Partition, Polynomial] = {}
    for rho in candidates:
        val = _eval_schur(lam, rho, a, p) * _eval_schur(mu, rho, a, p)
        for nu, c in out.items():
            if nu != rho and contains(rho, nu):
                val = val - c * _eval_schur(nu, rho, a, p)
        if not val:
            continue
        factors = _pivot_factors(rho, a, p)
        pivot = Polynomial.constant(1)
        for fac in factors:
            pivot = pivot * fac
        if pivot != diagonal_value(rho, a, p) or pivot != _eval_schur(rho, rho, a, p):
            raise ArithmeticError(f"pivot mismatch at {tuple(rho)}")
        for fac in factors:
            val = val.exact_div(fac)
        out[rho] = val
    return sorted_expansion(out)


def classical_lr(lam, mu, nu) -> int:
    """Number of LR tableaux of shape nu/lam and content mu (lattice words)."""
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if nu.weight != lam.weight + mu.weight or not contains(nu, lam) or not contains(nu, mu):
        return 0
    # cells in reading order: rows top to bottom, each row right to left
    cells = [(r, c) for r in range(len(nu)) for c in range(nu[r] - 1, lam.part(r + 1) - 1, -1)]
    filling: dict[tuple[int, int], int] = {}
    counts = [0] * (len(mu) + 1)
    n_colors = len(mu)

    def rec(k: int) -> int:
        if k == len(cells):
            return 1
        r, c = cells[k]
        hi = n_colors
        right = filling.get((r, c + 1))
        if right is not None:
            hi = min(hi, right)
        lo = 1
        above = filling.get((r - 1, c))
        if above is not None:
            lo = above + 1
        total = 0
        for v in range(lo, hi + 1):
            if counts[v] >= mu[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            counts[v] += 1
            filling[(r, c)] = v
            total += rec(k + 1)
            del filling[(r, c)]
            counts[v] -= 1
        return total

    return rec(0)


def pieri_factorial(lam, a: ParameterSequence, p: int) -> dict:
    """s_(1) s_lam = sum of one-box additions (at most p rows) + diagonal term."""
    lam = Partition(lam)
    out: dict[Partition, Polynomial] = {mu: Polynomial.constant(1) for mu in successors(lam, p)}
    diag = chevalley_coeff(lam, a, p)
    if diag:
        out[lam] = diag
    return sorted_expansion(out)
