"""Factorial Schur functions s_lambda(x|a) and their companions.

Polynomials live in x_1..x_p over a parameter sequence ``a``: either the
generic sequence of independent symbols a_i (i any integer) or a finitely
supported one such as the equivariant sequence t_i = T_{m-i+1}.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Mapping

from .exactpoly import ONE, ZERO, Polynomial, Var, det, substitute, x as xvar, a as avar, T as Tvar
from .partitions import GrassmannShape, Partition, conjugate, contains, enumerate_partitions
from .report import Report

__all__ = [
    "ParameterSequence", "make_t", "generic", "zero_sequence",
    "factorial_power", "h_factorial", "e_factorial", "schur_ratio",
    "schur_jt_h", "schur_jt_e", "factorial_schur", "eval_at_partition",
    "diagonal_value", "chevalley_coeff", "identity_suite", "vanishing_table",
    "is_symmetric",
]


class ParameterSequence:
    """A doubly infinite sequence (a_i) with lazily applied shift.

    ``term(i)`` is ``window[i + offset]`` when that index is stored.  Other
    indices give 0, or the symbol a_{i+offset} for a generic sequence.
    """

    __slots__ = ("window", "offset", "symbolic", "_key")

    def __init__(self, window: Mapping[int, Polynomial | int] | None = None,
                 offset: int = 0, symbolic: bool = False):
        self.window = {i: Polynomial._coerce(v) for i, v in (window or {}).items()}
        if not symbolic:
            self.window = {i: v for i, v in self.window.items() if v}
        self.offset = offset
        self.symbolic = symbolic
        self._key = (symbolic, offset, frozenset(self.window.items()))

    def term(self, i: int) -> Polynomial:
        j = i + self.offset
        v = self.window.get(j)
        if v is not None:
            return v
        return avar(j) if self.symbolic else ZERO

    __getitem__ = term

    def shift(self, s: int) -> "ParameterSequence":
        """tau^s: the sequence whose i-th term is the (i+s)-th term of self."""
        return ParameterSequence(self.window, self.offset + s, self.symbolic)

    def materialize(self, lo: int, hi: int) -> "ParameterSequence":
        """Same terms on [lo, hi] stored explicitly with offset 0."""
        return ParameterSequence({i: self.term(i) for i in range(lo, hi + 1)}, 0, self.symbolic)

    def __eq__(self, other):
        return isinstance(other, ParameterSequence) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        kind = "generic" if self.symbolic else "finite"
        return f"ParameterSequence({kind}, offset={self.offset}, support={sorted(self.window)})"


def generic() -> ParameterSequence:
    return ParameterSequence(symbolic=True)


def zero_sequence() -> ParameterSequence:
    return ParameterSequence()


def make_t(shape: GrassmannShape) -> ParameterSequence:
    """t_i = T_{m-i+1} for 1 <= i <= m and 0 otherwise."""
    m = shape.m if isinstance(shape, GrassmannShape) else int(shape)
    return ParameterSequence({i: Tvar(m - i + 1) for i in range(1, m + 1)})


def factorial_power(y: Polynomial, a: ParameterSequence, k: int) -> Polynomial:
    """(y|a)^k = (y - a_1) ... (y - a_k)."""
    if k < 0:
        raise ValueError("factorial power needs k >= 0")
    out = ONE
    for i in range(1, k + 1):
        out = out * (y - a.term(i))
    return out


@lru_cache(maxsize=None)
def h_factorial(k: int, a: ParameterSequence, p: int) -> Polynomial:
    """Sum over i_1 <= ... <= i_k of prod_r (x_{i_r} - a_{i_r + r - 1})."""
    if k < 0:
        return ZERO
    return _h_prefix(p, k, a)


@lru_cache(maxsize=None)
def _h_prefix(nv: int, n: int, a: ParameterSequence) -> Polynomial:
    # sequences with entries <= nv, split by how many trailing entries equal nv
    if n == 0:
        return ONE
    if nv == 0:
        return ZERO
    xv = xvar(nv)
    total = ZERO
    tail = ONE
    for r in range(n + 1):
        if r:
            s = n - r + 1
            tail = tail * (xv - a.term(nv + s - 1))
        total = total + _h_prefix(nv - 1, n - r, a) * tail
    return total


@lru_cache(maxsize=None)
def e_factorial(k: int, a: ParameterSequence, p: int) -> Polynomial:
    """Sum over i_1 < ... < i_k of prod_r (x_{i_r} - a_{i_r - r + 1}); 0 if k > p."""
    if k < 0 or k > p:
        return ZERO
    return _e_prefix(p, k, a)


@lru_cache(maxsize=None)
def _e_prefix(nv: int, n: int, a: ParameterSequence) -> Polynomial:
    if n == 0:
        return ONE
    if n > nv:
        return ZERO
    last = xvar(nv) - a.term(nv - n + 1)
    return _e_prefix(nv - 1, n, a) + _e_prefix(nv - 1, n - 1, a) * last


def _check_length(lam: Partition, p: int) -> Partition:
    lam = Partition(lam)
    if len(lam) > p:
        raise ValueError(f"{tuple(lam)} has more than p={p} parts")
    return lam


@lru_cache(maxsize=None)
def schur_ratio(lam: Partition, a: ParameterSequence, p: int) -> Polynomial:
    """det[(x_j|a)^(lam_i+p-i)] / det[(x_j|a)^(p-i)], divided exactly."""
    lam = _check_length(lam, p).padded(p)
    xs = [xvar(j) for j in range(1, p + 1)]
    num = det([[factorial_power(xs[j], a, lam[i] + p - 1 - i) for j in range(p)] for i in range(p)])
    den = det([[factorial_power(xs[j], a, p - 1 - i) for j in range(p)] for i in range(p)])
    vander = ONE
    for i in range(p):
        for j in range(i + 1, p):
            vander = vander * (xs[i] - xs[j])
    if den != vander:
        raise ArithmeticError("factorial Vandermonde determinant mismatch")
    out = num
    for i in range(p):
        for j in range(i + 1, p):
            out = out.exact_div(xs[i] - xs[j])
    return out


@lru_cache(maxsize=None)
def schur_jt_h(lam: Partition, a: ParameterSequence, p: int) -> Polynomial:
    """det[h_{lam_i - i + j}(x | tau^(1-j) a)] over 1 <= i, j <= p."""
    lam = _check_length(lam, p).padded(p)
    shifts = [a.shift(-j) for j in range(p)]
    return det([[h_factorial(lam[i] - i + j, shifts[j], p) for j in range(p)] for i in range(p)])


@lru_cache(maxsize=None)
def schur_jt_e(lam: Partition, a: ParameterSequence, p: int, cols: int | None = None) -> Polynomial:
    """det[e_{lam'_i - i + j}(x | tau^(j-1) a)] over 1 <= i, j <= cols."""
    lam = _check_length(lam, p)
    n = max(lam.part(1), 1) if cols is None else cols
    if n < lam.part(1):
        raise ValueError(f"cols={n} is smaller than the first part of {tuple(lam)}")
    conj = conjugate(lam).padded(n)
    shifts = [a.shift(j) for j in range(n)]
    return det([[e_factorial(conj[i] - i + j, shifts[j], p) for j in range(n)] for i in range(n)])


def factorial_schur(lam: Partition, a: ParameterSequence, p: int, mode: str = "jt-h") -> Polynomial:
    """s_lambda(x|a) by the named construction: "ratio", "jt-h" or "jt-e"."""
    lam = Partition(lam)
    if mode == "jt-h":
        return schur_jt_h(lam, a, p)
    if mode == "ratio":
        return schur_ratio(lam, a, p)
    if mode == "jt-e":
        return schur_jt_e(lam, a, p)
    raise ValueError(f"unknown construction {mode!r}")


def evaluation_point(rho: Partition, a: ParameterSequence, p: int) -> dict[Var, Polynomial]:
    rho = _check_length(rho, p).padded(p)
    return {Var("x", i): a.term(rho[i - 1] + p + 1 - i) for i in range(1, p + 1)}


def eval_at_partition(f: Polynomial, rho: Partition, a: ParameterSequence, p: int) -> Polynomial:
    """Substitute x_i := a_{rho_i + p + 1 - i}."""
    return substitute(f, evaluation_point(rho, a, p))


def diagonal_value(lam: Partition, a: ParameterSequence, p: int) -> Polynomial:
    """Product over boxes (i, j) of (a_{lam_i+p-i+1} - a_{p-lam'_j+j})."""
    lam = _check_length(lam, p)
    conj = conjugate(lam)
    out = ONE
    for i, row in enumerate(lam, start=1):
        for j in range(1, row + 1):
            out = out * (a.term(row + p - i + 1) - a.term(p - conj.part(j) + j))
    return out


def chevalley_coeff(lam: Partition, a: ParameterSequence, p: int) -> Polynomial:
    """Diagonal coefficient of the factorial Pieri rule, s_(1)(a_lam|a)."""
    lam = _check_length(lam, p).padded(p)
    out = ZERO
    for i in range(1, p + 1):
        out = out + a.term(lam[i - 1] + p + 1 - i) - a.term(i)
    return out


def is_symmetric(f: Polynomial, p: int) -> bool:
    for i in range(1, p):
        swap = {Var("x", i): xvar(i + 1), Var("x", i + 1): xvar(i)}
        if substitute(f, swap) != f:
            return False
    return True


def identity_suite(p: int, m: int, a: ParameterSequence | None = None) -> Report:
    """Shift recurrences, the Cauchy-type identity and the vanishing determinant.

    Checks exact identities in Z[a][x_1..x_p]; aborts with IdentityFailure on
    the first violation.
    """
    a = generic() if a is None else a
    rep = Report(f"identities p={p} m={m}")
    down = a.shift(-1)
    for i in range(0, m + 1):
        lhs = h_factorial(i + 1, down, p)
        rhs = h_factorial(i + 1, a, p) + (a.term(i + p) - a.term(0)) * h_factorial(i, a, p)
        rep.record("h shift recurrence", f"p={p}, i={i}", lhs == rhs)
    up = a.shift(1)
    for j in range(0, p + 1):
        lhs = e_factorial(j + 1, up, p)
        rhs = e_factorial(j + 1, a, p) + (a.term(1) - a.term(p - j + 1)) * e_factorial(j, a, p)
        rep.record("e shift recurrence", f"p={p}, j={j}", lhs == rhs)
    for s in range(1, m + 1):
        total = ZERO
        for r in range(0, p + 1):
            term = e_factorial(r, a, p) * h_factorial(s - r, a.shift(1 - s), p)
            total = total + term if r % 2 == 0 else total - term
        rep.record("e-h alternating sum", f"p={p}, s={s}", not total)
    for k in range(p + 1, m + 1):
        rep.record("vanishing determinant", f"p={p}, k={k}", not capital_e_x(k, a, p))
    return rep


def capital_e_x(k: int, a: ParameterSequence, p: int) -> Polynomial:
    """det(h_{1+j-i}(x|tau^(1-j) a)) of size k; equals e_k(x|a), hence 0 for k > p."""
    shifts = [a.shift(-j) for j in range(k)]
    return det([[h_factorial(1 + j - i, shifts[j], p) for j in range(k)] for i in range(k)])


def vanishing_table(shape: GrassmannShape, a: ParameterSequence | None = None) -> Report:
    """s_lambda(a_rho|a) is 0 unless lambda is contained in rho; diagonal when equal."""
    a = generic() if a is None else a
    p = shape.p
    rep = Report(f"vanishing {shape}")
    parts = enumerate_partitions(shape)
    for lam in parts:
        s = factorial_schur(lam, a, p)
        for rho in parts:
            val = eval_at_partition(s, rho, a, p)
            inst = f"lambda={tuple(lam)}, rho={tuple(rho)}"
            if not contains(rho, lam):
                rep.record("vanishing", inst, not val)
            elif lam == rho:
                rep.record("diagonal value", inst, val == diagonal_value(lam, a, p))
    return rep
