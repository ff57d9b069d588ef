"""Exact sparse multivariate polynomials, linear solving and Groebner bases.

Monomials are packed into a single Python integer: every variable owns an
8-bit field (7 exponent bits plus a guard bit used to detect overflow), so
multiplying monomials is integer addition.  Field positions are assigned on
first use from a process-wide registry; packed monomials are therefore only
meaningful inside one process, and anything leaving the process goes through
the canonical text rendering (``str(poly)``) and :func:`parse`.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple, Sequence

__all__ = [
    "Var", "Polynomial", "VariableSpace", "LinearSystem", "Solution",
    "Inconsistent", "ResourceLimitExceeded", "BlockOrder",
    "T", "q", "x", "a", "gen", "const", "parse", "det",
    "mul", "substitute", "solve_exact", "solve_exact_many",
    "buchberger", "reduce_gb", "mask_of",
]

_BITS = 8
_MAXEXP = (1 << (_BITS - 1)) - 1

# rendering order of variable families
FAMILY_ORDER = {"h": 0, "e": 1, "x": 2, "q": 3, "T": 4, "a": 5}


class Var(NamedTuple):
    family: str
    index: int = 0

    @property
    def name(self) -> str:
        if self.family == "q":
            return "q"
        return f"{self.family}{self.index}"

    def sort_key(self):
        return (FAMILY_ORDER.get(self.family, len(FAMILY_ORDER)), self.family, self.index)

    def __str__(self) -> str:
        return self.name


_var_ids: dict[Var, int] = {}
_vars: list[Var] = []
_guard = 0


def _vid(v: Var) -> int:
    global _guard
    i = _var_ids.get(v)
    if i is None:
        if v.family not in FAMILY_ORDER:
            raise ValueError(f"unknown variable family {v.family!r}")
        i = len(_vars)
        _vars.append(v)
        _var_ids[v] = i
        _guard |= 1 << (i * _BITS + _BITS - 1)
    return i


def mask_of(variables: Iterable[Var]) -> int:
    """Bit mask covering the exponent fields of ``variables``."""
    m = 0
    for v in variables:
        m |= ((1 << _BITS) - 1) << (_vid(v) * _BITS)
    return m


def _pack(exps: Mapping[Var, int]) -> int:
    m = 0
    for v, e in exps.items():
        if e < 0 or e > _MAXEXP:
            raise OverflowError(f"exponent {e} of {v} out of range")
        if e:
            m |= e << (_vid(v) * _BITS)
    return m


@lru_cache(maxsize=1 << 16)
def _unpack(m: int) -> tuple[tuple[Var, int], ...]:
    out = []
    i = 0
    field_mask = (1 << _BITS) - 1
    while m:
        e = m & field_mask
        if e:
            out.append((_vars[i], e))
        m >>= _BITS
        i += 1
    out.sort(key=lambda ve: ve[0].sort_key())
    return tuple(out)


def _exp(m: int, v: Var) -> int:
    return (m >> (_vid(v) * _BITS)) & ((1 << _BITS) - 1)


def _check_overflow(terms: dict) -> None:
    g = _guard
    for m in terms:
        if m & g:
            raise OverflowError("monomial exponent exceeds the packed field width")


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class Polynomial:
    """Immutable sparse polynomial with integer or rational coefficients."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[int, int | Fraction] | None = None):
        # trusted constructor: keys are packed monomials, no zero coefficients
        self._t = dict(terms) if terms else {}
        self._hash = None

    # -- construction ------------------------------------------------------
    @classmethod
    def _raw(cls, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p._t = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "Polynomial":
        c = _norm(c)
        return cls._raw({0: c} if c else {})

    @classmethod
    def variable(cls, v: Var) -> "Polynomial":
        return cls._raw({1 << (_vid(v) * _BITS): 1})

    @classmethod
    def from_terms(cls, items: Iterable[tuple[Mapping[Var, int], int | Fraction]]) -> "Polynomial":
        t: dict = {}
        for exps, c in items:
            k = _pack(exps)
            t[k] = t.get(k, 0) + c
        return cls._raw({k: _norm(c) for k, c in t.items() if c})

    @classmethod
    def monomial(cls, exps: Mapping[Var, int], c=1) -> "Polynomial":
        return cls.from_terms([(exps, c)])

    # -- inspection --------------------------------------------------------
    @property
    def raw(self) -> dict:
        """The packed term dictionary (read-only by convention)."""
        return self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def __len__(self) -> int:
        return len(self._t)

    def terms(self) -> Iterator[tuple[dict[Var, int], int | Fraction]]:
        for m, c in self._t.items():
            yield dict(_unpack(m)), c

    def variables(self) -> set[Var]:
        out: set[Var] = set()
        for m in self._t:
            out.update(v for v, _ in _unpack(m))
        return out

    def coefficient(self, exps: Mapping[Var, int]):
        return self._t.get(_pack(exps), 0)

    def constant_term(self):
        return self._t.get(0, 0)

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def degree(self, v: Var | None = None) -> int:
        """Total degree, or the degree in ``v``; -1 for the zero polynomial."""
        if not self._t:
            return -1
        if v is None:
            return max(sum(e for _, e in _unpack(m)) for m in self._t)
        return max(_exp(m, v) for m in self._t)

    def is_integral(self) -> bool:
        return all(not isinstance(c, Fraction) for c in self._t.values())

    def integral(self) -> "Polynomial":
        """Return self with int coefficients; raise ArithmeticError on a fraction."""
        for c in self._t.values():
            if isinstance(c, Fraction):
                raise ArithmeticError(f"non-integral coefficient {c} in {self}")
        return self

    # -- arithmetic --------------------------------------------------------
    @staticmethod
    def _coerce(o) -> "Polynomial":
        if isinstance(o, Polynomial):
            return o
        if isinstance(o, (int, Fraction)):
            return Polynomial.constant(o)
        return NotImplemented

    def __add__(self, o):
        o = self._coerce(o)
        if o is NotImplemented:
            return o
        if len(o._t) > len(self._t):
            a, b = o._t, self._t
        else:
            a, b = self._t, o._t
        r = dict(a)
        for m, c in b.items():
            s = r.get(m, 0) + c
            if s:
                r[m] = _norm(s)
            else:
                r.pop(m, None)
        return Polynomial._raw(r)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self._t.items()})

    def __sub__(self, o):
        o = self._coerce(o)
        if o is NotImplemented:
            return o
        r = dict(self._t)
        for m, c in o._t.items():
            s = r.get(m, 0) - c
            if s:
                r[m] = _norm(s)
            else:
                r.pop(m, None)
        return Polynomial._raw(r)

    def __rsub__(self, o):
        o = self._coerce(o)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            o = _norm(o)
            if not o:
                return ZERO
            return Polynomial._raw({m: _norm(c * o) for m, c in self._t.items()})
        if not isinstance(o, Polynomial):
            return NotImplemented
        return mul(self, o)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        r, b = ONE, self
        while n:
            if n & 1:
                r = r * b
            n >>= 1
            if n:
                b = b * b
        return r

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            o = Polynomial.constant(o)
        if not isinstance(o, Polynomial):
            return NotImplemented
        return self._t == o._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def exact_div(self, g: "Polynomial") -> "Polynomial":
        """Quotient f / g; raises ArithmeticError unless g divides f exactly."""
        if not g:
            raise ZeroDivisionError("division by the zero polynomial")
        if g.is_constant():
            c = g._t[0]
            return Polynomial._raw({m: _norm(Fraction(v) / c) for m, v in self._t.items()})
        # long division in a variable of g whose leading coefficient is a constant
        for v in sorted(g.variables(), key=Var.sort_key):
            d = g.degree(v)
            lead = g.coeff_in(v, d)
            if lead.is_constant():
                return _univariate_div(self, g, v, d, lead.constant_term())
        return _generic_div(self, g)

    def coeff_in(self, v: Var, k: int) -> "Polynomial":
        """Coefficient of ``v**k`` (a polynomial free of ``v``)."""
        sh = _vid(v) * _BITS
        fm = ((1 << _BITS) - 1) << sh
        out = {}
        for m, c in self._t.items():
            if (m & fm) >> sh == k:
                out[m & ~fm] = c
        return Polynomial._raw(out)

    def split(self, mask: int) -> dict[int, "Polynomial"]:
        """Group terms by the packed sub-monomial selected by ``mask``.

        Returns ``{part: rest}`` with ``self == sum(part * rest)``; keys are
        packed monomials, see :meth:`from_packed`.
        """
        groups: dict[int, dict] = {}
        inv = ~mask
        for m, c in self._t.items():
            groups.setdefault(m & mask, {})[m & inv] = c
        return {k: Polynomial._raw(v) for k, v in groups.items()}

    @staticmethod
    def from_packed(m: int, c=1) -> "Polynomial":
        return Polynomial._raw({m: c} if c else {})

    @staticmethod
    def unpack(m: int) -> dict[Var, int]:
        return dict(_unpack(m))

    def substitute(self, bindings: Mapping[Var, "Polynomial | int"]) -> "Polynomial":
        return substitute(self, bindings)

    def drop(self, variables: Iterable[Var]) -> "Polynomial":
        """Specialize every variable in ``variables`` to zero."""
        mk = mask_of(variables)
        return Polynomial._raw({m: c for m, c in self._t.items() if not m & mk})

    def map_coefficients(self, fn: Callable) -> "Polynomial":
        out = {}
        for m, c in self._t.items():
            c = _norm(fn(c))
            if c:
                out[m] = c
        return Polynomial._raw(out)

    # -- rendering ---------------------------------------------------------
    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Polynomial({render(self)!r})"


ZERO = Polynomial._raw({})
ONE = Polynomial._raw({0: 1})


def const(c) -> Polynomial:
    return Polynomial.constant(c)


def T(i: int) -> Polynomial:
    return Polynomial.variable(Var("T", i))


def x(i: int) -> Polynomial:
    return Polynomial.variable(Var("x", i))


def a(i: int) -> Polynomial:
    return Polynomial.variable(Var("a", i))


def gen(family: str, i: int) -> Polynomial:
    return Polynomial.variable(Var(family, i))


Q_VAR = Var("q")
q = Polynomial.variable(Q_VAR)


def mul(f: Polynomial, g: Polynomial) -> Polynomial:
    """Exact product of two polynomials."""
    ft, gt = f._t, g._t
    if not ft or not gt:
        return ZERO
    if len(ft) < len(gt):
        ft, gt = gt, ft
    r: dict = {}
    get = r.get
    for m2, c2 in gt.items():
        for m1, c1 in ft.items():
            k = m1 + m2
            r[k] = get(k, 0) + c1 * c2
    return Polynomial._raw(finish_terms(r))


def addmul(acc: dict, f: Polynomial, g: Polynomial) -> None:
    """acc += f * g on a raw term dictionary; call finish_terms afterwards."""
    ft, gt = f._t, g._t
    if len(ft) < len(gt):
        ft, gt = gt, ft
    get = acc.get
    for m2, c2 in gt.items():
        for m1, c1 in ft.items():
            k = m1 + m2
            acc[k] = get(k, 0) + c1 * c2


def finish_terms(r: dict) -> dict:
    """Drop zeros, demote integral fractions and check exponent overflow."""
    if any(type(c) is Fraction for c in r.values()):
        out = {k: _norm(c) for k, c in r.items() if c}
    else:
        out = {k: c for k, c in r.items() if c}
    _check_overflow(out)
    return out


def substitute(f: Polynomial, bindings: Mapping[Var, Polynomial | int]) -> Polynomial:
    """Simultaneous substitution; unbound variables are left unchanged."""
    if not bindings:
        return f
    binds = {v: Polynomial._coerce(p) for v, p in bindings.items()}
    mk = mask_of(binds)
    power_cache: dict[tuple[Var, int], Polynomial] = {}

    def power(v, e):
        key = (v, e)
        p = power_cache.get(key)
        if p is None:
            p = binds[v] ** e
            power_cache[key] = p
        return p

    result: dict = {}
    for part, rest in f.split(mk).items():
        img = ONE
        for v, e in _unpack(part):
            img = img * power(v, e)
        prod = mul(img, rest)
        for m, c in prod._t.items():
            s = result.get(m, 0) + c
            if s:
                result[m] = s
            else:
                result.pop(m, None)
    return Polynomial._raw({m: _norm(c) for m, c in result.items()})


def _div(c, d):
    if isinstance(c, int) and isinstance(d, int) and c % d == 0:
        return c // d
    return _norm(Fraction(c) / d)


def _univariate_div(f: Polynomial, g: Polynomial, v: Var, d: int, lead) -> Polynomial:
    # view f, g as polynomials in v: repeatedly cancel the top v-power of f
    sh = _vid(v) * _BITS
    fm = ((1 << _BITS) - 1) << sh
    gcoef: dict[int, Polynomial] = {}
    for m, c in g._t.items():
        k = (m & fm) >> sh
        gcoef.setdefault(k, {})[m & ~fm] = c
    gcoef = {k: Polynomial._raw(t) for k, t in gcoef.items()}
    rem: dict[int, dict] = {}
    for m, c in f._t.items():
        rem.setdefault((m & fm) >> sh, {})[m & ~fm] = c
    quot: dict = {}
    top = max(rem) if rem else -1
    for k in range(top, d - 1, -1):
        ck = rem.pop(k, None)
        if not ck:
            continue
        qk = Polynomial._raw({m: _div(c, lead) for m, c in ck.items()})
        shift = (k - d) << sh
        for m, c in qk._t.items():
            quot[m + shift] = c
        for j, gj in gcoef.items():
            if j == d:
                continue
            sub = mul(qk, gj)
            tgt = rem.setdefault(k - d + j, {})
            for m, c in sub._t.items():
                s = tgt.get(m, 0) - c
                if s:
                    tgt[m] = s
                else:
                    tgt.pop(m, None)
    if any(rem.values()):
        raise ArithmeticError("polynomial division is not exact")
    return Polynomial._raw(quot)


def _generic_div(f: Polynomial, g: Polynomial) -> Polynomial:
    key = _lex_key
    lg = max(g._t, key=key)
    lc = g._t[lg]
    rem = dict(f._t)
    quot: dict = {}
    while rem:
        lm = max(rem, key=key)
        if not _divides(lg, lm):
            raise ArithmeticError("polynomial division is not exact")
        qm = lm - lg
        qc = _norm(Fraction(rem[lm]) / lc)
        quot[qm] = qc
        for m, c in g._t.items():
            k = m + qm
            s = rem.get(k, 0) - qc * c
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return Polynomial._raw(quot)


def _lex_key(m: int):
    return tuple((v.sort_key(), e) for v, e in _unpack(m))


def _divides(m1: int, m2: int) -> bool:
    g = _guard
    return ((m2 | g) - m1) & g == g


# -- canonical text ------------------------------------------------------

def _grevlex_sort(terms: dict) -> list[int]:
    vs = sorted({v for m in terms for v, _ in _unpack(m)}, key=Var.sort_key)

    def key(m):
        ex = dict(_unpack(m))
        vec = [ex.get(v, 0) for v in vs]
        return (sum(vec), tuple(-e for e in reversed(vec)))

    return sorted(terms, key=key, reverse=True)


def _mono_str(m: int) -> str:
    parts = []
    for v, e in _unpack(m):
        parts.append(v.name if e == 1 else f"{v.name}^{e}")
    return "*".join(parts)


def render(f: Polynomial) -> str:
    """Canonical text: graded reverse lex, integer/rational coefficients."""
    if not f._t:
        return "0"
    out = []
    for i, m in enumerate(_grevlex_sort(f._t)):
        c = f._t[m]
        neg = c < 0
        c = -c if neg else c
        ms = _mono_str(m)
        if not ms:
            body = str(c)
        elif c == 1:
            body = ms
        else:
            body = f"{c}*{ms}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([hexTa]-?\d+|q)(?:\^(\d+))?|([+\-*]))")


def parse(text: str) -> Polynomial:
    """Inverse of the canonical rendering (accepts any sum of products)."""
    text = text.strip()
    if text in ("", "0"):
        return ZERO
    pos = 0
    total: dict = {}
    sign = 1
    coeff: int | Fraction = 1
    exps: dict[Var, int] = {}
    expect_factor = True

    def flush():
        nonlocal coeff, exps
        k = _pack(exps)
        s = total.get(k, 0) + sign * coeff
        if s:
            total[k] = s
        else:
            total.pop(k, None)
        coeff, exps = 1, {}

    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise ValueError(f"cannot parse polynomial at {text[pos:]!r}")
        pos = mt.end()
        num, name, power, op = mt.groups()
        if op is not None and op in "+-":
            if not expect_factor:
                flush()
                sign = 1 if op == "+" else -1
                expect_factor = True
            else:
                sign = sign * (1 if op == "+" else -1)
            continue
        if op == "*":
            expect_factor = True
            continue
        if num is not None:
            coeff = coeff * Fraction(num)
        else:
            v = Var("q") if name == "q" else Var(name[0], int(name[1:]))
            exps[v] = exps.get(v, 0) + int(power or 1)
        expect_factor = False
    if expect_factor:
        raise ValueError(f"dangling operator in {text!r}")
    flush()
    return Polynomial._raw({m: _norm(c) for m, c in total.items() if c})


# -- grading ---------------------------------------------------------------

class VariableSpace:
    """Assigns a positive grade to each variable of a computation."""

    def __init__(self, grades: Mapping[Var, int]):
        self.grades = dict(grades)
        self._by_family: dict[str, list[Var]] = {}
        for v in sorted(self.grades, key=Var.sort_key):
            self._by_family.setdefault(v.family, []).append(v)
            if self.grades[v] < 1:
                raise ValueError(f"grade of {v} must be positive")
        self._cache: dict[int, int] = {}

    @property
    def families(self) -> dict[str, list[Var]]:
        return self._by_family

    def grade_of(self, m: int) -> int:
        g = self._cache.get(m)
        if g is None:
            g = sum(self.grades[v] * e for v, e in _unpack(m))
            self._cache[m] = g
        return g

    def grade(self, f: Polynomial) -> int:
        """Maximal grade of a term (-1 for zero)."""
        return max((self.grade_of(m) for m in f.raw), default=-1)

    def homogeneous_grade(self, f: Polynomial) -> int | None:
        """The common grade of all terms, or None if ``f`` is not homogeneous.

        The zero polynomial is homogeneous of every grade; returns -1 for it.
        """
        gs = {self.grade_of(m) for m in f.raw}
        if not gs:
            return -1
        return gs.pop() if len(gs) == 1 else None

    def monomials(self, grade: int, variables: Sequence[Var] | None = None) -> list[int]:
        """All packed monomials of exactly ``grade`` in ``variables``."""
        vs = list(variables) if variables is not None else sorted(self.grades, key=Var.sort_key)
        return list(_enum_monomials(tuple((_vid(v), self.grades[v]) for v in vs), grade))


@lru_cache(maxsize=4096)
def _enum_monomials(vg: tuple[tuple[int, int], ...], grade: int) -> tuple[int, ...]:
    if grade < 0:
        return ()
    if not vg:
        return (0,) if grade == 0 else ()
    (vid, g), rest = vg[0], vg[1:]
    out = []
    for e in range(grade // g + 1):
        base = e << (vid * _BITS)
        for m in _enum_monomials(rest, grade - e * g):
            out.append(base + m)
    return tuple(out)


# -- determinants ----------------------------------------------------------

def det(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant by Laplace expansion along rows, memoized on column sets."""
    n = len(matrix)
    if n == 0:
        return ONE
    rows = [[Polynomial._coerce(e) for e in row] for row in matrix]
    memo: dict[tuple[int, int], Polynomial] = {}

    def minor(r: int, cols: int) -> Polynomial:
        if r == n:
            return ONE
        key = (r, cols)
        hit = memo.get(key)
        if hit is not None:
            return hit
        acc = ZERO
        sign = 1
        for c in range(n):
            if cols >> c & 1:
                continue
            entry = rows[r][c]
            if entry:
                sub = minor(r + 1, cols | (1 << c))
                if sub:
                    term = entry * sub
                    acc = acc + term if sign > 0 else acc - term
            sign = -sign
        memo[key] = acc
        return acc

    return minor(0, 0)


# -- exact linear algebra --------------------------------------------------

class Inconsistent(ArithmeticError):
    """The linear system has no solution."""


class ResourceLimitExceeded(RuntimeError):
    """A bounded computation gave up before finishing."""


@dataclass
class LinearSystem:
    """Sparse rows ``sum(coef * unknown) = rhs`` over the rationals."""

    unknowns: list
    rows: list[tuple[dict, int | Fraction]] = field(default_factory=list)

    def add_row(self, coeffs: Mapping, rhs=0) -> None:
        self.rows.append(({k: c for k, c in coeffs.items() if c}, rhs))


@dataclass
class Solution:
    values: dict
    kernel_rank: int
    kernel: list[dict]

    def unique_on(self, unknowns: Iterable) -> bool:
        """True if every kernel vector vanishes on ``unknowns``."""
        us = set(unknowns)
        return all(not (us & set(k)) for k in self.kernel)


def _eliminate(unknowns: list, rows: list[dict], rhss: list[list]):
    """Gauss-Jordan elimination; returns (pivot rows, pivot columns) in RREF."""
    col_index = {u: i for i, u in enumerate(unknowns)}
    work = []
    for r, b in zip(rows, rhss):
        work.append(({col_index[u]: Fraction(c) for u, c in r.items() if c}, [Fraction(v) for v in b]))
    pivots: dict[int, tuple[dict, list]] = {}
    inconsistent = [False] * (len(rhss[0]) if rhss else 0)
    for r, b in work:
        # pivot rows are kept fully reduced, so one pass suffices
        for pc in [c for c in r if c in pivots]:
            f = r[pc]
            pr, pb = pivots[pc]
            for c, v in pr.items():
                s = r.get(c, 0) - f * v
                if s:
                    r[c] = s
                else:
                    r.pop(c, None)
            for i in range(len(b)):
                b[i] -= f * pb[i]
        if not r:
            for i, v in enumerate(b):
                if v:
                    inconsistent[i] = True
            continue
        pc = min(r)
        f = r[pc]
        r = {c: v / f for c, v in r.items()}
        b = [v / f for v in b]
        # back-eliminate pc from existing pivot rows
        for oc, (orow, ob) in pivots.items():
            g = orow.get(pc)
            if g:
                for c, v in r.items():
                    s = orow.get(c, 0) - g * v
                    if s:
                        orow[c] = s
                    else:
                        orow.pop(c, None)
                for i in range(len(ob)):
                    ob[i] -= g * b[i]
        pivots[pc] = (r, b)
    return pivots, inconsistent


def _solutions(unknowns, pivots, inconsistent, nrhs):
    free = [i for i in range(len(unknowns)) if i not in pivots]
    kernel = []
    for fc in free:
        vec = {unknowns[fc]: Fraction(1)}
        for pc, (r, _) in pivots.items():
            v = r.get(fc)
            if v:
                vec[unknowns[pc]] = -v
        kernel.append(vec)
    sols = []
    for i in range(nrhs):
        if inconsistent[i]:
            sols.append(None)
            continue
        vals = {u: Fraction(0) for u in unknowns}
        for pc, (_, b) in pivots.items():
            vals[unknowns[pc]] = b[i]
        sols.append(vals)
    return sols, kernel


def _verify(system_rows, vals, rhs):
    for r, b in zip(system_rows, rhs):
        if sum(c * vals[u] for u, c in r.items()) != b:
            raise ArithmeticError("back-substitution check failed")


def solve_exact(system: LinearSystem) -> Solution:
    """One exact solution plus the kernel; raises Inconsistent if none exists."""
    rows = [r for r, _ in system.rows]
    rhs = [b for _, b in system.rows]
    pivots, bad = _eliminate(system.unknowns, rows, [[b] for b in rhs])
    if not system.rows:
        bad = [False]
    sols, kernel = _solutions(system.unknowns, pivots, bad, 1)
    if sols[0] is None:
        raise Inconsistent("linear system is inconsistent")
    _verify(rows, sols[0], rhs)
    vals = {u: _norm(v) for u, v in sols[0].items()}
    return Solution(vals, len(kernel), kernel)


def solve_exact_many(unknowns: list, rows: list[dict], rhs_columns: list[list]) -> tuple[list, list[dict]]:
    """Solve ``A z = b`` for several right-hand sides sharing one matrix.

    ``rhs_columns[k]`` is the k-th right-hand side as a list aligned with
    ``rows``.  Returns (solutions, kernel) where an inconsistent right-hand
    side yields ``None`` in its slot.
    """
    nr = len(rhs_columns)
    per_row = [[col[i] for col in rhs_columns] for i in range(len(rows))]
    if not rows:
        return [dict.fromkeys(unknowns, 0) for _ in range(nr)], [
            {u: Fraction(1)} for u in unknowns]
    pivots, bad = _eliminate(unknowns, rows, per_row)
    sols, kernel = _solutions(unknowns, pivots, bad, nr)
    for k, s in enumerate(sols):
        if s is not None:
            _verify(rows, s, rhs_columns[k])
    return sols, kernel


# -- Groebner bases --------------------------------------------------------

class BlockOrder:
    """Product order: the first block is compared first (weighted grevlex).

    Each block is a sequence of (variable, weight); variables not listed in
    any block are compared last by plain grevlex in canonical order.
    """

    def __init__(self, *blocks: Sequence[tuple[Var, int]]):
        self.blocks = [list(b) for b in blocks]
        self._cache: dict[int, tuple] = {}

    def key(self, m: int) -> tuple:
        k = self._cache.get(m)
        if k is not None:
            return k
        ex = dict(_unpack(m))
        seen = set()
        parts = []
        for blk in self.blocks:
            vec = [ex.get(v, 0) for v, _ in blk]
            seen.update(v for v, _ in blk)
            parts.append(sum(e * w for e, (_, w) in zip(vec, blk)))
            parts.append(tuple(-e for e in reversed(vec)))
        rest = sorted((v for v in ex if v not in seen), key=Var.sort_key)
        vec = [ex[v] for v in rest]
        parts.append(sum(vec))
        parts.append(tuple((-v.sort_key()[0], -v.index, e) for v, e in zip(rest, vec)))
        k = tuple(parts)
        self._cache[m] = k
        return k

    def leading(self, f: Polynomial) -> int:
        return max(f.raw, key=self.key)


def _lcm(m1: int, m2: int) -> int:
    out = 0
    fm = (1 << _BITS) - 1
    sh = 0
    a, b = m1, m2
    while a or b:
        out |= max(a & fm, b & fm) << sh
        a >>= _BITS
        b >>= _BITS
        sh += _BITS
    return out


def _monic(f: Polynomial, order: BlockOrder) -> Polynomial:
    lc = f.raw[order.leading(f)]
    if lc == 1:
        return f
    return f * (Fraction(1) / lc)


def reduce_gb(f: Polynomial, basis: Sequence[Polynomial], order: BlockOrder) -> Polynomial:
    """Full normal form of ``f`` modulo a Groebner basis (monic elements)."""
    leads = [(order.leading(g), g) for g in basis]
    rem = dict(f.raw)
    out: dict = {}
    key = order.key
    while rem:
        lm = max(rem, key=key)
        c = rem[lm]
        for gl, g in leads:
            if _divides(gl, lm):
                shift = lm - gl
                for m, v in g.raw.items():
                    k = m + shift
                    s = rem.get(k, 0) - c * v
                    if s:
                        rem[k] = s
                    else:
                        rem.pop(k, None)
                break
        else:
            out[lm] = c
            del rem[lm]
    return Polynomial._raw({m: _norm(c) for m, c in out.items()})


def buchberger(gens: Sequence[Polynomial], order: BlockOrder, max_pairs: int = 20000,
               max_terms: int = 200000) -> list[Polynomial]:
    """Reduced Groebner basis over the rationals (Buchberger with criteria).

    Raises ResourceLimitExceeded when more than ``max_pairs`` S-pairs are
    processed or an intermediate polynomial exceeds ``max_terms`` terms.
    """
    basis: list[Polynomial] = []
    for g in gens:
        g = reduce_gb(g, basis, order) if basis else g
        if g:
            basis.append(_monic(g, order))
    pairs = list(itertools.combinations(range(len(basis)), 2))
    processed = 0
    while pairs:
        # normal strategy: smallest lcm first
        pairs.sort(key=lambda ij: order.key(_lcm(order.leading(basis[ij[0]]),
                                                 order.leading(basis[ij[1]]))), reverse=True)
        i, j = pairs.pop()
        processed += 1
        if processed > max_pairs:
            raise ResourceLimitExceeded(f"more than {max_pairs} S-pairs")
        fi, fj = basis[i], basis[j]
        li, lj = order.leading(fi), order.leading(fj)
        lcm = _lcm(li, lj)
        if lcm == li + lj:
            continue  # coprime leading monomials
        if any(k not in (i, j) and _divides(order.leading(basis[k]), lcm)
               and (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs
               for k in range(len(basis))):
            continue  # chain criterion
        s = mul(fi, Polynomial._raw({lcm - li: 1})) - mul(fj, Polynomial._raw({lcm - lj: 1}))
        r = reduce_gb(s, basis, order)
        if len(r) > max_terms:
            raise ResourceLimitExceeded("intermediate polynomial too large")
        if r:
            basis.append(_monic(r, order))
            n = len(basis) - 1
            pairs.extend((k, n) for k in range(n))
    # interreduce
    basis = [g for g in basis]
    minimal = []
    for idx, g in enumerate(basis):
        lg = order.leading(g)
        if any(k != idx and _divides(order.leading(h), lg) and
               (order.leading(h) != lg or k < idx) for k, h in enumerate(basis)):
            continue
        minimal.append(g)
    reduced = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        lg = order.leading(g)
        tail = Polynomial._raw({m: c for m, c in g.raw.items() if m != lg})
        reduced.append(Polynomial._raw({lg: 1}) + reduce_gb(tail, others, order))
    return sorted(reduced, key=lambda g: order.key(order.leading(g)))
