"""Presentations of the equivariant quantum cohomology of Gr(p, m).

Two models of the same ring over Lambda[q] = Z[T_1..T_m][q]:

* h-model: Lambda[q][h_1..h_{m-p}] / <E_{p+1}, ..., E_{m-1}, E_m + (-1)^(m-p) q>
* e-model: Lambda[q][e_1..e_p]     / <H_{m-p+1}, ..., H_{m-1}, H_m + (-1)^p q>

Schubert classes are represented by the Giambelli determinants built from
shifted generators.  Normal forms are computed grade by grade: in grade D an
exact integer linear system over T = q = 0 expresses every generator
monomial through classical Schubert classes plus relation multiples; the
remainder is divisible by T or q and is reduced recursively in lower grades
(graded Nakayama lifting).  Results are memoized per generator monomial.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from fractions import Fraction
from functools import lru_cache
from math import lcm
from pathlib import Path
from typing import Iterable, Mapping

from .exactpoly import (
    ONE, ZERO, BlockOrder, addmul, finish_terms, LinearSystem, Polynomial, Var, VariableSpace, buchberger,
    det, gen, mask_of, parse, q as qpoly, reduce_gb, solve_exact, solve_exact_many,
    substitute, Q_VAR,
)
from .factorial_schur import capital_e_x, generic, h_factorial, make_t
from .partitions import (
    GrassmannShape, Partition, add_box_successors, conjugate, enumerate_partitions,
    format_partition, parse_partition, partition_key, rim_minus,
)
from .report import Report
from .struct_const import flr_peel

log = logging.getLogger(__name__)

__all__ = [
    "SchubertExpansion", "PresentationRing", "BasisFreenessError",
    "tau_h", "tau_e", "giambelli_h", "giambelli_e", "cap_E", "cap_H",
    "build_ring", "schubert_coords", "eqlr", "reduce_out_of_rectangle",
    "eqlr_xmodel", "pieri_rule", "verify_relations", "specialize",
    "CACHE_VERSION",
]

CACHE_VERSION = 1


class BasisFreenessError(ArithmeticError):
    """The Giambelli classes failed to be a free basis in some grade."""


def _T_vars(shape: GrassmannShape) -> list[Var]:
    return [Var("T", i) for i in range(1, shape.m + 1)]


# -- expansions in the Schubert basis ---------------------------------------

class SchubertExpansion:
    """Finite sum of q^d * coeff * sigma_nu with coefficients in Z[T]."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple, Polynomial | int] | None = None):
        clean = {}
        for (nu, d), c in (terms or {}).items():
            c = Polynomial._coerce(c)
            if c:
                clean[(Partition(nu), int(d))] = c
        self._terms = dict(sorted(clean.items(), key=lambda kv: (kv[0][1], partition_key(kv[0][0]))))

    @classmethod
    def basis(cls, nu: Partition) -> "SchubertExpansion":
        return cls({(Partition(nu), 0): ONE})

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __getitem__(self, key) -> Polynomial:
        nu, d = key
        return self._terms.get((Partition(nu), d), ZERO)

    def __eq__(self, other):
        if not isinstance(other, SchubertExpansion):
            return NotImplemented
        return self._terms == other._terms

    def __add__(self, other: "SchubertExpansion") -> "SchubertExpansion":
        t = dict(self._terms)
        for k, c in other.items():
            t[k] = t.get(k, ZERO) + c
        return SchubertExpansion(t)

    def __sub__(self, other: "SchubertExpansion") -> "SchubertExpansion":
        t = dict(self._terms)
        for k, c in other.items():
            t[k] = t.get(k, ZERO) - c
        return SchubertExpansion(t)

    def scaled(self, coeff: Polynomial, qpow: int = 0) -> "SchubertExpansion":
        return SchubertExpansion({(nu, d + qpow): c * coeff for (nu, d), c in self.items()})

    def is_integral(self) -> bool:
        return all(c.is_integral() for c in self._terms.values())

    def render(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (nu, d), c in self.items():
            qs = "" if d == 0 else ("q·" if d == 1 else f"q^{d}·")
            cs = str(c)
            if " " in cs or cs.startswith("-"):
                cs = f"({cs})"
            parts.append(f"{qs}[{format_partition(nu)}]·{cs}")
        return " + ".join(parts)

    __str__ = render

    def __repr__(self):
        return f"SchubertExpansion({self.render()!r})"

    def to_json(self) -> list[dict]:
        return [{"nu": format_partition(nu), "d": d, "coeff": str(c)} for (nu, d), c in self.items()]

    @classmethod
    def from_json(cls, terms: Iterable[Mapping]) -> "SchubertExpansion":
        return cls({(parse_partition(t["nu"]), int(t["d"])): parse(t["coeff"]) for t in terms})


def specialize(expansion: SchubertExpansion, mode: str) -> SchubertExpansion:
    """``"q0"`` keeps the d = 0 layer; ``"T0"`` sets every T_i to zero."""
    if mode == "q0":
        return SchubertExpansion({k: c for k, c in expansion.items() if k[1] == 0})
    if mode == "T0":
        out = {}
        for k, c in expansion.items():
            tv = [v for v in c.variables() if v.family == "T"]
            out[k] = c.drop(tv)
        return SchubertExpansion(out)
    raise ValueError(f"unknown specialization {mode!r}")


# -- shifted generators and Giambelli determinants -----------------------------

@lru_cache(maxsize=None)
def tau_h(s: int, j: int, shape: GrassmannShape) -> Polynomial:
    """tau^(-s) h_j in Lambda[h_1..h_{m-p}] for s >= 0."""
    if j < 0:
        return ZERO
    if j == 0:
        return ONE
    if s == 0:
        return gen("h", j) if j <= shape.k else ZERO
    t = make_t(shape)
    step = t.term(j + shape.p - s) - t.term(1 - s)
    return tau_h(s - 1, j, shape) + step * tau_h(s - 1, j - 1, shape)


@lru_cache(maxsize=None)
def tau_e(s: int, i: int, shape: GrassmannShape) -> Polynomial:
    """tau^s e_i in Lambda[e_1..e_p] for s >= 0."""
    if i < 0:
        return ZERO
    if i == 0:
        return ONE
    if s == 0:
        return gen("e", i) if i <= shape.p else ZERO
    t = make_t(shape)
    step = t.term(s) - t.term(shape.p - i + s + 1)
    return tau_e(s - 1, i, shape) + step * tau_e(s - 1, i - 1, shape)


@lru_cache(maxsize=None)
def giambelli_h(lam: Partition, shape: GrassmannShape) -> Polynomial:
    """det(tau^(1-j) h_{lam_i + j - i}) of size p."""
    lam = Partition(lam)
    if not shape.contains(lam):
        raise ValueError(f"{tuple(lam)} is not in the {shape.p}x{shape.k} rectangle")
    parts = lam.padded(shape.p)
    n = shape.p
    return det([[tau_h(j, parts[i] + j - i, shape) for j in range(n)] for i in range(n)])


@lru_cache(maxsize=None)
def giambelli_e(lam: Partition, shape: GrassmannShape, cols: int | None = None) -> Polynomial:
    """det(tau^(j-1) e_{lam'_i + j - i}) of size max(m-p, lam_1), or ``cols``."""
    lam = Partition(lam)
    if len(lam) > shape.p:
        raise ValueError(f"{tuple(lam)} has more than p={shape.p} parts")
    n = max(shape.k, lam.part(1)) if cols is None else cols
    if n < max(shape.k, lam.part(1)):
        raise ValueError(f"cols={n} must be at least max(m-p, lambda_1)")
    conj = conjugate(lam).padded(n)
    return det([[tau_e(j, conj[i] + j - i, shape) for j in range(n)] for i in range(n)])


@lru_cache(maxsize=None)
def cap_E(k: int, shape: GrassmannShape) -> Polynomial:
    """det(tau^(1-j) h_{1+j-i}) of size k."""
    return det([[tau_h(j, 1 + j - i, shape) for j in range(k)] for i in range(k)])


@lru_cache(maxsize=None)
def cap_H(k: int, shape: GrassmannShape) -> Polynomial:
    """det(tau^(j-1) e_{1+j-i}) of size k."""
    return det([[tau_e(j, 1 + j - i, shape) for j in range(k)] for i in range(k)])


# -- the ring -----------------------------------------------------------------

class PresentationRing:
    """One of the two presentations, with a memoized degreewise reducer."""

    def __init__(self, model: str, shape: GrassmannShape, degree_bound: int | None = None):
        if model not in ("h", "e"):
            raise ValueError(f"model must be 'h' or 'e', got {model!r}")
        self.model = model
        self.shape = shape
        p, m = shape.p, shape.m
        self.degree_bound = 2 * shape.dimension if degree_bound is None else degree_bound
        if self.degree_bound < 2 * shape.dimension:
            raise ValueError(f"degree bound must be at least {2 * shape.dimension}")
        n = shape.k if model == "h" else p
        self.generators = [Var(model, i) for i in range(1, n + 1)]
        grades = {v: v.index for v in self.generators}
        grades.update({v: 1 for v in _T_vars(shape)})
        grades[Q_VAR] = m
        self.space = VariableSpace(grades)
        self._gen_mask = mask_of(self.generators)
        self._q_mask = mask_of([Q_VAR])
        self._nonclassical = _T_vars(shape) + [Q_VAR]
        if model == "h":
            rels = [(k, cap_E(k, shape)) for k in range(p + 1, m + 1)]
            sign = (-1) ** (m - p)
        else:
            rels = [(k, cap_H(k, shape)) for k in range(m - p + 1, m + 1)]
            sign = (-1) ** p
        k_last, top = rels[-1]
        rels[-1] = (k_last, top + sign * qpoly)
        self.relations: list[tuple[int, Polynomial]] = rels
        self._basis = enumerate_partitions(shape)
        self._layers: dict[int, dict[int, tuple[dict, dict]]] = {}
        self._nf: dict[int, dict] = {}
        self._products: dict[tuple, SchubertExpansion] = {}
        self._gb: list[Polynomial] | None = None

    def __repr__(self):
        return f"PresentationRing({self.model!r}, {self.shape}, degree_bound={self.degree_bound})"

    @property
    def basis(self) -> list[Partition]:
        return list(self._basis)

    def giambelli(self, lam: Partition) -> Polynomial:
        lam = Partition(lam)
        return giambelli_h(lam, self.shape) if self.model == "h" else giambelli_e(lam, self.shape)

    def relation_generators(self) -> list[Polynomial]:
        return [r for _, r in self.relations]

    # classical layer: T = q = 0, integer linear algebra in one grade
    def _layer(self, grade: int) -> dict[int, tuple[dict, dict]]:
        hit = self._layers.get(grade)
        if hit is not None:
            return hit
        monos = self.space.monomials(grade, self.generators)
        classes = [nu for nu in self._basis if nu.weight == grade]
        columns: dict = {}
        for nu in classes:
            columns[("c", nu)] = self.giambelli(nu).drop(self._nonclassical)
        for idx, (k, rel) in enumerate(self.relations):
            r0 = rel.drop(self._nonclassical)
            for beta in self.space.monomials(grade - k, self.generators):
                columns[("u", idx, beta)] = Polynomial.from_packed(beta) * r0
        unknowns = list(columns)
        row_of = {mono: i for i, mono in enumerate(monos)}
        rows: list[dict] = [{} for _ in monos]
        for u, col in columns.items():
            for mono, c in col.raw.items():
                rows[row_of[mono]][u] = c
        rhs = [[1 if i == j else 0 for i in range(len(monos))] for j in range(len(monos))]
        sols, kernel = solve_exact_many(unknowns, rows, rhs)
        c_unknowns = {("c", nu) for nu in classes}
        if any(c_unknowns & set(vec) for vec in kernel):
            raise BasisFreenessError(f"Giambelli classes are dependent in grade {grade}")
        layer = {}
        for mono, sol in zip(monos, sols):
            if sol is None:
                raise BasisFreenessError(f"grade {grade} monomial not in the span of the basis")
            cpart = {}
            for nu in classes:
                v = sol[("c", nu)]
                if v:
                    if v.denominator != 1:
                        raise BasisFreenessError(f"non-integral classical coordinate in grade {grade}")
                    cpart[nu] = int(v)
            upart = {u: v for u, v in sol.items() if u[0] == "u" and v}
            layer[mono] = (cpart, upart)
        self._layers[grade] = layer
        return layer

    def _nf_monomial(self, mono: int) -> dict:
        """Normal form of a generator monomial as {nu: polynomial in T and q}."""
        hit = self._nf.get(mono)
        if hit is not None:
            return hit
        grade = self.space.grade_of(mono)
        if grade > self.degree_bound:
            raise ValueError(f"grade {grade} exceeds the degree bound {self.degree_bound}")
        cpart, upart = self._layer(grade)[mono]
        # scale by the common denominator of the multipliers to stay in Z
        scale = lcm(*(Fraction(c).denominator for c in upart.values()))
        acc: dict = {mono: scale}
        for nu, c in cpart.items():
            addmul(acc, Polynomial.constant(-c * scale), self.giambelli(nu))
        for (_, idx, beta), c in upart.items():
            addmul(acc, Polynomial.from_packed(beta, int(-c * scale)), self.relations[idx][1])
        rem = Polynomial._raw(finish_terms(acc))
        if rem.drop(self._nonclassical):
            raise ArithmeticError("classical layer left an unreduced remainder")
        target: dict = {nu: {0: c * scale} for nu, c in cpart.items()}
        for gpart, coeff in rem.split(self._gen_mask).items():
            self._accumulate(target, coeff, self._nf_monomial(gpart))
        result = _finish(target)
        if scale != 1:
            result = {nu: _divide_exact(c, scale) for nu, c in result.items()}
        self._nf[mono] = result
        return result

    @staticmethod
    def _accumulate(target: dict, coeff: Polynomial, nf: dict) -> None:
        # target[nu] += coeff * nf[nu], all coefficients in Lambda[q]
        for nu, c in nf.items():
            addmul(target.setdefault(nu, {}), coeff, c)

    def _expansion(self, nf: dict) -> SchubertExpansion:
        terms = {}
        for nu, c in nf.items():
            for qpart, tpoly in c.split(self._q_mask).items():
                terms[(nu, Polynomial.unpack(qpart).get(Q_VAR, 0))] = tpoly
        return SchubertExpansion(terms)

    def schubert_coords(self, f: Polynomial) -> SchubertExpansion:
        """Coordinates of ``f`` in the basis q^d sigma_nu."""
        grade = self.space.homogeneous_grade(f)
        if grade is None:
            raise ValueError("schubert_coords needs a homogeneous element")
        if grade > self.degree_bound:
            raise ValueError(f"grade {grade} exceeds the degree bound {self.degree_bound}")
        target: dict = {}
        for gpart, coeff in f.split(self._gen_mask).items():
            self._accumulate(target, coeff, self._nf_monomial(gpart))
        out = self._expansion(_finish(target))
        _check_expansion(out, grade, self.shape)
        return out

    def normal_form(self, mono: Polynomial) -> SchubertExpansion:
        """Coordinates of a single generator monomial."""
        (key,) = mono.raw
        return self._expansion(self._nf_monomial(key)).scaled(Polynomial.constant(mono.raw[key]))

    def product(self, lam: Partition, mu: Partition) -> SchubertExpansion:
        """sigma_lam o sigma_mu, memoized on the unordered pair."""
        lam, mu = Partition(lam), Partition(mu)
        for nu in (lam, mu):
            if not self.shape.contains(nu):
                raise ValueError(f"{tuple(nu)} is not in the rectangle of {self.shape}")
        key = tuple(sorted((lam, mu), key=partition_key))
        hit = self._products.get(key)
        if hit is None:
            hit = self.schubert_coords(self.giambelli(lam) * self.giambelli(mu))
            self._products[key] = hit
        return hit

    def multiply(self, x: SchubertExpansion, y: SchubertExpansion) -> SchubertExpansion:
        """Product of two expansions through the basis products."""
        acc: dict = {}
        for (n1, d1), c1 in x.items():
            for (n2, d2), c2 in y.items():
                self._accumulate_exp(acc, c1 * c2, d1 + d2, self.product(n1, n2))
        return SchubertExpansion(acc)

    @staticmethod
    def _accumulate_exp(acc: dict, coeff: Polynomial, dq: int, exp: SchubertExpansion) -> None:
        for (nu, d), c in exp.items():
            key = (nu, d + dq)
            acc[key] = acc.get(key, ZERO) + coeff * c

    def precompute(self) -> None:
        """Fill the normal-form table for every generator monomial up to the bound."""
        for g in range(self.degree_bound + 1):
            for mono in self.space.monomials(g, self.generators):
                self._nf_monomial(mono)

    # direct route: one big linear system per grade (small shapes only)
    def coords_direct(self, f: Polynomial) -> SchubertExpansion:
        """Coordinates from the full system over (generators, T, q) in one grade."""
        grade = self.space.homogeneous_grade(f)
        if grade is None:
            raise ValueError("coords_direct needs a homogeneous element")
        m = self.shape.m
        tv = _T_vars(self.shape)
        columns: dict = {}
        for nu in self._basis:
            for d in range((grade - nu.weight) // m + 1 if grade >= nu.weight else 0):
                rest = grade - nu.weight - m * d
                g = self.giambelli(nu) * qpoly ** d
                for tm in self.space.monomials(rest, tv):
                    columns[("c", nu, d, tm)] = g * Polynomial.from_packed(tm)
        allvars = self.generators + tv + [Q_VAR]
        for idx, (k, rel) in enumerate(self.relations):
            for beta in self.space.monomials(grade - k, allvars):
                columns[("u", idx, beta)] = rel * Polynomial.from_packed(beta)
        system = LinearSystem(list(columns))
        rows: dict[int, dict] = {}
        for u, col in columns.items():
            for mono, c in col.raw.items():
                rows.setdefault(mono, {})[u] = c
        for mono in f.raw:
            rows.setdefault(mono, {})
        for mono, row in rows.items():
            system.add_row(row, f.raw.get(mono, 0))
        sol = solve_exact(system)
        if not sol.unique_on(u for u in columns if u[0] == "c"):
            raise BasisFreenessError(f"c-part not unique in grade {grade}")
        out: dict = {}
        for u, v in sol.values.items():
            if u[0] == "c" and v:
                _, nu, d, tm = u
                out[(nu, d)] = out.get((nu, d), ZERO) + Polynomial.from_packed(tm, v)
        exp = SchubertExpansion(out)
        _check_expansion(exp, grade, self.shape)
        return exp

    def check_freeness(self, max_grade: int | None = None) -> Report:
        rep = Report(f"freeness {self.model}-model {self.shape}")
        top = self.degree_bound if max_grade is None else max_grade
        for g in range(top + 1):
            self._layer(g)
            rep.record("classical layer basis", f"grade {g}", True)
        return rep

    # Groebner cross-check
    def groebner_order(self) -> BlockOrder:
        first = [(v, v.index) for v in self.generators]
        second = [(v, 1) for v in _T_vars(self.shape)] + [(Q_VAR, self.shape.m)]
        return BlockOrder(first, second)

    def groebner_basis(self, **limits) -> list[Polynomial]:
        if self._gb is None:
            self._gb = buchberger(self.relation_generators(), self.groebner_order(), **limits)
        return self._gb

    def groebner_agrees(self, f: Polynomial, expansion: SchubertExpansion | None = None) -> bool:
        """f minus its reconstructed expansion lies in the ideal (Groebner test)."""
        expansion = self.schubert_coords(f) if expansion is None else expansion
        diff = f - self.reconstruct(expansion)
        return not reduce_gb(diff, self.groebner_basis(), self.groebner_order())

    def reconstruct(self, expansion: SchubertExpansion) -> Polynomial:
        """The ring element sum q^d c sigma_nu written in generators."""
        out = ZERO
        for (nu, d), c in expansion.items():
            out = out + c * qpoly ** d * self.giambelli(nu)
        return out

    # persistence
    def cache_path(self, cache_dir: str | os.PathLike) -> Path:
        s = self.shape
        return Path(cache_dir) / f"ring_{self.model}_p{s.p}_m{s.m}_D{self.degree_bound}.json"

    def to_document(self) -> dict:
        nf = []
        for mono in sorted(self._nf, key=lambda k: (self.space.grade_of(k), str(Polynomial.from_packed(k)))):
            nf.append({"monomial": str(Polynomial.from_packed(mono)),
                       "terms": self._expansion(self._nf[mono]).to_json()})
        return {
            "format": "eqschub-ring-cache",
            "version": CACHE_VERSION,
            "model": self.model,
            "p": self.shape.p,
            "m": self.shape.m,
            "degree_bound": self.degree_bound,
            "relations": [str(r) for r in self.relation_generators()],
            "normal_forms": nf,
        }

    def save(self, cache_dir: str | os.PathLike) -> Path:
        path = self.cache_path(cache_dir)
        path.parent.mkdir(parents=True, exist_ok=True)
        text = json.dumps(self.to_document(), indent=1, sort_keys=True) + "\n"
        atomic_write(path, text)
        return path

    def load(self, cache_dir: str | os.PathLike) -> bool:
        """Adopt a cached normal-form table; False if absent, ValueError if stale."""
        path = self.cache_path(cache_dir)
        if not path.exists():
            return False
        doc = json.loads(path.read_text())
        expect = {"format": "eqschub-ring-cache", "version": CACHE_VERSION, "model": self.model,
                  "p": self.shape.p, "m": self.shape.m, "degree_bound": self.degree_bound}
        for key, val in expect.items():
            if doc.get(key) != val:
                raise ValueError(f"cache {path} rejected: {key}={doc.get(key)!r}, expected {val!r}")
        if [parse(r) for r in doc["relations"]] != self.relation_generators():
            raise ValueError(f"cache {path} rejected: relation generators differ")
        for entry in doc["normal_forms"]:
            mono = parse(entry["monomial"])
            (key,) = mono.raw
            nf: dict = {}
            for (nu, d), c in SchubertExpansion.from_json(entry["terms"]).items():
                nf[nu] = nf.get(nu, ZERO) + c * qpoly ** d
            self._nf[key] = nf
        return True


def _finish(target: dict) -> dict:
    out = {}
    for nu, acc in target.items():
        c = Polynomial._raw(finish_terms(acc))
        if c:
            out[nu] = c
    return out


def _divide_exact(f: Polynomial, n: int) -> Polynomial:
    out = {}
    for k, c in f.raw.items():
        qt, r = divmod(c, n)
        if r:
            raise ArithmeticError(f"non-integral normal-form coefficient {c}/{n}")
        out[k] = qt
    return Polynomial._raw(out)


def atomic_write(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _check_expansion(exp: SchubertExpansion, grade: int, shape: GrassmannShape) -> None:
    tspace = VariableSpace({v: 1 for v in _T_vars(shape)})
    for (nu, d), c in exp.items():
        if not shape.contains(nu):
            raise ArithmeticError(f"basis index {tuple(nu)} outside the rectangle")
        c.integral()
        want = grade - nu.weight - shape.m * d
        got = tspace.homogeneous_grade(c)
        if got != want:
            raise ArithmeticError(f"coefficient of q^{d} sigma_{tuple(nu)} has grade {got}, expected {want}")


def build_ring(model: str, shape: GrassmannShape, degree_bound: int | None = None,
               cache_dir: str | os.PathLike | None = None) -> PresentationRing:
    ring = PresentationRing(model, shape, degree_bound)
    if cache_dir is not None and ring.load(cache_dir):
        log.info("loaded %s from cache", ring)
    return ring


def schubert_coords(f: Polynomial, ring: PresentationRing) -> SchubertExpansion:
    return ring.schubert_coords(f)


def eqlr(lam, mu, ring: PresentationRing) -> SchubertExpansion:
    """sigma_lam o sigma_mu via the product of Giambelli representatives."""
    return ring.product(lam, mu)


def reduce_out_of_rectangle(nu, ring: PresentationRing) -> SchubertExpansion:
    """Coordinates of the oversized dual Jacobi-Trudi determinant s~_nu."""
    if ring.model != "e":
        raise ValueError("out-of-rectangle reduction runs in the e-model")
    nu = Partition(nu)
    shape = ring.shape
    cols = max(shape.k, nu.part(1))
    return ring.schubert_coords(giambelli_e(nu, shape, cols))


def eqlr_xmodel(lam, mu, ring: PresentationRing) -> SchubertExpansion:
    """Factorial LR expansion at a = t, with overflow classes reduced modulo the relations."""
    shape = ring.shape
    lam, mu = Partition(lam), Partition(mu)
    flr = flr_peel(lam, mu, make_t(shape), shape.p)
    out = SchubertExpansion()
    for nu, c in flr.items():
        if shape.contains(nu):
            out = out + SchubertExpansion({(nu, 0): c})
        else:
            out = out + reduce_out_of_rectangle(nu, ring).scaled(c)
    return out


def pieri_rule(lam, shape: GrassmannShape) -> SchubertExpansion:
    """Closed-form sigma_lam o sigma_(1): additions, diagonal term, q sigma_{lam^-}."""
    from .exactpoly import T as Tpoly

    lam = Partition(lam)
    p, m = shape.p, shape.m
    terms: dict = {(mu, 0): ONE for mu in add_box_successors(lam, shape)}
    parts = lam.padded(p)
    diag = ZERO
    for i in range(1, p + 1):
        diag = diag + Tpoly(m - p + i - parts[i - 1])
    for j in range(m - p + 1, m + 1):
        diag = diag - Tpoly(j)
    terms[(lam, 0)] = diag
    minus = rim_minus(lam, shape)
    if minus is not None:
        terms[(minus, 1)] = ONE
    return SchubertExpansion(terms)


def psi(f: Polynomial, shape: GrassmannShape) -> Polynomial:
    """Send h_k to H_k = det(tau^(j-1) e_{1+j-i}) (an element of the e-model)."""
    return substitute(f, {Var("h", k): cap_H(k, shape) for k in range(1, shape.k + 1)})


def verify_relations(shape: GrassmannShape, ring: PresentationRing | None = None) -> Report:
    """h-model relations vanish in the e-model; shift stability of the top h's."""
    ring = build_ring("e", shape) if ring is None else ring
    p, m = shape.p, shape.m
    rep = Report(f"relations {shape}")
    for i in range(p + 1, m):
        img = ring.schubert_coords(psi(cap_E(i, shape), shape))
        rep.record("Psi(E_i) = 0", f"{shape}, i={i}", not img, str(img))
    top = psi(cap_E(m, shape), shape) + (-1) ** (m - p) * qpoly
    img = ring.schubert_coords(top)
    rep.record("Psi(E_m) + (-1)^(m-p) q = 0", f"{shape}", not img, str(img))
    t = make_t(shape)
    for i in range(2, p + 1):
        for j in range(2, i + 1):
            lhs = h_factorial(m - p + i, t.shift(1 - j), p)
            rhs = h_factorial(m - p + i, t.shift(2 - j), p)
            rep.record("shift stability", f"{shape}, i={i}, j={j}", lhs == rhs)
    for i in range(1, p + 1):
        rep.record("shift stability (telescoped)", f"{shape}, i={i}",
                   h_factorial(m - p + i, t.shift(1 - i), p) == h_factorial(m - p + i, t, p))
    for k in range(p + 1, m + 1):
        rep.record("vanishing determinant at t", f"{shape}, k={k}", not capital_e_x(k, t, p))
        rep.record("vanishing determinant generic", f"p={p}, k={k}", not capital_e_x(k, generic(), p))
    return rep
