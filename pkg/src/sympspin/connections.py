"""Torsion-free symplectic connections on flat R^{2l} with polynomial data.

On the flat model with constant omega and coordinate frame (so all frame
brackets vanish), a connection given by Christoffel symbols is symplectic and
torsion-free exactly when the fully lowered symbols

    Gamma_ijk  (with Gamma^m_jk = sum_i omega_upper[m][i] Gamma_ijk)

are totally symmetric in (i, j, k).  `check_connection_axioms` does not
assume this equivalence: it verifies nabla(omega) = 0 and T = 0 symbolically,
as polynomial identities, for whatever symbols it is handed.

The curvature of such a connection,

    R^m_jkl = d_k Gamma^m_lj - d_l Gamma^m_kj
              + Gamma^m_ka Gamma^a_lj - Gamma^m_la Gamma^a_kj,
    R_ijkl  = sum_m R^m_jkl omega_lower[m][i],

is a field of genuine curvature-type tensors: every exact evaluation feeds
the curvature module without synthetic constraint solving.  The lowering
above realizes R_ijkl = omega(R(e_k, e_l) e_j, e_i); the pair-symmetry
identity (C) doubles as the sign oracle for this convention, so the test
suite failing identity (C) would disprove the sign, not the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, permutations, product

from .curvature import CurvatureTensor, check_symmetries
from .exact import RandomStream
from .symplectic import SymplecticSpace, standard_symplectic_form

__all__ = [
    "Poly",
    "PolynomialConnection",
    "CurvatureField",
    "ConnectionAxiomReport",
    "random_connection",
    "check_connection_axioms",
    "curvature_field_of",
    "evaluate_curvature_at",
    "poly_to_json",
    "poly_from_json",
    "connection_to_json",
    "connection_from_json",
]

F0 = Fraction(0)


class Poly:
    """Sparse polynomial in n variables over the rationals."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for alpha, c in terms.items():
                if len(alpha) != n or any(a < 0 for a in alpha):
                    raise ValueError(f"bad exponent tuple {alpha}")
                c = Fraction(c)
                if c:
                    clean[tuple(alpha)] = c
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def zero(cls, n: int) -> "Poly":
        return cls(n)

    @classmethod
    def const(cls, n: int, c) -> "Poly":
        return cls(n, {(0,) * n: Fraction(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(a) for a in self.terms)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __add__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        out = dict(self.terms)
        for a, c in other.terms.items():
            s = out.get(a, F0) + c
            if s:
                out[a] = s
            else:
                out.pop(a, None)
        return Poly(self.n, out)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Poly(self.n, {a: -c for a, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        out: dict[tuple[int, ...], Fraction] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                key = tuple(x + y for x, y in zip(a, b))
                s = out.get(key, F0) + ca * cb
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return Poly(self.n, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if not c:
            return Poly(self.n)
        return Poly(self.n, {a: x * c for a, x in self.terms.items()})

    def deriv(self, var: int) -> "Poly":
        out = {}
        for a, c in self.terms.items():
            k = a[var]
            if k == 0:
                continue
            b = list(a)
            b[var] -= 1
            out[tuple(b)] = c * k
        return Poly(self.n, out)

    def eval_at(self, point) -> Fraction:
        if len(point) != self.n:
            raise ValueError("point has wrong dimension")
        acc = F0
        for a, c in self.terms.items():
            term = c
            for x, e in zip(point, a):
                for _ in range(e):
                    term *= x
            acc += term
        return acc

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        return "Poly(" + " + ".join(f"{c}*x^{a}" for a, c in sorted(self.terms.items())) + ")"


def random_poly(n: int, degree: int, stream: RandomStream, bound: int = 3) -> Poly:
    """Dense random polynomial of total degree <= degree."""
    def exponents(vars_left, budget):
        if vars_left == 1:
            for e in range(budget + 1):
                yield (e,)
            return
        for e in range(budget + 1):
            for rest in exponents(vars_left - 1, budget - e):
                yield (e,) + rest

    terms = {}
    for alpha in exponents(n, degree):
        c = stream.next_fraction(bound)
        if c:
            terms[alpha] = c
    return Poly(n, terms)


class PolynomialConnection:
    """Christoffel data Gamma_ijk with polynomial entries on flat R^{2l}.

    Stores one polynomial per ordered triple so that deliberately broken
    (asymmetric) data can be represented and caught by the axiom check.
    """

    __slots__ = ("l", "cap", "gamma")

    def __init__(self, l: int, cap: int, gamma: dict):
        n = 2 * l
        table: dict[tuple[int, int, int], Poly] = {}
        for idx in product(range(n), repeat=3):
            p = gamma.get(idx, Poly.zero(n))
            if p.n != n:
                raise ValueError("polynomial has wrong number of variables")
            if p.degree() > cap:
                raise ValueError(f"Gamma{idx} exceeds degree cap {cap}")
            table[idx] = p
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "cap", cap)
        object.__setattr__(self, "gamma", table)

    def __setattr__(self, name, value):
        raise AttributeError("PolynomialConnection is immutable")

    def entry(self, i: int, j: int, k: int) -> Poly:
        return self.gamma[(i, j, k)]

    def is_totally_symmetric(self) -> bool:
        n = 2 * self.l
        for idx in combinations_with_replacement(range(n), 3):
            base = self.gamma[idx]
            for perm in permutations(idx):
                if self.gamma[perm] != base:
                    return False
        return True

    def __eq__(self, other):
        if not isinstance(other, PolynomialConnection):
            return NotImplemented
        return self.l == other.l and self.gamma == other.gamma

    def __repr__(self):
        return f"PolynomialConnection(l={self.l}, cap={self.cap})"


def random_connection(l: int, degree: int, seed: int, bound: int = 3) -> PolynomialConnection:
    """Random totally symmetric polynomial Christoffel data; deterministic."""
    if l < 1 or degree < 0:
        raise ValueError("need l >= 1 and degree >= 0")
    n = 2 * l
    stream = RandomStream(seed)
    gamma: dict[tuple[int, int, int], Poly] = {}
    for idx in combinations_with_replacement(range(n), 3):
        p = random_poly(n, degree, stream, bound)
        for perm in permutations(idx):
            gamma[perm] = p
    return PolynomialConnection(l, degree, gamma)


@dataclass(frozen=True)
class ConnectionAxiomReport:
    torsion_free: bool
    preserves_omega: bool
    first_violation: tuple | None = None
    violation_poly: dict | None = None

    def ok(self) -> bool:
        return self.torsion_free and self.preserves_omega


def _gamma_upper(conn: PolynomialConnection, space: SymplecticSpace):
    """Gamma^m_jk = sum_i omega_upper[m][i] Gamma_ijk, tabulated."""
    n = space.n
    up = space.omega_upper
    table = {}
    for m, j, k in product(range(n), repeat=3):
        acc = Poly.zero(n)
        for i in range(n):
            w = up[m][i]
            if w:
                acc = acc + conn.entry(i, j, k).scale(w)
        table[(m, j, k)] = acc
    return table

def check_connection_axioms(conn: PolynomialConnection) -> ConnectionAxiomReport:
    """Verify nabla(omega) = 0 and zero torsion as polynomial identities."""
    space = standard_symplectic_form(conn.l)
    n = space.n
    gu = _gamma_upper(conn, space)
    lo = space.omega_lower
    torsion_ok, omega_ok = True, True
    violation, poly = None, None
    for m, j, k in product(range(n), repeat=3):
        if j < k:
            diff = gu[(m, j, k)] - gu[(m, k, j)]
            if not diff.is_zero():
                torsion_ok = False
                if violation is None:
                    violation = ("torsion", m, j, k)
                    poly = poly_to_json(diff)
    for k, i, j in product(range(n), repeat=3):
        # constant omega: nabla_k omega_ij = -(Gamma^m_ki omega_mj + Gamma^m_kj omega_im)
        acc = Poly.zero(n)
        for m in range(n):
            if lo[m][j]:
                acc = acc + gu[(m, k, i)].scale(lo[m][j])
            if lo[i][m]:
                acc = acc + gu[(m, k, j)].scale(lo[i][m])
        if not acc.is_zero():
            omega_ok = False
            if violation is None:
                violation = ("nabla-omega", k, i, j)
                poly = poly_to_json(acc)
            break
    return ConnectionAxiomReport(torsion_ok, omega_ok, violation, poly)


class CurvatureField:
    """Rank-4 array of polynomials; pointwise a curvature-type tensor."""

    __slots__ = ("l", "entries")

    def __init__(self, l: int, entries):
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("CurvatureField is immutable")

    def is_zero(self) -> bool:
        n = 2 * self.l
        return all(
            self.entries[i][j][k][m].is_zero()
            for i, j, k, m in product(range(n), repeat=4)
        )

    def __repr__(self):
        return f"CurvatureField(l={self.l})"


def curvature_field_of(conn: PolynomialConnection) -> CurvatureField:
    """Curvature polynomials of a verified connection, fully lowered."""
    report = check_connection_axioms(conn)
    if not report.ok():
        raise ValueError(f"connection violates axioms: {report.first_violation}")
    space = standard_symplectic_form(conn.l)
    n = space.n
    gu = _gamma_upper(conn, space)
    lo = space.omega_lower

    upper_field = {}
    for m, j in product(range(n), repeat=2):
        for k in range(n):
            for mm in range(k + 1, n):
                # R^m_j{k,mm}: derivative terms plus the Gamma.Gamma commutator
                acc = gu[(m, mm, j)].deriv(k) - gu[(m, k, j)].deriv(mm)
                for a in range(n):
                    acc = acc + gu[(m, k, a)] * gu[(a, mm, j)] - gu[(m, mm, a)] * gu[(a, k, j)]
                upper_field[(m, j, k, mm)] = acc

    def upper(m, j, k, mm):
        if k == mm:
            return Poly.zero(n)
        if k < mm:
            return upper_field[(m, j, k, mm)]
        return -upper_field[(m, j, mm, k)]

    entries = [
        [
            [
                [Poly.zero(n) for _ in range(n)]
                for _ in range(n)
            ]
            for _ in range(n)
        ]
        for _ in range(n)
    ]
    for i, j, k, mm in product(range(n), repeat=4):
        acc = Poly.zero(n)
        for m in range(n):
            w = lo[m][i]
            if w:
                acc = acc + upper(m, j, k, mm).scale(w)
        entries[i][j][k][mm] = acc
    return CurvatureField(conn.l, entries)


def evaluate_curvature_at(field: CurvatureField, point) -> CurvatureTensor:
    """Exact evaluation; raises when the result violates the symmetries."""
    n = 2 * field.l
    if len(point) != n:
        raise ValueError("point must have dimension 2l")
    pt = [Fraction(x) for x in point]
    entries = [
        [
            [
                [field.entries[i][j][k][m].eval_at(pt) for m in range(n)]
                for k in range(n)
            ]
            for j in range(n)
        ]
        for i in range(n)
    ]
    report = check_symmetries(entries)
    if not report.curvature_type():
        raise ValueError("evaluated tensor violates curvature symmetries; "
                         "convention bug upstream")
    return CurvatureTensor(field.l, entries, validate=False)


# ---------------------------------------------------------------------------
# JSON helpers
# ---------------------------------------------------------------------------


def poly_to_json(p: Poly) -> dict:
    return {
        "n": p.n,
        "terms": [{"alpha": list(a), "val": str(c)} for a, c in sorted(p.terms.items())],
    }


def poly_from_json(obj: dict) -> Poly:
    return Poly(obj["n"], {tuple(t["alpha"]): Fraction(t["val"]) for t in obj["terms"]})


def connection_to_json(conn: PolynomialConnection) -> dict:
    n = 2 * conn.l
    items = []
    for idx in product(range(n), repeat=3):
        p = conn.entry(*idx)
        if not p.is_zero():
            items.append({"ijk": [x + 1 for x in idx], "poly": poly_to_json(p)})
    return {"l": conn.l, "cap": conn.cap, "gamma": items}


def connection_from_json(obj: dict) -> PolynomialConnection:
    gamma = {
        tuple(x - 1 for x in item["ijk"]): poly_from_json(item["poly"])
        for item in obj["gamma"]
    }
    return PolynomialConnection(obj["l"], obj["cap"], gamma)
