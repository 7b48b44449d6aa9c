"""Spinor-valued exterior forms and the raising/lowering operator calculus.

A degree-r form stores one PolySpinor per strictly increasing r-tuple of
basis indices; absent tuples are zero.  On these the three equivariant
operators act as

    X(a ⊗ s) = - sum_i  e^i ∧ a ⊗ e_i.s          (degree r+1)
    Y(a ⊗ s) =   sum_ij omega_upper[i][j] iota_{e_i} a ⊗ e_j.s   (degree r-1)
    H = XY + YX = i (r - l) Id on degree-r forms

and the isotypic projectors are built from X and Y alone:

    one-forms:  p10 = (i/l) XY,               p11 = Id - p10
    two-forms:  p20 = (1/l) X^2 Y^2
                p21 = (i/(l-1)) (XY - (i/l) X^2 Y^2)
                p22 = Id - p20 - p21

The normalizations are forced, not chosen: composing the H identity with the
definitions gives, on 2-forms, the relations

    (XY)^2 = i(1-l) XY - X^2Y^2,   XY X^2Y^2 = X^2Y^2 XY = i X^2Y^2,
    (X^2Y^2)^2 = l X^2Y^2,

so XY acts as i, i(1-l), 0 on the three summands, and the coefficients above
are the unique ones making each operator idempotent with p20+p21+p22 = Id.
A variant with i/(1-l) in the XY term squares to minus itself; the test
suite pins the idempotent choice.

Projectors never materialize matrices; they compose X and Y.  The one
exception is `graded_projector_matrix`, which assembles the matrix of a
projector on a finite graded piece so its rank can be recorded exactly.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .exact import ExactMatrix, GR_ZERO, GaussianRational, RandomStream
from .spinors import (
    PolySpinor,
    SpLieElement,
    _a_omega,
    clifford_basis,
    poly_spinor_from_json,
    poly_spinor_to_json,
    random_spinor,
    sp_action,
)
from .symplectic import SymplecticSpace, standard_symplectic_form

__all__ = [
    "SpinorForm",
    "wedge",
    "wedge_covector",
    "contract",
    "op_X",
    "op_Y",
    "op_H",
    "project",
    "decompose_two_form",
    "sp_action_form",
    "random_form",
    "graded_projector_matrix",
    "spinor_form_to_json",
    "spinor_form_from_json",
]

PROJECTORS = ("p10", "p11", "p20", "p21", "p22")


class SpinorForm:
    """Element of Lambda^r V* tensor S, stored sparsely by increasing tuple."""

    __slots__ = ("l", "r", "cap", "components")

    def __init__(self, l: int, r: int, cap: int, components: dict | None = None):
        if not (0 <= r <= 2 * l):
            raise ValueError(f"form degree {r} out of range for l={l}")
        clean: dict[tuple[int, ...], PolySpinor] = {}
        if components:
            for tup, s in components.items():
                tup = tuple(tup)
                if len(tup) != r:
                    raise ValueError(f"tuple {tup} has wrong length for degree {r}")
                if any(not (0 <= t < 2 * l) for t in tup):
                    raise ValueError(f"tuple {tup} out of range")
                if list(tup) != sorted(set(tup)):
                    raise ValueError(f"tuple {tup} must be strictly increasing")
                if s.l != l:
                    raise ValueError("component spinor has wrong l")
                if s.cap != cap:
                    raise ValueError("component spinors must share the cap")
                if not s.is_zero():
                    clean[tup] = s
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "cap", cap)
        object.__setattr__(self, "components", clean)

    def __setattr__(self, name, value):
        raise AttributeError("SpinorForm is immutable")

    @classmethod
    def zero(cls, l: int, r: int, cap: int) -> "SpinorForm":
        return cls(l, r, cap)

    @classmethod
    def from_spinor(cls, s: PolySpinor) -> "SpinorForm":
        """A 0-form."""
        return cls(s.l, 0, s.cap, {(): s})

    def component(self, tup) -> PolySpinor:
        return self.components.get(tuple(tup), PolySpinor.zero(self.l, self.cap))

    def is_zero(self) -> bool:
        return not self.components

    def __eq__(self, other):
        if not isinstance(other, SpinorForm):
            return NotImplemented
        return (
            self.l == other.l
            and self.r == other.r
            and self.components == other.components
        )

    def __repr__(self):
        return f"SpinorForm(l={self.l}, r={self.r}, {len(self.components)} components)"

    def __add__(self, other):
        if not isinstance(other, SpinorForm):
            return NotImplemented
        if self.l != other.l:
            raise ValueError("cannot add forms over different spaces")
        if self.r != other.r:
            # a zero form has no intrinsic degree; let it absorb into the other
            if self.is_zero():
                return _recap_form(other, max(self.cap, other.cap))
            if other.is_zero():
                return _recap_form(self, max(self.cap, other.cap))
            raise ValueError("cannot add forms of different degree")
        cap = max(self.cap, other.cap)
        out = {t: _recap(s, cap) for t, s in self.components.items()}
        for t, s in other.components.items():
            cur = out.get(t)
            s = _recap(s, cap)
            tot = s if cur is None else cur + s
            if tot.is_zero():
                out.pop(t, None)
            else:
                out[t] = tot
        return SpinorForm(self.l, self.r, cap, out)

    def __sub__(self, other):
        if not isinstance(other, SpinorForm):
            return NotImplemented
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, scalar) -> "SpinorForm":
        g = scalar if isinstance(scalar, GaussianRational) else GaussianRational(scalar)
        if not g:
            return SpinorForm(self.l, self.r, self.cap)
        return SpinorForm(
            self.l, self.r, self.cap,
            {t: s.scale(g) for t, s in self.components.items()},
        )

    def __mul__(self, scalar):
        if isinstance(scalar, (int, Fraction, GaussianRational)):
            return self.scale(scalar)
        return NotImplemented

    __rmul__ = __mul__

    def max_spinor_degree(self) -> int:
        if not self.components:
            return -1
        return max(s.degree() for s in self.components.values())

    def headroom(self) -> int:
        return self.cap - max(0, self.max_spinor_degree())


def _recap(s: PolySpinor, cap: int) -> PolySpinor:
    if s.cap == cap:
        return s
    return PolySpinor(s.l, cap, s.coeffs)


def _recap_form(phi: SpinorForm, cap: int) -> SpinorForm:
    if phi.cap == cap:
        return phi
    return SpinorForm(phi.l, phi.r, cap, {t: _recap(s, cap) for t, s in phi.components.items()})


def _insert_index(i: int, tup: tuple[int, ...]) -> tuple[int, tuple[int, ...]] | None:
    """Sign and sorted tuple for e^i ∧ e^tup; None when i already occurs."""
    if i in tup:
        return None
    pos = 0
    while pos < len(tup) and tup[pos] < i:
        pos += 1
    sign = -1 if pos % 2 else 1
    return sign, tup[:pos] + (i,) + tup[pos:]


def wedge(i: int, phi: SpinorForm) -> SpinorForm:
    """Left wedge by the basis covector e^i."""
    if not (0 <= i < 2 * phi.l):
        raise ValueError(f"covector index {i} out of range")
    if phi.r == 2 * phi.l:
        return SpinorForm.zero(phi.l, phi.r, phi.cap)
    out: dict[tuple[int, ...], PolySpinor] = {}
    for tup, s in phi.components.items():
        ins = _insert_index(i, tup)
        if ins is None:
            continue
        sign, new = ins
        term = s if sign == 1 else -s
        _accumulate(out, new, term)
    return SpinorForm(phi.l, phi.r + 1, phi.cap, out)


def wedge_covector(xi, phi: SpinorForm) -> SpinorForm:
    """Left wedge by the covector with coefficient list xi."""
    if len(xi) != 2 * phi.l:
        raise ValueError("covector must have length 2l")
    acc = SpinorForm.zero(phi.l, min(phi.r + 1, 2 * phi.l), phi.cap)
    for i, c in enumerate(xi):
        if not c:
            continue
        acc = acc + wedge(i, phi).scale(c)
    return acc


def contract(i: int, phi: SpinorForm) -> SpinorForm:
    """Interior product iota_{e_i}; zero on 0-forms."""
    if not (0 <= i < 2 * phi.l):
        raise ValueError(f"vector index {i} out of range")
    if phi.r == 0:
        return SpinorForm.zero(phi.l, 0, phi.cap)
    out: dict[tuple[int, ...], PolySpinor] = {}
    for tup, s in phi.components.items():
        if i not in tup:
            continue
        pos = tup.index(i)
        reduced = tup[:pos] + tup[pos + 1:]
        term = s if pos % 2 == 0 else -s
        _accumulate(out, reduced, term)
    return SpinorForm(phi.l, phi.r - 1, phi.cap, out)


def _accumulate(out: dict, tup: tuple[int, ...], s: PolySpinor) -> None:
    cur = out.get(tup)
    tot = s if cur is None else cur + s
    if tot.is_zero():
        out.pop(tup, None)
    else:
        out[tup] = tot


def op_X(phi: SpinorForm) -> SpinorForm:
    """X = - sum_i (e^i ∧ .) ⊗ e_i. ; raises form degree and spinor degree."""
    l = phi.l
    if phi.r == 2 * l:
        return SpinorForm.zero(l, phi.r, phi.cap)
    out: dict[tuple[int, ...], PolySpinor] = {}
    for tup, s in phi.components.items():
        for i in range(2 * l):
            ins = _insert_index(i, tup)
            if ins is None:
                continue
            sign, new = ins
            term = clifford_basis(i, s)
            if term.is_zero():
                continue
            _accumulate(out, new, -term if sign == 1 else term)
    return SpinorForm(l, phi.r + 1, phi.cap, out)


def op_Y(phi: SpinorForm, space: SymplecticSpace | None = None) -> SpinorForm:
    """Y = sum_ij omega_upper[i][j] (iota_{e_i} .) ⊗ e_j. ; zero on 0-forms."""
    l = phi.l
    if phi.r == 0:
        return SpinorForm.zero(l, 0, phi.cap)
    space = space or standard_symplectic_form(l)
    upper = space.omega_upper
    out: dict[tuple[int, ...], PolySpinor] = {}
    for tup, s in phi.components.items():
        for pos, i in enumerate(tup):
            reduced = tup[:pos] + tup[pos + 1:]
            contraction_sign = 1 if pos % 2 == 0 else -1
            for j in range(2 * l):
                w = upper[i][j]
                if not w:
                    continue
                term = clifford_basis(j, s).scale(w * contraction_sign)
                if not term.is_zero():
                    _accumulate(out, reduced, term)
    return SpinorForm(l, phi.r - 1, phi.cap, out)


def op_H(phi: SpinorForm, space: SymplecticSpace | None = None) -> SpinorForm:
    """Anticommutator H = XY + YX; acts as i (r - l) Id on degree-r forms."""
    space = space or standard_symplectic_form(phi.l)
    return op_X(op_Y(phi, space)) + op_Y(op_X(phi), space)


def _x2y2(phi: SpinorForm, space: SymplecticSpace) -> SpinorForm:
    return op_X(op_X(op_Y(op_Y(phi, space), space)))


def project(which: str, phi: SpinorForm, space: SymplecticSpace | None = None) -> SpinorForm:
    """Isotypic projector onto one irreducible summand.

    p10/p11 expect 1-forms, p20/p21/p22 expect 2-forms; l must be at least 2
    (for l = 1 the two-form decomposition has a different shape and is out of
    scope here).
    """
    if which not in PROJECTORS:
        raise ValueError(f"unknown projector {which!r}")
    l = phi.l
    if l < 2:
        raise ValueError("projectors require l >= 2")
    space = space or standard_symplectic_form(l)
    if which in ("p10", "p11"):
        if phi.r != 1:
            raise ValueError(f"{which} acts on 1-forms, got degree {phi.r}")
        p10 = op_X(op_Y(phi, space)).scale(GaussianRational(0, Fraction(1, l)))
        return p10 if which == "p10" else phi - p10
    if phi.r != 2:
        raise ValueError(f"{which} acts on 2-forms, got degree {phi.r}")
    if which == "p20":
        return _x2y2(phi, space).scale(Fraction(1, l))
    xy = op_X(op_Y(phi, space))
    x2y2 = _x2y2(phi, space)
    p21 = (xy - x2y2.scale(GaussianRational(0, Fraction(1, l)))).scale(
        GaussianRational(0, Fraction(1, l - 1))
    )
    if which == "p21":
        return p21
    return phi - x2y2.scale(Fraction(1, l)) - p21


def decompose_two_form(
    phi: SpinorForm, space: SymplecticSpace | None = None
) -> tuple[SpinorForm, SpinorForm, SpinorForm]:
    """The three isotypic components of a 2-form; they sum back to phi."""
    space = space or standard_symplectic_form(phi.l)
    e20 = project("p20", phi, space)
    e21 = project("p21", phi, space)
    e22 = phi - e20 - e21
    return e20, e21, e22


def sp_action_form(A: SpLieElement, phi: SpinorForm, space: SymplecticSpace | None = None) -> SpinorForm:
    """Infinitesimal sp(2l)-action on a spinor-valued form.

    Acts on the form part through the dual action (A* eta)(v) = -eta(A v),
    extended as a derivation over the wedge, and on the spinor part through
    sp_action.
    """
    space = space or standard_symplectic_form(phi.l)
    if A.l != phi.l:
        raise ValueError("mismatched l")
    ao = _a_omega(A, space)   # (A v)^m = ao[m][q] v^q ; A* e^t = -sum_q ao[t][q] e^q
    out: dict[tuple[int, ...], PolySpinor] = {}
    for tup, s in phi.components.items():
        _accumulate(out, tup, sp_action(A, s))
        for pos, t in enumerate(tup):
            rest = tup[:pos] + tup[pos + 1:]
            for q in range(space.n):
                c = ao[t][q]
                if not c:
                    continue
                ins = _insert_index(q, rest)
                if ins is None:
                    continue
                swap_sign, new = ins
                # moving e^q back into position pos costs (-1)^pos relative
                # to the insertion sign computed against the reduced tuple
                pos_sign = -1 if pos % 2 else 1
                total = -c * swap_sign * pos_sign
                term = s.scale(total)
                if not term.is_zero():
                    _accumulate(out, new, term)
    return SpinorForm(phi.l, phi.r, phi.cap, out)


def random_form(
    l: int,
    r: int,
    degree: int,
    cap: int,
    stream: RandomStream,
    terms_per_component: int = 4,
    bound: int = 5,
) -> SpinorForm:
    """Random degree-r form with a sparse random spinor in every slot."""
    comps = {}
    for tup in combinations(range(2 * l), r):
        comps[tup] = random_spinor(l, degree, cap, stream, terms=terms_per_component, bound=bound)
    return SpinorForm(l, r, cap, comps)


# ---------------------------------------------------------------------------
# Graded matrices for rank bookkeeping
# ---------------------------------------------------------------------------


def _graded_basis(l: int, r: int, degree: int, cap: int) -> list[SpinorForm]:
    """Basis of Lambda^r ⊗ (spinors of exact total degree `degree`)."""
    def monomials(vars_left, total):
        if vars_left == 1:
            yield (total,)
            return
        for e in range(total + 1):
            for rest in monomials(vars_left - 1, total - e):
                yield (e,) + rest

    basis = []
    for tup in combinations(range(2 * l), r):
        for alpha in monomials(l, degree):
            s = PolySpinor.monomial(l, cap, alpha)
            basis.append(SpinorForm(l, r, cap, {tup: s}))
    return basis


def graded_projector_matrix(which: str, l: int, degree: int) -> ExactMatrix:
    """Matrix of a projector restricted to the exact-degree graded piece.

    Columns are indexed by the graded basis of the source; rows span every
    (tuple, monomial) pair occurring in the images.  Used only to record
    exact ranks; the projectors themselves never take this path.
    """
    cap = degree + 8
    space = standard_symplectic_form(l)
    r = 1 if which in ("p10", "p11") else 2
    basis = _graded_basis(l, r, degree, cap)
    images = [project(which, b, space) for b in basis]
    row_keys = sorted(
        {
            (tup, alpha)
            for img in images
            for tup, s in img.components.items()
            for alpha in s.coeffs
        }
    )
    key_index = {k: i for i, k in enumerate(row_keys)}
    entries = [[GR_ZERO] * len(basis) for _ in range(len(row_keys))]
    for col, img in enumerate(images):
        for tup, s in img.components.items():
            for alpha, c in s.coeffs.items():
                entries[key_index[(tup, alpha)]][col] = c
    if not row_keys:
        entries = [[GR_ZERO] * len(basis)]
    return ExactMatrix(entries)


# ---------------------------------------------------------------------------
# JSON wire format: PolySpinor layout plus a "tuple" key per component
# ---------------------------------------------------------------------------


def spinor_form_to_json(phi: SpinorForm) -> dict:
    comps = []
    for tup in sorted(phi.components):
        inner = poly_spinor_to_json(phi.components[tup])
        comps.append({"tuple": [t + 1 for t in tup], "terms": inner["terms"]})
    return {"l": phi.l, "r": phi.r, "cap": phi.cap, "components": comps}


def spinor_form_from_json(obj: dict) -> SpinorForm:
    comps = {}
    for item in obj["components"]:
        tup = tuple(t - 1 for t in item["tuple"])
        inner = poly_spinor_from_json(
            {"l": obj["l"], "cap": obj["cap"], "terms": item["terms"]}
        )
        comps[tup] = inner
    return SpinorForm(obj["l"], obj["r"], obj["cap"], comps)
