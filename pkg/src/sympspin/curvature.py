"""Symplectic curvature tensors: symmetries, Ricci trace, trace-free part.

A curvature-type tensor R_{ijkl} over (R^{2l}, omega) satisfies

    (A)  R_{ijkl} = -R_{ijlk}
    (B)  R_{ijkl} + R_{iklj} + R_{iljk} = 0     (first Bianchi identity)
    (C)  R_{ijkl} = R_{jikl}

and, as a consequence of (A)-(C), the four-term cyclic identity

    (D)  R_{ijkl} + R_{jkli} + R_{klij} + R_{lijk} = 0.

The Ricci part is the trace  sigma_ij = sum_{m,a} omega_upper[m][a] R_{ajmi},
which is symmetric and satisfies  R^{ijkl} omega_kl = 2 sigma^{ij}.  The
coordinate expression is derived from the trace definition and then pinned by
that raised-index identity in the test suite; if the identity suite fails,
the sign or slot choice here is wrong, whatever the derivation says.

sigma_tilde rebuilds a curvature-type tensor from a symmetric matrix:

    sigma_tilde_ijkl = (omega_il s_jk - omega_ik s_jl + omega_jl s_ik
                        - omega_jk s_il + 2 s_ij omega_kl) / (2(l+1))

and the trace-free remainder W = R - sigma_tilde(ricci(R)) has all six
omega-contractions equal to zero.

Random tensors are drawn as exact rational combinations of a nullspace basis
of the linear constraints, materialized once per l and cached; membership in
the constraint space is therefore exact by construction.  The constraint
systems are assembled over the (A)+(C)-reduced coordinates (i <= j, k < l)
with sparse rows; a dense RREF over the full (2l)^4 coordinates would be
needlessly slow at l = 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .exact import RandomStream
from .symplectic import SymplecticSpace, raise_lower_index, standard_symplectic_form

__all__ = [
    "CurvatureTensor",
    "RicciTensor",
    "WeylTensor",
    "IdentityCheck",
    "SymmetryReport",
    "check_symmetries",
    "ricci_of",
    "sigma_tilde_of",
    "weyl_of",
    "random_curvature",
    "random_weyl",
    "curvature_space_dim",
    "weyl_space_dim",
    "curvature_space_basis",
    "weyl_space_basis",
    "omega_traces",
    "curvature_to_json",
    "curvature_from_json",
    "ricci_to_json",
    "ricci_from_json",
]

F0 = Fraction(0)
F1 = Fraction(1)


def _zero_entries(n: int):
    return [[[[F0] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]


class CurvatureTensor:
    """Dense rank-4 array of rationals satisfying the curvature symmetries."""

    __slots__ = ("l", "entries")

    def __init__(self, l: int, entries, validate: bool = True):
        n = 2 * l
        if len(entries) != n:
            raise ValueError("entries must be (2l)^4")
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "entries", entries)
        if validate:
            report = check_symmetries(entries)
            if not report.curvature_type():
                raise ValueError(f"symmetry violation: {report}")

    def __setattr__(self, name, value):
        raise AttributeError("CurvatureTensor is immutable")

    @classmethod
    def zero(cls, l: int) -> "CurvatureTensor":
        return cls(l, _zero_entries(2 * l), validate=False)

    def entry(self, i: int, j: int, k: int, m: int) -> Fraction:
        return self.entries[i][j][k][m]

    def is_zero(self) -> bool:
        n = 2 * self.l
        return all(
            not self.entries[i][j][k][m]
            for i, j, k, m in product(range(n), repeat=4)
        )

    def __eq__(self, other):
        if not isinstance(other, CurvatureTensor):
            return NotImplemented
        return self.l == other.l and self.entries == other.entries

    def __add__(self, other):
        if not isinstance(other, CurvatureTensor):
            return NotImplemented
        n = 2 * self.l
        out = _zero_entries(n)
        for i, j, k, m in product(range(n), repeat=4):
            out[i][j][k][m] = self.entries[i][j][k][m] + other.entries[i][j][k][m]
        return CurvatureTensor(self.l, out, validate=False)

    def __sub__(self, other):
        if not isinstance(other, CurvatureTensor):
            return NotImplemented
        n = 2 * self.l
        out = _zero_entries(n)
        for i, j, k, m in product(range(n), repeat=4):
            out[i][j][k][m] = self.entries[i][j][k][m] - other.entries[i][j][k][m]
        return CurvatureTensor(self.l, out, validate=False)

    def __repr__(self):
        return f"{type(self).__name__}(l={self.l})"


class RicciTensor:
    """Symmetric 2l x 2l rational matrix."""

    __slots__ = ("l", "entries")

    def __init__(self, l: int, entries):
        n = 2 * l
        rows = [[Fraction(x) for x in row] for row in entries]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError("entries must be 2l x 2l")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"not symmetric at ({i}, {j})")
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("RicciTensor is immutable")

    @classmethod
    def zero(cls, l: int) -> "RicciTensor":
        n = 2 * l
        return cls(l, [[F0] * n for _ in range(n)])

    @classmethod
    def random(cls, l: int, stream: RandomStream, bound: int = 5) -> "RicciTensor":
        n = 2 * l
        m = [[F0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                x = stream.next_fraction(bound)
                m[i][j] = x
                m[j][i] = x
        return cls(l, m)

    def is_zero(self) -> bool:
        return all(not x for row in self.entries for x in row)

    def __eq__(self, other):
        if not isinstance(other, RicciTensor):
            return NotImplemented
        return self.l == other.l and self.entries == other.entries

    def __repr__(self):
        return f"RicciTensor(l={self.l})"


class WeylTensor(CurvatureTensor):
    """Curvature-type tensor whose six omega-traces all vanish."""

    def __init__(self, l: int, entries, validate: bool = True):
        super().__init__(l, entries, validate=validate)
        if validate:
            traces = omega_traces(self)
            for pair, mat in traces.items():
                for row in mat:
                    for x in row:
                        if x:
                            raise ValueError(f"nonzero omega-trace on slots {pair}")


# ---------------------------------------------------------------------------
# Symmetry predicates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IdentityCheck:
    holds: bool
    first_violation: tuple[int, int, int, int] | None = None


@dataclass(frozen=True)
class SymmetryReport:
    """Per-identity verdicts; violations carry the first offending indices."""

    antisym_last_pair: IdentityCheck    # (A)
    first_bianchi: IdentityCheck        # (B)
    pair_symmetry: IdentityCheck        # (C)
    extended_bianchi: IdentityCheck     # (D)

    def curvature_type(self) -> bool:
        return (
            self.antisym_last_pair.holds
            and self.first_bianchi.holds
            and self.pair_symmetry.holds
        )

    def all_hold(self) -> bool:
        return self.curvature_type() and self.extended_bianchi.holds


def _entries_of(R):
    return R.entries if isinstance(R, CurvatureTensor) else R


def check_symmetries(R) -> SymmetryReport:
    """Check identities (A)-(D) on a rank-4 array or CurvatureTensor."""
    e = _entries_of(R)
    n = len(e)
    anti = bianchi = pair = ext = None
    for i, j, k, m in product(range(n), repeat=4):
        if anti is None and e[i][j][k][m] != -e[i][j][m][k]:
            anti = (i, j, k, m)
        if pair is None and e[i][j][k][m] != e[j][i][k][m]:
            pair = (i, j, k, m)
        if bianchi is None and e[i][j][k][m] + e[i][k][m][j] + e[i][m][j][k] != 0:
            bianchi = (i, j, k, m)
        if ext is None and (
            e[i][j][k][m] + e[j][k][m][i] + e[k][m][i][j] + e[m][i][j][k] != 0
        ):
            ext = (i, j, k, m)
        if anti and bianchi and pair and ext:
            break
    return SymmetryReport(
        antisym_last_pair=IdentityCheck(anti is None, anti),
        first_bianchi=IdentityCheck(bianchi is None, bianchi),
        pair_symmetry=IdentityCheck(pair is None, pair),
        extended_bianchi=IdentityCheck(ext is None, ext),
    )


# ---------------------------------------------------------------------------
# Ricci trace, sigma_tilde, trace-free part
# ---------------------------------------------------------------------------


def _ricci_entries(R: CurvatureTensor, space: SymplecticSpace):
    n = space.n
    e = R.entries
    up = space.omega_upper
    out = [[F0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = F0
            for m in range(n):
                row = up[m]
                for a in range(n):
                    w = row[a]
                    if w:
                        acc += w * e[a][j][m][i]
            out[i][j] = acc
    return out


def ricci_of(R: CurvatureTensor, space: SymplecticSpace | None = None) -> RicciTensor:
    """Ricci trace sigma_ij = sum omega_upper[m][a] R[a][j][m][i]."""
    space = space or standard_symplectic_form(R.l)
    report = check_symmetries(R)
    if not report.curvature_type():
        raise ValueError("input violates the curvature symmetries")
    return RicciTensor(R.l, _ricci_entries(R, space))


def sigma_tilde_of(sigma: RicciTensor, space: SymplecticSpace | None = None) -> CurvatureTensor:
    """Curvature-type tensor built from a symmetric matrix.

    This is the unique (up to the fixed normalization 1/(2(l+1))) Ricci-type
    section: ricci_of(sigma_tilde_of(s)) = s exactly.
    """
    space = space or standard_symplectic_form(sigma.l)
    n = space.n
    lo = space.omega_lower
    s = sigma.entries
    denom = Fraction(1, 2 * (sigma.l + 1))
    out = _zero_entries(n)
    for i, j, k, m in product(range(n), repeat=4):
        val = (
            lo[i][m] * s[j][k]
            - lo[i][k] * s[j][m]
            + lo[j][m] * s[i][k]
            - lo[j][k] * s[i][m]
            + 2 * s[i][j] * lo[k][m]
        )
        if val:
            out[i][j][k][m] = val * denom
    return CurvatureTensor(sigma.l, out, validate=False)


def weyl_of(R: CurvatureTensor, space: SymplecticSpace | None = None) -> WeylTensor:
    """Trace-free part W = R - sigma_tilde(ricci(R)); validated on the way out."""
    space = space or standard_symplectic_form(R.l)
    sigma = ricci_of(R, space)
    st = sigma_tilde_of(sigma, space)
    diff = R - st
    return WeylTensor(R.l, diff.entries, validate=True)


def raise_all(R: CurvatureTensor, space: SymplecticSpace | None = None):
    """All four indices raised: R^{ijkl}."""
    space = space or standard_symplectic_form(R.l)
    t = R.entries
    for slot in range(4):
        t = raise_lower_index(t, slot, "raise", space)
    return t


def omega_traces(R: CurvatureTensor, space: SymplecticSpace | None = None) -> dict:
    """The six contractions R^{ijkl} omega_(pair), keyed by slot pair.

    Each value is a 2l x 2l matrix over the two free slots, in slot order.
    """
    space = space or standard_symplectic_form(R.l)
    n = space.n
    raised = raise_all(R, space)
    lo = space.omega_lower
    out = {}
    for s, t in combinations(range(4), 2):
        free = [p for p in range(4) if p not in (s, t)]
        mat = [[F0] * n for _ in range(n)]
        for u in range(n):
            for v in range(n):
                acc = F0
                for a in range(n):
                    for b in range(n):
                        w = lo[a][b]
                        if not w:
                            continue
                        idx = [0, 0, 0, 0]
                        idx[s], idx[t] = a, b
                        idx[free[0]], idx[free[1]] = u, v
                        acc += w * raised[idx[0]][idx[1]][idx[2]][idx[3]]
                mat[u][v] = acc
        out[(s, t)] = mat
    return out


# ---------------------------------------------------------------------------
# Constraint spaces: nullspace bases over reduced coordinates
# ---------------------------------------------------------------------------


def _canonical_vars(n: int):
    """Coordinates after imposing (A) and (C): pairs i <= j times k < l."""
    variables = []
    index = {}
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                for m in range(k + 1, n):
                    index[(i, j, k, m)] = len(variables)
                    variables.append((i, j, k, m))
    return variables, index


def _resolve(index, i, j, k, m):
    """Map an arbitrary index quadruple to (variable, sign); None when k == m."""
    if k == m:
        return None
    sign = 1
    if k > m:
        k, m = m, k
        sign = -1
    if i > j:
        i, j = j, i
    return index[(i, j, k, m)], sign


def _bianchi_rows(n: int, index) -> list[dict[int, Fraction]]:
    rows = []
    for i in range(n):
        for j, k, m in combinations(range(n), 3):
            row: dict[int, Fraction] = {}
            for (a, b, c, d) in ((i, j, k, m), (i, k, m, j), (i, m, j, k)):
                r = _resolve(index, a, b, c, d)
                if r is None:
                    continue
                var, sign = r
                row[var] = row.get(var, F0) + sign
            row = {v: x for v, x in row.items() if x}
            if row:
                rows.append(row)
    return rows


def _trace_rows(n: int, index, space: SymplecticSpace) -> list[dict[int, Fraction]]:
    """Vanishing of the six omega-traces, expressed on lowered coordinates.

    A raised-pair trace W^{ijkl} omega_(slots s,t) = 0 is equivalent to the
    omega_upper contraction of the lowered tensor on the same slots.
    """
    up = space.omega_upper
    rows = []
    for s, t in combinations(range(4), 2):
        free = [p for p in range(4) if p not in (s, t)]
        for u in range(n):
            for v in range(n):
                row: dict[int, Fraction] = {}
                for a in range(n):
                    for b in range(n):
                        w = up[a][b]
                        if not w:
                            continue
                        idx = [0, 0, 0, 0]
                        idx[s], idx[t] = a, b
                        idx[free[0]], idx[free[1]] = u, v
                        r = _resolve(index, *idx)
                        if r is None:
                            continue
                        var, sign = r
                        val = row.get(var, F0) + w * sign
                        if val:
                            row[var] = val
                        else:
                            row.pop(var, None)
                if row:
                    rows.append(row)
    return rows


def _sparse_nullspace(rows: list[dict[int, Fraction]], ncols: int):
    """Nullspace basis of a sparse rational system; deterministic order."""
    pivot_rows: dict[int, dict[int, Fraction]] = {}
    for row in rows:
        row = dict(row)
        while row:
            c = min(row)
            if c in pivot_rows:
                f = row.pop(c)
                for cc, vv in pivot_rows[c].items():
                    if cc == c:
                        continue
                    nv = row.get(cc, F0) - f * vv
                    if nv:
                        row[cc] = nv
                    else:
                        row.pop(cc, None)
            else:
                inv = 1 / row[c]
                pivot_rows[c] = {cc: vv * inv for cc, vv in row.items()}
                break
    # full reduction: eliminate pivot columns from earlier pivot rows
    for c in sorted(pivot_rows, reverse=True):
        prow = pivot_rows[c]
        for c2 in sorted(pivot_rows):
            if c2 >= c:
                break
            row2 = pivot_rows[c2]
            f = row2.get(c)
            if f:
                row2.pop(c)
                for cc, vv in prow.items():
                    if cc == c:
                        continue
                    nv = row2.get(cc, F0) - f * vv
                    if nv:
                        row2[cc] = nv
                    else:
                        row2.pop(cc, None)
    pivots = set(pivot_rows)
    basis = []
    for fcol in range(ncols):
        if fcol in pivots:
            continue
        vec = {fcol: F1}
        for p, prow in pivot_rows.items():
            coeff = prow.get(fcol)
            if coeff:
                vec[p] = -coeff
        basis.append(vec)
    return basis


_curvature_basis_cache: dict[int, list] = {}
_weyl_basis_cache: dict[int, list] = {}


def curvature_space_basis(l: int):
    """Cached nullspace basis of constraints (A)+(B)+(C), reduced coordinates."""
    if l not in _curvature_basis_cache:
        n = 2 * l
        variables, index = _canonical_vars(n)
        rows = _bianchi_rows(n, index)
        basis = _sparse_nullspace(rows, len(variables))
        _curvature_basis_cache[l] = [(variables, vec) for vec in basis]
    return _curvature_basis_cache[l]


def weyl_space_basis(l: int):
    """Cached nullspace basis of (A)+(B)+(C) plus all six trace conditions."""
    if l not in _weyl_basis_cache:
        n = 2 * l
        space = standard_symplectic_form(l)
        variables, index = _canonical_vars(n)
        rows = _bianchi_rows(n, index) + _trace_rows(n, index, space)
        basis = _sparse_nullspace(rows, len(variables))
        _weyl_basis_cache[l] = [(variables, vec) for vec in basis]
    return _weyl_basis_cache[l]


def curvature_space_dim(l: int) -> int:
    return len(curvature_space_basis(l))


def weyl_space_dim(l: int) -> int:
    return len(weyl_space_basis(l))


def _expand_var_vector(l: int, variables, vec: dict[int, Fraction]):
    n = 2 * l
    out = _zero_entries(n)
    for var, coeff in vec.items():
        i, j, k, m = variables[var]
        out[i][j][k][m] += coeff
        out[i][j][m][k] -= coeff
        if i != j:
            out[j][i][k][m] += coeff
            out[j][i][m][k] -= coeff
    return out


def _random_combination(l: int, basis, stream: RandomStream, bound: int):
    acc: dict[int, Fraction] = {}
    variables = basis[0][0] if basis else None
    for _, vec in basis:
        c = stream.next_fraction(bound)
        if not c:
            continue
        for var, coeff in vec.items():
            val = acc.get(var, F0) + c * coeff
            if val:
                acc[var] = val
            else:
                acc.pop(var, None)
    if variables is None:
        return _zero_entries(2 * l)
    return _expand_var_vector(l, variables, acc)


def random_curvature(l: int, seed: int, bound: int = 9) -> CurvatureTensor:
    """Deterministic random element of the curvature constraint space."""
    if l < 1:
        raise ValueError("l must be >= 1")
    basis = curvature_space_basis(l)
    entries = _random_combination(l, basis, RandomStream(seed), bound)
    return CurvatureTensor(l, entries, validate=False)


def random_weyl(l: int, seed: int, bound: int = 9) -> WeylTensor:
    """Deterministic random trace-free curvature tensor; zero when l = 1."""
    if l < 1:
        raise ValueError("l must be >= 1")
    basis = weyl_space_basis(l)
    entries = _random_combination(l, basis, RandomStream(seed), bound)
    return WeylTensor(l, entries, validate=False)


def basis_tensors(l: int, which: str = "curvature"):
    """Expanded basis of the requested constraint space, as tensors."""
    basis = curvature_space_basis(l) if which == "curvature" else weyl_space_basis(l)
    out = []
    for variables, vec in basis:
        out.append(CurvatureTensor(l, _expand_var_vector(l, variables, vec), validate=False))
    return out


# ---------------------------------------------------------------------------
# JSON wire format: {"l": int, "entries": [{"ijkl": [..1-based..],
#                    "val": "p/q"}]} with only nonzero entries listed.
# ---------------------------------------------------------------------------


def curvature_to_json(R: CurvatureTensor) -> dict:
    n = 2 * R.l
    items = []
    for i, j, k, m in product(range(n), repeat=4):
        v = R.entries[i][j][k][m]
        if v:
            items.append({"ijkl": [i + 1, j + 1, k + 1, m + 1], "val": str(v)})
    return {"l": R.l, "entries": items}


def curvature_from_json(obj: dict, validate: bool = True) -> CurvatureTensor:
    l = obj["l"]
    entries = _zero_entries(2 * l)
    for item in obj["entries"]:
        i, j, k, m = (x - 1 for x in item["ijkl"])
        entries[i][j][k][m] = Fraction(item["val"])
    return CurvatureTensor(l, entries, validate=validate)


def ricci_to_json(sigma: RicciTensor) -> dict:
    return {"l": sigma.l, "rows": [[str(x) for x in row] for row in sigma.entries]}


def ricci_from_json(obj: dict) -> RicciTensor:
    return RicciTensor(obj["l"], [[Fraction(x) for x in row] for row in obj["rows"]])
