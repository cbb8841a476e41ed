"""Molien series matrices, the numerical Koszul criterion, and the
equivariant Hom-dimension calculator every later module leans on.

For a 2x2 unimodular g both eigenvalues are determined by the trace, so
det(1 - g^{-1} t) = 1 - tr(g) t + t^2 and the symmetric-power characters obey
the two-term recursion s_m = s_{m-1} * tr - s_{m-2}.  That recursion avoids
any eigenvalue case analysis at +-1 and keeps everything in exact cyclotomic
arithmetic; averaging over classes must then produce plain rationals, which
is asserted, never assumed.

Index convention (recorded in output): S[p][q] is the generating function of
dim Hom(W_q, Sym^m V* (x) W_p) taken equivariantly, i.e. the (q, p) entry of
the graded endomorphism algebra; with V self-dual these dimensions are
symmetric in (p, q), so the Koszul identity holds for either reading.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chartab import CharacterTable
from .errors import ConsistencyError, PreconditionError
from .exactnum import CycloNum, Poly, RatFunc, TruncSeries
from .groups import MatrixGroup

S_CONVENTION = ("S[p][q](t) = sum_m dim Hom(W_q, Sym^m V* x W_p)_invariant t^m; "
                "identity checked: S(t) * E(-t) = Id")


class HomDims:
    """Memoized dim Hom(W_i, Sym^m V* (x) W_j) over the group invariants.

    Negative m gives 0 by convention.  Schur's lemma pins m = 0 to the
    identity matrix, which doubles as a self-check of the character data.
    """

    def __init__(self, group: MatrixGroup, table: CharacterTable):
        self.group = group
        self.table = table
        self.count = table.count
        self._sym: list[tuple[CycloNum, ...]] = [
            tuple(CycloNum.from_rational(1) for _ in table.class_sizes),
            table.defining_values,
        ]
        self._memo: dict[tuple[int, int, int], int] = {}

    def _sym_characters(self, m: int) -> tuple[CycloNum, ...]:
        while len(self._sym) <= m:
            prev, prev2 = self._sym[-1], self._sym[-2]
            chi_v = self.table.defining_values
            self._sym.append(tuple(p * v - q for p, v, q in zip(prev, chi_v, prev2)))
        return self._sym[m]

    def hom_dim(self, i: int, j: int, m: int) -> int:
        if m < 0:
            return 0
        key = (i, j, m)
        got = self._memo.get(key)
        if got is not None:
            return got
        sym = self._sym_characters(m)
        acc = CycloNum.from_rational(0)
        table = self.table
        for c, size in enumerate(table.class_sizes):
            acc = acc + size * table.values[i][c].conj() * sym[c] * table.values[j][c]
        q = acc.as_rational()
        order = self.group.order
        if q is None or q.denominator != 1 or q < 0 or q % order:
            raise ConsistencyError(
                f"hom dimension ({i},{j},{m}) is not a nonnegative integer: {acc!r}")
        value = int(q) // order
        self._memo[key] = value
        return value

    __call__ = hom_dim


@dataclass(frozen=True)
class MolienMatrices:
    """S(t): matrix of rational functions; E(t): matrix of polynomials of
    degree at most 2.  Both have rational coefficients after averaging."""

    S: tuple[tuple[RatFunc, ...], ...]
    E: tuple[tuple[Poly, ...], ...]
    convention: str = S_CONVENTION

    @property
    def count(self) -> int:
        return len(self.S)

    def to_json(self, max_degree: int = 6) -> dict:
        return {
            "convention": self.convention,
            "S": [[str(entry) for entry in row] for row in self.S],
            "E": [[str(RatFunc.from_poly(entry)) for entry in row] for row in self.E],
            "S_series": [[[str(c) for c in entry.series(max_degree).coeffs]
                          for entry in row] for row in self.S],
        }


def _cyclo_poly_rational(poly: Poly) -> Poly:
    coeffs = []
    for c in poly.coeffs:
        q = c.as_rational()
        if q is None:
            raise ConsistencyError(
                "cyclotomic parts failed to cancel in a Molien average")
        coeffs.append(q)
    return Poly(coeffs)


def molien_matrices(group: MatrixGroup, table: CharacterTable) -> MolienMatrices:
    """The two Molien averages, summed over conjugacy classes with class-size
    weights, asserted rational, and reduced to normal form."""
    k = len(table.class_sizes)
    count = table.count
    order = group.order
    chi_v = table.defining_values
    one = CycloNum.from_rational(1)

    # det(1 - g^{-1} t) and det(1 + g t) per class, as cyclotomic polynomials.
    delta = [Poly([one, -chi_v[c], one]) for c in range(k)]
    plus = [Poly([one, chi_v[c], one]) for c in range(k)]

    # Partial products prod_{c' != c} delta_{c'} for the common denominator.
    prefix = [Poly([one])]
    for c in range(k):
        prefix.append(prefix[-1] * delta[c])
    suffix = [Poly([one])] * (k + 1)
    for c in range(k - 1, -1, -1):
        suffix[c] = suffix[c + 1] * delta[c]
    partial = [prefix[c] * suffix[c + 1] for c in range(k)]
    denominator = _cyclo_poly_rational(prefix[k])

    inv_order = Fraction(1, order)
    s_rows = []
    e_rows = []
    for p in range(count):
        s_row = []
        e_row = []
        for q in range(count):
            num = Poly()
            epoly = Poly()
            for c in range(k):
                weight = table.class_sizes[c] * table.values[q][c].conj() * table.values[p][c]
                if weight:
                    num = num + weight * partial[c]
                    epoly = epoly + weight * plus[c]
            s_row.append(RatFunc(_cyclo_poly_rational(num) * inv_order, denominator))
            e_entry = _cyclo_poly_rational(epoly) * inv_order
            if e_entry.degree > 2:
                raise ConsistencyError("E entry has degree above 2")
            e_row.append(e_entry)
        s_rows.append(tuple(s_row))
        e_rows.append(tuple(e_row))
    matrices = MolienMatrices(S=tuple(s_rows), E=tuple(e_rows))
    _check_degree_zero(matrices)
    return matrices


def _check_degree_zero(matrices: MolienMatrices) -> None:
    for p, row in enumerate(matrices.S):
        for q, entry in enumerate(row):
            value = entry.series(0).coeffs[0]
            if value != (1 if p == q else 0):
                raise ConsistencyError("S(0) is not the identity matrix")


def koszul_check(matrices: MolienMatrices):
    """Exact verification that S(t) * E(-t) = Id.

    Returns (ok, witness); the witness names the first offending entry.
    """
    count = matrices.count
    e_neg = [[RatFunc.from_poly(matrices.E[q][r].compose_neg()) for r in range(count)]
             for q in range(count)]
    for p in range(count):
        for r in range(count):
            acc = RatFunc(Poly(), Poly.one())
            for q in range(count):
                acc = acc + matrices.S[p][q] * e_neg[q][r]
            expected = RatFunc.constant(1 if p == r else 0)
            if acc != expected:
                return False, {"entry": [p, r], "value": str(acc)}
    return True, None


def hom_dim_series(hd: HomDims, i: int, j: int, degree: int) -> TruncSeries:
    return TruncSeries(degree, [hd.hom_dim(i, j, m) for m in range(degree + 1)])


def graded_dim_Bh(hd: HomDims, height, i: int, j: int, n: int) -> int:
    """Graded dimension of the (i, j) block in degree n for the regrading by
    h(j) + 2d - h(i): at most one symmetric-power degree d contributes, namely
    d = (n + h(i) - h(j)) / 2, and it must be a nonnegative integer.
    """
    values = height.values
    if not height.is_valid():
        raise PreconditionError("invalid height function")
    twice_d = n + values[i] - values[j]
    if twice_d < 0 or twice_d % 2:
        return 0
    return hd.hom_dim(i, j, n)
