"""McKay graphs, their affine ADE classification, and vertex parity.

The multiplicity matrix n[i][j] counts copies of the irreducible i inside the
tensor product of the defining 2-dim representation with the irreducible j;
for a subgroup of SL(2, C) it is symmetric with zero diagonal and its graph
is an extended Dynkin diagram of type A, D or E.  Recognition goes through
explicit reference diagrams plus a backtracking isomorphism search, so the
output is a certified vertex bijection, not just a label.  Multiplicity
matrices (not simple graphs) are the carrier throughout: the double edge of
A1~ is a first-class case.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .chartab import CharacterTable
from .errors import ConsistencyError, PreconditionError
from .exactnum import CycloNum
from .groups import MatrixGroup


def mckay_matrix(table: CharacterTable, group: MatrixGroup) -> list[list[int]]:
    """Multiplicities n[i][j] from the class-weighted character average."""
    k = len(table.class_sizes)
    count = table.count
    order = group.order
    chi_v = table.defining_values
    n = [[0] * count for _ in range(count)]
    for i in range(count):
        for j in range(i, count):
            acc = CycloNum.from_rational(0)
            for c in range(k):
                acc = acc + table.class_sizes[c] * table.values[i][c].conj() \
                    * chi_v[c] * table.values[j][c]
            q = acc.as_rational()
            if q is None or q.denominator != 1 or q < 0 or q % order:
                raise ConsistencyError(
                    f"multiplicity ({i},{j}) is not a nonnegative integer: {acc!r}")
            n[i][j] = n[j][i] = int(q) // order
    return n


# ---------------------------------------------------------------------------
# Reference diagrams
# ---------------------------------------------------------------------------

def _cycle(m: int) -> list[list[int]]:
    size = m + 1
    n = [[0] * size for _ in range(size)]
    if m == 1:
        n[0][1] = n[1][0] = 2
        return n
    for i in range(size):
        j = (i + 1) % size
        n[i][j] = n[j][i] = 1
    return n


def _affine_d(m: int) -> list[list[int]]:
    # Vertices: leaves 0,1 on vertex 2; path 2..m-2; leaves m-1,m on vertex m-2.
    size = m + 1
    n = [[0] * size for _ in range(size)]

    def edge(a, b):
        n[a][b] = n[b][a] = 1

    edge(0, 2)
    edge(1, 2)
    for v in range(2, m - 2):
        edge(v, v + 1)
    edge(m - 2, m - 1)
    edge(m - 2, m)
    return n


def _affine_e(k: int) -> list[list[int]]:
    # Vertices numbered ring by ring from the arm tips inward, center last,
    # so the E6~ reference null vector reads (1,1,1,2,2,2,3).
    arms = {6: (2, 2, 2), 7: (3, 3, 1), 8: (5, 2, 1)}[k]
    size = k + 1
    center = size - 1
    ids = {}
    next_id = 0
    for dist in range(max(arms), 0, -1):
        for a, length in enumerate(arms):
            if dist <= length:
                ids[(a, dist)] = next_id
                next_id += 1
    n = [[0] * size for _ in range(size)]
    for a, length in enumerate(arms):
        prev = center
        for dist in range(1, length + 1):
            v = ids[(a, dist)]
            n[prev][v] = n[v][prev] = 1
            prev = v
    return n


def reference_diagram(label: str) -> list[list[int]]:
    """Adjacency (multiplicity) matrix of a reference affine diagram.

    Labels: ``A1~`` .. ``A12~``, ``D3~`` .. ``D10~`` (D3~ is an alias for
    A3~), ``E6~``, ``E7~``, ``E8~``.
    """
    kind, num = label[0], int(label[1:-1])
    if label[-1] != "~":
        raise PreconditionError(f"unknown diagram label {label!r}")
    if kind == "A" and 1 <= num <= 12:
        return _cycle(num)
    if kind == "D":
        if num == 3:
            return _cycle(3)
        if 4 <= num <= 10:
            return _affine_d(num)
    if kind == "E" and num in (6, 7, 8):
        return _affine_e(num)
    raise PreconditionError(f"unknown diagram label {label!r}")


def canonical_label(label: str) -> str:
    """Collapse diagram aliases (D3~ and A3~ name the same 4-cycle)."""
    return "A3~" if label == "D3~" else label


def _degree_profile(n) -> list[tuple[int, tuple[int, ...]]]:
    return [(sum(row), tuple(sorted((x for x in row if x), reverse=True)))
            for row in n]


def _find_isomorphism(n, ref) -> list[int] | None:
    """Vertex bijection f with n[i][j] == ref[f(i)][f(j)], or None."""
    size = len(n)
    if sorted(_degree_profile(n)) != sorted(_degree_profile(ref)):
        return None
    profiles = _degree_profile(n)
    ref_profiles = _degree_profile(ref)
    order = sorted(range(size), key=lambda v: (-profiles[v][0], v))
    assignment: list[int | None] = [None] * size
    used = [False] * size

    def backtrack(pos: int) -> bool:
        if pos == size:
            return True
        v = order[pos]
        for w in range(size):
            if used[w] or profiles[v] != ref_profiles[w]:
                continue
            ok = True
            for u in order[:pos]:
                if n[v][u] != ref[w][assignment[u]]:
                    ok = False
                    break
            if ok:
                assignment[v] = w
                used[w] = True
                if backtrack(pos + 1):
                    return True
                assignment[v] = None
                used[w] = False
        return False

    if backtrack(0):
        return [assignment[v] for v in range(size)]
    return None


@dataclass(frozen=True)
class ADEClassification:
    """Result of affine ADE recognition.

    ``label`` is None for a not-ADE verdict.  ``iso`` maps input vertices to
    reference-diagram vertices.  ``delta`` is the primitive positive integer
    null vector of the Cartan matrix (the imaginary root), in input order.
    """

    label: str | None
    iso: tuple[int, ...] | None
    delta: tuple[int, ...] | None

    @property
    def is_ade(self) -> bool:
        return self.label is not None


def _null_delta(cartan) -> tuple[int, ...] | None:
    basis = linalg.nullspace([[Fraction(x) for x in row] for row in cartan])
    if len(basis) != 1:
        return None
    delta = linalg.primitive_integer_vector(basis[0])
    if any(d <= 0 for d in delta):
        return None
    return tuple(delta)


def classify_affine_ade(n) -> ADEClassification:
    size = len(n)
    cartan = [[(2 if i == j else 0) - n[i][j] for j in range(size)] for i in range(size)]
    delta = _null_delta(cartan)
    candidates = []
    if size in (7, 8, 9):
        candidates.append(f"E{size - 1}~")
    if size >= 5:
        candidates.append(f"D{size - 1}~")
    if 2 <= size <= 13:
        candidates.append(f"A{size - 1}~")
    for label in candidates:
        try:
            ref = reference_diagram(label)
        except PreconditionError:
            continue
        iso = _find_isomorphism(n, ref)
        if iso is not None:
            if delta is None:
                raise ConsistencyError(
                    "ADE diagram recognized but Cartan null space is not "
                    "one-dimensional positive")
            return ADEClassification(label=label, iso=tuple(iso), delta=delta)
    return ADEClassification(label=None, iso=None, delta=None)


def parity_function(table: CharacterTable, group: MatrixGroup,
                    n=None) -> tuple[int, ...]:
    """Vertex parities: 0 when -I acts trivially on the irreducible, 1 when it
    acts by -1.  Requires -I in the group; adjacent vertices must disagree.
    """
    if not group.contains_minus_identity():
        raise PreconditionError(
            f"{group.descriptor.label} does not contain -I; parity is undefined")
    cls = group.conjugacy_classes().class_of[group.minus_identity]
    parity = []
    for i in range(table.count):
        value = table.values[i][cls]
        if value == table.dims[i]:
            parity.append(0)
        elif value == -table.dims[i]:
            parity.append(1)
        else:
            raise ConsistencyError(f"-I acts on irreducible {i} by a non-scalar")
    if n is not None:
        for i in range(len(n)):
            for j in range(len(n)):
                if n[i][j] and parity[i] == parity[j]:
                    raise ConsistencyError(
                        f"adjacent vertices {i}, {j} share parity {parity[i]}")
    return tuple(parity)


@dataclass(frozen=True)
class McKayGraph:
    """The McKay graph of a built group, with classification and parity.

    ``edges`` lists the undirected edges with multiplicity expanded, each
    carrying its fixed positive direction (low index -> high index); this is
    the orientation convention the preprojective relations are written in.
    ``parity`` is None when the group lacks -I.
    """

    descriptor: str
    n: tuple[tuple[int, ...], ...]
    cartan: tuple[tuple[int, ...], ...]
    dims: tuple[int, ...]
    classification: ADEClassification
    affine_node: int
    parity: tuple[int, ...] | None
    edges: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.n)

    @property
    def delta(self) -> tuple[int, ...] | None:
        return self.classification.delta

    def neighbors(self, i: int) -> list[int]:
        return [j for j in range(self.size) if self.n[i][j]]

    def to_json(self) -> dict:
        return {
            "descriptor": self.descriptor,
            "n": [list(row) for row in self.n],
            "cartan": [list(row) for row in self.cartan],
            "type": self.classification.label,
            "delta": list(self.delta) if self.delta else None,
            "affine_node": self.affine_node,
            "parity": list(self.parity) if self.parity is not None else None,
            "dims": list(self.dims),
        }


def mckay_graph(group: MatrixGroup, table: CharacterTable) -> McKayGraph:
    """Assemble the McKay graph; the trivial character sits at the affine node."""
    n = mckay_matrix(table, group)
    size = len(n)
    for i in range(size):
        if n[i][i]:
            raise PreconditionError(
                f"vertex {i} carries a loop (n_ii = {n[i][i]}); "
                "the McKay graph machinery needs a loop-free diagram")
    cartan = tuple(tuple((2 if i == j else 0) - n[i][j] for j in range(size))
                   for i in range(size))
    classification = classify_affine_ade(n)
    parity = None
    if group.contains_minus_identity():
        parity = parity_function(table, group, n)
    edges = []
    for i in range(size):
        for j in range(i + 1, size):
            edges.extend([(i, j)] * n[i][j])
    return McKayGraph(
        descriptor=group.descriptor.label,
        n=tuple(tuple(row) for row in n),
        cartan=cartan,
        dims=table.dims,
        classification=classification,
        affine_node=table.trivial_index,
        parity=parity,
        edges=tuple(edges),
    )
