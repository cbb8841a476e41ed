"""The finite subgroups of SL(2, C) as explicit matrix groups over cyclotomic
fields: cyclic, binary dihedral, and the binary tetrahedral, octahedral and
icosahedral groups.

Each family is enumerated by breadth-first closure of a documented generator
set; the groups are tiny (at most 120 elements), so clarity wins over
cleverness.  Elements are 2x2 matrices of CycloNum at a fixed ambient
conductor per family, hashed on canonical form.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import ConsistencyError, PreconditionError
from .exactnum import CycloNum

FAMILIES = ("cyclic", "binary_dihedral", "binary_tetrahedral",
            "binary_octahedral", "binary_icosahedral")

_SHORT = {"binary_tetrahedral": "2T", "binary_octahedral": "2O",
          "binary_icosahedral": "2I"}


@dataclass(frozen=True)
class GroupDescriptor:
    """Which group to build; `n` is used by the cyclic and dihedral families."""

    family: str
    n: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise PreconditionError(f"unknown family {self.family!r}")
        if self.family in ("cyclic", "binary_dihedral") and self.n < 1:
            raise PreconditionError(f"{self.family} requires n >= 1")

    @property
    def order(self) -> int:
        return {"cyclic": self.n, "binary_dihedral": 4 * self.n,
                "binary_tetrahedral": 24, "binary_octahedral": 48,
                "binary_icosahedral": 120}[self.family]

    @property
    def conductor(self) -> int:
        if self.family == "cyclic":
            return 2 * self.n if self.n % 2 == 0 else self.n
        if self.family == "binary_dihedral":
            return 4 * self.n
        if self.family == "binary_icosahedral":
            return 20
        return 8

    @property
    def label(self) -> str:
        if self.family == "cyclic":
            return f"cyclic:{self.n}"
        if self.family == "binary_dihedral":
            return f"bd:{self.n}"
        return _SHORT[self.family]


def parse_descriptor(text: str) -> GroupDescriptor:
    """Parse the CLI grammar: cyclic:n, bd:n, 2T, 2O, 2I."""
    t = text.strip()
    upper = t.upper()
    for family, short in _SHORT.items():
        if upper == short:
            return GroupDescriptor(family)
    if ":" in t:
        head, _, tail = t.partition(":")
        try:
            n = int(tail)
        except ValueError:
            raise PreconditionError(f"bad group descriptor {text!r}") from None
        if head == "cyclic":
            return GroupDescriptor("cyclic", n)
        if head == "bd":
            return GroupDescriptor("binary_dihedral", n)
    raise PreconditionError(f"bad group descriptor {text!r}")


class Mat2:
    """Immutable 2x2 matrix of CycloNum."""

    __slots__ = ("a", "b", "c", "d", "_hash")

    def __init__(self, a, b, c, d):
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Mat2 is immutable")

    @staticmethod
    def scalar(value, conductor: int = 1) -> Mat2:
        one = CycloNum(conductor, [Fraction(value)])
        zero = CycloNum(conductor, [0])
        return Mat2(one, zero, zero, one)

    def __mul__(self, other: Mat2) -> Mat2:
        return Mat2(self.a * other.a + self.b * other.c,
                    self.a * other.b + self.b * other.d,
                    self.c * other.a + self.d * other.c,
                    self.c * other.b + self.d * other.d)

    def det(self) -> CycloNum:
        return self.a * self.d - self.b * self.c

    def trace(self) -> CycloNum:
        return self.a + self.d

    def inverse_unimodular(self) -> Mat2:
        """Inverse assuming determinant 1 (the adjugate)."""
        return Mat2(self.d, -self.b, -self.c, self.a)

    def __neg__(self) -> Mat2:
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return self.entries() == other.entries()

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(tuple(e.canonical() for e in self.entries())))
        return self._hash

    def __repr__(self):
        return f"Mat2({self.a!r}, {self.b!r}; {self.c!r}, {self.d!r})"


def _generators(desc: GroupDescriptor) -> list[Mat2]:
    n = desc.conductor

    def num(value) -> CycloNum:
        return CycloNum(n, [Fraction(value)])

    def zeta(order: int, power: int = 1) -> CycloNum:
        return CycloNum.root_of_unity(n, (n // order) * power)

    j_mat = Mat2(num(0), num(1), num(-1), num(0))

    if desc.family == "cyclic":
        return [Mat2(zeta(desc.n), num(0), num(0), zeta(desc.n, desc.n - 1))]

    if desc.family == "binary_dihedral":
        a = Mat2(zeta(2 * desc.n), num(0), num(0), zeta(2 * desc.n, 2 * desc.n - 1))
        return [a, j_mat]

    if desc.family in ("binary_tetrahedral", "binary_octahedral"):
        i = zeta(4)
        half = Fraction(1, 2)
        i_mat = Mat2(i, num(0), num(0), -i)
        # The quaternion (-1 + i + j + k)/2 as a matrix: an order-3 element.
        w_mat = Mat2((i - 1) * half, (i + 1) * half, (i - 1) * half, (-i - 1) * half)
        gens = [i_mat, j_mat, w_mat]
        if desc.family == "binary_octahedral":
            gens.append(Mat2(zeta(8), num(0), num(0), zeta(8, 7)))
        return gens

    # Binary icosahedral: the quaternions (1+i+j+k)/2 and (phi + i/phi + j)/2,
    # with phi the golden ratio, written over Q(z_20).
    i = zeta(4)
    z5 = zeta(5)
    sqrt5 = z5 - z5 ** 2 - z5 ** 3 + z5 ** 4
    half = Fraction(1, 2)
    phi = (sqrt5 + 1) * half
    phi_inv = (sqrt5 - 1) * half
    sigma = Mat2((1 + i) * half, (1 + i) * half, (i - 1) * half, (1 - i) * half)
    tau = Mat2((phi + i * phi_inv) * half, num(half),
               num(-half), (phi - i * phi_inv) * half)
    return [sigma, tau]


@dataclass(frozen=True)
class ConjugacyClasses:
    """Partition of element indices into conjugacy classes.

    Classes are ordered by their smallest element index, so the identity class
    is always class 0.  Representatives are those smallest elements.
    """

    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]
    reps: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.classes)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)


class MatrixGroup:
    """An enumerated finite subgroup of SL(2, C).

    Immutable after construction; every query is read-only.
    """

    def __init__(self, descriptor: GroupDescriptor, elements: list[Mat2],
                 generators: list[int]):
        self.descriptor = descriptor
        self.elements = elements
        self.generator_indices = generators
        self.index = {m: i for i, m in enumerate(elements)}
        self.inverse = tuple(self.index[m.inverse_unimodular()] for m in elements)
        minus = -elements[0]
        self.minus_identity = self.index.get(minus)
        self._orders: dict[int, int] = {}
        self._classes: ConjugacyClasses | None = None
        self._prod: dict[tuple[int, int], int] = {}

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        key = (i, j)
        got = self._prod.get(key)
        if got is None:
            got = self.index[self.elements[i] * self.elements[j]]
            self._prod[key] = got
        return got

    def element_order(self, i: int) -> int:
        got = self._orders.get(i)
        if got is None:
            k, x = 1, i
            while x != 0:
                x = self.mul(x, i)
                k += 1
            self._orders[i] = got = k
        return got

    def exponent(self) -> int:
        result = 1
        for rep in self.conjugacy_classes().reps:
            o = self.element_order(rep)
            result = result * o // gcd(result, o)
        return result

    def contains_minus_identity(self) -> bool:
        return self.minus_identity is not None

    def conjugacy_classes(self) -> ConjugacyClasses:
        if self._classes is None:
            gens = self.generator_indices
            gen_invs = [self.inverse[g] for g in gens]
            seen = [False] * self.order
            classes = []
            for start in range(self.order):
                if seen[start]:
                    continue
                orbit = {start}
                queue = [start]
                seen[start] = True
                while queue:
                    x = queue.pop()
                    for g, gi in zip(gens, gen_invs):
                        y = self.mul(gi, self.mul(x, g))
                        if y not in orbit:
                            orbit.add(y)
                            seen[y] = True
                            queue.append(y)
                classes.append(tuple(sorted(orbit)))
            classes.sort(key=lambda cls: cls[0])
            class_of = [0] * self.order
            for ci, cls in enumerate(classes):
                for x in cls:
                    class_of[x] = ci
            self._classes = ConjugacyClasses(
                classes=tuple(classes),
                class_of=tuple(class_of),
                reps=tuple(cls[0] for cls in classes),
            )
        return self._classes

    def centralizer_orders(self) -> tuple[int, ...]:
        return tuple(self.order // s for s in self.conjugacy_classes().sizes)

    def class_of_power(self, class_index: int, power: int) -> int:
        """Class index of rep^power for the given class representative."""
        data = self.conjugacy_classes()
        rep = data.reps[class_index]
        x = 0
        for _ in range(power % self.element_order(rep)):
            x = self.mul(x, rep)
        return data.class_of[x]

    def traces(self) -> tuple[CycloNum, ...]:
        """Trace of each class representative: the defining 2-dim character."""
        data = self.conjugacy_classes()
        return tuple(self.elements[r].trace().reduced() for r in data.reps)


@functools.lru_cache(maxsize=None)
def build_group(desc: GroupDescriptor) -> MatrixGroup:
    """Enumerate the group by breadth-first closure of its generators.

    A closure passing twice the expected order aborts: that can only mean the
    generator matrices are wrong.
    """
    gens = _generators(desc)
    identity = Mat2.scalar(1, desc.conductor)
    elements = [identity]
    index = {identity: 0}
    cap = 2 * desc.order
    head = 0
    while head < len(elements):
        x = elements[head]
        head += 1
        for g in gens:
            y = x * g
            if y not in index:
                index[y] = len(elements)
                elements.append(y)
                if len(elements) > cap:
                    raise ConsistencyError(
                        f"closure of {desc.label} exceeded {cap} elements; "
                        "generator set is wrong")
    if len(elements) != desc.order:
        raise ConsistencyError(
            f"closure of {desc.label} has {len(elements)} elements, "
            f"expected {desc.order}")
    one = CycloNum.from_rational(1)
    for m in elements:
        if m.det() != one:
            raise ConsistencyError(f"element of {desc.label} has determinant != 1")
    group = MatrixGroup(desc, elements, [index[g] for g in gens])
    _check_center(group)
    return group


def _expected_minus_identity(desc: GroupDescriptor) -> bool:
    if desc.family == "cyclic":
        return desc.n % 2 == 0
    return True


def _check_center(group: MatrixGroup) -> None:
    expected = _expected_minus_identity(group.descriptor)
    if group.contains_minus_identity() != expected:
        raise ConsistencyError(
            f"-I presence in {group.descriptor.label} does not match the family")


def group_summary(group: MatrixGroup) -> dict:
    classes = group.conjugacy_classes()
    return {
        "descriptor": group.descriptor.label,
        "order": group.order,
        "conductor": group.descriptor.conductor,
        "num_classes": classes.count,
        "class_sizes": list(classes.sizes),
        "class_orders": [group.element_order(r) for r in classes.reps],
        "centralizer_orders": list(group.centralizer_orders()),
        "exponent": group.exponent(),
        "contains_minus_identity": group.contains_minus_identity(),
    }
