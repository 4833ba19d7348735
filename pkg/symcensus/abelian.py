"""Finite abelian groups in invariant-factor form and their Q/Z-valued
characters.

Every character group in the package (Dirichlet characters, characters of
local unit quotients, ray class characters) sits on top of the types here.
"""

import logging
from fractions import Fraction
from itertools import product as cartesian
from math     import gcd
from typing   import (Callable, Dict, Hashable, Iterable, Iterator, List,
    Optional, Sequence, Tuple)

log = logging.getLogger(__name__)

Vector = Tuple[int, ...]

class GroupError(Exception):
    pass
class MismatchedGroupError(GroupError):
    pass
class FreePartError(GroupError):
    pass

def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)

def _identity(size: int) -> List[List[int]]:
    return [[int(i == j) for j in range(size)] for i in range(size)]

class SmithForm(object):
    def __init__(self,
            diagonal:      List[int],
            columns:       int,
            left:          List[List[int]],
            right:         List[List[int]],
            right_inverse: List[List[int]]):
        self.diagonal      = diagonal
        self.columns       = columns
        self.left          = left
        self.right         = right
        self.right_inverse = right_inverse

    def __repr__(self) -> str:
        return (f"SmithForm(invariant_factors={self.invariant_factors!r}, "
            f"free_rank={self.free_rank})")

    @property
    def invariant_factors(self) -> Tuple[int, ...]:
        return tuple(d for d in self.diagonal if d != 1)
    @property
    def free_rank(self) -> int:
        return self.columns - len(self.diagonal)

def smith_normal_form(
        relations: Sequence[Sequence[int]],
        columns:   Optional[int] = None) -> SmithForm:
    """
    Diagonalise an integer matrix with unimodular row and column operations.

    Rows are relations, columns are generators. The result satisfies
    `left * M * right == diag(diagonal)` with each diagonal entry dividing the
    next; `right_inverse` is the inverse of `right`, tracked alongside it so
    canonical generators can be written back in the original ones.
    """
    matrix = [[int(x) for x in row] for row in relations]
    rows   = len(matrix)
    if columns is None:
        columns = len(matrix[0]) if matrix else 0

    left          = _identity(rows)
    right         = _identity(columns)
    right_inverse = _identity(columns)

    def swap_rows(i: int, j: int):
        matrix[i], matrix[j] = matrix[j], matrix[i]
        left[i],   left[j]   = left[j],   left[i]
    def swap_columns(i: int, j: int):
        for row in matrix:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]
        right_inverse[i], right_inverse[j] = right_inverse[j], right_inverse[i]
    def add_row(target: int, source: int, factor: int):
        matrix[target] = [a + factor*b
            for a, b in zip(matrix[target], matrix[source])]
        left[target]   = [a + factor*b
            for a, b in zip(left[target], left[source])]
    def add_column(target: int, source: int, factor: int):
        for row in matrix:
            row[target] += factor * row[source]
        for row in right:
            row[target] += factor * row[source]
        right_inverse[source] = [a - factor*b
            for a, b in zip(right_inverse[source], right_inverse[target])]

    def smallest_entry(t: int) -> Optional[Tuple[int, int]]:
        best: Optional[Tuple[int, int]] = None
        for i in range(t, rows):
            for j in range(t, columns):
                entry = matrix[i][j]
                if entry and (best is None or
                        abs(entry) < abs(matrix[best[0]][best[1]])):
                    best = (i, j)
        return best
    def non_divisible_row(t: int) -> Optional[int]:
        pivot = matrix[t][t]
        for i in range(t+1, rows):
            for j in range(t+1, columns):
                if matrix[i][j] % pivot:
                    return i
        return None

    diagonal: List[int] = []
    for t in range(min(rows, columns)):
        pivot = smallest_entry(t)
        if pivot is None:
            break
        while True:
            swap_rows(t, pivot[0])
            swap_columns(t, pivot[1])

            clean = True
            for i in range(t+1, rows):
                quotient = matrix[i][t] // matrix[t][t]
                if quotient:
                    add_row(i, t, -quotient)
                if matrix[i][t]:
                    clean = False
            for j in range(t+1, columns):
                quotient = matrix[t][j] // matrix[t][t]
                if quotient:
                    add_column(j, t, -quotient)
                if matrix[t][j]:
                    clean = False

            if clean:
                stray = non_divisible_row(t)
                if stray is None:
                    break
                add_row(t, stray, 1)
            pivot = smallest_entry(t)
            assert pivot is not None

        if matrix[t][t] < 0:
            matrix[t] = [-a for a in matrix[t]]
            left[t]   = [-a for a in left[t]]
        diagonal.append(matrix[t][t])

    return SmithForm(diagonal, columns, left, right, right_inverse)

class FiniteAbelianGroup(object):
    def __init__(self,
            invariant_factors: Sequence[int],
            generator_labels:  Optional[Sequence[Hashable]] = None,
            dlog_table:        Optional[Dict[Hashable, Vector]] = None,
            name:              Optional[str] = None):
        factors = tuple(int(d) for d in invariant_factors)
        for i, d in enumerate(factors):
            if d < 2:
                raise GroupError(f"invariant factor {d} is below 2")
            if i and d % factors[i-1]:
                raise GroupError(
                    f"invariant factors {factors!r} do not form a chain")

        self.invariant_factors = factors
        self.generator_labels: Tuple[Hashable, ...] = tuple(
            generator_labels if generator_labels is not None
            else range(len(factors)))
        self.dlog_table = dlog_table
        self.name       = name or f"G{factors!r}"

        self._elements: Optional[Dict[Vector, Hashable]] = None
        if dlog_table is not None:
            self._elements = {v: x for x, v in dlog_table.items()}

    def __repr__(self) -> str:
        return (f"FiniteAbelianGroup(name={self.name!r}, "
            f"invariant_factors={self.invariant_factors!r})")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteAbelianGroup):
            return NotImplemented
        return (self.name              == other.name and
                self.invariant_factors == other.invariant_factors and
                self.generator_labels  == other.generator_labels)
    def __hash__(self) -> int:
        return hash((self.name, self.invariant_factors))

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)
    @property
    def order(self) -> int:
        order = 1
        for d in self.invariant_factors:
            order *= d
        return order
    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def reduce(self, vector: Iterable[int]) -> Vector:
        vector = tuple(vector)
        if len(vector) != self.rank:
            raise GroupError(
                f"exponent vector of length {len(vector)} for rank {self.rank}")
        return tuple(e % d for e, d in zip(vector, self.invariant_factors))

    def vectors(self) -> Iterator[Vector]:
        return cartesian(*(range(d) for d in self.invariant_factors))

    def dlog(self, element: Hashable) -> Vector:
        if self.dlog_table is None:
            raise GroupError(f"{self.name} has no dlog table")
        try:
            return self.dlog_table[element]
        except KeyError:
            raise GroupError(f"{element!r} is not an element of {self.name}")
    def element(self, vector: Iterable[int]) -> Hashable:
        if self._elements is None:
            raise GroupError(f"{self.name} has no dlog table")
        return self._elements[self.reduce(vector)]

    def character(self, images: Sequence[Fraction]) -> "GroupCharacter":
        return GroupCharacter(self, images)
    def trivial_character(self) -> "GroupCharacter":
        return GroupCharacter._from_values(self, (0,)*self.rank)
    def characters(self) -> Iterator["GroupCharacter"]:
        steps = [self.exponent // d for d in self.invariant_factors]
        for vector in self.vectors():
            yield GroupCharacter._from_values(self,
                tuple(a*s for a, s in zip(vector, steps)))

class GroupCharacter(object):
    """
    A homomorphism from a finite abelian group to Q/Z, stored as one image
    per generator. Internally the images are numerators over the group
    exponent so arithmetic stays in machine integers.
    """
    def __init__(self,
            group:  FiniteAbelianGroup,
            images: Sequence[Fraction]):
        if len(images) != group.rank:
            raise GroupError(
                f"{len(images)} images for a group of rank {group.rank}")
        exponent = group.exponent
        values: List[int] = []
        for image, d in zip(images, group.invariant_factors):
            image = Fraction(image)
            if (image * d).denominator != 1:
                raise GroupError(
                    f"image {image} has order not dividing {d}")
            values.append(int(image * exponent) % exponent)
        self.group   = group
        self._values = tuple(values)

    @classmethod
    def _from_values(cls,
            group:  FiniteAbelianGroup,
            values: Sequence[int]) -> "GroupCharacter":
        character = cls.__new__(cls)
        character.group   = group
        character._values = tuple(v % group.exponent for v in values)
        return character

    def __repr__(self) -> str:
        images = ", ".join(str(i) for i in self.images)
        return f"GroupCharacter({self.group.name} -> ({images}))"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupCharacter):
            return NotImplemented
        return self.group == other.group and self._values == other._values
    def __hash__(self) -> int:
        return hash((self.group, self._values))

    @property
    def images(self) -> Tuple[Fraction, ...]:
        exponent = self.group.exponent
        return tuple(Fraction(v, exponent) for v in self._values)
    @property
    def values(self) -> Tuple[int, ...]:
        return self._values

    def numerator(self, vector: Iterable[int]) -> int:
        # value as a numerator over the group exponent
        return sum(e*v for e, v in zip(vector, self._values)
            ) % self.group.exponent
    def __call__(self, vector: Iterable[int]) -> Fraction:
        return Fraction(self.numerator(vector), self.group.exponent)
    def at(self, element: Hashable) -> Fraction:
        return self(self.group.dlog(element))

    def is_trivial(self) -> bool:
        return not any(self._values)
    def order(self) -> int:
        exponent = self.group.exponent
        common   = exponent
        for v in self._values:
            common = gcd(common, v)
        return exponent // common

    def _check(self, other: "GroupCharacter"):
        if self.group != other.group:
            raise MismatchedGroupError(
                f"characters of {self.group.name} and {other.group.name}")

    def __mul__(self, other: "GroupCharacter") -> "GroupCharacter":
        self._check(other)
        return GroupCharacter._from_values(self.group,
            [a + b for a, b in zip(self._values, other._values)])
    def __pow__(self, n: int) -> "GroupCharacter":
        return GroupCharacter._from_values(self.group,
            [n*a for a in self._values])
    def inverse(self) -> "GroupCharacter":
        return self ** -1

def char_mul(chi1: GroupCharacter, chi2: GroupCharacter) -> GroupCharacter:
    return chi1 * chi2
def char_pow(chi: GroupCharacter, n: int) -> GroupCharacter:
    return chi ** n
def char_inverse(chi: GroupCharacter) -> GroupCharacter:
    return chi.inverse()
def char_order(chi: GroupCharacter) -> int:
    return chi.order()

def orthogonality_sum(
        characters: Sequence[GroupCharacter],
        vector:     Vector) -> int:
    """
    Exact value of the sum of chi(x) over `characters`, which must be a
    subgroup of the dual group: the sum is the subgroup order when every
    character kills x and vanishes otherwise.
    """
    if all(chi.numerator(vector) == 0 for chi in characters):
        return len(characters)
    return 0

class RelationPresentation(object):
    """
    The group Z^r modulo the row span of an integer relation matrix, put in
    invariant-factor form. Raw exponent vectors (over the r presenting
    generators) map to canonical coordinates with `to_canonical`.
    """
    def __init__(self,
            relations: Sequence[Sequence[int]],
            columns:   int,
            name:      Optional[str] = None,
            labels:    Optional[Callable[[Vector], Hashable]] = None):
        self.columns = columns
        self.smith   = smith_normal_form(relations, columns)
        if self.smith.free_rank:
            raise FreePartError(
                f"relations leave a free part of rank {self.smith.free_rank}")

        diagonal   = self.smith.diagonal
        self._kept = [t for t, d in enumerate(diagonal) if d > 1]
        factors    = [diagonal[t] for t in self._kept]

        raw_generators = [self.generator_raw(i) for i in range(len(factors))]
        generator_labels = ([labels(raw) for raw in raw_generators]
            if labels is not None else None)
        self.group = FiniteAbelianGroup(factors, generator_labels, name=name)

    def generator_raw(self, index: int) -> Vector:
        return tuple(self.smith.right_inverse[self._kept[index]])

    def to_canonical(self, raw: Sequence[int]) -> Vector:
        right = self.smith.right
        return tuple(
            sum(raw[k] * right[k][t] for k in range(self.columns)
                if raw[k]) % self.smith.diagonal[t]
            for t in self._kept)

def _power(
        element:  Hashable,
        exponent: int,
        product:  Callable[[Hashable, Hashable], Hashable],
        identity: Hashable) -> Hashable:
    result = identity
    base   = element
    while exponent:
        if exponent & 1:
            result = product(result, base)
        base = product(base, base)
        exponent >>= 1
    return result

def group_from_multiplication(
        elements: Iterable[Hashable],
        product:  Callable[[Hashable, Hashable], Hashable],
        identity: Optional[Hashable] = None,
        name:     Optional[str] = None,
        check:    bool = True) -> FiniteAbelianGroup:
    """
    Present a concrete finite abelian group by brute force: elements are
    enumerated, generators are picked greedily by order, and the relation
    matrix they satisfy is put into Smith form.
    """
    elements = list(elements)
    members  = set(elements)
    if len(members) != len(elements):
        raise GroupError("duplicate elements")

    if identity is None:
        for candidate in elements:
            if product(candidate, candidate) == candidate:
                identity = candidate
                break
        else:
            raise GroupError("no identity element")

    if check:
        for i, a in enumerate(elements):
            for b in elements[i:]:
                ab = product(a, b)
                if not ab in members:
                    raise GroupError(f"{a!r}*{b!r} is not in the set")
                if ab != product(b, a):
                    raise GroupError(f"{a!r} and {b!r} do not commute")

    def order_of(x: Hashable) -> int:
        order = 1
        power = x
        while power != identity:
            power = product(power, x)
            order += 1
        return order

    by_order = sorted(elements, key=order_of, reverse=True)
    known: Dict[Hashable, List[int]] = {identity: []}
    generators: List[Hashable]  = []
    relations:  List[List[int]] = []

    for x in by_order:
        if x in known:
            continue
        power = x
        steps = 1
        while not power in known:
            power = product(power, x)
            steps += 1
        relation = [-c for c in known[power]] + [steps]
        relations.append(relation)

        for h, vector in list(known.items()):
            known[h] = vector + [0]
            y = h
            for k in range(1, steps):
                y = product(y, x)
                known[y] = vector + [k]
        generators.append(x)

    columns   = len(generators)
    relations = [r + [0]*(columns - len(r)) for r in relations]

    def label(raw: Vector) -> Hashable:
        element = identity
        for g, e in zip(generators, raw):
            element = product(element, _power(g, e % len(elements), product,
                identity))
        return element

    presentation = RelationPresentation(relations, columns, name, label)
    dlog_table   = {x: presentation.to_canonical(v) for x, v in known.items()}
    group = FiniteAbelianGroup(presentation.group.invariant_factors,
        presentation.group.generator_labels, dlog_table, name)
    log.debug("presented %s of order %d as %r", group.name, len(elements),
        group.invariant_factors)
    return group
