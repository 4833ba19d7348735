import logging
from enum      import Enum
from functools import lru_cache
from typing    import Dict, Iterator, List, Optional, Set, Tuple

from sympy import factorint, isprime, legendre_symbol, primitive_root

from ..abelian import (FiniteAbelianGroup, RelationPresentation, Vector,
    GroupError)

log = logging.getLogger(__name__)

# a + b*theta with theta^2 = the field's square class
Element = Tuple[int, int]

# orders up to this size also get a brute-force dlog table
BRUTE_FORCE_LIMIT = 5000

class LocalFieldError(Exception):
    pass

class FieldKind(Enum):
    BASE       = "base"
    UNRAMIFIED = "unramified"
    RAMIFIED   = "ramified"

@lru_cache(maxsize=None)
def smallest_nonresidue(p: int) -> int:
    for u in range(2, p):
        if legendre_symbol(u, p) == -1:
            return u
    raise LocalFieldError(f"no quadratic non-residue mod {p}")

class LocalFieldDesc(object):
    """
    Q_p itself or one of its three quadratic extensions, p odd.

    The unramified extension is Q_p(sqrt(u)) and the ramified ones are
    Q_p(sqrt(p)) and Q_p(sqrt(u*p)), u the smallest non-residue mod p.
    """
    def __init__(self,
            p:       int,
            kind:    FieldKind,
            twisted: bool = False):
        if p == 2:
            raise LocalFieldError("p = 2 is not supported")
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        if twisted and kind != FieldKind.RAMIFIED:
            raise LocalFieldError("only ramified extensions come twisted")

        self.p       = p
        self.kind    = kind
        self.twisted = twisted

        self.nonresidue = smallest_nonresidue(p)
        # theta^2 = square_class * p for ramified fields
        self.cofactor   = self.nonresidue if twisted else 1

        if kind == FieldKind.BASE:
            self.f, self.disc_val, self.e = 1, 0, 1
            self.square_class = 0
        elif kind == FieldKind.UNRAMIFIED:
            self.f, self.disc_val, self.e = 2, 0, 1
            self.square_class = self.nonresidue
        else:
            self.f, self.disc_val, self.e = 1, 1, 2
            self.square_class = self.cofactor * p

    @classmethod
    def base_field(cls, p: int) -> "LocalFieldDesc":
        return cls(p, FieldKind.BASE)
    @classmethod
    def unramified(cls, p: int) -> "LocalFieldDesc":
        return cls(p, FieldKind.UNRAMIFIED)
    @classmethod
    def ramified(cls, p: int, twisted: bool = False) -> "LocalFieldDesc":
        return cls(p, FieldKind.RAMIFIED, twisted)

    def __repr__(self) -> str:
        if self.kind == FieldKind.BASE:
            return f"Q_{self.p}"
        elif self.kind == FieldKind.UNRAMIFIED:
            return f"Q_{self.p}(sqrt({self.nonresidue}))"
        else:
            return f"Q_{self.p}(sqrt({self.square_class}))"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LocalFieldDesc):
            return NotImplemented
        return (self.p, self.kind, self.twisted) == (
            other.p, other.kind, other.twisted)
    def __hash__(self) -> int:
        return hash((self.p, self.kind, self.twisted))

    @property
    def is_quadratic(self) -> bool:
        return self.kind != FieldKind.BASE
    @property
    def residue_size(self) -> int:
        return self.p ** self.f

    def base(self) -> "LocalFieldDesc":
        return LocalFieldDesc.base_field(self.p)

    def label(self) -> str:
        if self.kind == FieldKind.RAMIFIED:
            return "ramified-twisted" if self.twisted else "ramified"
        return self.kind.value

def quadratic_extensions(p: int) -> List[LocalFieldDesc]:
    return [
        LocalFieldDesc.unramified(p),
        LocalFieldDesc.ramified(p),
        LocalFieldDesc.ramified(p, twisted=True)
    ]

class LocalRing(object):
    """
    O_K / p_K^m with elements a + b*theta kept as reduced integer pairs.
    """
    def __init__(self, field: LocalFieldDesc, level: int):
        if level < 1:
            raise ValueError(f"truncation level {level} is below 1")
        self.field = field
        self.level = level

        p = field.p
        if field.kind == FieldKind.BASE:
            self.moduli = (p**level, 1)
        elif field.kind == FieldKind.UNRAMIFIED:
            self.moduli = (p**level, p**level)
        else:
            self.moduli = (p**((level+1)//2), p**(level//2))
        self.one: Element = (1, 0)

    def __repr__(self) -> str:
        return f"LocalRing({self.field!r}, level={self.level})"

    def reduce(self, x: Element) -> Element:
        return (x[0] % self.moduli[0], x[1] % self.moduli[1])

    def embed(self, a: int) -> Element:
        return self.reduce((a, 0))

    def mul(self, x: Element, y: Element) -> Element:
        a, b = x
        c, d = y
        return self.reduce((a*c + b*d*self.field.square_class, a*d + b*c))

    def power(self, x: Element, exponent: int) -> Element:
        if exponent < 0:
            x = self.inverse(x)
            exponent = -exponent
        result = self.one
        while exponent:
            if exponent & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            exponent >>= 1
        return result

    def conjugate(self, x: Element) -> Element:
        return self.reduce((x[0], -x[1]))

    def norm(self, x: Element) -> int:
        a, b = x
        return a*a - self.field.square_class*b*b

    def inverse(self, x: Element) -> Element:
        if not self.is_unit(x):
            raise LocalFieldError(f"{x!r} is not a unit")
        scale = pow(self.norm(x), -1, self.moduli[0])
        return self.reduce((x[0]*scale, -x[1]*scale))

    def residue(self, x: Element) -> Element:
        p = self.field.p
        if self.field.kind == FieldKind.UNRAMIFIED:
            return (x[0] % p, x[1] % p)
        return (x[0] % p, 0)

    def is_unit(self, x: Element) -> bool:
        return self.residue(x) != (0, 0)

    def valuation(self, x: Element) -> int:
        # in powers of p_K, capped at the truncation level
        a, b = self.reduce(x)
        p    = self.field.p

        def v_p(n: int) -> int:
            if n == 0:
                return self.level
            v = 0
            while n % p == 0:
                n //= p
                v += 1
            return v

        if self.field.kind == FieldKind.RAMIFIED:
            value = min(2*v_p(a), 2*v_p(b) + 1)
        else:
            value = min(v_p(a), v_p(b))
        return min(value, self.level)

    def one_unit(self, depth: int, basis: int) -> Element:
        """1 + pi^depth * e_basis, e running over an F_p-basis of k."""
        p = self.field.p
        if self.field.kind == FieldKind.RAMIFIED:
            scale = self.field.cofactor ** (depth // 2) * p ** (depth // 2)
            if depth % 2 == 0:
                return self.reduce((1 + scale, 0))
            return self.reduce((1, scale))
        if basis == 0:
            return self.reduce((1 + p**depth, 0))
        return self.reduce((1, p**depth))

    def digits(self, u: Element, depth: int) -> Tuple[int, ...]:
        """
        Leading F_p-coordinates of (u - 1)/pi^depth for u in 1 + p_K^depth.
        """
        p    = self.field.p
        a, b = u
        if self.field.kind == FieldKind.RAMIFIED:
            half  = depth // 2
            scale = pow(self.field.cofactor ** half, -1, p)
            if depth % 2 == 0:
                return (((a - 1) // p**half) * scale % p,)
            return ((b // p**half) * scale % p,)
        leading = ((a - 1) // p**depth) % p
        if self.field.kind == FieldKind.BASE:
            return (leading,)
        return (leading, (b // p**depth) % p)

    def units(self) -> Iterator[Element]:
        first, second = self.moduli
        for b in range(second):
            for a in range(first):
                x = (a, b)
                if self.is_unit(x):
                    yield x

def _residue_generator(field: LocalFieldDesc) -> Element:
    if field.kind != FieldKind.UNRAMIFIED:
        return (primitive_root(field.p), 0)

    residue = LocalRing(field, 1)
    order   = field.residue_size - 1
    primes  = list(factorint(order))
    for x in residue.units():
        if all(residue.power(x, order // l) != residue.one for l in primes):
            return x
    raise LocalFieldError(f"no generator for the residue field of {field!r}")

class UnitQuotient(object):
    """
    (O_K/p_K^m)^x presented through its filtration.

    Raw generators are a Teichmuller lift w of a residue-field generator and
    the one-units 1 + pi^j e_b for 1 <= j < m. A unit x is logged by reading
    its residue off w and then peeling the one-unit part x/w^a apart level
    by level. The relations are w^(q-1) = 1 and the p-th power of every
    one-unit generator written in the deeper ones; their Smith form gives
    the invariant factors.
    """
    def __init__(self, field: LocalFieldDesc, level: int):
        self.field = field
        self.level = level
        self.ring  = LocalRing(field, level)

        ring = self.ring
        p    = field.p
        q    = field.residue_size

        generator = _residue_generator(field)
        residue   = LocalRing(field, 1)
        self._residue_log: Dict[Element, int] = {}
        power = residue.one
        for a in range(q - 1):
            self._residue_log[power] = a
            power = residue.mul(power, generator)

        self.teichmuller     = ring.power(ring.reduce(generator), q**level)
        self._teich_inverse  = ring.inverse(self.teichmuller)

        self._one_units: List[Element] = []
        self._one_levels: List[int]    = []
        for depth in range(1, level):
            for basis in range(field.f):
                self._one_units.append(ring.one_unit(depth, basis))
                self._one_levels.append(depth)
        self._one_inverses = [ring.inverse(g) for g in self._one_units]

        width     = 1 + len(self._one_units)
        relations = [[q - 1] + [0]*len(self._one_units)]
        for index, g in enumerate(self._one_units):
            row = [0] + [-c for c in self._one_unit_coordinates(
                ring.power(g, p))]
            row[1 + index] += p
            relations.append(row)

        self.presentation = RelationPresentation(relations, width,
            name=f"U({field!r}, {level})", labels=self._raw_element)
        group = self.presentation.group

        self._filtration_vectors = [
            self.presentation.to_canonical(
                [0]*(1 + i) + [1] + [0]*(len(self._one_units) - i - 1))
            for i in range(len(self._one_units))]

        dlog_table: Optional[Dict[Element, Vector]] = None
        if group.order <= BRUTE_FORCE_LIMIT:
            dlog_table = {x: self.dlog(x) for x in ring.units()}
            if len(set(dlog_table.values())) != group.order:
                raise GroupError(f"dlog of {group.name} is not a bijection")
        self.group = FiniteAbelianGroup(group.invariant_factors,
            group.generator_labels, dlog_table, group.name)
        log.debug("unit quotient %s has invariant factors %r",
            self.group.name, self.group.invariant_factors)

    def __repr__(self) -> str:
        return f"UnitQuotient({self.field!r}, level={self.level})"

    def _raw_element(self, raw: Vector) -> Element:
        ring    = self.ring
        element = ring.power(self.teichmuller, raw[0])
        for g, e in zip(self._one_units, raw[1:]):
            element = ring.mul(element, ring.power(g, e))
        return element

    def _one_unit_coordinates(self, u: Element) -> List[int]:
        ring   = self.ring
        coords = [0]*len(self._one_units)
        index  = 0
        for depth in range(1, self.level):
            for c in ring.digits(u, depth):
                if c:
                    coords[index] = c
                    u = ring.mul(u, ring.power(self._one_inverses[index], c))
                index += 1
        if u != ring.one:
            raise GroupError(f"one-unit expansion left {u!r} in {self!r}")
        return coords

    @property
    def generators(self) -> Tuple[Element, ...]:
        return self.group.generator_labels # type: ignore

    def dlog(self, x: Element) -> Vector:
        ring = self.ring
        x    = ring.reduce(x)
        residue = ring.residue(x)
        if not residue in self._residue_log:
            raise LocalFieldError(f"{x!r} is not a unit of {self!r}")
        a = self._residue_log[residue]
        u = ring.mul(x, ring.power(self._teich_inverse, a))
        return self.presentation.to_canonical(
            [a] + self._one_unit_coordinates(u))

    def element(self, vector: Vector) -> Element:
        ring    = self.ring
        element = ring.one
        for g, e in zip(self.generators, vector):
            element = ring.mul(element, ring.power(g, e))
        return element

    def filtration_vectors(self, depth: int) -> List[Vector]:
        """
        Canonical coordinates of generators of (1 + p_K^depth)/(1 + p_K^m);
        depth 0 means the whole unit group.
        """
        if depth <= 0:
            return [tuple(int(i == j) for j in range(self.group.rank))
                for i in range(self.group.rank)]
        return [v for v, d in zip(self._filtration_vectors, self._one_levels)
            if d >= depth]

    def filtration_subgroup(self, depth: int) -> Set[Element]:
        # brute force, for small quotients only
        if self.group.dlog_table is None:
            raise GroupError(f"{self.group.name} is too large to enumerate")
        ring = self.ring
        if depth <= 0:
            return set(self.group.dlog_table)
        return {x for x in self.group.dlog_table
            if ring.valuation((x[0] - 1, x[1])) >= depth}

@lru_cache(maxsize=None)
def unit_quotient(field: LocalFieldDesc, level: int) -> UnitQuotient:
    return UnitQuotient(field, level)
