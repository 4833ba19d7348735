import logging
from fractions import Fraction
from functools import lru_cache
from math      import gcd
from typing    import Any, Callable, Dict, Iterator, Tuple, Union

from sympy                  import divisors, factorint
from sympy.ntheory.modular  import crt

from .abelian      import (FiniteAbelianGroup, GroupCharacter, GroupError,
    group_from_multiplication)
from .local        import LocalCharacter, LocalFieldDesc, LocalFieldError

log = logging.getLogger(__name__)

class Zero(object):
    """The value of a Dirichlet character at a non-unit."""
    def __repr__(self) -> str:
        return "ZERO"
    def __bool__(self) -> bool:
        return False
ZERO = Zero()

CharacterValue = Union[Fraction, Zero]

@lru_cache(maxsize=None)
def units_group(modulus: int) -> FiniteAbelianGroup:
    if modulus < 1:
        raise ValueError(f"modulus {modulus} is below 1")
    units = [a for a in range(modulus) if gcd(a, modulus) == 1]
    return group_from_multiplication(units,
        lambda a, b: a*b % modulus, identity=1 % modulus,
        name=f"(Z/{modulus})^x", check=False)

class DirichletCharacter(object):
    def __init__(self, modulus: int, character: GroupCharacter):
        if character.group != units_group(modulus):
            raise GroupError(
                f"{character.group.name} is not the unit group mod {modulus}")
        self.modulus   = modulus
        self.character = character

    @classmethod
    def from_function(cls,
            modulus:  int,
            function: Callable[[int], Fraction]) -> "DirichletCharacter":
        group  = units_group(modulus)
        images = [function(g) for g in group.generator_labels] # type: ignore
        return cls(modulus, group.character(images))

    @classmethod
    def trivial(cls, modulus: int) -> "DirichletCharacter":
        return cls(modulus, units_group(modulus).trivial_character())

    def __repr__(self) -> str:
        images = ", ".join(str(i) for i in self.character.images)
        return f"DirichletCharacter(modulus={self.modulus}, images=({images}))"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        return (self.modulus   == other.modulus and
                self.character == other.character)
    def __hash__(self) -> int:
        return hash((self.modulus, self.character))

    def __call__(self, a: int) -> CharacterValue:
        if gcd(a, self.modulus) != 1:
            return ZERO
        return self.character.at(a % self.modulus)

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if self.modulus != other.modulus:
            raise GroupError(
                f"characters mod {self.modulus} and mod {other.modulus}")
        return DirichletCharacter(self.modulus, self.character*other.character)
    def __pow__(self, n: int) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, self.character ** n)
    def inverse(self) -> "DirichletCharacter":
        return self ** -1

    def order(self) -> int:
        return self.character.order()
    def is_trivial(self) -> bool:
        return self.character.is_trivial()
    def is_even(self) -> bool:
        return self(-1) == 0

    def lift(self, modulus: int) -> "DirichletCharacter":
        if modulus % self.modulus:
            raise ValueError(f"{self.modulus} does not divide {modulus}")
        return DirichletCharacter.from_function(modulus,
            lambda a: self.character.at(a % self.modulus))

    def factors_through(self, modulus: int) -> bool:
        if self.modulus % modulus:
            return False
        return all(self(a) == 0 for a in range(1, self.modulus + 1, modulus)
            if gcd(a, self.modulus) == 1)

    def conductor(self) -> int:
        for modulus in divisors(self.modulus):
            if self.factors_through(modulus):
                return modulus
        return self.modulus

    def to_dict(self) -> Dict[str, Any]:
        return {
            "modulus": self.modulus,
            "images":  [str(i) for i in self.character.images]
        }

def characters(modulus: int) -> Iterator[DirichletCharacter]:
    for character in units_group(modulus).characters():
        yield DirichletCharacter(modulus, character)

def even_characters(modulus: int) -> Iterator[DirichletCharacter]:
    return (chi for chi in characters(modulus) if chi.is_even())

def dirichlet_conductor(epsilon: DirichletCharacter) -> int:
    return epsilon.conductor()

def _split(modulus: int, p: int) -> Tuple[int, int]:
    exponent = factorint(modulus).get(p, 0)
    if exponent == 0:
        raise ValueError(f"{p} does not divide {modulus}")
    return p**exponent, modulus // p**exponent

def decompose_p_part(
        epsilon: DirichletCharacter,
        p:       int) -> Tuple[DirichletCharacter, DirichletCharacter]:
    """epsilon = epsilon_p * epsilon' along Z/N = Z/p^e x Z/N'."""
    local_modulus, rest = _split(epsilon.modulus, p)

    def glue(local: int, other: int) -> int:
        if rest == 1:
            return local % local_modulus
        return int(crt([local_modulus, rest], [local, other])[0])

    p_part = DirichletCharacter.from_function(local_modulus,
        lambda a: epsilon.character.at(glue(a, 1)))
    prime_to_p = DirichletCharacter.from_function(rest,
        lambda a: epsilon.character.at(glue(1, a) % epsilon.modulus))

    if p_part.lift(epsilon.modulus) * prime_to_p.lift(epsilon.modulus
            ) != epsilon:
        raise GroupError(f"p-part split of {epsilon!r} at {p} does not "
            "multiply back")
    return p_part, prime_to_p

class LocalizedCentralCharacter(object):
    """
    The p-adic component of the central character attached to a Dirichlet
    character: [p^i u] maps to i * epsilon'(p) - epsilon_p(u).
    """
    def __init__(self,
            p:                 int,
            exponent:          int,
            unit_part:         GroupCharacter,
            uniformizer_value: Fraction):
        self.p                 = p
        self.exponent          = exponent
        self.unit_part         = unit_part
        self.uniformizer_value = Fraction(uniformizer_value) % 1

    def __repr__(self) -> str:
        images = ", ".join(str(i) for i in self.unit_part.images)
        return (f"LocalizedCentralCharacter(p={self.p}, "
            f"exponent={self.exponent}, images=({images}), "
            f"uniformizer={self.uniformizer_value})")

    def evaluate(self, valuation: int, unit: int) -> Fraction:
        modulus = self.p ** self.exponent
        return (valuation*self.uniformizer_value +
            self.unit_part.at(unit % modulus)) % 1

    def conductor_exponent(self) -> int:
        conductor = DirichletCharacter(self.p ** self.exponent,
            self.unit_part).conductor()
        return factorint(conductor).get(self.p, 0)

    def as_local_character(self) -> LocalCharacter:
        modulus = self.p ** self.exponent
        return LocalCharacter.from_unit_function(
            LocalFieldDesc.base_field(self.p), max(self.exponent, 1),
            lambda x: self.unit_part.at(x[0] % modulus),
            self.uniformizer_value)

def adelize(epsilon: DirichletCharacter, p: int) -> LocalizedCentralCharacter:
    if p == 2:
        raise LocalFieldError("p = 2 is not supported")
    p_part, prime_to_p = decompose_p_part(epsilon, p)
    value = prime_to_p(p)
    local = LocalizedCentralCharacter(p,
        factorint(p_part.modulus)[p], p_part.inverse().character,
        value if isinstance(value, Fraction) else Fraction(0))
    log.debug("adelized %r at %d: %r", epsilon, p, local)
    return local
