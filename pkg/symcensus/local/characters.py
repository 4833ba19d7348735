import logging
from fractions import Fraction
from math      import gcd
from typing    import (Any, Callable, Dict, Iterable, Iterator, List, Optional,
    Tuple)

from sympy import legendre_symbol

from ..abelian      import GroupCharacter
from ..certificates import Certificate, require
from .fields        import (Element, FieldKind, LocalFieldDesc, LocalFieldError,
    LocalRing, quadratic_extensions, unit_quotient, UnitQuotient)

log  = logging.getLogger(__name__)
HALF = Fraction(1, 2)

class LocalCharacter(object):
    """
    A character of K^x trivial on 1 + p_K^level: a character of the unit
    quotient plus the Q/Z value taken on the chosen uniformizer (p for Q_p
    and the unramified extension, theta for the ramified ones).
    """
    def __init__(self,
            field:             LocalFieldDesc,
            level:             int,
            unit_part:         GroupCharacter,
            uniformizer_value: Fraction = Fraction(0)):
        quotient = unit_quotient(field, level)
        if unit_part.group != quotient.group:
            raise LocalFieldError(
                f"unit part lives on {unit_part.group.name}, "
                f"not on {quotient.group.name}")
        self.field             = field
        self.level             = level
        self.unit_part         = unit_part
        self.uniformizer_value = Fraction(uniformizer_value) % 1
        self._conductor: Optional[int] = None

    @classmethod
    def from_unit_function(cls,
            field:             LocalFieldDesc,
            level:             int,
            function:          Callable[[Element], Fraction],
            uniformizer_value: Fraction = Fraction(0)) -> "LocalCharacter":
        quotient = unit_quotient(field, level)
        images   = [function(g) for g in quotient.generators]
        return cls(field, level, quotient.group.character(images),
            uniformizer_value)

    @classmethod
    def trivial(cls,
            field: LocalFieldDesc,
            level: int = 1) -> "LocalCharacter":
        group = unit_quotient(field, level).group
        return cls(field, level, group.trivial_character())

    def __repr__(self) -> str:
        images = ", ".join(str(i) for i in self.unit_part.images)
        return (f"LocalCharacter({self.field!r}, level={self.level}, "
            f"images=({images}), uniformizer={self.uniformizer_value})")

    @property
    def quotient(self) -> UnitQuotient:
        return unit_quotient(self.field, self.level)
    @property
    def ring(self) -> LocalRing:
        return self.quotient.ring

    def unit_value(self, x: Element) -> Fraction:
        return self.unit_part(self.quotient.dlog(x))
    def value(self, valuation: int, unit: Element) -> Fraction:
        """chi(uniformizer^valuation * unit)"""
        return (valuation*self.uniformizer_value + self.unit_value(unit)) % 1

    def is_unramified(self) -> bool:
        return self.unit_part.is_trivial()

    def conductor(self) -> int:
        if self._conductor is None:
            self._conductor = self._filtration_conductor()
        return self._conductor
    def _filtration_conductor(self) -> int:
        if self.unit_part.is_trivial():
            return 0
        quotient = self.quotient
        for depth in range(1, self.level + 1):
            if all(self.unit_part.numerator(v) == 0
                    for v in quotient.filtration_vectors(depth)):
                return depth
        return self.level

    def order(self) -> int:
        unit_order = self.unit_part.order()
        denom      = self.uniformizer_value.denominator
        return unit_order * denom // gcd(unit_order, denom)

    def at_level(self, level: int) -> "LocalCharacter":
        if level == self.level:
            return self
        if level < max(self.conductor(), 1):
            raise LocalFieldError(
                f"level {level} is below the conductor {self.conductor()}")
        return LocalCharacter.from_unit_function(self.field, level,
            self.unit_value, self.uniformizer_value)

    def _common(self,
            other: "LocalCharacter"
            ) -> Tuple["LocalCharacter", "LocalCharacter"]:
        if self.field != other.field:
            raise LocalFieldError(
                f"characters of {self.field!r} and {other.field!r}")
        level = max(self.level, other.level)
        return self.at_level(level), other.at_level(level)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LocalCharacter):
            return NotImplemented
        if self.field != other.field:
            return False
        left, right = self._common(other)
        return (left.unit_part         == right.unit_part and
                left.uniformizer_value == right.uniformizer_value)
    def __hash__(self) -> int:
        return hash((self.field, self.uniformizer_value, self.conductor()))

    def __mul__(self, other: "LocalCharacter") -> "LocalCharacter":
        left, right = self._common(other)
        return LocalCharacter(left.field, left.level,
            left.unit_part * right.unit_part,
            left.uniformizer_value + right.uniformizer_value)
    def __pow__(self, n: int) -> "LocalCharacter":
        return LocalCharacter(self.field, self.level, self.unit_part ** n,
            n * self.uniformizer_value)
    def inverse(self) -> "LocalCharacter":
        return self ** -1

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p":                 self.field.p,
            "kind":              self.field.label(),
            "m":                 self.level,
            "images":            [str(i) for i in self.unit_part.images],
            "uniformizer_value": str(self.uniformizer_value)
        }

def characters(
        field:              LocalFieldDesc,
        level:              int,
        uniformizer_values: Iterable[Fraction] = (Fraction(0),)
        ) -> Iterator[LocalCharacter]:
    group  = unit_quotient(field, level).group
    values = list(uniformizer_values)
    for unit_part in group.characters():
        for value in values:
            yield LocalCharacter(field, level, unit_part, value)

def conductor(chi: LocalCharacter) -> int:
    return chi.conductor()

def char_product_conductor_bound(
        chi1: LocalCharacter,
        chi2: LocalCharacter) -> int:
    c1, c2 = chi1.conductor(), chi2.conductor()
    c      = (chi1 * chi2).conductor()
    holds  = c <= max(c1, c2) and (c1 == c2 or c == max(c1, c2))
    require(Certificate("product-conductor", f"{chi1!r} * {chi2!r}",
        value=c, upper=max(c1, c2), holds=holds))
    return c

def _require_quadratic(field: LocalFieldDesc):
    if not field.is_quadratic:
        raise LocalFieldError(f"{field!r} is not a quadratic extension")

def galois_conjugate(eta: LocalCharacter) -> LocalCharacter:
    """eta composed with the nontrivial automorphism theta -> -theta"""
    _require_quadratic(eta.field)
    ring  = eta.ring
    value = eta.uniformizer_value
    if eta.field.kind == FieldKind.RAMIFIED:
        # sigma(theta) = -theta
        value += eta.unit_value(ring.embed(-1))
    return LocalCharacter.from_unit_function(eta.field, eta.level,
        lambda x: eta.unit_value(ring.conjugate(x)), value)

def quadratic_character(field: LocalFieldDesc) -> LocalCharacter:
    """The character of Q_p^x whose kernel is the norm group of `field`."""
    _require_quadratic(field)
    base = field.base()
    p    = field.p
    if field.kind == FieldKind.UNRAMIFIED:
        return LocalCharacter(base, 1,
            unit_quotient(base, 1).group.trivial_character(), HALF)

    def legendre(x: Element) -> Fraction:
        return Fraction(0) if legendre_symbol(x[0] % p, p) == 1 else HALF
    # N(theta) = -cofactor * p
    value = legendre((-field.cofactor, 0))
    return LocalCharacter.from_unit_function(base, 1, legendre, value)

def norm_compose(
        chi:   LocalCharacter,
        field: LocalFieldDesc) -> Tuple[LocalCharacter, Certificate]:
    """
    chi o N_{K/Q_p} on K^x, certified against the conductor identity
    f * c(chi o N) = c(chi) + c(chi * omega) - c(omega).
    """
    if chi.field.is_quadratic:
        raise LocalFieldError(f"{chi!r} is not a character of Q_p^x")
    _require_quadratic(field)
    if chi.field.p != field.p:
        raise LocalFieldError(f"{chi!r} does not live over {field!r}")

    if field.kind == FieldKind.UNRAMIFIED:
        level = chi.level
        value = 2 * chi.uniformizer_value
    else:
        level = 2*chi.level - 1
        value = (chi.uniformizer_value +
            chi.unit_value((-field.cofactor, 0)))

    ring   = LocalRing(field, level)
    lifted = LocalCharacter.from_unit_function(field, level,
        lambda x: chi.unit_value((ring.norm(x), 0)), value)

    omega = quadratic_character(field)
    lhs   = field.f * lifted.conductor()
    rhs   = (chi.conductor() + (chi * omega).conductor() -
        omega.conductor())
    certificate = require(Certificate("norm-conductor",
        f"{chi!r} over {field!r}", lhs=lhs, rhs=rhs, holds=lhs == rhs))
    return lifted, certificate

def restrict_to_base(eta: LocalCharacter) -> LocalCharacter:
    """eta restricted to Q_p^x inside K^x."""
    _require_quadratic(eta.field)
    field = eta.field
    base  = field.base()
    level = -(-eta.level // field.e)

    value = eta.uniformizer_value
    if field.kind == FieldKind.RAMIFIED:
        # p = theta^2 / cofactor
        value = 2*value - eta.unit_value((field.cofactor, 0))
    return LocalCharacter.from_unit_function(base, level,
        lambda x: eta.unit_value((x[0], 0)), value)

def norm_group_index(field: LocalFieldDesc, level: int = 2) -> int:
    """
    [Q_p^x : N(K^x)] computed modulo 1 + p^level by enumerating the norms
    of the units of O_K; the valuation part contributes the residue degree.
    """
    _require_quadratic(field)
    p       = field.p
    modulus = p**level
    ring    = LocalRing(field, field.e * level)
    norms   = {ring.norm(x) % modulus for x in ring.units()}
    units   = modulus - modulus // p
    if units % len(norms):
        raise LocalFieldError(f"norms of {field!r} do not form a subgroup")
    index = units // len(norms) * field.f
    log.debug("norm group of %r has index %d at level %d", field, index,
        level)
    return index

def sweep_norm_conductor(p: int, max_conductor: int) -> List[Certificate]:
    """
    The norm conductor identity for every chi of Q_p^x up to a conductor,
    over all three quadratic extensions. Characters are taken up to
    unramified twist (uniformizer value 0); a twist changes no conductor.
    """
    base  = LocalFieldDesc.base_field(p)
    chars = [chi for chi in characters(base, max(max_conductor, 1))
        if chi.conductor() <= max_conductor]
    certificates: List[Certificate] = []
    for field in quadratic_extensions(p):
        for chi in chars:
            _, certificate = norm_compose(chi, field)
            certificate.details = {"p": p, "field": field.label(),
                "conductor": chi.conductor()}
            certificates.append(certificate)
    log.info("checked %d norm conductor identities at p = %d",
        len(certificates), p)
    return certificates
