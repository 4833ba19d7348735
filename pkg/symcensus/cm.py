"""CM forms of weight k and level N, counted through the Hecke characters
of imaginary quadratic fields that induce them.

A character of modulus m and infinity type t on K = Q(sqrt(d)) induces a form
of level |d| N(m) and weight t + 1, so weight k is counted with t = k - 1.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian
from math      import gcd, isqrt
from typing    import Any, Dict, Iterator, List, Optional, Tuple

import numpy
from sympy import divisors, factorint, legendre_symbol
try:
    from sympy.core.intfunc import igcdex
except ImportError:
    from sympy.core.numbers import igcdex

from .abelian import (FiniteAbelianGroup, GroupCharacter,
    group_from_multiplication)

log = logging.getLogger(__name__)

# x + y*omega, omega = (d + sqrt(d))/2
Element = Tuple[int, int]

class FieldError(ValueError):
    pass

def is_fundamental_discriminant(d: int) -> bool:
    if d >= 0:
        return False
    if d % 4 == 1:
        return all(e == 1 for e in factorint(-d).values())
    if d % 4 == 0:
        m = d // 4
        if m % 4 in (2, 3):
            return all(e == 1 for e in factorint(-m).values())
    return False

def kronecker(d: int, n: int) -> int:
    """The Kronecker symbol (d/n) for n >= 1."""
    value = 1
    for p, e in factorint(n).items():
        if p == 2:
            if d % 2 == 0:
                return 0
            local = 1 if d % 8 in (1, 7) else -1
        else:
            local = legendre_symbol(d % p, p) if d % p else 0
        value *= local ** e
    return value

def solve_linmod(a: int, b: int, m: int) -> Tuple[int, int]:
    # a*x = b (mod m) has solutions x = u + v*n
    d, _, g = (int(v) for v in igcdex(a, m))
    if b % g:
        raise ValueError("no solution")
    return (b // g) * d % m, m // g

class BinaryQF(object):
    def __init__(self, a: int, b: int, c: int):
        self.a = a
        self.b = b
        self.c = c

    def __repr__(self) -> str:
        return f"BinaryQF({self.a}, {self.b}, {self.c})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryQF):
            return NotImplemented
        return self.tuple() == other.tuple()
    def __hash__(self) -> int:
        return hash(self.tuple())

    def tuple(self) -> Tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def discriminant(self) -> int:
        return self.b**2 - 4*self.a*self.c

    def __mul__(self, other: "BinaryQF") -> "BinaryQF":
        # Gaussian composition; the duplication shortcut needs gcd(a, b) = 1
        if self == other and gcd(self.a, self.b) == 1:
            return self.square()
        a, b, c = self.tuple()
        A, B, C = other.tuple()
        g = (b + B) // 2
        h = -(b - B) // 2
        w = gcd(gcd(a, A), g)
        s = a // w
        t = A // w
        u = g // w
        k0, k1 = solve_linmod(t*u, h*u + s*c, s*t)
        l0, _  = solve_linmod(t*k1, h - t*k0, s)
        k = k0 + k1*l0
        l = (k*t - h) // s
        m = (t*u*k - h*u - c*s) // (s*t)
        return BinaryQF(s*t, w*u - (k*t + l*s), k*l - w*m)

    def square(self) -> "BinaryQF":
        a, b, c = self.tuple()
        mu, _ = solve_linmod(b, c, a)
        return BinaryQF(a*a, b - 2*a*mu, mu*mu - (b*mu - c) // a)

    def normalize(self) -> "BinaryQF":
        a, b, c = self.tuple()
        r = (a - b) // (2*a)
        return BinaryQF(a, b + 2*r*a, a*r*r + b*r + c)

    def reduced(self) -> "BinaryQF":
        a, b, c = self.normalize().tuple()
        while not (a < c or (a == c and b >= 0)):
            s = (c + b) // (2*c)
            a, b, c = c, -b + 2*s*c, c*s*s - b*s + a
        return BinaryQF(a, b, c)

    def is_reduced(self) -> bool:
        a, b, c = self.tuple()
        if not (abs(b) <= a <= c):
            return False
        if abs(b) == a or a == c:
            return b >= 0
        return True

def principal_form(d: int) -> BinaryQF:
    k = d % 2
    return BinaryQF(1, k, (k*k - d) // 4)

def reduced_forms(d: int) -> List[BinaryQF]:
    forms: List[BinaryQF] = []
    a = 1
    while 3*a*a <= -d:
        for b in range(-a + 1, a + 1):
            if (b*b - d) % (4*a):
                continue
            form = BinaryQF(a, b, (b*b - d) // (4*a))
            if form.is_reduced() and gcd(gcd(a, b), form.c) == 1:
                forms.append(form)
        a += 1
    return forms

class PrimeIdeal(object):
    """
    A prime of O_K above p: split and ramified primes are (p, omega - r),
    inert primes are (p).
    """
    def __init__(self, p: int, kind: str, root: Optional[int] = None):
        self.p    = p
        self.kind = kind
        self.root = root

    def __repr__(self) -> str:
        if self.kind == "inert":
            return f"PrimeIdeal({self.p})"
        return f"PrimeIdeal({self.p}, omega - {self.root})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PrimeIdeal):
            return NotImplemented
        return (self.p, self.kind, self.root) == (other.p, other.kind,
            other.root)
    def __hash__(self) -> int:
        return hash((self.p, self.kind, self.root))

    @property
    def norm(self) -> int:
        return self.p**2 if self.kind == "inert" else self.p

class Ideal(object):
    """
    The lattice a*Z + (b + c*omega)*Z with c | a and 0 <= b < a, together
    with its prime factorisation.
    """
    def __init__(self,
            a:       int,
            b:       int,
            c:       int,
            factors: Tuple[Tuple[PrimeIdeal, int], ...] = ()):
        self.a       = a
        self.b       = b % a
        self.c       = c
        self.factors = factors

    def __repr__(self) -> str:
        return f"Ideal(norm={self.norm}, basis=({self.a}, {self.b}+{self.c}w))"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return (self.a, self.b, self.c) == (other.a, other.b, other.c)
    def __hash__(self) -> int:
        return hash((self.a, self.b, self.c))

    @property
    def norm(self) -> int:
        return self.a * self.c

    def contains(self, x: Element) -> bool:
        u, v = x
        if v % self.c:
            return False
        return (u - (v // self.c)*self.b) % self.a == 0

    def reduce(self, x: Element) -> Element:
        u, v = x
        rest = v % self.c
        u   -= ((v - rest) // self.c) * self.b
        return (u % self.a, rest)

    def residues(self) -> Iterator[Element]:
        for v in range(self.c):
            for u in range(self.a):
                yield (u, v)

def _hermite(vectors: List[Element]) -> Tuple[int, int, int]:
    rows = [list(v) for v in vectors if v != (0, 0)]
    # clear the omega column down to one row
    while sum(1 for r in rows if r[1]) > 1:
        rows.sort(key=lambda r: (r[1] == 0, abs(r[1])))
        pivot = rows[0]
        for r in rows[1:]:
            if r[1]:
                q = r[1] // pivot[1]
                r[0] -= q*pivot[0]
                r[1] -= q*pivot[1]
    pivot = next(r for r in rows if r[1])
    if pivot[1] < 0:
        pivot[0], pivot[1] = -pivot[0], -pivot[1]
    a = 0
    for r in rows:
        if r is not pivot:
            a = gcd(a, r[0])
    return a, pivot[0], pivot[1]

class ImagQuadField(object):
    def __init__(self, d: int):
        if not is_fundamental_discriminant(d):
            raise FieldError(f"{d} is not a negative fundamental discriminant")
        self.d  = d
        self.n0 = (d*d - d) // 4
        self.w  = {-3: 6, -4: 4}.get(d, 2)

        self.forms = reduced_forms(d)
        self.h     = len(self.forms)

    def __repr__(self) -> str:
        return f"ImagQuadField(d={self.d}, h={self.h}, w={self.w})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ImagQuadField):
            return NotImplemented
        return self.d == other.d
    def __hash__(self) -> int:
        return hash(self.d)

    def mul(self, x: Element, y: Element) -> Element:
        (x1, y1), (x2, y2) = x, y
        return (x1*x2 - self.n0*y1*y2, x1*y2 + x2*y1 + self.d*y1*y2)

    def power(self, x: Element, exponent: int) -> Element:
        result: Element = (1, 0)
        while exponent:
            if exponent & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            exponent >>= 1
        return result

    def norm(self, x: Element) -> int:
        u, v = x
        return u*u + self.d*u*v + self.n0*v*v

    def unit_generator(self) -> Element:
        if self.w == 2:
            return (-1, 0)
        # i = omega + 2 for d = -4, (1 + sqrt(-3))/2 = omega + 2 for d = -3
        return (2, 1)

    def units(self) -> List[Element]:
        zeta = self.unit_generator()
        return [self.power(zeta, j) for j in range(self.w)]

    def class_group(self) -> FiniteAbelianGroup:
        return group_from_multiplication(self.forms,
            lambda f, g: (f * g).reduced(), identity=principal_form(self.d),
            name=f"Cl({self.d})")

    def analytic_class_number(self) -> int:
        D     = -self.d
        total = sum(kronecker(self.d, a) * a for a in range(1, D))
        h     = Fraction(-self.w * total, 2*D)
        if h.denominator != 1:
            raise FieldError(f"analytic class number {h} for {self.d}")
        return int(h)

    def primes_above(self, p: int) -> List[PrimeIdeal]:
        symbol = kronecker(self.d, p)
        if symbol == -1:
            return [PrimeIdeal(p, "inert")]
        roots = [r for r in range(p)
            if (r*r - self.d*r + self.n0) % p == 0]
        if symbol == 0:
            return [PrimeIdeal(p, "ramified", roots[0])]
        return [PrimeIdeal(p, "split", r) for r in roots]

    def prime_lattice(self, prime: PrimeIdeal) -> Ideal:
        factors = ((prime, 1),)
        if prime.kind == "inert":
            return Ideal(prime.p, 0, prime.p, factors)
        return Ideal(prime.p, -prime.root, 1, factors) # type: ignore

    def unit_ideal(self) -> Ideal:
        return Ideal(1, 0, 1)

    def ideal_product(self, first: Ideal, second: Ideal) -> Ideal:
        gens_a = [(first.a, 0), (first.b, first.c)]
        gens_b = [(second.a, 0), (second.b, second.c)]
        a, b, c = _hermite([self.mul(x, y) for x in gens_a for y in gens_b])

        factors: Dict[PrimeIdeal, int] = {}
        for prime, e in first.factors + second.factors:
            factors[prime] = factors.get(prime, 0) + e
        ordered = tuple(sorted(factors.items(),
            key=lambda item: (item[0].p, item[0].root or 0)))
        return Ideal(a, b, c, ordered)

    def ideal_from_factors(self,
            factors: List[Tuple[PrimeIdeal, int]]) -> Ideal:
        ideal = self.unit_ideal()
        for prime, e in factors:
            for _ in range(e):
                ideal = self.ideal_product(ideal, self.prime_lattice(prime))
        return ideal

    def ideals_of_norm(self, n: int) -> List[Ideal]:
        choices: List[List[List[Tuple[PrimeIdeal, int]]]] = []
        for p, e in sorted(factorint(n).items()):
            primes = self.primes_above(p)
            local: List[List[Tuple[PrimeIdeal, int]]] = []
            if primes[0].kind == "inert":
                if e % 2 == 0:
                    local.append([(primes[0], e // 2)])
            elif primes[0].kind == "ramified":
                local.append([(primes[0], e)])
            else:
                for i in range(e + 1):
                    local.append([(q, f) for q, f in
                        zip(primes, (i, e - i)) if f])
            if not local:
                return []
            choices.append(local)
        return [self.ideal_from_factors([f for part in combo for f in part])
            for combo in cartesian(*choices)]

    def count_ideals_of_norm(self, n: int) -> int:
        count = 1
        for p, e in factorint(n).items():
            symbol = kronecker(self.d, p)
            if symbol == 1:
                count *= e + 1
            elif symbol == -1 and e % 2:
                return 0
        return count

    def is_coprime(self, x: Element, ideal: Ideal) -> bool:
        return not any(self.prime_lattice(prime).contains(x)
            for prime, _ in ideal.factors)

@lru_cache(maxsize=None)
def imag_quad_field(d: int) -> ImagQuadField:
    return ImagQuadField(d)

def class_group(d: int) -> ImagQuadField:
    return imag_quad_field(d)

def ray_unit_order(field: ImagQuadField, modulus: Ideal) -> int:
    order = 1
    for prime, e in modulus.factors:
        order *= prime.norm**(e - 1) * (prime.norm - 1)
    return order

def ray_unit_group(
        field:   ImagQuadField,
        modulus: Ideal) -> FiniteAbelianGroup:
    """(O_K/m)^x by enumerating residues coprime to m."""
    units = [x for x in modulus.residues() if field.is_coprime(x, modulus)]
    return group_from_multiplication(units,
        lambda x, y: modulus.reduce(field.mul(x, y)),
        identity=modulus.reduce((1, 0)),
        name=f"(O_{field.d}/{modulus!r})^x", check=False)

class HeckeCharCount(object):
    def __init__(self,
            field:         ImagQuadField,
            modulus_norm:  int,
            infinity_type: int,
            count:         int):
        self.field         = field
        self.modulus_norm  = modulus_norm
        self.infinity_type = infinity_type
        self.count         = count

    def __repr__(self) -> str:
        return (f"HeckeCharCount(d={self.field.d}, "
            f"modulus_norm={self.modulus_norm}, t={self.infinity_type}, "
            f"count={self.count})")

    @property
    def induced_level(self) -> int:
        return -self.field.d * self.modulus_norm

def _units_congruent_to_one(field: ImagQuadField, modulus: Ideal) -> List[int]:
    # exponents j with zeta^j = 1 mod m
    units = field.units()
    return [j for j, u in enumerate(units)
        if modulus.contains((u[0] - 1, u[1]))]

def hecke_char_count(
        field:         ImagQuadField,
        modulus:       Ideal,
        infinity_type: int) -> HeckeCharCount:
    """
    Hecke characters of modulus m sending (alpha) to alpha^t for
    alpha = 1 mod m. There are h |(O/m)^x| / |image of units| of them when
    every unit congruent to 1 mod m has u^t = 1, and none otherwise.
    """
    if infinity_type < 1:
        raise ValueError(f"infinity type {infinity_type} is below 1")
    kernel = _units_congruent_to_one(field, modulus)
    if any((j * infinity_type) % field.w for j in kernel):
        count = 0
    else:
        image = field.w // len(kernel)
        count = field.h * ray_unit_order(field, modulus) // image
    return HeckeCharCount(field, modulus.norm, infinity_type, count)

class CMCount(object):
    def __init__(self,
            k:         int,
            N:         int,
            breakdown: List[Tuple[int, int, int]]):
        self.k         = k
        self.N         = N
        self.breakdown = breakdown

    def __repr__(self) -> str:
        return f"CMCount(k={self.k}, N={self.N}, total={self.total})"

    @property
    def total(self) -> int:
        return sum(count for _, _, count in self.breakdown)

def cm_count_breakdown(k: int, N: int) -> CMCount:
    if k < 2 or k % 2:
        raise ValueError(f"weight {k} is not an even integer >= 2")
    if N < 1:
        raise ValueError(f"level {N} is below 1")

    breakdown: List[Tuple[int, int, int]] = []
    for D in divisors(N):
        if not is_fundamental_discriminant(-D):
            continue
        field = imag_quad_field(-D)
        norm  = N // D
        total = sum(hecke_char_count(field, m, k - 1).count
            for m in field.ideals_of_norm(norm))
        breakdown.append((-D, norm, total))
    breakdown.sort(key=lambda row: (-row[0], row[1]))
    log.debug("cm count k=%d N=%d: %r", k, N, breakdown)
    return CMCount(k, N, breakdown)

def cm_count(k: int, N: int) -> int:
    return cm_count_breakdown(k, N).total

def growth_slope(k: int, i: int, primes: List[int]) -> float:
    """
    Least-squares slope of log cm_count(k, p^i) against log p over the
    primes with a nonzero count. A count that vanishes at every prime is
    flat, slope 0.
    """
    points = [(p, cm_count(k, p**i)) for p in primes]
    points = [(p, c) for p, c in points if c > 0]
    if not points:
        return 0.0
    if len(points) < 2:
        raise ValueError("fewer than two primes with a nonzero count")
    x = numpy.log(numpy.array([p for p, _ in points], dtype=float))
    y = numpy.log(numpy.array([c for _, c in points], dtype=float))
    slope, _ = numpy.polyfit(x, y, 1)
    return float(slope)

class CoefficientTerm(object):
    """
    One ideal's contribution zeta(a) N(a)^e: the finite part as an element
    of Q/Z times the generator power alpha^t, and the norm power.
    """
    def __init__(self,
            root:          Fraction,
            alpha_power:   Element,
            norm:          int,
            norm_exponent: Fraction):
        self.root          = root
        self.alpha_power   = alpha_power
        self.norm          = norm
        self.norm_exponent = norm_exponent

    def __repr__(self) -> str:
        return (f"CoefficientTerm(e({self.root}) * {self.alpha_power!r} * "
            f"{self.norm}^{self.norm_exponent})")

    def to_dict(self) -> Dict[str, Any]:
        return {"root": str(self.root), "alpha_power": list(self.alpha_power),
            "norm": self.norm, "norm_exponent": str(self.norm_exponent)}

class HeckeCharacter(object):
    """
    A Hecke character of a class number one field: (alpha) coprime to m
    goes to finite(alpha mod m) * alpha^t, with finite(u) u^t = 1 on units.
    """
    def __init__(self,
            field:         ImagQuadField,
            modulus:       Ideal,
            infinity_type: int,
            finite:        GroupCharacter):
        if field.h != 1:
            raise FieldError(f"class number of {field.d} is {field.h}, not 1")
        group = finite.group
        for j, u in enumerate(field.units()):
            if not field.is_coprime(u, modulus):
                continue
            value = finite.at(modulus.reduce(u)) + Fraction(
                j * infinity_type, field.w)
            if value % 1:
                raise FieldError(f"finite part is not trivial on units "
                    f"twisted by infinity type {infinity_type}")
        self.field         = field
        self.modulus       = modulus
        self.infinity_type = infinity_type
        self.finite        = finite
        self.group         = group

    def __repr__(self) -> str:
        return (f"HeckeCharacter(d={self.field.d}, modulus={self.modulus!r}, "
            f"t={self.infinity_type})")

    def generator(self, ideal: Ideal) -> Element:
        norm  = ideal.norm
        bound = isqrt(4*norm // -self.field.d + 1) + 1
        for v in range(-bound, bound + 1):
            for u in range(-bound*abs(self.field.d) - isqrt(norm) - 1,
                    bound*abs(self.field.d) + isqrt(norm) + 2):
                x = (u, v)
                if self.field.norm(x) == norm and ideal.contains(x):
                    return x
        raise FieldError(f"no generator found for {ideal!r}")

def hecke_characters(
        field:         ImagQuadField,
        modulus:       Ideal,
        infinity_type: int) -> List[HeckeCharacter]:
    group = ray_unit_group(field, modulus)
    found = []
    for finite in group.characters():
        try:
            found.append(HeckeCharacter(field, modulus, infinity_type, finite))
        except FieldError:
            pass
    return found

def cm_q_expansion(
        character:       HeckeCharacter,
        terms:           int,
        norm_factor:     bool = True) -> List[List[CoefficientTerm]]:
    """
    Coefficients a_1..a_T of sum over ideals a of zeta(a) N(a)^(t/2) q^N(a),
    each as its list of ideal contributions (an empty list is a_n = 0).
    """
    field    = character.field
    modulus  = character.modulus
    exponent = Fraction(character.infinity_type, 2) if norm_factor else (
        Fraction(0))
    out: List[List[CoefficientTerm]] = []
    for n in range(1, terms + 1):
        coefficient: List[CoefficientTerm] = []
        for ideal in field.ideals_of_norm(n):
            alpha = character.generator(ideal)
            if not field.is_coprime(alpha, modulus):
                continue
            root = character.finite.at(modulus.reduce(alpha))
            coefficient.append(CoefficientTerm(root,
                field.power(alpha, character.infinity_type), n, exponent))
        out.append(coefficient)
    return out
