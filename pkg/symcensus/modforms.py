"""Dimensions of S_k(Gamma_1(N)) and of its new subspace, even k only."""

import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing    import Dict, List, Optional, Sequence, Tuple

import numpy
from sympy import divisor_count, divisors, factorint, totient

from .abelian      import orthogonality_sum
from .certificates import Certificate, require
from .dirichlet    import even_characters, units_group

log = logging.getLogger(__name__)

# (index of +-Gamma_1(N) in PSL_2(Z), nu_2, nu_3, cusps) where the
# general formulas do not apply
_SMALL_LEVELS: Dict[int, Tuple[int, int, int, int]] = {
    1: (1, 1, 1, 1),
    2: (3, 1, 0, 2),
    3: (4, 0, 1, 2),
    4: (6, 0, 0, 3)
}

def _require_weight(k: int):
    if k < 2 or k % 2:
        raise ValueError(f"weight {k} is not an even integer >= 2")
def _require_level(N: int):
    if N < 1:
        raise ValueError(f"level {N} is below 1")

def _prime_factor_product(N: int, term) -> Fraction:
    product = Fraction(1)
    for p in factorint(N):
        product *= term(p)
    return product

def gamma1_invariants(N: int) -> Tuple[int, int, int, int]:
    if N in _SMALL_LEVELS:
        return _SMALL_LEVELS[N]
    index = Fraction(N*N, 2) * _prime_factor_product(N,
        lambda p: 1 - Fraction(1, p*p))
    cusps = sum(int(totient(d)) * int(totient(N // d))
        for d in divisors(N)) // 2
    return int(index), 0, 0, cusps

def genus(N: int) -> int:
    index, nu2, nu3, cusps = gamma1_invariants(N)
    g = (1 + Fraction(index, 12) - Fraction(nu2, 4) - Fraction(nu3, 3) -
        Fraction(cusps, 2))
    if g.denominator != 1:
        raise ValueError(f"non-integral genus {g} at level {N}")
    return int(g)

@lru_cache(maxsize=None)
def dim_cusp(k: int, N: int) -> int:
    _require_weight(k)
    _require_level(N)
    g = genus(N)
    if k == 2:
        return g
    _, nu2, nu3, cusps = gamma1_invariants(N)
    return ((k - 1)*(g - 1) + (k//4)*nu2 + (k//3)*nu3 +
        (k//2 - 1)*cusps)

def _beta(n: int) -> int:
    value = 1
    for _, e in factorint(n).items():
        value *= {1: -2, 2: 1}.get(e, 0)
    return value

@lru_cache(maxsize=None)
def dim_new(k: int, N: int) -> int:
    _require_weight(k)
    _require_level(N)
    value = sum(_beta(N // d) * dim_cusp(k, d) for d in divisors(N))
    require(Certificate("new-dimension", f"k={k} N={N}", value=value,
        lower=0, holds=value >= 0))
    return value

def _lambda(r: int, s: int, p: int) -> int:
    if 2*s <= r:
        if r % 2 == 0:
            return p**(r//2) + p**(r//2 - 1)
        return 2 * p**(r//2)
    return 2 * p**(r - s)

def trace_formula_dimension(k: int, N: int) -> int:
    """
    dim S_k(Gamma_1(N)) as the trace of T_1, summed over the spaces
    S_k(N, chi) for even chi. Slow; for cross-checking small levels.
    """
    _require_weight(k)
    _require_level(N)

    gamma = Fraction(1, 4) if k % 4 == 0 else Fraction(-1, 4)
    mu    = {0: Fraction(1, 3), 1: Fraction(0), 2: Fraction(-1, 3)}[k % 3]
    psi   = N * _prime_factor_product(N, lambda p: 1 + Fraction(1, p))
    level = factorint(N)

    chars = list(even_characters(N))
    total = Fraction(0)
    for chi in chars:
        conductor = factorint(chi.conductor())
        product   = 1
        for p, r in level.items():
            product *= _lambda(r, conductor.get(p, 0), p)
        total += Fraction(k - 1, 12)*psi - Fraction(product, 2)
        if k == 2 and chi.is_trivial():
            total += 1

    group = units_group(N)
    vectors = [c.character for c in chars]
    for x in range(N):
        if (x*x + 1) % N == 0:
            total += gamma * orthogonality_sum(vectors, group.dlog(x % N))
        if (x*x + x + 1) % N == 0:
            total += mu * orthogonality_sum(vectors, group.dlog(x % N))

    if total.denominator != 1:
        raise ValueError(f"trace formula gave {total} at k={k} N={N}")
    return int(total)

class DimensionRecord(object):
    def __init__(self,
            k:        int,
            N:        int,
            dim_full: int,
            dim_new:  int):
        self.k        = k
        self.N        = N
        self.dim_full = dim_full
        self.dim_new  = dim_new

    def __repr__(self) -> str:
        return (f"DimensionRecord(k={self.k}, N={self.N}, "
            f"dim_full={self.dim_full}, dim_new={self.dim_new})")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DimensionRecord):
            return NotImplemented
        return ((self.k, self.N, self.dim_full, self.dim_new) ==
            (other.k, other.N, other.dim_full, other.dim_new))

def dimension_record(k: int, N: int) -> DimensionRecord:
    full = dim_cusp(k, N)
    new  = dim_new(k, N)
    old_new = sum(int(divisor_count(N // d)) * dim_new(k, d)
        for d in divisors(N))
    require(Certificate("new-old-decomposition", f"k={k} N={N}",
        lhs=full, rhs=old_new, holds=full == old_new and new <= full))
    return DimensionRecord(k, N, full, new)

def dimension_table(
        weights: Sequence[int],
        levels:  Sequence[int]) -> List[DimensionRecord]:
    return [dimension_record(k, N) for k in weights for N in levels]

def leading_term(k: int, N: int) -> Fraction:
    """lim dim S_k(Gamma_1(M))/M^2 along M with the prime divisors of N."""
    return Fraction(k - 1, 24) * _prime_factor_product(N,
        lambda p: 1 - Fraction(1, p*p))

def new_leading_term(k: int, p: int, i: int) -> Fraction:
    local = 1 - Fraction(1, p*p)
    if i == 1:
        return Fraction(k - 1, 24) * local
    return Fraction(k - 1, 24) * local**3

def averaged_constant(k: int) -> float:
    """(k-1)/(4 pi^2), the average of `leading_term` over all levels."""
    return (k - 1) / (4 * math.pi**2)

class AsymptoticRow(object):
    def __init__(self,
            k:         int,
            N:         int,
            dimension: int,
            ratio:     float,
            leading:   float,
            averaged:  float,
            p:         Optional[int] = None,
            i:         Optional[int] = None):
        self.k         = k
        self.N         = N
        self.dimension = dimension
        self.ratio     = ratio
        self.leading   = leading
        self.averaged  = averaged
        self.p         = p
        self.i         = i

    def __repr__(self) -> str:
        return (f"AsymptoticRow(k={self.k}, N={self.N}, "
            f"ratio={self.ratio:.6f}, leading={self.leading:.6f})")

    @property
    def relative_error(self) -> float:
        return abs(self.ratio - self.leading) / self.leading

def asymptotic_report(k: int, levels: Sequence[int]) -> List[AsymptoticRow]:
    dims   = numpy.array([dim_cusp(k, N) for N in levels], dtype=float)
    sizes  = numpy.array(levels, dtype=float)
    ratios = dims / sizes**2
    rows   = []
    for N, dimension, ratio in zip(levels, dims, ratios):
        rows.append(AsymptoticRow(k, N, int(dimension), float(ratio),
            float(leading_term(k, N)), averaged_constant(k)))
    log.info("asymptotic report for k=%d over %d levels", k, len(rows))
    return rows

def new_asymptotic_report(
        k:         int,
        p:         int,
        exponents: Sequence[int]) -> List[AsymptoticRow]:
    levels = [p**i for i in exponents]
    dims   = numpy.array([dim_new(k, N) for N in levels], dtype=float)
    ratios = dims / numpy.array(levels, dtype=float)**2
    rows   = []
    for i, N, dimension, ratio in zip(exponents, levels, dims, ratios):
        rows.append(AsymptoticRow(k, N, int(dimension), float(ratio),
            float(new_leading_term(k, p, i)),
            averaged_constant(k) * (1 - 1/(p*p))**2, p, i))
    return rows
