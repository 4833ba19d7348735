import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing    import Any, Dict, List, Optional, Tuple

from pendulum import DateTime, Duration, now
from sympy    import isprime

from .certificates import Certificate, require
from .cm           import cm_count
from .modforms     import dim_cusp, dim_new

log = logging.getLogger(__name__)

class WeightVector(object):
    def __init__(self, k: int, n: int, entries: List[int]):
        self.k       = k
        self.n       = n
        self.entries = entries

    def __repr__(self) -> str:
        return f"WeightVector(k={self.k}, n={self.n}, entries={self.entries!r})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightVector):
            return NotImplemented
        return (self.k, self.n, self.entries) == (other.k, other.n,
            other.entries)

    def check(self) -> Certificate:
        entries = self.entries
        holds = (len(entries) == self.n + 1 and
            all(a >= b for a, b in zip(entries, entries[1:])) and
            sum(entries) == 0 and
            all(a == -b for a, b in zip(entries, reversed(entries))))
        return require(Certificate("weight-vector", repr(self), holds=holds))

def weight_mu(k: int, n: int) -> WeightVector:
    """(n(k/2-1), (n-2)(k/2-1), ..., -n(k/2-1)), the weight carrying sym^n."""
    if k < 2 or k % 2:
        raise ValueError(f"weight {k} is not an even integer >= 2")
    if n < 1:
        raise ValueError(f"symmetric power {n} is below 1")
    step   = k//2 - 1
    vector = WeightVector(k, n, [(n - 2*i) * step for i in range(n + 1)])
    vector.check()
    return vector

def level_propagation(i: int, n: int) -> int:
    """Newforms of level p^l, l <= i, lift into levels p^l' with
    1 <= l' <= (n+2) l, all at most (n+2) i."""
    if i < 1:
        raise ValueError(f"level exponent {i} is below 1")
    if n < 2:
        raise ValueError(f"symmetric power {n} is below 2")
    return (n + 2) * i

def lifted_levels(l: int, n: int) -> Tuple[int, int]:
    return 1, (n + 2) * l

def lower_bound_exponent(n: int) -> Fraction:
    """p^(2i) = (p^j)^(2/(n+2)) with j = (n+2) i."""
    return Fraction(2, n + 2)

def target_leading(k: int, p: int, i: int) -> Fraction:
    """Limit of sum_{l<=i} dim S_k^new(Gamma_1(p^l)) / p^(2i) as p grows."""
    local = 1 - Fraction(1, p*p)
    if i == 1:
        return Fraction(k - 1, 24) * local
    return Fraction(k - 1, 24) * local**2

class CensusRow(object):
    FIELDS = ["k", "n", "p", "i", "j", "newform_sum", "cm_count",
        "lower_bound", "ratio_num", "ratio_den"]

    def __init__(self,
            k:           int,
            n:           int,
            p:           int,
            i:           int,
            newform_sum: int,
            cm_count:    int):
        self.k           = k
        self.n           = n
        self.p           = p
        self.i           = i
        self.j           = level_propagation(i, n)
        self.newform_sum = newform_sum
        self.cm_count    = cm_count
        self.lower_bound = max(0, newform_sum - cm_count)
        self.target      = p**(2*i)
        self.ratio       = Fraction(self.lower_bound, self.target)

    def __repr__(self) -> str:
        return (f"CensusRow(k={self.k}, n={self.n}, p={self.p}, i={self.i}, "
            f"lower_bound={self.lower_bound})")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CensusRow):
            return NotImplemented
        return self.values() == other.values()

    def values(self) -> List[int]:
        return [self.k, self.n, self.p, self.i, self.j, self.newform_sum,
            self.cm_count, self.lower_bound, self.ratio.numerator,
            self.ratio.denominator]

    def to_dict(self) -> Dict[str, int]:
        return dict(zip(self.FIELDS, self.values()))

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CensusRow":
        return cls(data["k"], data["n"], data["p"], data["i"],
            data["newform_sum"], data["cm_count"])

def census_row(k: int, n: int, p: int, i: int) -> CensusRow:
    newform_sum = sum(dim_new(k, p**l) for l in range(1, i + 1))
    row = CensusRow(k, n, p, i, newform_sum, cm_count(k, p**i))

    total = sum(dim_cusp(k, p**l) for l in range(1, i + 1))
    require(Certificate("census-row", repr(row), value=row.lower_bound,
        lower=0, upper=total, holds=0 <= row.lower_bound <= total))
    log.debug("census row %r", row)
    return row

def census(
        k:     int,
        n:     int,
        p:     int,
        i_max: int,
        jobs:  int = 1) -> List[CensusRow]:
    if p == 2 or not isprime(p):
        raise ValueError(f"{p} is not an odd prime")
    if k < 2 or k % 2:
        raise ValueError(f"weight {k} is not an even integer >= 2")
    if n < 2:
        raise ValueError(f"symmetric power {n} is below 2")

    exponents = list(range(1, i_max + 1))
    if jobs <= 1:
        return [census_row(k, n, p, i) for i in exponents]
    with ThreadPoolExecutor(max_workers=jobs) as executor:
        futures = [executor.submit(census_row, k, n, p, i) for i in exponents]
    return [future.result() for future in futures]

class RunReport(object):
    def __init__(self, name: str):
        self.name     = name
        self.started: DateTime           = now("UTC")
        self.finished: Optional[DateTime] = None
        self.rows     = 0

    def __repr__(self) -> str:
        return f"RunReport({self.name!r}, rows={self.rows})"

    def finish(self, rows: int = 0) -> "RunReport":
        self.finished = now("UTC")
        self.rows     = rows
        log.info("%s produced %d rows in %s", self.name, rows,
            self.elapsed().in_words())
        return self

    def elapsed(self) -> Duration:
        end = self.finished or now("UTC")
        return end - self.started
