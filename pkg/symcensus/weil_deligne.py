"""GL(2) local parameters over Q_p (p odd), their symmetric power lifts and
the conductor bound 1 <= c(sym^n) <= (n+2) c(pi).

A parameter is one of three variants: a principal series given by two
characters of Q_p^x, a twisted Steinberg given by one, or a supercuspidal
induced from a character eta of a quadratic extension K with eta != eta^sigma.
Conductors of sym^n are read off the decomposition of sym^n of the Weil
group representation into induced and one-dimensional pieces.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing    import Any, Callable, Dict, List, Optional, Tuple

from .abelian      import GroupError
from .certificates import (Certificate, ConductorBoundViolation,
    InvariantViolation, require)
from .decorators   import handler_decorator
from .local        import (characters, FieldKind, galois_conjugate,
    LocalCharacter, LocalFieldDesc, norm_compose,
    quadratic_character, quadratic_extensions, restrict_to_base,
    unit_quotient)

log = logging.getLogger(__name__)

class ParameterError(Exception):
    pass

class WeilDeligneParam(object):
    variant = ""

    @property
    def p(self) -> int:
        raise NotImplementedError()

    def conductor(self) -> int:
        raise NotImplementedError()

    def to_dict(self) -> Dict[str, Any]:
        raise NotImplementedError()

def _require_base(chi: LocalCharacter):
    if chi.field.is_quadratic:
        raise ParameterError(f"{chi!r} is not a character of Q_p^x")

class PrincipalSeries(WeilDeligneParam):
    variant = "ps"

    def __init__(self, mu1: LocalCharacter, mu2: LocalCharacter):
        _require_base(mu1)
        _require_base(mu2)
        if mu1.field != mu2.field:
            raise ParameterError(
                f"characters over {mu1.field!r} and {mu2.field!r}")
        self.mu1 = mu1
        self.mu2 = mu2

    def __repr__(self) -> str:
        return f"PrincipalSeries({self.mu1!r}, {self.mu2!r})"

    @property
    def p(self) -> int:
        return self.mu1.field.p

    def conductor(self) -> int:
        """c(mu1) + c(mu2); 0 when both are unramified, which sym_conductor
        rejects with ParameterError."""
        return self.mu1.conductor() + self.mu2.conductor()

    def to_dict(self) -> Dict[str, Any]:
        return {"variant": self.variant, "mu1": self.mu1.to_dict(),
            "mu2": self.mu2.to_dict()}

class Special(WeilDeligneParam):
    variant = "sp"

    def __init__(self, mu: LocalCharacter):
        _require_base(mu)
        self.mu = mu

    def __repr__(self) -> str:
        return f"Special({self.mu!r})"

    @property
    def p(self) -> int:
        return self.mu.field.p

    def conductor(self) -> int:
        return max(1, 2*self.mu.conductor())

    def to_dict(self) -> Dict[str, Any]:
        return {"variant": self.variant, "mu": self.mu.to_dict()}

class Supercuspidal(WeilDeligneParam):
    """
    Ind(eta) from K^x. eta is re-modelled at level max(c(eta), 1) + 1.
    Powers, conjugates and products of eta have conductor at most c(eta),
    and a character is determined by its values modulo 1 + p_K^c, so no
    deeper level such as (n+1) c(eta) changes any conductor computed here.
    """
    variant = "sc"

    def __init__(self, field: LocalFieldDesc, eta: LocalCharacter):
        if not field.is_quadratic:
            raise ParameterError(f"{field!r} is not a quadratic extension")
        if eta.field != field:
            raise ParameterError(f"{eta!r} is not a character of {field!r}")

        eta = eta.at_level(max(eta.conductor(), 1) + 1)
        conjugate = galois_conjugate(eta)
        if eta == conjugate:
            raise ParameterError(f"{eta!r} is Galois invariant, so its "
                "induction is reducible")

        self.field     = field
        self.eta       = eta
        self.conjugate = conjugate

    def __repr__(self) -> str:
        return f"Supercuspidal({self.field!r}, {self.eta!r})"

    @property
    def p(self) -> int:
        return self.field.p

    def conductor(self) -> int:
        if self.field.kind == FieldKind.UNRAMIFIED:
            return 2*self.eta.conductor()
        return 1 + self.eta.conductor()

    def to_dict(self) -> Dict[str, Any]:
        return {"variant": self.variant, "field": self.field.label(),
            "eta": self.eta.to_dict()}

class Summand(object):
    dim = 1

    def to_dict(self) -> Dict[str, Any]:
        raise NotImplementedError()

class CharacterSummand(Summand):
    def __init__(self, character: LocalCharacter):
        self.character = character
    def __repr__(self) -> str:
        return f"CharacterSummand({self.character!r})"
    def to_dict(self) -> Dict[str, Any]:
        return {"type": "character",
            "conductor": self.character.conductor()}

class SteinbergBlock(Summand):
    """chi tensor St_{n+1}: monodromy of rank n on an (n+1)-block."""
    def __init__(self, character: LocalCharacter, rank: int):
        self.character = character
        self.rank      = rank
        self.dim       = rank + 1
    def __repr__(self) -> str:
        return f"SteinbergBlock({self.character!r}, rank={self.rank})"
    def to_dict(self) -> Dict[str, Any]:
        return {"type": "steinberg", "rank": self.rank,
            "conductor": self.character.conductor()}

class InducedSummand(Summand):
    dim = 2

    def __init__(self,
            xi:        LocalCharacter,
            exponents: Tuple[int, int],
            reducible: bool,
            factor:    Optional[LocalCharacter] = None):
        self.xi        = xi
        self.exponents = exponents
        self.reducible = reducible
        self.factor    = factor
    def __repr__(self) -> str:
        return (f"InducedSummand({self.xi!r}, exponents={self.exponents!r}, "
            f"reducible={self.reducible})")
    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"type": "induced",
            "exponents": list(self.exponents), "reducible": self.reducible,
            "xi_conductor": self.xi.conductor()}
        if self.factor is not None:
            out["factor_conductor"] = self.factor.conductor()
        return out

class OneDimSummand(Summand):
    def __init__(self, character: LocalCharacter, alternative: LocalCharacter):
        self.character   = character
        # the other extension of (eta eta^sigma)^(n/2) from the norm group
        self.alternative = alternative
    def __repr__(self) -> str:
        return f"OneDimSummand({self.character!r})"
    def to_dict(self) -> Dict[str, Any]:
        return {"type": "one-dim", "conductor": self.character.conductor(),
            "alternative_conductor": self.alternative.conductor()}

class SymDecomposition(object):
    def __init__(self, n: int, summands: List[Summand]):
        self.n        = n
        self.summands = summands

    def __repr__(self) -> str:
        return f"SymDecomposition(n={self.n}, summands={self.summands!r})"

    @property
    def total_dim(self) -> int:
        return sum(s.dim for s in self.summands)

def central_character(pi: Supercuspidal) -> LocalCharacter:
    return restrict_to_base(pi.eta) * quadratic_character(pi.field)

def check_central_identity(
        pi:    Supercuspidal,
        omega: LocalCharacter) -> Tuple[LocalCharacter, Certificate]:
    """
    eta * eta^sigma == omega o N on K^x. Returns omega o N alongside the
    certificate.
    """
    expected = central_character(pi)
    require(Certificate("central-character", repr(pi),
        holds=omega == expected))

    witness, _ = norm_compose(omega, pi.field)
    product    = pi.eta * pi.conjugate
    certificate = require(Certificate("central-identity", repr(pi),
        holds=product == witness,
        details={"witness": witness.to_dict()}))
    return witness, certificate

def _summand_character(
        pi: Supercuspidal,
        i:  int,
        j:  int) -> LocalCharacter:
    return (pi.eta ** i) * (pi.conjugate ** j)

def _norm_witness(pi: Supercuspidal) -> LocalCharacter:
    witness, _ = norm_compose(central_character(pi), pi.field)
    return witness

def is_irreducible_summand(pi: Supercuspidal, i: int, j: int) -> bool:
    """
    Ind(eta^i (eta^sigma)^j) is irreducible iff
    eta^(2(i-j)) != (omega o N)^(i-j); checked against xi != xi^sigma.
    """
    witness   = _norm_witness(pi)
    criterion = (pi.eta ** (2*(i - j))) != (witness ** (i - j))

    xi     = _summand_character(pi, i, j)
    direct = xi != galois_conjugate(xi)
    require(Certificate("irreducibility-criterion",
        f"{pi!r} at ({i}, {j})", holds=criterion == direct,
        details={"criterion": criterion, "direct": direct}))
    return criterion

def are_isomorphic_summands(
        pi:     Supercuspidal,
        first:  Tuple[int, int],
        second: Tuple[int, int]) -> bool:
    i, j = first
    k, l = second
    n    = i + j
    if k + l != n:
        raise ValueError(f"{first!r} and {second!r} have different degrees")

    witness = _norm_witness(pi)
    def condition(e: int) -> bool:
        return (pi.eta ** (2*e)) == (witness ** e)
    criterion = condition(i - k) or condition(i + k - n)

    xi   = _summand_character(pi, i, j)
    zeta = _summand_character(pi, k, l)
    direct = zeta == xi or zeta == galois_conjugate(xi)
    require(Certificate("isomorphism-criterion",
        f"{pi!r} at {first!r}, {second!r}", holds=criterion == direct,
        details={"criterion": criterion, "direct": direct}))
    return criterion

def solve_norm_factorization(xi: LocalCharacter) -> LocalCharacter:
    """
    The character phi of Q_p^x with phi o N = xi; of the two solutions
    phi and phi * omega_K the one with the smaller conductor wins, ties
    broken by generator images.
    """
    field = xi.field
    if not field.is_quadratic:
        raise ParameterError(f"{xi!r} is not a character of a quadratic field")
    if xi != galois_conjugate(xi):
        raise ParameterError(f"{xi!r} is not Galois invariant")

    base  = field.base()
    level = xi.conductor() + 1
    if field.kind == FieldKind.UNRAMIFIED:
        lifted_level = level
    else:
        lifted_level = 2*level - 1
    target = xi.at_level(max(lifted_level, xi.level))

    base_quotient = unit_quotient(base, level)
    ring          = target.ring
    norm_vectors  = [base_quotient.dlog((ring.norm(g), 0))
        for g in target.quotient.generators]
    wanted        = [target.unit_value(g) for g in target.quotient.generators]
    minus_cofactor = base_quotient.dlog((-field.cofactor, 0))

    solutions: List[LocalCharacter] = []
    for unit_part in base_quotient.group.characters():
        if any(unit_part(v) != w for v, w in zip(norm_vectors, wanted)):
            continue
        if field.kind == FieldKind.UNRAMIFIED:
            half = target.uniformizer_value / 2
            values = [half, half + Fraction(1, 2)]
        else:
            values = [target.uniformizer_value - unit_part(minus_cofactor)]
        for value in values:
            solutions.append(LocalCharacter(base, level, unit_part, value))

    if not solutions:
        raise ParameterError(f"{xi!r} does not factor through the norm")
    require(Certificate("norm-factorization", repr(xi),
        value=len(solutions), holds=len(solutions) == 2))

    phi = min(solutions, key=lambda c: (c.conductor(), c.unit_part.images,
        c.uniformizer_value))
    lifted, _ = norm_compose(phi, field)
    require(Certificate("norm-factorization", repr(xi), holds=lifted == xi))
    return phi

def sym_decompose(pi: WeilDeligneParam, n: int) -> SymDecomposition:
    if n < 1:
        raise ValueError(f"symmetric power {n} is below 1")

    summands: List[Summand] = []
    if isinstance(pi, PrincipalSeries):
        for i in range(n + 1):
            summands.append(CharacterSummand(
                (pi.mu1 ** i) * (pi.mu2 ** (n - i))))
    elif isinstance(pi, Special):
        summands.append(SteinbergBlock(pi.mu ** n, n))
    elif isinstance(pi, Supercuspidal):
        for j in range((n - 1)//2 + 1):
            i  = n - j
            xi = _summand_character(pi, i, j)
            if is_irreducible_summand(pi, i, j):
                summands.append(InducedSummand(xi, (i, j), False))
            else:
                summands.append(InducedSummand(xi, (i, j), True,
                    solve_norm_factorization(xi)))
        if n % 2 == 0:
            chi0 = restrict_to_base(pi.eta) ** (n//2)
            summands.append(OneDimSummand(chi0,
                chi0 * quadratic_character(pi.field)))
    else:
        raise ParameterError(f"unknown parameter {pi!r}")

    decomposition = SymDecomposition(n, summands)
    require(Certificate("decomposition-dimension", repr(pi),
        value=decomposition.total_dim, holds=decomposition.total_dim == n+1))
    return decomposition

SYM_CONDUCTORS: Dict[str, Callable[..., Any]] = {}
_handler = handler_decorator(SYM_CONDUCTORS)

@_handler("ps")
def _sym_principal_series(
        pi:            PrincipalSeries,
        decomposition: SymDecomposition,
        certificate:   Certificate) -> int:
    total = sum(s.character.conductor() # type: ignore
        for s in decomposition.summands)
    certificate.details["phi_bound"] = decomposition.n * pi.conductor()
    if total > decomposition.n * pi.conductor():
        certificate.holds = False
        raise ConductorBoundViolation(certificate)
    if total < 1:
        # e.g. mu1 = mu2 quadratic ramified with n even
        certificate.flag("unramified-lift")
    return total

@_handler("sp")
def _sym_special(
        pi:            Special,
        decomposition: SymDecomposition,
        certificate:   Certificate) -> int:
    block = decomposition.summands[0]
    c     = block.character.conductor() # type: ignore
    if c == 0:
        return decomposition.n
    return (decomposition.n + 1) * c

@_handler("sc")
def _sym_supercuspidal(
        pi:            Supercuspidal,
        decomposition: SymDecomposition,
        certificate:   Certificate) -> int:
    field = pi.field
    omega = quadratic_character(field)
    total = 0
    for summand in decomposition.summands:
        if isinstance(summand, InducedSummand):
            induced = field.disc_val + field.f * summand.xi.conductor()
            if summand.reducible:
                assert summand.factor is not None
                split = (summand.factor.conductor() +
                    (summand.factor * omega).conductor())
                require(Certificate("induced-split", repr(summand),
                    lhs=induced, rhs=split, holds=induced == split))
            total += induced
        elif isinstance(summand, OneDimSummand):
            total += summand.character.conductor()
    return total

def sym_conductor(pi: WeilDeligneParam, n: int) -> Tuple[int, Certificate]:
    """
    Conductor exponent of sym^n(pi), certified against
    1 <= c <= (n+2) c(pi).
    """
    c_pi = pi.conductor()
    if c_pi < 1:
        raise ParameterError(f"{pi!r} is unramified")
    decomposition = sym_decompose(pi, n)

    bound = (n + 2) * c_pi
    certificate = Certificate("sym-conductor", repr(pi), lower=1,
        upper=bound, details={"p": pi.p, "variant": pi.variant,
        "conductor": c_pi, "n": n})
    value = SYM_CONDUCTORS[pi.variant](pi, decomposition, certificate)

    certificate.value = value
    certificate.details["sym_conductor"] = value
    certificate.details["bound"] = bound
    certificate.details["summands"] = [s.to_dict()
        for s in decomposition.summands]
    certificate.holds = value <= bound and (
        value >= 1 or pi.variant == "ps")
    require(certificate, ConductorBoundViolation)
    log.debug("sym^%d conductor of %r is %d (bound %d)", n, pi, value, bound)
    return value, certificate

def eta_sigma_bound(pi: Supercuspidal) -> Certificate:
    bound = pi.conductor()
    if pi.field.kind == FieldKind.RAMIFIED:
        bound *= 2
    value = pi.conjugate.conductor()
    return require(Certificate("eta-sigma-bound", repr(pi), value=value,
        upper=bound, holds=value <= bound))

def level_exponent(conductor: int) -> int:
    """Exponent m of the level structure K_p^m matching conductor p^m."""
    if conductor < 0:
        raise ValueError(f"conductor exponent {conductor} is negative")
    return conductor

def _base_characters(p: int, max_conductor: int) -> List[LocalCharacter]:
    base  = LocalFieldDesc.base_field(p)
    level = max(max_conductor, 1)
    return [chi for chi in characters(base, level)
        if chi.conductor() <= max_conductor]

def _run_cells(
        cells: List[Tuple[WeilDeligneParam, int]],
        jobs:  int) -> List[Certificate]:
    def cell(task: Tuple[WeilDeligneParam, int]) -> Certificate:
        _, certificate = sym_conductor(*task)
        return certificate

    if jobs <= 1:
        return [cell(task) for task in cells]
    with ThreadPoolExecutor(max_workers=jobs) as executor:
        futures = [executor.submit(cell, task) for task in cells]
    return [future.result() for future in futures]

def supercuspidal_parameters(
        p:             int,
        max_conductor: int) -> List[Supercuspidal]:
    """
    Every Ind(eta) with 1 <= c(eta) <= max_conductor, eta up to unramified
    twist (uniformizer value 0): twisting changes no conductor, so the
    sym^n conductors are unaffected.
    """
    parameters: List[Supercuspidal] = []
    for field in quadratic_extensions(p):
        for level in range(1, max_conductor + 1):
            for eta in characters(field, level):
                if eta.conductor() != level:
                    continue
                try:
                    parameters.append(Supercuspidal(field, eta))
                except ParameterError:
                    pass
    return parameters

def sweep_supercuspidal(
        p:             int,
        max_conductor: int,
        max_n:         int,
        jobs:          int = 1) -> List[Certificate]:
    parameters = supercuspidal_parameters(p, max_conductor)
    for pi in parameters:
        eta_sigma_bound(pi)
    cells = [(pi, n) for pi in parameters for n in range(1, max_n + 1)]
    log.info("sweeping %d supercuspidal cells at p = %d", len(cells), p)
    return _run_cells(cells, jobs) # type: ignore

def sweep_principal_series(
        p:             int,
        max_conductor: int,
        max_n:         int,
        jobs:          int = 1) -> List[Certificate]:
    chars = _base_characters(p, max_conductor)
    cells = [(PrincipalSeries(mu1, mu2), n)
        for a, mu1 in enumerate(chars) for mu2 in chars[a:]
        if mu1.conductor() + mu2.conductor() >= 1
        for n in range(1, max_n + 1)]
    log.info("sweeping %d principal series cells at p = %d", len(cells), p)
    return _run_cells(cells, jobs) # type: ignore

def sweep_special(
        p:             int,
        max_conductor: int,
        max_n:         int,
        jobs:          int = 1) -> List[Certificate]:
    cells = [(Special(mu), n) for mu in _base_characters(p, max_conductor)
        for n in range(1, max_n + 1)]
    log.info("sweeping %d special cells at p = %d", len(cells), p)
    return _run_cells(cells, jobs) # type: ignore

def parse_eta_spec(
        p:     int,
        field: str,
        spec:  str) -> LocalCharacter:
    """
    `images@level[:uniformizer]`, images comma-separated fractions on the
    canonical generators, e.g. `1/8@1` or `1/8,1/3@2:1/2`.
    """
    fields = {f.label(): f for f in quadratic_extensions(p)}
    fields["base"] = LocalFieldDesc.base_field(p)
    if not field in fields:
        raise ValueError(f"unknown field kind {field!r}")
    desc = fields[field]

    try:
        images, _, rest = spec.partition("@")
        level_text, _, value_text = rest.partition(":")
        level  = int(level_text)
        values = [Fraction(v) for v in images.split(",") if v]
        value  = Fraction(value_text) if value_text else Fraction(0)
    except ValueError:
        raise ValueError(f"malformed character {spec!r}")

    group = unit_quotient(desc, level).group
    try:
        unit_part = group.character(values)
    except GroupError as e:
        raise ValueError(f"character {spec!r} does not fit "
            f"{group.invariant_factors!r}: {e}")
    return LocalCharacter(desc, level, unit_part, value)

def sweep_isomorphism(
        p:             int,
        max_conductor: int,
        max_n:         int) -> List[Certificate]:
    """Cross-check the isomorphism criterion on every pair of induced
    summands of sym^n, one certificate per (parameter, n)."""
    certificates: List[Certificate] = []
    for pi in supercuspidal_parameters(p, max_conductor):
        for n in range(1, max_n + 1):
            pairs = [(n - j, j) for j in range((n - 1)//2 + 1)]
            isomorphic = sum(are_isomorphic_summands(pi, first, second)
                for first in pairs for second in pairs)
            certificates.append(Certificate("isomorphism-sweep", repr(pi),
                value=len(pairs)**2, holds=True, details={"p": p,
                "variant": pi.variant, "conductor": pi.conductor(), "n": n,
                "isomorphic_pairs": isomorphic}))
    log.info("cross-checked isomorphism criteria for %d cells at p = %d",
        len(certificates), p)
    return certificates
