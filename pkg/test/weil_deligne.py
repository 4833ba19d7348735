import unittest
from fractions import Fraction

from symcensus.certificates import ConductorBoundViolation
from symcensus.local        import (characters, galois_conjugate,
    LocalFieldDesc, norm_compose, quadratic_extensions, restrict_to_base)
from symcensus.weil_deligne import (are_isomorphic_summands, central_character,
    check_central_identity, eta_sigma_bound, InducedSummand,
    is_irreducible_summand, level_exponent, OneDimSummand, ParameterError,
    parse_eta_spec, PrincipalSeries, solve_norm_factorization, Special,
    SteinbergBlock, Supercuspidal, supercuspidal_parameters,
    sweep_isomorphism, sweep_principal_series, sweep_special,
    sweep_supercuspidal, sym_conductor, sym_decompose, SYM_CONDUCTORS)

def supercuspidal(p: int, field: str, spec: str) -> Supercuspidal:
    eta = parse_eta_spec(p, field, spec)
    return Supercuspidal(eta.field, eta)

class ParseTest(unittest.TestCase):
    def test_parse(self):
        eta = parse_eta_spec(3, "unramified", "1/8@1:1/2")
        self.assertEqual(eta.level, 1)
        self.assertEqual(eta.unit_part.images, (Fraction(1, 8),))
        self.assertEqual(eta.uniformizer_value, Fraction(1, 2))

    def test_malformed(self):
        with self.assertRaises(ValueError):
            parse_eta_spec(3, "base", "half@1")
        with self.assertRaises(ValueError):
            parse_eta_spec(3, "base", "1/4@1")
        with self.assertRaises(ValueError):
            parse_eta_spec(3, "elsewhere", "1/2@1")

class ParameterTest(unittest.TestCase):
    def test_conductors(self):
        self.assertEqual(supercuspidal(3, "unramified", "1/8@1").conductor(), 2)
        self.assertEqual(supercuspidal(3, "ramified", "1/2@1").conductor(), 2)
        mu = parse_eta_spec(3, "base", "1/2@1")
        self.assertEqual(Special(mu).conductor(), 2)
        self.assertEqual(PrincipalSeries(mu, mu).conductor(), 2)
        unramified = parse_eta_spec(3, "base", "0@1:1/3")
        self.assertEqual(Special(unramified).conductor(), 1)

    def test_galois_invariant(self):
        with self.assertRaises(ParameterError):
            supercuspidal(3, "unramified", "1/2@1")

    def test_wrong_fields(self):
        eta = parse_eta_spec(3, "unramified", "1/8@1")
        with self.assertRaises(ParameterError):
            Special(eta)
        with self.assertRaises(ParameterError):
            Supercuspidal(LocalFieldDesc.ramified(3), eta)

    def test_registry(self):
        self.assertEqual(sorted(SYM_CONDUCTORS), ["ps", "sc", "sp"])

class CentralCharacterTest(unittest.TestCase):
    def test_identity(self):
        for pi in supercuspidal_parameters(5, 1):
            omega = central_character(pi)
            witness, certificate = check_central_identity(pi, omega)
            self.assertTrue(certificate.holds)
            self.assertEqual(pi.eta * pi.conjugate, witness)

    def test_eta_sigma_bound(self):
        for pi in supercuspidal_parameters(3, 2):
            self.assertTrue(eta_sigma_bound(pi).holds)

class DecompositionTest(unittest.TestCase):
    def test_dimensions(self):
        pi = supercuspidal(3, "unramified", "1/8@1")
        for n in range(1, 7):
            decomposition = sym_decompose(pi, n)
            self.assertEqual(decomposition.total_dim, n + 1)

    def test_shapes(self):
        pi = supercuspidal(3, "unramified", "1/8@1")
        summands = sym_decompose(pi, 2).summands
        self.assertIsInstance(summands[0], InducedSummand)
        self.assertIsInstance(summands[1], OneDimSummand)
        self.assertEqual(summands[1].character, restrict_to_base(pi.eta))

        mu = parse_eta_spec(3, "base", "1/2@1")
        summands = sym_decompose(Special(mu), 3).summands
        self.assertEqual(len(summands), 1)
        self.assertIsInstance(summands[0], SteinbergBlock)
        self.assertEqual(summands[0].dim, 4)

    def test_bad_n(self):
        with self.assertRaises(ValueError):
            sym_decompose(supercuspidal(3, "ramified", "1/2@1"), 0)

class IrreducibilityTest(unittest.TestCase):
    def test_criterion(self):
        for pi in supercuspidal_parameters(3, 1):
            for n in range(1, 7):
                for j in range(n//2 + 1):
                    xi = (pi.eta ** (n - j)) * (pi.conjugate ** j)
                    self.assertEqual(is_irreducible_summand(pi, n - j, j),
                        xi != galois_conjugate(xi))

    def test_order_four(self):
        # eta^sigma = eta^-1, so eta^2 eta^sigma^2 is trivial
        pi = supercuspidal(3, "unramified", "1/4@1")
        self.assertFalse(is_irreducible_summand(pi, 2, 2))
        self.assertTrue(is_irreducible_summand(pi, 1, 0))

    def test_isomorphism(self):
        pi = supercuspidal(3, "unramified", "1/8@1")
        self.assertTrue(are_isomorphic_summands(pi, (3, 0), (3, 0)))
        with self.assertRaises(ValueError):
            are_isomorphic_summands(pi, (3, 0), (1, 0))

    def test_sweep(self):
        certificates = sweep_isomorphism(3, 1, 6)
        self.assertTrue(all(c.holds for c in certificates))
        self.assertEqual(len(certificates),
            6 * len(supercuspidal_parameters(3, 1)))

class NormFactorizationTest(unittest.TestCase):
    def test_solutions(self):
        base = LocalFieldDesc.base_field(5)
        for field in quadratic_extensions(5):
            for chi in characters(base, 2, [0, Fraction(1, 4)]):
                lifted, _ = norm_compose(chi, field)
                phi = solve_norm_factorization(lifted)
                self.assertEqual(norm_compose(phi, field)[0], lifted)
                self.assertLessEqual(phi.conductor(), chi.conductor())

    def test_not_invariant(self):
        eta = parse_eta_spec(3, "unramified", "1/8@1")
        with self.assertRaises(ParameterError):
            solve_norm_factorization(eta)

class SymConductorTest(unittest.TestCase):
    def test_first_power(self):
        for pi in supercuspidal_parameters(3, 2):
            value, _ = sym_conductor(pi, 1)
            self.assertEqual(value, pi.conductor())

    def test_depth_zero_square(self):
        pi = supercuspidal(3, "unramified", "1/8@1")
        value, certificate = sym_conductor(pi, 2)
        self.assertEqual(value, 3)
        self.assertEqual(certificate.upper, 8)
        self.assertEqual(certificate.details["variant"], "sc")

    def test_special(self):
        mu = parse_eta_spec(3, "base", "1/2@1")
        self.assertEqual(sym_conductor(Special(mu), 2)[0], 2)
        self.assertEqual(sym_conductor(Special(mu), 3)[0], 4)
        unramified = parse_eta_spec(3, "base", "0@1:1/2")
        for n in range(1, 6):
            self.assertEqual(sym_conductor(Special(unramified), n)[0], n)

    def test_unramified_lift(self):
        mu = parse_eta_spec(3, "base", "1/2@1")
        value, certificate = sym_conductor(PrincipalSeries(mu, mu), 2)
        self.assertEqual(value, 0)
        self.assertEqual(certificate.flags, ["unramified-lift"])
        self.assertTrue(certificate.holds)

    def test_principal_series(self):
        mu1 = parse_eta_spec(5, "base", "1/4@1")
        mu2 = parse_eta_spec(5, "base", "1/20@2")
        value, certificate = sym_conductor(PrincipalSeries(mu1, mu2), 3)
        self.assertLessEqual(value, certificate.details["phi_bound"])
        self.assertEqual(certificate.details["phi_bound"], 9)

    def test_deeper_level(self):
        eta     = parse_eta_spec(3, "unramified", "1/8@1")
        shallow = Supercuspidal(eta.field, eta)
        deep    = Supercuspidal(eta.field, eta.at_level(3))
        for n in range(1, 5):
            self.assertEqual(sym_conductor(deep, n)[0],
                sym_conductor(shallow, n)[0])

    def test_unramified_twist(self):
        plain = supercuspidal(3, "unramified", "1/8@1")
        for value in ("1/2", "1/3"):
            twisted = supercuspidal(3, "unramified", f"1/8@1:{value}")
            for n in range(1, 6):
                self.assertEqual(sym_conductor(twisted, n)[0],
                    sym_conductor(plain, n)[0])

    def test_unramified_parameter(self):
        trivial = parse_eta_spec(3, "base", "0@1")
        self.assertEqual(PrincipalSeries(trivial, trivial).conductor(), 0)
        with self.assertRaises(ParameterError):
            sym_conductor(PrincipalSeries(trivial, trivial), 2)

    def test_violation_type(self):
        self.assertTrue(issubclass(ConductorBoundViolation, Exception))

class SweepTest(unittest.TestCase):
    def test_supercuspidal(self):
        for p in (3, 5, 7):
            certificates = sweep_supercuspidal(p, 2, 8)
            self.assertEqual(len(certificates),
                8 * len(supercuspidal_parameters(p, 2)))
            for certificate in certificates:
                self.assertTrue(certificate.holds)
                self.assertLessEqual(certificate.value,
                    certificate.upper)
                self.assertGreaterEqual(certificate.value, 1)

    def test_principal_series(self):
        certificates = sweep_principal_series(3, 2, 6)
        for certificate in certificates:
            self.assertLessEqual(certificate.value,
                certificate.details["phi_bound"])

    def test_special(self):
        for certificate in sweep_special(5, 2, 6):
            self.assertGreaterEqual(certificate.value, 1)
            self.assertLessEqual(certificate.value, certificate.upper)

    def test_parallel(self):
        serial   = sweep_special(3, 2, 4, jobs=1)
        parallel = sweep_special(3, 2, 4, jobs=4)
        self.assertEqual([c.to_dict() for c in serial],
            [c.to_dict() for c in parallel])

class LevelExponentTest(unittest.TestCase):
    def test_identity(self):
        self.assertEqual(level_exponent(3), 3)
        with self.assertRaises(ValueError):
            level_exponent(-1)
