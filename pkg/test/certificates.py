import unittest

from symcensus.certificates import (Certificate, ConductorBoundViolation,
    InvariantViolation, require)
from symcensus.decorators   import handler_decorator

class CertificateTest(unittest.TestCase):
    def test_to_dict(self):
        certificate = Certificate("sym-conductor", "pi", value=3, lower=1,
            upper=8, holds=True)
        self.assertEqual(certificate.to_dict(), {"check": "sym-conductor",
            "subject": "pi", "value": 3, "lower": 1, "upper": 8,
            "holds": True})

    def test_unknown_field(self):
        with self.assertRaises(AttributeError):
            Certificate("check", "subject", colour="red")

    def test_flag(self):
        certificate = Certificate("check", "subject", holds=True)
        self.assertIsNone(certificate.flags)
        certificate.flag("unramified-lift")
        self.assertEqual(certificate.flags, ["unramified-lift"])
        self.assertIn("flags=unramified-lift", certificate.describe())

    def test_describe(self):
        certificate = Certificate("norm-conductor", "chi", lhs=2, rhs=2)
        self.assertEqual(certificate.describe(),
            "norm-conductor: chi lhs=2 rhs=2")

class RequireTest(unittest.TestCase):
    def test_holds(self):
        certificate = Certificate("check", "subject", holds=True)
        self.assertIs(require(certificate), certificate)

    def test_fails(self):
        certificate = Certificate("check", "subject", holds=False)
        with self.assertRaises(InvariantViolation) as context:
            require(certificate)
        self.assertIs(context.exception.certificate, certificate)

    def test_exception_type(self):
        certificate = Certificate("check", "subject", value=9, upper=8,
            holds=False)
        with self.assertRaises(ConductorBoundViolation):
            require(certificate, ConductorBoundViolation)

class HandlerDecoratorTest(unittest.TestCase):
    def test_register(self):
        handlers = {}
        _handler = handler_decorator(handlers)
        @_handler("ps")
        def _ps():
            return 1
        self.assertIs(handlers["ps"], _ps)

    def test_duplicate(self):
        handlers = {}
        _handler = handler_decorator(handlers)
        _handler("ps")(lambda: 1)
        with self.assertRaises(ValueError):
            _handler("ps")(lambda: 2)
