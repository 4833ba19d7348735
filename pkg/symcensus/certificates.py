from typing import Any, Dict, List, Optional

class InvariantViolation(Exception):
    def __init__(self, certificate: "Certificate"):
        super().__init__(certificate.describe())
        self.certificate = certificate
class ConductorBoundViolation(InvariantViolation):
    pass

class Certificate(object):
    """
    Record of one checked identity or bound. Fields that a given check has
    no use for stay None and are left out of `to_dict`.
    """
    check:   Optional[str] = None
    subject: Optional[str] = None

    lhs: Optional[int] = None
    rhs: Optional[int] = None

    value: Optional[int] = None
    lower: Optional[int] = None
    upper: Optional[int] = None

    holds: Optional[bool] = None

    flags:   Optional[List[str]]      = None
    details: Optional[Dict[str, Any]] = None

    def __init__(self, check: str, subject: str, **fields: Any):
        self.check   = check
        self.subject = subject
        for key, value in fields.items():
            if not hasattr(Certificate, key):
                raise AttributeError(f"certificates have no field {key!r}")
            setattr(self, key, value)

    def __repr__(self) -> str:
        return f"Certificate({self.describe()})"

    def describe(self) -> str:
        parts = [f"{self.check}: {self.subject}"]
        if self.lhs is not None or self.rhs is not None:
            parts.append(f"lhs={self.lhs} rhs={self.rhs}")
        if self.value is not None:
            parts.append(f"value={self.value}")
        if self.lower is not None or self.upper is not None:
            parts.append(f"bounds=[{self.lower}, {self.upper}]")
        if self.flags:
            parts.append("flags=" + ",".join(self.flags))
        return " ".join(parts)

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {}
        for key in ["check", "subject", "lhs", "rhs", "value", "lower",
                "upper", "holds", "flags", "details"]:
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        return out

    def flag(self, name: str):
        if self.flags is None:
            self.flags = []
        self.flags.append(name)

def require(
        certificate: Certificate,
        exception:   type = InvariantViolation) -> Certificate:
    if not certificate.holds:
        raise exception(certificate)
    return certificate
