"""Report records shared by every check and by the CLI."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any

SCHEMA_VERSION = "1.0"

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


def fmt_number(x, digits: int = 30) -> str:
    """Decimal string for JSON/CSV output; exact for integers and fractions."""
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    try:
        import mpmath

        if isinstance(x, mpmath.mpf):
            return mpmath.nstr(x, digits, strip_zeros=False)
        if isinstance(x, mpmath.ctx_iv.ivmpf):
            return f"[{mpmath.nstr(mpmath.mpf(x.a), digits)}, {mpmath.nstr(mpmath.mpf(x.b), digits)}]"
    except ImportError:  # pragma: no cover
        pass
    if isinstance(x, float):
        return repr(x)
    return str(x)


@dataclass
class Witness:
    expression: str
    value: str
    predicate: str = ""
    holds: bool = True
    precision_bits: int | None = None


@dataclass
class PaperCheckReport:
    """Outcome of one claim check.

    ``status`` is ``pass`` only if every witness holds; ``inconclusive`` is
    used when certification ran out of budget without finding a violation.
    """

    claim_id: str
    anchor: str
    status: str = PASS
    witnesses: list[Witness] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)
    seed: int | None = None
    precision_bits: int | None = None
    kind: str = "claim-check"

    def add(self, expression: str, value, predicate: str = "", holds: bool = True,
            precision_bits: int | None = None) -> bool:
        if not isinstance(value, str):
            value = fmt_number(value)
        self.witnesses.append(Witness(expression, value, predicate, bool(holds), precision_bits))
        if not holds:
            self.status = FAIL
        return bool(holds)

    def mark_inconclusive(self):
        if self.status == PASS:
            self.status = INCONCLUSIVE

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        d = asdict(self)
        d["type"] = "PaperCheckReport"
        d["schema_version"] = SCHEMA_VERSION
        return d
