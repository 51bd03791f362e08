from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Tuple


PASS = "pass"
FAIL = "fail"
INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class CheckRecord:
    """Resultado de una comprobación en un vértice o arista"""

    check: str
    location: str
    status: str
    witness: Tuple[Tuple[str, str], ...] = ()

    @classmethod
    def of(cls, check: str, location: str, status: str, **witness) -> "CheckRecord":
        return cls(check, location, status, tuple(sorted((key, str(value)) for key, value in witness.items())))

    def to_dict(self) -> Dict:
        return {
            "check": self.check,
            "location": self.location,
            "status": self.status,
            "witness": dict(self.witness)
        }


@dataclass(frozen=True)
class ValidationReport:
    """Lista ordenada de comprobaciones; la unión es asociativa"""

    records: Tuple[CheckRecord, ...] = field(default_factory=tuple)

    def __post_init__(self):
        unique = {(record.check, record.location): record for record in self.records}
        ordered = sorted(unique.values(), key=lambda record: (record.check, record.location))
        object.__setattr__(self, "records", tuple(ordered))

    @classmethod
    def from_records(cls, records: Iterable[CheckRecord]) -> "ValidationReport":
        return cls(tuple(records))

    def merge(self, other: "ValidationReport") -> "ValidationReport":
        return ValidationReport(self.records + other.records)

    @property
    def passed(self) -> bool:
        return not self.failures()

    def failures(self) -> List[CheckRecord]:
        return [record for record in self.records if record.status == FAIL]

    def indeterminate(self) -> List[CheckRecord]:
        return [record for record in self.records if record.status == INDETERMINATE]

    def by_check(self, check: str) -> List[CheckRecord]:
        return [record for record in self.records if record.check == check]

    def find(self, check: str, location: str) -> CheckRecord:
        for record in self.records:
            if record.check == check and record.location == location:
                return record
        raise KeyError(f"No hay registro {check} en {location}")

    def summary(self) -> Dict[str, int]:
        counts = {PASS: 0, FAIL: 0, INDETERMINATE: 0}
        for record in self.records:
            counts[record.status] += 1
        return counts

    def to_dict(self) -> Dict:
        return {
            "passed": self.passed,
            "summary": self.summary(),
            "records": [record.to_dict() for record in self.records]
        }
