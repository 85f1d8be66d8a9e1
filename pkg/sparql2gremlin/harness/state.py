"""
Differential check results and callback definitions
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

from ..core.solutions import SolutionTable
from ..gremlin.steps import Traversal


class CheckStatus(str, Enum):
    PASS = "PASS"
    MISMATCH = "MISMATCH"
    ERROR = "ERROR"


class CompareMode(str, Enum):
    """How the two tables are compared: row sequences under ORDER BY, row multisets otherwise"""
    SEQUENCE = "sequence"
    MULTISET = "multiset"


@dataclass
class CheckOutcome:
    """Result of running one query through the engine path and the oracle path"""
    status: CheckStatus
    query_text: str
    mode: CompareMode = CompareMode.MULTISET
    traversal: Optional[Traversal] = None
    engine: Optional[SolutionTable] = None
    oracle: Optional[SolutionTable] = None
    diff: str = ""
    code: Optional[str] = None  # error code when status is ERROR
    message: str = ""

    @property
    def passed(self) -> bool:
        return self.status is CheckStatus.PASS


@dataclass
class HarnessCallbacks:
    """Callbacks for progress reporting while checks run"""
    on_entry_start: Optional[Callable[[str], None]] = None  # (entry label)
    on_entry_result: Optional[Callable[[str, CheckOutcome], None]] = None  # (entry label, outcome)
    on_mismatch: Optional[Callable[[str, CheckOutcome], None]] = None


@dataclass
class ClassTally:
    """Per feature class counts collected by the corpus runner and the fuzzer"""
    passed: dict[str, int] = field(default_factory=dict)
    failed: dict[str, int] = field(default_factory=dict)

    def record(self, feature: str, outcome: CheckOutcome):
        bucket = self.passed if outcome.passed else self.failed
        bucket[feature] = bucket.get(feature, 0) + 1

    @property
    def total(self) -> int:
        return sum(self.passed.values()) + sum(self.failed.values())

    @property
    def failures(self) -> int:
        return sum(self.failed.values())
