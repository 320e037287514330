from dataclasses import dataclass, field
from typing import List

THEOREM_CITED = 'THEOREM-CITED'


@dataclass(frozen=True)
class Conclusion:
    """Утверждение теоремы при проверенных гипотезах; само не вычисляется."""
    statement: str
    citation: str
    hypotheses: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            'kind': THEOREM_CITED,
            'statement': self.statement,
            'citation': self.citation,
            'hypotheses': list(self.hypotheses),
        }


@dataclass(frozen=True)
class AnalysisReport:
    input: dict
    computed: dict
    conclusions: List[Conclusion]
    schema_version: int

    def to_dict(self) -> dict:
        return {
            'schema_version': self.schema_version,
            'input': dict(self.input),
            'computed': dict(self.computed),
            'conclusions': [c.to_dict() for c in self.conclusions],
        }
