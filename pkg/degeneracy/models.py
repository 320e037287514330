from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from groups.models import GroupElement

YES = 'yes'
NO_MONOMIAL_WITNESS = 'no_monomial_witness'


def _ints(v) -> list:
    return [int(x) for x in v]


@dataclass(frozen=True, eq=False)
class DegeneracyWitness:
    """u_{m̄,n̄} = (σ^m̄ − 1)a + (σ^n̄ − 1)b."""
    m: GroupElement
    n: GroupElement
    a: np.ndarray
    b: np.ndarray

    def to_dict(self) -> dict:
        return {'m': list(self.m.exps), 'n': list(self.n.exps), 'a': _ints(self.a), 'b': _ints(self.b)}


@dataclass(frozen=True, eq=False)
class StrongWitness:
    """u_{i,m̄} = (σ^m̄ − 1)kᵢ + (σᵢ − 1)l для всех i."""
    m: GroupElement
    l: np.ndarray
    k: Tuple[np.ndarray, ...]

    def to_dict(self) -> dict:
        return {'m': list(self.m.exps), 'l': _ints(self.l), 'k': [_ints(v) for v in self.k]}


@dataclass(frozen=True, eq=False)
class DegeneracyVerdict:
    kind: str
    answer: str
    witness: Optional[Union[DegeneracyWitness, StrongWitness]] = None
    pairs_examined: int = 0

    @property
    def is_yes(self) -> bool:
        return self.answer == YES

    def to_dict(self) -> dict:
        return {
            'kind': self.kind,
            'answer': self.answer,
            'witness': self.witness.to_dict() if self.witness is not None else None,
            'pairs_examined': self.pairs_examined,
        }
