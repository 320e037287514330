from dataclasses import dataclass
from typing import Tuple

import numpy as np

from cohomology.models import Cochain
from groups.models import GroupSpec
from lattices.models import GLattice, LatticeMap
from lattices.services import ExactSequence


@dataclass(frozen=True, eq=False)
class CanonicalData:
    """φ, c₂ = δφ и векторы uᵢⱼ, bᵢ для группы G."""
    group: GroupSpec
    sequence: ExactSequence
    phi: Cochain
    c2: Cochain
    u: Tuple[Tuple[np.ndarray, ...], ...]
    b: Tuple[np.ndarray, ...]

    @property
    def A2(self) -> GLattice:
        return self.sequence.A2

    @property
    def P2(self) -> GLattice:
        return self.sequence.P2

    @property
    def IG(self) -> GLattice:
        return self.sequence.IG

    def to_dict(self) -> dict:
        r = self.group.r
        return {
            'group': self.group.to_dict(),
            'P2': self.P2.to_dict(),
            'A2': self.A2.to_dict(),
            'A2_basis_in_P2': self.sequence.i.matrix.tolist(),
            'IG': self.IG.to_dict(),
            'phi': self.phi.to_dict(),
            'c2': self.c2.to_dict(),
            'u': {f'{i + 1},{j + 1}': [int(x) for x in self.u[i][j]] for i in range(r) for j in range(r)},
            'b': [[int(x) for x in v] for v in self.b],
        }


@dataclass(frozen=True, eq=False)
class TwistedLattice:
    """M*: A₂(G) ⊕ I[G] с действием, скрученным коциклом p·c₂."""
    underlying: GLattice
    split: Tuple[int, int]
    c2_ref: Cochain
    p: int
    twisted: bool = True

    @property
    def rank(self) -> int:
        return self.underlying.rank

    def include_a2(self, a) -> np.ndarray:
        """(a, 0)."""
        v = self.underlying.zero()
        v[:self.split[0]] = a
        return v

    def projection(self, target: GLattice) -> LatticeMap:
        """M* → I[G], (a, x) ↦ x."""
        P = np.zeros((self.split[1], self.rank), dtype=object)
        for k in range(self.split[1]):
            P[k, self.split[0] + k] = 1
        return LatticeMap(P, self.underlying, target)

    def to_dict(self) -> dict:
        return {
            'lattice': self.underlying.to_dict(),
            'split': list(self.split),
            'p': self.p,
            'twisted': self.twisted,
        }
