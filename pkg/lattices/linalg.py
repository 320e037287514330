"""Точная целочисленная линейная алгебра на numpy-массивах dtype=object.

Элементы матриц - обычные int Python, поэтому промежуточные значения
не переполняются. Формы Смита и Эрмита, ядра и решение A x = t над ℤ.
"""
import logging
from dataclasses import dataclass
from math import gcd, lcm
from typing import List, Optional, Sequence

import numpy as np
from sympy import GF, ZZ
from sympy.polys.matrices import DomainMatrix

from .exceptions import InternalRankMismatch, NoSolution

logger = logging.getLogger(__name__)

_to_int = np.frompyfunc(int, 1, 1)


def integer_matrix(data, rows: Optional[int] = None, cols: Optional[int] = None) -> np.ndarray:
    """Копия data как двумерная матрица с элементами int."""
    M = np.array(data, dtype=object)
    if M.ndim == 2:
        return _to_int(M).astype(object) if M.size else np.zeros(M.shape, dtype=object)
    if M.size == 0:
        return np.zeros((rows or 0, cols or 0), dtype=object)
    M = M.reshape(1, -1) if rows is None else M.reshape(rows, -1)
    return _to_int(M).astype(object)


def integer_vector(data) -> np.ndarray:
    v = np.array(data, dtype=object).reshape(-1)
    if v.size == 0:
        return np.zeros(0, dtype=object)
    return _to_int(v).astype(object)


def zeros(m: int, n: Optional[int] = None) -> np.ndarray:
    if n is None:
        return np.zeros(m, dtype=object)
    return np.zeros((m, n), dtype=object)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=object)


def is_zero(a: np.ndarray) -> bool:
    return not np.any(a != 0)


def _diagonalize(A: np.ndarray, row_blocks: Sequence[np.ndarray] = (), track_v=True, track_v_inv=False):
    """Приведение к форме Смита.

    Строчные операции применяются также к каждой матрице из row_blocks
    (для U передаётся единичная матрица), столбцовые накапливаются в V
    и, при необходимости, в V⁻¹. Возвращает (D, blocks, V, V_inv, rank).
    """
    D = A.copy()
    m, n = D.shape
    blocks = [B.copy() for B in row_blocks]
    V = identity(n) if track_v else None
    Vi = identity(n) if track_v_inv else None

    def swap_rows(i, j):
        if i != j:
            D[[i, j]] = D[[j, i]]
            for B in blocks:
                B[[i, j]] = B[[j, i]]

    def swap_cols(i, j):
        if i != j:
            D[:, [i, j]] = D[:, [j, i]]
            if V is not None:
                V[:, [i, j]] = V[:, [j, i]]
            if Vi is not None:
                Vi[[i, j]] = Vi[[j, i]]

    t = 0
    while t < min(m, n):
        sub = D[t:, t:]
        nz = np.argwhere(sub != 0)
        if not len(nz):
            break
        sizes = [abs(sub[i, j]) for i, j in nz]
        i, j = nz[min(range(len(sizes)), key=sizes.__getitem__)]
        swap_rows(t, t + int(i))
        swap_cols(t, t + int(j))

        while True:
            pivot = D[t, t]
            q = D[t + 1:, t] // pivot
            hit = np.nonzero(q)[0]
            if hit.size:
                qs = q[hit]
                rows = hit + t + 1
                D[rows] -= np.outer(qs, D[t])
                for B in blocks:
                    B[rows] -= np.outer(qs, B[t])
            q = D[t, t + 1:] // pivot
            hit = np.nonzero(q)[0]
            if hit.size:
                qs = q[hit]
                cols = hit + t + 1
                D[:, cols] -= np.outer(D[:, t], qs)
                if V is not None:
                    V[:, cols] -= np.outer(V[:, t], qs)
                if Vi is not None:
                    Vi[t] += qs.dot(Vi[cols])

            # остатки в строке и столбце ведущего элемента
            candidates = [(abs(D[t + 1 + k, t]), 0, t + 1 + k) for k in np.nonzero(D[t + 1:, t])[0]]
            candidates += [(abs(D[t, t + 1 + k]), 1, t + 1 + k) for k in np.nonzero(D[t, t + 1:])[0]]
            if candidates:
                _, kind, idx = min(candidates)
                if kind == 0:
                    swap_rows(t, int(idx))
                else:
                    swap_cols(t, int(idx))
                continue

            if abs(pivot) != 1 and t + 1 < m and t + 1 < n:
                bad = np.argwhere(D[t + 1:, t + 1:] % pivot != 0)
                if len(bad):
                    src = t + 1 + int(bad[0][0])
                    D[t] += D[src]
                    for B in blocks:
                        B[t] += B[src]
                    continue
            break

        if D[t, t] < 0:
            D[t] = -D[t]
            for B in blocks:
                B[t] = -B[t]
        t += 1
    return D, blocks, V, Vi, t


@dataclass
class SmithForm:
    U: np.ndarray
    D: np.ndarray
    V: np.ndarray
    rank: int

    @property
    def invariant_factors(self) -> List[int]:
        return [int(self.D[i, i]) for i in range(self.rank)]


def smith_normal_form(A) -> SmithForm:
    """U A V = D, U и V унимодулярны, dᵢ | dᵢ₊₁; равенство перепроверяется."""
    A = integer_matrix(A)
    m, _ = A.shape
    D, (U,), V, _, rank = _diagonalize(A, row_blocks=(identity(m),))
    if not (U.dot(A).dot(V) == D).all():
        raise InternalRankMismatch("проверка U·A·V = D не прошла")
    return SmithForm(U=U, D=D, V=V, rank=rank)


def matrix_rank(A) -> int:
    A = integer_matrix(A)
    return _diagonalize(A, track_v=False)[4]


def rank_mod_p(A, p: int) -> int:
    """Ранг над F_p."""
    A = integer_matrix(A)
    if A.size == 0:
        return 0
    return DomainMatrix.from_list(A.tolist(), ZZ).convert_to(GF(p)).rank()


def hermite_normal_form(A) -> np.ndarray:
    """Строчная форма Эрмита: ступенчатый базис решётки строк A без нулевых строк."""
    H = integer_matrix(A)
    m, n = H.shape
    row = 0
    for col in range(n):
        if row >= m:
            break
        while True:
            nz = [i for i in range(row, m) if H[i, col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(H[i, col]))
            if piv != row:
                H[[row, piv]] = H[[piv, row]]
            others = [i for i in range(row + 1, m) if H[i, col] != 0]
            if not others:
                break
            for i in others:
                H[i] -= (H[i, col] // H[row, col]) * H[row]
        if H[row, col] == 0:
            continue
        if H[row, col] < 0:
            H[row] = -H[row]
        for i in range(row):
            q = H[i, col] // H[row, col]
            if q:
                H[i] -= q * H[row]
        row += 1
    return H[:row]


def kernel_basis(A) -> np.ndarray:
    """Столбцы - базис целочисленного ядра A в форме Эрмита."""
    A = integer_matrix(A)
    m, n = A.shape
    if m == 0:
        return identity(n)
    _, _, V, _, rank = _diagonalize(A)
    K = V[:, rank:]
    if K.shape[1] == 0:
        return zeros(n, 0)
    return hermite_normal_form(K.T).T


def kernel_with_coordinates(A):
    """Базис ядра K и матрица L с L·x = координаты x в K для x из ядра."""
    A = integer_matrix(A)
    m, n = A.shape
    if m == 0:
        return identity(n), identity(n)
    _, _, V, Vi, rank = _diagonalize(A, track_v_inv=True)
    return V[:, rank:], Vi[rank:]


class IntegerSystem:
    """Форма Смита матрицы A, посчитанная один раз для многих правых частей."""

    def __init__(self, A):
        self.A = integer_matrix(A)
        m, n = self.A.shape
        D, (U,), V, _, rank = _diagonalize(self.A, row_blocks=(identity(m),))
        self.U, self.D, self.V, self.rank = U, D, V, rank
        self.diagonal = [D[i, i] for i in range(rank)]
        logger.debug(f"[LINALG] Форма Смита {m}x{n}, ранг {rank}")

    @property
    def shape(self):
        return self.A.shape

    def _reduce(self, t) -> np.ndarray:
        t = integer_vector(t)
        if t.shape[0] != self.A.shape[0]:
            raise ValueError(f"длина правой части {t.shape[0]} не равна {self.A.shape[0]}")
        return self.U.dot(t) if t.size else t

    def solve(self, t) -> np.ndarray:
        """Некоторое x с A x = t; NoSolution, если его нет."""
        target = integer_vector(t)
        s = self._reduce(target)
        m, n = self.A.shape
        y = zeros(n)
        for i, d in enumerate(self.diagonal):
            if s[i] % d:
                raise NoSolution(f"не делится на инвариантный множитель {d}")
            y[i] = s[i] // d
        if not is_zero(s[self.rank:]):
            raise NoSolution("правая часть вне образа")
        x = self.V.dot(y) if n else y
        if not (self.A.dot(x) == target).all():
            raise InternalRankMismatch("найденное решение не прошло подстановку")
        return x

    def contains(self, t) -> bool:
        try:
            self.solve(t)
        except NoSolution:
            return False
        return True

    def cokernel_order(self, t) -> Optional[int]:
        """Наименьшее k ≥ 1 с k·t в образе A; None, если такого нет."""
        s = self._reduce(t)
        if not is_zero(s[self.rank:]):
            return None
        k = 1
        for i, d in enumerate(self.diagonal):
            k = lcm(k, d // gcd(d, s[i]))
        return int(k)

    def solve_columns(self, T) -> np.ndarray:
        T = integer_matrix(T, rows=self.A.shape[0])
        cols = [self.solve(T[:, j]) for j in range(T.shape[1])]
        if not cols:
            return zeros(self.A.shape[1], 0)
        return np.stack(cols, axis=1)


def solve_integer_system(A, t) -> np.ndarray:
    return IntegerSystem(A).solve(t)


def invariant_factors_of_quotient(C, ambient_rank: int):
    """(нетривиальные инвариантные множители, свободный ранг) для ℤ^ambient / im C."""
    C = integer_matrix(C, rows=ambient_rank)
    if C.shape[1] == 0 or ambient_rank == 0:
        return [], ambient_rank
    D, _, _, _, rank = _diagonalize(C, track_v=False)
    factors = [int(D[i, i]) for i in range(rank) if D[i, i] != 1]
    return factors, ambient_rank - rank
