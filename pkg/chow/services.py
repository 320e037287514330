"""Тождества в K(ℙ) через усечённые многочлены и таблица вердиктов о кручении CH²."""
import logging
import math

from sympy import Poly, isprime

from .exceptions import ContradictionDetected, InvalidRegime
from .models import CYCLIC_OF_ORDER_P, TORSION_FREE, UNKNOWN, FiltrationElement, TorsionReport, t

logger = logging.getLogger(__name__)

CITED_FILTRATION = 'x ∈ T³ follows from y ∈ T³ by transfer (cited, not verified)'


def _check_regime(p: int, n: int):
    if not isprime(p):
        raise InvalidRegime(f"{p} не простое")
    low = 3 if p == 2 else 2
    if n < low:
        raise InvalidRegime(f"при p = {p} формулы для x требуют n ≥ {low}, дано n = {n}")


def _truncation(p: int, n: int) -> int:
    """N + 1 = pⁿ."""
    return p ** n - 1


def _square_of_power_minus_one(p: int) -> Poly:
    """(ξᵖ − 1)² при ξ = 1 + t."""
    inner = Poly((1 + t) ** p - 1, t, domain='ZZ')
    return inner * inner


def transfer_scalar(p: int, n: int) -> int:
    """Степень подполя, на которую умножает трансфер: p^{n−2}, для p = 2 это 2^{n−3}."""
    _check_regime(p, n)
    return 2 ** (n - 3) if p == 2 else p ** (n - 2)


def generator_x(p: int, n: int) -> FiltrationElement:
    _check_regime(p, n)
    square = Poly(t ** 2, t, domain='ZZ')
    if p == 2:
        poly = 2 ** (n - 1) * square - 2 ** (n - 3) * _square_of_power_minus_one(2)
    else:
        poly = p ** n * square - p ** (n - 2) * _square_of_power_minus_one(p)
    return FiltrationElement.from_poly(poly, _truncation(p, n))


def generator_y(p: int, n: int = None) -> FiltrationElement:
    """p²(ξ − 1)² − (ξᵖ − 1)²; усечение по умолчанию для наименьшего допустимого n."""
    if n is None:
        n = 3 if p == 2 else 2
    _check_regime(p, n)
    poly = p ** 2 * Poly(t ** 2, t, domain='ZZ') - _square_of_power_minus_one(p)
    return FiltrationElement.from_poly(poly, _truncation(p, n))


def transfer_identity_check(p: int, n: int) -> bool:
    x = generator_x(p, n)
    y = generator_y(p, n)
    ok = transfer_scalar(p, n) * y == x
    if not ok:
        logger.error(f"[CHOW] p={p}, n={n}: трансфер y не совпал с x")
    return ok


def tadic_degree(e: FiltrationElement) -> float:
    return e.degree()


def regime_table(p: int, n: int) -> dict:
    x = generator_x(p, n)
    y = generator_y(p, n)
    dx, dy = tadic_degree(x), tadic_degree(y)
    return {
        'p': p,
        'n': n,
        'x': x.to_dict(),
        'y': y.to_dict(),
        'transfer_scalar': transfer_scalar(p, n),
        'transfer_identity': transfer_identity_check(p, n),
        'tadic_degree': {
            'x': 'inf' if dx == math.inf else dx,
            'y': 'inf' if dy == math.inf else dy,
        },
        'filtration_claim': CITED_FILTRATION,
        'provenance': 'chow.regime_table',
    }


def _fire(rule: str, verdict: str, citation: str) -> dict:
    return {'rule': rule, 'verdict': verdict, 'citation': citation}


def ch2_torsion_verdict(p: int, n: int, generic: bool = False, degenerate: bool = False,
                        strongly_degenerate: bool = False, r: int = 2, p2: bool = False) -> TorsionReport:
    """Вердикт о Tors CH² многообразия Севери-Брауэра алгебры индекса pⁿ.

    Правила цитируются, а не выводятся. Одновременное срабатывание правил
    «без кручения» и «порядок p» - противоречие. p2 требует формул для p = 2.
    """
    if not isprime(p) or n < 1:
        raise InvalidRegime(f"p = {p}, n = {n}")
    if p2 and p != 2:
        raise InvalidRegime(f"формулы для p = 2 запрошены при p = {p}")
    reasons = []
    if n == 1 or (p == 2 and n <= 2):
        reasons.append(_fire(
            'index_p_or_divides_4', TORSION_FREE,
            'cited: Tors CH² is trivial when the index is p or divides 4',
        ))
    if p != 2 and r >= 2 and degenerate:
        reasons.append(_fire(
            'odd_p_degenerate', TORSION_FREE,
            'cited: CH² is torsion free for odd p when the matrix u is degenerate',
        ))
    if p == 2 and r >= 3 and strongly_degenerate:
        reasons.append(_fire(
            'p2_strongly_degenerate', TORSION_FREE,
            'cited: CH² is torsion free for p = 2, r ≥ 3 when u is strongly degenerate',
        ))
    if generic and ((p != 2 and n >= 2) or (p == 2 and n >= 3)):
        reasons.append(_fire(
            'generic_exponent_p', CYCLIC_OF_ORDER_P,
            'cited: Tors CH² is cyclic of order p for a generic algebra of index pⁿ and exponent p',
        ))

    verdicts = {reason['verdict'] for reason in reasons}
    if verdicts == {TORSION_FREE, CYCLIC_OF_ORDER_P}:
        logger.warning(f"[CHOW] p={p}, n={n}: противоречивые правила {[x['rule'] for x in reasons]}")
        raise ContradictionDetected(
            'contradiction: a generic algebra of exponent p cannot have a degenerate matrix u, '
            'hence such an algebra is indecomposable',
            reasons,
        )
    if TORSION_FREE in verdicts:
        return TorsionReport(TORSION_FREE, reasons)
    if CYCLIC_OF_ORDER_P in verdicts:
        return TorsionReport(CYCLIC_OF_ORDER_P, reasons)
    return TorsionReport(UNKNOWN, [_fire('none', UNKNOWN, 'no cited rule applies')])
