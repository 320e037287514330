import itertools
import logging
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, List, Optional, Sequence

from django.conf import settings

from .exceptions import BoundExceeded
from .models import GroupElement, GroupSpec, Subgroup

logger = logging.getLogger(__name__)


def resolve_bound(bound: Optional[int], setting: str = 'ACP_ENUMERATION_BOUND') -> int:
    """Явная граница или значение из настроек."""
    if bound is not None:
        return int(bound)
    return int(getattr(settings, setting))


def check_group_bound(G: GroupSpec, bound: Optional[int] = None):
    limit = resolve_bound(bound)
    if G.order > limit:
        raise BoundExceeded(f"|G| для группы ({G.label()})", G.order, limit)


@lru_cache(maxsize=64)
def _elements(G: GroupSpec) -> tuple:
    return tuple(GroupElement(exps) for exps in itertools.product(*(range(n) for n in G.orders)))


def enumerate_elements(G: GroupSpec, bound: Optional[int] = None) -> List[GroupElement]:
    """Все элементы G в лексикографическом порядке показателей."""
    check_group_bound(G, bound)
    return list(_elements(G))


def element_order(G: GroupSpec, g: GroupElement) -> int:
    return lcm(*(n // gcd(m, n) for m, n in zip(g.exps, G.orders)))


def _closure(G: GroupSpec, gens: Iterable[GroupElement]) -> set:
    gens = [G.element(g.exps) for g in gens]
    found = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.add(x, g)
                if y not in found:
                    found.add(y)
                    nxt.append(y)
        frontier = nxt
    return found


def _minimal_generators(G: GroupSpec, elements: Sequence[GroupElement]) -> tuple:
    gens = []
    span = {G.identity}
    for g in elements:
        if g not in span:
            gens.append(g)
            span = _closure(G, gens)
    return tuple(gens)


def _make_subgroup(G: GroupSpec, elements: set, generators=None) -> Subgroup:
    ordered = tuple(sorted(elements))
    cyclic = any(element_order(G, g) == len(ordered) for g in ordered)
    if generators is None:
        generators = _minimal_generators(G, ordered)
    return Subgroup(group=G, elements=ordered, generators=tuple(generators), is_cyclic=cyclic)


def subgroup_generated(G: GroupSpec, gens: Sequence[GroupElement]) -> Subgroup:
    """Замыкание множества gens по сложению и признак цикличности."""
    if not gens:
        raise ValueError("нужен хотя бы один порождающий элемент")
    elements = _closure(G, gens)
    return _make_subgroup(G, elements, generators=[G.element(g.exps) for g in gens])


@lru_cache(maxsize=32)
def _subgroups(G: GroupSpec) -> tuple:
    elements = _elements(G)
    trivial = frozenset({G.identity})
    seen = {trivial}
    queue = [trivial]
    while queue:
        current = queue.pop()
        for g in elements:
            if g in current:
                continue
            grown = frozenset(_closure(G, list(current) + [g]))
            if grown not in seen:
                seen.add(grown)
                queue.append(grown)
    subgroups = [_make_subgroup(G, set(s)) for s in seen]
    subgroups.sort(key=lambda H: (H.order, [G.index(g) for g in H.elements]))
    logger.info(f"[GROUPS] Для ({G.label()}) найдено подгрупп: {len(subgroups)}")
    return tuple(subgroups)


def enumerate_subgroups(G: GroupSpec, bound: Optional[int] = None) -> List[Subgroup]:
    """Каждая подгруппа G ровно один раз, от тривиальной к G."""
    check_group_bound(G, bound)
    return list(_subgroups(G))


def elements_of_order(G: GroupSpec, k: int, bound: Optional[int] = None) -> List[GroupElement]:
    return [g for g in enumerate_elements(G, bound) if element_order(G, g) == k]


@lru_cache(maxsize=64)
def whole_group(G: GroupSpec) -> Subgroup:
    return _make_subgroup(G, set(_elements(G)), generators=[G.generator(i) for i in range(G.r)])


def trivial_subgroup(G: GroupSpec) -> Subgroup:
    return Subgroup(group=G, elements=(G.identity,), generators=(), is_cyclic=True)
