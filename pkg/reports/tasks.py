import logging

from celery import shared_task

from groups.models import GroupSpec
from .acceptance import run_criterion
from .services import analyze

logger = logging.getLogger(__name__)


@shared_task(name='reports.tasks.rank_three_strong')
def rank_three_strong(level='fast', seed=None):
    return run_criterion('rank_three_strong', level, seed)


@shared_task(name='reports.tasks.p2_degeneracy')
def p2_degeneracy(level='fast', seed=None):
    return run_criterion('p2_degeneracy', level, seed)


@shared_task(name='reports.tasks.odd_p_nondegeneracy')
def odd_p_nondegeneracy(level='fast', seed=None):
    return run_criterion('odd_p_nondegeneracy', level, seed)


@shared_task(name='reports.tasks.cohomology_ledger')
def cohomology_ledger(level='fast', seed=None):
    return run_criterion('cohomology_ledger', level, seed)


@shared_task(name='reports.tasks.crossed_product_coherence')
def crossed_product_coherence(level='fast', seed=None):
    return run_criterion('crossed_product_coherence', level, seed)


@shared_task(name='reports.tasks.equivalence_suite')
def equivalence_suite(level='fast', seed=None):
    return run_criterion('equivalence_suite', level, seed)


@shared_task(name='reports.tasks.valuation_facts')
def valuation_facts(level='fast', seed=None):
    return run_criterion('valuation_facts', level, seed)


@shared_task(name='reports.tasks.chow_identities')
def chow_identities(level='fast', seed=None):
    return run_criterion('chow_identities', level, seed)


@shared_task(name='reports.tasks.oracle_suite')
def oracle_suite(level='fast', seed=None):
    return run_criterion('oracle_suite', level, seed)


@shared_task(name='reports.tasks.determinism')
def determinism(level='fast', seed=None, golden_dir=None, update_golden=False):
    return run_criterion('determinism', level, seed, golden_dir=golden_dir, update_golden=update_golden)


@shared_task(name='reports.tasks.analyze')
def analyze_task(p, orders, model='mstar', bound=None):
    logger.info(f"[ANALYZE] Задача для p={p}, группа {orders}, модель {model}")
    return analyze(GroupSpec(p, tuple(orders)), model, bound).to_dict()


# Порядок выдачи результатов verify
CRITERION_TASKS = [
    rank_three_strong,
    p2_degeneracy,
    odd_p_nondegeneracy,
    cohomology_ledger,
    crossed_product_coherence,
    equivalence_suite,
    valuation_facts,
    chow_identities,
    oracle_suite,
    determinism,
]
