"""Сборка отчётов модулей и конвейер analyze."""
import json
import logging
from math import lcm
from typing import Optional

from django.conf import settings

from canonical.services import build_canonical, build_mstar, mstar_class_order
from chow.exceptions import ContradictionDetected, InvalidRegime
from chow.services import ch2_torsion_verdict, regime_table
from crossedproducts.services import brauer_class_report, build_model, validate_presentation
from degeneracy.services import (
    centralizer_split_hint, elementary_subgroup_hint, is_degenerate, is_strongly_degenerate,
    reduce_witness_to_order_p, strong_witness_central_power,
)
from groups.models import GroupSpec
from valuations.models import PowerSeriesACP
from valuations.services import homogeneous_ppower_central_search, semi_ramification_report
from .models import AnalysisReport, Conclusion

logger = logging.getLogger(__name__)


def canonical_report(G: GroupSpec, model: str, bound: Optional[int] = None) -> dict:
    data = build_canonical(G, bound)
    report = {'canonical': data.to_dict(), 'provenance': 'canonical.build_canonical'}
    if model == 'mstar':
        report['mstar'] = build_mstar(G, bound=bound).to_dict()
    return report


def class_order_report(G: GroupSpec, model: str, bound: Optional[int] = None) -> dict:
    """Порядок класса алгебры в H²(G, M); для M* через ограничения на ⟨σᵢ⟩."""
    if model == 'mstar':
        return {
            'order': mstar_class_order(build_mstar(G, bound=bound), bound),
            'h1_trivial': None,
            'interpretation': 'lattice_class_order_only',
            'provenance': 'canonical.mstar_class_order',
        }
    return brauer_class_report(build_model(G, model, bound), bound)


def crossed_product_report(G: GroupSpec, model: str, bound: Optional[int] = None) -> dict:
    P = build_model(G, model, bound)
    return {
        'presentation': P.to_dict(),
        'validation': validate_presentation(P).to_dict(),
        'class': class_order_report(G, model, bound),
        'provenance': 'crossedproducts.validate_presentation',
    }


def degeneracy_report(G: GroupSpec, model: str, bound: Optional[int] = None, strong_only: bool = False) -> dict:
    P = build_model(G, model, bound)
    strong = is_strongly_degenerate(P, bound)
    report = {
        'strongly_degenerate': strong.to_dict(),
        'provenance': 'degeneracy.is_strongly_degenerate',
    }
    if strong.is_yes:
        report['central_power'] = strong_witness_central_power(P, strong.witness)
        report['elementary_subgroup'] = elementary_subgroup_hint(P, strong.witness)
    if strong_only:
        return report
    degenerate = is_degenerate(P, bound)
    report['degenerate'] = degenerate.to_dict()
    report['provenance'] = 'degeneracy.is_degenerate, degeneracy.is_strongly_degenerate'
    if degenerate.is_yes:
        report['reduced_witness'] = reduce_witness_to_order_p(P, degenerate.witness).to_dict()
        report['centralizer'] = centralizer_split_hint(P, degenerate.witness)
    return report


def valuation_report(G: GroupSpec, model: str, bound: Optional[int] = None,
                     strongly_degenerate: Optional[bool] = None) -> dict:
    P = build_model(G, model, bound)
    A = PowerSeriesACP(P)
    search = homogeneous_ppower_central_search(A, bound)
    if strongly_degenerate is None:
        strongly_degenerate = is_strongly_degenerate(P, bound).is_yes
    return {
        'power_series': A.to_dict(),
        'semi_ramification': semi_ramification_report(A),
        'graded_search': search.to_dict(),
        'equivalence': {
            'strongly_degenerate': strongly_degenerate,
            'graded_found': search.found,
            'agree': strongly_degenerate == search.found,
            'certified': search.certified,
        },
        'provenance': 'valuations.homogeneous_ppower_central_search',
    }


def chow_report(p: int, n: int, generic: bool = False, degenerate: bool = False,
                strongly_degenerate: bool = False, r: int = 2, p2: bool = False) -> dict:
    try:
        regime = regime_table(p, n)
    except InvalidRegime as exc:
        regime = {'error': str(exc)}
    try:
        verdict = ch2_torsion_verdict(p, n, generic, degenerate, strongly_degenerate, r, p2=p2).to_dict()
    except ContradictionDetected as exc:
        verdict = {'verdict': 'contradiction', 'message': str(exc), 'reasons': exc.reasons}
    return {
        'regime': regime,
        'verdict': verdict,
        'p2_formulas': p == 2,
        'provenance': 'chow.ch2_torsion_verdict',
    }


def _log_p(G: GroupSpec) -> int:
    n, order = 0, G.order
    while order > 1:
        order //= G.p
        n += 1
    return n


def _conclusions(G: GroupSpec, model: str, computed: dict) -> list:
    order = computed['class']['order']
    exponent = lcm(G.exponent, order)
    degenerate = computed['degeneracy']['degenerate']['answer']
    strong = computed['degeneracy']['strongly_degenerate']['answer']
    semi = computed['valuation']['semi_ramification']['semi_ramified']
    graded = computed['valuation']['graded_search']['found']
    conclusions = [Conclusion(
        f'exp = {exponent}, ind = {G.order}',
        'cited: the generic abelian crossed product has index |G| and exponent '
        'LCM(exp G, exp of the algebra over the monomial field); the latter is replaced '
        'by the computed lattice-class order',
        [f'class order = {order} (computed)'],
    )]
    if model != 'mstar' or not semi:
        return conclusions
    if G.p != 2 and degenerate == 'no_monomial_witness':
        conclusions.append(Conclusion(
            f'indecomposable of exponent {exponent} and index {G.order}',
            'cited: a generic algebra of index pⁿ and exponent p, p odd, whose matrix u is '
            'not degenerate is indecomposable (torsion in CH² of its Severi-Brauer variety)',
            ['u has no degenerate monomial witness (computed)', 'semi-ramified (computed)'],
        ))
    if G.p == 2 and G.r >= 3 and strong == 'no_monomial_witness' and not graded:
        conclusions.append(Conclusion(
            f'indecomposable of exponent {exponent}, index {G.order}',
            'cited: for p = 2 and r ≥ 3 a decomposition would give a homogeneous square-central '
            'element of non-integral degree, which forces u to be strongly degenerate',
            ['u has no strong monomial witness (computed)',
             'no homogeneous p-power-central element (computed)', 'semi-ramified (computed)'],
        ))
    if G.p == 2 and degenerate == 'no_monomial_witness':
        conclusions.append(Conclusion(
            'the matrix defining Δ(G) is degenerate over the field',
            'cited: for p = 2 the matrix is degenerate through non-monomial elements; '
            'the monomial search does not reach them',
            [f'monomial verdict: {degenerate} (computed)'],
        ))
    return conclusions


def analyze(G: GroupSpec, model: str = 'mstar', bound: Optional[int] = None) -> AnalysisReport:
    """Все модули подряд и выводы с цитатами."""
    logger.info(f"[ANALYZE] ({G.label()}), модель {model}")
    P = build_model(G, model, bound)
    data = build_canonical(G, bound)
    computed = {
        'canonical': {
            'A2_rank': data.A2.rank,
            'P2_rank': data.P2.rank,
            'IG_rank': data.IG.rank,
            'model_rank': P.rank,
            'u': P.to_dict()['u'],
            'b': P.to_dict()['b'],
            'provenance': 'crossedproducts.build_model',
        },
        'validation': dict(validate_presentation(P).to_dict(), provenance='crossedproducts.validate_presentation'),
        'class': class_order_report(G, model, bound),
        'degeneracy': degeneracy_report(G, model, bound),
    }
    computed['valuation'] = valuation_report(
        G, model, bound, strongly_degenerate=computed['degeneracy']['strongly_degenerate']['answer'] == 'yes',
    )
    if model == 'mstar':
        computed['chow'] = chow_report(
            G.p, _log_p(G), generic=True,
            degenerate=computed['degeneracy']['degenerate']['answer'] == 'yes',
            strongly_degenerate=computed['degeneracy']['strongly_degenerate']['answer'] == 'yes',
            r=G.r,
        )
    report = AnalysisReport(
        input={'p': G.p, 'group': list(G.orders), 'model': model},
        computed=computed,
        conclusions=_conclusions(G, model, computed),
        schema_version=settings.ACP_REPORT_SCHEMA_VERSION,
    )
    logger.info(f"[ANALYZE] ({G.label()}): выводов {len(report.conclusions)}")
    return report


def render_json(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + '\n'


def render_text(data, indent: int = 0) -> str:
    pad = '  ' * indent
    lines = []
    if isinstance(data, dict):
        for key in sorted(data):
            value = data[key]
            if isinstance(value, (dict, list)) and value:
                lines.append(f'{pad}{key}:')
                lines.append(render_text(value, indent + 1).rstrip('\n'))
            else:
                lines.append(f'{pad}{key}: {value}')
    elif isinstance(data, list):
        for item in data:
            if isinstance(item, dict):
                lines.append(f'{pad}-')
                lines.append(render_text(item, indent + 1).rstrip('\n'))
            else:
                lines.append(f'{pad}- {item}')
    else:
        lines.append(f'{pad}{data}')
    return '\n'.join(lines) + '\n'


def render(data: dict, output: str = 'json') -> str:
    return render_text(data) if output == 'text' else render_json(data)
