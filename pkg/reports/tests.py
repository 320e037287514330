import json
import random
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, tag

from cohomology.services import cohomology_group
from groups.models import GroupSpec
from lattices.linalg import integer_matrix, integer_vector
from .acceptance import (
    GOLDEN_INPUTS, box_solvable, golden_path, h1_order_by_counting, render_with_threads, run_criterion,
    small_lattices, unimodular_conjugate,
)
from .models import THEOREM_CITED
from .services import _conclusions, analyze, render_json, render_text
from .tasks import analyze_task, chow_identities


def run(name, *args, **options):
    out = StringIO()
    call_command(name, *args, stdout=out, **options)
    return out.getvalue()


class AnalyzeTests(SimpleTestCase):
    """Конвейер analyze и выводы с цитатами"""

    def test_odd_p_mstar(self):
        """(3,3) над M*: exp = 3, ind = 9, неразложимость при проверенных гипотезах"""
        print("\nanalyze (3,3) mstar")
        data = analyze(GroupSpec(3, (3, 3))).to_dict()
        statements = [c['statement'] for c in data['conclusions']]
        self.assertIn('exp = 3, ind = 9', statements)
        self.assertTrue(any(s.startswith('indecomposable') for s in statements))
        for conclusion in data['conclusions']:
            self.assertEqual(conclusion['kind'], THEOREM_CITED)
            self.assertTrue(conclusion['citation'].startswith('cited'))
        self.assertEqual(data['computed']['degeneracy']['degenerate']['answer'], 'no_monomial_witness')
        self.assertEqual(data['computed']['chow']['verdict']['verdict'], 'cyclic_of_order_p')

    def test_klein_a2(self):
        data = analyze(GroupSpec(2, (2, 2)), 'a2').to_dict()
        self.assertEqual(data['computed']['class']['order'], 4)
        self.assertEqual(len(data['conclusions']), 1)
        self.assertEqual(data['conclusions'][0]['statement'], 'exp = 4, ind = 4')
        self.assertNotIn('chow', data['computed'])

    def test_klein_mstar_cites_field_degeneracy(self):
        """p = 2, r = 2: мономиального свидетеля нет, вырожденность над полем только цитируется"""
        data = analyze(GroupSpec(2, (2, 2))).to_dict()
        self.assertEqual(data['computed']['degeneracy']['degenerate']['answer'], 'no_monomial_witness')
        statements = [c['statement'] for c in data['conclusions']]
        self.assertIn('the matrix defining Δ(G) is degenerate over the field', statements)
        self.assertFalse(any(s.startswith('indecomposable') for s in statements))

    def test_field_degeneracy_for_rank_three(self):
        """Замечание о вырожденности над полем выдаётся при p = 2 и любом r"""
        computed = {
            'class': {'order': 2},
            'degeneracy': {
                'degenerate': {'answer': 'no_monomial_witness'},
                'strongly_degenerate': {'answer': 'no_monomial_witness'},
            },
            'valuation': {'semi_ramification': {'semi_ramified': True}, 'graded_search': {'found': False}},
        }
        statements = [c.statement for c in _conclusions(GroupSpec(2, (2, 2, 2)), 'mstar', computed)]
        self.assertIn('the matrix defining Δ(G) is degenerate over the field', statements)
        self.assertIn('indecomposable of exponent 2, index 8', statements)

    def test_deterministic(self):
        G = GroupSpec(2, (2, 2))
        self.assertEqual(render_json(analyze(G, 'a2').to_dict()), render_json(analyze(G, 'a2').to_dict()))

    def test_task(self):
        """Задача Celery в режиме eager совпадает с прямым вызовом"""
        result = analyze_task.delay(2, [2, 2], 'a2').get()
        self.assertEqual(result, analyze(GroupSpec(2, (2, 2)), 'a2').to_dict())

    def test_render_text(self):
        text = render_text({'b': [1, {'c': 2}], 'a': 'x'})
        self.assertEqual(text, 'a: x\nb:\n  - 1\n  -\n    c: 2\n')


class CommandTests(SimpleTestCase):
    """Команды manage.py"""

    def test_analyze_json(self):
        data = json.loads(run('analyze', p=2, group='2,2', model='a2'))
        self.assertEqual(data['input'], {'p': 2, 'group': [2, 2], 'model': 'a2'})
        self.assertEqual(data['schema_version'], 1)

    def test_analyze_text(self):
        out = run('analyze', '--text', p=2, group='2,2', model='a2')
        self.assertIn('schema_version: 1', out)
        with self.assertRaises(ValueError):
            json.loads(out)

    def test_canonical(self):
        data = json.loads(run('canonical', p=2, group='2,2'))
        self.assertIn('canonical', data)
        self.assertIn('mstar', data)

    def test_crossed_product(self):
        data = json.loads(run('crossed_product', p=2, group='2,2', model='a2'))
        self.assertTrue(data['validation']['confluent'])
        self.assertEqual(data['class']['order'], 4)

    def test_degeneracy_strong_only(self):
        data = json.loads(run('degeneracy', '--strong', p=2, group='2,2'))
        self.assertEqual(data['strongly_degenerate']['answer'], 'no_monomial_witness')
        self.assertNotIn('degenerate', data)

    def test_valuation(self):
        data = json.loads(run('valuation', p=2, group='2,2'))
        self.assertTrue(data['semi_ramification']['semi_ramified'])

    def test_chow(self):
        data = json.loads(run('chow', '--generic', p=3, n=2))
        self.assertEqual(data['verdict']['verdict'], 'cyclic_of_order_p')
        data = json.loads(run('chow', '--generic', '--degenerate', p=3, n=2))
        self.assertEqual(data['verdict']['verdict'], 'contradiction')

    def test_chow_p2(self):
        """--p2 без --p означает p = 2; вместе с p = 3 - некорректный ввод"""
        data = json.loads(run('chow', '--p2', '--generic', n=3))
        self.assertTrue(data['p2_formulas'])
        self.assertEqual(data['verdict']['verdict'], 'cyclic_of_order_p')
        with self.assertRaises(CommandError) as ctx:
            run('chow', '--p2', p=3, n=2)
        self.assertEqual(ctx.exception.returncode, 2)

    def test_invalid_input(self):
        """Некорректный ввод - код 2"""
        cases = [
            ('analyze', {'p': 4, 'group': '2,2'}),
            ('analyze', {'p': 2, 'group': '3,3'}),
            ('analyze', {'p': 2, 'group': '4'}),
            ('canonical', {'p': 2, 'group': '2,2', 'bound': 2}),
            ('chow', {'p': 2, 'n': 2}),
        ]
        for name, options in cases:
            with self.assertRaises(CommandError) as ctx:
                run(name, **options)
            self.assertEqual(ctx.exception.returncode, 2, (name, options))


class AcceptanceTests(SimpleTestCase):
    """Критерии приёмки по отдельности"""

    def test_chow_identities(self):
        result = chow_identities.delay().get()
        self.assertTrue(result['passed'], result)
        self.assertIn('seconds', result)

    def test_oracle_suite(self):
        result = run_criterion('oracle_suite', 'fast', seed=7)
        self.assertTrue(result['passed'], [c for c in result['checks'] if not c['passed']])
        names = {c['check'] for c in result['checks']}
        self.assertIn('solve_integer_system vs box [−3,3]⁸', names)
        self.assertTrue(any(name.startswith('|H¹(') for name in names))

    def test_box_solvable(self):
        """Перебор по кубу на системах с известным ответом"""
        A = integer_matrix([[2, 0, 0, 0], [0, 2, 0, 0]])
        self.assertFalse(box_solvable(A, integer_vector([1, 0])))
        self.assertTrue(box_solvable(A, integer_vector([2, -6])))
        self.assertFalse(box_solvable(A, integer_vector([2, 8])))

    def test_counting_matches_smith(self):
        """|H¹| перебором M/N совпадает с формой Смита на решётках ранга ≤ 4"""
        rng = random.Random(3)
        for G in (GroupSpec(2, (2, 2)), GroupSpec(2, (4,))):
            for M in small_lattices(G):
                M = unimodular_conjugate(M, rng)
                self.assertLessEqual(M.rank, 4)
                self.assertEqual(cohomology_group(M, 1).torsion_order, h1_order_by_counting(M), M.label)

    def test_p2_degeneracy(self):
        """Вердикт закреплён, препятствие по модулю 2 найдено на всех 3 + 15 + 21 парах"""
        result = run_criterion('p2_degeneracy')
        self.assertTrue(result['passed'], [c for c in result['checks'] if not c['passed']])
        self.assertEqual(len(result['checks']), 9)

    def test_valuation_facts(self):
        self.assertTrue(run_criterion('valuation_facts')['passed'])

    @tag('slow')
    def test_equivalence_suite(self):
        """Расщепимые экземпляры - да, перебазированные Δ′ - нет, Δ(G) и Δ′(G) - полное совпадение"""
        result = run_criterion('equivalence_suite', seed=11)
        self.assertTrue(result['passed'], [c for c in result['checks'] if not c['passed']])
        names = [c['check'] for c in result['checks']]
        self.assertTrue(any('not strongly degenerate' in name for name in names))
        self.assertTrue(any(name == "Delta(2,2): strong ⟺ graded" for name in names))

    def test_threads_agree(self):
        inputs = [(2, (2, 2), 'a2')] * 3
        one, four = render_with_threads(inputs, 1), render_with_threads(inputs, 4)
        self.assertEqual(one, four)
        self.assertEqual(len(set(four)), 1)

    @tag('slow')
    def test_golden_required(self):
        """Без эталонов провал; --update-golden пишет их; испорченный эталон даёт diff"""
        with tempfile.TemporaryDirectory() as tmp:
            missing = run_criterion('determinism', golden_dir=tmp)
            self.assertFalse(missing['passed'])
            self.assertTrue(any(c['check'].endswith('golden present') for c in missing['checks']))

            self.assertTrue(run_criterion('determinism', golden_dir=tmp, update_golden=True)['passed'])
            p, orders, model = GOLDEN_INPUTS['fast'][0]
            path = golden_path(Path(tmp), p, orders, model)
            self.assertTrue(path.exists())
            self.assertTrue(run_criterion('determinism', golden_dir=tmp)['passed'])

            path.write_text(path.read_text(encoding='utf-8').replace('"schema_version": 1', '"schema_version": 0'),
                            encoding='utf-8')
            broken = run_criterion('determinism', golden_dir=tmp)
            self.assertFalse(broken['passed'])
            diff = next(c['detail'] for c in broken['checks'] if not c['passed'])
            self.assertIn('-  "schema_version": 0', diff)

    @tag('slow')
    def test_verify_command(self):
        with tempfile.TemporaryDirectory() as tmp:
            out = run('verify', '--json', '--update-golden', golden_dir=tmp)
            self.assertTrue(json.loads(out)['passed'])
            p, orders, model = GOLDEN_INPUTS['fast'][1]
            golden_path(Path(tmp), p, orders, model).write_text('{}\n', encoding='utf-8')
            with self.assertRaises(CommandError) as ctx:
                run('verify', golden_dir=tmp)
            self.assertEqual(ctx.exception.returncode, 1)
