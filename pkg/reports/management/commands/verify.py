import logging

from django.core.management.base import BaseCommand, CommandError

from reports.forms import VerifyForm
from reports.services import render
from reports.tasks import CRITERION_TASKS

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = 'Критерии приёмки через задачи Celery; ненулевой код выхода при провале'

    def add_arguments(self, parser):
        parser.add_argument('--level', choices=['fast', 'full'], default='fast')
        parser.add_argument('--seed', type=int)
        parser.add_argument('--golden-dir')
        parser.add_argument('--update-golden', action='store_true')
        output = parser.add_mutually_exclusive_group()
        output.add_argument('--json', dest='output', action='store_const', const='json')
        output.add_argument('--text', dest='output', action='store_const', const='text')
        parser.set_defaults(output='text')

    def handle(self, *args, **options):
        form = VerifyForm(data={k: options[k] for k in VerifyForm.base_fields if options.get(k) is not None})
        if not form.is_valid():
            raise CommandError(f"Некорректный ввод: {form.errors.as_text()}", returncode=2)
        level, seed = form.cleaned_data['level'], form.cleaned_data['seed']

        pending = []
        for task in CRITERION_TASKS:
            kwargs = {'level': level, 'seed': seed}
            if task.name.endswith('.determinism'):
                kwargs.update(golden_dir=form.cleaned_data['golden_dir'] or None,
                              update_golden=form.cleaned_data['update_golden'])
            pending.append(task.delay(**kwargs))
        results = [result.get() for result in pending]

        failed = [r['criterion'] for r in results if not r['passed']]
        summary = {
            'level': level,
            'passed': not failed,
            'failed': failed,
            'criteria': [
                {
                    'criterion': r['criterion'],
                    'passed': r['passed'],
                    'seconds': r['seconds'],
                    'failures': [c for c in r['checks'] if not c['passed']],
                    'error': r.get('error'),
                }
                for r in results
            ],
        }
        self.stdout.write(render(summary, options['output']), ending='')
        if failed:
            logger.error(f"[VERIFY] Провалены: {', '.join(failed)}")
            raise CommandError(f"Провалены критерии: {', '.join(failed)}", returncode=1)
        logger.info(f"[VERIFY] Все {len(results)} критериев пройдены")
