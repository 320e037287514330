from django.core.management.base import CommandError

from chow.exceptions import InvalidRegime
from chow.services import regime_table
from reports.commands import AlgebraCommand
from reports.forms import ChowInputForm
from reports.services import chow_report


class Command(AlgebraCommand):
    help = 'Образующие x, y, тождество трансфера, t-адические степени и вердикт о кручении CH²'
    form_class = ChowInputForm
    uses_group = False

    def add_extra_arguments(self, parser):
        parser.add_argument('--n', type=int, help='индекс pⁿ')
        parser.add_argument('--generic', action='store_true')
        parser.add_argument('--degenerate', action='store_true')
        parser.add_argument('--strongly-degenerate', action='store_true')
        parser.add_argument('--r', type=int, help='ранг группы для правила p = 2')
        parser.add_argument('--p2', action='store_true', help='формулы для p = 2; без --p означает p = 2')

    def compute(self, cleaned):
        try:
            regime_table(cleaned['p'], cleaned['n'])
        except InvalidRegime as exc:
            raise CommandError(f"Некорректный ввод: {exc}", returncode=2)
        return chow_report(
            cleaned['p'], cleaned['n'], cleaned['generic'], cleaned['degenerate'],
            cleaned['strongly_degenerate'], cleaned['r'], p2=cleaned['p2'],
        )
