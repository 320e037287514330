from reports.commands import AlgebraCommand
from reports.services import degeneracy_report


class Command(AlgebraCommand):
    help = 'Вырожденность и сильная вырожденность матрицы u со свидетелями'

    def add_extra_arguments(self, parser):
        parser.add_argument('--strong', action='store_true', help='только сильная вырожденность')

    def handle(self, *args, **options):
        self.strong_only = options['strong']
        super().handle(*args, **options)

    def compute(self, cleaned):
        return degeneracy_report(cleaned['spec'], cleaned['model'], cleaned.get('bound'), strong_only=self.strong_only)
