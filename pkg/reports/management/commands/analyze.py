from reports.commands import AlgebraCommand
from reports.services import analyze


class Command(AlgebraCommand):
    help = 'Полный отчёт по группе: вычисленные величины и выводы с цитатами'

    def compute(self, cleaned):
        return analyze(cleaned['spec'], cleaned['model'], cleaned.get('bound')).to_dict()
