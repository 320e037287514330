from reports.commands import AlgebraCommand
from reports.services import crossed_product_report


class Command(AlgebraCommand):
    help = 'Представление Δ′(G) (a2) или Δ(G) (mstar), проверка слияния и порядок класса'

    def compute(self, cleaned):
        return crossed_product_report(cleaned['spec'], cleaned['model'], cleaned.get('bound'))
