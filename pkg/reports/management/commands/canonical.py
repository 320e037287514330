from reports.commands import AlgebraCommand
from reports.services import canonical_report


class Command(AlgebraCommand):
    help = 'Канонические решётки A₂(G), P₂(G), I_G, таблицы φ и c₂, матрица u и векторы b'

    def compute(self, cleaned):
        return canonical_report(cleaned['spec'], cleaned['model'], cleaned.get('bound'))
