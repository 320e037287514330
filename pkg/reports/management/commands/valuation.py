from reports.commands import AlgebraCommand
from reports.services import valuation_report


class Command(AlgebraCommand):
    help = 'Γ_D, θ, полуразветвлённость и поиск однородного p-степенно центрального элемента'

    def compute(self, cleaned):
        return valuation_report(cleaned['spec'], cleaned['model'], cleaned.get('bound'))
