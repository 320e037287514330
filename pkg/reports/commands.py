"""Общая основа команд manage.py: флаги, проверка ввода формой, вывод JSON или текста."""
import logging

from django.core.management.base import BaseCommand, CommandError

from groups.exceptions import AlgebraError, BoundExceeded
from .forms import GroupInputForm
from .services import render

logger = logging.getLogger(__name__)


class AlgebraCommand(BaseCommand):
    form_class = GroupInputForm
    uses_group = True

    def add_arguments(self, parser):
        parser.add_argument('--p', type=int, help='простое число p')
        if self.uses_group:
            parser.add_argument('--group', help='порядки циклических факторов, например 2,2,2')
            parser.add_argument('--model', choices=['a2', 'mstar'], default='mstar')
        output = parser.add_mutually_exclusive_group()
        output.add_argument('--json', dest='output', action='store_const', const='json')
        output.add_argument('--text', dest='output', action='store_const', const='text')
        parser.set_defaults(output='json')
        parser.add_argument('--bound', type=int, help='граница перебора |G|')
        parser.add_argument('--seed', type=int)
        self.add_extra_arguments(parser)

    def add_extra_arguments(self, parser):
        pass

    def form_data(self, options) -> dict:
        fields = self.form_class.base_fields
        return {name: options[name] for name in fields if options.get(name) is not None}

    def compute(self, cleaned: dict) -> dict:
        raise NotImplementedError

    def handle(self, *args, **options):
        form = self.form_class(data=self.form_data(options))
        if not form.is_valid():
            errors = '; '.join(str(e) for errs in form.errors.values() for e in errs)
            raise CommandError(f"Некорректный ввод: {errors}", returncode=2)
        try:
            data = self.compute(form.cleaned_data)
        except BoundExceeded as exc:
            raise CommandError(str(exc), returncode=2)
        except AlgebraError as exc:
            logger.error(f"[CLI] {type(exc).__name__}: {exc}")
            raise CommandError(f"{type(exc).__name__}: {exc}", returncode=1)
        self.stdout.write(render(data, options['output']), ending='')
