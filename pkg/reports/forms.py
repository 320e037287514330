from django import forms

from groups.exceptions import InvalidGroupSpec
from groups.models import GroupSpec


class GroupInputForm(forms.Form):
    p = forms.IntegerField(min_value=2)
    group = forms.CharField()
    model = forms.ChoiceField(choices=[('a2', 'F(A2(G))'), ('mstar', 'F(M*)')], required=False)
    bound = forms.IntegerField(min_value=1, required=False)
    seed = forms.IntegerField(required=False)

    def clean(self):
        cleaned = super().clean()
        p = cleaned.get('p')
        text = cleaned.get('group')
        if p is None or not text:
            return cleaned
        try:
            cleaned['spec'] = GroupSpec.parse(p, text)
        except InvalidGroupSpec as exc:
            raise forms.ValidationError(f"Некорректная группа: {exc}")
        if cleaned['spec'].r < 2:
            raise forms.ValidationError("Группа должна быть нециклической: нужно хотя бы два фактора.")
        cleaned['model'] = cleaned.get('model') or 'mstar'
        return cleaned


class ChowInputForm(forms.Form):
    p = forms.IntegerField(min_value=2, required=False)
    n = forms.IntegerField(min_value=1)
    generic = forms.BooleanField(required=False)
    degenerate = forms.BooleanField(required=False)
    strongly_degenerate = forms.BooleanField(required=False)
    r = forms.IntegerField(min_value=1, required=False)
    p2 = forms.BooleanField(required=False)

    def clean(self):
        cleaned = super().clean()
        p = cleaned.get('p')
        if cleaned.get('p2'):
            if p is not None and p != 2:
                raise forms.ValidationError(f"--p2 задаёт формулы для p = 2, а указано p = {p}.")
            p = cleaned['p'] = 2
        if p is None and 'p' not in self.errors:
            raise forms.ValidationError("Нужно указать --p или --p2.")
        if p is not None:
            try:
                GroupSpec(p, (p,))
            except InvalidGroupSpec as exc:
                raise forms.ValidationError(f"Некорректное p: {exc}")
        if cleaned.get('r') is None:
            cleaned['r'] = 2
        return cleaned


class VerifyForm(forms.Form):
    level = forms.ChoiceField(choices=[('fast', 'fast'), ('full', 'full')], required=False)
    seed = forms.IntegerField(required=False)
    golden_dir = forms.CharField(required=False)
    update_golden = forms.BooleanField(required=False)

    def clean(self):
        cleaned = super().clean()
        cleaned['level'] = cleaned.get('level') or 'fast'
        return cleaned
