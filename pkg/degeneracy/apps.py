from django.apps import AppConfig


class DegeneracyConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'degeneracy'
