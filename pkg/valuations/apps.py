from django.apps import AppConfig


class ValuationsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'valuations'
