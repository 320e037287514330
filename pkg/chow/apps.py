from django.apps import AppConfig


class ChowConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'chow'
