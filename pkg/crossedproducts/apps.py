from django.apps import AppConfig


class CrossedproductsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'crossedproducts'
