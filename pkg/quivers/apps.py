from django.apps import AppConfig


class QuiversConfig(AppConfig):
    name = 'quivers'
