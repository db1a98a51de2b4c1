"""Configure Django before pytest collects the test modules."""
import os

import django

os.environ.setdefault(
    'DJANGO_SETTINGS_MODULE',
    'config.acceptance_settings' if 'COLOURED_QUIVERS_ACCEPTANCE' in os.environ else 'config.settings',
)
django.setup()
