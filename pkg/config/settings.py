"""
Django settings for the coloured quivers project.

The project has no web surface and no database: Django provides the
management commands, settings, logging and the test runner.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/4.2/ref/settings/
"""

from pathlib import Path
import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Nothing is signed or served; the key only satisfies Django's checks.
SECRET_KEY = os.getenv('SECRET_KEY', 'django-insecure-coloured-quivers-local-only')

DEBUG = os.getenv('DEBUG', 'False') == 'True'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',
    'rest_framework',
    'quivers',
    'geometry',
    'counting',
    'verification',
    'cli',
]

DATABASES = {}

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'DEFAULT_PARSER_CLASSES': [
        'rest_framework.parsers.JSONParser',
    ],
    'UNAUTHENTICATED_USER': None,
}

# Tunables for the commands and the verification harness
COLOURED_QUIVERS = {
    # BFS aborts once a mutation class outgrows this multiple of its predicted size
    'BFS_LIMIT_FACTOR': int(os.getenv('BFS_LIMIT_FACTOR', 10)),
    # desk-scale guards for `count --method geometry|bfs` and `enumerate`
    'GEOMETRY_MAX_ANGULATIONS': int(os.getenv('GEOMETRY_MAX_ANGULATIONS', 10 ** 6)),
    'BFS_MAX_CLASS_SIZE': int(os.getenv('BFS_MAX_CLASS_SIZE', 100000)),
    # defaults for `verify`
    'VERIFY_MAX_N': int(os.getenv('VERIFY_MAX_N', 4)),
    'VERIFY_MAX_M': int(os.getenv('VERIFY_MAX_M', 2)),
    # extra n,m instances beyond the grid, e.g. "7,1 7,2"
    'VERIFY_EXTRA': os.getenv('VERIFY_EXTRA', ''),
    'TABLE_MAX_N': int(os.getenv('TABLE_MAX_N', 200)),
}

# Logging Configuration
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': True,
        },
        **{
            app: {
                'handlers': ['console'],
                'level': os.getenv('COLOURED_QUIVERS_LOG_LEVEL', 'WARNING'),
                'propagate': False,
            }
            for app in ('quivers', 'geometry', 'counting', 'verification', 'cli')
        },
    },
}
