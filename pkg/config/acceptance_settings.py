import os

from .settings import *

# Acceptance ranges for `verify`
COLOURED_QUIVERS = {
    **COLOURED_QUIVERS,
    'VERIFY_MAX_N': int(os.getenv('VERIFY_MAX_N', 6)),
    'VERIFY_MAX_M': int(os.getenv('VERIFY_MAX_M', 4)),
    'VERIFY_EXTRA': os.getenv('VERIFY_EXTRA', '7,1 7,2'),
}

LOGS_DIR = BASE_DIR / 'logs'
LOGS_DIR.mkdir(exist_ok=True)

LOGGING['handlers']['file'] = {
    'class': 'logging.FileHandler',
    'filename': LOGS_DIR / 'acceptance.log',
    'formatter': 'verbose',
}
for app in ('quivers', 'geometry', 'counting', 'verification', 'cli'):
    LOGGING['loggers'][app] = {
        'handlers': ['console', 'file'],
        'level': 'INFO',
        'propagate': False,
    }
