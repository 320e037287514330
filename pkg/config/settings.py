import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.environ.get('SECRET_KEY', '!!!CHANGE_ME!!!')
DEBUG = os.environ.get('DEBUG', 'False') == 'True'
ALLOWED_HOSTS = os.environ.get('DJANGO_ALLOWED_HOSTS', '127.0.0.1,localhost').split(',')

CELERY_BROKER_URL = os.environ.get('REDIS_URL', 'redis://redis:6379/0')
CELERY_RESULT_BACKEND = os.environ.get('REDIS_URL', 'redis://redis:6379/0')
CELERY_TIMEZONE = 'Europe/Moscow'
# Без брокера verify выполняется в текущем процессе
CELERY_TASK_ALWAYS_EAGER = os.environ.get('CELERY_ALWAYS_EAGER', 'True') == 'True'
CELERY_TASK_EAGER_PROPAGATES = True

INSTALLED_APPS = [
    'groups',
    'lattices',
    'cohomology',
    'canonical',
    'crossedproducts',
    'degeneracy',
    'valuations',
    'chow',
    'reports',
]

# Моделей в БД нет, всё считается в памяти
DATABASES = {}

# Internationalization
LANGUAGE_CODE = 'ru-ru'
TIME_ZONE = 'Europe/Moscow'
USE_I18N = True
USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# Параметры вычислений
ACP_ENUMERATION_BOUND = int(os.environ.get('ACP_ENUMERATION_BOUND', 4096))
ACP_COCHAIN_BOUND = int(os.environ.get('ACP_COCHAIN_BOUND', 20000))
ACP_GOLDEN_DIR = Path(os.environ.get('ACP_GOLDEN_DIR', str(BASE_DIR.joinpath('golden'))))
ACP_SEED = int(os.environ.get('ACP_SEED', 20240117))
ACP_REPORT_SCHEMA_VERSION = 1

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'verbose',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': os.environ.get('ACP_LOG_LEVEL', 'WARNING'),
    },
}
