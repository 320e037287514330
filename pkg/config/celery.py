import os
from celery import Celery

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'config.settings')

app = Celery('acp')
app.config_from_object('django.conf:settings', namespace='CELERY')
# Задачи verify лежат в reports/tasks.py
app.autodiscover_tasks()
