from .connection import close_db, database_url, get_db, init_db
from .models import Run
from .runs import get_run, list_runs, make_run_identifier, save_run

__all__ = [
    "close_db",
    "database_url",
    "get_db",
    "init_db",
    "Run",
    "get_run",
    "list_runs",
    "make_run_identifier",
    "save_run",
]
