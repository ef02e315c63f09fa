import os
from dotenv import load_dotenv

from utils.errors import BoundExceeded

load_dotenv()


def _bound(name, default):
    raw = os.getenv(name, default)
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 1:
        raise BoundExceeded(f'Limite inválido em {name}: {raw!r}', variable=name)
    return value


class Config:
    SECRET_KEY = os.getenv('SECRET_KEY', 'dev-secret')
    SQLALCHEMY_DATABASE_URI = os.getenv('DB_URL', 'sqlite:///relatorios.db')
    SQLALCHEMY_TRACK_MODIFICATIONS = False

    # enumeration bounds (override through the environment)
    MAX_POSET_SIZE = _bound('NONARCH_MAX_POSET_SIZE', '20')
    MAX_NUCLEI_SIZE = _bound('NONARCH_MAX_NUCLEI_SIZE', '16')
    MAX_PADIC_DEPTH = _bound('NONARCH_MAX_PADIC_DEPTH', '6')
    MAX_COVERAGE_UPSETS = _bound('NONARCH_MAX_COVERAGE_UPSETS', '4096')
    LOG_LEVEL = os.getenv('NONARCH_LOG_LEVEL', 'WARNING')
