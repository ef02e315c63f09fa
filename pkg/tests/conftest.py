import pytest
from click.testing import CliRunner

from app import create_app
from models.frame_model import chain_frame, powerset_frame
from models.tree_model import cantor


@pytest.fixture
def app():
    app = create_app({'TESTING': True, 'SQLALCHEMY_DATABASE_URI': 'sqlite:///:memory:'})
    yield app


@pytest.fixture
def client(app):
    return app.test_client()


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def boolean3():
    return powerset_frame(3)


@pytest.fixture
def chain3():
    return chain_frame(3)


@pytest.fixture
def binary1():
    return cantor(1)
