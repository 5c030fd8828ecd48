import pytest
import sys
import os

# Add the project root to Python path for imports
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from app.config import init_config
from app.rootsys import SimpleType
from app.services import get_algebra, get_cascade, get_root_system

@pytest.fixture(scope="session", autouse=True)
def initialize_config():
    """Initialize the app configuration for testing"""
    init_config()

def _bundle(label):
    t = SimpleType.parse(label)
    return get_root_system(t), get_cascade(t).cascade_set(), get_algebra(t)

@pytest.fixture(scope="session")
def algebra_of():
    """Return (root system, cascade set, algebra) for a label such as 'B2'; cached per session"""
    return _bundle

@pytest.fixture(scope="session")
def a2(algebra_of):
    return algebra_of("A2")

@pytest.fixture(scope="session")
def b2(algebra_of):
    return algebra_of("B2")

@pytest.fixture(scope="session")
def a3(algebra_of):
    return algebra_of("A3")

@pytest.fixture
def schema():
    """Return the shipped JSON report schema"""
    import json
    path = os.path.join(os.path.dirname(__file__), '..', 'schema', 'report.schema.json')
    with open(path) as f:
        return json.load(f)
