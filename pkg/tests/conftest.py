import pytest

from weylcoh.diagrams import parse_diagram_spec
from weylcoh.linalg import IntMatrix
from weylcoh.weyl import generate_weyl

ACCEPTANCE_LINES: list[str] = []

# D4 reference matrices: simple reflections, the order-3 rotation g, and a
# nontrivial cocycle value w at g
G_ROT = IntMatrix.from_rows([[0, 0, 0, 1], [0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0]])
W_REF = IntMatrix.from_rows([[-1, 0, 0, 0], [-1, 0, 1, -1], [-1, 1, 0, -1], [-1, 0, 1, 0]])
S_REF = [
    IntMatrix.from_rows([[-1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
    IntMatrix.from_rows([[1, 0, 0, 0], [1, -1, 1, 1], [0, 0, 1, 0], [0, 0, 0, 1]]),
    IntMatrix.from_rows([[1, 0, 0, 0], [0, 1, 0, 0], [0, 1, -1, 0], [0, 0, 0, 1]]),
    IntMatrix.from_rows([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 1, 0, -1]]),
]


@pytest.fixture(scope="session")
def weyl_cache():
    cache = {}

    def get(spec):
        if spec not in cache:
            cache[spec] = generate_weyl(parse_diagram_spec(spec))
        return cache[spec]

    return get


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
