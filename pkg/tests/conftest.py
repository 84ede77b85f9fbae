import pytest

from netmat import Dataset, Graph, Trajectory, build_structure, build_utilization


@pytest.fixture
def shortcut_graph():
    """Path A->B->C->D plus the B->D shortcut edge the lone trajectory ignores."""
    return Graph(("A", "B", "C", "D"), frozenset({(0, 1), (1, 2), (2, 3), (1, 3)}))


@pytest.fixture
def shortcut_dataset(shortcut_graph):
    return Dataset(shortcut_graph, (Trajectory((0, 1, 2, 3)),))


@pytest.fixture
def shortcut_structure(shortcut_graph):
    return build_structure(shortcut_graph)


@pytest.fixture
def shortcut_utilization(shortcut_dataset, shortcut_structure):
    return build_utilization(shortcut_dataset, shortcut_structure)


@pytest.fixture
def chain3_graph():
    return Graph(("A", "B", "C"), frozenset({(0, 1), (1, 2)}))
