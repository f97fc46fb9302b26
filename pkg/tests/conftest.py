import pytest

from causelab import Causation, Dataset, Instance, Params

# Criterion results reported by test_acceptance, echoed after the run so they
# stay visible under pytest's output capture.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.line(line)

# The two-causation worked example used throughout: {4} and {2 2} over a
# 10-type alphabet, with ten length-5 instances and their known ID sets.
EXAMPLE_CAUSATIONS = (Causation(0, (4,)), Causation(1, (2, 2)))
EXAMPLE_INSTANCES = (
    ((4, 9, 9, 3, 0), {0}),
    ((4, 2, 2, 8, 0), {0, 1}),
    ((3, 2, 4, 2, 8), {0, 1}),
    ((6, 2, 2, 7, 9), {1}),
    ((2, 9, 2, 1, 6), {1}),
    ((8, 8, 0, 2, 3), set()),
    ((5, 1, 7, 8, 1), set()),
    ((8, 3, 0, 5, 2), set()),
    ((0, 5, 9, 8, 2), set()),
    ((3, 2, 9, 8, 6), set()),
)


@pytest.fixture(scope="session")
def example_causations():
    return EXAMPLE_CAUSATIONS


@pytest.fixture(scope="session")
def example_dataset():
    params = Params(
        num_event_types=10,
        num_causations=2,
        max_cause_events=2,
        max_intervening_events=2,
        instance_length=5,
    )
    instances = tuple(
        Instance(events, frozenset(ids)) for events, ids in EXAMPLE_INSTANCES
    )
    return Dataset(params, EXAMPLE_CAUSATIONS, instances, "train")
