import random
import threading

import pytest

from fmcdm import (
    Answer,
    CANONICAL_TERMS,
    Hierarchy,
    INDIFFERENCE,
    Node,
    PairwiseMatrix,
    ResponseSheet,
    Workspace,
    comparison_sets,
    content_hash,
    preset_egov,
)
from fmcdm.server import create_server


@pytest.fixture
def preset() -> Hierarchy:
    return preset_egov()


@pytest.fixture
def toy() -> Hierarchy:
    """Two criteria with one sub-criterion each, two alternatives."""
    return Hierarchy(
        goal="pick one",
        criteria=(Node("c1", "first criterion"), Node("c2", "second criterion")),
        sub_criteria={"c1": (Node("s1", "only sub 1"),), "c2": (Node("s2", "only sub 2"),)},
        alternatives=(Node("a1", "option one"), Node("a2", "option two")),
    )


def make_sheet(h: Hierarchy, dm_id: str, choose) -> ResponseSheet:
    """Complete sheet with choose(set_index, first, second) -> (favored, term)."""
    sheet = ResponseSheet(dm_id, content_hash(h))
    for set_index, comp_set in enumerate(comparison_sets(h)):
        for first, second in comp_set.pairs():
            favored, term = choose(set_index, first, second)
            sheet.add_answer(Answer(set_index, first, second, favored, term))
    return sheet


def random_sheet(h: Hierarchy, dm_id: str, rng: random.Random) -> ResponseSheet:
    return make_sheet(
        h, dm_id,
        lambda *_: (rng.choice(["first", "second"]), rng.choice(CANONICAL_TERMS)),
    )


def constant_sheet(h: Hierarchy, dm_id: str, term: str = "Equally Important") -> ResponseSheet:
    return make_sheet(h, dm_id, lambda *_: ("first", term))


def indifference_matrix(members) -> PairwiseMatrix:
    """Uniform matrix: every entry equals the (0.5, 0.5, 0.5) diagonal value."""
    n = len(members)
    return PairwiseMatrix(
        tuple(members),
        tuple(tuple(INDIFFERENCE for _ in range(n)) for _ in range(n)),
    )


@pytest.fixture
def preset_workspace(tmp_path) -> Workspace:
    return Workspace.initialize(tmp_path / "ws", preset_egov())


@pytest.fixture
def api(preset_workspace):
    """Live HTTP server over a fresh preset workspace; yields (base_url, workspace)."""
    httpd = create_server(preset_workspace, "127.0.0.1", 0)
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    host, port = httpd.server_address[:2]
    try:
        yield f"http://{host}:{port}", preset_workspace
    finally:
        httpd.shutdown()
        httpd.server_close()
