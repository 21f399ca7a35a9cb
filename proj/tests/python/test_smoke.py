import pytest

import tilejep

ISOLATED_TWO = {
    "kind": "string",
    "D": 1,
    "h_forbidden": [[1, 2, 1], [2, 1, 1], [2, 2, 1]],
    "v_forbidden": [[1, 2], [2, 1], [2, 2]],
}


@pytest.fixture(scope="module")
def cls():
    return tilejep.compile_class(ISOLATED_TWO)


def test_structure_round_trip():
    s = tilejep.MultiPerm([[0, 1, 2], [1, 0, 0], [2, 2, 1]])
    assert len(s) == 3 and s.dims == 3
    assert tilejep.MultiPerm.from_json(s.to_json()) == s
    with pytest.raises(tilejep.TilejepError):
        tilejep.MultiPerm([[0, 0, 0], [0, 1, 1]])


def test_matching():
    p = tilejep.MultiPerm([[0, 0, 0], [1, 1, 1]])
    host = tilejep.MultiPerm([[0, 0, 0], [1, 2, 1], [2, 1, 2]])
    assert tilejep.find_embedding(p, host) == [0, 1]
    assert tilejep.count_copies(p, host) == 2
    shapes = tilejep.gadget_shapes("Q")
    assert len(shapes) == 20
    assert all(tilejep.find_embedding(a, b) is None for a in shapes for b in shapes if a != b)


def test_canonical_models_are_members(cls):
    a, ledger = tilejep.canonical(cls, "A", 2)
    assert tilejep.check(a, cls) == {"member": True}
    assert ledger["n"] == 2 and len(ledger["copies"]) == 1 + 4 * 3 + 1
    bad, _ = tilejep.canonical(cls, "A", 2, defect=True)
    verdict = tilejep.check(bad, cls)
    assert not verdict["member"]
    assert {v["constraint"] for v in verdict["violations"]} == {"2"}


def test_joint_embedding_and_extraction(cls):
    a, _ = tilejep.canonical(cls, "A", 2)
    b, _ = tilejep.canonical(cls, "B", 2)
    ones = {"kind": "periodic", "px": 1, "py": 1, "table": [[1]]}
    joint = tilejep.jep(a, b, ones, cls)
    assert tilejep.check(joint, cls)["member"]
    assert tilejep.extract_tiling(joint, cls, 2, 2)["rows"] == [[1, 1], [1, 1]]
    with pytest.raises(tilejep.TilejepError):
        tilejep.jep(a, b, {"kind": "periodic", "px": 1, "py": 1, "table": [[2]]}, cls)


def test_tiling_helpers():
    assert tilejep.solve_periodic(ISOLATED_TWO) == {"kind": "periodic", "px": 1, "py": 1, "table": [[1]]}
    window = {"kind": "window", "w": 2, "h": 1, "rows": [[2, 1]]}
    assert not tilejep.check_tiling(ISOLATED_TWO, window)["valid"]
    problem, codec = tilejep.encode_wang({"kind": "wang", "t": 2, "h_forbidden": [[1, 1]], "v_forbidden": []})
    assert problem["kind"] == "string" and codec["tile_count"] == 2


def test_render_and_forbidden(cls):
    a, _ = tilejep.canonical(cls, "A", 1)
    svg = tilejep.render_svg(a, cls)
    assert svg.count("<polyline") == 4
    assert tilejep.render_svg(a, cls) == svg
    patterns = tilejep.forbidden_patterns(cls, ["6"], size_cap=8)
    assert patterns and all(len(p) == 8 for p in patterns)
    assert all(not tilejep.check(p, cls, only=["6"])["member"] for p in patterns)
