import numpy as np
import pytest

import gweave


def test_bounds_of_a_tight_family():
    blocks = [np.array([[1.0, 0.0]]), np.array([[0.0, 1.0]]), np.array([[1.0, 1.0]]) / np.sqrt(2)]
    f = gweave.GFrame(2, blocks)
    b = gweave.bounds(f)
    assert b["is_frame"]
    assert b["lower"] == pytest.approx(1.0)
    assert b["upper"] == pytest.approx(2.0)
    s = gweave.frame_operator(f)
    assert np.allclose(s, sum(m.conj().T @ m for m in blocks))


def test_split_weight_pair():
    ex = gweave.examples.split_weight(9)
    u = gweave.universal_bounds(ex["f"], ex["g"])
    assert u["woven"]
    assert u["lower"] == pytest.approx(0.5, abs=1e-9)
    assert u["upper"] == pytest.approx(1.5, abs=1e-9)
    assert 2 in u["argmin_sigma"]
    assert u["method"] == "exhaustive"


def test_shifted_cover_certificate():
    ex = gweave.examples.shifted_cover(8)
    v = gweave.woven(ex["f"], ex["g"])
    assert not v["woven"]
    assert v["certificate"] == [1]
    assert abs(v["certificate_spectrum"][0]) < 1e-12


def test_search_matches_exhaustive_with_full_budget():
    ex = gweave.examples.overlapping_cover(8)
    full = gweave.universal_bounds(ex["f"], ex["g"])
    searched = gweave.universal_bounds(ex["f"], ex["g"], search=256, seed=3)
    assert searched["lower"] == full["lower"]
    assert searched["upper"] == full["upper"]


def test_classify_and_weave():
    ex = gweave.examples.four_channel(8)
    assert gweave.classify(ex["f"])["exact"]
    w = gweave.weave(ex["f"], ex["g"], [1, 2])
    c = gweave.classify(w)
    assert c["frame"] and not c["exact"] and not c["riesz"]


def test_dual_and_parseval():
    rng = np.random.default_rng(5)
    blocks = [rng.normal(size=(2, 3)) + 1j * rng.normal(size=(2, 3)) for _ in range(3)]
    f = gweave.GFrame(3, blocks)
    assert gweave.check_dual_weaving(f)["passed"]
    p = gweave.transform_sqrt_inv(f)
    assert np.allclose(gweave.frame_operator(p), np.eye(3), atol=1e-10)
    assert gweave.check_induced_operator_identity(f)["passed"]


def test_errors_carry_their_kind():
    with pytest.raises(gweave.GWeaveError) as info:
        gweave.GFrame(2, [np.ones((1, 3))])
    assert info.value.kind == "ShapeMismatch"
    ex = gweave.examples.shifted_cover(8)
    with pytest.raises(gweave.GWeaveError) as info:
        gweave.universal_bounds(ex["f"], ex["g"], cap=4)
    assert info.value.kind == "TooManyBlocks"


def test_suite_runs():
    records = gweave.run_suite()
    assert len(records) == 31
    assert not [r for r in records if r["status"] == "fail"]
