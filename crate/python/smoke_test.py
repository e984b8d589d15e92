"""Smoke test for the mcb_workbench extension module.

Build and install first, e.g.
    maturin build --release -m crates/py/Cargo.toml && pip install target/wheels/*.whl
"""

import json

import mcb_workbench as mw


def main():
    u23 = mw.Matroid.uniform(2, 3)
    assert u23.rank == 2 and len(u23) == 3
    profile = u23.mcb_profile()
    assert profile["min_failure_degree"] == 2, profile
    assert u23.is_mcb(1)["holds"]

    b3 = mw.Matroid(3, [[], [1], [2], [3], [1, 2], [1, 3], [2, 3], [1, 2, 3]])
    assert b3.chow_hilbert() == [1, 4, 1]
    assert b3.characteristic_polynomial() == [-1, 3, -3, 1]
    assert b3 == mw.Matroid.from_json(b3.to_json())

    k4 = mw.Matroid.graphic(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
    chain = k4.supersolvable()
    assert chain is not None and chain["e"] == [1, 2, 3]

    fano = mw.PavingMatroid.fano()
    assert fano.min_hyperplane_cover() == 3
    assert fano.matroid().mcb_profile()["min_failure_degree"] == 3

    bs = mw.BuildingSet.closure(3, [[1, 2], [2, 3]])
    assert bs.predicate()
    assert bs.mcb_profile()["min_failure_degree"] == 1

    lines = mw.LineArrangement.hh("three_modular", m=4)
    assert lines.lines == 9 and lines.tvector() == {2: 6, 3: 4, 4: 3}
    assert mw.unexpected_degree_range(9, 4)["high"] == 4

    assert "fano" in mw.catalog_names()
    assert json.loads(mw.catalog_descriptor("fano"))["type"] == "paving"

    report = mw.run_claims(seed=0, only=["C6", "C8"])
    statuses = {c["id"]: c["status"] for c in report["claims"]}
    assert statuses == {"C6": "VERIFIED", "C8": "REFUTED"}, statuses

    try:
        mw.Matroid(3, [[], [1]])
    except ValueError:
        pass
    else:
        raise AssertionError("invalid flats were accepted")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
