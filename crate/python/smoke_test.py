"""Smoke test for the palkit Python module.

Build and install the wheel first (see README.md).
"""

import pathlib

import palkit

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def main():
    f = palkit.parse("p & ~K_b p")
    assert palkit.parse(str(f)) == f
    assert f.agents() == ["b"] and f.props() == ["p"]

    try:
        palkit.parse("K_1 (p &")
    except palkit.ParseError:
        pass
    else:
        raise AssertionError("bad syntax accepted")

    m = palkit.Model.from_json((FIXTURES / "figure1.json").read_text())
    assert m.eval(f, world="w2")
    after = m.announce(f)
    assert after.worlds == ["w2"]
    assert not m.is_successful(f)

    fig2 = palkit.Model.from_json((FIXTURES / "figure2.json").read_text())
    assert fig2.truth_set("K_1 L_2 p") == ["w1", "w2"]
    assert "w1" in fig2.success_failures("K_1 L_2 p")

    verdict = palkit.classify("K_1 L_2 p")
    assert verdict["status"] == "unsuccessful" and verdict["witness"] is not None
    assert palkit.classify("K_1 K_2 L_1 p")["status"] == "unknown"
    assert palkit.classify("K_1 K_2 L_1 p", rules="paper")["disputed"]

    report = palkit.search("K_1 L_2 p", max_worlds=4)
    assert report["outcome"] == "found"
    again = palkit.Model.from_json(__import__("json").dumps(report["witness"]))
    assert not again.is_successful("K_1 L_2 p")
    assert palkit.search("K_1 p", max_worlds=4)["outcome"] == "none_up_to_bound"

    print("python smoke test passed")


if __name__ == "__main__":
    main()
