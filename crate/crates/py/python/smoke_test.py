"""Smoke test for the pcurv_py extension module.

Build and install first, e.g. `pip install --no-build-isolation -e crates/py`
or `maturin develop -m crates/py/Cargo.toml`.
"""

import json

import pcurv_py as pc


def main():
    g = pc.Operator.gauss(7)
    assert g.r == 3 and g.riemann_check()
    rep = g.classify()
    assert rep["class"] == "nilpotent_nonzero"
    assert rep["minimal_solution"]["degree"] == 3
    assert g.solves([1, 2, 2, 1])
    assert rep["datum"]["n"] == 0

    op = pc.Operator(7, [0, 1, 3], [5, 5, 5, 5], [0], 2)
    rep = op.classify()
    assert rep["class"] == "nilpotent_nonzero"
    assert rep["datum"]["n"] == 8
    assert op.gauge([1, 0, 2]).classify()["class"] == "nilpotent_nonzero"

    assert pc.existence_polynomial(13, [11, 11, 11, 10], 1) == ["L/1", "(7+7*L)/1", "1/1"]

    sig = pc.Signature(13, [(2, 0), (2, 0), (2, 0), (3, 0)], [(1, 2)])
    assert sig.d == 1 and sig.validate() == []
    assert sig.strength() == 22
    assert sig.dimension() == (1, True)

    assert pc.nonempty(7, 5, 14)["verdict"] == "proved_nonempty_by_witness"
    assert pc.nonempty(7, 4, 7)["verdict"] == "constraints_violated"

    code, out, _ = pc.run_cli(["example", "p7"])
    assert code == 0 and json.loads(out)["command"] == "example"
    code, _, err = pc.run_cli(["classify", "--p", "7", "--alpha", "5,5", "--sing", "0,1,L"])
    assert code == 2 and err

    try:
        pc.Operator(8, [0, 1], [0, 0, 0], [], 0)
    except ValueError:
        pass
    else:
        raise AssertionError("p = 8 accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
