"""Smoke test for the crkit Python extension.

Build first, for example:
    maturin develop -m crates/python/Cargo.toml --features extension-module
or copy target/*/libcrkit_py.so next to this script as crkit_py.so.
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import crkit_py as ck


def main() -> None:
    orbits = ck.enumerate_orbits(1, 2, 1)
    assert len(orbits) == 3, orbits
    hyper = ck.OrbitDescriptor(1, 2, 1, 0, 0)
    assert hyper.c == 1 and not hyper.is_open()

    alg = hyper.algebra()
    assert (alg.n, alg.k) == (1, 1)
    assert alg.is_n_reductive()
    assert alg.is_hnr() == "yes"
    assert alg.characteristic_dim() == 1
    sig = alg.levi_signature(["1"])
    assert sig["signature"]["plus"] + sig["signature"]["minus"] == 1, sig

    reports = ck.orbit_reports(3, 3, 2)
    off = [r for r in reports if r["discrepancies"]]
    assert {(r["a"], r["b"]) for r in off} >= {(1, 0), (0, 1)}

    probe = alg.mostow_probe(samples=20)
    assert probe["full_rank_everywhere"], probe

    assert ck.hermitian_signature([["1", "0"], ["0", "-1"]]) == {"plus": 1, "minus": 1, "zero": 0}
    spec = {"context": {"p": 2, "q": 0}, "v_basis": [[["0", "1"], ["0", "0"]], [["0", "0"], ["1", "0"]]]}
    try:
        ck.CRAlgebra.from_json(json.dumps(spec))
    except ValueError as e:
        assert "not a subalgebra" in str(e)
    else:
        raise AssertionError("non-closed basis accepted")
    print("smoke test ok")


if __name__ == "__main__":
    main()
