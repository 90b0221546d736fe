"""Exercises the bindings end to end. Run after `pip install -e crates/py --no-build-isolation`."""

import json

import bisetcalc_py as bc


def main():
    names = bc.OneCell.fixture_names()
    assert "inc_e_c2" in names and "q_c2" in names

    # Ind along e -> C2 sends the point to the free C2-set
    inc = bc.OneCell.fixture("inc_e_c2")
    pt_e = bc.SliceObject.terminal(inc.source)
    free = bc.push_forward_plus(inc, pt_e)
    assert free.size == 2 and free.base.group == "C2"

    # C2-fixed points of the free set are empty
    q = bc.OneCell.fixture("q_c2")
    assert bc.push_forward_bullet(q, free).size == 0

    # restriction along the identity changes nothing
    ident = bc.OneCell.identity(free.base)
    assert bc.pull_star(ident, free).is_isomorphic(free)

    # [C2]^2 = 2[C2] in the Burnside ring of C2
    x = bc.Omega.from_object(free)
    assert x * x == x.scale(2)
    one = bc.Omega.one(free.base)

    # the norm of -1 along e -> C2 is [C2] - [pt], a unit of order two
    minus_one = -bc.Omega.one(inc.source)
    n = bc.omega_bullet(inc, minus_one)
    assert n == x - one, str(n)
    assert n * n == one

    table = json.loads(bc.burnside_table("S3"))
    assert len(table["basis"]) == 4

    reports = json.loads(bc.verify("der3", bound=2))
    assert reports and all(r["holds"] for r in reports)

    round_trip = bc.SliceObject.from_json(free.to_json())
    assert round_trip == free

    try:
        bc.OneCell.fixture("nope")
    except KeyError:
        pass
    else:
        raise AssertionError("unknown fixture accepted")

    try:
        bc.push_forward_plus(inc, free)
    except ValueError:
        pass
    else:
        raise AssertionError("base mismatch accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
