"""Smoke test for the pysbt extension module.

Build and install first, e.g.
    pip install maturin
    maturin build --release -m crates/python/Cargo.toml
    pip install target/wheels/pysbt-*.whl
"""

import pysbt


def main() -> None:
    pi = pysbt.Permutation.parse("4 3 2 1 8 7 6 5")
    assert len(pi) == 8
    assert pi.lower_bound() == 4
    assert pi.upper_bound() == 6

    res = pysbt.sort(pi)
    assert res.verify(pi), res
    assert res.lower <= res.distance <= res.upper
    assert res.distance <= 5
    assert len(res.steps) == len(res.phases) == res.distance

    step = pi
    for i, j, k in res.steps:
        step = step.transpose(i, j, k)
    assert step.is_identity()

    assert pysbt.exact_distance(pi) == 4
    table = pysbt.DistanceTable.build(6)
    assert table.diameter() == 4 and len(table) == 720
    assert table.get(pysbt.Permutation([3, 6, 2, 5, 1, 4])) == pysbt.exact_distance(pysbt.Permutation([3, 6, 2, 5, 1, 4]))

    sigma = pysbt.Permutation([2, 1, 3, 4, 5, 6, 7, 8])
    assert pysbt.distance(pi, pi).distance == 0
    assert pysbt.distance(pi, sigma).distance >= 1

    assert pysbt.f(8) == 11 and pysbt.f(7) == 10
    records, counterexamples, bad = pysbt.audit_cases(2)
    assert counterexamples == 0 and records == 3, (records, bad)

    try:
        pysbt.Permutation([1, 1])
    except ValueError:
        pass
    else:
        raise AssertionError("duplicate values accepted")

    print("pysbt smoke test ok:", res)


if __name__ == "__main__":
    main()
