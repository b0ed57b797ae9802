from fractions import Fraction

import pytest

otterforest = pytest.importorskip("otterforest")


def test_sequences():
    assert list(otterforest.sequence("rooted", 10).values()) == [1, 1, 2, 4, 9, 20, 48, 115, 286, 719]
    assert otterforest.sequence("free", 30)[30] == 14830871802
    assert otterforest.sequence("forest", 0) == {0: 1}
    with pytest.raises(ValueError):
        otterforest.sequence("bogus", 3)


def test_multiset_transform_gives_partitions():
    assert otterforest.multiset_transform([1] * 6, 6) == [1, 1, 2, 3, 5, 7, 11]


def test_component_law():
    assert otterforest.component_law(4) == {1: Fraction(1, 3), 2: Fraction(1, 3), 3: Fraction(1, 6), 4: Fraction(1, 6)}
    assert otterforest.component_law(0) == {0: Fraction(1)}


def test_constants():
    c = otterforest.constants(digits=15, truncation=2000)
    value, radius = c["alpha"]
    assert abs(float(value) - 0.3383218568992077) < 1e-12
    assert float(radius) < 1e-15
    assert abs(float(c["mean"][0]) - 1.755) < 1e-3


def test_sampler_is_reproducible():
    a = otterforest.sample_profiles(20, 50, seed=3)
    assert a == otterforest.sample_profiles(20, 50, seed=3)
    assert all(sum(size * count for size, count in p) == 20 for p in a)
    assert otterforest.sample_profiles(1, 3) == [[(1, 1)]] * 3


def test_criterion_and_cli():
    ok, line = otterforest.run_criterion(1, truncation=2000)
    assert ok and line.startswith("PASS [1]")
    code, out, err = otterforest.cli("seq", "--kind", "free", "--n", "5")
    assert code == 0 and out == "n,value\n1,1\n2,1\n3,1\n4,2\n5,3\n"
    assert otterforest.cli("seq", "--kind", "bogus", "--n", "1")[0] == 2
