import pytest

from rootreg.rootsys import (
    CatalogError,
    RootSystemError,
    build_root_system,
    coarse_classes,
    make_restricted,
    restricted_system,
)
from rootreg.numerology import list_real_forms

# closed-form root counts, independent of the reflection closure
COUNTS = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n * n,
    "C": lambda n: 2 * n * n,
    "D": lambda n: 2 * n * (n - 1),
    "BC": lambda n: 2 * n * n + 2 * n,
}
EXCEPTIONAL = {("E6", 6): 72, ("E7", 7): 126, ("E8", 8): 240, ("F4", 4): 48, ("G2", 2): 12}

CLASSICAL = [(t, n) for t in "ABC" for n in range(1, 9) if not (t in "BC" and n == 1)]
CLASSICAL += [("D", n) for n in range(4, 9)] + [("BC", n) for n in range(1, 9)]


@pytest.mark.parametrize("t,n", CLASSICAL + list(EXCEPTIONAL))
def test_root_count_matches_closed_form(t, n):
    system = build_root_system(t, n)
    expected = EXCEPTIONAL.get((t, n)) or COUNTS[t](n)
    assert len(system.roots) == expected
    assert len(system.positive_roots) == expected // 2
    assert len(set(system.roots)) == expected


@pytest.mark.parametrize("t,n", CLASSICAL + list(EXCEPTIONAL))
def test_roots_closed_under_simple_reflections(t, n):
    system = build_root_system(t, n)
    roots = set(system.roots)
    for i in range(1, n + 1):
        assert {system.reflect(r, i) for r in roots} == roots
        # a simple reflection swaps alpha_i with its negative
        ai = system.simple_roots[i - 1]
        assert system.reflect(ai, i) == tuple(-c for c in ai)


@pytest.mark.parametrize("t,n", CLASSICAL + list(EXCEPTIONAL))
def test_positive_roots_have_nonnegative_coordinates(t, n):
    system = build_root_system(t, n)
    for r in system.roots:
        pos = r in system.positive
        assert all(c >= 0 for c in r) if pos else all(c <= 0 for c in r)
        assert tuple(-c for c in r) in set(system.roots)


def test_a2():
    system = build_root_system("A", 2)
    assert set(system.positive_roots) == {(1, 0), (0, 1), (1, 1)}
    assert len(system.roots) == 6


def test_bc1():
    system = build_root_system("BC", 1)
    assert set(system.roots) == {(1,), (-1,), (2,), (-2,)}
    assert len(system.positive_roots) == 2


def test_g2_highest_root():
    system = build_root_system("G2", 2)
    assert len(system.roots) == 12
    # alpha_1 short
    assert system.is_root((3, 2))
    assert system.highest_root() == (3, 2)


def test_e8_highest_root():
    assert build_root_system("E8", 8).highest_root() == (2, 3, 4, 6, 5, 4, 3, 2)


@pytest.mark.parametrize("t,n", [("D", 3), ("D", 2), ("B", 1), ("C", 1), ("E8", 7), ("G2", 3), ("X", 2), ("A", 0)])
def test_invalid_pairs_rejected(t, n):
    with pytest.raises(RootSystemError):
        build_root_system(t, n)


def test_coarse_classes_reduced_are_singletons():
    classes = coarse_classes(build_root_system("A", 2))
    assert len(classes) == 6
    assert all(len(c.members) == 1 for c in classes)


def test_coarse_classes_bc1():
    classes = coarse_classes(build_root_system("BC", 1))
    assert {c.members for c in classes} == {frozenset({(1,), (2,)}), frozenset({(-1,), (-2,)})}


def test_coarse_classes_bc2():
    classes = coarse_classes(build_root_system("BC", 2))
    assert len(classes) == 8
    assert sum(len(c.members) == 2 for c in classes) == 4


@pytest.mark.parametrize("t,n", [("BC", k) for k in range(1, 6)] + [("C", 3), ("E6", 6)])
def test_coarse_classes_partition_roots(t, n):
    system = build_root_system(t, n)
    classes = coarse_classes(system)
    seen = [r for c in classes for r in c.members]
    assert sorted(seen) == sorted(system.roots)
    for c in classes:
        rep = c.representative
        for r in c.members:
            # positively proportional to the representative
            k = next(a // b for a, b in zip(r, rep) if b)
            assert k > 0 and tuple(k * x for x in rep) == r


def test_restricted_examples():
    d = restricted_system("sl(3,R)")
    assert (d.system.type_label, d.system.rank, d.dim_g) == ("A", 2, 8)
    assert set(d.multiplicity.values()) == {1}
    assert restricted_system("su(2,2)").system.type_label == "C"
    h = restricted_system("sl(2,H)")
    assert (h.system.type_label, h.system.rank, h.dim_g) == ("A", 1, 15)
    assert set(h.multiplicity.values()) == {4}
    assert h.center_dim_ma == 7


def test_unknown_entry():
    with pytest.raises(CatalogError):
        restricted_system("sl(2,O)")


def test_bookkeeping_every_catalog_entry():
    for entry in list_real_forms():
        data = entry.restricted_data()
        assert data.dim_g == data.center_dim_ma + data.root_space_dim
        assert data.center_dim_ma >= data.real_rank
        assert entry.rank == data.real_rank


def test_bookkeeping_violation_named():
    system = build_root_system("A", 2)
    with pytest.raises(CatalogError, match="broken"):
        make_restricted(system, 7, name="broken")
    with pytest.raises(CatalogError):
        make_restricted(build_root_system("BC", 2), 20, long_mult=1)
