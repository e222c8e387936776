"""Group construction, validation, and exact counting ops against brute-force
oracles."""

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cayleylab import groups
from cayleylab.groups import (GroupTable, GroupValidationError, build_group,
                              build_group_from_table, centralizer_count,
                              check_small_class_hypotheses, dump_group_file,
                              inverting_count, involution_count,
                              involution_series, load_group_file,
                              square_root_count)

BATTERY_LITE = ["cyclic:5", "cyclic:12", "cyclic:16", "z2^:4", "dihedral:5",
                "dihedral:8", "sym:3", "sym:4", "sym:5",
                "prod:cyclic:3,sym:3", "prod:cyclic:2,cyclic:4"]


# -- construction ------------------------------------------------------------


def test_cyclic_is_modular_addition():
    g = build_group("cyclic:5")
    assert g.order == 5
    assert g.mul(2, 4) == 1
    assert g.inv(2) == 3
    assert g.mul(0, 3) == 3


def test_elem_abelian_2_is_self_inverse():
    g = build_group("z2^:3")
    assert g.order == 8
    assert all(g.inv(x) == x for x in range(8))
    assert g.mul(3, 5) == 6


def test_symmetric_orders():
    assert build_group("sym:4").order == 24
    assert build_group("sym:5").order == 120


def test_dihedral_relations():
    g = build_group("dihedral:6")
    m = 6
    rot, flip = 1, m  # generators: rotation r, reflection f
    assert g.power(rot, m) == 0
    assert g.mul(flip, flip) == 0
    # f r f = r^-1
    assert g.mul(g.mul(flip, rot), flip) == g.inv(rot)


def test_direct_product_componentwise():
    g = build_group("prod:cyclic:3,sym:4")
    assert g.order == 72
    c3, s4 = build_group("cyclic:3"), build_group("sym:4")
    a = 1 * 24 + 5
    b = 2 * 24 + 17
    expect = c3.mul(1, 2) * 24 + s4.mul(5, 17)
    assert g.mul(a, b) == expect


def test_parse_errors():
    for bad in ("cyclic", "frobnicate:3", "cyclic:-1", "sym:11", "prod:cyclic:3",
                "z2^:20", "cyclic:20000"):
        with pytest.raises(ValueError):
            groups.parse_family(bad)


def test_group_axioms_random_probes():
    rng = np.random.default_rng(0)
    for spec in BATTERY_LITE:
        g = build_group(spec)
        xs = rng.integers(0, g.order, size=50)
        ys = rng.integers(0, g.order, size=50)
        zs = rng.integers(0, g.order, size=50)
        for x, y, z in zip(xs, ys, zs):
            x, y, z = int(x), int(y), int(z)
            assert g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z))
            assert g.mul(x, g.inv(x)) == 0
            assert g.mul(0, x) == x == g.mul(x, 0)


# -- table validation ---------------------------------------------------------


def test_validation_non_latin():
    with pytest.raises(GroupValidationError, match="non-Latin"):
        build_group_from_table([[0, 0], [1, 1]])


def test_validation_no_identity():
    with pytest.raises(GroupValidationError, match="identity"):
        build_group_from_table([[1, 0], [0, 1]])


def test_validation_identity_position():
    # relabel cyclic:3 so the identity sits at index 1
    perm = [1, 0, 2]
    base = build_group("cyclic:3")
    table = [[perm[base.mul(perm.index(a), perm.index(b))] for b in range(3)]
             for a in range(3)]
    with pytest.raises(GroupValidationError, match="identity must be element 0"):
        build_group_from_table(table)


NONASSOC_LOOP = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 3, 4, 0, 1],
    [3, 4, 1, 2, 0],
    [4, 2, 0, 1, 3],
]


def test_validation_broken_associativity():
    with pytest.raises(GroupValidationError, match="associativity"):
        build_group_from_table(NONASSOC_LOOP)


def test_file_round_trip(tmp_path):
    path = str(tmp_path / "d4.tbl")
    g = build_group("dihedral:4")
    dump_group_file(g, path)
    loaded = load_group_file(path)
    assert loaded.order == 8
    assert all(loaded.mul(a, b) == g.mul(a, b)
               for a in range(8) for b in range(8))


def test_file_errors(tmp_path):
    bad = tmp_path / "bad.tbl"
    bad.write_text("2\n0 0\n1 1\n")
    with pytest.raises(GroupValidationError, match="non-Latin"):
        load_group_file(str(bad))
    short = tmp_path / "short.tbl"
    short.write_text("3\n0 1 2\n")
    with pytest.raises(GroupValidationError, match="expected"):
        load_group_file(str(short))


# -- conjugacy ------------------------------------------------------------------


def brute_conjugacy_sizes(g: GroupTable) -> list[int]:
    seen = set()
    sizes = []
    for x in range(g.order):
        if x in seen:
            continue
        orbit = {g.mul(g.mul(g.inv(z), x), z) for z in range(g.order)}
        seen |= orbit
        sizes.append(len(orbit))
    return sorted(sizes)


def test_conjugacy_sym3():
    g = build_group("sym:3")
    assert sorted(g.conjugacy().class_sizes.tolist()) == [1, 2, 3]


def test_conjugacy_abelian_singletons():
    for spec in ("cyclic:9", "z2^:4"):
        conj = build_group(spec).conjugacy()
        assert conj.num_classes == build_group(spec).order
        assert set(conj.class_sizes.tolist()) == {1}


@pytest.mark.parametrize("spec", ["sym:4", "sym:5", "dihedral:6", "prod:cyclic:3,sym:3"])
def test_conjugacy_matches_brute_force(spec):
    g = build_group(spec)
    assert sorted(g.conjugacy().class_sizes.tolist()) == brute_conjugacy_sizes(g)


def cycle_type_class_sizes(m: int) -> list[int]:
    """Independent oracle: class sizes of the degree-m symmetric group are
    m!/z_lambda over the integer partitions lambda."""

    def partitions(k, cap):
        if k == 0:
            yield ()
            return
        for first in range(min(k, cap), 0, -1):
            for rest in partitions(k - first, first):
                yield (first,) + rest

    out = []
    for lam in partitions(m, m):
        z = 1
        for size, reps in itertools.groupby(lam):
            r = len(list(reps))
            z *= size**r * math.factorial(r)
        out.append(math.factorial(m) // z)
    return sorted(out)


def test_conjugacy_perm_backed_sym8():
    g = build_group("sym:8")
    assert g.backing == "perm"
    conj = g.conjugacy()
    assert sorted(conj.class_sizes.tolist()) == cycle_type_class_sizes(8)
    assert conj.num_classes == 22


# -- counting ops ------------------------------------------------------------------


def brute_involutions(g: GroupTable) -> int:
    return sum(1 for x in range(1, g.order) if g.mul(x, x) == 0)


def test_involution_count_examples():
    assert involution_count(build_group("sym:4")) == 9
    assert involution_count(build_group("cyclic:7")) == 0
    for k in (2, 3, 5):
        assert involution_count(build_group(f"z2^:{k}")) == 2**k - 1
    assert involution_count(build_group("sym:4"), include_identity=True) == 10


@pytest.mark.parametrize("spec", BATTERY_LITE)
def test_involution_count_brute(spec):
    g = build_group(spec)
    assert involution_count(g) == brute_involutions(g)


def brute_sym_involutions(m: int) -> int:
    return sum(1 for p in itertools.permutations(range(m))
               if all(p[p[i]] == i for i in range(m)))


def test_involution_series():
    series = involution_series(6)
    assert series.values == (1, 2, 4, 10, 26, 76)
    assert series.bound_holds
    assert 76**2 <= 4**6 * math.factorial(6)  # a_6 <= 2^6 sqrt(720)
    for m in range(1, 9):
        assert involution_series(m).values[-1] == brute_sym_involutions(m)
    assert involution_series(20).bound_holds
    with pytest.raises(ValueError):
        involution_series(21)


def test_square_root_count_examples():
    assert square_root_count(build_group("cyclic:5"), 0) == 1
    for k in (2, 4):
        assert square_root_count(build_group(f"z2^:{k}"), 0) == 2**k
    s3 = build_group("sym:3")
    three_cycle = next(x for x in range(6) if s3.element_order(x) == 3)
    assert square_root_count(s3, three_cycle) == 1


@pytest.mark.parametrize("spec", BATTERY_LITE)
def test_square_root_bound(spec):
    g = build_group(spec)
    cl_g = g.conjugacy().num_classes
    worst = max(square_root_count(g, x) for x in range(g.order))
    assert worst <= math.sqrt(g.order * cl_g)


def test_centralizer_examples():
    g = build_group("z2^:4")
    assert all(centralizer_count(g, x) == 16 for x in range(16))
    s3 = build_group("sym:3")
    swap = next(x for x in range(6) if s3.element_order(x) == 2)
    assert centralizer_count(s3, swap) == 2
    assert inverting_count(build_group("cyclic:5"), 1) == 0


@pytest.mark.parametrize("spec", BATTERY_LITE)
def test_orbit_stabilizer_identity(spec):
    g = build_group(spec)
    conj = g.conjugacy()
    for x in range(g.order):
        cl_x = conj.cl(x)
        assert centralizer_count(g, x) * cl_x == g.order
        assert inverting_count(g, x) in (0, g.order // cl_x)


def test_small_class_report():
    rep = check_small_class_hypotheses(build_group("sym:5"), 0.1)
    # S_5 class sizes are 1,10,15,20,20,30,24; cl <= 10 catches the identity
    # and the ten transpositions
    assert rep.small_class_elements == 11
    assert rep.involutions == 25
    assert rep.small_class_involutions == 10

    rep = check_small_class_hypotheses(build_group("z2^:6"), 0.1)
    assert rep.involutions == 63
    assert rep.ref_involutions == pytest.approx(64**0.55)
    assert not rep.flags[0]  # involution-rich family overshoots

    rep = check_small_class_hypotheses(build_group("cyclic:9"), 0.2)
    assert rep.involutions == 0
    assert rep.flags[0]

    with pytest.raises(ValueError):
        check_small_class_hypotheses(build_group("cyclic:9"), 0.3)


# -- permutation backing -------------------------------------------------------------


def test_perm_backing_matches_dense_sym7():
    dense = build_group("sym:7")
    assert dense.backing == "dense"
    perm = GroupTable(spec="sym:7-perm", perm_degree=7)
    assert perm.backing == "perm"
    assert perm.order == dense.order == 5040
    rng = np.random.default_rng(123)
    a = rng.integers(0, 5040, size=100_000)
    b = rng.integers(0, 5040, size=100_000)
    assert (perm.mul_many(a, b) == dense.mul_many(a, b)).all()
    assert (perm.inv_many(a[:1000]) == dense.inv_many(a[:1000])).all()
    assert perm.mul(17, 2040) == dense.mul(17, 2040)
    assert perm.inv(4321) == dense.inv(4321)


def test_perm_backing_squares():
    g = build_group("sym:8")
    sq = g.squares()
    assert sq[0] == 0
    assert int((sq == 0).sum()) - 1 == involution_series(8).values[-1] - 1


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 30), st.integers(0, 10**6), st.integers(0, 10**6))
def test_cyclic_mul_property(n, a, b):
    g = build_group(f"cyclic:{n}")
    assert g.mul(a % n, b % n) == (a + b) % n
