"""Factor-system laws, Schreier extensions, equivalences, classification."""

import itertools
from fractions import Fraction

import pytest

from glattice import (
    DivisionRing,
    FactorSystem,
    RingAutomorphism,
    are_isomorphic,
    build_extension,
    check_equivalence,
    classify_extension,
    classify_up_to_equivalence,
    cyclic_group,
    dihedral_group,
    enumerate_factor_systems,
    extension_iso_from_equivalence,
    factor_system_from_rep,
    find_equivalence,
    identify_group,
    transform_factor_system,
    transport_rep,
    trivial_factor_system,
    validate_factor_system,
)
from glattice.errors import (
    InfiniteCarrier,
    NotAssociated,
    NotEquivalent,
    TooLarge,
    ZeroBracket,
)
from glattice.rep import rep_equivalence
from glattice.tgring import TwistedGroupRing, regular_representation

from test_rep import frobenius_rep_gf4


def e2_holds_oracle(fs):
    """Direct reimplementation of the E2 law, kept independent of
    validate_factor_system."""
    group = fs.group
    for g in range(group.order):
        for h in range(group.order):
            for k in range(group.order):
                gh = group.cayley[g][h]
                hk = group.cayley[h][k]
                lhs = fs.bracket[g][h] * fs.bracket[gh][k]
                rhs = fs.chi[g](fs.bracket[h][k]) * fs.bracket[g][hk]
                if lhs != rhs:
                    return False
    return True


# ---------------------------------------------------------------------------
# validation


def test_trivial_system_valid(gf3):
    fs = trivial_factor_system(cyclic_group(2), gf3)
    assert validate_factor_system(fs).ok
    assert e2_holds_oracle(fs)


def test_c2_gf3_twisted_bracket_valid(gf3):
    fs = FactorSystem(cyclic_group(2), gf3, {}, {(1, 1): 2})
    report = validate_factor_system(fs)
    assert report.ok
    assert e2_holds_oracle(fs)  # exhaustive oracle over the 8 triples


def test_e3_violation_reported(gf3):
    # C1 keeps E2 satisfiable while E3 breaks
    fs = FactorSystem(cyclic_group(1), gf3, {}, {(0, 0): 2})
    report = validate_factor_system(fs)
    assert not report.ok and report.law == "E3"


def test_e3_checked_before_e2(gf3):
    fs = FactorSystem(cyclic_group(2), gf3, {}, {(0, 0): 2})
    report = validate_factor_system(fs)
    assert report.law == "E3"


def test_e1_violation_for_non_homomorphic_chi(gf4):
    # chi(a) = Frobenius on C3 is not a homomorphism: chi(a)^3 = Frobenius != id
    frob = RingAutomorphism.frobenius(gf4, 1)
    fs = FactorSystem(cyclic_group(3), gf4, {1: frob}, {})
    report = validate_factor_system(fs)
    assert not report.ok and report.law == "E1"


def test_e2_violation_reported(gf5):
    fs = FactorSystem(cyclic_group(3), gf5, {}, {(1, 1): 2})
    report = validate_factor_system(fs)
    assert not report.ok and report.law == "E2"
    g, h, k = report.witness
    gh = fs.group.cayley[g][h]
    hk = fs.group.cayley[h][k]
    assert fs.bracket[g][h] * fs.bracket[gh][k] != fs.chi[g](fs.bracket[h][k]) * fs.bracket[g][hk]


def test_zero_bracket_rejected(gf3):
    with pytest.raises(ZeroBracket):
        FactorSystem(cyclic_group(2), gf3, {}, {(1, 1): 0})


def test_identity_brackets_are_derived():
    # bracket(1,h) = bracket(g,1) = 1 is not imposed at construction,
    # but follows from E2+E3: every enumerated valid system satisfies it.
    #   E2 at (1,1,k):  [1,1][1,k] = chi(1)([1,k])[1,k]  =>  [1,k] = [1,k]^2
    #   E2 at (g,1,1):  [g,1][g,1] = chi(g)([1,1])[g,1]  =>  [g,1] = 1
    for ring in (DivisionRing.gf(3), DivisionRing.gf(2, 2)):
        for fs in enumerate_factor_systems(cyclic_group(3), ring):
            for g in range(3):
                assert fs.bracket[0][g].is_one()
                assert fs.bracket[g][0].is_one()


def test_noncommutative_factor_system(quaternions):
    # chi(a) = conjugation by 1+i squares to conjugation by 2i = inner(i),
    # matching bracket(a,a) = i, so E1 holds noncommutatively.
    c2 = cyclic_group(2)
    one_plus_i = quaternions.scalar((1, 1, 0, 0))
    i = quaternions.scalar((0, 1, 0, 0))
    fs = FactorSystem(
        c2, quaternions, {1: RingAutomorphism.inner(one_plus_i)}, {(1, 1): i}
    )
    assert validate_factor_system(fs).ok
    flags = classify_extension(fs)
    assert not flags.central  # i is not central in the quaternions
    assert not flags.projective and not flags.split
    # breaking the bracket away from the chi square must now fail E1
    j = quaternions.scalar((0, 0, 1, 0))
    bad = FactorSystem(
        c2, quaternions, {1: RingAutomorphism.inner(one_plus_i)}, {(1, 1): j}
    )
    report = validate_factor_system(bad)
    assert not report.ok and report.law == "E1"


# ---------------------------------------------------------------------------
# building extensions


def test_trivial_extension_is_direct_product(gf3):
    fs = trivial_factor_system(cyclic_group(2), gf3)
    ext = build_extension(fs)
    group, _ = ext.materialize()
    assert group.order == 4
    assert identify_group(group) == "C2xC2"


def test_twisted_extension_is_c4(gf3):
    fs = FactorSystem(cyclic_group(2), gf3, {}, {(1, 1): 2})
    ext = build_extension(fs)
    # order oracle, straight from the multiplication law
    x = (gf3.one(), 1)
    seen = x
    order = 1
    while seen != ext.identity():
        seen = ext.multiply(seen, x)
        order += 1
        assert order <= 8
    assert order == 4
    assert identify_group(ext.group) == "C4"


def test_frobenius_extension_is_s3(gf4):
    frob = RingAutomorphism.frobenius(gf4, 1)
    fs = FactorSystem(cyclic_group(2), gf4, {1: frob}, {})
    ext = build_extension(fs)
    assert are_isomorphic(ext.group, dihedral_group(3))
    assert identify_group(ext.group) == "S3"


def test_lazy_extension_over_rationals(rationals):
    fs = trivial_factor_system(cyclic_group(3), rationals)
    ext = build_extension(fs)
    assert not ext.is_finite
    two, three = rationals.scalar(2), rationals.scalar(3)
    assert ext.multiply((two, 1), (three, 1)) == (rationals.scalar(6), 2)
    with pytest.raises(InfiniteCarrier):
        ext.materialize()
    # inverses work lazily too
    x = (rationals.scalar(Fraction(5, 7)), 2)
    assert ext.multiply(x, ext.inverse(x)) == ext.identity()
    assert ext.multiply(ext.inverse(x), x) == ext.identity()


def test_materialize_too_large():
    # 1009 is prime: 1008 units x |C2| = 2016 pairs, past the cap
    c2 = cyclic_group(2)
    fs_big = trivial_factor_system(c2, DivisionRing.gf(1009))
    from glattice.extension import SchreierExtension

    with pytest.raises(TooLarge):
        SchreierExtension(fs_big).materialize()


# ---------------------------------------------------------------------------
# classification flags


def test_flags_trivial_system(gf3):
    flags = classify_extension(trivial_factor_system(cyclic_group(2), gf3))
    assert flags.central and flags.projective and flags.split and flags.direct


def test_flags_projective_not_split(gf3):
    flags = classify_extension(FactorSystem(cyclic_group(2), gf3, {}, {(1, 1): 2}))
    assert flags.central and flags.projective
    assert not flags.split and not flags.direct


def test_flags_split_not_projective(gf4):
    frob = RingAutomorphism.frobenius(gf4, 1)
    flags = classify_extension(FactorSystem(cyclic_group(2), gf4, {1: frob}, {}))
    assert flags.central and flags.split
    assert not flags.projective and not flags.direct


# ---------------------------------------------------------------------------
# factor systems from representations


def test_shift_rep_yields_trivial_system(shift_rep_q, rationals):
    fs = factor_system_from_rep(shift_rep_q)
    assert fs == trivial_factor_system(cyclic_group(3), rationals)


def test_projective_rep_yields_twisted_bracket(gf3):
    fs0 = FactorSystem(cyclic_group(2), gf3, {}, {(1, 1): 2})
    rho = regular_representation(TwistedGroupRing(fs0))
    fs = factor_system_from_rep(rho)
    assert fs == fs0
    assert fs.bracket[1][1] == gf3.scalar(2)


def test_frobenius_rep_yields_twisted_chi(gf4):
    fs = factor_system_from_rep(frobenius_rep_gf4())
    assert fs.chi[1] == RingAutomorphism.frobenius(gf4, 1)
    assert all(x.is_one() for row in fs.bracket for x in row)


# ---------------------------------------------------------------------------
# equivalence


def test_self_equivalence(gf3):
    fs = FactorSystem(cyclic_group(2), gf3, {}, {(1, 1): 2})
    assert check_equivalence(fs, fs, {0: 1, 1: 1})


def test_c2_gf3_systems_not_equivalent(gf3):
    c2 = cyclic_group(2)
    fs1 = trivial_factor_system(c2, gf3)
    fs2 = FactorSystem(c2, gf3, {}, {(1, 1): 2})
    # oracle: mu(a)^2 = 1 for both unit candidates, so the coboundary
    # cannot bridge bracket 1 and bracket 2
    for mu_a in (1, 2):
        assert (gf3.scalar(mu_a) * gf3.scalar(mu_a)).is_one()
    assert find_equivalence(fs1, fs2) is None
    assert find_equivalence(fs2, fs1) is None


def test_gf4_c3_coboundary_equivalence(gf4):
    c3 = cyclic_group(3)
    fs1 = trivial_factor_system(c3, gf4)
    omega = gf4.scalar(2)
    nu = {0: gf4.one(), 1: omega, 2: omega}
    fs2 = transform_factor_system(fs1, nu)
    assert validate_factor_system(fs2).ok
    assert not all(x.is_one() for row in fs2.bracket for x in row)
    # the coboundary shape: bracket'(g,h) = nu(g)^-1 nu(h)^-1 nu(gh)... times 1
    for g in range(3):
        for h in range(3):
            gh = c3.cayley[g][h]
            expected = nu[g].inverse() * nu[h].inverse() * nu[gh]
            assert fs2.bracket[g][h] == expected
    mu = find_equivalence(fs1, fs2)
    assert mu is not None
    assert check_equivalence(fs1, fs2, mu)


def test_extension_iso_identity(gf3):
    fs = FactorSystem(cyclic_group(2), gf3, {}, {(1, 1): 2})
    iso = extension_iso_from_equivalence(fs, fs, {0: 1, 1: 1})
    for pair in iso.src.pairs():
        assert iso(pair) == pair


def test_extension_iso_explicit(gf4):
    c3 = cyclic_group(3)
    fs1 = trivial_factor_system(c3, gf4)
    omega = gf4.scalar(2)
    fs2 = transform_factor_system(fs1, {0: gf4.one(), 1: omega, 2: omega})
    mu = find_equivalence(fs1, fs2)
    iso = extension_iso_from_equivalence(fs1, fs2, mu)  # |H| = 9: exhaustive
    # the K*-layer maps onto the K*-layer (mu(e) = 1)
    for a in gf4.units():
        assert iso((a, 0)) == (a, 0)


def test_iso_requires_equivalence(gf3):
    c2 = cyclic_group(2)
    fs1 = trivial_factor_system(c2, gf3)
    fs2 = FactorSystem(c2, gf3, {}, {(1, 1): 2})
    with pytest.raises(NotEquivalent):
        extension_iso_from_equivalence(fs1, fs2, {0: 1, 1: 1})


def test_equivalent_systems_isomorphic_extensions_and_converse(gf3):
    # desk-scale instance of "equivalent iff isomorphic": the two
    # (C2, GF(3)) classes give C2xC2 and C4, which are not isomorphic
    c2 = cyclic_group(2)
    fs1 = trivial_factor_system(c2, gf3)
    fs2 = FactorSystem(c2, gf3, {}, {(1, 1): 2})
    assert find_equivalence(fs1, fs2) is None
    assert not are_isomorphic(build_extension(fs1).group, build_extension(fs2).group)


# ---------------------------------------------------------------------------
# enumeration / classification counts
#
# Expected counts come from the cyclic-group cohomology formulas, an
# oracle independent of the search: for trivial chi over GF(q) and
# G = C_n, the valid systems number |B^2| * |H^2| with
# |B^2| = (q-1)^(n-1) / |Hom(C_n, K*)| and |H^2| = gcd(n, q-1).


def cohomology_counts_oracle(n, q):
    import math

    units = q - 1
    hom = math.gcd(n, units)  # |Hom(C_n, K*)| for cyclic K*
    b2 = units ** (n - 1) // hom
    h2 = math.gcd(n, units)
    return b2 * h2, h2


@pytest.mark.parametrize(
    "n,ring_args,systems,classes",
    [
        (2, (3,), 2, 2),
        (2, (2,), 1, 1),
        (3, (2, 2), 9, 3),
        (4, (3,), 8, 2),
        (2, (5,), 4, 2),
        (3, (3,), 4, 1),
    ],
)
def test_enumeration_counts(n, ring_args, systems, classes):
    ring = DivisionRing.gf(*ring_args)
    expected_systems, expected_classes = cohomology_counts_oracle(n, ring.order)
    assert (expected_systems, expected_classes) == (systems, classes)
    group = cyclic_group(n)
    found = enumerate_factor_systems(group, ring)
    assert len(found) == systems
    assert all(validate_factor_system(fs).ok for fs in found)
    split = classify_up_to_equivalence(group, ring)
    assert len(split) == classes
    assert sum(len(cls) for cls in split) == systems


def test_enumeration_with_frobenius_chi(gf4):
    c2 = cyclic_group(2)
    frob = RingAutomorphism.frobenius(gf4, 1)
    chi = {0: RingAutomorphism.identity(gf4), 1: frob}
    found = enumerate_factor_systems(c2, gf4, chi)
    # E2 at (a,a,a) forces bracket(a,a) = bracket(a,a)^2, so only 1 works
    assert len(found) == 1
    assert all(x.is_one() for row in found[0].bracket for x in row)
    assert len(classify_up_to_equivalence(c2, gf4, chi)) == 1


def test_classes_closed_under_equivalence(gf3, gf4):
    for group, ring in ((cyclic_group(2), gf3), (cyclic_group(3), gf4)):
        classes = classify_up_to_equivalence(group, ring)
        for cls in classes:
            for fs1 in cls:
                for fs2 in cls:
                    assert find_equivalence(fs1, fs2) is not None
        for cls1, cls2 in itertools.combinations(classes, 2):
            assert find_equivalence(cls1[0], cls2[0]) is None


def test_enumeration_guards(rationals, gf5):
    with pytest.raises(InfiniteCarrier):
        enumerate_factor_systems(cyclic_group(2), rationals)
    with pytest.raises(TooLarge):
        enumerate_factor_systems(cyclic_group(4), gf5)


def test_c2_gf5_extension_groups(gf5):
    classes = classify_up_to_equivalence(cyclic_group(2), gf5)
    names = sorted(identify_group(build_extension(cls[0]).group) for cls in classes)
    assert names == ["C4xC2", "C8"]


def test_klein_group_enumeration(gf3):
    v4 = dihedral_group(2)
    found = enumerate_factor_systems(v4, gf3)
    assert all(validate_factor_system(fs).ok for fs in found)
    ext_orders = {build_extension(fs).group.order for fs in found}
    assert ext_orders == {8}


# ---------------------------------------------------------------------------
# equivalence transport of representations


def test_transport_identity(gf3):
    fs = FactorSystem(cyclic_group(2), gf3, {}, {(1, 1): 2})
    rho = regular_representation(TwistedGroupRing(fs))
    moved = transport_rep(rho, fs, fs, {0: 1, 1: 1})
    assert moved == rho


def test_transport_and_roundtrip(gf4):
    c3 = cyclic_group(3)
    fs = trivial_factor_system(c3, gf4)
    omega = gf4.scalar(2)
    fs_target = transform_factor_system(fs, {0: gf4.one(), 1: omega, 2: omega})
    rho = regular_representation(TwistedGroupRing(fs))
    mu = find_equivalence(fs_target, fs)
    assert mu is not None
    moved = transport_rep(rho, fs, fs_target, mu)
    assert factor_system_from_rep(moved) == fs_target
    # the transported representation must be equivalent to the original
    witness = rep_equivalence(rho, moved)
    assert witness is not None
    # pointwise inverse restores the original exactly
    mu_inv = [m.inverse() for m in mu]
    assert check_equivalence(fs, fs_target, mu_inv)
    back = transport_rep(moved, fs_target, fs, mu_inv)
    assert back == rho


def test_transport_not_associated(gf3):
    c2 = cyclic_group(2)
    fs1 = trivial_factor_system(c2, gf3)
    fs2 = FactorSystem(c2, gf3, {}, {(1, 1): 2})
    rho = regular_representation(TwistedGroupRing(fs1))
    with pytest.raises(NotAssociated):
        transport_rep(rho, fs2, fs1, {0: 1, 1: 1})
