import random
from fractions import Fraction

import pytest

from wildram.dyadic import DyadicNumber, DyadicPolynomial, newton_polygon
from wildram.efg import classify_efg
from wildram.errors import ResidueDegreeOverflow, WrongGaloisClass
from wildram.galois import GaloisKind, galois_class
from wildram.oracle import build_splitting_tower, default_precision, inertia_fixed_class, oracle_efg
from wildram.tower import StepKind, TowerField, element_valuation, extend_by_sqrt, is_square_in_field, is_zero_to


def test_is_square_in_base_field():
    Q = TowerField.base(64)
    r = is_square_in_field(Q, 17)
    assert r is not None
    assert r.lift() % 4 == 1 or (-r).lift() % 4 == 1
    assert (r * r - DyadicNumber.from_int(17, 64)).is_zero
    assert is_square_in_field(Q, 3) is None


def test_generator_is_a_square_root():
    F, kind, g = TowerField.base(64).extend_by_sqrt(2)
    assert kind is StepKind.RAMIFIED and F.e == 2
    root = is_square_in_field(F, 2)
    assert root is not None
    assert is_zero_to(root * root - 2, 60)


@pytest.mark.parametrize("u, kind, e, f", [(2, StepKind.RAMIFIED, 2, 1), (-3, StepKind.UNRAMIFIED, 1, 2), (17, StepKind.TRIVIAL, 1, 1)])
def test_extend_examples(u, kind, e, f):
    F, k = extend_by_sqrt(TowerField.base(64), u)
    assert k is kind and (F.e, F.f) == (e, f)


def test_uniformizer_valuation_tracks_e():
    F = TowerField.base(96)
    for u in (3, -1):
        F, _, _ = F.extend_by_sqrt(u)
        assert F.valuation(F.uniformizer) == Fraction(1, F.e)


def test_residue_degree_overflow():
    F, _, _ = TowerField.base(64).extend_by_sqrt(5)
    y = F.residue_reps[2]
    # 1 + 4y with y of trace 1 generates the unramified quadratic of F
    with pytest.raises(ResidueDegreeOverflow):
        F.extend_by_sqrt(y * 4 + 1)


def test_element_valuations_c1():
    loc = build_splitting_tower(1, 64)
    F = loc.field
    assert element_valuation(F, loc.alpha) == Fraction(1, 4)
    assert element_valuation(F, 2) == 1


@pytest.mark.parametrize("c", [1, 5, -3, 9, 101, -7])
def test_alpha_plus_beta(c):
    loc = build_splitting_tower(c, 64)
    assert element_valuation(loc.field, loc.alpha + loc.beta) == Fraction(1, 2)


@pytest.mark.parametrize("c", [3, -6, 12, 2, 40, -1000])
def test_generator_relations(c):
    loc = build_splitting_tower(c, default_precision(c))
    F = loc.field
    target = c * c + c
    ab = loc.alpha * loc.beta
    assert is_zero_to(ab * ab - target, 40)
    assert is_zero_to(loc.alpha * loc.alpha - (loc.s - c), 40)
    assert is_zero_to(loc.beta * loc.beta - (-c - loc.s), 40)
    assert not is_zero_to(ab * ab, 40)


@pytest.mark.parametrize("c, triple", [(1, (8, 1, 1)), (0, (1, 1, 1)), (-1, (2, 1, 1)), (-17, (2, 1, 2)), (-9, (4, 1, 1))])
def test_oracle_examples(c, triple):
    assert oracle_efg(c).as_tuple() == triple


def test_minus_17_is_cyclic():
    assert galois_class(-17).kind is GaloisKind.C4
    assert oracle_efg(-17).degree == 4 == classify_efg(-17)[0].degree


def test_oracle_matches_classifier_sample():
    rng = random.Random(11)
    for c in [rng.randint(-10**9, 10**9) for _ in range(300)] + [4**k * 3 for k in range(2, 12)] + [-1 + 4**k * 3 for k in range(1, 10)]:
        assert oracle_efg(c) == classify_efg(c)[0], c


def test_nontrivial_steps_match_ef():
    for c in range(2, 200):
        loc = build_splitting_tower(c, default_precision(c))
        nontrivial = sum(k is not StepKind.TRIVIAL for k in loc.kinds)
        assert loc.field.e * loc.field.f == 2**nontrivial


def test_root_valuations_match_newton_polygon():
    rng = random.Random(3)
    sample = [c for c in (rng.randint(-10**6, 10**6) for _ in range(1000)) if galois_class(c).kind in (GaloisKind.D4, GaloisKind.C4)]
    for c in sample:
        p = default_precision(c)
        loc = build_splitting_tower(c, p)
        poly = DyadicPolynomial.from_ints([c * c + c, 0, 2 * c, 0, 1], p)
        predicted = sorted(newton_polygon(poly).root_valuations())
        va = loc.field.valuation(loc.alpha)
        vb = loc.field.valuation(loc.beta)
        assert sorted([va, va, vb, vb]) == predicted, c


@pytest.mark.parametrize(
    "c, inertia, decomposition",
    [(3, "Q(sqrt(-c))", "Q"), (1, "Q", "Q"), (7, "Q(alpha)", "Q(alpha)"), (6, "Q(sqrt(-(c+1)))", "Q(sqrt(-(c+1)))"),
     (11, "Q(sqrt(-c),sqrt(-(c+1)))", "Q(sqrt(c^2+c))")],
)
def test_inertia_examples(c, inertia, decomposition):
    info = inertia_fixed_class(c)
    assert info["inertia_field"] == inertia
    assert info["decomposition_field"] == decomposition


def test_inertia_degrees_match_triple():
    from wildram.galois import subfield_lattice

    for c in range(2, 600):
        if galois_class(c).kind is not GaloisKind.D4:
            continue
        info = inertia_fixed_class(c)
        e, f, g = info["triple"]
        lat = subfield_lattice(c)
        assert lat.node(info["inertia_field"]).degree == 8 // e
        assert lat.node(info["decomposition_field"]).degree == g


def test_inertia_wrong_class():
    with pytest.raises(WrongGaloisClass):
        inertia_fixed_class(-4)
