"""Bigraded algebra structure: wedge, conjugation, actions."""

import random

import pytest

from hermform.catalog import calabi_eckmann, nakamura, torus
from hermform.model import (DiagonalAction, GeneratorSpec, ModelError,
                            ModelMismatch, ModelSpec, invariant_submodel)
from hermform.scalars import GaussianRational, I, ONE


def rand_form(spec, rng, terms=3):
    f = spec.zero()
    bids = spec.bidegrees()
    for _ in range(terms):
        p, q = bids[rng.randrange(len(bids))]
        basis = spec.basis(p, q)
        mono = basis[rng.randrange(len(basis))]
        f = f + spec.monomial_form(
            mono, GaussianRational(rng.randint(-2, 2), rng.randint(-2, 2)))
    return f


@pytest.fixture(scope="module")
def iwasawa():
    return nakamura("III.2")


def test_graded_commutativity(iwasawa):
    p1 = iwasawa.gen("p1")
    p2 = iwasawa.gen("p2")
    q1 = iwasawa.gen("q1")
    assert p1.wedge(p2).equals(-p2.wedge(p1))
    assert p1.wedge(q1).equals(-q1.wedge(p1))
    assert p1.wedge(p1).is_zero()


def test_even_generators_commute_and_truncate():
    ce = calabi_eckmann(1, 2)
    w1, w2 = ce.gen("w1"), ce.gen("w2")
    assert w1.wedge(w2).equals(w2.wedge(w1))
    assert w1.wedge(w1).is_zero()          # trunc 2
    assert not w2.wedge(w2).is_zero()      # trunc 3
    assert w2.wedge(w2).wedge(w2).is_zero()


def test_wedge_associative_random():
    rng = random.Random(31)
    spec = nakamura("IV.3")
    for _ in range(20):
        a, b, c = (rand_form(spec, rng) for _ in range(3))
        assert a.wedge(b).wedge(c).equals(a.wedge(b.wedge(c)))
        assert a.wedge(b + c).equals(a.wedge(b) + a.wedge(c))


def test_conjugation_involution_and_antiautomorphism():
    rng = random.Random(37)
    for spec in (nakamura("III.2"), calabi_eckmann(1, 1)):
        for _ in range(20):
            a, b = rand_form(spec, rng), rand_form(spec, rng)
            assert a.conjugate().conjugate().equals(a)
            assert a.wedge(b).conjugate().equals(
                a.conjugate().wedge(b.conjugate()))


def test_conjugation_swaps_bidegrees(iwasawa):
    f = iwasawa.gen("p1").wedge(iwasawa.gen("p2")).wedge(iwasawa.gen("q1"))
    assert f.bidegree() == (2, 1)
    assert f.conjugate().bidegree() == (1, 2)


def test_volume_and_basis_dimensions(iwasawa):
    assert len(iwasawa.basis(3, 3)) == 1
    # bidegree (p, q) dimension is C(3,p) C(3,q)
    assert len(iwasawa.basis(1, 2)) == 9
    assert len(iwasawa.basis(0, 0)) == 1
    assert iwasawa.basis(4, 0) == []


def test_is_multiple_of(iwasawa):
    f = iwasawa.gen("p1").wedge(iwasawa.gen("q2"))
    assert (f * GaussianRational(0, 3)).is_multiple_of(f)
    assert not f.is_multiple_of(iwasawa.gen("p1").wedge(iwasawa.gen("q1")))
    assert iwasawa.zero().is_multiple_of(iwasawa.zero())
    assert not iwasawa.zero().is_multiple_of(f)


def test_model_mismatch():
    a = torus(2)
    b = torus(2)
    with pytest.raises(ModelMismatch):
        a.gen("p1").wedge(b.gen("p1"))


def test_generator_validation_errors():
    with pytest.raises(ModelError):
        # conjugate bidegree mismatch
        ModelSpec("bad", 1, [GeneratorSpec("a", (1, 0), 2, "a")])
    with pytest.raises(ModelError):
        # odd generator must truncate at 2
        ModelSpec("bad", 2, [
            GeneratorSpec("a", (1, 0), 3, "b"),
            GeneratorSpec("b", (0, 1), 3, "a")])
    with pytest.raises(ModelError):
        # not an involution
        ModelSpec("bad", 1, [
            GeneratorSpec("a", (1, 0), 2, "b"),
            GeneratorSpec("b", (0, 1), 2, "b")])


def test_assignment_validation():
    with pytest.raises(ModelError):
        # dbar(q) must be conj(del p): here it is missing
        parallel = torus(2)
        ModelSpec("bad", 2, parallel.generators,
                  {"p1": {(0, 1, 0, 0): ONE}}, {})


def test_diagonal_action_validation(iwasawa):
    with pytest.raises(ModelError):
        DiagonalAction.from_map(iwasawa, {
            "p1": 2, "p2": 1, "p3": 1, "q1": 2, "q2": 1, "q3": 1})
    with pytest.raises(ModelError):
        # conjugate weight not conjugated
        DiagonalAction.from_map(iwasawa, {
            "p1": I, "p2": 1, "p3": 1, "q1": I, "q2": 1, "q3": 1})


def test_invariant_submodel_requires_equivariance(iwasawa):
    bad = DiagonalAction.from_map(iwasawa, {
        "p1": I, "p2": -I, "p3": GaussianRational(-1),
        "q1": -I, "q2": I, "q3": GaussianRational(-1)})
    with pytest.raises(ModelError):
        invariant_submodel(iwasawa, bad)
    good = DiagonalAction.from_map(iwasawa, {
        "p1": I, "p2": I, "p3": GaussianRational(-1),
        "q1": -I, "q2": -I, "q3": GaussianRational(-1)})
    keep = invariant_submodel(iwasawa, good)
    # p1 p2 has weight i*i = -1: not invariant; p1 q1 is invariant
    mono_p1p2 = iwasawa.gen("p1").wedge(iwasawa.gen("p2"))
    mono_p1q1 = iwasawa.gen("p1").wedge(iwasawa.gen("q1"))
    assert not keep(next(iter(mono_p1p2.components)))
    assert keep(next(iter(mono_p1q1.components)))


def test_form_from_names_and_pretty(iwasawa):
    f = iwasawa.form_from_names(("p3", "q1", "q2", "q3"))
    assert f.bidegree() == (1, 3)
    assert f.pretty(ascii_only=True) == "p3*q1*q2*q3"
    assert iwasawa.zero().pretty() == "0"
