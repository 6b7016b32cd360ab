import numpy as np
import pytest

from cubictrans import FAMILIES, PARETO, ConstraintSet, TransmutationKernel, get_family, kernel_of
from cubictrans.errors import ConstructionError

ARITY = {"QT": 1, "A": 1, "MA": 1, "R19": 1, "MR19": 1,
         "G": 2, "MG": 2, "R18a": 2, "MR18a": 2, "R18b": 2, "MR18b": 2, "R23": 2}


def test_registry_arity():
    assert set(FAMILIES) == set(ARITY)
    for fid, n in ARITY.items():
        assert FAMILIES[fid].arity == n
        assert FAMILIES[fid].k == n + 1
    assert PARETO.arity == 0 and PARETO.k == 1


@pytest.mark.parametrize("name, fid", [
    ("mg", "MG"), ("R18A", "R18a"), ("tp", "QT"), ("qt", "QT"), ("Pareto", "Pareto")])
def test_aliases(name, fid):
    assert get_family(name).family_id == fid


def test_unknown_family():
    with pytest.raises(KeyError):
        get_family("weibull")


@pytest.mark.parametrize("fid, params, expected", [
    ("MG", (1, 1), (1, 0, 0)),
    ("A", (0,), (1, 0, 0)),
    ("R23", (1, 2), (0, 6, -6)),
    ("R19", (1,), (0, 6, -6)),
    ("QT", (0.5,), (1.5, -1.0, 0.0)),
    ("R18b", (0.2, 0.3), (1.5, -1.6, 0.9)),
])
def test_kernel_of(fid, params, expected):
    np.testing.assert_allclose(kernel_of(fid, params).coefficients, expected, atol=1e-15)


def test_arity_mismatch():
    with pytest.raises(ConstructionError):
        kernel_of("MG", (1,))
    with pytest.raises(ConstructionError):
        kernel_of("A", (1, 2))


def test_kernel_rejects_unnormalized():
    with pytest.raises(ConstructionError):
        TransmutationKernel(1, 1, 0)


@pytest.mark.parametrize("fid", sorted(FAMILIES))
def test_normalization_random_params(fid, rng):
    fam = FAMILIES[fid]
    lo, hi = fam.constraints.bounding_box()
    for p in rng.uniform(lo - 2, hi + 2, size=(200, fam.arity)):
        c0, c1, c2 = kernel_of(fam, p).coefficients
        assert abs(c0 + c1 / 2 + c2 / 3 - 1) < 1e-12


def test_kernel_cdf_is_antiderivative():
    k = kernel_of("R23", (0.7, 1.3))
    t = np.linspace(0, 1, 11)
    h = 1e-6
    np.testing.assert_allclose((k.cdf(t + h) - k.cdf(t - h)) / (2 * h), k.density(t), atol=1e-8)
    assert k.cdf(0.0) == 0.0
    assert k.cdf(1.0) == pytest.approx(1.0, abs=1e-15)


def test_constraint_set_vertices():
    mg = FAMILIES["MG"].constraints
    v = {tuple(p) for p in mg.vertices()}
    assert v == {(0.0, 0.0), (3.0, 0.0), (0.0, 3.0)}
    np.testing.assert_allclose(mg.centroid(), [1.0, 1.0])
    r18a = FAMILIES["R18a"].constraints
    assert {tuple(p) for p in r18a.vertices()} == {(-1, -1), (1, -1), (1, 0), (0, 1), (-1, 1)}


def test_constraint_set_sampling_inside(rng):
    cs = FAMILIES["MR18b"].constraints
    pts = cs.sample(rng, 500)
    assert pts.shape == (500, 2)
    assert cs.contains_many(pts).all()


def test_from_bounds_rows():
    cs = ConstraintSet.from_bounds(2, boxes=[(0, 0, 1)], sums=[(-1, 2)])
    assert cs.contains([0.5, 1.5])
    assert not cs.contains([0.5, 1.6])
    assert not cs.contains([-0.01, 0.0])
