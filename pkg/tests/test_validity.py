import numpy as np
import pytest

from cubictrans import FAMILIES, TransmutationKernel, kernel_of
from cubictrans.errors import ConstructionError, DomainError
from cubictrans.validity import (
    Axis,
    in_range,
    kernel_is_valid,
    kernel_minimum,
    negative_intervals,
    region_scan,
)


def grid_min(c0, c1, c2, n=10001):
    t = np.linspace(0, 1, n)
    return np.min(c0 + c1 * t + c2 * t * t)


def test_uniform_kernel():
    cert = kernel_is_valid(TransmutationKernel(1, 0, 0))
    assert cert.valid and cert.r_min == 1.0


def test_alkadim_boundary_kernel():
    k = kernel_of("A", (3,))
    assert k.coefficients == (4, -12, 9)
    cert = kernel_is_valid(k)
    assert cert
    assert cert.t_min == pytest.approx(2 / 3)
    assert abs(cert.r_min) < 1e-12


def test_alkadim_beyond_boundary():
    k = kernel_of("A", (3.5,))
    assert k.coefficients == (4.5, -14, 10.5)
    cert = kernel_is_valid(k)
    assert not cert
    assert cert.t_min == pytest.approx(2 / 3)
    assert cert.r_min == pytest.approx(-1 / 6, abs=1e-14)
    assert grid_min(*k.coefficients, n=30001) == pytest.approx(-1 / 6, abs=1e-9)


def test_granzotto_counterexample():
    cert = kernel_is_valid(kernel_of("G", (0, -0.5)))
    # r(t) = -t + 4.5 t^2, vertex at t = 1/9
    assert not cert
    assert cert.t_min == pytest.approx(1 / 9)
    assert cert.r_min == pytest.approx(-1 / 18)


def test_vectorized_minimum_matches_grid(rng):
    c1, c2 = rng.uniform(-10, 10, (2, 2000))
    c0 = 1 - c1 / 2 - c2 / 3
    _, r_min = kernel_minimum(c0, c1, c2)
    g = np.array([grid_min(*c) for c in zip(c0, c1, c2)])
    assert np.all(r_min <= g + 1e-12)
    # spacing 1e-4: grid overshoots the true minimum by at most c2 * (5e-5)^2
    assert np.all(g - r_min <= np.abs(c2) * 2.5e-9 + 1e-12)


@pytest.mark.parametrize("fid, params, expected", [
    ("G", (0, -0.5), True),
    ("MG", (0, -0.5), False),
    ("MR18a", (-0.908, -1), True),
    ("MA", (3.0001,), False),
    ("MA", (3,), True),
    ("MR19", (-2,), True),
    ("R18b", (0, -0.1), False),
])
def test_in_range(fid, params, expected):
    assert in_range(fid, params) is expected


def test_in_range_arity():
    with pytest.raises(ConstructionError):
        in_range("MG", (1,))


@pytest.mark.parametrize("spec, n", [("-0.5:4.5:0.1", 51), ("-3.5:3.5:0.1", 71), ("0:1:0.25", 5)])
def test_axis(spec, n):
    ax = Axis.parse(spec)
    assert len(ax) == n
    assert ax.values[-1] == pytest.approx(ax.hi)


@pytest.mark.parametrize("spec", ["0:1:0", "0:1:-0.1", "1:0:0.1", "a:b:c", "0:1"])
def test_axis_rejects(spec):
    with pytest.raises(DomainError):
        Axis.parse(spec)


def test_scan_g_reference_grid():
    scan = region_scan("G", Axis(-0.5, 4.5, 0.1), Axis(-3.5, 3.5, 0.1))
    assert scan.cells.shape == (51, 71)
    pts = scan.points()
    inside = FAMILIES["MG"].constraints.contains_many(pts)
    valid = scan.cells.ravel()
    assert valid[inside].all()
    assert (valid & ~inside).any()
    # the published square range contains invalid cells
    in_sg = FAMILIES["G"].constraints.contains_many(pts)
    assert (~valid & in_sg).any()


def test_scan_matches_pointwise_certificate():
    scan = region_scan("R23", Axis(-3.2, 1.2, 0.4), Axis(-3, 3, 0.5))
    for p, ok in zip(scan.points(), scan.cells.ravel()):
        assert kernel_is_valid(kernel_of("R23", p)).valid == ok


def test_scan_one_dimensional():
    scan = region_scan("MA", Axis(-1.5, 3.5, 0.1))
    x = scan.coordinates[0]
    np.testing.assert_array_equal(scan.cells, (x >= -1) & (x <= 3))


def test_scan_fixed_parameter():
    scan = region_scan("R23", Axis(-3, 1, 0.5), fixed={1: 2.0})
    x = scan.coordinates[0]
    # eta = 2 is R19, valid on [-2, 1]
    np.testing.assert_array_equal(scan.cells, (x >= -2) & (x <= 1))


def test_scan_axis_count_mismatch():
    with pytest.raises(DomainError):
        region_scan("MG", Axis(0, 1, 0.5))
    with pytest.raises(DomainError):
        region_scan("MA", Axis(0, 1, 0.5), Axis(0, 1, 0.5))


def test_scan_csv_format():
    csv = region_scan("MG", Axis(0, 0.2, 0.1), Axis(2.9, 3.0, 0.1)).to_csv().splitlines()
    assert csv[0] == "param1,param2,valid"
    assert csv[1:3] == ["0,2.9,1", "0,3,1"]
    assert len(csv) == 1 + 3 * 2
    assert csv[-1] == "0.2,3,0"


def test_negative_intervals_bisection():
    iv = negative_intervals(lambda x: (x - 1) * (x - 2), 0, 3, n=50)
    assert len(iv) == 1
    assert iv[0][0] == pytest.approx(1, abs=1e-9)
    assert iv[0][1] == pytest.approx(2, abs=1e-9)
    assert negative_intervals(lambda x: x * 0 + 1, 0, 1) == []
