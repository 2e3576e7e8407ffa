import numpy as np
import pytest

import freespec as fs

SZ = np.diag([1.0, -1.0])
SX = np.array([[0.0, 1.0], [1.0, 0.0]])


def test_cube_membership():
    cube = fs.example("cube:2")
    assert cube.m == 4 and cube.g == 2
    assert fs.membership(cube, fs.point([0, 0]))["status"] == "Interior"
    assert fs.membership(cube, fs.point([1, 0.3]))["status"] == "Boundary"
    assert fs.membership(cube, fs.point([1.2, 0]))["status"] == "Outside"


def test_pauli_pair_is_free_extreme_in_cube():
    cube = fs.example("cube:2")
    p = fs.MatrixTuple([SZ, SX])
    r = fs.classify(cube, p)
    assert r["classical"] and r["matrix"] and r["free"] and r["irreducible"]
    assert fs.dilation_dim(cube, p) == 0
    assert fs.unitarily_equivalent(p, fs.pauli_pair())


def test_square_edge_is_not_extreme():
    cube = fs.example("cube:2")
    x = fs.point([1, 0.3])
    assert not fs.classical_extreme(cube, x)
    assert fs.refute_matrix_extreme(cube, x, trials=200, seed=1)


def test_decompose_reconstructs():
    cube = fs.example("cube:2")
    x = fs.sample_point(cube, 2, seed=5)
    d = fs.decompose(cube, x, seed=5)
    assert d["residual"] < 1e-6
    assert d["total_size"] <= 2 * 3
    assert all(d["certified"])
    rebuilt = sum(g.conj().T @ s[0] @ g for s, g in zip(d["summands"], d["gammas"]))
    assert np.allclose(rebuilt, x[0], atol=1e-6)


def test_complex_tuple_roundtrip():
    h = np.array([[1.0, 1j], [-1j, 0.0]])
    t = fs.MatrixTuple([h], "complex")
    assert t.field == "complex"
    assert np.allclose(t[0], h)


def test_errors_are_translated():
    with pytest.raises(fs.FreespecError):
        fs.MatrixTuple([np.array([[0.0, 1.0], [2.0, 0.0]])])
    with pytest.raises(fs.FreespecError):
        fs.example("sphere:2")
    with pytest.raises(fs.FreespecError):
        fs.decompose(fs.example("cube:1"), fs.point([2.0]))
