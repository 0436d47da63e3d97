import json
import math

import numpy as np
import pytest

import pfl


def test_overlap_values():
    assert pfl.overlap(1, 0, 0, 1, 0.4) == pytest.approx(0.4)
    assert pfl.overlap(2, 0, 1, 1, 0.4) == pytest.approx(math.sqrt(2) * 0.4)


def test_gram_block_is_numpy():
    g = pfl.gram_block(2, 0.5)
    assert isinstance(g.matrix, np.ndarray)
    assert g.matrix[1, 1].real == pytest.approx(1.25)
    assert g.smallest_eigenvalue() > 0


def test_block_system_from_fixture():
    sys = pfl.build_block_system(pfl.paper_fixture(1, 0.4))
    np.testing.assert_allclose(sys.a, [[0, 1], [0, 0]], atol=1e-12)
    np.testing.assert_allclose(sys.n, np.array([[1, 2], [2, 4]]) / 5, atol=1e-12)
    assert all(passed for _, _, passed in pfl.block_checks(sys).values())


def test_cholesky_anticommutator():
    basis = pfl.realize_basis_cholesky(pfl.gram_block(3, 0.5 + 0.3j))
    sys = pfl.build_block_system(basis)
    np.testing.assert_allclose(sys.anticommutator_diagonal, [1, 3, 5, 3], atol=1e-10)


def test_assemble_and_resolution():
    ops = pfl.assemble(0.5, 3)
    assert ops.total_dim == 10
    assert all(passed for _, _, passed in pfl.action_checks(ops).values())
    report = pfl.global_resolution_check(ops)
    assert report.resolution_residual < 1e-10
    assert list(report.s_h_norms) == sorted(report.s_h_norms)


def test_nogo():
    report = pfl.nogo_joint_kernel(0.5, [4, 8])
    assert report.kernel_dimension_estimate == 0
    assert report.floor_non_decreasing()


def test_bicoherent_accepts_expressions_and_callables():
    fam = pfl.build_family(3, "0.3*x")
    op, residual = pfl.resolution_of_identity(fam)
    assert residual < 1e-10
    sym = pfl.upper_symbol(fam, lambda x: x)
    assert sym[0, 1].real == pytest.approx(1 / math.sqrt(3))
    e, h = pfl.states_at(fam, 0.2)
    assert np.vdot(e, h) == pytest.approx(1.0)


def test_errors_are_python_exceptions():
    with pytest.raises(ValueError):
        pfl.gram_block(-1, 0.5)
    with pytest.raises(ValueError):
        pfl.NCBosonParams.from_gamma(1.0)


def test_run_cli():
    code, out, err = pfl.run_cli(["verify-paper", "--gamma", "0.4"])
    assert code == 0
    assert json.loads(out)["all_pass"] is True
    code, _, _ = pfl.run_cli(["gram", "--gamma", "2", "--level", "1"])
    assert code == 2
