import math
import os
import sys

import pytest

# ctest points this at the freshly built extension; an installed wheel needs nothing.
_ext = os.environ.get("QLE_EXTENSION_DIR")
if _ext:
    sys.path.insert(0, _ext)
    import _qle as qle
else:
    import qle


def test_tbp_active_regime():
    model = qle.ResonatorModel(tau=1.0, gamma=[10, 0, 0], kappa=[4, 4], phi=[0, 0])
    report = qle.tbp_report(model)
    assert report.tbp == pytest.approx(10.0)
    assert report.classification == "ActiveConsistent"
    assert qle.ase_penalty(model) == pytest.approx(4.0)


def test_moments_keep_commutator():
    model = qle.ResonatorModel(tau=1.0, gamma=[2.0])
    states = qle.propagate_moments(model, dt=1e-3, t_end=5.0)
    assert len(states) == 5001
    assert max(abs(s.commutator - 1.0) for s in states) < 1e-12


def test_overcoupled_commutator():
    model = qle.ResonatorModel(tau=1.0, gamma=[4.0])
    final = qle.propagate_moments(model, dt=1e-3, t_end=10.0)[-1]
    assert final.commutator == pytest.approx(qle.commutator_analytic(model, 10.0), abs=1e-12)


def test_gauge_ring():
    ring = [[0, 1j, -1j], [-1j, 0, 1j], [1j, -1j, 0]]
    sol = qle.solve_gauge(ring)
    assert not sol.exists
    assert sol.worst_cycle_defect == pytest.approx(math.pi, abs=1e-8)


def test_dilate_isolator():
    big = qle.dilate_to_unitary([[0, 0], [1, 0]])
    assert big.shape == (3, 3)
    c = qle.classify(big)
    assert c.unitary and not c.reciprocal


def test_one_way_violates():
    sys_ = qle.BathSystem([(1.0, 1.0), (1.0, 1.0)], [(0, 1, 0.1, qle.LinkMode.OneWay)])
    sys_ = qle.run_baths(sys_, 0.01, 10.0)
    v = qle.detect_violation(sys_)
    assert v.violated and v.max_entropy_deficit > 1e-4


def test_errors_are_translated():
    with pytest.raises(qle.QleError, match="NotHermitian"):
        qle.solve_gauge([[0, 1], [2, 0]])
