import numpy as np
import pytest

from twistchain.chain import ChainSpec, spectrum_of, transfer_matrix, vacuum_d
from twistchain.fusion import (
    FusedFamily,
    fused_projector,
    fused_transfer,
    fusion_invariance_residual,
    multi_twist,
    quantum_determinant,
    symmetrizer,
    verify_fusion_relation,
)
from twistchain.rmatrix import build_f12, spectral_projectors
from twistchain.tensor import match_spectra, rel_residual
from twistchain.twist import TwistParams


def test_level0_is_identity_scalar():
    spec = ChainSpec(2, TwistParams(0.4, 1.0))
    assert np.array_equal(fused_transfer(spec, 0, 1.7), np.eye(4))


def test_level1_equals_fundamental():
    spec = ChainSpec(2, TwistParams(0.4, 1.0))
    u = 2.3
    assert np.array_equal(fused_transfer(spec, 1, u), transfer_matrix(spec, u))


def test_multi_twist_level2_is_fundamental_twist():
    xi = 0.37
    w, w_inv = multi_twist(xi, 2)
    assert np.array_equal(w, build_f12(xi))
    assert np.linalg.norm(w @ w_inv - np.eye(4)) < 1e-15


def test_symmetrizer_ranks():
    assert np.trace(symmetrizer(2)) == pytest.approx(3.0)
    assert np.trace(symmetrizer(3)) == pytest.approx(4.0)
    s3 = symmetrizer(3)
    assert np.linalg.norm(s3 @ s3 - s3) < 1e-15


def test_fused_projector_level2_matches_spectral():
    xi = 0.6
    p_plus, _ = spectral_projectors(TwistParams(xi, 1.0))
    assert np.linalg.norm(fused_projector(xi, 2) - p_plus) == 0.0


def test_fused_projector_level3_idempotent():
    pi = fused_projector(0.8, 3)
    assert np.linalg.norm(pi @ pi - pi) < 1e-14
    assert np.trace(pi) == pytest.approx(4.0)


@pytest.mark.parametrize("level", [2, 3])
def test_staggered_product_preserves_fused_space(level):
    spec = ChainSpec(2, TwistParams(0.7, 1.0))
    assert fusion_invariance_residual(spec, level, 2.9) < 1e-11


def test_quantum_determinant_scalar():
    spec = ChainSpec(3, TwistParams(0.5, 1.0))
    u = 2.4
    scalar, off = quantum_determinant(spec, u)
    assert off < 1e-11
    assert scalar == pytest.approx(vacuum_d(u - 1.0, spec))


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("xi", [0.0, 0.4])
@pytest.mark.parametrize("level", [1, 2])
def test_fusion_relation(n, xi, level):
    """t^(l+1)(u) = t^(l)(u) t^(1)(u - l eta) - d(u - l eta) t^(l-1)(u)."""
    spec = ChainSpec(n, TwistParams(xi, 1.0))
    rng = np.random.default_rng(10 * n + level)
    for _ in range(3):
        u = complex(rng.uniform(3.2, 5.0), rng.uniform(0.5, 1.5))
        assert verify_fusion_relation(spec, level, u) < 1e-9


def test_fusion_relation_level_bounds():
    spec = ChainSpec(2, TwistParams(0.4, 1.0))
    with pytest.raises(ValueError):
        verify_fusion_relation(spec, 0, 2.0)
    with pytest.raises(ValueError):
        verify_fusion_relation(spec, 3, 2.0)


def test_fused_pole_rejected():
    spec = ChainSpec(2, TwistParams(0.4, 1.0))
    with pytest.raises(ValueError):
        fused_transfer(spec, 2, 1.0)  # u - eta = 0


def test_fused_level_out_of_range():
    spec = ChainSpec(2, TwistParams(0.4, 1.0))
    with pytest.raises(ValueError):
        fused_transfer(spec, 4, 2.0)


def test_fused_family_commutes():
    spec = ChainSpec(2, TwistParams(0.5, 1.0))
    u, v = 2.3, -1.4
    mats = [fused_transfer(spec, lvl, w) for lvl in (1, 2, 3) for w in (u, v)]
    for a in mats:
        for b in mats:
            rel = np.linalg.norm(a @ b - b @ a) / max(np.linalg.norm(a @ b), 1e-300)
            assert rel < 1e-9


def test_fused_undeformed_level2_commutes_with_level1():
    spec = ChainSpec(2, TwistParams(0.0, 1.0))
    a = fused_transfer(spec, 2, 2.6)
    b = transfer_matrix(spec, -1.9)
    assert np.linalg.norm(a @ b - b @ a) / np.linalg.norm(a @ b) < 1e-11


@pytest.mark.parametrize("level", [2, 3])
def test_fused_spectra_coincide_with_undeformed(level):
    n = 2
    u = 3.4
    t_xi = fused_transfer(ChainSpec(n, TwistParams(0.9, 1.0)), level, u)
    t_0 = fused_transfer(ChainSpec(n, TwistParams(0.0, 1.0)), level, u)
    report = match_spectra(spectrum_of(t_xi, n)[0], spectrum_of(t_0, n)[0], 1e-7)
    assert report.matched


def test_fused_family_normalizations_recorded():
    family = FusedFamily(ChainSpec(2, TwistParams(0.3, 1.0)))
    assert family.normalization == {0: 1.0, 1: 1.0, 2: 1.0, 3: 1.0}
    u = 2.2
    assert rel_residual(family.transfer(1, u),
                        transfer_matrix(family.spec, u)) == 0.0
