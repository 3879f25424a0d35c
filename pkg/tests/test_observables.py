import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hazyqd.model import HALF_PI, DomainError, ModelConfig, SystemQubit, make_env_from_haziness
from hazyqd.observables import (
    deficit,
    deficit_overlap_curve,
    info_curve,
    min_fragment_for_deficit,
    mutual_info,
    plateau_level,
    redundancy,
    resolve_method,
)

mpmath = pytest.importorskip("mpmath")

PLUS = SystemQubit.plus()


def mp_info_pi_half(h, n_frag):
    """I(S:F) at t = pi/2, r00 = 1/2, |+>, proper fragment, in 40 digits."""
    with mpmath.workdps(40):
        hb = lambda x: -(x * mpmath.log(x, 2) + (1 - x) * mpmath.log(1 - x, 2))  # noqa: E731
        if h == 0:
            lp, lm = mpmath.mpf(1), mpmath.mpf(0)
        else:
            lp = mpmath.findroot(lambda x: hb(x) - h, (mpmath.mpf("0.5000001"), mpmath.mpf("0.9999999")), solver="bisect")
            lm = 1 - lp
        h_f = mpmath.mpf(0)
        for n in range(n_frag + 1):
            lam = (lm**n * lp ** (n_frag - n) + lm ** (n_frag - n) * lp**n) / 2
            if lam > 0:
                h_f -= mpmath.binomial(n_frag, n) * lam * mpmath.log(lam, 2)
        return h_f - n_frag * hb(lp) if h else h_f


def mp_min_fragment(h, delta=0.1, n_env=100):
    for k in range(1, n_env):
        if mp_info_pi_half(h, k) >= 1 - delta:
            return k
    return None


def test_golden_fragment_size_at_h08():
    assert mp_min_fragment(0.8) == 13
    cfg = ModelConfig(100, PLUS, make_env_from_haziness(0.8))
    assert min_fragment_for_deficit(0.1, HALF_PI, cfg) == 13
    res = redundancy(0.1, HALF_PI, cfg)
    assert res.redundancy == Fraction(100, 13)


@pytest.mark.parametrize("k", [1, 2, 7, 13, 40, 99])
def test_pi_half_curve_matches_high_precision(k):
    cfg = ModelConfig(100, PLUS, make_env_from_haziness(0.8))
    assert mutual_info(HALF_PI, k, cfg) == pytest.approx(float(mp_info_pi_half(0.8, k)), abs=1e-11)
    assert mutual_info(HALF_PI, k, cfg, "schur") == pytest.approx(float(mp_info_pi_half(0.8, k)), abs=1e-10)


def test_plateau_level_examples():
    assert plateau_level(PLUS) == 1.0
    assert plateau_level(SystemQubit(1.0, 0.0)) == 0.0
    assert plateau_level(SystemQubit(0.25, 0.0)) == pytest.approx(0.811278, abs=1e-6)


def test_deficit_examples():
    assert deficit(1.0, PLUS) == 0.0
    assert deficit(0.0, PLUS) == 1.0
    assert deficit(0.9, PLUS) == pytest.approx(0.1)
    assert deficit(2.0, PLUS) == 0.0  # the whole-environment jump clamps to zero
    with pytest.raises(DomainError):
        deficit(0.3, SystemQubit(1.0, 0.0))


def test_method_dispatch():
    small = ModelConfig(6, PLUS, make_env_from_haziness(0.3))
    big = ModelConfig(100, PLUS, make_env_from_haziness(0.3))
    assert resolve_method("auto", 0.4, small) == "oracle"
    assert resolve_method("auto", HALF_PI, big) == "closed_form"
    assert resolve_method("auto", 0.4, big) == "schur"
    assert resolve_method("closed-form", 0.4, big) == "closed_form"
    with pytest.raises(DomainError, match="oracle"):
        resolve_method("oracle", 0.4, big)
    with pytest.raises(ValueError):
        resolve_method("guess", 0.4, big)


@pytest.mark.parametrize("method", ["oracle", "schur", "closed_form"])
def test_methods_agree_on_small_model(method):
    cfg = ModelConfig(6, SystemQubit(0.3, 0.2 + 0.1j), make_env_from_haziness(0.4, 0.6))
    ref = info_curve(0.9, cfg, "oracle").values
    assert info_curve(0.9, cfg, method).values == pytest.approx(ref, abs=1e-9)


def test_info_curve_examples():
    cfg = ModelConfig(100, PLUS, make_env_from_haziness(0.0))
    assert info_curve(0.0, cfg).values == pytest.approx([0.0] * 101, abs=1e-12)
    curve = info_curve(HALF_PI, cfg).values
    assert curve[0] == 0.0
    assert curve[1:100] == pytest.approx([1.0] * 99, abs=1e-9)
    assert curve[100] == pytest.approx(2.0, abs=1e-9)

    hazy = info_curve(HALF_PI, ModelConfig(100, PLUS, make_env_from_haziness(0.8))).values
    assert all(a <= b for a, b in zip(curve[1:60], [1.0] * 59))
    assert all(hz < c for hz, c in zip(hazy[1:10], curve[1:10]))  # slower rise
    assert hazy[60:100] == pytest.approx([1.0] * 40, abs=1e-3)  # same plateau
    assert all(b >= a - 1e-12 for a, b in zip(hazy[:100], hazy[1:100]))


def test_min_fragment_examples():
    pure = ModelConfig(100, PLUS, make_env_from_haziness(0.0))
    assert min_fragment_for_deficit(0.1, HALF_PI, pure) == 1
    assert redundancy(0.1, HALF_PI, pure).redundancy == 100
    hazy = ModelConfig(100, PLUS, make_env_from_haziness(1.0))
    assert min_fragment_for_deficit(0.1, HALF_PI, hazy) is None
    res = redundancy(0.1, HALF_PI, hazy)
    assert res.n_frag_delta is None and res.redundancy is None
    with pytest.raises(DomainError):
        min_fragment_for_deficit(0.0, HALF_PI, pure)


def test_whole_environment_is_not_a_redundant_record():
    # at h = 0.99 only #F = #E reaches the threshold, via the quantum jump
    cfg = ModelConfig(100, PLUS, make_env_from_haziness(0.99))
    assert mutual_info(HALF_PI, 100, cfg) >= 0.9
    assert min_fragment_for_deficit(0.1, HALF_PI, cfg) is None


@given(st.floats(0.0, 0.97), st.sampled_from([0.05, 0.1, 0.3]))
@settings(max_examples=15, deadline=None)
def test_binary_search_matches_linear_scan(h, delta):
    cfg = ModelConfig(60, PLUS, make_env_from_haziness(h))
    target = (1 - delta) * 1.0 - 1e-12
    scan = next((k for k in range(1, 60) if mutual_info(HALF_PI, k, cfg) >= target), None)
    assert min_fragment_for_deficit(delta, HALF_PI, cfg) == scan
    res = redundancy(delta, HALF_PI, cfg)
    if scan is not None:
        assert res.redundancy == Fraction(60, scan)
        assert res.redundancy.numerator * scan == 60 * res.redundancy.denominator


def test_redundancy_at_general_time_uses_schur():
    cfg = ModelConfig(100, PLUS, make_env_from_haziness(0.8))
    k = min_fragment_for_deficit(0.1, math.pi / 3, cfg)
    assert k is not None
    assert mutual_info(math.pi / 3, k, cfg) >= 0.9 - 1e-12 > mutual_info(math.pi / 3, k - 1, cfg)


def test_deficit_overlap_examples():
    envs = [make_env_from_haziness(h) for h in (0.0, 0.5, 1.0)]
    pts = deficit_overlap_curve(50, HALF_PI, PLUS, envs)
    assert pts[0][0] == 0.0 and pts[0][1] == pytest.approx(0.0, abs=1e-12)
    assert pts[-1][1] == pytest.approx(1.0, abs=1e-12)
    assert pts[-1][0] == max(p[0] for p in pts)
    assert pts[1][1] > pts[0][1]


@pytest.mark.parametrize("t", [0.4, math.pi / 3, HALF_PI])
@pytest.mark.parametrize("h", [0.0, 0.5, 0.9])
def test_deficit_nonincreasing_in_fragment(t, h):
    cfg = ModelConfig(40, PLUS, make_env_from_haziness(h))
    d = [deficit(v, PLUS) for v in info_curve(t, cfg, "closed_form").values]
    assert all(b <= a + 1e-9 for a, b in zip(d, d[1:]))
