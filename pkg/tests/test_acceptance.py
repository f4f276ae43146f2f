"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.  Tolerances are pinned here and nowhere else.
"""

import os
import time

import numpy as np
import pytest

from loewnerqc.chains import (
    BazilevicIntegralChain,
    ConvexCombinationChain,
    ExponentialChain,
    SheilSmallChain,
    SpirallikeStandardChain,
    normalize_chain,
    verify_chain,
)
from loewnerqc.cli import main as cli_main
from loewnerqc.criteria import GridSpec, convex_combination, evaluate_criterion, pointwise_min_k
from loewnerqc.extension import beltrami_closed, beltrami_fd, dilatation_report, exterior_samples
from loewnerqc.functions import (
    HalfPlane,
    Identity,
    Koebe,
    SeriesBacked,
    SpiralKoebe,
    bazilevic_construct,
)
from loewnerqc.oracle import injectivity_falsifier, univalence_scan, winding_count
from loewnerqc.series import PowerSeries


def _report(n, label, ok):
    print(f"ACCEPTANCE {n} ({label}): {'PASS' if ok else 'FAIL'}")
    assert ok, f"acceptance criterion {n} ({label})"


def geometric_half(order=64):
    """z/(1 - z/2): a hypothesis-satisfying subject for the two-sided
    Bazilevic condition with beta != 0 (the half-plane map only satisfies
    it at beta = 0; see tests/test_chains.py for the failing instance)."""
    c = 0.5 ** np.arange(-1, order)
    c[0] = 0.0
    return SeriesBacked(PowerSeries(c))


# interior parameter near (1+i)/2: the boundary point itself has
# Re(alpha/(1-alpha)) = 0 and is rejected by the chain construction
CC_ALPHA = 0.5 + 0.45j


def literal_instances():
    """The five chain instances of the acceptance list (identity checks)."""
    return [
        ConvexCombinationChain(HalfPlane(), CC_ALPHA),
        SpirallikeStandardChain(SpiralKoebe(0.5), 0.5),
        ExponentialChain(SpiralKoebe(0.5), np.exp(-0.5j)),
        SheilSmallChain(HalfPlane(), 1.0, 0.5),
        BazilevicIntegralChain(Koebe(), PowerSeries.one(64), 1.0, 0.0),
    ]


def hypothesis_instances():
    """Same variants, every one satisfying its criterion's hypothesis."""
    return [
        ConvexCombinationChain(HalfPlane(), CC_ALPHA),
        SpirallikeStandardChain(SpiralKoebe(0.5), 0.5),
        ExponentialChain(SpiralKoebe(0.5), np.exp(-0.5j)),
        SheilSmallChain(geometric_half(), 1.0, 0.5),
        BazilevicIntegralChain(Koebe(), PowerSeries.one(64), 1.0, 0.0),
    ]


def sample_set(ch, n_angles=44, radii=(1.02, 1.15, 1.6, 3.0, 10.0), window=0.05):
    rr, th, _ = exterior_samples(ch, radii, n_angles, window)
    return rr[:200], th[:200]


def test_criterion_1_beltrami_identity():
    start = time.perf_counter()
    worst = 0.0
    for ch in literal_instances():
        rr, th = sample_set(ch)
        gap = np.abs(
            np.atleast_1d(beltrami_fd(ch, rr, th, step=1e-4))
            - np.atleast_1d(beltrami_closed(ch, rr, th))
        )
        worst = max(worst, float(np.max(gap)))
    elapsed = time.perf_counter() - start
    _report(1, "beltrami identity", worst <= 1e-6 and elapsed < 10.0)


def test_criterion_2_dilatation_floor():
    ok = True
    for alpha in (0.2, 0.5, 1.0):
        ch = ExponentialChain(Identity(), np.exp(-1j * alpha))
        rep = dilatation_report(ch, angles=720)
        mods = np.array([s.modulus for s in rep.samples])
        ok = ok and np.max(np.abs(mods - abs(np.tan(alpha / 2)))) <= 1e-10
    _report(2, "dilatation floor |tan(alpha/2)|", ok)


def test_criterion_3_koebe_minimal_dilatation():
    ok = True
    for r in (0.5, 0.9, 0.99):
        grid = GridSpec(radii=(r / 2, r), angles=256, refinement=8)
        rep = evaluate_criterion("starlike-tilted", f=Koebe(), alpha=0.0, grid=grid)
        ok = ok and abs(rep.min_dilatation - r) <= 1e-10
    _report(3, "koebe minimal dilatation = r_max", ok)


def test_criterion_4_bazilevic_constructor():
    f = bazilevic_construct(Koebe(), PowerSeries.one(30), 1.0, 0.0, 30)
    gap = np.max(np.abs(f.series(30).coeffs - HalfPlane().series(30).coeffs))
    ok = gap <= 1e-10
    rng = np.random.default_rng(2024)
    for _ in range(5):
        alpha = rng.uniform(0.1, 3.0)
        beta = rng.uniform(-2.0, 2.0)
        built = bazilevic_construct(Identity(), PowerSeries.one(20), alpha, beta, 20)
        ok = ok and np.array_equal(built.series(20).coeffs,
                                   PowerSeries.variable(20).coeffs)
    _report(4, "bazilevic constructor", ok)


def test_criterion_5_chain_verification():
    start = time.perf_counter()
    ok = True
    for ch in hypothesis_instances():
        rep = verify_chain(ch)  # default grid x times
        good = (
            rep.herglotz_margin > 0
            and rep.a1_monotone
            and not rep.subordination_violations
        )
        if not good:
            print(f"  chain {ch.variant}: margin={rep.herglotz_margin:.3g} "
                  f"monotone={rep.a1_monotone} "
                  f"violations={len(rep.subordination_violations)}")
        ok = ok and good
    neg = verify_chain(ConvexCombinationChain(Koebe(), 0.5),
                       subordination_targets=0)
    witness_ok = neg.herglotz_margin < 0
    z, t = neg.herglotz_worst
    witness_ok = witness_ok and neg.herglotz_margin == pytest.approx(
        ConvexCombinationChain(Koebe(), 0.5).p(z, t).real
    )
    elapsed = time.perf_counter() - start
    _report(5, "chain verification", ok and witness_ok and elapsed < 30.0)


def test_criterion_6_normalization():
    ok = True
    for ch in hypothesis_instances():
        for t in (0.0, 0.5, 1.0, 2.0):
            frame = normalize_chain(ch, t)
            ok = ok and abs(complex(frame.dz(0.0)) - np.exp(t)) <= 1e-10
    _report(6, "normalization h'(0,t) = e^t", ok)


def test_criterion_7_univalence_oracle():
    f = HalfPlane()
    ok = True
    for k in range(20):
        phi = 2 * np.pi * k / 10
        rho = 1.0 if k < 10 else 0.6
        alpha = (1 + rho * np.exp(1j * phi)) / 2
        g = convex_combination(f, alpha)
        verdict = injectivity_falsifier(g, 0.95, n_points=10_000,
                                        fprime=g.derivative)
        ok = ok and not verdict.falsified

    v1 = univalence_scan(lambda z: z + 1.5 * z * z, 0.9, image_samples=24,
                         n_points=4096, fprime=lambda z: 1 + 3 * z)
    ok = ok and v1.falsified

    v2 = injectivity_falsifier(lambda z: z * z, 0.9, n_points=4096,
                               fprime=lambda z: 2 * z)
    ok = ok and v2.falsified and abs(v2.witness.z1 + v2.witness.z2) < 1e-6

    k = Koebe()
    ok = ok and winding_count(k, 0.0, 0.5, fprime=k.derivative) == 1
    ok = ok and winding_count(k, -10.0, 0.5, fprime=k.derivative) == 0
    ok = ok and winding_count(lambda z: z * z, 0.25, 0.9,
                              fprime=lambda z: 2 * z) == 2
    _report(7, "univalence oracle", ok)


def test_criterion_8_bound_transfer():
    ok = True

    # spirallike-standard chain <-> tilted-disk criterion on z f'/f
    f = SpiralKoebe(0.5)
    ch = SpirallikeStandardChain(f, 0.5)
    rr, th = sample_set(ch)
    sup_mu = float(np.max(np.abs(beltrami_closed(ch, rr, th))))
    u_angles = th + ch.a * np.log(rr)  # the boundary points the chain reads
    u = np.exp(1j * u_angles)
    crit = float(np.max(pointwise_min_k("starlike-tilted", u, f=f, alpha=0.5,
                                        boundary=True)))
    ok = ok and sup_mu <= crit + 1e-9

    # exponential chain <-> rotated U(k) criterion
    ch = ExponentialChain(f, np.exp(-0.5j))
    rr, th = sample_set(ch)
    sup_mu = float(np.max(np.abs(beltrami_closed(ch, rr, th))))
    u = np.exp(1j * th)
    crit = float(np.max(pointwise_min_k("spiral", u, f=f, alpha=0.5,
                                        boundary=True)))
    ok = ok and sup_mu <= crit + 1e-9

    # sheil-small chain <-> one-quantity U(k) criterion (origin included:
    # the time interpolation passes through alpha + i beta)
    gh = geometric_half()
    ch = SheilSmallChain(gh, 1.0, 0.5)
    rr, th = sample_set(ch)
    sup_mu = float(np.max(np.abs(beltrami_closed(ch, rr, th))))
    pts = np.concatenate([np.exp(1j * th), [0.0]])
    crit = float(np.max(pointwise_min_k("bazilevic1", pts, f=gh, alpha=1.0,
                                        beta=0.5, boundary=True)))
    ok = ok and sup_mu <= crit + 1e-9

    # bazilevic-integral chain <-> two-quantity U(k) criterion
    h = PowerSeries.one(64)
    ch = BazilevicIntegralChain(Koebe(), h, 1.0, 0.0)
    rr, th = sample_set(ch)
    sup_mu = float(np.max(np.abs(beltrami_closed(ch, rr, th))))
    pts = np.concatenate([np.exp(1j * th), [0.0]])
    crit = float(np.max(pointwise_min_k("bazilevic2", pts, g=Koebe(), h=h,
                                        alpha=1.0, beta=0.0, boundary=True)))
    ok = ok and sup_mu <= crit + 1e-9

    _report(8, "bound transfer sup|mu| <= criterion k", ok)


def test_criterion_9_series_engine():
    rng = np.random.default_rng(99)
    n = 16
    ok = True

    a = PowerSeries(0.4 * (rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)))
    b = PowerSeries(0.4 * (rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)))
    conv = np.zeros(n + 1, dtype=complex)
    for i in range(n + 1):
        for j in range(n + 1 - i):
            conv[i + j] += a.coeffs[i] * b.coeffs[j]
    ok = ok and np.max(np.abs(a.multiply(b).coeffs - conv)) < 1e-14

    c = PowerSeries(np.concatenate(([1.0], 0.4 * rng.standard_normal(n))))
    prod = c.multiply(c.reciprocal())
    ok = ok and abs(prod[0] - 1) < 1e-12 and np.max(np.abs(prod.coeffs[1:])) < 1e-12

    gamma = 2 + 1j
    d = PowerSeries(np.concatenate(([1.0], 0.3 * rng.standard_normal(n))))
    back = d.pow_principal(1 / gamma).pow_principal(gamma)
    ok = ok and np.max(np.abs(back.coeffs - d.coeffs)) < 1e-10

    g1, g2 = 0.75 - 0.5j, -1.25 + 2j
    lhs = d.pow_principal(g1 + g2)
    rhs = d.pow_principal(g1).multiply(d.pow_principal(g2))
    ok = ok and np.max(np.abs(lhs.coeffs - rhs.coeffs)) < 1e-10

    _report(9, "series engine oracles at N=16", ok)


def test_criterion_10_determinism(tmp_path):
    argv = [
        "check", "--kind", "spiral", "--alpha", "0.5",
        "--fn", "spiral-koebe:0.5", "--angles", "128",
        "--radii", "0.3,0.6,0.9", "--times", "0,0.5,1",
        "--ext-angles", "90", "--oracle-points", "1024", "--emit-plots",
    ]
    out1, out2 = tmp_path / "run1", tmp_path / "run2"
    code1 = cli_main(argv + ["--out", str(out1)])
    code2 = cli_main(argv + ["--out", str(out2)])
    ok = code1 == 0 and code2 == 0
    names = sorted(os.listdir(out1))
    ok = ok and names == sorted(os.listdir(out2))
    for name in names:
        with open(out1 / name, "rb") as fh1, open(out2 / name, "rb") as fh2:
            ok = ok and fh1.read() == fh2.read()
    _report(10, "byte-identical reports", ok)
