"""Smoke test of the python bindings: import, a lambda report, a short
coupling run, and a half-plane reflection."""

import math
import sys

import _rbm


def approx(a, b, tol):
    assert abs(a - b) < tol, f"{a} vs {b} (tol {tol})"


def main():
    disc = _rbm.Domain.disc(1.0, n_quad=512)
    approx(disc.area(), math.pi, 1e-12)
    assert disc.contains(0.5, 0.0)
    assert not disc.contains(1.5, 0.0)

    r = _rbm.lambda_report(disc)
    approx(r.lambda_, 4 * math.pi, 1e-6)
    approx(r.decay_rate, -2.0, 1e-6)

    near, far = _rbm.disc_exterior_half_range_integrals()
    approx(near, math.pi + 2 * math.log(2), 1e-8)
    approx(far, math.pi - 2 * math.log(2), 1e-8)

    cfg = _rbm.SimConfig()
    cfg.h = 2e-4
    cfg.T = 2.0
    cfg.seed = 1
    stats = _rbm.simulate_coupling(disc, cfg)
    assert stats.steps == 10000
    assert stats.d[-1] <= stats.d[0]
    assert stats.final_lx > 0.0

    # reflected path never leaves the upper half-plane, local time grows
    t = [0.01 * k for k in range(200)]
    gamma = [(0.1 * k * 0.01, 0.2 - 0.5 * k * 0.01) for k in range(200)]
    rt, (xs, ys, lts) = _rbm.skorokhod_transform(t, gamma, h_max=0.01)
    assert len(rt) == len(ys) == len(lts)
    assert all(y >= -1e-15 for y in ys)
    assert lts[-1] > 0.0

    p, se, bad = _rbm.wos_hit_fraction(disc, 0.0, 0.0, 0, 0.0, 0.5)
    assert bad == 0
    assert abs(p - 0.5) < 4 * se

    print("python smoke: ok")


if __name__ == "__main__":
    sys.exit(main())
