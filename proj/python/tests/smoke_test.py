"""Smoke checks for the python bindings: a coarse grid keeps everything under
a few seconds while still exercising every exposed subsystem end to end."""

import math

import semigroup_lab as sl


def approx(a, b, tol):
    assert abs(a - b) <= tol, f"{a} vs {b} (tol {tol})"


def main():
    grid = sl.GridSpec(20.0, 4097)
    delta0 = sl.Measure.dirac(grid, 0.0)
    gauss1 = sl.Measure.gaussian(grid, 1.0)
    cos1 = sl.dictionary_fn("cos_1")
    one = sl.dictionary_fn("const1")

    # pairings and norms
    approx(sl.pairing(one, delta0), 1.0, 1e-15)
    approx(sl.pairing(cos1, gauss1), math.exp(-0.5), 1e-10)
    approx(sl.tv_norm(gauss1), 1.0, 1e-9)
    assert set(sl.dictionary_names()) >= {"const1", "cos_1", "sin_1"}

    # lattice structure
    pos, neg = sl.jordan(delta0 - sl.Measure.dirac(grid, 1.0))
    approx(sl.tv_norm(pos), 1.0, 0.0)
    approx(sl.tv_norm(neg), 1.0, 0.0)
    assert sl.check_al_max_gap(delta0, gauss1) <= 1e-12

    # free evolution, duality, resolvent
    for t in (0.5, 1.0):
        approx(sl.pairing(cos1, sl.apply_T(t, delta0)), math.exp(-t / 2), 1e-8)
    assert sl.duality_residual(cos1, 0.5, gauss1) <= 1e-6
    approx(sl.pairing(one, sl.resolvent(2.0, delta0)), 0.5, 1e-4)
    approx(sl.pairing(cos1, sl.resolvent(1.0, delta0)), 2.0 / 3.0, 1e-3)

    # skorohod calculus
    approx(sl.pairing(sl.dictionary_fn("sin_1"), sl.skorohod_derivative(gauss1)),
           -math.exp(-0.5), 1e-4)
    assert sl.parts_residual(gauss1, sl.dictionary_fn("sin_1")) <= 1e-4

    # perturbed evolution: series vs splitting, positivity, resolvent chain
    b = sl.PotentialPerturbation(sl.Potential.exp_decay())
    approx(b.psi.l1_norm, 2.0, 0.0)
    dy = sl.dyson_apply(b, 0.5, delta0, sl.SeriesParams(levels=8, quad_nodes=64))
    assert dy.converged
    tr = sl.trotter_apply(b, 0.5, delta0, 256)
    approx(sl.pairing(one, dy.value), sl.pairing(one, tr), 1e-3)
    assert sl.positivity_scan(b, delta0, [0.25, 0.5], 64) >= -1e-9
    nr = sl.neumann_resolvent(b, 12.5, delta0, 30)
    assert nr.converged and nr.tail_tv < 1e-10
    assert sl.pairing(one, nr.value) >= 1.0 / 12.5

    # variation-of-parameters sign
    vr = sl.vop_residual(b, 0.25, delta0, sl.SeriesParams(8, 64))
    assert vr.passing_sign(1e-3) == -1

    # continuity probes and the staged norm bounds
    mods = sl.bicontinuity_probe(delta0, cos1, [0.1, 0.01])
    assert mods[0] > mods[1] > 0.0
    st = sl.staged_bound_check(b, 50.0, 2, 2.0, [delta0, gauss1])
    assert st.all_pass and st.threshold == 0.25

    # matrix oracle
    e = sl.expm([[-2.0, 1.0], [1.0, -2.0]], 1.0)
    approx(e[0][0], math.exp(-2.0) * math.cosh(1.0), 1e-12)
    diff, ratio, tail = sl.neumann_vs_direct([[-2.0, 0.0], [0.0, -2.0]],
                                             [[0.0, 1.0], [1.0, 0.0]], 3.0, 20)
    assert diff <= 1e-10 and abs(ratio - 0.2) <= 1e-12 and tail <= 1e-12
    trials, failures = sl.voigt_property_test(50, 7)
    assert trials == 50 and failures == 0
    assert sl.dyson_vs_expm([[-2.0, 0.0], [0.0, -2.0]], [[0.0, 1.0], [1.0, 0.0]],
                            1.0, 12, 128) <= 1e-5

    print("python smoke checks passed")


if __name__ == "__main__":
    main()
