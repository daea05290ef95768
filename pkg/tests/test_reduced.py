"""Reduced-Hamiltonian assembly checked against an independent dense build."""

import itertools

import numpy as np
import pytest

from affinetop.measures import p_l, p_lambda
from affinetop.reduced import (
    AffineModel,
    GridAxis,
    GridSpec,
    ModelKind,
    Potential,
    SuperselectionClass,
    build_coupling_ops,
    build_reduced_hamiltonian,
    dilatation_effective_mass,
    superselection_valid,
    to_matrix_market,
)
from affinetop.rotation import HalfInt, build_rot_rep
from affinetop.spectra import eigen_lowest

R = lambda twice: build_rot_rep(3, HalfInt(twice))


# ---------------------------------------------------------------------------
# Superselection and coupling operators.

@pytest.mark.parametrize(
    "twice_s,twice_j,expected",
    [
        (0, 0, SuperselectionClass.SINGLE_VALUED),
        (2, 4, SuperselectionClass.SINGLE_VALUED),
        (1, 1, SuperselectionClass.DOUBLE_VALUED),
        (1, 3, SuperselectionClass.DOUBLE_VALUED),
        (0, 1, SuperselectionClass.INVALID),
        (2, 1, SuperselectionClass.INVALID),
    ],
)
def test_superselection_truth_table(twice_s, twice_j, expected):
    assert superselection_valid(R(twice_s), R(twice_j)) is expected


def test_coupling_trivial_reps():
    xm, xp = build_coupling_ops(R(0), R(0), 1, 2)
    np.testing.assert_array_equal(xm, np.zeros((1, 1)))
    np.testing.assert_array_equal(xp, np.zeros((1, 1)))


def test_coupling_one_sided():
    # s = 0: only the right-multiplication survives, so Xm = Xp
    xm, xp = build_coupling_ops(R(0), R(2), 1, 2)
    np.testing.assert_array_equal(xm, xp)
    np.testing.assert_allclose(xm, R(2).pair_generator(1, 2).T, atol=1e-15)
    # j = 0: only the left-multiplication survives, so Xm = -Xp
    xm, xp = build_coupling_ops(R(2), R(0), 1, 2)
    np.testing.assert_array_equal(xm, -xp)
    np.testing.assert_allclose(xm @ xm, xp @ xp, atol=1e-15)


@pytest.mark.parametrize("hbar", [1.0, 2.0])
def test_coupling_half_half_eigenvalues(hbar):
    rs = build_rot_rep(3, HalfInt(1), hbar)
    rj = build_rot_rep(3, HalfInt(1), hbar)
    xm, xp = build_coupling_ops(rs, rj, 1, 2)
    np.testing.assert_allclose(
        np.linalg.eigvalsh(xm @ xm), [0.0, 0.0, hbar**2, hbar**2], atol=1e-13
    )


def test_coupling_hermitian_and_psd():
    rng = np.random.default_rng(40)
    for twice_s, twice_j in [(1, 1), (2, 2), (1, 3), (2, 0)]:
        for a, b in [(1, 2), (2, 3), (3, 1)]:
            xm, xp = build_coupling_ops(R(twice_s), R(twice_j), a, b)
            assert np.max(np.abs(xm - xm.conj().T)) < 1e-13
            assert np.max(np.abs(xp - xp.conj().T)) < 1e-13
            assert np.min(np.linalg.eigvalsh(xm @ xm)) > -1e-12
            assert np.min(np.linalg.eigvalsh(xp @ xp)) > -1e-12
    with pytest.raises(ValueError):
        build_coupling_ops(R(1), R(1), 2, 2)


# ---------------------------------------------------------------------------
# Independent dense assembly (explicit loops, measure functions from measures).

def brute_force_dense(model, rep_s, rep_j, grid, potential):
    kind = model.kind
    n = model.n
    hbar = model.hbar
    axes_nodes = [ax.nodes() for ax in grid.axes]
    spacings = [ax.spacing for ax in grid.axes]
    shape = grid.shape
    if grid.sl_constraint:
        embed = grid.relative_embedding()
        to_q = lambda y: embed @ np.asarray(y)
    else:
        to_q = lambda y: np.asarray(y)

    def weight(y):
        q = to_q(y)
        return p_l(q) if kind is ModelKind.DALEMBERT else p_lambda(q)

    def node_pos(idx):
        return np.array([axes_nodes[d][idx[d]] for d in range(len(shape))])

    kept = []
    for idx in itertools.product(*[range(s) for s in shape]):
        q = to_q(node_pos(idx))
        ok = all(q[a] - q[a + 1] >= grid.chamber_margin for a in range(n - 1))
        if kind is ModelKind.DALEMBERT:
            ok = ok and q[-1] > 0
            qbar = np.mean(np.log(q)) if ok else 0.0
        else:
            qbar = np.mean(q)
        if ok and potential.kind == "well":
            ok = potential.q_min <= qbar <= potential.q_max
        if ok:
            kept.append(idx)
    pos = {idx: i for i, idx in enumerate(kept)}

    fiber = rep_s.dim * rep_j.dim
    dim = len(kept) * fiber
    ham = np.zeros((dim, dim), dtype=complex)
    idf = np.eye(fiber)

    c_kin = hbar**2 / (2.0 * (model.I if kind is ModelKind.DALEMBERT else model.a_eff))
    trace_on = kind is not ModelKind.DALEMBERT and not grid.sl_constraint and model.B != 0.0
    if trace_on:
        a_eff = model.a_eff
        c_tr = n * hbar**2 * model.B / (2.0 * a_eff * (a_eff + n * model.B))

    for idx in kept:
        g = pos[idx]
        y = node_pos(idx)
        p_here = weight(y)
        sq_here = np.sqrt(p_here)
        block = np.zeros((fiber, fiber), dtype=complex)

        for d in range(len(shape)):
            h = spacings[d]
            up = y.copy()
            up[d] += h / 2.0
            dn = y.copy()
            dn[d] -= h / 2.0
            block += c_kin * (weight(up) + weight(dn)) / (p_here * h * h) * idf
            nb = list(idx)
            nb[d] += 1
            nb = tuple(nb)
            if nb in pos:
                val = -c_kin * weight(up) / (h * h * sq_here * np.sqrt(weight(node_pos(nb))))
                for f in range(fiber):
                    ham[g * fiber + f, pos[nb] * fiber + f] += val
                    ham[pos[nb] * fiber + f, g * fiber + f] += val

        if trace_on:
            h = spacings[0]
            s2 = n * h * h
            up = y + h / 2.0
            dn = y - h / 2.0
            block -= c_tr * (weight(up) + weight(dn)) / (p_here * s2) * idf
            nb = tuple(i + 1 for i in idx)
            if nb in pos:
                val = c_tr * weight(up) / (s2 * sq_here * np.sqrt(weight(node_pos(nb))))
                for f in range(fiber):
                    ham[g * fiber + f, pos[nb] * fiber + f] += val
                    ham[pos[nb] * fiber + f, g * fiber + f] += val

        q = to_q(y)
        qbar = np.mean(np.log(q)) if kind is ModelKind.DALEMBERT else np.mean(q)
        if potential.kind == "harmonic":
            block += 0.5 * potential.kappa * qbar**2 * idf
        if kind is ModelKind.MET_AFF:
            s_lab = HalfInt(rep_s.twice_label).casimir()
            block += model.I / (2.0 * (model.I**2 - model.A**2)) * hbar**2 * s_lab * idf
        if kind is ModelKind.AFF_MET:
            j_lab = HalfInt(rep_j.twice_label).casimir()
            block += model.I / (2.0 * (model.I**2 - model.A**2)) * hbar**2 * j_lab * idf

        # ordered-pair sums exactly as displayed
        for a in range(1, n + 1):
            for b in range(1, n + 1):
                if a == b:
                    continue
                xm, xp = build_coupling_ops(rep_s, rep_j, a, b)
                if kind is ModelKind.DALEMBERT:
                    block += xm @ xm / (8.0 * model.I * (q[a - 1] - q[b - 1]) ** 2)
                    block += xp @ xp / (8.0 * model.I * (q[a - 1] + q[b - 1]) ** 2)
                else:
                    da = (q[a - 1] - q[b - 1]) / 2.0
                    block += xm @ xm / (32.0 * model.a_eff * np.sinh(da) ** 2)
                    block -= xp @ xp / (32.0 * model.a_eff * np.cosh(da) ** 2)

        ham[g * fiber : (g + 1) * fiber, g * fiber : (g + 1) * fiber] += block
    return ham


BRUTE_CASES = [
    (
        AffineModel(kind=ModelKind.AFF_AFF, A=1.0, B=0.3, n=2),
        0,
        0,
        GridSpec(2, (GridAxis(-1.5, 1.5, 7), GridAxis(-1.5, 1.5, 7)), 0.1),
        Potential.harmonic(0.8),
    ),
    (
        AffineModel(kind=ModelKind.MET_AFF, A=0.7, B=0.2, I=2.0, n=2, hbar=1.3),
        1,
        1,
        GridSpec(2, (GridAxis(-1.0, 1.4, 6), GridAxis(-1.2, 1.2, 6)), 0.08),
        Potential.none(),
    ),
    (
        AffineModel(kind=ModelKind.AFF_MET, A=0.5, B=0.0, I=1.5, n=2),
        2,
        0,
        GridSpec(2, (GridAxis(-1.0, 1.0, 6), GridAxis(-1.0, 1.0, 5)), 0.08),
        Potential.none(),
    ),
    (
        AffineModel(kind=ModelKind.DALEMBERT, I=1.2, n=2),
        1,
        3,
        GridSpec(2, (GridAxis(0.0, 3.0, 7), GridAxis(0.0, 2.5, 6)), 0.1),
        Potential.harmonic(0.5),
    ),
    (
        AffineModel(kind=ModelKind.AFF_AFF, A=1.0, B=0.0, n=2),
        0,
        2,
        GridSpec(2, (GridAxis(0.05, 2.0, 9),), 0.05, sl_constraint=True),
        Potential.none(),
    ),
    (
        AffineModel(kind=ModelKind.AFF_AFF, A=0.9, B=0.15, n=3),
        1,
        1,
        GridSpec(3, tuple(GridAxis(-1.2, 1.2, 5) for _ in range(3)), 0.1),
        Potential.harmonic(1.0),
    ),
]


@pytest.mark.parametrize("model,ts,tj,grid,pot", BRUTE_CASES)
def test_assembly_matches_brute_force(model, ts, tj, grid, pot):
    rep_s = build_rot_rep(3, HalfInt(ts), model.hbar)
    rep_j = build_rot_rep(3, HalfInt(tj), model.hbar)
    ham = build_reduced_hamiltonian(model, rep_s, rep_j, grid, pot)
    dense = ham.matrix.toarray().astype(complex)
    brute = brute_force_dense(model, rep_s, rep_j, grid, pot)
    assert dense.shape == brute.shape
    scale = max(1.0, np.max(np.abs(brute)))
    assert np.max(np.abs(dense - brute)) < 1e-12 * scale
    assert ham.dim == ham.n_nodes * ham.fiber_dim
    assert ham.hermiticity_residual() < 1e-12 * scale


def test_sign_structure_at_sample_nodes():
    # sinh^-2 coupling enters +, cosh^-2 enters -, read off assembled blocks
    model = AffineModel(kind=ModelKind.AFF_AFF, A=1.0, B=0.0, n=2)
    rep_s, rep_j = R(0), R(2)
    grid = GridSpec(2, (GridAxis(-2.0, 2.0, 12), GridAxis(-2.0, 2.0, 12)), 0.1)
    ham = build_reduced_hamiltonian(model, rep_s, rep_j, grid)
    xm, xp = build_coupling_ops(rep_s, rep_j, 1, 2)
    dense = ham.matrix.toarray()
    fiber = ham.fiber_dim
    rng = np.random.default_rng(41)
    for g in rng.choice(ham.n_nodes, size=10, replace=False):
        q1, q2 = ham.node_coords[g]
        block = dense[g * fiber : (g + 1) * fiber, g * fiber : (g + 1) * fiber]
        cm = 1.0 / (16.0 * model.A * np.sinh((q1 - q2) / 2.0) ** 2)
        cp = 1.0 / (16.0 * model.A * np.cosh((q1 - q2) / 2.0) ** 2)
        expected = cm * (xm @ xm) - cp * (xp @ xp)
        off = block - np.diag(np.diag(block))
        expected_off = expected - np.diag(np.diag(expected))
        np.testing.assert_allclose(off, expected_off, atol=1e-12)
        assert cm > 0.0 and cp > 0.0


def test_casimir_shift_exactness():
    grid = GridSpec(2, (GridAxis(-1.5, 1.5, 10), GridAxis(-1.5, 1.5, 10)), 0.08)
    for twice, expected_c in [(1, 0.75), (2, 2.0)]:
        rep = R(twice)
        met = build_reduced_hamiltonian(
            AffineModel(kind=ModelKind.MET_AFF, A=1.0, B=0.1, I=2.0, n=2), rep, rep, grid
        )
        aff = build_reduced_hamiltonian(
            AffineModel(kind=ModelKind.AFF_AFF, A=3.0, B=0.1, n=2), rep, rep, grid
        )
        shift = 2.0 / (2.0 * 3.0) * expected_c
        diff = (met.matrix - aff.matrix).toarray()
        np.testing.assert_allclose(diff, shift * np.eye(met.dim), atol=1e-13)
        amet = build_reduced_hamiltonian(
            AffineModel(kind=ModelKind.AFF_MET, A=1.0, B=0.1, I=2.0, n=2), rep, rep, grid
        )
        diff_j = (amet.matrix - aff.matrix).toarray()
        np.testing.assert_allclose(diff_j, shift * np.eye(met.dim), atol=1e-13)


def test_sl2_geodetic_matches_gauge_oracle():
    # the s=j=0 problem on the relative coordinate is gauge-equivalent to a
    # free particle plus the constant 1, so E_m = 1 + (m pi / width)^2 / 2
    model = AffineModel(kind=ModelKind.AFF_AFF, A=1.0, B=0.0, n=2)
    a, b = 0.05, 3.0
    grid = GridSpec(2, (GridAxis(a, b, 403),), 0.05, sl_constraint=True)
    ham = build_reduced_hamiltonian(model, R(0), R(0), grid)
    res = eigen_lowest(ham, 3, method="dense")
    exact = np.array([1.0 + 0.5 * (m * np.pi / (b - a)) ** 2 for m in (1, 2, 3)])
    np.testing.assert_allclose(res.eigenvalues, exact, rtol=2e-4)


def test_effective_mass_values():
    assert dilatation_effective_mass(AffineModel(kind=ModelKind.AFF_AFF, A=1.0, B=0.0, n=2)) == 2.0
    assert dilatation_effective_mass(AffineModel(kind=ModelKind.AFF_AFF, A=1.0, B=0.0, n=3)) == 3.0
    assert dilatation_effective_mass(
        AffineModel(kind=ModelKind.AFF_AFF, A=1.0, B=0.5, n=2)
    ) == pytest.approx(4.0)
    assert dilatation_effective_mass(
        AffineModel(kind=ModelKind.MET_AFF, A=1.0, B=0.5, I=2.0, n=2)
    ) == pytest.approx(8.0)
    with pytest.raises(ValueError):
        dilatation_effective_mass(AffineModel(kind=ModelKind.DALEMBERT, I=1.0, n=2))


def test_effective_mass_against_oscillator_spectrum():
    # pure dilatational problem (n = 1): levels hbar omega (k + 1/2) with
    # omega = sqrt(kappa / mu), mu = A + B
    model = AffineModel(kind=ModelKind.AFF_AFF, A=0.8, B=0.4, n=1)
    kappa = 2.0
    grid = GridSpec(1, (GridAxis(-8.0, 8.0, 1200),), 1e-6)
    ham = build_reduced_hamiltonian(model, R(0), R(0), grid, Potential.harmonic(kappa))
    res = eigen_lowest(ham, 3, method="dense")
    omega = np.sqrt(kappa / dilatation_effective_mass(model))
    np.testing.assert_allclose(res.eigenvalues, omega * (np.arange(3) + 0.5), rtol=2e-4)


def test_dalembert_single_invariant_is_particle_in_a_box():
    model = AffineModel(kind=ModelKind.DALEMBERT, I=1.5, n=1)
    lo, hi = 0.5, 3.5
    grid = GridSpec(1, (GridAxis(lo, hi, 500),), 1e-6)
    ham = build_reduced_hamiltonian(model, R(0), R(0), grid)
    res = eigen_lowest(ham, 2, method="dense")
    exact = np.array([(m * np.pi / (hi - lo)) ** 2 / (2.0 * 1.5) for m in (1, 2)])
    np.testing.assert_allclose(res.eigenvalues, exact, rtol=1e-4)


def test_infinite_well_restricts_domain():
    model = AffineModel(kind=ModelKind.AFF_AFF, A=1.0, B=0.0, n=1)
    grid = GridSpec(1, (GridAxis(-4.0, 4.0, 799),), 1e-6)
    ham = build_reduced_hamiltonian(model, R(0), R(0), grid, Potential.well(-1.0, 1.0))
    assert ham.n_nodes < 250
    res = eigen_lowest(ham, 1, method="dense")
    # ground state of a box of width ~2 with mass mu = 1
    assert res.eigenvalues[0] == pytest.approx(np.pi**2 / 8.0, rel=2e-2)


def test_fiber_dimension():
    model = AffineModel(kind=ModelKind.AFF_AFF, A=1.0, B=0.0, n=2)
    grid = GridSpec(2, (GridAxis(-1.0, 1.0, 6), GridAxis(-1.0, 1.0, 6)), 0.1)
    ham = build_reduced_hamiltonian(model, R(1), R(3), grid)
    assert ham.fiber_dim == 2 * 4
    assert ham.dim == ham.n_nodes * 8


def test_validation_errors():
    grid2 = GridSpec(2, (GridAxis(-1.0, 1.0, 5), GridAxis(-1.0, 1.0, 5)), 0.1)
    with pytest.raises(ValueError):
        build_reduced_hamiltonian(
            AffineModel(kind=ModelKind.AFF_AFF, A=1.0, n=2), R(0), R(1), grid2
        )
    with pytest.raises(ValueError):
        AffineModel(kind=ModelKind.MET_AFF, A=1.0, I=1.0, n=2)
    with pytest.raises(ValueError):
        AffineModel(kind=ModelKind.AFF_AFF, A=0.0, n=2)
    with pytest.raises(ValueError):
        AffineModel(kind=ModelKind.AFF_AFF, A=1.0, B=-0.5, n=2)
    with pytest.raises(ValueError):
        AffineModel(kind=ModelKind.DALEMBERT, I=-1.0, n=2)
    with pytest.raises(ValueError):
        GridSpec(2, (GridAxis(-1.0, 1.0, 5),), 0.1)  # missing an axis
    with pytest.raises(ValueError):
        GridSpec(2, (GridAxis(-1.0, 1.0, 5), GridAxis(-1.0, 1.0, 5)), 0.0)
    with pytest.raises(ValueError):
        build_reduced_hamiltonian(
            AffineModel(kind=ModelKind.DALEMBERT, I=1.0, n=2),
            R(0),
            R(0),
            GridSpec(2, (GridAxis(0.1, 2.0, 5),), 0.05, sl_constraint=True),
        )
    with pytest.raises(ValueError):
        build_reduced_hamiltonian(
            AffineModel(kind=ModelKind.DALEMBERT, I=1.0, n=2),
            R(0),
            R(0),
            GridSpec(2, (GridAxis(-1.0, 2.0, 5), GridAxis(0.0, 2.0, 5)), 0.05),
        )
    with pytest.raises(ValueError):
        # dilatational term needs equal spacings
        build_reduced_hamiltonian(
            AffineModel(kind=ModelKind.AFF_AFF, A=1.0, B=0.5, n=2),
            R(0),
            R(0),
            GridSpec(2, (GridAxis(-1.0, 1.0, 5), GridAxis(-1.0, 1.0, 9)), 0.1),
        )
    with pytest.raises(ValueError):
        # chamber swallows every node
        build_reduced_hamiltonian(
            AffineModel(kind=ModelKind.AFF_AFF, A=1.0, n=2),
            R(0),
            R(0),
            GridSpec(2, (GridAxis(-1.0, 1.0, 5), GridAxis(-1.0, 1.0, 5)), 10.0),
        )


def test_matrix_market_output():
    model = AffineModel(kind=ModelKind.AFF_AFF, A=1.0, B=0.0, n=2)
    grid = GridSpec(2, (GridAxis(-1.0, 1.0, 4), GridAxis(-1.0, 1.0, 4)), 0.1)
    ham = build_reduced_hamiltonian(model, R(0), R(0), grid)
    text = to_matrix_market(ham.matrix)
    assert text == to_matrix_market(ham.matrix)
    lines = text.splitlines()
    assert lines[0] == "%%MatrixMarket matrix coordinate real general"
    dims = lines[1].split()
    assert int(dims[0]) == ham.dim and int(dims[2]) == ham.matrix.nnz
    entries = [tuple(map(float, ln.split()[:2])) for ln in lines[2:]]
    assert entries == sorted(entries)
