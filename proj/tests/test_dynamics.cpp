#include <algorithm>
#include <cmath>
#include <numeric>

#include <doctest.h>

#include "atomtopo/dynamics.hpp"
#include "atomtopo/linalg.hpp"

using namespace atomtopo;

namespace {

FiniteLattice atoms(std::vector<Vec2> pos) {
    FiniteLattice lat;
    lat.a = 0.05;
    lat.positions = std::move(pos);
    lat.sublattice.assign(lat.positions.size(), 1);
    return lat;
}

PhysicalParams field(double mu) {
    PhysicalParams p;
    p.mu_b = mu;
    return p;
}

std::vector<double> neg_imag(const VecXc& e) {
    std::vector<double> g(e.size());
    for (Eigen::Index i = 0; i < e.size(); ++i) g[i] = -e[i].imag();
    std::sort(g.begin(), g.end());
    return g;
}

DriveProtocol constant_x(double omega) {
    DriveProtocol d;
    d.omega = omega;
    d.envelope = Envelope::constant;
    d.polarization = Polarization::linear_x();
    return d;
}

}  // namespace

TEST_CASE("single atom spectrum") {
    const FiniteHamiltonian h = assemble_finite_hamiltonian(atoms({Vec2(0, 0)}), field(3.0), 10.0);
    CHECK(h.atoms == 1);
    VecXc e = eigenvalues(h.H);
    std::vector<cd> v(e.data(), e.data() + e.size());
    std::sort(v.begin(), v.end(), [](cd x, cd y) { return x.real() < y.real(); });
    CHECK(std::abs(v[0] - cd(-13.0, -0.5)) < 1e-12);
    CHECK(std::abs(v[1] - cd(-7.0, -0.5)) < 1e-12);
}

TEST_CASE("close pair splits into super- and subradiant states") {
    const FiniteHamiltonian h = assemble_finite_hamiltonian(atoms({Vec2(0, 0), Vec2(0.01, 0)}), field(0.0), 0.0);
    const auto g = neg_imag(eigenvalues(h.H));
    CHECK(g.front() < 0.01);
    CHECK(g.back() > 0.99);
    CHECK(g.back() < 1.0);
    CHECK_THROWS_AS(assemble_finite_hamiltonian(atoms({Vec2(0, 0), Vec2(0, 0)}), field(0.0), 0.0), DomainError);
}

TEST_CASE("anti-Hermitian part is negative semidefinite") {
    const FiniteLattice lat = build_hexagon_bearded(3, 0.05);
    const FiniteHamiltonian h = assemble_finite_hamiltonian(lat, field(12.0), 10.0);
    CHECK(max_antihermitian_eigenvalue(h.H) < 1e-10);
    CHECK((h.H - h.H.transpose()).norm() > 1.0);
    const FiniteHamiltonian h0 = assemble_finite_hamiltonian(lat, field(0.0), 10.0);
    CHECK((h0.H - h0.H.transpose()).norm() < 1e-10 * h0.H.norm());
}

TEST_CASE("polarization vectors") {
    const double r = 1.0 / std::sqrt(2.0);
    CHECK((Polarization::sigma_plus().amplitudes() - Vec2c(-r, cd(0, -r))).norm() < 1e-15);
    CHECK((Polarization::sigma_minus().amplitudes() - Vec2c(r, cd(0, -r))).norm() < 1e-15);
    CHECK((Polarization::linear_x().amplitudes() - Vec2c(1, 0)).norm() < 1e-15);
    const Vec2c eq = Polarization::equal().amplitudes();
    CHECK(eq.norm() == doctest::Approx(1.0));
    CHECK(std::abs(eq[0]) < 1e-15);
    CHECK_THROWS_AS((Polarization{0.0, 0.0}.amplitudes()), DomainError);
}

TEST_CASE("drive envelopes") {
    DriveProtocol d;
    d.omega = 2.0;
    CHECK(drive_envelope(d, d.t0) == cd(2.0));
    CHECK(drive_envelope(d, d.t0 + 5.0) == cd(2.0));
    CHECK(std::abs(drive_envelope(d, d.t0 - d.tau) - 2.0 / std::exp(1.0)) < 1e-14);
    d.envelope = Envelope::sigmoid;
    CHECK(std::abs(drive_envelope(d, d.t0) - 1.0) < 1e-14);
    CHECK(std::abs(drive_envelope(d, d.t0 + 40 * d.tau) - 2.0) < 1e-12);
    d.t_off = 4.0;
    CHECK(drive_envelope(d, 3.999) != cd(0.0));
    CHECK(drive_envelope(d, 4.0) == cd(0.0));
    CHECK_THROWS_AS(drive_envelope(d, -0.1), DomainError);

    d.target = 3;
    CHECK_THROWS_AS(d.validate(2), DomainError);
    d.target = 0;
    d.tau = 0;
    CHECK_THROWS_AS(d.validate(2), DomainError);
}

TEST_CASE("single atom follows the closed form") {
    const MatXc H = assemble_finite_hamiltonian(atoms({Vec2(0, 0)}), field(0.0), 2.0).H;

    // free decay |c|^2 = exp(-t)
    EvolveOptions opt;
    opt.initial = VecXc::Zero(2);
    (*opt.initial)[0] = 1.0;
    const Trajectory free = evolve(H, constant_x(0.0), 4.0, opt);
    for (std::size_t i = 0; i < free.times.size(); ++i)
        CHECK(std::abs(free.norms[i] - std::exp(-free.times[i])) < 1e-6);
    CHECK(fit_decay_rate(free, 1.0, 3.0) == doctest::Approx(0.5).epsilon(1e-6));

    // constant drive: c(t) = -s/A (1 - exp(-i A t)) with A = -detuning - i/2
    const Trajectory driven = evolve(H, constant_x(0.6), 3.0);
    const cd A(-2.0, -0.5), s = 0.3;
    const cd expect = -s / A * (1.0 - std::exp(-I * A * 3.0));
    CHECK(std::abs(driven.final_state[0] - expect) < 1e-6);
    CHECK(std::abs(driven.final_state[1]) < 1e-12);
}

TEST_CASE("RK4 error falls with the fourth power of the step") {
    const MatXc H = assemble_finite_hamiltonian(build_hexagon_bearded(1, 0.05), field(12.0), 5.0).H;
    DriveProtocol d;
    d.envelope = Envelope::sigmoid;
    d.t0 = 0.2;
    d.tau = 0.05;
    d.polarization = Polarization::sigma_plus();
    auto run = [&](double dt) {
        EvolveOptions opt;
        opt.dt = dt;
        return evolve(H, d, 0.4, opt).final_state;
    };
    const VecXc c1 = run(0.004), c2 = run(0.002), c3 = run(0.001);
    const double ratio = (c1 - c2).norm() / (c2 - c3).norm();
    CHECK(ratio > 14.0);
    CHECK(ratio < 18.0);
}

TEST_CASE("norm never grows without a drive") {
    const MatXc H = assemble_finite_hamiltonian(build_hexagon_bearded(2, 0.05), field(12.0), 0.0).H;
    EvolveOptions opt;
    opt.initial = VecXc::Zero(H.rows());
    (*opt.initial)[5] = 1.0;
    DriveProtocol d = constant_x(0.0);
    d.t_off = 0.0;
    const Trajectory t = evolve(H, d, 2.0, opt);
    for (std::size_t i = 1; i < t.norms.size(); ++i) CHECK(t.norms[i] <= t.norms[i - 1] * (1 + 1e-14));
    CHECK(t.max_norm_rate_off <= 1e-10);
    CHECK(t.norms.back() < 1.0);
}

TEST_CASE("response is linear in the drive") {
    const MatXc H = assemble_finite_hamiltonian(build_hexagon_bearded(2, 0.05), field(12.0), 15.0).H;
    DriveProtocol d1;
    d1.omega = 0.2;
    d1.polarization = Polarization::equal();
    DriveProtocol d2 = d1;
    d2.omega = 0.4;
    const auto out = evolve(H, {d1, d2}, 2.0);
    CHECK((out[1].final_state - 2.0 * out[0].final_state).norm() < 1e-12 * out[1].final_state.norm());
    // batched and single runs agree
    CHECK((evolve(H, d1, 2.0).final_state - out[0].final_state).norm() < 1e-12);
}

TEST_CASE("snapshots and probabilities") {
    const MatXc H = assemble_finite_hamiltonian(build_hexagon_bearded(1, 0.05), field(12.0), 15.0).H;
    EvolveOptions opt;
    opt.snapshot_times = {0.5, 1.0};
    const Trajectory t = evolve(H, DriveProtocol{}, 1.0, opt);
    REQUIRE(t.snapshots.size() == 2);
    CHECK((t.snapshots[1] - t.final_state).norm() < 1e-15);
    const auto p = excitation_probabilities(t.final_state);
    CHECK(std::accumulate(p.begin(), p.end(), 0.0) == doctest::Approx(t.norms.back()));
    CHECK(instantaneous_decay_rate(H, t.final_state) > 0);
}

TEST_CASE("decay fits need a decaying window") {
    const MatXc H = assemble_finite_hamiltonian(atoms({Vec2(0, 0)}), field(0.0), 0.0).H;
    const Trajectory t = evolve(H, constant_x(1.0), 2.0);
    CHECK_THROWS_AS(fit_decay_rate(t, 0.1, 1.0), ConvergenceError);
    CHECK_THROWS_AS(fit_decay_rate(t, 1.0, 3.0), DomainError);
    CHECK_THROWS_AS(fit_decay_rate(t, 1.0, 1.0), DomainError);
}

TEST_CASE("forward fraction on a symmetric edge excitation") {
    const FiniteLattice lat = build_hexagon_bearded(6, 0.05);
    const TransportSetup setup = make_transport_setup(6, 0.05, 0.0);
    CHECK(setup.lattice.size() == lat.size());
    EdgeMetricOptions opt;
    opt.forward_extent_deg = 180.0;
    const EdgeMetrics layout = edge_metrics_layout(lat, setup.source, opt);
    std::vector<double> p(lat.size(), 0.0);
    for (int i = 0; i < lat.size(); ++i) p[i] = layout.band[i] ? 1.0 : 0.0;
    CHECK(forward_fraction(p, lat, setup.source, opt) == doctest::Approx(0.5).epsilon(0.03));
    opt.clockwise = false;
    CHECK(forward_fraction(p, lat, setup.source, opt) == doctest::Approx(0.5).epsilon(0.03));

    std::vector<double> zero(lat.size(), 0.0);
    zero[setup.source] = 1.0;
    CHECK_THROWS_AS(forward_fraction(zero, lat, setup.source, opt), DomainError);
    CHECK_THROWS_AS(forward_fraction(std::vector<double>(3, 1.0), lat, setup.source, opt), DomainError);
    CHECK_THROWS_AS(window_density(p, layout, 400.0, 410.0), DomainError);
    // a bulk atom cannot be the source
    const auto depth = boundary_depth(lat);
    const int bulk = static_cast<int>(std::find(depth.begin(), depth.end(), 3) - depth.begin());
    CHECK_THROWS_AS(edge_metrics_layout(lat, bulk), DomainError);
}

TEST_CASE("transport setup") {
    const TransportSetup s = make_transport_setup(14, 0.05, 3.5 * 0.05);
    CHECK(s.lattice.size() == 1243);
    CHECK(s.lattice.removed.size() == 17);
    CHECK(s.lattice.positions[s.source].y() < 0);
    CHECK(std::abs(s.lattice.positions[s.source].x()) < 0.05);
    CHECK(coordination(s.lattice)[s.source] == 1);
}

TEST_CASE("edge-state lifetimes grow with the flake size") {
    const LifetimeScan scan = edge_lifetime_scaling({2, 3, 4, 5}, field(12.0), -5.0349, 18.9304);
    REQUIRE(scan.atoms.size() == 4);
    CHECK(scan.atoms[2] == 120);
    for (double s : scan.edge_support) CHECK(s > 0.6);
    CHECK(scan.exponent < 0);
    CHECK_THROWS_AS(edge_lifetime_scaling({2, 3, 4}, field(12.0), -5.0, 19.0), DomainError);
    CHECK_THROWS_AS(edge_lifetime_scaling({2, 3, 4, 5}, field(12.0), 19.0, -5.0), DomainError);
}
