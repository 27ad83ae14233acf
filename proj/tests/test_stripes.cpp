#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "atomtopo/linalg.hpp"
#include "atomtopo/stripes.hpp"

using namespace atomtopo;

namespace {

const double a = 0.05;

PhysicalParams field(double mu) {
    PhysicalParams p;
    p.mu_b = mu;
    return p;
}

int in_gap_count(const StripeSpectrum& s, EdgeSide side) {
    return static_cast<int>(
        std::count_if(s.modes.begin(), s.modes.end(), [&](const StripeMode& m) { return m.in_gap && m.side == side; }));
}

std::vector<double> sorted_real(const VecXc& v) {
    std::vector<double> r(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) r[i] = v[i].real();
    std::sort(r.begin(), r.end());
    return r;
}

// The full-size bearded stripe is shared between cases.
const StripeSpectrum& bearded(double mu) {
    static const FiniteLattice lat = build_stripe(BoundaryType::bearded, 40, 42, 0, a);
    static const StripeSpectrum plus = stripe_spectrum(lat, field(12.0));
    static const StripeSpectrum minus = stripe_spectrum(lat, field(-12.0));
    return mu > 0 ? plus : minus;
}

}  // namespace

TEST_CASE("edge classification") {
    const FiniteLattice lat = build_stripe(BoundaryType::bearded, 4, 12, 0, a);
    // atom i of the cell sits on row i for the bearded stripe
    auto vec = [&](double bottom, double middle, double top) {
        // real amplitudes on x only

        VecXc v = VecXc::Zero(2 * lat.atoms_per_cell);
        for (int i = 0; i < lat.atoms_per_cell; ++i) {
            const double w = i < 4 ? bottom : (i >= lat.atoms_per_cell - 4 ? top : middle);
            v[2 * i] = std::sqrt(w);
        }
        return v;
    };
    double ratio = 0;
    CHECK(classify_edge_state(vec(0.01, 0.1, 1.0), lat, &ratio) == EdgeSide::top);
    CHECK(ratio == doctest::Approx(100.0));
    CHECK(classify_edge_state(vec(1.0, 0.1, 0.01), lat) == EdgeSide::bottom);
    CHECK(classify_edge_state(vec(1.0, 1.0, 1.0), lat, &ratio) == EdgeSide::bulk);
    CHECK(ratio == doctest::Approx(1.0));
    // the threshold itself is not enough; 9 + 4 + 1 + 1 = 15 keeps it exact
    VecXc edge = VecXc::Zero(2 * lat.atoms_per_cell);
    for (int i = 0; i < 4; ++i) {
        edge[2 * i] = 1.0;
        edge[2 * (lat.atoms_per_cell - 1 - i)] = cd(3.0, 2.0);
        edge[2 * (lat.atoms_per_cell - 1 - i) + 1] = cd(1.0, 1.0);
    }
    CHECK(classify_edge_state(edge, lat, &ratio) == EdgeSide::bulk);
    CHECK(ratio == 15.0);
    edge[2 * (lat.atoms_per_cell - 1)] *= 1.001;
    CHECK(classify_edge_state(edge, lat) == EdgeSide::top);
    CHECK_THROWS_AS(classify_edge_state(VecXc::Zero(5), lat), DomainError);
}

TEST_CASE("block-circulant and full ring spectra coincide") {
    const FiniteLattice lat = build_stripe(BoundaryType::bearded, 12, 14, 0, a);
    StripeOptions opt;
    opt.gap = std::make_pair(-5.0, 19.0);
    const StripeSpectrum block = stripe_spectrum(lat, field(12.0), opt);
    opt.block_circulant = false;
    const StripeSpectrum full = stripe_spectrum(lat, field(12.0), opt);
    REQUIRE(block.modes.size() == full.modes.size());
    CHECK(block.modes.size() == 2 * static_cast<std::size_t>(lat.size()));
    // m labels are not compared: the dense solver may mix near-degenerate
    // modes of different k, which moves a few DFT labels by one.
    VecXc eb(block.modes.size()), ef(full.modes.size());
    for (std::size_t i = 0; i < block.modes.size(); ++i) {
        eb[i] = block.modes[i].E;
        ef[i] = full.modes[i].E;
    }
    const auto rb = sorted_real(eb), rf = sorted_real(ef);
    double scale = 0, diff = 0;
    for (std::size_t i = 0; i < rb.size(); ++i) {
        scale = std::max(scale, std::abs(rb[i]));
        diff = std::max(diff, std::abs(rb[i] - rf[i]));
    }
    CHECK(diff < 1e-8 * scale);

    // the ring matrix reproduces the same spectrum
    const auto rr = sorted_real(eigenvalues(stripe_ring_matrix(lat, field(12.0), opt)));
    diff = 0;
    for (std::size_t i = 0; i < rb.size(); ++i) diff = std::max(diff, std::abs(rb[i] - rr[i]));
    CHECK(diff < 1e-8 * scale);
}

TEST_CASE("reciprocal ring couplings without field") {
    const FiniteLattice lat = build_stripe(BoundaryType::armchair, 8, 9, 0, a);
    const MatXc h = stripe_ring_matrix(lat, field(0.0));
    CHECK((h - h.transpose()).norm() < 1e-10 * h.norm());
    const MatXc hb = stripe_ring_matrix(lat, field(12.0));
    CHECK((hb - hb.transpose()).norm() > 1.0);
}

TEST_CASE("in-gap edge counts are stable under summation settings") {
    const FiniteLattice lat = build_stripe(BoundaryType::bearded, 20, 22, 0, a);
    StripeOptions opt;
    opt.gap = std::make_pair(-5.0349, 18.9304);
    const StripeSpectrum s1 = stripe_spectrum(lat, field(12.0), opt);
    opt.tail_factor = 8.5;
    const StripeSpectrum s2 = stripe_spectrum(lat, field(12.0), opt);
    for (EdgeSide side : {EdgeSide::top, EdgeSide::bottom}) {
        CHECK(in_gap_count(s1, side) > 0);
        CHECK(in_gap_count(s1, side) == in_gap_count(s2, side));
    }
    double shift = 0;
    for (std::size_t i = 0; i < s1.modes.size(); ++i) shift = std::max(shift, std::abs(s1.modes[i].E - s2.modes[i].E));
    CHECK(shift < 1e-4);

    StripeOptions trunc;
    trunc.gap = opt.gap;
    trunc.summation = StripeOptions::Summation::truncated;
    const FiniteLattice l30 = build_stripe(BoundaryType::bearded, 20, 22, 30, a);
    const FiniteLattice l40 = build_stripe(BoundaryType::bearded, 20, 22, 40, a);
    const StripeSpectrum t1 = stripe_spectrum(l30, field(12.0), trunc);
    const StripeSpectrum t2 = stripe_spectrum(l40, field(12.0), trunc);
    for (EdgeSide side : {EdgeSide::top, EdgeSide::bottom}) CHECK(in_gap_count(t1, side) == in_gap_count(t2, side));
}

TEST_CASE("invalid damping ladder is rejected") {
    const FiniteLattice lat = build_stripe(BoundaryType::bearded, 8, 10, 0, a);
    StripeOptions opt;
    opt.gap = std::make_pair(-5.0, 19.0);
    opt.eps_ladder = {0.08, 0.05};
    CHECK_THROWS_AS(stripe_spectrum(lat, field(12.0), opt), ConfigError);
}

TEST_CASE("quasi-momenta cover one Brillouin zone") {
    const StripeSpectrum& s = bearded(12.0);
    const double kmax = pi / s.period;
    for (const StripeMode& m : s.modes) {
        CHECK(m.k > -kmax - 1e-12);
        CHECK(m.k <= kmax + 1e-12);
        CHECK(m.k == doctest::Approx(2 * pi * m.m / (s.cells * s.period)));
    }
}

TEST_CASE("one chiral branch per edge with opposite velocities") {
    const StripeSpectrum& s = bearded(12.0);
    CHECK(s.gap_hi - s.gap_lo > 20.0);
    double vt = 0, vb = 0, mean_speed = 0;
    for (EdgeSide side : {EdgeSide::top, EdgeSide::bottom}) {
        const EdgeBranchReport r = analyze_edge_branches(s, side);
        for (int c : r.crossings) CHECK(c == 1);
        for (const BranchCrossing& l : r.links) {
            // bearded edge states are evanescent in the vacuum
            CHECK(std::abs(l.k_from) > s.k_light);
            CHECK(l.gamma_from < 0.05);
        }
        REQUIRE(!r.branch_velocities.empty());
        (side == EdgeSide::top ? vt : vb) = r.links[1].velocity;
        for (double v : r.branch_velocities) CHECK(v * r.links[1].velocity > 0);
        double sum = 0;
        for (double v : r.branch_velocities) sum += std::abs(v);
        mean_speed = sum / r.branch_velocities.size();
    }
    CHECK(vt * vb < 0);

    // mean slope of the branch against the gap over the stripe zone edge
    const double scale = (s.gap_hi - s.gap_lo) / (pi / s.period);
    CHECK(mean_speed > scale / 3);
    CHECK(mean_speed < scale * 3);
}

TEST_CASE("reversing the field reverses the edge velocities") {
    for (EdgeSide side : {EdgeSide::top, EdgeSide::bottom}) {
        const EdgeBranchReport up = analyze_edge_branches(bearded(12.0), side);
        const EdgeBranchReport down = analyze_edge_branches(bearded(-12.0), side);
        REQUIRE(up.links.size() == 3);
        REQUIRE(down.links.size() == 3);
        for (int i = 0; i < 3; ++i) CHECK(up.links[i].velocity * down.links[i].velocity < 0);
    }
}

TEST_CASE("group velocity needs an edge branch") {
    const FiniteLattice lat = build_stripe(BoundaryType::bearded, 8, 10, 0, a);
    StripeOptions opt;
    opt.gap = std::make_pair(1000.0, 1001.0);
    const StripeSpectrum s = stripe_spectrum(lat, field(12.0), opt);
    CHECK_THROWS_AS(edge_group_velocity(s, EdgeSide::top), DomainError);
    CHECK_THROWS_AS(analyze_edge_branches(s, EdgeSide::bulk), DomainError);
}
