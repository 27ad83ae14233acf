#include "atomtopo/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "atomtopo/linalg.hpp"

namespace atomtopo {

namespace {

cd link(const MatXc& a, const MatXc& b, double min_link) {
    const MatXc ov = a.adjoint() * b;
    const cd d = ov.cols() == 1 ? ov(0, 0) : ov.determinant();
    const double mag = std::abs(d);
    if (mag < min_link) {
        throw ConvergenceError("chern: link overlap " + std::to_string(mag) + " below threshold; refine the grid");
    }
    return d / mag;
}

MatXc orthonormal(const MatXc& v) {
    Eigen::HouseholderQR<MatXc> qr(v);
    return qr.householderQ() * MatXc::Identity(v.rows(), v.cols());
}

}  // namespace

std::vector<double> plaquette_fluxes(const std::vector<MatXc>& frames, int n, double min_link) {
    auto at = [&](int i, int j) -> const MatXc& { return frames[((i + n) % n) * n + (j + n) % n]; };
    std::vector<cd> ux(frames.size()), uy(frames.size());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            ux[i * n + j] = link(at(i, j), at(i + 1, j), min_link);
            uy[i * n + j] = link(at(i, j), at(i, j + 1), min_link);
        }
    }
    std::vector<double> flux(frames.size());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const cd w = ux[i * n + j] * uy[((i + 1) % n) * n + j] * std::conj(ux[i * n + (j + 1) % n]) *
                         std::conj(uy[i * n + j]);
            flux[i * n + j] = std::arg(w);
        }
    }
    return flux;
}

ChernReport chern_numbers(const PhysicalParams& params, const RegularizationParams& reg, int grid_n) {
    if (grid_n < 12) throw DomainError("chern_numbers: grid_n must be at least 12");
    const InteractionGrid grid(params, reg, grid_n);
    const int n = grid_n;
    const Mat4c z = zeeman_block(params.mu_b);
    std::vector<EigenSystem> sys(static_cast<std::size_t>(n) * n);
    parallel_for(n * n, [&](int idx) {
        sys[idx] = eig(MatXc(grid.matrix_at(idx / n, idx % n) + z));
        sort_by_real(sys[idx]);
    });

    ChernReport rep;
    rep.grid_n = n;
    double lower_max = -std::numeric_limits<double>::infinity();
    double upper_min = std::numeric_limits<double>::infinity();
    double split_low = std::numeric_limits<double>::infinity(), split_high = split_low;
    for (const auto& s : sys) {
        lower_max = std::max(lower_max, s.values[1].real());
        upper_min = std::min(upper_min, s.values[2].real());
        split_low = std::min(split_low, std::abs(s.values[1] - s.values[0]));
        split_high = std::min(split_high, std::abs(s.values[3] - s.values[2]));
    }
    rep.delta = upper_min - lower_max;
    if (rep.delta <= 0) throw DomainError("chern_numbers: gap closed, band grouping undefined");

    auto group = [&](int first, int count) {
        std::vector<MatXc> frames(sys.size());
        for (std::size_t idx = 0; idx < sys.size(); ++idx) {
            frames[idx] = orthonormal(sys[idx].vectors.middleCols(first, count));
        }
        return plaquette_fluxes(frames, n);
    };
    rep.flux_below = group(0, 2);
    rep.flux_above = group(2, 2);
    auto total = [](const std::vector<double>& f) {
        double s = 0;
        for (double x : f) s += x;
        return s / (2.0 * pi);
    };
    rep.raw_below = total(rep.flux_below);
    rep.raw_above = total(rep.flux_above);
    rep.sum_below = static_cast<int>(std::lround(rep.raw_below));
    rep.sum_above = static_cast<int>(std::lround(rep.raw_above));
    rep.max_residual = std::max(std::abs(rep.raw_below - rep.sum_below), std::abs(rep.raw_above - rep.sum_above));

    rep.individual_valid = split_low > 1e-6 && split_high > 1e-6;
    if (rep.individual_valid) {
        try {
            for (int b = 0; b < 4; ++b) {
                rep.chern_raw[b] = total(group(b, 1));
                rep.chern[b] = static_cast<int>(std::lround(rep.chern_raw[b]));
                rep.max_residual = std::max(rep.max_residual, std::abs(rep.chern_raw[b] - rep.chern[b]));
            }
        } catch (const ConvergenceError&) {
            rep.individual_valid = false;
        }
    }
    return rep;
}

FieldScan gap_vs_field(const PhysicalParams& base, const RegularizationParams& reg, const std::vector<double>& mu_b,
                       int grid_n) {
    if (mu_b.empty()) throw DomainError("gap_vs_field: empty field grid");
    const InteractionGrid grid(base, reg, grid_n);
    FieldScan scan;
    scan.mu_b = mu_b;
    scan.delta_max = -std::numeric_limits<double>::infinity();
    for (double mu : mu_b) {
        const double d = grid.gap(mu).delta;
        scan.delta.push_back(d);
        if (d > scan.delta_max) {
            scan.delta_max = d;
            scan.mu_at_max = mu;
        }
    }
    return scan;
}

double coupling_J(double a, double k) {
    const Mat2c g = greens_in_plane(Vec2(a, 0.0), k);
    return std::abs(interaction_prefactor(k) * g(0, 0));
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("fit_slope: need two or more matching points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SpacingScan gap_scaling_vs_spacing(const std::vector<double>& spacings, int grid_n, int field_points,
                                   double field_span, double a_ho_ratio) {
    if (spacings.size() < 2) throw DomainError("gap_scaling_vs_spacing: need at least two spacings");
    SpacingScan out;
    std::vector<double> la, ld, lj;
    for (double a : spacings) {
        PhysicalParams p;
        p.spacing = a;
        p.validate();
        if (a > 0.1) throw DomainError("gap_scaling_vs_spacing: spacing must be at most 0.1 lambda");
        const double J = coupling_J(p.a(), p.k());
        std::vector<double> fields(field_points);
        for (int i = 0; i < field_points; ++i) fields[i] = field_span * J * i / (field_points - 1);
        const FieldScan scan = gap_vs_field(p, {a_ho_ratio * p.a(), 1e-12}, fields, grid_n);
        out.a.push_back(a);
        out.delta_max.push_back(scan.delta_max);
        out.J.push_back(J);
        la.push_back(std::log(a));
        ld.push_back(std::log(scan.delta_max));
        lj.push_back(std::log(J));
    }
    out.slope_delta = fit_slope(la, ld);
    out.slope_J = fit_slope(la, lj);
    return out;
}

}  // namespace atomtopo
