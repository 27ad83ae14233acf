#include "atomtopo/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "atomtopo/linalg.hpp"
#include "atomtopo/topology.hpp"

namespace atomtopo {

FiniteHamiltonian assemble_finite_hamiltonian(const FiniteLattice& lat, const PhysicalParams& params,
                                              double detuning) {
    params.validate();
    const int n = lat.size();
    if (n < 1) throw DomainError("assemble_finite_hamiltonian: lattice is empty");
    const double k = params.k();
    const double pref = interaction_prefactor(k);
    FiniteHamiltonian out;
    out.detuning = detuning;
    out.mu_b = params.mu_b;
    out.atoms = n;
    out.H = MatXc::Zero(2 * n, 2 * n);
    MatXc& H = out.H;
    parallel_for(n, [&](int i) {
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const Vec2 r = lat.positions[i] - lat.positions[j];
            if (r.norm() < 1e-12 * params.lambda_) {
                std::ostringstream msg;
                msg << "assemble_finite_hamiltonian: atoms " << i << " and " << j << " coincide";
                throw DomainError(msg.str());
            }
            H.block<2, 2>(2 * i, 2 * j) = pref * greens_in_plane(r, k);
        }
        H(2 * i, 2 * i) = -detuning - 0.5 * I;
        H(2 * i + 1, 2 * i + 1) = -detuning - 0.5 * I;
        H(2 * i, 2 * i + 1) = -I * params.mu_b;
        H(2 * i + 1, 2 * i) = I * params.mu_b;
    });
    return out;
}

double max_antihermitian_eigenvalue(const MatXc& H) {
    const MatXc A = (-I * 0.5) * (H - H.adjoint());
    Eigen::SelfAdjointEigenSolver<MatXc> es(A, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

Polarization Polarization::linear_x() {
    const double r = 1.0 / std::sqrt(2.0);
    return {-r, r};
}

Polarization Polarization::equal() { return {1.0, 1.0}; }

Vec2c Polarization::amplitudes() const {
    const double norm = std::sqrt(std::norm(plus) + std::norm(minus));
    if (!(norm > 0)) throw DomainError("Polarization: both weights are zero");
    const double r = 1.0 / std::sqrt(2.0);
    const Vec2c sp(-r, -I * r), sm(r, -I * r);
    return (plus * sp + minus * sm) / norm;
}

void DriveProtocol::validate(int atoms) const {
    if (target < 0 || target >= atoms) throw DomainError("DriveProtocol: target atom out of range");
    if (!std::isfinite(omega)) throw DomainError("DriveProtocol: omega must be finite");
    if (envelope != Envelope::constant && !(tau > 0 && t0 > 0)) {
        throw DomainError("DriveProtocol: envelope t0 and tau must be positive");
    }
    polarization.amplitudes();
}

cd drive_envelope(const DriveProtocol& proto, double t) {
    if (t < 0) throw DomainError("drive_envelope: t must be non-negative");
    if (proto.t_off && t >= *proto.t_off) return 0.0;
    switch (proto.envelope) {
        case Envelope::gaussian:
            return t < proto.t0 ? proto.omega * std::exp(-std::pow(t - proto.t0, 2) / (proto.tau * proto.tau))
                                : proto.omega;
        case Envelope::sigmoid: return proto.omega / (1.0 + std::exp(-(t - proto.t0) / proto.tau));
        case Envelope::constant: return proto.omega;
    }
    return 0.0;
}

std::vector<Trajectory> evolve(const MatXc& H, const std::vector<DriveProtocol>& drives, double t_end,
                               const EvolveOptions& opt) {
    const Eigen::Index dim = H.rows();
    if (H.cols() != dim || dim % 2 != 0) throw DomainError("evolve: H must be square with even size");
    if (!(t_end > 0)) throw DomainError("evolve: t_end must be positive");
    if (!(opt.dt > 0)) throw DomainError("evolve: dt must be positive");
    if (drives.empty()) throw DomainError("evolve: no drives given");
    const int atoms = static_cast<int>(dim / 2);
    const int M = static_cast<int>(drives.size());
    std::vector<Vec2c> pol(M);
    for (int m = 0; m < M; ++m) {
        drives[m].validate(atoms);
        pol[m] = drives[m].polarization.amplitudes();
    }

    MatXc C = MatXc::Zero(dim, M);
    if (opt.initial) {
        if (opt.initial->size() != dim) throw DomainError("evolve: initial state has the wrong size");
        for (int m = 0; m < M; ++m) C.col(m) = *opt.initial;
    }
    auto source = [&](double t, MatXc& S) {
        S.setZero();
        for (int m = 0; m < M; ++m) {
            const cd e = 0.5 * drive_envelope(drives[m], t);
            S.block<2, 1>(2 * drives[m].target, m) += e * pol[m];
        }
    };
    MatXc S(dim, M), k1(dim, M), k2(dim, M), k3(dim, M), k4(dim, M), tmp(dim, M);
    auto rhs = [&](double t, const MatXc& c, MatXc& out) {
        source(t, S);
        multiply(H, c, out);
        out += S;
        out *= -I;
    };

    std::vector<Trajectory> traj(M);
    auto record_snapshots = [&](double t) {
        for (double s : opt.snapshot_times) {
            if (std::abs(t - s) < 0.5 * opt.dt) {
                for (int m = 0; m < M; ++m) {
                    traj[m].snapshot_times.push_back(t);
                    traj[m].snapshots.push_back(C.col(m));
                }
            }
        }
    };
    for (int m = 0; m < M; ++m) {
        traj[m].times.push_back(0.0);
        traj[m].norms.push_back(C.col(m).squaredNorm());
    }
    record_snapshots(0.0);

    const double dt = opt.dt;
    const long steps = std::lround(t_end / dt);
    for (long s = 0; s < steps; ++s) {
        const double t = s * dt;
        rhs(t, C, k1);
        tmp = C + (0.5 * dt) * k1;
        rhs(t + 0.5 * dt, tmp, k2);
        tmp = C + (0.5 * dt) * k2;
        rhs(t + 0.5 * dt, tmp, k3);
        tmp = C + dt * k3;
        rhs(t + dt, tmp, k4);
        C += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double t1 = (s + 1) * dt;
        for (int m = 0; m < M; ++m) {
            const double n0 = traj[m].norms.back();
            const double n1 = C.col(m).squaredNorm();
            traj[m].times.push_back(t1);
            traj[m].norms.push_back(n1);
            const bool off = drive_envelope(drives[m], t) == 0.0 && drive_envelope(drives[m], t + 0.5 * dt) == 0.0 &&
                             drive_envelope(drives[m], t1) == 0.0;
            if (!off) continue;
            const double rate = (n1 - n0) / dt;
            traj[m].max_norm_rate_off = std::max(traj[m].max_norm_rate_off, rate);
            if (opt.check_norm && rate > 1e-10) {
                std::ostringstream msg;
                msg << "evolve: norm grew by " << rate << " per unit time at t = " << t1
                    << " with the drive off; reduce dt (now " << dt << ")";
                throw ConvergenceError(msg.str());
            }
        }
        record_snapshots(t1);
    }
    for (int m = 0; m < M; ++m) traj[m].final_state = C.col(m);
    return traj;
}

Trajectory evolve(const MatXc& H, const DriveProtocol& drive, double t_end, const EvolveOptions& opt) {
    return evolve(H, std::vector<DriveProtocol>{drive}, t_end, opt).front();
}

std::vector<double> excitation_probabilities(const VecXc& c) {
    std::vector<double> p(c.size() / 2);
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(c[2 * i]) + std::norm(c[2 * i + 1]);
    return p;
}

double instantaneous_decay_rate(const MatXc& H, const VecXc& c) {
    const double n = c.squaredNorm();
    if (!(n > 0)) throw DomainError("instantaneous_decay_rate: zero state");
    return -c.dot(H * c).imag() / n;
}

double fit_decay_rate(const Trajectory& traj, double t_from, double t_to) {
    if (!(t_to > t_from)) throw DomainError("fit_decay_rate: empty window");
    if (traj.times.empty() || traj.times.back() < t_to - 1e-9) {
        throw DomainError("fit_decay_rate: trajectory ends before the fit window");
    }
    std::vector<double> x, y;
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        if (t < t_from - 1e-12 || t > t_to + 1e-12) continue;
        const double p = traj.norms[i];
        if (!(p > 0)) throw ConvergenceError("fit_decay_rate: population vanished inside the window");
        if (p > prev * (1.0 + 1e-12)) throw ConvergenceError("fit_decay_rate: population is not monotone in the window");
        prev = p;
        x.push_back(t);
        y.push_back(std::log(p));
    }
    if (x.size() < 3) throw DomainError("fit_decay_rate: fewer than three samples in the window");
    return -0.5 * fit_slope(x, y);
}

EdgeMetrics edge_metrics_layout(const FiniteLattice& lat, int source, const EdgeMetricOptions& opt) {
    const int n = lat.size();
    if (source < 0 || source >= n) throw DomainError("edge metrics: source index out of range");
    const std::vector<int> deg = coordination(lat);
    if (deg[source] >= 3) throw DomainError("edge metrics: source is not on the boundary");
    const std::vector<int> depth = boundary_depth(lat);

    EdgeMetrics out;
    out.excluded.assign(n, 0);
    out.excluded[source] = 1;
    std::vector<int> boundary;
    for (int i = 0; i < n; ++i) {
        if (deg[i] < 3 && i != source) boundary.push_back(i);
    }
    const Vec2 ps = lat.positions[source];
    std::stable_sort(boundary.begin(), boundary.end(), [&](int a, int b) {
        return (lat.positions[a] - ps).norm() < (lat.positions[b] - ps).norm();
    });
    for (int q = 0; q < opt.excluded_neighbours && q < static_cast<int>(boundary.size()); ++q) {
        out.excluded[boundary[q]] = 1;
    }

    auto angle = [&](const Vec2& p) { return std::atan2(p.y() - opt.centre.y(), p.x() - opt.centre.x()); };
    const double th0 = angle(ps);
    const double sense = opt.clockwise ? -1.0 : 1.0;
    out.angle_deg.resize(n);
    out.band.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        double rel = std::fmod(sense * (angle(lat.positions[i]) - th0), 2.0 * pi);
        if (rel < 0) rel += 2.0 * pi;
        out.angle_deg[i] = rel * 180.0 / pi;
        out.band[i] = depth[i] >= 0 && depth[i] <= opt.band_depth && !out.excluded[i];
    }
    return out;
}

namespace {

double forward_from_layout(const std::vector<double>& p, const EdgeMetrics& layout, double extent) {
    if (p.size() != layout.angle_deg.size()) throw DomainError("forward_fraction: probability size mismatch");
    double total = 0, forward = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (layout.excluded[i]) continue;
        total += p[i];
        if (layout.band[i] && layout.angle_deg[i] < extent) forward += p[i];
    }
    if (!(total > 0)) throw DomainError("forward_fraction: no excitation outside the source region");
    return forward / total;
}

}  // namespace

double forward_fraction(const std::vector<double>& p, const FiniteLattice& lat, int source,
                        const EdgeMetricOptions& opt) {
    return forward_from_layout(p, edge_metrics_layout(lat, source, opt), opt.forward_extent_deg);
}

double window_density(const std::vector<double>& p, const EdgeMetrics& layout, double lo, double hi) {
    double s = 0;
    int count = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (layout.band[i] && layout.angle_deg[i] >= lo && layout.angle_deg[i] < hi) {
            s += p[i];
            ++count;
        }
    }
    if (count == 0) throw DomainError("window_density: no edge atoms in the angular window");
    return s / count;
}

TransportSetup make_transport_setup(int rings, double a, double defect_radius) {
    TransportSetup setup;
    FiniteLattice lat = build_hexagon_bearded(rings, a);
    const double tol = 1e-4 * a;
    if (defect_radius > 0) {
        const std::vector<int> deg = coordination(lat);
        const double th = 210.0 * pi / 180.0;
        const Vec2 u(std::cos(th), std::sin(th)), perp(-u.y(), u.x());
        double best_proj = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < lat.size(); ++i) {
            if (deg[i] == 1) best_proj = std::max(best_proj, lat.positions[i].dot(u));
        }
        int centre = -1;
        for (int i = 0; i < lat.size(); ++i) {
            if (deg[i] != 1 || lat.positions[i].dot(u) < best_proj - tol) continue;
            // middle of the side; of two equidistant atoms take the one farther along from the source
            const double q = lat.positions[i].dot(perp);
            const double qc = centre < 0 ? 0.0 : lat.positions[centre].dot(perp);
            if (centre < 0 || std::abs(q) < std::abs(qc) - tol || (std::abs(std::abs(q) - std::abs(qc)) <= tol && q < qc)) {
                centre = i;
            }
        }
        const Vec2 c = lat.positions[centre];
        lat = carve_defect(lat, [&](const Vec2& p) { return (p - c).norm() < defect_radius + 1e-9 * a; });
    }
    const std::vector<int> deg = coordination(lat);
    double ymin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < lat.size(); ++i) {
        if (deg[i] == 1) ymin = std::min(ymin, lat.positions[i].y());
    }
    int src = -1;
    for (int i = 0; i < lat.size(); ++i) {
        if (deg[i] != 1 || lat.positions[i].y() > ymin + tol) continue;
        const Vec2& p = lat.positions[i];
        if (src < 0 || std::abs(p.x()) < std::abs(lat.positions[src].x()) - tol ||
            (std::abs(std::abs(p.x()) - std::abs(lat.positions[src].x())) <= tol && p.x() < lat.positions[src].x())) {
            src = i;
        }
    }
    setup.lattice = std::move(lat);
    setup.source = src;
    return setup;
}

TransportMetrics transport_metrics(const std::vector<double>& p, const TransportSetup& setup,
                                   const EdgeMetricOptions& opt) {
    const EdgeMetrics layout = edge_metrics_layout(setup.lattice, setup.source, opt);
    TransportMetrics m;
    m.forward = forward_from_layout(p, layout, opt.forward_extent_deg);
    auto dens = [&](const std::pair<double, double>& w) { return window_density(p, layout, w.first, w.second); };
    m.corner = dens(setup.corner_after) / dens(setup.corner_before);
    m.defect = dens(setup.defect_after) / dens(setup.defect_before);
    return m;
}

LifetimeScan edge_lifetime_scaling(const std::vector<int>& rings, const PhysicalParams& params, double gap_lo,
                                   double gap_hi) {
    if (rings.size() < 4) throw DomainError("edge_lifetime_scaling: need at least four sizes");
    if (!(gap_hi > gap_lo)) throw DomainError("edge_lifetime_scaling: empty gap window");
    LifetimeScan scan;
    std::vector<double> lx, ly;
    for (int r : rings) {
        const FiniteLattice lat = build_hexagon_bearded(r, params.a());
        const FiniteHamiltonian fh = assemble_finite_hamiltonian(lat, params, 0.0);
        const EigenSystem es = eig(fh.H);
        const std::vector<int> depth = boundary_depth(lat);
        double gsum = 0, support = 0;
        int count = 0;
        for (Eigen::Index c = 0; c < es.values.size(); ++c) {
            const double re = es.values[c].real();
            if (re <= gap_lo || re >= gap_hi) continue;
            gsum += -es.values[c].imag();
            const std::vector<double> p = excitation_probabilities(es.vectors.col(c));
            double edge = 0, total = 0;
            for (std::size_t i = 0; i < p.size(); ++i) {
                total += p[i];
                if (depth[i] <= 2) edge += p[i];
            }
            support += edge / total;
            ++count;
        }
        if (count == 0) {
            throw DomainError("edge_lifetime_scaling: no in-gap states for rings = " + std::to_string(r));
        }
        scan.rings.push_back(r);
        scan.atoms.push_back(lat.size());
        scan.in_gap_states.push_back(count);
        scan.mean_gamma.push_back(gsum / count);
        scan.edge_support.push_back(support / count);
        lx.push_back(std::log(static_cast<double>(lat.size())));
        ly.push_back(std::log(gsum / count));
    }
    scan.exponent = fit_slope(lx, ly);
    return scan;
}

}  // namespace atomtopo
