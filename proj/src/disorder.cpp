#include "atomtopo/disorder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "atomtopo/bloch_bands.hpp"
#include "atomtopo/lattice.hpp"
#include "atomtopo/linalg.hpp"

namespace atomtopo {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// One independent stream per (seed, sample) pair.
class SampleStream {
public:
    using result_type = std::uint64_t;
    SampleStream(std::uint64_t seed, std::uint64_t sample) {
        std::uint64_t s = seed;
        state_ = splitmix64(s) ^ (sample * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
    }
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return splitmix64(state_); }

private:
    std::uint64_t state_;
};

constexpr double kMinSeparation = 0.01;  // in lambda

// Visits sample s with the accepted relative displacement u_i - u_j.
// Returns the number of rejected draws.
template <class F>
int sample_pairs(const Vec2& r, double delta, double lambda_, const FluctuationParams& f, F&& visit) {
    int rejected = 0;
    for (int s = 0; s < f.samples; ++s) {
        SampleStream rng(f.seed, static_cast<std::uint64_t>(s));
        std::normal_distribution<double> normal(0.0, 1.0);
        for (;;) {
            const Vec2 ui(normal(rng), normal(rng)), uj(normal(rng), normal(rng));
            const Vec2 d = r + delta * (ui - uj);
            if (d.norm() >= kMinSeparation * lambda_) {
                visit(s, d);
                break;
            }
            if (++rejected > f.samples) {
                throw ConvergenceError("averaged_greens: more than half of the draws collide; reduce delta_a");
            }
        }
    }
    return rejected;
}

}  // namespace

void FluctuationParams::validate() const {
    if (!(delta_a >= 0) || !std::isfinite(delta_a)) throw DomainError("FluctuationParams: delta_a must be >= 0");
    if (samples < 1) throw DomainError("FluctuationParams: samples must be >= 1");
}

AveragedGreens averaged_greens(const Vec2& r, double k, double a, const FluctuationParams& f) {
    f.validate();
    const double delta = f.delta_a * a;
    if (!(r.norm() >= 4.0 * delta)) throw DomainError("averaged_greens: |r| must be at least 4 delta_a");
    const double lambda_ = 2.0 * pi / k;
    AveragedGreens out;
    if (delta == 0.0) {
        out.mean = greens_free_space(Vec3(r.x(), r.y(), 0.0), k);
        out.stderr_.setZero();
        out.accepted = f.samples;
        return out;
    }
    Mat3c sum = Mat3c::Zero();
    Eigen::Matrix3d sq = Eigen::Matrix3d::Zero();
    out.rejected = sample_pairs(r, delta, lambda_, f, [&](int, const Vec2& d) {
        const Mat3c g = greens_free_space(Vec3(d.x(), d.y(), 0.0), k);
        sum += g;
        sq += g.cwiseAbs2();
    });
    out.accepted = f.samples;
    const double n = f.samples;
    out.mean = sum / n;
    const Eigen::Matrix3d var = (sq / n - out.mean.cwiseAbs2()).cwiseMax(0.0);
    out.stderr_ = (n > 1 ? (var * n / (n - 1)).cwiseSqrt() / std::sqrt(n) : Eigen::Matrix3d::Zero().eval());
    if (out.rejected > out.accepted) throw ConvergenceError("averaged_greens: rejection rate above 50%");
    return out;
}

FluctuationCurve gap_vs_fluctuation(const std::vector<double>& delta_grid, const PhysicalParams& params,
                                    const FluctuationParams& f, int grid_n, double cutoff_cells, int batches) {
    params.validate();
    f.validate();
    if (delta_grid.empty()) throw DomainError("gap_vs_fluctuation: empty delta grid");
    if (batches < 2 || batches > f.samples) throw DomainError("gap_vs_fluctuation: need 2 <= batches <= samples");
    const double a = params.a(), k = params.k();
    const LatticeGeometry geom = build_geometry(a);
    const InteractionGrid bare(params, RegularizationParams::for_spacing(a), grid_n);
    const double pref = interaction_prefactor(k);

    // Pair tables: lattice vector R and the offset of the coupled site.
    struct Pair {
        Vec2 R, d;
        int block;  // 0: (1,1) and (2,2), 1: (1,2), 2: (2,1)
    };
    std::vector<Pair> pairs;
    const double rc = cutoff_cells * a;
    const int L = static_cast<int>(cutoff_cells) + 2;
    const Vec2 offsets[3] = {Vec2::Zero(), geom.b, -geom.b};
    for (int i = -L; i <= L; ++i) {
        for (int j = -L; j <= L; ++j) {
            const Vec2 R = i * geom.a1 + j * geom.a2;
            if (R.norm() >= rc) continue;
            for (int o = 0; o < 3; ++o) {
                const Vec2 d = R + offsets[o];
                if (d.norm() > 1e-9 * a) pairs.push_back({R, d, o});
            }
        }
    }

    FluctuationCurve curve;
    curve.samples = f.samples;
    curve.grid_n = grid_n;
    for (double da : delta_grid) {
        FluctuationParams fd = f;
        fd.delta_a = da;
        fd.validate();
        const double delta = da * a;
        // Per pair: batch sums of (<G> - G) and the rejection count.
        std::vector<std::vector<Mat2c>> batch_sum(pairs.size(), std::vector<Mat2c>(batches, Mat2c::Zero()));
        std::vector<int> rejected(pairs.size(), 0);
        const int per_batch = (f.samples + batches - 1) / batches;
        std::vector<int> batch_count(batches, 0);
        for (int s = 0; s < f.samples; ++s) ++batch_count[s / per_batch];
        parallel_for(static_cast<int>(pairs.size()), [&](int p) {
            const Mat2c g0 = greens_in_plane(pairs[p].d, k);
            if (delta == 0.0) return;
            rejected[p] = sample_pairs(pairs[p].d, delta, params.lambda_, fd, [&](int s, const Vec2& d) {
                batch_sum[p][s / per_batch] += greens_in_plane(d, k) - g0;
            });
        });

        auto gap_for = [&](const std::vector<int>& use) {
            InteractionGrid grid = bare;
            int total = 0;
            for (int b : use) total += batch_count[b];
            std::vector<Mat2c> avg(pairs.size(), Mat2c::Zero());
            for (std::size_t p = 0; p < pairs.size(); ++p) {
                for (int b : use) avg[p] += batch_sum[p][b];
                avg[p] *= pref / total;
            }
            for (int i = 0; i < grid_n; ++i) {
                for (int j = 0; j < grid_n; ++j) {
                    const Vec2 kb = grid.k_at(i, j);
                    Mat4c corr = Mat4c::Zero();
                    for (std::size_t p = 0; p < pairs.size(); ++p) {
                        const Mat2c c = avg[p] * std::exp(I * kb.dot(pairs[p].R));
                        if (pairs[p].block == 0) {
                            corr.block<2, 2>(0, 0) += c;
                            corr.block<2, 2>(2, 2) += c;
                        } else if (pairs[p].block == 1) {
                            corr.block<2, 2>(0, 2) += c;
                        } else {
                            corr.block<2, 2>(2, 0) += c;
                        }
                    }
                    grid.add(i, j, corr);
                }
            }
            return grid.gap(params.mu_b).delta;
        };
        std::vector<int> all(batches);
        for (int b = 0; b < batches; ++b) all[b] = b;
        const double g = gap_for(all);
        double se = 0;
        if (delta > 0) {
            std::vector<double> gb;
            for (int b = 0; b < batches; ++b) gb.push_back(gap_for({b}));
            double mean = 0;
            for (double x : gb) mean += x;
            mean /= batches;
            double var = 0;
            for (double x : gb) var += (x - mean) * (x - mean);
            se = std::sqrt(var / (batches - 1) / batches);
        }
        int worst = 0;
        for (int r : rejected) worst = std::max(worst, r);
        curve.delta.push_back(da);
        curve.gap.push_back(g);
        curve.stderr_.push_back(se);
        curve.rejection.push_back(static_cast<double>(worst) / (worst + f.samples));
    }
    return curve;
}

}  // namespace atomtopo
