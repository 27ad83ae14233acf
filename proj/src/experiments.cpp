#include "atomtopo/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include "atomtopo/bloch_bands.hpp"
#include "atomtopo/disorder.hpp"
#include "atomtopo/dynamics.hpp"
#include "atomtopo/io.hpp"
#include "atomtopo/lattice.hpp"
#include "atomtopo/stripes.hpp"
#include "atomtopo/topology.hpp"

namespace atomtopo {

namespace fs = std::filesystem;

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names{"bands",  "chern", "gapscan",   "spacing-scan", "stripe",
                                                "evolve", "bound", "lifetimes", "fluct"};
    return names;
}

namespace {

json experiment_defaults(const std::string& e) {
    if (e == "bands") return {{"path", {"M", "G", "K"}}, {"points_per_segment", 100}};
    if (e == "chern") return {{"grid_n", 24}};
    if (e == "gapscan") return {{"mu_min", 0.0}, {"mu_max", 24.0}, {"points", 49}, {"grid_n", 24}};
    if (e == "spacing-scan") {
        return {{"spacings", {0.02, 0.025, 0.03, 0.035, 0.04, 0.045, 0.05}},
                {"grid_n", 24},
                {"field_points", 41},
                {"field_span", 0.8}};
    }
    if (e == "stripe") {
        return {{"edge", "bearded"},          {"rows", 40},          {"cols", 42},
                {"summation", "damped"},      {"images", -1},        {"block_circulant", true},
                {"eps_ladder", {0.08, 0.04, 0.02}}, {"tail_factor", 6.5}, {"gap_grid", 24}};
    }
    if (e == "evolve") {
        return {{"rings", 14},       {"defect_radius", 3.5}, {"detuning", 15.0},        {"omega", 0.2},
                {"polarization", "equal"}, {"envelope", "gaussian"}, {"t0", 1.5},          {"tau", 0.3872983346207417},
                {"t_end", 5.7},      {"dt", 0.005},          {"snapshot_times", {5.7}}, {"band_depth", 4},
                {"forward_extent_deg", 270.0}};
    }
    if (e == "bound") {
        return {{"rings", 14},   {"detuning", 10.0}, {"omega", 1.0}, {"t0", 3.0},  {"tau", 0.3},
                {"t_off", 10.0}, {"t_end", 16.0},    {"fit_from", 10.5},             {"dt", 0.005},
                {"polarizations", {"sigma_plus", "x", "sigma_minus"}}};
    }
    if (e == "lifetimes") return {{"rings", {3, 4, 5, 6, 7, 8, 10}}, {"gap", nullptr}, {"gap_grid", 24}};
    if (e == "fluct") {
        return {{"deltas", {0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3}},
                {"samples", 2000},
                {"grid_n", 24},
                {"cutoff_cells", 12.0},
                {"batches", 10}};
    }
    std::ostringstream msg;
    msg << "experiment: unknown value '" << e << "'; allowed:";
    for (const auto& n : experiment_names()) msg << ' ' << n;
    throw ConfigError(msg.str());
}

bool same_kind(const json& def, const json& v) {
    if (def.is_null()) return v.is_null() || v.is_array();
    if (def.is_boolean()) return v.is_boolean();
    if (def.is_number_integer()) return v.is_number_integer();
    if (def.is_number()) return v.is_number();
    if (def.is_string()) return v.is_string();
    if (def.is_array()) {
        if (!v.is_array()) return false;
        if (def.empty()) return true;
        return std::all_of(v.begin(), v.end(), [&](const json& x) { return same_kind(def.front(), x); });
    }
    return false;
}

void merge_into(json& target, const json& user, const std::string& where) {
    if (!user.is_object()) throw ConfigError(where + ": expected an object");
    for (auto it = user.begin(); it != user.end(); ++it) {
        const std::string name = where.empty() ? it.key() : where + "." + it.key();
        if (!target.contains(it.key())) throw ConfigError(name + ": unknown key");
        json& slot = target[it.key()];
        if (slot.is_object()) {
            merge_into(slot, it.value(), name);
        } else {
            if (!same_kind(slot, it.value())) throw ConfigError(name + ": wrong type (expected like " + slot.dump() + ")");
            slot = it.value();
        }
    }
}

void require(bool ok, const std::string& field, const std::string& what) {
    if (!ok) throw ConfigError(field + ": " + what);
}

void check_ranges(const json& c) {
    const std::string e = c["experiment"];
    const json& p = c["physical"];
    require(p["spacing"].get<double>() > 0, "physical.spacing", "must be positive");
    require(p["spacing"].get<double>() <= 0.5, "physical.spacing", "must be at most 0.5 lambda");
    require(std::isfinite(p["mu_b"].get<double>()), "physical.mu_b", "must be finite");
    require(p["lambda_nm"].get<double>() > 0, "physical.lambda_nm", "must be positive");
    require(p["gamma0_hz"].get<double>() > 0, "physical.gamma0_hz", "must be positive");
    const json& r = c["regularization"];
    require(r["a_ho_ratio"].get<double>() > 0, "regularization.a_ho_ratio", "must be positive");
    require(r["a_ho_ratio"].get<double>() * p["spacing"].get<double>() <= 0.1, "regularization.a_ho_ratio",
            "a_ho must not exceed 0.1 lambda");
    require(r["g_cutoff"].get<double>() > 0 && r["g_cutoff"].get<double>() < 1, "regularization.g_cutoff",
            "must lie in (0, 1)");
    const json& x = c[e];
    const std::string pre = e + ".";
    auto positive = [&](const char* key) { require(x[key].get<double>() > 0, pre + key, "must be positive"); };
    if (e == "bands") {
        require(x["path"].size() >= 2, pre + "path", "needs at least two points");
        for (const auto& s : x["path"]) {
            const std::string n = s;
            require(n == "G" || n == "Gamma" || n == "K" || n == "M", pre + "path", "points must be G, K or M");
        }
        require(x["points_per_segment"].get<int>() >= 1, pre + "points_per_segment", "must be >= 1");
    } else if (e == "chern") {
        require(x["grid_n"].get<int>() >= 12, pre + "grid_n", "must be >= 12");
    } else if (e == "gapscan") {
        require(x["points"].get<int>() >= 2, pre + "points", "must be >= 2");
        require(x["mu_max"].get<double>() > x["mu_min"].get<double>(), pre + "mu_max", "must exceed mu_min");
        require(x["grid_n"].get<int>() >= 12, pre + "grid_n", "must be >= 12");
    } else if (e == "spacing-scan") {
        require(x["spacings"].size() >= 2, pre + "spacings", "needs at least two values");
        for (const auto& v : x["spacings"]) {
            require(v.get<double>() > 0 && v.get<double>() <= 0.1, pre + "spacings", "values must lie in (0, 0.1]");
        }
        require(x["grid_n"].get<int>() >= 12, pre + "grid_n", "must be >= 12");
        require(x["field_points"].get<int>() >= 2, pre + "field_points", "must be >= 2");
        positive("field_span");
    } else if (e == "stripe") {
        parse_boundary(x["edge"].get<std::string>());
        require(x["edge"] != "hexagon_bearded", pre + "edge", "must be bearded, armchair or zigzag");
        require(x["rows"].get<int>() >= 4, pre + "rows", "must be >= 4");
        require(x["cols"].get<int>() >= 8, pre + "cols", "must be >= 8");
        require(x["summation"] == "damped" || x["summation"] == "truncated", pre + "summation",
                "must be damped or truncated");
        require(!x["eps_ladder"].empty(), pre + "eps_ladder", "must not be empty");
        positive("tail_factor");
        require(x["gap_grid"].get<int>() >= 12, pre + "gap_grid", "must be >= 12");
    } else if (e == "evolve" || e == "bound") {
        require(x["rings"].get<int>() >= 1, pre + "rings", "must be >= 1");
        positive("t_end");
        positive("dt");
        positive("tau");
        positive("t0");
        require(x["dt"].get<double>() <= 0.01, pre + "dt", "must be at most 0.01 / Gamma0");
        auto check_pol = [&](const std::string& s) {
            require(s == "equal" || s == "sigma_plus" || s == "sigma_minus" || s == "x", pre + "polarization",
                    "must be equal, sigma_plus, sigma_minus or x");
        };
        if (e == "evolve") {
            check_pol(x["polarization"]);
            require(x["envelope"] == "gaussian" || x["envelope"] == "sigmoid" || x["envelope"] == "constant",
                    pre + "envelope", "must be gaussian, sigmoid or constant");
            require(x["defect_radius"].get<double>() >= 0, pre + "defect_radius", "must be >= 0");
        } else {
            for (const auto& s : x["polarizations"]) check_pol(s);
            require(x["t_end"].get<double>() >= x["t_off"].get<double>() + 5.0, pre + "t_end",
                    "must extend at least 5 / Gamma0 past t_off");
            require(x["fit_from"].get<double>() >= x["t_off"].get<double>(), pre + "fit_from", "must be >= t_off");
        }
    } else if (e == "lifetimes") {
        require(x["rings"].size() >= 4, pre + "rings", "needs at least four sizes");
        require(x["gap"].is_null() || (x["gap"].size() == 2 && x["gap"][0].is_number() && x["gap"][1].is_number() &&
                                       x["gap"][1].get<double>() > x["gap"][0].get<double>()),
                pre + "gap", "must be null or [lo, hi] with hi > lo");
    } else if (e == "fluct") {
        for (const auto& v : x["deltas"]) require(v.get<double>() >= 0, pre + "deltas", "values must be >= 0");
        require(x["samples"].get<int>() >= 1, pre + "samples", "must be >= 1");
        require(x["batches"].get<int>() >= 2 && x["batches"].get<int>() <= x["samples"].get<int>(), pre + "batches",
                "must lie in [2, samples]");
        positive("cutoff_cells");
    }
}

PhysicalParams physical_from(const json& c) {
    PhysicalParams p;
    p.spacing = c["physical"]["spacing"];
    p.mu_b = c["physical"]["mu_b"];
    return p;
}

RegularizationParams regularization_from(const json& c, const PhysicalParams& p) {
    return {c["regularization"]["a_ho_ratio"].get<double>() * p.a(), c["regularization"]["g_cutoff"].get<double>()};
}

Polarization polarization_from(const std::string& s) {
    if (s == "sigma_plus") return Polarization::sigma_plus();
    if (s == "sigma_minus") return Polarization::sigma_minus();
    if (s == "x") return Polarization::linear_x();
    return Polarization::equal();
}

void log(const RunContext& ctx, const std::string& msg) {
    if (ctx.verbose) std::cerr << msg << '\n';
}

std::string time_tag(double t) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(3);
    s << t;
    return s.str();
}

RunResult run_bands(const json& c, const fs::path& out) {
    const PhysicalParams p = physical_from(c);
    const RegularizationParams reg = regularization_from(c, p);
    const LatticeGeometry g = build_geometry(p.a());
    std::vector<Vec2> pts;
    for (const auto& s : c["bands"]["path"]) pts.push_back(symmetry_point(g, s));
    const auto path = bz_path(pts, c["bands"]["points_per_segment"]);
    const auto bands = band_structure(path, p, reg);
    CsvWriter csv(out / "bands.csv",
                  {"k_index", "kx", "ky", "arc_len", "band", "re_E", "gamma", "in_light_cone", "branch"});
    for (std::size_t i = 0; i < bands.size(); ++i) {
        for (int b = 0; b < 4; ++b) {
            csv.row(i, bands[i].k.x(), bands[i].k.y(), bands[i].arc, b, bands[i].E[b].real(), -bands[i].E[b].imag(),
                    bands[i].in_light_cone ? 1 : 0, bands[i].branch[b]);
        }
    }
    double lower = -1e300, upper = 1e300;
    for (const auto& bp : bands) {
        lower = std::max(lower, bp.E[1].real());
        upper = std::min(upper, bp.E[2].real());
    }
    return {{{"path_gap", upper - lower}, {"points", bands.size()}}, {"bands.csv"}};
}

RunResult run_chern(const json& c, const fs::path& out) {
    const PhysicalParams p = physical_from(c);
    const int n = c["chern"]["grid_n"];
    const ChernReport r = chern_numbers(p, regularization_from(c, p), n);
    CsvWriter csv(out / "berry_flux.csv", {"i", "j", "flux_below", "flux_above"});
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) csv.row(i, j, r.flux_below[i * n + j], r.flux_above[i * n + j]);
    }
    json m = {{"sum_below", r.sum_below}, {"sum_above", r.sum_above},       {"raw_below", r.raw_below},
              {"raw_above", r.raw_above}, {"max_residual", r.max_residual}, {"delta", r.delta},
              {"individual_valid", r.individual_valid}};
    if (r.individual_valid) m["chern"] = r.chern;
    return {m, {"berry_flux.csv"}};
}

RunResult run_gapscan(const json& c, const fs::path& out) {
    const PhysicalParams p = physical_from(c);
    const json& x = c["gapscan"];
    const int n = x["points"];
    std::vector<double> mu(n);
    for (int i = 0; i < n; ++i) {
        mu[i] = x["mu_min"].get<double>() + (x["mu_max"].get<double>() - x["mu_min"].get<double>()) * i / (n - 1);
    }
    const FieldScan s = gap_vs_field(p, regularization_from(c, p), mu, x["grid_n"]);
    CsvWriter csv(out / "gapscan.csv", {"mu_b", "delta"});
    for (int i = 0; i < n; ++i) csv.row(s.mu_b[i], s.delta[i]);
    return {{{"delta_max", s.delta_max}, {"mu_at_max", s.mu_at_max}}, {"gapscan.csv"}};
}

RunResult run_spacing(const json& c, const fs::path& out) {
    const json& x = c["spacing-scan"];
    const SpacingScan s = gap_scaling_vs_spacing(x["spacings"].get<std::vector<double>>(), x["grid_n"],
                                                 x["field_points"], x["field_span"],
                                                 c["regularization"]["a_ho_ratio"]);
    CsvWriter csv(out / "spacing_scan.csv", {"a", "delta_max", "J"});
    for (std::size_t i = 0; i < s.a.size(); ++i) csv.row(s.a[i], s.delta_max[i], s.J[i]);
    return {{{"slope_delta", s.slope_delta}, {"slope_J", s.slope_J}}, {"spacing_scan.csv"}};
}

RunResult run_stripe(const json& c, const fs::path& out, const RunContext& ctx) {
    const PhysicalParams p = physical_from(c);
    const json& x = c["stripe"];
    const FiniteLattice lat = build_stripe(parse_boundary(x["edge"]), x["rows"], x["cols"], x["images"], p.a());
    StripeOptions opt;
    opt.summation = x["summation"] == "truncated" ? StripeOptions::Summation::truncated
                                                   : StripeOptions::Summation::damped;
    opt.eps_ladder = x["eps_ladder"].get<std::vector<double>>();
    opt.tail_factor = x["tail_factor"];
    opt.block_circulant = x["block_circulant"];
    opt.gap_grid = x["gap_grid"];
    log(ctx, "stripe: " + std::to_string(lat.size()) + " atoms");
    const StripeSpectrum spec = stripe_spectrum(lat, p, opt);
    CsvWriter csv(out / "stripe.csv",
                  {"m", "k_period_over_pi", "re_E", "gamma", "classification", "ratio", "in_gap", "on_light_line"});
    for (const auto& md : spec.modes) {
        csv.row(md.m, md.k * spec.period / pi, md.E.real(), md.gamma, to_string(md.side), md.ratio, md.in_gap ? 1 : 0,
                md.on_light_line ? 1 : 0);
    }
    json m = {{"gap_lo", spec.gap_lo}, {"gap_hi", spec.gap_hi}, {"period", spec.period}, {"cells", spec.cells}};
    for (EdgeSide side : {EdgeSide::top, EdgeSide::bottom}) {
        const EdgeBranchReport r = analyze_edge_branches(spec, side);
        json e = {{"probes", r.probes}, {"crossings", r.crossings}, {"velocities", r.branch_velocities}};
        std::vector<double> va;
        for (double v : r.branch_velocities) va.push_back(v / p.a());
        e["velocities_gamma0_a"] = va;
        m[to_string(side)] = e;
    }
    return {m, {"stripe.csv"}};
}

void write_lattice(const fs::path& path, const FiniteLattice& lat) {
    std::ofstream os(path, std::ios::binary);
    write_lattice_csv(os, lat);
}

RunResult run_evolve(const json& c, const fs::path& out, const RunContext& ctx) {
    const PhysicalParams p = physical_from(c);
    const json& x = c["evolve"];
    const TransportSetup setup = make_transport_setup(x["rings"], p.a(), x["defect_radius"].get<double>() * p.a());
    log(ctx, "evolve: " + std::to_string(setup.lattice.size()) + " atoms, source " + std::to_string(setup.source));
    const FiniteHamiltonian fh = assemble_finite_hamiltonian(setup.lattice, p, x["detuning"]);
    DriveProtocol d;
    d.target = setup.source;
    d.omega = x["omega"];
    d.polarization = polarization_from(x["polarization"]);
    d.envelope = x["envelope"] == "sigmoid" ? Envelope::sigmoid
                 : x["envelope"] == "constant" ? Envelope::constant
                                               : Envelope::gaussian;
    d.t0 = x["t0"];
    d.tau = x["tau"];
    EvolveOptions eo;
    eo.dt = x["dt"];
    eo.snapshot_times = x["snapshot_times"].get<std::vector<double>>();
    const Trajectory tr = evolve(fh.H, d, x["t_end"], eo);

    RunResult res;
    write_lattice(out / "lattice.csv", setup.lattice);
    res.artifacts.push_back("lattice.csv");
    EdgeMetricOptions mo;
    mo.band_depth = x["band_depth"];
    mo.forward_extent_deg = x["forward_extent_deg"];
    mo.clockwise = p.mu_b >= 0;
    json frames = json::array();
    for (std::size_t s = 0; s < tr.snapshots.size(); ++s) {
        const std::vector<double> prob = excitation_probabilities(tr.snapshots[s]);
        const std::string name = "snapshot_t" + time_tag(tr.snapshot_times[s]) + ".csv";
        CsvWriter csv(out / name, {"index", "x", "y", "p"});
        for (int i = 0; i < setup.lattice.size(); ++i) {
            csv.row(i, setup.lattice.positions[i].x(), setup.lattice.positions[i].y(), prob[i]);
        }
        res.artifacts.push_back(name);
        json f = {{"t", tr.snapshot_times[s]}};
        const TransportMetrics tm = transport_metrics(prob, setup, mo);
        f["forward_fraction"] = tm.forward;
        if (x["defect_radius"].get<double>() > 0) {
            f["corner_eff"] = tm.corner;
            f["defect_survival"] = tm.defect;
        }
        frames.push_back(f);
    }
    CsvWriter norms(out / "norm.csv", {"t", "norm"});
    for (std::size_t i = 0; i < tr.times.size(); i += 20) norms.row(tr.times[i], tr.norms[i]);
    res.artifacts.push_back("norm.csv");
    res.metrics = {{"atoms", setup.lattice.size()}, {"source", setup.source}, {"frames", frames}};
    if (!frames.empty()) {
        for (const char* key : {"forward_fraction", "corner_eff", "defect_survival"}) {
            if (frames.back().contains(key)) res.metrics[key] = frames.back()[key];
        }
    }
    return res;
}

RunResult run_bound(const json& c, const fs::path& out, const RunContext& ctx) {
    const PhysicalParams p = physical_from(c);
    const json& x = c["bound"];
    const FiniteLattice lat = build_hexagon_bearded(x["rings"], p.a());
    int centre = 0;
    for (int i = 1; i < lat.size(); ++i) {
        if (lat.positions[i].norm() < lat.positions[centre].norm()) centre = i;
    }
    log(ctx, "bound: " + std::to_string(lat.size()) + " atoms, centre " + std::to_string(centre));
    const FiniteHamiltonian fh = assemble_finite_hamiltonian(lat, p, x["detuning"]);
    std::vector<DriveProtocol> drives;
    const std::vector<std::string> pols = x["polarizations"];
    for (const auto& s : pols) {
        DriveProtocol d;
        d.target = centre;
        d.omega = x["omega"];
        d.polarization = polarization_from(s);
        d.envelope = Envelope::sigmoid;
        d.t0 = x["t0"];
        d.tau = x["tau"];
        d.t_off = x["t_off"].get<double>();
        drives.push_back(d);
    }
    EvolveOptions eo;
    eo.dt = x["dt"];
    eo.snapshot_times = {x["t_off"].get<double>()};
    const auto trs = evolve(fh.H, drives, x["t_end"], eo);
    CsvWriter csv(out / "bound_norm.csv", {"polarization", "t", "norm"});
    json m = {{"atoms", lat.size()}, {"centre", centre}};
    for (std::size_t q = 0; q < pols.size(); ++q) {
        for (std::size_t i = 0; i < trs[q].times.size(); i += 20) csv.row(pols[q], trs[q].times[i], trs[q].norms[i]);
        const double g_fit = fit_decay_rate(trs[q], x["fit_from"], x["t_end"]);
        const double g_inst = instantaneous_decay_rate(fh.H, trs[q].snapshots.front());
        m[pols[q]] = {{"gamma_fit", g_fit}, {"gamma_at_switch_off", g_inst}};
    }
    return {m, {"bound_norm.csv"}};
}

RunResult run_lifetimes(const json& c, const fs::path& out) {
    const PhysicalParams p = physical_from(c);
    const json& x = c["lifetimes"];
    double lo, hi;
    if (x["gap"].is_null()) {
        const GapReport g = band_gap(p, regularization_from(c, p), x["gap_grid"]);
        if (g.closed) throw DomainError("lifetimes: the bulk gap is closed at these parameters");
        lo = g.lower_max;
        hi = g.upper_min;
    } else {
        lo = x["gap"][0];
        hi = x["gap"][1];
    }
    const LifetimeScan s = edge_lifetime_scaling(x["rings"].get<std::vector<int>>(), p, lo, hi);
    CsvWriter csv(out / "lifetimes.csv", {"rings", "N", "in_gap_states", "mean_gamma", "edge_support"});
    for (std::size_t i = 0; i < s.rings.size(); ++i) {
        csv.row(s.rings[i], s.atoms[i], s.in_gap_states[i], s.mean_gamma[i], s.edge_support[i]);
    }
    return {{{"exponent", s.exponent}, {"gap_lo", lo}, {"gap_hi", hi}}, {"lifetimes.csv"}};
}

RunResult run_fluct(const json& c, const fs::path& out) {
    const PhysicalParams p = physical_from(c);
    const json& x = c["fluct"];
    FluctuationParams f;
    f.samples = x["samples"];
    f.seed = c["seed"].get<std::uint64_t>();
    const FluctuationCurve curve =
        gap_vs_fluctuation(x["deltas"].get<std::vector<double>>(), p, f, x["grid_n"], x["cutoff_cells"], x["batches"]);
    CsvWriter csv(out / "fluct.csv", {"delta_over_a", "gap", "stderr", "rejection"});
    for (std::size_t i = 0; i < curve.delta.size(); ++i) {
        csv.row(curve.delta[i], curve.gap[i], curve.stderr_[i], curve.rejection[i]);
    }
    return {{{"gap", curve.gap}, {"stderr", curve.stderr_}}, {"fluct.csv"}};
}

}  // namespace

json default_config(const std::string& experiment) {
    json c;
    c["experiment"] = experiment;
    c["seed"] = 1;
    c["physical"] = {{"spacing", 0.05}, {"mu_b", 12.0}, {"lambda_nm", 790.0}, {"gamma0_hz", 2.0 * pi * 6.0e6}};
    c["regularization"] = {{"a_ho_ratio", 0.05}, {"g_cutoff", 1e-12}};
    c[experiment] = experiment_defaults(experiment);
    return c;
}

json effective_config(const json& user) {
    if (!user.is_object()) throw ConfigError("config: top level must be a JSON object");
    if (!user.contains("experiment")) throw ConfigError("experiment: missing");
    if (!user["experiment"].is_string()) throw ConfigError("experiment: must be a string");
    json c = default_config(user["experiment"].get<std::string>());
    merge_into(c, user, "");
    if (c["seed"].get<long long>() < 0) throw ConfigError("seed: must be non-negative");
    try {
        check_ranges(c);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    return c;
}

RunResult run_experiment(const json& c, const fs::path& out, const RunContext& ctx) {
    const std::string e = c["experiment"];
    if (e == "bands") return run_bands(c, out);
    if (e == "chern") return run_chern(c, out);
    if (e == "gapscan") return run_gapscan(c, out);
    if (e == "spacing-scan") return run_spacing(c, out);
    if (e == "stripe") return run_stripe(c, out, ctx);
    if (e == "evolve") return run_evolve(c, out, ctx);
    if (e == "bound") return run_bound(c, out, ctx);
    if (e == "lifetimes") return run_lifetimes(c, out);
    if (e == "fluct") return run_fluct(c, out);
    throw ConfigError("experiment: unknown value '" + e + "'");
}

}  // namespace atomtopo
