// heislat: deterministic Monte Carlo experiments on the space of Heisenberg
// lattice deformations. Region specs in JSON, experiment reports out.
//
// Exit codes: 0 all verdicts pass, 1 some verdict failed, 2 usage/config error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "heislat/heislat.hpp"

namespace {

using namespace heislat;
using nlohmann::json;

struct OutputOptions {
    std::string out_path;
    std::string format = "json";
};

void add_output_flags(CLI::App* cmd, OutputOptions& out) {
    cmd->add_option("--out", out.out_path, "write the report to this path instead of stdout");
    cmd->add_option("--format", out.format, "report format")
        ->check(CLI::IsMember({"json", "csv"}));
}

void emit(const ExperimentReport& report, const OutputOptions& out) {
    std::string text;
    if (out.format == "csv")
        text = report_to_csv(report);
    else
        text = report_to_json(report).dump(2) + "\n";
    if (out.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out.out_path);
        if (!f) throw std::runtime_error("cannot open output path: " + out.out_path);
        f << text;
    }
}

int report_exit(const ExperimentReport& report) { return report.passed() ? 0 : 1; }

/// --region accepts inline JSON or a path to a JSON file.
Region2 parse_region(const std::string& spec) {
    if (!spec.empty() && spec.front() == '{') return region_from_json(json::parse(spec));
    std::ifstream f(spec);
    if (!f) throw std::invalid_argument("cannot open region file: " + spec);
    json j;
    f >> j;
    return region_from_json(j);
}

Vec2i parse_ivec(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("expected 'a,b' integer pair, got: " + s);
    return {std::stoll(s.substr(0, comma)), std::stoll(s.substr(comma + 1))};
}

Region2 default_highdisc_base(double area) {
    const double r_in = 0.78;
    const double r_out = std::sqrt(r_in * r_in + area / std::numbers::pi);
    return make_annulus({0.5, 0.5}, r_in, r_out);
}

Region2 small_flat_base(double area) {
    return make_disk({0.5, 0.5}, std::sqrt(area / std::numbers::pi));
}

ExperimentReport high_disc_report(std::uint64_t seed, long long trials, int threads,
                                  double thicken, double ball_radius) {
    ExperimentReport r;
    r.name = "high-discrepancy";
    r.seed = seed;
    r.trials = trials;
    r.params = {{"thicken", thicken}, {"R", ball_radius}};

    const auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig cfg;
    cfg.trials = trials;
    cfg.threads = threads;

    // Dyadic stacks over an m(A)=4 base: paired miss inequality.
    const Region2 dyadic_base = default_highdisc_base(4.0);
    std::vector<double> min_defects;
    for (const int k : {4, 8, 16}) {
        const CylinderStack s = build_high_disc_set(ball_radius, thicken, k, dyadic_base);
        cfg.seed = mix_seed(seed, 100 + static_cast<std::uint64_t>(k));
        const ExperimentReport sub =
            miss_probability(cfg, s, "dyadic-k" + std::to_string(k));
        const std::string tag = "dyadic_k" + std::to_string(k);
        for (const auto& e : sub.estimates) r.add_estimate(tag + "." + e.label, e.value, e.se);
        r.add_verdict(tag + ".miss_inequality", sub.passed(),
                      "mu_H(miss) >= mu_E(projection miss) - 2 combined se");
        const CylinderSearchResult search = best_cylinder_search(s);
        min_defects.push_back(search.defect);
        r.add_estimate(tag + ".min_cylinder_defect", search.defect, 0.0);
        r.add_estimate(tag + ".measure3", measure3(s), 0.0);
        r.add_estimate(tag + ".measure3_k_times_base", k * measure2(dyadic_base), 0.0);
        if (k == 16) {
            const double bound = std::pow(measure3(s), 0.9);
            r.add_target(tag + ".min_cylinder_defect", bound, /*is_bound=*/false);
            r.add_verdict(tag + ".defect_lower_bound", search.defect >= bound,
                          "min defect >= m(S)^0.9");
        }
    }
    r.add_verdict("defect_grows_with_k",
                  min_defects.size() == 3 && min_defects[0] < min_defects[1] &&
                      min_defects[1] < min_defects[2],
                  "minimum defect increases over k in {4,8,16}");

    // Free-height stacks over a small base: miss rate stays above 1/2 while
    // measure3 climbs from 10 to 10^3.
    const Region2 small_base = small_flat_base(0.4);
    const double small_area = measure2(small_base);
    const int ks[] = {4, 8, 16};
    const double volumes[] = {10.0, 100.0, 1000.0};
    for (int i = 0; i < 3; ++i) {
        const CylinderStack s = build_tall_stack(small_base, ks[i], volumes[i] / small_area);
        cfg.seed = mix_seed(seed, 200 + static_cast<std::uint64_t>(i));
        const ExperimentReport sub =
            miss_probability(cfg, s, "tall-k" + std::to_string(ks[i]));
        const std::string tag = "tall_m3_" + std::to_string(static_cast<int>(volumes[i]));
        double miss_h = 0;
        for (const auto& e : sub.estimates) {
            r.add_estimate(tag + "." + e.label, e.value, e.se);
            if (e.label == "miss_heisenberg") miss_h = e.value;
        }
        r.add_verdict(tag + ".miss_inequality", sub.passed(), "paired inequality");
        r.add_verdict(tag + ".miss_at_least_half", miss_h >= 0.5, "miss rate stays >= 0.5");
    }

    // Punctured tubes: miss rate pinned near 1 however tall the tube gets.
    for (const double m3 : {10.0, 1000.0}) {
        const double n = m3 / (2 * std::numbers::pi * thicken * thicken);
        const CylinderStack tube = build_tube(thicken, n);
        cfg.seed = mix_seed(seed, 300 + static_cast<std::uint64_t>(m3));
        const ExperimentReport sub = miss_probability(cfg, tube, "tube");
        const std::string tag = "tube_m3_" + std::to_string(static_cast<int>(m3));
        double miss_h = 0;
        for (const auto& e : sub.estimates) {
            r.add_estimate(tag + "." + e.label, e.value, e.se);
            if (e.label == "miss_heisenberg") miss_h = e.value;
        }
        r.add_verdict(tag + ".miss_inequality", sub.passed(), "paired inequality");
        r.add_verdict(tag + ".miss_at_least_09", miss_h >= 0.9, "tube miss rate stays >= 0.9");
    }

    r.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Heisenberg lattice point statistics"};
    app.require_subcommand(1);

    // --- sample ---------------------------------------------------------
    auto* sample_cmd = app.add_subcommand("sample", "draw Haar samples from a lattice space");
    std::string sample_space = "heisenberg";
    long long sample_count = 10;
    std::uint64_t sample_seed = 0;
    OutputOptions sample_out;
    sample_cmd->add_option("--space", sample_space)
        ->check(CLI::IsMember({"euclidean", "heisenberg"}));
    sample_cmd->add_option("--count", sample_count)->check(CLI::PositiveNumber);
    sample_cmd->add_option("--seed", sample_seed)->required();
    add_output_flags(sample_cmd, sample_out);
    sample_cmd->callback([&] {
        json out = json::array();
        for (long long i = 0; i < sample_count; ++i) {
            Rng rng(mix_seed(sample_seed, static_cast<std::uint64_t>(i)));
            if (sample_space == "euclidean") {
                const Lattice2 g = sample_euclidean(rng);
                out.push_back({{"basis", {{g.basis.a11, g.basis.a12},
                                          {g.basis.a21, g.basis.a22}}}});
            } else {
                const HeisLattice lat = sample_heisenberg(rng);
                const Vec2 u = fiber_coords(lat);
                out.push_back({{"basis", {{lat.base.basis.a11, lat.base.basis.a12},
                                          {lat.base.basis.a21, lat.base.basis.a22}}},
                               {"offset", {lat.offset.x, lat.offset.y}},
                               {"fiber", {u.x, u.y}}});
            }
        }
        if (sample_out.out_path.empty()) {
            std::cout << out.dump(2) << "\n";
        } else {
            std::ofstream f(sample_out.out_path);
            f << out.dump(2) << "\n";
        }
    });

    // --- shared experiment options ---------------------------------------
    struct ExpFlags {
        std::string region;
        double eps = 0.5;
        double z = 0.0;
        long long trials = 100'000;
        std::uint64_t seed = 0;
        int threads = 0;
        OutputOptions out;
    };
    const auto add_experiment_flags = [](CLI::App* cmd, ExpFlags& f, bool with_region = true,
                                         bool with_plate = true) {
        if (with_region)
            cmd->add_option("--region", f.region, "region JSON (inline or file path)")->required();
        if (with_plate) {
            cmd->add_option("--eps", f.eps, "plate height (0 < eps < 1)");
            cmd->add_option("--z", f.z, "plate level");
        }
        cmd->add_option("--trials", f.trials)->check(CLI::PositiveNumber);
        cmd->add_option("--seed", f.seed)->required();
        cmd->add_option("--threads", f.threads, "worker cap (0 = hardware)");
        add_output_flags(cmd, f.out);
    };
    const auto to_config = [](const ExpFlags& f, bool with_region) {
        ExperimentConfig cfg;
        if (with_region) cfg.region = parse_region(f.region);
        cfg.eps = f.eps;
        cfg.z = f.z;
        cfg.trials = f.trials;
        cfg.seed = f.seed;
        cfg.threads = f.threads;
        return cfg;
    };

    int exit_code = 0;

    // --- mean -------------------------------------------------------------
    auto* mean_cmd = app.add_subcommand("mean", "Monte Carlo Siegel mean");
    ExpFlags mean_flags;
    std::string mean_space = "heisenberg";
    mean_cmd->add_option("--space", mean_space)
        ->check(CLI::IsMember({"euclidean", "heisenberg"}));
    add_experiment_flags(mean_cmd, mean_flags);
    mean_cmd->callback([&] {
        const ExperimentConfig cfg = to_config(mean_flags, true);
        const ExperimentReport rep = mean_space == "euclidean" ? siegel_mean_euclidean(cfg)
                                                               : siegel_mean_heisenberg(cfg);
        emit(rep, mean_flags.out);
        exit_code = report_exit(rep);
    });

    // --- var-identity -------------------------------------------------------
    auto* vi_cmd = app.add_subcommand("var-identity", "raw variance identity at z = 0");
    ExpFlags vi_flags;
    add_experiment_flags(vi_cmd, vi_flags);
    vi_cmd->callback([&] {
        const ExperimentReport rep = variance_identity_check(to_config(vi_flags, true));
        emit(rep, vi_flags.out);
        exit_code = report_exit(rep);
    });

    // --- var-bound ----------------------------------------------------------
    auto* vb_cmd = app.add_subcommand("var-bound", "variance bounds");
    ExpFlags vb_flags;
    std::string vb_space = "heisenberg";
    vb_cmd->add_option("--space", vb_space)->check(CLI::IsMember({"euclidean", "heisenberg"}));
    add_experiment_flags(vb_cmd, vb_flags);
    vb_cmd->callback([&] {
        const ExperimentConfig cfg = to_config(vb_flags, true);
        const ExperimentReport rep =
            vb_space == "euclidean" ? euclidean_variance_check(cfg) : variance_bound_check(cfg);
        emit(rep, vb_flags.out);
        exit_code = report_exit(rep);
    });

    // --- tail ----------------------------------------------------------------
    auto* tail_cmd = app.add_subcommand("tail", "Chebyshev tail probabilities for a plate");
    ExpFlags tail_flags;
    std::vector<double> tail_r{2, 4, 8};
    tail_cmd->add_option("--r", tail_r, "deviation multipliers");
    add_experiment_flags(tail_cmd, tail_flags);
    tail_cmd->callback([&] {
        ExperimentConfig cfg = to_config(tail_flags, true);
        cfg.r_values = tail_r;
        const ExperimentReport rep = chebyshev_tail(cfg);
        emit(rep, tail_flags.out);
        exit_code = report_exit(rep);
    });

    // --- cor -------------------------------------------------------------------
    auto* cor_cmd = app.add_subcommand("cor", "pair correlation, exact and numeric");
    std::string cor_m = "1,0", cor_n = "0,1";
    double cor_eps = 0.25, cor_z = 0.0;
    bool cor_numeric_flag = false;
    long long cor_samples = 1'000'000;
    std::uint64_t cor_seed = 1;
    OutputOptions cor_out;
    cor_cmd->add_option("--m", cor_m)->required();
    cor_cmd->add_option("--n", cor_n)->required();
    cor_cmd->add_option("--eps", cor_eps);
    cor_cmd->add_option("--z", cor_z);
    cor_cmd->add_flag("--numeric", cor_numeric_flag, "also run the quasi-Monte Carlo oracle");
    cor_cmd->add_option("--samples", cor_samples);
    cor_cmd->add_option("--seed", cor_seed);
    add_output_flags(cor_cmd, cor_out);
    cor_cmd->callback([&] {
        const Vec2i m = parse_ivec(cor_m), n = parse_ivec(cor_n);
        ExperimentReport rep;
        rep.name = "correlation";
        rep.seed = cor_seed;
        rep.params = {{"m", {m.x, m.y}}, {"n", {n.x, n.y}}, {"eps", cor_eps}, {"z", cor_z}};
        const double exact = cor_exact(m, n, cor_eps, cor_z);
        rep.add_estimate("cor_exact", exact, 0.0);
        if (cor_numeric_flag) {
            const CorEstimate num = cor_numeric(m, n, cor_eps, cor_z, cor_samples, cor_seed);
            rep.trials = num.samples;
            rep.add_estimate("cor_numeric", num.value, num.se);
            rep.add_target("cor_numeric", exact);
            if (cor_z == 0.0) {
                rep.add_verdict("cor_numeric", std::abs(num.value - exact) <= 3 * num.se,
                                "|exact - numeric| <= 3 se at z = 0");
            }
        }
        emit(rep, cor_out);
        exit_code = report_exit(rep);
    });

    // --- orbit --------------------------------------------------------------------
    auto* orbit_cmd = app.add_subcommand("orbit", "canonical orbit class of a primitive pair");
    std::string orbit_m = "1,0", orbit_n = "0,1";
    OutputOptions orbit_out;
    orbit_cmd->add_option("--m", orbit_m)->required();
    orbit_cmd->add_option("--n", orbit_n)->required();
    add_output_flags(orbit_cmd, orbit_out);
    orbit_cmd->callback([&] {
        const PrimPair p(parse_ivec(orbit_m), parse_ivec(orbit_n));
        const OrbitClass cls = canonicalize(p);
        ExperimentReport rep;
        rep.name = "orbit";
        rep.params = {{"m", {p.m.x, p.m.y}},
                      {"n", {p.n.x, p.n.y}},
                      {"D", cls.D},
                      {"rep", {{cls.rep.m.x, cls.rep.m.y}, {cls.rep.n.x, cls.rep.n.y}}},
                      {"sign_tag", cls.sign_tag}};
        emit(rep, orbit_out);
    });

    // --- orbit-count -------------------------------------------------------------
    auto* oc_cmd = app.add_subcommand("orbit-count", "brute-force orbit count for a determinant");
    long long oc_det = 5, oc_height = 60;
    OutputOptions oc_out;
    oc_cmd->add_option("--det", oc_det)->required();
    oc_cmd->add_option("--height", oc_height);
    add_output_flags(oc_cmd, oc_out);
    oc_cmd->callback([&] {
        const OrbitCount oc = orbit_count_bruteforce(oc_det, oc_height);
        ExperimentReport rep;
        rep.name = "orbit-count";
        rep.params = {{"D", oc.D}, {"height", oc_height}, {"residues", oc.residues}};
        rep.add_estimate("count", oc.count, 0.0);
        emit(rep, oc_out);
    });

    // --- highdisc -----------------------------------------------------------------
    auto* hd_cmd = app.add_subcommand("highdisc", "high-discrepancy set experiments");
    long long hd_trials = 100'000;
    std::uint64_t hd_seed = 0;
    int hd_threads = 0;
    double hd_thicken = 0.05, hd_radius = 8.0;
    OutputOptions hd_out;
    hd_cmd->add_option("--trials", hd_trials)->check(CLI::PositiveNumber);
    hd_cmd->add_option("--seed", hd_seed)->required();
    hd_cmd->add_option("--threads", hd_threads);
    hd_cmd->add_option("--thicken", hd_thicken);
    hd_cmd->add_option("--R", hd_radius);
    add_output_flags(hd_cmd, hd_out);
    hd_cmd->callback([&] {
        const ExperimentReport rep =
            high_disc_report(hd_seed, hd_trials, hd_threads, hd_thicken, hd_radius);
        emit(rep, hd_out);
        exit_code = report_exit(rep);
    });

    // --- stout --------------------------------------------------------------------
    auto* stout_cmd = app.add_subcommand("stout", "stout cylinder deviation bound");
    ExpFlags stout_flags;
    double stout_delta = 0.25, stout_height = 2.0, stout_area = 16.0;
    stout_cmd->add_option("--delta", stout_delta);
    stout_cmd->add_option("--height", stout_height, "cylinder interval length |I|");
    stout_cmd->add_option("--area", stout_area, "disk area when --region is omitted");
    stout_cmd->add_option("--region", stout_flags.region, "region JSON (inline or file path)");
    stout_flags.trials = 10'000;
    stout_cmd->add_option("--trials", stout_flags.trials)->check(CLI::PositiveNumber);
    stout_cmd->add_option("--seed", stout_flags.seed)->required();
    stout_cmd->add_option("--threads", stout_flags.threads);
    add_output_flags(stout_cmd, stout_flags.out);
    stout_cmd->callback([&] {
        ExperimentConfig cfg;
        cfg.region = stout_flags.region.empty()
                         ? make_disk({0, 0}, std::sqrt(stout_area / std::numbers::pi))
                         : parse_region(stout_flags.region);
        cfg.delta = stout_delta;
        cfg.interval_len = stout_height;
        cfg.trials = stout_flags.trials;
        cfg.seed = stout_flags.seed;
        cfg.threads = stout_flags.threads;
        const ExperimentReport rep = stout_cylinder_check(cfg);
        emit(rep, stout_flags.out);
        exit_code = report_exit(rep);
    });

    // --- missprob -------------------------------------------------------------------
    auto* mp_cmd = app.add_subcommand("missprob", "paired miss probabilities for a set");
    ExpFlags mp_flags;
    std::string mp_set = "plate";
    double mp_delta = 0.05, mp_n = 1000.0;
    mp_cmd->add_option("--set", mp_set)->check(CLI::IsMember({"plate", "tube"}));
    mp_cmd->add_option("--delta", mp_delta, "tube radius");
    mp_cmd->add_option("--N", mp_n, "tube half-height");
    mp_cmd->add_option("--region", mp_flags.region, "plate region (inline or file path)");
    mp_cmd->add_option("--eps", mp_flags.eps);
    mp_cmd->add_option("--z", mp_flags.z);
    mp_cmd->add_option("--trials", mp_flags.trials)->check(CLI::PositiveNumber);
    mp_cmd->add_option("--seed", mp_flags.seed)->required();
    mp_cmd->add_option("--threads", mp_flags.threads);
    add_output_flags(mp_cmd, mp_flags.out);
    mp_cmd->callback([&] {
        ExperimentConfig cfg;
        cfg.trials = mp_flags.trials;
        cfg.seed = mp_flags.seed;
        cfg.threads = mp_flags.threads;
        ExperimentReport rep;
        if (mp_set == "tube") {
            rep = miss_probability(cfg, build_tube(mp_delta, mp_n), "tube");
        } else {
            if (mp_flags.region.empty())
                throw std::invalid_argument("missprob --set plate requires --region");
            rep = miss_probability(
                cfg, Plate(parse_region(mp_flags.region), mp_flags.z, mp_flags.eps), "plate");
        }
        emit(rep, mp_flags.out);
        exit_code = report_exit(rep);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
