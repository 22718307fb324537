// Command-line front end. Emits CSV/JSON artifacts for the bound curves,
// the condition check, Monte Carlo scatter scans, the brute-force oracle
// and the spectral input pathway.
//
// Exit codes: 0 success, 1 usage error, 2 input-data error,
// 3 condition indeterminate.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entrobound/entrobound.hpp"

namespace eb = entrobound;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInputData = 2;
constexpr int kExitIndeterminate = 3;

std::string join_invocation(int argc, char** argv) {
    std::ostringstream os;
    for (int i = 0; i < argc; ++i) {
        if (i) os << ' ';
        os << argv[i];
    }
    return os.str();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    return out;
}

json condition_json(const eb::ConditionReport& report) {
    json j;
    j["verdict"] = eb::to_string(report.verdict);
    if (report.witness)
        j["witness"] = {(*report.witness)[0], (*report.witness)[1],
                        (*report.witness)[2]};
    return j;
}

int cmd_check(const std::string& fspec, const std::string& gspec, int grid) {
    const auto f = eb::make_measure(fspec);
    const auto g = eb::make_measure(gspec);
    const auto report = eb::classify_condition(f, g, grid);
    std::cout << condition_json(report).dump() << "\n";
    return report.verdict == eb::Verdict::Indeterminate ? kExitIndeterminate
                                                        : kExitOk;
}

int cmd_bounds(const std::string& fspec, const std::string& gspec, int d,
               int npoints, const std::string& out_path, bool unchecked,
               const std::string& invocation) {
    const auto f = eb::make_measure(fspec);
    const auto g = eb::make_measure(gspec);
    eb::BoundCurve curve;
    try {
        curve = eb::bound_curve(f, g, d, npoints, unchecked);
    } catch (const eb::ConditionIndeterminate& e) {
        std::cerr << e.what() << "\n";
        return kExitIndeterminate;
    }
    if (out_path.empty()) {
        eb::write_curve_csv(std::cout, curve, invocation);
    } else {
        auto out = open_out(out_path);
        eb::write_curve_csv(out, curve, invocation);
    }
    return kExitOk;
}

int cmd_sample(const std::string& fspec, const std::string& gspec, int d,
               long long n, std::uint64_t seed, const std::string& ensemble,
               const std::string& out_path, const std::string& invocation) {
    const auto f = eb::make_measure(fspec);
    const auto g = eb::make_measure(gspec);
    eb::SampleConfig cfg;
    cfg.d = d;
    cfg.n = n;
    cfg.seed = seed;
    cfg.ensemble = ensemble == "hs" ? eb::Ensemble::HilbertSchmidt
                                    : eb::Ensemble::SimplexUniform;
    std::vector<eb::ScatterRow> scatter;
    const auto report = eb::scan_violations(
        f, g, cfg, out_path.empty() ? nullptr : &scatter);
    if (!out_path.empty()) {
        auto out = open_out(out_path);
        eb::write_scatter_csv(out, scatter, invocation);
    }
    json j;
    j["n_total"] = report.n_total;
    j["n_below"] = report.n_below;
    j["n_above"] = report.n_above;
    j["max_excursion"] = report.max_excursion;
    j["worst_sample"] = report.worst_sample;
    j["generator"] = eb::kGeneratorName;
    j["seed"] = seed;
    std::cout << j.dump() << "\n";
    return kExitOk;
}

int cmd_oracle(const std::string& fspec, const std::string& gspec, int d,
               double step, int centers, double slab) {
    const auto f = eb::make_measure(fspec);
    const auto g = eb::make_measure(gspec);
    if (slab <= 0.0) slab = eb::default_slab(g, step);
    const double h_uniform = d * g.f(1.0 / d);
    const double h_pure = g.f(1.0);
    for (int j = 1; j <= centers; ++j) {
        const double center =
            h_uniform + (h_pure - h_uniform) * j / (centers + 1.0);
        json row;
        row["center"] = center;
        row["slab"] = slab;
        try {
            const auto ex = eb::grid_extrema(f, g, d, step, center, slab);
            row["hf_min"] = ex.hf_min;
            row["hf_max"] = ex.hf_max;
            row["min_p"] = ex.min_p.values();
            row["max_p"] = ex.max_p.values();
            row["n_in_slab"] = ex.n_in_slab;
            row["min_structure"] =
                eb::to_string(eb::structural_match(ex.min_p, 2.0 * step));
            row["max_structure"] =
                eb::to_string(eb::structural_match(ex.max_p, 2.0 * step));
        } catch (const eb::EmptySlab&) {
            row["empty"] = true;
        }
        std::cout << row.dump() << "\n";
    }
    return kExitOk;
}

eb::HermMatrix matrix_from_json(const json& j) {
    const int d = j.at("d").get<int>();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    eb::HermMatrix a(d);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k)
            a.at(i, k) = eb::cplx{re.at(i).at(k).get<double>(),
                                  im.at(i).at(k).get<double>()};
    return a;
}

eb::PureBipartite bipartite_from_json(const json& j) {
    const int da = j.at("da").get<int>();
    const int db = j.at("db").get<int>();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    std::vector<eb::cplx> c;
    c.reserve(static_cast<std::size_t>(da) * db);
    for (int i = 0; i < da; ++i)
        for (int k = 0; k < db; ++k)
            c.emplace_back(re.at(i).at(k).get<double>(),
                           im.at(i).at(k).get<double>());
    return eb::PureBipartite(da, db, std::move(c));
}

int cmd_spectrum(const std::string& in_path, const std::string& fspec,
                 bool bipartite) {
    const auto f = eb::make_measure(fspec);
    std::ifstream in(in_path);
    if (!in) {
        std::cerr << "cannot open input file '" << in_path << "'\n";
        return kExitInputData;
    }
    json input;
    try {
        in >> input;
    } catch (const json::exception& e) {
        std::cerr << "bad JSON in '" << in_path << "': " << e.what() << "\n";
        return kExitInputData;
    }
    std::vector<double> eigs;
    if (bipartite) {
        eigs = eb::schmidt_probs(bipartite_from_json(input)).values();
    } else {
        eigs = eb::eigenvalues(matrix_from_json(input));
    }
    const double hf = eb::eval_sum(f, eb::make_probvec(eigs));
    json out;
    out["eigenvalues"] = eigs;
    out["H_f"] = hf;
    out["display"] = f.display(hf);
    std::cout << out.dump() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entropy-vs-entropy bounds for trace-form measures"};
    app.require_subcommand(1);
    const std::string invocation = join_invocation(argc, argv);

    std::string fspec, gspec, out_path, in_path, ensemble = "hs";
    int d = 10, npoints = 256, grid = 4096, centers = 20;
    long long n = 100000;
    std::uint64_t seed = 0;
    double step = 1e-3, slab = 0.0;
    bool unchecked = false, bipartite = false;

    auto* check = app.add_subcommand("check", "classify the convexity of f'(g')");
    check->add_option("--f", fspec, "measure spec for f")->required();
    check->add_option("--g", gspec, "measure spec for g")->required();
    check->add_option("--grid", grid, "classifier grid size");

    auto* bounds = app.add_subcommand("bounds", "emit the bound curve as CSV");
    bounds->add_option("--f", fspec)->required();
    bounds->add_option("--g", gspec)->required();
    bounds->add_option("--d", d, "dimension")->required();
    bounds->add_option("--points", npoints, "samples per family");
    bounds->add_option("--out", out_path, "CSV output path (default stdout)");
    bounds->add_flag("--unchecked", unchecked,
                     "emit family curves even when the condition fails");

    auto* sample = app.add_subcommand(
        "sample", "random-state scatter and violation report");
    sample->add_option("--f", fspec)->required();
    sample->add_option("--g", gspec)->required();
    sample->add_option("--d", d)->required();
    sample->add_option("--n", n, "sample count");
    sample->add_option("--seed", seed, "RNG seed");
    sample->add_option("--ensemble", ensemble, "simplex | hs")
        ->check(CLI::IsMember({"simplex", "hs"}));
    sample->add_option("--out", out_path, "scatter CSV path");

    auto* oracle = app.add_subcommand("oracle", "brute-force slab extrema");
    oracle->add_option("--f", fspec)->required();
    oracle->add_option("--g", gspec)->required();
    oracle->add_option("--d", d)->required();
    oracle->add_option("--step", step, "grid spacing");
    oracle->add_option("--centers", centers, "number of slab centers");
    oracle->add_option("--slab", slab, "slab half-width (default from g)");

    auto* spectrum = app.add_subcommand(
        "spectrum", "eigenvalues and entropy of a matrix or bipartite state");
    spectrum->add_option("--in", in_path, "JSON input file")->required();
    spectrum->add_option("--f", fspec, "measure spec")->required();
    spectrum->add_flag("--bipartite", bipartite,
                       "input is a pure bipartite amplitude matrix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*check) return cmd_check(fspec, gspec, grid);
        if (*bounds)
            return cmd_bounds(fspec, gspec, d, npoints, out_path, unchecked,
                              invocation);
        if (*sample)
            return cmd_sample(fspec, gspec, d, n, seed, ensemble, out_path,
                              invocation);
        if (*oracle) return cmd_oracle(fspec, gspec, d, step, centers, slab);
        if (*spectrum) return cmd_spectrum(in_path, fspec, bipartite);
    } catch (const eb::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const eb::ParamOutOfRange& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const eb::ConditionIndeterminate& e) {
        std::cerr << e.what() << "\n";
        return kExitIndeterminate;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "bad input JSON: " << e.what() << "\n";
        return kExitInputData;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitInputData;
    }
    return kExitUsage;
}
