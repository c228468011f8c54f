#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gep/core.hpp"
#include "gep/data.hpp"
#include "gep/entropy.hpp"
#include "gep/inference.hpp"
#include "gep/report.hpp"
#include "gep/series.hpp"
#include "gep/stress.hpp"
#include "gep/version.hpp"

namespace {

// Exit codes (also documented in the README).
constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitOptimization = 4;
constexpr int kExitValidation = 5;
constexpr int kExitDomain = 6;

std::string shortest(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fixed17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct DataArgs {
    std::string path;
    std::string dataset;
    int column = -1;
    bool skip_header = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--data", path, "input file (one value per line, or CSV)");
        cmd->add_option("--dataset", dataset, "builtin dataset: precipitation or toys");
        cmd->add_option("--column", column, "zero-based CSV column to read");
        cmd->add_flag("--skip-header", skip_header, "skip the first data line");
    }

    gep::Sample load(std::string& provenance) const {
        if (!dataset.empty()) {
            const auto id = gep::dataset_from_name(dataset);
            if (!id) throw gep::ArgumentError("unknown dataset: " + dataset);
            provenance = "builtin:" + dataset;
            return gep::builtin_dataset(*id);
        }
        if (path.empty()) throw gep::ArgumentError("either --data or --dataset is required");
        provenance = path;
        const std::optional<int> col =
            column >= 0 ? std::optional<int>(column) : std::nullopt;
        return gep::load_sample(path, col, skip_header);
    }
};

struct ParamArgs {
    double lambda = 1.0, beta = 1.0, alpha = 1.0;
    void attach(CLI::App* cmd) {
        cmd->add_option("--lambda", lambda, "compounding parameter")->required();
        cmd->add_option("--beta", beta, "rate parameter")->required();
        cmd->add_option("--alpha", alpha, "shape parameter")->required();
    }
    gep::GepParams params() const { return {lambda, beta, alpha}; }
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw gep::DataError("cannot write file: " + path);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized exponential-Poisson distribution toolkit"};
    app.set_version_flag("--version", gep::kVersion);
    app.require_subcommand(1);

    // fit -------------------------------------------------------------
    auto* fit_cmd = app.add_subcommand("fit", "maximum-likelihood fit (EP, GEP or both)");
    DataArgs fit_data;
    fit_data.attach(fit_cmd);
    std::string model_str = "both";
    double level = 0.95;
    std::uint64_t seed = 0;
    std::string json_path;
    fit_cmd->add_option("--model", model_str, "ep, gep or both")
        ->check(CLI::IsMember({"ep", "gep", "both"}));
    fit_cmd->add_option("--level", level, "confidence level");
    fit_cmd->add_option("--seed", seed, "multistart seed");
    fit_cmd->add_option("--json", json_path, "write the machine-readable report here");

    // lr-test ---------------------------------------------------------
    auto* lr_cmd = app.add_subcommand("lr-test", "likelihood-ratio test of alpha = 1");
    DataArgs lr_data;
    lr_data.attach(lr_cmd);
    std::uint64_t lr_seed = 0;
    lr_cmd->add_option("--seed", lr_seed, "multistart seed");

    // ss-fit ------------------------------------------------------------
    auto* ss_cmd = app.add_subcommand("ss-fit", "joint stress-strength fit of two samples");
    std::string x_path, y_path;
    std::uint64_t ss_seed = 0;
    std::string ss_json;
    ss_cmd->add_option("--x-data", x_path, "strength sample file")->required();
    ss_cmd->add_option("--y-data", y_path, "stress sample file")->required();
    ss_cmd->add_option("--seed", ss_seed, "multistart seed");
    ss_cmd->add_option("--json", ss_json, "write the machine-readable result here");

    // eval --------------------------------------------------------------
    auto* eval_cmd = app.add_subcommand("eval", "evaluate pdf/cdf/hazard/quantile at a point");
    ParamArgs eval_params;
    eval_params.attach(eval_cmd);
    std::string eval_op = "pdf";
    double at = 0.0;
    eval_cmd->add_option("--op", eval_op, "pdf, cdf, hazard or quantile")
        ->check(CLI::IsMember({"pdf", "cdf", "hazard", "quantile"}));
    eval_cmd->add_option("--at", at, "evaluation point (a probability for quantile)")
        ->required();

    // moments -----------------------------------------------------------
    auto* mom_cmd = app.add_subcommand("moments", "raw moments E[X^r]");
    ParamArgs mom_params;
    mom_params.attach(mom_cmd);
    int mom_r = 1;
    mom_cmd->add_option("--r", mom_r, "highest moment order");

    // entropy -----------------------------------------------------------
    auto* ent_cmd = app.add_subcommand("entropy", "Renyi (--gamma) or Shannon entropy");
    ParamArgs ent_params;
    ent_params.attach(ent_cmd);
    double gamma_order = 0.0;
    auto* gamma_opt = ent_cmd->add_option("--gamma", gamma_order, "Renyi order (!= 1)");

    // sample --------------------------------------------------------------
    auto* sample_cmd = app.add_subcommand("sample", "seeded i.i.d. draws, one per line");
    ParamArgs sample_params;
    sample_params.attach(sample_cmd);
    int sample_n = 10;
    std::uint64_t sample_seed = 0;
    sample_cmd->add_option("--n", sample_n, "number of draws")->required();
    sample_cmd->add_option("--seed", sample_seed, "generator seed");

    // grid ----------------------------------------------------------------
    auto* grid_cmd = app.add_subcommand("grid", "CSV grid of pdf/cdf/hazard values");
    ParamArgs grid_params;
    grid_params.attach(grid_cmd);
    std::string grid_op = "pdf";
    double x_min = 0.0, x_max = 1.0;
    int steps = 100;
    grid_cmd->add_option("--op", grid_op, "pdf, cdf or hazard")
        ->check(CLI::IsMember({"pdf", "cdf", "hazard"}));
    grid_cmd->add_option("--min", x_min, "grid start");
    grid_cmd->add_option("--max", x_max, "grid end")->required();
    grid_cmd->add_option("--steps", steps, "number of intervals");

    // dataset ----------------------------------------------------------------
    auto* ds_cmd = app.add_subcommand("dataset", "print a builtin dataset");
    std::string ds_name;
    ds_cmd->add_option("--dataset", ds_name, "precipitation or toys")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*fit_cmd) {
            std::string provenance;
            const gep::Sample sample = fit_data.load(provenance);
            gep::FitConfig config;
            config.seed = seed;
            const gep::FitModel model = model_str == "ep"   ? gep::FitModel::ep
                                        : model_str == "gep" ? gep::FitModel::gep
                                                             : gep::FitModel::both;
            const gep::FitReport report =
                gep::run_fit_report(sample, model, level, config, provenance);
            std::cout << gep::to_table(report);
            if (!json_path.empty()) write_file(json_path, gep::to_json(report));
        } else if (*lr_cmd) {
            std::string provenance;
            const gep::Sample sample = lr_data.load(provenance);
            gep::FitConfig config;
            config.seed = lr_seed;
            const gep::LrResult r = gep::lr_test(sample, config);
            std::cout << "w        " << shortest(r.statistic) << "\n";
            std::cout << "df       " << r.df << "\n";
            std::cout << "p-value  " << shortest(r.p_value) << "\n";
        } else if (*ss_cmd) {
            const gep::Sample xs = gep::load_sample(x_path);
            const gep::Sample ys = gep::load_sample(y_path);
            gep::FitConfig config;
            config.seed = ss_seed;
            const gep::SsResult r = gep::fit_ss(xs, ys, config);
            std::cout << "lambda   " << shortest(r.lambda) << "\n";
            std::cout << "beta     " << shortest(r.beta) << "\n";
            std::cout << "alpha1   " << shortest(r.alpha1) << "\n";
            std::cout << "alpha2   " << shortest(r.alpha2) << "\n";
            std::cout << "R        " << shortest(r.r_hat) << "\n";
            std::cout << "loglik   " << shortest(r.loglik) << "\n";
            if (!ss_json.empty()) {
                std::string j = "{\n";
                j += "  \"tool_version\": \"" + std::string(gep::kVersion) + "\",\n";
                j += "  \"seed\": " + std::to_string(ss_seed) + ",\n";
                j += "  \"lambda\": " + shortest(r.lambda) + ",\n";
                j += "  \"beta\": " + shortest(r.beta) + ",\n";
                j += "  \"alpha1\": " + shortest(r.alpha1) + ",\n";
                j += "  \"alpha2\": " + shortest(r.alpha2) + ",\n";
                j += "  \"r_hat\": " + shortest(r.r_hat) + ",\n";
                j += "  \"loglik\": " + shortest(r.loglik) + ",\n";
                j += "  \"converged\": " + std::string(r.converged ? "true" : "false") + "\n";
                j += "}\n";
                write_file(ss_json, j);
            }
        } else if (*eval_cmd) {
            const gep::GepParams p = eval_params.params();
            double v;
            if (eval_op == "pdf")
                v = gep::pdf(p, at);
            else if (eval_op == "cdf")
                v = gep::cdf(p, at);
            else if (eval_op == "hazard")
                v = gep::hazard(p, at);
            else
                v = gep::quantile(p, at);
            std::cout << shortest(v) << "\n";
        } else if (*mom_cmd) {
            const gep::GepParams p = mom_params.params();
            if (mom_r < 1) throw gep::ArgumentError("moments: --r must be >= 1");
            for (int r = 1; r <= mom_r; ++r)
                std::cout << "E[X^" << r << "] = " << shortest(gep::gep_raw_moment(p, r))
                          << "\n";
        } else if (*ent_cmd) {
            const gep::GepParams p = ent_params.params();
            if (gamma_opt->count() > 0) {
                gep::EntropyQuery q;
                q.gamma = gamma_order;
                std::cout << "renyi(" << shortest(gamma_order)
                          << ") = " << shortest(gep::renyi_entropy(p, q)) << "\n";
            } else {
                const gep::ShannonResult r = gep::shannon_entropy(p);
                std::cout << "shannon = " << shortest(r.value) << "\n";
                std::cout << "series  = " << shortest(r.series_value) << " (|diff| "
                          << shortest(r.series_discrepancy) << ", "
                          << (r.series_validated ? "validated" : "not validated") << ")\n";
            }
        } else if (*sample_cmd) {
            if (sample_n < 1) throw gep::ArgumentError("sample: --n must be >= 1");
            const auto draws =
                gep::sample(sample_params.params(), static_cast<std::size_t>(sample_n),
                            sample_seed);
            for (double v : draws) std::cout << shortest(v) << "\n";
        } else if (*grid_cmd) {
            std::cout << gep::emit_grid(grid_params.params(), grid_op, x_min, x_max, steps);
        } else if (*ds_cmd) {
            const auto id = gep::dataset_from_name(ds_name);
            if (!id) throw gep::ArgumentError("unknown dataset: " + ds_name);
            for (double v : gep::builtin_dataset(*id).values())
                std::cout << shortest(v) << "\n";
        }
    } catch (const gep::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const gep::OptimizationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOptimization;
    } catch (const gep::ValidationError& e) {
        std::cerr << "error: " << e.what() << " (series " << e.series_value() << ", oracle "
                  << e.oracle_value() << ")\n";
        return kExitValidation;
    } catch (const gep::ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const gep::ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const gep::TailError& e) {
        std::cerr << "error: " << e.what() << " (at " << e.where() << ")\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOther;
    }
    return kExitOk;
}
