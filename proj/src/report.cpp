#include "gep/report.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "gep/kernels.hpp"
#include "gep/version.hpp"

namespace gep {

namespace {

using nlohmann::json;

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

json fit_to_json(const FitResult& f) {
    json j;
    j["lambda"] = f.params.lambda();
    j["beta"] = f.params.beta();
    j["alpha"] = f.params.alpha();
    j["loglik"] = f.loglik;
    j["converged"] = f.converged;
    j["iterations"] = f.iterations;
    j["alpha_fixed"] = f.alpha_fixed;
    j["at_bound"] = f.at_bound;
    j["grad_max_norm"] = f.grad_max_norm;
    j["small_sample"] = f.small_sample;
    json cov = json::array();
    for (const auto& row : f.covariance) cov.push_back(row);
    j["covariance"] = cov;
    json iv = json::array();
    for (const auto& ci : f.intervals)
        iv.push_back({{"lower", ci.lower}, {"upper", ci.upper}, {"available", ci.available}});
    j["intervals"] = iv;
    return j;
}

FitResult fit_from_json(const json& j) {
    FitResult f;
    f.params = GepParams(j.at("lambda").get<double>(), j.at("beta").get<double>(),
                         j.at("alpha").get<double>());
    f.loglik = j.at("loglik").get<double>();
    f.converged = j.at("converged").get<bool>();
    f.iterations = j.at("iterations").get<int>();
    f.alpha_fixed = j.at("alpha_fixed").get<bool>();
    f.at_bound = j.at("at_bound").get<std::array<bool, 3>>();
    f.grad_max_norm = j.at("grad_max_norm").get<double>();
    f.small_sample = j.at("small_sample").get<bool>();
    for (int i = 0; i < 3; ++i)
        f.covariance[i] = j.at("covariance")[i].get<std::array<double, 3>>();
    for (int i = 0; i < 3; ++i) {
        const json& ci = j.at("intervals")[i];
        f.intervals[i] = {ci.at("lower").get<double>(), ci.at("upper").get<double>(),
                          ci.at("available").get<bool>()};
    }
    return f;
}

std::string model_name(FitModel m) {
    switch (m) {
        case FitModel::ep: return "ep";
        case FitModel::gep: return "gep";
        case FitModel::both: return "both";
    }
    return "both";
}

FitModel model_from_name(const std::string& s) {
    if (s == "ep") return FitModel::ep;
    if (s == "gep") return FitModel::gep;
    return FitModel::both;
}

void print_fit(std::ostringstream& out, const std::string& name, const FitResult& f) {
    out << name << " fit:\n";
    const char* labels[3] = {"lambda", "beta", "alpha"};
    const double est[3] = {f.params.lambda(), f.params.beta(), f.params.alpha()};
    for (int i = 0; i < 3; ++i) {
        if (i == 2 && f.alpha_fixed) {
            out << "  alpha    1 (fixed)\n";
            continue;
        }
        out << "  " << labels[i] << std::string(8 - std::string(labels[i]).size(), ' ')
            << fmt6(est[i]);
        if (f.intervals[i].available)
            out << "  [" << fmt6(f.intervals[i].lower) << ", " << fmt6(f.intervals[i].upper)
                << "]";
        if (f.at_bound[i]) out << "  (at search bound)";
        out << "\n";
    }
    out << "  loglik   " << fmt6(f.loglik) << "\n";
    out << "  converged " << (f.converged ? "yes" : "no") << " in " << f.iterations
        << " iterations\n";
    if (f.small_sample) out << "  warning: fewer than 4 observations\n";
}

}  // namespace

FitReport run_fit_report(const Sample& sample, FitModel model, double level,
                         const FitConfig& config, const std::string& provenance) {
    FitReport r;
    r.tool_version = kVersion;
    r.provenance = provenance;
    r.model = model;
    r.level = level;
    r.config = config;
    if (model == FitModel::ep || model == FitModel::both) {
        FitResult f = fit_ep(sample, config);
        f.intervals = confidence_intervals(f, level);
        r.ep = f;
    }
    if (model == FitModel::gep || model == FitModel::both) {
        FitResult f = fit_gep(sample, config);
        f.intervals = confidence_intervals(f, level);
        r.gep = f;
    }
    if (model == FitModel::both) {
        LrResult lr;
        lr.statistic = std::max(0.0, 2.0 * (r.gep->loglik - r.ep->loglik));
        lr.df = 1;
        lr.p_value = chi2_sf(lr.statistic, lr.df);
        r.lr = lr;
    }
    return r;
}

std::string to_json(const FitReport& r) {
    json j;
    j["tool_version"] = r.tool_version;
    j["provenance"] = r.provenance;
    j["model"] = model_name(r.model);
    j["level"] = r.level;
    j["config"] = {{"max_iterations", r.config.max_iterations},
                   {"gradient_tolerance", r.config.gradient_tolerance},
                   {"multistart_points", r.config.multistart_points},
                   {"seed", r.config.seed},
                   {"param_bound", r.config.param_bound}};
    if (r.ep) j["ep"] = fit_to_json(*r.ep);
    if (r.gep) j["gep"] = fit_to_json(*r.gep);
    if (r.lr)
        j["lr"] = {{"statistic", r.lr->statistic}, {"df", r.lr->df}, {"p_value", r.lr->p_value}};
    return j.dump(2) + "\n";
}

FitReport parse_report(const std::string& json_text) {
    const json j = json::parse(json_text);
    FitReport r;
    r.tool_version = j.at("tool_version").get<std::string>();
    r.provenance = j.at("provenance").get<std::string>();
    r.model = model_from_name(j.at("model").get<std::string>());
    r.level = j.at("level").get<double>();
    r.config.max_iterations = j.at("config").at("max_iterations").get<int>();
    r.config.gradient_tolerance = j.at("config").at("gradient_tolerance").get<double>();
    r.config.multistart_points = j.at("config").at("multistart_points").get<int>();
    r.config.seed = j.at("config").at("seed").get<std::uint64_t>();
    r.config.param_bound = j.at("config").at("param_bound").get<double>();
    if (j.contains("ep")) r.ep = fit_from_json(j.at("ep"));
    if (j.contains("gep")) r.gep = fit_from_json(j.at("gep"));
    if (j.contains("lr")) {
        LrResult lr;
        lr.statistic = j.at("lr").at("statistic").get<double>();
        lr.df = j.at("lr").at("df").get<int>();
        lr.p_value = j.at("lr").at("p_value").get<double>();
        r.lr = lr;
    }
    return r;
}

std::string emit_grid(const GepParams& p, const std::string& op, double x_min, double x_max,
                      int steps) {
    if (!(x_min >= 0.0) || !(x_max > x_min))
        throw ArgumentError("emit_grid: need 0 <= min < max");
    if (steps < 2) throw ArgumentError("emit_grid: steps must be >= 2");
    std::vector<double> xs(steps + 1);
    for (int i = 0; i <= steps; ++i)
        xs[i] = x_min + (x_max - x_min) * static_cast<double>(i) / steps;
    std::vector<double> vals(xs.size());
    if (op == "pdf")
        kernels::pdf_batch(p, xs, vals);
    else if (op == "cdf")
        kernels::cdf_batch(p, xs, vals);
    else if (op == "hazard")
        kernels::hazard_batch(p, xs, vals);
    else
        throw ArgumentError("emit_grid: op must be pdf, cdf or hazard");
    std::string out = "x," + op + "\n";
    char buf[96];
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", xs[i], vals[i]);
        out += buf;
    }
    return out;
}

std::string to_table(const FitReport& r) {
    std::ostringstream out;
    out << "data: " << r.provenance << "   (tool " << r.tool_version << ", seed "
        << r.config.seed << ", level " << fmt6(r.level) << ")\n";
    if (r.ep) print_fit(out, "EP", *r.ep);
    if (r.gep) print_fit(out, "GEP", *r.gep);
    if (r.lr) {
        out << "LR test of alpha = 1:\n";
        out << "  w        " << fmt6(r.lr->statistic) << "\n";
        out << "  df       " << r.lr->df << "\n";
        out << "  p-value  " << fmt6(r.lr->p_value) << "\n";
    }
    return out.str();
}

}  // namespace gep
