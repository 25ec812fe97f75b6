// mcpot: batch front end for the threshold-exceedance Markov chain toolkit.
//
// Subcommands: fit | simulate | theta | quantile | diagnose | evaluate | duration.
// Every run writes its CSV/JSON outputs plus a manifest.json recording inputs,
// seed, version and wall time. Exit codes: 0 ok, 1 usage error, 2 numerical
// failure.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mcpot/diagnostics.hpp"
#include "mcpot/evaluation.hpp"
#include "mcpot/exindex.hpp"
#include "mcpot/hydrograph.hpp"
#include "mcpot/io_util.hpp"
#include "mcpot/likelihood.hpp"
#include "mcpot/quantiles.hpp"
#include "mcpot/series.hpp"
#include "mcpot/simulate.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace mcpot;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Manifest {
    std::string command;
    json inputs = json::object();
    std::vector<std::string> outputs;
    std::uint64_t seed = 0;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    void write(const fs::path& dir) const {
        json m;
        m["command"] = command;
        m["version"] = kVersion;
        m["seed"] = seed;
        m["inputs"] = inputs;
        m["outputs"] = outputs;
        m["wall_time_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
        std::ofstream out(dir / "manifest.json");
        out << m.dump(2) << "\n";
    }
};

std::ofstream open_output(const fs::path& dir, const std::string& name, Manifest& manifest) {
    fs::create_directories(dir);
    manifest.outputs.push_back(name);
    std::ofstream out(dir / name);
    if (!out) throw Error("cannot open output file " + (dir / name).string());
    return out;
}

DailySeries load_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open input file " + path);
    return parse_series(in, fs::path(path).stem().string());
}

Family parse_family(const std::string& name) {
    const auto fam = family_from_name(name);
    if (!fam || *fam == Family::combo)
        throw CLI::ValidationError("--family",
                                   "expected one of log, nlog, mix, alog, anlog, amix");
    return *fam;
}

json model_to_json(const MarkovModel& model, const std::string& station) {
    json j;
    j["station_id"] = station;
    j["family"] = std::string(family_name(model.dep.family));
    j["u"] = model.marginal.u;
    j["lambda"] = model.marginal.lambda;
    j["sigma"] = model.marginal.sigma;
    j["xi"] = model.marginal.xi;
    j["alpha"] = model.dep.alpha;
    if (model.dep.family == Family::amix) {
        j["theta"] = model.dep.theta1;
    } else if (model.dep.family == Family::alog || model.dep.family == Family::anlog) {
        j["theta1"] = model.dep.theta1;
        j["theta2"] = model.dep.theta2;
    }
    if (model.theta) j["extremal_index"] = *model.theta;
    return j;
}

MarkovModel model_from_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open model file " + path);
    json j = json::parse(in);
    MarkovModel model;
    model.marginal = GpdParams{j.at("u").get<double>(), j.at("lambda").get<double>(),
                               j.at("sigma").get<double>(), j.at("xi").get<double>()};
    const auto fam = family_from_name(j.at("family").get<std::string>());
    if (!fam) throw Error("model file: unknown family");
    const double alpha = j.at("alpha").get<double>();
    switch (*fam) {
        case Family::log_: model.dep = DependenceModel::logistic(alpha); break;
        case Family::nlog: model.dep = DependenceModel::neg_logistic(alpha); break;
        case Family::mix: model.dep = DependenceModel::mixed(alpha); break;
        case Family::amix:
            model.dep = DependenceModel::asy_mixed(alpha, j.at("theta").get<double>());
            break;
        case Family::alog:
            model.dep = DependenceModel::asy_logistic(alpha, j.at("theta1").get<double>(),
                                                      j.at("theta2").get<double>());
            break;
        case Family::anlog:
            model.dep = DependenceModel::asy_neg_logistic(alpha, j.at("theta1").get<double>(),
                                                          j.at("theta2").get<double>());
            break;
        default: throw Error("model file: unsupported family");
    }
    if (j.contains("extremal_index")) model.theta = j["extremal_index"].get<double>();
    model.dep.validate();
    return model;
}

// ---------------------------------------------------------------- fit

struct FitArgs {
    std::string input, thresh = "q:0.95", family = "amix", out = ".";
    std::uint64_t seed = 0;
};

int run_fit(const FitArgs& a) {
    Manifest man;
    man.command = "fit";
    man.seed = a.seed;
    man.inputs = {{"input", a.input}, {"threshold", a.thresh}, {"family", a.family}};

    const DailySeries series = load_series(a.input);
    const double u = resolve_threshold(series, a.thresh);
    const MarkovFit fit = fit_markov(series, u, parse_family(a.family), a.seed);

    json j = model_to_json(fit.model, series.station_id);
    j["loglik"] = fit.loglik;
    j["n_exceedances"] = exceedances(series, u).count();
    j["iterations"] = fit.iterations;
    j["converged"] = fit.converged;

    auto out = open_output(a.out, "model.json", man);
    out << j.dump(2) << "\n";
    man.write(a.out);
    std::cout << "fit: " << a.family << " loglik=" << fmt_g17(fit.loglik) << " u=" << fmt_g17(u)
              << "\n";
    return 0;
}

// ---------------------------------------------------------------- simulate

struct SimArgs {
    std::string model, out = ".";
    int chains = 100, length = 2000, burn_in = 100;
    std::uint64_t seed = 0;
};

int run_simulate(const SimArgs& a) {
    Manifest man;
    man.command = "simulate";
    man.seed = a.seed;
    man.inputs = {{"model", a.model},
                  {"chains", a.chains},
                  {"length", a.length},
                  {"burn_in", a.burn_in}};

    const MarkovModel model = model_from_json(a.model);
    const SimConfig cfg{a.chains, a.length, a.seed, a.burn_in};

    auto out = open_output(a.out, "chains.csv", man);
    out << "chain_id,step,exceeds,value\n";
    for (int k = 0; k < cfg.n_chains; ++k) {
        const SimulatedChain chain = simulate_chain(model, cfg, k);
        for (std::size_t i = 0; i < chain.size(); ++i) {
            out << k << ',' << i << ',' << (chain.exceeds[i] ? 1 : 0) << ',';
            if (chain.exceeds[i]) out << fmt_g17(chain.values[i]);
            out << '\n';
        }
    }
    man.write(a.out);
    return 0;
}

// ---------------------------------------------------------------- theta

struct ThetaArgs {
    std::string model, input, thresh = "q:0.95", out = ".";
    int chains = 100, length = 2000, burn_in = 100, bins = 20;
    std::uint64_t seed = 0;
};

int run_theta(const ThetaArgs& a) {
    Manifest man;
    man.command = "theta";
    man.seed = a.seed;

    ThetaEstimate est;
    if (!a.model.empty()) {
        man.inputs = {{"model", a.model},
                      {"chains", a.chains},
                      {"length", a.length},
                      {"burn_in", a.burn_in}};
        const MarkovModel model = model_from_json(a.model);
        est = theta_pipeline(model, SimConfig{a.chains, a.length, a.seed, a.burn_in});
    } else if (!a.input.empty()) {
        man.inputs = {{"input", a.input}, {"threshold", a.thresh}};
        const DailySeries series = load_series(a.input);
        est = ferro_segers(exceedances(series, resolve_threshold(series, a.thresh)));
    } else {
        throw CLI::ValidationError("theta", "provide --model or --input");
    }

    const char* method = est.method == ThetaMethod::intervals ? "intervals" : "pipeline";
    {
        auto out = open_output(a.out, "theta.csv", man);
        out << "theta,n_exceedances,method\n";
        out << fmt_g17(est.theta) << ',' << est.n_exceedances << ',' << method << '\n';
    }
    if (!est.per_chain.empty()) {
        auto chains = open_output(a.out, "theta_chains.csv", man);
        chains << "chain,theta\n";
        for (std::size_t i = 0; i < est.per_chain.size(); ++i)
            chains << i << ',' << fmt_g17(est.per_chain[i]) << '\n';

        auto hist = open_output(a.out, "theta_hist.csv", man);
        hist << "bin_lo,bin_hi,count\n";
        std::vector<std::size_t> counts(a.bins, 0);
        for (double t : est.per_chain) {
            const int b = static_cast<int>(t * a.bins);
            counts[std::clamp(b, 0, a.bins - 1)]++;
        }
        for (int b = 0; b < a.bins; ++b)
            hist << fmt_g17(static_cast<double>(b) / a.bins) << ','
                 << fmt_g17(static_cast<double>(b + 1) / a.bins) << ',' << counts[b] << '\n';
    }
    man.write(a.out);
    std::cout << "theta: " << fmt_g17(est.theta) << " N=" << est.n_exceedances
              << " method=" << method << "\n";
    return 0;
}

// ---------------------------------------------------------------- quantile

struct QuantileArgs {
    std::string model, mode = "markov", out = ".";
    std::vector<double> periods{2, 10, 20, 50, 100};
    double obs_per_year = 365.25;
    double theta = -1.0;        // <= 0: use the model value or run the pipeline
    double cluster_rate = 0.0;  // pot mode
    int chains = 100, length = 2000, burn_in = 100;
    std::uint64_t seed = 0;
};

int run_quantile(const QuantileArgs& a) {
    Manifest man;
    man.command = "quantile";
    man.seed = a.seed;
    man.inputs = {{"model", a.model},
                  {"mode", a.mode},
                  {"T", a.periods},
                  {"obs_per_year", a.obs_per_year}};

    MarkovModel model = model_from_json(a.model);
    auto out = open_output(a.out, "quantiles.csv", man);
    out << "T,Q_T\n";
    if (a.mode == "pot") {
        if (!(a.cluster_rate > 0.0))
            throw CLI::ValidationError("--cluster-rate", "required in pot mode");
        for (double T : a.periods)
            out << fmt_g17(T) << ','
                << fmt_g17(return_level_pot(model.marginal, a.cluster_rate,
                                            ReturnSpec{T, a.obs_per_year}))
                << '\n';
    } else if (a.mode == "markov") {
        if (a.theta > 0.0) {
            model.theta = a.theta;
        } else if (!model.theta) {
            model.theta =
                theta_pipeline(model, SimConfig{a.chains, a.length, a.seed, a.burn_in}).theta;
        }
        man.inputs["theta"] = *model.theta;
        for (double T : a.periods)
            out << fmt_g17(T) << ','
                << fmt_g17(return_level_markov(model, ReturnSpec{T, a.obs_per_year})) << '\n';
    } else {
        throw CLI::ValidationError("--mode", "expected markov or pot");
    }
    man.write(a.out);
    return 0;
}

// ---------------------------------------------------------------- diagnose

struct DiagnoseArgs {
    std::string input, out = ".";
    std::vector<double> omegas{0.98, 0.985, 0.99};
    int block_len = 30, n_boot = 500, max_lag = 30;
    double level = 0.95;
    std::uint64_t seed = 0;
};

int run_diagnose(const DiagnoseArgs& a) {
    Manifest man;
    man.command = "diagnose";
    man.seed = a.seed;
    man.inputs = {{"input", a.input},
                  {"omegas", a.omegas},
                  {"block_len", a.block_len},
                  {"n_boot", a.n_boot},
                  {"level", a.level},
                  {"max_lag", a.max_lag}};

    const DailySeries series = load_series(a.input);
    const ChiCurveConfig cfg{a.block_len, a.n_boot, a.level, a.seed};
    const std::vector<ChiPoint> curve = chi_curve(series, a.omegas, cfg);

    auto chi = open_output(a.out, "chi.csv", man);
    chi << "omega,chi,chi_lo,chi_hi,chibar,chibar_lo,chibar_hi,bound_lo,bound_hi\n";
    for (const ChiPoint& p : curve)
        chi << fmt_g17(p.omega) << ',' << fmt_g17(p.chi) << ',' << fmt_g17(p.chi_lo) << ','
            << fmt_g17(p.chi_hi) << ',' << fmt_g17(p.chibar) << ',' << fmt_g17(p.chibar_lo)
            << ',' << fmt_g17(p.chibar_hi) << ',' << fmt_g17(p.bound_lo) << ','
            << fmt_g17(p.bound_hi) << '\n';

    const AcfResult ac = acf_pacf(series.values, series.missing, a.max_lag);
    auto acf = open_output(a.out, "acf.csv", man);
    acf << "lag,acf,pacf\n";
    for (int k = 0; k <= a.max_lag; ++k)
        acf << k << ',' << fmt_g17(ac.acf[k]) << ',' << fmt_g17(ac.pacf[k]) << '\n';

    man.write(a.out);
    return 0;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateArgs {
    std::string config, out;
};

struct ParsedConfig {
    ExperimentConfig experiment;
    std::vector<StationInput> stations;
    std::string out = ".";
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        while (!item.empty() && item.front() == ' ') item.erase(item.begin());
        while (!item.empty() && item.back() == ' ') item.pop_back();
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

// Flat key/value file with [station:ID] sections; flags override.
ParsedConfig parse_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file " + path);
    const fs::path base = fs::path(path).parent_path();

    ParsedConfig cfg;
    std::string section;  // empty = global
    std::string station_input, station_thresh;
    auto flush_station = [&] {
        if (section.empty()) return;
        if (station_input.empty()) throw Error("config: station " + section + " missing input");
        StationInput st;
        st.id = section;
        const fs::path p =
            fs::path(station_input).is_absolute() ? fs::path(station_input) : base / station_input;
        st.series = load_series(p.string());
        st.series.station_id = section;
        st.threshold =
            resolve_threshold(st.series, station_thresh.empty() ? "q:0.95" : station_thresh);
        cfg.stations.push_back(std::move(st));
        station_input.clear();
        station_thresh.clear();
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = line;
        while (!t.empty() && (t.front() == ' ' || t.front() == '\t')) t.erase(t.begin());
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            const auto close = t.find(']');
            if (close == std::string::npos) throw Error("config: unterminated section header");
            flush_station();
            std::string name = t.substr(1, close - 1);
            if (name.rfind("station:", 0) != 0)
                throw Error("config: sections must be [station:<id>]");
            section = name.substr(8);
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw Error("config: expected key = value at line " + std::to_string(lineno));
        std::string key = t.substr(0, eq);
        std::string value = t.substr(eq + 1);
        auto trim = [](std::string& s) {
            while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
        };
        trim(key);
        trim(value);

        if (!section.empty()) {
            if (key == "input") station_input = value;
            else if (key == "threshold") station_thresh = value;
            else throw Error("config: unknown station key " + key);
            continue;
        }
        ExperimentConfig& e = cfg.experiment;
        if (key == "seed") e.seed = std::stoull(value);
        else if (key == "windows") {
            e.window_years.clear();
            for (const std::string& v : split_list(value)) e.window_years.push_back(std::stoi(v));
        } else if (key == "T") {
            e.return_periods.clear();
            for (const std::string& v : split_list(value))
                e.return_periods.push_back(std::stod(v));
        } else if (key == "families") {
            e.families.clear();
            for (const std::string& v : split_list(value)) e.families.push_back(parse_family(v));
        } else if (key == "conventional") e.conventional = value == "true" || value == "1";
        else if (key == "decluster") {
            if (value == "runs") e.decluster = DeclusterMethod::runs;
            else if (value == "intervals") e.decluster = DeclusterMethod::intervals;
            else throw Error("config: decluster must be runs or intervals");
        } else if (key == "run_gap") e.run_gap = std::stoi(value);
        else if (key == "theta_chains") e.theta_chains = std::stoi(value);
        else if (key == "theta_length") e.theta_len = std::stoi(value);
        else if (key == "theta_burn") e.theta_burn = std::stoi(value);
        else if (key == "obs_per_year") e.obs_per_year = std::stod(value);
        else if (key == "out") cfg.out = (base / value).string();
        else throw Error("config: unknown key " + key);
    }
    flush_station();
    if (cfg.stations.empty()) throw Error("config: no stations");
    return cfg;
}

int run_evaluate(const EvaluateArgs& a) {
    Manifest man;
    man.command = "evaluate";
    man.inputs = {{"config", a.config}};

    ParsedConfig cfg = parse_run_config(a.config);
    if (!a.out.empty()) cfg.out = a.out;
    man.seed = cfg.experiment.seed;

    const ExperimentResult result = run_experiment(cfg.stations, cfg.experiment);

    auto tables = open_output(cfg.out, "tables.csv", man);
    tables << "estimator,window_years,T,n,nbias,se_nbias,var,se_var,nmse,se_nmse,failures\n";
    for (const ReportRow& r : result.rows)
        tables << r.estimator << ',' << r.window_years << ',' << fmt_g17(r.return_period) << ','
               << r.stats.n << ',' << fmt_g17(r.stats.nbias) << ',' << fmt_g17(r.stats.se_nbias)
               << ',' << fmt_g17(r.stats.var) << ',' << fmt_g17(r.stats.se_var) << ','
               << fmt_g17(r.stats.nmse) << ',' << fmt_g17(r.stats.se_nmse) << ',' << r.failures
               << '\n';

    auto raw = open_output(cfg.out, "raw.csv", man);
    raw << "station,window_index,estimator,T,ok,q_hat,error\n";
    for (const WindowEstimate& w : result.raw) {
        std::string err = w.error;
        for (char& c : err)
            if (c == ',' || c == '\n') c = ';';
        raw << w.station << ',' << w.window_index << ',' << w.estimator << ','
            << fmt_g17(w.return_period) << ',' << (w.ok ? 1 : 0) << ','
            << (w.ok ? fmt_g17(w.q_hat) : std::string()) << ',' << err << '\n';
    }
    man.write(cfg.out);
    return 0;
}

// ---------------------------------------------------------------- duration

struct DurationArgs {
    std::string input, model, out = ".";
    int chains = 100, length = 2000, burn_in = 100, half_width = 15;
    double obs_per_year = 365.25;
    std::uint64_t seed = 0;
};

int run_duration(const DurationArgs& a) {
    Manifest man;
    man.command = "duration";
    man.seed = a.seed;
    man.inputs = {{"input", a.input},      {"model", a.model},
                  {"chains", a.chains},    {"length", a.length},
                  {"burn_in", a.burn_in},  {"half_width", a.half_width}};

    const DailySeries series = load_series(a.input);
    const EventExtraction obs = extract_annual_events(series, a.half_width);
    if (obs.events.empty()) throw Error("duration: no observed events survived extraction");
    const std::vector<double> obs_curve = mean_curve(obs.events);
    const double obs_mean = d_mean(obs.events);
    const double obs_med = d_med(obs.events);

    const MarkovModel model = model_from_json(a.model);
    const SimulatedDurations sim = simulated_durations(
        model, SimConfig{a.chains, a.length, a.seed, a.burn_in}, a.half_width, a.obs_per_year);

    auto curves = open_output(a.out, "curves.csv", man);
    curves << "offset_days,observed_mean,simulated_mean\n";
    for (int i = 0; i < 2 * a.half_width + 1; ++i)
        curves << (i - a.half_width) << ',' << fmt_g17(obs_curve[i]) << ','
               << fmt_g17(sim.curve[i]) << '\n';

    auto durations = open_output(a.out, "durations.csv", man);
    durations << "metric,observed,simulated,nbias\n";
    durations << "d_mean," << fmt_g17(obs_mean) << ',' << fmt_g17(sim.d_mean) << ','
              << fmt_g17((sim.d_mean - obs_mean) / obs_mean) << '\n';
    durations << "d_med," << fmt_g17(obs_med) << ',' << fmt_g17(sim.d_med) << ','
              << fmt_g17((sim.d_med - obs_med) / obs_med) << '\n';

    man.write(a.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Markov chain model for daily threshold exceedances"};
    app.require_subcommand(1);

    FitArgs fit_args;
    auto* fit = app.add_subcommand("fit", "fit the censored Markov chain model");
    fit->add_option("--input", fit_args.input, "daily series CSV")->required();
    fit->add_option("--threshold", fit_args.thresh, "absolute value or q:<p>");
    fit->add_option("--family", fit_args.family, "dependence family");
    fit->add_option("--seed", fit_args.seed, "random seed");
    fit->add_option("--out", fit_args.out, "output directory");

    SimArgs sim_args;
    auto* sim = app.add_subcommand("simulate", "simulate chains from a fitted model");
    sim->add_option("--model", sim_args.model, "model.json from fit")->required();
    sim->add_option("--chains", sim_args.chains, "number of chains");
    sim->add_option("--length", sim_args.length, "steps per chain (incl. burn-in)");
    sim->add_option("--burn-in", sim_args.burn_in, "steps discarded per chain");
    sim->add_option("--seed", sim_args.seed, "random seed");
    sim->add_option("--out", sim_args.out, "output directory");

    ThetaArgs theta_args;
    auto* theta = app.add_subcommand("theta", "extremal index estimation");
    theta->add_option("--model", theta_args.model, "model.json for the simulation pipeline");
    theta->add_option("--input", theta_args.input, "daily series CSV for the intervals method");
    theta->add_option("--threshold", theta_args.thresh, "threshold for --input mode");
    theta->add_option("--chains", theta_args.chains, "pipeline chains");
    theta->add_option("--length", theta_args.length, "pipeline chain length");
    theta->add_option("--burn-in", theta_args.burn_in, "pipeline burn-in");
    theta->add_option("--bins", theta_args.bins, "histogram bins");
    theta->add_option("--seed", theta_args.seed, "random seed");
    theta->add_option("--out", theta_args.out, "output directory");

    QuantileArgs q_args;
    auto* quant = app.add_subcommand("quantile", "return level computation");
    quant->add_option("--model", q_args.model, "model.json")->required();
    quant->add_option("--mode", q_args.mode, "markov or pot");
    quant->add_option("--T", q_args.periods, "return periods (years)")->delimiter(',');
    quant->add_option("--obs-per-year", q_args.obs_per_year, "observations per year");
    quant->add_option("--theta", q_args.theta, "extremal index override");
    quant->add_option("--cluster-rate", q_args.cluster_rate, "cluster maxima per year (pot)");
    quant->add_option("--chains", q_args.chains, "theta pipeline chains");
    quant->add_option("--length", q_args.length, "theta pipeline chain length");
    quant->add_option("--burn-in", q_args.burn_in, "theta pipeline burn-in");
    quant->add_option("--seed", q_args.seed, "random seed");
    quant->add_option("--out", q_args.out, "output directory");

    DiagnoseArgs d_args;
    auto* diag = app.add_subcommand("diagnose", "asymptotic-dependence diagnostics");
    diag->add_option("--input", d_args.input, "daily series CSV")->required();
    diag->add_option("--omegas", d_args.omegas, "quantile levels")->delimiter(',');
    diag->add_option("--block-len", d_args.block_len, "bootstrap block length");
    diag->add_option("--n-boot", d_args.n_boot, "bootstrap replicates");
    diag->add_option("--level", d_args.level, "confidence level");
    diag->add_option("--max-lag", d_args.max_lag, "ACF/PACF maximum lag");
    diag->add_option("--seed", d_args.seed, "random seed");
    diag->add_option("--out", d_args.out, "output directory");

    EvaluateArgs e_args;
    auto* eval = app.add_subcommand("evaluate", "estimator benchmarking harness");
    eval->add_option("--config", e_args.config, "run configuration file")->required();
    eval->add_option("--out", e_args.out, "output directory override");

    DurationArgs dur_args;
    auto* dur = app.add_subcommand("duration", "flood duration characteristics");
    dur->add_option("--input", dur_args.input, "daily series CSV")->required();
    dur->add_option("--model", dur_args.model, "model.json")->required();
    dur->add_option("--chains", dur_args.chains, "simulation chains");
    dur->add_option("--length", dur_args.length, "simulation chain length");
    dur->add_option("--burn-in", dur_args.burn_in, "simulation burn-in");
    dur->add_option("--half-width", dur_args.half_width, "event window half-width (days)");
    dur->add_option("--obs-per-year", dur_args.obs_per_year, "observations per year");
    dur->add_option("--seed", dur_args.seed, "random seed");
    dur->add_option("--out", dur_args.out, "output directory");

    try {
        app.parse(argc, argv);
        if (*fit) return run_fit(fit_args);
        if (*sim) return run_simulate(sim_args);
        if (*theta) return run_theta(theta_args);
        if (*quant) return run_quantile(q_args);
        if (*diag) return run_diagnose(d_args);
        if (*eval) return run_evaluate(e_args);
        if (*dur) return run_duration(dur_args);
        return 1;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
