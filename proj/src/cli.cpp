// Copyright 2026 The Chronobell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chronobell/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>

#include "chronobell/chronology.hpp"
#include "chronobell/errors.hpp"
#include "chronobell/flash.hpp"
#include "chronobell/lambda_store.hpp"
#include "chronobell/nogo.hpp"
#include "chronobell/report.hpp"

namespace chronobell::cli {

namespace {

class UsageError : public Error {
   public:
    using Error::Error;
};

std::vector<std::string> split_tokens(const std::string& text, const std::string& separators) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (separators.find(ch) != std::string::npos) {
            out.push_back(cur);
            cur.clear();
        } else if (ch != ' ') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

double parse_number(const std::string& token, const std::string& what) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(token, &used);
    } catch (const std::exception&) {
        throw UsageError("cannot parse " + what + " '" + token + "'");
    }
    if (used != token.size() || !std::isfinite(v)) {
        throw UsageError("cannot parse " + what + " '" + token + "'");
    }
    return v;
}

// Parsed once per invocation; every subcommand reads the fields it needs.
struct RunConfig {
    std::string state = "singlet";
    std::string angles;
    std::string chronology;
    std::uint64_t trials = 10000;
    std::string lambda_file;
    std::optional<std::uint64_t> seed;
    std::uint64_t count = 0;
    std::string out;
    std::string csv;
    std::optional<double> tol;
    unsigned workers = 1;
    std::uint64_t block = kDefaultBlockSize;

    std::vector<std::size_t> alphabets{4};
    std::string target = "quantum";
    std::size_t vertex = 0;

    std::size_t sites = 16;
    double sigma = 2.0;
    double spacing = 1.0;
    double rate = 1.0;
    double duration = 4.0;
    std::uint64_t runs = 1000;
    std::string summary;
};

LambdaStream make_stream(const RunConfig& cfg) {
    if (!cfg.lambda_file.empty() && cfg.seed) {
        throw UsageError("pass exactly one of --lambda-file and --seed");
    }
    if (!cfg.lambda_file.empty()) {
        auto file = std::make_shared<const LambdaFile>(LambdaFile::read(cfg.lambda_file));
        return LambdaStream::over_file(std::move(file), "file");
    }
    if (cfg.seed) {
        return LambdaStream::from_seed(*cfg.seed);
    }
    throw UsageError("pass exactly one of --lambda-file and --seed");
}

Json lambda_source_json(const RunConfig& cfg) {
    if (!cfg.lambda_file.empty()) {
        auto file = LambdaFile::read(cfg.lambda_file);
        return Json{{"kind", "file"}, {"count", file.size()}, {"seed", file.seed()}};
    }
    return Json{{"kind", "seed"}, {"seed", *cfg.seed}};
}

void emit(const Json& report, const RunConfig& cfg, std::ostream& out) {
    std::string text = canonical_text(report);
    if (cfg.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw UsageError("cannot write " + cfg.out);
    }
    f << text;
}

std::vector<BlochSetting> settings_for(const std::vector<Vec3>& dirs, Party party) {
    std::vector<BlochSetting> out;
    for (const auto& d : dirs) {
        out.push_back(BlochSetting::along(d, party));
    }
    return out;
}

int cmd_chsh(const RunConfig& cfg, std::ostream& out) {
    if (cfg.angles.empty()) {
        throw UsageError("chsh needs --angles a/a2/b/b2");
    }
    auto dirs = parse_directions(cfg.angles);
    if (dirs.size() != 4) {
        throw UsageError("chsh needs exactly four settings in --angles, got " + std::to_string(dirs.size()));
    }
    auto state = parse_state(cfg.state);
    auto a = BlochSetting::along(dirs[0], Party::A);
    auto a2 = BlochSetting::along(dirs[1], Party::A);
    auto b = BlochSetting::along(dirs[2], Party::B);
    auto b2 = BlochSetting::along(dirs[3], Party::B);

    double canonical = chsh_value(state, a, a2, b, b2);
    auto behavior = quantum_behavior(state, a, a2, b, b2);
    auto facets = chsh_facet_check(behavior, cfg.tol.value_or(kAccumulatedTolerance));

    Json report{
        {"command", "chsh"},
        {"state", to_json(state)},
        {"settings", {{"a", to_json(a)}, {"a2", to_json(a2)}, {"b", to_json(b)}, {"b2", to_json(b2)}}},
        {"correlators",
         {{"E00", correlator(behavior, 0, 0)},
          {"E01", correlator(behavior, 0, 1)},
          {"E10", correlator(behavior, 1, 0)},
          {"E11", correlator(behavior, 1, 1)}}},
        {"chsh_canonical", canonical},
        {"chsh_canonical_expression", "E00+E01+E10-E11"},
        {"abs_chsh", facets.max_value},
        {"facet", to_json(facets.facet)},
        {"local_bound", 2.0},
        {"tsirelson_bound", 2.0 * std::numbers::sqrt2},
        {"violates_local_bound", !facets.local},
    };
    emit(report, cfg, out);
    return kSuccess;
}

int cmd_covariance(const RunConfig& cfg, std::ostream& out) {
    auto state = parse_state(cfg.state);
    auto dirs = parse_directions(cfg.angles.empty() ? "0/0" : cfg.angles);
    if (dirs.size() < 2 || dirs.size() % 2 != 0) {
        throw UsageError("covariance needs an even number of settings: A settings then B settings");
    }
    const std::size_t half = dirs.size() / 2;
    auto as = settings_for({dirs.begin(), dirs.begin() + static_cast<std::ptrdiff_t>(half)}, Party::A);
    auto bs = settings_for({dirs.begin() + static_cast<std::ptrdiff_t>(half), dirs.end()}, Party::B);
    if (cfg.trials == 0) {
        throw UsageError("--trials must be at least 1");
    }
    auto stream = make_stream(cfg);
    SimulationOptions opts{cfg.workers, cfg.block};
    double tol = cfg.tol.value_or(kExactTolerance);

    auto rep = covariance_report(state, as, bs, cfg.trials, stream, opts, tol);

    std::vector<Chronology> chronologies;
    if (cfg.chronology.empty() || cfg.chronology == "ab") chronologies.push_back(Chronology::AB);
    if (cfg.chronology.empty() || cfg.chronology == "ba") chronologies.push_back(Chronology::BA);

    Json estimated = Json::object();
    std::vector<EstimatedTable> tables;
    for (auto c : chronologies) {
        tables.push_back(estimate_table(state, as, bs, c, cfg.trials, stream, opts));
        const auto& est = tables.back();
        auto exact = exact_table(state, as, bs, c);
        double tv = 0;
        for (std::size_t p = 0; p < exact.cells.size(); ++p) {
            tv = std::max(tv, total_variation(est.table.cells[p], exact.cells[p]));
        }
        Json j = to_json(est);
        j["max_total_variation_to_exact"] = tv;
        estimated[to_string(c)] = j;
    }

    Json report{
        {"command", "covariance"},
        {"state", to_json(state)},
        {"lambda_source", lambda_source_json(cfg)},
        {"covariance", to_json(rep)},
        {"exact", to_json(exact_table(state, as, bs, Chronology::AB))},
        {"estimated", estimated},
    };
    emit(report, cfg, out);

    if (!cfg.csv.empty()) {
        std::ofstream f(cfg.csv, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw UsageError("cannot write " + cfg.csv);
        }
        for (std::size_t k = 0; k < tables.size(); ++k) {
            f << "# chronology " << to_string(tables[k].chronology) << "\n";
            write_table_csv(f, tables[k].table, tables[k].standard_errors);
        }
    }
    return rep.distribution_pass ? kSuccess : kFailure;
}

BehaviorVector nogo_target(const RunConfig& cfg) {
    if (cfg.target == "uniform") {
        BehaviorVector p;
        p.fill(0.25);
        return p;
    }
    if (cfg.target == "vertex") {
        if (cfg.vertex >= 16) {
            throw UsageError("--vertex must be in [0, 16)");
        }
        return behavior_of(deterministic_strategy(cfg.vertex));
    }
    if (cfg.target == "quantum") {
        auto dirs = parse_directions(cfg.angles.empty() ? "0/90/45/-45" : cfg.angles);
        if (dirs.size() != 4) {
            throw UsageError("quantum target needs exactly four settings in --angles");
        }
        return quantum_behavior(
            parse_state(cfg.state),
            BlochSetting::along(dirs[0], Party::A),
            BlochSetting::along(dirs[1], Party::A),
            BlochSetting::along(dirs[2], Party::B),
            BlochSetting::along(dirs[3], Party::B));
    }
    throw UsageError("unknown --target '" + cfg.target + "' (quantum, vertex, uniform)");
}

int cmd_nogo(const RunConfig& cfg, std::ostream& out) {
    for (auto l : cfg.alphabets) {
        if (l < 1 || l > kMaxSearchAlphabet) {
            throw SearchSpaceError("--L must be between 1 and " + std::to_string(kMaxSearchAlphabet));
        }
    }
    auto target = nogo_target(cfg);
    double tol = cfg.tol.value_or(1e-6);

    Json searches = Json::array();
    for (auto l : cfg.alphabets) {
        searches.push_back(to_json(exhaustive_nogo_search(l, target, tol, cfg.workers)));
    }
    auto lp = local_membership_lp(target);
    auto facets = chsh_facet_check(target);
    bool agree = lp.local == facets.local;

    Json report{
        {"command", "nogo"},
        {"target", {{"kind", cfg.target}, {"behavior", behavior_to_json(target)}}},
        {"tolerance", tol},
        {"searches", searches},
        {"lp", to_json(lp)},
        {"facet_check", to_json(facets)},
        {"verdicts_agree", agree},
    };
    emit(report, cfg, out);
    return agree ? kSuccess : kOracleDisagreement;
}

GridWavefunction flash_initial_state(const RunConfig& cfg) {
    const std::size_t n = cfg.sites;
    const std::string& s = cfg.state;
    if (s == "pair" || s == "singlet") {
        return GridWavefunction::antisymmetric_pair(n, n / 4, (3 * n) / 4, cfg.spacing);
    }
    if (s == "product") {
        return GridWavefunction::product(
            GridWavefunction::localized(n, n / 4, cfg.spacing), GridWavefunction::uniform(n, cfg.spacing));
    }
    if (s == "single") {
        return GridWavefunction::localized(n, n / 2, cfg.spacing);
    }
    if (s == "uniform") {
        return GridWavefunction::uniform(n, cfg.spacing);
    }
    throw UsageError("unknown flash --state '" + s + "' (pair, product, single, uniform)");
}

int cmd_flash(const RunConfig& cfg, std::ostream& out) {
    if (!(cfg.rate > 0.0)) {
        throw ParameterError("--rate must be positive");
    }
    if (!(cfg.duration > 0.0)) {
        throw ParameterError("--duration must be positive");
    }
    if (cfg.runs == 0) {
        throw UsageError("--runs must be at least 1");
    }
    if (cfg.out.empty()) {
        throw UsageError("flash needs --out for the history file");
    }
    auto kernel = make_hit_kernel(cfg.sites, cfg.sigma, cfg.spacing);
    auto psi0 = flash_initial_state(cfg);
    auto stream = make_stream(cfg);
    FlashParameters params{cfg.rate, cfg.duration};
    FlashEnsembleOptions opts{cfg.workers, cfg.block};

    auto histories = run_flash_ensemble(psi0, kernel, params, cfg.runs, stream, opts);
    {
        std::ofstream f(cfg.out, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw UsageError("cannot write " + cfg.out);
        }
        write_flash_history(f, histories);
    }

    const std::size_t n = cfg.sites;
    double mean = 0;
    std::vector<std::uint64_t> first_hist(n, 0);
    std::uint64_t with_flash = 0;
    for (const auto& h : histories) {
        mean += static_cast<double>(h.flashes.size());
        if (!h.flashes.empty()) {
            ++first_hist[h.flashes.front().site];
            ++with_flash;
        }
    }
    mean /= static_cast<double>(cfg.runs);
    double var = 0;
    for (const auto& h : histories) {
        double d = static_cast<double>(h.flashes.size()) - mean;
        var += d * d;
    }
    var = cfg.runs > 1 ? var / static_cast<double>(cfg.runs - 1) : 0.0;

    // The first hit lands on a uniformly chosen particle.
    std::vector<double> exact_first(n, 0.0);
    for (std::size_t k = 0; k < psi0.particles(); ++k) {
        auto p = flash_distribution(psi0, kernel, k);
        for (std::size_t x = 0; x < n; ++x) {
            exact_first[x] += p[x] / static_cast<double>(psi0.particles());
        }
    }
    double tv = 0;
    if (with_flash > 0) {
        for (std::size_t x = 0; x < n; ++x) {
            tv += std::abs(static_cast<double>(first_hist[x]) / static_cast<double>(with_flash) - exact_first[x]);
        }
        tv /= 2;
    }

    const double expected = cfg.rate * cfg.duration * static_cast<double>(psi0.particles());
    Json summary{
        {"command", "flash"},
        {"parameters",
         {{"sites", n},
          {"sigma", cfg.sigma},
          {"spacing", cfg.spacing},
          {"rate", cfg.rate},
          {"duration", cfg.duration},
          {"runs", cfg.runs},
          {"particles", psi0.particles()},
          {"state", cfg.state},
          {"block", cfg.block}}},
        {"lambda_source", lambda_source_json(cfg)},
        {"history_file", cfg.out},
        {"hit_counts",
         {{"mean", mean},
          {"variance", var},
          {"expected_mean", expected},
          {"standard_error", std::sqrt(expected / static_cast<double>(cfg.runs))}}},
        {"first_flash",
         {{"runs_with_flash", with_flash},
          {"histogram", first_hist},
          {"exact", exact_first},
          {"total_variation", tv}}},
    };
    if (psi0.particles() == 2 && n <= kMaxExactOrderingSites) {
        summary["ordering_invariance"] = to_json(ordering_invariance_exact(psi0, kernel));
        auto div = flash_realization_divergence(psi0, kernel, cfg.runs, stream, opts);
        summary["realization_divergence"] = {
            {"runs", div.runs}, {"diverged", div.diverged}, {"fraction", div.fraction}};
    }

    std::string text = canonical_text(summary);
    if (cfg.summary.empty()) {
        out << text;
    } else {
        std::ofstream f(cfg.summary, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw UsageError("cannot write " + cfg.summary);
        }
        f << text;
    }
    if (summary.contains("ordering_invariance") && !summary["ordering_invariance"]["pass"].get<bool>()) {
        return kOracleDisagreement;
    }
    return kSuccess;
}

int cmd_gen_lambda(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.seed) {
        throw UsageError("gen-lambda needs --seed");
    }
    if (cfg.out.empty()) {
        throw UsageError("gen-lambda needs --out");
    }
    auto file = generate_lambda_file(*cfg.seed, cfg.count);
    file.write(cfg.out);
    out << canonical_text(Json{
        {"command", "gen-lambda"},
        {"path", cfg.out},
        {"seed", file.seed()},
        {"count", file.size()},
        {"bytes", LambdaFile::kHeaderSize + 8 * file.size()},
    });
    return kSuccess;
}

}  // namespace

TwoQubitState parse_state(const std::string& text) {
    if (text == "singlet") return make_singlet();
    if (text == "phi-plus") {
        const double h = 1.0 / std::numbers::sqrt2;
        return TwoQubitState({Amplitude{h}, Amplitude{0}, Amplitude{0}, Amplitude{h}});
    }
    if (text == "00") return make_basis_state(0, 0);
    if (text == "01") return make_basis_state(0, 1);
    if (text == "10") return make_basis_state(1, 0);
    if (text == "11") return make_basis_state(1, 1);
    auto tokens = split_tokens(text, ",");
    if (tokens.size() != 4) {
        throw UsageError("state must be a fixture name or four comma-separated amplitudes, got '" + text + "'");
    }
    std::array<Amplitude, 4> amps{};
    for (std::size_t i = 0; i < 4; ++i) {
        auto parts = split_tokens(tokens[i], ":");
        if (parts.size() > 2) {
            throw UsageError("amplitude '" + tokens[i] + "' must be re or re:im");
        }
        double re = parse_number(parts[0], "amplitude");
        double im = parts.size() == 2 ? parse_number(parts[1], "amplitude") : 0.0;
        amps[i] = {re, im};
    }
    return TwoQubitState::normalized(amps);
}

std::vector<Vec3> parse_directions(const std::string& text) {
    std::vector<Vec3> out;
    for (const auto& token : split_tokens(text, "/,")) {
        if (token.empty()) {
            throw UsageError("empty setting in '" + text + "'");
        }
        auto parts = split_tokens(token, ":");
        if (parts.size() == 3) {
            Vec3 v{parse_number(parts[0], "direction"), parse_number(parts[1], "direction"),
                   parse_number(parts[2], "direction")};
            if (v.norm() == 0.0) {
                throw InvalidSettingError("zero direction '" + token + "'");
            }
            out.push_back(v);
        } else if (parts.size() == 1) {
            double t = parse_number(token, "angle") * std::numbers::pi / 180.0;
            out.push_back({std::sin(t), 0.0, std::cos(t)});
        } else {
            throw UsageError("setting '" + token + "' must be an angle or x:y:z");
        }
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Chronology-ordered Bell-test simulation and locality analysis"};
    app.name(args.empty() ? "chronobell" : args[0]);
    app.require_subcommand(1);

    auto add_state = [&](CLI::App* sub) {
        sub->add_option("--state", cfg.state, "State fixture or amplitude list");
    };
    auto add_angles = [&](CLI::App* sub, const std::string& help) {
        sub->add_option("--angles", cfg.angles, help);
    };
    auto add_lambda = [&](CLI::App* sub) {
        auto* file = sub->add_option("--lambda-file", cfg.lambda_file, "Lambda file to read")->check(CLI::ExistingFile);
        auto* seed = sub->add_option("--seed", cfg.seed, "Seed of the counter-generator lambda stream");
        file->excludes(seed);
        sub->add_option("--block", cfg.block, "Lambda words reserved per trial")->check(CLI::PositiveNumber);
        sub->add_option("--workers", cfg.workers, "Worker threads (does not change results)")
            ->check(CLI::PositiveNumber);
    };

    auto* chsh = app.add_subcommand("chsh", "Exact CHSH value and facet certificate");
    add_state(chsh);
    add_angles(chsh, "a/a2/b/b2 in degrees or x:y:z");
    chsh->add_option("--out", cfg.out, "Report path");
    chsh->add_option("--tol", cfg.tol, "Local-bound tolerance");

    auto* cov = app.add_subcommand("covariance", "Distribution covariance and realization divergence");
    add_state(cov);
    add_angles(cov, "A settings then B settings, e.g. 0/90/45/-45");
    add_lambda(cov);
    cov->add_option("--chronology", cfg.chronology, "Estimated table to emit")->check(CLI::IsMember({"ab", "ba"}));
    cov->add_option("--trials", cfg.trials, "Trials per setting pair");
    cov->add_option("--out", cfg.out, "Report path");
    cov->add_option("--csv", cfg.csv, "CSV path for the estimated tables");
    cov->add_option("--tol", cfg.tol, "Distribution covariance tolerance");

    auto* nogo = app.add_subcommand("nogo", "Exhaustive covariant-strategy search and locality tests");
    add_state(nogo);
    add_angles(nogo, "a0/a1/b0/b1 for the quantum target");
    nogo->add_option("--L", cfg.alphabets, "Lambda alphabet sizes to search")->delimiter(',');
    nogo->add_option("--target", cfg.target, "quantum, vertex or uniform");
    nogo->add_option("--vertex", cfg.vertex, "Deterministic strategy index for --target vertex");
    nogo->add_option("--tol", cfg.tol, "Search match tolerance");
    nogo->add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber);
    nogo->add_option("--out", cfg.out, "Report path");

    auto* flash = app.add_subcommand("flash", "Toy flash process ensemble");
    flash->add_option("--state", cfg.state, "pair, product, single or uniform")->default_str("pair");
    add_lambda(flash);
    flash->add_option("--sites", cfg.sites, "Grid sites");
    flash->add_option("--sigma", cfg.sigma, "Hit width");
    flash->add_option("--spacing", cfg.spacing, "Grid spacing");
    flash->add_option("--rate", cfg.rate, "Hits per particle per time unit");
    flash->add_option("--duration", cfg.duration, "Process duration");
    flash->add_option("--runs", cfg.runs, "Independent runs");
    flash->add_option("--out", cfg.out, "History file path");
    flash->add_option("--summary", cfg.summary, "Summary path (default stdout)");

    auto* gen = app.add_subcommand("gen-lambda", "Write a lambda file");
    gen->add_option("--seed", cfg.seed, "Generator seed");
    gen->add_option("--count", cfg.count, "Number of words")->required();
    gen->add_option("--out", cfg.out, "Output path");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) {
        reversed.pop_back();
    }
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    }
    if (flash->parsed() && cfg.state == "singlet") {
        cfg.state = "pair";
    }

    CLI::App* active = app.get_subcommands().front();
    try {
        if (active == chsh) return cmd_chsh(cfg, out);
        if (active == cov) return cmd_covariance(cfg, out);
        if (active == nogo) return cmd_nogo(cfg, out);
        if (active == flash) return cmd_flash(cfg, out);
        return cmd_gen_lambda(cfg, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n" << active->help();
        return kUsage;
    } catch (const StreamExhaustedError& e) {
        err << "error: " << e.what() << "\n";
        return kLambdaExhausted;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace chronobell::cli
