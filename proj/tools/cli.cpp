#include "cli.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include "ssf/error.hpp"
#include "ssf/reduction.hpp"
#include "ssf/spectral_shift.hpp"
#include "ssf/trace_formula.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

namespace ssf::cli {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

const std::vector<int> kAuditPowers{-4, -2, -1, 1, 2, 4};
constexpr double kAuditT = 2.0;
constexpr int kAuditSamples = 21;

double parse_real(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("cannot parse " + what + " from '" + s + "'");
    }
}

fs::path output_dir(const RunConfig& cfg) {
    fs::path dir = cfg.out;
    if (dir.empty()) {
        const char* env = std::getenv("SSF_OUTPUT_DIR");
        dir = (env && *env) ? fs::path(env) : fs::path(".");
    }
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
    return dir;
}

void write_file(const fs::path& path, const std::string& text, RunResult& result) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw ConfigError("cannot write " + path.string());
    os << text;
    result.files.push_back(path);
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

// Runs body(i) for i in [0, count), on `threads` workers when > 1.
void for_each_index(int count, int threads, const std::function<void(int)>& body) {
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i = next++; i < count; i = next++) body(i);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

struct SymbolCase {
    std::string label;
    TrigPolynomial p;
};

std::vector<SymbolCase> verify_symbols(const RunConfig& cfg, std::uint64_t trial_seed) {
    std::vector<SymbolCase> out;
    for (int r = -cfg.rmax; r <= cfg.rmax; ++r) out.push_back({"z^" + std::to_string(r), TrigPolynomial::monomial(r)});
    Rng rng(trial_seed ^ 0x9e3779b97f4a7c15ULL);
    for (int k = 0; k < 3; ++k) {
        out.push_back({"random_" + std::to_string(k), random_trig_polynomial(rng, std::max(1, cfg.rmax))});
    }
    return out;
}

int run_verify(const RunConfig& cfg, const fs::path& dir, RunResult& result, std::ostream& log) {
    struct Row {
        std::string symbol;
        VerificationReport rep;
    };
    std::vector<std::vector<Row>> trials(static_cast<std::size_t>(cfg.trials));
    const QuadratureRule rule = gauss_legendre(cfg.s_nodes);

    for_each_index(cfg.trials, cfg.threads, [&](int i) {
        const std::uint64_t s = cfg.seed + static_cast<std::uint64_t>(i);
        const RandomPair pair = random_pair(s, cfg.dim, cfg.scale);
        const SpectralShift shift(pair.u0, pair.a, rule);
        auto& rows = trials[static_cast<std::size_t>(i)];
        for (const auto& sym : verify_symbols(cfg, s)) {
            rows.push_back({sym.label, verify(shift, pair.u0, pair.u, pair.a, sym.p, cfg.tol)});
        }
    });

    int failed = 0;
    int total = 0;
    double worst = 0.0;
    json arr = json::array();
    std::ostringstream csv;
    csv << "trial,seed,symbol,lhs_re,lhs_im,rhs_re,rhs_im,abs_err,rel_err,s_nodes_used,tolerance,pass\n";
    for (std::size_t i = 0; i < trials.size(); ++i) {
        const std::uint64_t s = cfg.seed + i;
        for (const auto& row : trials[i]) {
            const auto& r = row.rep;
            ++total;
            if (!r.pass) ++failed;
            worst = std::max(worst, r.rel_err);
            arr.push_back({{"trial", i},
                           {"seed", s},
                           {"symbol", row.symbol},
                           {"lhs", complex_json(r.lhs)},
                           {"rhs", complex_json(r.rhs)},
                           {"abs_err", r.abs_err},
                           {"rel_err", r.rel_err},
                           {"s_nodes_used", r.s_nodes_used},
                           {"tolerance", r.tolerance},
                           {"pass", r.pass}});
            csv << i << ',' << s << ',' << row.symbol << ',' << format_real(r.lhs.real()) << ','
                << format_real(r.lhs.imag()) << ',' << format_real(r.rhs.real()) << ',' << format_real(r.rhs.imag())
                << ',' << format_real(r.abs_err) << ',' << format_real(r.rel_err) << ',' << r.s_nodes_used << ','
                << format_real(r.tolerance) << ',' << (r.pass ? "true" : "false") << '\n';
        }
    }
    if (cfg.format.value_or(Format::Json) == Format::Json) {
        write_file(dir / "verify.json", arr.dump(2) + "\n", result);
    } else {
        write_file(dir / "verify.csv", csv.str(), result);
    }
    log << "verify: " << total << " checks, " << failed << " failed, max rel_err " << format_real(worst) << '\n';
    return failed == 0 ? 0 : 1;
}

int run_eta(const RunConfig& cfg, const fs::path& dir, RunResult& result, std::ostream& log) {
    const RandomPair pair = random_pair(cfg.seed, cfg.dim, cfg.scale);
    const SpectralShift shift(pair.u0, pair.a, gauss_legendre(cfg.s_nodes));
    const EtaProfile prof = shift.profile(cfg.grid);
    const double bound = kPi / 2.0 * pair.a.squaredNorm();
    const bool pass = prof.l1_eta0 <= bound + 1e-8 && prof.l1_eta0_exact <= bound + 1e-8 && prof.imag_residue <= 1e-10;

    json summary = {{"dim", cfg.dim},
                    {"seed", cfg.seed},
                    {"scale", cfg.scale},
                    {"s_nodes", cfg.s_nodes},
                    {"grid", cfg.grid},
                    {"mean", prof.mean},
                    {"l1_eta0", prof.l1_eta0},
                    {"l1_eta0_exact", prof.l1_eta0_exact},
                    {"bound", bound},
                    {"imag_residue", prof.imag_residue},
                    {"pass", pass}};
    if (cfg.format.value_or(Format::Csv) == Format::Csv) {
        std::ostringstream csv;
        csv << "t,eta,eta0\n";
        for (std::size_t j = 0; j < prof.grid.size(); ++j) {
            csv << format_real(prof.grid[j]) << ',' << format_real(prof.eta[j]) << ',' << format_real(prof.eta0[j])
                << '\n';
        }
        write_file(dir / "eta.csv", csv.str(), result);
    } else {
        summary["t"] = prof.grid;
        summary["eta"] = prof.eta;
        summary["eta0"] = prof.eta0;
    }
    write_file(dir / "eta.json", summary.dump(2) + "\n", result);
    log << "eta: l1_eta0 " << format_real(prof.l1_eta0) << " bound " << format_real(bound)
        << (pass ? " ok" : " VIOLATED") << '\n';
    return pass ? 0 : 1;
}

int run_converge(const RunConfig& cfg, const fs::path& dir, RunResult& result, std::ostream& log) {
    WvnSetup setup;
    setup.ambient = cfg.ambient;
    setup.L = cfg.rank_L;
    setup.seed = cfg.seed;
    const WvnInstance inst = make_wvn_instance(setup);
    const auto rows = convergence_study(inst, TrigPolynomial::monomial(cfg.power), cfg.ranks);
    const bool pass = rows.back().abs_diff <= cfg.threshold && rows.back().abs_diff <= rows.front().abs_diff;

    if (cfg.format.value_or(Format::Csv) == Format::Csv) {
        std::ostringstream csv;
        csv << "rank,compressed_trace_re,compressed_trace_im,abs_diff\n";
        for (const auto& r : rows) {
            csv << r.n << ',' << format_real(r.compressed_trace.real()) << ','
                << format_real(r.compressed_trace.imag()) << ',' << format_real(r.abs_diff) << '\n';
        }
        write_file(dir / "converge.csv", csv.str(), result);
    } else {
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back({{"rank", r.n},
                           {"projection_rank", r.rank},
                           {"compressed_trace", complex_json(r.compressed_trace)},
                           {"full_trace", complex_json(r.full_trace)},
                           {"abs_diff", r.abs_diff}});
        }
        json doc = {{"ambient", cfg.ambient}, {"L", cfg.rank_L}, {"power", cfg.power},
                    {"threshold", cfg.threshold}, {"pass", pass}, {"rows", arr}};
        write_file(dir / "converge.json", doc.dump(2) + "\n", result);
    }
    log << "converge: final abs_diff " << format_real(rows.back().abs_diff) << (pass ? " ok" : " FAILED") << '\n';
    return pass ? 0 : 1;
}

int run_resolvent(const RunConfig& cfg, const fs::path& dir, RunResult& result, std::ostream& log) {
    const RandomPair pair = random_pair(cfg.seed, cfg.dim, cfg.scale);
    const ResolventReport rep = resolvent_check(pair.u0, pair.u, pair.a, cfg.z, cfg.terms, cfg.tol, cfg.s_nodes);
    const auto& v = rep.series;
    if (cfg.format.value_or(Format::Json) == Format::Json) {
        json doc = {{"z", complex_json(cfg.z)},
                    {"terms", rep.terms},
                    {"tail_bound", rep.tail_bound},
                    {"lhs", complex_json(v.lhs)},
                    {"rhs", complex_json(v.rhs)},
                    {"abs_err", v.abs_err},
                    {"rel_err", v.rel_err},
                    {"s_nodes_used", v.s_nodes_used},
                    {"tolerance", v.tolerance},
                    {"direct_lhs", complex_json(rep.direct_lhs)},
                    {"series_gap", rep.series_gap},
                    {"pass", rep.pass}};
        write_file(dir / "resolvent.json", doc.dump(2) + "\n", result);
    } else {
        std::ostringstream csv;
        csv << "z_re,z_im,terms,lhs_re,lhs_im,rhs_re,rhs_im,abs_err,rel_err,direct_lhs_re,direct_lhs_im,series_gap,"
               "pass\n";
        csv << format_real(cfg.z.real()) << ',' << format_real(cfg.z.imag()) << ',' << rep.terms << ','
            << format_real(v.lhs.real()) << ',' << format_real(v.lhs.imag()) << ',' << format_real(v.rhs.real()) << ','
            << format_real(v.rhs.imag()) << ',' << format_real(v.abs_err) << ',' << format_real(v.rel_err) << ','
            << format_real(rep.direct_lhs.real()) << ',' << format_real(rep.direct_lhs.imag()) << ','
            << format_real(rep.series_gap) << ',' << (rep.pass ? "true" : "false") << '\n';
        write_file(dir / "resolvent.csv", csv.str(), result);
    }
    log << "resolvent: abs_err " << format_real(v.abs_err) << " series_gap " << format_real(rep.series_gap)
        << (rep.pass ? " ok" : " FAILED") << '\n';
    return rep.pass ? 0 : 1;
}

int run_bounds(const RunConfig& cfg, const fs::path& dir, RunResult& result, std::ostream& log) {
    WvnSetup setup;
    setup.ambient = cfg.ambient;
    setup.L = cfg.rank_L;
    setup.seed = cfg.seed;
    const WvnInstance inst = make_wvn_instance(setup);
    const auto grid = symmetric_grid(kAuditT, kAuditSamples);

    json arr = json::array();
    std::ostringstream csv;
    csv << "n,audit,name,value,bound,holds\n";
    int violations = 0;
    for (int n : cfg.ranks) {
        const ProjectionBasis p = build_projection(inst.h0dec, inst.f, inst.window, n);
        const std::pair<const char*, AuditReport> audits[] = {
            {"projection", audit_projection_estimates(p, inst, kAuditPowers)},
            {"perturbation", audit_perturbation_estimates(p, inst, kAuditT, kAuditPowers, grid)},
            {"compression", audit_compression_estimates(p, inst, kAuditT, kAuditPowers, kAuditPowers, grid)},
        };
        for (const auto& [name, rep] : audits) {
            json checks = json::array();
            for (const auto& c : rep.checks) {
                checks.push_back({{"name", c.name}, {"value", c.value}, {"bound", c.bound}, {"holds", c.holds}});
                csv << n << ',' << name << ',' << c.name << ',' << format_real(c.value) << ',' << format_real(c.bound)
                    << ',' << (c.holds ? "true" : "false") << '\n';
                if (!c.holds) ++violations;
            }
            arr.push_back({{"n", n},
                           {"rank", p.rank()},
                           {"audit", name},
                           {"all_hold", rep.all_hold()},
                           {"worst_ratio", rep.worst_ratio()},
                           {"checks", checks}});
        }
    }
    if (cfg.format.value_or(Format::Json) == Format::Json) {
        write_file(dir / "bounds.json", arr.dump(2) + "\n", result);
    } else {
        write_file(dir / "bounds.csv", csv.str(), result);
    }
    log << "bounds: " << violations << " violations\n";
    return violations == 0 ? 0 : 1;
}

}  // namespace

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Command parse_command(const std::string& name) {
    if (name == "verify") return Command::Verify;
    if (name == "eta") return Command::Eta;
    if (name == "converge") return Command::Converge;
    if (name == "resolvent") return Command::Resolvent;
    if (name == "bounds") return Command::Bounds;
    throw ConfigError("unknown command '" + name + "'");
}

std::string command_name(Command c) {
    switch (c) {
        case Command::Verify: return "verify";
        case Command::Eta: return "eta";
        case Command::Converge: return "converge";
        case Command::Resolvent: return "resolvent";
        case Command::Bounds: return "bounds";
    }
    return "?";
}

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    throw ConfigError("unknown format '" + name + "' (csv or json)");
}

Complex parse_complex(const std::string& raw) {
    std::string s;
    for (char c : raw) {
        if (c != ' ') s += c;
    }
    if (s.empty()) throw ConfigError("empty complex number");
    if (const auto comma = s.find(','); comma != std::string::npos) {
        return {parse_real(s.substr(0, comma), "real part"), parse_real(s.substr(comma + 1), "imaginary part")};
    }
    if (s.back() != 'i') return {parse_real(s, "complex number"), 0.0};
    const std::string body = s.substr(0, s.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag_of = [](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return parse_real(t, "imaginary part");
    };
    if (split == std::string::npos) return {0.0, imag_of(body)};
    return {parse_real(body.substr(0, split), "real part"), imag_of(body.substr(split))};
}

void validate(const RunConfig& c) {
    auto need = [](bool ok, const std::string& msg) {
        if (!ok) throw ConfigError(msg);
    };
    need(c.dim >= 1, "dim must be >= 1");
    need(c.trials >= 1, "trials must be >= 1");
    need(c.scale > 0.0 && c.scale < kPi, "scale must lie in (0, pi)");
    need(c.rmax >= 0, "rmax must be >= 0");
    need(c.s_nodes >= 1, "s-nodes must be >= 1");
    need(c.grid >= 2, "grid must be >= 2");
    need(c.tol > 0.0 && c.tol < 1.0, "tol must lie in (0, 1)");
    need(c.ambient >= 1, "ambient must be >= 1");
    need(c.threads >= 1, "threads must be >= 1");
    need(c.rank_L >= 1 && c.rank_L <= c.ambient, "rank-L must lie in [1, ambient]");
    need(c.threshold > 0.0, "threshold must be positive");
    need(c.terms >= 0, "terms must be >= 0");
    need(!c.ranks.empty(), "ranks must not be empty");
    for (std::size_t k = 0; k < c.ranks.size(); ++k) {
        need(c.ranks[k] >= 1, "ranks must be positive");
        if (k > 0) need(c.ranks[k] > c.ranks[k - 1], "ranks must ascend");
    }
    if (c.command == Command::Converge) {
        need(c.ambient >= 4 * c.ranks.back(), "converge needs ambient >= 4 x the largest rank");
    }
    if (c.command == Command::Resolvent) {
        need(std::isfinite(c.z.real()) && std::isfinite(c.z.imag()), "z must be finite");
        need(std::abs(std::abs(c.z) - 1.0) >= 1e-6, "z must stay off the unit circle");
    }
}

RunConfig apply_json(RunConfig cfg, const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    try {
        for (const auto& [key, v] : doc.items()) {
            if (key == "command") cfg.command = parse_command(v.get<std::string>());
            else if (key == "dim") cfg.dim = v.get<int>();
            else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
            else if (key == "trials") cfg.trials = v.get<int>();
            else if (key == "scale") cfg.scale = v.get<double>();
            else if (key == "rmax") cfg.rmax = v.get<int>();
            else if (key == "s_nodes") cfg.s_nodes = v.get<int>();
            else if (key == "grid") cfg.grid = v.get<int>();
            else if (key == "tol") cfg.tol = v.get<double>();
            else if (key == "ambient") cfg.ambient = v.get<int>();
            else if (key == "ranks") cfg.ranks = v.get<std::vector<int>>();
            else if (key == "z") {
                if (v.is_string()) cfg.z = parse_complex(v.get<std::string>());
                else if (v.is_number()) cfg.z = {v.get<double>(), 0.0};
                else if (v.is_array() && v.size() == 2) cfg.z = {v[0].get<double>(), v[1].get<double>()};
                else throw ConfigError("z must be a string, a number or [re, im]");
            }
            else if (key == "out") cfg.out = v.get<std::string>();
            else if (key == "format") cfg.format = parse_format(v.get<std::string>());
            else if (key == "threads") cfg.threads = v.get<int>();
            else if (key == "rank_L") cfg.rank_L = v.get<int>();
            else if (key == "power") cfg.power = v.get<int>();
            else if (key == "threshold") cfg.threshold = v.get<double>();
            else if (key == "terms") cfg.terms = v.get<int>();
            else throw ConfigError("unknown config key '" + key + "'");
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config has a value of the wrong type: ") + e.what());
    }
    return cfg;
}

RunResult run(const RunConfig& cfg, std::ostream& log) {
    validate(cfg);
    const fs::path dir = output_dir(cfg);
    RunResult result;
    switch (cfg.command) {
        case Command::Verify: result.exit_code = run_verify(cfg, dir, result, log); break;
        case Command::Eta: result.exit_code = run_eta(cfg, dir, result, log); break;
        case Command::Converge: result.exit_code = run_converge(cfg, dir, result, log); break;
        case Command::Resolvent: result.exit_code = run_resolvent(cfg, dir, result, log); break;
        case Command::Bounds: result.exit_code = run_bounds(cfg, dir, result, log); break;
    }
    return result;
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectral shift and second-order trace formula checks for unitary pairs"};
    std::string command;
    std::string config_path;
    RunConfig flags;
    std::string z_text;
    std::string format_text;
    std::string out_text;

    app.add_option("command", command, "verify | eta | converge | resolvent | bounds");
    app.add_option("--config", config_path, "JSON file with default settings; flags win");
    auto* o_dim = app.add_option("--dim", flags.dim, "matrix dimension");
    auto* o_seed = app.add_option("--seed", flags.seed, "base seed");
    auto* o_trials = app.add_option("--trials", flags.trials, "random pairs for verify");
    auto* o_scale = app.add_option("--scale", flags.scale, "operator norm of A, in (0, pi)");
    auto* o_rmax = app.add_option("--rmax", flags.rmax, "monomials z^r with |r| <= rmax");
    auto* o_snodes = app.add_option("--s-nodes", flags.s_nodes, "Gauss-Legendre nodes in s");
    auto* o_grid = app.add_option("--grid", flags.grid, "eta grid points on [0, 2pi]");
    auto* o_tol = app.add_option("--tol", flags.tol, "relative tolerance");
    auto* o_ambient = app.add_option("--ambient", flags.ambient, "ambient dimension for converge and bounds");
    auto* o_ranks = app.add_option("--ranks", flags.ranks, "window cell counts n, ascending")->delimiter(',');
    auto* o_z = app.add_option("--z", z_text, "resolvent point, e.g. 0.5, -0.3+0.4i or 2,0");
    auto* o_out = app.add_option("--out", out_text, "output directory (default $SSF_OUTPUT_DIR or .)");
    auto* o_format = app.add_option("--format", format_text, "csv or json");
    auto* o_threads = app.add_option("--threads", flags.threads, "worker threads for verify trials");
    auto* o_rank_l = app.add_option("--rank-L", flags.rank_L, "rank of A for converge and bounds");
    auto* o_power = app.add_option("--power", flags.power, "converge uses p = z^power");
    auto* o_threshold = app.add_option("--threshold", flags.threshold, "converge pass threshold");
    auto* o_terms = app.add_option("--terms", flags.terms, "resolvent expansion terms (0: automatic)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    RunConfig cfg;
    try {
        if (!config_path.empty()) {
            std::ifstream is(config_path);
            if (!is) throw ConfigError("cannot read config file " + config_path);
            std::stringstream ss;
            ss << is.rdbuf();
            cfg = apply_json(cfg, ss.str());
        }
        if (!command.empty()) cfg.command = parse_command(command);
        else if (config_path.empty()) throw ConfigError("missing command");
        if (o_dim->count()) cfg.dim = flags.dim;
        if (o_seed->count()) cfg.seed = flags.seed;
        if (o_trials->count()) cfg.trials = flags.trials;
        if (o_scale->count()) cfg.scale = flags.scale;
        if (o_rmax->count()) cfg.rmax = flags.rmax;
        if (o_snodes->count()) cfg.s_nodes = flags.s_nodes;
        if (o_grid->count()) cfg.grid = flags.grid;
        if (o_tol->count()) cfg.tol = flags.tol;
        if (o_ambient->count()) cfg.ambient = flags.ambient;
        if (o_ranks->count()) cfg.ranks = flags.ranks;
        if (o_z->count()) cfg.z = parse_complex(z_text);
        if (o_out->count()) cfg.out = out_text;
        if (o_format->count()) cfg.format = parse_format(format_text);
        if (o_threads->count()) cfg.threads = flags.threads;
        if (o_rank_l->count()) cfg.rank_L = flags.rank_L;
        if (o_power->count()) cfg.power = flags.power;
        if (o_threshold->count()) cfg.threshold = flags.threshold;
        if (o_terms->count()) cfg.terms = flags.terms;

        const RunResult result = run(cfg, out);
        for (const auto& f : result.files) out << "wrote " << f.string() << '\n';
        return result.exit_code;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        switch (e.code()) {
            case ErrorCode::InvalidArgument:
            case ErrorCode::DimensionMismatch:
            case ErrorCode::OnUnitCircle:
            case ErrorCode::PhaseTooClose:
            case ErrorCode::BadWindow: return 2;
            default: return 1;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace ssf::cli
