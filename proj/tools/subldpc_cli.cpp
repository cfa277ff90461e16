// Command-line front end: construct codes, run density-evolution analyses,
// Monte Carlo decoding campaigns and subspace-concentration experiments.
// All commands are deterministic for a fixed --seed; wall-clock measurements
// are confined to the JSON "meta" block so primary output is byte-stable.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "subldpc/subldpc.hpp"

namespace {

using nlohmann::json;
using namespace subldpc;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_text(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + out_path + " for writing");
    os << text;
}

/// Parse one --epsilon argument: either a plain value or an inclusive range
/// "a:b:step".
std::vector<double> parse_epsilon_arg(const std::string& arg) {
    const auto c1 = arg.find(':');
    if (c1 == std::string::npos) return {std::stod(arg)};
    const auto c2 = arg.find(':', c1 + 1);
    if (c2 == std::string::npos) {
        throw ParamError("epsilon range must be a:b:step, got '" + arg + "'");
    }
    const double a = std::stod(arg.substr(0, c1));
    const double b = std::stod(arg.substr(c1 + 1, c2 - c1 - 1));
    const double step = std::stod(arg.substr(c2 + 1));
    if (!(step > 0.0)) throw ParamError("epsilon range step must be positive");
    std::vector<double> values;
    const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9));
    for (std::size_t i = 0; i <= count; ++i) values.push_back(a + static_cast<double>(i) * step);
    return values;
}

std::vector<double> expand_epsilons(const std::vector<std::string>& args) {
    std::vector<double> values;
    for (const auto& a : args) {
        const auto part = parse_epsilon_arg(a);
        values.insert(values.end(), part.begin(), part.end());
    }
    if (values.empty()) throw ParamError("at least one --epsilon value is required");
    for (double e : values) {
        if (!(e >= 0.0 && e <= 1.0)) throw DomainError("epsilon must lie in [0, 1]");
    }
    return values;
}

struct CommonOpts {
    std::string out;
    std::string format = "csv";
};

void add_output_opts(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--out", opts.out, "output path (default: stdout)");
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

// ---------------------------------------------------------------- construct

struct ConstructOpts {
    unsigned dl = 3, dr = 6, L = 0;
    std::size_t M = 1, m = 1;
    std::uint32_t q = 2;
    std::uint64_t seed = 1;
    std::string out;
};

int run_construct(const ConstructOpts& o) {
    Rng rng(o.seed);
    ParityCheckCode code = o.L > 0 ? build_coupled(o.dl, o.dr, o.L, o.M, o.m, o.q, rng)
                                   : build_regular(o.dl, o.dr, o.M, o.m, o.q, rng);
    code.meta.seed = o.seed;
    if (o.out.empty()) {
        write_code(std::cout, code);
    } else {
        write_code(o.out, code);
        std::cerr << "wrote " << code.n_checks << " checks x " << code.n_vars
                  << " variables to " << o.out << "\n";
    }
    return 0;
}

// ----------------------------------------------------------------------- de

int emit_trace(const std::vector<double>& xs, const CommonOpts& out) {
    if (out.format == "json") {
        json j;
        j["schema"] = 1;
        j["trace"] = json::array();
        for (std::size_t t = 0; t < xs.size(); ++t) {
            j["trace"].push_back({{"t", t}, {"xi", xs[t]}});
        }
        write_text(out.out, j.dump() + "\n");
    } else {
        std::ostringstream os;
        os << "t,xi\n";
        for (std::size_t t = 0; t < xs.size(); ++t) os << t << ',' << fmt_double(xs[t]) << '\n';
        write_text(out.out, os.str());
    }
    return 0;
}

int emit_scalar(const std::string& name, double value, const CommonOpts& out) {
    if (out.format == "json") {
        json j;
        j["schema"] = 1;
        j[name] = value;
        write_text(out.out, j.dump() + "\n");
    } else {
        write_text(out.out, name + "\n" + fmt_double(value) + "\n");
    }
    return 0;
}

// ----------------------------------------------------------------- simulate

struct SimulateOpts {
    std::string code_path;
    std::vector<std::string> epsilon_args;
    std::size_t trials = 100;
    std::size_t max_iter = 100;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    bool peeling = false;
};

std::string records_csv(const CampaignResult& r) {
    std::ostringstream os;
    os << "trial,epsilon,status,iterations,max_final_dim,truth_violations\n";
    for (const auto& rec : r.records) {
        os << rec.trial << ',' << fmt_double(rec.epsilon) << ',' << to_string(rec.status) << ','
           << rec.iterations_used << ',' << rec.max_final_dim << ',' << rec.truth_violations
           << '\n';
    }
    return os.str();
}

std::string summary_csv(const CampaignResult& r) {
    std::ostringstream os;
    os << "epsilon,trials,block_errors,block_error_rate,wilson_lo,wilson_hi\n";
    for (const auto& s : r.summaries) {
        os << fmt_double(s.epsilon) << ',' << s.trials << ',' << s.block_errors << ','
           << fmt_double(s.block_error_rate) << ',' << fmt_double(s.wilson.lo) << ','
           << fmt_double(s.wilson.hi) << '\n';
    }
    return os.str();
}

int run_simulate(const SimulateOpts& o, const CommonOpts& out) {
    const ParityCheckCode code = read_code(o.code_path);
    const auto epsilons = expand_epsilons(o.epsilon_args);
    for (double e : epsilons) {
        if (!ChannelSpec(code.q, code.m, e).epsilon_integral()) {
            std::cerr << "warning: epsilon " << fmt_double(e) << " times m = " << code.m
                      << " is not integral; noise dimension is rounded\n";
        }
    }
    const CampaignResult r =
        run_campaign(code, epsilons, o.trials, o.max_iter, o.seed, o.threads, o.peeling);

    if (out.format == "json") {
        json j;
        j["schema"] = 1;
        j["records"] = json::array();
        for (const auto& rec : r.records) {
            j["records"].push_back({{"trial", rec.trial},
                                    {"epsilon", rec.epsilon},
                                    {"status", to_string(rec.status)},
                                    {"iterations", rec.iterations_used},
                                    {"max_final_dim", rec.max_final_dim},
                                    {"truth_violations", rec.truth_violations}});
        }
        j["summary"] = json::array();
        for (const auto& s : r.summaries) {
            j["summary"].push_back({{"epsilon", s.epsilon},
                                    {"trials", s.trials},
                                    {"block_errors", s.block_errors},
                                    {"block_error_rate", s.block_error_rate},
                                    {"wilson_lo", s.wilson.lo},
                                    {"wilson_hi", s.wilson.hi}});
        }
        j["meta"] = {{"wall_ms_total", r.wall_ms_total}, {"seed", o.seed}};
        write_text(out.out, j.dump() + "\n");
        return 0;
    }
    if (out.out.empty()) {
        std::cout << records_csv(r) << "# summary\n" << summary_csv(r);
    } else {
        write_text(out.out, records_csv(r));
        write_text(out.out + ".summary", summary_csv(r));
        std::cerr << "wrote records to " << out.out << " and summary to " << out.out
                  << ".summary (wall " << fmt_double(r.wall_ms_total) << " ms)\n";
    }
    return 0;
}

// ------------------------------------------------------------ concentration

struct ConcentrationOpts {
    std::size_t m = 48;
    std::uint32_t q = 2;
    std::size_t d1 = 30, d2 = 30, k = 3;
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
    unsigned threads = 0;
};

int run_concentration(const ConcentrationOpts& o, const CommonOpts& out) {
    FieldSpec{o.q};
    const ConcentrationReport rep =
        mc_concentration(o.m, o.q, o.d1, o.d2, o.k, o.trials, o.seed, o.threads);
    if (out.format == "json") {
        json j;
        j["schema"] = 1;
        j["report"] = {{"m", rep.m},
                       {"q", rep.q},
                       {"d1", rep.d1},
                       {"d2", rep.d2},
                       {"k", rep.k},
                       {"trials", rep.trials},
                       {"freq_intersection", rep.freq_intersection},
                       {"freq_sum", rep.freq_sum},
                       {"bound", rep.bound}};
        write_text(out.out, j.dump() + "\n");
    } else {
        std::ostringstream os;
        os << "m,q,d1,d2,k,trials,freq_intersection,freq_sum,bound\n"
           << rep.m << ',' << rep.q << ',' << rep.d1 << ',' << rep.d2 << ',' << rep.k << ','
           << rep.trials << ',' << fmt_double(rep.freq_intersection) << ','
           << fmt_double(rep.freq_sum) << ',' << fmt_double(rep.bound) << '\n';
        write_text(out.out, os.str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"non-binary LDPC codes over subspace noise channels"};
    app.require_subcommand(1);

    ConstructOpts con;
    CLI::App* c_construct =
        app.add_subcommand("construct", "build a parity-check code and write its code file");
    c_construct->add_option("--dl", con.dl, "variable degree")->required();
    c_construct->add_option("--dr", con.dr, "check degree")->required();
    c_construct->add_option("--L", con.L, "coupling number (omit or 0 for a regular code)");
    c_construct->add_option("--M", con.M, "lifting number")->required();
    c_construct->add_option("--m", con.m, "symbol dimension")->required();
    c_construct->add_option("--q", con.q, "field size (prime)")->required();
    c_construct->add_option("--seed", con.seed, "construction seed")->capture_default_str();
    c_construct->add_option("--out", con.out, "code file path (default: stdout)");

    CLI::App* c_de = app.add_subcommand("de", "density-evolution analyses");
    c_de->require_subcommand(1);
    struct {
        unsigned dl = 3, dr = 6, L = 64;
        double epsilon = 0.1, tol = 1e-9, tol_coupled = 1e-6;
        std::size_t iterations = 20, t_max = 0;
        CommonOpts trace_out, closed_out, thr_out, cthr_out;
    } de;
    CLI::App* c_trace = c_de->add_subcommand("trace", "iterate the regular recursion");
    c_trace->add_option("--dl", de.dl)->required();
    c_trace->add_option("--dr", de.dr)->required();
    c_trace->add_option("--epsilon", de.epsilon, "noise rate")->required();
    c_trace->add_option("--iterations", de.iterations)->capture_default_str();
    add_output_opts(c_trace, de.trace_out);
    CLI::App* c_closed = c_de->add_subcommand("closed-form", "evaluate the closed-form trace");
    c_closed->add_option("--dl", de.dl)->required();
    c_closed->add_option("--dr", de.dr)->required();
    c_closed->add_option("--epsilon", de.epsilon, "noise rate (below 1/(dr-1))")->required();
    c_closed->add_option("--iterations", de.iterations)->capture_default_str();
    add_output_opts(c_closed, de.closed_out);
    CLI::App* c_thr = c_de->add_subcommand("threshold", "regular-ensemble noise threshold");
    c_thr->add_option("--dl", de.dl)->required();
    c_thr->add_option("--dr", de.dr)->required();
    c_thr->add_option("--tol", de.tol)->capture_default_str();
    add_output_opts(c_thr, de.thr_out);
    CLI::App* c_cthr =
        c_de->add_subcommand("coupled-threshold", "coupled-ensemble noise threshold");
    c_cthr->add_option("--dl", de.dl)->required();
    c_cthr->add_option("--dr", de.dr)->required();
    c_cthr->add_option("--L", de.L, "coupling number")->required();
    c_cthr->add_option("--tol", de.tol_coupled)->capture_default_str();
    c_cthr->add_option("--t-max", de.t_max, "step budget per probe (0: 10(L+dl))")
        ->capture_default_str();
    add_output_opts(c_cthr, de.cthr_out);

    SimulateOpts sim;
    CommonOpts sim_out;
    CLI::App* c_sim =
        app.add_subcommand("simulate", "all-zero-codeword decoding campaign over a code file");
    c_sim->add_option("--code", sim.code_path, "code file from 'construct'")->required();
    c_sim->add_option("--epsilon", sim.epsilon_args,
                      "noise rate, repeatable; each entry a value or a:b:step range")
        ->required();
    c_sim->add_option("--trials", sim.trials)->capture_default_str();
    c_sim->add_option("--max-iter", sim.max_iter)->capture_default_str();
    c_sim->add_option("--seed", sim.seed)->capture_default_str();
    c_sim->add_option("--threads", sim.threads, "worker threads (0: all cores)")
        ->capture_default_str();
    c_sim->add_flag("--peeling", sim.peeling, "use the peeling decoder instead of sum-product");
    add_output_opts(c_sim, sim_out);

    ConcentrationOpts conc;
    CommonOpts conc_out;
    CLI::App* c_conc = app.add_subcommand(
        "concentration", "subspace dimension concentration vs the analytic bound");
    c_conc->add_option("--m", conc.m)->capture_default_str();
    c_conc->add_option("--q", conc.q)->capture_default_str();
    c_conc->add_option("--d1", conc.d1)->capture_default_str();
    c_conc->add_option("--d2", conc.d2)->capture_default_str();
    c_conc->add_option("--k", conc.k)->capture_default_str();
    c_conc->add_option("--trials", conc.trials)->capture_default_str();
    c_conc->add_option("--seed", conc.seed)->capture_default_str();
    c_conc->add_option("--threads", conc.threads)->capture_default_str();
    add_output_opts(c_conc, conc_out);

    try {
        app.parse(argc, argv);
        if (c_construct->parsed()) return run_construct(con);
        if (c_trace->parsed()) {
            return emit_trace(de_regular_trace(de.dl, de.dr, de.epsilon, de.iterations),
                              de.trace_out);
        }
        if (c_closed->parsed()) {
            std::vector<double> xs;
            for (std::size_t t = 0; t <= de.iterations; ++t) {
                xs.push_back(de_closed_form(de.dl, de.dr, de.epsilon, t));
            }
            return emit_trace(xs, de.closed_out);
        }
        if (c_thr->parsed()) {
            return emit_scalar("threshold", threshold_regular(de.dl, de.dr, de.tol), de.thr_out);
        }
        if (c_cthr->parsed()) {
            return emit_scalar(
                "threshold", threshold_coupled(de.dl, de.dr, de.L, de.tol_coupled, de.t_max),
                de.cthr_out);
        }
        if (c_sim->parsed()) return run_simulate(sim, sim_out);
        if (c_conc->parsed()) return run_concentration(conc, conc_out);
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ParamError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const ShapeError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
