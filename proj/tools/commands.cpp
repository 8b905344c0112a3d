#include "commands.hpp"

#include "macdop/csv.hpp"
#include "macdop/identities.hpp"
#include "macdop/kernel.hpp"
#include "macdop/operators.hpp"
#include "macdop/spectral.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

namespace macdop::cli {

namespace {

using Clock = std::chrono::steady_clock;

struct RunReport {
    std::string command;
    std::string input_digest;
    std::vector<std::string> records;
    bool pass = true;
    Clock::time_point started = Clock::now();

    void print(std::ostream& os) const {
        os << "command: " << command << '\n';
        if (!input_digest.empty()) {
            os << "input: " << input_digest << '\n';
        }
        for (auto const& r : records) {
            os << r << '\n';
        }
        double const wall = std::chrono::duration<double>(Clock::now() - started).count();
        os << "overall: pass=" << (pass ? "true" : "false") << " wall_time_s=" << format_short(wall) << '\n';
    }
};

std::string digest(UniformSignal const& s) {
    auto const v = s.values();
    auto const [lo, hi] = std::minmax_element(v.begin(), v.end());
    std::ostringstream os;
    os << "samples=" << s.size() << " dt=" << format_double(s.dt()) << " t0=" << format_double(s.t0())
       << " min=" << format_double(*lo) << " max=" << format_double(*hi);
    return os.str();
}

std::string echo(std::vector<std::string> const& args) {
    std::string out;
    for (auto const& a : args) {
        if (!out.empty()) {
            out += ' ';
        }
        out += a;
    }
    return out;
}

CsvSchema schema_from(std::string const& name) {
    if (name == "value") {
        return CsvSchema::value_only;
    }
    if (name == "time-value") {
        return CsvSchema::time_value;
    }
    return CsvSchema::automatic;
}

// Shared by every subcommand that reads a signal.
struct InputOptions {
    std::string path;
    std::string schema = "auto";

    void attach(CLI::App* cmd) {
        cmd->add_option("input", path, "CSV file (value-only or time,value)")->required();
        cmd->add_option("--schema", schema, "CSV layout")
            ->check(CLI::IsMember({"auto", "value", "time-value"}))
            ->capture_default_str();
    }

    UniformSignal load() const { return ingest_csv(path, schema_from(schema)); }
};

// --- compute ---------------------------------------------------------------

struct ComputeOptions {
    InputOptions input;
    std::string indicator = "macd";
    std::size_t k = 8;
    std::size_t n = 4;
    std::size_t b = 4;
    std::string output;
};

UniformSignal compute_indicator(ComputeOptions const& o, UniformSignal const& s) {
    if (o.indicator == "avg") {
        return right_avg(s, WindowSpec::for_signal(o.k, s));
    }
    if (o.indicator == "centered") {
        return centered_avg(s, WindowSpec::for_signal(o.k, s));
    }
    if (o.indicator == "double") {
        return double_right_avg(s, WindowSpec::for_signal(o.k, s));
    }
    if (o.indicator == "macd") {
        return macd(s, WindowSpec::for_signal(o.k, s));
    }
    ExpansionSpec const spec(o.n, WindowSpec::for_signal(o.b, s));
    return recursive_expansion_sides(s, spec).rhs;
}

int cmd_compute(ComputeOptions const& o, RunReport& report, std::ostream& out) {
    UniformSignal const s = o.input.load();
    report.input_digest = digest(s);
    UniformSignal const result = compute_indicator(o, s);
    if (o.output.empty()) {
        write_csv(out, result);
    } else {
        write_csv(std::filesystem::path(o.output), result);
    }
    std::ostringstream rec;
    rec << "output indicator=" << o.indicator << " samples=" << result.size()
        << " t0=" << format_double(result.t0()) << " path=" << (o.output.empty() ? "-" : o.output);
    report.records.push_back(rec.str());
    return exit_ok;
}

// --- verify ----------------------------------------------------------------

struct VerifyOptions {
    InputOptions input;
    std::string checks = "all";
    std::size_t a = 8;
    std::size_t b = 4;
    std::size_t n = 4;
    double tol = 1e-12;
};

std::vector<std::string> const& known_checks() {
    static std::vector<std::string> const names{
        "recursive_decomposition", "difference_identity", "macd_derivative", "phase_corrected_form",
        "recursive_expansion",     "centered_expansion",  "lp_bound",        "monotonicity",
    };
    return names;
}

std::vector<std::string> split_list(std::string const& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

std::string residual_record(ResidualReport const& r, std::string const& windows, double gate) {
    std::ostringstream os;
    os << "check name=" << r.identity_name << " windows=" << windows
       << " max_abs_residual=" << format_double(r.max_abs_residual)
       << " max_rel_residual=" << format_double(r.max_rel_residual) << " gate=" << format_short(gate)
       << " pass=" << (r.passes(gate) ? "true" : "false");
    return os.str();
}

std::string skipped_record(std::string const& name, std::string const& windows, std::string const& status,
                           std::string const& detail) {
    return "check name=" + name + " windows=" + windows + " status=" + status + " " + detail + " pass=false";
}

int cmd_verify(VerifyOptions const& o, RunReport& report) {
    std::vector<std::string> selected;
    bool const all = o.checks == "all";
    if (all) {
        selected = known_checks();
    } else {
        selected = split_list(o.checks);
        for (auto const& name : selected) {
            if (std::find(known_checks().begin(), known_checks().end(), name) == known_checks().end()) {
                throw std::invalid_argument("unknown check name: " + name);
            }
        }
    }

    UniformSignal const s = o.input.load();
    report.input_digest = digest(s);
    WindowSpec const a = WindowSpec::for_signal(o.a, s);
    WindowSpec const b = WindowSpec::for_signal(o.b, s);
    std::string const wa = "a:" + std::to_string(o.a);
    std::string const wab = wa + ",b:" + std::to_string(o.b);
    std::string const wnb = "n:" + std::to_string(o.n) + ",b:" + std::to_string(o.b);

    bool any_fail = false;
    bool any_input_problem = false;

    auto residual_check = [&](std::string const& name, std::string const& windows, bool needs_even_window,
                              std::size_t even_k, std::function<ResidualReport()> const& fn) {
        if (needs_even_window && even_k % 2 != 0) {
            if (all) {
                report.records.push_back("check name=" + name + " windows=" + windows +
                                         " status=not_applicable reason=odd_window pass=true");
                return;
            }
            report.records.push_back(skipped_record(name, windows, "invalid", "reason=odd_window"));
            any_input_problem = true;
            return;
        }
        try {
            ResidualReport const r = fn();
            report.records.push_back(residual_record(r, windows, o.tol));
            any_fail = any_fail || !r.passes(o.tol);
        } catch (InsufficientSamples const& e) {
            report.records.push_back(skipped_record(name, windows, "skipped",
                                                    "required=" + std::to_string(e.required()) +
                                                        " available=" + std::to_string(e.available())));
            any_input_problem = true;
        }
    };

    for (auto const& name : selected) {
        if (name == "recursive_decomposition") {
            residual_check(name, "t1:" + std::to_string(o.a) + ",t2:" + std::to_string(o.b), false, 0,
                           [&] { return check_recursive_decomposition(s, a, b); });
        } else if (name == "difference_identity") {
            residual_check(name, wab, false, 0, [&] { return check_difference_identity(s, a, b); });
        } else if (name == "macd_derivative") {
            residual_check(name, wa, false, 0, [&] { return check_macd_derivative(s, a); });
        } else if (name == "phase_corrected_form") {
            residual_check(name, wa, true, o.a, [&] { return check_phase_corrected_form(s, a); });
        } else if (name == "recursive_expansion") {
            residual_check(name, wnb, false, 0, [&] { return check_recursive_expansion(s, ExpansionSpec(o.n, b)); });
        } else if (name == "centered_expansion") {
            residual_check(name, wnb, true, o.b, [&] { return check_centered_expansion(s, ExpansionSpec(o.n, b)); });
        } else if (name == "lp_bound") {
            for (LpNorm p : {LpNorm::one, LpNorm::two, LpNorm::infinity}) {
                std::string const windows = wa + ",p:" + std::string(to_string(p));
                try {
                    double const ratio = check_lp_bound(s, a, p);
                    bool const ok = ratio <= 2.0;
                    report.records.push_back("check name=lp_bound windows=" + windows + " ratio=" +
                                             format_double(ratio) + " gate=2 pass=" + (ok ? "true" : "false"));
                    any_fail = any_fail || !ok;
                } catch (InsufficientSamples const& e) {
                    report.records.push_back(skipped_record(name, windows, "skipped",
                                                            "required=" + std::to_string(e.required()) +
                                                                " available=" + std::to_string(e.available())));
                    any_input_problem = true;
                } catch (std::domain_error const&) {
                    report.records.push_back(skipped_record(name, windows, "undefined", "reason=zero_signal"));
                    any_input_problem = true;
                }
            }
        } else if (name == "monotonicity") {
            std::size_t const long_k = o.a + o.b;
            std::string const windows = wa + ",b:" + std::to_string(long_k);
            try {
                MonotonicityResult const m =
                    check_monotonicity_corollary(s, a, WindowSpec::for_signal(long_k, s));
                std::ostringstream os;
                os << "check name=monotonicity windows=" << windows << " hypothesis_count=" << m.hypothesis_count
                   << " counterexample="
                   << (m.counterexample ? std::to_string(*m.counterexample) : std::string("none"))
                   << " equality_count=" << m.equality_count << " equality_counterexample="
                   << (m.equality_counterexample ? std::to_string(*m.equality_counterexample)
                                                 : std::string("none"))
                   << " gate=0 pass=" << (m.pass ? "true" : "false");
                report.records.push_back(os.str());
                any_fail = any_fail || !m.pass;
            } catch (InsufficientSamples const& e) {
                report.records.push_back(skipped_record(name, windows, "skipped",
                                                        "required=" + std::to_string(e.required()) +
                                                            " available=" + std::to_string(e.available())));
                any_input_problem = true;
            }
        }
    }

    report.pass = !any_fail && !any_input_problem;
    if (any_input_problem) {
        return exit_input_error;
    }
    return any_fail ? exit_verification_failed : exit_ok;
}

// --- classify --------------------------------------------------------------

struct ClassifyOptions {
    InputOptions input;
    std::string index = "latest";
    std::size_t a = 12;
    std::optional<std::size_t> b;
    std::size_t long_window = 26;
    std::optional<double> tol;
};

int cmd_classify(ClassifyOptions const& o, RunReport& report) {
    UniformSignal const s = o.input.load();
    report.input_digest = digest(s);
    std::size_t b = 0;
    if (o.b) {
        b = *o.b;
    } else {
        if (o.long_window <= o.a) {
            throw std::invalid_argument("--long-window must exceed --window");
        }
        b = o.long_window - o.a;
    }
    std::size_t idx = s.size() - 1;
    if (o.index != "latest") {
        std::size_t pos = 0;
        long long const parsed = std::stoll(o.index, &pos);
        if (pos != o.index.size() || parsed < 0) {
            throw std::out_of_range("index must be a non-negative integer or 'latest'");
        }
        idx = static_cast<std::size_t>(parsed);
    }
    double const tol = o.tol.value_or(default_trend_tolerance(s));
    TrendLabel const t = classify_trend(s, idx, WindowSpec::for_signal(o.a, s), WindowSpec::for_signal(b, s), tol);
    std::ostringstream os;
    os << "trend index=" << idx << " time=" << format_double(s.time(idx)) << " windows=a:" << o.a << ",b:" << b
       << " label=" << to_string(t.label) << " margin=" << format_double(t.margin)
       << " tol=" << format_short(tol);
    report.records.push_back(os.str());
    return exit_ok;
}

// --- spectrum --------------------------------------------------------------

struct SpectrumOptions {
    std::string kernel = "macd";
    std::size_t k = 8;
    std::size_t n = 4;
    std::size_t b = 4;
    std::size_t grid = default_grid_size;
    std::string output;
};

LinearOp spectrum_op(SpectrumOptions const& o) {
    if (o.kernel == "avg") {
        return LinearOp::right_avg(o.k);
    }
    if (o.kernel == "centered") {
        return LinearOp::centered_avg(o.k);
    }
    if (o.kernel == "double") {
        return double_right_avg_op(o.k);
    }
    if (o.kernel == "macd") {
        return macd_op(o.k);
    }
    ExpansionSpec const spec(o.n, WindowSpec(o.b, 1.0));
    return o.kernel == "expansion" ? expansion_rhs_op(spec) : expansion_lhs_op(spec);
}

int cmd_spectrum(SpectrumOptions const& o, RunReport& report, std::ostream& out) {
    KernelRep const kernel = build_kernel(spectrum_op(o));
    FrequencyResponse const resp = transfer_function(kernel, o.grid);

    auto write = [&](std::ostream& os) {
        os << "omega,magnitude,phase\n";
        for (std::size_t m = 0; m < resp.frequencies.size(); ++m) {
            os << format_double(resp.frequencies[m]) << ',' << format_double(resp.magnitudes[m]) << ','
               << format_double(resp.phases[m]) << '\n';
        }
    };
    if (o.output.empty()) {
        write(out);
    } else {
        std::ofstream f(o.output);
        if (!f) {
            throw CsvError("cannot write " + o.output);
        }
        write(f);
    }

    std::ostringstream os;
    os << "kernel tag=" << kernel.scale_note << " taps=" << kernel.size()
       << " weight_sum=" << format_double(resp.weight_sum) << " abs_weight_sum=" << format_double(resp.abs_weight_sum)
       << " grid=" << o.grid;
    report.records.push_back(os.str());

    if (std::abs(resp.weight_sum - 1.0) <= 1e-12) {
        report.records.push_back("bandpass status=not_applicable reason=averaging_kernel");
    } else {
        BandpassVerdict const v = bandpass_check(resp);
        std::ostringstream bp;
        bp << "bandpass pass=" << (v.pass ? "true" : "false") << " dc=" << format_double(v.dc_magnitude)
           << " peak=" << format_double(v.peak_magnitude) << " peak_omega=" << format_double(v.peak_frequency)
           << " nyquist=" << format_double(v.nyquist_magnitude);
        report.records.push_back(bp.str());
        report.pass = v.pass;
    }

    if (o.kernel == "expansion" || o.kernel == "expansion-lhs") {
        // the two sides of the expansion must share one response
        ExpansionSpec const spec(o.n, WindowSpec(o.b, 1.0));
        FrequencyResponse const other = transfer_function(
            build_kernel(o.kernel == "expansion" ? expansion_lhs_op(spec) : expansion_rhs_op(spec)), o.grid);
        double gap = 0.0;
        for (std::size_t m = 0; m < resp.magnitudes.size(); ++m) {
            gap = std::max(gap, std::abs(resp.magnitudes[m] - other.magnitudes[m]));
        }
        report.records.push_back("expansion_match max_magnitude_gap=" + format_double(gap));
    }
    return report.pass ? exit_ok : exit_verification_failed;
}

} // namespace

int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Moving-average operator toolkit: indicators, identity checks, trend labels, spectra"};
    app.name(args.empty() ? "macdop" : args.front());
    app.require_subcommand(1);

    ComputeOptions compute;
    auto* c = app.add_subcommand("compute", "Write an indicator over its valid range as time,value CSV");
    compute.input.attach(c);
    c->add_option("--indicator", compute.indicator, "avg | centered | double | macd | expansion")
        ->check(CLI::IsMember({"avg", "centered", "double", "macd", "expansion"}))
        ->capture_default_str();
    c->add_option("-k,--window", compute.k, "Window in samples")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--n", compute.n, "Expansion terms")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--b", compute.b, "Expansion base window in samples")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    c->add_option("-o,--output", compute.output, "Output CSV (stdout if omitted)");

    VerifyOptions verify;
    auto* v = app.add_subcommand("verify", "Run identity checks and print one record per check");
    verify.input.attach(v);
    v->add_option("--checks", verify.checks, "'all' or a comma-separated list")->capture_default_str();
    v->add_option("-k,--window", verify.a, "Window a in samples")->check(CLI::PositiveNumber)->capture_default_str();
    v->add_option("--b", verify.b, "Second window b in samples")->check(CLI::PositiveNumber)->capture_default_str();
    v->add_option("--n", verify.n, "Expansion terms")->check(CLI::PositiveNumber)->capture_default_str();
    v->add_option("--tol", verify.tol, "Relative residual gate")->capture_default_str();

    ClassifyOptions classify;
    auto* cl = app.add_subcommand("classify", "Label the local trend at one index");
    classify.input.attach(cl);
    cl->add_option("--index", classify.index, "Sample index or 'latest'")->capture_default_str();
    cl->add_option("-k,--window", classify.a, "Short window a in samples")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    auto* opt_b = cl->add_option("--b", classify.b, "Extra window b in samples (long window is a+b)")
                      ->check(CLI::PositiveNumber);
    cl->add_option("--long-window", classify.long_window, "Long window a+b in samples")
        ->check(CLI::PositiveNumber)
        ->excludes(opt_b)
        ->capture_default_str();
    cl->add_option("--tol", classify.tol, "Margin tolerance (default 1e-9 * max|signal|)");

    SpectrumOptions spectrum;
    auto* sp = app.add_subcommand("spectrum", "Write omega,magnitude,phase of an operator kernel");
    sp->add_option("--kernel", spectrum.kernel, "avg | centered | double | macd | expansion | expansion-lhs")
        ->check(CLI::IsMember({"avg", "centered", "double", "macd", "expansion", "expansion-lhs"}))
        ->capture_default_str();
    sp->add_option("-k,--window", spectrum.k, "Window in samples")->check(CLI::PositiveNumber)->capture_default_str();
    sp->add_option("--n", spectrum.n, "Expansion terms")->check(CLI::PositiveNumber)->capture_default_str();
    sp->add_option("--b", spectrum.b, "Expansion base window")->check(CLI::PositiveNumber)->capture_default_str();
    sp->add_option("--grid", spectrum.grid, "Frequency grid points")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 24))
        ->capture_default_str();
    sp->add_option("-o,--output", spectrum.output, "Output CSV (stdout if omitted)");

    std::vector<char const*> argv;
    argv.reserve(args.size());
    for (auto const& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (CLI::ParseError const& e) {
        int const code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_input_error;
    }

    RunReport report;
    report.command = echo(args);
    // CSV on stdout pushes the report to stderr
    bool const data_on_stdout = (c->parsed() && compute.output.empty()) || (sp->parsed() && spectrum.output.empty());
    std::ostream& report_out = data_on_stdout ? err : out;

    try {
        int code = exit_ok;
        if (c->parsed()) {
            code = cmd_compute(compute, report, out);
        } else if (v->parsed()) {
            code = cmd_verify(verify, report);
        } else if (cl->parsed()) {
            code = cmd_classify(classify, report);
        } else {
            code = cmd_spectrum(spectrum, report, out);
        }
        report.print(report_out);
        return code;
    } catch (std::exception const& e) {
        report.pass = false;
        report.records.push_back(std::string("error: ") + e.what());
        report.print(report_out);
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    }
}

} // namespace macdop::cli
