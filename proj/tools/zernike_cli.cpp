// Command-line front end: rate tables, verification suite, projection-rate
// and Markov sweeps, and plot data emission.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zernike/selfcheck.hpp"
#include "zernike/table_io.hpp"
#include "zernike/zernike.hpp"

namespace {

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path, std::ios::binary);  // keep LF endings everywhere
    if (!file) throw CLI::RuntimeError("cannot open output file: " + path, 1);
    return file;
}

zernike::SeminormConvention parse_convention(const std::string& name) {
    if (name == "cartesian") return zernike::SeminormConvention::Cartesian;
    if (name == "complex") return zernike::SeminormConvention::ComplexPair;
    throw CLI::ValidationError("--convention must be cartesian or complex");
}

int run_table(double alpha, int l, std::vector<int> j_list, bool table1_defaults,
              const std::string& convention, bool use_norms, const std::string& format,
              const std::string& out_path) {
    using namespace zernike;
    if (table1_defaults) {
        if (!j_list.empty())
            throw CLI::ValidationError("--table1-defaults and --j-list are mutually exclusive");
        j_list = table1_default_j_list();
    }
    if (j_list.empty()) throw CLI::ValidationError("need --j-list or --table1-defaults");

    RateTable table;
    if (!convention.empty()) {
        table = rate_table(alpha, l, j_list, parse_convention(convention), use_norms);
        if (table1_defaults && alpha == 9.9 && l == 3 && !use_norms) {
            const auto cmp = compare_with_table1(table);
            std::cerr << "# " << convention_name(table.convention) << " convention "
                      << (cmp.pass ? "reproduces" : "does not reproduce")
                      << " the published table (max rat rel err " << cmp.max_rat_rel_err
                      << ", max egr dev " << cmp.max_egr_abs_err << ")\n";
        }
    } else {
        // No convention requested: compute both, emit the one that reproduces
        // the published table (both reported on stderr).
        const RateTable cart = rate_table(alpha, l, j_list, SeminormConvention::Cartesian, use_norms);
        const RateTable cpx =
            rate_table(alpha, l, j_list, SeminormConvention::ComplexPair, use_norms);
        if (table1_defaults && alpha == 9.9 && l == 3 && !use_norms) {
            const auto ccart = compare_with_table1(cart);
            const auto ccpx = compare_with_table1(cpx);
            std::cerr << "# cartesian convention "
                      << (ccart.pass ? "reproduces" : "does not reproduce")
                      << " the published table (max rat rel err " << ccart.max_rat_rel_err
                      << ", max egr dev " << ccart.max_egr_abs_err << ")\n";
            std::cerr << "# complex convention "
                      << (ccpx.pass ? "reproduces" : "does not reproduce")
                      << " the published table (max rat rel err " << ccpx.max_rat_rel_err << ")\n";
            table = ccart.pass || !ccpx.pass ? cart : cpx;
        } else {
            table = cart;
        }
        std::cerr << "# emitting " << convention_name(table.convention) << " convention\n";
    }

    std::ofstream file;
    std::ostream& os = open_output(file, out_path);
    if (format == "csv")
        write_rate_table_csv(table, os);
    else if (format == "json")
        os << rate_table_to_json(table).dump(2) << "\n";
    else
        throw CLI::ValidationError("--format must be csv or json");
    return 0;
}

int run_verify(std::uint64_t seed) {
    const auto results = zernike::run_acceptance_checks(seed);
    int failures = 0;
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "\n      " << r.detail
                  << "\n";
        if (!r.pass) ++failures;
    }
    if (failures > 0) std::cout << failures << " check(s) failed\n";
    return failures == 0 ? 0 : 1;
}

int run_rate(const std::string& function, double alpha, int k, const std::vector<int>& degrees) {
    using namespace zernike;
    if (degrees.empty()) throw CLI::ValidationError("need --degrees");
    RateSweepReport rep;
    if (function == "exp_x1" && alpha == 0.0) {
        rep = l2_rate_sweep_exp_x1(alpha, k, degrees);
    } else if (function == "exp_x1") {
        const int maxN = *std::max_element(degrees.begin(), degrees.end());
        const DiskQuadrature rule = disk_rule(alpha, maxN + 8, 4 * maxN + 8);
        rep = l2_rate_sweep(exp_x1_value, alpha, k, degrees, rule);
    } else {
        throw CLI::ValidationError("unknown --function (available: exp_x1)");
    }
    std::cout << "N,error,local_slope\n";
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        std::cout << rep.rows[i].N << ',' << format_double(rep.rows[i].error) << ',';
        if (i > 0) std::cout << format_double(rep.local_slopes[i - 1]);
        std::cout << "\n";
    }
    std::cout << "# fitted slope " << format_double(rep.fitted_slope) << " (reference "
              << format_double(rep.reference_slope) << ")\n";
    return 0;
}

int run_markov(double alpha, int max_degree, int trials, std::uint64_t seed) {
    const auto rep = zernike::markov_sweep(alpha, max_degree, trials, seed);
    std::cout << "alpha=" << rep.alpha << " max_degree=" << rep.max_degree
              << " trials=" << rep.trials << " seed=" << rep.seed << "\n"
              << "max ||grad p|| / (N^2 ||p||) = " << zernike::format_double(rep.max_ratio)
              << " attained at degree " << rep.argmax_degree << "\n";
    return 0;
}

int run_plot_data(double alpha, int l, const std::string& convention, const std::string& out_path) {
    using namespace zernike;
    const RateTable table =
        rate_table(alpha, l, table1_default_j_list(), parse_convention(convention));
    std::ofstream file;
    std::ostream& os = open_output(file, out_path);
    write_plot_data_csv(table, os);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized Zernike coefficient-space analysis on the unit disk"};
    app.require_subcommand(1);
    app.fallthrough();  // lets the global --seed appear after a subcommand name
    std::uint64_t seed = 42;
    app.add_option("--seed", seed, "seed for all randomized sweeps");

    // table
    auto* table = app.add_subcommand("table", "seminorm-ratio rate table");
    double t_alpha = 9.9;
    int t_l = 3;
    std::vector<int> t_jlist;
    bool t_defaults = false, t_norms = false;
    std::string t_conv, t_format = "csv", t_out;
    table->add_option("--alpha", t_alpha, "weight exponent (> -1)");
    table->add_option("--l", t_l, "smoothness order of the sequence");
    table->add_option("--j-list", t_jlist, "comma-separated j values")->delimiter(',');
    table->add_flag("--table1-defaults", t_defaults, "use the published degree ladder");
    table->add_option("--convention", t_conv, "cartesian|complex (default: try both)");
    table->add_flag("--use-norms", t_norms, "full Sobolev norms instead of seminorms");
    table->add_option("--format", t_format, "csv|json");
    table->add_option("--out", t_out, "output path (default stdout)");

    // verify
    auto* verify = app.add_subcommand("verify", "run the full invariant/oracle suite");

    // rate
    auto* rate = app.add_subcommand("rate", "L2 projection-error sweep");
    std::string r_function = "exp_x1";
    double r_alpha = 0.0;
    int r_k = 2;
    std::vector<int> r_degrees;
    rate->add_option("--function", r_function, "named smooth function");
    rate->add_option("--alpha", r_alpha, "weight exponent (> -1)");
    rate->add_option("--k", r_k, "assumed smoothness order (reference slope -k)");
    rate->add_option("--degrees", r_degrees, "comma-separated truncation degrees")->delimiter(',');

    // markov
    auto* markov = app.add_subcommand("markov", "Markov-quotient statistical sweep");
    double m_alpha = 0.0;
    int m_maxdeg = 40, m_trials = 1000;
    markov->add_option("--alpha", m_alpha, "weight exponent (> -1)");
    markov->add_option("--max-degree", m_maxdeg, "largest polynomial degree");
    markov->add_option("--trials", m_trials, "number of random polynomials");

    // plot-data
    auto* plot = app.add_subcommand("plot-data", "log-log columns with reference curves");
    double p_alpha = 9.9;
    int p_l = 3;
    std::string p_conv = "cartesian", p_out;
    plot->add_option("--alpha", p_alpha, "weight exponent (> -1)");
    plot->add_option("--l", p_l, "smoothness order of the sequence");
    plot->add_option("--convention", p_conv, "cartesian|complex");
    plot->add_option("--out", p_out, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (table->parsed())
            return run_table(t_alpha, t_l, t_jlist, t_defaults, t_conv, t_norms, t_format, t_out);
        if (verify->parsed()) return run_verify(seed);
        if (rate->parsed()) return run_rate(r_function, r_alpha, r_k, r_degrees);
        if (markov->parsed()) return run_markov(m_alpha, m_maxdeg, m_trials, seed);
        if (plot->parsed()) return run_plot_data(p_alpha, p_l, p_conv, p_out);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
