// sylv: command-line surface over the verification library. Subcommands map
// one-to-one onto module operations; every report embeds the resolved config
// snapshot and the reference tag of the operation. Exit codes: 0 pass,
// 1 assertion/identity failure (with counterexample payload), 2 usage error.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "sylv/criterion.hpp"
#include "sylv/forms.hpp"
#include "sylv/heegner17.hpp"
#include "sylv/height.hpp"
#include "sylv/lseries.hpp"
#include "sylv/moduli.hpp"
#include "sylv/parameval.hpp"
#include "sylv/period.hpp"
#include "sylv/qseries.hpp"

using nlohmann::json;
using namespace sylv;

namespace {

struct Config {
    long precision_digits = 60;
    long series_order_cap = 4000;
    unsigned scan_workers = 4;
    std::uint64_t oracle_max_p = 200;
    std::string cache_dir;
    std::string output_format = "json";  // json | csv | text
    double lvalue_zero_threshold = 1e-3;

    mpfr_prec_t bits() const {
        return static_cast<mpfr_prec_t>(precision_digits * 3.3219280948873623 + 16);
    }
};

// Deterministic decimal rendering: doubles always go through one fixed
// format so identical inputs give byte-identical JSON.
std::string dstr(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

json config_json(const Config& c) {
    json j;
    j["precision_digits"] = c.precision_digits;
    j["series_order_cap"] = c.series_order_cap;
    j["scan_workers"] = c.scan_workers;
    j["oracle_max_p"] = c.oracle_max_p;
    j["cache_dir"] = c.cache_dir;
    j["output_format"] = c.output_format;
    j["lvalue_zero_threshold"] = dstr(c.lvalue_zero_threshold);
    return j;
}

json report_skeleton(const Config& c, const std::string& command, const std::string& ref) {
    json j;
    j["schema"] = 1;
    j["command"] = command;
    j["paper_ref"] = ref;
    j["config"] = config_json(c);
    return j;
}

void print_text(const json& j, const std::string& prefix = "") {
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (it->is_object()) {
            print_text(*it, key);
        } else if (it->is_array()) {
            std::cout << key << ":";
            for (const auto& e : *it) std::cout << " " << e.dump();
            std::cout << "\n";
        } else if (it->is_string()) {
            std::cout << key << ": " << it->get<std::string>() << "\n";
        } else {
            std::cout << key << ": " << it->dump() << "\n";
        }
    }
}

void emit(const Config& c, const json& j) {
    if (c.output_format == "text")
        print_text(j);
    else
        std::cout << j.dump(2) << "\n";
}

// Layer 2 of the precedence chain (flags > env > config file > defaults):
// JSON config file, recognized keys only.
void apply_config_file(Config& c, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config file not readable: " + path);
    json j = json::parse(in);
    if (j.contains("precision_digits")) c.precision_digits = j["precision_digits"].get<long>();
    if (j.contains("series_order_cap")) c.series_order_cap = j["series_order_cap"].get<long>();
    if (j.contains("scan_workers")) c.scan_workers = j["scan_workers"].get<unsigned>();
    if (j.contains("oracle_max_p")) c.oracle_max_p = j["oracle_max_p"].get<std::uint64_t>();
    if (j.contains("cache_dir")) c.cache_dir = j["cache_dir"].get<std::string>();
    if (j.contains("output_format")) c.output_format = j["output_format"].get<std::string>();
    if (j.contains("lvalue_zero_threshold"))
        c.lvalue_zero_threshold = j["lvalue_zero_threshold"].get<double>();
}

void apply_env(Config& c) {
    if (const char* p = std::getenv("SYLV_PRECISION")) c.precision_digits = std::atol(p);
    if (const char* p = std::getenv("SYLV_CACHE")) c.cache_dir = p;
}

// ---------------------------------------------------------------- check ----

int cmd_check(const Config& cfg, std::uint64_t p) {
    CriterionReport r = check_prime(p, cfg.oracle_max_p);
    json j = report_skeleton(cfg, "check", "Thm 1.3 criterion; Prop 6.4 equivalence");
    j["result"]["p"] = r.p;
    j["result"]["d_has_root"] = r.d_has_root;
    j["result"]["root_count_fp"] = r.root_count_fp;
    j["result"]["root_count_fp2"] = r.root_count_fp2;
    j["result"]["witnesses"] = r.witnesses;
    j["result"]["nine_divisible"] = r.nine_divisible;
    j["result"]["verdict"] = verdict_name(r.verdict);
    emit(cfg, j);
    return 0;
}

// ----------------------------------------------------------------- scan ----

// CSV layout: data rows "p,has_root,verdict"; checkpoint rows
// "checkpoint,<p>,<count-so-far>". Appending is always safe: a resume run
// reads completed primes from existing rows and skips them, and the last
// checkpoint bounds what a crashed run can force to be rescanned.
struct CsvState {
    std::set<std::uint64_t> done;
    std::uint64_t last_checkpoint = 0;
};

CsvState read_csv_state(const std::string& path) {
    CsvState st;
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string a, b;
        if (!std::getline(row, a, ',') || !std::getline(row, b, ',')) continue;
        if (a == "checkpoint")
            st.last_checkpoint = std::max<std::uint64_t>(st.last_checkpoint, std::stoull(b));
        else if (!a.empty() && std::isdigit(static_cast<unsigned char>(a[0])))
            st.done.insert(std::stoull(a));
    }
    return st;
}

int cmd_scan(const Config& cfg, std::uint64_t lo, std::uint64_t hi, const std::string& out) {
    ScanSummary sum;
    if (cfg.output_format == "csv" && !out.empty()) {
        CsvState st = read_csv_state(out);
        std::ofstream os(out, std::ios::app);
        if (!os) throw std::invalid_argument("scan: cannot open output file " + out);
        std::uint64_t written = 0;
        auto sink = [&](const CriterionReport& r) {
            if (st.done.count(r.p)) return;
            os << r.p << ',' << (r.d_has_root ? 1 : 0) << ',' << verdict_name(r.verdict) << '\n';
            if (++written % 500 == 0) os << "checkpoint," << r.p << ',' << written << '\n';
        };
        std::uint64_t start = std::max(lo, st.last_checkpoint + 1);
        sum = scan(start, hi, cfg.scan_workers, cfg.oracle_max_p, sink);
        os << "checkpoint," << hi << ',' << written << '\n';
        os.flush();
        // Counts over the whole [lo, hi] window come from the file, so a
        // resumed run reports the union rather than just the new tail.
        std::ifstream in(out);
        std::string line;
        std::uint64_t with_root = 0, without = 0;
        std::set<std::uint64_t> seen;
        while (std::getline(in, line)) {
            std::istringstream row(line);
            std::string a, b;
            if (!std::getline(row, a, ',') || !std::getline(row, b, ',')) continue;
            if (a == "checkpoint" || a.empty() || !std::isdigit(static_cast<unsigned char>(a[0])))
                continue;
            std::uint64_t p = std::stoull(a);
            if (p < lo || p > hi || !seen.insert(p).second) continue;
            (b == "1" ? with_root : without)++;
        }
        sum.lo = lo;
        sum.hi = hi;
        sum.n_inconclusive = with_root;
        sum.n_guaranteed = without;
    } else {
        sum = scan(lo, hi, cfg.scan_workers, cfg.oracle_max_p);
    }
    json j = report_skeleton(cfg, "scan", "Thm 1.3 criterion over a range; density remark");
    j["result"]["lo"] = sum.lo;
    j["result"]["hi"] = sum.hi;
    j["result"]["n_guaranteed"] = sum.n_guaranteed;
    j["result"]["n_inconclusive"] = sum.n_inconclusive;
    j["result"]["total"] = sum.total();
    mpq_class d = sum.density_with_root();
    j["result"]["density_with_root"] = d.get_str();
    j["result"]["density_with_root_decimal"] = dstr(d.get_d());
    j["result"]["failures"] = sum.failures;
    emit(cfg, j);
    if (!sum.failures.empty()) return 1;
    return 0;
}

// ---------------------------------------------------------------- qcheck ----

int cmd_qcheck(const Config& cfg, long theta_order, long modeq_order) {
    theta_order = std::min(theta_order, cfg.series_order_cap);
    modeq_order = std::min(modeq_order, cfg.series_order_cap);
    long mm_theta = -1, mm_modeq = -1;
    bool ok_theta = verify_theta_identity(theta_order, &mm_theta);
    bool ok_modeq = verify_modular_equation(modeq_order, &mm_modeq);
    json j = report_skeleton(cfg, "qcheck", "theta/Eisenstein identity; modular equation for f");
    j["result"]["theta_order"] = theta_order;
    j["result"]["theta_identity"] = ok_theta;
    j["result"]["modular_equation_order"] = modeq_order;
    j["result"]["modular_equation"] = ok_modeq;
    if (!ok_theta) j["result"]["theta_first_mismatch"] = mm_theta;
    if (!ok_modeq) j["result"]["modular_equation_first_mismatch"] = mm_modeq;
    emit(cfg, j);
    return (ok_theta && ok_modeq) ? 0 : 1;
}

// -------------------------------------------------------------- cm-verify ----

int cmd_cm_verify(const Config& cfg) {
    mpfr_prec_t bits = cfg.bits();
    BigFloat s3 = sqrt(BigFloat(3L, bits));
    BigComplex w = omega_numeric(bits);
    BigComplex one(BigFloat(1L, bits), BigFloat(0L, bits));
    BigComplex sm3 = w + w + one;
    // psi(omega / (9 (2 omega + 1))) = (4 sqrt(-3) cbrt(3) omega^2, 24 omega - 12).
    BigComplex tau_psi(BigFloat(1L, bits) / BigFloat(18L, bits), s3 / BigFloat(54L, bits));
    ParamPoint P = eval_param(tau_psi, bits);
    BigComplex xe = sm3 * w * w * BigFloat(4L, bits) * cbrt(BigFloat(3L, bits));
    BigComplex ye = w * BigFloat(24L, bits) - BigComplex(BigFloat(12L, bits), BigFloat(0L, bits));
    double err_x = abs(P.x - xe).to_double();
    double err_y = abs(P.y - ye).to_double();
    // f(omega / (2 omega + 1)): f^3 = -27; the realized root is -3 omega,
    // which is -3 omega^2 under the conjugate identification of omega.
    BigComplex tau_f(BigFloat(mpq_class(1, 2), bits), s3 / BigFloat(6L, bits));
    BigComplex fv = eval_f(tau_f, bits);
    double err_cube =
        abs(pow_ui(fv, 3) + BigComplex(BigFloat(27L, bits), BigFloat(0L, bits))).to_double();
    BigComplex m3c(BigFloat(-3L, bits), BigFloat(0L, bits));
    double err_f = std::min(abs(fv - m3c * w).to_double(), abs(fv - m3c * w * w).to_double());
    bool pass = err_x < 1e-10 && err_y < 1e-10 && err_cube < 1e-10 && err_f < 1e-10;
    json j = report_skeleton(cfg, "cm-verify", "section 5 CM evaluations of psi and f");
    j["result"]["psi_x_error"] = dstr(err_x);
    j["result"]["psi_y_error"] = dstr(err_y);
    j["result"]["f_cube_error"] = dstr(err_cube);
    j["result"]["f_value_error"] = dstr(err_f);
    j["result"]["conjugacy_note"] =
        "f anchor matched up to the documented conjugate identification of omega";
    j["result"]["pass"] = pass;
    emit(cfg, j);
    return pass ? 0 : 1;
}

// ---------------------------------------------------------------- moduli ----

int cmd_moduli(const Config& cfg, std::uint64_t p, long digits) {
    ModuliReport r = singular_moduli_norm_test(p, digits, cfg.scan_workers);
    bool pass = r.divisible && r.rounding_gap < 1e-5;
    json j = report_skeleton(cfg, "moduli", "Thm 4.1 consequence: singular-moduli norm");
    j["result"]["p"] = p;
    j["result"]["class_number"] = r.class_number;
    j["result"]["N"] = r.N.get_str();
    j["result"]["divisible_by_486000^h"] = r.divisible;
    j["result"]["rounding_gap"] = dstr(r.rounding_gap);
    j["result"]["digits_used"] = r.digits_used;
    j["result"]["escalations"] = r.escalations;
    j["result"]["pass"] = pass;
    emit(cfg, j);
    return pass ? 0 : 1;
}

// --------------------------------------------------------------- periods ----

int cmd_periods(const Config& cfg, std::uint64_t p) {
    PeriodRelationReport r = verify_period_relation(p, cfg.bits());
    json j = report_skeleton(cfg, "periods", "Prop 7.2 period relation");
    j["result"]["p"] = p;
    j["result"]["residual_1"] = dstr(r.residual_1);
    j["result"]["residual_2"] = dstr(r.residual_2);
    j["result"]["pass"] = r.pass;
    emit(cfg, j);
    return r.pass ? 0 : 1;
}

// ---------------------------------------------------------------- lvalue ----

int cmd_lvalue(const Config& cfg, const std::string& n_str, bool deriv) {
    mpz_class n(n_str);
    LReport r = l_value(n, deriv ? 1 : 0, 1e-6, cfg.scan_workers, cfg.cache_dir);
    json j = report_skeleton(cfg, "lvalue", "section 7.3 central L-values");
    j["result"]["label"] = r.label;
    j["result"]["conductor"] = r.conductor.get_str();
    j["result"]["eps"] = r.eps;
    j["result"]["l_value"] = dstr(r.l_value);
    if (r.has_derivative) j["result"]["l_derivative"] = dstr(r.l_derivative);
    j["result"]["terms"] = r.terms;
    j["result"]["tail_bound"] = dstr(r.tail_bound);
    j["result"]["scale"] = dstr(r.scale);
    j["result"]["zero_within_threshold"] =
        (r.scale > 0 && std::fabs(r.l_value) / r.scale < cfg.lvalue_zero_threshold);
    emit(cfg, j);
    return 0;
}

// --------------------------------------------------------------- classify ----

int cmd_classify(const Config& cfg, std::uint64_t p) {
    ClassifyReport r = classify(p, cfg.lvalue_zero_threshold, cfg.scan_workers);
    json j = report_skeleton(cfg, "classify", "section 7.3 vanishing-pattern classification");
    j["result"]["p"] = p;
    j["result"]["result"] = classify_name(r.result);
    j["result"]["ratio_9p2"] = dstr(r.ratio_9p2);
    j["result"]["ratio_9p"] = dstr(r.ratio_9p);
    j["result"]["eps_9p2"] = r.eps_9p2;
    j["result"]["eps_9p"] = r.eps_9p;
    j["result"]["ambiguous"] = r.ambiguous;
    j["result"]["label"] = r.label;
    emit(cfg, j);
    return 0;
}

// -------------------------------------------------------------- example17 ----

int cmd_example17(const Config& cfg) {
    Heegner17 H = build_heegner17();
    NumericMatch nm = verify_ptau0_numeric(cfg.bits());
    double h = canonical_height(H.z1_rational_min, H.twist_min);
    bool pass = H.summands_on_curve && H.phi_summand_on_E1 && H.eigen_z1 && H.eigen_z2 &&
                H.sum_identity && H.z2_order >= 1 && H.z2_order <= 12 && H.z1_twists &&
                nm.matched;
    json j = report_skeleton(cfg, "example17", "section 8 worked example at p = 17");
    j["result"]["summands_on_curve"] = H.summands_on_curve;
    j["result"]["phi_summand_on_E1"] = H.phi_summand_on_E1;
    j["result"]["eigen_z1"] = H.eigen_z1;
    j["result"]["eigen_z2"] = H.eigen_z2;
    j["result"]["sum_identity"] = H.sum_identity;
    j["result"]["z2_order"] = H.z2_order;
    j["result"]["z1_twists"] = H.z1_twists;
    j["result"]["xi"] = H.xi.get_str();
    j["result"]["height_z1"] = dstr(h);
    j["result"]["numeric_match"] = nm.matched;
    j["result"]["numeric_error"] = dstr(nm.error);
    j["result"]["embedding"] = nm.embedding;
    j["result"]["pass"] = pass;
    emit(cfg, j);
    return pass ? 0 : 1;
}

// --------------------------------------------------------------- gz-check ----

int cmd_gz_check(const Config& cfg) {
    GzReport g = gz_check();
    json j = report_skeleton(cfg, "gz-check", "Thm 7.1 height/L-derivative consistency");
    j["result"]["lhs"] = dstr(g.lhs);
    j["result"]["rhs"] = dstr(g.rhs);
    j["result"]["ratio"] = dstr(g.ratio);
    j["result"]["pass"] = g.pass;
    j["result"]["l_deriv_p"] = dstr(g.l_deriv_p);
    j["result"]["l_9p2"] = dstr(g.l_9p2);
    j["result"]["omega_p"] = dstr(g.omega_p);
    j["result"]["omega_9p2"] = dstr(g.omega_9p2);
    j["result"]["height_z1"] = dstr(g.height_z1);
    j["result"]["l_9p_ratio"] = dstr(g.l_9p_ratio);
    j["result"]["z2_order"] = g.z2_order;
    j["result"]["second_formula_consistent"] = g.second_formula_consistent;
    j["result"]["normalization"] = g.normalization;
    j["result"]["note"] = g.note;
    emit(cfg, j);
    return g.pass ? 0 : 1;
}

// --------------------------------------------------------------- selftest ----

int cmd_selftest(const Config& cfg) {
    json j = report_skeleton(cfg, "selftest", "aggregate of module invariants");
    json& items = j["result"]["items"];
    items = json::object();
    bool all = true;
    auto record = [&](const std::string& name, bool ok) {
        items[name] = ok;
        all = all && ok;
    };

    CriterionReport c17 = check_prime(std::uint64_t{17}, cfg.oracle_max_p);
    record("check_17_guaranteed", c17.verdict == Verdict::GuaranteedCubeSum);

    bool equiv = true;
    for (std::uint64_t q : primes_in_range(2, 500))
        if (q % 9 == 8) {
            try {
                check_prime(q, cfg.oracle_max_p);
                auto l0 = divisibility_ladder(PrimeInput::make(q), 0, cfg.oracle_max_p);
                auto l1 = divisibility_ladder(PrimeInput::make(q), 1, cfg.oracle_max_p);
                equiv = equiv && l0.first == l0.second && l1.first == l1.second;
            } catch (const std::logic_error&) {
                equiv = false;
            }
        }
    record("equivalence_to_500", equiv);

    bool kron = true;
    for (std::uint64_t q : primes_in_range(5, 200)) kron = kron && verify_sumkron(q).pass;
    record("kronecker_sums_to_200", kron);

    record("theta_identity_500", verify_theta_identity(std::min(500L, cfg.series_order_cap)));
    record("modular_equation_200", verify_modular_equation(std::min(200L, cfg.series_order_cap)));

    ModuliReport m = singular_moduli_norm_test(17, 0, cfg.scan_workers);
    record("moduli_17", m.divisible && m.rounding_gap < 1e-5);

    record("period_relation_17", verify_period_relation(17, cfg.bits()).pass);

    Heegner17 H = build_heegner17();
    record("heegner17_exact", H.eigen_z1 && H.eigen_z2 && H.sum_identity && H.z1_twists &&
                                  H.z2_order == 1);

    j["result"]["pass"] = all;
    emit(cfg, j);
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    Config cfg;

    CLI::App app{"sylv: cube-sum criterion verification toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON config file");
    // Resolve the lower precedence layers before CLI11 binds the flags, so a
    // flag that is actually present overrides file and environment values.
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") {
            try {
                apply_config_file(cfg, argv[i + 1]);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 2;
            }
        }
    apply_env(cfg);

    app.add_option("--precision", cfg.precision_digits, "working precision in decimal digits");
    app.add_option("--series-cap", cfg.series_order_cap, "q-series order cap");
    app.add_option("--workers", cfg.scan_workers, "worker pool size");
    app.add_option("--oracle-max", cfg.oracle_max_p, "largest p for the exhaustive oracle");
    app.add_option("--cache", cfg.cache_dir, "cache directory for trace tables");
    app.add_option("--format", cfg.output_format, "output format: json, csv, or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--zero-threshold", cfg.lvalue_zero_threshold,
                   "relative threshold below which L(1) is treated as zero");

    std::uint64_t p_check = 0, scan_lo = 0, scan_hi = 0, p_moduli = 0, p_periods = 0,
                  p_classify = 0;
    std::string scan_out, lvalue_n;
    long moduli_digits = 0, theta_order = 2000, modeq_order = 500;
    bool lvalue_deriv = false;

    CLI::App* sc_check = app.add_subcommand("check", "run the criterion at one prime");
    sc_check->add_option("p", p_check, "prime = 8 (mod 9)")->required();

    CLI::App* sc_scan = app.add_subcommand("scan", "run the criterion over a range");
    sc_scan->add_option("lo", scan_lo, "lower bound")->required();
    sc_scan->add_option("hi", scan_hi, "upper bound")->required();
    sc_scan->add_option("--out", scan_out, "CSV output file (append-safe, resumable)");

    CLI::App* sc_qcheck = app.add_subcommand("qcheck", "verify the q-series identities");
    sc_qcheck->add_option("--theta-order", theta_order, "order for the theta identity");
    sc_qcheck->add_option("--modeq-order", modeq_order, "order for the modular equation");

    app.add_subcommand("cm-verify", "verify the CM evaluations of psi and f");

    CLI::App* sc_moduli = app.add_subcommand("moduli", "singular-moduli norm test");
    sc_moduli->add_option("p", p_moduli, "prime = 8 (mod 9)")->required();
    sc_moduli->add_option("--digits", moduli_digits, "starting precision (0 = auto)");

    CLI::App* sc_periods = app.add_subcommand("periods", "verify the period relation");
    sc_periods->add_option("p", p_periods, "prime = 8 (mod 9)")->required();

    CLI::App* sc_lvalue = app.add_subcommand("lvalue", "central L-value of a cubic twist");
    sc_lvalue->add_option("n", lvalue_n, "cube-free twist parameter")->required();
    sc_lvalue->add_flag("--deriv", lvalue_deriv, "also compute L'(1) (odd sign only)");

    CLI::App* sc_classify = app.add_subcommand("classify", "vanishing-pattern classification");
    sc_classify->add_option("p", p_classify, "prime = 8 (mod 9)")->required();

    app.add_subcommand("example17", "exact reconstruction of the worked example");
    app.add_subcommand("gz-check", "height vs L-derivative consistency at p = 17");
    app.add_subcommand("selftest", "fast aggregate of the module invariants");

    // Let global flags appear after the subcommand name too.
    for (CLI::App* sc : app.get_subcommands({})) sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand("check")) return cmd_check(cfg, p_check);
        if (app.got_subcommand("scan")) return cmd_scan(cfg, scan_lo, scan_hi, scan_out);
        if (app.got_subcommand("qcheck")) return cmd_qcheck(cfg, theta_order, modeq_order);
        if (app.got_subcommand("cm-verify")) return cmd_cm_verify(cfg);
        if (app.got_subcommand("moduli")) return cmd_moduli(cfg, p_moduli, moduli_digits);
        if (app.got_subcommand("periods")) return cmd_periods(cfg, p_periods);
        if (app.got_subcommand("lvalue")) return cmd_lvalue(cfg, lvalue_n, lvalue_deriv);
        if (app.got_subcommand("classify")) return cmd_classify(cfg, p_classify);
        if (app.got_subcommand("example17")) return cmd_example17(cfg);
        if (app.got_subcommand("gz-check")) return cmd_gz_check(cfg);
        if (app.got_subcommand("selftest")) return cmd_selftest(cfg);
    } catch (const std::invalid_argument& e) {
        // Bad user input (non-prime, wrong residue class, malformed values).
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        // An identity the library asserts failed: counterexample payload.
        json j;
        j["schema"] = 1;
        j["error"] = "assertion failure";
        j["counterexample"] = e.what();
        std::cout << j.dump(2) << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
