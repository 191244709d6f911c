#include "spin7/bogomolov.hpp"
#include "spin7/corpus.hpp"
#include "spin7/json_io.hpp"
#include "spin7/torus.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace spin7;

namespace {

// SPIN7_LOG=1 prints step timings to stderr, 2 adds intermediate values.
int log_level() {
    static const int level = [] {
        const char* v = std::getenv("SPIN7_LOG");
        if (!v || !*v) return 0;
        try {
            return std::stoi(v);
        } catch (...) {
            return 1;
        }
    }();
    return level;
}

void log(int level, const std::string& msg) {
    if (log_level() >= level) std::cerr << "[spin7] " << msg << "\n";
}

class Timer {
public:
    explicit Timer(std::string what) : what_(std::move(what)), t0_(std::chrono::steady_clock::now()) {}
    ~Timer() {
        const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
        log(1, what_ + ": " + std::to_string(ms) + " ms");
    }

private:
    std::string what_;
    std::chrono::steady_clock::time_point t0_;
};

struct Global {
    bool json = false;
    bool exact = false;
    bool fl = false;
    std::uint64_t seed = 1;
    int samples = 2000;
    std::string in;
};

// Exit 2 with a field name.
struct FlagError : std::runtime_error {
    FlagError(std::string f, const std::string& what) : std::runtime_error(what), field(std::move(f)) {}
    std::string field;
};

json read_json_file(const std::string& path, const std::string& field) {
    std::ifstream f(path);
    if (!f) throw FlagError(field, "cannot open " + path);
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw SchemaError(field, std::string("invalid JSON: ") + e.what());
    }
}

json read_stdin_json() {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw SchemaError("stdin", std::string("invalid JSON: ") + e.what());
    }
}

// A form flag is a path to Form JSON when such a file exists, a dz expression otherwise.
Form form_arg(const std::string& value, const std::string& field) {
    if (std::filesystem::is_regular_file(value)) {
        try {
            return form_from_json(read_json_file(value, field));
        } catch (const SchemaError& e) {
            throw SchemaError(field + ":" + e.field(), e.what());
        }
    }
    try {
        return parse_dz_expression(value);
    } catch (const SchemaError& e) {
        throw SchemaError(field, e.what());
    }
}

Form form_input(const Global& g, const std::string& flag_value, const std::string& flag) {
    if (!flag_value.empty()) return form_arg(flag_value, flag);
    if (!g.in.empty()) return form_from_json(read_json_file(g.in, "--in"));
    return form_from_json(read_stdin_json());
}

Form apply_mode(const Global& g, const Form& f, const std::string& field) {
    if (g.fl) return f.to_float();
    if (g.exact && !f.is_exact()) throw SchemaError(field, "float coefficients given with --exact");
    return f;
}

void require_degree(const Form& f, int deg, const std::string& field) {
    if (f.degree() != deg) throw SchemaError(field, "expected a " + std::to_string(deg) + "-form");
}

void emit(const Global& g, const json& j, const std::string& text) {
    if (g.json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << text;
    }
}

json certified_json(const CertifiedValue& v) {
    json j;
    switch (v.kind) {
        case CertifiedValue::Kind::Exact:
            j["kind"] = "exact";
            j["value"] = rational_str(v.lo);
            break;
        case CertifiedValue::Kind::Enclosure:
            j["kind"] = "enclosure";
            j["lo"] = rational_str(v.lo);
            j["hi"] = rational_str(v.hi);
            j["width"] = rational_str(v.hi - v.lo);
            break;
        case CertifiedValue::Kind::Float:
            j["kind"] = "float";
            j["value"] = float_str(v.approx);
            break;
    }
    return j;
}

json spin7_report_json(const Spin7Report& r) {
    json j;
    j["self_dual"] = r.self_dual;
    j["omega_wedge_omega"] = r.omega_wedge_omega.str();
    j["spectrum"] = {{"3", r.mult_3}, {"-1", r.mult_minus1}};
    if (r.other) j["spectrum"]["other"] = r.other;
    j["pass"] = r.pass;
    return j;
}

// --- verify

int cmd_verify(const Global& g) {
    CorpusOptions opt;
    opt.ctx.seed = g.seed;
    opt.ctx.samples = g.samples;
    opt.float_check = g.fl;
    std::vector<CorpusResult> res;
    {
        Timer t("verify");
        res = run_corpus(opt);
    }
    int failed = 0;
    json entries = json::array();
    std::ostringstream text;
    for (const CorpusResult& r : res) {
        failed += !r.pass();
        json e;
        e["id"] = r.id;
        e["anchor"] = r.anchor;
        e["expected"] = r.expected;
        e["got"] = r.got;
        e["residual"] = r.residual;
        e["pass"] = r.pass();
        if (r.float_checked) {
            e["float"] = {{"values", r.float_values}, {"relative_error", float_str(r.float_error)}, {"pass", r.float_pass}};
        }
        if (!r.error.empty()) e["error"] = r.error;
        entries.push_back(e);
        text << (r.pass() ? "PASS " : "FAIL ") << r.id << "  expected " << r.expected << ", got " << r.got;
        if (r.float_checked) text << ", float rel err " << float_str(r.float_error);
        if (!r.error.empty()) text << ", error: " << r.error;
        text << "\n";
    }
    text << res.size() - failed << "/" << res.size() << " entries pass\n";
    json j;
    j["mode"] = g.fl ? "exact+float" : "exact";
    j["seed"] = g.seed;
    j["samples"] = g.samples;
    j["cayley"] = spin7_report_json(verify_spin7(cayley_form()));
    j["entries"] = entries;
    j["passed"] = static_cast<int>(res.size()) - failed;
    j["failed"] = failed;
    j["pass"] = failed == 0;
    emit(g, j, text.str());
    return failed == 0 ? 0 : 1;
}

// --- decompose

int cmd_decompose(const Global& g, const std::string& beta_flag) {
    const Form beta = apply_mode(g, form_input(g, beta_flag, "--beta"), "--beta");
    require_degree(beta, 4, "degree");
    const SU4Structure s = standard_su4();
    const Spin7Structure S(s.Omega());
    FourFormDecomposition d;
    {
        Timer t("decompose");
        d = decompose_4form(S, s, beta);
    }
    json j;
    j["input"] = form_to_json(beta);
    j["spin7"] = {{"lambda1", form_to_json(d.lambda1)},
                  {"lambda7", form_to_json(d.lambda7)},
                  {"lambda27", form_to_json(d.lambda27)},
                  {"lambda35", form_to_json(d.lambda35)}};
    json pieces = json::object();
    for (const auto& [name, f] : d.pieces) pieces[name] = form_to_json(f);
    j["su4"] = pieces;
    std::ostringstream text;
    auto line = [&](const char* name, const Form& f) {
        text << name << ": " << (f.is_zero() ? std::string("0") : f.str()) << "\n";
    };
    line("Lambda^4_1", d.lambda1);
    line("Lambda^4_7", d.lambda7);
    line("Lambda^4_27", d.lambda27);
    line("Lambda^4_35", d.lambda35);
    for (const auto& [name, f] : d.pieces)
        if (!f.is_zero()) text << "  " << name << ": " << f.str() << "\n";
    emit(g, j, text.str());
    return 0;
}

// --- rotate / residual

struct RotateInput {
    Form c, beta;
    bool have_beta = false;
};

RotateInput rotate_input(const Global& g, const std::string& c_flag, const std::string& beta_flag) {
    if (c_flag.empty()) throw FlagError("--c", "--c is required");
    RotateInput in;
    in.c = apply_mode(g, form_arg(c_flag, "--c"), "--c");
    require_degree(in.c, 2, "--c");
    if (!beta_flag.empty() || !g.in.empty()) {
        in.beta = apply_mode(g, form_input(g, beta_flag, "--beta"), "--beta");
        require_degree(in.beta, 4, "--beta");
        in.have_beta = true;
    }
    return in;
}

int cmd_rotate(const Global& g, const std::string& c_flag, const std::string& beta_flag, bool residual_only) {
    const RotateInput in = rotate_input(g, c_flag, beta_flag);
    if (residual_only && !in.have_beta) throw FlagError("--beta", "--beta (or --in) is required");
    const SU4Structure s = standard_su4();
    const RotationParameter p = gamma_from_c(s, in.c);
    json j;
    std::ostringstream text;
    if (in.have_beta) {
        const Scalar k = k_value(in.beta, s);
        const Scalar res = rotation_residual(in.beta, s, p);
        const Classification cl = classify(phi_form(in.beta, s));
        j["k"] = k.str();
        j["residual"] = res.str();
        j["classification"] = to_string(cl.kind);
        text << "k = " << k.str() << "\nresidual = " << res.str() << "\nPhi: " << to_string(cl.kind) << "\n";
    }
    if (!residual_only) {
        RotationResult r;
        {
            Timer t("rotate");
            r = rotate(s, p);
        }
        j["gamma"] = form_to_json(p.gamma);
        j["rho_sq"] = p.rho_sq.str();
        j["omega_prime"] = form_to_json(r.rotated.omega);
        j["theta_prime"] = form_to_json(r.rotated.theta);
        j["J_prime"] = matrix_to_json(r.rotated.J);
        j["convention"] = r.convention;
        j["im_theta_sign"] = r.im_theta_sign;
        if (in.have_beta) j["k_prime"] = k_value(in.beta, r.rotated).str();
        text << "|omega + gamma|^2 = " << p.rho_sq.str() << "\nomega' = " << r.rotated.omega.str()
             << "\nconvention: " << r.convention << "\n";
    }
    emit(g, j, text.str());
    return 0;
}

// --- bogomolov

int cmd_bogomolov(const Global& g, const std::string& beta_flag) {
    const Form beta = apply_mode(g, form_input(g, beta_flag, "--beta"), "--beta");
    require_degree(beta, 4, "degree");
    const SU4Structure s = standard_su4();
    BogomolovVerdict v;
    {
        Timer t("bogomolov_check");
        v = bogomolov_check(beta, s);
    }
    json j;
    j["k"] = v.k.str();
    j["k_m"] = certified_json(v.km);
    j["pass"] = v.pass;
    j["equality"] = v.equality;
    if (v.extremal) {
        json ex;
        json eig = json::array();
        for (const Form& f : v.extremal->eigenspace) eig.push_back(form_to_json(f));
        ex["eigenspace"] = eig;
        json rot = json::array();
        for (const Form& f : v.extremal->rotatable) rot.push_back(form_to_json(f));
        ex["rotatable"] = rot;
        ex["samples"] = v.extremal->samples.size();
        j["extremal"] = ex;
    }
    std::ostringstream text;
    text << "k = " << v.k.str() << "\nk_m = " << v.km.str() << "\n" << (v.pass ? "pass" : "fail")
         << (v.equality ? " (equality)" : "") << "\n";
    if (g.exact) {
        j["sup_over_sphere"] = {{"skipped", "requires float"}};
    } else {
        KSupResult r;
        {
            Timer t("k_sup_over_sphere");
            r = k_sup_over_sphere(beta, s, g.samples, g.seed);
        }
        json ks;
        ks["hypothesis_ok"] = r.hypothesis_ok;
        ks["classification"] = to_string(r.classification.kind);
        ks["value"] = r.value.str();
        ks["sampled_max"] = float_str(r.sampled_max);
        ks["samples"] = r.samples;
        ks["exceed"] = r.exceed;
        json am = json::array();
        for (const Form& f : r.argmax) am.push_back(form_to_json(f));
        ks["argmax"] = am;
        j["sup_over_sphere"] = ks;
        text << "sampled max of beta ^ omega'^2 / 24 vol: " << float_str(r.sampled_max) << " over " << r.samples
             << " samples, " << r.exceed << " above k\n";
    }
    emit(g, j, text.str());
    return v.pass ? 0 : 1;
}

// --- weil-rotate

struct WeilArgs {
    long d = 0;
    std::string a, y;
};

int cmd_weil(const Global& g, WeilArgs w, bool have_d) {
    if (!g.in.empty()) {
        const json p = read_json_file(g.in, "--in");
        if (!p.is_object()) throw SchemaError("$", "expected an object with d, a, y");
        if (!p.contains("d") || !p["d"].is_number_integer()) throw SchemaError("d", "expected an integer");
        if (!p.contains("a") || !p["a"].is_string()) throw SchemaError("a", "expected a string \"p/q+r/s i\"");
        if (!p.contains("y") || !p["y"].is_string()) throw SchemaError("y", "expected a rational string");
        w.d = p["d"].get<long>();
        w.a = p["a"].get<std::string>();
        w.y = p["y"].get<std::string>();
        have_d = true;
    }
    if (!have_d) throw FlagError("--d", "--d is required");
    if (w.a.empty()) throw FlagError("--a", "--a is required");
    if (w.y.empty()) throw FlagError("--y", "--y is required");
    Scalar a;
    mpq_class y;
    try {
        a = parse_gaussian(w.a);
    } catch (const std::exception& e) {
        throw SchemaError("a", e.what());
    }
    try {
        y = parse_rational(w.y);
    } catch (const std::exception& e) {
        throw SchemaError("y", e.what());
    }
    WeilRotationOutput o;
    {
        Timer t("weil_rotation_pipeline");
        o = weil_rotation_pipeline(a, w.d, y, !g.exact);
    }
    json j;
    j["d"] = o.d;
    for (const auto& [k, v] : std::vector<std::pair<const char*, const Scalar*>>{
             {"a", &o.a}, {"y", &o.y}, {"delta", &o.delta}, {"x", &o.x}, {"r", &o.r}, {"s", &o.s},
             {"s_hat", &o.s_hat}, {"f", &o.f}, {"g", &o.g}, {"q", &o.q}, {"a_tilde", &o.a_tilde},
             {"varpi", &o.varpi}, {"lambda", &o.lambda}, {"four_q2_plus_1", &o.four_q2_plus_1},
             {"relation_residual", &o.relation_residual}})
        j[k] = v->str();
    json m;
    m["original_period"] = matrix_to_json(o.original.complex);
    m["rotated_period"] = matrix_to_json(o.rotated.complex);
    for (const auto& [k, v] : std::vector<std::pair<const char*, const Mat*>>{
             {"phi", &o.phi}, {"lattice_basis", &o.lattice_basis}, {"C", &o.C}, {"T", &o.T}, {"C_hat", &o.C_hat},
             {"C_hat_inv", &o.C_hat_inv}, {"B", &o.B}, {"B_closed", &o.B_closed}, {"F", &o.F},
             {"F_conj_q", &o.F_qbar}, {"F_squared", &o.F_sq}, {"F_phi_commutator", &o.F_phi_commutator},
             {"J_rotated", &o.J_rotated}})
        m[k] = matrix_to_json(*v);
    if (o.P) m["P"] = matrix_to_json(*o.P);
    j["matrices"] = m;
    json endo;
    endo["k_dim"] = o.endomorphisms.k_dim;
    json basis = json::array();
    for (const Mat& b : o.endomorphisms.basis) basis.push_back(matrix_to_json(b));
    endo["basis"] = basis;
    j["endomorphisms"] = endo;
    json checks = json::array();
    std::ostringstream text;
    for (const Check& c : o.checks) {
        json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        if (c.skipped) cj["skipped"] = true;
        cj["residual"] = c.residual;
        checks.push_back(cj);
        text << (c.skipped ? "SKIP " : c.pass ? "ok   " : "FAIL ") << c.name << "  [" << c.residual << "]\n";
    }
    j["checks"] = checks;
    j["discrepancies"] = o.discrepancies;
    j["pass"] = o.all_pass();
    for (const auto& s : o.discrepancies) text << "note: " << s << "\n";
    text << "lambda = " << o.lambda.str() << ", q = " << o.q.str() << ", 4q^2 + 1 = " << o.four_q2_plus_1.str()
         << "\n";
    if (log_level() >= 2) log(2, "B = " + matrix_to_json(o.B).dump());
    emit(g, j, text.str());
    return o.all_pass() ? 0 : 1;
}

json error_json(const std::string& kind, const std::string& field, const std::string& message) {
    json j;
    j["error"] = kind;
    if (!field.empty()) j["field"] = field;
    j["message"] = message;
    return j;
}

int fail(int code, const json& err) {
    std::cout << err.dump(2) << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact exterior calculus with Spin(7) / SU(4) structures on R^8"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_flag("--json", g.json, "JSON output");
    auto* ex = app.add_flag("--exact", g.exact, "forbid float fallback");
    auto* fl = app.add_flag("--float", g.fl, "float arithmetic (verify: add the float cross-check)");
    ex->excludes(fl);
    app.add_option("--seed", g.seed, "seed for all sampling");
    app.add_option("--samples", g.samples, "number of sphere samples")->check(CLI::PositiveNumber);
    app.add_option("--in", g.in, "input JSON file");

    std::string beta, c;
    WeilArgs w;
    auto* verify = app.add_subcommand("verify", "run the identity corpus");
    auto* decompose = app.add_subcommand("decompose", "Spin(7) and SU(4) pieces of a 4-form");
    decompose->add_option("--beta", beta, "4-form: Form JSON path or dz expression");
    auto* rot = app.add_subcommand("rotate", "rotate the standard SU(4) structure");
    rot->add_option("--c", c, "(2,0)-form: dz expression or Form JSON path");
    rot->add_option("--beta", beta, "4-form class");
    auto* res = app.add_subcommand("residual", "rotation residual of a class");
    res->add_option("--c", c, "(2,0)-form: dz expression or Form JSON path");
    res->add_option("--beta", beta, "4-form class");
    auto* bog = app.add_subcommand("bogomolov", "Bogomolov verdict for a (2,2) class");
    bog->add_option("--beta", beta, "4-form class");
    auto* weil = app.add_subcommand("weil-rotate", "Weil abelian variety rotation pipeline");
    auto* dopt = weil->add_option("--d", w.d, "square-free d > 0");
    weil->add_option("--a", w.a, "a in Q(i), e.g. \"1/3+1/5i\"");
    weil->add_option("--y", w.y, "rational y with 0 < y^2 < d");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(2, error_json("FlagError", "", e.what()));
    }

    try {
        if (*verify) return cmd_verify(g);
        if (*decompose) return cmd_decompose(g, beta);
        if (*rot) return cmd_rotate(g, c, beta, false);
        if (*res) return cmd_rotate(g, c, beta, true);
        if (*bog) return cmd_bogomolov(g, beta);
        if (*weil) return cmd_weil(g, w, dopt->count() > 0);
    } catch (const SchemaError& e) {
        return fail(2, error_json("SchemaError", e.field(), e.what()));
    } catch (const FlagError& e) {
        return fail(2, error_json("FlagError", e.field, e.what()));
    } catch (const DomainError& e) {
        return fail(3, error_json("DomainError", "", e.what()));
    } catch (const TowerError& e) {
        return fail(3, error_json("TowerError", "", e.what()));
    } catch (const SingularMatrix& e) {
        return fail(3, error_json("SingularMatrix", "", e.what()));
    } catch (const std::invalid_argument& e) {
        return fail(2, error_json("SchemaError", "", e.what()));
    }
    return 2;
}
