#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "painleve/asymptotics.hpp"
#include "painleve/equations.hpp"
#include "painleve/error.hpp"
#include "painleve/numeric.hpp"
#include "painleve/solver.hpp"
#include "painleve/specialsol.hpp"
#include "painleve/transforms.hpp"

namespace painleve::cli {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        if (!text.empty() && text.back() != '\n') out << '\n';
        return;
    }
    std::ofstream f(path);
    if (!f) throw ParameterError("cannot write '" + path + "'");
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
}

// a:b:n with n >= 1 points, both ends included
std::vector<double> parse_sweep(const std::string& spec) {
    double a = 0, b = 0;
    long n = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(spec);
    if (!(is >> a >> c1 >> b >> c2 >> n) || c1 != ':' || c2 != ':' || !is.eof() || n < 1)
        throw ParameterError("--k-sweep: expected a:b:n with n >= 1, got '" + spec + "'");
    std::vector<double> k;
    for (long i = 0; i < n; ++i) k.push_back(n == 1 ? a : a + (b - a) * double(i) / double(n - 1));
    return k;
}

// ---- --config: JSON keys become long options unless given on the command line

std::vector<std::string> merge_config(const std::vector<std::string>& args) {
    std::string path;
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw ParameterError("--config needs a file");
            path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (path.empty()) return rest;

    json cfg;
    try {
        cfg = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ParameterError("config '" + path + "': " + e.what());
    }
    if (!cfg.is_object()) throw ParameterError("config '" + path + "': expected a JSON object");

    std::vector<std::string> merged;
    std::size_t first_opt = 0;
    if (!rest.empty() && rest[0].rfind("-", 0) != 0) {
        merged.push_back(rest[0]);
        first_opt = 1;
    } else if (cfg.contains("command")) {
        if (!cfg["command"].is_string()) throw ParameterError("config field 'command' must be a string");
        merged.push_back(cfg["command"].get<std::string>());
    }
    auto given = [&](const std::string& flag) {
        return std::any_of(rest.begin(), rest.end(),
                           [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
    };
    for (const auto& [key, v] : cfg.items()) {
        if (key == "command") continue;
        std::string flag = "--" + key;
        std::replace(flag.begin() + 2, flag.end(), '_', '-');
        if (given(flag)) continue;
        if (v.is_boolean()) {
            if (v.get<bool>()) merged.push_back(flag);
        } else if (v.is_number()) {
            std::ostringstream os;
            os.precision(17);
            os << v.get<double>();
            merged.push_back(flag);
            merged.push_back(os.str());
        } else if (v.is_string()) {
            merged.push_back(flag);
            merged.push_back(v.get<std::string>());
        } else {
            throw ParameterError("config field '" + key + "' must be a number, string or boolean");
        }
    }
    merged.insert(merged.end(), rest.begin() + static_cast<long>(first_opt), rest.end());
    return merged;
}

// ---- ladder files ---------------------------------------------------------------

std::string ladder_json(const specialsol::LadderState& s, const specialsol::LadderReport& r) {
    json j;
    j["kind"] = "dp2_ladder";
    j["n_max"] = s.n_max;
    j["c1"] = s.c1;
    j["c2"] = s.c2;
    j["r"] = s.r;
    j["phi"] = s.phi;
    j["dphi"] = s.dphi;
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"n", c.n}, {"res_a", c.res_a}, {"res_b", c.res_b}, {"res_ode", c.res_ode}});
    j["verification"] = {{"checks", checks}, {"tol", r.tol}, {"pass", r.pass}};
    return j.dump(1);
}

specialsol::LadderState ladder_from_json(const json& j) {
    specialsol::LadderState s;
    try {
        s.n_max = j.at("n_max").get<int>();
        s.c1 = j.at("c1").get<double>();
        s.c2 = j.at("c2").get<double>();
        s.r = j.at("r").get<std::vector<double>>();
        s.phi = j.at("phi").get<std::vector<std::vector<double>>>();
        s.dphi = j.at("dphi").get<std::vector<std::vector<double>>>();
    } catch (const json::exception& e) {
        throw ParameterError(std::string("ladder file: ") + e.what());
    }
    if (s.phi.size() != std::size_t(s.n_max + 1) || s.dphi.size() != s.phi.size())
        throw ParameterError("ladder file: phi/dphi must hold n_max + 1 rows");
    for (std::size_t n = 0; n < s.phi.size(); ++n)
        if (s.phi[n].size() != s.r.size() || s.dphi[n].size() != s.r.size())
            throw ParameterError("ladder file: row " + std::to_string(n) + " does not match the r grid");
    return s;
}

std::string ladder_csv(const specialsol::LadderState& s) {
    std::ostringstream os;
    os.precision(17);
    os << "r";
    for (int n = 0; n <= s.n_max; ++n) os << ",phi_" << n;
    os << '\n';
    for (std::size_t i = 0; i < s.r.size(); ++i) {
        os << s.r[i];
        for (int n = 0; n <= s.n_max; ++n) os << ',' << s.phi[n][i];
        os << '\n';
    }
    return os.str();
}

// ---- commands ----------------------------------------------------------------------

struct ParamOpts {
    std::map<equations::Param, std::optional<double>> v;

    void add(CLI::App* app) {
        using P = equations::Param;
        const std::vector<std::pair<P, std::string>> names = {
            {P::alpha, "--alpha"},         {P::beta, "--beta"},     {P::gamma, "--gamma"},   {P::delta, "--delta"},
            {P::theta0, "--theta0"},       {P::theta_inf, "--theta-inf"}, {P::kappa1, "--kappa1"},
            {P::kappa2, "--kappa2"},       {P::kappa3, "--kappa3"}, {P::kappa4, "--kappa4"}};
        for (const auto& [p, n] : names) app->add_option(n, v[p], "equation parameter");
    }
    equations::ParamSet set() const {
        equations::ParamSet s;
        for (const auto& [p, x] : v)
            if (x) s.set(p, *x);
        return s;
    }
};

struct SolveOpts {
    std::string eq;
    ParamOpts params;
    std::optional<double> w0, dw0, airy_k;
    double from = 0.0, to = 0.0;
    bool pole_aware = false;
    std::string grid;
    double rtol = 1e-12, atol = 1e-12, max_step = 0.25;
    std::string output, format = "json";
};

int cmd_solve(const SolveOpts& o, std::ostream& out, std::ostream& err) {
    const auto eq = equations::equation_from_string(o.eq);
    auto p = o.params.set();
    double w0 = 0.0, dw0 = 0.0;
    if (o.airy_k) {
        if (eq != equations::EquationId::PII) throw ParameterError("--airy-k: only for --eq PII");
        if (o.w0 || o.dw0) throw ParameterError("--airy-k: conflicts with --w0/--dw0");
        if (p.get_or(equations::Param::alpha, 0.0) != 0.0) throw ParameterError("--airy-k: needs alpha = 0");
        p.set(equations::Param::alpha, 0.0);
        const auto s = solver::seed_from_airy(*o.airy_k, o.from);
        w0 = s.w;
        dw0 = s.dw;
    } else {
        if (!o.w0 || !o.dw0) throw ParameterError("initial data: give --w0 and --dw0, or --airy-k");
        w0 = *o.w0;
        dw0 = *o.dw0;
    }
    equations::validate(eq, p);
    solver::StepControl c;
    c.rel_tol = o.rtol;
    c.abs_tol = o.atol;
    c.max_step = o.max_step;
    solver::validate(c);
    solver::IntegrateOptions opt;
    if (!o.grid.empty()) opt.grid = numeric::parse_grid(o.grid);
    const auto t = o.pole_aware ? solver::integrate_pole_aware(eq, p, o.from, w0, dw0, o.to, c, opt)
                                : solver::integrate(eq, p, o.from, w0, dw0, o.to, c, opt);
    emit(o.format == "csv" ? solver::to_csv(t) : solver::to_json(t), o.output, out);
    err << "solve: " << t.samples.size() << " samples, " << t.poles.size() << " poles\n";
    if (!t.reached_end()) {
        err << "solve: stopped before z = " << o.to << ": " << t.stop_reason << " (last good z = " << t.z_last()
            << ")\n";
        return numerical;
    }
    return ok;
}

struct YvOpts {
    int n = 0;
    bool roots = false;
    std::string output;
};

int cmd_yv(const YvOpts& o, std::ostream& out) {
    if (o.n < 0) throw DomainError("yv: n must be >= 0");
    if (o.roots) {
        if (o.n > specialsol::kYvRootsMax)
            throw DomainError("yv --roots: n must be <= " + std::to_string(specialsol::kYvRootsMax));
        emit(specialsol::roots_csv(o.n, specialsol::yv_roots(o.n)), o.output, out);
    } else {
        if (o.n > specialsol::kYvMax) throw DomainError("yv: n must be <= " + std::to_string(specialsol::kYvMax));
        emit(specialsol::yv_poly(o.n).to_string(), o.output, out);
    }
    return ok;
}

struct ConnOpts {
    std::optional<double> k;
    std::string sweep;
    double alpha = 0.0;
    asymptotics::ConnectionOptions c;
    std::string output;
};

int cmd_connection(const ConnOpts& o, std::ostream& out, std::ostream& err) {
    if (o.k.has_value() == !o.sweep.empty()) throw ParameterError("connection: give exactly one of --k, --k-sweep");
    if (o.k) {
        const auto r = asymptotics::connection_check(*o.k, o.alpha, o.c);
        emit(r.to_json(), o.output, out);
        return r.pass ? ok : verification;
    }
    const auto ks = parse_sweep(o.sweep);
    struct Slot {
        std::string report;
        int code = ok;
    };
    std::vector<Slot> slots(ks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < ks.size(); i = next++) {
            try {
                const auto r = asymptotics::connection_check(ks[i], o.alpha, o.c);
                slots[i] = {r.to_json(), r.pass ? ok : verification};
            } catch (const Error& e) {
                const bool input = dynamic_cast<const DomainError*>(&e) || dynamic_cast<const ParameterError*>(&e);
                slots[i] = {json{{"k", ks[i]}, {"alpha", o.alpha}, {"error", e.what()}}.dump(1),
                            input ? usage : numerical};
            }
        }
    };
    const unsigned nt = std::min<unsigned>(thread_count(), static_cast<unsigned>(ks.size()));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < nt; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    json arr = json::array();
    int code = ok;
    for (const auto& s : slots) {
        arr.push_back(json::parse(s.report));
        code = std::max(code, s.code);
    }
    emit(arr.dump(1), o.output, out);
    err << "connection: " << ks.size() << " runs on " << nt << " thread(s)\n";
    return code;
}

struct TransformOpts {
    bool list = false;
    std::string id, source = "seeded", grid, output;
    std::optional<double> alpha, expect_alpha, kappa;
    std::optional<int> n;
    double tol = 1e-6;
};

transforms::Source source_from_file(const std::string& path, transforms::TransformId id, std::optional<int> n) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ParameterError("source '" + path + "': " + e.what());
    }
    if (j.is_object() && j.value("kind", "") == "dp2_ladder") {
        const auto st = ladder_from_json(j);
        if (!n) throw ParameterError("a ladder source needs --n");
        const int count = id == transforms::TransformId::CSG_RATIO_TO_P3 ? 2 : 1;
        auto s = transforms::from_ladder(st, *n, count);
        s.description = path;
        return s;
    }
    // trajectory file: the stored (z, w, w') samples are used as they are
    const auto t = solver::trajectory_from_json(j.dump());
    transforms::Curve c;
    switch (t.equation) {
        case equations::EquationId::PII: c.eq = transforms::Eq::PII; break;
        case equations::EquationId::P34: c.eq = transforms::Eq::P34; break;
        case equations::EquationId::PIII6: c.eq = transforms::Eq::PIII6; break;
        default: throw ParameterError("source '" + path + "': unsupported equation " + equations::to_string(t.equation));
    }
    for (const auto& [k, v] : t.params.entries()) c.params[equations::to_string(k)] = v;
    for (const auto& s : t.samples) {
        if (!std::isfinite(s.w) || !std::isfinite(s.dw)) continue;
        c.s.push_back(s.z);
        c.state.push_back({s.w, s.dw, 0.0});
    }
    if (!c.s.empty() && c.s.front() > c.s.back()) {
        std::reverse(c.s.begin(), c.s.end());
        std::reverse(c.state.begin(), c.state.end());
    }
    transforms::Source src;
    src.description = path;
    src.parts.push_back(std::move(c));
    return src;
}

int cmd_transform(const TransformOpts& o, std::ostream& out) {
    using transforms::TransformId;
    if (o.list) {
        json arr = json::array();
        for (auto id : transforms::all_transforms()) {
            const auto& in = transforms::info(id);
            arr.push_back({{"id", transforms::to_string(id)},
                           {"source", transforms::to_string(in.source)},
                           {"target", transforms::to_string(in.target)},
                           {"map", in.map},
                           {"target_params", in.target_rule}});
        }
        emit(arr.dump(1), o.output, out);
        return ok;
    }
    if (o.id.empty()) throw ParameterError("transform: --id or --list required");
    const auto id = transforms::transform_from_string(o.id);
    if (!(o.tol > 0.0)) throw ParameterError("--tol must be positive");

    transforms::Source src;
    if (o.source == "zero" || o.source == "linear") {
        const bool zero = o.source == "zero";
        const auto g = numeric::parse_grid(o.grid.empty() ? "0.5:5:0.05" : o.grid);
        const double h = g.size() > 1 ? g[1] - g[0] : 1.0;
        src = zero ? transforms::zero_p2(g.front(), g.back(), h) : transforms::linear_p34(g.front(), g.back(), h);
        if (o.alpha) src.parts[0].params["alpha"] = *o.alpha;
    } else if (o.source == "seeded") {
        src = transforms::seeded_source(id);
    } else {
        src = source_from_file(o.source, id, o.n);
    }
    if (o.alpha && o.source != "zero" && o.source != "linear") {
        for (auto& c : src.parts) c.params["alpha"] = *o.alpha;
    }
    transforms::Params extra;
    if (o.kappa) extra["kappa"] = *o.kappa;

    std::optional<transforms::Params> expect;
    if (o.expect_alpha) {
        auto m = transforms::apply(id, src, extra);
        expect = m.target_params;
        (*expect)["alpha"] = *o.expect_alpha;
    }
    const auto r = transforms::verify(id, src, o.tol, extra, expect);
    emit(r.to_json(), o.output, out);
    return r.pass ? ok : verification;
}

struct LadderOpts {
    int n_max = 4;
    double c1 = 1.0, c2 = 0.0;
    std::string grid = "1:6:0.01", output, format = "json";
    double tol = 1e-6;
};

int cmd_ladder(const LadderOpts& o, std::ostream& out, std::ostream& err) {
    if (o.n_max < 1) throw ParameterError("--n-max must be >= 1");
    const auto st = specialsol::dp2_ladder(o.n_max, o.c1, o.c2, numeric::parse_grid(o.grid));
    const auto rep = specialsol::ladder_verify(st, o.tol);
    emit(o.format == "csv" ? ladder_csv(st) : ladder_json(st, rep), o.output, out);
    double worst = 0.0;
    for (const auto& c : rep.checks) worst = std::max({worst, c.res_a, c.res_b, c.res_ode});
    err << "ladder: n_max = " << o.n_max << ", max residual " << worst << (rep.pass ? " (pass)" : " (FAIL)") << '\n';
    return rep.pass ? ok : verification;
}

}  // namespace

unsigned thread_count() {
    if (const char* env = std::getenv("PAINLEVE_KIT_THREADS"); env && *env) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (*end != '\0' || v < 1 || v > 1024)
            throw ParameterError(std::string("PAINLEVE_KIT_THREADS must be an integer in [1, 1024], got '") + env + "'");
        return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Painleve equation toolkit", "painleve-kit"};
    app.require_subcommand(1);

    SolveOpts so;
    auto* solve = app.add_subcommand("solve", "integrate a Painleve equation, write a trajectory");
    solve->add_option("--eq", so.eq, "equation id (PI, PII, PIII6, ..., P34)")->required();
    so.params.add(solve);
    solve->add_option("--w0", so.w0, "w at --from");
    solve->add_option("--dw0", so.dw0, "w' at --from");
    solve->add_option("--airy-k", so.airy_k, "seed k Ai(z) at --from (PII, alpha = 0, from >= 8)");
    solve->add_option("--from", so.from, "start")->required();
    solve->add_option("--to", so.to, "end")->required();
    solve->add_flag("--pole-aware", so.pole_aware, "continue through poles (PI, PII, P34)");
    solve->add_option("--grid", so.grid, "output grid a:b:h");
    solve->add_option("--rtol", so.rtol, "relative tolerance");
    solve->add_option("--atol", so.atol, "absolute tolerance");
    solve->add_option("--max-step", so.max_step, "largest step");
    solve->add_option("--output,-o", so.output, "output file (default stdout)");
    solve->add_option("--format", so.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    YvOpts yo;
    auto* yv = app.add_subcommand("yv", "Yablonskii-Vorob'ev polynomial or its roots");
    yv->add_option("--n", yo.n, "index")->required();
    yv->add_flag("--roots", yo.roots, "write roots as CSV");
    yv->add_option("--output,-o", yo.output, "output file");

    ConnOpts co;
    auto* conn = app.add_subcommand("connection", "check connection formulas against a fitted trajectory");
    conn->add_option("--k", co.k, "Airy amplitude");
    conn->add_option("--k-sweep", co.sweep, "a:b:n, n values of k run concurrently");
    conn->add_option("--alpha", co.alpha, "P_II parameter");
    conn->add_option("--z-start", co.c.z_start, "seed point");
    conn->add_option("--z1", co.c.Z1, "fit window [-Z1, -Z2]");
    conn->add_option("--z2", co.c.Z2, "fit window [-Z1, -Z2]");
    conn->add_option("--tol-amplitude", co.c.tol_amplitude, "amplitude tolerance");
    conn->add_option("--tol-phase", co.c.tol_phase, "phase tolerance");
    conn->add_option("--b-terms", co.c.b_terms, "terms for the decay-series test");
    conn->add_option("--output,-o", co.output, "output file");

    TransformOpts to;
    auto* tr = app.add_subcommand("transform", "apply and verify a transformation");
    tr->add_flag("--list", to.list, "list transform ids");
    tr->add_option("--id", to.id, "transform id");
    tr->add_option("--source", to.source, "zero, linear, seeded, or a trajectory/ladder JSON file");
    tr->add_option("--grid", to.grid, "grid a:b:h for zero/linear sources");
    tr->add_option("--alpha", to.alpha, "source alpha");
    tr->add_option("--n", to.n, "ladder index for ladder sources");
    tr->add_option("--kappa", to.kappa, "kappa of the map (P2_TO_MJ34)");
    tr->add_option("--expect-alpha", to.expect_alpha, "require this target alpha");
    tr->add_option("--tol", to.tol, "residual tolerance");
    tr->add_option("--output,-o", to.output, "output file");

    LadderOpts lo;
    auto* la = app.add_subcommand("ladder", "Bessel-seeded discrete P_II ladder");
    la->add_option("--n-max", lo.n_max, "highest n");
    la->add_option("--c1", lo.c1, "I coefficient");
    la->add_option("--c2", lo.c2, "K coefficient");
    la->add_option("--grid", lo.grid, "r grid a:b:h");
    la->add_option("--tol", lo.tol, "verification tolerance");
    la->add_option("--output,-o", lo.output, "output file");
    la->add_option("--format", lo.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    try {
        const auto args = merge_config(args_in);
        std::vector<std::string> argv_s{"painleve-kit"};
        argv_s.insert(argv_s.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        for (const auto& a : argv_s) argv.push_back(a.c_str());
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp&) {
            out << app.help();
            return ok;
        } catch (const CLI::ParseError& e) {
            err << "usage error: " << e.what() << '\n';
            return usage;
        }
        if (*solve) return cmd_solve(so, out, err);
        if (*yv) return cmd_yv(yo, out);
        if (*conn) return cmd_connection(co, out, err);
        if (*tr) return cmd_transform(to, out);
        if (*la) return cmd_ladder(lo, out, err);
        return usage;
    } catch (const NumericalFailure& e) {
        err << "numerical failure: " << e.what() << '\n';
        return numerical;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const SingularInput& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return numerical;
    }
}

}  // namespace painleve::cli
