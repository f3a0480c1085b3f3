#include "scs/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "scs/bargmann.hpp"
#include "scs/heatkernel.hpp"
#include "scs/hilbert.hpp"
#include "scs/io.hpp"

namespace scs::cli {

namespace {

using io::format_double;
using io::Json;

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(3);
    s << std::scientific << x;
    return s.str();
}

std::string to_text(const Cell& c) {
    if (auto i = std::get_if<long long>(&c)) return std::to_string(*i);
    if (auto d = std::get_if<double>(&c)) return format_double(*d);
    return std::get<std::string>(c);
}

Json to_json(const Cell& c) {
    if (auto i = std::get_if<long long>(&c)) return *i;
    if (auto d = std::get_if<double>(&c)) return *d;
    return std::get<std::string>(c);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

HeatKernelConfig heat_config(const RunConfig& cfg) {
    HeatKernelConfig hk;
    hk.n_nodes = cfg.hk_nodes;
    return hk;
}

GridSizes resolve(GridSizes s, const RunConfig& cfg) {
    if (cfg.n_phi > 0) s.n_phi = cfg.n_phi;
    if (cfg.n_theta > 0) s.n_theta = cfg.n_theta;
    if (cfg.n_alpha > 0) s.n_alpha = cfg.n_alpha;
    if (cfg.l_panels > 0) s.l_panels = cfg.l_panels;
    s.l_order = cfg.l_order;
    s.validate();
    return s;
}

void add_grid_meta(Report& r, const GridSizes& s, const ProductGrid& g) {
    r.meta.emplace_back("n_phi", (long long)s.n_phi);
    r.meta.emplace_back("n_theta", (long long)s.n_theta);
    r.meta.emplace_back("n_alpha", (long long)s.n_alpha);
    r.meta.emplace_back("l_panels", (long long)s.l_panels);
    r.meta.emplace_back("l_order", (long long)s.l_order);
    r.meta.emplace_back("grid_points", (long long)g.size());
}

void add_point_cells(std::vector<Cell>& row, const PhasePoint& p) {
    row.insert(row.end(), {p.theta, p.phi, p.alpha, p.l});
}

int pick(int given, int fallback) { return given >= 0 ? given : fallback; }
int pick_positive(int given, int fallback) { return given > 0 ? given : fallback; }
double pick_tol(double given, double fallback) { return given > 0.0 ? given : fallback; }

struct Check {
    Report& r;

    void operator()(const std::string& name, int j_max, double value, double tol) {
        bool ok = value <= tol;
        r.rows.push_back({name, (long long)j_max, value, tol, yes_no(ok)});
        if (!ok) r.failures.push_back(name + " (j_max=" + std::to_string(j_max) + "): " + fmt(value) + " > " + fmt(tol));
    }
};

const std::array<const char*, 12> env_flags{"--j-max",    "--n-theta", "--n-phi", "--n-alpha",
                                            "--l-panels", "--l-order", "--hk-nodes", "--tol",
                                            "--seed",     "--points",  "--format",  "--out"};

std::string env_name(std::string flag) {
    std::string name = "SCS_";
    for (char c : flag.substr(2)) name += c == '-' ? '_' : char(std::toupper((unsigned char)c));
    return name;
}

/// Prepends --flag value for every SCS_* variable whose flag is absent, so that flags beat the
/// environment and both beat the config file.
std::vector<std::string> with_environment(const std::vector<std::string>& args) {
    std::vector<std::string> extra;
    for (const char* flag : env_flags) {
        const char* value = std::getenv(env_name(flag).c_str());
        if (!value || !*value) continue;
        std::string f = flag;
        bool given = std::any_of(args.begin(), args.end(),
                                 [&](const std::string& a) { return a == f || a.rfind(f + "=", 0) == 0; });
        if (!given) extra.insert(extra.end(), {f, value});
    }
    extra.insert(extra.end(), args.begin(), args.end());
    return extra;
}

}  // namespace

void RunConfig::validate() const {
    if (j_max > 60) throw DomainError("j_max must be in [0, 60]");
    if (n_theta < 0 || n_phi < 0 || n_alpha < 0 || l_panels < 0 || points < 0)
        throw DomainError("sizes must be positive");
    if (l_order < 1 || hk_nodes < 1) throw DomainError("l_order and hk_nodes must be positive");
    if (tol < 0.0 || tol >= 1.0) throw DomainError("tolerance must lie in (0, 1)");
}

void write_report(std::ostream& out, const Report& r, Format f) {
    if (f == Format::json) {
        Json j;
        j["command"] = r.command;
        j["seed"] = r.seed;
        Json meta = Json::object();
        for (const auto& [k, v] : r.meta) meta[k] = to_json(v);
        j["meta"] = meta;
        j["pass"] = r.pass();
        j["failures"] = r.failures;
        j["columns"] = r.columns;
        Json rows = Json::array();
        for (const auto& row : r.rows) {
            Json o = Json::object();
            for (std::size_t i = 0; i < row.size(); ++i) o[r.columns[i]] = to_json(row[i]);
            rows.push_back(std::move(o));
        }
        j["rows"] = std::move(rows);
        out << j.dump(2) << '\n';
        return;
    }
    out << "# command: " << r.command << '\n';
    out << "# seed: " << r.seed << '\n';
    for (const auto& [k, v] : r.meta) out << "# " << k << ": " << to_text(v) << '\n';
    out << "# pass: " << (r.pass() ? "true" : "false") << '\n';
    for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << r.columns[i];
    out << '\n';
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(to_text(row[i]));
        out << '\n';
    }
}

std::pair<int, int> parse_range(const std::string& s) {
    static const std::regex re(R"(\s*(\d{1,3})\s*(?:\.\.\s*(\d{1,3})\s*)?)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw UsageError("malformed range '" + s + "', expected a..b");
    int a = std::stoi(m[1]);
    int b = m[2].matched ? std::stoi(m[2]) : a;
    if (a > b || b > 12) throw UsageError("range '" + s + "' must satisfy 0 <= a <= b <= 12");
    return {a, b};
}

PhasePoint parse_point(const std::string& s) {
    std::vector<double> v;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(tok, &used));
            if (tok.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(tok);
        } catch (const std::logic_error&) {
            throw UsageError("malformed phase point '" + s + "'");
        }
    }
    if (v.size() != 4) throw UsageError("phase point '" + s + "' needs theta,phi,alpha,l");
    PhasePoint p{v[0], v[1], v[2], v[3]};
    try {
        p.validate();
    } catch (const DomainError& e) {
        throw UsageError(std::string("phase point '") + s + "': " + e.what());
    }
    return p;
}

Report cmd_moments(std::pair<int, int> j_range, const RunConfig& cfg) {
    cfg.validate();
    Report r;
    r.command = "moments";
    r.seed = cfg.seed;
    HeatKernelConfig hk = heat_config(cfg);
    r.meta.emplace_back("j_range", std::to_string(j_range.first) + ".." + std::to_string(j_range.second));
    r.meta.emplace_back("hk_nodes", (long long)hk.n_nodes);
    r.columns = {"j", "moment", "target", "rel_error", "tolerance", "pass"};
    for (int j = j_range.first; j <= j_range.second; ++j) {
        double m = moment(j, hk);
        double target = std::exp(double(j) * (j + 1));
        double rel = std::abs(m / target - 1.0);
        double tol = pick_tol(cfg.tol, j <= 8 ? 1e-6 : 1e-4);
        bool ok = rel <= tol;
        r.rows.push_back({(long long)j, m, target, rel, tol, yes_no(ok)});
        if (!ok) r.failures.push_back("j=" + std::to_string(j) + ": relative error " + fmt(rel) + " > " + fmt(tol));
    }
    return r;
}

Report cmd_gram(const RunConfig& cfg) {
    cfg.validate();
    BasisSpec spec{pick(cfg.j_max, 2)};
    spec.validate();
    GridSizes sizes = resolve(GridSizes::defaults(spec.j_max), cfg);
    ProductGrid grid = make_bargmann_grid(sizes, heat_config(cfg));
    Eigen::MatrixXcd g = gram_matrix(spec, grid);
    double tol = pick_tol(cfg.tol, spec.j_max <= 2 ? 1e-6 : 1e-5);

    Report r;
    r.command = "gram";
    r.seed = cfg.seed;
    r.meta.emplace_back("j_max", (long long)spec.j_max);
    add_grid_meta(r, sizes, grid);
    r.columns = {"row", "col", "j_row", "m_row", "j_col", "m_col", "re", "im", "deviation"};
    double worst = 0.0;
    for (int a = 0; a < g.rows(); ++a) {
        auto [ja, ma] = BasisSpec::jm(a);
        for (int b = 0; b < g.cols(); ++b) {
            auto [jb, mb] = BasisSpec::jm(b);
            double dev = std::abs(g(a, b) - (a == b ? 1.0 : 0.0));
            worst = std::max(worst, dev);
            r.rows.push_back({(long long)a, (long long)b, (long long)ja, (long long)ma, (long long)jb, (long long)mb,
                              g(a, b).real(), g(a, b).imag(), dev});
        }
    }
    r.meta.emplace_back("max_deviation", worst);
    r.meta.emplace_back("tolerance", tol);
    if (worst > tol) r.failures.push_back("max |G - I| " + fmt(worst) + " > " + fmt(tol));
    return r;
}

Report cmd_reproduce(const RunConfig& cfg) {
    cfg.validate();
    BasisSpec spec{pick(cfg.j_max, 3)};
    spec.validate();
    int n_points = pick_positive(cfg.points, 20);
    const double l_max = 1.0;
    int n_ang = 2 * spec.j_max + 7;
    GridSizes sizes = resolve({n_ang, n_ang, n_ang, spec.j_max + 10, 16}, cfg);
    ProductGrid grid = make_bargmann_grid(sizes, heat_config(cfg));
    double tol = pick_tol(cfg.tol, 1e-6);

    std::vector<BargmannFn> fns;
    for (int j = 0; j <= spec.j_max; ++j)
        for (int m = -j; m <= j; ++m) fns.push_back(BargmannFn::basis(j, m, spec));
    std::mt19937_64 rng(cfg.seed);
    std::vector<PhasePoint> pts;
    std::vector<ComplexVec3> ws;
    for (int k = 0; k < n_points; ++k) {
        pts.push_back(sample_phase_point(rng, l_max));
        ws.push_back(phase_to_z(pts.back()));
    }
    Eigen::MatrixXcd rep = reproduce_batch(fns, ws, grid);

    Report r;
    r.command = "reproduce";
    r.seed = cfg.seed;
    r.meta.emplace_back("j_max", (long long)spec.j_max);
    r.meta.emplace_back("points", (long long)n_points);
    r.meta.emplace_back("l_max", l_max);
    add_grid_meta(r, sizes, grid);
    r.columns = {"point", "theta", "phi", "alpha", "l", "j", "m", "exact_re", "exact_im", "quad_re", "quad_im",
                 "rel_error"};
    double worst = 0.0;
    for (int a = 0; a < n_points; ++a) {
        for (int b = 0; b < spec.dim(); ++b) {
            auto [j, m] = BasisSpec::jm(b);
            Complex exact = fns[b](ws[a]);
            double rel = std::abs(rep(a, b) - exact) / std::max(std::abs(exact), 1e-300);
            worst = std::max(worst, rel);
            std::vector<Cell> row{(long long)a};
            add_point_cells(row, pts[a]);
            row.insert(row.end(), {(long long)j, (long long)m, exact.real(), exact.imag(), rep(a, b).real(),
                                   rep(a, b).imag(), rel});
            r.rows.push_back(std::move(row));
            if (rel > tol)
                r.failures.push_back("point " + std::to_string(a) + ", (j,m)=(" + std::to_string(j) + "," +
                                     std::to_string(m) + "): relative error " + fmt(rel) + " > " + fmt(tol));
        }
    }
    r.meta.emplace_back("max_rel_error", worst);
    r.meta.emplace_back("tolerance", tol);
    return r;
}

Report cmd_operators(const RunConfig& cfg) {
    cfg.validate();
    Report r;
    r.command = "operators";
    r.seed = cfg.seed;
    int n_points = pick_positive(cfg.points, 20);
    r.meta.emplace_back("points", (long long)n_points);
    r.columns = {"check", "j_max", "value", "tolerance", "pass"};
    Check check{r};
    auto tol = [&](double t) { return pick_tol(cfg.tol, t); };
    auto spec_for = [&](int fallback) {
        BasisSpec s{pick(cfg.j_max, fallback)};
        s.validate();
        return s;
    };
    std::mt19937_64 rng(cfg.seed);

    BasisSpec alg = spec_for(12);
    AlgebraResiduals a = algebra_residuals(alg);
    check("jj_commutators", alg.j_max, a.jj_commutators, tol(1e-10));
    check("xx_commutators", alg.j_max, a.xx_commutators, tol(1e-10));
    check("jx_commutators", alg.j_max, a.jx_commutators, tol(1e-10));
    check("x_squared", alg.j_max, a.x_squared, tol(1e-10));
    check("j_dot_x", alg.j_max, a.j_dot_x, tol(1e-10));
    check("z_squared_scaled", alg.j_max, a.z_squared_scaled, tol(1e-10));
    check("hermiticity", alg.j_max, a.hermiticity, tol(1e-10));
    BasisSpec small{std::min(alg.j_max, 6)};
    check("z_squared", small.j_max, algebra_residuals(small).z_squared, tol(1e-10));

    BasisSpec eig = spec_for(14);
    double worst = 0.0;
    for (int k = 0; k < n_points; ++k)
        worst = std::max(worst, eigenrelation_residual(phase_to_z(sample_phase_point(rng, 0.5)), eig));
    check("eigenrelation", eig.j_max, worst, tol(1e-8));

    BasisSpec rot = spec_for(10);
    worst = 0.0;
    for (int k = 0; k < n_points; ++k) {
        ComplexVec3 z = phase_to_z(sample_phase_point(rng, 1.0));
        StateVector a1 = coherent_via_rotation(z, rot);
        StateVector a2 = coherent_state(z, rot);
        worst = std::max(worst, (a1.c - a2.c).cwiseAbs().maxCoeff());
    }
    check("rotation_vs_closed_form", rot.j_max, worst, tol(1e-10));

    BasisSpec cr = spec_for(8);
    const Complex i1(0.0, 1.0);
    const std::array<std::array<Complex, 3>, 3> ws{{{0.0, 0.5, 0.0}, {i1 / 3.0, 0.0, 0.0}, {0.2, -0.1 * i1, 0.3}}};
    worst = 0.0;
    for (const auto& w : ws) worst = std::max(worst, complex_rotation_residual(w, cr));
    check("complex_rotation", cr.j_max, worst, tol(1e-10));

    BasisSpec xs = spec_for(8);
    X3Equivalence x = x3_action_equivalence(xs);
    check("x1_conjugation", xs.j_max, x.x1, tol(1e-9));
    check("x2_conjugation", xs.j_max, x.x2, tol(1e-9));
    check("x3_conjugation", xs.j_max, x.x3, tol(1e-9));
    check("z1_conjugation", xs.j_max, x.z1, tol(1e-9));
    check("z2_conjugation", xs.j_max, x.z2, tol(1e-9));
    check("z3_conjugation", xs.j_max, x.z3, tol(1e-9));
    check("zero_exponent", xs.j_max, x.zero_exponent, tol(1e-9));
    check("z3_pointwise", xs.j_max, x.pointwise, tol(1e-10));

    BasisSpec dj = spec_for(6);
    const std::array<std::pair<JComponent, Op>, 4> comps{
        {{JComponent::J1, Op::J1}, {JComponent::J2, Op::J2}, {JComponent::J3, Op::J3}, {JComponent::Jsq, Op::Jsq}}};
    const std::array<const char*, 4> names{"diff_J1", "diff_J2", "diff_J3", "diff_Jsq"};
    std::array<double, 4> diff{};
    std::vector<ComplexVec3> zs;
    for (int k = 0; k < n_points; ++k) zs.push_back(phase_to_z(sample_phase_point(rng, 1.0)));
    for (std::size_t c = 0; c < comps.size(); ++c) {
        Eigen::MatrixXcd m = op_matrix(comps[c].second, dj).entries;
        for (int j = 0; j + 2 <= dj.j_max; ++j) {
            for (int mm = -j; mm <= j; ++mm) {
                BargmannFn f = BargmannFn::basis(j, mm, dj);
                BargmannFn mf = BargmannFn::from_coeffs(StateVector{dj, m * f.coeffs()->c});
                for (const auto& z : zs) {
                    Complex ref = mf(z);
                    double d = std::abs(apply_diff_J(f, comps[c].first, z) - ref) / std::max(1.0, std::abs(ref));
                    diff[c] = std::max(diff[c], d);
                }
            }
        }
        check(names[c], dj.j_max, diff[c], tol(1e-10));
    }
    return r;
}

Report cmd_overlap(const std::vector<std::pair<PhasePoint, PhasePoint>>& given, const RunConfig& cfg) {
    cfg.validate();
    BasisSpec spec{pick(cfg.j_max, 12)};
    spec.validate();
    double tol = pick_tol(cfg.tol, 1e-10);
    auto pairs = given;
    if (pairs.empty()) {
        std::mt19937_64 rng(cfg.seed);
        int n = pick_positive(cfg.points, 50);
        for (int k = 0; k < n; ++k) {
            PhasePoint p = sample_phase_point(rng, 1.0);
            PhasePoint q = sample_phase_point(rng, 1.0);
            pairs.emplace_back(p, q);
        }
    }

    Report r;
    r.command = "overlap";
    r.seed = cfg.seed;
    r.meta.emplace_back("j_max", (long long)spec.j_max);
    r.meta.emplace_back("pairs", (long long)pairs.size());
    r.meta.emplace_back("source", given.empty() ? "seeded" : "explicit");
    ComplexVec3 n3{0.0, 0.0, 1.0};
    r.meta.emplace_back("n3_overlap", overlap(n3, n3).real());
    r.columns = {"pair",     "theta_z",   "phi_z",  "alpha_z", "l_z",    "theta_w",   "phi_w",
                 "alpha_w",  "l_w",       "series_re", "series_im", "sum_re", "sum_im", "difference"};
    double worst = 0.0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        ComplexVec3 z = phase_to_z(pairs[k].first);
        ComplexVec3 w = phase_to_z(pairs[k].second);
        Complex series = overlap(z, w);
        Complex sum = coherent_state(z, spec).c.dot(coherent_state(w, spec).c);
        double d = std::abs(series - sum) / std::max(1.0, std::abs(series));
        worst = std::max(worst, d);
        std::vector<Cell> row{(long long)k};
        add_point_cells(row, pairs[k].first);
        add_point_cells(row, pairs[k].second);
        row.insert(row.end(), {series.real(), series.imag(), sum.real(), sum.imag(), d});
        r.rows.push_back(std::move(row));
        if (d > tol) r.failures.push_back("pair " + std::to_string(k) + ": difference " + fmt(d) + " > " + fmt(tol));
    }
    r.meta.emplace_back("max_difference", worst);
    r.meta.emplace_back("tolerance", tol);
    return r;
}

Report cmd_husimi(const PhasePoint& p, const RunConfig& cfg, std::ostream& field_out) {
    cfg.validate();
    int n_theta = pick_positive(cfg.n_theta, 200);
    int n_phi = pick_positive(cfg.n_phi, 400);
    double tol = pick_tol(cfg.tol, 1e-8);
    HusimiField f = husimi_grid(p, n_theta, n_phi);
    auto [nt, np] = nearest_node(f, unit_vector(p.theta, p.phi));

    Report r;
    r.command = "husimi";
    r.seed = cfg.seed;
    r.meta.emplace_back("normalization", f.normalization);
    r.meta.emplace_back("tolerance", tol);
    r.meta.emplace_back("nearest_theta_index", (long long)nt);
    r.meta.emplace_back("nearest_phi_index", (long long)np);
    double err = std::abs(f.normalization - 1.0);
    if (err > tol) r.failures.push_back("normalization error " + fmt(err) + " > " + fmt(tol));

    if (cfg.format == Format::json) {
        Json j;
        j["command"] = r.command;
        j["seed"] = r.seed;
        j["pass"] = r.pass();
        j["nearest"] = {{"theta_index", nt}, {"phi_index", np}};
        j["field"] = io::to_json(f);
        field_out << j.dump(2) << '\n';
    } else {
        field_out << "# command: husimi\n# seed: " << r.seed << '\n';
        io::write_csv(field_out, f);
    }
    return r;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bargmann representation on the sphere: verification suites and Husimi grids", "scs"};
    app.fallthrough();
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML/INI file with option defaults")->envname("SCS_CONFIG");

    RunConfig cfg;
    std::string format = "csv";
    auto positive = CLI::PositiveNumber;
    auto tol_check = CLI::Validator(
        [](std::string& s) -> std::string {
            double v = 0;
            try {
                v = std::stod(s);
            } catch (const std::logic_error&) {
                return "not a number: " + s;
            }
            return (v > 0.0 && v < 1.0) ? std::string() : "tolerance must lie in (0, 1)";
        },
        "(0,1)");

    app.add_option("--j-max", cfg.j_max, "Basis truncation j_max")->check(CLI::Range(0, 60));
    app.add_option("--n-theta", cfg.n_theta, "theta nodes")->check(positive);
    app.add_option("--n-phi", cfg.n_phi, "phi nodes")->check(positive);
    app.add_option("--n-alpha", cfg.n_alpha, "alpha nodes")->check(positive);
    app.add_option("--l-panels", cfg.l_panels, "unit l panels")->check(positive);
    app.add_option("--l-order", cfg.l_order, "Gauss-Legendre order per l panel")->check(positive);
    app.add_option("--hk-nodes", cfg.hk_nodes, "heat-kernel quadrature order")->check(positive);
    app.add_option("--tol", cfg.tol, "tolerance override")->check(tol_check);
    app.add_option("--seed", cfg.seed, "seed for sampled phase points");
    app.add_option("--points", cfg.points, "sampled points or pairs")->check(positive);
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", cfg.out, "output file (default: standard output)");

    std::string range;
    auto* moments = app.add_subcommand("moments", "moment identity of the density h(l)");
    moments->add_option("range", range, "j range a..b")->required();
    app.add_subcommand("gram", "Gram matrix of the basis functions");
    app.add_subcommand("reproduce", "reproducing property at sampled points");
    app.add_subcommand("operators", "operator algebra and coherent-state identities");
    std::vector<std::string> pair_args;
    auto* ov = app.add_subcommand("overlap", "series overlap against the coefficient sum");
    ov->add_option("--pair", pair_args, "theta,phi,alpha,l;theta,phi,alpha,l");
    std::string point = "1.0,0.5,0,0.1";
    auto* hu = app.add_subcommand("husimi", "Husimi density on a theta x phi grid");
    hu->add_option("--point", point, "theta,phi,alpha,l")->capture_default_str();

    std::vector<std::string> full = with_environment(args);
    std::vector<std::string> reversed(full.rbegin(), full.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::FileError& e) {
        err << "scs: " << e.what() << '\n';
        return io_failure;
    } catch (const CLI::ParseError& e) {
        err << "scs: " << e.what() << '\n';
        return usage;
    }
    cfg.format = format == "json" ? Format::json : Format::csv;

    std::ostringstream buf;
    Report report;
    try {
        cfg.validate();
        auto* sub = app.get_subcommands().front();
        const std::string verb = sub->get_name();
        if (verb == "moments") {
            report = cmd_moments(parse_range(range), cfg);
        } else if (verb == "gram") {
            report = cmd_gram(cfg);
        } else if (verb == "reproduce") {
            report = cmd_reproduce(cfg);
        } else if (verb == "operators") {
            report = cmd_operators(cfg);
        } else if (verb == "overlap") {
            std::vector<std::pair<PhasePoint, PhasePoint>> pairs;
            for (const auto& s : pair_args) {
                auto semi = s.find(';');
                if (semi == std::string::npos) throw UsageError("--pair needs two points separated by ';'");
                pairs.emplace_back(parse_point(s.substr(0, semi)), parse_point(s.substr(semi + 1)));
            }
            report = cmd_overlap(pairs, cfg);
        } else {
            report = cmd_husimi(parse_point(point), cfg, buf);
        }
        if (verb != "husimi") write_report(buf, report, cfg.format);
    } catch (const UsageError& e) {
        err << "scs: " << e.what() << '\n';
        return usage;
    } catch (const DomainError& e) {
        err << "scs: " << e.what() << '\n';
        return usage;
    } catch (const AccuracyError& e) {
        err << "scs: " << e.what() << '\n';
        return numeric_failure;
    } catch (const ConvergenceError& e) {
        err << "scs: " << e.what() << '\n';
        return numeric_failure;
    }

    if (cfg.out.empty()) {
        out << buf.str();
    } else {
        std::ofstream file(cfg.out, std::ios::binary);
        if (!(file << buf.str()) || !file.flush()) {
            err << "scs: cannot write " << cfg.out << '\n';
            return io_failure;
        }
    }
    for (const auto& f : report.failures) err << "scs " << report.command << ": " << f << '\n';
    return report.pass() ? ok : numeric_failure;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, out, err);
}

}  // namespace scs::cli
