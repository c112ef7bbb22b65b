#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "valinf/boundary_io.hpp"
#include "valinf/circle.hpp"
#include "valinf/markov.hpp"
#include "valinf/report.hpp"
#include "valinf/torus.hpp"

namespace valinf::cli {

struct CliResult {
    int exit_code = 0;
    Report report;
    std::string output; // rendered report (text or json)
    std::string error;  // diagnostic for nonzero exits
};

namespace detail {

inline std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::vector<Rational> parse_rationals(const std::string& text, size_t expect) {
    auto parts = split(text, ',');
    if (parts.size() != expect)
        throw ParseError("expected " + std::to_string(expect) + " comma-separated values in '" +
                         text + "'");
    std::vector<Rational> out;
    for (const auto& p : parts)
        out.push_back(parse_rational(p));
    return out;
}

inline void emit_quadratic(Report& r, const std::string& prefix, const QuadraticInteger& q) {
    r.set(prefix + ".t", q.t);
    r.set(prefix + ".n", q.n);
    r.set(prefix + ".disc", q.disc());
    r.set(prefix + ".poly", q.poly_string());
    r.set(prefix + ".value", q.value().str());
}

inline void emit_graph(Report& r, const std::string& prefix, const BoundaryGraph& g) {
    std::string ids;
    for (const auto& c : g.curves()) {
        if (!ids.empty())
            ids += ' ';
        ids += c.id;
    }
    r.set(prefix + ".curves", ids);
    for (const auto& c : g.curves()) {
        std::string entry = "self=" + std::to_string(c.self);
        if (c.genus)
            entry += " genus=" + std::to_string(c.genus);
        if (c.nodes)
            entry += " nodes=" + std::to_string(c.nodes);
        r.set(prefix + ".curve." + c.id, entry);
    }
}

inline void analyze_boundary(Report& r, const std::string& prefix, const BoundaryGraph& g) {
    const Shape shape = classify_shape(g);
    r.set(prefix + ".shape", to_string(shape));
    if (shape == Shape::Cycle)
        r.set(prefix + ".nodal", is_nodal_cycle(g));
    r.set(prefix + ".euler", euler_invariant(g));
    r.set(prefix + ".h0", h0_log_canonical(g));
    const SymForm form = g.intersection_form();
    r.set(prefix + ".inertia", to_string(inertia(form)));
    r.set(prefix + ".kdelta", to_string(k_delta_pairing(g)));
    try {
        const auto dual = dual_basis(form);
        const auto ids = g.ids();
        for (size_t i = 0; i < dual.size(); ++i)
            r.set(prefix + ".dual." + ids[i], to_string(dual[i]));
    } catch (const DegenerateForm&) {
        r.set(prefix + ".dual", "DegenerateForm");
    }
    const SurfaceVerdict v = classify_surface(g);
    r.set(prefix + ".verdict", to_string(v.verdict));
    if (!v.detail.empty())
        r.set(prefix + ".verdict.detail", v.detail);
}

struct Options {
    bool json = false;

    std::string boundary_file;
    bool minimize = false;

    std::string edge;
    int samples = 5;
    std::string scale = "1";

    std::string word;
    int depth = 8;
    int oracle_depth = 2;
    std::string params = "1,2,3,5";
    std::string start;
    int steps = 10;

    std::string matrix;
};

inline MarkovSurface surface_from(const std::string& params) {
    auto v = parse_rationals(params, 4);
    return MarkovSurface{v[0], v[1], v[2], v[3]};
}

inline MonomialMap matrix_from(const std::string& text) {
    auto parts = split(text, ',');
    if (parts.size() != 4)
        throw ParseError("expected --matrix a,b,c,d, got '" + text + "'");
    return MonomialMap(parse_integer(parts[0]), parse_integer(parts[1]), parse_integer(parts[2]),
                       parse_integer(parts[3]));
}

inline BoundaryGraph boundary_from_file(const std::string& path, Report& r) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open boundary file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    r.set("input.file", path);
    r.set("input.digest", content_digest(text));
    return parse_boundary(text);
}

inline void cmd_classify(const Options& opt, Report& r) {
    r.set("command", "classify");
    const BoundaryGraph g = boundary_from_file(opt.boundary_file, r);
    analyze_boundary(r, "result", g);
    if (opt.minimize) {
        const BoundaryGraph m = minimize_cycle(g);
        emit_graph(r, "minimized", m);
        analyze_boundary(r, "minimized", m);
    }
}

inline void cmd_dual(const Options& opt, Report& r) {
    r.set("command", "dual");
    const BoundaryGraph g = boundary_from_file(opt.boundary_file, r);
    const SymForm form = g.intersection_form();
    r.set("result.inertia", to_string(inertia(form)));
    const auto dual = dual_basis(form); // throws DegenerateForm on torus-like data
    const auto ids = g.ids();
    bool duality_ok = true;
    for (size_t i = 0; i < dual.size(); ++i) {
        r.set("result.dual." + ids[i], to_string(dual[i]));
        const Vec check = form.apply(dual[i]);
        for (size_t j = 0; j < check.size(); ++j)
            if (check[j] != Rational(i == j ? 1 : 0))
                duality_ok = false;
    }
    for (size_t i = 0; i < dual.size(); ++i) {
        Vec self_row(dual.size());
        for (size_t j = 0; j < dual.size(); ++j)
            self_row[j] = dual[i][j];
        r.set("result.pairing." + ids[i], to_string(self_row));
    }
    r.check("duality", duality_ok);
}

inline void cmd_circle(const Options& opt, Report& r) {
    r.set("command", "circle");
    const BoundaryGraph g = boundary_from_file(opt.boundary_file, r);
    if (classify_shape(g) != Shape::Cycle)
        throw NotACycle("circle requires a cyclic boundary");
    auto ids = split(opt.edge, ',');
    if (ids.size() != 2)
        throw ParseError("expected --edge E,F, got '" + opt.edge + "'");
    const Rational scale = parse_rational(opt.scale);
    if (scale <= 0)
        throw InvalidWeight("--scale must be positive");
    r.set("result.edge", ids[0] + "," + ids[1]);
    r.set("result.samples", opt.samples);
    for (const auto& id : ids) {
        const CirclePoint v = CirclePoint::vertex(id);
        r.set("result.vertex." + id + ".z2", z_self_intersection(g, v));
        r.set("result.vertex." + id + ".zk", z_kdelta(g, v));
        r.set("result.vertex." + id + ".nef", is_nef_at_level(g, v));
    }
    const int n = opt.samples;
    for (int k = 1; k <= n; ++k) {
        const Rational s = Rational(k, n + 1 - k) * scale;
        const CirclePoint v = CirclePoint::edge_point(ids[0], ids[1], s);
        const std::string row = "result.row." + std::to_string(k);
        r.set(row + ".s", s);
        r.set(row + ".z2", z_self_intersection(g, v));
        r.set(row + ".zk", z_kdelta(g, v));
        r.set(row + ".nef", is_nef_at_level(g, v));
    }
}

inline void cmd_markov_lambda(const Options& opt, Report& r) {
    r.set("command", "markov.lambda");
    const VietaWord word = VietaWord::parse(opt.word);
    r.set("result.word", word.str());
    const LambdaReport rep = lambda_of_word(word, opt.depth);
    if (rep.was_reduced)
        r.set("result.word.reduced", rep.word_used.str());
    r.set("result.depth", std::max(opt.depth, 6));
    r.set("result.sequence", to_string(rep.degree_sequence));
    r.set("result.recurrence.order", rep.recurrence.order);
    r.set("result.recurrence.coeffs", to_string(rep.recurrence.coeffs));
    emit_quadratic(r, "result.lambda", rep.lambda);
    r.set("result.loxodromic", rep.lambda.value() > QuadExpr(Rational(1)));
    if (opt.oracle_depth > 0) {
        const MarkovSurface s = surface_from(opt.params);
        const OracleResult oracle =
            composition_oracle(s, rep.word_used, opt.oracle_depth, 100, /*allow_partial=*/true);
        r.set("result.oracle.requested", opt.oracle_depth);
        r.set("result.oracle.completed", oracle.completed);
        const auto maxplus = maxplus_degrees(rep.word_used, oracle.completed);
        bool agree = true;
        for (int i = 0; i < oracle.completed; ++i) {
            const auto& d = oracle.degrees[i];
            r.set("result.oracle.degrees." + std::to_string(i + 1),
                  std::to_string(d[0]) + " " + std::to_string(d[1]) + " " + std::to_string(d[2]));
            if (BigInt(d[0]) != maxplus[i].dx || BigInt(d[1]) != maxplus[i].dy ||
                BigInt(d[2]) != maxplus[i].dz)
                agree = false;
        }
        r.check("oracle_agreement", agree);
    }
}

inline void cmd_markov_orbit(const Options& opt, Report& r) {
    r.set("command", "markov.orbit");
    const MarkovSurface s = surface_from(opt.params);
    const VietaWord word = VietaWord::parse(opt.word);
    auto sv = parse_rationals(opt.start, 3);
    const Point3 start{sv[0], sv[1], sv[2]};
    const auto points = orbit(s, word, start, opt.steps);
    r.set("result.word", word.str());
    r.set("result.steps", opt.steps);
    r.set("result.residual", points.front().residual);
    bool invariant = true;
    for (size_t i = 0; i < points.size(); ++i) {
        const auto& [p, res] = points[i];
        r.set("result.step." + std::to_string(i),
              to_string(p[0]) + " " + to_string(p[1]) + " " + to_string(p[2]));
        if (res != points.front().residual)
            invariant = false;
    }
    r.check("residual_invariant", invariant);
}

inline void cmd_markov_smooth(const Options& opt, Report& r) {
    r.set("command", "markov.smooth");
    const MarkovSurface s = surface_from(opt.params);
    const SmoothReport rep = smoothness_screen(s);
    r.set("result.verdict", to_string(rep.verdict));
    if (!rep.note.empty())
        r.set("result.note", rep.note);
    r.set("result.points.count", static_cast<long long>(rep.points.size()));
    for (size_t i = 0; i < rep.points.size(); ++i) {
        const auto& p = rep.points[i];
        r.set("result.point." + std::to_string(i + 1),
              to_string(p[0]) + " " + to_string(p[1]) + " " + to_string(p[2]));
    }
}

inline void cmd_markov_cayley(const Options& opt, Report& r) {
    r.set("command", "markov.cayley");
    std::vector<std::pair<Rational, Rational>> samples;
    for (int k = 0; k < opt.samples; ++k) {
        Rational u(k + 2, 3);
        if (k % 2)
            u = -u;
        const Rational v(2 * k + 3, 5);
        samples.emplace_back(u, v);
    }
    r.set("result.samples", opt.samples);
    r.check("quotient_identity", cayley_quotient_check(samples));
}

inline void cmd_torus_lambda(const Options& opt, Report& r) {
    r.set("command", "torus.lambda");
    const MonomialMap f = matrix_from(opt.matrix);
    r.set("result.matrix", f.str());
    r.set("result.det", f.det());
    emit_quadratic(r, "result.lambda", dynamical_degree(f));
    r.set("result.loxodromic", is_loxodromic(f));
}

inline void cmd_torus_eigen(const Options& opt, Report& r) {
    r.set("command", "torus.eigen");
    const MonomialMap f = matrix_from(opt.matrix);
    r.set("result.matrix", f.str());
    const EigenData eig = eigenvaluations(f);
    emit_quadratic(r, "result.lambda", eig.lambda);
    r.set("result.eigen.plus.value", eig.eigenvalue_plus.str());
    r.set("result.eigen.plus.ray",
          "(" + eig.ray_plus.first.str() + ", " + eig.ray_plus.second.str() + ")");
    r.set("result.eigen.minus.value", eig.eigenvalue_minus.str());
    r.set("result.eigen.minus.ray",
          "(" + eig.ray_minus.first.str() + ", " + eig.ray_minus.second.str() + ")");
    auto relation_holds = [&](const QuadExpr& mu, const std::pair<QuadExpr, QuadExpr>& ray) {
        const QuadExpr a{Rational(f.a)}, b{Rational(f.b)}, c{Rational(f.c)}, d{Rational(f.d)};
        const QuadExpr m1 = a * ray.first + b * ray.second;
        const QuadExpr m2 = c * ray.first + d * ray.second;
        return m1 == mu * ray.first && m2 == mu * ray.second;
    };
    r.check("eigen_relation_plus", relation_holds(eig.eigenvalue_plus, eig.ray_plus));
    r.check("eigen_relation_minus", relation_holds(eig.eigenvalue_minus, eig.ray_minus));
}

inline void cmd_torus_attract(const Options& opt, Report& r) {
    r.set("command", "torus.attract");
    const MonomialMap f = matrix_from(opt.matrix);
    auto sv = parse_rationals(opt.start, 2);
    const TorusValuation v0(sv[0], sv[1]);
    const AttractionReport rep = attraction_check(f, v0, opt.steps);
    r.set("result.matrix", f.str());
    r.set("result.steps", opt.steps);
    for (size_t i = 0; i < rep.steps.size(); ++i) {
        const auto& st = rep.steps[i];
        r.set("result.step." + std::to_string(i) + ".weight",
              to_string(st.weight1) + " " + to_string(st.weight2));
        r.set("result.step." + std::to_string(i) + ".ratio", st.ratio.str());
    }
    r.set("result.at_attractor", rep.at_attractor);
    r.check("monotone_decrease", rep.monotone);
}

} // namespace detail

// Parses argv-style arguments, runs the command, renders the report. Exit
// codes: 0 success, 2 parse errors, 3 precondition violations, 4
// computation-level verdicts (NotQuadratic, DegenerateForm, ...).
inline CliResult run_cli(const std::vector<std::string>& args) {
    CliResult result;
    detail::Options opt;

    CLI::App app{"exact boundary lattices, circles at infinity and dynamical degrees"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    auto add_json = [&](CLI::App* cmd) { cmd->add_flag("--json", opt.json, "emit JSON"); };

    CLI::App* classify = app.add_subcommand("classify", "classify a boundary file");
    classify->add_option("file", opt.boundary_file, "boundary file")->required();
    classify->add_flag("--minimize", opt.minimize, "also report the minimized cycle");
    add_json(classify);

    CLI::App* dual = app.add_subcommand("dual", "dual classes of a boundary file");
    dual->add_option("file", opt.boundary_file, "boundary file")->required();
    add_json(dual);

    CLI::App* circle = app.add_subcommand("circle", "sample the circle at infinity");
    circle->add_option("file", opt.boundary_file, "boundary file")->required();
    circle->add_option("--edge", opt.edge, "edge E,F")->required();
    circle->add_option("--samples", opt.samples, "number of edge samples");
    circle->add_option("--scale", opt.scale, "sample scale (exact rational)");
    add_json(circle);

    CLI::App* markov = app.add_subcommand("markov", "Markov cubic family");
    markov->require_subcommand(1);
    CLI::App* mlambda = markov->add_subcommand("lambda", "dynamical degree of a Vieta word");
    mlambda->add_option("--word", opt.word, "word over x,y,z")->required();
    mlambda->add_option("--depth", opt.depth, "max-plus applications (>= 6)");
    mlambda->add_option("--oracle-depth", opt.oracle_depth, "composition oracle applications");
    mlambda->add_option("--params", opt.params, "surface parameters A,B,C,D");
    add_json(mlambda);
    CLI::App* morbit = markov->add_subcommand("orbit", "exact Vieta orbit");
    morbit->add_option("--params", opt.params, "surface parameters A,B,C,D")->required();
    morbit->add_option("--start", opt.start, "start point x,y,z")->required();
    morbit->add_option("--word", opt.word, "word over x,y,z")->required();
    morbit->add_option("--steps", opt.steps, "word applications");
    add_json(morbit);
    CLI::App* msmooth = markov->add_subcommand("smooth", "rational singular point screen");
    msmooth->add_option("--params", opt.params, "surface parameters A,B,C,D")->required();
    add_json(msmooth);
    CLI::App* mcayley = markov->add_subcommand("cayley", "Cayley quotient identity check");
    mcayley->add_option("--samples", opt.samples, "number of samples");
    add_json(mcayley);

    CLI::App* torus = app.add_subcommand("torus", "monomial dynamics on the 2-torus");
    torus->require_subcommand(1);
    CLI::App* tlambda = torus->add_subcommand("lambda", "dynamical degree");
    tlambda->add_option("--matrix", opt.matrix, "exponent matrix a,b,c,d")->required();
    add_json(tlambda);
    CLI::App* teigen = torus->add_subcommand("eigen", "eigenvaluations");
    teigen->add_option("--matrix", opt.matrix, "exponent matrix a,b,c,d")->required();
    add_json(teigen);
    CLI::App* tattract = torus->add_subcommand("attract", "attraction toward the eigenray");
    tattract->add_option("--matrix", opt.matrix, "exponent matrix a,b,c,d")->required();
    tattract->add_option("--start", opt.start, "start weight w1,w2")->required();
    tattract->add_option("--steps", opt.steps, "iterations");
    add_json(tattract);

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::Success&) {
        result.output = app.help();
        result.exit_code = 0;
        return result;
    } catch (const CLI::ParseError& e) {
        result.error = e.what();
        result.exit_code = 2;
        return result;
    }

    try {
        if (*classify)
            detail::cmd_classify(opt, result.report);
        else if (*dual)
            detail::cmd_dual(opt, result.report);
        else if (*circle)
            detail::cmd_circle(opt, result.report);
        else if (*mlambda)
            detail::cmd_markov_lambda(opt, result.report);
        else if (*morbit)
            detail::cmd_markov_orbit(opt, result.report);
        else if (*msmooth)
            detail::cmd_markov_smooth(opt, result.report);
        else if (*mcayley)
            detail::cmd_markov_cayley(opt, result.report);
        else if (*tlambda)
            detail::cmd_torus_lambda(opt, result.report);
        else if (*teigen)
            detail::cmd_torus_eigen(opt, result.report);
        else if (*tattract)
            detail::cmd_torus_attract(opt, result.report);
    } catch (const ParseError& e) {
        result.error = e.what();
        result.exit_code = 2;
        return result;
    } catch (const DegenerateForm& e) {
        result.error = e.what();
        result.exit_code = 4;
        return result;
    } catch (const NoRecurrence& e) {
        result.error = e.what();
        result.exit_code = 4;
        return result;
    } catch (const NotQuadratic& e) {
        result.error = e.what();
        result.exit_code = 4;
        return result;
    } catch (const NotLoxodromic& e) {
        result.error = e.what();
        result.exit_code = 4;
        return result;
    } catch (const DegreeOverflow& e) {
        result.error = e.what();
        result.exit_code = 4;
        return result;
    } catch (const Error& e) {
        // Disconnected, InvalidPoint, NotContractible, NotACycle,
        // InvalidWeight, StartsAtRepeller, SingularMatrix
        result.error = e.what();
        result.exit_code = 3;
        return result;
    } catch (const std::invalid_argument& e) {
        result.error = e.what();
        result.exit_code = 3;
        return result;
    }

    result.output = opt.json ? result.report.to_json().dump(2) + "\n" : result.report.to_text();
    return result;
}

} // namespace valinf::cli
