#include "schubert/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "schubert/schubert.hpp"
#include "schubert/verify.hpp"

namespace schubert::cli {

namespace {

int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::not_in_fiber:
        case ErrorKind::not_symmetric:
        case ErrorKind::not_skew_symmetric:
        case ErrorKind::odd_dimension:
        case ErrorKind::singular_input: return not_in_fiber;
        case ErrorKind::convergence_failure:
        case ErrorKind::structure_violation:
        case ErrorKind::real_axis_extraction_failure:
        case ErrorKind::not_in_model:
        case ErrorKind::not_unitary: return convergence_failure;
        default: return usage_or_io;
    }
}

struct Flags {
    std::string in;
    std::string out = "text";
    std::string cls = "general";
    std::optional<std::string> cls_override;
    std::string symbol;
    std::string m, m2;
    int n = 0;
    std::string ring = "Z";
    std::optional<double> tol;
    std::uint64_t seed = 0;
    std::size_t trials = 10;
    std::string suite = "all";
    bool dress = false;
};

ojson factor_json(const PseudoRotation& r, const ToleranceConfig& tol) {
    ojson f;
    f["theta"] = r.theta;
    f["index"] = r.index(tol);
    f["axis"] = vector_to_json(r.axis);
    return f;
}

int cmd_symbol(const Flags& fl, std::ostream& out, std::ostream& err) {
    std::ifstream file(fl.in, std::ios::binary);
    if (!file) {
        err << "error: cannot read " << fl.in << "\n";
        return usage_or_io;
    }
    std::stringstream buf;
    buf << file.rdbuf();
    const std::string text = buf.str();
    MatrixDocument doc = parse_document(text);
    const MatrixClass cls = fl.cls_override ? parse_matrix_class(*fl.cls_override) : doc.cls;
    ToleranceConfig tol;
    if (fl.tol) {
        tol.tol_residual = *fl.tol;
        tol.tol_zero = std::min(tol.tol_zero, *fl.tol);
    }
    tol.validate();

    const CellIdentification id = identify(doc.matrix, cls, tol);
    const bool recon_ok = id.residual <= tol.tol_residual * 10.0;

    if (fl.out == "json") {
        ojson r;
        r["command"] = "symbol";
        r["input_digest"] = digest(text);
        r["class"] = to_string(cls);
        r["n"] = doc.matrix.size();
        r["symbol"] = join_indices(id.symbol.entries);
        r["full_indices"] = join_indices(id.full_indices);
        r["boundary_ambiguous"] = id.boundary_ambiguous;
        r["residual"] = id.residual;
        ojson fs = ojson::array();
        for (const auto& f : id.factors) fs.push_back(factor_json(f, tol));
        r["factors"] = fs;
        ojson w;
        w["compact_part"] = matrix_rows_to_json(id.compact_part);
        w["witness"] = matrix_rows_to_json(id.witness);
        r["witnesses"] = w;
        ojson checks = ojson::array();
        checks.push_back({{"name", "reconstruction"}, {"pass", recon_ok}});
        if (cls == MatrixClass::skew) {
            bool law = true;
            for (const auto& s : id.skew_steps)
                law = law && s.k % 2 == 0 && s.m1 % 2 == 1 && s.m2 == s.m1 + 1 && s.pairing_residual <= skew_pairing_tolerance(tol);
            checks.push_back({{"name", "skew_structure"}, {"pass", law}});
        }
        r["checks"] = checks;
        out << dump_json(r);
    } else {
        out << "symbol " << format_indices(id.symbol.entries) << "\n";
        out << "class " << to_string(cls) << "\n";
        out << "n " << doc.matrix.size() << "\n";
        out << "residual " << format_double(id.residual) << "\n";
        out << "boundary_ambiguous " << (id.boundary_ambiguous ? "yes" : "no") << "\n";
    }
    if (!recon_ok) return convergence_failure;
    return id.boundary_ambiguous ? boundary_ambiguous : ok;
}

int cmd_sample(const Flags& fl, std::ostream& out) {
    const MatrixClass cls = parse_matrix_class(fl.cls);
    if (fl.n < 1) fail(ErrorKind::invalid_argument, "--n must be >= 1");
    const Indices m = parse_indices(fl.symbol);
    require_valid_symbol(m, fl.n);
    MatrixDocument doc;
    doc.cls = cls;
    doc.matrix = sample_cell(m, cls, static_cast<std::size_t>(fl.n), fl.seed, fl.dress);
    out << print_document(doc);
    return ok;
}

int cmd_cells(const Flags& fl, std::ostream& out) {
    const MatrixClass cls = parse_matrix_class(fl.cls);
    const auto syms = enumerate_symbols(fl.n);
    if (fl.out == "json") {
        ojson r;
        r["command"] = "cells";
        r["class"] = to_string(cls);
        r["n"] = fl.n;
        ojson cells = ojson::array();
        for (const auto& m : syms) cells.push_back({{"symbol", join_indices(m)}, {"dim", cell_dim(m, cls)}});
        r["cells"] = cells;
        out << dump_json(r);
    } else {
        for (const auto& m : syms) out << format_indices(m) << " " << cell_dim(m, cls) << "\n";
    }
    return ok;
}

int cmd_betti(const Flags& fl, std::ostream& out) {
    const MatrixClass cls = parse_matrix_class(fl.cls);
    const Ring ring = parse_ring(fl.ring);
    const BettiTable t = betti_table(fl.n, cls, ring);
    if (fl.out == "json") {
        ojson r;
        r["command"] = "betti";
        r["class"] = to_string(cls);
        r["n"] = fl.n;
        r["ring"] = to_string(ring);
        ojson ranks = ojson::array();
        for (const auto& [d, c] : t.ranks) ranks.push_back({{"degree", d}, {"rank", c}});
        r["ranks"] = ranks;
        r["expanded"] = poly_to_string(t.expanded);
        r["verdict"] = t.equal ? "EQUAL" : "UNEQUAL";
        out << dump_json(r);
    } else {
        out << "degree rank\n";
        for (const auto& [d, c] : t.ranks) out << d << " " << c << "\n";
        out << "expanded " << poly_to_string(t.expanded) << "\n";
        out << "verdict " << (t.equal ? "EQUAL" : "UNEQUAL") << "\n";
    }
    return t.equal ? ok : verification_failure;
}

int print_value(const Flags& fl, std::ostream& out, const std::string& command, const ojson& value, const std::string& text) {
    if (fl.out == "json") {
        ojson r;
        r["command"] = command;
        for (auto it = value.begin(); it != value.end(); ++it) r[it.key()] = it.value();
        out << dump_json(r);
    } else {
        out << text << "\n";
    }
    return ok;
}

int cmd_verify(const Flags& fl, std::ostream& out) {
    SuiteOptions o;
    o.n = fl.n > 0 ? fl.n : 4;
    o.trials = fl.trials;
    o.seed = fl.seed;
    const auto reports = run_suites(fl.suite, o);
    bool pass = true;
    for (const auto& r : reports) pass = pass && r.pass();
    if (fl.out == "json") {
        ojson r;
        r["command"] = "verify";
        r["suite"] = fl.suite;
        r["n"] = o.n;
        r["trials"] = o.trials;
        r["seed"] = o.seed;
        ojson checks = ojson::array();
        ojson failures = ojson::array();
        for (const auto& rep : reports)
            for (const auto& c : rep.checks) {
                checks.push_back({{"name", c.name}, {"trials", c.trials}, {"failures", c.failures}, {"max_residual", c.max_residual}});
                for (const auto& note : c.notes) failures.push_back({{"check", c.name}, {"detail", note}});
            }
        r["checks"] = checks;
        r["failures"] = failures;
        r["pass"] = pass;
        out << dump_json(r);
    } else {
        for (const auto& rep : reports) {
            out << "suite " << rep.suite << "\n";
            for (const auto& c : rep.checks) {
                out << "  " << (c.pass() ? "pass " : "FAIL ") << c.name << " trials=" << c.trials << " failures=" << c.failures
                    << " max_residual=" << format_double(c.max_residual) << "\n";
                for (const auto& note : c.notes) out << "    " << note << "\n";
            }
        }
        out << "result " << (pass ? "PASS" : "FAIL") << "\n";
    }
    return pass ? ok : verification_failure;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Schubert cells of Milnor fibers and their cohomology", "schubert-cli"};
    app.require_subcommand(1);
    Flags fl;

    auto add_out = [&](CLI::App* sub) { sub->add_option("--out", fl.out, "Output format")->check(CLI::IsMember({"json", "text"})); };
    auto add_class = [&](CLI::App* sub) {
        sub->add_option("--class", fl.cls, "Matrix class")->check(CLI::IsMember({"general", "symmetric", "skew"}));
    };

    auto* symbol = app.add_subcommand("symbol", "Identify the Schubert cell of a fiber element");
    symbol->add_option("--in", fl.in, "MatrixDocument file")->required();
    symbol->add_option("--class", fl.cls_override, "Override the document class")
        ->check(CLI::IsMember({"general", "symmetric", "skew"}));
    symbol->add_option("--tol", fl.tol, "Residual tolerance");
    add_out(symbol);

    auto* sample = app.add_subcommand("sample", "Seeded interior point of a cell");
    add_class(sample);
    sample->add_option("--symbol", fl.symbol, "Comma-joined symbol, empty for the identity cell");
    sample->add_option("--n", fl.n, "Rank (half the ambient size for skew)")->required();
    sample->add_option("--seed", fl.seed, "PRNG seed");
    sample->add_flag("--dress-solvable", fl.dress, "Move the sample off the compact model by a Sol element");

    auto* cells = app.add_subcommand("cells", "List cells and their dimensions");
    add_class(cells);
    cells->add_option("--n", fl.n, "Rank")->required();
    add_out(cells);

    auto* betti = app.add_subcommand("betti", "Betti numbers from cell counts");
    add_class(betti);
    betti->add_option("--n", fl.n, "Rank")->required();
    betti->add_option("--ring", fl.ring, "Coefficients: Z or Z2");
    add_out(betti);

    auto* dual = app.add_subcommand("dual", "Kronecker dual of a Schubert cycle");
    dual->add_option("--m", fl.m, "Symbol")->required();
    add_out(dual);

    auto* pdual = app.add_subcommand("pdual", "Poincare dual of a Schubert cycle");
    pdual->add_option("--m", fl.m, "Symbol")->required();
    pdual->add_option("--n", fl.n, "Rank")->required();
    add_out(pdual);

    auto* pair = app.add_subcommand("pair", "Intersection pairing of two cycles");
    pair->add_option("--m", fl.m, "First symbol")->required();
    pair->add_option("--m2", fl.m2, "Second symbol")->required();
    pair->add_option("--n", fl.n, "Rank")->required();
    add_out(pair);

    auto* cop = app.add_subcommand("coproduct", "Coproduct of a Schubert-dual class");
    cop->add_option("--m", fl.m, "Symbol")->required();
    add_out(cop);

    auto* verify = app.add_subcommand("verify", "Run invariant suites");
    verify->add_option("--suite", fl.suite, "Suite")->check(CLI::IsMember({"rotor", "factor", "milnor", "cohom", "all"}));
    verify->add_option("--n", fl.n, "Largest dimension");
    verify->add_option("--trials", fl.trials, "Trials per dimension");
    verify->add_option("--seed", fl.seed, "PRNG seed");
    add_out(verify);

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_or_io;
    }

    try {
        if (app.got_subcommand(symbol)) return cmd_symbol(fl, out, err);
        if (app.got_subcommand(sample)) return cmd_sample(fl, out);
        if (app.got_subcommand(cells)) return cmd_cells(fl, out);
        if (app.got_subcommand(betti)) return cmd_betti(fl, out);
        if (app.got_subcommand(dual)) {
            const ExtElement e = kronecker_dual(parse_indices(fl.m));
            return print_value(fl, out, "dual", {{"symbol", join_indices(parse_indices(fl.m))}, {"value", to_string(e)}}, to_string(e));
        }
        if (app.got_subcommand(pdual)) {
            const ExtElement e = poincare_dual(parse_indices(fl.m), fl.n);
            return print_value(fl, out, "pdual", {{"symbol", join_indices(parse_indices(fl.m))}, {"n", fl.n}, {"value", to_string(e)}},
                               to_string(e));
        }
        if (app.got_subcommand(pair)) {
            const Indices a = parse_indices(fl.m), b = parse_indices(fl.m2);
            const int v = intersection_pairing(a, b, fl.n);
            const long long w = intersection_pairing_via_cup(a, b, fl.n);
            print_value(fl, out, "pair", {{"m", join_indices(a)}, {"m2", join_indices(b)}, {"n", fl.n}, {"value", v}, {"via_cup", w}},
                        std::to_string(v));
            return v == w ? ok : verification_failure;
        }
        if (app.got_subcommand(cop)) {
            const TensorElement t = coproduct(parse_indices(fl.m));
            return print_value(fl, out, "coproduct", {{"symbol", join_indices(parse_indices(fl.m))}, {"value", to_string(t)}}, to_string(t));
        }
        if (app.got_subcommand(verify)) return cmd_verify(fl, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return usage_or_io;
    }
    return usage_or_io;
}

} // namespace schubert::cli
