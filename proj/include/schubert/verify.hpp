#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "schubert/cohom.hpp"
#include "schubert/error.hpp"
#include "schubert/factor.hpp"
#include "schubert/milnor.hpp"
#include "schubert/numlin.hpp"
#include "schubert/random.hpp"
#include "schubert/rotor.hpp"
#include "schubert/symbol.hpp"

namespace schubert {

struct CheckResult {
    CheckResult(std::string check_name) : name(std::move(check_name)) {}

    std::string name;
    std::size_t trials = 0;
    std::size_t failures = 0;
    double max_residual = 0.0;
    std::vector<std::string> notes; // first few failures

    bool pass() const { return failures == 0; }

    void record(bool ok, double residual = 0.0, const std::string& note = {}) {
        ++trials;
        if (std::isfinite(residual)) max_residual = std::max(max_residual, residual);
        else max_residual = residual;
        if (!ok) {
            ++failures;
            if (notes.size() < 5) notes.push_back(note);
        }
    }

    // Runs `body`; a thrown library error counts as a failure.
    template <class F>
    void attempt(const std::string& label, F&& body) {
        try {
            body();
        } catch (const Error& e) {
            record(false, 0.0, label + ": " + e.what());
        }
    }
};

struct SuiteOptions {
    int n = 4;
    std::size_t trials = 10;
    std::uint64_t seed = 1;
    ToleranceConfig tol{};
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass(); });
    }
};

namespace detail {

inline ComplexVector random_unit(std::size_t n, Rng& rng) {
    ComplexVector v(n);
    for (auto& z : v) z = rng.complex_normal();
    return scaled(v, 1.0 / norm(v));
}

inline bool increasing_nonzero(const OrderedFactorization& f, const ToleranceConfig& tol) {
    const auto full = f.full();
    for (std::size_t i = 0; i < full.size(); ++i) {
        if (full[i].is_identity(tol)) return false;
        if (i > 0) {
            const auto a = full[i - 1].index(tol), b = full[i].index(tol);
            if (f.order == Order::increasing ? a >= b : a <= b) return false;
        }
    }
    return true;
}

} // namespace detail

inline SuiteReport verify_rotor(const SuiteOptions& o) {
    SuiteReport rep{"rotor", {}};
    Rng rng(o.seed);
    CheckResult unit{"rotor.unitary_det"}, white{"rotor.whitehead_product"}, contract{"rotor.whitehead_contract"},
        pairing{"rotor.whitehead_j_pairing"}, jrel{"rotor.j_inner"}, hrot{"rotor.h_rotation"};
    const int nmax = std::max(2, o.n);
    for (std::size_t t = 0; t < o.trials; ++t)
        for (int n = 2; n <= nmax; ++n) {
            const std::size_t dim = static_cast<std::size_t>(n);
            const double th = rng.uniform(-std::numbers::pi, std::numbers::pi);
            const PseudoRotation r = PseudoRotation::make(th, detail::random_unit(dim, rng));
            const ComplexMatrix mr = r.matrix();
            const double du = unitarity_defect(mr);
            const double dd = std::abs(determinant(mr) - std::polar(1.0, th));
            unit.record(du <= 1e-12 && dd <= 1e-12, std::max(du, dd), "n=" + std::to_string(n));

            // Random axes supported on C^m and C^m' with m >= m'.
            const std::size_t m = 1 + rng.below(dim);
            const std::size_t mp = rng.uniform() < 0.5 ? m : 1 + rng.below(m);
            auto axis_in = [&](std::size_t k) {
                ComplexVector v(dim, cplx(0.0, 0.0));
                for (std::size_t i = 0; i < k; ++i) v[i] = rng.complex_normal();
                return v;
            };
            const PseudoRotation a = PseudoRotation::make(rng.uniform(-3.0, 3.0), axis_in(m));
            const PseudoRotation b = PseudoRotation::make(rng.uniform(-3.0, 3.0), axis_in(mp));
            white.attempt("n=" + std::to_string(n), [&] {
                const InterchangeResult ir = whitehead_interchange(a, b, o.tol);
                const double d = distance(a.matrix() * b.matrix(), product(ir.factors, dim));
                white.record(d <= 1e-10, d, "n=" + std::to_string(n));
                bool ok = true;
                if (ir.kind == InterchangeCase::reduce && ir.factors.size() == 2)
                    ok = ir.factors[0].index(o.tol) <= m - 1 && ir.factors[1].index(o.tol) == m;
                if (ir.kind == InterchangeCase::swap) ok = ir.factors[0].index(o.tol) == mp && ir.factors[1].index(o.tol) == m;
                contract.record(ok, 0.0, "n=" + std::to_string(n));
                if (n % 2 == 0) {
                    std::vector<PseudoRotation> lhs{{b.theta, jmul(b.axis)}, {a.theta, jmul(a.axis)}};
                    std::vector<PseudoRotation> rhs;
                    for (std::size_t i = ir.factors.size(); i-- > 0;) rhs.push_back({ir.factors[i].theta, jmul(ir.factors[i].axis)});
                    const double dj = distance(product(lhs, dim), product(rhs, dim));
                    pairing.record(dj <= 1e-10, dj, "n=" + std::to_string(n));
                }
            });

            if (n % 2 == 0) {
                const ComplexVector x = detail::random_unit(dim, rng), y = detail::random_unit(dim, rng);
                const double d1 = std::abs(hermitian_inner(jmul(x), jmul(y)) - std::conj(hermitian_inner(x, y)));
                const double d2 = norm(jmul(jmul(x)) + x);
                const double d3 = std::abs(hermitian_inner(x, jmul(x)));
                jrel.record(std::max({d1, d2, d3}) <= 1e-12, std::max({d1, d2, d3}), "n=" + std::to_string(n));
                const HPseudoRotation h = HPseudoRotation::make(th, x, o.tol);
                const ComplexMatrix p = h.first().matrix(), q = h.second().matrix();
                const double dc = distance(p * q, q * p);
                const ComplexMatrix hm = h.matrix();
                const double dl = norm(hm * jmul(y) - jmul(hm.adjoint() * y));
                const double ddet = std::abs(determinant(hm) - std::polar(1.0, 2.0 * h.theta));
                hrot.record(dc <= 1e-12 && dl <= 1e-10 && ddet <= 1e-12, std::max({dc, dl, ddet}), "n=" + std::to_string(n));
            }
        }
    rep.checks = {unit, white, contract, pairing, jrel, hrot};
    return rep;
}

inline SuiteReport verify_factor(const SuiteOptions& o) {
    SuiteReport rep{"factor", {}};
    Rng rng(o.seed);
    CheckResult recon{"factor.reconstruction"}, mono{"factor.monotone_nonzero"}, inv{"factor.symbol_invariance"},
        rev{"factor.reverse_order"}, rt_gen{"factor.roundtrip_general"}, rt_sym{"factor.roundtrip_symmetric"},
        rt_skew{"factor.roundtrip_skew"}, cross{"factor.symmetric_matches_su"}, skew_law{"factor.skew_structure"};
    const int nmax = std::max(2, o.n);
    for (int n = 2; n <= nmax; ++n) {
        const std::size_t dim = static_cast<std::size_t>(n);
        for (std::size_t t = 0; t < o.trials; ++t) {
            const ComplexMatrix b = haar_sample(dim, SampleClass::special_unitary, rng.fork());
            const std::string label = "n=" + std::to_string(n) + " trial=" + std::to_string(t);
            recon.attempt(label, [&] {
                const OrderedFactorization f = factorize_su(b, o.tol);
                const double d = distance(f.product(), b);
                recon.record(d <= 1e-8 * n, d, label);
                mono.record(detail::increasing_nonzero(f, o.tol), 0.0, label);
                const OrderedFactorization g = reverse_order(f, o.tol);
                Indices a = f.full_indices(o.tol), c = g.full_indices(o.tol);
                const double dr = distance(g.product(), b);
                rev.record(a == c && dr <= 1e-8 * n && detail::increasing_nonzero(g, o.tol), dr, label);
            });
            inv.attempt(label, [&] { inv.record(symbol_invariance_check(b, o.tol).consistent, 0.0, label); });
        }
        for (const auto& m : enumerate_symbols(n))
            for (std::size_t t = 0; t < o.trials; ++t) {
                const std::string label = "n=" + std::to_string(n) + " m=" + format_indices(m);
                rt_gen.attempt(label, [&] {
                    const ComplexMatrix b = schubert_map(m, interior_params(m, MatrixClass::general, rng), dim);
                    const OrderedFactorization f = factorize_su(b, o.tol);
                    rt_gen.record(f.symbol(o.tol).entries == m && !f.boundary_ambiguous, distance(f.product(), b), label);
                });
                rt_sym.attempt(label, [&] {
                    const ComplexMatrix b = schubert_map_sy(m, interior_params(m, MatrixClass::symmetric, rng), dim);
                    const SymmetricFactorization f = factorize_symmetric(b, o.tol);
                    const double d = distance(f.product(), b);
                    rt_sym.record(f.symbol.entries == m && !f.boundary_ambiguous && d <= 1e-8 * n, d, label);
                    cross.record(symbol_of(b, o.tol).entries == m, 0.0, label);
                });
            }
    }
    const int hmax = std::max(1, nmax / 2);
    for (int h = 1; h <= hmax; ++h)
        for (const auto& m : enumerate_symbols(h))
            for (std::size_t t = 0; t < o.trials; ++t) {
                const std::string label = "half=" + std::to_string(h) + " m=" + format_indices(m);
                rt_skew.attempt(label, [&] {
                    const ComplexMatrix b = schubert_map_sk(m, interior_params(m, MatrixClass::skew, rng), static_cast<std::size_t>(h));
                    const SkewFactorization f = factorize_skew(b, o.tol);
                    const double d = distance(f.product(), b);
                    rt_skew.record(f.symbol.entries == m && !f.boundary_ambiguous && d <= 1e-8 * 2 * h, d, label);
                    double worst = 0.0;
                    for (const auto& s : f.steps) worst = std::max(worst, s.pairing_residual);
                    const bool paired = f.paired_indices(o.tol) == factorize_su(b, o.tol).full_indices(o.tol);
                    skew_law.record(paired && worst <= 1e-8, worst, label);
                });
            }
    rep.checks = {recon, mono, inv, rev, rt_gen, rt_sym, rt_skew, cross, skew_law};
    return rep;
}

inline SuiteReport verify_milnor(const SuiteOptions& o) {
    SuiteReport rep{"milnor", {}};
    Rng rng(o.seed);
    CheckResult recon{"milnor.reconstruction"}, sol{"milnor.sol_invariance"}, planted{"milnor.planted_cells"},
        closure{"milnor.closure_product"};
    const int nmax = std::max(2, o.n);
    const MatrixClass classes[] = {MatrixClass::general, MatrixClass::symmetric, MatrixClass::skew};
    for (int n = 2; n <= nmax; ++n) {
        const std::size_t dim = static_cast<std::size_t>(n);
        for (MatrixClass cls : classes) {
            if (cls == MatrixClass::skew && n % 2 != 0) continue;
            const SampleClass sc = cls == MatrixClass::general ? SampleClass::sl
                                   : cls == MatrixClass::symmetric ? SampleClass::sym_fiber
                                                                   : SampleClass::skew_fiber;
            for (std::size_t t = 0; t < o.trials; ++t) {
                const std::string label = std::string(to_string(cls)) + " n=" + std::to_string(n) + " trial=" + std::to_string(t);
                const ComplexMatrix b = haar_sample(dim, sc, rng.fork());
                recon.attempt(label, [&] {
                    const CellIdentification id = identify(b, cls, o.tol);
                    recon.record(id.residual <= 1e-8, id.residual, label);
                });
                sol.attempt(label, [&] {
                    Rng local(rng.fork());
                    const ComplexMatrix e = sample_solvable(dim, local);
                    sol.record(sol_invariance_check(b, e, cls, o.tol).consistent, 0.0, label);
                });
            }
        }
        for (MatrixClass cls : classes) {
            const int rank = cls == MatrixClass::skew ? n / 2 : n;
            if (rank < 1 || (cls == MatrixClass::skew && n % 2 != 0)) continue;
            // Congruence dressing (symmetric, skew) can move a sample into
            // another cell, so only the general class is dressed here.
            const bool dress = cls == MatrixClass::general;
            for (const auto& m : enumerate_symbols(rank))
                for (std::size_t t = 0; t < o.trials; ++t) {
                    const std::string label = std::string(to_string(cls)) + " n=" + std::to_string(n) + " m=" + format_indices(m);
                    planted.attempt(label, [&] {
                        const ComplexMatrix b = sample_cell(m, cls, static_cast<std::size_t>(rank), rng.fork(), dress);
                        const CellIdentification id = identify(b, cls, o.tol);
                        planted.record(id.symbol.entries == m && !id.boundary_ambiguous, id.residual, label);
                    });
                }
        }
        const auto symbols = enumerate_symbols(n);
        for (std::size_t t = 0; t < o.trials; ++t) {
            const Indices& a = symbols[rng.below(symbols.size())];
            const Indices& b = symbols[rng.below(symbols.size())];
            const std::string label = "n=" + std::to_string(n) + " " + format_indices(a) + "*" + format_indices(b);
            closure.attempt(label, [&] { closure.record(closure_product_check(a, b, dim, rng.fork(), o.tol).pass, 0.0, label); });
        }
    }
    rep.checks = {recon, sol, planted, closure};
    return rep;
}

inline SuiteReport verify_cohom(const SuiteOptions& o) {
    SuiteReport rep{"cohom", {}};
    CheckResult betti{"cohom.betti"}, counit{"cohom.counit"}, coassoc{"cohom.coassociativity"},
        mult{"cohom.multiplicativity"}, pairing{"cohom.perfect_pairing"}, routes{"cohom.pairing_routes"},
        eps{"cohom.epsilon_swap"}, degree{"cohom.dual_degree"};
    const int nmax = std::max(2, o.n);
    for (int n = 1; n <= nmax; ++n) {
        betti.record(betti_table(n, MatrixClass::general, Ring::integers).equal, 0.0, "general n=" + std::to_string(n));
        betti.record(betti_table(n, MatrixClass::symmetric, Ring::mod2).equal, 0.0, "symmetric n=" + std::to_string(n));
        betti.record(betti_table(n, MatrixClass::skew, Ring::integers).equal, 0.0, "skew n=" + std::to_string(n));
    }
    const auto symbols = enumerate_symbols(nmax);
    for (const auto& m : symbols) {
        const std::string label = format_indices(m);
        const TensorElement d = coproduct(m);
        counit.record(d.coefficient(m, {}) == 1 && d.coefficient({}, m) == 1, 0.0, label);
        // (Delta (x) 1) Delta and (1 (x) Delta) Delta as maps on triples.
        std::map<std::vector<Indices>, long long> left, right;
        for (const auto& [k, c] : d.terms) {
            for (const auto& [k2, c2] : coproduct(k.first).terms) left[{k2.first, k2.second, k.second}] += c * c2;
            for (const auto& [k2, c2] : coproduct(k.second).terms) right[{k.first, k2.first, k2.second}] += c * c2;
        }
        coassoc.record(left == right, 0.0, label);
        mult.record(to_generator_basis(d) == primitive_coproduct_expansion(m), 0.0, label);
        degree.record(kronecker_dual(m).terms.size() == 1 &&
                          monomial_degree(kronecker_dual(m).terms.begin()->first, MatrixClass::general) == cell_dim(m, MatrixClass::general),
                      0.0, label);
    }
    for (int n = 2; n <= nmax; ++n) {
        const auto syms = enumerate_symbols(n);
        for (std::size_t la = 0; la <= static_cast<std::size_t>(n - 1); ++la) {
            std::vector<Indices> rows, cols;
            for (const auto& m : syms) {
                if (m.size() == la) rows.push_back(m);
                if (m.size() == static_cast<std::size_t>(n - 1) - la) cols.push_back(m);
            }
            bool perm = rows.size() == cols.size();
            std::vector<int> col_hits(cols.size(), 0);
            for (const auto& r : rows) {
                int row_hits = 0;
                for (std::size_t c = 0; c < cols.size(); ++c) {
                    const int v = intersection_pairing(r, cols[c], n);
                    const long long w = intersection_pairing_via_cup(r, cols[c], n);
                    routes.record(v == w, 0.0, "n=" + std::to_string(n) + " " + format_indices(r) + "," + format_indices(cols[c]));
                    if (v != 0) {
                        if (v != 1 && v != -1) perm = false;
                        ++row_hits;
                        ++col_hits[c];
                    }
                }
                if (row_hits != 1) perm = false;
            }
            for (int h : col_hits)
                if (h != 1) perm = false;
            pairing.record(perm, 0.0, "n=" + std::to_string(n) + " l=" + std::to_string(la));
        }
    }
    const auto big = enumerate_symbols(std::min(nmax, 10));
    for (const auto& a : big)
        for (const auto& b : big) {
            if (!is_disjoint(a, b)) continue;
            eps.record(epsilon(a, b) * epsilon(b, a) == sign_of(static_cast<long long>(a.size() * b.size())), 0.0,
                       format_indices(a) + "," + format_indices(b));
        }
    rep.checks = {betti, counit, coassoc, mult, pairing, routes, eps, degree};
    return rep;
}

inline std::vector<SuiteReport> run_suites(const std::string& suite, const SuiteOptions& o) {
    std::vector<SuiteReport> out;
    const bool all = suite == "all";
    if (all || suite == "rotor") out.push_back(verify_rotor(o));
    if (all || suite == "factor") out.push_back(verify_factor(o));
    if (all || suite == "milnor") out.push_back(verify_milnor(o));
    if (all || suite == "cohom") out.push_back(verify_cohom(o));
    if (out.empty()) fail(ErrorKind::invalid_argument, "unknown suite '" + suite + "'");
    return out;
}

} // namespace schubert
