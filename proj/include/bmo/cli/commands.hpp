#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bmo/cli/report.hpp"
#include "bmo/curves/elkies.hpp"
#include "bmo/curves/selmer.hpp"

namespace bmo::cli {

struct GlobalOptions {
    std::optional<int> precision;
    std::optional<std::uint64_t> max_prime;
    std::uint64_t seed = 0;
    Format format = Format::json;
    bool timings = false;

    int precision_or(int fallback) const { return precision.value_or(fallback); }
    std::uint64_t max_prime_or(std::uint64_t fallback) const { return max_prime.value_or(fallback); }
};

/// Integers that fit in 64 bits as JSON numbers, larger ones as decimal strings.
inline json integer_json(const Integer& n) {
    if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max())
        return n.convert_to<std::int64_t>();
    return bmo::to_string(n);
}

inline json invariant_set_json(const InvariantSet& s) {
    json a = json::array();
    for (const auto& v : s) a.push_back(v.str());
    return a;
}

inline json obstruction_json(const ObstructionReport& r) {
    json c = json::object();
    for (const auto& [v, s] : r.contributions) c[v.str()] = invariant_set_json(s);
    json out{{"contributions", c}, {"total_set", invariant_set_json(r.total)}, {"verdict", bmo::to_string(r.verdict)}};
    out["total"] = r.total.size() == 1 ? json(r.total.begin()->str()) : json(nullptr);
    if (!r.sampled_totals.empty()) {
        json t = json::array();
        for (const auto& v : r.sampled_totals) t.push_back(v.str());
        out["sampled_totals"] = t;
    }
    return out;
}

inline json vec_json(const f3::Vec& v) {
    json a = json::array();
    for (int x : v) a.push_back(f3::norm3(x));
    return a;
}

/// Runs `body` and maps the library's error classes onto report statuses.
inline Report run_command(const std::string& command, json params, const std::function<void(Report&)>& body) {
    Report r;
    r.command = command;
    r.params = std::move(params);
    try {
        body(r);
    } catch (const InconclusivePrecision& e) {
        r.status = Status::inconclusive;
        r.result["error"] = e.what();
    } catch (const InsufficientPrecision& e) {
        r.status = Status::inconclusive;
        r.result["error"] = e.what();
    } catch (const NoLocalPoint& e) {
        r.status = Status::no_local_point;
        r.result["error"] = e.what();
    } catch (const std::exception& e) {
        r.status = Status::error;
        r.result["error"] = e.what();
    }
    return r;
}

inline Place parse_place(const std::string& s) {
    if (s == "inf" || s == "infinity") return Place::infinite();
    try {
        return Place::finite(std::stoull(s));
    } catch (const std::logic_error&) {
        throw DomainError("cannot parse place '" + s + "'");
    }
}

inline std::optional<Rational> parse_t(const std::string& s) {
    if (s == "inf" || s == "infinity") return std::nullopt;
    return Rational::parse(s);
}

inline Integer parse_integer(const std::string& s) {
    try {
        return Integer(s);
    } catch (const std::exception&) {
        throw DomainError("cannot parse integer '" + s + "'");
    }
}

// ---- symbol ----

inline Report symbol_hilbert2(const Rational& a, const Rational& b, const std::optional<Place>& v, const GlobalOptions&) {
    json params{{"a", a.str()}, {"b", b.str()}};
    if (v) params["place"] = v->str();
    return run_command("symbol hilbert2", params, [&](Report& r) {
        if (v) {
            auto h = hilbert2(a, b, *v);
            r.result = {{"invariant", h.inv.str()}, {"sign", h.sign}};
            return;
        }
        auto pf = product_formula_check(a, b);
        json c = json::object();
        for (const auto& [p, inv] : pf.contributions) c[p.str()] = inv.str();
        r.result = {{"contributions", c}, {"total", pf.total.str()}};
    });
}

inline Report symbol_hilbert3(const Rational& a, const Rational& b, const GlobalOptions& o) {
    const int prec = o.precision_or(kCubicPrecision);
    return run_command("symbol hilbert3", {{"a", a.str()}, {"b", b.str()}, {"precision", prec}, {"seed", o.seed}},
                       [&](Report& r) {
                           Stopwatch sw(r, o.timings);
                           auto g = sw.stage("class_group", [&] { return cube_class_group(prec, o.seed); });
                           auto ca = g->express(a), cb = g->express(b);
                           r.result = {{"class_a", vec_json(ca)}, {"class_b", vec_json(cb)},
                                       {"invariant", g->symbol(ca, cb).str()}};
                       });
}

inline Report symbol_legendre(const Integer& a, const Integer& p, const GlobalOptions&) {
    return run_command("symbol legendre", {{"a", integer_json(a)}, {"p", integer_json(p)}}, [&](Report& r) {
        if (p <= 2 || !is_prime(p)) throw DomainError("legendre: p must be an odd prime");
        r.result = {{"value", legendre_symbol(a, p)}};
    });
}

inline Report symbol_quartic(const Integer& a, const Integer& p, const GlobalOptions&) {
    return run_command("symbol quartic", {{"a", integer_json(a)}, {"p", integer_json(p)}}, [&](Report& r) {
        auto s = quartic_residue_symbol(a, p);
        r.result = {{"symbol", s.label()}, {"exponent", s.exponent}, {"residue", s.residue}};
    });
}

// ---- Reichardt-Lind ----

inline Report rl_verify(const Integer& ell, std::uint64_t p, std::size_t samples, const GlobalOptions& o) {
    const int prec = o.precision_or(20);
    const std::uint32_t good = static_cast<std::uint32_t>(o.max_prime_or(30));
    json params{{"ell", integer_json(ell)}, {"p", p}, {"samples", samples}, {"precision", prec},
                {"seed", o.seed}, {"max_prime", good}};
    return run_command("rl verify", params, [&](Report& r) {
        Stopwatch sw(r, o.timings);
        auto tw = TwistParams::make(ell, p);
        auto cond = twist_conditions(tw);
        r.result["conditions"] = {{"i", cond.i}, {"ii", cond.ii}, {"iii", cond.iii}, {"iv", cond.iv},
                                  {"iv_route", cond.iv_route}, {"all", cond.all()}};
        auto pts = sw.stage("points", [&] { return point_obstruction(tw, rl_default_places(tw, good), prec, o.seed, samples); });
        auto sec = sw.stage("sections", [&] { return forced_section_invariants(tw, prec, o.seed); });
        r.result["points"] = obstruction_json(pts);
        r.result["sections"] = obstruction_json(sec);
        bool obstructed = pts.verdict == Verdict::obstructed && sec.verdict == Verdict::obstructed;
        r.result["total"] = obstructed && pts.total == sec.total && pts.total.size() == 1 ? json(pts.total.begin()->str()) : json(nullptr);
        r.status = obstructed ? Status::obstructed : Status::ok;
    });
}

inline Report rl_search(const Integer& ell, const GlobalOptions& o) {
    const std::uint64_t pmax = o.max_prime_or(100);
    const int prec = o.precision_or(20);
    return run_command("rl search", {{"ell", integer_json(ell)}, {"max_prime", pmax}, {"precision", prec}}, [&](Report& r) {
        Stopwatch sw(r, o.timings);
        auto ps = sw.stage("search", [&] { return twist_search(ell, pmax, prec); });
        r.result = {{"primes", ps}, {"count", ps.size()}};
    });
}

inline Report rl_density(const Integer& ell, const GlobalOptions& o) {
    const std::uint64_t pmax = o.max_prime_or(200000);
    return run_command("rl density", {{"ell", integer_json(ell)}, {"max_prime", pmax}}, [&](Report& r) {
        Stopwatch sw(r, o.timings);
        auto d = sw.stage("scan", [&] { return density_experiment(ell, pmax); });
        r.result = {{"valid", d.valid},       {"primes", d.primes},
                    {"ratio", d.ratio},       {"predicted", d.predicted.str()},
                    {"relative_error", d.relative_error()}};
    });
}

inline Report rl_exhaust(std::int64_t bound, std::int64_t d, const GlobalOptions& o) {
    const std::uint32_t good = static_cast<std::uint32_t>(o.max_prime_or(100));
    const int prec = o.precision_or(20);
    return run_command("rl exhaust", {{"bound", bound}, {"d", d}, {"max_prime", good}}, [&](Report& r) {
        Stopwatch sw(r, o.timings);
        auto ex = sw.stage("search", [&] { return exhaustive_search(bound, d); });
        json sols = json::array();
        for (const auto& s : ex.solutions) sols.push_back({integer_json(s[0]), integer_json(s[1]), integer_json(s[2])});
        r.result = {{"solutions", sols}, {"pairs_checked", ex.pairs_checked}, {"zero_y_excluded", ex.zero_y_excluded}};
        if (d > 2 && is_prime(static_cast<std::uint64_t>(d))) {
            auto tw = TwistParams::make(2, static_cast<std::uint64_t>(d));
            json lp = json::object();
            bool all = true;
            sw.stage("local_points", [&] {
                for (const auto& v : rl_default_places(tw, good)) {
                    bool has = local_point(tw, v, prec).has_value();
                    lp[v.str()] = has;
                    all = all && has;
                }
                return 0;
            });
            r.result["local_points"] = lp;
            r.result["everywhere_locally_solvable"] = all;
        }
    });
}

inline Report rl_smooth(const std::vector<std::uint64_t>& primes, const GlobalOptions& o) {
    return run_command("rl smooth", {{"primes", primes}}, [&](Report& r) {
        Stopwatch sw(r, o.timings);
        json per = json::object();
        bool all = true;
        sw.stage("enumerate", [&] {
            for (auto p : primes) {
                auto s = model_smoothness_report(p);
                per[std::to_string(p)] = {{"points", s.points}, {"singular", s.singular}};
                all = all && s.ok();
            }
            return 0;
        });
        r.result = {{"fields", per}, {"smooth", all}};
        if (!all) throw Error("rl smooth: singular point found");
    });
}

// ---- Elkies ----

inline json parity_json(const ParityResult& p) {
    json ps = json::array();
    for (const auto& x : p.primes)
        ps.push_back({{"p", integer_json(x.p)}, {"exponent", x.exponent}, {"symbol", x.symbol.label()}});
    return {{"count", p.count}, {"exponent_sum", p.exponent_sum}, {"invariant", p.invariant.str()},
            {"verdict", bmo::to_string(p.verdict)}, {"primes", ps}};
}

inline Report elkies_verify(const std::optional<Rational>& t, const GlobalOptions& o) {
    const int prec = o.precision_or(20);
    const std::uint32_t good = static_cast<std::uint32_t>(o.max_prime_or(50));
    return run_command("elkies verify", {{"t", t ? t->str() : "inf"}, {"precision", prec}, {"max_prime", good}},
                       [&](Report& r) {
                           Stopwatch sw(r, o.timings);
                           auto f = fibre(t);
                           r.result["N"] = f.N.str();
                           r.result["N0"] = integer_json(f.N0);
                           r.result["A"] = integer_json(f.A);
                           r.result["B"] = integer_json(f.B);
                           auto sol = sw.stage("local", [&] { return local_solvability_report(f, prec, good); });
                           json places = json::object();
                           for (const auto& pv : sol.places) places[pv.v.str()] = pv.solvable;
                           r.result["local_solvability"] = places;
                           r.result["everywhere_locally_solvable"] = sol.everywhere();
                           auto par = sw.stage("parity", [&] { return obstruction_parity(f); });
                           r.result["parity"] = parity_json(par);
                           auto cc = composition_check(f);
                           r.result["composition"] = {{"parity_matches", cc.parity_matches},
                                                      {"reaches_A2_B2", cc.reaches_A2_B2}};
                           if (!sol.everywhere())
                               r.status = Status::no_local_point;
                           else
                               r.status = par.verdict == Verdict::obstructed ? Status::obstructed : Status::ok;
                       });
}

inline Report elkies_scan(std::int64_t height, const GlobalOptions& o) {
    const int prec = o.precision_or(20);
    return run_command("elkies scan", {{"height", height}, {"precision", prec}}, [&](Report& r) {
        if (height < 0) throw DomainError("elkies scan: height must be nonnegative");
        Stopwatch sw(r, o.timings);
        std::vector<std::optional<Rational>> ts{std::nullopt};
        for (const auto& t : rationals_of_height(height)) ts.emplace_back(t);
        auto rep = sw.stage("scan", [&] { return family_scan(ts, prec); });
        json entries = json::array();
        std::size_t errors = 0, odd = 0;
        for (const auto& e : rep.entries) {
            if (!e.error.empty()) ++errors;
            if (e.parity.count % 2 == 1) ++odd;
            entries.push_back({{"t", e.t},
                               {"N0", integer_json(e.N0)},
                               {"A", integer_json(e.A)},
                               {"B", integer_json(e.B)},
                               {"locally_solvable", e.locally_solvable},
                               {"count", e.parity.count},
                               {"invariant", e.parity.invariant.str()},
                               {"error", e.error}});
        }
        r.result = {{"fibres", rep.entries.size()}, {"obstructed", rep.obstructed}, {"solvable", rep.solvable},
                    {"odd_count", odd}, {"errors", errors}, {"all_ok", rep.all_ok()}, {"entries", entries}};
        if (errors > 0) throw Error("elkies scan: " + std::to_string(errors) + " fibres failed");
        r.status = rep.all_ok() ? Status::obstructed : Status::ok;
    });
}

// ---- Selmer ----

inline Report selmer_verify(const GlobalOptions& o) {
    const int prec = o.precision_or(kCubicPrecision);
    return run_command("selmer verify", {{"precision", prec}, {"seed", o.seed}}, [&](Report& r) {
        Stopwatch sw(r, o.timings);
        CycloElement ng = norm_K_over_k(gamma_element());
        DeltaPoly f = sw.stage("symbolic", [&] { return evaluate_F_symbolic(); });
        f3::Vec cls = sw.stage("local_class", [&] { return evaluate_F_local(prec); });
        auto g = sw.stage("class_group", [&] { return cube_class_group(prec, o.seed); });
        InvariantValue h = g->symbol(g->express(Rational(2)), cls);
        auto sweep = sw.stage("isogeny_sweep", [&] { return isogeny_sweep(500, o.seed); });
        auto rt = sw.stage("preimage_round_trip", [&] { return preimage_round_trip(50, o.seed, 20); });

        bool norm_ok = ng == cyclo(-10);
        bool f_ok = f == expected_F_value();
        bool cls_ok = cls == expected_F_class(prec);
        r.result = {{"norm_gamma", bmo::to_string(ng)},
                    {"norm_gamma_is_minus_ten", norm_ok},
                    {"F_symbolic", delta_to_string(f)},
                    {"F_matches_displayed", f_ok},
                    {"F_class", vec_json(cls)},
                    {"F_class_is_expected", cls_ok},
                    {"hilbert3_2_F", h.str()},
                    {"isogeny", {{"points", sweep.points},
                                 {"primes", sweep.primes},
                                 {"kernel_points", sweep.kernel_points},
                                 {"failures", sweep.failures},
                                 {"symbolic_identity", sweep.symbolic_identity}}},
                    {"preimage", {{"points", rt.points},
                                  {"scaled_points", rt.scaled_points},
                                  {"failures", rt.failures},
                                  {"precision", rt.precision}}}};
        if (!(norm_ok && f_ok && cls_ok && !h.is_zero() && sweep.ok() && rt.ok()))
            throw Error("selmer verify: a check failed");
    });
}

inline json survival_json(const SurvivalReport& s) {
    return {{"F_class", vec_json(s.F_class)},
            {"pair_2", s.pair_2.str()},
            {"pair_3", s.pair_3.str()},
            {"pair_60", s.pair_60.str()},
            {"class_60_nontrivial", s.class_60_nontrivial},
            {"F_in_ann_60", s.F_in_ann_60},
            {"dim_ann_23", s.dim_ann_23},
            {"dim_ann_60", s.dim_ann_60},
            {"ann_23_is_tau_fixed", s.ann_23_is_tau_fixed},
            {"dim_plus", s.dim_plus},
            {"dim_minus", s.dim_minus},
            {"witness", s.witness ? vec_json(*s.witness) : json(nullptr)},
            {"witness_count", s.witness_count},
            {"ok", s.ok()}};
}

inline Report selmer_survival(const GlobalOptions& o) {
    const int prec = o.precision_or(kCubicPrecision);
    return run_command("selmer survival", {{"precision", prec}, {"seed", o.seed}}, [&](Report& r) {
        Stopwatch sw(r, o.timings);
        auto s = sw.stage("survival", [&] { return survival_analysis(prec, o.seed, false); });
        auto c = sw.stage("conjugate", [&] { return survival_analysis(prec, o.seed, true); });
        bool invariant = s.pair_2.is_zero() == c.pair_2.is_zero() && s.pair_3.is_zero() == c.pair_3.is_zero() &&
                         s.F_in_ann_60 == c.F_in_ann_60 && s.dim_ann_23 == c.dim_ann_23 &&
                         s.dim_ann_60 == c.dim_ann_60 && s.witness_count == c.witness_count;
        r.result = {{"survival", survival_json(s)}, {"conjugate", survival_json(c)}, {"conjugate_invariant", invariant}};
        if (!s.ok() || !c.ok() || !invariant) throw Error("selmer survival: a check failed");
    });
}

}  // namespace bmo::cli
