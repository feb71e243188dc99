#include <iostream>

#include "CLI11.hpp"

#include "bmo/cli/commands.hpp"

using namespace bmo;
using namespace bmo::cli;

namespace {

struct Args {
    std::string a, b, place, ell = "2", t;
    std::uint64_t p = 0;
    std::size_t samples = 20;
    std::int64_t bound = 1000, d = 17, height = 10;
    std::vector<std::uint64_t> smooth_primes{3, 5, 7, 11, 13};
};

int usage_error(const std::string& msg) {
    std::cerr << "bmo: " << msg << "\n";
    return kUsageExit;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Brauer-Manin obstruction experiments for curves of genus 1"};
    app.fallthrough();
    app.require_subcommand(1);

    GlobalOptions opt;
    int precision = 0;
    std::uint64_t max_prime = 0;
    std::string format = "json";
    auto* prec_opt = app.add_option("--precision", precision, "p-adic digits");
    prec_opt->check(CLI::Range(4, 400));
    auto* maxp_opt = app.add_option("--max-prime", max_prime, "prime bound for searches and good-prime checks");
    app.add_option("--seed", opt.seed, "seed for all randomized internals")->capture_default_str();
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    app.add_flag("--timings", opt.timings, "record per-stage wall time (output is then not reproducible)");

    Args x;
    std::function<Report()> run;

    auto* symbol = app.add_subcommand("symbol", "local symbols");
    symbol->require_subcommand(1);
    auto* h2 = symbol->add_subcommand("hilbert2", "quadratic Hilbert symbol (a, b)_v, or all places");
    h2->add_option("a", x.a)->required();
    h2->add_option("b", x.b)->required();
    h2->add_option("--place", x.place, "prime or inf");
    auto* h3 = symbol->add_subcommand("hilbert3", "cubic Hilbert symbol over Q_3(zeta_3)");
    h3->add_option("a", x.a)->required();
    h3->add_option("b", x.b)->required();
    auto* leg = symbol->add_subcommand("legendre", "Legendre symbol (a/p)");
    leg->add_option("a", x.a)->required();
    leg->add_option("p", x.b)->required();
    auto* quart = symbol->add_subcommand("quartic", "quartic residue symbol (a/p)_4");
    quart->add_option("a", x.a)->required();
    quart->add_option("p", x.b)->required();

    auto* rl = app.add_subcommand("rl", "Reichardt-Lind twists ell y^2 = z0^4 - p z1^4");
    rl->require_subcommand(1);
    auto* rl_ver = rl->add_subcommand("verify", "obstruction for points and sections");
    rl_ver->add_option("--ell", x.ell)->capture_default_str();
    rl_ver->add_option("--p", x.p)->required();
    rl_ver->add_option("--samples", x.samples, "sampled points per place")->capture_default_str();
    auto* rl_search_cmd = rl->add_subcommand("search", "primes p <= max-prime passing the twist conditions");
    rl_search_cmd->add_option("--ell", x.ell)->capture_default_str();
    auto* rl_dens = rl->add_subcommand("density", "proportion of valid primes against the prediction");
    rl_dens->add_option("--ell", x.ell)->capture_default_str();
    auto* rl_ex = rl->add_subcommand("exhaust", "integer solutions of 2y^2 = z0^4 - d z1^4");
    rl_ex->add_option("--bound", x.bound)->capture_default_str();
    rl_ex->add_option("--d", x.d)->capture_default_str();
    auto* rl_sm = rl->add_subcommand("smooth", "smoothness of the P^3 model over F_p");
    rl_sm->add_option("--p", x.smooth_primes)->capture_default_str();

    auto* elk = app.add_subcommand("elkies", "the family 2Y^2 = Z^4 - N(t)");
    elk->require_subcommand(1);
    auto* elk_ver = elk->add_subcommand("verify", "one fibre");
    elk_ver->add_option("--t", x.t, "rational or inf")->required();
    auto* elk_scan = elk->add_subcommand("scan", "all t of height <= h and t = inf");
    elk_scan->add_option("--height", x.height)->capture_default_str();

    auto* sel = app.add_subcommand("selmer", "the Selmer curve 3X^3 + 4Y^3 + 5Z^3 = 0");
    sel->require_subcommand(1);
    auto* sel_ver = sel->add_subcommand("verify", "norm, F value, cube class, isogeny checks");
    auto* sel_surv = sel->add_subcommand("survival", "F_3 linear algebra of the surviving section");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kUsageExit;
    }
    if (*prec_opt) opt.precision = precision;
    if (*maxp_opt) opt.max_prime = max_prime;
    opt.format = format == "text" ? Format::text : Format::json;

    try {
        if (*h2) {
            std::optional<Place> v;
            if (!x.place.empty()) v = parse_place(x.place);
            run = [&, a = Rational::parse(x.a), b = Rational::parse(x.b), v] { return symbol_hilbert2(a, b, v, opt); };
        } else if (*h3) {
            run = [&, a = Rational::parse(x.a), b = Rational::parse(x.b)] { return symbol_hilbert3(a, b, opt); };
        } else if (*leg) {
            run = [&, a = parse_integer(x.a), p = parse_integer(x.b)] { return symbol_legendre(a, p, opt); };
        } else if (*quart) {
            run = [&, a = parse_integer(x.a), p = parse_integer(x.b)] { return symbol_quartic(a, p, opt); };
        } else if (*rl_ver) {
            run = [&, ell = parse_integer(x.ell)] { return rl_verify(ell, x.p, x.samples, opt); };
        } else if (*rl_search_cmd) {
            run = [&, ell = parse_integer(x.ell)] { return rl_search(ell, opt); };
        } else if (*rl_dens) {
            run = [&, ell = parse_integer(x.ell)] { return rl_density(ell, opt); };
        } else if (*rl_ex) {
            run = [&] { return rl_exhaust(x.bound, x.d, opt); };
        } else if (*rl_sm) {
            run = [&] { return rl_smooth(x.smooth_primes, opt); };
        } else if (*elk_ver) {
            run = [&, t = parse_t(x.t)] { return elkies_verify(t, opt); };
        } else if (*elk_scan) {
            run = [&] { return elkies_scan(x.height, opt); };
        } else if (*sel_ver) {
            run = [&] { return selmer_verify(opt); };
        } else if (*sel_surv) {
            run = [&] { return selmer_survival(opt); };
        } else {
            return usage_error("missing subcommand");
        }
    } catch (const Error& e) {
        return usage_error(e.what());
    }

    Report r = run();
    std::cout << r.render(opt.format);
    return exit_code(r.status);
}
