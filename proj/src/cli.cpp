#include "mqgal/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "mqgal/arith.hpp"
#include "mqgal/galois.hpp"
#include "mqgal/patterns.hpp"
#include "mqgal/subsetlat.hpp"
#include "mqgal/verify.hpp"

namespace mqgal {
namespace {

// Bad flag values are usage errors (exit 2), unlike domain errors (exit 1).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::int64_t parse_int(const std::string& tok, const char* what) {
    std::int64_t v = 0;
    const char* b = tok.data();
    const char* e = b + tok.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e)
        throw UsageError(std::string(what) + ": '" + tok + "' is not an integer");
    return v;
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) {
            out.push_back(text.substr(pos));
            return out;
        }
        out.push_back(text.substr(pos, comma - pos));
        pos = comma + 1;
    }
}

std::vector<std::int64_t> parse_int_list(const std::string& text, const char* what) {
    if (text.empty()) throw UsageError(std::string(what) + ": empty list");
    std::vector<std::int64_t> out;
    for (const std::string& tok : split_commas(text)) out.push_back(parse_int(tok, what));
    return out;
}

SignPattern parse_theta(const std::string& text, int n) {
    std::vector<int> signs;
    for (const std::string& tok : split_commas(text)) {
        if (tok == "+1" || tok == "1")
            signs.push_back(+1);
        else if (tok == "-1")
            signs.push_back(-1);
        else
            throw UsageError("--theta: token '" + tok + "' is not one of +1, -1, 1");
    }
    if (static_cast<int>(signs.size()) != n)
        throw UsageError("--theta: " + std::to_string(signs.size()) + " entries for " +
                         std::to_string(n) + " elements");
    return SignPattern::from_signs(signs);
}

std::string join(const std::vector<std::int64_t>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(xs[i]);
    }
    return out;
}

std::string subset_text(const ProblemInstance& inst, SubsetMask m) {
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < inst.n(); ++i) {
        if ((m >> i) & 1u) {
            if (!first) out += ',';
            out += std::to_string(inst.elements()[static_cast<std::size_t>(i)]);
            first = false;
        }
    }
    return out + "}";
}

const char* bool_text(bool b) { return b ? "true" : "false"; }

SubgroupClass parse_class(const std::string& text) {
    if (text == "D0") return SubgroupClass::D0;
    if (text == "D1") return SubgroupClass::D1;
    if (text == "D2") return SubgroupClass::D2;
    if (text == "H") return SubgroupClass::H;
    throw UsageError("--class: '" + text + "' is not one of D0, D1, D2, H");
}

struct Args {
    std::string elements;
    std::string moduli;
    std::string theta;
    std::string cls = "H";
    std::string format = "text";
    std::string out_path;
    std::int64_t d = 0;
    std::int64_t f = 0;
    std::int64_t p = 0;
    std::int64_t pmax = 0;
    std::int64_t window = 0;
    double tolerance = 0.10;
    int trials = 50;
    std::uint64_t seed = 12345;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Galois groups and quadratic residue pattern densities for "
                 "Q(sqrt a_1, ..., sqrt a_n, zeta_d)"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    Args a;
    std::ostringstream text;
    std::ostringstream records;
    int exit_code = 0;

    // Each subcommand gets its own -d/--moduli pair; callbacks must consult
    // their own handles, not a shared pointer.
    struct ModOpts {
        CLI::Option* d = nullptr;
        CLI::Option* moduli = nullptr;
    };
    CLI::Option* opt_window = nullptr;
    CLI::Option* opt_pmax = nullptr;

    auto add_elements = [&](CLI::App* sub) {
        sub->add_option("-S,--elements", a.elements,
                        "comma separated nonzero integers a_1,...,a_n")
            ->required();
    };
    auto add_modulus = [&](CLI::App* sub) {
        ModOpts m;
        m.d = sub->add_option("-d,--modulus", a.d, "cyclotomic modulus d");
        m.moduli = sub->add_option("--moduli", a.moduli,
                                   "comma separated moduli, combined by lcm (each >= 3)");
        m.d->excludes(m.moduli);
        m.moduli->excludes(m.d);
        return m;
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--format", a.format, "text or records")
            ->check(CLI::IsMember({"text", "records"}));
        sub->add_option("-o,--out", a.out_path, "also write the report to this file");
    };

    // d from -d directly, or the lcm of --moduli with the same validity
    // rule multi_cyclotomic applies.
    auto resolve_modulus = [&](const ModOpts& m) -> std::int64_t {
        if (m.moduli->count() > 0) {
            std::int64_t d = 1;
            for (std::int64_t mod : parse_int_list(a.moduli, "--moduli")) {
                if (mod < 3) throw DomainError("modulus " + std::to_string(mod) + " is below 3");
                d = checked_lcm(d, mod);
            }
            return d;
        }
        if (m.d->count() > 0) return a.d;
        throw UsageError("one of -d or --moduli is required");
    };
    auto make_instance = [&](const ModOpts& m) {
        return ProblemInstance(parse_int_list(a.elements, "-S"), resolve_modulus(m));
    };
    auto instance_keys = [&](const ProblemInstance& inst) {
        return "S=" + join(inst.elements()) + " d=" + std::to_string(inst.d());
    };

    CLI::App* c_degree = app.add_subcommand("degree", "Degree of the compositum field over Q");
    add_elements(c_degree);
    ModOpts m_degree = add_modulus(c_degree);
    add_output(c_degree);
    c_degree->callback([&, m_degree] {
        ProblemInstance inst = make_instance(m_degree);
        std::int64_t deg = degree(inst);
        text << inst.describe() << "\ndegree = " << deg << "\n";
        records << "record=degree " << instance_keys(inst) << " degree=" << deg << "\n";
    });

    CLI::App* c_group = app.add_subcommand("group", "List the Galois group elements");
    add_elements(c_group);
    ModOpts m_group = add_modulus(c_group);
    add_output(c_group);
    c_group->callback([&, m_group] {
        GaloisGroup g = (m_group.moduli->count() > 0)
                            ? multi_cyclotomic(parse_int_list(a.elements, "-S"),
                                               parse_int_list(a.moduli, "--moduli"))
                            : build_group(make_instance(m_group));
        const ProblemInstance& inst = g.instance();
        text << inst.describe() << "\norder = " << g.order() << "\n";
        records << "record=group " << instance_keys(inst) << " order=" << g.order() << "\n";
        std::int64_t idx = 0;
        for (const GaloisElement& el : g.elements()) {
            text << "  " << to_string(el) << "\n";
            records << "record=element index=" << idx << " f=" << el.f
                    << " theta=" << to_string(el.signs) << "\n";
            ++idx;
        }
    });

    CLI::App* c_frob = app.add_subcommand("frobenius", "Frobenius element at an odd prime");
    add_elements(c_frob);
    ModOpts m_frob = add_modulus(c_frob);
    add_output(c_frob);
    c_frob->add_option("-p,--prime", a.p, "odd prime not dividing d or any a_i")->required();
    c_frob->callback([&, m_frob] {
        ProblemInstance inst = make_instance(m_frob);
        GaloisElement el = frobenius(inst, a.p);
        text << inst.describe() << "\nfrobenius(" << a.p << ") = " << to_string(el) << "\n";
        records << "record=frobenius " << instance_keys(inst) << " p=" << a.p << " f=" << el.f
                << " theta=" << to_string(el.signs) << "\n";
    });

    CLI::App* c_feas = app.add_subcommand("feasible", "Whether a pattern occurs for primes in a class");
    CLI::App* c_dens = app.add_subcommand("density", "Exact density of primes realizing a pattern");
    ModOpts m_feas, m_dens;
    for (CLI::App* sub : {c_feas, c_dens}) {
        add_elements(sub);
        (sub == c_feas ? m_feas : m_dens) = add_modulus(sub);
        add_output(sub);
        sub->add_option("-f,--residue", a.f, "residue class mod d, coprime to d")->required();
        sub->add_option("--theta", a.theta, "comma separated sign pattern, tokens +1/-1/1")
            ->required();
    }
    c_feas->callback([&, m_feas] {
        ProblemInstance inst = make_instance(m_feas);
        SignPattern sp = parse_theta(a.theta, inst.n());
        DensityResult dr = main_term_constant(inst, sp, ResidueClass(a.f, inst.d()));
        text << inst.describe() << "\nf = " << a.f << ", theta = (" << to_string(sp)
             << ")\nfeasible = " << bool_text(dr.feasible) << "\nC = " << dr.constant_C << "\n";
        records << "record=feasible " << instance_keys(inst) << " f=" << a.f
                << " theta=" << to_string(sp) << " feasible=" << bool_text(dr.feasible)
                << " C=" << dr.constant_C << "\n";
    });
    c_dens->callback([&, m_dens] {
        ProblemInstance inst = make_instance(m_dens);
        SignPattern sp = parse_theta(a.theta, inst.n());
        DensityResult dr = main_term_constant(inst, sp, ResidueClass(a.f, inst.d()));
        text << inst.describe() << "\nf = " << a.f << ", theta = (" << to_string(sp)
             << ")\nC = " << dr.constant_C << "\nsubgroup order = " << dr.subgroup_order
             << "\ndensity = " << dr.density_num << "/" << dr.density_den
             << "\nfeasible = " << bool_text(dr.feasible) << "\n";
        records << "record=density " << instance_keys(inst) << " f=" << a.f
                << " theta=" << to_string(sp) << " C=" << dr.constant_C
                << " subgroup_order=" << dr.subgroup_order << " density=" << dr.density_num
                << "/" << dr.density_den << " feasible=" << bool_text(dr.feasible) << "\n";
    });

    CLI::App* c_count = app.add_subcommand("count-patterns", "Group order by the closed-form count");
    add_elements(c_count);
    ModOpts m_count = add_modulus(c_count);
    add_output(c_count);
    c_count->callback([&, m_count] {
        ProblemInstance inst = make_instance(m_count);
        std::int64_t count = count_pattern_group(inst);
        text << inst.describe() << "\ncount = " << count << "\n";
        records << "record=count " << instance_keys(inst) << " count=" << count << "\n";
    });

    CLI::App* c_cosets = app.add_subcommand("cosets", "Coset decomposition of the subset lattice");
    add_elements(c_cosets);
    ModOpts m_cosets = add_modulus(c_cosets);
    add_output(c_cosets);
    c_cosets->add_option("--class", a.cls, "subgroup: D0, D1, D2 or H (default H)")
        ->check(CLI::IsMember({"D0", "D1", "D2", "H"}));
    c_cosets->callback([&, m_cosets] {
        ProblemInstance inst = make_instance(m_cosets);
        SubgroupClass cls = parse_class(a.cls);
        SubsetSubgroup sub = subgroup(inst, cls);
        CosetDecomposition dec = coset_decomposition(inst, sub);
        text << inst.describe() << "\nclass = " << to_string(cls)
             << ", subgroup order = " << sub.size() << ", cosets = " << dec.cosets.size() << "\n";
        records << "record=cosets " << instance_keys(inst) << " class=" << to_string(cls)
                << " subgroup_order=" << sub.size() << " cosets=" << dec.cosets.size() << "\n";
        std::int64_t idx = 0;
        for (const Coset& c : dec.cosets) {
            text << "  [" << idx << "] rep " << subset_text(inst, c.representative) << " sqf "
                 << c.common_sqf << " members";
            for (SubsetMask m : c.members) text << " " << subset_text(inst, m);
            text << "\n";
            records << "record=coset index=" << idx << " representative=" << c.representative
                    << " sqf=" << c.common_sqf << " members=";
            for (std::size_t i = 0; i < c.members.size(); ++i) {
                if (i) records << ',';
                records << c.members[i];
            }
            records << "\n";
            ++idx;
        }
    });

    CLI::App* c_canc = app.add_subcommand("cancellation", "Degree, quotient and kernel order bookkeeping");
    add_elements(c_canc);
    ModOpts m_canc = add_modulus(c_canc);
    add_output(c_canc);
    c_canc->callback([&, m_canc] {
        ProblemInstance inst = make_instance(m_canc);
        CancellationReport rep = cancellation(inst);
        text << inst.describe() << "\ndegree = " << rep.degree
             << "\nquotient order = " << rep.quotient_order << "\nh order = " << rep.h_order
             << "\nproduct = " << rep.product << "\nfull order = " << rep.full_order << "\n";
        records << "record=cancellation " << instance_keys(inst) << " degree=" << rep.degree
                << " quotient_order=" << rep.quotient_order << " h_order=" << rep.h_order
                << " product=" << rep.product << " full_order=" << rep.full_order << "\n";
    });

    CLI::App* c_verify = app.add_subcommand("verify", "Run the full self-check suite");
    add_output(c_verify);
    opt_pmax = c_verify->add_option(
        "--pmax", a.pmax, "prime bound for coverage and estimation (default 1000000, or MQGAL_PMAX)");
    opt_window = c_verify->add_option("-N,--window", a.window,
                                      "start of the (N, 2N] sum window (default --pmax)");
    c_verify->add_option("--tolerance", a.tolerance, "relative tolerance (default 0.10)");
    c_verify->add_option("--trials", a.trials, "randomized cancellation instances (default 50)");
    c_verify->add_option("--seed", a.seed, "seed for the randomized checks (default 12345)");
    c_verify->callback([&] {
        std::int64_t pmax = 1'000'000;
        if (opt_pmax->count() > 0) {
            pmax = a.pmax;
        } else if (const char* env = std::getenv("MQGAL_PMAX"); env != nullptr && *env != '\0') {
            pmax = parse_int(env, "MQGAL_PMAX");
        }
        if (pmax < 2) throw UsageError("--pmax must be at least 2");
        VerifyOptions vo;
        vo.coverage_bound = pmax;
        vo.estimate_bound = pmax;
        vo.window_start = (opt_window->count() > 0) ? a.window : pmax;
        vo.frobenius_bound = std::min<std::int64_t>(pmax, 100'000);
        vo.tolerance = a.tolerance;
        vo.random_instances = a.trials;
        vo.seed = a.seed;
        vo.progress = &err;
        std::vector<CheckResult> checks = run_acceptance(vo);
        int failed = 0;
        for (const CheckResult& c : checks) {
            if (!c.pass) ++failed;
            text << (c.pass ? "pass" : "FAIL") << "  " << c.name << "  (" << std::fixed
                 << std::setprecision(1) << c.seconds << "s)";
            if (!c.detail.empty()) text << "  " << c.detail;
            text << "\n";
            records << "record=check name=" << c.name << " pass=" << bool_text(c.pass) << "\n";
        }
        text << "verify: " << (checks.size() - static_cast<std::size_t>(failed)) << "/"
             << checks.size() << " checks passed\n";
        records << "record=verify pass=" << bool_text(failed == 0) << " checks=" << checks.size()
                << " failures=" << failed << "\n";
        if (failed != 0) exit_code = 1;
    });

    try {
        std::vector<const char*> argv;
        argv.reserve(args.size() + 1);
        argv.push_back("mqgal");
        for (const std::string& s : args) argv.push_back(s.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    const std::string body = (a.format == "records") ? records.str() : text.str();
    out << body;
    if (!a.out_path.empty()) {
        std::ofstream file(a.out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot open --out file: " << a.out_path << "\n";
            return 1;
        }
        file << body;
    }
    return exit_code;
}

}  // namespace mqgal
