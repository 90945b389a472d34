// Command-line front end.  Every subcommand shares the session flags
// --prime, --mode, --max-d, --format and --truncation; in operation
// expressions "A B" is the composite A after B.

#include "motsteen/margolis.hpp"
#include "motsteen/parse.hpp"
#include "motsteen/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace motsteen;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;

struct Session {
    std::uint32_t prime = 2;
    std::string mode = "generic";
    int max_d = 40;
    std::string format = "text";
    std::uint32_t truncation = 64;

    Ring ring() const
    {
        auto m = parse_base_mode(mode);
        if (!m)
            throw CLI::ValidationError("--mode", "expected generic, rho0 or char2");
        return Ring::make(prime, *m);
    }
    json to_json() const
    {
        return {{"prime", prime}, {"mode", mode}, {"max_d", max_d}, {"format", format}, {"truncation", truncation}};
    }
};

// What a subcommand produces: text lines and the JSON "result" value.
struct Output {
    std::string text;
    json result;
    int exit_code = kExitOk;
};

Output plain(const std::string& s) { return {s, s}; }

std::string join_lines(const std::vector<std::string>& lines)
{
    std::string out;
    for (const auto& l : lines) {
        if (!out.empty())
            out += '\n';
        out += l;
    }
    return out;
}

std::string bidegree_text(std::optional<Bidegree> bd) { return bd ? to_string(*bd) : "inhomogeneous"; }

Output suite_output(const std::vector<SuiteResult>& results)
{
    Output out;
    out.result = json::array();
    std::vector<std::string> lines;
    for (const auto& r : results) {
        std::ostringstream line;
        line << (r.passed() ? "PASS " : "FAIL ") << r.name << " checks=" << r.checks << " failures=" << r.failures
             << " time_ms=" << std::llround(r.elapsed_ms);
        lines.push_back(line.str());
        if (!r.first_failure.empty())
            lines.push_back("  first counterexample: " + r.first_failure);
        for (const auto& n : r.notes)
            lines.push_back("  note: " + n);
        out.result.push_back({{"suite", r.name},
                              {"passed", r.passed()},
                              {"checks", r.checks},
                              {"failures", r.failures},
                              {"first_failure", r.first_failure},
                              {"notes", r.notes},
                              {"elapsed_ms", r.elapsed_ms}});
        if (!r.passed())
            out.exit_code = kExitVerify;
    }
    out.text = join_lines(lines);
    return out;
}

Output margolis_output(const HomologyReport& report)
{
    Output out;
    out.result = {{"t", report.t}, {"total_homology", report.total_homology()}, {"entries", json::array()}};
    if (report.specialization)
        out.result["specialization"] = {report.specialization->first, report.specialization->second};
    std::vector<std::string> lines;
    for (const auto& e : report.entries) {
        std::string degrees;
        for (const auto& bd : e.bidegrees)
            degrees += (degrees.empty() ? "" : " ") + to_string(bd);
        std::ostringstream line;
        line << to_string(e.bidegree) << " dim=" << e.dimension << " ker=" << e.kernel << " im=" << e.image
             << " HM=" << e.homology << (e.boundary ? " boundary" : "") << "  [" << degrees << "]";
        lines.push_back(line.str());
        json degs = json::array();
        for (const auto& bd : e.bidegrees)
            degs.push_back({bd.d, bd.w});
        out.result["entries"].push_back({{"bidegree", {e.bidegree.d, e.bidegree.w}},
                                         {"bidegrees", degs},
                                         {"dimension", e.dimension},
                                         {"kernel", e.kernel},
                                         {"image", e.image},
                                         {"homology", e.homology},
                                         {"boundary", e.boundary}});
    }
    lines.push_back("total HM = " + std::to_string(report.total_homology()));
    out.text = join_lines(lines);
    return out;
}

// The engine objects a subcommand may need, built lazily from the session.
class Engine {
public:
    explicit Engine(const Session& s) : session_(s), ring_(s.ring()) {}

    const Ring& ring() const { return ring_; }
    const DualSteenrod& dual()
    {
        if (!dual_)
            dual_ = std::make_unique<DualSteenrod>(ring_);
        return *dual_;
    }
    const MilnorAlgebra& algebra()
    {
        if (!algebra_)
            algebra_ = std::make_unique<MilnorAlgebra>(dual(), session_.max_d);
        return *algebra_;
    }
    const BmuComodule& bmu()
    {
        if (!bmu_)
            bmu_ = std::make_unique<BmuComodule>(algebra(), session_.truncation);
        return *bmu_;
    }

private:
    const Session& session_;
    Ring ring_;
    std::unique_ptr<DualSteenrod> dual_;
    std::unique_ptr<MilnorAlgebra> algebra_;
    std::unique_ptr<BmuComodule> bmu_;
};

struct Command {
    CLI::App* app;
    json input;
    std::function<Output(Engine&)> run;
};

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact arithmetic in the mod-p motivic Steenrod algebra and its dual over F_p[tau, rho]"};
    app.require_subcommand(1);
    Session s;
    app.add_option("--prime", s.prime, "the prime p")->capture_default_str();
    app.add_option("--mode", s.mode, "base mode")
        ->check(CLI::IsMember({"generic", "rho0", "char2"}))
        ->capture_default_str();
    app.add_option("--max-d", s.max_d, "first-degree window")->check(CLI::NonNegativeNumber)->capture_default_str();
    app.add_option("--format", s.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--truncation", s.truncation, "B mu_p truncation N (basis up to v^N)")->capture_default_str();
    std::string module_path;
    app.add_option("--module", module_path, "module presentation (JSON) for margolis");
    app.fallthrough();

    std::vector<Command> commands;
    auto add = [&](const char* name, const char* help) -> Command& {
        commands.push_back({app.add_subcommand(name, help), json::object(), {}});
        commands.back().app->fallthrough();
        return commands.back();
    };

    // basis / fpdim
    int bd_d = 0, bd_w = 0;
    std::string side = "dual";
    {
        auto& c = add("basis", "Milnor basis of a bidegree");
        c.app->add_option("d", bd_d, "first degree")->required();
        c.app->add_option("w", bd_w, "weight")->required();
        c.app->add_option("--side", side, "dual monomials or operation basis")
            ->check(CLI::IsMember({"dual", "op"}))
            ->capture_default_str();
        c.run = [&](Engine& e) {
            const auto& basis = e.dual().basis({bd_d, bd_w});
            Output out;
            out.result = json::array();
            std::vector<std::string> lines;
            for (const auto& m : basis) {
                lines.push_back(side == "op" ? format_op_basis(m) : format_dual_monomial(m));
                out.result.push_back(lines.back());
            }
            out.text = join_lines(lines);
            return out;
        };
    }
    {
        auto& c = add("fpdim", "F_p-dimension of a bidegree of the dual algebra");
        c.app->add_option("d", bd_d, "first degree")->required();
        c.app->add_option("w", bd_w, "weight")->required();
        c.run = [&](Engine& e) {
            const std::uint64_t n = e.dual().fp_dimension({bd_d, bd_w});
            return Output{std::to_string(n), n};
        };
    }

    // Binary and unary element commands.
    std::string arg_a, arg_b;
    {
        auto& c = add("dmul", "product in the dual algebra");
        c.app->add_option("a", arg_a)->required();
        c.app->add_option("b", arg_b)->required();
        c.run = [&](Engine& e) {
            return plain(to_string(e.dual().mul(parse_dual(arg_a, e.dual()), parse_dual(arg_b, e.dual()))));
        };
    }
    {
        auto& c = add("dcoprod", "coproduct phi_* in the dual algebra");
        c.app->add_option("x", arg_a)->required();
        c.run = [&](Engine& e) { return plain(to_string(e.dual().coproduct(parse_dual(arg_a, e.dual())))); };
    }
    {
        auto& c = add("omul", "operation product a b (a after b)");
        c.app->add_option("a", arg_a)->required();
        c.app->add_option("b", arg_b)->required();
        c.run = [&](Engine& e) {
            const auto& A = e.algebra();
            return plain(to_string(A.mul(parse_op(arg_a, A), parse_op(arg_b, A))));
        };
    }
    {
        auto& c = add("ocoprod", "Cartan coproduct psi^* of an operation");
        c.app->add_option("theta", arg_a)->required();
        c.run = [&](Engine& e) {
            const auto& A = e.algebra();
            return plain(to_string(A.coproduct(parse_op(arg_a, A))));
        };
    }
    {
        auto& c = add("pair", "pairing <x, theta> of a dual element with an operation");
        c.app->add_option("x", arg_a)->required();
        c.app->add_option("theta", arg_b)->required();
        c.run = [&](Engine& e) {
            const auto& A = e.algebra();
            return plain(to_string(A.pair(parse_dual(arg_a, e.dual()), parse_op(arg_b, A))));
        };
    }
    {
        auto& c = add("act", "action of an operation on H^{*,*}(B mu_p)");
        c.app->add_option("theta", arg_a)->required();
        c.app->add_option("x", arg_b)->required();
        c.run = [&](Engine& e) {
            const auto& B = e.bmu();
            return plain(to_string(B.act(parse_op(arg_a, e.algebra()), parse_bmu(arg_b, B))));
        };
    }
    unsigned rottura_n = 0;
    {
        auto& c = add("rottura", "theta(u^{p^n}) and theta(v^{p^n}) against their closed forms");
        c.app->add_option("theta", arg_a)->required();
        c.app->add_option("n", rottura_n)->required();
        c.run = [&](Engine& e) {
            const RotturaReport rep = e.bmu().verify_rottura(parse_op(arg_a, e.algebra()), rottura_n);
            Output out;
            out.text = join_lines({"theta(u^{p^n}) = " + to_string(rep.lhs_u),
                                   "closed form    = " + to_string(rep.rhs_u),
                                   "theta(v^{p^n}) = " + to_string(rep.lhs_v),
                                   "closed form    = " + to_string(rep.rhs_v), rep.holds() ? "holds" : "FAILS"});
            out.result = {{"lhs_u", to_string(rep.lhs_u)}, {"rhs_u", to_string(rep.rhs_u)},
                          {"lhs_v", to_string(rep.lhs_v)}, {"rhs_v", to_string(rep.rhs_v)},
                          {"holds", rep.holds()}};
            out.exit_code = rep.holds() ? kExitOk : kExitVerify;
            return out;
        };
    }
    int qop_t = 0;
    {
        auto& c = add("qop", "the Milnor primitive Q_t: bidegree, square, coproduct, commutator with Q_0");
        c.app->add_option("t", qop_t)->required()->check(CLI::NonNegativeNumber);
        c.run = [&](Engine& e) {
            const auto& A = e.algebra();
            const OpElement q = A.milnor_primitive(qop_t);
            const std::string bd = bidegree_text(A.bidegree(q));
            const std::string square = to_string(A.mul(q, q));
            const std::string psi = to_string(A.coproduct(q));
            const std::string closed = to_string(A.primitive_coproduct_closed_form(qop_t));
            Output out;
            out.result = {{"element", to_string(q)}, {"bidegree", bd}, {"square", square},
                          {"coproduct", psi},         {"closed_form", closed}};
            std::vector<std::string> lines{"Q" + std::to_string(qop_t) + " = " + to_string(q), "bidegree: " + bd,
                                           "square: " + square, "coproduct: " + psi, "closed form: " + closed};
            if (qop_t >= 1) {
                const OpElement b = A.bockstein(), qt = A.q_op(qop_t);
                const std::string comm = to_string(A.mul(b, qt) - A.mul(qt, b));
                out.result["commutator"] = comm;
                lines.push_back("Q0 q" + std::to_string(qop_t) + " - q" + std::to_string(qop_t) + " Q0 = " + comm);
            }
            out.text = join_lines(lines);
            return out;
        };
    }
    int module_t = 0;
    {
        auto& c = add("export-bmu", "the truncated B mu_p module with its Q_t action, as module JSON");
        c.app->add_option("t", module_t)->required()->check(CLI::NonNegativeNumber);
        c.run = [&](Engine& e) {
            const std::string text = module_to_json(export_bmu(e.bmu(), module_t));
            return Output{text, json::parse(text)};
        };
    }
    std::string specialize;
    {
        auto& c = add("margolis", "Margolis homology of the module given by --module");
        c.app->add_option("t", module_t)->required()->check(CLI::NonNegativeNumber);
        c.app->add_option("--specialize", specialize, "substitute residues TAU,RHO before taking ranks");
        c.run = [&](Engine& e) {
            if (module_path.empty())
                throw CLI::RequiredError("--module");
            const ModulePresentation m = load_module_file(module_path);
            require_same_ring(m.ring, e.ring(), "module");
            std::optional<std::pair<std::uint32_t, std::uint32_t>> spec;
            if (!specialize.empty()) {
                std::uint32_t a = 0, b = 0;
                char comma = 0;
                std::istringstream in(specialize);
                if (!(in >> a >> comma >> b) || comma != ',' || !in.eof())
                    throw CLI::ValidationError("--specialize", "expected TAU,RHO");
                spec = std::pair{a, b};
            }
            return margolis_output(margolis_homology(m, module_t, spec));
        };
    }
    std::string suite = "all";
    {
        auto& c = add("verify", "run the invariant suites; exit 1 on any failure");
        c.app->add_option("--suite", suite)->check(CLI::IsMember({"dual", "op", "bmu", "all"}))->capture_default_str();
        c.run = [&](Engine& e) {
            return suite_output(run_suite_group(*parse_suite_group(suite), e.ring(), s.max_d, s.truncation));
        };
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    for (auto& c : commands) {
        if (!c.app->parsed())
            continue;
        json input = {{"command", c.app->get_name()}};
        json args = json::array();
        for (const auto* opt : c.app->get_options())
            if (opt->get_positional() && opt->count() > 0)
                args.push_back(opt->results().front());
        input["args"] = args;
        if (!module_path.empty())
            input["module"] = module_path;
        try {
            Engine engine(s);
            const auto start = std::chrono::steady_clock::now();
            Output out = c.run(engine);
            const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            if (s.format == "json") {
                json doc = {{"session", s.to_json()}, {"input", input}, {"result", out.result}, {"timing_ms", ms}};
                std::cout << doc.dump(2) << '\n';
            } else {
                std::cout << out.text << '\n';
            }
            return out.exit_code;
        } catch (const CLI::Error& e) {
            std::cerr << "error: " << e.what() << '\n';
            return kExitUsage;
        } catch (const Error& e) {
            std::cerr << "error: " << e.what() << '\n';
            return kExitUsage;
        }
    }
    return kExitUsage;
}
