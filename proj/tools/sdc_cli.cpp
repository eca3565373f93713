// sdc: command-line front end for the subdivision/collapse library.
//
// Exit codes: 0 certificate produced or verified, 2 refuted, 3 budget
// exhausted, 4 input error.

#include "sdc/error.hpp"
#include "sdc/io.hpp"
#include "sdc/pipelines.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace sdc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRefuted = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInput = 4;

std::uint64_t default_budget()
{
    if (const char* s = std::getenv("SDC_BUDGET")) {
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            throw InputError(std::string("SDC_BUDGET is not a number: ") + s);
        }
    }
    return kDefaultSearchBudget;
}

struct Common {
    std::string in;
    std::string out;
    std::uint64_t seed = 0;
    std::uint64_t budget = 0;
    bool deterministic = false;
};

void emit(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f)
        throw InputError("cannot write " + path);
    f << text;
}

void emit_json(const std::string& path, const Json& j)
{
    emit(path, j.dump(2) + "\n");
}

void say(const Common& c, const std::string& line)
{
    // Keep stdout clean when the payload goes there.
    (c.out.empty() || c.out == "-" ? std::cerr : std::cout) << line << "\n";
}

int exit_for(OutcomeKind k)
{
    switch (k) {
    case OutcomeKind::Certificate: return kExitOk;
    case OutcomeKind::Refuted: return kExitRefuted;
    case OutcomeKind::BudgetExhausted: return kExitBudget;
    }
    return kExitInput;
}

Face parse_face(const std::string& s)
{
    std::vector<Vertex> vs;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            vs.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw InputError("bad vertex id '" + tok + "' in face '" + s + "'");
        }
    }
    if (vs.empty())
        throw InputError("empty face");
    return make_face(vs);
}

Strategy parse_strategy(const std::string& s)
{
    if (s == "greedy")
        return Strategy::Greedy;
    if (s == "backtracking")
        return Strategy::Backtracking;
    if (s == "order-guided")
        return Strategy::OrderGuided;
    throw InputError("unknown strategy '" + s + "'");
}

PipelineOptions pipeline_options(const Common& c)
{
    PipelineOptions o;
    o.seed = c.seed;
    o.budget = c.budget;
    o.deterministic = c.deterministic;
    return o;
}

ComplexFile subdivide(const ComplexFile& f, int m)
{
    ComplexFile out;
    if (f.geometric()) {
        GeometricComplex g = f.to_geometric();
        for (int k = 0; k < m; ++k)
            g = geometric_sd(g).geometric(g.ambient_dim);
        out.complex = g.complex;
        out.coords = g.coords;
    } else {
        out.complex = sd_m(f.complex, m).complex;
    }
    return out;
}

int run_pipeline(const Common& c, const std::string& theorem, const std::string& subdivision_path,
                 const std::string& cert_path)
{
    PipelineOptions opts = pipeline_options(c);
    ComplexFile in = read_complex(c.in);
    if (theorem == "convex" || theorem == "star-shaped") {
        GeometricComplex gc = in.to_geometric();
        PipelineReport r = theorem == "convex" ? convex_collapse_pipeline(gc, opts) : star_shaped_ne_pipeline(gc, opts);
        emit_json(c.out, report_to_json(r));
        say(c, theorem + ": " + to_string(r.outcome));
        return exit_for(r.outcome);
    }
    if (theorem == "boundary") {
        BoundaryCollapse bc = convex_boundary_collapse(in.to_geometric(), opts);
        emit_json(c.out, boundary_to_json(bc));
        say(c, "boundary: certificate");
        return kExitOk;
    }
    if (theorem == "hudson") {
        if (subdivision_path.empty())
            throw InputError("hudson needs --subdivision");
        GeometricComplex base = in.to_geometric();
        GeometricComplex d = read_complex(subdivision_path).to_geometric();
        CollapseCertificate cert;
        if (!cert_path.empty()) {
            Json j = read_json(cert_path);
            cert = collapse_from_json(j);
            if (facets_from_json(j.at("complex")) != base.complex)
                throw InputError("certificate does not speak about the --in complex");
        } else {
            SearchOptions so;
            so.budget = c.budget;
            so.seed = c.seed;
            SearchOutcome s = collapse_search(base.complex, std::nullopt, so);
            if (!s.found()) {
                say(c, "hudson: no collapse of the base complex (" + to_string(s.kind) + ")");
                return exit_for(s.kind);
            }
            cert = *s.certificate;
        }
        HudsonResult r = hudson_transfer(FacePoset::from_complex(base.complex), cert.steps, d.complex,
                                         simplicial_carriers(base, d), opts);
        emit_json(c.out, hudson_to_json(r));
        say(c, "hudson: certificate");
        return kExitOk;
    }
    throw InputError("unknown theorem '" + theorem + "'");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Derived subdivisions, collapses and non-evasiveness certificates"};
    app.require_subcommand(1);

    Common c;
    auto add_common = [&](CLI::App* sub, bool needs_in) {
        auto* opt = sub->add_option("--in", c.in, "Input file");
        if (needs_in)
            opt->required();
        sub->add_option("--out", c.out, "Output file (stdout if omitted)");
        sub->add_option("--seed", c.seed, "Random seed");
        sub->add_option("--budget", c.budget, "Search budget (default from SDC_BUDGET)");
        sub->add_flag("--deterministic", c.deterministic, "Single-threaded, seed-fixed execution");
    };

    auto* gen = app.add_subcommand("gen", "Generate a corpus complex");
    std::string gen_name, ratio, off_path;
    GenParams gp;
    gen->add_option("name", gen_name, "Generator name")->required();
    gen->add_option("--d", gp.d, "Dimension");
    gen->add_option("--n", gp.n, "Size parameter");
    gen->add_option("--m", gp.m, "Subdivision iterations");
    gen->add_option("--ratio", ratio, "Spike ratio as p/q");
    gen->add_option("--spikes", gp.spikes, "Number of spikes");
    gen->add_option("--off", off_path, "Also write an OFF file");
    add_common(gen, false);

    auto* sdcmd = app.add_subcommand("sd", "Iterated derived subdivision");
    int m = 1;
    sdcmd->add_option("--m", m, "Number of subdivisions")->check(CLI::NonNegativeNumber);
    add_common(sdcmd, true);

    auto* linkcmd = app.add_subcommand("link", "Link of a face");
    std::string face_text;
    linkcmd->add_option("--face", face_text, "Comma-separated vertex ids")->required();
    add_common(linkcmd, true);

    auto* collapse = app.add_subcommand("collapse", "Search for a collapse to a point");
    std::string strategy = "greedy", target_path;
    collapse->add_option("--strategy", strategy, "greedy | backtracking | order-guided");
    collapse->add_option("--target", target_path, "Target subcomplex file");
    add_common(collapse, true);

    auto* ne = app.add_subcommand("ne", "Search for a non-evasiveness certificate");
    add_common(ne, true);

    auto* pipeline = app.add_subcommand("pipeline", "Run a theorem-level construction");
    std::string theorem, subdivision_path, cert_path;
    pipeline->add_option("--theorem", theorem, "star-shaped | convex | boundary | hudson")
        ->required()
        ->check(CLI::IsMember({"star-shaped", "convex", "boundary", "hudson"}));
    pipeline->add_option("--subdivision", subdivision_path, "Subdivision D of the input (hudson)");
    pipeline->add_option("--cert", cert_path, "Collapse certificate for the input (hudson)");
    add_common(pipeline, true);

    auto* check = app.add_subcommand("check", "Verify a certificate file");
    add_common(check, true);

    auto* shell = app.add_subcommand("shell", "Line shelling of the hull of the input vertices");
    std::string mu_text;
    shell->add_option("--mu", mu_text, "Face of the polytope to shell first")->required();
    add_common(shell, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (c.budget == 0)
            c.budget = default_budget();

        if (gen->parsed()) {
            if (!ratio.empty())
                gp.ratio = parse_rational(ratio);
            ComplexFile f = generate(gen_name, gp, c.seed);
            emit_json(c.out, to_json(f));
            if (!off_path.empty())
                emit(off_path, to_off(f));
            return kExitOk;
        }
        if (sdcmd->parsed()) {
            ComplexFile f = subdivide(read_complex(c.in), m);
            emit_json(c.out, to_json(f));
            say(c, "sd^" + std::to_string(m) + ": " + std::to_string(f.complex.num_facets()) + " facets");
            return kExitOk;
        }
        if (linkcmd->parsed()) {
            ComplexFile f = read_complex(c.in);
            Face face = parse_face(face_text);
            if (!f.complex.contains(face))
                throw InputError("face " + to_string(face) + " is not in the complex");
            ComplexFile out;
            out.complex = link(face, f.complex);
            emit_json(c.out, to_json(out));
            return kExitOk;
        }
        if (collapse->parsed()) {
            ComplexFile f = read_complex(c.in);
            SearchOptions so;
            so.strategy = parse_strategy(strategy);
            so.budget = c.budget;
            so.seed = c.seed;
            std::optional<SimplicialComplex> target;
            if (!target_path.empty())
                target = read_complex(target_path).complex;
            SearchOutcome r = collapse_search(f.complex, target, so);
            if (r.found())
                emit_json(c.out, collapse_to_json(f.complex, *r.certificate));
            std::string why;
            if (r.kind == OutcomeKind::Refuted)
                why = r.reason == RefutationReason::NoFreeFace ? " (no free face)" : " (exhaustive)";
            say(c, "collapse: " + to_string(r.kind) + why);
            return exit_for(r.kind);
        }
        if (ne->parsed()) {
            ComplexFile f = read_complex(c.in);
            NEOutcome r = is_nonevasive(f.complex, c.budget);
            if (r.found())
                emit_json(c.out, ne_to_json(f.complex, r.certificate));
            say(c, "ne: " + to_string(r.kind));
            return exit_for(r.kind);
        }
        if (pipeline->parsed())
            return run_pipeline(c, theorem, subdivision_path, cert_path);
        if (check->parsed()) {
            CheckResult r = check_certificate(read_json(c.in));
            std::cout << r.kind << ": " << (r.ok ? "verified" : "rejected: " + r.message) << "\n";
            return r.ok ? kExitOk : kExitRefuted;
        }
        if (shell->parsed()) {
            ComplexFile f = read_complex(c.in);
            if (!f.geometric())
                throw InputError("shell needs coordinates");
            Polytope p = polytope_from_points(f.coords);
            ShellingResult r = bruggesser_mani_shelling(p, parse_face(mu_text), c.seed);
            emit_json(c.out, shelling_to_json(p, r));
            say(c, "shell: " + std::to_string(r.order.facets.size()) + " facets, " +
                       std::to_string(r.steps.size()) + " collapse steps");
            return kExitOk;
        }
    } catch (const BudgetExhaustedError& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kExitBudget;
    } catch (const RefutedError& e) {
        std::cerr << "refuted: " << e.what() << "\n";
        return kExitRefuted;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
