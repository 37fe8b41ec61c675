// fgi: compute Stickelberger elements, L-values and fractional Galois ideals; run checks; move data files.

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fgi/jideal/checks.hpp"

using namespace fgi;

namespace {

constexpr const char* kVersion = "0.1.0";

struct RunConfig {
    std::string command, object, kind;
    long conductor = 0, prime = 0, level = 1;
    std::string subfield = "full";
    std::string places;  // comma separated primes; empty means the ramified ones
    int bits = 192, tol_exp = -100;
    std::string provider = "builtin";
    std::string in, out, units, classgroup;
    std::uint64_t seed = 1;
    std::string suite;
    long ell = 0;
    std::string torsion = "mu";
    int twists = 5;

    json to_json() const {
        return {{"command", command},   {"object", object},         {"kind", kind},
                {"conductor", conductor}, {"prime", prime},        {"level", level},
                {"subfield", subfield},  {"places", places},       {"bits", bits},
                {"tol_exp", tol_exp},    {"provider", provider},   {"in", in},
                {"units", units},        {"classgroup", classgroup}, {"seed", seed},
                {"suite", suite},        {"ell", ell},             {"torsion", torsion},
                {"twists", twists}};
    }
};

std::vector<long> parse_long_list(const std::string& s) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty() || tok == "inf") continue;
        try {
            size_t pos = 0;
            out.push_back(std::stol(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw InputError("not an integer: '" + tok + "'");
        }
    }
    return out;
}

long conductor_of(const RunConfig& c) {
    if (c.conductor) return c.conductor;
    if (c.prime) {
        if (!is_prime(c.prime)) throw InputError("--prime must be a prime");
        return ipow(c.prime, c.level);
    }
    throw InputError("give --conductor or --prime");
}

FieldModel field_of(const RunConfig& c) {
    if (c.subfield == "relative") {
        if (!c.prime) throw InputError("the relative field needs --prime (p = 3 mod 4)");
        if (c.prime % 4 != 3) throw InputError("the relative field needs p = 3 mod 4");
        return FieldModel::relative(c.prime, c.level);
    }
    long f = conductor_of(c);
    if (c.subfield == "full") return FieldModel::full(f);
    if (c.subfield == "plus") return FieldModel::plus(f);
    // custom subgroup: residues fixing K
    auto ker = parse_long_list(c.subfield);
    if (ker.empty()) throw InputError("unknown --subfield '" + c.subfield + "'");
    return FieldModel::make(f, ker);
}

PlaceSet places_of(const RunConfig& c) {
    FieldModel K = field_of(c);
    if (c.places.empty()) return PlaceSet::ramified(K);
    return PlaceSet(K, parse_long_list(c.places));
}

json character_json(const Character& chi, const FieldModel& K) {
    const auto& g = chi.group();
    json v = json::object();
    for (long j = 0; j < g->rank(); ++j) {
        long s = g->generator(j);
        v["sigma_" + std::to_string(g->label(s))] = chi.value(s).to_string();
    }
    json out = {{"name", chi.to_string()}, {"values", v}};
    if (K.contains_complex_conjugation())
        out["parity"] = chi.trivial_on(g->from_label(K.conductor() - 1)) ? "even" : "odd";
    return out;
}

json complex_json(const Complex& z) { return {{"re", real_to_json(z.re)}, {"im", real_to_json(z.im)}}; }

json jresult_json(const JResult& J) {
    json j = {{"field", J.field}, {"places", J.places}, {"route", to_string(J.route)}, {"e", J.e},
              {"assumptions", J.assumptions}};
    if (J.ideal) j["lattice"] = lattice_to_json(*J.ideal);
    if (J.annihilator) j["annihilator"] = lattice_to_json(*J.annihilator);
    if (J.ideal) {
        json b = json::array();
        for (auto& x : J.ideal->basis_elements()) b.push_back(qg_to_json(x));
        j["basis"] = b;
    }
    return j;
}

struct Report {
    json exact = json::object();
    json numeric = json::object();
    json checks = json::array();
};

void compute(const RunConfig& c, const PrecisionContext& ctx, Report& rep) {
    const std::string& o = c.object;
    if (o == "theta") {
        PlaceSet P = places_of(c);
        if (P.field().base() != BaseField::rational) throw UnsupportedError("theta is computed over Q; use half_theta");
        rep.exact["field"] = P.field().describe();
        rep.exact["places"] = describe_places(P);
        rep.exact["theta"] = qg_to_json(stickelberger(P));
    } else if (o == "half_theta") {
        RunConfig r = c;
        r.subfield = "relative";
        FieldModel K = field_of(r);
        rep.exact["field"] = K.describe();
        rep.exact["half_theta"] = qg_to_json(half_stickelberger(K));
    } else if (o == "lvalues" || o == "rvec") {
        PlaceSet P = places_of(c);
        const auto& K = P.field();
        rep.exact["field"] = K.describe();
        rep.exact["places"] = describe_places(P);
        json ex = json::array(), nu = json::array();
        std::vector<Real> derivs;
        bool rel = K.base() == BaseField::imaginary_quadratic;
        if (o == "lvalues") derivs = stark_zeta_derivs(P, ctx);
        for (auto& chi : characters(P.group())) {
            long r = r_of_chi(chi, P);
            json e = character_json(chi, K);
            e["r"] = r;
            if (o == "lvalues") {
                if (!rel) e["L_S(0)"] = l_value_at_0(chi, P).to_string();
                json n = {{"name", chi.to_string()}, {"r", r}};
                if (r == 1) n["L_S'(0)"] = complex_json(l_deriv_at_0(chi, derivs, ctx.working_bits()));
                if (!rel && r == 0) n["L_S(0)"] = complex_json(l_value_numeric(chi, P, ctx));
                nu.push_back(n);
            }
            ex.push_back(e);
        }
        rep.exact["characters"] = ex;
        if (o == "lvalues") rep.numeric["characters"] = nu;
    } else if (o == "jideal") {
        if (c.subfield == "base") {
            auto J = j_base_case(c.conductor ? c.conductor : 5, ctx);
            rep.exact = {{"field", J.field}, {"route", to_string(J.route)}, {"expected", J.expected.get_str()},
                         {"assumptions", J.assumptions}};
            rep.numeric = {{"generator", real_to_json(*J.generator)}, {"error_bound", real_to_json(*J.generator_error)}};
            return;
        }
        RelativeTorsion rt = c.torsion == "zeta" ? RelativeTorsion::zeta : RelativeTorsion::mu;
        if (c.subfield == "full") {
            auto f = conductor_of(c);
            auto [p, n] = detail::prime_power(f);
            rep.exact = jresult_json(j_full_cyclotomic(p, n, ctx));
        } else {
            PlaceSet P = places_of(c);
            auto U = sunit_group(P, c.provider == "builtin" ? "" : c.units, ctx);
            rep.exact = jresult_json(j_via_theorem(U, stark_module(P, rt), ctx));
        }
    } else if (o == "annihilator") {
        PlaceSet P = places_of(c);
        auto U = sunit_group(P, c.provider == "builtin" ? "" : c.units, ctx);
        RelativeTorsion rt = c.torsion == "zeta" ? RelativeTorsion::zeta : RelativeTorsion::mu;
        auto M = quotient_module(U, stark_module(P, rt), ctx);
        json inv = json::array();
        for (auto& z : M.invariants()) inv.push_back(z.get_str());
        rep.exact = {{"field", P.field().describe()},
                     {"places", describe_places(P)},
                     {"module", "U/E"},
                     {"units", to_string(U.provenance) + (U.note.empty() ? "" : ": " + U.note)},
                     {"order", M.order().get_str()},
                     {"invariants", inv},
                     {"annihilator", lattice_to_json(M.annihilator())}};
    } else {
        throw InputError("unknown object '" + o + "' (theta, half_theta, lvalues, rvec, jideal, annihilator)");
    }
}

int verify(const RunConfig& c, const PrecisionContext& ctx, Report& rep) {
    if (c.suite.empty()) throw InputError("--suite is required");
    std::vector<CheckId> ids;
    std::stringstream ss(c.suite);
    std::string tok;
    while (std::getline(ss, tok, ',')) ids.push_back(check_from_name(tok));
    CheckParams pr;
    pr.p = c.prime ? c.prime : 5;
    pr.n = c.level;
    pr.f = c.conductor;
    pr.shape = c.subfield;
    pr.ell = c.ell;
    pr.seed = c.seed;
    pr.twists = c.twists;
    pr.torsion = c.torsion == "zeta" ? RelativeTorsion::zeta : RelativeTorsion::mu;
    if (c.subfield == "base") pr.base_d = c.conductor ? c.conductor : 5;
    bool needs_cg = std::find(ids.begin(), ids.end(), CheckId::CLCONT) != ids.end() ||
                    std::find(ids.begin(), ids.end(), CheckId::CG_FIT) != ids.end();
    if (needs_cg) {
        if (c.classgroup.empty()) throw InputError("CLCONT/CG_FIT need a class-group file: pass --classgroup");
        pr.classgroup = load_classgroup(c.classgroup);
        if (!pr.ell) throw InputError("CLCONT/CG_FIT need --ell");
    }
    bool any_fail = false, any_error = false;
    for (auto& r : run_suite(ids, pr, ctx)) {
        rep.checks.push_back(r.to_json());
        any_fail = any_fail || r.status == CheckStatus::fail;
        any_error = any_error || r.status == CheckStatus::error;
    }
    return any_error ? 2 : any_fail ? 1 : 0;
}

void ingest(const RunConfig& c, const PrecisionContext& ctx, Report& rep) {
    if (c.in.empty()) throw InputError("--in is required");
    if (c.kind == "units") {
        auto U = unit_lattice_from_json(parse_json_text(read_text_file(c.in), c.in), ctx);
        rep.exact = {{"accepted", true},
                     {"field", U.field().describe()},
                     {"places", describe_places(U.places)},
                     {"rank", static_cast<long>(U.gens.size())},
                     {"expected_rank", U.expected_rank()},
                     {"provenance", U.note},
                     {"normalized", unit_lattice_to_json(U)}};
    } else if (c.kind == "classgroup") {
        auto cg = load_classgroup(c.in);
        auto M = cg.module();
        json inv = json::array();
        for (auto& z : M.invariants()) inv.push_back(z.get_str());
        rep.exact = {{"accepted", true},
                     {"field", cg.field.describe()},
                     {"order", M.order().get_str()},
                     {"invariants", inv},
                     {"annihilator", lattice_to_json(M.annihilator())},
                     {"provenance", cg.provenance},
                     {"normalized", classgroup_to_json(cg)}};
    } else {
        throw InputError("ingest kind must be units or classgroup");
    }
}

json export_doc(const RunConfig& c, const PrecisionContext& ctx) {
    if (c.kind == "units") {
        PlaceSet P = places_of(c);
        return unit_lattice_to_json(sunit_group(P, c.provider == "builtin" ? "" : c.units, ctx));
    }
    if (c.kind == "classgroup") {
        if (c.in.empty()) throw InputError("export classgroup needs --in");
        return classgroup_to_json(load_classgroup(c.in));
    }
    throw InputError("export kind must be units or classgroup");
}

void write_out(const RunConfig& c, const std::string& text) {
    if (c.out.empty() || c.out == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream f(c.out);
    if (!f) throw InputError("cannot write " + c.out);
    f << text << "\n";
}

std::string error_kind(const Error& e) {
    if (dynamic_cast<const MathError*>(&e)) return "math";
    if (dynamic_cast<const PrecisionError*>(&e)) return "precision";
    if (dynamic_cast<const InputError*>(&e)) return "input";
    if (dynamic_cast<const UnsupportedError*>(&e)) return "unsupported";
    return "error";
}

std::string utc_now() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractional Galois ideals of cyclotomic fields"};
    app.require_subcommand(1);
    RunConfig cfg;
    bool no_timestamp = false;
    auto common = [&](CLI::App* s) {
        s->add_option("-f,--conductor", cfg.conductor, "conductor f (or d = 1, 5 for the base case)");
        s->add_option("-p,--prime", cfg.prime, "prime p, field of conductor p^n");
        s->add_option("-n,--level", cfg.level, "level n")->check(CLI::PositiveNumber);
        s->add_option("--subfield", cfg.subfield, "full, plus, relative, base, or a comma list of residues fixing K");
        s->add_option("--places", cfg.places, "finite primes of S, comma separated (default: ramified primes)");
        s->add_option("--bits", cfg.bits, "working precision in bits");
        s->add_option("--tol-exp", cfg.tol_exp, "tolerance 2^tol_exp");
        s->add_option("--provider", cfg.provider, "unit provider: builtin or file")->check(CLI::IsMember({"builtin", "file"}));
        s->add_option("--units", cfg.units, "unit file for --provider file");
        s->add_option("--classgroup", cfg.classgroup, "class-group file");
        s->add_option("--in", cfg.in, "input file");
        s->add_option("--out", cfg.out, "output file (default stdout)");
        s->add_option("--seed", cfg.seed, "seed for randomized checks");
        s->add_option("--ell", cfg.ell, "prime l for class-group checks");
        s->add_option("--torsion", cfg.torsion, "torsion of the relative Stark module: mu (-zeta) or zeta")
            ->check(CLI::IsMember({"mu", "zeta"}));
        s->add_option("--twists", cfg.twists, "number of twists for INDF");
        s->add_flag("--no-timestamp", no_timestamp, "omit the timestamp from the metadata block");
    };
    auto* c_compute = app.add_subcommand("compute", "compute an object");
    c_compute->add_option("object", cfg.object, "theta, half_theta, lvalues, rvec, jideal, annihilator")->required();
    common(c_compute);
    auto* c_verify = app.add_subcommand("verify", "run checks");
    c_verify->add_option("--suite", cfg.suite, "comma separated check ids")->required();
    common(c_verify);
    auto* c_ingest = app.add_subcommand("ingest", "validate a units or class-group file");
    c_ingest->add_option("kind", cfg.kind, "units or classgroup")->required();
    common(c_ingest);
    auto* c_export = app.add_subcommand("export", "write a units or class-group file");
    c_export->add_option("kind", cfg.kind, "units or classgroup")->required();
    common(c_export);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    int code = 0;
    json doc;
    try {
        PrecisionContext ctx(cfg.bits, cfg.tol_exp);
        if (cfg.command == "export") {
            write_out(cfg, export_doc(cfg, ctx).dump(2));
            return 0;
        }
        Report rep;
        if (cfg.command == "compute") compute(cfg, ctx, rep);
        if (cfg.command == "verify") code = verify(cfg, ctx, rep);
        if (cfg.command == "ingest") ingest(cfg, ctx, rep);
        doc["config"] = cfg.to_json();
        doc["exact"] = rep.exact;
        doc["numeric"] = rep.numeric;
        doc["numeric"]["context"] = context_stamp(ctx);
        if (cfg.command == "verify") {
            doc["checks"] = rep.checks;
            doc["status"] = code == 0 ? "pass" : code == 1 ? "fail" : "error";
        }
    } catch (const Error& e) {
        doc = json::object();
        doc["config"] = cfg.to_json();
        doc["status"] = "error";
        doc["error"] = {{"type", error_kind(e)}, {"message", e.what()}};
        std::cerr << "error: " << e.what() << "\n";
        code = 2;
    }
    doc["metadata"] = {{"tool", "fgi"}, {"version", kVersion}};
    if (!no_timestamp) doc["metadata"]["timestamp"] = utc_now();
    try {
        write_out(cfg, doc.dump(2));
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return code;
}
