#include <CLI11.hpp>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include "ppd/bhc.hpp"
#include "ppd/classify.hpp"
#include "ppd/degrees.hpp"
#include "ppd/jsonw.hpp"
#include "ppd/ntkernel.hpp"
#include "ppd/permcheck.hpp"

using namespace ppd;

namespace {

u64 parse_count(const std::string& s) {
    if (s.empty()) throw CLI::ValidationError("numeric argument is empty");
    bool plain = true;
    for (char c : s)
        if (!isdigit(static_cast<unsigned char>(c))) plain = false;
    if (plain) return std::stoull(s);
    char* end = nullptr;
    long double v = strtold(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || v < 0 || v > 1.8e19L || floorl(v) != v)
        throw CLI::ValidationError("expected a non-negative integer (scientific notation allowed): " + s);
    return static_cast<u64>(v);
}

std::vector<u64> parse_count_list(const std::string& s) {
    std::vector<u64> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        out.push_back(parse_count(s.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

struct Ctx {
    std::string format = "text";
    unsigned threads = 0;
    u64 sieve_capacity = 100'000'000'000ULL;
    u64 element_cap = 1'000'000;
    bool json() const { return format == "json"; }
    bool csv() const { return format == "csv"; }
};

void emit(const std::string& s) { std::cout << s << "\n"; }

void config_common(JsonWriter& w, const Ctx& ctx) {
    w.kv("format", ctx.format);
    w.kv("sieve_capacity", ctx.sieve_capacity);
    w.kv("element_cap", ctx.element_cap);
    w.kv("threads", bhc::resolve_threads(ctx.threads));
}

// ---- classify -----------------------------------------------------------

void record_json(JsonWriter& w, const classify::GroupRecord& rec) {
    w.begin_object();
    w.kv("family", classify::family_name(rec.family));
    w.kv("name", rec.name);
    w.key("params");
    if (rec.param_d || rec.param_q || rec.param_i) {
        w.begin_object();
        if (rec.param_d) w.kv("d", *rec.param_d);
        if (rec.param_q) w.kv("q", *rec.param_q);
        if (rec.param_i) w.kv("i", *rec.param_i);
        w.end_object();
    } else {
        w.null();
    }
    w.key("degree");
    w.begin_object();
    w.kv("p", rec.degree_pp.p);
    w.kv("k", rec.degree_pp.k);
    w.kv("n", rec.degree);
    w.end_object();
    w.kv("reps", rec.num_representations);
    w.kv("primitive", rec.primitive);
    w.key("rank");
    if (rec.rank)
        w.value(*rec.rank);
    else
        w.null();
    auto st = classify::p_complement_status(rec);
    w.key("p_complement");
    w.begin_object();
    const char* kind = st.kind == classify::PComplementStatus::Kind::exists
                           ? "exists"
                           : (st.kind == classify::PComplementStatus::Kind::none ? "none" : "conditional");
    w.kv("status", kind);
    if (st.kind != classify::PComplementStatus::Kind::none) w.kv("classes", st.classes);
    if (!st.condition.empty()) w.kv("condition", st.condition);
    w.end_object();
    w.key("duplicates");
    if (rec.duplicates.empty())
        w.null();
    else
        w.value(rec.duplicates);
    w.kv("bounded_search", rec.within_bounds_only);
    w.end_object();
}

void run_classify(const Ctx& ctx, const std::string& n_str, const std::string& qmax,
                  unsigned dmax) {
    classify::SearchBound bounds{Nat(parse_count(qmax)), dmax};
    Nat n(parse_count(n_str));
    auto result = classify::classify_degree(n, bounds);
    if (ctx.json()) {
        JsonWriter w;
        w.begin_object();
        w.kv("command", "classify");
        w.key("config");
        w.begin_object();
        config_common(w, ctx);
        w.kv("n", n);
        w.end_object();
        w.key("results");
        w.begin_array();
        for (const auto& rec : result.records) record_json(w, rec);
        w.end_array();
        w.key("bounds_used");
        w.begin_object();
        w.kv("q_max", result.bounds_used.q_max);
        w.kv("d_max", result.bounds_used.d_max);
        w.end_object();
        if (!result.diagnostic.empty()) w.kv("diagnostic", result.diagnostic);
        w.end_object();
        emit(w.str());
        return;
    }
    if (ctx.csv()) {
        emit("family,name,degree,p,k,reps,primitive,rank,p_complement,classes,duplicates");
        for (const auto& rec : result.records) {
            auto st = classify::p_complement_status(rec);
            const char* kind = st.kind == classify::PComplementStatus::Kind::exists
                                   ? "exists"
                                   : (st.kind == classify::PComplementStatus::Kind::none ? "none" : "conditional");
            std::string rank = rec.rank ? std::to_string(*rec.rank) : "";
            std::string classes =
                st.kind == classify::PComplementStatus::Kind::none ? "" : std::to_string(st.classes);
            emit(csv_field(classify::family_name(rec.family)) + "," + csv_field(rec.name) + "," +
                 rec.degree.str() + "," + rec.degree_pp.p.str() + "," + std::to_string(rec.degree_pp.k) +
                 "," + std::to_string(rec.num_representations) + "," + (rec.primitive ? "true" : "false") +
                 "," + rank + "," + kind + "," + classes + "," + csv_field(rec.duplicates));
        }
        return;
    }
    if (!result.diagnostic.empty()) {
        emit("no records: " + result.diagnostic);
        return;
    }
    if (result.records.empty()) {
        emit("no records: no almost simple group has this degree");
        return;
    }
    for (const auto& rec : result.records) {
        auto st = classify::p_complement_status(rec);
        std::string line = "[";
        line += classify::family_name(rec.family);
        line += "] " + rec.name + "  degree " + rec.degree.str() + " = " + rec.degree_pp.p.str() + "^" +
                std::to_string(rec.degree_pp.k) + "  reps " + std::to_string(rec.num_representations);
        line += rec.primitive ? "  primitive" : "  imprimitive";
        if (rec.rank) line += "  rank " + std::to_string(*rec.rank);
        switch (st.kind) {
            case classify::PComplementStatus::Kind::exists:
                line += "  p-complement: exists (" + std::to_string(st.classes) + " class" +
                        (st.classes > 1 ? "es" : "") + ")";
                break;
            case classify::PComplementStatus::Kind::none:
                line += "  p-complement: none";
                break;
            case classify::PComplementStatus::Kind::conditional:
                line += "  p-complement: conditional on " + st.condition;
                break;
        }
        if (!rec.duplicates.empty()) line += "  [" + rec.duplicates + "]";
        if (rec.within_bounds_only) line += "  (within search bounds)";
        emit(line);
    }
}

// ---- degrees ------------------------------------------------------------

void emit_nl_solutions(const Ctx& ctx, const char* command, const std::vector<degrees::NlSolution>& sols,
                       u64 xmax, unsigned dmax, unsigned kmax) {
    if (ctx.json()) {
        JsonWriter w;
        w.begin_object();
        w.kv("command", command);
        w.key("config");
        w.begin_object();
        config_common(w, ctx);
        w.end_object();
        w.key("results");
        w.begin_array();
        for (const auto& s : sols) {
            w.begin_object();
            w.kv("x", s.x);
            w.kv("y", s.y);
            w.kv("d", s.d);
            w.kv("k", s.k);
            w.end_object();
        }
        w.end_array();
        w.key("bounds_used");
        w.begin_object();
        w.kv("x_max", xmax);
        w.kv("d_max", dmax);
        w.kv("k_max", kmax);
        w.end_object();
        w.end_object();
        emit(w.str());
        return;
    }
    if (ctx.csv()) {
        emit("x,y,d,k");
        for (const auto& s : sols)
            emit(s.x.str() + "," + s.y.str() + "," + std::to_string(s.d) + "," + std::to_string(s.k));
        return;
    }
    if (sols.empty()) {
        emit("no solutions within bounds");
        return;
    }
    for (const auto& s : sols) {
        std::string x = s.x < 0 ? "(" + s.x.str() + ")" : s.x.str();
        emit("(" + x + "^" + std::to_string(s.d) + " - 1)/(" + x + " - 1) = " + s.y.str() + "^" +
             std::to_string(s.k));
    }
}

// ---- perm helpers -------------------------------------------------------

perm::PermGroup build_group(const Ctx& ctx, const std::string& family, unsigned d,
                            const std::string& q, unsigned m, bool hyperplanes) {
    perm::GroupOptions opts;
    opts.element_cap = ctx.element_cap;
    if (family == "a2") return perm::build_a2_action(m, 12, opts);
    perm::Variant v = family == "pgl" ? perm::Variant::pgl : perm::Variant::psl;
    Nat qn(parse_count(q));
    if (hyperplanes) return perm::build_point_hyperplane_action(d, qn, v, opts);
    return perm::build_projective_action(d, qn, v, opts);
}

void generators_json(JsonWriter& w, const perm::PermGroup& g) {
    w.key("generators");
    w.begin_array();
    for (const auto& gen : g.generators()) {
        w.begin_array();
        for (perm::Point x : gen.images()) w.value(static_cast<unsigned>(x));
        w.end_array();
    }
    w.end_array();
}

}  // namespace

int main(int argc, char** argv) {
    Ctx ctx;
    CLI::App app{"prime power degree toolkit: projective degrees, Bateman-Horn estimates,\n"
                 "the prime-power-degree classification, and desk-scale group verification"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", ctx.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    app.add_option("--threads", ctx.threads, "worker threads (0 = auto, PPD_THREADS overrides)");
    app.add_option("--sieve-capacity", ctx.sieve_capacity, "largest admissible sieve bound")
        ->capture_default_str();
    app.add_option("--element-cap", ctx.element_cap, "largest materialised group order")
        ->capture_default_str();

    std::function<void()> action;

    // classify <n>
    {
        auto* c = app.add_subcommand("classify", "groups of the given prime-power degree");
        auto n = std::make_shared<std::string>();
        auto qmax = std::make_shared<std::string>("100");
        auto dmax = std::make_shared<unsigned>(13);
        c->add_option("n", *n, "degree to classify")->required();
        c->add_option("--qmax", *qmax, "field size bound for the bounded families");
        c->add_option("--dmax", *dmax, "dimension bound for the bounded families");
        c->callback([&, n, qmax, dmax] {
            action = [&, n, qmax, dmax] { run_classify(ctx, *n, *qmax, *dmax); };
        });
    }

    // degrees ...
    {
        auto* dg = app.add_subcommand("degrees", "projective degree searches");
        dg->require_subcommand(1);

        auto* search = dg->add_subcommand("search", "prime repunit degrees (projective primes)");
        auto sd = std::make_shared<unsigned>(3);
        auto se = std::make_shared<unsigned>(1);
        auto sq = std::make_shared<std::string>("1000");
        search->add_option("--d", *sd, "dimension (prime)")->required();
        search->add_option("--e", *se, "exponent: q = r^e");
        search->add_option("--qmax", *sq, "largest q");
        search->callback([&, sd, se, sq] {
            action = [&, sd, se, sq] {
                auto found = degrees::search_projective_primes(*sd, *se, Nat(parse_count(*sq)));
                if (ctx.json()) {
                    JsonWriter w;
                    w.begin_object();
                    w.kv("command", "degrees search");
                    w.key("config");
                    w.begin_object();
                    config_common(w, ctx);
                    w.kv("d", *sd);
                    w.kv("e", *se);
                    w.kv("q_max", Nat(parse_count(*sq)));
                    w.end_object();
                    w.key("results");
                    w.begin_array();
                    for (const auto& pd : found) {
                        w.begin_object();
                        w.kv("q", pd.q);
                        w.kv("r", pd.r);
                        w.kv("e", pd.e);
                        w.kv("d", pd.d);
                        w.kv("n", pd.n);
                        w.end_object();
                    }
                    w.end_array();
                    w.key("bounds_used");
                    w.begin_object();
                    w.kv("q_max", Nat(parse_count(*sq)));
                    w.end_object();
                    w.end_object();
                    emit(w.str());
                } else if (ctx.csv()) {
                    emit("q,r,e,d,n");
                    for (const auto& pd : found)
                        emit(pd.q.str() + "," + pd.r.str() + "," + std::to_string(pd.e) + "," +
                             std::to_string(pd.d) + "," + pd.n.str());
                } else {
                    for (const auto& pd : found)
                        emit("q = " + pd.q.str() + "  n = " + pd.n.str());
                    emit("total within bound: " + std::to_string(found.size()));
                }
            };
        });

        auto* nl = dg->add_subcommand("nl", "repunit perfect-power equation searches");
        auto general = std::make_shared<bool>(false);
        auto d2 = std::make_shared<bool>(false);
        auto xmax = std::make_shared<std::string>("100");
        auto ndmax = std::make_shared<unsigned>(10);
        auto nkmax = std::make_shared<unsigned>(10);
        nl->add_flag("--general", *general, "allow any integer base and power");
        nl->add_flag("--d2", *d2, "restricted companion mode at d = 2");
        nl->add_option("--xmax", *xmax, "bound on |x| (or on q in restricted mode)");
        nl->add_option("--dmax", *ndmax, "largest exponent d");
        nl->add_option("--kmax", *nkmax, "largest power k");
        nl->callback([&, general, d2, xmax, ndmax, nkmax] {
            action = [&, general, d2, xmax, ndmax, nkmax] {
                std::vector<degrees::NlSolution> sols;
                const char* cmd;
                u64 bound = parse_count(*xmax);
                if (*general) {
                    sols = degrees::nl_general_search(Nat(bound), *ndmax, *nkmax);
                    cmd = "degrees nl --general";
                } else if (*d2) {
                    sols = degrees::nl_restricted_search_d2(Nat(bound), *nkmax);
                    cmd = "degrees nl --d2";
                } else {
                    sols = degrees::nl_restricted_search(Nat(bound), *ndmax, *nkmax);
                    cmd = "degrees nl";
                }
                emit_nl_solutions(ctx, cmd, sols, bound, *d2 ? 2 : *ndmax, *nkmax);
            };
        });

        auto* cat = dg->add_subcommand("catalan", "adjacent proper prime powers");
        auto bound = std::make_shared<std::string>("1000000");
        cat->add_option("--bound", *bound, "largest admissible power");
        cat->callback([&, bound] {
            action = [&, bound] {
                auto pairs = degrees::catalan_prime_search(Nat(parse_count(*bound)));
                if (ctx.json()) {
                    JsonWriter w;
                    w.begin_object();
                    w.kv("command", "degrees catalan");
                    w.key("config");
                    w.begin_object();
                    config_common(w, ctx);
                    w.kv("bound", Nat(parse_count(*bound)));
                    w.end_object();
                    w.key("results");
                    w.begin_array();
                    for (const auto& [hi, lo] : pairs) {
                        w.begin_object();
                        w.kv("p", hi.p);
                        w.kv("k", hi.k);
                        w.kv("r", lo.p);
                        w.kv("l", lo.k);
                        w.end_object();
                    }
                    w.end_array();
                    w.key("bounds_used");
                    w.null();
                    w.end_object();
                    emit(w.str());
                } else if (ctx.csv()) {
                    emit("p,k,r,l");
                    for (const auto& [hi, lo] : pairs)
                        emit(hi.p.str() + "," + std::to_string(hi.k) + "," + lo.p.str() + "," +
                             std::to_string(lo.k));
                } else {
                    for (const auto& [hi, lo] : pairs)
                        emit(hi.p.str() + "^" + std::to_string(hi.k) + " = " + lo.p.str() + "^" +
                             std::to_string(lo.k) + " + 1");
                    if (pairs.empty()) emit("no adjacent proper prime powers within bound");
                }
            };
        });

        auto* p2 = dg->add_subcommand("psl2", "shape of q + 1 for the degree of PSL_2(q)");
        auto q = std::make_shared<std::string>();
        p2->add_option("--q", *q, "prime power q >= 4")->required();
        p2->callback([&, q] {
            action = [&, q] {
                auto r = degrees::classify_psl2_degree(Nat(parse_count(*q)));
                const char* kind = "";
                switch (r.kind) {
                    case degrees::Psl2DegreeClass::Kind::mersenne: kind = "mersenne"; break;
                    case degrees::Psl2DegreeClass::Kind::fermat_prime: kind = "fermat_prime"; break;
                    case degrees::Psl2DegreeClass::Kind::nine: kind = "nine"; break;
                    case degrees::Psl2DegreeClass::Kind::not_prime_power: kind = "not_prime_power"; break;
                }
                if (ctx.json()) {
                    JsonWriter w;
                    w.begin_object();
                    w.kv("command", "degrees psl2");
                    w.key("config");
                    w.begin_object();
                    config_common(w, ctx);
                    w.kv("q", Nat(parse_count(*q)));
                    w.end_object();
                    w.key("results");
                    w.begin_object();
                    w.kv("case", kind);
                    if (r.kind != degrees::Psl2DegreeClass::Kind::not_prime_power) {
                        w.kv("p", r.p);
                        w.kv("k", r.k);
                    }
                    w.end_object();
                    w.key("bounds_used");
                    w.null();
                    w.end_object();
                    emit(w.str());
                } else if (ctx.csv()) {
                    emit("case,p,k");
                    if (r.kind != degrees::Psl2DegreeClass::Kind::not_prime_power)
                        emit(std::string(kind) + "," + r.p.str() + "," + std::to_string(r.k));
                    else
                        emit(std::string(kind) + ",,");
                } else {
                    std::string line = "q + 1 case: ";
                    line += kind;
                    if (r.kind != degrees::Psl2DegreeClass::Kind::not_prime_power)
                        line += "  (q + 1 = " + r.p.str() + "^" + std::to_string(r.k) + ")";
                    emit(line);
                }
            };
        });
    }

    // bhc ...
    {
        auto* b = app.add_subcommand("bhc", "Bateman-Horn estimates and exact counts");
        b->require_subcommand(1);
        auto d = std::make_shared<unsigned>(3);
        auto e = std::make_shared<unsigned>(1);
        auto prime_bound = std::make_shared<std::string>("1e8");
        auto tol = std::make_shared<double>(1e-9);
        b->add_option("--d", *d, "dimension (prime >= 3)")->capture_default_str();
        b->add_option("--e", *e, "exponent: q = t^e")->capture_default_str();
        b->add_option("--prime-bound", *prime_bound, "Euler product truncation");
        b->add_option("--tol", *tol, "relative quadrature tolerance");

        auto make_problem = [&, d, e, prime_bound, tol] {
            bhc::BhcProblem pb;
            pb.d = *d;
            pb.e = *e;
            pb.prime_bound = parse_count(*prime_bound);
            pb.quad_tol = *tol;
            pb.sieve.capacity = ctx.sieve_capacity;
            pb.validate();
            return pb;
        };

        auto* om = b->add_subcommand("omega", "root count of t*f2(t) mod p");
        auto omp = std::make_shared<std::string>();
        om->add_option("--p", *omp, "prime modulus")->required();
        om->callback([&, om, omp, d, e] {
            action = [&, omp, d, e] {
                u64 p = parse_count(*omp);
                if (!nt::is_prime_u64(p)) throw std::invalid_argument("omega: p must be prime");
                unsigned w_ = bhc::omega_f(p, *d, *e);
                if (ctx.json()) {
                    JsonWriter w;
                    w.begin_object();
                    w.kv("command", "bhc omega");
                    w.key("config");
                    w.begin_object();
                    config_common(w, ctx);
                    w.kv("d", *d);
                    w.kv("e", *e);
                    w.kv("p", p);
                    w.end_object();
                    w.kv("results", w_);
                    w.key("bounds_used");
                    w.null();
                    w.end_object();
                    emit(w.str());
                } else if (ctx.csv()) {
                    emit("p,d,e,omega");
                    emit(std::to_string(p) + "," + std::to_string(*d) + "," + std::to_string(*e) + "," +
                         std::to_string(w_));
                } else {
                    emit("omega_f(" + std::to_string(p) + ") = " + std::to_string(w_));
                }
            };
        });

        auto* est = b->add_subcommand("estimate", "E(x), the integral estimate");
        auto ex = std::make_shared<std::string>();
        est->add_option("--x", *ex, "upper limit")->required();
        est->callback([&, make_problem, ex] {
            action = [&, make_problem, ex] {
                auto pb = make_problem();
                u64 x = parse_count(*ex);
                double c = bhc::hl_constant(pb);
                double est_v = bhc::estimate_E(pb, x, c);
                if (ctx.json()) {
                    JsonWriter w;
                    w.begin_object();
                    w.kv("command", "bhc estimate");
                    w.key("config");
                    w.begin_object();
                    config_common(w, ctx);
                    w.kv("d", pb.d);
                    w.kv("e", pb.e);
                    w.kv("prime_bound", pb.prime_bound);
                    w.kv("quad_tol", pb.quad_tol);
                    w.end_object();
                    w.key("results");
                    w.begin_object();
                    w.kv("x", x);
                    w.kv("C", c);
                    w.kv("E", est_v);
                    w.end_object();
                    w.key("bounds_used");
                    w.null();
                    w.end_object();
                    emit(w.str());
                } else if (ctx.csv()) {
                    emit("x,E,C");
                    emit(std::to_string(x) + "," + real10(est_v) + "," + real10(c));
                } else {
                    emit("C = " + real10(c));
                    emit("E(" + std::to_string(x) + ") = " + real10(est_v));
                }
            };
        });

        auto* cnt = b->add_subcommand("count", "Q(x), the exact count");
        auto cx = std::make_shared<std::string>();
        cnt->add_option("--x", *cx, "upper limit")->required();
        cnt->callback([&, make_problem, cx] {
            action = [&, make_problem, cx] {
                auto pb = make_problem();
                u64 x = parse_count(*cx);
                bhc::ProgressFn progress = [](u64 done, u64 total) {
                    std::fprintf(stderr, "\rcount: %" PRIu64 "/%" PRIu64 " chunks", done, total);
                    if (done == total) std::fprintf(stderr, "\n");
                };
                u64 q = bhc::count_Q(pb, x, ctx.threads, progress);
                if (ctx.json()) {
                    JsonWriter w;
                    w.begin_object();
                    w.kv("command", "bhc count");
                    w.key("config");
                    w.begin_object();
                    config_common(w, ctx);
                    w.kv("d", pb.d);
                    w.kv("e", pb.e);
                    w.end_object();
                    w.key("results");
                    w.begin_object();
                    w.kv("x", x);
                    w.kv("Q", q);
                    w.end_object();
                    w.key("bounds_used");
                    w.null();
                    w.end_object();
                    emit(w.str());
                } else if (ctx.csv()) {
                    emit("x,Q");
                    emit(std::to_string(x) + "," + std::to_string(q));
                } else {
                    emit("Q(" + std::to_string(x) + ") = " + std::to_string(q));
                }
            };
        });

        auto* tab = b->add_subcommand("table", "count/estimate table rows");
        auto xs = std::make_shared<std::string>();
        tab->add_option("--xs", *xs, "comma-separated ascending x values")->required();
        tab->callback([&, make_problem, xs] {
            action = [&, make_problem, xs] {
                auto pb = make_problem();
                auto xlist = parse_count_list(*xs);
                bhc::ProgressFn progress = [](u64 done, u64 total) {
                    std::fprintf(stderr, "\rtable: %" PRIu64 "/%" PRIu64 " rows", done, total);
                    if (done == total) std::fprintf(stderr, "\n");
                };
                auto rows = bhc::table_report(pb, xlist, ctx.threads, progress);
                if (ctx.json()) {
                    JsonWriter w;
                    w.begin_object();
                    w.kv("command", "bhc table");
                    w.key("config");
                    w.begin_object();
                    config_common(w, ctx);
                    w.kv("d", pb.d);
                    w.kv("e", pb.e);
                    w.kv("prime_bound", pb.prime_bound);
                    w.kv("quad_tol", pb.quad_tol);
                    w.end_object();
                    w.key("results");
                    w.begin_array();
                    for (const auto& r : rows) {
                        w.begin_object();
                        w.kv("x", r.x);
                        w.kv("Q", r.q_count);
                        w.kv("E", r.estimate);
                        w.kv("C", r.constant);
                        w.kv("ratio", r.ratio);
                        w.end_object();
                    }
                    w.end_array();
                    w.key("bounds_used");
                    w.null();
                    w.end_object();
                    emit(w.str());
                } else {
                    // CSV is the natural table shape; text mirrors it
                    emit("x,Q,E,C,ratio");
                    for (const auto& r : rows)
                        emit(std::to_string(r.x) + "," + std::to_string(r.q_count) + "," +
                             real10(r.estimate) + "," + real10(r.constant) + "," + real10(r.ratio));
                }
            };
        });
    }

    // perm ...
    {
        auto* pm = app.add_subcommand("perm", "explicit permutation group verification");
        pm->require_subcommand(1);
        auto family = std::make_shared<std::string>("psl");
        auto d = std::make_shared<unsigned>(2);
        auto q = std::make_shared<std::string>("7");
        auto m = std::make_shared<unsigned>(8);
        auto hyper = std::make_shared<bool>(false);
        pm->add_option("--family", *family, "psl | pgl | a2")
            ->check(CLI::IsMember({"psl", "pgl", "a2"}));
        pm->add_option("--d", *d, "dimension");
        pm->add_option("--q", *q, "field size");
        pm->add_option("--m", *m, "half-degree for the a2 family");
        pm->add_flag("--hyperplanes", *hyper, "combined point+hyperplane action");

        auto* bu = pm->add_subcommand("build", "construct the action and report its shape");
        bu->callback([&, family, d, q, m, hyper] {
            action = [&, family, d, q, m, hyper] {
                auto g = build_group(ctx, *family, *d, *q, *m, *hyper);
                if (ctx.json()) {
                    JsonWriter w;
                    w.begin_object();
                    w.kv("command", "perm build");
                    w.key("config");
                    w.begin_object();
                    config_common(w, ctx);
                    w.kv("family", *family);
                    w.kv("d", *d);
                    w.kv("q", *q);
                    w.end_object();
                    w.key("results");
                    w.begin_object();
                    w.kv("degree", g.degree());
                    w.kv("order", g.order());
                    w.kv("transitive", g.is_transitive());
                    w.kv("stabilizer_order", perm::stabilizer_order(g, 0));
                    generators_json(w, g);
                    w.end_object();
                    w.key("bounds_used");
                    w.null();
                    w.end_object();
                    emit(w.str());
                } else if (ctx.csv()) {
                    emit("degree,order,transitive,stabilizer_order");
                    emit(std::to_string(g.degree()) + "," + std::to_string(g.order()) + "," +
                         (g.is_transitive() ? "true" : "false") + "," +
                         std::to_string(perm::stabilizer_order(g, 0)));
                } else {
                    emit("degree " + std::to_string(g.degree()) + ", order " + std::to_string(g.order()) +
                         ", point stabiliser order " + std::to_string(perm::stabilizer_order(g, 0)));
                }
            };
        });

        auto* ve = pm->add_subcommand("verify", "p-complement conditions on the action");
        auto vp = std::make_shared<std::string>();
        ve->add_option("--p", *vp, "prime")->required();
        ve->callback([&, family, d, q, m, hyper, vp] {
            action = [&, family, d, q, m, hyper, vp] {
                auto g = build_group(ctx, *family, *d, *q, *m, *hyper);
                u64 p = parse_count(*vp);
                auto rep = perm::verify_p_complement(g, p);
                if (ctx.json()) {
                    JsonWriter w;
                    w.begin_object();
                    w.kv("command", "perm verify");
                    w.key("config");
                    w.begin_object();
                    config_common(w, ctx);
                    w.kv("family", *family);
                    w.kv("d", *d);
                    w.kv("q", *q);
                    w.kv("p", p);
                    w.end_object();
                    w.key("results");
                    w.begin_object();
                    w.kv("is_transitive", rep.is_transitive);
                    w.kv("degree_is_power_of_p", rep.degree_is_power_of_p);
                    w.kv("stabilizer_coprime_to_p", rep.stabilizer_coprime_to_p);
                    w.kv("sylow_regular", rep.sylow_regular);
                    w.kv("all", rep.all());
                    w.end_object();
                    w.key("bounds_used");
                    w.null();
                    w.end_object();
                    emit(w.str());
                } else if (ctx.csv()) {
                    emit("is_transitive,degree_is_power_of_p,stabilizer_coprime_to_p,sylow_regular");
                    emit(std::string(rep.is_transitive ? "true" : "false") + "," +
                         (rep.degree_is_power_of_p ? "true" : "false") + "," +
                         (rep.stabilizer_coprime_to_p ? "true" : "false") + "," +
                         (rep.sylow_regular ? "true" : "false"));
                } else {
                    emit(std::string("transitive: ") + (rep.is_transitive ? "yes" : "no"));
                    emit(std::string("degree is a power of p: ") + (rep.degree_is_power_of_p ? "yes" : "no"));
                    emit(std::string("stabiliser coprime to p: ") +
                         (rep.stabilizer_coprime_to_p ? "yes" : "no"));
                    emit(std::string("sylow acts regularly: ") + (rep.sylow_regular ? "yes" : "no"));
                }
            };
        });

        auto* rg = pm->add_subcommand("regular", "search for a regular subgroup");
        rg->callback([&, family, d, q, m, hyper] {
            action = [&, family, d, q, m, hyper] {
                auto g = build_group(ctx, *family, *d, *q, *m, *hyper);
                auto r = perm::find_regular_subgroup(g);
                if (ctx.json()) {
                    JsonWriter w;
                    w.begin_object();
                    w.kv("command", "perm regular");
                    w.key("config");
                    w.begin_object();
                    config_common(w, ctx);
                    w.kv("family", *family);
                    w.kv("d", *d);
                    w.kv("q", *q);
                    w.end_object();
                    w.key("results");
                    w.begin_object();
                    w.kv("found", r.subgroup.has_value());
                    w.kv("certified_exhaustive", r.exhaustive);
                    if (r.subgroup) {
                        w.kv("order", r.subgroup->order());
                        generators_json(w, *r.subgroup);
                    }
                    w.end_object();
                    w.key("bounds_used");
                    w.null();
                    w.end_object();
                    emit(w.str());
                } else if (ctx.csv()) {
                    emit("found,certified_exhaustive,order");
                    emit(std::string(r.subgroup ? "true" : "false") + "," +
                         (r.exhaustive ? "true" : "false") + "," +
                         (r.subgroup ? std::to_string(r.subgroup->order()) : ""));
                } else {
                    if (r.subgroup)
                        emit("regular subgroup of order " + std::to_string(r.subgroup->order()) + " found");
                    else
                        emit(r.exhaustive ? "no regular subgroup (search exhaustive)"
                                          : "none found (search not exhaustive)");
                }
            };
        });

        auto* sy = pm->add_subcommand("sylow", "construct a Sylow p-subgroup of the action");
        auto sp = std::make_shared<std::string>();
        sy->add_option("--p", *sp, "prime")->required();
        sy->callback([&, family, d, q, m, hyper, sp] {
            action = [&, family, d, q, m, hyper, sp] {
                auto g = build_group(ctx, *family, *d, *q, *m, *hyper);
                u64 p = parse_count(*sp);
                auto syl = perm::sylow_subgroup(g, p);
                if (ctx.json()) {
                    JsonWriter w;
                    w.begin_object();
                    w.kv("command", "perm sylow");
                    w.key("config");
                    w.begin_object();
                    config_common(w, ctx);
                    w.kv("family", *family);
                    w.kv("d", *d);
                    w.kv("q", *q);
                    w.kv("p", p);
                    w.end_object();
                    w.key("results");
                    w.begin_object();
                    w.kv("order", syl.order());
                    w.kv("transitive", syl.is_transitive());
                    generators_json(w, syl);
                    w.end_object();
                    w.key("bounds_used");
                    w.null();
                    w.end_object();
                    emit(w.str());
                } else if (ctx.csv()) {
                    emit("order,transitive");
                    emit(std::to_string(syl.order()) + "," + (syl.is_transitive() ? "true" : "false"));
                } else {
                    emit("sylow " + std::to_string(p) + "-subgroup: order " + std::to_string(syl.order()) +
                         (syl.is_transitive() ? ", transitive" : ", intransitive"));
                }
            };
        });
    }

    // necklace
    {
        auto* nk = app.add_subcommand("necklace", "binary necklace counts and orbit-size spectra");
        auto mm = std::make_shared<unsigned>(0);
        auto spectrum = std::make_shared<bool>(false);
        auto p = std::make_shared<std::string>("2");
        auto e = std::make_shared<unsigned>(1);
        nk->add_option("--m", *mm, "bead count (plain count mode)");
        nk->add_flag("--spectrum", *spectrum, "orbit-size spectrum for m = p^e");
        nk->add_option("--p", *p, "prime for the spectrum mode");
        nk->add_option("--e", *e, "exponent for the spectrum mode");
        nk->callback([&, mm, spectrum, p, e] {
            action = [&, mm, spectrum, p, e] {
                if (*spectrum) {
                    auto spec = classify::necklace_class_size_spectrum(Nat(parse_count(*p)), *e);
                    if (ctx.json()) {
                        JsonWriter w;
                        w.begin_object();
                        w.kv("command", "necklace spectrum");
                        w.key("config");
                        w.begin_object();
                        config_common(w, ctx);
                        w.kv("p", Nat(parse_count(*p)));
                        w.kv("e", *e);
                        w.end_object();
                        w.key("results");
                        w.begin_array();
                        for (const auto& [f, cnt] : spec) {
                            w.begin_object();
                            w.kv("f", f);
                            w.kv("orbit_size_exponent", f);
                            w.kv("count", cnt);
                            w.end_object();
                        }
                        w.end_array();
                        w.key("bounds_used");
                        w.null();
                        w.end_object();
                        emit(w.str());
                    } else if (ctx.csv()) {
                        emit("f,count");
                        for (const auto& [f, cnt] : spec) emit(std::to_string(f) + "," + cnt.str());
                    } else {
                        for (const auto& [f, cnt] : spec)
                            emit("orbits of size " + (*p) + "^" + std::to_string(f) + ": " + cnt.str());
                    }
                    return;
                }
                if (*mm == 0) throw std::invalid_argument("necklace: provide --m or --spectrum");
                Nat classes = classify::necklace_classes(*mm);
                if (ctx.json()) {
                    JsonWriter w;
                    w.begin_object();
                    w.kv("command", "necklace");
                    w.key("config");
                    w.begin_object();
                    config_common(w, ctx);
                    w.kv("m", *mm);
                    w.end_object();
                    w.kv("results", classes);
                    w.key("bounds_used");
                    w.null();
                    w.end_object();
                    emit(w.str());
                } else if (ctx.csv()) {
                    emit("m,classes");
                    emit(std::to_string(*mm) + "," + classes.str());
                } else {
                    emit("necklaces of " + std::to_string(*mm) + " beads: " + classes.str());
                }
            };
        });
    }

    // nc
    {
        auto* nc = app.add_subcommand("nc", "repunit prime-power witness search for a prime");
        auto p = std::make_shared<std::string>();
        auto qmax = std::make_shared<std::string>("100");
        auto dmax = std::make_shared<unsigned>(13);
        nc->add_option("p", *p, "prime to test")->required();
        nc->add_option("--qmax", *qmax, "largest q in the search");
        nc->add_option("--dmax", *dmax, "largest d in the search");
        nc->callback([&, p, qmax, dmax] {
            action = [&, p, qmax, dmax] {
                classify::SearchBound bounds{Nat(parse_count(*qmax)), *dmax};
                auto witness = classify::nc_membership(Nat(parse_count(*p)), bounds);
                if (ctx.json()) {
                    JsonWriter w;
                    w.begin_object();
                    w.kv("command", "nc");
                    w.key("config");
                    w.begin_object();
                    config_common(w, ctx);
                    w.kv("p", Nat(parse_count(*p)));
                    w.end_object();
                    w.key("results");
                    if (witness) {
                        w.begin_object();
                        w.kv("q", witness->q);
                        w.kv("d", witness->d);
                        w.kv("k", witness->k);
                        w.end_object();
                    } else {
                        w.null();
                    }
                    w.key("bounds_used");
                    w.begin_object();
                    w.kv("q_max", bounds.q_max);
                    w.kv("d_max", bounds.d_max);
                    w.end_object();
                    w.end_object();
                    emit(w.str());
                } else if (ctx.csv()) {
                    emit("q,d,k");
                    if (witness)
                        emit(witness->q.str() + "," + std::to_string(witness->d) + "," +
                             std::to_string(witness->k));
                } else {
                    if (witness)
                        emit("witness: (" + witness->q.str() + "^" + std::to_string(witness->d) +
                             " - 1)/(" + witness->q.str() + " - 1) = " + (*p) + "^" +
                             std::to_string(witness->k));
                    else
                        emit("no witness within bounds");
                }
            };
        });
    }

    try {
        app.parse(argc, argv);
        if (action) action();
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const capacity_error& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const consistency_error& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
