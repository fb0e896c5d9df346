// ppinv: verify permutation families and their inverses over small finite
// fields, run the transpose-theorem suites, cross-check Weil sums, and keep
// a JSON-lines catalog of verified instances.
//
// Exit status: 0 all checks pass, 1 some check failed, 2 usage or
// precondition error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ppinv/ppinv.hpp"

using namespace ppinv;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

enum class Format { Json, Csv, Human };

struct Globals {
    std::string field;
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t scan_bound = std::uint64_t{1} << 24;
    std::string format = "json";
    std::string out;
    bool no_timestamp = false;
    unsigned threads = 1;

    ScanPolicy policy() const { return {scan_bound, threads == 0 ? 1U : threads}; }
    Format fmt() const { return format == "csv" ? Format::Csv : format == "human" ? Format::Human : Format::Json; }
    Field make() const {
        if (field.empty()) throw PreconditionError("--field is required");
        return make_field(FieldSpec::parse(field), scan_bound);
    }
};

/// Writes JSON lines, CSV rows (header from the first record) or indented text.
class Emitter {
public:
    Emitter(Format fmt, std::ostream& os) : fmt_(fmt), os_(os) {}

    void record(const Json& j) {
        switch (fmt_) {
        case Format::Json: os_ << j.dump() << '\n'; break;
        case Format::Csv: csv(j); break;
        case Format::Human: human(j, 0); os_ << '\n'; break;
        }
    }
    std::ostream& raw() { return os_; }
    Format format() const { return fmt_; }

private:
    static std::string cell(const Json& v) {
        std::string s = v.is_string() ? v.get<std::string>() : v.dump();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    void csv(const Json& j) {
        if (!header_) {
            bool first = true;
            for (const auto& [k, v] : j.items()) {
                os_ << (first ? "" : ",") << k;
                first = false;
            }
            os_ << '\n';
            header_ = true;
        }
        bool first = true;
        for (const auto& [k, v] : j.items()) {
            os_ << (first ? "" : ",") << cell(v);
            first = false;
        }
        os_ << '\n';
    }
    void human(const Json& j, int depth) {
        const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
        for (const auto& [k, v] : j.items()) {
            if (v.is_object()) {
                os_ << pad << k << ":\n";
                human(v, depth + 1);
            } else {
                os_ << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
            }
        }
    }

    Format fmt_;
    std::ostream& os_;
    bool header_ = false;
};

// ---- argument parsing helpers -------------------------------------------------

Json parse_json_arg(const std::string& text, const char* what) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw PreconditionError(std::string(what) + ": not valid JSON: '" + text + "'");
    return j;
}

FieldElem parse_elem(const FieldCtx& f, const std::string& text, const char* what) {
    return elem_from_json(f, parse_json_arg(text, what));
}

struct FamilyOpts {
    std::string family;
    bool all = false;
    std::string a, b, beta, L, variant;
    std::optional<std::int64_t> k, alpha, form;
    std::string catalog;
};

void add_family_options(CLI::App* cmd, FamilyOpts& o) {
    cmd->add_option("family", o.family, "family id or name (e0, thm-rs, cor-n2k-1, f4k, ...)")->required();
    cmd->add_flag("--all", o.all, "sweep every parameter tuple that passes the family gates");
    cmd->add_option("--a", o.a, "element a: coefficient array like [1,0,2] or integer code");
    cmd->add_option("--b", o.b, "element b");
    cmd->add_option("--beta", o.beta, "element beta (reciprocal-b2)");
    cmd->add_option("--L", o.L, "linearized polynomial as an array of elements (reciprocal-b2)");
    cmd->add_option("--variant", o.variant, "e0 variant: base, qth-power, half-exponent");
    cmd->add_option("--k", o.k, "subfield degree (reciprocal-b2) or q = 4^k (f4k)");
    cmd->add_option("--alpha", o.alpha, "f4k: which primitive element of F_4, 1 or 2");
    cmd->add_option("--form", o.form, "conclusion-3 form, 1 or 2");
}

FamilyId family_or_throw(const std::string& s) {
    const auto id = parse_family(s);
    if (!id) throw PreconditionError("unknown family '" + s + "'");
    return *id;
}

/// f4k builds its own field from k; everything else needs --field.
Field family_field(FamilyId id, const Globals& g, FamilyOpts& o) {
    if (id != FamilyId::F4K_EXAMPLE) return g.make();
    if (o.k) {
        if (*o.k <= 0 || *o.k > 4) throw PreconditionError("k must be in [1, 4]");
        const Field f = make_field(2, static_cast<std::uint32_t>(2 * *o.k), 3, g.scan_bound);
        if (!g.field.empty() && !(FieldSpec::parse(g.field) == f->spec()))
            throw PreconditionError("--field disagrees with --k for f4k");
        return f;
    }
    if (g.field.empty()) throw PreconditionError("f4k needs --k or --field");
    const Field f = g.make();
    if (f->p() != 2 || f->n() != 3 || f->e() % 2 != 0) throw PreconditionError("f4k needs p=2, n=3 and even e");
    o.k = f->e() / 2;
    return f;
}

FamilyArgs family_args(const FieldCtx& f, const FamilyOpts& o) {
    FamilyArgs args;
    if (!o.a.empty()) args.a = parse_elem(f, o.a, "--a");
    if (!o.b.empty()) args.b = parse_elem(f, o.b, "--b");
    if (!o.beta.empty()) args.beta = parse_elem(f, o.beta, "--beta");
    if (!o.L.empty()) args.L = linpoly_from_json(f, parse_json_arg(o.L, "--L"));
    if (!o.variant.empty()) args.variant = o.variant;
    args.k = o.k;
    args.alpha = o.alpha;
    args.form = o.form;
    return args;
}

// ---- human rendering of a family report -----------------------------------------

void render_human(std::ostream& os, const FamilyInstance& inst) {
    os << family_name(inst.id) << " over F_" << inst.field->order() << " (" << inst.field->spec().str() << ")\n";
    for (const auto& p : inst.params) {
        os << "  " << p.name << " = ";
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, FieldElem>) os << to_string(v);
                else if constexpr (std::is_same_v<T, LinPoly>) os << to_json(v).dump();
                else os << v;
            },
            p.value);
        os << '\n';
    }
    os << "  forward: " << inst.forward.formula << '\n';
    if (!inst.inverse.formula.empty()) os << "  inverse: " << inst.inverse.formula << '\n';
    for (const auto& c : inst.checks) {
        os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name;
        if (!c.note.empty()) os << " (" << c.note << ")";
        for (const auto& [name, value] : c.witness) os << "  " << name << "=" << to_string(value);
        os << '\n';
    }
    for (const auto& n : inst.notes) os << "  note: " << n << '\n';
    os << "  verified: " << (inst.verified() ? "yes" : "no") << "\n\n";
}

void emit_instance(Emitter& em, const FamilyInstance& inst, const Globals& g) {
    switch (em.format()) {
    case Format::Json: em.record(make_record(inst, !g.no_timestamp)); break;
    case Format::Human: render_human(em.raw(), inst); break;
    case Format::Csv: {
        std::size_t passed = 0;
        for (const auto& c : inst.checks) passed += c.pass;
        em.record(Json{{"family", family_name(inst.id)},
                       {"field", inst.field->spec().str()},
                       {"params", params_to_json(inst.params).dump()},
                       {"checks_passed", passed},
                       {"checks_total", inst.checks.size()},
                       {"verified", inst.verified()}});
        break;
    }
    }
}

/// Builds one instance or sweeps them all; calls sink on each built instance.
/// Returns false if any built instance failed a check.
bool run_family(FamilyId id, const Globals& g, FamilyOpts& o, const std::function<void(const FamilyInstance&)>& sink,
                SearchStats* stats_out = nullptr) {
    const Field field = family_field(id, g, o);
    const ScanPolicy policy = g.policy();
    if (!o.all) {
        const auto inst = build_family(id, field, family_args(*field, o), policy);
        sink(inst);
        return inst.verified();
    }
    SearchFilter filter;
    if (!o.variant.empty()) filter.variant = o.variant;
    filter.form = o.form;
    if (id == FamilyId::E0_TRINOMIAL && filter.variant && !parse_e0_variant(*filter.variant))
        throw PreconditionError("unknown e0 variant '" + *filter.variant + "'");
    if (id == FamilyId::F4K_EXAMPLE && o.alpha) {
        const auto want = *o.alpha;
        filter.accept = [want](const FamilyArgs& a) { return a.alpha == want; };
    }
    const auto st = sweep_family(
        id, field, filter,
        [&](FamilyInstance&& inst) {
            sink(inst);
            return true;
        },
        policy);
    if (stats_out) *stats_out = st;
    std::cerr << family_name(id) << " over " << field->spec().str() << ": " << st.candidates << " candidates, "
              << st.gated << " gated, " << st.built << " built, " << st.failed << " failed\n";
    return st.failed == 0;
}

// ---- subcommands ------------------------------------------------------------

int cmd_verify(const Globals& g, FamilyOpts& o, Emitter& em) {
    const FamilyId id = family_or_throw(o.family);
    std::unique_ptr<CatalogWriter> writer;
    if (!o.catalog.empty()) writer = std::make_unique<CatalogWriter>(o.catalog);
    const bool ok = run_family(id, g, o, [&](const FamilyInstance& inst) {
        emit_instance(em, inst, g);
        if (writer && inst.verified()) writer->append(make_record(inst, !g.no_timestamp));
    });
    return ok ? kPass : kFail;
}

int cmd_theorems(const Globals& g, std::uint64_t trials, bool per_trial, Emitter& em) {
    const Field f = g.make();
    const auto suite = run_theorem_suite(*f, trials, g.seed, g.policy(), per_trial);
    if (per_trial) {
        std::mt19937_64 rng(g.seed);
        for (std::size_t i = 0; i < suite.reports.size(); ++i) {
            const LinPoly l = random_linpoly(*f, rng);
            const auto& [r1, r2] = suite.reports[i];
            em.record(Json{{"trial", i},
                           {"L", em.format() == Format::Csv ? Json(to_json(l).dump()) : to_json(l)},
                           {"p1", r1.p1},
                           {"thm1_rhs", r1.rhs},
                           {"thm2_perm_L", r2.perm_l},
                           {"thm2_rhs", r2.rhs},
                           {"violation", r1.violation() || r2.violation()}});
        }
    }
    Json summary{{"field", to_json(f->spec())},
                 {"seed", suite.seed},
                 {"trials", suite.trials},
                 {"converse_asserted", suite.converse_asserted},
                 {"p1_true", suite.p1_true},
                 {"thm1_violations", suite.thm1_violations},
                 {"thm2_violations", suite.thm2_violations},
                 {"converse_failures", suite.converse_failures},
                 {"ok", suite.ok()}};
    if (em.format() == Format::Csv) summary["field"] = f->spec().str();
    if (suite.first_violation) summary["first_violation"] = to_json(*suite.first_violation);
    if (!per_trial) em.record(summary);
    else std::cerr << summary.dump() << '\n';
    return suite.ok() ? kPass : kFail;
}

int cmd_weil(const Globals& g, bool exhaustive, std::uint64_t pairs, const std::string& a_text,
             const std::string& b_text, Emitter& em) {
    const Field f = g.make();
    require_odd_q_n(*f, "the Weil closed form");
    const ScanPolicy policy = g.policy();
    require_scannable(f->order(), policy);
    const CycInt gauss = gauss_sum(*f);
    const std::string spec = f->spec().str();

    if (!exhaustive && pairs == 0) {
        if (a_text.empty() || b_text.empty()) throw PreconditionError("weil needs --exhaustive, --pairs N, or --A and --B");
        const FieldElem a = parse_elem(*f, a_text, "--A"), b = parse_elem(*f, b_text, "--B");
        const CycInt direct = weil_sum_direct(a, b, policy);
        const CycInt closed = weil_sum_closed(WeilParams(a, b), gauss);
        Json j{{"field", spec}, {"A", to_json(a)}, {"B", to_json(b)}};
        if (em.format() == Format::Json) {
            j["direct"] = to_json(direct);
            j["closed"] = to_json(closed);
        } else {
            j["direct"] = direct.str();
            j["closed"] = closed.str();
        }
        j["agree"] = direct == closed;
        em.record(j);
        return direct == closed ? kPass : kFail;
    }

    std::uint64_t compared = 0, mismatches = 0;
    Json first = nullptr;
    auto compare = [&](const FieldElem& a, const FieldElem& b) {
        ++compared;
        const CycInt direct = weil_sum_direct(a, b, policy);
        const CycInt closed = weil_sum_closed(WeilParams(a, b), gauss);
        if (!(direct == closed)) {
            if (first.is_null())
                first = Json{{"A", to_json(a)}, {"B", to_json(b)}, {"direct", direct.str()}, {"closed", closed.str()}};
            ++mismatches;
        }
    };
    if (exhaustive) {
        for (auto a : enumerate_nonzero(*f))
            for (auto b : enumerate(*f)) compare(a, b);
    } else {
        std::mt19937_64 rng(g.seed);
        std::uniform_int_distribution<Code> nz(1, static_cast<Code>(f->order() - 1));
        std::uniform_int_distribution<Code> any(0, static_cast<Code>(f->order() - 1));
        for (std::uint64_t i = 0; i < pairs; ++i) {
            const FieldElem a = f->elem(nz(rng));
            compare(a, f->elem(any(rng)));
        }
    }
    Json j{{"field", spec}, {"mode", exhaustive ? "exhaustive" : "seeded"}, {"pairs", compared}, {"mismatches", mismatches}};
    if (!exhaustive) j["seed"] = g.seed;
    j["gauss_sum"] = gauss.str();
    if (!first.is_null()) j["first_mismatch"] = em.format() == Format::Csv ? Json(first.dump()) : first;
    em.record(j);
    return mismatches == 0 ? kPass : kFail;
}

/// Sweeps the e1 family ℓ over all a ∈ F^* with L = x, unless --L/--ell give one pair.
int cmd_criterion(const Globals& g, const std::string& l_text, const std::string& ell_text, Emitter& em) {
    const Field f = g.make();
    const ScanPolicy policy = g.policy();
    std::uint64_t disagreements = 0, total = 0;
    auto one = [&](const LinPoly& l, const LinPoly& ell, const Json& label) {
        const auto cmp = compare_criterion(l, ell, policy);
        ++total;
        disagreements += !cmp.agree();
        Json j = label;
        j["criterion"] = cmp.criterion;
        j["bijective"] = cmp.bijective;
        j["agree"] = cmp.agree();
        j["odd_t"] = nullptr;
        if (cmp.odd_witness) j["odd_t"] = em.format() == Format::Csv ? Json(to_json(*cmp.odd_witness).dump()) : to_json(*cmp.odd_witness);
        em.record(j);
    };
    if (!l_text.empty() || !ell_text.empty()) {
        const LinPoly l = l_text.empty() ? LinPoly::identity(*f) : linpoly_from_json(*f, parse_json_arg(l_text, "--L"));
        if (ell_text.empty()) throw PreconditionError("criterion needs --ell when --L is given");
        const LinPoly ell = linpoly_from_json(*f, parse_json_arg(ell_text, "--ell"));
        one(l, ell, Json{{"field", f->spec().str()}});
    } else {
        if (f->n() != 3) throw PreconditionError("the e1 sweep needs n = 3");
        const LinPoly id = LinPoly::identity(*f);
        for (auto a : enumerate_nonzero(*f)) {
            const FieldElem nm = norm_rel(a);
            Json label{{"field", f->spec().str()},
                       {"a", em.format() == Format::Csv ? Json(to_json(a).dump()) : to_json(a)},
                       {"valid", !(nm * nm).is_one()}};
            one(id, e1_linpoly(*f, a), label);
        }
    }
    std::cerr << "criterion: " << total << " compared, " << disagreements << " disagreements\n";
    return disagreements == 0 ? kPass : kFail;
}

struct CatalogOpts {
    std::string file;
    std::string family;
    std::vector<std::string> params;
    bool any_field = false;
};

CatalogQuery make_query(const Globals& g, const CatalogOpts& c) {
    CatalogQuery q;
    if (!c.family.empty()) q.family = family_or_throw(c.family);
    if (!g.field.empty()) q.field = FieldSpec::parse(g.field);
    for (const auto& p : c.params) q.params.push_back(parse_param_predicate(p));
    return q;
}

int report_corrupt(const CatalogContents& cat) {
    for (const auto& e : cat.errors) std::cerr << "catalog line " << e.line << ": " << e.message << '\n';
    return cat.errors.empty() ? kPass : kUsage;
}

int cmd_catalog_query(const Globals& g, const CatalogOpts& c, Emitter& em) {
    const auto q = make_query(g, c);
    const auto cat = read_catalog_file(c.file);
    for (const auto& e : query_catalog(cat, q)) {
        if (em.format() == Format::Json) {
            em.raw() << e.record.dump() << '\n';
            continue;
        }
        const auto& r = e.record.at("report");
        em.record(Json{{"line", e.line},
                       {"family", r.at("family")},
                       {"field", field_spec_from_json(r.at("field")).str()},
                       {"params", r.at("params").dump()},
                       {"verified", r.at("verified")}});
    }
    return report_corrupt(cat);
}

int cmd_catalog_replay(const Globals& g, const CatalogOpts& c, Emitter& em) {
    const auto q = make_query(g, c);
    const auto cat = read_catalog_file(c.file);
    bool all_identical = true;
    for (const auto& e : query_catalog(cat, q)) {
        const auto r = replay(e.record, g.policy());
        all_identical = all_identical && r.identical;
        Json j{{"line", e.line},
               {"family", e.record.at("report").at("family")},
               {"identical", r.identical},
               {"verified", r.instance->verified()}};
        if (!r.differences.empty()) j["differences"] = em.format() == Format::Csv ? Json(Json(r.differences).dump()) : Json(r.differences);
        em.record(j);
    }
    const int corrupt = report_corrupt(cat);
    if (corrupt != kPass) return corrupt;
    return all_identical ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ppinv: permutation families and their compositional inverses over finite fields"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--field", g.field, "field spec, e.g. p=3,e=1,n=3 for F_(q^n), q = p^e");
    app.add_option("--seed", g.seed, "seed for randomized suites")->capture_default_str();
    app.add_option("--scan-bound", g.scan_bound, "largest field an exhaustive scan may cover")
        ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 24))
        ->capture_default_str();
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv", "human"}))->capture_default_str();
    app.add_option("--out", g.out, "write output here instead of stdout");
    app.add_flag("--no-timestamp", g.no_timestamp, "omit timestamps so reports are byte-reproducible");
    app.add_option("--threads", g.threads, "worker threads for exhaustive scans")->check(CLI::Range(1U, 256U));

    FamilyOpts vopt;
    auto* verify = app.add_subcommand("verify", "build and verify a family instance, or sweep all of them with --all");
    add_family_options(verify, vopt);
    verify->add_option("--catalog", vopt.catalog, "also append verified instances to this catalog");

    std::uint64_t trials = 100;
    bool per_trial = false;
    auto* theorems = app.add_subcommand("theorems", "random-L suites for the two transpose theorems");
    theorems->add_option("--trials", trials, "number of random L")->capture_default_str();
    theorems->add_flag("--per-trial", per_trial, "one record per trial; the summary goes to stderr");

    bool exhaustive = false;
    std::uint64_t pairs = 0;
    std::string wa, wb;
    auto* weil = app.add_subcommand("weil", "direct vs closed-form Weil sums, exactly in Z[zeta_p]");
    weil->add_flag("--exhaustive", exhaustive, "all A != 0 and all B");
    weil->add_option("--pairs", pairs, "this many seeded random pairs");
    weil->add_option("--A", wa, "single pair: A");
    weil->add_option("--B", wb, "single pair: B");

    std::string cl, cell;
    auto* criterion = app.add_subcommand("criterion", "M_t parity criterion against exhaustive bijectivity");
    criterion->add_option("--L", cl, "L as an array of elements (default x)");
    criterion->add_option("--ell", cell, "l as an array of elements (default: sweep the e1 family over all a)");

    CatalogOpts copt;
    FamilyOpts aopt;
    auto* catalog = app.add_subcommand("catalog", "JSON-lines catalog of verified instances");
    catalog->require_subcommand(1);
    auto* append = catalog->add_subcommand("append", "verify and append instances");
    add_family_options(append, aopt);
    append->add_option("--file", copt.file, "catalog file")->required();
    auto* query = catalog->add_subcommand("query", "list records matching family, field and parameter filters");
    auto* replay_cmd = catalog->add_subcommand("replay", "rebuild matching records and compare every check");
    for (auto* sub : {query, replay_cmd}) {
        sub->add_option("--file", copt.file, "catalog file")->required();
        sub->add_option("--family", copt.family, "family id or name");
        sub->add_option("--param", copt.params, "name=value, value as JSON (element codes allowed with --field)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }

    std::ofstream file;
    if (!g.out.empty()) {
        file.open(g.out);
        if (!file) {
            std::cerr << "error: cannot open '" << g.out << "' for writing\n";
            return kUsage;
        }
    }
    Emitter em(g.fmt(), g.out.empty() ? std::cout : file);

    try {
        if (*verify) return cmd_verify(g, vopt, em);
        if (*theorems) return cmd_theorems(g, trials, per_trial, em);
        if (*weil) {
            if (exhaustive + (pairs > 0) + !(wa.empty() && wb.empty()) > 1)
                throw PreconditionError("choose one of --exhaustive, --pairs, --A/--B");
            return cmd_weil(g, exhaustive, pairs, wa, wb, em);
        }
        if (*criterion) return cmd_criterion(g, cl, cell, em);
        if (*append) {
            aopt.catalog = copt.file;
            return cmd_verify(g, aopt, em);
        }
        if (*query) return cmd_catalog_query(g, copt, em);
        if (*replay_cmd) return cmd_catalog_replay(g, copt, em);
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ContextMismatch& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ScanBoundError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InternalError& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return kFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
