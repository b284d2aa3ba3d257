#include "mzv/cli.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "mzv/cache.hpp"
#include "mzv/chen.hpp"
#include "mzv/dims.hpp"
#include "mzv/evaluator.hpp"
#include "mzv/intrel.hpp"
#include "mzv/ncseries.hpp"
#include "mzv/purity.hpp"
#include "mzv/relations.hpp"
#include "mzv/sweep.hpp"

namespace mzv::cli {

namespace {

using nlohmann::json;

// A failed check: the report is still printed, the exit status becomes 1.
struct Outcome {
    json report;
    bool ok = true;
};

struct Globals {
    std::string cache_dir;
    bool json_out = false;
    bool csv = false;
    std::ostream *err = nullptr;
};

json big(const BigInt &x) {
    if (x >= BigInt(std::numeric_limits<std::int64_t>::min()) && x <= BigInt(std::numeric_limits<std::int64_t>::max()))
        return x.convert_to<std::int64_t>();
    return x.str();
}

std::string csv_cell(const json &v) {
    if (v.is_string())
        return v.get<std::string>();
    return v.dump();
}

// Rows of objects with the same keys, in the order given.
void write_csv(std::ostream &out, const json &rows, const std::vector<std::string> &cols) {
    for (std::size_t i = 0; i < cols.size(); ++i)
        out << (i ? "," : "") << cols[i];
    out << "\n";
    for (const auto &row : rows) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            const std::string cell = row.contains(cols[i]) ? csv_cell(row[cols[i]]) : "";
            const bool quote = cell.find(',') != std::string::npos;
            out << (i ? "," : "") << (quote ? "\"" + cell + "\"" : cell);
        }
        out << "\n";
    }
}

std::optional<ValueCache> open_cache(const Globals &g, bool disabled) {
    if (disabled)
        return std::nullopt;
    return ValueCache(ValueCache::resolve_dir(g.cache_dir));
}

void flush_warnings(const std::optional<ValueCache> &cache, std::ostream &err) {
    if (cache)
        for (const auto &w : cache->warnings())
            err << "warning: " << w << "\n";
}

// Decimal value of zeta(idx) printed with `prec` digits after the point; the
// bound covers the printing.
struct DecimalValue {
    std::string value;
    std::string bound;
};

DecimalValue mzv_decimal(const Index &idx, Backend backend, int prec, Evaluator &ev,
                         std::optional<ValueCache> &cache) {
    const std::string key = mzv_key(backend_name(backend), format_index(idx));
    if (cache && backend != Backend::Series)
        if (auto hit = cache->lookup(key, prec))
            return {hit->value, hit->bound};
    const MzvValue v = ev.evaluate(idx, backend, prec);
    PrecisionScope scope(static_cast<unsigned>(prec + 20));
    const int shown = backend == Backend::Series ? 20 : prec;
    DecimalValue d{to_fixed(v.value.value, static_cast<unsigned>(shown)),
                   to_sci(v.value.bound + 0.5 * std::pow(10.0, -shown))};
    if (cache && backend != Backend::Series) {
        CacheRecord r;
        r.kind = "mzv";
        r.key = key;
        r.precision = prec;
        r.value = d.value;
        r.bound = d.bound;
        r.created_at = utc_timestamp();
        r.index = format_index(idx);
        r.weight = idx.weight();
        r.backend = backend_name(backend);
        cache->store(r);
    }
    return d;
}

Outcome cmd_eval(const std::string &index, int prec, const std::string &backend_s, bool no_cache, const Globals &g) {
    if (prec < 1 || prec > 2000)
        throw std::invalid_argument("--prec must be in [1, 2000]");
    const Index idx = parse_index(index);
    const Backend backend = parse_backend(backend_s);
    if (!idx.admissible())
        throw std::invalid_argument("--index " + index + " is not admissible");
    Evaluator ev;
    auto cache = open_cache(g, no_cache);
    const DecimalValue d = mzv_decimal(idx, backend, prec, ev, cache);
    flush_warnings(cache, *g.err);
    json j;
    j["index"] = format_index(idx);
    j["backend"] = backend_name(backend);
    j["precision"] = prec;
    j["value"] = d.value;
    j["error_bound"] = d.bound;
    return {j, true};
}

Outcome cmd_dims(int max_n, bool check_lemma, int gapset_max) {
    if (max_n < 0 || max_n > 200)
        throw std::invalid_argument("--max must be in [0, 200]");
    const auto d = d_sequence(max_n);
    const auto gf = gf_coefficients(max_n);
    std::vector<LemmaRow> lemma;
    if (check_lemma)
        lemma = check_counting_lemma(max_n, std::min(gapset_max, max_n));
    json rows = json::array();
    bool ok = true;
    for (int n = 0; n <= max_n; ++n) {
        const auto i = static_cast<std::size_t>(n);
        json r;
        r["n"] = n;
        r["d"] = big(d[i]);
        r["gf"] = big(gf[i]);
        r["op"] = big(op_count_recurrence(n));
        ok = ok && d[i] == gf[i];
        if (check_lemma) {
            const auto &row = lemma[i];
            r["lemma_ok"] = row.ok();
            r["gapset_checked"] = row.gapset_checked;
            ok = ok && row.ok();
        }
        rows.push_back(r);
    }
    return {rows, ok};
}

Outcome cmd_relations(int n, bool no_duality, int verify_prec, bool no_verify, bool list) {
    if (n < 2 || n > 12)
        throw std::invalid_argument("--weight must be in [2, 12]");
    auto rels = gen_double_shuffle(n);
    if (!no_duality) {
        auto du = gen_duality(n);
        rels.insert(rels.end(), du.begin(), du.end());
    }
    const UpperBound ub = upper_bound(n, !no_duality);
    json j;
    j["n"] = n;
    j["num_words"] = ub.num_words;
    j["num_relations"] = ub.num_relations;
    j["rank"] = ub.rank;
    j["upper_bound"] = ub.upper;
    j["d_n"] = big(d_sequence(n)[static_cast<std::size_t>(n)]);
    bool ok = true;
    std::vector<RelationCheck> checks;
    if (no_verify) {
        j["all_verified"] = nullptr;
    } else {
        if (verify_prec < 10 || verify_prec > 500)
            throw std::invalid_argument("--verify-numeric must be in [10, 500]");
        Evaluator ev;
        const double tol = std::pow(10.0, -(verify_prec - 5));
        checks = verify_numeric(rels, verify_prec, tol, ev);
        for (const auto &c : checks)
            ok = ok && c.ok;
        j["all_verified"] = ok;
        j["tolerance"] = to_sci(tol);
    }
    if (list) {
        json arr = json::array();
        for (std::size_t i = 0; i < rels.size(); ++i) {
            json r;
            r["provenance"] = rels[i].provenance.to_string();
            json coeffs = json::object();
            for (const auto &[w, c] : rels[i].coeffs)
                coeffs[format_index(word_to_index(w))] = big(c);
            r["coefficients"] = coeffs;
            if (!checks.empty()) {
                r["residual"] = checks[i].residual.value == 0 ? std::string("0") : to_sci(upper(checks[i].residual.value));
                r["verified"] = checks[i].ok;
            }
            arr.push_back(r);
        }
        j["relations"] = arr;
    }
    return {j, ok};
}

Outcome cmd_purity(int n, const std::string &word) {
    if (n < 0 || n > 10)
        throw std::invalid_argument("--n must be in [0, 10]");
    std::optional<Word> only;
    if (!word.empty())
        only = word == "-" ? Word{} : parse_word(word);
    const PurityReport rep = purity_report(n, only ? &*only : nullptr);
    json entries = json::array();
    for (const auto &e : rep.entries) {
        json r;
        r["word"] = e.word.empty() ? "-" : format_word(e.word);
        r["dims"] = e.dims;
        r["betti"] = e.betti;
        r["d2_zero"] = e.d2_zero;
        r["euler"] = e.euler;
        r["pass"] = e.pass;
        entries.push_back(r);
    }
    json j;
    j["n"] = rep.n;
    j["all_pass"] = rep.all_pass;
    j["total_dim"] = rep.total_dim;
    j["entries"] = entries;
    return {j, rep.all_pass};
}

// Value specs for pslq: products of factors joined by '*', each factor an
// atom with an optional ^k. Atoms: zeta:<index>, pi, log2, integers,
// fractions p/q, decimals (taken as exact).
class ValueParser {
public:
    ValueParser(int digits, Evaluator &ev, std::optional<ValueCache> &cache)
        : digits_(digits), ev_(ev), cache_(cache) {}

    PrecReal parse(const std::string &spec) {
        PrecReal acc{Real(1), 0.0};
        std::size_t start = 0;
        while (true) {
            const std::size_t star = spec.find('*', start);
            acc = acc * factor(trim(spec.substr(start, star - start)), spec);
            if (star == std::string::npos)
                break;
            start = star + 1;
        }
        return acc;
    }

private:
    static std::string trim(const std::string &s) {
        const auto a = s.find_first_not_of(" \t");
        if (a == std::string::npos)
            return "";
        return s.substr(a, s.find_last_not_of(" \t") - a + 1);
    }

    PrecReal factor(const std::string &f, const std::string &spec) {
        std::string base = f;
        int power = 1;
        if (auto caret = f.find('^'); caret != std::string::npos) {
            base = f.substr(0, caret);
            try {
                power = std::stoi(f.substr(caret + 1));
            } catch (const std::exception &) {
                power = -1;
            }
            if (power < 1 || power > 64)
                throw std::invalid_argument("--values: bad exponent in '" + spec + "'");
        }
        const PrecReal a = atom(base, spec);
        PrecReal r = a;
        for (int i = 1; i < power; ++i)
            r = r * a;
        return r;
    }

    PrecReal atom(const std::string &a, const std::string &spec) {
        const double unit = rounding_unit(static_cast<unsigned>(digits_));
        if (a == "pi")
            return {pi(), unit};
        if (a == "log2")
            return {log2(), unit};
        if (a.rfind("zeta:", 0) == 0) {
            const Index idx = parse_index(a.substr(5));
            if (!idx.admissible())
                throw std::invalid_argument("--values: zeta index " + a.substr(5) + " is not admissible");
            const DecimalValue d = mzv_decimal(idx, Backend::Holder, digits_, ev_, cache_);
            return {Real(d.value), std::stod(d.bound)};
        }
        if (a.empty() || a.find_first_not_of("+-0123456789./") != std::string::npos)
            throw std::invalid_argument("--values: cannot parse '" + spec + "'");
        if (a.find('/') != std::string::npos) {
            try {
                return {to_real(Rational(a)), unit};
            } catch (const std::exception &) {
                throw std::invalid_argument("--values: cannot parse '" + spec + "'");
            }
        }
        try {
            return {Real(a), 0.0};
        } catch (const std::exception &) {
            throw std::invalid_argument("--values: cannot parse '" + spec + "'");
        }
    }

    int digits_;
    Evaluator &ev_;
    std::optional<ValueCache> &cache_;
};

// ';' separates values when present. Otherwise ',' does, and bare integers
// right after a zeta spec continue its index: "zeta:1,3,zeta:4" is two values.
std::vector<std::string> split_values(const std::string &s) {
    std::vector<std::string> parts;
    const char sep = s.find(';') != std::string::npos ? ';' : ',';
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) {
        const bool digits = !tok.empty() && tok.find_first_not_of("0123456789") == std::string::npos;
        if (sep == ',' && digits && !parts.empty()) {
            const std::string &prev = parts.back();
            const auto z = prev.rfind("zeta:");
            if (z != std::string::npos &&
                prev.find_first_not_of("0123456789,", z + 5) == std::string::npos) {
                parts.back() += "," + tok;
                continue;
            }
        }
        parts.push_back(tok);
    }
    return parts;
}

Outcome cmd_pslq(const std::string &values, const std::string &max_norm_s, int prec, const Globals &g,
                 bool no_cache) {
    BigInt max_norm;
    try {
        max_norm = BigInt(max_norm_s);
    } catch (const std::exception &) {
        throw std::invalid_argument("--max-norm must be a positive integer");
    }
    if (max_norm < 1)
        throw std::invalid_argument("--max-norm must be a positive integer");
    const auto specs = split_values(values);
    if (specs.size() < 2)
        throw std::invalid_argument("--values needs at least two entries");
    const int digits = prec + 10;
    PrecisionScope scope(static_cast<unsigned>(digits + 10));
    Evaluator ev;
    auto cache = open_cache(g, no_cache);
    ValueParser parser(digits, ev, cache);
    std::vector<PrecReal> xs;
    for (const auto &s : specs)
        xs.push_back(parser.parse(s));
    flush_warnings(cache, *g.err);
    const RelationResult r = pslq(xs, max_norm, prec);
    json j;
    j["values"] = specs;
    j["status"] = status_name(r.status);
    json coeffs = json::array();
    for (const auto &c : r.coefficients)
        coeffs.push_back(big(c));
    j["coefficients"] = coeffs;
    j["norm_bound"] = big(r.norm_bound);
    j["max_norm"] = big(max_norm);
    j["precision"] = r.precision_used;
    j["iterations"] = r.iterations;
    if (r.status == RelationResult::Status::Found) {
        j["residual"] = to_sci(upper(r.residual.value));
        j["lll_agrees"] = r.lll_agrees;
    }
    return {j, true};
}

std::string complex_str(const Complex &z, unsigned digits) {
    return to_fixed(z.re, digits) + (z.im < 0 ? " - " : " + ") + to_fixed(abs(z.im), digits) + "i";
}

Outcome cmd_paths_verify(int prop, int n, int prec, double tol, int samples) {
    if (prec < 8 || prec > 60)
        throw std::invalid_argument("--prec must be in [8, 60]");
    if (samples < 1 || samples > 100)
        throw std::invalid_argument("--samples must be in [1, 100]");
    if (n > 5)
        throw std::invalid_argument("--n must be at most 5");
    if (tol <= 0)
        tol = prop == 3 ? 1e-4 : 1e-6;
    const auto verdicts = verify_paths(prop, n, prec, tol, samples);
    json arr = json::array();
    bool ok = true;
    PrecisionScope scope(static_cast<unsigned>(prec + 10));
    for (const auto &v : verdicts) {
        json r;
        r["label"] = v.label;
        r["word"] = format_word(v.word);
        r["value"] = complex_str(v.value.value, static_cast<unsigned>(std::min(prec, 15)));
        r["expected"] = v.expected;
        r["residual"] = to_sci(v.residual);
        r["pass"] = v.pass;
        ok = ok && v.pass;
        arr.push_back(r);
    }
    json j;
    j["prop"] = prop;
    j["n"] = n;
    j["tolerance"] = to_sci(tol);
    j["all_pass"] = ok;
    j["verdicts"] = arr;
    return {j, ok};
}

Outcome cmd_paths_ch(const std::string &z_s, int prec) {
    if (prec < 10 || prec > 200)
        throw std::invalid_argument("--prec must be in [10, 200]");
    Rational z;
    try {
        z = Rational(z_s);
    } catch (const std::exception &) {
        throw std::invalid_argument("--z must be a rational p/q");
    }
    if (z == 0 || z == 1)
        throw std::invalid_argument("--z must differ from 0 and 1");
    const auto res = extension_class_check(z, prec);
    PrecisionScope scope(static_cast<unsigned>(prec + 10));
    const double tol = std::pow(10.0, -(prec - 2));
    json j;
    j["z"] = z.str();
    j["lhs"] = complex_str(res.lhs.value, static_cast<unsigned>(prec));
    j["rhs"] = res.rhs.str();
    j["difference"] = to_sci(res.difference);
    j["tolerance"] = to_sci(tol);
    j["branch"] = res.branch;
    j["pass"] = res.difference < tol;
    return {j, res.difference < tol};
}

Outcome cmd_sweep(const std::string &profile_name) {
    const SweepProfile p = profile_name == "quick" ? quick_profile() : full_profile();
    json arr = json::array();
    int failed = 0;
    for (const auto &c : run_sweep(p)) {
        json r;
        r["id"] = c.id;
        r["title"] = c.title;
        r["pass"] = c.pass;
        r["detail"] = c.detail;
        r["seconds"] = std::round(c.seconds * 1000) / 1000;
        failed += !c.pass;
        arr.push_back(r);
    }
    json j;
    j["profile"] = p.name;
    j["criteria"] = arr;
    j["passed"] = 8 - failed;
    j["failed"] = failed;
    return {j, failed == 0};
}

Outcome cmd_cache(const std::string &action, const Globals &g) {
    ValueCache cache(ValueCache::resolve_dir(g.cache_dir));
    json j;
    j["file"] = cache.file().string();
    if (action == "stats") {
        const auto s = cache.stats();
        j["records"] = s.records;
        j["corrupt"] = s.corrupt;
        j["kinds"] = s.kinds;
        flush_warnings(std::optional<ValueCache>(cache), *g.err);
    } else if (action == "clear") {
        cache.clear();
        j["cleared"] = true;
    }
    return {j, true};
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Multiple zeta values: dimensions, evaluation, relations, purity, periods"};
    app.name("mzv");
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    g.err = &err;
    app.add_option("--cache-dir", g.cache_dir, "Cache directory (default $MZV_CACHE_DIR or ~/.cache/mzv)");
    app.add_flag("--json", g.json_out, "JSON output (the default)");
    app.add_flag("--csv", g.csv, "CSV output for tables");

    std::function<Outcome()> action;

    auto *eval = app.add_subcommand("eval", "Evaluate zeta(index)");
    std::string index, backend = "holder";
    int prec = 50;
    bool no_cache = false;
    eval->add_option("--index", index, "Index as a comma list, e.g. 1,3")->required();
    eval->add_option("--prec", prec, "Decimal digits")->capture_default_str();
    eval->add_option("--backend", backend, "holder, chen or series")->capture_default_str();
    eval->add_flag("--no-cache", no_cache, "Bypass the value cache");
    eval->callback([&] { action = [&] { return cmd_eval(index, prec, backend, no_cache, g); }; });

    auto *dims = app.add_subcommand("dims", "Dimension sequence and counting lemma");
    int max_n = 30, gapset_max = 14;
    bool check_lemma = false;
    dims->add_option("--max", max_n, "Largest n")->capture_default_str();
    dims->add_flag("--check-lemma", check_lemma, "Verify the counting lemma row by row");
    dims->add_option("--gapset-max", gapset_max, "Largest n for gap-set enumeration")->capture_default_str();
    dims->callback([&] { action = [&] { return cmd_dims(max_n, check_lemma, gapset_max); }; });

    auto *relations = app.add_subcommand("relations", "Relation engine and upper bound at one weight");
    int weight = 0, verify_prec = 40;
    bool no_duality = false, no_verify = false, list = false;
    relations->add_option("--weight", weight, "Weight n")->required();
    relations->add_flag("--no-duality", no_duality, "Double shuffle relations only");
    relations->add_option("--verify-numeric", verify_prec, "Digits for numeric verification")->capture_default_str();
    relations->add_flag("--no-verify", no_verify, "Skip numeric verification");
    relations->add_flag("--list", list, "Include every relation");
    relations->callback(
        [&] { action = [&] { return cmd_relations(weight, no_duality, verify_prec, no_verify, list); }; });

    auto *purity = app.add_subcommand("purity", "Cohomology of the word complexes");
    int pn = 0;
    std::string word;
    purity->add_option("--n", pn, "Complex size n")->required();
    purity->add_option("--word", word, "Single word as bits, '-' for the empty word");
    purity->callback([&] { action = [&] { return cmd_purity(pn, word); }; });

    auto *pslq_cmd = app.add_subcommand("pslq", "Integer relation search");
    std::string values, max_norm = "1000000";
    int pslq_prec = 60;
    bool pslq_no_cache = false;
    pslq_cmd->add_option("--values", values, "Values: zeta:1,3 pi log2 p/q decimals, products with * and ^")
        ->required();
    pslq_cmd->add_option("--max-norm", max_norm, "Norm bound")->capture_default_str();
    pslq_cmd->add_option("--prec", pslq_prec, "Decimal digits")->capture_default_str();
    pslq_cmd->add_flag("--no-cache", pslq_no_cache, "Bypass the value cache");
    pslq_cmd->callback([&] { action = [&] { return cmd_pslq(values, max_norm, pslq_prec, g, pslq_no_cache); }; });

    auto *paths = app.add_subcommand("paths", "Period pairings on the punctured line");
    paths->require_subcommand(1);
    auto *verify = paths->add_subcommand("verify", "Check the three pairing statements");
    int prop = 1, vn = 2, vprec = 12, samples = 5;
    double tol = 0;
    verify->add_option("--prop", prop, "1, 2 or 3")->required()->check(CLI::Range(1, 3));
    verify->add_option("--n", vn, "Word length")->required();
    verify->add_option("--prec", vprec, "Decimal digits")->capture_default_str();
    verify->add_option("--tol", tol, "Residual tolerance (default 1e-6, 1e-4 for prop 3)");
    verify->add_option("--samples", samples, "Ideal samples for prop 1")->capture_default_str();
    verify->callback([&] { action = [&] { return cmd_paths_verify(prop, vn, vprec, tol, samples); }; });
    auto *ch = paths->add_subcommand("ch", "exp of the integral of dx/(x - z) over [0, 1]");
    std::string z;
    int chprec = 32;
    ch->add_option("--z", z, "Rational z")->required();
    ch->add_option("--prec", chprec, "Decimal digits")->capture_default_str();
    ch->callback([&] { action = [&] { return cmd_paths_ch(z, chprec); }; });

    auto *sweep = app.add_subcommand("sweep", "Run the acceptance criteria");
    std::string profile = "quick";
    sweep->add_option("profile", profile, "quick or full")->check(CLI::IsMember({"quick", "full"}))->capture_default_str();
    sweep->callback([&] { action = [&] { return cmd_sweep(profile); }; });

    auto *cache = app.add_subcommand("cache", "Inspect the value cache");
    std::string cache_action;
    cache->add_option("action", cache_action, "stats, clear or path")
        ->required()
        ->check(CLI::IsMember({"stats", "clear", "path"}));
    cache->callback([&] { action = [&] { return cmd_cache(cache_action, g); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        Outcome o = action();
        const bool table = o.report.is_array();
        if (g.csv && table && !o.report.empty()) {
            std::vector<std::string> cols;
            for (const auto &[k, v] : o.report.front().items())
                cols.push_back(k);
            if (dims->parsed()) {
                cols = {"n", "d", "gf", "op"};
                if (check_lemma)
                    cols.insert(cols.end(), {"lemma_ok", "gapset_checked"});
            }
            write_csv(out, o.report, cols);
        } else if (g.csv && purity->parsed()) {
            json rows = json::array();
            for (const auto &e : o.report["entries"]) {
                json r = e;
                std::string dims_s, betti_s;
                for (const auto &x : e["dims"])
                    dims_s += (dims_s.empty() ? "" : " ") + x.dump();
                for (const auto &x : e["betti"])
                    betti_s += (betti_s.empty() ? "" : " ") + x.dump();
                r["dims"] = dims_s;
                r["betti"] = betti_s;
                rows.push_back(r);
            }
            write_csv(out, rows, {"word", "dims", "betti", "d2_zero", "euler", "pass"});
        } else if (g.csv && eval->parsed()) {
            write_csv(out, json::array({o.report}), {"index", "backend", "precision", "value", "error_bound"});
        } else if (cache->parsed() && cache_action == "path") {
            out << o.report["file"].get<std::string>() << "\n";
        } else {
            out << o.report.dump(2) << "\n";
        }
        if (!o.ok)
            err << "verification failed\n";
        return o.ok ? 0 : 1;
    } catch (const PrecisionError &e) {
        err << "precision error: " << e.what() << " (achieved " << to_sci(e.achieved()) << ")\n";
        return 1;
    } catch (const std::invalid_argument &e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range &e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace mzv::cli
