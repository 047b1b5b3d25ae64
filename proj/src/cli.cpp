#include "pellinv/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "pellinv/error.hpp"
#include "pellinv/inverse.hpp"
#include "pellinv/least_type.hpp"
#include "pellinv/pell.hpp"
#include "pellinv/survey.hpp"
#include "pellinv/symmetry.hpp"

namespace pellinv::cli {

namespace {

using json = nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr long double kSixOverPiSquared = 0.607927101854026628663276779258L;

// A command's result, renderable in every output format. Commands with a flat
// document leave header/rows/text empty and get them derived from `doc`.
struct Report {
    json doc = json::object();
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> text;
};

// ---- JSON and string helpers ------------------------------------------------

json jint(const Integer& n) { return fits_i64(n) ? json(to_i64(n)) : json(n.get_str()); }

json jseq(std::span<const Integer> seq) {
    json a = json::array();
    for (const auto& v : seq) a.push_back(jint(v));
    return a;
}

json jrat(const Rational& r) { return json{{"exact", r.get_str()}, {"decimal", to_decimal(r)}}; }

std::string join(std::span<const Integer> seq, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) out += sep;
        out += seq[i].get_str();
    }
    return out;
}

std::string bracket(std::span<const Integer> seq) { return "[" + join(seq, ",") + "]"; }

std::string omega_name(const Integer& d, Ring ring) {
    return ring == Ring::Sqrt ? "sqrt(" + d.get_str() + ")" : "(1+sqrt(" + d.get_str() + "))/2";
}

std::string qi_text(const QuadraticInteger& v) {
    const std::string unit = v.ring == Ring::Sqrt ? "sqrt(" + v.d.get_str() + ")" : "w";
    std::string out = v.a.get_str();
    out += v.b < 0 ? " - " : " + ";
    out += Integer(abs(v.b)).get_str() + "*" + unit;
    if (v.ring == Ring::HalfSqrt) out += "  (w = (1+sqrt(" + v.d.get_str() + "))/2)";
    return out;
}

const char* parity_name(Parity p) { return p == Parity::Even ? "even" : "odd"; }
const char* side_name(Side s) { return s == Side::Minus ? "minus" : "plus"; }

std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    return v.dump();
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
        }
    } else if (j.is_array()) {
        const bool scalars = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
        if (scalars) {
            std::string joined;
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) joined += " ";
                joined += scalar_text(j[i]);
            }
            out.emplace_back(prefix, joined);
        } else {
            for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
        }
    } else {
        out.emplace_back(prefix, scalar_text(j));
    }
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

void csv_line(std::ostream& os, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        os << csv_field(fields[i]);
    }
    os << '\n';
}

std::string render(const Report& r, const std::string& format) {
    std::ostringstream os;
    if (format == "json") {
        os << r.doc.dump(2) << '\n';
    } else if (format == "csv") {
        if (!r.header.empty()) {
            csv_line(os, r.header);
            for (const auto& row : r.rows) csv_line(os, row);
        } else {
            std::vector<std::pair<std::string, std::string>> flat;
            flatten(r.doc, "", flat);
            std::vector<std::string> head, row;
            for (auto& [k, v] : flat) {
                head.push_back(k);
                row.push_back(v);
            }
            csv_line(os, head);
            csv_line(os, row);
        }
    } else if (!r.text.empty()) {
        for (const auto& line : r.text) os << line << '\n';
    } else {
        std::vector<std::pair<std::string, std::string>> flat;
        flatten(r.doc, "", flat);
        for (auto& [k, v] : flat) os << k << ": " << v << '\n';
    }
    return os.str();
}

// ---- argument conversion ------------------------------------------------------

Integer arg_integer(const std::string& name, const std::string& text) {
    if (text.empty()) throw UsageError(name + " is required");
    try {
        return parse_integer(text);
    } catch (const Error&) {
        throw UsageError(name + ": not an integer: " + text);
    }
}

Rational arg_rational(const std::string& name, const std::string& text) {
    try {
        return parse_rational(text);
    } catch (const Error&) {
        throw UsageError(name + ": not a rational: " + text);
    }
}

std::uint64_t arg_u64(const std::string& name, const std::string& text) {
    const Integer v = arg_integer(name, text);
    if (v < 0 || !mpz_fits_ulong_p(v.get_mpz_t())) throw UsageError(name + " must be a nonnegative 64-bit value");
    return mpz_get_ui(v.get_mpz_t());
}

std::size_t arg_count(const std::string& text, std::size_t fallback) {
    if (text.empty()) return fallback;
    const std::uint64_t v = arg_u64("--count", text);
    if (v < 1 || v > 100000) throw UsageError("--count must be in [1, 100000]");
    return static_cast<std::size_t>(v);
}

std::vector<Integer> arg_terms(const std::vector<std::string>& texts) {
    std::vector<Integer> out;
    for (const auto& t : texts) out.push_back(arg_integer("term", t));
    return out;
}

Ring arg_ring(const std::string& text) {
    if (text == "0") return Ring::Sqrt;
    if (text == "1") return Ring::HalfSqrt;
    throw UsageError("--ring must be 0 or 1");
}

Ring ring_or_natural(const std::string& text, const Integer& d) {
    return text.empty() ? natural_ring(d) : arg_ring(text);
}

Sign arg_sign(const std::string& text) {
    if (text == "-1" || text == "-" || text == "minus") return Sign::Minus;
    if (text == "1" || text == "+1" || text == "+" || text == "plus") return Sign::Plus;
    throw UsageError("--sign must be -1 or +1");
}

unsigned jobs_from(const std::string& text) {
    std::string source = text;
    if (source.empty()) {
        const char* env = std::getenv("PELLINV_JOBS");
        source = env ? env : "1";
    }
    const std::uint64_t v = arg_u64("--jobs", source);
    if (v < 1 || v > 256) throw UsageError("job count must be in [1, 256]");
    return static_cast<unsigned>(v);
}

// ---- the option bag shared by all subcommands ----------------------------------

struct Vars {
    std::string d, ring, count, n, p, q, x, y, sign, bound, limit, c, k, side, jobs;
    std::vector<std::string> terms, prefix, zeta;
    bool density = false;
    bool oracle = false;
};

// ---- commands -----------------------------------------------------------------

Report cmd_expand(const Vars& v) {
    const Integer d = arg_integer("d", v.d);
    const Ring ring = ring_or_natural(v.ring, d);
    const Expansion e = expand_omega(d, ring);
    Report r;
    r.doc = {{"d", jint(d)}, {"ring", ring_index(ring)}, {"a0", jint(e.a0)},
             {"period", jseq(e.period)}, {"length", e.length()}};
    r.text = {omega_name(d, ring) + " = [" + e.a0.get_str() + "; (" + join(e.period, ",") + ")]"};
    r.header = {"d", "ring", "a0", "length", "period"};
    r.rows = {{d.get_str(), std::to_string(ring_index(ring)), e.a0.get_str(), std::to_string(e.length()),
               join(e.period, " ")}};
    return r;
}

Report cmd_convergents(const Vars& v) {
    const Integer d = arg_integer("d", v.d);
    const Ring ring = ring_or_natural(v.ring, d);
    const Expansion e = expand_omega(d, ring);
    Report r;
    json list = json::array();
    r.header = {"n", "p", "q"};
    for (const auto& c : convergents(e, arg_count(v.count, 5))) {
        list.push_back({{"n", c.n}, {"p", jint(c.p)}, {"q", jint(c.q)}});
        r.rows.push_back({std::to_string(c.n), c.p.get_str(), c.q.get_str()});
        r.text.push_back("p_" + std::to_string(c.n) + "/q_" + std::to_string(c.n) + " = " + c.p.get_str() + "/" +
                         c.q.get_str());
    }
    r.doc = {{"d", jint(d)}, {"ring", ring_index(ring)}, {"convergents", list}};
    return r;
}

Report cmd_xi(const Vars& v) {
    const Integer d = arg_integer("d", v.d);
    const Ring ring = ring_or_natural(v.ring, d);
    const long n = to_i64(arg_integer("--n", v.n));
    const XiNu xn = xi_nu(d, ring, n);
    Report r;
    r.doc = {{"d", jint(d)},
             {"ring", ring_index(ring)},
             {"n", n},
             {"xi", {{"a", jint(xn.xi.a)}, {"b", jint(xn.xi.b)}}},
             {"norm", jint(xn.xi.norm())},
             {"nu", jint(xn.nu)}};
    r.text = {"xi_" + std::to_string(n) + " = " + qi_text(xn.xi), "N(xi) = " + xn.xi.norm().get_str(),
              "nu = " + xn.nu.get_str()};
    return r;
}

Report cmd_qbound(const Vars& v) {
    const Integer d = arg_integer("d", v.d);
    const Ring ring = ring_or_natural(v.ring, d);
    const long n = to_i64(arg_integer("--n", v.n));
    const QuotientBoundCheck c = verify_quotient_bound(d, ring, n);
    Report r;
    r.doc = {{"d", jint(d)},
             {"ring", ring_index(ring)},
             {"n", n},
             {"D", jint(c.D)},
             {"nu", jint(c.nu)},
             {"delta", {{"rational", jrat(c.delta_rational)}, {"sqrt_d_coefficient", jrat(c.delta_sqrt)}}},
             {"delta_within", c.delta_within},
             {"alpha_below", c.alpha_below},
             {"small_discriminant", c.small_discriminant},
             {"passed", c.passed}};
    return r;
}

Report cmd_twoexp(const Vars& v) {
    const Integer p = arg_integer("--p", v.p);
    const Integer q = arg_integer("--q", v.q);
    const TwoExpansions t = rational_two_expansions(p, q);
    Report r;
    r.doc = {{"p", jint(p)}, {"q", jint(q)}, {"long", jseq(t.long_form)}, {"short", jseq(t.short_form)},
             {"unit", t.unit}};
    r.text = {p.get_str() + "/" + q.get_str() + " = " + bracket(t.long_form) + " = " + bracket(t.short_form)};
    return r;
}

Report cmd_fold(const Vars& v) {
    const auto terms = arg_terms(v.terms);
    const Rational value = cf_to_rational(terms);
    Report r;
    r.doc = {{"terms", jseq(terms)}, {"p", jint(value.get_num())}, {"q", jint(value.get_den())}};
    r.text = {bracket(terms) + " = " + value.get_num().get_str() + "/" + value.get_den().get_str()};
    return r;
}

Report cmd_unit(const Vars& v) {
    const Integer d = arg_integer("d", v.d);
    const Ring ring = ring_or_natural(v.ring, d);
    const FundamentalUnit fu = fundamental_unit(d, ring);
    const double lg = log_of(fu.unit);
    Report r;
    r.doc = {{"d", jint(d)},         {"ring", ring_index(ring)}, {"a", jint(fu.unit.a)},
             {"b", jint(fu.unit.b)}, {"norm", fu.norm},          {"period", fu.period},
             {"log_unit", to_decimal(static_cast<long double>(lg))}};
    r.text = {"epsilon = " + qi_text(fu.unit), "norm = " + std::to_string(fu.norm),
              "period = " + std::to_string(fu.period),
              "log(epsilon) = " + to_decimal(static_cast<long double>(lg))};
    return r;
}

Report cmd_pell(const Vars& v) {
    const Integer d = arg_integer("d", v.d);
    const Ring ring = ring_or_natural(v.ring, d);
    Report r;
    json list = json::array();
    r.header = {"X", "Y", "D"};
    for (const auto& s : pell4_solutions(d, ring, arg_count(v.count, 3))) {
        list.push_back({{"X", jint(s.X)}, {"Y", jint(s.Y)}, {"D", jint(s.D)}});
        r.rows.push_back({s.X.get_str(), s.Y.get_str(), s.D.get_str()});
        r.text.push_back(s.X.get_str() + "^2 - " + s.D.get_str() + "*" + s.Y.get_str() + "^2 = 4");
    }
    r.doc = {{"d", jint(d)}, {"ring", ring_index(ring)}, {"solutions", list}};
    return r;
}

Report cmd_aac(const Vars& v) {
    const std::uint64_t p = arg_u64("p", v.d);
    const AacResult a = aac_check(p);
    Report r;
    r.doc = {{"p", p}, {"t", jint(a.t)}, {"u", jint(a.u)}, {"u_mod_p", jint(a.u_mod_p)}, {"holds", a.holds}};
    return r;
}

Report cmd_continuant(const Vars& v) {
    const auto terms = arg_terms(v.terms);
    const ContinuantMatrix m = continuant(terms);
    Report r;
    r.doc = {{"terms", jseq(terms)}, {"n", m.n},           {"q_n", jint(m.q_n)},
             {"q_prev", jint(m.q_prev)}, {"r_n", jint(m.r_n)}, {"r_prev", jint(m.r_prev)},
             {"determinant", jint(m.determinant())}};
    return r;
}

Report cmd_symform(const Vars& v) {
    const Integer x = arg_integer("--x", v.x);
    const Integer y = arg_integer("--y", v.y);
    Report r;
    json forms = json::array();
    r.header = {"sign", "parity", "length", "terms"};
    for (const auto& f : symmetric_form(x, y)) {
        forms.push_back({{"terms", jseq(f.seq.terms())},
                         {"parity", parity_name(f.parity)},
                         {"sign", sign_value(f.sign)},
                         {"length", f.seq.size()}});
        r.rows.push_back({std::to_string(sign_value(f.sign)), parity_name(f.parity), std::to_string(f.seq.size()),
                          join(f.seq.terms(), " ")});
        r.text.push_back(x.get_str() + "/" + y.get_str() + " -> " + bracket(f.seq.terms()) + " (" +
                         parity_name(f.parity) + ", sign " + std::to_string(sign_value(f.sign)) + ")");
    }
    r.doc = {{"x", jint(x)}, {"y", jint(y)}, {"forms", forms}};
    return r;
}

Report cmd_palrat(const Vars& v) {
    const auto terms = arg_terms(v.terms);
    const RationalXY xy = rational_from_symmetric(std::span<const Integer>(terms));
    Report r;
    r.doc = {{"terms", jseq(terms)}, {"x", jint(xy.x)}, {"y", jint(xy.y)}};
    return r;
}

Report cmd_tparity(const Vars& v) {
    const Integer x = arg_integer("--x", v.x);
    const Integer y = arg_integer("--y", v.y);
    const Sign s = arg_sign(v.sign);
    const TParity t = parity_of_t(x, y, s);
    Report r;
    r.doc = {{"x", jint(x)}, {"y", jint(y)}, {"sign", sign_value(s)}, {"t", jint(t.t)},
             {"parity", parity_name(t.parity)}};
    return r;
}

Report cmd_inverse(const Vars& v) {
    const Integer y = arg_integer("--y", v.y);
    const Integer x = arg_integer("--x", v.x);
    const std::size_t count = arg_count(v.count, 5);
    Report r;
    r.header = {"sign", "ring", "case", "frak_a", "y_tilde", "a0", "d", "norm", "status"};
    json progs = json::array();
    for (const Progression& prog : progressions_for_key(y, x)) {
        if (!v.sign.empty() && prog.key.sign != arg_sign(v.sign)) continue;
        if (!v.ring.empty() && prog.key.ring != arg_ring(v.ring)) continue;
        const FamilyRecord fam = reduced_family(prog.key);
        ProgressionElements pe = progression_elements(prog, count);
        struct Row {
            ProgressionElement el;
            const char* status;
        };
        std::vector<Row> all;
        for (auto& el : pe.elements) {
            const bool discarded = fam.discarded_least && *fam.discarded_least == el.d;
            all.push_back({el, discarded ? "discarded" : "retained"});
        }
        for (auto& el : pe.skipped) all.push_back({el, "skipped"});
        std::sort(all.begin(), all.end(), [](const Row& a, const Row& b) { return a.el.a0 < b.el.a0; });

        const std::string sg = std::to_string(sign_value(prog.key.sign));
        const std::string rg = std::to_string(ring_index(prog.key.ring));
        r.text.push_back("case " + std::to_string(prog.case_id) + " (ring " + rg + ", sign " + sg +
                         "): frak_a = " + prog.frak_a.get_str() + ", y_tilde = " + prog.y_tilde.get_str());
        json elements = json::array();
        for (const Row& row : all) {
            elements.push_back({{"a0", jint(row.el.a0)},
                                {"d", jint(row.el.d)},
                                {"norm", jint(row.el.norm)},
                                {"status", row.status}});
            r.rows.push_back({sg, rg, std::to_string(prog.case_id), prog.frak_a.get_str(), prog.y_tilde.get_str(),
                              row.el.a0.get_str(), row.el.d.get_str(), row.el.norm.get_str(), row.status});
            std::string line = "  (" + row.el.a0.get_str() + ", " + row.el.d.get_str() + ")";
            if (std::string(row.status) != "skipped") line += "  N = " + row.el.norm.get_str();
            if (std::string(row.status) != "retained") line += "  [" + std::string(row.status) + "]";
            r.text.push_back(line);
        }
        progs.push_back({{"sign", sign_value(prog.key.sign)},
                         {"ring", ring_index(prog.key.ring)},
                         {"case", prog.case_id},
                         {"frak_a", jint(prog.frak_a)},
                         {"y_tilde", jint(prog.y_tilde)},
                         {"discarded_least", fam.discarded_least ? jint(*fam.discarded_least) : json(nullptr)},
                         {"elements", elements}});
    }
    r.doc = {{"y", jint(y)}, {"x", jint(x)}, {"progressions", progs}};
    return r;
}

Report cmd_interval(const Vars& v) {
    const Integer p = arg_integer("--p", v.p);
    const Integer q = arg_integer("--q", v.q);
    if (v.ring.empty()) throw UsageError("--ring is required");
    const Ring ring = arg_ring(v.ring);
    const AttachedIntervals ai = attached_intervals(p, q, ring);
    Report r;
    r.header = {"side", "lo", "hi", "lo_decimal", "hi_decimal", "length_decimal", "d", "norm", "case"};
    r.doc = {{"p", jint(p)},         {"q", jint(q)},           {"ring", ring_index(ring)}, {"m", ai.m},
             {"center", jrat(ai.center)}, {"A", jrat(ai.A)}, {"B", jrat(ai.B)}};
    for (const AttachedInterval* iv : {&ai.minus, &ai.plus}) {
        if (!v.side.empty() && v.side != side_name(iv->side)) continue;
        const auto hit = integer_in_interval(p, q, ring, iv->side);
        json side = {{"lo", jrat(iv->lo)},
                     {"hi", jrat(iv->hi)},
                     {"length", jrat(iv->length())},
                     {"d", hit ? jint(hit->d) : json(nullptr)},
                     {"norm", hit ? jint(hit->norm) : json(nullptr)},
                     {"case", hit ? json(hit->case_id) : json(nullptr)}};
        r.doc[side_name(iv->side)] = side;
        r.rows.push_back({side_name(iv->side), iv->lo.get_str(), iv->hi.get_str(), to_decimal(iv->lo),
                          to_decimal(iv->hi), to_decimal(iv->length()), hit ? hit->d.get_str() : "",
                          hit ? hit->norm.get_str() : "", hit ? std::to_string(hit->case_id) : ""});
        std::string line = std::string(side_name(iv->side)) + ": (" + to_decimal(iv->lo) + ", " +
                           to_decimal(iv->hi) + ")";
        line += hit ? "  contains d = " + hit->d.get_str() + ", N = " + hit->norm.get_str() + ", case " +
                          std::to_string(hit->case_id)
                    : "  contains no admissible integer";
        r.text.push_back(line);
    }
    return r;
}

Report cmd_halterkoch(const Vars& v) {
    const auto terms = arg_terms(v.terms);
    const HalterKoch hk = halter_koch_progression(std::span<const Integer>(terms));
    const Integer bound = v.bound.empty() ? Integer(100) : arg_integer("--bound", v.bound);
    Report r;
    r.doc = {{"terms", jseq(terms)},
             {"lead", jint(hk.lead)},
             {"A", jint(hk.A)},
             {"B", jint(hk.B)},
             {"shift", jint(hk.shift)},
             {"bound", jint(bound)},
             {"ring0", {{"feasible", hk.ring0_feasible}, {"elements", jseq(hk.elements(Ring::Sqrt, bound))}}},
             {"ring1", {{"feasible", hk.ring1_feasible}, {"elements", jseq(hk.elements(Ring::HalfSqrt, bound))}}}};
    return r;
}

Report cmd_crosscheck(const Vars& v) {
    const Integer y = arg_integer("--y", v.y);
    const Integer x = arg_integer("--x", v.x);
    const Integer bound = arg_integer("--bound", v.bound);
    const CrossCheckReport rep = cross_check_parameterizations(y, x, bound);
    Report r;
    r.header = {"sign", "ring", "palindrome", "progression_feasible", "halter_koch_feasible", "equal",
                "from_progression", "from_halter_koch"};
    json entries = json::array();
    for (const auto& e : rep.entries) {
        entries.push_back({{"sign", sign_value(e.sign)},
                           {"ring", ring_index(e.ring)},
                           {"palindrome", jseq(e.palindrome.terms())},
                           {"progression_feasible", e.progression_feasible},
                           {"halter_koch_feasible", e.halter_koch_feasible},
                           {"from_progression", jseq(e.from_progression)},
                           {"from_halter_koch", jseq(e.from_halter_koch)},
                           {"equal", e.equal}});
        r.rows.push_back({std::to_string(sign_value(e.sign)), std::to_string(ring_index(e.ring)),
                          join(e.palindrome.terms(), " "), e.progression_feasible ? "true" : "false",
                          e.halter_koch_feasible ? "true" : "false", e.equal ? "true" : "false",
                          join(e.from_progression, " "), join(e.from_halter_koch, " ")});
        r.text.push_back("sign " + std::to_string(sign_value(e.sign)) + ", ring " +
                         std::to_string(ring_index(e.ring)) + ", palindrome " + bracket(e.palindrome.terms()) +
                         ": " + (e.equal ? "equal " : "MISMATCH ") + "{" + join(e.from_progression, ",") + "}" +
                         (e.equal ? "" : " vs {" + join(e.from_halter_koch, ",") + "}"));
    }
    r.text.push_back(rep.all_equal ? "all equal" : "mismatch found");
    r.doc = {{"y", jint(y)}, {"x", jint(x)}, {"bound", jint(bound)}, {"all_equal", rep.all_equal},
             {"entries", entries}};
    return r;
}

Report cmd_family(const Vars& v) {
    const Integer y = arg_integer("--y", v.y);
    const Integer x = arg_integer("--x", v.x);
    const Sign s = arg_sign(v.sign);
    const Ring ring = v.ring.empty() ? Ring::Sqrt : arg_ring(v.ring);
    const FamilyRecord fam = reduced_family(y, x, s, ring);
    Report r;
    json elements = json::array();
    r.header = {"a0", "d", "status"};
    if (fam.discarded_least) r.rows.push_back({"", fam.discarded_least->get_str(), "discarded"});
    for (const auto& el : fam.elements(arg_count(v.count, 5))) {
        elements.push_back({{"a0", jint(el.a0)}, {"d", jint(el.d)}});
        r.rows.push_back({el.a0.get_str(), el.d.get_str(), "retained"});
    }
    r.doc = {{"y", jint(fam.key.y)},
             {"x", jint(fam.key.x)},
             {"sign", sign_value(s)},
             {"ring", ring_index(ring)},
             {"case", fam.progression.case_id},
             {"frak_a", jint(fam.progression.frak_a)},
             {"y_tilde", jint(fam.progression.y_tilde)},
             {"palindrome_length", fam.palindrome_length},
             {"discarded_least", fam.discarded_least ? jint(*fam.discarded_least) : json(nullptr)},
             {"discarded_period", fam.discarded_least ? json(fam.discarded_period) : json(nullptr)},
             {"discarded_period_divides", fam.discarded_period_divides},
             {"least", jint(fam.least)},
             {"elements", elements}};
    return r;
}

Report cmd_classify(const Vars& v) {
    const Integer d = arg_integer("d", v.d);
    const Ring ring = ring_or_natural(v.ring, d);
    const Classification c = classify(d, ring);
    Report r;
    r.doc = {{"d", jint(d)},
             {"ring", ring_index(ring)},
             {"key", {{"y", jint(c.key.y)}, {"x", jint(c.key.x)}, {"sign", sign_value(c.key.sign)}}},
             {"palindrome", jseq(c.palindrome.terms())},
             {"family_a0", jint(c.family_a0)},
             {"y_tilde", jint(c.y_tilde)},
             {"family_least", jint(c.family_least)},
             {"is_least", c.is_least}};
    return r;
}

Report cmd_leasttype(const Vars& v) {
    const Integer d = arg_integer("d", v.d);
    const bool least = is_least_type_field(d);
    Report r;
    r.doc = {{"d", jint(d)}, {"ring", ring_index(natural_ring(d))}, {"least_type", least}};
    return r;
}

Report cmd_unitbound(const Vars& v) {
    const Integer d = arg_integer("d", v.d);
    const Ring ring = ring_or_natural(v.ring, d);
    const UnitBoundCheck u = non_least_unit_bound(d, ring);
    Report r;
    r.doc = {{"d", jint(d)},          {"ring", ring_index(ring)},       {"a0", jint(u.a0)},
             {"y_tilde", jint(u.y_tilde)}, {"a0_exceeds", u.a0_exceeds}, {"d_exceeds", u.d_exceeds},
             {"passed", u.passed}};
    return r;
}

Report cmd_sieve(const Vars& v) {
    const std::uint64_t limit = arg_u64("--limit", v.limit);
    const SieveTable t = squarefree_sieve(limit);
    const std::uint64_t count = t.count();
    const long double ratio = static_cast<long double>(count) / static_cast<long double>(limit);
    const long double err = std::fabs(ratio - kSixOverPiSquared);
    Report r;
    r.doc = {{"N", limit},
             {"count", count},
             {"ratio", jrat(make_rational(Integer(static_cast<unsigned long>(count)),
                                          Integer(static_cast<unsigned long>(limit))))},
             {"target", to_decimal(kSixOverPiSquared)},
             {"abs_error", to_decimal(err)},
             {"tolerance", "0.001"},
             {"within", err <= 0.001L}};
    return r;
}

// Square-free density of the class c mod k: (6/pi^2)/k * prod_{p | k} p^2/(p^2 - 1).
long double class_density(std::uint64_t k) {
    long double dens = kSixOverPiSquared / static_cast<long double>(k);
    std::uint64_t m = k;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        dens *= static_cast<long double>(p * p) / static_cast<long double>(p * p - 1);
    }
    if (m > 1) dens *= static_cast<long double>(m * m) / static_cast<long double>(m * m - 1);
    return dens;
}

Report cmd_sfclass(const Vars& v) {
    const std::uint64_t limit = arg_u64("--limit", v.limit);
    const std::uint64_t c = arg_u64("--c", v.c);
    const std::uint64_t k = arg_u64("--k", v.k);
    const std::uint64_t count = squarefree_in_class(limit, c, k);
    const long double expected = class_density(k) * static_cast<long double>(limit);
    const long double rel = expected > 0 ? std::fabs(static_cast<long double>(count) - expected) / expected : 0;
    Report r;
    r.doc = {{"N", limit},
             {"c", c},
             {"k", k},
             {"count", count},
             {"expected", to_decimal(expected)},
             {"rel_error", to_decimal(rel)},
             {"tolerance", "0.005"},
             {"within", rel <= 0.005L}};
    return r;
}

Report survey_density(std::uint64_t limit, bool oracle, unsigned jobs) {
    const DensityReport d = oracle ? least_type_density_oracle(limit, jobs) : least_type_density(limit);
    Report r;
    r.header = {"category", "count", "denominator", "ratio", "ratio_decimal"};
    json counts = json::object();
    auto add = [&](const std::string& name, std::uint64_t num, std::uint64_t den) {
        counts[name] = num;
        const Rational q = den ? make_rational(Integer(static_cast<unsigned long>(num)),
                                               Integer(static_cast<unsigned long>(den)))
                               : Rational(0);
        r.rows.push_back({name, std::to_string(num), std::to_string(den), q.get_str(), to_decimal(q)});
        r.text.push_back(name + ": " + std::to_string(num) + " / " + std::to_string(den) + " = " + to_decimal(q));
    };
    add("nonsquare", d.nonsquare, d.N);
    add("nonsquare_1mod4", d.nonsquare_1mod4, d.N);
    add("least0", d.least0, d.nonsquare);
    add("least1", d.least1, d.nonsquare_1mod4);
    add("squarefree", d.squarefree, d.N);
    for (int c = 1; c < 4; ++c) add("squarefree_mod4_" + std::to_string(c), d.squarefree_mod4[c], d.squarefree);
    add("squarefree_least0", d.squarefree_least0, d.squarefree);
    add("squarefree_least1", d.squarefree_least1, d.squarefree_mod4[1]);
    add("fields", d.fields, d.N);
    add("least_type_fields", d.least_type_fields, d.fields);
    add("non_least_type_fields", d.non_least_type_fields, d.N);
    r.doc = {{"N", d.N},
             {"mode", "density"},
             {"method", oracle ? "oracle" : "families"},
             {"counts", counts},
             {"overlaps", d.overlaps},
             {"ratios",
              {{"ring0", jrat(d.ratio0())},
               {"ring1", jrat(d.ratio1())},
               {"least_type", jrat(d.least_type_ratio())},
               {"non_least_per_n", jrat(d.non_least_per_n())}}}};
    return r;
}

Report survey_predecessor(std::uint64_t limit, const std::vector<std::string>& prefix_text, Ring ring,
                          unsigned jobs) {
    const auto prefix = arg_terms(prefix_text);
    const PredecessorReport p = predecessor_density(prefix, limit, ring, jobs);
    const long double expected = static_cast<long double>(p.expected.get_d());
    const long double rel = p.abs_error / expected;
    Report r;
    r.doc = {{"N", p.N},
             {"mode", "predecessor"},
             {"ring", ring_index(ring)},
             {"prefix", jseq(p.prefix)},
             {"count", p.count},
             {"ratio", jrat(p.ratio)},
             {"expected", jrat(p.expected)},
             {"abs_error", to_decimal(p.abs_error)},
             {"rel_error", to_decimal(rel)},
             {"tolerance", "0.02"},
             {"within", rel <= 0.02L}};
    return r;
}

Report survey_zeta(std::uint64_t limit, const std::vector<std::string>& s_text) {
    if (limit < 100) throw Error(Errc::InvalidArgument, "zeta diagnostic needs N >= 100");
    const NonLeastMaps maps = non_least_by_families(limit);
    Report r;
    r.header = {"s", "sum_least", "sum_nonsquare", "difference", "complete_nonsquare", "gap_to_complete"};
    json rows = json::array();
    for (const auto& text : s_text) {
        const Rational s = arg_rational("--zeta", text);
        const ZetaDiagnostic z = zeta_partial_diagnostic(s, limit, maps);
        std::vector<std::string> row = {s.get_str(),           to_decimal(z.sum_least),
                                        to_decimal(z.sum_nonsquare), to_decimal(z.difference),
                                        to_decimal(z.complete_nonsquare), to_decimal(z.gap_to_complete)};
        rows.push_back({{"s", row[0]},
                        {"sum_least", row[1]},
                        {"sum_nonsquare", row[2]},
                        {"difference", row[3]},
                        {"complete_nonsquare", row[4]},
                        {"gap_to_complete", row[5]}});
        r.text.push_back("s = " + row[0] + ": least " + row[1] + ", nonsquare " + row[2] + ", difference " +
                         row[3] + ", gap to zeta(s)-zeta(2s) " + row[5]);
        r.rows.push_back(std::move(row));
    }
    r.doc = {{"N", limit}, {"mode", "zeta"}, {"rows", rows}};
    return r;
}

Report cmd_survey(const Vars& v) {
    const std::uint64_t limit = arg_u64("--limit", v.limit);
    const unsigned jobs = jobs_from(v.jobs);
    const int modes = int(v.density) + int(!v.prefix.empty()) + int(!v.zeta.empty());
    if (modes != 1) throw UsageError("survey needs exactly one of --density, --predecessor, --zeta");
    if (v.oracle && !v.density) throw UsageError("--oracle applies to --density only");
    if (v.density) return survey_density(limit, v.oracle, jobs);
    if (!v.prefix.empty()) {
        return survey_predecessor(limit, v.prefix, v.ring.empty() ? Ring::Sqrt : arg_ring(v.ring), jobs);
    }
    return survey_zeta(limit, v.zeta);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact Pell-equation and continued-fraction toolkit", "pellinv"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "text";
    std::string out_path;
    Vars v;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--out", out_path, "Write output to this file");
    app.add_option("--jobs", v.jobs, "Worker threads for survey (default: PELLINV_JOBS or 1)");

    std::vector<std::pair<CLI::App*, std::function<Report(const Vars&)>>> commands;
    auto add = [&](const char* name, const char* help, Report (*fn)(const Vars&)) {
        CLI::App* sub = app.add_subcommand(name, help);
        commands.emplace_back(sub, fn);
        return sub;
    };
    auto d_arg = [&](CLI::App* s) { s->add_option("d", v.d, "Non-square integer")->required(); };
    auto ring_opt = [&](CLI::App* s) { s->add_option("--ring", v.ring, "0: sqrt(d), 1: (1+sqrt(d))/2"); };
    auto xy_opts = [&](CLI::App* s) {
        s->add_option("--y", v.y)->required();
        s->add_option("--x", v.x)->required();
    };
    auto terms_arg = [&](CLI::App* s) { s->add_option("terms", v.terms, "Sequence terms"); };

    CLI::App* s = nullptr;
    s = add("expand", "Periodic expansion of omega_d", cmd_expand);
    d_arg(s);
    ring_opt(s);
    s = add("convergents", "Convergents p_n/q_n of omega_d", cmd_convergents);
    d_arg(s);
    ring_opt(s);
    s->add_option("--count", v.count);
    s = add("xi", "xi_n and nu_n", cmd_xi);
    d_arg(s);
    ring_opt(s);
    s->add_option("--n", v.n)->required();
    s = add("qbound", "Check the quotient-norm bound at index n", cmd_qbound);
    d_arg(s);
    ring_opt(s);
    s->add_option("--n", v.n)->required();
    s = add("twoexp", "Both finite expansions of p/q", cmd_twoexp);
    s->add_option("--p", v.p)->required();
    s->add_option("--q", v.q)->required();
    s = add("fold", "Evaluate a finite continued fraction", cmd_fold);
    s->add_option("terms", v.terms)->required();
    s = add("unit", "Fundamental unit of Z[omega_d]", cmd_unit);
    d_arg(s);
    ring_opt(s);
    s = add("pell", "Solutions of X^2 - D Y^2 = 4", cmd_pell);
    d_arg(s);
    ring_opt(s);
    s->add_option("--count", v.count);
    s = add("aac", "Ankeny-Artin-Chowla check for a prime p = 1 mod 4", cmd_aac);
    s->add_option("p", v.d)->required();
    s = add("continuant", "Continuant matrix of a sequence", cmd_continuant);
    terms_arg(s);
    s = add("symform", "Palindromic expansion of x/y", cmd_symform);
    xy_opts(s);
    s = add("palrat", "x/y from a palindrome", cmd_palrat);
    terms_arg(s);
    s = add("tparity", "Parity of t = (x^2 - sign)/y", cmd_tparity);
    xy_opts(s);
    s->add_option("--sign", v.sign)->required();
    s = add("inverse", "Progressions of d for a key (y, x)", cmd_inverse);
    xy_opts(s);
    s->add_option("--count", v.count);
    s->add_option("--sign", v.sign);
    ring_opt(s);
    s = add("interval", "Attached intervals of p/q", cmd_interval);
    s->add_option("--p", v.p)->required();
    s->add_option("--q", v.q)->required();
    s->add_option("--ring", v.ring)->required();
    s->add_option("--side", v.side)->check(CLI::IsMember({"minus", "plus"}));
    s = add("halterkoch", "Polynomial parameterization of a palindrome", cmd_halterkoch);
    terms_arg(s);
    s->add_option("--bound", v.bound);
    s = add("crosscheck", "Compare progressions with the polynomial parameterization", cmd_crosscheck);
    xy_opts(s);
    s->add_option("--bound", v.bound)->required();
    s = add("family", "Reduced family of a key", cmd_family);
    xy_opts(s);
    s->add_option("--sign", v.sign)->required();
    ring_opt(s);
    s->add_option("--count", v.count);
    s = add("classify", "Family and least status of d", cmd_classify);
    d_arg(s);
    ring_opt(s);
    s = add("leasttype", "Least-type test for a square-free d", cmd_leasttype);
    d_arg(s);
    s = add("unitbound", "a0 > y_tilde check for a non-least d", cmd_unitbound);
    d_arg(s);
    ring_opt(s);
    s = add("sieve", "Square-free count up to N", cmd_sieve);
    s->add_option("--limit", v.limit)->required();
    s = add("sfclass", "Square-free count in a residue class", cmd_sfclass);
    s->add_option("--limit", v.limit)->required();
    s->add_option("--c", v.c)->required();
    s->add_option("--k", v.k)->required();
    s = add("survey", "Density surveys and the zeta diagnostic", cmd_survey);
    s->add_option("--limit", v.limit)->required();
    auto* density = s->add_flag("--density", v.density, "Least-type densities");
    auto* pred = s->add_option("--predecessor", v.prefix, "Prefix a1,...,am")->delimiter(',');
    auto* zeta = s->add_option("--zeta", v.zeta, "Exponent(s) s > 1")->delimiter(',');
    density->excludes(pred)->excludes(zeta);
    pred->excludes(zeta);
    s->add_flag("--oracle", v.oracle, "Classify every d instead of enumerating families");
    ring_opt(s);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? Ok : Usage;
    }

    try {
        for (auto& [sub, fn] : commands) {
            if (!sub->parsed()) continue;
            const std::string text = render(fn(v), format);
            if (out_path.empty()) {
                out << text;
            } else {
                std::ofstream file(out_path, std::ios::binary);
                if (!file || !(file << text)) throw UsageError("cannot write " + out_path);
            }
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return Usage;
    } catch (const Error& e) {
        const std::string name(errc_name(e.code()));
        const std::string what = e.what();
        err << "error: " << (what.rfind(name, 0) == 0 ? what : name + ": " + what) << '\n';
        return Domain;
    }
    return Ok;
}

}  // namespace pellinv::cli
