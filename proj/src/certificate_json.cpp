#include "quadrica/certificate_json.hpp"

#include <cstdio>

#include "quadrica/error.hpp"
#include "quadrica/parse.hpp"

namespace quadrica {

using nlohmann::json;

namespace {

SurfaceKind kind_from_tag(const std::string& tag) {
    if (tag == "p2") return SurfaceKind::P2;
    if (tag == "p1xp1") return SurfaceKind::P1xP1;
    throw DomainError("unknown surface '" + tag + "'");
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("certificate misses field '") + key + "'");
    return j.at(key);
}

std::string str(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_string()) throw DomainError(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

bool flag(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_boolean()) throw DomainError(std::string("field '") + key + "' must be a boolean");
    return v.get<bool>();
}

json form_json(const DiagForm& f) {
    return {{"surface", f.surface().tag()}, {"affine", f.is_affine()}, {"entries", f.entry_strings()}};
}

DiagForm form_from(const json& j) {
    SurfaceKind k = kind_from_tag(str(j, "surface"));
    const json& e = field(j, "entries");
    if (!e.is_array() || e.size() != 4) throw DomainError("a form has four entries");
    std::string joined;
    for (std::size_t i = 0; i < 4; ++i) joined += (i ? ";" : "") + e[i].get<std::string>();
    return DiagForm::parse(joined, k, flag(j, "affine"));
}

json class_json(const BrauerClass& u) {
    json out = json::array();
    for (const auto& [a, b] : u.symbols()) out.push_back({a.to_string(), b.to_string()});
    return out;
}

BrauerClass class_from(const json& j, const VarList& vars) {
    BrauerClass u;
    for (const auto& s : j) {
        if (!s.is_array() || s.size() != 2) throw DomainError("a symbol has two entries");
        u.toggle(parse_ratfn(s[0].get<std::string>(), vars), parse_ratfn(s[1].get<std::string>(), vars));
    }
    return u;
}

PrimeDivisor divisor_from(const std::string& s, SurfaceKind k) {
    if (s.size() < 5 || s.front() != '{' || s.substr(s.size() - 3) != "=0}")
        throw DomainError("malformed divisor '" + s + "'");
    return PrimeDivisor(k, SurfaceModel::of(k).parse(s.substr(1, s.size() - 4)));
}

CurveClass curve_class_from(const std::string& s) {
    if (s == "1") return CurveClass{UPoly::constant(1)};
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw DomainError("malformed residue '" + s + "'");
    static const VarList tvars{"t"};
    Poly p = parse_poly(s.substr(1, s.size() - 2), tvars);
    std::vector<Rational> c(static_cast<std::size_t>(std::max(p.total_degree(), 0)) + 1);
    for (const auto& [m, v] : p.terms()) c[m[0]] = v;
    return CurveClass{UPoly(std::move(c))};
}

json profile_json(const ResidueProfile& p) {
    json out = json::object();
    for (const auto& [d, r] : p.entries) out[d.to_string()] = r.to_string();
    return out;
}

ResidueProfile profile_from(const json& j, SurfaceKind k) {
    ResidueProfile p;
    for (const auto& [key, val] : j.items()) p.entries.emplace(divisor_from(key, k), curve_class_from(val.get<std::string>()));
    return p;
}

json square_class_json(const SquareClass& c) {
    json out = json::array();
    for (const auto& p : c.support) out.push_back(p.to_string());
    return out;
}

SquareClass square_class_from(const json& j, const SurfaceModel& s) {
    SquareClass c;
    for (const auto& p : j) c.support.insert(s.parse(p.get<std::string>()));
    return c;
}

json witness_json(const SimilarityWitness& w) {
    json sq = json::array(), units = json::array();
    for (const auto& p : w.square_factors) sq.push_back(p.to_string());
    for (const auto& u : w.units) units.push_back(u.get_str());
    return {{"scale", w.scale.to_string()},       {"square_factors", sq},
            {"units", units},                      {"permutation", w.permutation},
            {"target", form_json(w.target)},       {"chart_vars", w.chart_vars}};
}

SimilarityWitness witness_from(const json& j, const SurfaceModel& s) {
    const json& sq = field(j, "square_factors");
    const json& units = field(j, "units");
    if (sq.size() != 4 || units.size() != 4) throw DomainError("witness needs four square factors and units");
    std::array<Poly, 4> squares{s.parse(sq[0].get<std::string>()), s.parse(sq[1].get<std::string>()),
                                s.parse(sq[2].get<std::string>()), s.parse(sq[3].get<std::string>())};
    std::array<Rational, 4> u;
    for (std::size_t i = 0; i < 4; ++i) {
        u[i] = Rational(units[i].get<std::string>());
        u[i].canonicalize();
    }
    return SimilarityWitness{parse_ratfn(str(j, "scale"), s.vars()),
                             squares,
                             u,
                             field(j, "permutation").get<Permutation>(),
                             form_from(field(j, "target")),
                             field(j, "chart_vars").get<std::array<std::string, 2>>()};
}

json pirutka_json(const PirutkaReport& r) {
    json entries = json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"divisor", e.divisor.to_string()},
                           {"alpha_residue", e.alpha_residue.to_string()},
                           {"beta_residue", e.beta_residue.to_string()},
                           {"match", e.match},
                           {"hensel", {{"valuation", e.hensel.valuation},
                                       {"square", e.hensel.square},
                                       {"witness", e.hensel.witness}}},
                           {"passed", e.passed},
                           {"error", e.error}});
    return {{"overall", to_string(r.overall)}, {"entries", entries}};
}

PirutkaReport pirutka_from(const json& j, SurfaceKind k) {
    PirutkaReport r;
    const std::string overall = str(j, "overall");
    if (overall == "pass")
        r.overall = PirutkaReport::Overall::Pass;
    else if (overall == "fail")
        r.overall = PirutkaReport::Overall::Fail;
    else if (overall == "inconclusive")
        r.overall = PirutkaReport::Overall::Inconclusive;
    else
        throw DomainError("unknown overall result '" + overall + "'");
    for (const auto& e : field(j, "entries")) {
        const json& h = field(e, "hensel");
        r.entries.push_back(PirutkaEntry{divisor_from(str(e, "divisor"), k),
                                         curve_class_from(str(e, "alpha_residue")),
                                         curve_class_from(str(e, "beta_residue")),
                                         flag(e, "match"),
                                         HenselReport{field(h, "valuation").get<int>(), flag(h, "square"), str(h, "witness")},
                                         flag(e, "passed"),
                                         str(e, "error")});
    }
    return r;
}

}  // namespace

json certificate_to_json(const Certificate& c) {
    const SurfaceModel& s = c.fiber.surface();
    json arason = {{"d_nontrivial", c.arason.d_nontrivial},
                   {"alpha_nonzero", c.arason.alpha_nonzero},
                   {"alpha_nonzero_witness", c.arason.witness ? json(c.arason.witness->to_string()) : json(nullptr)},
                   {"reason", c.arason.reason}};
    return {
        {"schema", c.schema},
        {"engine", c.engine},
        {"base_fact", c.base_fact},
        {"surface", s.tag()},
        {"input_type", c.input_type.to_string()},
        {"rule", to_string(c.rule)},
        {"degeneration", form_json(c.degeneration)},
        {"weak_bundle_check", {{"weak_bundle", c.weak_bundle}, {"gcd", c.gcd.to_string()}}},
        {"fiber", form_json(c.fiber)},
        {"similarity", witness_json(c.similarity)},
        {"discriminant", square_class_json(c.discriminant)},
        {"alpha", class_json(c.alpha)},
        {"alpha_residues", profile_json(c.alpha_residues)},
        {"clifford", class_json(c.clifford)},
        {"pirutka_report", pirutka_json(c.pirutka)},
        {"arason", arason},
        {"conclusion", c.conclusion},
    };
}

Certificate certificate_from_json(const json& j) {
    try {
        if (str(j, "schema") != kCertSchema) throw DomainError("unsupported schema '" + str(j, "schema") + "'");
        const SurfaceKind k = kind_from_tag(str(j, "surface"));
        const SurfaceModel& s = SurfaceModel::of(k);
        BundleType t = parse_type(str(j, "input_type"));
        if (t.kind != k) throw DomainError("input_type does not match the surface");
        const json& wb = field(j, "weak_bundle_check");
        const json& ar = field(j, "arason");
        ArasonResult arason{flag(ar, "d_nontrivial"), flag(ar, "alpha_nonzero"), std::nullopt, str(ar, "reason")};
        if (!field(ar, "alpha_nonzero_witness").is_null())
            arason.witness = divisor_from(str(ar, "alpha_nonzero_witness"), k);
        return Certificate{
            .schema = str(j, "schema"),
            .engine = str(j, "engine"),
            .base_fact = str(j, "base_fact"),
            .input_type = t,
            .rule = parse_rule(str(j, "rule")),
            .degeneration = form_from(field(j, "degeneration")),
            .weak_bundle = flag(wb, "weak_bundle"),
            .gcd = s.parse(str(wb, "gcd")),
            .fiber = form_from(field(j, "fiber")),
            .similarity = witness_from(field(j, "similarity"), s),
            .discriminant = square_class_from(field(j, "discriminant"), s),
            .alpha = class_from(field(j, "alpha"), s.vars()),
            .alpha_residues = profile_from(field(j, "alpha_residues"), k),
            .clifford = class_from(field(j, "clifford"), s.vars()),
            .pirutka = pirutka_from(field(j, "pirutka_report"), k),
            .arason = arason,
            .conclusion = field(j, "conclusion").get<std::vector<std::string>>(),
        };
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed certificate: ") + e.what());
    }
}

std::string emit_certificate(const Certificate& c) { return certificate_to_json(c).dump(); }

Certificate parse_certificate(std::string_view text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw DomainError("certificate is not valid JSON");
    return certificate_from_json(j);
}

json verdict_to_json(const Verdict& v) {
    json out = {{"surface", SurfaceModel::of(v.type.kind).tag()},
                {"type", v.type.to_string()},
                {"verdict", to_string(v.outcome)},
                {"reason", to_string(v.rule)},
                {"notes", v.notes}};
    if (v.certificate) out["certificate"] = certificate_to_json(*v.certificate);
    return out;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string certificate_digest(const Certificate& c) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(emit_certificate(c))));
    return buf;
}

}  // namespace quadrica
