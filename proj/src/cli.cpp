#include "quadrica/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "quadrica/certificate_json.hpp"
#include "quadrica/certify.hpp"
#include "quadrica/error.hpp"
#include "quadrica/quadform.hpp"

namespace quadrica::cli {

using nlohmann::json;

namespace {

SurfaceKind surface_kind(const std::string& s) { return s == "p2" ? SurfaceKind::P2 : SurfaceKind::P1xP1; }

// Splits at '+' outside parentheses.
std::vector<std::string> split_top_level(const std::string& s, char sep) {
    std::vector<std::string> out(1);
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0)
            out.emplace_back();
        else
            out.back() += c;
    }
    return out;
}

BrauerClass parse_alpha(const std::string& text, const SurfaceModel& s) {
    BrauerClass u;
    if (text.empty()) return u;
    for (const auto& part : split_top_level(text, '+')) {
        auto bar = part.find('|');
        if (bar == std::string::npos || part.find('|', bar + 1) != std::string::npos)
            throw DomainError("symbol '" + part + "' must have the form a|b");
        u.toggle(parse_ratfn(part.substr(0, bar), s.vars()), parse_ratfn(part.substr(bar + 1), s.vars()));
    }
    return u;
}

json profile_json(const ResidueProfile& p) {
    json out = json::object();
    for (const auto& [d, r] : p.entries) out[d.to_string()] = r.to_string();
    return out;
}

void print_profile(std::ostream& out, const char* title, const ResidueProfile& p) {
    out << title << ":";
    if (p.empty()) out << " none";
    out << "\n";
    for (const auto& [d, r] : p.entries) out << "  " << d.to_string() << ": " << r.to_string() << "\n";
}

int cmd_invariants(const std::string& surface, const std::string& entries, bool homogeneous,
                   const std::string& alpha_text, bool as_json, std::ostream& out) {
    const SurfaceKind k = surface_kind(surface);
    const SurfaceModel& s = SurfaceModel::of(k);
    DiagForm form = DiagForm::parse(entries, k, !homogeneous);
    BrauerClass alpha = parse_alpha(alpha_text, s);
    DiagForm fiber = generic_fiber(form);
    SquareClass d = discriminant(fiber);
    CliffordReport cl = clifford_invariant(fiber);
    ResidueProfile beta_prof = residue_profile(cl.value, s);
    auto witness = normalize_to_hpt(fiber);
    std::optional<ResidueProfile> alpha_prof;
    if (!alpha.empty()) alpha_prof = residue_profile(alpha, s);

    if (as_json) {
        json j = {{"surface", s.tag()},
                  {"form", form.entry_strings()},
                  {"fiber", fiber.entry_strings()},
                  {"discriminant", d.to_string()},
                  {"clifford", cl.value.to_string()},
                  {"clifford_normalized", cl.normalized.to_string()},
                  {"scale", cl.scale.to_string()},
                  {"normal_form", {{"a", cl.a.to_string()}, {"b", cl.b.to_string()}, {"d", cl.d.to_string()}}},
                  {"clifford_residues", profile_json(beta_prof)},
                  {"similar_to_canonical", witness.has_value()}};
        if (witness) j["similarity_scale"] = witness->scale.to_string();
        if (alpha_prof) {
            j["alpha"] = alpha.to_string();
            j["alpha_residues"] = profile_json(*alpha_prof);
        }
        if (!form.is_affine()) j["type"] = type_of(form).type.to_string();
        out << j.dump(2) << "\n";
        return kExitDecided;
    }
    out << "form: " << form.to_string() << "\n";
    if (!form.is_affine()) out << "type: " << type_of(form).type.to_string() << "\n";
    out << "fiber: " << fiber.to_string() << "\n";
    out << "discriminant: " << d.to_string() << "\n";
    out << "clifford: " << cl.value.to_string() << "\n";
    out << "clifford after scaling by " << cl.scale.to_string() << ": " << cl.normalized.to_string() << "\n";
    out << "normal form: a=" << cl.a.to_string() << " b=" << cl.b.to_string() << " d=" << cl.d.to_string() << "\n";
    print_profile(out, "clifford residues", beta_prof);
    if (witness)
        out << "similar to the canonical form via scale " << witness->scale.to_string() << "\n";
    else
        out << "not similar to the canonical form\n";
    if (alpha_prof) {
        out << "alpha: " << alpha.to_string() << "\n";
        print_profile(out, "alpha residues", *alpha_prof);
    }
    return kExitDecided;
}

BundleType checked_type(const std::string& surface, const std::string& text) {
    BundleType t = parse_type(text);
    if (t.kind != surface_kind(surface))
        throw DomainError("type '" + text + "' does not fit surface " + surface);
    return t;
}

int cmd_certify(const std::string& surface, const std::string& type_text, bool as_json, std::ostream& out) {
    Verdict v = verdict(checked_type(surface, type_text));
    if (as_json) {
        out << verdict_to_json(v).dump(2) << "\n";
    } else {
        out << "type: " << v.type.to_string() << " (" << surface << ")\n";
        out << "verdict: " << to_string(v.outcome) << "\n";
        out << "reason: " << to_string(v.rule) << "\n";
        for (const auto& n : v.notes) out << "note: " << n << "\n";
        if (v.certificate) {
            out << "certificate digest: " << certificate_digest(*v.certificate) << "\n";
            for (const auto& line : v.certificate->conclusion) out << "  " << line << "\n";
        }
    }
    return v.outcome == Outcome::Unknown ? kExitUnknown : kExitDecided;
}

std::vector<BundleType> enumerate_types(SurfaceKind k, int bound) {
    std::vector<BundleType> out;
    std::vector<std::pair<int, int>> pairs;
    for (int d = 0; d <= bound; ++d)
        for (int e = 0; e <= (k == SurfaceKind::P2 ? 0 : bound); ++e) pairs.emplace_back(d, e);
    const std::size_t n = pairs.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b)
            for (std::size_t c = b; c < n; ++c)
                for (std::size_t d = c; d < n; ++d) {
                    BundleType t{k,
                                 {pairs[a].first, pairs[b].first, pairs[c].first, pairs[d].first},
                                 {pairs[a].second, pairs[b].second, pairs[c].second, pairs[d].second}};
                    if (t.parities_ok()) out.push_back(t);
                }
    return out;
}

std::string table_row(const BundleType& t, bool as_json, bool& failed) {
    std::string verdict_s, reason, digest = "-";
    try {
        Verdict v = verdict(t);
        verdict_s = to_string(v.outcome);
        reason = to_string(v.rule);
        if (v.certificate) digest = certificate_digest(*v.certificate);
    } catch (const Error& e) {
        failed = true;
        verdict_s = "Error";
        reason = e.what();
    }
    if (as_json)
        return json{{"type", t.to_string()}, {"verdict", verdict_s}, {"reason", reason}, {"digest", digest}}.dump();
    return t.to_string() + "\t" + verdict_s + "\t" + reason + "\t" + digest;
}

int cmd_table(const std::string& surface, int bound, unsigned jobs, bool as_json, std::ostream& out) {
    if (bound < 0 || bound > kMaxTableBound)
        throw DomainError("bound must lie in [0, " + std::to_string(kMaxTableBound) + "]");
    auto types = enumerate_types(surface_kind(surface), bound);
    std::vector<std::string> rows(types.size());
    std::vector<char> failed(types.size(), 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < types.size();) {
            bool f = false;
            rows[i] = table_row(types[i], as_json, f);
            failed[i] = f;
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(types.size(), 1))));
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (const auto& r : rows) out << r << "\n";
    return std::any_of(failed.begin(), failed.end(), [](char c) { return c != 0; }) ? kExitReplayMismatch
                                                                                      : kExitDecided;
}

int cmd_replay(const std::string& path, std::ostream& out) {
    std::stringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw DomainError("cannot read '" + path + "'");
        buf << in.rdbuf();
    }
    json j = json::parse(buf.str(), nullptr, false);
    if (j.is_discarded()) throw DomainError("input is not valid JSON");
    if (j.is_object() && j.contains("certificate")) j = j["certificate"];
    Certificate c = certificate_from_json(j);
    ReplayResult r = replay(c);
    if (r.ok()) {
        out << "replay ok: " << c.input_type.to_string() << " digest " << certificate_digest(c) << "\n";
        return kExitDecided;
    }
    for (const auto& m : r.mismatches) out << "mismatch: " << m << "\n";
    return kExitReplayMismatch;
}

}  // namespace

unsigned default_jobs() {
    if (const char* env = std::getenv("QUADRICA_JOBS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v <= 1024) return static_cast<unsigned>(v);
    }
    return 1;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stable-irrationality certificates for quadric surface bundles", "quadrica"};
    app.require_subcommand(1);
    const std::vector<std::string> surfaces{"p2", "p1xp1"};

    std::string surface = "p2", entries, alpha, type_text, path = "-";
    bool homogeneous = false, as_json = false;
    int bound = 0;
    unsigned jobs = default_jobs();

    auto* inv = app.add_subcommand("invariants", "Discriminant, Clifford invariant and residues of a diagonal form");
    inv->add_option("--surface", surface, "p2 or p1xp1")->check(CLI::IsMember(surfaces));
    inv->add_option("--entries", entries, "four entries separated by ';'")->required();
    inv->add_flag("--homogeneous", homogeneous, "entries are forms in the surface coordinates");
    inv->add_option("--alpha", alpha, "class as a|b symbols joined by '+'");
    inv->add_flag("--json", as_json, "JSON output");

    auto* cert = app.add_subcommand("certify", "Verdict and certificate for one type");
    cert->add_option("--surface", surface, "p2 or p1xp1")->check(CLI::IsMember(surfaces));
    cert->add_option("--type", type_text, "d0,d1,d2,d3 or d0:e0,...,d3:e3")->required();
    cert->add_flag("--json", as_json, "JSON output");

    auto* table = app.add_subcommand("table", "Verdicts for every ordered type up to a bound");
    table->add_option("--surface", surface, "p2 or p1xp1")->check(CLI::IsMember(surfaces));
    table->add_option("--bound", bound, "largest coordinate")->required();
    table->add_option("--jobs", jobs, "worker threads (default QUADRICA_JOBS or 1)")->check(CLI::Range(1u, 1024u));
    table->add_flag("--json", as_json, "JSON lines");

    auto* rep = app.add_subcommand("replay", "Recompute every check of a stored certificate");
    rep->add_option("--file", path, "certificate or verdict JSON ('-' for stdin)");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitDecided;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    try {
        if (*inv) return cmd_invariants(surface, entries, homogeneous, alpha, as_json, out);
        if (*cert) return cmd_certify(surface, type_text, as_json, out);
        if (*table) return cmd_table(surface, bound, jobs, as_json, out);
        if (*rep) return cmd_replay(path, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const UnsupportedError& e) {
        err << "unsupported: " << e.what() << "\n";
        return kExitUnknown;
    } catch (const Error& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitReplayMismatch;
    }
    return kExitInputError;
}

}  // namespace quadrica::cli
