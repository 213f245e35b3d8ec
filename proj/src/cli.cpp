#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "brambles.hpp"
#include "duality.hpp"
#include "limits.hpp"

using nlohmann::json;

namespace seps {
namespace {

constexpr int kCertVersion = 1;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---- JSON encoding. Vertex sets serialize as sorted index arrays. ----

json j_vset(VSet s) {
    json a = json::array();
    for (int v : vs_list(s)) a.push_back(v);
    return a;
}

VSet parse_vset(const json& a, int n) {
    if (!a.is_array()) throw std::runtime_error("vertex set is not an array");
    VSet out = 0;
    for (const auto& x : a) {
        if (!x.is_number_integer()) throw std::runtime_error("non-integer vertex");
        long long v = x.get<long long>();
        if (v < 0 || v >= n) throw std::runtime_error("vertex index out of range");
        out |= vs_bit(static_cast<int>(v));
    }
    return out;
}

json j_osep(const OSep& s) { return json{{"A", j_vset(s.A)}, {"B", j_vset(s.B)}}; }

OSep parse_osep(const json& j, int n) {
    return {parse_vset(j.at("A"), n), parse_vset(j.at("B"), n)};
}

json j_orientation(const Orientation& t) {
    json a = json::array();
    for (const OSep& s : t.elements()) a.push_back(j_osep(s));
    return a;
}

json j_stree(const STree& st) {
    json edges = json::array(), alpha = json::array();
    for (auto [u, v] : st.edges) {
        edges.push_back(json::array({u, v}));
        alpha.push_back(j_osep(st.alpha.at({u, v})));  // points towards v
    }
    return json{{"nodes", st.nodes}, {"edges", edges}, {"alpha", alpha}};
}

STree parse_stree(const json& j, int n) {
    STree st;
    st.nodes = j.at("nodes").get<int>();
    if (st.nodes < 1 || st.nodes > 100000) throw std::runtime_error("bad node count");
    const json& es = j.at("edges");
    const json& al = j.at("alpha");
    if (es.size() != al.size()) throw std::runtime_error("edge/alpha size mismatch");
    for (std::size_t i = 0; i < es.size(); ++i) {
        int u = es[i].at(0).get<int>(), v = es[i].at(1).get<int>();
        if (u < 0 || v < 0 || u >= st.nodes || v >= st.nodes || u == v)
            throw std::runtime_error("bad tree edge");
        st.edges.push_back({u, v});
        OSep s = parse_osep(al[i], n);
        st.alpha[{u, v}] = s;
        st.alpha[{v, u}] = s.reversed();
    }
    return st;
}

json j_td(const TreeDec& td) {
    json bags = json::array(), edges = json::array();
    for (VSet b : td.bags) bags.push_back(j_vset(b));
    for (auto [u, v] : td.edges) edges.push_back(json::array({u, v}));
    return json{{"nodes", td.nodes}, {"edges", edges}, {"bags", bags}};
}

TreeDec parse_td(const json& j, int n) {
    TreeDec td;
    td.nodes = j.at("nodes").get<int>();
    if (td.nodes < 1 || td.nodes > 100000) throw std::runtime_error("bad node count");
    const json& bags = j.at("bags");
    if (static_cast<int>(bags.size()) != td.nodes)
        throw std::runtime_error("bag count does not match node count");
    td.bags.clear();
    for (const auto& b : bags) td.bags.push_back(parse_vset(b, n));
    for (const auto& e : j.at("edges")) {
        int u = e.at(0).get<int>(), v = e.at(1).get<int>();
        if (u < 0 || v < 0 || u >= td.nodes || v >= td.nodes || u == v)
            throw std::runtime_error("bad tree edge");
        td.edges.push_back({u, v});
    }
    return td;
}

// ---- Certificate envelope ----

std::string payload_checksum(const json& payload) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a over the compact dump
    for (unsigned char c : payload.dump()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json make_cert(const std::string& kind, int k, const std::string& family,
               std::uint64_t ghash, json payload) {
    return json{{"version", kCertVersion},
                {"kind", kind},
                {"params", json{{"k", k}, {"family", family}, {"graph", ghash}}},
                {"checksum", payload_checksum(payload)},
                {"payload", std::move(payload)}};
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << "\n"; }

// ---- Families ----

FamilySpec family_from_name(const std::string& name, int k,
                            const std::vector<std::vector<OSep>>* custom) {
    if (name == "tstar") return FamilySpec::tk_star(k);
    if (name == "uk" || name == "ustar") return FamilySpec::uk(k);
    if (name == "tk") return FamilySpec::tk(k);
    if (name == "custom") {
        if (!custom) throw UsageError("family 'custom' requires --stars FILE");
        return FamilySpec::explicit_list(k, *custom);
    }
    throw UsageError("unknown family '" + name + "' (tstar, uk, tk, custom)");
}

// Star list file: one member set per line; '-' is the empty set; elements are
// whitespace-separated tokens "a1,a2|b1,b2" (either side may be empty).
std::vector<std::vector<OSep>> parse_star_file(const std::string& text, int n) {
    auto parse_side = [&](const std::string& s) {
        VSet out = 0;
        std::istringstream in(s);
        std::string item;
        while (std::getline(in, item, ',')) {
            if (item.empty()) continue;
            int v = std::stoi(item);
            if (v < 0 || v >= n) throw std::runtime_error("vertex index out of range");
            out |= vs_bit(v);
        }
        return out;
    };
    std::vector<std::vector<OSep>> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        std::vector<OSep> set;
        bool empty_marker = false, any = false;
        while (ls >> tok) {
            any = true;
            if (tok == "#") break;
            if (tok == "-") {
                empty_marker = true;
                continue;
            }
            auto bar = tok.find('|');
            if (bar == std::string::npos)
                throw std::runtime_error("star element '" + tok + "' lacks '|'");
            set.push_back({parse_side(tok.substr(0, bar)), parse_side(tok.substr(bar + 1))});
        }
        if (!any) continue;
        if (empty_marker && !set.empty())
            throw std::runtime_error("'-' mixes with elements on one line");
        out.push_back(std::move(set));
    }
    if (out.empty()) throw std::runtime_error("star file lists no sets");
    return out;
}

json j_family_sets(const std::vector<std::vector<OSep>>& sets) {
    json out = json::array();
    for (const auto& set : sets) {
        json js = json::array();
        for (const OSep& s : set) js.push_back(j_osep(s));
        out.push_back(js);
    }
    return out;
}

std::vector<std::vector<OSep>> parse_family_sets(const json& j, int n) {
    std::vector<std::vector<OSep>> out;
    for (const auto& js : j) {
        std::vector<OSep> set;
        for (const auto& e : js) set.push_back(parse_osep(e, n));
        out.push_back(std::move(set));
    }
    return out;
}

// ---- Truncation families ("grid:3", "rayclique:5", "edgeless", "fourcolumns") ----

FamilyDescriptor parse_family_descriptor(const std::string& s) {
    std::string head = s, arg;
    if (auto c = s.find(':'); c != std::string::npos) {
        head = s.substr(0, c);
        arg = s.substr(c + 1);
    }
    auto num = [&](int dflt) {
        if (arg.empty()) return dflt;
        int v = std::stoi(arg);
        if (v < 1 || v > 8) throw UsageError("family parameter out of range");
        return v;
    };
    if (head == "grid") return FamilyDescriptor::grid(num(3));
    if (head == "rayclique") return FamilyDescriptor::ray_clique(num(5));
    if (head == "edgeless") return FamilyDescriptor::edgeless();
    if (head == "fourcolumns") return FamilyDescriptor::four_columns();
    throw UsageError("unknown truncation family '" + s +
                     "' (grid:R, rayclique:C, edgeless, fourcolumns)");
}

std::string descriptor_string(const FamilyDescriptor& fam) {
    switch (fam.kind) {
        case FamilyDescriptor::Kind::Grid: return "grid:" + std::to_string(fam.rows);
        case FamilyDescriptor::Kind::RayClique:
            return "rayclique:" + std::to_string(fam.clique);
        case FamilyDescriptor::Kind::Edgeless: return "edgeless";
        case FamilyDescriptor::Kind::FourColumns: return "fourcolumns";
    }
    return "?";
}

// ---- Deterministic report payloads (rebuilt verbatim by the verifier) ----

json separations_payload(const Graph& g, int k, const std::string& family,
                         const FamilySpec* F, long long budget) {
    SepSystem sys = enumerate_system(g, k);
    json list = json::array();
    for (const OSep& m : sys.members())
        list.push_back(json{{"A", j_vset(m.A)}, {"B", j_vset(m.B)}, {"order", m.order()}});
    json p{{"report", "separations"}, {"count", sys.size()}, {"separations", list}};
    if (F) {
        auto rep = check_f_separable(sys, *F, budget);
        p["family"] = family;
        p["separability"] =
            json{{"budget", budget},        {"pairs", rep.pairs},
                 {"skipped", rep.skipped},  {"checked", rep.checked},
                 {"failures", static_cast<int>(rep.failures.size())}};
    }
    return p;
}

json limits_payload(const FamilyDescriptor& fam, int n, int k) {
    TruncatedGraph t = truncate(fam, n);
    json p{{"report", "limits"},
           {"family", descriptor_string(fam)},
           {"n", n},
           {"k", k},
           {"graph", json{{"n", t.graph.n()}, {"m", t.graph.m()}}},
           {"boundary", j_vset(t.boundary)}};
    if (fam.kind == FamilyDescriptor::Kind::Edgeless) {
        if (k <= 1) p["tangle_count"] = edgeless_tangle_count(n, 1);
        return p;
    }
    EndDegreeProxy prox = end_degree_proxy(fam, n, k);
    p["proxy"] = json{{"k", prox.k},
                      {"disjoint_paths", prox.disjoint_paths},
                      {"oriented", prox.oriented},
                      {"consistent", prox.consistent},
                      {"avoids_tk", prox.avoids_tk}};
    auto seq = builtin_sequence(fam, n);
    auto rep = sequence_report(fam, n, seq);
    p["sequence"] = json{{"labels", static_cast<int>(seq.size())},
                         {"orders", rep.orders},
                         {"increasing", rep.strictly_increasing},
                         {"core", j_vset(rep.big_side_core)}};
    return p;
}

// ---- Subcommand handlers ----

struct Opts {
    std::string graph_path, format = "auto";
    std::string family, stars_path;
    int k = 0, limit = 16, jobs = 1;
    long long budget = 0;
    std::string fam_str;  // limits
    int trunc_n = 1;
    std::string cert_path, verify_graph;  // verify
};

Graph load(const Opts& o) { return load_graph(slurp(o.graph_path), o.format); }

// Builds the forbidden family; fills sets/embedded json for 'custom'.
FamilySpec resolve_family(const Opts& o, int n, json* custom_json) {
    if (o.family == "custom") {
        if (o.stars_path.empty())
            throw UsageError("family 'custom' requires --stars FILE");
        auto sets = parse_star_file(slurp(o.stars_path), n);
        if (custom_json) *custom_json = j_family_sets(sets);
        return FamilySpec::explicit_list(o.k, sets);
    }
    return family_from_name(o.family, o.k, nullptr);
}

int cmd_separations(const Opts& o, std::ostream& out) {
    Graph g = load(o);
    json payload;
    if (!o.family.empty()) {
        json custom;
        FamilySpec F = resolve_family(o, g.n(), &custom);
        payload = separations_payload(g, o.k, o.family, &F, o.budget);
        if (!custom.is_null()) payload["family_sets"] = custom;
    } else {
        payload = separations_payload(g, o.k, "", nullptr, 0);
    }
    emit(out, make_cert("report", o.k, o.family, graph_hash(g), payload));
    return 0;
}

int cmd_tangles(const Opts& o, std::ostream& out) {
    Graph g = load(o);
    json custom;
    FamilySpec F = resolve_family(o, g.n(), &custom);
    SepSystem sys = enumerate_system(g, o.k);
    auto tangles = find_f_tangles(sys, F, o.limit);
    json list = json::array();
    for (const Orientation& t : tangles) list.push_back(j_orientation(t));
    json payload{{"count", static_cast<int>(tangles.size())},
                 {"limit", o.limit},
                 {"tangles", list}};
    if (!custom.is_null()) payload["family_sets"] = custom;
    emit(out, make_cert("tangle", o.k, o.family, graph_hash(g), payload));
    return 0;
}

int cmd_duality(const Opts& o, std::ostream& out) {
    Graph g = load(o);
    json custom;
    FamilySpec F = resolve_family(o, g.n(), &custom);
    DualityCertificate d = duality(g, o.k, F);
    json payload;
    std::string kind;
    if (d.verdict == DualityCertificate::Verdict::Tangle) {
        kind = "tangle";
        payload = json{{"verdict", "tangle"},
                       {"count", 1},
                       {"tangles", json::array({j_orientation(d.tangle())})}};
    } else {
        kind = "stree";
        payload = json{{"verdict", "stree"}, {"stree", j_stree(d.stree)}};
    }
    if (!custom.is_null()) payload["family_sets"] = custom;
    emit(out, make_cert(kind, o.k, o.family, graph_hash(g), payload));
    return 0;
}

int cmd_treewidth(const Opts& o, std::ostream& out) {
    Graph g = load(o);
    TwResult tw = exact_treewidth(g);
    json payload{{"exact", true}, {"width", tw.tw}, {"td", j_td(tw.td)}};
    emit(out, make_cert("td", 0, "", graph_hash(g), payload));
    return 0;
}

int cmd_bramble(const Opts& o, std::ostream& out, std::ostream& err) {
    Graph g = load(o);
    Bramble w;
    if (!exists_bramble_of_order(g, o.k, &w)) {
        err << "no bramble of order " << o.k << " exists\n";
        return 1;
    }
    BrambleCheck c = bramble_order(g, w);
    json elems = json::array();
    for (VSet e : w.elements) elems.push_back(j_vset(e));
    json payload{{"order", c.order}, {"elements", elems}};
    emit(out, make_cert("bramble", o.k, "", graph_hash(g), payload));
    return 0;
}

int cmd_refine(const Opts& o, std::ostream& out, std::ostream& err) {
    Graph g = load(o);
    json custom;
    FamilySpec F = resolve_family(o, g.n(), &custom);
    TreeOfTangles tot = build_tree_of_tangles(g, o.k);
    RefineToTResult r = refine_tree_of_tangles(g, o.k, F, tot.td);
    if (r.refused) {
        err << r.reason << "\n";
        return 1;
    }
    TDCheck c = validate_td(g, r.td);
    json payload{{"exact", false},
                 {"width", c.classic_width},
                 {"td", j_td(r.td)},
                 {"tangles", tot.count()}};
    if (!custom.is_null()) payload["family_sets"] = custom;
    emit(out, make_cert("td", o.k, o.family, graph_hash(g), payload));
    return 0;
}

int cmd_limits(const Opts& o, std::ostream& out) {
    FamilyDescriptor fam = parse_family_descriptor(o.fam_str);
    json payload = limits_payload(fam, o.trunc_n, o.k);
    std::uint64_t h = graph_hash(truncate(fam, o.trunc_n).graph);
    emit(out, make_cert("report", o.k, "", h, payload));
    return 0;
}

// ---- Independent verification: everything re-derived from the graph ----

int cmd_verify(const Opts& o, std::ostream& out, std::ostream& err) {
    json cert = json::parse(slurp(o.cert_path));
    auto fail = [&](const std::string& clause) {
        err << "verification failed: " << clause << "\n";
        return 1;
    };
    if (cert.at("version").get<int>() != kCertVersion)
        return fail("unsupported certificate version");
    const json& payload = cert.at("payload");
    if (cert.at("checksum").get<std::string>() != payload_checksum(payload))
        return fail("payload checksum mismatch");
    std::string kind = cert.at("kind").get<std::string>();
    const json& params = cert.at("params");
    int k = params.at("k").get<int>();
    std::string family = params.at("family").get<std::string>();
    std::uint64_t ghash = params.at("graph").get<std::uint64_t>();

    bool limits_report = kind == "report" && payload.at("report") == "limits";
    std::optional<Graph> g;
    if (!o.verify_graph.empty()) g = load_graph(slurp(o.verify_graph), o.format);
    if (!limits_report) {
        if (!g) throw UsageError("this certificate kind requires the graph");
        if (graph_hash(*g) != ghash) return fail("graph hash mismatch");
    }

    auto build_f = [&]() {
        if (family == "custom")
            return FamilySpec::explicit_list(
                k, parse_family_sets(payload.at("family_sets"), g->n()));
        return family_from_name(family, k, nullptr);
    };

    if (kind == "tangle") {
        FamilySpec F = build_f();
        SepSystem sys = enumerate_system(*g, k);
        const json& list = payload.at("tangles");
        if (payload.at("count").get<int>() != static_cast<int>(list.size()))
            return fail("tangle count does not match the list");
        for (const auto& jt : list) {
            if (static_cast<int>(jt.size()) != sys.size())
                return fail("orientation does not cover the whole system");
            std::vector<std::uint8_t> side(sys.size(), 2);
            for (const auto& je : jt) {
                int oid = sys.oid_of(parse_osep(je, g->n()));
                if (oid < 0) return fail("element is not a separation of order < k");
                if (side[oid >> 1] != 2) return fail("member oriented twice");
                side[oid >> 1] = static_cast<std::uint8_t>(oid & 1);
            }
            Orientation t{&sys, side};
            if (!is_consistent(t)) return fail("orientation is not consistent");
            if (!avoids_family(t, F)) return fail("orientation contains a forbidden set");
        }
        out << json{{"verified", true}, {"kind", kind}}.dump(2) << "\n";
        return 0;
    }
    if (kind == "stree") {
        FamilySpec F = build_f();
        STree st = parse_stree(payload.at("stree"), g->n());
        STreeCheck c = validate_stree(*g, st, F);
        if (!c.valid) return fail("tree shape/separations: " + c.error);
        if (!c.over_f) return fail("some node star is outside the family");
        out << json{{"verified", true}, {"kind", kind}}.dump(2) << "\n";
        return 0;
    }
    if (kind == "td") {
        TreeDec td = parse_td(payload.at("td"), g->n());
        int width = payload.at("width").get<int>();
        TDCheck c = validate_td(*g, td);
        if (!c.valid) return fail("decomposition: " + c.error);
        if (c.classic_width != width) return fail("claimed width is wrong");
        if (payload.at("exact").get<bool>() && exact_treewidth(*g).tw != width)
            return fail("claimed treewidth is not exact");
        out << json{{"verified", true}, {"kind", kind}}.dump(2) << "\n";
        return 0;
    }
    if (kind == "bramble") {
        Bramble b;
        for (const auto& e : payload.at("elements"))
            b.elements.push_back(parse_vset(e, g->n()));
        BrambleCheck c = bramble_order(*g, b);
        if (!c.valid) return fail("bramble: " + c.reason);
        if (c.order != payload.at("order").get<int>())
            return fail("claimed bramble order is wrong");
        if (c.order < k) return fail("bramble order below k");
        out << json{{"verified", true}, {"kind", kind}}.dump(2) << "\n";
        return 0;
    }
    if (kind == "report") {
        json fresh;
        if (limits_report) {
            FamilyDescriptor fam =
                parse_family_descriptor(payload.at("family").get<std::string>());
            int n = payload.at("n").get<int>();
            fresh = limits_payload(fam, n, payload.at("k").get<int>());
            if (graph_hash(truncate(fam, n).graph) != ghash)
                return fail("graph hash mismatch");
        } else if (payload.at("report") == "separations") {
            if (payload.contains("family")) {
                FamilySpec F = build_f();
                fresh = separations_payload(
                    *g, k, payload.at("family").get<std::string>(), &F,
                    payload.at("separability").at("budget").get<long long>());
                if (payload.contains("family_sets"))
                    fresh["family_sets"] = payload.at("family_sets");
            } else {
                fresh = separations_payload(*g, k, "", nullptr, 0);
            }
        } else {
            return fail("unknown report type");
        }
        if (fresh != payload) return fail("recomputed report differs");
        out << json{{"verified", true}, {"kind", kind}}.dump(2) << "\n";
        return 0;
    }
    return fail("unknown certificate kind '" + kind + "'");
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (std::getenv("TANGLEFORGE_SEED")) {
        err << "TANGLEFORGE_SEED is set, but nothing here is randomized; unset it\n";
        return 2;
    }

    CLI::App app{"tangle / tree duality toolkit"};
    app.require_subcommand(1);
    Opts o;

    auto add_graph = [&](CLI::App* s) {
        s->add_option("graph", o.graph_path, "graph file (edge list or graph6)")
            ->required();
        s->add_option("--format", o.format, "edgelist|graph6|auto")
            ->check(CLI::IsMember({"auto", "edgelist", "graph6"}));
        s->add_option("--jobs", o.jobs, "worker count (output is unaffected)");
    };
    auto add_family = [&](CLI::App* s, bool required) {
        auto* opt = s->add_option("--family", o.family, "tstar|uk|tk|custom");
        if (required) opt->required();
        s->add_option("--stars", o.stars_path, "star list file for --family custom");
    };

    auto* c_sep = app.add_subcommand("separations", "list the separations of order < k");
    add_graph(c_sep);
    c_sep->add_option("--k", o.k, "order bound")->required();
    add_family(c_sep, false);
    c_sep->add_option("--budget", o.budget, "separability pair budget (0 = all)");

    auto* c_tan = app.add_subcommand("tangles", "enumerate avoiding orientations");
    add_graph(c_tan);
    c_tan->add_option("--k", o.k)->required();
    add_family(c_tan, true);
    c_tan->add_option("--limit", o.limit, "maximum number reported");

    auto* c_dua = app.add_subcommand("duality", "tangle / tree exactness certificate");
    add_graph(c_dua);
    c_dua->add_option("--k", o.k)->required();
    add_family(c_dua, true);

    auto* c_tw = app.add_subcommand("treewidth", "exact treewidth with a witness");
    add_graph(c_tw);

    auto* c_br = app.add_subcommand("bramble", "search a bramble of order >= k");
    add_graph(c_br);
    c_br->add_option("--k", o.k)->required();

    auto* c_ref = app.add_subcommand("refine", "refined tangle-distinguishing tree");
    add_graph(c_ref);
    c_ref->add_option("--k", o.k)->required();
    o.family = "tstar";
    add_family(c_ref, false);

    auto* c_lim = app.add_subcommand("limits", "truncation family report");
    c_lim->add_option("family", o.fam_str,
                      "grid:R | rayclique:C | edgeless | fourcolumns")
        ->required();
    c_lim->add_option("n", o.trunc_n, "truncation level")->required();
    c_lim->add_option("--k", o.k, "proxy order (0 = declared degree + 1)");
    c_lim->add_option("--jobs", o.jobs);

    auto* c_ver = app.add_subcommand("verify", "re-check a certificate from scratch");
    c_ver->add_option("certificate", o.cert_path)->required();
    c_ver->add_option("graph", o.verify_graph, "the graph the certificate is about");
    c_ver->add_option("--format", o.format)
        ->check(CLI::IsMember({"auto", "edgelist", "graph6"}));
    c_ver->add_option("--jobs", o.jobs);

    std::vector<const char*> argv;
    argv.push_back("tangleforge");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(c_sep)) return cmd_separations(o, out);
        if (app.got_subcommand(c_tan)) return cmd_tangles(o, out);
        if (app.got_subcommand(c_dua)) return cmd_duality(o, out);
        if (app.got_subcommand(c_tw)) return cmd_treewidth(o, out);
        if (app.got_subcommand(c_br)) return cmd_bramble(o, out, err);
        if (app.got_subcommand(c_ref)) return cmd_refine(o, out, err);
        if (app.got_subcommand(c_lim)) return cmd_limits(o, out);
        if (app.got_subcommand(c_ver)) return cmd_verify(o, out, err);
        err << "no subcommand\n";
        return 2;
    } catch (const UsageError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const soundness_error& e) {
        err << "soundness failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 1;
    }
}

int cli_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cli_run(args, out, err);
}

}  // namespace seps
