#include "symdiv/io.hpp"

#include <fstream>
#include <sstream>

namespace symdiv {

namespace {

std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string idx(const std::string& path, size_t i) { return path + "[" + std::to_string(i) + "]"; }

const Json& need(const Json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw ParseError(path.empty() ? "(root)" : path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(at(path, key), "missing");
    return *it;
}

const Json& need_array(const Json& j, const std::string& path) {
    if (!j.is_array()) throw ParseError(path, "expected an array");
    return j;
}

std::string get_string(const Json& j, const std::string& path) {
    if (!j.is_string()) throw ParseError(path, "expected a string");
    return j.get<std::string>();
}

int64_t get_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
    return j.get<int64_t>();
}

bool get_bool(const Json& j, const std::string& path) {
    if (!j.is_boolean()) throw ParseError(path, "expected a boolean");
    return j.get<bool>();
}

Json rational_json(const Rational& r) { return to_string(r); }

Rational get_rational(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(j.get<int64_t>());
    if (!j.is_string()) throw ParseError(path, "expected a rational string \"p/q\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(path, e.what());
    }
}

std::vector<Rational> get_rationals(const Json& j, const std::string& path) {
    need_array(j, path);
    std::vector<Rational> out;
    for (size_t i = 0; i < j.size(); ++i) out.push_back(get_rational(j[i], idx(path, i)));
    return out;
}

Json rationals_json(const std::vector<Rational>& v) {
    Json j = Json::array();
    for (const auto& r : v) j.push_back(rational_json(r));
    return j;
}

std::vector<std::string> get_strings(const Json& j, const std::string& path) {
    need_array(j, path);
    std::vector<std::string> out;
    for (size_t i = 0; i < j.size(); ++i) out.push_back(get_string(j[i], idx(path, i)));
    return out;
}

std::vector<int64_t> get_ints(const Json& j, const std::string& path) {
    need_array(j, path);
    std::vector<int64_t> out;
    for (size_t i = 0; i < j.size(); ++i) out.push_back(get_int(j[i], idx(path, i)));
    return out;
}

Json class_json(const HomologyClass& c) { return c.coeffs(); }

HomologyClass get_class(const Ambient& amb, const Json& j, const std::string& path) {
    if (j.is_string()) {
        try {
            return parse_class(amb, j.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ParseError(path, e.what());
        }
    }
    auto v = get_ints(j, path);
    if (static_cast<int>(v.size()) != amb.rank())
        throw ParseError(path, "expected " + std::to_string(amb.rank()) + " coefficients, got " + std::to_string(v.size()));
    return HomologyClass(amb, std::move(v));
}

}  // namespace

Json ambient_to_json(const Ambient& amb) {
    Json j;
    j["kind"] = kind_name(amb.kind());
    if (amb.is_ruled()) j["g"] = amb.base_genus();
    if (amb.kind() == AmbientKind::RationalBlowup || amb.kind() == AmbientKind::RuledTrivial)
        j["labels"] = amb.exceptional_labels();
    return j;
}

Ambient ambient_from_json(const Json& j, const std::string& path) {
    const std::string kind = get_string(need(j, "kind", path), at(path, "kind"));
    auto labels = [&]() -> std::vector<std::string> {
        if (j.contains("labels")) return get_strings(j["labels"], at(path, "labels"));
        if (j.contains("n")) {
            int64_t n = get_int(j["n"], at(path, "n"));
            if (n < 0 || n > 10000) throw ParseError(at(path, "n"), "out of range");
            std::vector<std::string> out;
            for (int64_t i = 1; i <= n; ++i) out.push_back("E" + std::to_string(i));
            return out;
        }
        throw ParseError(at(path, "labels"), "missing (give labels or n)");
    };
    auto genus = [&]() {
        int64_t g = get_int(need(j, "g", path), at(path, "g"));
        if (g < 1 || g > 1000000) throw ParseError(at(path, "g"), "base genus must be >= 1");
        return static_cast<int>(g);
    };
    try {
        if (kind == "ProjectivePlane") return Ambient::projective_plane();
        if (kind == "ProductOfSpheres") return Ambient::product_of_spheres();
        if (kind == "RationalBlowup") return Ambient::rational_blowup(labels());
        if (kind == "RuledTrivial") {
            int g = genus();
            return Ambient::ruled_trivial(g, labels());
        }
        if (kind == "RuledTwisted") return Ambient::ruled_twisted(genus());
    } catch (const std::invalid_argument& e) {
        throw ParseError(path, e.what());
    }
    throw ParseError(at(path, "kind"), "unknown ambient kind \"" + kind + "\"");
}

Json areas_to_json(const AreaVector& w) { return rationals_json(w.values()); }

AreaVector areas_from_json(const Ambient& amb, const Json& j, const std::string& path) {
    std::vector<Rational> v;
    if (j.is_object()) {
        for (const auto& [key, val] : j.items())
            if (amb.index_of(key) < 0) throw ParseError(at(path, key), "not a basis label");
        for (const auto& label : amb.basis()) v.push_back(get_rational(need(j, label, path), at(path, label)));
    } else {
        v = get_rationals(j, path);
        if (static_cast<int>(v.size()) != amb.rank())
            throw ParseError(path, "expected " + std::to_string(amb.rank()) + " areas, got " + std::to_string(v.size()));
    }
    return AreaVector(amb, std::move(v));
}

Json config_to_json(const DivisorConfig& config, const AreaVector* w) {
    Json j;
    j["schema"] = kConfigSchema;
    j["ambient"] = ambient_to_json(config.ambient());
    Json comps = Json::array();
    for (const auto& c : config.components())
        comps.push_back({{"id", c.id}, {"class", class_json(c.cls)}, {"text", c.cls.str()}, {"genus", c.genus}});
    j["components"] = comps;
    Json edges = Json::array();
    for (const auto& e : config.edges()) edges.push_back({{"a", e.a}, {"b", e.b}, {"mult", e.mult}});
    j["edges"] = edges;
    if (w) j["areas"] = areas_to_json(*w);
    return j;
}

ConfigDocument config_from_json(const Json& j, const std::string& path) {
    if (j.contains("schema") && j["schema"] != kConfigSchema)
        throw ParseError(at(path, "schema"), "expected " + std::string(kConfigSchema));
    Ambient amb = ambient_from_json(need(j, "ambient", path), at(path, "ambient"));
    DivisorConfig config(amb);
    const std::string cpath = at(path, "components");
    const Json& comps = need_array(need(j, "components", path), cpath);
    for (size_t i = 0; i < comps.size(); ++i) {
        const std::string p = idx(cpath, i);
        Component c{get_string(need(comps[i], "id", p), at(p, "id")),
                    get_class(amb, need(comps[i], "class", p), at(p, "class")), 0};
        if (comps[i].contains("genus")) c.genus = get_int(comps[i]["genus"], at(p, "genus"));
        if (config.index_of(c.id) >= 0) throw ParseError(at(p, "id"), "duplicate id " + c.id);
        config.add_component(std::move(c));
    }
    const std::string epath = at(path, "edges");
    const Json& edges = j.contains("edges") ? need_array(j["edges"], epath) : Json::array();
    for (size_t i = 0; i < edges.size(); ++i) {
        const std::string p = idx(epath, i);
        std::string a, b;
        int64_t mult = 1;
        if (edges[i].is_array()) {
            if (edges[i].size() < 2 || edges[i].size() > 3) throw ParseError(p, "expected [a, b] or [a, b, mult]");
            a = get_string(edges[i][0], idx(p, 0));
            b = get_string(edges[i][1], idx(p, 1));
            if (edges[i].size() == 3) mult = get_int(edges[i][2], idx(p, 2));
        } else {
            a = get_string(need(edges[i], "a", p), at(p, "a"));
            b = get_string(need(edges[i], "b", p), at(p, "b"));
            if (edges[i].contains("mult")) mult = get_int(edges[i]["mult"], at(p, "mult"));
        }
        if (mult < 1 || mult > 1000000) throw ParseError(p, "multiplicity must be positive");
        if (config.index_of(a) < 0) throw ParseError(p, "unknown component " + a);
        if (config.index_of(b) < 0) throw ParseError(p, "unknown component " + b);
        if (a == b) throw ParseError(p, "self-edge on " + a);
        config.add_edge(a, b, static_cast<int>(mult));
    }
    ConfigDocument doc{config, std::nullopt};
    if (j.contains("areas")) doc.areas = areas_from_json(amb, j["areas"], at(path, "areas"));
    return doc;
}

Json checks_to_json(const std::vector<Check>& checks) {
    Json out = Json::array();
    for (const auto& c : checks) out.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return out;
}

namespace {

std::vector<Check> checks_from_json(const Json& j, const std::string& path) {
    need_array(j, path);
    std::vector<Check> out;
    for (size_t i = 0; i < j.size(); ++i) {
        const std::string p = idx(path, i);
        out.push_back({get_string(need(j[i], "name", p), at(p, "name")), get_bool(need(j[i], "pass", p), at(p, "pass")),
                       get_string(need(j[i], "detail", p), at(p, "detail"))});
    }
    return out;
}

Json step_json(const TraceStep& s) {
    const BlowdownResult& m = s.move;
    Json j;
    j["type"] = type_name(m.type);
    j["target"] = class_json(m.target);
    j["target_text"] = m.target.str();
    j["removed_component"] = m.removed_component;
    j["removed_position"] = m.removed_position;
    j["incident"] = m.incident;
    j["ambient_before"] = ambient_to_json(m.embed.to);
    Json imgs = Json::array();
    for (const auto& c : m.embed.images) imgs.push_back(class_json(c));
    j["embed"] = imgs;
    j["reflections"] = m.reflections;
    j["w_before"] = areas_to_json(s.w_before);
    j["w_after"] = areas_to_json(s.w_after);
    j["hypothesis_after"] = s.hypothesis_after;
    j["value_after"] = rational_json(s.value_after);
    j["reason"] = s.reason;
    return j;
}

// Fills everything but the configurations, which are replayed afterwards.
TraceStep step_from_json(const Json& j, const std::string& path, const Ambient& post, const DivisorConfig& scratch) {
    Ambient pre = ambient_from_json(need(j, "ambient_before", path), at(path, "ambient_before"));
    const std::string tname = get_string(need(j, "type", path), at(path, "type"));
    auto type = parse_type(tname);
    if (!type) throw ParseError(at(path, "type"), "unknown blowup type " + tname);
    const std::string ipath = at(path, "embed");
    const Json& imgs = need_array(need(j, "embed", path), ipath);
    if (static_cast<int>(imgs.size()) != post.rank())
        throw ParseError(ipath, "expected " + std::to_string(post.rank()) + " images");
    std::vector<HomologyClass> images;
    for (size_t i = 0; i < imgs.size(); ++i) images.push_back(get_class(pre, imgs[i], idx(ipath, i)));
    BlowdownResult m{scratch,
                     *type,
                     get_class(pre, need(j, "target", path), at(path, "target")),
                     get_string(need(j, "removed_component", path), at(path, "removed_component")),
                     static_cast<int>(get_int(need(j, "removed_position", path), at(path, "removed_position"))),
                     get_strings(need(j, "incident", path), at(path, "incident")),
                     LatticeMap{post, pre, images},
                     static_cast<int>(get_int(need(j, "reflections", path), at(path, "reflections")))};
    TraceStep s{m,
                scratch,
                areas_from_json(pre, need(j, "w_before", path), at(path, "w_before")),
                areas_from_json(post, need(j, "w_after", path), at(path, "w_after")),
                get_bool(need(j, "hypothesis_after", path), at(path, "hypothesis_after")),
                get_rational(need(j, "value_after", path), at(path, "value_after")),
                get_string(need(j, "reason", path), at(path, "reason"))};
    return s;
}

TraceTerminal parse_terminal(const std::string& s, const std::string& path) {
    for (auto t : {TraceTerminal::QuasiMinimalFirstKind, TraceTerminal::QuasiMinimalSecondKind, TraceTerminal::SmallB2,
                   TraceTerminal::MinimalRuled, TraceTerminal::Stuck})
        if (terminal_name(t) == s) return t;
    throw ParseError(path, "unknown terminal " + s);
}

Json config_only(const DivisorConfig& c) {
    Json j = config_to_json(c);
    j.erase("schema");
    return j;
}

}  // namespace

Json certificate_to_json(const AffineRuledCertificate& c) {
    Json j;
    j["schema"] = kCertificateSchema;
    j["verified"] = all_pass(c.checks);
    j["input"] = config_only(c.input);
    j["w"] = areas_to_json(c.w);
    j["hypothesis_value"] = rational_json(c.hypothesis_value);
    Json stages = Json::array();
    for (const auto& s : c.stages) {
        Json steps = Json::array();
        for (const auto& st : s.trace.steps) steps.push_back(step_json(st));
        stages.push_back({{"name", s.name},
                          {"terminal", terminal_name(s.trace.terminal)},
                          {"stuck_reason", s.trace.stuck_reason},
                          {"notes", s.trace.notes},
                          {"steps", steps}});
    }
    j["stages"] = stages;
    j["terminal"] = config_only(c.terminal);
    j["w_terminal"] = areas_to_json(c.w_terminal);
    j["route"] = c.route;
    if (c.model)
        j["model"] = {{"id", c.model->id}, {"k", c.model->k}, {"components", c.model->components}, {"order", c.model->order}};
    else
        j["model"] = nullptr;
    j["chain"] = c.chain;
    j["k"] = c.k;
    j["a"] = c.a;
    j["c"] = c.c;
    j["cusp_config"] = config_only(c.cusp_config);
    j["w_cusp"] = areas_to_json(c.w_cusp);
    j["A"] = class_json(c.A);
    j["A_text"] = c.A.str();
    j["p"] = c.p;
    j["q"] = c.q;
    j["da"] = c.da;
    j["db"] = c.db;
    j["A_input"] = class_json(c.A_input);
    j["A_input_text"] = c.A_input.str();
    j["transported"] = {{"p", c.transported.p}, {"q", c.transported.q}, {"da", c.transported.da}, {"db", c.transported.db}};
    j["A_transported"] = class_json(c.A_transported);
    j["A_transported_text"] = c.A_transported.str();
    j["transport_applies"] = c.transport_applies;
    j["weights"] = c.weights.weights;
    j["resolved"] = config_only(c.resolved);
    j["w_resolved"] = areas_to_json(c.w_resolved);
    j["a_tilde"] = class_json(c.a_tilde);
    j["a_tilde_text"] = c.a_tilde.str();
    j["exceptional_ids"] = c.exceptional_ids;
    Json comb = Json::object();
    for (const auto& [id, v] : c.combination) comb[id] = v;
    j["combination"] = comb;
    j["options"] = {{"coeff_bound", c.options.coeff_bound},
                    {"area_bound", c.options.area_bound ? Json(rational_json(*c.options.area_bound)) : Json(nullptr)}};
    j["checks"] = checks_to_json(c.checks);
    j["assumptions"] = c.assumptions;
    j["interpretations"] = c.interpretations;
    j["notes"] = c.notes;
    return j;
}

AffineRuledCertificate certificate_from_json(const Json& j) {
    if (get_string(need(j, "schema", ""), "schema") != kCertificateSchema)
        throw ParseError("schema", "expected " + std::string(kCertificateSchema));
    DivisorConfig input = config_from_json(need(j, "input", ""), "input").config;
    AffineRuledCertificate c(input, areas_from_json(input.ambient(), need(j, "w", ""), "w"));
    c.hypothesis_value = get_rational(need(j, "hypothesis_value", ""), "hypothesis_value");
    c.terminal = config_from_json(need(j, "terminal", ""), "terminal").config;
    c.w_terminal = areas_from_json(c.terminal.ambient(), need(j, "w_terminal", ""), "w_terminal");

    // Stages are parsed back to front so each step knows its post lattice.
    const Json& stages = need_array(need(j, "stages", ""), "stages");
    c.stages.resize(stages.size());
    DivisorConfig cur = c.terminal;
    for (size_t si = stages.size(); si-- > 0;) {
        const std::string sp = idx("stages", si);
        Stage& stage = c.stages[si];
        stage.name = get_string(need(stages[si], "name", sp), at(sp, "name"));
        stage.trace.terminal = parse_terminal(get_string(need(stages[si], "terminal", sp), at(sp, "terminal")),
                                              at(sp, "terminal"));
        stage.trace.stuck_reason = get_string(need(stages[si], "stuck_reason", sp), at(sp, "stuck_reason"));
        stage.trace.notes = get_strings(need(stages[si], "notes", sp), at(sp, "notes"));
        const std::string stp = at(sp, "steps");
        const Json& steps = need_array(need(stages[si], "steps", sp), stp);
        std::vector<TraceStep> parsed;
        for (size_t ti = steps.size(); ti-- > 0;) {
            const std::string p = idx(stp, ti);
            TraceStep st = step_from_json(steps[ti], p, cur.ambient(), cur);
            st.move.config = cur;
            try {
                st.before = replay_blowdown(cur, st.move);
            } catch (const std::exception& e) {
                throw ParseError(p, std::string("replay failed: ") + e.what());
            }
            cur = st.before;
            parsed.push_back(std::move(st));
        }
        stage.trace.steps.assign(parsed.rbegin(), parsed.rend());
    }

    c.route = get_string(need(j, "route", ""), "route");
    if (!need(j, "model", "").is_null()) {
        const Json& m = j["model"];
        c.model = MinimalModelTag{get_string(need(m, "id", "model"), "model.id"), get_int(need(m, "k", "model"), "model.k"),
                                  static_cast<int>(get_int(need(m, "components", "model"), "model.components")),
                                  get_strings(need(m, "order", "model"), "model.order")};
    }
    c.chain = get_strings(need(j, "chain", ""), "chain");
    c.k = static_cast<int>(get_int(need(j, "k", ""), "k"));
    c.a = get_ints(need(j, "a", ""), "a");
    c.c = get_ints(need(j, "c", ""), "c");
    c.cusp_config = config_from_json(need(j, "cusp_config", ""), "cusp_config").config;
    c.w_cusp = areas_from_json(c.cusp_config.ambient(), need(j, "w_cusp", ""), "w_cusp");
    c.A = get_class(c.cusp_config.ambient(), need(j, "A", ""), "A");
    c.p = get_int(need(j, "p", ""), "p");
    c.q = get_int(need(j, "q", ""), "q");
    c.da = get_string(need(j, "da", ""), "da");
    c.db = get_string(need(j, "db", ""), "db");
    // A is carried back to the input lattice only when the cusp lives on the terminal
    const Ambient& a_home = (c.cusp_config.ambient() == c.terminal.ambient() && c.route != "ruled-fiber")
                                ? input.ambient()
                                : c.cusp_config.ambient();
    c.A_input = get_class(a_home, need(j, "A_input", ""), "A_input");
    const Json& tr = need(j, "transported", "");
    c.transported = {get_int(need(tr, "p", "transported"), "transported.p"),
                     get_int(need(tr, "q", "transported"), "transported.q"),
                     get_string(need(tr, "da", "transported"), "transported.da"),
                     get_string(need(tr, "db", "transported"), "transported.db")};
    c.A_transported = get_class(a_home, need(j, "A_transported", ""), "A_transported");
    c.transport_applies = get_bool(need(j, "transport_applies", ""), "transport_applies");
    c.weights = WeightSequence{c.p, c.q, get_ints(need(j, "weights", ""), "weights")};
    c.resolved = config_from_json(need(j, "resolved", ""), "resolved").config;
    c.w_resolved = areas_from_json(c.resolved.ambient(), need(j, "w_resolved", ""), "w_resolved");
    c.a_tilde = get_class(c.resolved.ambient(), need(j, "a_tilde", ""), "a_tilde");
    c.exceptional_ids = get_strings(need(j, "exceptional_ids", ""), "exceptional_ids");
    const Json& comb = need(j, "combination", "");
    if (!comb.is_object()) throw ParseError("combination", "expected an object");
    for (const auto& [id, v] : comb.items()) c.combination[id] = get_int(v, "combination." + id);
    const Json& opt = need(j, "options", "");
    c.options.coeff_bound = get_int(need(opt, "coeff_bound", "options"), "options.coeff_bound");
    if (!need(opt, "area_bound", "options").is_null())
        c.options.area_bound = get_rational(opt["area_bound"], "options.area_bound");
    c.checks = checks_from_json(need(j, "checks", ""), "checks");
    c.assumptions = get_strings(need(j, "assumptions", ""), "assumptions");
    c.interpretations = get_strings(need(j, "interpretations", ""), "interpretations");
    c.notes = get_strings(need(j, "notes", ""), "notes");
    return c;
}

namespace {

Json plan_body(const InflationPlan& plan) {
    Json j;
    j["g"] = plan.g;
    j["n"] = plan.n;
    j["target"] = rationals_json(plan.target);
    Json nodes = Json::array();
    for (const auto& node : plan.nodes) {
        Json nj;
        switch (node.kind) {
            case PlanNode::Kind::Seed:
                nj["kind"] = "seed";
                nj["seed"] = rationals_json(node.seed);
                nj["epsilon"] = rational_json(node.epsilon);
                nj["sub"] = node.sub ? plan_body(*node.sub) : Json(nullptr);
                break;
            case PlanNode::Kind::Inflate:
                nj["kind"] = "inflate";
                nj["class"] = node.z->str();
                nj["t"] = rational_json(node.t);
                break;
            case PlanNode::Kind::ZigZag:
                nj["kind"] = "zigzag";
                nj["classes"] = {node.z->str(), node.z2->str()};
                nj["t"] = rational_json(node.t);
                nj["substeps"] = node.substeps;
                break;
        }
        nodes.push_back(nj);
    }
    j["nodes"] = nodes;
    j["assumptions"] = plan.assumptions;
    return j;
}

}  // namespace

Json plan_to_json(const InflationPlan& plan, bool with_checks) {
    Json j;
    j["schema"] = kPlanSchema;
    const Json body = plan_body(plan);
    for (const auto& [k, v] : body.items()) j[k] = v;
    if (with_checks) {
        auto checks = verify_plan(plan);
        j["verified"] = all_pass(checks);
        j["checks"] = checks_to_json(checks);
    }
    return j;
}

InflationPlan plan_from_json(const Json& j, const std::string& path) {
    if (j.contains("schema") && j["schema"] != kPlanSchema)
        throw ParseError(at(path, "schema"), "expected " + std::string(kPlanSchema));
    InflationPlan plan;
    const int64_t g = get_int(need(j, "g", path), at(path, "g"));
    const int64_t n = get_int(need(j, "n", path), at(path, "n"));
    if (g < 1 || g > 1000000) throw ParseError(at(path, "g"), "base genus must be >= 1");
    if (n < 0 || n > 1000) throw ParseError(at(path, "n"), "out of range");
    plan.g = static_cast<int>(g);
    plan.n = static_cast<int>(n);
    plan.target = get_rationals(need(j, "target", path), at(path, "target"));
    const Ambient amb = Ambient::ruled_trivial(plan.g, plan.n);
    const std::string npath = at(path, "nodes");
    const Json& nodes = need_array(need(j, "nodes", path), npath);
    for (size_t i = 0; i < nodes.size(); ++i) {
        const std::string p = idx(npath, i);
        const std::string kind = get_string(need(nodes[i], "kind", p), at(p, "kind"));
        PlanNode node;
        if (kind == "seed") {
            node.kind = PlanNode::Kind::Seed;
            node.seed = get_rationals(need(nodes[i], "seed", p), at(p, "seed"));
            node.epsilon = get_rational(need(nodes[i], "epsilon", p), at(p, "epsilon"));
            if (nodes[i].contains("sub") && !nodes[i]["sub"].is_null())
                node.sub = std::make_shared<const InflationPlan>(plan_from_json(nodes[i]["sub"], at(p, "sub")));
        } else if (kind == "inflate") {
            node.kind = PlanNode::Kind::Inflate;
            node.z = get_class(amb, need(nodes[i], "class", p), at(p, "class"));
            node.t = get_rational(need(nodes[i], "t", p), at(p, "t"));
        } else if (kind == "zigzag") {
            node.kind = PlanNode::Kind::ZigZag;
            const std::string cp = at(p, "classes");
            const Json& cl = need_array(need(nodes[i], "classes", p), cp);
            if (cl.size() != 2) throw ParseError(cp, "expected two classes");
            node.z = get_class(amb, cl[0], idx(cp, 0));
            node.z2 = get_class(amb, cl[1], idx(cp, 1));
            node.t = get_rational(need(nodes[i], "t", p), at(p, "t"));
            node.substeps = get_int(need(nodes[i], "substeps", p), at(p, "substeps"));
            if (node.substeps < 1 || node.substeps > (int64_t{1} << 30))
                throw ParseError(at(p, "substeps"), "out of range");
        } else {
            throw ParseError(at(p, "kind"), "unknown node kind " + kind);
        }
        plan.nodes.push_back(std::move(node));
    }
    plan.assumptions = get_strings(need(j, "assumptions", path), at(path, "assumptions"));
    return plan;
}

std::string to_dot(const DivisorConfig& config, const std::string& name) {
    auto q = [](const std::string& s) {
        std::string out = "\"";
        for (char ch : s) {
            if (ch == '"' || ch == '\\') out += '\\';
            out += ch;
        }
        return out + "\"";
    };
    std::ostringstream os;
    os << "graph " << q(name) << " {\n  node [shape=box];\n";
    for (const auto& c : config.components()) {
        std::string label = c.id + "\\n" + c.cls.str() + "\\n[" + std::to_string(square(c.cls)) + "]";
        if (c.genus != 0) label += " g=" + std::to_string(c.genus);
        os << "  " << q(c.id) << " [label=\"";
        for (char ch : label)
            if (ch == '"') os << "\\\"";
            else os << ch;
        os << "\"];\n";
    }
    for (const auto& e : config.edges()) {
        os << "  " << q(e.a) << " -- " << q(e.b);
        if (e.mult > 1) os << " [label=" << e.mult << "]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, "cannot open file");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path, std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace symdiv
