#include "symdiv/certify.hpp"

#include <algorithm>
#include <set>

namespace symdiv {

AffineRuledCertificate::AffineRuledCertificate(const DivisorConfig& in, const AreaVector& areas)
    : input(in),
      w(areas),
      hypothesis_value(0),
      terminal(in),
      w_terminal(areas),
      cusp_config(in),
      w_cusp(areas),
      A(in.ambient()),
      A_input(in.ambient()),
      A_transported(in.ambient()),
      resolved(in),
      w_resolved(areas),
      a_tilde(in.ambient()) {}

namespace {

const char* kCurveAssumption =
    "a D~-good class of square zero is represented by embedded spheres for generic J making D~ holomorphic";
const char* kDescentAssumption =
    "embedded spheres in the resolution class contract to (p,q)-unicuspidal curves with the cusp at D_a and D_b";
const char* kFoliationAssumption = "curves in the foliating class sweep out an open dense subset of the complement";

Check eq_check(const std::string& name, bool ok, const std::string& detail = "") { return {name, ok, detail}; }

Rational quarter_bound(const std::optional<Rational>& bound, std::optional<Rational>& last) {
    Rational eps = bound ? Rational(*bound / 4) : Rational(1, 4);
    if (last && *last / 4 < eps) eps = *last / 4;
    last = eps;
    return eps;
}

// A half-toric blowup followed by three toric blowups at the point where the
// conic meets the newest exceptional curve.
void build_conic_completion(AffineRuledCertificate& c, const std::string& conic) {
    DivisorConfig cfg = c.terminal;
    AreaVector wv = c.w_terminal;
    std::optional<Rational> last;
    std::string prev;
    for (int i = 1; i <= 4; ++i) {
        BlowupMove mv;
        mv.type = i == 1 ? BlowupType::HalfToric : BlowupType::Toric;
        mv.a = conic;
        mv.b = prev;
        mv.new_label = "e" + std::to_string(i);
        mv.new_id = "c_e" + std::to_string(i);
        Rational eps = quarter_bound(blowup_area_threshold(cfg, wv, mv), last);
        BlowupResult br = blowup(cfg, mv);
        wv = extend_areas(wv, br.ext, eps);
        cfg = br.config;
        prev = br.new_component;
    }
    c.cusp_config = cfg;
    c.w_cusp = wv;
    c.A = cfg.component(conic).cls;
    c.p = 1;
    c.q = 0;
    c.da = prev;
    c.db = "";
}

HomologyClass comb_fibre(const DivisorConfig& t, const MinimalModelTag& tag) {
    const Ambient& amb = t.ambient();
    if (tag.order.size() > 1) return t.component(tag.order[1]).cls;
    if (amb.kind() == AmbientKind::ProductOfSpheres) {
        const auto& h = t.component(tag.order[0]).cls;
        return h[0] == 1 ? HomologyClass(amb, {0, 1}) : HomologyClass(amb, {1, 0});
    }
    return fiber_f(amb);
}

// Route-specific cusp data on the terminal configuration.
void build_route(AffineRuledCertificate& c, TraceTerminal term) {
    c.interpretations.clear();
    c.model.reset();
    c.chain.clear();
    c.a.clear();
    c.c.clear();
    c.k = 0;
    c.cusp_config = c.terminal;
    c.w_cusp = c.w_terminal;
    c.transport_applies = true;
    const DivisorConfig& t = c.terminal;

    if (term == TraceTerminal::MinimalRuled) {
        c.route = "ruled-fiber";
        c.cusp_config = c.input;
        c.w_cusp = c.w;
        c.A = generator(c.input.ambient(), 1);
        c.p = 1;
        c.q = 0;
        c.da.clear();
        c.db.clear();
        for (const auto& comp : c.input.components())
            if (comp.cls[0] == 1) c.da = comp.id;
        c.transport_applies = false;
        if (c.da.empty()) c.interpretations.push_back("no section-type component: D_a is absent");
        return;
    }

    if (term == TraceTerminal::QuasiMinimalFirstKind) {
        auto chains = good_chains(t);
        if (chains.empty()) throw StageError("good-chain", "partially minimal configuration has no good labelling");
        for (size_t i = 0; i < chains.size(); ++i) {
            Admissible adm = admissible_check(chains[i].a);
            if (!adm.accepted) continue;
            CuspClass cc = cusp_class(t, chains[i].order, adm);
            c.route = "admissible-subchain";
            c.chain = chains[i].order;
            c.k = chains[i].k;
            c.a = adm.a;
            c.c = adm.c;
            c.A = cc.A;
            c.p = cc.p;
            c.q = cc.q;
            c.da = cc.da;
            c.db = cc.db;
            if (chains.size() > 1)
                c.interpretations.push_back("good labelling chosen with the largest k among " +
                                            std::to_string(chains.size()) + " candidates");
            return;
        }
        throw StageError("admissible", "no good labelling yields an admissible subchain");
    }

    auto tag = classify_minimal_model(t);
    if (!tag) throw StageError("minimal-model", "terminal configuration matches no listed model");
    c.model = tag;
    const std::string& id = tag->id;
    if (id == "B1'" || id == "C1'") {
        c.route = "comb";
        c.A = comb_fibre(t, *tag);
        c.p = 1;
        c.q = 0;
        c.da = tag->order[0];
        c.db.clear();
        c.interpretations.push_back("comb: the fibre class is taken as the (1,0) foliating class, D_b absent");
        return;
    }
    if (id == "A3'") {
        c.route = "A3'-special";
        build_conic_completion(c, tag->order[0]);
        c.transport_applies = false;
        return;
    }
    if (id == "A1'") {
        DivisorConfig cfg = t;
        cfg.add_component({"aux_line", HomologyClass(t.ambient(), {1}), 0});
        cfg.add_edge("aux_line", tag->order[0]);
        c.cusp_config = cfg;
        c.interpretations.push_back("single line completed by an auxiliary second line and treated as two lines");
        c.transport_applies = false;
        c.route = "minimal-model";
        c.A = t.component(tag->order[0]).cls;
        c.p = 1;
        c.q = 1;
        c.da = "aux_line";
        c.db = tag->order[0];
        return;
    }
    if (id == "A2'" || id == "B2'" || id == "B3'" || id == "C2'" || id == "C3'") {
        c.route = "minimal-model";
        c.A = t.component(tag->order[0]).cls;
        c.p = 1;
        c.q = square(c.A);
        c.da = tag->order[1];
        c.db = tag->order[0];
        return;
    }
    throw StageError("minimal-model", "model " + id + " violates the area hypothesis");
}

std::vector<const TraceStep*> all_steps(const AffineRuledCertificate& c) {
    std::vector<const TraceStep*> out;
    for (const auto& s : c.stages)
        for (const auto& st : s.trace.steps) out.push_back(&st);
    return out;
}

void derive(AffineRuledCertificate& c) {
    c.A_input = c.A;
    c.A_transported = c.A;
    c.transported = {c.p, c.q, c.da, c.db};
    if (c.cusp_config.ambient() == c.terminal.ambient() && c.route != "ruled-fiber") {
        auto steps = all_steps(c);
        HomologyClass phi = c.A, moved = c.A;
        CuspState s = c.transported;
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
            const BlowdownResult& m = (*it)->move;
            phi = m.embed.apply(phi);
            moved = m.embed.apply(moved);
            if (!c.transport_applies) continue;
            std::set<std::string> inc(m.incident.begin(), m.incident.end());
            if (m.type == BlowupType::Toric && inc == std::set<std::string>{s.da, s.db}) {
                int64_t mult = 0;
                s = blowup_cusp_point(s, m.removed_component, &mult);
                moved -= mult * m.target;
            }
        }
        c.A_input = phi;
        c.A_transported = moved;
        c.transported = s;
    }
    c.weights = weight_sequence(c.p, c.q);
    Resolution res = resolve_pattern(c.cusp_config, c.A, c.da, c.db, c.p, c.q, &c.w_cusp);
    c.resolved = res.config;
    c.w_resolved = *res.w;
    c.a_tilde = res.a_tilde;
    c.exceptional_ids = res.exceptional_ids;
    c.combination.clear();
    if (c.route == "admissible-subchain") c.combination = positive_combination(c.cusp_config, res, c.q, c.da).coefficients;
}

TraceTerminal terminal_of(const AffineRuledCertificate& c) {
    if (c.input.ambient().is_ruled()) return TraceTerminal::MinimalRuled;
    if (c.stages.empty()) return TraceTerminal::SmallB2;
    return c.stages.back().trace.terminal;
}

std::string join(const std::vector<int64_t>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

}  // namespace

AffineRuledCertificate certify_affine_ruled(const DivisorConfig& config, const AreaVector& w, const CertifyOptions& opt) {
    if (w.ambient() != config.ambient()) throw StageError("input", "area vector and configuration disagree on the ambient");
    auto issues = validate(config, &w);
    if (!issues.empty()) throw StageError("input", issues.front());
    AffineRuledCertificate cert(config, w);
    cert.options = opt;
    cert.hypothesis_value = hypothesis_value(config, w);
    if (cert.hypothesis_value >= 0)
        throw StageError("hypothesis", "area(K+[D]) = " + to_string(cert.hypothesis_value) + " is not negative");

    ReduceOptions ro;
    ro.coeff_bound = opt.coeff_bound;
    auto run = [&](const std::string& name, auto&& fn, const DivisorConfig& cfg, const AreaVector& wv) {
        std::optional<Reduction> ro_;
        try {
            ro_.emplace(fn(cfg, wv, ro));
        } catch (const std::exception& e) {
            throw StageError(name, e.what());
        }
        const Reduction& r = *ro_;
        if (r.trace.terminal == TraceTerminal::Stuck) throw StageError(name, "stuck: " + r.trace.stuck_reason);
        cert.stages.push_back({name, r.trace});
        cert.terminal = r.config;
        cert.w_terminal = r.w;
        return r.trace.terminal;
    };

    TraceTerminal term;
    if (config.ambient().is_ruled()) {
        auto rv = ruled_validate(config);
        if (!all_pass(rv)) {
            for (const auto& ck : rv)
                if (!ck.pass) throw StageError("ruled", ck.name + ": " + ck.detail);
        }
        term = run("ruled", ruled_reduce, config, w);
        cert.assumptions = {kFoliationAssumption, "fibres of the ruling through D are the spherical components"};
    } else {
        if (!is_connected(config)) throw StageError("input", "configuration is not connected");
        term = run("quasi-minimal", quasi_minimal_reduce, config, w);
        if (term == TraceTerminal::QuasiMinimalFirstKind)
            term = run("partially-minimal", partially_minimal_reduce, cert.terminal, cert.w_terminal);
        else if (term == TraceTerminal::QuasiMinimalSecondKind)
            term = run("second-kind", second_kind_reduce, cert.terminal, cert.w_terminal);
        cert.assumptions = {kCurveAssumption, kDescentAssumption, kFoliationAssumption};
    }
    for (const auto& st : cert.stages[0].trace.steps) {
        if (cert.stages[0].name == "quasi-minimal" &&
            (st.move.type == BlowupType::HalfToric ||
             (st.move.type == BlowupType::Exterior && !st.move.removed_component.empty()))) {
            cert.interpretations.push_back(
                "a minimal class carried by a component with one neighbour is blown down half-toric, with none exterior");
            break;
        }
    }

    auto saved = cert.interpretations;
    try {
        build_route(cert, term);
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError("cusp-class", e.what());
    }
    saved.insert(saved.end(), cert.interpretations.begin(), cert.interpretations.end());
    cert.interpretations = saved;
    if (cert.p < cert.q)
        cert.interpretations.push_back("cusp type (" + std::to_string(cert.p) + "," + std::to_string(cert.q) +
                                       ") is reported as (" + std::to_string(cert.q) + "," + std::to_string(cert.p) + ")");
    try {
        derive(cert);
    } catch (const std::exception& e) {
        throw StageError("resolution", e.what());
    }
    cert.checks = verify_certificate(cert);
    return cert;
}

std::vector<Check> verify_certificate(const AffineRuledCertificate& cert) {
    std::vector<Check> out;
    auto issues = validate(cert.input, &cert.w);
    out.push_back(eq_check("input: valid", issues.empty(), issues.empty() ? "" : issues.front()));
    Rational hv = hypothesis_value(cert.input, cert.w);
    out.push_back(eq_check("input: area(K+[D]) < 0", hv < 0 && hv == cert.hypothesis_value, to_string(hv)));

    // Trace: replay, area transport and the hypothesis at every step.
    auto steps = all_steps(cert);
    bool replay_ok = true, areas_ok = true, hyp_ok = true;
    std::string replay_detail;
    DivisorConfig cur = cert.terminal;
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        cur = replay_blowdown(cur, (*it)->move);
        if (!(cur == (*it)->before)) {
            replay_ok = false;
            replay_detail = "mismatch before blowing down " + (*it)->move.target.str();
        }
    }
    if (!(cur == cert.input)) {
        replay_ok = false;
        if (replay_detail.empty()) replay_detail = "replayed configuration differs from the input";
    }
    const AreaVector* wprev = &cert.w;
    for (const auto* st : steps) {
        if (!(st->w_before == *wprev)) areas_ok = false;
        if (!(transport_areas(st->w_before, st->move.embed) == st->w_after)) areas_ok = false;
        Rational v = hypothesis_value(st->move.config, st->w_after);
        if (!(v < 0) || v != st->value_after) hyp_ok = false;
        if (!validate(st->move.config, &st->w_after).empty()) hyp_ok = false;
        wprev = &st->w_after;
    }
    if (!(*wprev == cert.w_terminal)) areas_ok = false;
    out.push_back(eq_check("trace: replay reproduces the input", replay_ok,
                           replay_ok ? std::to_string(steps.size()) + " steps" : replay_detail));
    out.push_back(eq_check("trace: areas transported", areas_ok));
    out.push_back(eq_check("trace: area(K+[D]) < 0 at every step", hyp_ok));

    // Recompute the cusp data and compare with the record.
    AffineRuledCertificate re = cert;
    bool rebuilt = true;
    std::string why;
    try {
        build_route(re, terminal_of(cert));
        derive(re);
    } catch (const std::exception& e) {
        rebuilt = false;
        why = e.what();
    }
    if (rebuilt) {
        bool same = re.route == cert.route && re.chain == cert.chain && re.k == cert.k && re.a == cert.a &&
                    re.c == cert.c && re.cusp_config == cert.cusp_config && re.w_cusp == cert.w_cusp && re.A == cert.A &&
                    re.p == cert.p && re.q == cert.q && re.da == cert.da && re.db == cert.db &&
                    re.A_input == cert.A_input && re.A_transported == cert.A_transported &&
                    re.transported.p == cert.transported.p && re.transported.q == cert.transported.q &&
                    re.transported.da == cert.transported.da && re.transported.db == cert.transported.db &&
                    re.weights.weights == cert.weights.weights && re.resolved == cert.resolved &&
                    re.w_resolved == cert.w_resolved && re.a_tilde == cert.a_tilde &&
                    re.exceptional_ids == cert.exceptional_ids && re.combination == cert.combination;
        out.push_back(eq_check("cusp: recorded data matches recomputation", same, re.route));
    } else {
        out.push_back(eq_check("cusp: recorded data matches recomputation", false, why));
        return out;
    }

    if (cert.route == "admissible-subchain") {
        bool lab = cert.chain.size() > static_cast<size_t>(cert.k) && cert.a.size() == static_cast<size_t>(cert.k);
        for (int i = 0; lab && i < cert.k; ++i) lab = cert.a[i] == -square(cert.cusp_config.component(cert.chain[i]).cls);
        out.push_back(eq_check("chain: a_i = -[D_i]^2", lab, join(cert.a)));
        out.push_back(eq_check("chain: associated sequence", associated_sequence(cert.a) == cert.c, join(cert.c)));
        Admissible adm = admissible_check(cert.a);
        out.push_back(eq_check("chain: admissible with (p,q)", adm.accepted && adm.p == cert.p && adm.q == cert.q,
                               adm.accepted ? std::to_string(adm.p) + "," + std::to_string(adm.q) : adm.rejection));
        HomologyClass sum(cert.cusp_config.ambient());
        for (int i = 0; i < cert.k; ++i) sum += cert.c[i] * cert.cusp_config.component(cert.chain[i]).cls;
        out.push_back(eq_check("cusp: A = sum c_i [D_i]", sum == cert.A, cert.A.str()));
    }
    for (auto ck : cusp_identities(cert.cusp_config, cert.A, cert.p, cert.q, cert.da, cert.db)) {
        ck.name = "cusp: " + ck.name;
        out.push_back(ck);
    }
    if (cert.transport_applies && cert.route != "ruled-fiber") {
        for (auto ck : cusp_identities(cert.input, cert.A_transported, cert.transported.p, cert.transported.q,
                                       cert.transported.da, cert.transported.db)) {
            ck.name = "input cusp: " + ck.name;
            out.push_back(ck);
        }
    }

    WeightSequence ws = weight_sequence(cert.p, cert.q);
    int64_t s1 = 0, s2 = 0;
    for (int64_t m : ws.weights) {
        s1 += m;
        s2 += m * m;
    }
    if (!ws.weights.empty()) {
        out.push_back(eq_check("weights: sum m^2 = pq", s2 == cert.p * cert.q, std::to_string(s2)));
        out.push_back(eq_check("weights: sum m = p+q-1", s1 == cert.p + cert.q - 1, std::to_string(s1)));
    }
    Resolution res = resolve_pattern(cert.cusp_config, cert.A, cert.da, cert.db, cert.p, cert.q, &cert.w_cusp);
    for (auto ck : res.checks) {
        ck.name = "resolution: " + ck.name;
        out.push_back(ck);
    }
    if (cert.route == "admissible-subchain") {
        PositiveCombination pc = positive_combination(cert.cusp_config, res, cert.q, cert.da);
        out.push_back(eq_check("combination: coefficients >= 0", pc.nonnegative));
        out.push_back(eq_check("combination: reproduces q([D_a]-[D~_a]) - sum m_i E_i", pc.reproduces, pc.target.str()));
        HomologyClass whole = pc.target;
        for (int i = 0; i < cert.k; ++i) whole += cert.c[i] * res.config.component(cert.chain[i]).cls;
        out.push_back(eq_check("combination: A~ = sum c_i [D~_i] + combination", whole == res.a_tilde));
    } else if (!res.weights.empty()) {
        bool is_comp = false;
        for (const auto& comp : res.config.components())
            if (comp.cls == res.a_tilde) is_comp = true;
        out.push_back(eq_check("combination: A~ is a component class", is_comp));
    }

    const auto bound = cert.options.area_bound ? cert.options.area_bound : default_area_bound(cert.w_resolved);
    ExceptionalSet set = enumerate_exceptional(cert.w_resolved, bound, cert.options.coeff_bound);
    for (auto ck : d_good(cert.a_tilde, cert.resolved, cert.w_resolved, set)) {
        ck.name = "D~-good: " + ck.name;
        out.push_back(ck);
    }
    return out;
}

std::vector<std::pair<std::string, DivisorConfig>> pipeline_configs(const AffineRuledCertificate& cert) {
    std::vector<std::pair<std::string, DivisorConfig>> out{{"input", cert.input}};
    for (const auto& s : cert.stages)
        if (!s.trace.steps.empty()) out.emplace_back(s.name, s.trace.steps.back().move.config);
    if (!(cert.cusp_config == cert.terminal) && !(cert.cusp_config == cert.input)) out.emplace_back("completion", cert.cusp_config);
    if (!(cert.resolved == cert.cusp_config)) out.emplace_back("resolution", cert.resolved);
    return out;
}

}  // namespace symdiv
