#include "symdiv/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace symdiv {

std::string kind_name(AmbientKind k) {
    switch (k) {
        case AmbientKind::ProjectivePlane: return "ProjectivePlane";
        case AmbientKind::ProductOfSpheres: return "ProductOfSpheres";
        case AmbientKind::RationalBlowup: return "RationalBlowup";
        case AmbientKind::RuledTrivial: return "RuledTrivial";
        case AmbientKind::RuledTwisted: return "RuledTwisted";
    }
    return "?";
}

namespace {

std::vector<std::string> numbered(int n) {
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i) out.push_back("E" + std::to_string(i));
    return out;
}

void check_labels(const std::vector<std::string>& labels, const std::vector<std::string>& reserved) {
    std::vector<std::string> all = labels;
    all.insert(all.end(), reserved.begin(), reserved.end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        throw std::invalid_argument("duplicate basis label");
    for (const auto& l : labels)
        if (l.empty()) throw std::invalid_argument("empty basis label");
}

}  // namespace

Ambient::Ambient(Data d) : d_(std::make_shared<const Data>(std::move(d))) {}

Ambient Ambient::projective_plane() { return Ambient({AmbientKind::ProjectivePlane, 0, {"H"}}); }

Ambient Ambient::product_of_spheres() { return Ambient({AmbientKind::ProductOfSpheres, 0, {"f1", "f2"}}); }

Ambient Ambient::rational_blowup(int n) {
    if (n < 1) throw std::invalid_argument("RationalBlowup needs n >= 1");
    return rational_blowup(numbered(n));
}

Ambient Ambient::rational_blowup(std::vector<std::string> labels) {
    if (labels.empty()) throw std::invalid_argument("RationalBlowup needs n >= 1");
    check_labels(labels, {"H"});
    labels.insert(labels.begin(), "H");
    return Ambient({AmbientKind::RationalBlowup, 0, std::move(labels)});
}

Ambient Ambient::ruled_trivial(int g, int n) {
    if (n < 0) throw std::invalid_argument("RuledTrivial needs n >= 0");
    return ruled_trivial(g, numbered(n));
}

Ambient Ambient::ruled_trivial(int g, std::vector<std::string> labels) {
    if (g < 1) throw std::invalid_argument("RuledTrivial needs base genus >= 1");
    check_labels(labels, {"B", "F"});
    labels.insert(labels.begin(), {"B", "F"});
    return Ambient({AmbientKind::RuledTrivial, g, std::move(labels)});
}

Ambient Ambient::ruled_twisted(int g) {
    if (g < 1) throw std::invalid_argument("RuledTwisted needs base genus >= 1");
    return Ambient({AmbientKind::RuledTwisted, g, {"B1", "F"}});
}

int Ambient::exceptional_offset() const {
    switch (kind()) {
        case AmbientKind::RationalBlowup: return 1;
        case AmbientKind::RuledTrivial: return 2;
        default: return rank();
    }
}

std::vector<std::string> Ambient::exceptional_labels() const {
    return {d_->basis.begin() + exceptional_offset(), d_->basis.end()};
}

int Ambient::index_of(const std::string& name) const {
    auto it = std::find(d_->basis.begin(), d_->basis.end(), name);
    return it == d_->basis.end() ? -1 : static_cast<int>(it - d_->basis.begin());
}

bool Ambient::is_rational() const {
    return kind() == AmbientKind::ProjectivePlane || kind() == AmbientKind::ProductOfSpheres ||
           kind() == AmbientKind::RationalBlowup;
}

bool Ambient::is_ruled() const {
    return kind() == AmbientKind::RuledTrivial || kind() == AmbientKind::RuledTwisted;
}

int Ambient::b2_minus() const { return rank() - 1; }

int64_t Ambient::form(int i, int j) const {
    switch (kind()) {
        case AmbientKind::ProjectivePlane: return 1;
        case AmbientKind::ProductOfSpheres: return i != j ? 1 : 0;
        case AmbientKind::RationalBlowup:
            if (i != j) return 0;
            return i == 0 ? 1 : -1;
        case AmbientKind::RuledTrivial:
            if (i < 2 && j < 2) return i != j ? 1 : 0;
            return i == j ? -1 : 0;
        case AmbientKind::RuledTwisted:
            if (i == 1 && j == 1) return 0;
            return 1;
    }
    return 0;
}

int64_t Ambient::pair(const std::vector<int64_t>& a, const std::vector<int64_t>& b) const {
    const int n = rank();
    int64_t s = 0;
    switch (kind()) {
        case AmbientKind::ProjectivePlane: return a[0] * b[0];
        case AmbientKind::ProductOfSpheres: return a[0] * b[1] + a[1] * b[0];
        case AmbientKind::RationalBlowup:
            s = a[0] * b[0];
            for (int i = 1; i < n; ++i) s -= a[i] * b[i];
            return s;
        case AmbientKind::RuledTrivial:
            s = a[0] * b[1] + a[1] * b[0];
            for (int i = 2; i < n; ++i) s -= a[i] * b[i];
            return s;
        case AmbientKind::RuledTwisted: return a[0] * b[0] + a[0] * b[1] + a[1] * b[0];
    }
    return 0;
}

std::string Ambient::describe() const {
    switch (kind()) {
        case AmbientKind::ProjectivePlane: return "CP2";
        case AmbientKind::ProductOfSpheres: return "S2xS2";
        case AmbientKind::RationalBlowup: return "CP2#" + std::to_string(exceptional_count());
        case AmbientKind::RuledTrivial:
            return "(S2xSigma_" + std::to_string(base_genus()) + ")#" + std::to_string(exceptional_count());
        case AmbientKind::RuledTwisted: return "twisted S2-bundle over Sigma_" + std::to_string(base_genus());
    }
    return "?";
}

std::string Ambient::fresh_label() const {
    long next = 1;
    for (const auto& l : exceptional_labels()) {
        if (l.size() > 1 && l[0] == 'E' && std::all_of(l.begin() + 1, l.end(), ::isdigit))
            next = std::max(next, std::stol(l.substr(1)) + 1);
    }
    std::string cand = "E" + std::to_string(next);
    while (index_of(cand) >= 0) cand = "E" + std::to_string(++next);
    return cand;
}

bool operator==(const Ambient& a, const Ambient& b) {
    if (a.d_ == b.d_) return true;
    return a.d_->kind == b.d_->kind && a.d_->g == b.d_->g && a.d_->basis == b.d_->basis;
}

HomologyClass::HomologyClass(Ambient amb) : amb_(std::move(amb)), c_(amb_.rank(), 0) {}

HomologyClass::HomologyClass(Ambient amb, std::vector<int64_t> coeffs)
    : amb_(std::move(amb)), c_(std::move(coeffs)) {
    if (static_cast<int>(c_.size()) != amb_.rank())
        throw std::invalid_argument("coefficient vector has length " + std::to_string(c_.size()) +
                                    ", basis has " + std::to_string(amb_.rank()));
}

bool HomologyClass::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](int64_t x) { return x == 0; });
}

void HomologyClass::require_same(const HomologyClass& o) const {
    if (amb_ != o.amb_) throw std::invalid_argument("ambient mismatch: " + amb_.describe() + " vs " + o.amb_.describe());
}

HomologyClass& HomologyClass::operator+=(const HomologyClass& o) {
    require_same(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

HomologyClass& HomologyClass::operator-=(const HomologyClass& o) {
    require_same(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

HomologyClass operator-(HomologyClass a) {
    for (auto& x : a.c_) x = -x;
    return a;
}

HomologyClass operator*(int64_t k, HomologyClass a) {
    for (auto& x : a.c_) x *= k;
    return a;
}

bool operator==(const HomologyClass& a, const HomologyClass& b) { return a.c_ == b.c_ && a.amb_ == b.amb_; }

std::string HomologyClass::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        int64_t x = c_[i];
        if (x == 0) continue;
        if (x < 0) os << "-";
        else if (!first) os << "+";
        if (x != 1 && x != -1) os << (x < 0 ? -x : x);
        os << amb_.basis()[i];
        first = false;
    }
    return first ? "0" : os.str();
}

HomologyClass generator(const Ambient& amb, int index) {
    if (index < 0 || index >= amb.rank()) throw std::out_of_range("generator index");
    std::vector<int64_t> v(amb.rank(), 0);
    v[index] = 1;
    return HomologyClass(amb, v);
}

HomologyClass generator(const Ambient& amb, const std::string& name) {
    int i = amb.index_of(name);
    if (i < 0) throw std::invalid_argument("no generator named " + name + " in " + amb.describe());
    return generator(amb, i);
}

HomologyClass parse_class(const Ambient& amb, const std::string& text) {
    static const std::regex term(R"(\s*([+-]?)\s*(\d*)\s*([A-Za-z][A-Za-z0-9_']*)\s*)");
    std::vector<int64_t> v(amb.rank(), 0);
    auto it = text.cbegin();
    bool any = false;
    std::smatch m;
    while (it != text.cend()) {
        if (!std::regex_search(it, text.cend(), m, term, std::regex_constants::match_continuous))
            throw std::invalid_argument("cannot parse class \"" + text + "\"");
        if (any && m[1].str().empty()) throw std::invalid_argument("missing sign in \"" + text + "\"");
        int64_t k = m[2].str().empty() ? 1 : std::stoll(m[2].str());
        if (m[1].str() == "-") k = -k;
        int idx = amb.index_of(m[3].str());
        if (idx < 0) throw std::invalid_argument("unknown generator " + m[3].str());
        v[idx] += k;
        any = true;
        it = m[0].second;
    }
    if (!any && text.find('0') == std::string::npos) throw std::invalid_argument("empty class");
    return HomologyClass(amb, v);
}

int64_t pair(const HomologyClass& a, const HomologyClass& b) {
    if (a.ambient() != b.ambient())
        throw std::invalid_argument("ambient mismatch: " + a.ambient().describe() + " vs " + b.ambient().describe());
    return a.ambient().pair(a.coeffs(), b.coeffs());
}

int64_t square(const HomologyClass& a) { return pair(a, a); }

HomologyClass canonical(const Ambient& amb) {
    std::vector<int64_t> k(amb.rank(), 0);
    switch (amb.kind()) {
        case AmbientKind::ProjectivePlane: k[0] = -3; break;
        case AmbientKind::ProductOfSpheres: k = {-2, -2}; break;
        case AmbientKind::RationalBlowup:
            k[0] = -3;
            for (int i = 1; i < amb.rank(); ++i) k[i] = 1;
            break;
        case AmbientKind::RuledTrivial:
            k[0] = -2;
            k[1] = 2 * amb.base_genus() - 2;
            for (int i = 2; i < amb.rank(); ++i) k[i] = 1;
            break;
        case AmbientKind::RuledTwisted:
            k[0] = -2;
            k[1] = 2 * amb.base_genus() - 1;
            break;
    }
    return HomologyClass(amb, k);
}

std::optional<int64_t> adjunction_genus(const HomologyClass& a) {
    int64_t twice = square(a) + pair(canonical(a.ambient()), a) + 2;
    if (twice < 0 || twice % 2 != 0) return std::nullopt;
    return twice / 2;
}

int64_t sw_index(const HomologyClass& a) { return square(a) - pair(canonical(a.ambient()), a); }

bool is_exceptional_class(const HomologyClass& a) {
    return square(a) == -1 && pair(canonical(a.ambient()), a) == -1;
}

int64_t content(const HomologyClass& a) {
    int64_t g = 0;
    for (int64_t x : a.coeffs()) g = std::gcd(g, x < 0 ? -x : x);
    return g;
}

HomologyClass fiber_f(const Ambient& amb) {
    if (amb.kind() != AmbientKind::RationalBlowup || amb.exceptional_count() != 1)
        throw std::invalid_argument("fiber class f lives in CP2#1");
    return HomologyClass(amb, {1, -1});
}

HomologyClass section_s(const Ambient& amb) {
    if (amb.kind() != AmbientKind::RationalBlowup || amb.exceptional_count() != 1)
        throw std::invalid_argument("section class s lives in CP2#1");
    return HomologyClass(amb, {1, 0});
}

AreaVector::AreaVector(Ambient amb, std::vector<Rational> w) : amb_(std::move(amb)), w_(std::move(w)) {
    if (static_cast<int>(w_.size()) != amb_.rank())
        throw std::invalid_argument("area vector has length " + std::to_string(w_.size()) + ", basis has " +
                                    std::to_string(amb_.rank()));
}

std::vector<std::string> check_areas(const AreaVector& w) {
    std::vector<std::string> issues;
    const Ambient& amb = w.ambient();
    for (int i = amb.exceptional_offset(); i < amb.rank(); ++i)
        if (w[i] <= 0) issues.push_back("area of " + amb.basis()[i] + " is " + to_string(w[i]) + ", must be > 0");
    if (amb.is_ruled() && w[1] <= 0) issues.push_back("area of F must be > 0");
    if (amb.kind() == AmbientKind::ProjectivePlane && w[0] <= 0) issues.push_back("area of H must be > 0");
    if (amb.kind() == AmbientKind::RationalBlowup && w[0] <= 0) issues.push_back("area of H must be > 0");
    if (amb.kind() == AmbientKind::ProductOfSpheres && (w[0] <= 0 || w[1] <= 0))
        issues.push_back("areas of f1, f2 must be > 0");
    return issues;
}

Rational area(const HomologyClass& a, const AreaVector& w) {
    if (a.ambient() != w.ambient()) throw std::invalid_argument("ambient mismatch in area");
    Rational s = 0;
    for (int i = 0; i < a.ambient().rank(); ++i)
        if (a[i] != 0) s += a[i] * w[i];
    return s;
}

}  // namespace symdiv
