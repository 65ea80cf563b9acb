#include "symdiv/exceptional.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace symdiv {

bool all_pass(const std::vector<Check>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::optional<Rational> default_area_bound(const AreaVector& w) {
    const Ambient& amb = w.ambient();
    std::optional<Rational> best;
    for (int i = amb.exceptional_offset(); i < amb.rank(); ++i)
        if (!best || w[i] < *best) best = w[i];
    return best;
}

namespace {

using Int = Integer;
using I128 = __int128;

struct Scaled {
    Int denom;              // common denominator of all areas
    std::vector<Int> w;     // areas times denom
    std::optional<Int> ab;  // area bound times denom, rounded down
};

Scaled scale(const AreaVector& w, const std::optional<Rational>& bound) {
    Scaled s;
    s.denom = 1;
    auto lcm = [](const Int& x, const Int& y) { return x / boost::multiprecision::gcd(x, y) * y; };
    for (const auto& r : w.values()) s.denom = lcm(s.denom, boost::multiprecision::denominator(r));
    for (const auto& r : w.values()) s.w.push_back(boost::multiprecision::numerator(Rational(r * s.denom)));
    if (bound) {
        Rational b = Rational(*bound * s.denom);
        Int q = boost::multiprecision::numerator(b) / boost::multiprecision::denominator(b);
        if (b < 0 && q * boost::multiprecision::denominator(b) != boost::multiprecision::numerator(b)) q -= 1;
        s.ab = q;  // areas are integers after scaling, so floor is exact for "<= bound"
    }
    return s;
}

template <class T>
T as(const Int& x) {
    return static_cast<T>(static_cast<long long>(x));
}

template <>
Int as<Int>(const Int& x) {
    return x;
}

template <class T>
struct RationalSearch {
    int n;                       // number of exceptional generators
    int64_t C;                   // coefficient bound
    T wh;                        // scaled area of H
    std::vector<T> wi;           // scaled areas of E1..En
    std::vector<T> tail_sq;      // tail_sq[i] = sum_{j>=i} wi[j]^2
    bool bounded;
    T ab;

    // Appends (b_1..b_n) solutions for fixed a and b_1.
    void run(int64_t a, int64_t b1, std::vector<std::vector<int64_t>>& out) const {
        std::vector<int64_t> b(n, 0);
        b[0] = b1;
        int64_t R = a * a + 1 - b1 * b1;
        int64_t S = 3 * a - 1 - b1;
        T partial = T(a) * wh - T(b1) * wi[0];
        if (R < 0) return;
        dfs(1, R, S, partial, b, out);
    }

    bool area_prunable(int i, int64_t R, const T& partial) const {
        // Remaining contribution lies in [-sqrt(R*tail), sqrt(R*tail)].
        T rt = T(R) * tail_sq[i];
        if (partial <= 0 && partial * partial >= rt) return true;
        if (bounded && partial > ab) {
            T over = partial - ab;
            if (over * over > rt) return true;
        }
        return false;
    }

    void dfs(int i, int64_t R, int64_t S, const T& partial, std::vector<int64_t>& b,
             std::vector<std::vector<int64_t>>& out) const {
        const int m = n - i;
        if (m == 0) {
            if (R == 0 && S == 0 && partial > 0 && (!bounded || partial <= ab)) out.push_back(b);
            return;
        }
        if (R < 0 || S * S > static_cast<int64_t>(m) * R || ((S - R) % 2 != 0)) return;
        if (area_prunable(i, R, partial)) return;
        int64_t lim = static_cast<int64_t>(std::sqrt(static_cast<double>(R)));
        while (lim * lim > R) --lim;
        while ((lim + 1) * (lim + 1) <= R) ++lim;
        lim = std::min(lim, C);
        for (int64_t x = lim; x >= -lim; --x) {
            b[i] = x;
            dfs(i + 1, R - x * x, S - x, partial - T(x) * wi[i], b, out);
        }
        b[i] = 0;
    }
};

// Whether some class with this H-coefficient could pass the area filter.
bool level_possible(int64_t a, int n, const Int& wh, const Int& sum_sq, const std::optional<Int>& ab) {
    Int lhs = Int(3 * a - 1) * Int(3 * a - 1);
    Int norm = Int(a * a + 1);
    if (lhs > Int(n) * norm) return false;
    Int top = Int(a) * wh;
    if (top <= 0 && top * top >= norm * sum_sq) return false;
    if (ab && top > *ab) {
        Int over = top - *ab;
        if (over * over > norm * sum_sq) return false;
    }
    return true;
}

// True when no a beyond +-(C+1) in that direction can pass the filter.
bool side_closed(int sign, int64_t C, int n, const Int& wh, const Int& sum_sq, const std::optional<Int>& ab) {
    const int64_t a = sign * (C + 1);
    // Cauchy-Schwarz: (9-n)a^2 - 6a + 1 - n > 0 for all further a.
    {
        Int q = Int(9 - n) * Int(a) * Int(a) - 6 * Int(a) + Int(1 - n);
        Int dq = 2 * Int(9 - n) * Int(a) - 6;  // derivative in a
        if (n < 9 && q > 0 && (sign > 0 ? dq > 0 : dq < 0)) return true;
        if (n == 9 && sign < 0 && q > 0) return true;
    }
    Int lead = wh * wh - sum_sq;
    if (lead <= 0) return false;
    if (sign < 0) {
        // a^2 (wh^2 - sum_sq) >= sum_sq keeps every area non-positive.
        return Int(a) * Int(a) * lead >= sum_sq;
    }
    if (!ab) return false;
    Int top = Int(a) * wh - *ab;
    Int g = lead * Int(a) * Int(a) - 2 * (*ab) * wh * Int(a) + (*ab) * (*ab) - sum_sq;
    Int dg = 2 * lead * Int(a) - 2 * (*ab) * wh;
    return top > 0 && g > 0 && dg > 0;
}

template <class T>
std::vector<std::vector<int64_t>> search_rational(const Scaled& s, int n, int64_t C, bool parallel) {
    RationalSearch<T> rs;
    rs.n = n;
    rs.C = C;
    rs.wh = as<T>(s.w[0]);
    for (int i = 0; i < n; ++i) rs.wi.push_back(as<T>(s.w[i + 1]));
    rs.tail_sq.assign(n + 1, T(0));
    for (int i = n - 1; i >= 0; --i) rs.tail_sq[i] = rs.tail_sq[i + 1] + rs.wi[i] * rs.wi[i];
    rs.bounded = s.ab.has_value();
    rs.ab = s.ab ? as<T>(*s.ab) : T(0);

    Int sum_sq = 0;
    for (int i = 1; i <= n; ++i) sum_sq += s.w[i] * s.w[i];
    std::vector<std::pair<int64_t, int64_t>> tasks;
    for (int64_t a = -C; a <= C; ++a) {
        if (!level_possible(a, n, s.w[0], sum_sq, s.ab)) continue;
        int64_t r = 0;
        while ((r + 1) * (r + 1) <= a * a + 1) ++r;
        r = std::min(r, C);
        for (int64_t b1 = r; b1 >= -r; --b1) tasks.emplace_back(a, b1);
    }
    std::vector<std::vector<std::vector<int64_t>>> per(tasks.size());
    const long long count = static_cast<long long>(tasks.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (long long t = 0; t < count; ++t) rs.run(tasks[t].first, tasks[t].second, per[t]);
    } else {
        for (long long t = 0; t < count; ++t) rs.run(tasks[t].first, tasks[t].second, per[t]);
    }
    std::vector<std::vector<int64_t>> out;
    for (size_t t = 0; t < tasks.size(); ++t) {
        for (auto& b : per[t]) {
            std::vector<int64_t> c{tasks[t].first};
            for (int64_t x : b) c.push_back(-x);
            out.push_back(std::move(c));
        }
    }
    return out;
}

bool fits_i128(const Scaled& s) {
    const Int lim = Int(1) << 40;
    for (const auto& x : s.w)
        if (x >= lim || x <= -lim) return false;
    if (s.ab && (*s.ab >= lim || *s.ab <= -lim)) return false;
    return true;
}

ExceptionalSet enumerate_impl(const AreaVector& w, std::optional<Rational> area_bound, int64_t C, bool parallel) {
    const Ambient& amb = w.ambient();
    ExceptionalSet set{amb, {}, {}, C, area_bound, false};
    std::vector<HomologyClass> found;
    if (amb.kind() == AmbientKind::RationalBlowup) {
        Scaled s = scale(w, area_bound);
        const int n = amb.exceptional_count();
        auto raw = fits_i128(s) ? search_rational<I128>(s, n, C, parallel) : search_rational<Int>(s, n, C, parallel);
        for (auto& c : raw) found.emplace_back(amb, std::move(c));
        Int sum_sq = 0;
        for (int i = 1; i <= n; ++i) sum_sq += s.w[i] * s.w[i];
        set.incomplete = !(side_closed(+1, C, n, s.w[0], sum_sq, s.ab) && side_closed(-1, C, n, s.w[0], sum_sq, s.ab));
    } else if (amb.kind() == AmbientKind::RuledTrivial) {
        // Exceptional spheres have zero B-coefficient, so they are E_i and F-E_i.
        for (int i = 2; i < amb.rank(); ++i) {
            found.push_back(generator(amb, i));
            found.push_back(generator(amb, 1) - generator(amb, i));
        }
        std::erase_if(found, [&](const HomologyClass& c) {
            Rational a = area(c, w);
            return a <= 0 || (area_bound && a > *area_bound);
        });
    }
    std::vector<std::pair<Rational, HomologyClass>> keyed;
    for (auto& c : found) keyed.emplace_back(area(c, w), c);
    std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first < y.first;
        return x.second < y.second;
    });
    for (auto& [a, c] : keyed) {
        set.classes.push_back(c);
        set.areas.push_back(a);
    }
    return set;
}

}  // namespace

ExceptionalSet enumerate_exceptional(const AreaVector& w, std::optional<Rational> area_bound, int64_t coeff_bound) {
    return enumerate_impl(w, area_bound, coeff_bound, true);
}

ExceptionalSet enumerate_exceptional_serial(const AreaVector& w, std::optional<Rational> area_bound,
                                            int64_t coeff_bound) {
    return enumerate_impl(w, area_bound, coeff_bound, false);
}

std::vector<HomologyClass> minimal_area(const ExceptionalSet& set) {
    if (set.classes.empty()) throw std::invalid_argument("no exceptional classes within the search bounds");
    const Rational least = *std::min_element(set.areas.begin(), set.areas.end());
    std::vector<HomologyClass> out;
    for (size_t i = 0; i < set.classes.size(); ++i)
        if (set.areas[i] == least) out.push_back(set.classes[i]);
    return out;
}

std::vector<HomologyClass> minimal_exceptional(const AreaVector& w, int64_t coeff_bound) {
    return minimal_area(enumerate_exceptional(w, default_area_bound(w), coeff_bound));
}

SecondaryChain secondary_chain(const AreaVector& w, int64_t coeff_bound) {
    const Ambient& amb = w.ambient();
    if (amb.kind() != AmbientKind::RationalBlowup || amb.exceptional_count() < 2)
        throw std::invalid_argument("secondary chain needs CP2#n with n >= 2");
    ExceptionalSet set = enumerate_exceptional(w, std::nullopt, coeff_bound);
    const int n = amb.exceptional_count();
    std::vector<HomologyClass> chosen;  // E_n, E_{n-1}, ...
    auto orthogonal_to = [&](const HomologyClass& c, size_t upto) {
        for (size_t k = 0; k < upto; ++k)
            if (c == chosen[k] || pair(c, chosen[k]) != 0) return false;
        return true;
    };
    while (static_cast<int>(chosen.size()) < n - 1) {
        bool got = false;
        for (const auto& c : set.classes) {
            if (orthogonal_to(c, chosen.size())) {
                chosen.push_back(c);
                got = true;
                break;
            }
        }
        if (!got) throw std::runtime_error("secondary chain exhausted the enumeration bounds");
    }
    // Classes orthogonal to E_3..E_n other than E_2.
    std::vector<HomologyClass> rest;
    for (const auto& c : set.classes)
        if (orthogonal_to(c, chosen.size() - 1) && c != chosen.back()) rest.push_back(c);
    if (rest.size() != 2) throw std::runtime_error("expected two terminal classes, found " + std::to_string(rest.size()));
    const HomologyClass& e2 = chosen.back();
    SecondaryChain out{{}, rest[0], rest[1], TerminalTag::ProductOfSpheres, set.incomplete};
    for (auto it = chosen.rbegin(); it != chosen.rend(); ++it) out.chain.push_back(*it);
    if (pair(rest[0], rest[1]) == 0) {
        out.tag = TerminalTag::ProductOfSpheres;
    } else {
        out.tag = TerminalTag::OnePointBlowup;
        if (pair(rest[0], e2) != 0) std::swap(out.e1, out.e1_prime);
    }
    return out;
}

bool sw_nonzero(const HomologyClass& a, const AreaVector& w) {
    const Ambient& amb = a.ambient();
    if (is_exceptional_class(a) && area(a, w) > 0) return true;
    if (amb.is_ruled() && a == generator(amb, 1)) return true;
    if (sw_index(a) < 0) return false;
    if (area(canonical(amb) - a, w) >= 0) return false;
    if (amb.is_ruled() && pair(a, generator(amb, 1)) == -1) return false;
    return true;
}

std::vector<Check> d_good(const HomologyClass& a, const DivisorConfig& config, const AreaVector& w,
                          const ExceptionalSet& set) {
    if (a.is_zero()) throw std::invalid_argument("D-goodness of the zero class");
    std::vector<Check> out;
    out.push_back({"sw-nonzero", sw_nonzero(a, w),
                   "I=" + std::to_string(sw_index(a)) + ", area(K-A)=" + to_string(area(canonical(a.ambient()) - a, w))});
    bool sq0 = square(a) == 0;
    out.push_back({"primitive-if-square-zero", !sq0 || content(a) == 1,
                   sq0 ? "content " + std::to_string(content(a)) : "A^2 != 0"});
    Check c3{"exceptional-pairing", true, ""};
    for (const auto& e : set.classes) {
        if (e == a) continue;
        if (pair(a, e) < 0) {
            c3.pass = false;
            c3.detail = "A." + e.str() + " = " + std::to_string(pair(a, e));
            break;
        }
    }
    if (c3.pass)
        c3.detail = set.incomplete ? "conditional pass within bounds (|coefficients| <= " +
                                         std::to_string(set.coeff_bound) + ")"
                                   : "complete over " + std::to_string(set.classes.size()) + " classes";
    out.push_back(c3);
    Check c4{"component-pairing", true, "all >= 0"};
    for (const auto& d : config.components()) {
        int64_t p = pair(a, d.cls);
        if (p < 0) {
            c4.pass = false;
            c4.detail = "A." + d.id + " = " + std::to_string(p);
            break;
        }
    }
    out.push_back(c4);
    return out;
}

std::vector<int64_t> apply_matrix(const std::vector<std::vector<int64_t>>& m, const std::vector<int64_t>& v) {
    std::vector<int64_t> out(m.size(), 0);
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

namespace {

using Matrix = std::vector<std::vector<int64_t>>;

Matrix identity(int n) {
    Matrix m(n, std::vector<int64_t>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

Matrix multiply(const Matrix& x, const Matrix& y) {
    const size_t n = x.size();
    Matrix z(n, std::vector<int64_t>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            if (x[i][k] != 0)
                for (size_t j = 0; j < n; ++j) z[i][j] += x[i][k] * y[k][j];
    return z;
}

// x -> x + (x.r) r
Matrix reflection(const Ambient& amb, const std::vector<int64_t>& r) {
    const int n = amb.rank();
    Matrix m = identity(n);
    for (int j = 0; j < n; ++j) {
        std::vector<int64_t> ej(n, 0);
        ej[j] = 1;
        int64_t p = amb.pair(ej, r);
        for (int i = 0; i < n; ++i) m[i][j] += p * r[i];
    }
    return m;
}

}  // namespace

Normalization normalize_to_basis(const HomologyClass& e, int max_steps) {
    const Ambient& amb = e.ambient();
    if (!is_exceptional_class(e)) throw std::invalid_argument(e.str() + " is not exceptional");
    const int n = amb.rank();
    const int off = amb.exceptional_offset();
    Normalization out{identity(n), identity(n), amb.exceptional_labels(), 0, n - 1};
    std::vector<int64_t> cur = e.coeffs();

    auto reflect = [&](const std::vector<int64_t>& r) {
        Matrix R = reflection(amb, r);
        out.matrix = multiply(R, out.matrix);
        out.inverse = multiply(out.inverse, R);
        cur = apply_matrix(R, cur);
        ++out.reflections;
    };
    auto single_generator = [&]() -> int {
        int idx = -1;
        for (int i = 0; i < n; ++i) {
            if (cur[i] == 0) continue;
            if (cur[i] != 1 || i < off || idx >= 0) return -1;
            idx = i;
        }
        return idx;
    };

    if (amb.kind() == AmbientKind::RationalBlowup) {
        int steps = 0;
        while (cur[0] != 0) {
            if (amb.exceptional_count() < 3)
                throw std::invalid_argument("normalizing " + e.str() + " needs at least three exceptional generators");
            if (++steps > max_steps) throw std::runtime_error("normalization step bound exceeded for " + e.str());
            std::vector<int> idx;
            for (int i = 1; i < n; ++i) idx.push_back(i);
            std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) {
                if (cur[x] != cur[y]) return cur[x] < cur[y];  // most negative coefficient = largest multiplicity
                return x > y;
            });
            std::vector<int64_t> r(n, 0);
            r[0] = 1;
            for (int k = 0; k < 3; ++k) r[idx[k]] = -1;
            int64_t before = cur[0] < 0 ? -cur[0] : cur[0];
            reflect(r);
            int64_t after = cur[0] < 0 ? -cur[0] : cur[0];
            if (after >= before) throw std::runtime_error("Cremona reduction stalled on " + e.str());
        }
    } else if (amb.kind() == AmbientKind::RuledTrivial) {
        if (cur[0] != 0) throw std::invalid_argument(e.str() + " has a B-component");
        if (cur[1] == 1) {
            int j = -1;
            for (int i = off; i < n; ++i)
                if (cur[i] == -1) j = i;
            if (amb.exceptional_count() < 2)
                throw std::invalid_argument("normalizing " + e.str() + " needs two exceptional generators");
            int k = j == n - 1 ? n - 2 : n - 1;
            std::vector<int64_t> r(n, 0);
            r[1] = 1;
            r[j] = -1;
            r[k] = -1;
            reflect(r);
        }
    } else {
        throw std::invalid_argument("no exceptional classes in " + amb.describe());
    }

    int j = single_generator();
    if (j < 0) throw std::runtime_error("normalization of " + e.str() + " did not reach a generator");
    // Cyclic shift moving generator j to the end.
    Matrix P(n, std::vector<int64_t>(n, 0)), Pinv(n, std::vector<int64_t>(n, 0));
    for (int i = 0; i < n; ++i) {
        int to = i < j ? i : (i == j ? n - 1 : i - 1);
        P[to][i] = 1;
        Pinv[i][to] = 1;
    }
    out.matrix = multiply(P, out.matrix);
    out.inverse = multiply(out.inverse, Pinv);
    std::string moved = out.labels[j - off];
    out.labels.erase(out.labels.begin() + (j - off));
    out.labels.push_back(moved);
    return out;
}

}  // namespace symdiv
