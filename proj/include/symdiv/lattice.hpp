#pragma once

#include "symdiv/rational.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace symdiv {

enum class AmbientKind { ProjectivePlane, ProductOfSpheres, RationalBlowup, RuledTrivial, RuledTwisted };

std::string kind_name(AmbientKind k);

// Homology lattice of one of the five ambient families. Cheap to copy; the
// basis is shared between copies.
class Ambient {
public:
    static Ambient projective_plane();
    static Ambient product_of_spheres();
    static Ambient rational_blowup(int n);
    static Ambient rational_blowup(std::vector<std::string> labels);
    static Ambient ruled_trivial(int g, int n);
    static Ambient ruled_trivial(int g, std::vector<std::string> labels);
    static Ambient ruled_twisted(int g);

    AmbientKind kind() const { return d_->kind; }
    int base_genus() const { return d_->g; }
    int rank() const { return static_cast<int>(d_->basis.size()); }
    int exceptional_count() const { return rank() - exceptional_offset(); }
    // Basis index of E1 (equal to rank() when there are no exceptional generators).
    int exceptional_offset() const;
    const std::vector<std::string>& basis() const { return d_->basis; }
    std::vector<std::string> exceptional_labels() const;
    int index_of(const std::string& name) const;  // -1 if absent

    bool is_rational() const;
    bool is_ruled() const;
    int b2_minus() const;

    int64_t form(int i, int j) const;
    int64_t pair(const std::vector<int64_t>& a, const std::vector<int64_t>& b) const;

    std::string describe() const;
    // Unused label of the form E<k> for a new exceptional generator.
    std::string fresh_label() const;

    friend bool operator==(const Ambient& a, const Ambient& b);
    friend bool operator!=(const Ambient& a, const Ambient& b) { return !(a == b); }

private:
    struct Data {
        AmbientKind kind;
        int g;
        std::vector<std::string> basis;
    };
    explicit Ambient(Data d);
    std::shared_ptr<const Data> d_;
};

class HomologyClass {
public:
    explicit HomologyClass(Ambient amb);
    HomologyClass(Ambient amb, std::vector<int64_t> coeffs);

    const Ambient& ambient() const { return amb_; }
    const std::vector<int64_t>& coeffs() const { return c_; }
    int64_t operator[](int i) const { return c_[i]; }
    bool is_zero() const;

    HomologyClass& operator+=(const HomologyClass& o);
    HomologyClass& operator-=(const HomologyClass& o);
    friend HomologyClass operator+(HomologyClass a, const HomologyClass& b) { return a += b; }
    friend HomologyClass operator-(HomologyClass a, const HomologyClass& b) { return a -= b; }
    friend HomologyClass operator-(HomologyClass a);
    friend HomologyClass operator*(int64_t k, HomologyClass a);
    friend bool operator==(const HomologyClass& a, const HomologyClass& b);
    friend bool operator!=(const HomologyClass& a, const HomologyClass& b) { return !(a == b); }
    // Lexicographic order on coefficients (same ambient assumed).
    friend bool operator<(const HomologyClass& a, const HomologyClass& b) { return a.c_ < b.c_; }

    // Human-readable form such as "6H-3E1-E2".
    std::string str() const;

private:
    void require_same(const HomologyClass& o) const;
    Ambient amb_;
    std::vector<int64_t> c_;
};

HomologyClass generator(const Ambient& amb, int index);
HomologyClass generator(const Ambient& amb, const std::string& name);
// Parses sums such as "2H-E1-E2" or "B-2F-E5" against the ambient's basis.
HomologyClass parse_class(const Ambient& amb, const std::string& text);

int64_t pair(const HomologyClass& a, const HomologyClass& b);
int64_t square(const HomologyClass& a);
HomologyClass canonical(const Ambient& amb);
std::optional<int64_t> adjunction_genus(const HomologyClass& a);
int64_t sw_index(const HomologyClass& a);
bool is_exceptional_class(const HomologyClass& a);
int64_t content(const HomologyClass& a);  // gcd of coefficients

// Fiber f = H - E1 and section s = H of the one-point blowup of the plane.
HomologyClass fiber_f(const Ambient& cp2_1);
HomologyClass section_s(const Ambient& cp2_1);

class AreaVector {
public:
    AreaVector(Ambient amb, std::vector<Rational> w);
    const Ambient& ambient() const { return amb_; }
    const std::vector<Rational>& values() const { return w_; }
    const Rational& operator[](int i) const { return w_[i]; }
    friend bool operator==(const AreaVector& a, const AreaVector& b) {
        return a.amb_ == b.amb_ && a.w_ == b.w_;
    }

private:
    Ambient amb_;
    std::vector<Rational> w_;
};

// Violations of the positivity requirements on generator areas.
std::vector<std::string> check_areas(const AreaVector& w);
Rational area(const HomologyClass& a, const AreaVector& w);

}  // namespace symdiv
