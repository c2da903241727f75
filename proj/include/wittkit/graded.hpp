#pragma once

#include "wittkit/linalg.hpp"
#include "wittkit/pseudomonoid.hpp"
#include "wittkit/witt.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wittkit {

// Finite combination sum c_g e_g of basis elements of a strongly graded algebra.
class GradedElement {
public:
    GradedElement() = default;
    explicit GradedElement(std::map<Scalar, Scalar> terms);

    static GradedElement basis(const Scalar& grade, const Scalar& c = 1);

    const std::map<Scalar, Scalar>& terms() const noexcept { return terms_; }
    Scalar coeff(const Scalar& grade) const;
    bool is_zero() const noexcept { return terms_.empty(); }

    bool operator==(const GradedElement&) const = default;

private:
    std::map<Scalar, Scalar> terms_;
};

GradedElement operator+(const GradedElement& x, const GradedElement& y);
GradedElement operator-(const GradedElement& x, const GradedElement& y);
GradedElement operator*(const Scalar& c, const GradedElement& x);

// "{-1: 1, 0: 3}"; the zero element prints as "{}".
std::string to_string(const GradedElement& x);

using GradePair = std::pair<Scalar, Scalar>;

/// [e_a, e_b] = (b - a) e_{a+b}, extended bilinearly. Both supports must lie in
/// G and the window. Throws GradeOverflow naming the first pair whose sum leaves
/// the window, and NotInG when a sum inside the window is missing from G.
GradedElement graded_bracket(const GradedElement& x, const GradedElement& y, const Pseudomonoid& g,
                             const Window& w);

std::vector<Scalar> supp(const GradedElement& x);
// Least and greatest support grade under the order; throw ZeroElement on 0.
Scalar init(const GradedElement& x, OrderChoice ord = OrderChoice::Ascending);
Scalar term(const GradedElement& x, OrderChoice ord = OrderChoice::Ascending);

// The subspace spanned by e_a for a in the grade set.
class Theta {
public:
    explicit Theta(std::vector<Scalar> grades) : grades_(std::move(grades)) {}
    const std::vector<Scalar>& grades() const noexcept { return grades_; }
    bool contains(const GradedElement& x) const;

private:
    std::vector<Scalar> grades_;
};

// Throws SubsetNotInG unless every grade lies in G and the window.
Theta theta(std::vector<Scalar> grades, const Pseudomonoid& g, const Window& w);

struct ComponentSplit {
    std::vector<GradedElement> components;  // one per support grade, ascending
    // y - (1/a)[e_0, y] for the successive reductions; each drops the grade a.
    std::vector<GradedElement> reductions;
};

/// Splits y into homogeneous components using only brackets with e_0, as in
/// the argument that an ideal containing y contains each of its components.
ComponentSplit component_extraction(const GradedElement& y, const Pseudomonoid& g, const Window& w);

struct IdealClosure {
    std::vector<Scalar> grades;
    std::vector<GradePair> overflow;  // (source grade, bracket partner) pairs that left the window
};

// Support of the ideal generated by gens, closed under bracketing with window basis elements.
IdealClosure ideal_from_elements(const std::vector<GradedElement>& gens, const Pseudomonoid& g, const Window& w);

struct AdMatrix {
    std::vector<Scalar> basis;          // window grades, ascending
    Matrix entries;                     // entries[i][j]: e_{basis[i]}-coefficient of [alpha, e_{basis[j]}]
    std::vector<GradePair> overflow;    // (source grade, image grade) outside the window
    std::vector<bool> column_overflows;
};

AdMatrix ad_matrix(const GradedElement& alpha, const Pseudomonoid& g, const Window& w);

namespace serial {
AdMatrix ad_matrix(const GradedElement& alpha, const Pseudomonoid& g, const Window& w);
}

/// Basis of the a-eigenspace of ad(alpha), computed on the overflow-free
/// columns of the window matrix. Vectors are scaled so their term coefficient is 1.
std::vector<GradedElement> eigen_kernel(const GradedElement& alpha, const Scalar& a, const Pseudomonoid& g,
                                        const Window& w);

struct SpectrumWindow {
    std::vector<Scalar> eigenvalues;
    // k*g for window grades g whose kernel came out empty because of overflow.
    std::vector<Scalar> boundary_lost;
    std::vector<GradePair> overflow;
};

/// Eigenvalues of ad(alpha) among the candidates k*g, g in the window, for
/// alpha = k e_0 or k e_0 + k' e_m with m a certified extreme of G.
/// Throws UnsupportedForm for any other alpha.
SpectrumWindow spectrum_window(const GradedElement& alpha, const Pseudomonoid& g, const Window& w);

struct EndoSpec {
    enum class Kind { VirasoroScale, GradeScale };
    Kind kind = Kind::VirasoroScale;
    Scalar a = 1;

    static EndoSpec virasoro(long a);
    static EndoSpec grade_scale(const Scalar& k);
};

// "virasoro:<a>" or "scale:<k>"
EndoSpec parse_endo(std::string_view text);
std::string to_string(const EndoSpec& e);

/// VirasoroScale(a): e_n -> a^{-(n+1)} e_{an}, over G = Z.
/// GradeScale(k): e_g -> (1/k) e_{kg}, requires kG in G on the window.
GradedElement endo_apply(const EndoSpec& e, const GradedElement& x, const Pseudomonoid& g, const Window& w);

struct EndoReport {
    bool pass = true;
    std::optional<GradePair> counterexample;
    std::size_t pairs_checked = 0;
    std::vector<Scalar> image_grades;      // images of window basis elements that stay in the window
    bool image_in_scaled_lattice = true;   // every image grade is a multiple of a
    bool injective_on_window = true;
    bool onto_window = true;
    std::vector<Scalar> missed;            // window grades with no preimage
};

EndoReport endo_verify(const EndoSpec& e, const Pseudomonoid& g, const Window& w);

// e_n <-> x^{n+1} D on integer grades.
WittElement to_witt(const GradedElement& x);
GradedElement from_witt(const WittElement& f);

// "{g1: c1, g2: c2}"
GradedElement parse_graded(std::string_view text);

}  // namespace wittkit
