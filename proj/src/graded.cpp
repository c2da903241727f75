#include "wittkit/graded.hpp"

#include "wittkit/error.hpp"

#include <omp.h>

#include <algorithm>
#include <set>

namespace wittkit {

namespace {

Scalar scalar_pow(const Scalar& base, long e) {
    Integer num = base.get_num();
    Integer den = base.get_den();
    const unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    Integer pn, pd;
    mpz_pow_ui(pn.get_mpz_t(), num.get_mpz_t(), k);
    mpz_pow_ui(pd.get_mpz_t(), den.get_mpz_t(), k);
    Scalar r(pn, pd);
    r.canonicalize();
    return e < 0 ? Scalar(1 / r) : r;
}

std::string pair_text(const Scalar& a, const Scalar& b) { return "(" + to_string(a) + ", " + to_string(b) + ")"; }

void require_window_grades(const GradedElement& x, const Pseudomonoid& g, const Window& w) {
    for (const auto& [grade, c] : x.terms()) {
        if (!w.contains(grade)) raise(Errc::GradeOverflow, "grade " + to_string(grade) + " lies outside the window");
        if (!g.contains(grade)) raise(Errc::NotInG, "grade " + to_string(grade) + " is not in " + to_string(g));
    }
}

// [e_0, y]: multiplies each component by its grade.
GradedElement grade_operator(const GradedElement& y) {
    std::map<Scalar, Scalar> t;
    for (const auto& [grade, c] : y.terms()) t.emplace(grade, grade * c);
    return GradedElement(std::move(t));
}

}  // namespace

GradedElement::GradedElement(std::map<Scalar, Scalar> terms) : terms_(std::move(terms)) {
    std::erase_if(terms_, [](const auto& kv) { return kv.second == 0; });
}

GradedElement GradedElement::basis(const Scalar& grade, const Scalar& c) {
    return GradedElement(std::map<Scalar, Scalar>{{grade, c}});
}

Scalar GradedElement::coeff(const Scalar& grade) const {
    auto it = terms_.find(grade);
    return it == terms_.end() ? Scalar(0) : it->second;
}

GradedElement operator+(const GradedElement& x, const GradedElement& y) {
    auto t = x.terms();
    for (const auto& [grade, c] : y.terms()) t[grade] += c;
    return GradedElement(std::move(t));
}

GradedElement operator-(const GradedElement& x, const GradedElement& y) { return x + Scalar(-1) * y; }

GradedElement operator*(const Scalar& c, const GradedElement& x) {
    std::map<Scalar, Scalar> t;
    for (const auto& [grade, v] : x.terms()) t.emplace(grade, c * v);
    return GradedElement(std::move(t));
}

std::string to_string(const GradedElement& x) {
    std::string s = "{";
    bool first = true;
    for (const auto& [grade, c] : x.terms()) {
        if (!first) s += ", ";
        first = false;
        s += to_string(grade) + ": " + to_string(c);
    }
    return s + "}";
}

GradedElement graded_bracket(const GradedElement& x, const GradedElement& y, const Pseudomonoid& g,
                             const Window& w) {
    require_window_grades(x, g, w);
    require_window_grades(y, g, w);
    std::map<Scalar, Scalar> out;
    for (const auto& [a, ca] : x.terms()) {
        for (const auto& [b, cb] : y.terms()) {
            if (a == b) continue;
            const Scalar s = a + b;
            if (!w.contains(s))
                raise(Errc::GradeOverflow, "bracket of grades " + pair_text(a, b) + " leaves the window");
            if (!g.contains(s)) raise(Errc::NotInG, to_string(s) + " = " + to_string(a) + " + " + to_string(b) + " is not in G");
            out[s] += (b - a) * ca * cb;
        }
    }
    return GradedElement(std::move(out));
}

std::vector<Scalar> supp(const GradedElement& x) {
    std::vector<Scalar> out;
    for (const auto& kv : x.terms()) out.push_back(kv.first);
    return out;
}

Scalar init(const GradedElement& x, OrderChoice ord) {
    if (x.is_zero()) raise(Errc::ZeroElement, "init of the zero element");
    return ord == OrderChoice::Ascending ? x.terms().begin()->first : x.terms().rbegin()->first;
}

Scalar term(const GradedElement& x, OrderChoice ord) {
    if (x.is_zero()) raise(Errc::ZeroElement, "term of the zero element");
    return ord == OrderChoice::Ascending ? x.terms().rbegin()->first : x.terms().begin()->first;
}

bool Theta::contains(const GradedElement& x) const {
    for (const auto& kv : x.terms())
        if (!std::binary_search(grades_.begin(), grades_.end(), kv.first)) return false;
    return true;
}

Theta theta(std::vector<Scalar> grades, const Pseudomonoid& g, const Window& w) {
    std::sort(grades.begin(), grades.end());
    grades.erase(std::unique(grades.begin(), grades.end()), grades.end());
    for (const auto& x : grades)
        if (!w.contains(x) || !g.contains(x))
            raise(Errc::SubsetNotInG, to_string(x) + " is not in the G-window");
    return Theta(std::move(grades));
}

namespace {

void extract(const GradedElement& y, ComponentSplit& out, std::vector<GradedElement>& comps) {
    if (y.terms().size() <= 1) {
        if (!y.is_zero()) comps.push_back(y);
        return;
    }
    // Any support of two or more grades has a nonzero one.
    Scalar a1 = 0;
    for (const auto& kv : y.terms())
        if (kv.first != 0) {
            a1 = kv.first;
            break;
        }
    // y - (1/a1)[e_0, y] = sum (1 - a_i/a1) c_i e_{a_i}: the a1 component drops out.
    GradedElement reduced = y - (Scalar(1) / a1) * grade_operator(y);
    out.reductions.push_back(reduced);

    std::vector<GradedElement> sub;
    extract(reduced, out, sub);
    GradedElement rest;
    for (const auto& c : sub) {
        const Scalar& ai = c.terms().begin()->first;
        GradedElement orig = (Scalar(1) / (1 - ai / a1)) * c;
        rest = rest + orig;
        comps.push_back(orig);
    }
    comps.push_back(y - rest);
}

}  // namespace

ComponentSplit component_extraction(const GradedElement& y, const Pseudomonoid& g, const Window& w) {
    if (y.is_zero()) raise(Errc::ZeroElement, "component extraction of the zero element");
    require_window_grades(y, g, w);
    ComponentSplit out;
    extract(y, out, out.components);
    std::sort(out.components.begin(), out.components.end(),
              [](const GradedElement& a, const GradedElement& b) { return init(a) < init(b); });

    // Must coincide with reading the components off directly.
    if (out.components.size() != y.terms().size()) raise(Errc::Internal, "component count mismatch");
    auto it = y.terms().begin();
    for (const auto& c : out.components) {
        if (c != GradedElement::basis(it->first, it->second)) raise(Errc::Internal, "component mismatch");
        ++it;
    }
    return out;
}

IdealClosure ideal_from_elements(const std::vector<GradedElement>& gens, const Pseudomonoid& g, const Window& w) {
    const auto elems = pm_elements(g, w).elements;
    std::set<Scalar> have;
    for (const auto& x : gens) {
        require_window_grades(x, g, w);
        for (const auto& kv : x.terms()) have.insert(kv.first);
    }
    std::set<GradePair> overflow;
    std::vector<Scalar> todo(have.begin(), have.end());
    while (!todo.empty()) {
        Scalar a = todo.back();
        todo.pop_back();
        for (const auto& b : elems) {
            if (b == a) continue;
            const Scalar s = a + b;
            if (!w.contains(s)) {
                overflow.emplace(a, b);
                continue;
            }
            if (have.insert(s).second) todo.push_back(s);
        }
    }
    return {{have.begin(), have.end()}, {overflow.begin(), overflow.end()}};
}

namespace {

void require_in_g(const GradedElement& x, const Pseudomonoid& g) {
    for (const auto& kv : x.terms())
        if (!g.contains(kv.first)) raise(Errc::NotInG, "grade " + to_string(kv.first) + " is not in " + to_string(g));
}

struct Column {
    std::vector<std::pair<std::size_t, Scalar>> entries;
    std::vector<GradePair> overflow;
};

Column ad_column(const GradedElement& alpha, const std::vector<Scalar>& basis, std::size_t j) {
    Column col;
    const Scalar& b = basis[j];
    for (const auto& [a, c] : alpha.terms()) {
        if (a == b) continue;
        const Scalar s = a + b;
        auto it = std::lower_bound(basis.begin(), basis.end(), s);
        if (it == basis.end() || *it != s) {
            col.overflow.emplace_back(b, s);
            continue;
        }
        col.entries.emplace_back(static_cast<std::size_t>(it - basis.begin()), (b - a) * c);
    }
    return col;
}

AdMatrix assemble(std::vector<Scalar> basis, std::vector<Column>& cols) {
    AdMatrix m;
    const std::size_t n = basis.size();
    m.basis = std::move(basis);
    m.entries.assign(n, std::vector<Scalar>(n, 0));
    m.column_overflows.assign(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        for (auto& [i, v] : cols[j].entries) m.entries[i][j] += v;
        m.column_overflows[j] = !cols[j].overflow.empty();
        m.overflow.insert(m.overflow.end(), cols[j].overflow.begin(), cols[j].overflow.end());
    }
    return m;
}

}  // namespace

AdMatrix ad_matrix(const GradedElement& alpha, const Pseudomonoid& g, const Window& w) {
    require_in_g(alpha, g);
    auto basis = pm_elements(g, w).elements;
    const auto n = static_cast<long>(basis.size());
    std::vector<Column> cols(basis.size());
    // Columns are independent; each thread fills its own slots.
#pragma omp parallel for schedule(dynamic, 8) if (n >= 64 && !omp_in_parallel())
    for (long j = 0; j < n; ++j) cols[static_cast<std::size_t>(j)] = ad_column(alpha, basis, static_cast<std::size_t>(j));
    return assemble(std::move(basis), cols);
}

AdMatrix serial::ad_matrix(const GradedElement& alpha, const Pseudomonoid& g, const Window& w) {
    require_in_g(alpha, g);
    auto basis = pm_elements(g, w).elements;
    std::vector<Column> cols;
    for (std::size_t j = 0; j < basis.size(); ++j) cols.push_back(ad_column(alpha, basis, j));
    return assemble(std::move(basis), cols);
}

std::vector<GradedElement> eigen_kernel(const GradedElement& alpha, const Scalar& a, const Pseudomonoid& g,
                                        const Window& w) {
    const AdMatrix m = ad_matrix(alpha, g, w);
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < m.basis.size(); ++j)
        if (!m.column_overflows[j]) keep.push_back(j);

    Matrix sub(m.basis.size(), std::vector<Scalar>(keep.size()));
    for (std::size_t i = 0; i < m.basis.size(); ++i)
        for (std::size_t k = 0; k < keep.size(); ++k) {
            sub[i][k] = m.entries[i][keep[k]];
            if (i == keep[k]) sub[i][k] -= a;
        }

    std::vector<GradedElement> out;
    for (const auto& v : null_space(sub, keep.size())) {
        std::map<Scalar, Scalar> t;
        for (std::size_t k = 0; k < keep.size(); ++k)
            if (v[k] != 0) t.emplace(m.basis[keep[k]], v[k]);
        GradedElement e(std::move(t));
        out.push_back((Scalar(1) / e.terms().rbegin()->second) * e);
    }
    return out;
}

SpectrumWindow spectrum_window(const GradedElement& alpha, const Pseudomonoid& g, const Window& w) {
    const Scalar k = alpha.coeff(0);
    if (k == 0 || alpha.terms().size() > 2)
        raise(Errc::UnsupportedForm, "spectrum_window needs k e_0 or k e_0 + k' e_m, got " + to_string(alpha));
    if (alpha.terms().size() == 2) {
        const Scalar m = alpha.terms().begin()->first == 0 ? alpha.terms().rbegin()->first : alpha.terms().begin()->first;
        const auto ex = extreme_elements(g, w, OrderChoice::Ascending);
        const bool extreme = (ex.min_certified && ex.min == m) || (ex.max_certified && ex.max == m);
        if (!extreme)
            raise(Errc::UnsupportedForm, "grade " + to_string(m) + " is not a certified extreme of " + to_string(g));
    }

    SpectrumWindow out;
    out.overflow = ad_matrix(alpha, g, w).overflow;
    for (const auto& grade : pm_elements(g, w).elements) {
        const Scalar mu = k * grade;
        if (!eigen_kernel(alpha, mu, g, w).empty())
            out.eigenvalues.push_back(mu);
        else
            out.boundary_lost.push_back(mu);
    }
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
    std::sort(out.boundary_lost.begin(), out.boundary_lost.end());
    return out;
}

EndoSpec EndoSpec::virasoro(long a) {
    if (a == 0) raise(Errc::InvalidEndo, "f_a needs a != 0");
    return {Kind::VirasoroScale, Scalar(a)};
}

EndoSpec EndoSpec::grade_scale(const Scalar& k) {
    if (k == 0) raise(Errc::InvalidEndo, "grade scale needs k != 0");
    return {Kind::GradeScale, k};
}

EndoSpec parse_endo(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) raise(Errc::ParseError, "expected virasoro:<a> or scale:<k>");
    auto head = text.substr(0, colon);
    auto value = parse_scalar(text.substr(colon + 1));
    if (!value) raise(Errc::ParseError, "bad endomorphism parameter '" + std::string(text.substr(colon + 1)) + "'");
    if (head == "virasoro") {
        if (!is_integer(*value)) raise(Errc::InvalidEndo, "f_a needs an integer a");
        return EndoSpec::virasoro(to_long(*value));
    }
    if (head == "scale") return EndoSpec::grade_scale(*value);
    raise(Errc::ParseError, "unknown endomorphism '" + std::string(head) + "'");
}

std::string to_string(const EndoSpec& e) {
    return (e.kind == EndoSpec::Kind::VirasoroScale ? "virasoro:" : "scale:") + to_string(e.a);
}

namespace {

void check_endo_domain(const EndoSpec& e, const Pseudomonoid& g, const Window& w) {
    if (e.kind == EndoSpec::Kind::VirasoroScale) {
        const bool is_z = g.kind() == Pseudomonoid::Kind::Integers ||
                          (g.kind() == Pseudomonoid::Kind::Step && g.step_size() == 1);
        if (!is_z) raise(Errc::InvalidEndo, "f_a is defined over G = Z, not " + to_string(g));
        return;
    }
    for (const auto& x : pm_elements(g, w).elements)
        if (!g.contains(e.a * x))
            raise(Errc::InvalidEndo, to_string(e.a) + " * " + to_string(x) + " is not in " + to_string(g));
}

std::pair<Scalar, Scalar> endo_image(const EndoSpec& e, const Scalar& grade) {
    if (e.kind == EndoSpec::Kind::VirasoroScale) return {e.a * grade, scalar_pow(e.a, -(to_long(grade) + 1))};
    return {e.a * grade, Scalar(1) / e.a};
}

}  // namespace

GradedElement endo_apply(const EndoSpec& e, const GradedElement& x, const Pseudomonoid& g, const Window& w) {
    check_endo_domain(e, g, w);
    std::map<Scalar, Scalar> out;
    for (const auto& [grade, c] : x.terms()) {
        if (!g.contains(grade)) raise(Errc::NotInG, "grade " + to_string(grade) + " is not in " + to_string(g));
        auto [img, factor] = endo_image(e, grade);
        if (!w.contains(img)) raise(Errc::GradeOverflow, "image grade " + to_string(img) + " leaves the window");
        out[img] += factor * c;
    }
    return GradedElement(std::move(out));
}

EndoReport endo_verify(const EndoSpec& e, const Pseudomonoid& g, const Window& w) {
    check_endo_domain(e, g, w);
    const auto elems = pm_elements(g, w).elements;
    EndoReport r;

    std::set<Scalar> images;
    std::size_t image_count = 0;
    for (const auto& n : elems) {
        const Scalar img = e.a * n;
        images.insert(img);
        ++image_count;
        if (w.contains(img)) r.image_grades.push_back(img);
        if (!g.contains(img / e.a)) r.image_in_scaled_lattice = false;
    }
    std::sort(r.image_grades.begin(), r.image_grades.end());
    r.injective_on_window = images.size() == image_count;
    for (const auto& x : elems)
        if (!g.contains(x / e.a)) r.missed.push_back(x);
    r.onto_window = r.missed.empty();

    auto in_window = [&](const Scalar& x) { return w.contains(x); };
    for (std::size_t i = 0; i < elems.size() && r.pass; ++i) {
        for (std::size_t j = i + 1; j < elems.size(); ++j) {
            const Scalar& n = elems[i];
            const Scalar& m = elems[j];
            if (!in_window(n + m) || !in_window(e.a * n) || !in_window(e.a * m) || !in_window(e.a * (n + m)))
                continue;
            const auto en = GradedElement::basis(n);
            const auto em = GradedElement::basis(m);
            auto lhs = graded_bracket(endo_apply(e, en, g, w), endo_apply(e, em, g, w), g, w);
            auto rhs = endo_apply(e, graded_bracket(en, em, g, w), g, w);
            ++r.pairs_checked;
            if (lhs != rhs) {
                r.pass = false;
                r.counterexample = GradePair(n, m);
                break;
            }
        }
    }
    return r;
}

WittElement to_witt(const GradedElement& x) {
    LaurentSeries f;
    for (const auto& [grade, c] : x.terms()) {
        if (!is_integer(grade)) raise(Errc::InvalidArgument, "grade " + to_string(grade) + " has no Witt counterpart");
        f = f + LaurentSeries::monomial(c, to_long(grade) + 1);
    }
    return WittElement(f);
}

GradedElement from_witt(const WittElement& f) {
    const auto& s = f.coeff();
    if (!s.is_exact()) raise(Errc::InvalidArgument, "truncated coefficient has no finite graded form");
    std::map<Scalar, Scalar> t;
    Exponent e = s.lead();
    for (const auto& c : s.coefficients()) {
        if (c != 0) t.emplace(Scalar(e - 1), c);
        ++e;
    }
    return GradedElement(std::move(t));
}

GradedElement parse_graded(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
        while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text.size() < 2 || text.front() != '{' || text.back() != '}')
        raise(Errc::ParseError, "expected {g: c, ...}, got '" + std::string(text) + "'");
    text = trim(text.substr(1, text.size() - 2));
    std::map<Scalar, Scalar> t;
    while (!text.empty()) {
        auto comma = text.find(',');
        auto item = text.substr(0, comma);
        auto colon = item.find(':');
        if (colon == std::string_view::npos) raise(Errc::ParseError, "expected g: c in '" + std::string(item) + "'");
        auto grade = parse_scalar(trim(item.substr(0, colon)));
        auto coeff = parse_scalar(trim(item.substr(colon + 1)));
        if (!grade || !coeff) raise(Errc::ParseError, "bad term '" + std::string(trim(item)) + "'");
        t[*grade] += *coeff;
        if (comma == std::string_view::npos) break;
        text = trim(text.substr(comma + 1));
    }
    return GradedElement(std::move(t));
}

}  // namespace wittkit
