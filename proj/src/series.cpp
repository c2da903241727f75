#include "wittkit/series.hpp"

#include "wittkit/error.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wittkit {

namespace {

constexpr Exponent kInf = std::numeric_limits<Exponent>::max() / 4;

Exponent prec_or_inf(const LaurentSeries& f) { return f.precision().value_or(kInf); }

// Products with at least this many output terms go through the OpenMP kernel.
constexpr std::size_t kParallelThreshold = 48;

}  // namespace

LaurentSeries::LaurentSeries(Exponent lead, std::vector<Scalar> coeffs, std::optional<Exponent> prec)
    : lead_(lead), coeffs_(std::move(coeffs)), prec_(prec) {
    canonicalize();
}

void LaurentSeries::canonicalize() {
    if (prec_) {
        // Keep exactly the exponents lead..prec-1.
        if (end() > *prec_) {
            Exponent keep = std::max<Exponent>(*prec_ - lead_, 0);
            coeffs_.resize(static_cast<std::size_t>(keep));
        }
    }
    std::size_t first = 0;
    while (first < coeffs_.size() && coeffs_[first] == 0) ++first;
    if (first == coeffs_.size()) {
        coeffs_.clear();
        lead_ = prec_ ? *prec_ : 0;
        return;
    }
    if (first > 0) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(first));
        lead_ += static_cast<Exponent>(first);
    }
    if (prec_) {
        if (end() < *prec_) coeffs_.resize(static_cast<std::size_t>(*prec_ - lead_));
    } else {
        while (coeffs_.back() == 0) coeffs_.pop_back();
    }
}

LaurentSeries LaurentSeries::exact(Exponent lead, std::vector<Scalar> coeffs) {
    return LaurentSeries(lead, std::move(coeffs), std::nullopt);
}

LaurentSeries LaurentSeries::truncated(Exponent lead, std::vector<Scalar> coeffs, Exponent prec) {
    return LaurentSeries(lead, std::move(coeffs), prec);
}

LaurentSeries LaurentSeries::monomial(const Scalar& c, Exponent e) { return exact(e, {c}); }

LaurentSeries LaurentSeries::constant(const Scalar& c) { return exact(0, {c}); }

LaurentSeries LaurentSeries::variable() { return exact(1, {Scalar(1)}); }

LaurentSeries LaurentSeries::big_o(Exponent prec) { return LaurentSeries(prec, {}, prec); }

Scalar LaurentSeries::coeff(Exponent e) const {
    if (!is_known(e))
        raise(Errc::Undecidable, "coefficient of x^" + std::to_string(e) + " lies beyond O(x^" +
                                     std::to_string(*prec_) + ")");
    if (e < lead_ || e >= end()) return Scalar(0);
    return coeffs_[static_cast<std::size_t>(e - lead_)];
}

std::size_t LaurentSeries::nonzero_terms() const {
    return static_cast<std::size_t>(std::count_if(coeffs_.begin(), coeffs_.end(), [](const Scalar& c) { return c != 0; }));
}

bool LaurentSeries::is_constant() const { return is_exact() && (is_zero() || (lead_ == 0 && coeffs_.size() == 1)); }

LaurentSeries LaurentSeries::truncate(Exponent prec) const {
    Exponent p = prec_ ? std::min(*prec_, prec) : prec;
    return LaurentSeries(lead_, coeffs_, p);
}

LaurentSeries LaurentSeries::operator-() const {
    LaurentSeries r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

LaurentSeries add(const LaurentSeries& f, const LaurentSeries& g) {
    std::optional<Exponent> prec;
    if (!f.is_exact() || !g.is_exact()) prec = std::min(prec_or_inf(f), prec_or_inf(g));
    if (f.is_zero() && g.is_zero()) return prec ? LaurentSeries::big_o(*prec) : LaurentSeries{};
    Exponent lo = kInf;
    Exponent hi = -kInf;
    for (const auto* s : {&f, &g}) {
        if (s->is_zero()) continue;
        lo = std::min(lo, s->lead());
        hi = std::max(hi, s->end());
    }
    if (prec) {
        hi = std::min(hi, *prec);
        if (lo >= hi) return LaurentSeries::big_o(*prec);
    }
    std::vector<Scalar> out(static_cast<std::size_t>(hi - lo));
    for (const auto* s : {&f, &g}) {
        auto cs = s->coefficients();
        for (std::size_t i = 0; i < cs.size(); ++i) {
            Exponent e = s->lead() + static_cast<Exponent>(i);
            if (e >= hi) break;
            out[static_cast<std::size_t>(e - lo)] += cs[i];
        }
    }
    return prec ? LaurentSeries::truncated(lo, std::move(out), *prec) : LaurentSeries::exact(lo, std::move(out));
}

LaurentSeries operator+(const LaurentSeries& f, const LaurentSeries& g) { return add(f, g); }

LaurentSeries operator-(const LaurentSeries& f, const LaurentSeries& g) { return add(f, -g); }

LaurentSeries scale(const LaurentSeries& f, const Scalar& c) {
    if (c == 0) return f.is_exact() ? LaurentSeries{} : LaurentSeries::big_o(*f.precision());
    std::vector<Scalar> cs(f.coefficients().begin(), f.coefficients().end());
    for (auto& v : cs) v *= c;
    return f.is_exact() ? LaurentSeries::exact(f.lead(), std::move(cs))
                        : LaurentSeries::truncated(f.lead(), std::move(cs), *f.precision());
}

LaurentSeries operator*(const Scalar& c, const LaurentSeries& f) { return scale(f, c); }

LaurentSeries shift(const LaurentSeries& f, Exponent k) {
    std::vector<Scalar> cs(f.coefficients().begin(), f.coefficients().end());
    if (f.is_exact()) return LaurentSeries::exact(f.lead() + k, std::move(cs));
    return LaurentSeries::truncated(f.lead() + k, std::move(cs), *f.precision() + k);
}

namespace kernels {

std::vector<Scalar> cauchy_product_serial(std::span<const Scalar> a, std::span<const Scalar> b,
                                          std::size_t count) {
    std::vector<Scalar> out(count);
    if (a.empty() || b.empty()) return out;
    for (std::size_t k = 0; k < count; ++k) {
        std::size_t i_lo = k + 1 > b.size() ? k + 1 - b.size() : 0;
        std::size_t i_hi = std::min(k, a.size() - 1);
        Scalar acc = 0;
        for (std::size_t i = i_lo; i <= i_hi && i_lo <= i_hi; ++i) acc += a[i] * b[k - i];
        out[k] = acc;
    }
    return out;
}

std::vector<Scalar> cauchy_product_omp(std::span<const Scalar> a, std::span<const Scalar> b,
                                       std::size_t count) {
    std::vector<Scalar> out(count);
    if (a.empty() || b.empty()) return out;
    const long n = static_cast<long>(count);
    const std::size_t na = a.size();
    const std::size_t nb = b.size();
    // Output terms are independent; late indices have longer sums.
#pragma omp parallel for schedule(dynamic, 4) default(none) shared(a, b, out, n, na, nb)
    for (long kk = 0; kk < n; ++kk) {
        const auto k = static_cast<std::size_t>(kk);
        std::size_t i_lo = k + 1 > nb ? k + 1 - nb : 0;
        std::size_t i_hi = std::min(k, na - 1);
        Scalar acc = 0;
        for (std::size_t i = i_lo; i <= i_hi && i_lo <= i_hi; ++i) acc += a[i] * b[k - i];
        out[k] = acc;
    }
    return out;
}

}  // namespace kernels

namespace {

using Kernel = std::vector<Scalar> (*)(std::span<const Scalar>, std::span<const Scalar>, std::size_t);

LaurentSeries mul_with(const LaurentSeries& f, const LaurentSeries& g, Kernel kernel) {
    if (f.is_exact() && g.is_exact()) {
        if (f.is_zero() || g.is_zero()) return {};
        std::size_t count = f.coefficients().size() + g.coefficients().size() - 1;
        return LaurentSeries::exact(f.lead() + g.lead(), kernel(f.coefficients(), g.coefficients(), count));
    }
    if ((f.is_exact() && f.is_zero()) || (g.is_exact() && g.is_zero())) return {};
    // The truncated zero reports lead() == prec, which is exactly the bound we need.
    Exponent prec = std::min(f.lead() + prec_or_inf(g), g.lead() + prec_or_inf(f));
    if (f.is_zero() || g.is_zero()) return LaurentSeries::big_o(prec);
    Exponent lead = f.lead() + g.lead();
    if (lead >= prec) return LaurentSeries::big_o(prec);
    auto count = static_cast<std::size_t>(prec - lead);
    return LaurentSeries::truncated(lead, kernel(f.coefficients(), g.coefficients(), count), prec);
}

Kernel pick_kernel(const LaurentSeries& f, const LaurentSeries& g) {
#ifdef _OPENMP
    std::size_t work = f.coefficients().size() + g.coefficients().size();
    if (work >= kParallelThreshold && omp_get_max_threads() > 1 && !omp_in_parallel())
        return &kernels::cauchy_product_omp;
#else
    (void)f;
    (void)g;
#endif
    return &kernels::cauchy_product_serial;
}

}  // namespace

LaurentSeries mul(const LaurentSeries& f, const LaurentSeries& g) { return mul_with(f, g, pick_kernel(f, g)); }

LaurentSeries serial::mul(const LaurentSeries& f, const LaurentSeries& g) {
    return mul_with(f, g, &kernels::cauchy_product_serial);
}

LaurentSeries operator*(const LaurentSeries& f, const LaurentSeries& g) { return mul(f, g); }

LaurentSeries inverse(const LaurentSeries& f, long terms) {
    if (f.is_zero()) raise(Errc::ZeroDivisor, "inverse of a series that vanishes on its known range");
    const Exponent w = f.lead();
    auto cs = f.coefficients();
    if (f.is_exact() && cs.size() == 1) return LaurentSeries::monomial(Scalar(1) / cs[0], -w);
    const Exponent rel = f.is_exact() ? terms : *f.precision() - w;
    const auto n = static_cast<std::size_t>(std::max<Exponent>(rel, 0));
    std::vector<Scalar> v(n);
    const Scalar inv0 = Scalar(1) / cs[0];
    for (std::size_t k = 0; k < n; ++k) {
        Scalar acc = k == 0 ? Scalar(1) : Scalar(0);
        for (std::size_t i = 1; i <= k && i < cs.size(); ++i) acc -= cs[i] * v[k - i];
        v[k] = acc * inv0;
    }
    return LaurentSeries::truncated(-w, std::move(v), -w + rel);
}

LaurentSeries derivative(const LaurentSeries& f) {
    std::vector<Scalar> out;
    out.reserve(f.coefficients().size());
    auto cs = f.coefficients();
    for (std::size_t i = 0; i < cs.size(); ++i) out.push_back(cs[i] * (f.lead() + static_cast<Exponent>(i)));
    if (f.is_exact()) return LaurentSeries::exact(f.lead() - 1, std::move(out));
    return LaurentSeries::truncated(f.lead() - 1, std::move(out), *f.precision() - 1);
}

LaurentSeries integrate(const LaurentSeries& f) {
    if (!f.is_known(-1)) raise(Errc::ResidueUnknown, "residue lies beyond the known range of " + to_string(f));
    if (f.coeff(-1) != 0) raise(Errc::NonzeroResidue, "cannot integrate " + to_string(f) + ": nonzero residue");
    std::vector<Scalar> out;
    auto cs = f.coefficients();
    out.reserve(cs.size());
    for (std::size_t i = 0; i < cs.size(); ++i) {
        Exponent e = f.lead() + static_cast<Exponent>(i);
        out.push_back(e == -1 ? Scalar(0) : Scalar(cs[i] / (e + 1)));
    }
    if (f.is_exact()) return LaurentSeries::exact(f.lead() + 1, std::move(out));
    return LaurentSeries::truncated(f.lead() + 1, std::move(out), *f.precision() + 1);
}

LaurentSeries compose(const LaurentSeries& g, const LaurentSeries& f) {
    // W(g) >= 0
    if (g.is_zero() ? g.lead() < 0 && !g.is_exact() : g.lead() < 0)
        raise(Errc::CompositionDomain, "outer series must be a power series, got " + to_string(g));
    // W(f) >= 1
    if (f.is_zero() ? !f.is_exact() && f.lead() < 1 : f.lead() < 1)
        raise(Errc::CompositionDomain, "inner series must lie in (x), got " + to_string(f));

    if (f.is_exact() && f.is_zero()) {
        if (!g.is_known(0)) return LaurentSeries::big_o(0);
        return LaurentSeries::constant(g.coeff(0));
    }
    if (g.is_exact() && g.is_zero()) return {};

    std::optional<Exponent> prec;
    if (!f.is_exact() || !g.is_exact()) {
        Exponent wf = f.lead();
        Exponent pg = prec_or_inf(g);
        Exponent bound = pg >= kInf ? kInf : wf * pg;
        prec = std::min(prec_or_inf(f), bound);
    }
    const LaurentSeries inner = prec ? f.truncate(*prec) : f;
    const Exponent top = g.is_zero() ? 0 : g.end();
    LaurentSeries acc;
    for (Exponent i = top - 1; i >= 0; --i) {
        acc = mul(acc, inner) + LaurentSeries::constant(g.coeff(i));
        if (prec) acc = acc.truncate(*prec);
    }
    if (prec) acc = acc.truncate(*prec);
    return acc;
}

LaurentSeries exp_series(long terms) {
    std::vector<Scalar> cs(static_cast<std::size_t>(std::max(terms, 0L)));
    Scalar term = 1;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (i > 0) term /= static_cast<long>(i);
        cs[i] = term;
    }
    return LaurentSeries::truncated(0, std::move(cs), terms);
}

LaurentSeries exp_integral(const LaurentSeries& g, long terms) {
    if (g.is_exact() && g.is_zero()) return LaurentSeries::constant(1);
    if (g.lead() < 0)
        raise(Errc::CompositionDomain, "exp_integral needs W(g) >= 0, got " + to_string(g));
    const LaurentSeries primitive = integrate(g);
    const long working = g.is_exact() ? terms : *g.precision() + 1;
    return compose(exp_series(working), primitive).truncate(working);
}

LaurentSeries log_derivative(const LaurentSeries& f, long terms) {
    if (f.is_zero()) raise(Errc::ZeroDivisor, "logarithmic derivative of zero");
    return mul(derivative(f), inverse(f, terms));
}

DegreeVerdict weierstrass_degree(const LaurentSeries& f) {
    if (!f.is_zero()) return DegreeVerdict::known(f.lead());
    if (f.is_exact()) return DegreeVerdict::infinite();
    return DegreeVerdict::at_least(*f.precision());
}

Scalar residue(const LaurentSeries& f) {
    if (!f.is_known(-1)) raise(Errc::ResidueUnknown, "x^-1 lies beyond the known range of " + to_string(f));
    return f.coeff(-1);
}

bool equal_to_precision(const LaurentSeries& f, const LaurentSeries& g) { return (f - g).is_zero(); }

bool is_constant_to_precision(const LaurentSeries& f) { return derivative(f).is_zero(); }

LdPreimageResult ld_preimage(const LaurentSeries& g, long terms) {
    if (g.is_zero()) {
        if (!g.is_exact() && g.lead() < 0)
            raise(Errc::Undecidable, "Weierstrass degree of " + to_string(g) + " is undecidable");
        return LdCaseA{exp_integral(g, terms)};
    }
    const Exponent w = g.lead();
    if (w >= 0) return LdCaseA{exp_integral(g, terms)};
    if (w < -1) return LdNoPreimage{NoPreimageReason::DegreeTooLow};
    const Scalar r = g.coeff(-1);
    if (!is_integer(r)) return LdNoPreimage{NoPreimageReason::NonIntegerResidue};
    const long n = to_long(r);
    const LaurentSeries rest = g - LaurentSeries::monomial(r, -1);
    return LdCaseB{shift(exp_integral(rest, terms), n), n};
}

std::string to_string(const LaurentSeries& f) {
    std::ostringstream os;
    bool first = true;
    auto cs = f.coefficients();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const Scalar& c = cs[i];
        if (c == 0) continue;
        const Exponent e = f.lead() + static_cast<Exponent>(i);
        const bool negative = c < 0;
        const Scalar mag = negative ? Scalar(-c) : c;
        if (first) {
            if (negative) os << '-';
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        if (e == 0) {
            os << mag.get_str();
            continue;
        }
        if (mag != 1) os << mag.get_str() << '*';
        os << 'x';
        if (e != 1) os << '^' << e;
    }
    if (!f.is_exact()) {
        if (!first) os << " + ";
        os << "O(x^" << *f.precision() << ')';
        first = false;
    }
    if (first) os << '0';
    return os.str();
}

}  // namespace wittkit
