#pragma once

#include <cmath>
#include <complex>
#include <iosfwd>
#include <stdexcept>

namespace bvekua {

using Complex = std::complex<double>;

namespace detail {
inline constexpr double kZeroDivisorRelTol = 1e-14;
}

class ZeroDivisorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A bicomplex number sc + j*vec with complex scalar and vector parts.
///
/// The commuting units i and j satisfy i^2 = j^2 = -1.  Products, powers and
/// inverses are computed through the idempotent coordinates
/// (plus, minus) = (sc - i*vec, sc + i*vec), in which the algebra acts
/// componentwise; (sc, vec) remains the stored canonical form.
struct Bicomplex {
    Complex sc{0.0, 0.0};
    Complex vec{0.0, 0.0};

    constexpr Bicomplex() = default;
    constexpr Bicomplex(Complex s, Complex v) : sc(s), vec(v) {}
    constexpr Bicomplex(double s) : sc(s), vec(0.0) {}
    constexpr Bicomplex(Complex s) : sc(s), vec(0.0) {}

    Complex plus() const { return sc - Complex(0, 1) * vec; }
    Complex minus() const { return sc + Complex(0, 1) * vec; }

    static Bicomplex from_idempotent(Complex plus, Complex minus) {
        return {0.5 * (plus + minus), Complex(0, 0.5) * (plus - minus)};
    }

    friend Bicomplex operator+(const Bicomplex& a, const Bicomplex& b) {
        return {a.sc + b.sc, a.vec + b.vec};
    }
    friend Bicomplex operator-(const Bicomplex& a, const Bicomplex& b) {
        return {a.sc - b.sc, a.vec - b.vec};
    }
    friend Bicomplex operator-(const Bicomplex& a) { return {-a.sc, -a.vec}; }
    friend Bicomplex operator*(const Bicomplex& a, const Bicomplex& b) {
        return from_idempotent(a.plus() * b.plus(), a.minus() * b.minus());
    }
    friend Bicomplex operator*(Complex c, const Bicomplex& a) { return {c * a.sc, c * a.vec}; }
    friend Bicomplex operator*(const Bicomplex& a, Complex c) { return c * a; }
    friend Bicomplex operator*(double c, const Bicomplex& a) { return {c * a.sc, c * a.vec}; }
    friend Bicomplex operator*(const Bicomplex& a, double c) { return c * a; }

    Bicomplex& operator+=(const Bicomplex& b) { sc += b.sc; vec += b.vec; return *this; }
    Bicomplex& operator-=(const Bicomplex& b) { sc -= b.sc; vec -= b.vec; return *this; }
    Bicomplex& operator*=(const Bicomplex& b) { *this = *this * b; return *this; }

    friend bool operator==(const Bicomplex& a, const Bicomplex& b) {
        return a.sc == b.sc && a.vec == b.vec;
    }
};

inline const Bicomplex bc_one{Complex(1.0), Complex(0.0)};
inline const Bicomplex bc_j{Complex(0.0), Complex(1.0)};
/// k = i*j
inline const Bicomplex bc_k{Complex(0.0), Complex(0.0, 1.0)};
inline const Bicomplex bc_p_plus{Complex(0.5), Complex(0.0, 0.5)};
inline const Bicomplex bc_p_minus{Complex(0.5), Complex(0.0, -0.5)};

inline Bicomplex mul(const Bicomplex& a, const Bicomplex& b) { return a * b; }

/// W -> sc - j*vec.  Swaps the idempotent components.
inline Bicomplex conj_bar(const Bicomplex& w) { return {w.sc, -w.vec}; }

/// W -> sc* - j*vec*.  Complex-conjugates each idempotent component in place.
inline Bicomplex conj_dagger(const Bicomplex& w) {
    return {std::conj(w.sc), -std::conj(w.vec)};
}

/// W -> sc* + j*vec*.  Swaps and complex-conjugates the idempotent components;
/// this is the coefficient conjugation appearing in the adjoint Vekua operator.
inline Bicomplex conj_star(const Bicomplex& w) {
    return {std::conj(w.sc), std::conj(w.vec)};
}

/// Complex inner product <W,V> = Sc(W V^dagger).
inline Complex inner(const Bicomplex& w, const Bicomplex& v) {
    return w.sc * std::conj(v.sc) + w.vec * std::conj(v.vec);
}

inline double norm_sq(const Bicomplex& w) { return std::norm(w.sc) + std::norm(w.vec); }
inline double norm(const Bicomplex& w) { return std::sqrt(norm_sq(w)); }

inline bool is_zero_divisor(const Bicomplex& w) {
    const double scale = std::max(1.0, norm(w));
    return std::abs(w.plus()) < detail::kZeroDivisorRelTol * scale ||
           std::abs(w.minus()) < detail::kZeroDivisorRelTol * scale;
}

inline Bicomplex inverse(const Bicomplex& w) {
    if (is_zero_divisor(w))
        throw ZeroDivisorError("bicomplex inverse of a zero divisor");
    return Bicomplex::from_idempotent(1.0 / w.plus(), 1.0 / w.minus());
}

inline Bicomplex exp(const Bicomplex& w) {
    return Bicomplex::from_idempotent(std::exp(w.plus()), std::exp(w.minus()));
}

struct IdempotentPair {
    Complex plus;
    Complex minus;
};

inline IdempotentPair idempotent_split(const Bicomplex& w) { return {w.plus(), w.minus()}; }

inline Bicomplex recompose(const IdempotentPair& p) {
    return Bicomplex::from_idempotent(p.plus, p.minus);
}

/// zhat = x + j*y for z = x + i*y.
inline Bicomplex hat(Complex z) { return {Complex(z.real()), Complex(z.imag())}; }

/// (zhat - zhat0)^n with idempotent components ((z*-z0*)^n, (z-z0)^n).
/// Negative powers require z != z0.
inline Bicomplex hat_power(Complex z, Complex z0, int n) {
    const Complex d = z - z0;
    if (n < 0 && d == Complex(0.0))
        throw ZeroDivisorError("negative hat power at the base point");
    return Bicomplex::from_idempotent(std::pow(std::conj(d), n), std::pow(d, n));
}

std::ostream& operator<<(std::ostream& os, const Bicomplex& w);

}  // namespace bvekua
