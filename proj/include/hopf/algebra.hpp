#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "hopf/errors.hpp"

namespace hopf {

// The four normed division algebras R, C, H, O, built from the antisymmetric
// structure constants C_{mu nu la} of  e_mu e_nu = -delta_{mu nu} + C_{mu nu la} e_la.
//
// Coefficient ordering everywhere: (x^1, ..., x^{n-1}, x^n) with the real part last.

inline bool valid_dimension(int n) { return n == 1 || n == 2 || n == 4 || n == 8; }

inline void require_dimension(int n) {
    if (!valid_dimension(n)) throw DimensionError("algebra dimension must be 1, 2, 4 or 8");
}

// Totally antisymmetric structure constants; immutable after construction.
class StructureTable {
  public:
    explicit StructureTable(int n);

    int dim() const { return n_; }

    // Indices 0-based in 0..n-2. Entries in {-1, 0, +1}.
    double operator()(int mu, int nu, int la) const {
        return c_[static_cast<std::size_t>((mu * 7 + nu) * 7 + la)];
    }

  private:
    int n_;
    std::array<std::int8_t, 343> c_{};
};

const StructureTable& structure_table(int n);

class Element {
  public:
    Element() : n_(1) {}
    explicit Element(int n) : n_(n) { require_dimension(n); }
    Element(int n, const std::array<double, 8>& c) : n_(n), c_(c) { require_dimension(n); }

    static Element one(int n) {
        Element e(n);
        e[n - 1] = 1.0;
        return e;
    }
    // Imaginary unit e_mu, mu in 1..n-1.
    static Element unit(int n, int mu) {
        Element e(n);
        if (mu < 1 || mu >= n) throw IndexError("imaginary unit index out of range");
        e[mu - 1] = 1.0;
        return e;
    }
    static Element real(int n, double v) {
        Element e(n);
        e[n - 1] = v;
        return e;
    }

    int dim() const { return n_; }
    double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
    double re() const { return c_[static_cast<std::size_t>(n_ - 1)]; }

    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator*(double s) const;
    Element operator-() const { return *this * -1.0; }

  private:
    int n_;
    std::array<double, 8> c_{};
};

Element multiply(const Element& x, const Element& y);
Element conjugate(const Element& x);
double norm(const Element& x);
Element inverse(const Element& y);
// Right division: x * y^{-1}.
Element divide(const Element& x, const Element& y);
// (xy)z - x(yz).
Element associator(const Element& x, const Element& y, const Element& z);

inline double dot(const Element& x, const Element& y) {
    double s = 0.0;
    for (int i = 0; i < x.dim(); ++i) s += x[i] * y[i];
    return s;
}

} // namespace hopf
