#include "hopf/algebra.hpp"

#include <cmath>
#include <map>

namespace hopf {

namespace {

// Seven unit entries of the octonion table; all else by total antisymmetry.
constexpr int kOctTriples[7][3] = {
    {1, 2, 3}, {1, 4, 7}, {1, 6, 5}, {2, 4, 6}, {2, 5, 7}, {3, 5, 4}, {3, 6, 7}};

} // namespace

StructureTable::StructureTable(int n) : n_(n) {
    require_dimension(n);
    auto set_antisym = [this](int i, int j, int k) {
        // (i,j,k) 0-based; write all six permutations with signs.
        auto put = [this](int a, int b, int c, int s) {
            c_[static_cast<std::size_t>((a * 7 + b) * 7 + c)] = static_cast<std::int8_t>(s);
        };
        put(i, j, k, +1);
        put(j, k, i, +1);
        put(k, i, j, +1);
        put(j, i, k, -1);
        put(i, k, j, -1);
        put(k, j, i, -1);
    };
    if (n == 4) {
        set_antisym(0, 1, 2);
    } else if (n == 8) {
        for (const auto& t : kOctTriples) set_antisym(t[0] - 1, t[1] - 1, t[2] - 1);
    }
}

const StructureTable& structure_table(int n) {
    require_dimension(n);
    static const StructureTable t1(1), t2(2), t4(4), t8(8);
    switch (n) {
        case 1: return t1;
        case 2: return t2;
        case 4: return t4;
        default: return t8;
    }
}

Element Element::operator+(const Element& o) const {
    if (n_ != o.n_) throw DimensionError("dimension mismatch");
    Element r(n_);
    for (int i = 0; i < n_; ++i) r[i] = c_[static_cast<std::size_t>(i)] + o[i];
    return r;
}

Element Element::operator-(const Element& o) const {
    if (n_ != o.n_) throw DimensionError("dimension mismatch");
    Element r(n_);
    for (int i = 0; i < n_; ++i) r[i] = c_[static_cast<std::size_t>(i)] - o[i];
    return r;
}

Element Element::operator*(double s) const {
    Element r(n_);
    for (int i = 0; i < n_; ++i) r[i] = c_[static_cast<std::size_t>(i)] * s;
    return r;
}

Element multiply(const Element& x, const Element& y) {
    const int n = x.dim();
    if (n != y.dim()) throw DimensionError("dimension mismatch");
    const StructureTable& C = structure_table(n);
    Element r(n);
    const double xr = x.re(), yr = y.re();
    double dotim = 0.0;
    for (int i = 0; i < n - 1; ++i) dotim += x[i] * y[i];
    r[n - 1] = xr * yr - dotim;
    for (int l = 0; l < n - 1; ++l) {
        double v = xr * y[l] + yr * x[l];
        for (int m = 0; m < n - 1; ++m) {
            const double xm = x[m];
            if (xm == 0.0) continue;
            for (int k = 0; k < n - 1; ++k) {
                const double cc = C(m, k, l);
                if (cc != 0.0) v += cc * xm * y[k];
            }
        }
        r[l] = v;
    }
    return r;
}

Element conjugate(const Element& x) {
    Element r = -x;
    r[x.dim() - 1] = x.re();
    return r;
}

double norm(const Element& x) { return std::sqrt(dot(x, x)); }

Element inverse(const Element& y) {
    const double n2 = dot(y, y);
    if (n2 == 0.0) throw DivisionByZero("inverse of zero element");
    return conjugate(y) * (1.0 / n2);
}

Element divide(const Element& x, const Element& y) { return multiply(x, inverse(y)); }

Element associator(const Element& x, const Element& y, const Element& z) {
    return multiply(multiply(x, y), z) - multiply(x, multiply(y, z));
}

} // namespace hopf
