#include "hopf/clifford.hpp"

#include <algorithm>
#include <array>

namespace hopf {

MatrixRep build_rep(int n) {
    if (n != 2 && n != 4 && n != 8) throw DimensionError("matrix rep requires n in {2,4,8}");
    const StructureTable& C = structure_table(n);
    MatrixRep rep;
    rep.n = n;

    // (lambda^mu)_{ab} = -d_{an} d^mu_b + d^mu_a d_{bn} + C_{mu a b}
    rep.lambda.reserve(static_cast<std::size_t>(n - 1));
    for (int m = 0; m < n - 1; ++m) {
        Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
        L(n - 1, m) = -1.0;
        L(m, n - 1) = 1.0;
        for (int a = 0; a < n - 1; ++a)
            for (int b = 0; b < n - 1; ++b) L(a, b) += C(m, a, b);
        rep.lambda.push_back(std::move(L));
    }

    // (gamma^c)_{ab} = -d_{an} d^c_b + d^c_a d_{bn} + d^c_n d_{ab} - C_{c a b}
    rep.gamma.reserve(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
        Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
        G(n - 1, c) += -1.0;
        G(c, n - 1) += 1.0;
        if (c == n - 1) G += Eigen::MatrixXd::Identity(n, n);
        if (c < n - 1)
            for (int a = 0; a < n - 1; ++a)
                for (int b = 0; b < n - 1; ++b) G(a, b) -= C(c, a, b);
        rep.gamma.push_back(std::move(G));
    }

    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    rep.big_gamma.reserve(static_cast<std::size_t>(n + 1));
    for (int m = 0; m < n - 1; ++m) {
        Eigen::MatrixXd G = Eigen::MatrixXd::Zero(2 * n, 2 * n);
        G.topRightCorner(n, n) = rep.lambda[static_cast<std::size_t>(m)];
        G.bottomLeftCorner(n, n) = -rep.lambda[static_cast<std::size_t>(m)];
        rep.big_gamma.push_back(std::move(G));
    }
    {
        Eigen::MatrixXd G = Eigen::MatrixXd::Zero(2 * n, 2 * n);
        G.topRightCorner(n, n) = id;
        G.bottomLeftCorner(n, n) = id;
        rep.big_gamma.push_back(std::move(G));
    }
    {
        Eigen::MatrixXd G = Eigen::MatrixXd::Zero(2 * n, 2 * n);
        G.topLeftCorner(n, n) = -id;
        G.bottomRightCorner(n, n) = id;
        rep.big_gamma.push_back(std::move(G));
    }

    rep.sigma.assign(static_cast<std::size_t>(n * n), Eigen::MatrixXd::Zero(n, n));
    auto S = [&rep, n](int c, int d) -> Eigen::MatrixXd& {
        return rep.sigma[static_cast<std::size_t>(c * n + d)];
    };
    for (int m = 0; m < n - 1; ++m) {
        for (int v = 0; v < n - 1; ++v)
            S(m, v) = 0.5 * (rep.lambda[static_cast<std::size_t>(m)] * rep.lambda[static_cast<std::size_t>(v)] -
                             rep.lambda[static_cast<std::size_t>(v)] * rep.lambda[static_cast<std::size_t>(m)]);
        S(m, n - 1) = rep.lambda[static_cast<std::size_t>(m)];
        S(n - 1, m) = -rep.lambda[static_cast<std::size_t>(m)];
    }
    return rep;
}

const MatrixRep& matrix_rep(int n) {
    if (n != 2 && n != 4 && n != 8) throw DimensionError("matrix rep requires n in {2,4,8}");
    static const MatrixRep r2 = build_rep(2), r4 = build_rep(4), r8 = build_rep(8);
    switch (n) {
        case 2: return r2;
        case 4: return r4;
        default: return r8;
    }
}

CliffordReport clifford_check(const MatrixRep& rep) {
    const int n = rep.n;
    CliffordReport rpt;
    const Eigen::MatrixXd id2n = Eigen::MatrixXd::Identity(2 * n, 2 * n);
    const Eigen::MatrixXd idn = Eigen::MatrixXd::Identity(n, n);
    for (int A = 0; A <= n; ++A) {
        rpt.max_symmetry_dev = std::max(
            rpt.max_symmetry_dev,
            (rep.big_gamma[static_cast<std::size_t>(A)] -
             rep.big_gamma[static_cast<std::size_t>(A)].transpose()).cwiseAbs().maxCoeff());
        for (int B = 0; B <= n; ++B) {
            Eigen::MatrixXd anti = rep.big_gamma[static_cast<std::size_t>(A)] * rep.big_gamma[static_cast<std::size_t>(B)] +
                                   rep.big_gamma[static_cast<std::size_t>(B)] * rep.big_gamma[static_cast<std::size_t>(A)];
            if (A == B) anti -= 2.0 * id2n;
            rpt.max_big_gamma_dev = std::max(rpt.max_big_gamma_dev, anti.cwiseAbs().maxCoeff());
        }
    }
    for (int m = 0; m < n - 1; ++m) {
        for (int v = 0; v < n - 1; ++v) {
            Eigen::MatrixXd al = rep.lambda[static_cast<std::size_t>(m)] * rep.lambda[static_cast<std::size_t>(v)] +
                                 rep.lambda[static_cast<std::size_t>(v)] * rep.lambda[static_cast<std::size_t>(m)];
            Eigen::MatrixXd ag = rep.gamma[static_cast<std::size_t>(m)] * rep.gamma[static_cast<std::size_t>(v)] +
                                 rep.gamma[static_cast<std::size_t>(v)] * rep.gamma[static_cast<std::size_t>(m)];
            if (m == v) {
                al += 2.0 * idn;
                ag += 2.0 * idn;
            }
            rpt.max_lambda_dev = std::max(rpt.max_lambda_dev, al.cwiseAbs().maxCoeff());
            rpt.max_gamma_dev = std::max(rpt.max_gamma_dev, ag.cwiseAbs().maxCoeff());
        }
    }
    return rpt;
}

Element gamma_multiply(const MatrixRep& rep, const Element& x, const Element& y) {
    const int n = rep.n;
    if (x.dim() != n || y.dim() != n) throw DimensionError("dimension mismatch");
    Element r(n);
    for (int a = 0; a < n; ++a) {
        double v = 0.0;
        for (int c = 0; c < n; ++c) {
            if (x[c] == 0.0) continue;
            const Eigen::MatrixXd& G = rep.gamma[static_cast<std::size_t>(c)];
            for (int b = 0; b < n; ++b) v += x[c] * G(a, b) * y[b];
        }
        r[a] = v;
    }
    return r;
}

Eigen::MatrixXd antisym_product(const MatrixRep& rep, const std::vector<int>& indices) {
    const int n = rep.n;
    const std::size_t k = indices.size();
    if (k != 2 && k != 4) throw IndexError("antisym_product takes 2 or 4 indices");
    for (int idx : indices)
        if (idx < 1 || idx > n + 1) throw IndexError("Gamma index out of range");

    // Permute positions (starts sorted, so next_permutation enumerates all k!).
    std::vector<int> perm(k);
    for (std::size_t i = 0; i < k; ++i) perm[i] = static_cast<int>(i);
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    double nfact = 0.0;
    do {
        int inv = 0;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                if (perm[i] > perm[j]) ++inv;
        Eigen::MatrixXd prod = rep.big_gamma[static_cast<std::size_t>(indices[static_cast<std::size_t>(perm[0])] - 1)];
        for (std::size_t i = 1; i < k; ++i)
            prod = prod * rep.big_gamma[static_cast<std::size_t>(indices[static_cast<std::size_t>(perm[i])] - 1)];
        acc += (inv % 2 == 0 ? 1.0 : -1.0) * prod;
        nfact += 1.0;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc / nfact;
}

} // namespace hopf
