#include "radef/monogenics.hpp"

#include "radef/errors.hpp"
#include "radef/specfun.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace radef {

namespace {

void build_monomials(int m, int degree, int pos, MultiIndex& cur, std::vector<MultiIndex>& out) {
    if (pos == m - 1) {
        cur[pos] = degree;
        out.push_back(cur);
        return;
    }
    for (int d = degree; d >= 0; --d) {
        cur[pos] = d;
        build_monomials(m, degree - d, pos + 1, cur, out);
    }
}

struct MonomialTable {
    std::vector<MultiIndex> list;
    std::map<MultiIndex, std::size_t> index;
};

const MonomialTable& monomial_table(int m, int degree) {
    if (m < 1 || degree < 0) throw std::invalid_argument("monomials: need m >= 1 and degree >= 0");
    static std::mutex mu;
    static std::map<std::pair<int, int>, MonomialTable> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(m, degree);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    MonomialTable t;
    MultiIndex cur(m, 0);
    build_monomials(m, degree, 0, cur, t.list);
    for (std::size_t i = 0; i < t.list.size(); ++i) t.index[t.list[i]] = i;
    return cache.emplace(key, std::move(t)).first->second;
}

void check_same(const PolyCl& a, const PolyCl& b) {
    if (a.m() != b.m() || a.degree() != b.degree())
        throw std::invalid_argument("PolyCl: dimension or degree mismatch");
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Eigen::MatrixXd& a, double tol) {
    std::vector<int> pivots;
    const int rows = static_cast<int>(a.rows()), cols = static_cast<int>(a.cols());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int best = r;
        for (int i = r + 1; i < rows; ++i)
            if (std::abs(a(i, c)) > std::abs(a(best, c))) best = i;
        if (std::abs(a(best, c)) <= tol) continue;
        a.row(r).swap(a.row(best));
        a.row(r) /= a(r, c);
        for (int i = 0; i < rows; ++i)
            if (i != r && a(i, c) != 0.0) a.row(i) -= a(i, c) * a.row(r);
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<PolyCl> build_basis(int ell, int m) {
    const auto& mons = monomials(m, ell);
    const std::size_t nb = std::size_t{1} << m;
    const std::size_t ncols = mons.size() * nb;
    const auto& lower = ell > 0 ? monomials(m, ell - 1) : mons;
    const std::size_t nrows = ell > 0 ? lower.size() * nb : 0;

    // dirac as a real matrix on (monomial, blade) coefficients: e_i d/dx_i x^alpha e_A
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nrows), static_cast<Eigen::Index>(ncols));
    if (ell > 0) {
        for (std::size_t a = 0; a < mons.size(); ++a)
            for (int i = 0; i < m; ++i) {
                if (mons[a][i] == 0) continue;
                MultiIndex beta = mons[a];
                --beta[i];
                const std::size_t row0 = monomial_index(m, beta) * nb;
                const BladeMask ei = BladeMask{1} << i;
                for (BladeMask A = 0; A < nb; ++A)
                    d(static_cast<Eigen::Index>(row0 + (ei ^ A)), static_cast<Eigen::Index>(a * nb + A)) +=
                        mons[a][i] * blade_product_sign(ei, A);
            }
    }

    std::vector<int> pivots;
    if (nrows > 0) {
        Eigen::MatrixXd r = d;
        pivots = rref(r, 1e-10 * std::max(1.0, d.cwiseAbs().maxCoeff()));
        // the singular values give an independent rank count
        Eigen::BDCSVD<Eigen::MatrixXd> svd(d);
        const auto& sv = svd.singularValues();
        const double thr = 1e-10 * (sv.size() ? sv(0) : 0.0);
        int rank = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) > thr) ++rank;
        if (rank != static_cast<int>(pivots.size()))
            throw NumericalError("monogenic_basis: echelon rank " + std::to_string(pivots.size()) +
                                 " disagrees with SVD rank " + std::to_string(rank));
        d = r;
    }

    std::vector<char> is_pivot(ncols, 0);
    for (int p : pivots) is_pivot[p] = 1;
    std::vector<Eigen::VectorXd> null_vectors;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ncols));
        v(static_cast<Eigen::Index>(f)) = 1.0;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v(pivots[r]) = -d(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(f));
        null_vectors.push_back(std::move(v));
    }

    const std::size_t expected = monogenic_dimension(ell, m);
    if (null_vectors.size() != expected)
        throw NumericalError("monogenic_basis: null space dimension " + std::to_string(null_vectors.size()) +
                             " != " + std::to_string(expected) + " for l=" + std::to_string(ell) +
                             ", m=" + std::to_string(m));

    // sphere metric: I_blade (x) monomial moments
    const std::size_t nm = mons.size();
    Eigen::MatrixXd g(nm, nm);
    for (std::size_t a = 0; a < nm; ++a)
        for (std::size_t b = 0; b < nm; ++b) {
            MultiIndex s(m);
            for (int i = 0; i < m; ++i) s[i] = mons[a][i] + mons[b][i];
            g(a, b) = sphere_integral_monomial(s, m);
        }
    auto apply_metric = [&](const Eigen::VectorXd& v) {
        const Eigen::Map<const Eigen::MatrixXd> vm(v.data(), static_cast<Eigen::Index>(nb), static_cast<Eigen::Index>(nm));
        Eigen::VectorXd out(v.size());
        Eigen::Map<Eigen::MatrixXd>(out.data(), static_cast<Eigen::Index>(nb), static_cast<Eigen::Index>(nm)) =
            vm * g;  // g is symmetric
        return out;
    };

    // modified Gram-Schmidt, two passes
    std::vector<Eigen::VectorXd> q, gq;
    for (auto& v : null_vectors) {
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t j = 0; j < q.size(); ++j) v -= gq[j].dot(v) * q[j];
        Eigen::VectorXd gv = apply_metric(v);
        const double n2 = v.dot(gv);
        if (!(n2 > 1e-24)) throw NumericalError("monogenic_basis: Gram-Schmidt breakdown");
        const double inv = 1.0 / std::sqrt(n2);
        q.push_back(v * inv);
        gq.push_back(gv * inv);
    }

    std::vector<PolyCl> basis;
    basis.reserve(q.size());
    for (const auto& v : q) {
        PolyCl p(m, ell);
        for (std::size_t a = 0; a < nm; ++a)
            for (BladeMask A = 0; A < nb; ++A) p.coeff(a)[A] = v(static_cast<Eigen::Index>(a * nb + A));
        basis.push_back(std::move(p));
    }
    return basis;
}

}  // namespace

const std::vector<MultiIndex>& monomials(int m, int degree) { return monomial_table(m, degree).list; }

std::size_t monomial_index(int m, const MultiIndex& alpha) {
    int deg = 0;
    for (int v : alpha) deg += v;
    const auto& t = monomial_table(m, deg);
    auto it = t.index.find(alpha);
    if (it == t.index.end()) throw std::invalid_argument("monomial_index: bad multi-index");
    return it->second;
}

PolyCl::PolyCl(int m, int degree) : m_(m), degree_(degree) {
    terms_.assign(monomials(m, degree).size(), Multivector(m));
}

Multivector PolyCl::evaluate(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != m_) throw std::invalid_argument("PolyCl::evaluate: dimension mismatch");
    const auto& mons = monomials(m_, degree_);
    Multivector out(m_);
    // powers[i][k] = x_i^k
    std::vector<double> powers(static_cast<std::size_t>(m_) * (degree_ + 1));
    for (int i = 0; i < m_; ++i) {
        double v = 1.0;
        for (int k = 0; k <= degree_; ++k, v *= x[i]) powers[i * (degree_ + 1) + k] = v;
    }
    for (std::size_t a = 0; a < mons.size(); ++a) {
        double mono = 1.0;
        for (int i = 0; i < m_; ++i) mono *= powers[i * (degree_ + 1) + mons[a][i]];
        if (mono == 0.0) continue;
        const auto& c = terms_[a].coeffs();
        for (BladeMask A = 0; A < c.size(); ++A) out[A] += mono * c[A];
    }
    return out;
}

PolyCl& PolyCl::operator+=(const PolyCl& o) {
    check_same(*this, o);
    for (std::size_t i = 0; i < terms_.size(); ++i) terms_[i] += o.terms_[i];
    return *this;
}

PolyCl& PolyCl::operator-=(const PolyCl& o) {
    check_same(*this, o);
    for (std::size_t i = 0; i < terms_.size(); ++i) terms_[i] -= o.terms_[i];
    return *this;
}

PolyCl& PolyCl::operator*=(cplx s) {
    for (auto& t : terms_) t *= s;
    return *this;
}

double PolyCl::max_abs() const {
    double v = 0;
    for (const auto& t : terms_) v = std::max(v, t.max_abs());
    return v;
}

PolyCl operator+(PolyCl a, const PolyCl& b) { return a += b; }
PolyCl operator-(PolyCl a, const PolyCl& b) { return a -= b; }
PolyCl operator*(cplx s, PolyCl a) { return a *= s; }

PolyCl dirac(const PolyCl& p) {
    const int m = p.m(), deg = p.degree();
    if (deg == 0) return PolyCl(m, 0);
    PolyCl out(m, deg - 1);
    const auto& mons = monomials(m, deg);
    for (std::size_t a = 0; a < mons.size(); ++a)
        for (int i = 0; i < m; ++i) {
            if (mons[a][i] == 0) continue;
            MultiIndex beta = mons[a];
            --beta[i];
            accumulate_product(out.coeff(beta), Multivector::generator(m, i + 1), p.coeff(a),
                               static_cast<double>(mons[a][i]));
        }
    return out;
}

PolyCl euler(const PolyCl& p) { return static_cast<double>(p.degree()) * p; }

PolyCl mul_x(const PolyCl& p) {
    const int m = p.m();
    PolyCl out(m, p.degree() + 1);
    const auto& mons = monomials(m, p.degree());
    for (std::size_t a = 0; a < mons.size(); ++a)
        for (int i = 0; i < m; ++i) {
            MultiIndex beta = mons[a];
            ++beta[i];
            accumulate_product(out.coeff(beta), Multivector::generator(m, i + 1), p.coeff(a));
        }
    return out;
}

PolyCl left_mul(const Multivector& a, const PolyCl& p) {
    PolyCl out(p.m(), p.degree());
    for (std::size_t i = 0; i < p.terms().size(); ++i) out.coeff(i) = a * p.coeff(i);
    return out;
}

PolyCl right_mul(const PolyCl& p, const Multivector& a) {
    PolyCl out(p.m(), p.degree());
    for (std::size_t i = 0; i < p.terms().size(); ++i) out.coeff(i) = p.coeff(i) * a;
    return out;
}

PolyCl conj(const PolyCl& p) {
    PolyCl out(p.m(), p.degree());
    for (std::size_t i = 0; i < p.terms().size(); ++i) out.coeff(i) = conj(p.coeff(i));
    return out;
}

PolyCl bar(const PolyCl& p) {
    PolyCl out(p.m(), p.degree());
    for (std::size_t i = 0; i < p.terms().size(); ++i) out.coeff(i) = bar(p.coeff(i));
    return out;
}

double sphere_area(int m) {
    return 2.0 * std::pow(std::numbers::pi, 0.5 * m) / std::exp(log_gamma(0.5 * m));
}

double sphere_integral_monomial(const MultiIndex& alpha, int m) {
    if (static_cast<int>(alpha.size()) != m) throw std::invalid_argument("sphere_integral_monomial: size mismatch");
    double lg = 0.0;
    int total = 0;
    for (int a : alpha) {
        if (a % 2) return 0.0;
        lg += log_gamma(0.5 * (a + 1));
        total += a;
    }
    return 2.0 * std::exp(lg - log_gamma(0.5 * (total + m)));
}

cplx spherical_inner(const PolyCl& p, const PolyCl& q) {
    if (p.m() != q.m()) throw std::invalid_argument("spherical_inner: dimension mismatch");
    const int m = p.m();
    const auto& mp = monomials(m, p.degree());
    const auto& mq = monomials(m, q.degree());
    cplx total = 0.0;
    MultiIndex s(m);
    // [bar(conj a) b]_0 = sum_A conj(a_A) b_A
    for (std::size_t a = 0; a < mp.size(); ++a) {
        const auto& ca = p.coeff(a).coeffs();
        for (std::size_t b = 0; b < mq.size(); ++b) {
            for (int i = 0; i < m; ++i) s[i] = mp[a][i] + mq[b][i];
            const double w = sphere_integral_monomial(s, m);
            if (w == 0.0) continue;
            const auto& cb = q.coeff(b).coeffs();
            cplx dot = 0.0;
            for (std::size_t A = 0; A < ca.size(); ++A) dot += std::conj(ca[A]) * cb[A];
            total += w * dot;
        }
    }
    return total;
}

std::size_t monogenic_dimension(int ell, int m) {
    if (ell < 0 || m < 2) throw std::invalid_argument("monogenic_dimension: need l >= 0, m >= 2");
    // binom(l+m-2, m-2)
    double b = 1.0;
    for (int i = 1; i <= m - 2; ++i) b = b * (ell + i) / i;
    return (std::size_t{1} << m) * static_cast<std::size_t>(std::llround(b));
}

const std::vector<PolyCl>& monogenic_basis(int ell, int m) {
    if (ell < 0) throw std::invalid_argument("monogenic_basis: negative degree");
    if (m < 3) throw std::invalid_argument("monogenic_basis: m must be >= 3");
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<PolyCl>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(ell, m);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, build_basis(ell, m)).first->second;
}

}  // namespace radef
