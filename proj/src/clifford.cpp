#include "radef/clifford.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>

namespace radef {

namespace {

void check_dim(int m) {
    if (m < 1 || m > Multivector::max_dim)
        throw std::invalid_argument("Clifford dimension m=" + std::to_string(m) + " outside [1, " +
                                    std::to_string(Multivector::max_dim) + "]");
}

void check_same(const Multivector& a, const Multivector& b) {
    if (a.m() != b.m())
        throw std::invalid_argument("Clifford dimension mismatch: " + std::to_string(a.m()) + " vs " +
                                    std::to_string(b.m()));
}

// Sign tables are small for m <= 8 and worth caching; the geometric product is the hot path
// of every quadrature loop.
constexpr int table_limit = 8;

const std::vector<signed char>& sign_table(int m) {
    static std::mutex mu;
    static std::map<int, std::vector<signed char>> tables;
    std::lock_guard<std::mutex> lock(mu);
    auto it = tables.find(m);
    if (it != tables.end()) return it->second;
    const std::size_t n = std::size_t{1} << m;
    std::vector<signed char> t(n * n);
    for (BladeMask a = 0; a < n; ++a)
        for (BladeMask b = 0; b < n; ++b) t[a * n + b] = static_cast<signed char>(blade_product_sign(a, b));
    return tables.emplace(m, std::move(t)).first->second;
}

}  // namespace

std::vector<int> blade_indices(BladeMask b) {
    std::vector<int> out;
    for (int i = 0; b; ++i, b >>= 1)
        if (b & 1u) out.push_back(i + 1);
    return out;
}

BladeMask blade_from_indices(std::span<const int> indices) {
    BladeMask b = 0;
    int prev = 0;
    for (int i : indices) {
        if (i <= prev || i > Multivector::max_dim)
            throw std::invalid_argument("blade indices must be strictly increasing and within 1..12");
        b |= BladeMask{1} << (i - 1);
        prev = i;
    }
    return b;
}

int blade_product_sign(BladeMask a, BladeMask b) {
    // transpositions needed to move every factor of b left past the larger factors of a
    int swaps = 0;
    for (BladeMask x = a >> 1; x; x >>= 1) swaps += __builtin_popcount(x & b);
    swaps += __builtin_popcount(a & b);  // e_i e_i = -1
    return (swaps & 1) ? -1 : 1;
}

const std::vector<BladeMask>& canonical_blade_order(int m) {
    check_dim(m);
    static std::mutex mu;
    static std::map<int, std::vector<BladeMask>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    std::vector<BladeMask> order(std::size_t{1} << m);
    for (BladeMask b = 0; b < order.size(); ++b) order[b] = b;
    std::sort(order.begin(), order.end(), [](BladeMask x, BladeMask y) {
        auto ix = blade_indices(x), iy = blade_indices(y);
        return std::lexicographical_compare(ix.begin(), ix.end(), iy.begin(), iy.end());
    });
    return cache.emplace(m, std::move(order)).first->second;
}

Multivector::Multivector(int m) : m_(m) {
    check_dim(m);
    c_.assign(std::size_t{1} << m, cplx{});
}

Multivector Multivector::scalar(int m, cplx v) {
    Multivector a(m);
    a.c_[0] = v;
    return a;
}

Multivector Multivector::blade(int m, BladeMask b, cplx v) {
    Multivector a(m);
    if (b >= a.size()) throw std::invalid_argument("blade outside algebra of dimension " + std::to_string(m));
    a.c_[b] = v;
    return a;
}

Multivector Multivector::generator(int m, int i) {
    if (i < 1 || i > m) throw std::invalid_argument("generator index out of range");
    return blade(m, BladeMask{1} << (i - 1));
}

Multivector& Multivector::operator+=(const Multivector& o) {
    check_same(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
    check_same(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Multivector& Multivector::operator*=(cplx s) {
    for (auto& v : c_) v *= s;
    return *this;
}

double Multivector::norm() const {
    double s = 0;
    for (const auto& v : c_) s += std::norm(v);
    return std::sqrt(s);
}

double Multivector::max_abs() const {
    double s = 0;
    for (const auto& v : c_) s = std::max(s, std::abs(v));
    return s;
}

Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
Multivector operator-(Multivector a) { return a *= -1.0; }
Multivector operator*(Multivector a, cplx s) { return a *= s; }
Multivector operator*(cplx s, Multivector a) { return a *= s; }
Multivector operator*(const Multivector& a, const Multivector& b) { return geometric_product(a, b); }

void accumulate_product(Multivector& acc, const Multivector& b, const Multivector& c, cplx s) {
    check_same(b, c);
    check_same(acc, b);
    const std::size_t n = b.size();
    const auto& bc = b.coeffs();
    const auto& cc = c.coeffs();
    if (b.m() <= table_limit) {
        const auto& t = sign_table(b.m());
        for (BladeMask i = 0; i < n; ++i) {
            if (bc[i] == cplx{}) continue;
            const cplx bi = s * bc[i];
            const signed char* row = &t[i * n];
            for (BladeMask j = 0; j < n; ++j) {
                if (cc[j] == cplx{}) continue;
                const cplx v = bi * cc[j];
                acc[i ^ j] += row[j] > 0 ? v : -v;
            }
        }
        return;
    }
    for (BladeMask i = 0; i < n; ++i) {
        if (bc[i] == cplx{}) continue;
        for (BladeMask j = 0; j < n; ++j) {
            if (cc[j] == cplx{}) continue;
            acc[i ^ j] += static_cast<double>(blade_product_sign(i, j)) * s * bc[i] * cc[j];
        }
    }
}

Multivector geometric_product(const Multivector& a, const Multivector& b) {
    check_same(a, b);
    Multivector out(a.m());
    accumulate_product(out, a, b);
    return out;
}

Multivector grade_project(const Multivector& a, int k) {
    if (k < 0 || k > a.m())
        throw std::invalid_argument("grade " + std::to_string(k) + " outside 0.." + std::to_string(a.m()));
    Multivector out(a.m());
    for (BladeMask b = 0; b < a.size(); ++b)
        if (blade_grade(b) == k) out[b] = a[b];
    return out;
}

Multivector bar(const Multivector& a) {
    Multivector out = a;
    for (BladeMask b = 0; b < a.size(); ++b) {
        const int k = blade_grade(b);
        // (-1)^k from e_i -> -e_i, (-1)^{k(k-1)/2} from reversal
        const int e = k + k * (k - 1) / 2;
        if (e & 1) out[b] = -out[b];
    }
    return out;
}

Multivector epsilon(const Multivector& a) {
    Multivector out = a;
    for (BladeMask b = 0; b < a.size(); ++b)
        if (blade_grade(b) & 1) out[b] = -out[b];
    return out;
}

Multivector conj(const Multivector& a) {
    Multivector out = a;
    for (BladeMask b = 0; b < a.size(); ++b) out[b] = std::conj(out[b]);
    return out;
}

Multivector embed_vector(std::span<const double> x) {
    Multivector out(static_cast<int>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) out[BladeMask{1} << i] = x[i];
    return out;
}

bool is_grade(const Multivector& a, int k, double tol) {
    for (BladeMask b = 0; b < a.size(); ++b)
        if (blade_grade(b) != k && std::abs(a[b]) > tol) return false;
    return true;
}

Multivector wedge(const Multivector& x, const Multivector& y) {
    check_same(x, y);
    if (!is_grade(x, 1) || !is_grade(y, 1)) throw std::invalid_argument("wedge expects two vectors");
    const int m = x.m();
    Multivector out(m);
    for (int j = 0; j < m; ++j)
        for (int k = j + 1; k < m; ++k) {
            const BladeMask bj = BladeMask{1} << j, bk = BladeMask{1} << k;
            out[bj | bk] = x[bj] * y[bk] - x[bk] * y[bj];
        }
    return out;
}

Multivector wedge(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("wedge: vector lengths differ");
    return wedge(embed_vector(x), embed_vector(y));
}

Multivector random_spin_element(int m, int n_factors, std::uint64_t seed) {
    if (n_factors < 0 || n_factors % 2 != 0)
        throw std::invalid_argument("random_spin_element needs an even, non-negative number of factors");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    Multivector s = Multivector::scalar(m, 1.0);
    std::vector<double> u(m);
    for (int f = 0; f < n_factors; ++f) {
        double n2 = 0;
        do {
            n2 = 0;
            for (auto& v : u) {
                v = gauss(rng);
                n2 += v * v;
            }
        } while (n2 < 1e-20);
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& v : u) v *= inv;
        s = s * embed_vector(u);
    }
    return s;
}

std::vector<double> spin_act(const Multivector& s, std::span<const double> x) {
    if (static_cast<int>(x.size()) != s.m()) throw std::invalid_argument("spin_act: dimension mismatch");
    const Multivector y = epsilon(s) * embed_vector(x) * bar(s);
    const double scale = std::max(1.0, y.max_abs());
    if (!is_grade(y, 1, 1e-10 * scale)) throw std::invalid_argument("spin_act: s is not a Pin element");
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = y[BladeMask{1} << i].real();
    return out;
}

double max_diff(const Multivector& a, const Multivector& b) {
    check_same(a, b);
    double d = 0;
    for (BladeMask i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace radef
