#include "radef/io.hpp"

#include "radef/monogenics.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace radef {

namespace {

bool is_fourier(const KernelParams& kp) {
    return kp.omega.real() == 0.0 && kp.omega.imag() == 0.5 * 3.14159265358979323846;
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string blade_name(BladeMask b) {
    if (b == 0) return "1";
    const auto idx = blade_indices(b);
    const bool wide = idx.back() >= 10;
    std::string s = "e";
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (wide && i > 0) s += '_';
        s += std::to_string(idx[i]);
    }
    return s;
}

std::string multivector_json(const Multivector& a) {
    nlohmann::json j;
    j["m"] = a.m();
    j["blades"] = nlohmann::json::array();
    for (BladeMask b : canonical_blade_order(a.m())) {
        if (a[b] == cplx{}) continue;
        j["blades"].push_back({{"blade", blade_name(b)}, {"re", a[b].real()}, {"im", a[b].imag()}});
    }
    return j.dump();
}

std::string monogenic_basis_json(int ell, int m) {
    const auto& basis = monogenic_basis(ell, m);
    const auto& mons = monomials(m, ell);
    nlohmann::json out = nlohmann::json::array();
    for (const PolyCl& p : basis) {
        nlohmann::json terms = nlohmann::json::array();
        for (std::size_t i = 0; i < mons.size(); ++i) {
            if (p.coeff(i).max_abs() == 0.0) continue;
            terms.push_back({{"exponents", mons[i]}, {"coefficient", nlohmann::json::parse(multivector_json(p.coeff(i)))}});
        }
        out.push_back({{"degree", ell}, {"terms", terms}});
    }
    return out.dump();
}

void write_profile_csv(std::ostream& os, const MonogenicSection& s, double r_lo, double r_hi, int n) {
    if (n < 0 || !(r_hi >= r_lo)) throw std::invalid_argument("write_profile_csv: bad grid");
    os << "r,re_f,im_f,re_g,im_g\n";
    for (int i = 0; i < n; ++i) {
        const double r = n == 1 ? r_lo : r_lo + (r_hi - r_lo) * i / (n - 1);
        const cplx f = s.f.empty() ? cplx{} : s.f(r);
        const cplx g = s.g.empty() ? cplx{} : s.g(r);
        os << format_number(r) << ',' << format_number(f.real()) << ',' << format_number(f.imag()) << ','
           << format_number(g.real()) << ',' << format_number(g.imag()) << '\n';
    }
}

void write_kernel_csv(std::ostream& os, const KernelParams& kp, const KernelGrid& grid) {
    kp.validate();
    const int m = kp.params.m;
    for (int i = 1; i <= m; ++i) os << 'x' << i << ',';
    for (int i = 1; i <= m; ++i) os << 'y' << i << ',';
    os << "z,w,reA,imA,reB,imB,terms_used,tail_estimate\n";
    const bool fourier = is_fourier(kp);
    for (double z : grid.z) {
        if (!(z >= 0.0)) throw std::invalid_argument("kernel grid: z must be >= 0");
        for (double w : grid.w) {
            if (!(w >= -1.0 && w <= 1.0)) throw std::invalid_argument("kernel grid: w must lie in [-1, 1]");
            std::vector<double> x(m, 0.0), y(m, 0.0);
            x[0] = 1.0;
            y[0] = z * w;
            y[1] = z * std::sqrt(1.0 - w * w);
            const KernelValue v = fourier ? fourier_kernel(x, y, kp.params, kp.trunc) : semigroup_kernel(x, y, kp);
            const cplx pref = fourier ? cplx(1.0) : semigroup_prefactor(1.0 + z * z, kp);
            const cplx A = pref * v.A, B = pref * v.B;
            for (double t : x) os << format_number(t) << ',';
            for (double t : y) os << format_number(t) << ',';
            os << format_number(z) << ',' << format_number(w) << ',' << format_number(A.real()) << ','
               << format_number(A.imag()) << ',' << format_number(B.real()) << ',' << format_number(B.imag()) << ','
               << v.terms_used << ',' << format_number(v.tail_estimate) << '\n';
        }
    }
}

void write_transform_csv(std::ostream& os, int m, const std::vector<std::vector<double>>& points,
                         const std::vector<Multivector>& values) {
    if (points.size() != values.size()) throw std::invalid_argument("write_transform_csv: size mismatch");
    const auto& order = canonical_blade_order(m);
    for (int i = 1; i <= m; ++i) os << 'y' << i << ',';
    for (std::size_t b = 0; b < order.size(); ++b) {
        os << "re_" << blade_name(order[b]) << ",im_" << blade_name(order[b]);
        os << (b + 1 < order.size() ? ',' : '\n');
    }
    for (std::size_t p = 0; p < points.size(); ++p) {
        for (double t : points[p]) os << format_number(t) << ',';
        for (std::size_t b = 0; b < order.size(); ++b) {
            const cplx v = values[p][order[b]];
            os << format_number(v.real()) << ',' << format_number(v.imag()) << (b + 1 < order.size() ? ',' : '\n');
        }
    }
}

std::string verify_report_json(const std::vector<CheckResult>& results) {
    nlohmann::json arr = nlohmann::json::array();
    int passed = 0;
    for (const auto& r : results) {
        passed += r.pass ? 1 : 0;
        nlohmann::json j;
        j["suite"] = r.suite;
        j["test"] = r.test;
        j["paper_ref"] = r.anchor;
        j["params"] = r.params;
        // non-finite residuals become null
        if (std::isfinite(r.residual))
            j["residual"] = r.residual;
        else
            j["residual"] = nullptr;
        j["tol"] = r.tol;
        j["pass"] = r.pass;
        arr.push_back(std::move(j));
    }
    nlohmann::json out;
    out["results"] = std::move(arr);
    out["passed"] = passed;
    out["failed"] = static_cast<int>(results.size()) - passed;
    return out.dump(2);
}

}  // namespace radef
