#include "sov/exactnum.hpp"

#include <cctype>

namespace sov {

Scalar parse_scalar(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    auto ok = [](const std::string& t, bool sign) {
        size_t i = 0;
        if (sign && !t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!ok(num, true) || !ok(den, false)) throw ConfigError("not a rational: '" + text + "'");
    if (num[0] == '+') num.erase(0, 1);
    mpz_class d(den);
    if (d == 0) throw ConfigError("zero denominator: '" + text + "'");
    Scalar r(mpz_class(num), d);
    r.canonicalize();
    return r;
}

std::string to_string(const Scalar& s) {
    if (s.get_den() == 1) return s.get_num().get_str();
    return s.get_num().get_str() + "/" + s.get_den().get_str();
}

double to_double(const Scalar& s) { return s.get_d(); }

Scalar frac(long p, long q) {
    if (q == 0) throw PoleError("zero denominator");
    Scalar r(p, q);
    r.canonicalize();
    return r;
}

Scalar pow(const Scalar& x, long e) {
    if (e < 0) {
        if (x == 0) throw PoleError("negative power of zero");
        return pow(1 / x, -e);
    }
    Scalar r = 1, b = x;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

QParam::QParam(const Scalar& q, int N, int n) : q_(q) {
    if (q == 0 || q == 1 || q == -1) throw ConfigError("q must avoid 0, 1, -1; got " + to_string(q));
    int window = 2 * N * (n + 2);
    Scalar p = q * q;
    for (int m = 2; m <= window; ++m, p *= q)
        if (p == 1) throw ConfigError("q is a root of unity of order " + std::to_string(m));
}

Scalar kappa(const Scalar& x, const Scalar& y, const QParam& q) {
    if (x == y) throw PoleError("kappa: pole at equal arguments");
    Scalar q2 = q.pow(2);
    return (x * q2 - y) * (x / q2 - y) / (x - y);
}

Scalar phi(int k, const Scalar& x, const Scalar& y, int N, const QParam& q) {
    Scalar r = 1;
    for (int j = 0; j < k; ++j) {
        Scalar f = x * q.pow(-(2 * j + 1)) - y * q.pow(1 - 2 * N);
        for (int i = 0; i <= N - 3; ++i) f *= x * q.pow(-2 * j) - y * q.pow(-2 * i);
        r *= pow(f, k - j);
    }
    return r;
}

Scalar chi(int k, int l, const Scalar& x, const Scalar& y, const QParam& q) {
    Scalar r = 1;
    for (int j = 0; j < k; ++j) {
        Scalar f = 1;
        for (int i = 0; i < l; ++i) f *= kappa(x * q.pow(-2 * j), y * q.pow(-2 * i), q);
        r *= pow(f, k - j);
    }
    return r;
}

Scalar psi(int l, int k, const Scalar& y, const Scalar& x, const QParam& q) {
    Scalar r = 1;
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < l; ++i) {
            Scalar f = y * q.pow(-2 * i - 1) - x * q.pow(-2 * j + 1);
            if (f == 0) throw PoleError("psi: vanishing factor");
            r /= f;
        }
    return r;
}

Scalar rho(int l, const Scalar& y, const Scalar& x, int N, const QParam& q) {
    Scalar r = 1;
    for (int i = 0; i < l; ++i) {
        r *= y * q.pow(-2 * i + 1) - x * q.pow(3 - 2 * N);
        for (int j = 0; j <= N - 3; ++j) r *= y * q.pow(-2 * i) - x * q.pow(-2 * j);
    }
    return r;
}

Scalar sigma(int k, const Scalar& x, const Scalar& y, const QParam& q) {
    Scalar r = 1;
    for (int j = 0; j < k; ++j) r *= kappa(x * q.pow(-2 * j), y, q);
    return r;
}

bool qdet_scalar_identity(int N, const Scalar& x, const Scalar& y, const QParam& q) {
    int m = N - 1;
    Scalar lhs = chi(m, m, x, y, q) * phi(m, y, x, N, q);
    Scalar rhs = chi(m, m, y, x, q) * phi(m, x, y, N, q) * psi(m, m, y, x, q) * rho(m, y, x, N, q);
    return lhs == rhs;
}

}  // namespace sov
