#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace sov {

using Scalar = mpq_class;

struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// "p/q" or "p"; throws ConfigError on junk or zero denominator
Scalar parse_scalar(const std::string& s);
std::string to_string(const Scalar& s);
double to_double(const Scalar& s);

Scalar pow(const Scalar& x, long e);

// p/q in canonical form; mpq_class(p, q) alone does not reduce
Scalar frac(long p, long q);

class QParam {
public:
    // N, n only size the genericity window q^m != 1, 2 <= m <= 2N(n+2)
    QParam(const Scalar& q, int N, int n);
    explicit QParam(const Scalar& q) : QParam(q, 4, 2) {}

    const Scalar& value() const { return q_; }
    Scalar pow(long e) const { return sov::pow(q_, e); }
    Scalar inv() const { return 1 / q_; }

private:
    Scalar q_;
};

Scalar kappa(const Scalar& x, const Scalar& y, const QParam& q);
Scalar phi(int k, const Scalar& x, const Scalar& y, int N, const QParam& q);
Scalar chi(int k, int l, const Scalar& x, const Scalar& y, const QParam& q);
Scalar psi(int l, int k, const Scalar& y, const Scalar& x, const QParam& q);
Scalar rho(int l, const Scalar& y, const Scalar& x, int N, const QParam& q);
Scalar sigma(int k, const Scalar& x, const Scalar& y, const QParam& q);

// chi_{N-1,N-1}(x,y) phi_{N-1}(y,x) == chi_{N-1,N-1}(y,x) phi_{N-1}(x,y) psi_{N-1,N-1}(y,x) rho_{N-1}(y,x)
bool qdet_scalar_identity(int N, const Scalar& x, const Scalar& y, const QParam& q);

}  // namespace sov
