#include "entkit/states.hpp"

#include <cmath>
#include <stdexcept>

namespace entkit {

PureState bell(BellKind kind) {
    const double s = 1.0 / std::sqrt(2.0);
    Vector v = Vector::Zero(4);
    switch (kind) {
        case BellKind::PsiPlus:
            v(1) = s;
            v(2) = s;
            break;
        case BellKind::PsiMinus:
            v(1) = s;
            v(2) = -s;
            break;
        case BellKind::PhiPlus:
            v(0) = s;
            v(3) = s;
            break;
        case BellKind::PhiMinus:
            v(0) = s;
            v(3) = -s;
            break;
    }
    return PureState{{2, 2}, std::move(v)};
}

PureState ghz(int n) {
    if (n < 2) throw std::invalid_argument("ghz requires at least 2 parties");
    const long d = 1L << n;
    Vector v = Vector::Zero(d);
    const double s = 1.0 / std::sqrt(2.0);
    v(0) = s;
    v(d - 1) = s;
    return PureState{std::vector<int>(n, 2), std::move(v)};
}

PureState w_state(int n) {
    if (n < 2) throw std::invalid_argument("w_state requires at least 2 parties");
    const long d = 1L << n;
    Vector v = Vector::Zero(d);
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (int k = 0; k < n; ++k) v(1L << k) = s;
    return PureState{std::vector<int>(n, 2), std::move(v)};
}

PureState w_class(Complex a, Complex b, Complex c, bool auto_normalize) {
    double norm_sq = std::norm(a) + std::norm(b) + std::norm(c);
    if (norm_sq == 0.0) throw std::invalid_argument("w_class amplitudes are all zero");
    if (auto_normalize) {
        const double scale = 1.0 / std::sqrt(norm_sq);
        a *= scale;
        b *= scale;
        c *= scale;
    } else if (std::abs(norm_sq - 1.0) > 1e-9) {
        throw std::invalid_argument("w_class amplitudes are not normalized");
    }
    Vector v = Vector::Zero(8);
    v(4) = a;  // |100>
    v(2) = b;  // |010>
    v(1) = c;  // |001>
    return PureState{{2, 2, 2}, std::move(v)};
}

PureState basis_state(const std::vector<int>& dims, const std::vector<int>& digits) {
    if (digits.size() != dims.size())
        throw std::invalid_argument("digit count does not match subsystem count");
    const long d = total_dimension(dims);
    long index = 0;
    for (size_t k = 0; k < dims.size(); ++k) {
        if (digits[k] < 0 || digits[k] >= dims[k])
            throw std::invalid_argument("basis digit out of range");
        index = index * dims[k] + digits[k];
    }
    Vector v = Vector::Zero(d);
    v(index) = 1.0;
    return PureState{dims, std::move(v)};
}

BellKind parse_bell_label(const std::string& label) {
    if (label == "psi+") return BellKind::PsiPlus;
    if (label == "psi-") return BellKind::PsiMinus;
    if (label == "phi+") return BellKind::PhiPlus;
    if (label == "phi-") return BellKind::PhiMinus;
    throw std::invalid_argument("unknown bell label '" + label + "'");
}

}  // namespace entkit
