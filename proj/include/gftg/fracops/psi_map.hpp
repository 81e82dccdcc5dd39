#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "gftg/error.hpp"

namespace gftg::fracops {

enum class PsiKind { Identity, Log, Exp };

inline std::string_view to_string(PsiKind kind) {
    switch (kind) {
    case PsiKind::Identity: return "x";
    case PsiKind::Log: return "ln";
    case PsiKind::Exp: return "exp";
    }
    return "?";
}

inline PsiKind psi_kind_from_string(std::string_view name) {
    if (name == "x" || name == "identity") return PsiKind::Identity;
    if (name == "ln" || name == "log") return PsiKind::Log;
    if (name == "exp") return PsiKind::Exp;
    throw ConfigError("unknown psi kind '" + std::string(name) + "' (expected x, ln or exp)");
}

/// Increasing coordinate map s = psi(x) together with its inverse x(s).
///
/// Derivatives of the inverse map are what the transformed PDE operators and the
/// dx-quadrature on an s-uniform grid need: dx = x'(s) ds.
class PsiMap {
public:
    constexpr PsiMap() = default;
    constexpr explicit PsiMap(PsiKind kind) : kind_(kind) {}

    constexpr PsiKind kind() const { return kind_; }

    double psi(double x) const {
        switch (kind_) {
        case PsiKind::Identity: return x;
        case PsiKind::Log: return std::log(x);
        case PsiKind::Exp: return std::exp(x);
        }
        return x;
    }

    double psi_prime(double x) const {
        switch (kind_) {
        case PsiKind::Identity: return 1.0;
        case PsiKind::Log: return 1.0 / x;
        case PsiKind::Exp: return std::exp(x);
        }
        return 1.0;
    }

    /// x(s) = psi^{-1}(s)
    double inverse(double s) const {
        switch (kind_) {
        case PsiKind::Identity: return s;
        case PsiKind::Log: return std::exp(s);
        case PsiKind::Exp: return std::log(s);
        }
        return s;
    }

    /// dx/ds
    double x_prime(double s) const {
        switch (kind_) {
        case PsiKind::Identity: return 1.0;
        case PsiKind::Log: return std::exp(s);
        case PsiKind::Exp: return 1.0 / s;
        }
        return 1.0;
    }

    /// d^2x/ds^2
    double x_second(double s) const {
        switch (kind_) {
        case PsiKind::Identity: return 0.0;
        case PsiKind::Log: return std::exp(s);
        case PsiKind::Exp: return -1.0 / (s * s);
        }
        return 0.0;
    }

    /// Throws unless the map is defined and increasing on [a, b].
    void validate_domain(double a, double b) const {
        if (!(a < b)) throw ConfigError("domain must satisfy a < b");
        if (kind_ == PsiKind::Log && a <= 0.0)
            throw ConfigError("psi = ln x requires a domain with a > 0");
    }

    friend constexpr bool operator==(const PsiMap&, const PsiMap&) = default;

private:
    PsiKind kind_ = PsiKind::Identity;
};

inline PsiMap make_psi_map(PsiKind kind) { return PsiMap(kind); }

} // namespace gftg::fracops
