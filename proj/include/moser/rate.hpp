#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

namespace moser {

/// Integer coordinates of an exponential rate over a fixed list of base rates.
/// Two rates are equal iff their coordinates are equal; the floating value is
/// never used for identity.
struct RateVector {
    static constexpr std::size_t kMaxRank = 4;

    std::array<int, kMaxRank> coords{};

    RateVector() = default;
    RateVector(std::initializer_list<int> c);

    static RateVector unit(std::size_t i, int k = 1);

    bool is_zero() const;

    RateVector operator-() const;
    RateVector &operator+=(const RateVector &o);
    friend RateVector operator+(RateVector a, const RateVector &b) { return a += b; }
    friend RateVector operator-(RateVector a, const RateVector &b) { return a += -b; }
    friend RateVector operator*(int k, RateVector a)
    {
        for (auto &c : a.coords) c *= k;
        return a;
    }

    friend auto operator<=>(const RateVector &, const RateVector &) = default;
    friend bool operator==(const RateVector &, const RateVector &) = default;
};

/// The list of real base rates a run works over.
class RateBasis {
public:
    explicit RateBasis(std::vector<double> generators);

    std::size_t rank() const { return generators_.size(); }
    const std::vector<double> &generators() const { return generators_; }

    /// Sum of coords[i] * generator[i]. Values that cancel to roundoff are
    /// snapped to exactly zero so resonant integrals are detected reliably.
    double value(const RateVector &r) const;

    friend bool operator==(const RateBasis &a, const RateBasis &b) { return a.generators_ == b.generators_; }

private:
    std::vector<double> generators_;
};

using BasisPtr = std::shared_ptr<const RateBasis>;

/// Rate lattice generated by the decay rate a and the frequency omega of a
/// run. When a/omega is a small rational n/d the lattice is one-dimensional
/// with generator omega/d, which keeps e^{-at} and e^{-omega t} on a common
/// canonical footing.
struct RateLattice {
    BasisPtr basis;
    RateVector omega;   ///< value +omega
    RateVector decay;   ///< value -a (zero vector when no a is declared)
    double omega_value = 1.0;
    std::optional<double> a_value;

    /// Coordinates of i*(-a) + j*omega.
    RateVector from_user(int i, int j) const;
};

RateLattice make_lattice(double omega, std::optional<double> a);

/// Detects a/b = n/d with d <= max_den within relative tolerance.
std::optional<std::pair<int, int>> small_rational_ratio(double a, double b, int max_den = 64, double rtol = 1e-12);

} // namespace moser
