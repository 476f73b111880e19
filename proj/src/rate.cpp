#include "moser/rate.hpp"

#include <cmath>
#include <numeric>

#include "moser/errors.hpp"

namespace moser {

RateVector::RateVector(std::initializer_list<int> c)
{
    if (c.size() > kMaxRank) throw ConfigurationError("RateVector: too many coordinates");
    std::size_t i = 0;
    for (int v : c) coords[i++] = v;
}

RateVector RateVector::unit(std::size_t i, int k)
{
    RateVector r;
    r.coords.at(i) = k;
    return r;
}

bool RateVector::is_zero() const
{
    for (int c : coords)
        if (c != 0) return false;
    return true;
}

RateVector RateVector::operator-() const
{
    RateVector r;
    for (std::size_t i = 0; i < kMaxRank; ++i) r.coords[i] = -coords[i];
    return r;
}

RateVector &RateVector::operator+=(const RateVector &o)
{
    for (std::size_t i = 0; i < kMaxRank; ++i) coords[i] += o.coords[i];
    return *this;
}

RateBasis::RateBasis(std::vector<double> generators) : generators_(std::move(generators))
{
    if (generators_.size() > RateVector::kMaxRank) throw ConfigurationError("RateBasis: rank exceeds 4");
    for (double g : generators_)
        if (!std::isfinite(g)) throw ConfigurationError("RateBasis: non-finite generator");
}

double RateBasis::value(const RateVector &r) const
{
    double v = 0.0;
    double mag = 0.0;
    for (std::size_t i = 0; i < RateVector::kMaxRank; ++i) {
        if (r.coords[i] == 0) continue;
        if (i >= generators_.size()) throw ConfigurationError("RateVector uses a coordinate outside the basis");
        const double c = r.coords[i] * generators_[i];
        v += c;
        mag += std::abs(c);
    }
    if (std::abs(v) <= 1e-12 * mag) return 0.0;
    return v;
}

std::optional<std::pair<int, int>> small_rational_ratio(double a, double b, int max_den, double rtol)
{
    if (!(a > 0.0) || !(b > 0.0)) return std::nullopt;
    const double x = a / b;
    for (int d = 1; d <= max_den; ++d) {
        const double n = std::round(x * d);
        if (n < 1.0) continue;
        if (std::abs(n / d - x) <= rtol * x) {
            const int ni = static_cast<int>(n);
            const int g = std::gcd(ni, d);
            return std::pair{ni / g, d / g};
        }
    }
    return std::nullopt;
}

RateVector RateLattice::from_user(int i, int j) const
{
    if (i != 0 && !a_value) throw ConfigurationError("rate uses the decay generator but no decay_rate is declared");
    return i * decay + j * omega;
}

RateLattice make_lattice(double omega, std::optional<double> a)
{
    if (!(omega > 0.0)) throw ConfigurationError("omega must be positive");
    if (a && !(*a > 0.0)) throw ConfigurationError("decay rate must be positive");
    RateLattice lat;
    lat.omega_value = omega;
    lat.a_value = a;
    if (!a) {
        lat.basis = std::make_shared<RateBasis>(std::vector<double>{omega});
        lat.omega = RateVector{1};
        return lat;
    }
    if (auto ratio = small_rational_ratio(*a, omega)) {
        // a = omega * n / d: the lattice {-a, omega} is (omega/d) * Z.
        const auto [n, d] = *ratio;
        lat.basis = std::make_shared<RateBasis>(std::vector<double>{omega / d});
        lat.omega = RateVector{d};
        lat.decay = RateVector{-n};
        return lat;
    }
    lat.basis = std::make_shared<RateBasis>(std::vector<double>{-*a, omega});
    lat.decay = RateVector{1, 0};
    lat.omega = RateVector{0, 1};
    return lat;
}

} // namespace moser
