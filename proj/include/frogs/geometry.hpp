#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace frogs {

struct Point {
    std::vector<double> coords;

    std::size_t dim() const noexcept { return coords.size(); }
    friend bool operator==(const Point&, const Point&) = default;
};

enum class RegionKind { box, torus };

/// Axis-aligned cube [0, side]^dim. A torus identifies opposite faces, so
/// coordinates live in [0, side) and distances wrap around.
struct Region {
    RegionKind kind = RegionKind::box;
    double side = 1.0;
    int dim = 2;

    static Region box(double side, int dim) { return {RegionKind::box, side, dim}; }
    static Region torus(double side, int dim) { return {RegionKind::torus, side, dim}; }

    double volume() const;
    bool contains(const Point& p) const;
    double squared_distance(std::span<const double> a, std::span<const double> b) const;

    /// "box:10:2" / "torus:20:2" (kind:side:dim).
    static Region parse(std::string_view text);
    std::string to_string() const;

    friend bool operator==(const Region&, const Region&) = default;
};

enum class Color : std::uint8_t { none, amber, blue, green, red };

std::string_view to_string(Color c);
std::optional<Color> parse_color(std::string_view token);

/// Index pair with i < j together with its squared distance.
struct PointPair {
    double squared = 0.0;
    int i = 0;
    int j = 0;
};

class ValidationError : public std::runtime_error {
public:
    enum class Kind { empty_set, dimension_mismatch, outside_region, non_finite, duplicate_point, tied_distances, bad_colors };

    ValidationError(Kind kind, std::string message, std::pair<int, int> first = {-1, -1},
                    std::pair<int, int> second = {-1, -1});

    Kind kind() const noexcept { return kind_; }
    /// Offending pair(s); for tied_distances both pairs, for duplicate_point the first.
    std::pair<int, int> first_pair() const noexcept { return first_; }
    std::pair<int, int> second_pair() const noexcept { return second_; }

private:
    Kind kind_;
    std::pair<int, int> first_;
    std::pair<int, int> second_;
};

std::string_view to_string(ValidationError::Kind kind);

/// A finite point configuration in which all pairwise distances are
/// distinct. Only constructible through validate(); immutable afterwards.
///
/// The full squared-distance matrix and the distance-sorted pair list are
/// computed once, since every engine component walks pairs in distance order.
class PointSet {
public:
    static PointSet validate(std::vector<Point> points, Region region, std::vector<Color> colors = {});

    std::size_t size() const noexcept { return points_.size(); }
    int dim() const noexcept { return region_.dim; }
    const Region& region() const noexcept { return region_; }
    const Point& point(int i) const { return points_.at(static_cast<std::size_t>(i)); }
    const std::vector<Point>& points() const noexcept { return points_; }

    bool has_colors() const noexcept { return !colors_.empty(); }
    Color color(int i) const { return colors_.empty() ? Color::none : colors_.at(static_cast<std::size_t>(i)); }
    const std::vector<Color>& colors() const noexcept { return colors_; }
    std::size_t count(Color c) const;

    double squared_distance(int i, int j) const noexcept
    {
        return squared_[static_cast<std::size_t>(i) * points_.size() + static_cast<std::size_t>(j)];
    }

    /// Checked Euclidean (or wrapped) distance; i and j must differ.
    double distance(int i, int j) const;

    std::span<const PointPair> pairs_by_distance() const noexcept { return pairs_; }

    int nearest_neighbor(int i) const { return nearest_.at(static_cast<std::size_t>(i)); }
    bool mutually_nearest(int i, int j) const
    {
        return nearest_neighbor(i) == j && nearest_neighbor(j) == i;
    }

private:
    PointSet() = default;

    std::vector<Point> points_;
    Region region_;
    std::vector<Color> colors_;
    std::vector<double> squared_;
    std::vector<PointPair> pairs_;
    std::vector<int> nearest_;
};

// ---------------------------------------------------------------------------
// Sampling

class SamplingError : public std::runtime_error {
public:
    enum class Kind { invalid_config, empty_sample, tie_retry_exhausted };
    SamplingError(Kind kind, std::string message) : std::runtime_error(std::move(message)), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

struct SampleConfig {
    double intensity = 1.0;
    Region region;
    std::uint64_t seed = 0;
};

struct ColoredSampleConfig {
    double first_intensity = 1.0;   // amber (or green)
    double second_intensity = 1.0;  // blue (or red)
    Region region;
    std::uint64_t seed = 0;
    Color first_color = Color::amber;
    Color second_color = Color::blue;
};

inline constexpr int kTieRetries = 16;

/// Poisson process restricted to the region: count ~ Poisson(intensity *
/// volume), locations i.i.d. uniform. A sample with a distance tie is redrawn
/// from a derived seed, at most kTieRetries times.
PointSet sample_poisson(const SampleConfig& config);

/// Union of two independent Poisson samples, labelled by process.
PointSet sample_colored(const ColoredSampleConfig& config);

/// One Poisson(first + second) sample with each point coloured
/// independently; equal in law to sample_colored.
PointSet sample_thinned(const ColoredSampleConfig& config);

/// Exactly n i.i.d. uniform points.
PointSet sample_uniform(std::size_t n, const Region& region, std::uint64_t seed);

/// n uniform points with i.i.d. fair colouring between the two colours.
PointSet sample_uniform_colored(std::size_t n, const Region& region, std::uint64_t seed,
                                Color first = Color::amber, Color second = Color::blue);

} // namespace frogs
