#include "frogs/geometry.hpp"

#include "frogs/seeding.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace frogs {

namespace {

std::string pair_text(std::pair<int, int> p)
{
    return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

double parse_double(std::string_view s)
{
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument("not a number: '" + std::string(s) + "'");
    return v;
}

} // namespace

double Region::volume() const
{
    return std::pow(side, dim);
}

bool Region::contains(const Point& p) const
{
    if (p.dim() != static_cast<std::size_t>(dim))
        return false;
    for (double c : p.coords) {
        if (c < 0.0)
            return false;
        if (kind == RegionKind::torus ? c >= side : c > side)
            return false;
    }
    return true;
}

double Region::squared_distance(std::span<const double> a, std::span<const double> b) const
{
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double d = std::abs(a[k] - b[k]);
        if (kind == RegionKind::torus)
            d = std::min(d, side - d);
        sum += d * d;
    }
    return sum;
}

Region Region::parse(std::string_view text)
{
    const auto first = text.find(':');
    const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
    if (second == std::string_view::npos)
        throw std::invalid_argument("region must look like kind:side:dim, got '" + std::string(text) + "'");
    const auto kind = text.substr(0, first);
    Region r;
    if (kind == "box")
        r.kind = RegionKind::box;
    else if (kind == "torus")
        r.kind = RegionKind::torus;
    else
        throw std::invalid_argument("unknown region kind '" + std::string(kind) + "'");
    r.side = parse_double(text.substr(first + 1, second - first - 1));
    const auto dim_text = text.substr(second + 1);
    int dim = 0;
    auto [ptr, ec] = std::from_chars(dim_text.data(), dim_text.data() + dim_text.size(), dim);
    if (ec != std::errc{} || ptr != dim_text.data() + dim_text.size())
        throw std::invalid_argument("bad region dimension '" + std::string(dim_text) + "'");
    r.dim = dim;
    if (!(r.side > 0.0) || !std::isfinite(r.side) || r.dim < 1)
        throw std::invalid_argument("region needs side > 0 and dim >= 1");
    return r;
}

std::string Region::to_string() const
{
    std::ostringstream os;
    os << (kind == RegionKind::box ? "box" : "torus") << ':' << side << ':' << dim;
    return os.str();
}

std::string_view to_string(Color c)
{
    switch (c) {
    case Color::none: return "none";
    case Color::amber: return "amber";
    case Color::blue: return "blue";
    case Color::green: return "green";
    case Color::red: return "red";
    }
    return "none";
}

std::optional<Color> parse_color(std::string_view token)
{
    if (token == "amber") return Color::amber;
    if (token == "blue") return Color::blue;
    if (token == "green") return Color::green;
    if (token == "red") return Color::red;
    return std::nullopt;
}

ValidationError::ValidationError(Kind kind, std::string message, std::pair<int, int> first,
                                 std::pair<int, int> second)
    : std::runtime_error(std::move(message)), kind_(kind), first_(first), second_(second)
{
}

std::string_view to_string(ValidationError::Kind kind)
{
    using K = ValidationError::Kind;
    switch (kind) {
    case K::empty_set: return "EmptySet";
    case K::dimension_mismatch: return "DimensionMismatch";
    case K::outside_region: return "OutsideRegion";
    case K::non_finite: return "NonFiniteCoordinate";
    case K::duplicate_point: return "DuplicatePoint";
    case K::tied_distances: return "TiedDistances";
    case K::bad_colors: return "BadColors";
    }
    return "ValidationError";
}

PointSet PointSet::validate(std::vector<Point> points, Region region, std::vector<Color> colors)
{
    using K = ValidationError::Kind;
    if (points.empty())
        throw ValidationError(K::empty_set, "point set is empty");
    if (!(region.side > 0.0) || region.dim < 1)
        throw ValidationError(K::outside_region, "region needs side > 0 and dim >= 1");
    const int n = static_cast<int>(points.size());
    for (int i = 0; i < n; ++i) {
        const auto& p = points[static_cast<std::size_t>(i)];
        if (p.dim() != static_cast<std::size_t>(region.dim))
            throw ValidationError(K::dimension_mismatch,
                                  "point " + std::to_string(i) + " has dimension " + std::to_string(p.dim()) +
                                      ", region has " + std::to_string(region.dim));
        for (double c : p.coords)
            if (!std::isfinite(c))
                throw ValidationError(K::non_finite, "point " + std::to_string(i) + " has a non-finite coordinate");
        if (!region.contains(p))
            throw ValidationError(K::outside_region, "point " + std::to_string(i) + " lies outside " + region.to_string());
    }
    if (!colors.empty()) {
        if (colors.size() != points.size())
            throw ValidationError(K::bad_colors, "colour list length differs from point count");
        const bool any_none = std::any_of(colors.begin(), colors.end(), [](Color c) { return c == Color::none; });
        const bool all_none = std::all_of(colors.begin(), colors.end(), [](Color c) { return c == Color::none; });
        if (all_none)
            colors.clear();
        else if (any_none)
            throw ValidationError(K::bad_colors, "either every point or no point carries a colour");
    }

    PointSet set;
    set.points_ = std::move(points);
    set.region_ = region;
    set.colors_ = std::move(colors);

    const auto un = static_cast<std::size_t>(n);
    set.squared_.assign(un * un, 0.0);
    set.pairs_.reserve(un * (un - 1) / 2);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double d2 = region.squared_distance(set.points_[static_cast<std::size_t>(i)].coords,
                                                      set.points_[static_cast<std::size_t>(j)].coords);
            if (d2 == 0.0)
                throw ValidationError(K::duplicate_point,
                                      "points " + std::to_string(i) + " and " + std::to_string(j) + " coincide",
                                      {i, j});
            set.squared_[static_cast<std::size_t>(i) * un + static_cast<std::size_t>(j)] = d2;
            set.squared_[static_cast<std::size_t>(j) * un + static_cast<std::size_t>(i)] = d2;
            set.pairs_.push_back({d2, i, j});
        }
    }
    std::sort(set.pairs_.begin(), set.pairs_.end(), [](const PointPair& a, const PointPair& b) {
        if (a.squared != b.squared)
            return a.squared < b.squared;
        return std::pair(a.i, a.j) < std::pair(b.i, b.j);
    });
    for (std::size_t k = 1; k < set.pairs_.size(); ++k) {
        const auto& a = set.pairs_[k - 1];
        const auto& b = set.pairs_[k];
        if (a.squared == b.squared)
            throw ValidationError(K::tied_distances,
                                  "pairs " + pair_text({a.i, a.j}) + " and " + pair_text({b.i, b.j}) +
                                      " are at equal distance",
                                  {a.i, a.j}, {b.i, b.j});
    }

    set.nearest_.assign(un, -1);
    std::vector<double> best(un, std::numeric_limits<double>::infinity());
    for (const auto& p : set.pairs_) {
        auto ui = static_cast<std::size_t>(p.i), uj = static_cast<std::size_t>(p.j);
        if (p.squared < best[ui]) { best[ui] = p.squared; set.nearest_[ui] = p.j; }
        if (p.squared < best[uj]) { best[uj] = p.squared; set.nearest_[uj] = p.i; }
    }
    return set;
}

std::size_t PointSet::count(Color c) const
{
    return static_cast<std::size_t>(std::count(colors_.begin(), colors_.end(), c));
}

double PointSet::distance(int i, int j) const
{
    const int n = static_cast<int>(size());
    if (i < 0 || j < 0 || i >= n || j >= n)
        throw std::out_of_range("point index out of range");
    if (i == j)
        throw std::invalid_argument("distance needs two distinct indices");
    return std::sqrt(squared_distance(i, j));
}

// ---------------------------------------------------------------------------

namespace {

Point uniform_point(Rng& rng, const Region& region)
{
    Point p;
    p.coords.resize(static_cast<std::size_t>(region.dim));
    for (auto& c : p.coords) {
        c = region.side * uniform01(rng);
        // A box is closed, a torus half-open; uniform01 < 1 keeps both.
    }
    return p;
}

void check_region(const Region& region)
{
    if (!(region.side > 0.0) || !std::isfinite(region.side) || region.dim < 1)
        throw SamplingError(SamplingError::Kind::invalid_config, "region needs finite side > 0 and dim >= 1");
}

void check_intensity(double intensity)
{
    if (!(intensity > 0.0) || !std::isfinite(intensity))
        throw SamplingError(SamplingError::Kind::invalid_config, "intensity must be positive and finite");
}

// Draws with retry on distance ties. `draw` fills points (and colours) from
// an engine seeded with the attempt seed.
template <typename Draw>
PointSet draw_validated(std::uint64_t seed, const Region& region, Draw&& draw)
{
    for (int attempt = 0; attempt <= kTieRetries; ++attempt) {
        Rng rng(attempt == 0 ? seed : derive_seed(seed, 0x7469650000000000ULL + static_cast<std::uint64_t>(attempt)));
        std::vector<Point> points;
        std::vector<Color> colors;
        draw(rng, points, colors);
        if (points.empty())
            throw SamplingError(SamplingError::Kind::empty_sample, "sample contains no points");
        try {
            return PointSet::validate(std::move(points), region, std::move(colors));
        } catch (const ValidationError& e) {
            if (e.kind() != ValidationError::Kind::tied_distances && e.kind() != ValidationError::Kind::duplicate_point)
                throw;
        }
    }
    throw SamplingError(SamplingError::Kind::tie_retry_exhausted,
                        "distance ties persisted after " + std::to_string(kTieRetries) + " redraws");
}

} // namespace

PointSet sample_poisson(const SampleConfig& config)
{
    check_region(config.region);
    check_intensity(config.intensity);
    const double mean = config.intensity * config.region.volume();
    return draw_validated(config.seed, config.region, [&](Rng& rng, std::vector<Point>& pts, std::vector<Color>&) {
        const auto n = sample_poisson_count(rng, mean);
        pts.reserve(n);
        for (std::uint64_t k = 0; k < n; ++k)
            pts.push_back(uniform_point(rng, config.region));
    });
}

PointSet sample_colored(const ColoredSampleConfig& config)
{
    check_region(config.region);
    check_intensity(config.first_intensity);
    check_intensity(config.second_intensity);
    const double volume = config.region.volume();
    return draw_validated(config.seed, config.region, [&](Rng& rng, std::vector<Point>& pts, std::vector<Color>& cols) {
        // Two independent streams, one per process.
        Rng first(rng());
        Rng second(rng());
        const auto n1 = sample_poisson_count(first, config.first_intensity * volume);
        const auto n2 = sample_poisson_count(second, config.second_intensity * volume);
        for (std::uint64_t k = 0; k < n1; ++k) {
            pts.push_back(uniform_point(first, config.region));
            cols.push_back(config.first_color);
        }
        for (std::uint64_t k = 0; k < n2; ++k) {
            pts.push_back(uniform_point(second, config.region));
            cols.push_back(config.second_color);
        }
    });
}

PointSet sample_thinned(const ColoredSampleConfig& config)
{
    check_region(config.region);
    check_intensity(config.first_intensity);
    check_intensity(config.second_intensity);
    const double total = config.first_intensity + config.second_intensity;
    const double p_first = config.first_intensity / total;
    return draw_validated(config.seed, config.region, [&](Rng& rng, std::vector<Point>& pts, std::vector<Color>& cols) {
        const auto n = sample_poisson_count(rng, total * config.region.volume());
        for (std::uint64_t k = 0; k < n; ++k) {
            pts.push_back(uniform_point(rng, config.region));
            cols.push_back(uniform01(rng) < p_first ? config.first_color : config.second_color);
        }
    });
}

PointSet sample_uniform(std::size_t n, const Region& region, std::uint64_t seed)
{
    check_region(region);
    if (n == 0)
        throw SamplingError(SamplingError::Kind::empty_sample, "requested zero points");
    return draw_validated(seed, region, [&](Rng& rng, std::vector<Point>& pts, std::vector<Color>&) {
        for (std::size_t k = 0; k < n; ++k)
            pts.push_back(uniform_point(rng, region));
    });
}

PointSet sample_uniform_colored(std::size_t n, const Region& region, std::uint64_t seed, Color first, Color second)
{
    check_region(region);
    if (n == 0)
        throw SamplingError(SamplingError::Kind::empty_sample, "requested zero points");
    return draw_validated(seed, region, [&](Rng& rng, std::vector<Point>& pts, std::vector<Color>& cols) {
        for (std::size_t k = 0; k < n; ++k) {
            pts.push_back(uniform_point(rng, region));
            cols.push_back((rng() >> 63) != 0 ? first : second);
        }
    });
}

} // namespace frogs
