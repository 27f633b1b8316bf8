/*!
  \file analysis.hpp
  \brief Pareto fronts, Pearson correlation and the Mann-Whitney U test
*/
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace axcgp
{

enum class error_axis
{
  wce,
  mae,
  er,
  mre,
  avg,
  stddev
};

inline std::string to_string( error_axis a )
{
  switch ( a )
  {
  case error_axis::wce:    return "wce";
  case error_axis::mae:    return "mae";
  case error_axis::er:     return "er";
  case error_axis::mre:    return "mre";
  case error_axis::avg:    return "avg";
  case error_axis::stddev: return "stddev";
  }
  return "?";
}

inline constexpr error_axis all_error_axes[] = { error_axis::wce, error_axis::mae, error_axis::er,
                                                 error_axis::mre, error_axis::avg, error_axis::stddev };

struct pareto_point
{
  std::string id;
  std::string config;
  double relative_power{ 0.0 };
  /*! \brief Relative percent, as in `relative_errors`. */
  double wce{ 0.0 };
  double mae{ 0.0 };
  double er{ 0.0 };
  double mre{ 0.0 };
  double avg{ 0.0 };
  double stddev{ 0.0 };

  double error( error_axis a ) const noexcept
  {
    switch ( a )
    {
    case error_axis::wce:    return wce;
    case error_axis::mae:    return mae;
    case error_axis::er:     return er;
    case error_axis::mre:    return mre;
    case error_axis::avg:    return avg;
    case error_axis::stddev: return stddev;
    }
    return 0.0;
  }

  bool operator==( pareto_point const& ) const = default;
};

/*! \brief `a` dominates `b`: no worse on power and error, strictly better on one. */
inline bool dominates( pareto_point const& a, pareto_point const& b, error_axis axis ) noexcept
{
  auto const ap = a.relative_power, bp = b.relative_power;
  auto const ae = a.error( axis ), be = b.error( axis );
  return ap <= bp && ae <= be && ( ap < bp || ae < be );
}

/*! \brief Non-dominated points in input order; exact duplicates are all kept. */
inline std::vector<pareto_point> pareto_front( std::vector<pareto_point> const& points, error_axis axis )
{
  std::vector<std::size_t> order( points.size() );
  std::iota( order.begin(), order.end(), std::size_t{ 0 } );
  std::sort( order.begin(), order.end(), [&]( auto i, auto j ) {
    auto const& a = points[i];
    auto const& b = points[j];
    if ( a.relative_power != b.relative_power )
      return a.relative_power < b.relative_power;
    return a.error( axis ) < b.error( axis );
  } );

  std::vector<std::uint8_t> keep( points.size(), 0u );
  auto best_lower = std::numeric_limits<double>::infinity();
  for ( std::size_t s = 0; s < order.size(); )
  {
    // points sharing one power value; only the minimal error can survive
    auto const power = points[order[s]].relative_power;
    auto const group_min = points[order[s]].error( axis );
    auto e = s;
    for ( ; e < order.size() && points[order[e]].relative_power == power; ++e )
    {
      if ( points[order[e]].error( axis ) == group_min && group_min < best_lower )
        keep[order[e]] = 1u;
    }
    best_lower = std::min( best_lower, group_min );
    s = e;
  }

  std::vector<pareto_point> front;
  for ( std::size_t i = 0; i < points.size(); ++i )
  {
    if ( keep[i] )
      front.push_back( points[i] );
  }
  return front;
}

/*! \brief Sample Pearson correlation coefficient. */
inline double pearson( std::vector<double> const& xs, std::vector<double> const& ys )
{
  if ( xs.size() != ys.size() )
    throw std::invalid_argument( "pearson: series lengths differ" );
  if ( xs.size() < 2u )
    throw std::invalid_argument( "pearson: at least two observations required" );
  auto const n = static_cast<double>( xs.size() );
  auto const mx = std::accumulate( xs.begin(), xs.end(), 0.0 ) / n;
  auto const my = std::accumulate( ys.begin(), ys.end(), 0.0 ) / n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for ( std::size_t i = 0; i < xs.size(); ++i )
  {
    auto const dx = xs[i] - mx;
    auto const dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if ( sxx == 0.0 || syy == 0.0 )
    throw std::domain_error( "degenerate series" );
  return std::clamp( sxy / std::sqrt( sxx * syy ), -1.0, 1.0 );
}

struct mann_whitney_result
{
  /*! \brief Pairs with x > y, ties counting one half. */
  double u_x{ 0.0 };
  /*! \brief Pairs with y > x, ties counting one half. */
  double u_y{ 0.0 };
  double z{ 0.0 };
  /*! \brief Two-sided, normal approximation with tie and continuity correction. */
  double p{ 1.0 };
  /*! \brief Set when the smaller sample has fewer than 8 observations. */
  bool approximate{ false };
};

inline mann_whitney_result mann_whitney_u( std::vector<double> const& xs, std::vector<double> const& ys )
{
  if ( xs.empty() || ys.empty() )
    throw std::invalid_argument( "mann_whitney_u: both samples must be non-empty" );

  auto const nx = xs.size();
  auto const ny = ys.size();
  std::vector<std::pair<double, bool>> all;
  all.reserve( nx + ny );
  for ( auto x : xs )
    all.emplace_back( x, true );
  for ( auto y : ys )
    all.emplace_back( y, false );
  std::sort( all.begin(), all.end(), []( auto const& a, auto const& b ) { return a.first < b.first; } );

  // midranks; rank sums are multiples of 1/2 and therefore exact
  double rank_x = 0.0, rank_y = 0.0, tie_term = 0.0;
  for ( std::size_t i = 0; i < all.size(); )
  {
    auto j = i;
    while ( j < all.size() && all[j].first == all[i].first )
      ++j;
    auto const t = static_cast<double>( j - i );
    auto const midrank = ( static_cast<double>( i + 1 ) + static_cast<double>( j ) ) / 2.0;
    for ( auto k = i; k < j; ++k )
      ( all[k].second ? rank_x : rank_y ) += midrank;
    tie_term += t * t * t - t;
    i = j;
  }

  mann_whitney_result r;
  auto const fx = static_cast<double>( nx );
  auto const fy = static_cast<double>( ny );
  r.u_x = rank_x - fx * ( fx + 1.0 ) / 2.0;
  r.u_y = rank_y - fy * ( fy + 1.0 ) / 2.0;
  r.approximate = std::min( nx, ny ) < 8u;

  auto const n = fx + fy;
  auto const mean = fx * fy / 2.0;
  auto const var = fx * fy / 12.0 * ( ( n + 1.0 ) - tie_term / ( n * ( n - 1.0 ) ) );
  if ( !( var > 0.0 ) )
  {
    r.z = 0.0;
    r.p = 1.0;
    return r;
  }
  auto const diff = std::max( 0.0, std::fabs( r.u_x - mean ) - 0.5 );
  r.z = diff / std::sqrt( var );
  r.p = std::min( 1.0, std::erfc( r.z / std::sqrt( 2.0 ) ) );
  return r;
}

inline double median( std::vector<double> v )
{
  if ( v.empty() )
    throw std::invalid_argument( "median of an empty sample" );
  std::sort( v.begin(), v.end() );
  auto const n = v.size();
  return n % 2u ? v[n / 2u] : ( v[n / 2u - 1u] + v[n / 2u] ) / 2.0;
}

} // namespace axcgp
